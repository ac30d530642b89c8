//! Cyclic and quasi-cyclic DNA codes over the sixteen rings `R_θ = Z4 + ωZ4`.

pub mod code;
pub mod dnamap;
pub mod error;
pub mod packed;
pub mod poly;
pub mod ring;
pub mod verify;

pub use code::{build, span_closure, CodeReport, Construction, LinearCode};
pub use dnamap::{DnaString, GauTable, Nucleotide};
pub use error::{Error, Result};
pub use ring::{Ring, RingElement, Theta};
pub use poly::Poly;

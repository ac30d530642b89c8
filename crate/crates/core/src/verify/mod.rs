//! Reproduction of reference codes and empirical checks of structural statements.

pub mod conjecture;
pub mod fixtures;
pub mod harness;
pub mod reproduce;
pub mod tables;

pub use conjecture::{conjecture_harness, ConjectureCase, ConjectureReport, ConjectureScope};
pub use fixtures::{fixture, fixtures, Expected, Fixture};
pub use harness::{replay, structural_harnesses, Case, HarnessReport, HarnessScope, Outcome, Statement, Verdict};
pub use reproduce::{reproduce_fixture, reproduce_tables, RowResult};
pub use tables::{default_fit, default_table, FitStage, TableFit};

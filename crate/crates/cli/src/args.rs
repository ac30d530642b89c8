use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rtheta::code::{DEFAULT_DUAL_CAP, DEFAULT_MAX_SIZE};
use rtheta::ring::parse_vector;
use rtheta::{Construction, Error, RingElement, Theta};

#[derive(Parser, Debug)]
#[command(name = "rtheta", version, about = "Cyclic and quasi-cyclic DNA codes over Z4 + wZ4")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Ring parameter, e.g. `2`, `2w`, `2+2w`.
    #[arg(long, global = true, default_value = "2", value_parser = parse_theta)]
    pub theta: Theta,
    /// Gau table override file (`<element> = <dinucleotide>` lines plus `lambda = <element>`).
    #[arg(long, global = true)]
    pub table_file: Option<PathBuf>,
    /// Largest code materialized, in codewords.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIZE, value_parser = positive_usize)]
    pub max_size: usize,
    /// Largest brute-force dual search, in candidate vectors.
    #[arg(long, global = true, default_value_t = DEFAULT_DUAL_CAP, value_parser = positive_u64)]
    pub dual_cap: u64,
    /// Worker threads (default: all available).
    #[arg(long, global = true, value_parser = positive_usize)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Cyclic,
    Qc,
    Matrix,
    Ideal,
}

#[derive(Args, Debug, Clone)]
pub struct CodeSpec {
    #[arg(long, value_enum, default_value_t = Kind::Cyclic)]
    pub kind: Kind,
    /// Quasi-cyclic index `l`.
    #[arg(long, default_value_t = 1)]
    pub index: usize,
    /// Generator vector, e.g. `(1+3w,1+w,1+w,1+3w)`. Repeat for matrix rows; `a` then `b` for ideals.
    #[arg(long = "gen", required = true, allow_hyphen_values = true)]
    pub generators: Vec<String>,
    /// Code length for `--kind ideal`.
    #[arg(long)]
    pub length: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the addition and multiplication tables of R_theta.
    RingTable,
    /// Build a code and report its parameters.
    Build {
        #[command(flatten)]
        spec: CodeSpec,
        /// Also list every codeword as a DNA string.
        #[arg(long)]
        emit_dna: bool,
    },
    /// Compute the dual code and the self-duality checks.
    Dual {
        #[command(flatten)]
        spec: CodeSpec,
    },
    /// Rebuild every reference code and compare with the published parameters.
    VerifyPaper,
    /// Run the structural-statement harnesses.
    Harness {
        /// Harnesses to run.
        #[arg(long, value_enum, default_values_t = vec![HarnessName::All])]
        only: Vec<HarnessName>,
        /// Random cyclic and quasi-cyclic codes for the generator-criterion harness.
        #[arg(long)]
        generator_samples: Option<usize>,
        /// Random word pairs per ring for the distance relation.
        #[arg(long)]
        pair_samples: Option<usize>,
    },
    /// Run both directions of the quasi-cyclic reversibility conjecture.
    Conjecture {
        /// Random first rows per (theta, l, m).
        #[arg(long, default_value_t = 40)]
        samples: usize,
    },
    /// Search first rows for codes with good (M, d_dna).
    Search {
        #[arg(long, value_enum, default_value_t = Kind::Cyclic)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long, value_parser = positive_usize)]
        length: usize,
        /// Required closure properties.
        #[arg(long, value_enum, value_delimiter = ',')]
        require: Vec<Requirement>,
        /// Enumerate all 16^n first rows when that is at most this many, otherwise sample this many.
        #[arg(long, default_value_t = 4096, value_parser = positive_usize)]
        samples: usize,
    },
    /// Fit Gau tables to the ring's conventions and optional DNA evidence.
    FitTable {
        /// Code whose encoding is listed in `--dna-file`.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long = "gen", allow_hyphen_values = true)]
        generators: Vec<String>,
        #[arg(long)]
        length: Option<usize>,
        /// DNA strings, one per line.
        #[arg(long, requires = "kind")]
        dna_file: Option<PathBuf>,
        /// Only require the encoded code to be contained in the list.
        #[arg(long)]
        subset: bool,
        /// Allow any complement constant in {2, 2w, 2+2w}.
        #[arg(long)]
        any_lambda: bool,
        /// Directory receiving one table file per fitted table.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Number of tables written or printed.
        #[arg(long, default_value_t = 1)]
        limit: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarnessName {
    All,
    Ideals,
    Generators,
    Distance,
    Gray,
    Frobenius,
    SelfDual,
    R2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Requirement {
    Reversible,
    Complement,
    Rc,
}

fn parse_theta(s: &str) -> Result<Theta, String> {
    s.parse::<Theta>().map_err(|e| e.to_string())
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

fn vectors(generators: &[String]) -> Result<Vec<Vec<RingElement>>, Error> {
    generators.iter().map(|g| parse_vector(g)).collect()
}

/// Turns the flags of a code into a [`Construction`].
pub fn construction(kind: Kind, index: usize, generators: &[String], length: Option<usize>) -> Result<Construction, Error> {
    let mut rows = vectors(generators)?;
    let single = |rows: &mut Vec<Vec<RingElement>>| {
        if rows.len() == 1 {
            Ok(rows.remove(0))
        } else {
            Err(Error::Shape(format!("expected exactly one --gen, got {}", rows.len())))
        }
    };
    Ok(match kind {
        Kind::Cyclic => Construction::Cyclic { row: single(&mut rows)? },
        Kind::Qc => Construction::QuasiCyclic { row: single(&mut rows)?, index },
        Kind::Matrix => Construction::Matrix { rows },
        Kind::Ideal => {
            if rows.len() != 2 {
                return Err(Error::Shape("--kind ideal takes --gen a --gen b".into()));
            }
            let n = length.ok_or_else(|| Error::Shape("--kind ideal needs --length".into()))?;
            let b = rows.pop().unwrap_or_default();
            let a = rows.pop().unwrap_or_default();
            Construction::Ideal { a, b, n }
        }
    })
}

impl CodeSpec {
    pub fn construction(&self) -> Result<Construction, Error> {
        construction(self.kind, self.index, &self.generators, self.length)
    }
}

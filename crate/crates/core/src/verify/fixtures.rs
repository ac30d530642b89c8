//! Reference code parameters and codeword lists shipped with the crate.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::code::Construction;
use crate::dnamap::DnaString;
use crate::error::{Error, Result};
use crate::ring::{parse_vector, RingElement, Theta};

const FIXTURES: &str = include_str!("../../data/fixtures.txt");
const SELF_DUAL_R2: &str = include_str!("../../data/self_dual_r2.txt");

fn embedded_list(name: &str) -> Option<&'static str> {
    match name {
        "qc_r2_example.txt" => Some(include_str!("../../data/qc_r2_example.txt")),
        "qc_r22w_example.txt" => Some(include_str!("../../data/qc_r22w_example.txt")),
        _ => None,
    }
}

/// Published `(2n, M, d_H)` of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub dna_length: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub d_h: u32,
}

/// A reference code: how to build it and what it should look like.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub theta: Theta,
    pub construction: Construction,
    pub expected: Expected,
    /// Complete DNA codeword list, when one is published.
    pub dna: Option<Vec<DnaString>>,
}

impl Fixture {
    /// Row of a parameter table (ids `tableK-R`), as opposed to a worked example.
    pub fn is_table_row(&self) -> bool {
        self.id.starts_with("table")
    }
}

/// Parses one DNA string per line; `#` starts a comment line.
pub fn parse_dna_list(text: &str) -> Result<Vec<DnaString>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

/// Parses the `|`-separated fixture format used by `data/fixtures.txt`.
pub fn parse_fixtures(text: &str, lists: impl Fn(&str) -> Option<String>) -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        let [id, theta, kind, index, row, len, m, d, list] = fields[..] else {
            return Err(Error::parse(line, "expected 9 `|`-separated fields"));
        };
        let theta: Theta = theta.parse()?;
        let row = parse_vector(row)?;
        let index: usize = index.parse().map_err(|_| Error::parse(index, "bad index"))?;
        let construction = match kind {
            "cyclic" => Construction::Cyclic { row },
            "qc" => Construction::QuasiCyclic { row, index },
            other => return Err(Error::parse(other, "kind must be `cyclic` or `qc`")),
        };
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(s, "bad number"));
        let expected = Expected { dna_length: num(len)?, m: num(m)?, d_h: num(d)? as u32 };
        let dna = if list.is_empty() {
            None
        } else {
            let text = lists(list).ok_or_else(|| Error::parse(list, "unknown codeword list"))?;
            Some(parse_dna_list(&text)?)
        };
        out.push(Fixture { id: id.to_string(), theta, construction, expected, dna });
    }
    Ok(out)
}

/// All shipped fixtures, in file order.
pub fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        parse_fixtures(FIXTURES, |name| embedded_list(name).map(str::to_string)).expect("embedded fixtures parse")
    })
}

pub fn fixture(id: &str) -> Option<&'static Fixture> {
    fixtures().iter().find(|f| f.id == id)
}

/// Generator matrix of the length-8 self-dual code over `R_2`.
pub fn self_dual_matrix() -> Vec<Vec<RingElement>> {
    SELF_DUAL_R2
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_vector(l).expect("embedded matrix parses"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_fixtures_parse() {
        let all = fixtures();
        assert_eq!(all.iter().filter(|f| f.is_table_row()).count(), 15);
        let ex = fixture("example-r22w").unwrap();
        assert_eq!(ex.dna.as_ref().unwrap().len(), 256);
        assert_eq!(fixture("example-r2").unwrap().dna.as_ref().unwrap().len(), 32);
        let t4 = fixture("table4-2").unwrap();
        assert_eq!(t4.construction.len(), 12);
        assert_eq!(t4.construction.step(), Some(3));
        assert_eq!(self_dual_matrix().len(), 4);
    }

    #[test]
    fn malformed_lines_are_rejected() {
        let none = |_: &str| None;
        assert!(parse_fixtures("a | 2 | cyclic | 1 | (1) | 2 | 4", none).is_err());
        assert!(parse_fixtures("a | 2 | twisted | 1 | (1) | 2 | 4 | 1 |", none).is_err());
        assert!(parse_fixtures("a | 2 | qc | 1 | (1) | 2 | 4 | 1 | missing.txt", none).is_err());
        let ok = parse_fixtures("a | 2 | cyclic | 1 | (1,1) | 4 | 16 | 2 |", none).unwrap();
        assert_eq!(ok[0].expected, Expected { dna_length: 4, m: 16, d_h: 2 });
    }
}

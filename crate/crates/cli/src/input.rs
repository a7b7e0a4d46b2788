//! Resolving command-line operands to posets, lattices and relations.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use relmod::oracle::Matrix;
use relmod::{catalog, Correspondence, Error, Lattice, PermGroup, Poset, Rational, Result};

use crate::Source;

fn read_if_file(arg: &str) -> Result<Option<String>> {
    let path = Path::new(arg);
    if path.is_file() {
        Ok(Some(fs::read_to_string(path)?))
    } else {
        Ok(None)
    }
}

/// A path to an existing file is parsed; anything else is a builtin name.
pub fn poset(arg: &str) -> Result<Poset> {
    match read_if_file(arg)? {
        Some(text) => Poset::parse(&text),
        None => catalog::poset(arg),
    }
}

pub fn lattice(arg: &str) -> Result<Lattice> {
    match read_if_file(arg)? {
        Some(text) => Lattice::parse(&text),
        None => catalog::lattice(arg),
    }
}

impl Source {
    pub fn lattice(&self) -> Result<Lattice> {
        match (&self.poset, &self.lattice) {
            (Some(p), _) => poset(p)?.down_ideal_lattice(),
            (None, Some(l)) => lattice(l),
            (None, None) => Err(Error::Precondition("either --poset or --lattice is required".into())),
        }
    }
}

pub fn relation(path: &str) -> Result<Correspondence> {
    Correspondence::parse(&fs::read_to_string(path)?)
}

/// Reads `[[["1","0"],["0","1"]], ...]`: one square matrix of rationals per
/// group element.
pub fn vrep_matrices(path: &str, group: &PermGroup) -> Result<Vec<Matrix<Rational>>> {
    let text = fs::read_to_string(path)?;
    let raw: Vec<Vec<Vec<String>>> =
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
    if raw.len() != group.order() {
        return Err(Error::DimensionMismatch {
            context: "representation matrices",
            expected: group.order(),
            found: raw.len(),
        });
    }
    raw.into_iter()
        .map(|m| {
            let rows = m
                .into_iter()
                .map(|row| {
                    row.iter()
                        .map(|s| {
                            Rational::from_str(s.trim()).map_err(|_| Error::Parse {
                                line: 0,
                                message: format!("bad rational `{s}`"),
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_rows(rows)
        })
        .collect()
}

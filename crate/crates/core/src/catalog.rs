//! Named posets and lattices.
//!
//! Posets: `empty`, `point`, `antichainN`, `chainN`, `vee` (one minimum below
//! two maxima), `wedge` (two minima below one maximum), `chain2+point`.
//!
//! Lattices: `lozenge` (subsets of a 2-set), `equality-3` (three atoms),
//! `D` (the pentagon), `C` (`0 < m < a, b < 1`), `C-op`, `P` (product of
//! chains with 3 and 2 elements), `chainN` (N elements), `booleanK`.

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poset::Poset;

/// The lattices used in the worked examples.
pub const LATTICE_NAMES: [&str; 6] = ["lozenge", "equality-3", "D", "C", "C-op", "P"];

pub const POSET_NAMES: [&str; 7] = ["empty", "point", "antichainN", "chainN", "vee", "wedge", "chain2+point"];

fn suffix_number(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

pub fn poset(name: &str) -> Result<Poset> {
    let p = match name {
        "empty" => Poset::antichain(0),
        "point" => Poset::antichain(1),
        "vee" | "V" => Poset::from_leq_fn(3, |a, b| a == b || a == 0)?,
        "wedge" | "lambda" => Poset::from_leq_fn(3, |a, b| a == b || b == 2)?,
        "chain2+point" => Poset::from_leq_fn(3, |a, b| a == b || (a, b) == (0, 1))?,
        _ => {
            if let Some(n) = suffix_number(name, "antichain") {
                guard(n)?;
                Poset::antichain(n)
            } else if let Some(n) = suffix_number(name, "chain") {
                guard(n)?;
                Poset::chain(n)
            } else {
                return Err(Error::UnknownBuiltin(name.to_string()));
            }
        }
    };
    Ok(p)
}

fn guard(n: usize) -> Result<()> {
    if n > crate::poset::MAX_POSET_SIZE {
        return Err(Error::Guard {
            what: "builtin poset size",
            requested: n as u128,
            limit: crate::poset::MAX_POSET_SIZE as u128,
        });
    }
    Ok(())
}

fn labelled(names: &[&str], covers: &[(usize, usize)]) -> Result<Lattice> {
    let n = names.len();
    // reflexive-transitive closure of the cover pairs
    let mut leq = vec![vec![false; n]; n];
    for (a, row) in leq.iter_mut().enumerate() {
        row[a] = true;
    }
    for &(a, b) in covers {
        leq[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    Lattice::from_matrix(&leq, Some(names.iter().map(|s| s.to_string()).collect()))
}

pub fn lattice(name: &str) -> Result<Lattice> {
    match name {
        "lozenge" => labelled(&["0", "a", "b", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]),
        "equality-3" | "M3" => labelled(
            &["0", "a", "b", "c", "1"],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        ),
        "D" | "pentagon" | "diamond" => labelled(
            &["0", "x", "z", "y", "1"],
            &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)],
        ),
        "C" => labelled(&["0", "m", "a", "b", "1"], &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]),
        "C-op" => labelled(&["0", "a", "b", "j", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]),
        "P" => Lattice::chain(3)?.product(&Lattice::chain(2)?),
        _ => {
            if let Some(n) = suffix_number(name, "chain") {
                Lattice::chain(n)
            } else if let Some(k) = suffix_number(name, "boolean") {
                Lattice::boolean(k)
            } else {
                Err(Error::UnknownBuiltin(name.to_string()))
            }
        }
    }
}

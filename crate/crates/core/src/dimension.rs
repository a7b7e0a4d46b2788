//! Closed-form dimensions of fundamental and simple modules and of the
//! Jacobson radical of the algebra of relations on an `n`-set.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{enumerate_posets, Poset, MAX_ENUMERATION_SIZE};

fn binomial(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// `Σ_{i=0}^{e} (−1)^i C(e,i) (g−i)^x`, the number of maps `X → G` whose
/// image contains a fixed `e`-subset (with `0^0 = 1`).
pub fn dim_fundamental(e: usize, g: usize, x: usize) -> Result<BigInt> {
    if g < e {
        return Err(Error::Precondition(format!("|G| = {g} is smaller than |E| = {e}")));
    }
    let mut total = BigInt::zero();
    for i in 0..=e {
        let term = binomial(e, i) * Pow::pow(BigInt::from(g - i), x as u32);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    if total.is_negative() {
        return Err(Error::Internal(format!("negative count for e={e}, g={g}, x={x}")));
    }
    Ok(total)
}

/// `|G_{E,R}|` computed in `T = I↓(E,R)`.
pub fn g_size(poset: &Poset) -> Result<usize> {
    Ok(poset.down_ideal_lattice()?.gdata()?.g_size())
}

/// The data `(E, R, dim V)` of a simple module, with derived `|Aut|` and `|G|`.
#[derive(Debug, Clone, Serialize)]
pub struct SimpleModuleDescriptor {
    pub poset: Poset,
    pub aut_order: usize,
    pub g_size: usize,
    pub dim_v: usize,
}

impl SimpleModuleDescriptor {
    pub fn new(poset: Poset, dim_v: usize) -> Result<Self> {
        if dim_v == 0 {
            return Err(Error::Precondition("dim V must be positive".into()));
        }
        let aut_order = poset.automorphisms().order();
        let g_size = g_size(&poset)?;
        Ok(SimpleModuleDescriptor {
            poset,
            aut_order,
            g_size,
            dim_v,
        })
    }

    pub fn e(&self) -> usize {
        self.poset.size()
    }

    pub fn dim_fundamental(&self, x: usize) -> Result<BigInt> {
        dim_fundamental(self.e(), self.g_size, x)
    }

    /// `dim V · |B_X| / |Aut(E,R)|`; zero when `|X| < |E|`.
    pub fn dim_simple(&self, x: usize) -> Result<BigInt> {
        if x < self.e() {
            return Ok(BigInt::zero());
        }
        let f = self.dim_fundamental(x)?;
        let (orbits, rest) = f.div_rem(&BigInt::from(self.aut_order));
        if !rest.is_zero() {
            return Err(Error::Internal(format!(
                "|B_X| = {f} is not divisible by |Aut| = {}",
                self.aut_order
            )));
        }
        Ok(orbits * BigInt::from(self.dim_v))
    }
}

/// One row of the per-class table at a fixed `n`.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub e: usize,
    pub poset: Poset,
    pub covers: Vec<(usize, usize)>,
    pub aut: usize,
    pub g: usize,
    #[serde(serialize_with = "as_decimal")]
    pub sum: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub total: BigInt,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn guard_n(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::Guard {
            what: "radical size n",
            requested: n as u128,
            limit: MAX_ENUMERATION_SIZE as u128,
        });
    }
    Ok(())
}

/// For each isomorphism class `(E,R)` with `|E| ≤ n`: `|Aut|`, `|G|`, the
/// alternating sum at `|X| = n`, and its contribution `sum² / |Aut|`.
pub fn example_table(n: usize) -> Result<Vec<TableRow>> {
    guard_n(n)?;
    let mut rows = Vec::new();
    for e in 0..=n {
        let classes = enumerate_posets(e)?;
        let mut part: Vec<TableRow> = classes
            .into_par_iter()
            .map(|class| {
                let g = g_size(&class.poset)?;
                let sum = dim_fundamental(e, g, n)?;
                let (total, rest) = (&sum * &sum).div_rem(&BigInt::from(class.aut_order));
                if !rest.is_zero() {
                    return Err(Error::Internal(format!(
                        "sum² = {} not divisible by |Aut| = {}",
                        &sum * &sum,
                        class.aut_order
                    )));
                }
                Ok(TableRow {
                    e,
                    covers: class.poset.cover_pairs(),
                    poset: class.poset,
                    aut: class.aut_order,
                    g,
                    sum,
                    total,
                })
            })
            .collect::<Result<_>>()?;
        rows.append(&mut part);
    }
    Ok(rows)
}

/// `2^{n²}` minus the table totals.
pub fn radical_from_table(n: usize, rows: &[TableRow]) -> Result<BigInt> {
    let semisimple: BigInt = rows.iter().map(|r| &r.total).sum();
    let full = BigInt::one() << (n * n);
    let radical = full - semisimple;
    if radical.is_negative() {
        return Err(Error::Internal(format!("negative radical dimension at n = {n}")));
    }
    Ok(radical)
}

/// Dimension of the Jacobson radical of the algebra of relations on an `n`-set.
pub fn radical_dim(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    radical_from_table(n, &example_table(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn fundamental_values() {
        assert_eq!(dim_fundamental(2, 4, 3).unwrap(), big(18));
        assert_eq!(dim_fundamental(2, 3, 3).unwrap(), big(12));
        assert_eq!(dim_fundamental(0, 1, 5).unwrap(), big(1));
        assert_eq!(dim_fundamental(3, 3, 0).unwrap(), big(0));
        assert_eq!(dim_fundamental(0, 0, 0).unwrap(), big(1));
        assert!(dim_fundamental(3, 2, 4).is_err());
    }

    #[test]
    fn simple_dimensions_at_two() {
        let d = |p: Poset| SimpleModuleDescriptor::new(p, 1).unwrap().dim_simple(2).unwrap();
        assert_eq!(d(Poset::antichain(0)), big(1));
        assert_eq!(d(Poset::antichain(1)), big(3));
        assert_eq!(d(Poset::antichain(2)), big(1));
        assert_eq!(d(Poset::chain(2)), big(2));
        assert_eq!(d(Poset::chain(3)), big(0));
    }

    #[test]
    fn small_radicals() {
        assert_eq!(radical_dim(1).unwrap(), big(0));
        assert_eq!(radical_dim(2).unwrap(), big(0));
        assert_eq!(radical_dim(3).unwrap(), big(42));
        assert!(radical_dim(9).unwrap_err().is_guard());
    }
}

//! Finite lattices with precomputed join and meet tables.
//!
//! Elements are indexed `0..n` along a linear extension of the order, so the
//! bottom element is always `0` and the top element is always `n - 1`.

mod gdata;
mod irreducible;
mod morphism;

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Axiom, Error, Result};
use crate::poset::parse_square_matrix;

pub use gdata::GData;
pub use irreducible::Irreducibles;

/// Largest lattice accepted; join and meet tables are quadratic in the size.
pub const MAX_LATTICE_SIZE: usize = 1024;

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    join: Vec<u16>,
    meet: Vec<u16>,
    labels: Vec<String>,
}

fn size_guard(n: usize) -> Result<()> {
    if n > MAX_LATTICE_SIZE {
        return Err(Error::Guard {
            what: "lattice size",
            requested: n as u128,
            limit: MAX_LATTICE_SIZE as u128,
        });
    }
    if n == 0 {
        return Err(Error::Precondition("a lattice has at least one element".into()));
    }
    Ok(())
}

impl Lattice {
    /// Validates an order given by a predicate and derives joins and meets.
    ///
    /// If the given indexing is not a linear extension, elements are re-indexed
    /// by the number of elements below them; `labels` follow the elements.
    /// Error witnesses refer to the caller's indices.
    pub fn from_leq_fn(n: usize, labels: Option<Vec<String>>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        size_guard(n)?;
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(Error::DimensionMismatch {
                context: "lattice labels",
                expected: n,
                found: labels.len(),
            });
        }
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                for b in 0..n {
                    row.set(b, leq(a, b));
                }
                row
            })
            .collect();
        validate_order(&up)?;
        let mut order: Vec<usize> = (0..n).collect();
        let is_extension = (0..n).all(|a| up[a].ones().all(|b| b >= a));
        if !is_extension {
            let below: Vec<usize> = (0..n).map(|b| (0..n).filter(|&a| up[a][b]).count()).collect();
            order.sort_by_key(|&a| (below[a], a));
            up = order
                .iter()
                .map(|&a| {
                    let mut row = FixedBitSet::with_capacity(n);
                    for (j, &b) in order.iter().enumerate() {
                        row.set(j, leq(a, b));
                    }
                    row
                })
                .collect();
        }
        let labels = order.iter().map(|&a| labels[a].clone()).collect();
        Self::from_up_rows(up, labels).map_err(|e| match e {
            Error::NotALattice { a, b, bound } => Error::NotALattice {
                a: order[a],
                b: order[b],
                bound,
            },
            other => other,
        })
    }

    pub fn from_matrix(rows: &[Vec<bool>], labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                context: "lattice matrix",
                expected: n,
                found: r.len(),
            });
        }
        Self::from_leq_fn(n, labels, |a, b| rows[a][b])
    }

    /// Reads the poset matrix format; joins and meets are derived.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_matrix(&parse_square_matrix(text)?, None)
    }

    /// Rows already form a valid order along a linear extension.
    fn from_up_rows(up: Vec<FixedBitSet>, labels: Vec<String>) -> Result<Self> {
        let n = up.len();
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        let mut join = vec![0u16; n * n];
        let mut meet = vec![0u16; n * n];
        for a in 0..n {
            for b in a..n {
                let j = least_in(&up, a, b).ok_or(Error::NotALattice {
                    a,
                    b,
                    bound: "least upper bound",
                })?;
                let m = least_in(&down, a, b).ok_or(Error::NotALattice {
                    a,
                    b,
                    bound: "greatest lower bound",
                })?;
                join[a * n + b] = j as u16;
                join[b * n + a] = j as u16;
                meet[a * n + b] = m as u16;
                meet[b * n + a] = m as u16;
            }
        }
        Ok(Lattice {
            n,
            up,
            down,
            join,
            meet,
            labels,
        })
    }

    /// Lattice of subsets of `0..ground` given as bit masks, closed under
    /// union and intersection and sorted by `(cardinality, mask)`.
    pub(crate) fn from_ideals(ground: usize, ideals: Vec<u64>) -> Result<Self> {
        let n = ideals.len();
        size_guard(n)?;
        let index: HashMap<u64, usize> = ideals.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut up: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        let mut join = vec![0u16; n * n];
        let mut meet = vec![0u16; n * n];
        for (i, &a) in ideals.iter().enumerate() {
            for (j, &b) in ideals.iter().enumerate() {
                if a & !b == 0 {
                    up[i].insert(j);
                    down[j].insert(i);
                }
                let u = *index.get(&(a | b)).ok_or_else(|| Error::Internal("ideals not closed under union".into()))?;
                let v = *index
                    .get(&(a & b))
                    .ok_or_else(|| Error::Internal("ideals not closed under intersection".into()))?;
                join[i * n + j] = u as u16;
                meet[i * n + j] = v as u16;
            }
        }
        let labels = ideals
            .iter()
            .map(|&m| {
                let items: Vec<String> = (0..ground).filter(|&e| m >> e & 1 == 1).map(|e| e.to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        Ok(Lattice {
            n,
            up,
            down,
            join,
            meet,
            labels,
        })
    }

    /// The chain `0 < 1 < … < n-1` with `n` elements.
    pub fn chain(n: usize) -> Result<Self> {
        Self::from_leq_fn(n, None, |a, b| a <= b)
    }

    /// Subsets of a `k`-set.
    pub fn boolean(k: usize) -> Result<Self> {
        if k > 10 {
            return Err(Error::Guard {
                what: "boolean lattice rank",
                requested: k as u128,
                limit: 10,
            });
        }
        Self::from_ideals(k, {
            let mut all: Vec<u64> = (0..1u64 << k).collect();
            all.sort_by_key(|&m| (m.count_ones(), m));
            all
        })
    }

    /// Direct product with the componentwise order.
    pub fn product(&self, other: &Lattice) -> Result<Self> {
        let m = other.n;
        let labels = (0..self.n * m)
            .map(|i| format!("({},{})", self.labels[i / m], other.labels[i % m]))
            .collect();
        Self::from_leq_fn(self.n * m, Some(labels), |a, b| {
            self.leq(a / m, b / m) && other.leq(a % m, b % m)
        })
    }

    /// The same set with the reversed order.
    pub fn opposite(&self) -> Lattice {
        let n = self.n;
        let rev = |i: usize| n - 1 - i;
        let up: Vec<FixedBitSet> = (0..n).map(|a| remap(&self.down[rev(a)], n)).collect();
        let down: Vec<FixedBitSet> = (0..n).map(|a| remap(&self.up[rev(a)], n)).collect();
        let mut join = vec![0u16; n * n];
        let mut meet = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = rev(self.meet(rev(a), rev(b))) as u16;
                meet[a * n + b] = rev(self.join(rev(a), rev(b))) as u16;
            }
        }
        Lattice {
            n,
            up,
            down,
            join,
            meet,
            labels: (0..n).map(|a| self.labels[rev(a)].clone()).collect(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "lattice labels",
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a][b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.n - 1
    }

    /// Join of a family; the empty join is the bottom element.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom(), |acc, t| self.join(acc, t))
    }

    /// Meet of a family; the empty meet is the top element.
    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top(), |acc, t| self.meet(acc, t))
    }

    /// Elements `b` with `a ≤ b`.
    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    /// Elements `b` with `b ≤ a`.
    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn label(&self, t: usize) -> &str {
        &self.labels[t]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// `r(t)`: the join of all elements strictly below `t`.
    pub fn r(&self, t: usize) -> usize {
        self.join_all(self.down[t].ones().filter(|&s| s != t))
    }

    pub fn is_irreducible(&self, t: usize) -> bool {
        t != self.bottom() && self.r(t) != t
    }

    pub fn rows_as_strings(&self) -> Vec<String> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| if self.leq(a, b) { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for r in self.rows_as_strings() {
            s.push_str(&r);
            s.push('\n');
        }
        s
    }

    /// Whether `f: self → other` satisfies `f(a ∨ b) = f(a) ∨ f(b)` for all pairs.
    pub fn preserves_joins(&self, f: &[usize], other: &Lattice) -> Option<(usize, usize)> {
        for a in 0..self.n {
            for b in a + 1..self.n {
                if f[self.join(a, b)] != other.join(f[a], f[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

fn remap(row: &FixedBitSet, n: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(n);
    for i in row.ones() {
        out.insert(n - 1 - i);
    }
    out
}

/// The element `c` of `rows[a] ∩ rows[b]` whose own row equals the intersection.
fn least_in(rows: &[FixedBitSet], a: usize, b: usize) -> Option<usize> {
    let mut common = rows[a].clone();
    common.intersect_with(&rows[b]);
    let count = common.count_ones(..);
    common.ones().find(|&c| rows[c].count_ones(..) == count)
}

fn validate_order(up: &[FixedBitSet]) -> Result<()> {
    let n = up.len();
    for (a, row) in up.iter().enumerate() {
        if !row[a] {
            return Err(Error::InvalidOrder {
                axiom: Axiom::Reflexivity,
                a,
                b: a,
            });
        }
    }
    for (a, row) in up.iter().enumerate() {
        for b in row.ones() {
            if b > a && up[b][a] {
                return Err(Error::InvalidOrder {
                    axiom: Axiom::Antisymmetry,
                    a,
                    b,
                });
            }
        }
    }
    for a in 0..n {
        for b in up[a].ones() {
            if let Some(c) = up[b].difference(&up[a]).next() {
                return Err(Error::InvalidOrder {
                    axiom: Axiom::Transitivity,
                    a,
                    b: c,
                });
            }
        }
    }
    Ok(())
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<(&str, &str)> = (0..self.n)
            .flat_map(|a| {
                (0..self.n)
                    .filter(move |&b| self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b)))
                    .map(move |b| (self.label(a), self.label(b)))
            })
            .collect();
        write!(f, "Lattice({}; covers {:?})", self.n, covers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn validation_examples() {
        let c = Lattice::chain(3).unwrap();
        assert_eq!((c.bottom(), c.top()), (0, 2));
        let anti = Lattice::from_leq_fn(2, None, |a, b| a == b).unwrap_err();
        assert!(matches!(anti, Error::NotALattice { .. }));
        let loz = catalog::lattice("lozenge").unwrap();
        assert_eq!(loz.label(loz.bottom()), "0");
        assert_eq!(loz.label(loz.top()), "1");
    }

    #[test]
    fn reindexes_to_linear_extension() {
        // top given first
        let lat = Lattice::from_leq_fn(3, None, |a, b| a == b || b == 0 || (a == 2 && b == 1)).unwrap();
        assert_eq!(lat.labels(), &["2", "1", "0"]);
        assert!(lat.leq(0, 2));
    }

    #[test]
    fn tables_match_bounds() {
        for name in catalog::LATTICE_NAMES {
            let lat = catalog::lattice(name).unwrap();
            let n = lat.size();
            for a in 0..n {
                assert!(lat.leq(lat.bottom(), a) && lat.leq(a, lat.top()));
                for b in 0..n {
                    let j = lat.join(a, b);
                    assert!(lat.leq(a, j) && lat.leq(b, j));
                    assert!((0..n).all(|c| !(lat.leq(a, c) && lat.leq(b, c)) || lat.leq(j, c)));
                    let m = lat.meet(a, b);
                    assert!(lat.leq(m, a) && lat.leq(m, b));
                    assert!((0..n).all(|c| !(lat.leq(c, a) && lat.leq(c, b)) || lat.leq(c, m)));
                    assert_eq!(lat.join(a, lat.meet(a, b)), a);
                    assert_eq!(lat.meet(a, lat.join(a, b)), a);
                }
            }
        }
    }

    #[test]
    fn opposite_swaps_operations() {
        let c = catalog::lattice("C").unwrap();
        let op = c.opposite();
        assert_eq!(op.opposite(), c);
        for a in 0..c.size() {
            for b in 0..c.size() {
                let (ra, rb) = (c.size() - 1 - a, c.size() - 1 - b);
                assert_eq!(op.leq(ra, rb), c.leq(b, a));
                assert_eq!(op.join(ra, rb), c.size() - 1 - c.meet(a, b));
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        let d = catalog::lattice("D").unwrap();
        let back = Lattice::parse(&d.to_text()).unwrap();
        assert_eq!(back.rows_as_strings(), d.rows_as_strings());
        assert!(Lattice::parse("2\n10\n01\n").is_err());
    }
}

//! Join-irreducible elements and the operators `r` and `σ`.

use super::Lattice;
use crate::error::{Error, Result};
use crate::poset::{Poset, MAX_POSET_SIZE};

/// The poset `(E, R) = Irr(T)` together with its embedding into `T`.
///
/// Irreducibles are numbered in increasing element order, so index `i` of the
/// poset corresponds to `elements()[i]`. Subsets of `E` are bit masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irreducibles {
    poset: Poset,
    elements: Vec<usize>,
    index_of: Vec<Option<usize>>,
    below: Vec<u64>,
    above: Vec<u64>,
}

impl Irreducibles {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> usize {
        self.elements[i]
    }

    pub fn index_of(&self, t: usize) -> Option<usize> {
        self.index_of[t]
    }

    pub fn contains(&self, t: usize) -> bool {
        self.index_of[t].is_some()
    }

    /// `{e ∈ E | e ≤ t}`.
    pub fn below_mask(&self, t: usize) -> u64 {
        self.below[t]
    }

    /// `[t, ·[ ∩ E`.
    pub fn above_mask(&self, t: usize) -> u64 {
        self.above[t]
    }

    /// `E` itself as a mask.
    pub fn all_mask(&self) -> u64 {
        self.poset.all_mask()
    }

    /// Mask of the irreducibles occurring among `values`.
    pub fn hit_mask(&self, values: impl IntoIterator<Item = usize>) -> u64 {
        values
            .into_iter()
            .filter_map(|t| self.index_of[t])
            .fold(0, |m, i| m | 1 << i)
    }
}

impl Lattice {
    /// `Irr(T)` with the induced order.
    pub fn irreducibles(&self) -> Result<Irreducibles> {
        let elements: Vec<usize> = (0..self.size()).filter(|&t| self.is_irreducible(t)).collect();
        if elements.len() > MAX_POSET_SIZE {
            return Err(Error::Guard {
                what: "number of irreducible elements",
                requested: elements.len() as u128,
                limit: MAX_POSET_SIZE as u128,
            });
        }
        let poset = Poset::from_leq_fn(elements.len(), |i, j| self.leq(elements[i], elements[j]))?;
        let mut index_of = vec![None; self.size()];
        for (i, &e) in elements.iter().enumerate() {
            index_of[e] = Some(i);
        }
        let mask = |pred: &dyn Fn(usize) -> bool| {
            elements
                .iter()
                .enumerate()
                .filter(|&(_, &e)| pred(e))
                .fold(0u64, |m, (i, _)| m | 1 << i)
        };
        let below = (0..self.size()).map(|t| mask(&|e| self.leq(e, t))).collect();
        let above = (0..self.size()).map(|t| mask(&|e| self.leq(t, e))).collect();
        Ok(Irreducibles {
            poset,
            elements,
            index_of,
            below,
            above,
        })
    }

    /// `σ(t)`: the meet of the irreducibles strictly above `t`; the empty meet is `1̂`.
    pub fn sigma(&self, irr: &Irreducibles, t: usize) -> usize {
        self.meet_all(irr.elements().iter().copied().filter(|&e| self.lt(t, e)))
    }

    /// Fixpoint of `r` starting at `t`.
    pub fn r_infinity(&self, t: usize) -> usize {
        iterate_to_fixpoint(t, self.size(), |s| self.r(s))
    }

    /// Fixpoint of `σ` starting at `t`.
    pub fn sigma_infinity(&self, irr: &Irreducibles, t: usize) -> usize {
        iterate_to_fixpoint(t, self.size(), |s| self.sigma(irr, s))
    }
}

/// `r` is decreasing and `σ` increasing, so a fixpoint is reached within `n` steps.
fn iterate_to_fixpoint(mut t: usize, n: usize, f: impl Fn(usize) -> usize) -> usize {
    for _ in 0..=n {
        let next = f(t);
        if next == t {
            return t;
        }
        t = next;
    }
    unreachable!("monotone iteration on a finite lattice must stabilise")
}

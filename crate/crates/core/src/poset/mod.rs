//! Finite posets on `0..n` stored as bit-packed up-set rows.

mod canonical;
mod enumerate;

use std::fmt;

use serde::Serialize;

use crate::error::{Axiom, Error, Result};
use crate::lattice::Lattice;
use crate::perm::{Perm, PermGroup};

pub use enumerate::{enumerate_by_brute_force, enumerate_by_extension, enumerate_posets, labeled_poset_count, PosetClass, MAX_ENUMERATION_SIZE};

/// Largest poset representable with one machine word per row.
pub const MAX_POSET_SIZE: usize = 64;

/// Default cap on the number of ideals materialised by the ideal lattices.
pub const MAX_IDEALS: usize = 1024;

/// A partial order on `0..n`. Bit `b` of `up[a]` is set iff `a ≤ b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poset {
    n: usize,
    up: Vec<u64>,
}

#[inline]
fn bit(i: usize) -> u64 {
    1u64 << i
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Poset {
    /// Validates a relation given as a predicate `leq(a, b)`.
    pub fn from_leq_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if n > MAX_POSET_SIZE {
            return Err(Error::Guard {
                what: "poset size",
                requested: n as u128,
                limit: MAX_POSET_SIZE as u128,
            });
        }
        let mut up = vec![0u64; n];
        for (a, row) in up.iter_mut().enumerate() {
            for b in 0..n {
                if leq(a, b) {
                    *row |= bit(b);
                }
            }
        }
        Self::from_up_masks(up)
    }

    pub fn from_matrix(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "poset matrix",
                    expected: n,
                    found: r.len(),
                });
            }
        }
        Self::from_leq_fn(n, |a, b| rows[a][b])
    }

    /// Validates rows where bit `b` of `up[a]` means `a ≤ b`.
    pub fn from_up_masks(up: Vec<u64>) -> Result<Self> {
        let n = up.len();
        if n > MAX_POSET_SIZE {
            return Err(Error::Guard {
                what: "poset size",
                requested: n as u128,
                limit: MAX_POSET_SIZE as u128,
            });
        }
        let outside = !full_mask(n);
        for (a, &row) in up.iter().enumerate() {
            if row & outside != 0 {
                return Err(Error::OutOfRange {
                    value: 63 - row.leading_zeros() as usize,
                    size: n,
                });
            }
            if row & bit(a) == 0 {
                return Err(Error::InvalidOrder { axiom: Axiom::Reflexivity, a, b: a });
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if up[a] & bit(b) != 0 && up[b] & bit(a) != 0 {
                    return Err(Error::InvalidOrder { axiom: Axiom::Antisymmetry, a, b });
                }
            }
        }
        for a in 0..n {
            let mut reach = up[a];
            let mut rest = up[a];
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                reach |= up[b];
            }
            let missing = reach & !up[a];
            if missing != 0 {
                return Err(Error::InvalidOrder {
                    axiom: Axiom::Transitivity,
                    a,
                    b: missing.trailing_zeros() as usize,
                });
            }
        }
        Ok(Poset { n, up })
    }

    pub(crate) fn from_up_masks_unchecked(up: Vec<u64>) -> Self {
        Poset { n: up.len(), up }
    }

    pub fn antichain(n: usize) -> Self {
        Poset::from_up_masks_unchecked((0..n).map(bit).collect())
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        Poset::from_up_masks_unchecked((0..n).map(|a| full_mask(n) & !(bit(a) - 1)).collect())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] & bit(b) != 0
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// `[a, ·[` as a bit mask.
    #[inline]
    pub fn up_set(&self, a: usize) -> u64 {
        self.up[a]
    }

    /// `]·, a]` as a bit mask.
    pub fn down_set(&self, a: usize) -> u64 {
        (0..self.n).filter(|&b| self.leq(b, a)).fold(0, |m, b| m | bit(b))
    }

    pub fn up_masks(&self) -> &[u64] {
        &self.up
    }

    pub fn all_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Number of pairs `a < b`.
    pub fn strict_relation_count(&self) -> usize {
        self.up.iter().map(|r| r.count_ones() as usize).sum::<usize>() - self.n
    }

    pub fn opposite(&self) -> Poset {
        Poset::from_up_masks_unchecked((0..self.n).map(|a| self.down_set(a)).collect())
    }

    /// The poset transported along `p`: `p(a) ≤ p(b)` iff `a ≤ b`.
    pub fn relabel(&self, p: &Perm) -> Poset {
        assert_eq!(p.degree(), self.n);
        let mut up = vec![0u64; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                if self.leq(a, b) {
                    up[p.apply(a)] |= bit(p.apply(b));
                }
            }
        }
        Poset::from_up_masks_unchecked(up)
    }

    pub fn is_down_ideal(&self, mask: u64) -> bool {
        (0..self.n).all(|a| mask & bit(a) == 0 || self.down_set(a) & !mask == 0)
    }

    pub fn is_up_ideal(&self, mask: u64) -> bool {
        (0..self.n).all(|a| mask & bit(a) == 0 || self.up[a] & !mask == 0)
    }

    /// A linear extension: every element appears after all elements below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&a| (self.down_set(a).count_ones(), a));
        order
    }

    /// Length of the longest chain ending at each element, minus one.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.n];
        for a in self.linear_extension() {
            h[a] = (0..self.n)
                .filter(|&b| self.lt(b, a))
                .map(|b| h[b] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// All lower ideals, sorted by `(cardinality, mask)`; errors once more than
    /// `limit` ideals exist.
    pub fn down_ideals_limited(&self, limit: usize) -> Result<Vec<u64>> {
        let order = self.linear_extension();
        let below: Vec<u64> = (0..self.n).map(|a| self.down_set(a) & !bit(a)).collect();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u64)];
        while let Some((k, mask)) = stack.pop() {
            if k == order.len() {
                if out.len() == limit {
                    return Err(Error::Guard {
                        what: "number of ideals",
                        requested: limit as u128 + 1,
                        limit: limit as u128,
                    });
                }
                out.push(mask);
                continue;
            }
            let a = order[k];
            stack.push((k + 1, mask));
            if below[a] & !mask == 0 {
                stack.push((k + 1, mask | bit(a)));
            }
        }
        out.sort_by_key(|&m| (m.count_ones(), m));
        Ok(out)
    }

    pub fn down_ideals(&self) -> Result<Vec<u64>> {
        self.down_ideals_limited(MAX_IDEALS)
    }

    /// All upper ideals, sorted by `(cardinality, mask)`.
    pub fn up_ideals(&self) -> Result<Vec<u64>> {
        self.opposite().down_ideals()
    }

    /// `I↓(E,R)`: lower ideals ordered by inclusion.
    pub fn down_ideal_lattice(&self) -> Result<Lattice> {
        Lattice::from_ideals(self.n, self.down_ideals()?)
    }

    /// `I↑(E,R) = I↓(E,R^op)`.
    pub fn up_ideal_lattice(&self) -> Result<Lattice> {
        self.opposite().down_ideal_lattice()
    }

    /// Order automorphisms, identity first, then in lexicographic order of images.
    pub fn automorphisms(&self) -> PermGroup {
        let colors = self.refined_colors();
        let n = self.n;
        let mut images = vec![usize::MAX; n];
        let mut used = 0u64;
        let mut found = Vec::new();
        self.extend_automorphism(0, &colors, &mut images, &mut used, &mut found);
        PermGroup::from_elements_unchecked(n, found)
    }

    fn extend_automorphism(
        &self,
        a: usize,
        colors: &[u32],
        images: &mut Vec<usize>,
        used: &mut u64,
        found: &mut Vec<Perm>,
    ) {
        if a == self.n {
            found.push(Perm::from_images(images.clone()).expect("backtracking yields bijections"));
            return;
        }
        for b in 0..self.n {
            if *used & bit(b) != 0 || colors[b] != colors[a] {
                continue;
            }
            let consistent = (0..a).all(|c| {
                self.leq(a, c) == self.leq(b, images[c]) && self.leq(c, a) == self.leq(images[c], b)
            });
            if consistent {
                images[a] = b;
                *used |= bit(b);
                self.extend_automorphism(a + 1, colors, images, used, found);
                *used &= !bit(b);
            }
        }
        images[a] = usize::MAX;
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.n == other.n && self.canonical_form() == other.canonical_form()
    }

    /// Parses `e` followed by `e` rows of `0`/`1` characters.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = parse_square_matrix(text)?;
        Self::from_matrix(&rows)
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

    /// Strict cover relations `a ⋖ b`, for compact display.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({}; covers {:?})", self.n, self.cover_pairs())
    }
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows_as_strings().serialize(s)
    }
}

/// Reads the shared `n` + `n` rows matrix format used for posets and lattices.
pub(crate) fn parse_square_matrix(text: &str) -> Result<Vec<Vec<bool>>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing size line"))?;
    let n: usize = header.parse().map_err(|_| Error::parse(hl, format!("bad size `{header}`")))?;
    let mut rows = Vec::with_capacity(n);
    for a in 0..n {
        let (ln, row) = lines.next().ok_or_else(|| Error::parse(hl + a + 1, "missing row"))?;
        if row.len() != n {
            return Err(Error::parse(ln, format!("expected {n} columns, got {}", row.len())));
        }
        let parsed: Vec<bool> = row
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(ln, format!("unexpected character `{c}`"))),
            })
            .collect::<Result<_>>()?;
        if !parsed[a] {
            return Err(Error::parse(ln, "diagonal entry must be 1"));
        }
        rows.push(parsed);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "trailing data"));
    }
    Ok(rows)
}

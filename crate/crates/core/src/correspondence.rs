//! Correspondences (Boolean matrices) between finite sets.
//!
//! A correspondence from `X` to `Y` is a subset of `Y × X`. Row `y` holds the
//! bit-packed set of `x` with `(y, x)` present, so composition is a Boolean
//! matrix product evaluated by OR-ing whole rows.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Irreducibles, Lattice};
use crate::perm::Perm;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Correspondence {
    source: usize,
    target: usize,
    stride: usize,
    words: Vec<u64>,
}

fn stride_for(source: usize) -> usize {
    source.div_ceil(WORD).max(1)
}

impl Correspondence {
    pub fn empty(target: usize, source: usize) -> Self {
        let stride = stride_for(source);
        Correspondence {
            source,
            target,
            stride,
            words: vec![0; stride * target],
        }
    }

    pub fn full(target: usize, source: usize) -> Self {
        let mut c = Self::empty(target, source);
        for y in 0..target {
            for x in 0..source {
                c.insert(y, x);
            }
        }
        c
    }

    /// The identity morphism `Δ_X`.
    pub fn identity(n: usize) -> Self {
        let mut c = Self::empty(n, n);
        for x in 0..n {
            c.insert(x, x);
        }
        c
    }

    /// `Δ_σ = {(σ(x), x)}`.
    pub fn delta(sigma: &Perm) -> Self {
        let n = sigma.degree();
        let mut c = Self::empty(n, n);
        for x in 0..n {
            c.insert(sigma.apply(x), x);
        }
        c
    }

    /// `Δ_σ` from a raw image list, rejecting non-bijections.
    pub fn delta_from_images(images: &[usize]) -> Result<Self> {
        Ok(Self::delta(&Perm::from_images(images.to_vec())?))
    }

    pub fn from_pairs(target: usize, source: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut c = Self::empty(target, source);
        for &(y, x) in pairs {
            if y >= target {
                return Err(Error::OutOfRange { value: y, size: target });
            }
            if x >= source {
                return Err(Error::OutOfRange { value: x, size: source });
            }
            c.insert(y, x);
        }
        Ok(c)
    }

    /// Builds a correspondence from per-row bit masks (`source <= 64`).
    pub fn from_row_masks(source: usize, rows: &[u64]) -> Self {
        assert!(source <= WORD);
        let mask = if source == WORD { u64::MAX } else { (1u64 << source) - 1 };
        Correspondence {
            source,
            target: rows.len(),
            stride: 1,
            words: rows.iter().map(|r| r & mask).collect(),
        }
    }

    /// Enumerates all `2^(n·n)` relations on an `n`-set, `n <= 4`.
    pub fn all_relations(n: usize) -> Result<Vec<Correspondence>> {
        if n * n > 16 {
            return Err(Error::Guard {
                what: "relation enumeration",
                requested: 1u128 << (n * n),
                limit: 1 << 16,
            });
        }
        let total = 1u64 << (n * n);
        Ok((0..total)
            .map(|code| {
                let rows: Vec<u64> = (0..n).map(|y| (code >> (y * n)) & ((1 << n) - 1)).collect();
                Correspondence::from_row_masks(n, &rows)
            })
            .collect())
    }

    pub fn source_size(&self) -> usize {
        self.source
    }

    pub fn target_size(&self) -> usize {
        self.target
    }

    #[inline]
    fn row(&self, y: usize) -> &[u64] {
        &self.words[y * self.stride..(y + 1) * self.stride]
    }

    #[inline]
    pub fn contains(&self, y: usize, x: usize) -> bool {
        self.words[y * self.stride + x / WORD] >> (x % WORD) & 1 == 1
    }

    pub fn insert(&mut self, y: usize, x: usize) {
        assert!(y < self.target && x < self.source);
        self.words[y * self.stride + x / WORD] |= 1 << (x % WORD);
    }

    /// The sources related to `y`, in increasing order.
    pub fn row_iter(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.source).filter(move |&x| self.contains(y, x))
    }

    pub fn pair_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.target)
            .flat_map(|y| self.row_iter(y).map(move |x| (y, x)))
            .collect()
    }

    /// `self ∘ other`, i.e. the correspondence `SR` for `self = S`, `other = R`.
    pub fn compose(&self, other: &Correspondence) -> Result<Correspondence> {
        if self.source != other.target {
            return Err(Error::DimensionMismatch {
                context: "correspondence composition",
                expected: self.source,
                found: other.target,
            });
        }
        let mut out = Correspondence::empty(self.target, other.source);
        for z in 0..self.target {
            let dst = z * out.stride;
            for y in self.row_iter(z) {
                for (k, w) in other.row(y).iter().enumerate() {
                    out.words[dst + k] |= w;
                }
            }
        }
        Ok(out)
    }

    pub fn opposite(&self) -> Correspondence {
        let mut out = Correspondence::empty(self.source, self.target);
        for y in 0..self.target {
            for x in self.row_iter(y) {
                out.insert(x, y);
            }
        }
        out
    }

    pub fn is_subset_of(&self, other: &Correspondence) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Parses the `"Y X"` header followed by `Y` rows of `X` characters.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| Error::parse(hl, e.to_string())))
            .collect::<Result<_>>()?;
        let [target, source] = dims[..] else {
            return Err(Error::parse(hl, "header must be `Y X`"));
        };
        let mut c = Correspondence::empty(target, source);
        for y in 0..target {
            let (ln, row) = lines
                .next()
                .ok_or_else(|| Error::parse(hl + y + 1, "missing row"))?;
            let bytes = row.as_bytes();
            if bytes.len() != source {
                return Err(Error::parse(ln, format!("expected {source} columns, got {}", bytes.len())));
            }
            for (x, b) in bytes.iter().enumerate() {
                match b {
                    b'1' => c.insert(y, x),
                    b'0' => {}
                    _ => return Err(Error::parse(ln, format!("unexpected character `{}`", *b as char))),
                }
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing data"));
        }
        Ok(c)
    }

    pub fn rows_as_strings(&self) -> Vec<String> {
        (0..self.target)
            .map(|y| (0..self.source).map(|x| if self.contains(y, x) { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.target, self.source);
        for row in self.rows_as_strings() {
            s.push_str(&row);
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Correspondence({}x{} {:?})", self.target, self.source, self.pairs())
    }
}

impl Serialize for Correspondence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows_as_strings().serialize(s)
    }
}

/// `Γ_φ = {(x, e) | e ≤ φ(x)}`, a correspondence from `E` to `X`.
pub fn gamma_of_map(phi: &[usize], lat: &Lattice, irr: &Irreducibles) -> Result<Correspondence> {
    let mut out = Correspondence::empty(phi.len(), irr.len());
    for (x, &t) in phi.iter().enumerate() {
        if t >= lat.size() {
            return Err(Error::OutOfRange { value: t, size: lat.size() });
        }
        for (i, &e) in irr.elements().iter().enumerate() {
            if lat.leq(e, t) {
                out.insert(x, i);
            }
        }
    }
    Ok(out)
}

/// `Γ_ψ^op = {(e, x) | e ∈ ψ(x)}` for `ψ` given as bit masks over `E`.
pub fn gamma_op_of_upsets(psi: &[u64], e_size: usize) -> Correspondence {
    let mut out = Correspondence::empty(e_size, psi.len());
    for (x, &set) in psi.iter().enumerate() {
        for e in 0..e_size {
            if set >> e & 1 == 1 {
                out.insert(e, x);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Correspondence {
        Correspondence::from_pairs(n, n, pairs).unwrap()
    }

    #[test]
    fn small_composition() {
        // 0-indexed version of S={(1,1),(1,2)}, R={(1,1),(2,1)} on {1,2}
        let s = rel(2, &[(0, 0), (0, 1)]);
        let r = rel(2, &[(0, 0), (1, 0)]);
        assert_eq!(s.compose(&r).unwrap().pairs(), vec![(0, 0)]);
    }

    #[test]
    fn composition_rejects_mismatch() {
        let a = Correspondence::empty(2, 3);
        let b = Correspondence::empty(2, 2);
        assert!(matches!(a.compose(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn opposite_examples() {
        assert_eq!(Correspondence::identity(4).opposite(), Correspondence::identity(4));
        let chain = rel(2, &[(0, 0), (1, 1), (0, 1)]);
        assert_eq!(chain.opposite().pairs(), vec![(0, 0), (1, 0), (1, 1)]);
    }

    #[test]
    fn delta_examples() {
        let id = Correspondence::delta(&Perm::identity(3));
        assert_eq!(id.pairs(), vec![(0, 0), (1, 1), (2, 2)]);
        let s = Perm::from_images(vec![2, 0, 1]).unwrap();
        let prod = Correspondence::delta(&s).compose(&Correspondence::delta(&s.inverse())).unwrap();
        assert_eq!(prod, Correspondence::identity(3));
        assert!(Correspondence::delta_from_images(&[0, 0, 1]).is_err());
    }

    #[test]
    fn gamma_examples() {
        let loz = catalog::lattice("lozenge").unwrap();
        let irr = loz.irreducibles().unwrap();
        let bottom = gamma_of_map(&[loz.bottom(); 3], &loz, &irr).unwrap();
        assert_eq!(bottom.pair_count(), 0);
        let top = gamma_of_map(&[loz.top(); 3], &loz, &irr).unwrap();
        assert_eq!(top, Correspondence::full(3, 2));
        let atom = irr.elements()[0];
        let g = gamma_of_map(&[atom], &loz, &irr).unwrap();
        assert_eq!(g.pairs(), vec![(0, 0)]);
        assert!(gamma_of_map(&[99], &loz, &irr).is_err());
    }

    #[test]
    fn text_round_trip_and_errors() {
        let c = Correspondence::parse("2 3\n101\n010\n").unwrap();
        assert_eq!(c.pairs(), vec![(0, 0), (0, 2), (1, 1)]);
        assert_eq!(Correspondence::parse(&c.to_text()).unwrap(), c);
        assert!(Correspondence::parse("2 2\n10\n").is_err());
        assert!(Correspondence::parse("1 2\n1x\n").is_err());
    }

    #[test]
    fn wide_rows_use_several_words() {
        let mut a = Correspondence::empty(2, 130);
        a.insert(1, 129);
        a.insert(0, 3);
        let b = Correspondence::from_pairs(130, 1, &[(129, 0)]).unwrap();
        assert_eq!(a.compose(&b).unwrap().pairs(), vec![(1, 0)]);
        assert_eq!(a.opposite().opposite(), a);
    }

    fn arb_corr(target: usize, source: usize) -> impl Strategy<Value = Correspondence> {
        proptest::collection::vec(any::<u64>(), target)
            .prop_map(move |rows| Correspondence::from_row_masks(source, &rows))
    }

    fn arb_triple() -> impl Strategy<Value = (Correspondence, Correspondence, Correspondence)> {
        (0usize..=6, 0usize..=6, 0usize..=6, 0usize..=6).prop_flat_map(|(a, b, c, d)| {
            (arb_corr(a, b), arb_corr(b, c), arb_corr(c, d))
        })
    }

    fn brute_compose(s: &Correspondence, r: &Correspondence) -> Correspondence {
        let mut out = Correspondence::empty(s.target_size(), r.source_size());
        for z in 0..s.target_size() {
            for x in 0..r.source_size() {
                if (0..s.source_size()).any(|y| s.contains(z, y) && r.contains(y, x)) {
                    out.insert(z, x);
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn compose_is_associative((a, b, c) in arb_triple()) {
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn compose_matches_definition((a, b, _c) in arb_triple()) {
            prop_assert_eq!(a.compose(&b).unwrap(), brute_compose(&a, &b));
        }

        #[test]
        fn identity_and_opposite_laws((a, b, _c) in arb_triple()) {
            let left_id = Correspondence::identity(a.target_size());
            let right_id = Correspondence::identity(a.source_size());
            prop_assert_eq!(&left_id.compose(&a).unwrap(), &a);
            prop_assert_eq!(&a.compose(&right_id).unwrap(), &a);
            prop_assert_eq!(&a.opposite().opposite(), &a);
            prop_assert_eq!(
                a.compose(&b).unwrap().opposite(),
                b.opposite().compose(&a.opposite()).unwrap()
            );
        }

        #[test]
        fn deltas_compose_like_permutations(seed in any::<u64>(), n in 1usize..=6) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut a: Vec<usize> = (0..n).collect();
            let mut b: Vec<usize> = (0..n).collect();
            a.shuffle(&mut rng);
            b.shuffle(&mut rng);
            let (s, t) = (Perm::from_images(a).unwrap(), Perm::from_images(b).unwrap());
            prop_assert_eq!(
                Correspondence::delta(&s).compose(&Correspondence::delta(&t)).unwrap(),
                Correspondence::delta(&s.compose(&t))
            );
        }
    }
}

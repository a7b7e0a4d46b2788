//! Permutations of `0..n` and explicit permutation groups.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// A bijection of `0..n`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::NotBijective(format!("image {i} outside 0..{n}")));
            }
            if seen[i] {
                return Err(Error::NotBijective(format!("image {i} hit twice")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i64 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// A finite group of permutations listed element by element.
///
/// The identity is always stored first; the remaining elements keep the
/// order in which they were discovered.
#[derive(Debug, Clone, Serialize)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            elements: vec![Perm::identity(degree)],
        }
    }

    /// Builds a group from a full element list, checking the group axioms.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Result<Self> {
        let id = Perm::identity(degree);
        let set: HashSet<&Perm> = elements.iter().collect();
        if set.len() != elements.len() {
            return Err(Error::Precondition("repeated group element".into()));
        }
        if !set.contains(&id) {
            return Err(Error::Precondition("group lacks the identity".into()));
        }
        for a in &elements {
            if a.degree() != degree {
                return Err(Error::DimensionMismatch {
                    context: "permutation group",
                    expected: degree,
                    found: a.degree(),
                });
            }
            if !set.contains(&a.inverse()) {
                return Err(Error::Precondition("group not closed under inverse".into()));
            }
            for b in &elements {
                if !set.contains(&a.compose(b)) {
                    return Err(Error::Precondition("group not closed under composition".into()));
                }
            }
        }
        drop(set);
        let pos = elements.iter().position(|p| *p == id).unwrap();
        elements.swap(0, pos);
        Ok(PermGroup { degree, elements })
    }

    pub(crate) fn from_elements_unchecked(degree: usize, elements: Vec<Perm>) -> Self {
        debug_assert!(elements.first().is_some_and(Perm::is_identity));
        PermGroup { degree, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn position(&self, p: &Perm) -> Option<usize> {
        self.elements.iter().position(|q| q == p)
    }
}

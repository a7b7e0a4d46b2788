//! Formal linear combinations of maps `X → T`.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::scalar::Scalar;

use super::{ft_action, MapKey};

/// Upper bound on the number of term products evaluated by one composition.
pub const MAX_COMPOSITION_TERMS: usize = 1_000_000;

/// `Σ c_φ φ` over maps `φ: X → T`, each encoded by its tuple of values.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of formal sums.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalMapSum<C: Scalar> {
    domain: usize,
    terms: BTreeMap<MapKey, C>,
}

impl<C: Scalar> FormalMapSum<C> {
    pub fn zero(domain: usize) -> Self {
        FormalMapSum {
            domain,
            terms: BTreeMap::new(),
        }
    }

    /// A single map with coefficient one.
    pub fn from_map(map: MapKey) -> Self {
        let mut s = Self::zero(map.len());
        s.add_term(map, C::one());
        s
    }

    /// The identity map of `T` as an element of `k(T^T)`.
    pub fn identity(size: usize) -> Self {
        Self::from_map((0..size as u16).collect())
    }

    pub fn domain_size(&self) -> usize {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MapKey, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, map: &MapKey) -> C {
        self.terms.get(map).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, map: MapKey, c: C) {
        assert_eq!(map.len(), self.domain, "map of the wrong arity");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&map) {
            Some(v) => {
                let sum = v.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&map);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(map, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(self.domain);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * k.clone());
        }
        out
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&MapKey) -> bool) -> Self {
        FormalMapSum {
            domain: self.domain,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// `self ∘ other` where `self` is a sum of self-maps of `T` and `other` a
    /// sum of maps `X → T`: `(Σ a_f f) ∘ (Σ b_g g) = Σ a_f b_g (f ∘ g)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let pairs = self.len().saturating_mul(other.len());
        if pairs > MAX_COMPOSITION_TERMS {
            return Err(Error::Guard {
                what: "formal sum composition terms",
                requested: pairs as u128,
                limit: MAX_COMPOSITION_TERMS as u128,
            });
        }
        let mut out = Self::zero(other.domain);
        for (g, b) in &other.terms {
            if let Some(&v) = g.iter().find(|&&v| v as usize >= self.domain) {
                return Err(Error::OutOfRange {
                    value: v as usize,
                    size: self.domain,
                });
            }
            for (f, a) in &self.terms {
                let fg: MapKey = g.iter().map(|&v| f[v as usize]).collect();
                out.add_term(fg, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    /// The linear extension of [`ft_action`].
    pub fn act(&self, u: &Correspondence, lat: &Lattice) -> Result<Self> {
        let mut out = Self::zero(u.target_size());
        for (m, c) in &self.terms {
            out.add_term(ft_action(u, m, lat)?, c.clone());
        }
        Ok(out)
    }
}

#[derive(Serialize)]
struct TermView<'a> {
    map: &'a MapKey,
    coefficient: String,
}

impl<C: Scalar> Serialize for FormalMapSum<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (map, c) in &self.terms {
            seq.serialize_element(&TermView {
                map,
                coefficient: c.render(),
            })?;
        }
        seq.end()
    }
}

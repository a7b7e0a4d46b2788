//! Distributivity tests, split surjections and lattice automorphisms.

use super::{Irreducibles, Lattice};
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

impl Lattice {
    /// Checks `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` on all triples.
    pub fn distributive_by_identity(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))))
        })
    }

    /// Checks that `I ↦ ⋁I` from `I↓(Irr T)` to `T` is a bijection.
    pub fn distributive_by_ideals(&self) -> Result<bool> {
        let irr = self.irreducibles()?;
        let ideals = match irr.poset().down_ideals_limited(self.size()) {
            Ok(ideals) => ideals,
            // more ideals than elements: the map cannot be injective
            Err(e) if e.is_guard() => return Ok(false),
            Err(e) => return Err(e),
        };
        let mut hit = vec![false; self.size()];
        for mask in &ideals {
            let t = self.join_all((0..irr.len()).filter(|i| mask >> i & 1 == 1).map(|i| irr.element(i)));
            if hit[t] {
                return Ok(false);
            }
            hit[t] = true;
        }
        Ok(hit.iter().all(|&h| h))
    }

    /// Distributivity, decided by both tests above, which must agree.
    pub fn is_distributive(&self) -> Result<bool> {
        let by_ideals = self.distributive_by_ideals()?;
        let by_identity = self.distributive_by_identity();
        if by_ideals != by_identity {
            return Err(Error::Internal(format!(
                "distributivity tests disagree: ideals {by_ideals}, identity {by_identity}"
            )));
        }
        Ok(by_ideals)
    }

    /// For an injective join-preserving `embed: A → T` with `A` distributive,
    /// returns `π: T → A`, `π(t) = ⋀{a | embed(a) ≥ t}`, with `π ∘ embed = id`.
    pub fn split_surjection(&self, embed: &[usize], a_lat: &Lattice) -> Result<Vec<usize>> {
        if embed.len() != a_lat.size() {
            return Err(Error::DimensionMismatch {
                context: "split surjection embedding",
                expected: a_lat.size(),
                found: embed.len(),
            });
        }
        if let Some(&bad) = embed.iter().find(|&&t| t >= self.size()) {
            return Err(Error::OutOfRange {
                value: bad,
                size: self.size(),
            });
        }
        for a in 0..embed.len() {
            for b in a + 1..embed.len() {
                if embed[a] == embed[b] {
                    return Err(Error::Precondition(format!("embedding is not injective: {a} and {b} collide")));
                }
            }
        }
        if let Some((a, b)) = a_lat.preserves_joins(embed, self) {
            return Err(Error::Precondition(format!("embedding does not preserve the join of {a} and {b}")));
        }
        if !a_lat.is_distributive()? {
            return Err(Error::Precondition("source lattice is not distributive".into()));
        }
        let pi: Vec<usize> = (0..self.size())
            .map(|t| a_lat.meet_all((0..a_lat.size()).filter(|&a| self.leq(t, embed[a]))))
            .collect();
        if (0..a_lat.size()).any(|a| pi[embed[a]] != a) {
            return Err(Error::Internal("π ∘ embed is not the identity".into()));
        }
        if let Some((s, t)) = self.preserves_joins(&pi, a_lat) {
            return Err(Error::Internal(format!("π does not preserve the join of {s} and {t}")));
        }
        Ok(pi)
    }

    /// Extends an automorphism of `Irr(T)` by `t ↦ ⋁{σ(e) | e ≤ t}` and checks
    /// that the result is an order automorphism of `T`.
    pub fn extend_automorphism(&self, irr: &Irreducibles, sigma: &Perm) -> Result<Perm> {
        let images: Vec<usize> = (0..self.size())
            .map(|t| {
                let mask = irr.below_mask(t);
                self.join_all((0..irr.len()).filter(|i| mask >> i & 1 == 1).map(|i| irr.element(sigma.apply(i))))
            })
            .collect();
        let p = Perm::from_images(images)?;
        for a in 0..self.size() {
            for b in 0..self.size() {
                if self.leq(a, b) != self.leq(p.apply(a), p.apply(b)) {
                    return Err(Error::Precondition(format!(
                        "automorphism of the irreducibles does not extend: order of {a}, {b} not preserved"
                    )));
                }
            }
        }
        Ok(p)
    }

    /// `Aut(E,R)` acting on `T`, element by element in the order of
    /// `irr.poset().automorphisms()`.
    pub fn extended_automorphisms(&self, irr: &Irreducibles) -> Result<(PermGroup, Vec<Perm>)> {
        let group = irr.poset().automorphisms();
        let on_t = group
            .elements()
            .iter()
            .map(|s| self.extend_automorphism(irr, s))
            .collect::<Result<_>>()?;
        Ok((group, on_t))
    }
}

//! Evaluations of `F_T` and of the fundamental functor at a finite set `X`.
//!
//! A map `φ: X → T` is encoded as the tuple `(φ(0), …, φ(|X|-1))` of lattice
//! indices ([`MapKey`]); tuples are ordered lexicographically.

mod formal;
mod orbit;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::lattice::{GData, Irreducibles, Lattice};
use crate::MapSum;

pub use formal::{FormalMapSum, MAX_COMPOSITION_TERMS};
pub use orbit::{relation_matrix, OrbitBasis, VRep};

/// Values of a map `X → T`.
pub type MapKey = Vec<u16>;

/// Largest `|G|^|X|` enumerated when building `B_X`.
pub const MAX_BASIS_CANDIDATES: u128 = 10_000_000;

/// `(Uφ)(y) = ⋁_{(y,x) ∈ U} φ(x)`, with the empty join equal to `0̂`.
pub fn ft_action(u: &Correspondence, phi: &[u16], lat: &Lattice) -> Result<MapKey> {
    if u.source_size() != phi.len() {
        return Err(Error::DimensionMismatch {
            context: "relation acting on a map",
            expected: u.source_size(),
            found: phi.len(),
        });
    }
    Ok((0..u.target_size())
        .map(|y| lat.join_all(u.row_iter(y).map(|x| phi[x] as usize)) as u16)
        .collect())
}

/// `[a_0, …, a_n]`: sends `a_j` to `a_{j+1}` for `j < n` and fixes everything else.
pub fn bracket_map(seq: &[usize], size: usize) -> Result<MapKey> {
    let mut map: MapKey = (0..size as u16).collect();
    let mut seen = vec![false; size];
    for &a in seq {
        if a >= size {
            return Err(Error::OutOfRange { value: a, size });
        }
        if seen[a] {
            return Err(Error::RepeatedElement(a));
        }
        seen[a] = true;
    }
    for w in seq.windows(2) {
        map[w[0]] = w[1] as u16;
    }
    Ok(map)
}

/// `u_a = [a_0,a_1] − [a_0,a_1,a_2] + … + (−1)^r [a_0,…,a_{r+1}]` built from the
/// reduction sequence of `a ∈ G^c`.
pub fn u_element(lat: &Lattice, g: &GData, a: usize) -> Result<MapSum> {
    let seq = g.reduction_sequence(lat, a)?;
    let mut u = MapSum::zero(lat.size());
    for j in 1..seq.len() {
        let sign = if j % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        u.add_term(bracket_map(&seq[..=j], lat.size())?, sign);
    }
    Ok(u)
}

/// `u_T = u_{a_1} ∘ u_{a_2} ∘ … ∘ u_{a_k}` for `G^c = {a_1 < … < a_k}`; the
/// identity when `G^c` is empty.
pub fn u_total(lat: &Lattice, g: &GData) -> Result<MapSum> {
    let mut total = MapSum::identity(lat.size());
    for &a in g.g_complement.iter().rev() {
        total = u_element(lat, g, a)?.compose(&total)?;
    }
    Ok(total)
}

/// `π_{T,X}`: keeps the terms whose image contains every irreducible.
pub fn pi_project(v: &MapSum, irr: &Irreducibles) -> MapSum {
    let all = irr.all_mask();
    v.filter(|m| irr.hit_mask(m.iter().map(|&t| t as usize)) == all)
}

/// `B_X`: the maps `φ: X → T` with `E ⊆ φ(X) ⊆ G`, in increasing tuple order.
#[derive(Debug, Clone)]
pub struct BasisIndex {
    maps: Vec<MapKey>,
    positions: HashMap<MapKey, usize>,
}

impl BasisIndex {
    pub fn enumerate(g: &GData, x: usize) -> Result<BasisIndex> {
        let candidates = (g.g.len() as u128).checked_pow(x as u32).unwrap_or(u128::MAX);
        if candidates > MAX_BASIS_CANDIDATES {
            return Err(Error::Guard {
                what: "maps X → G to enumerate",
                requested: candidates,
                limit: MAX_BASIS_CANDIDATES,
            });
        }
        let mut maps = Vec::new();
        let all = g.irr.all_mask();
        if x >= g.irr.len() {
            let base = g.g.len() as u64;
            for code in 0..candidates as u64 {
                // first coordinate most significant, so codes follow tuple order
                let mut rest = code;
                let mut map: MapKey = vec![0; x];
                for slot in map.iter_mut().rev() {
                    *slot = g.g[(rest % base) as usize] as u16;
                    rest /= base;
                }
                if g.irr.hit_mask(map.iter().map(|&t| t as usize)) == all {
                    maps.push(map);
                }
            }
        }
        let positions = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(BasisIndex { maps, positions })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[MapKey] {
        &self.maps
    }

    pub fn position(&self, map: &MapKey) -> Option<usize> {
        self.positions.get(map).copied()
    }
}

/// Everything needed to compute in `𝕊_{E,R^op}(X)` through the basis `B_X`.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub lattice: Lattice,
    pub gdata: GData,
    pub x: usize,
    pub u_total: MapSum,
    pub basis: BasisIndex,
}

impl Evaluation {
    pub fn new(lattice: Lattice, x: usize) -> Result<Self> {
        let gdata = lattice.gdata()?;
        let u_total = u_total(&lattice, &gdata)?;
        let basis = BasisIndex::enumerate(&gdata, x)?;
        Ok(Evaluation {
            lattice,
            gdata,
            x,
            u_total,
            basis,
        })
    }

    /// `π_{T,X}(u_T ∘ v)` in coordinates over `B_X`, as sorted `(position, coefficient)` pairs.
    pub fn normal_form(&self, v: &MapSum) -> Result<Vec<(usize, BigInt)>> {
        if v.domain_size() != self.x {
            return Err(Error::DimensionMismatch {
                context: "normal form input",
                expected: self.x,
                found: v.domain_size(),
            });
        }
        let reduced = pi_project(&self.u_total.compose(v)?, &self.gdata.irr);
        let mut coords = Vec::with_capacity(reduced.len());
        for (m, c) in reduced.terms() {
            let pos = self
                .basis
                .position(m)
                .ok_or_else(|| Error::Internal(format!("normal form term {m:?} lies outside B_X")))?;
            coords.push((pos, c.clone()));
        }
        coords.sort_by_key(|(p, _)| *p);
        Ok(coords)
    }

    pub fn normal_form_of_map(&self, phi: &[u16]) -> Result<Vec<(usize, BigInt)>> {
        self.normal_form(&MapSum::from_map(phi.to_vec()))
    }

    /// Re-embeds coordinates as a formal sum of basis maps.
    pub fn embed(&self, coords: &[(usize, BigInt)]) -> MapSum {
        let mut s = MapSum::zero(self.x);
        for (p, c) in coords {
            if !c.is_zero() {
                s.add_term(self.basis.maps()[*p].clone(), c.clone());
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::poset::Poset;

    #[test]
    fn ft_action_examples() {
        let loz = catalog::lattice("lozenge").unwrap();
        let phi = vec![1u16, 2];
        assert_eq!(ft_action(&Correspondence::identity(2), &phi, &loz).unwrap(), phi);
        assert_eq!(ft_action(&Correspondence::empty(2, 2), &phi, &loz).unwrap(), vec![0, 0]);
        let full = Correspondence::full(1, 2);
        assert_eq!(ft_action(&full, &phi, &loz).unwrap(), vec![3]);
        assert!(ft_action(&full, &[1u16], &loz).is_err());
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_map(&[0, 2], 4).unwrap(), vec![2, 1, 2, 3]);
        assert_eq!(bracket_map(&[1, 2, 3], 4).unwrap(), vec![0, 2, 3, 3]);
        assert!(matches!(bracket_map(&[1, 1], 3), Err(Error::RepeatedElement(1))));
        let b = bracket_map(&[0, 1], 3).unwrap();
        let twice: MapKey = b.iter().map(|&v| b[v as usize]).collect();
        assert_eq!(twice, b);
    }

    #[test]
    fn u_total_trivial_when_g_is_t() {
        for name in ["lozenge", "chain4"] {
            let lat = catalog::lattice(name).unwrap();
            let g = lat.gdata().unwrap();
            assert_eq!(u_total(&lat, &g).unwrap(), MapSum::identity(lat.size()));
        }
    }

    #[test]
    fn basis_sizes() {
        let loz = Poset::antichain(2).down_ideal_lattice().unwrap();
        assert_eq!(Evaluation::new(loz.clone(), 2).unwrap().basis.len(), 2);
        assert_eq!(Evaluation::new(loz, 1).unwrap().basis.len(), 0);
        let b8 = Poset::antichain(3).down_ideal_lattice().unwrap();
        assert_eq!(Evaluation::new(b8, 3).unwrap().basis.len(), 6);
        let point = Lattice::chain(1).unwrap();
        let ev = Evaluation::new(point, 0).unwrap();
        assert_eq!(ev.basis.maps(), &[Vec::<u16>::new()]);
    }

    #[test]
    fn basis_maps_are_their_own_normal_form() {
        let b8 = catalog::lattice("boolean3").unwrap();
        let ev = Evaluation::new(b8, 3).unwrap();
        for (i, m) in ev.basis.maps().iter().enumerate() {
            assert_eq!(ev.normal_form_of_map(m).unwrap(), vec![(i, BigInt::one())]);
        }
    }
}

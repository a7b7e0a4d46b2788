//! Orbits of `Aut(E,R)` on `B_X` and matrices of relations acting on
//! `S_{E,R,V}(X)`.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{ft_action, Evaluation};
use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::oracle::Matrix;
use crate::perm::{Perm, PermGroup};
use crate::scalar::DivScalar;

/// `B_X` split into free orbits under `φ · σ = σ⁻¹ ∘ φ`.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitBasis {
    /// `Aut(E,R)` acting on `E`.
    pub group: PermGroup,
    /// The same elements, in the same order, acting on `T`.
    pub on_t: Vec<Perm>,
    /// Basis positions of the orbit representatives (the least map of each orbit).
    pub representatives: Vec<usize>,
    /// For each basis position, `(representative index, group element index)`
    /// with `map = representative · σ`.
    pub orbit_of: Vec<(usize, usize)>,
}

impl OrbitBasis {
    /// Uses the full automorphism group of `Irr(T)`, extended to `T`.
    pub fn new(eval: &Evaluation) -> Result<Self> {
        let (group, on_t) = eval.lattice.extended_automorphisms(&eval.gdata.irr)?;
        Self::with_group(eval, group, on_t)
    }

    /// Every basis map is its own orbit.
    pub fn trivial(eval: &Evaluation) -> Result<Self> {
        let e = eval.gdata.irr.len();
        Self::with_group(eval, PermGroup::trivial(e), vec![Perm::identity(eval.lattice.size())])
    }

    pub fn with_group(eval: &Evaluation, group: PermGroup, on_t: Vec<Perm>) -> Result<Self> {
        if on_t.len() != group.order() {
            return Err(Error::DimensionMismatch {
                context: "automorphisms acting on T",
                expected: group.order(),
                found: on_t.len(),
            });
        }
        let inverses: Vec<Perm> = on_t.iter().map(Perm::inverse).collect();
        let basis = &eval.basis;
        let mut orbit_of: Vec<Option<(usize, usize)>> = vec![None; basis.len()];
        let mut representatives = Vec::new();
        for pos in 0..basis.len() {
            if orbit_of[pos].is_some() {
                continue;
            }
            let rep = representatives.len();
            representatives.push(pos);
            let phi = &basis.maps()[pos];
            for (gi, inv) in inverses.iter().enumerate() {
                let psi: Vec<u16> = phi.iter().map(|&t| inv.apply(t as usize) as u16).collect();
                let target = basis
                    .position(&psi)
                    .ok_or_else(|| Error::Internal(format!("automorphism moves {phi:?} outside B_X")))?;
                if orbit_of[target].is_some() {
                    return Err(Error::NonFreeOrbit(format!(
                        "map {psi:?} reached twice from representative {phi:?}"
                    )));
                }
                orbit_of[target] = Some((rep, gi));
            }
        }
        Ok(OrbitBasis {
            group,
            on_t,
            representatives,
            orbit_of: orbit_of.into_iter().map(|o| o.expect("every map lies in an orbit")).collect(),
        })
    }

    pub fn orbit_count(&self) -> usize {
        self.representatives.len()
    }
}

/// A representation `Aut(E,R) → GL(V)`, listed in group element order.
#[derive(Debug, Clone)]
pub struct VRep<S: DivScalar> {
    dim: usize,
    matrices: Vec<Matrix<S>>,
}

impl<S: DivScalar> VRep<S> {
    pub fn trivial(group: &PermGroup) -> Self {
        VRep {
            dim: 1,
            matrices: vec![Matrix::identity(1); group.order()],
        }
    }

    /// `σ ↦ sign(σ)` for the permutation action on `E`.
    pub fn sign(group: &PermGroup) -> Self {
        VRep {
            dim: 1,
            matrices: group
                .elements()
                .iter()
                .map(|p| Matrix::from_fn(1, 1, |_, _| S::from_i64(p.sign())))
                .collect(),
        }
    }

    /// Checks that `matrices` is a homomorphism: identity to the identity and
    /// `ρ(σ ∘ τ) = ρ(σ) ρ(τ)`.
    pub fn from_matrices(group: &PermGroup, matrices: Vec<Matrix<S>>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch {
                context: "representation matrices",
                expected: group.order(),
                found: matrices.len(),
            });
        }
        let dim = matrices.first().map_or(0, Matrix::rows);
        if let Some(m) = matrices.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch {
                context: "representation matrix shape",
                expected: dim,
                found: m.rows().max(m.cols()),
            });
        }
        if dim == 0 {
            return Err(Error::NotHomomorphism("zero-dimensional representation".into()));
        }
        let elems = group.elements();
        for (i, s) in elems.iter().enumerate() {
            if s.is_identity() && matrices[i] != Matrix::identity(dim) {
                return Err(Error::NotHomomorphism("identity not sent to the identity matrix".into()));
            }
            for (j, t) in elems.iter().enumerate() {
                let k = group.position(&s.compose(t)).expect("group is closed");
                if matrices[i].mul(&matrices[j])? != matrices[k] {
                    return Err(Error::NotHomomorphism(format!(
                        "ρ({:?} ∘ {:?}) differs from the product",
                        s.images(),
                        t.images()
                    )));
                }
            }
        }
        Ok(VRep { dim, matrices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &Matrix<S> {
        &self.matrices[g]
    }
}

/// Matrix of `U` on `S_{E,R,V}(X)` in the basis `representative_i ⊗ v_b`,
/// indexed by `i · dim V + b`.
///
/// `U · (φ ⊗ v) = π_{T,X}(u_T ∘ Uφ) ⊗ v`, and a basis map `ψ = rep_i · σ`
/// satisfies `ψ ⊗ v = rep_i ⊗ σv`.
pub fn relation_matrix<S: DivScalar>(
    eval: &Evaluation,
    ob: &OrbitBasis,
    u: &Correspondence,
    vrep: &VRep<S>,
) -> Result<Matrix<S>> {
    if u.source_size() != eval.x || u.target_size() != eval.x {
        return Err(Error::DimensionMismatch {
            context: "relation on X",
            expected: eval.x,
            found: u.source_size().max(u.target_size()),
        });
    }
    if vrep.matrices.len() != ob.group.order() {
        return Err(Error::DimensionMismatch {
            context: "representation of the automorphism group",
            expected: ob.group.order(),
            found: vrep.matrices.len(),
        });
    }
    let d = vrep.dim;
    let columns: Vec<Vec<(usize, usize, BigInt)>> = ob
        .representatives
        .par_iter()
        .map(|&pos| {
            let phi = &eval.basis.maps()[pos];
            let moved = ft_action(u, phi, &eval.lattice)?;
            let coords = eval.normal_form_of_map(&moved)?;
            Ok(coords
                .into_iter()
                .map(|(p, c)| {
                    let (i, g) = ob.orbit_of[p];
                    (i, g, c)
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let size = ob.orbit_count() * d;
    let mut m = Matrix::zeros(size, size);
    for (j, contributions) in columns.iter().enumerate() {
        for (i, g, c) in contributions {
            let c = S::from_bigint(c);
            let block = vrep.matrix(*g);
            for r in 0..d {
                for s in 0..d {
                    let v = block.get(r, s).clone() * c.clone();
                    m.add_to(i * d + r, j * d + s, v);
                }
            }
        }
    }
    Ok(m)
}

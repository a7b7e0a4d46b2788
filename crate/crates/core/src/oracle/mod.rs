//! Brute-force certification of the basis `B_X` by exact linear algebra.
//!
//! The matrix `N` has rows indexed by maps `ψ: X → I↑(E,R)` and columns by
//! maps `φ: X → T`, with `N_{ψ,φ} = 1` iff `φ ⊢ ψ`. A formal combination of
//! maps lies in the kernel of `F_T(X) → 𝕊_{E,R^op}(X)` exactly when `N`
//! kills its coefficient vector, so ranks of `N` certify the basis results
//! without using the closed-form dimension counts.

mod matrix;

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::correspondence::{gamma_of_map, gamma_op_of_upsets, Correspondence};
use crate::dimension::dim_fundamental;
use crate::error::{Error, Result};
use crate::functor::{u_element, Evaluation, MapKey};
use crate::lattice::{Irreducibles, Lattice};
use crate::{IntMatrix, MapSum};

pub use matrix::Matrix;

/// Default bound on `rows × cols` of `N`.
pub const DEFAULT_GUARD_CELLS: u128 = 10_000_000;

/// Maps `φ` tested per element `a ∈ G^c` when `|T|^|X|` exceeds this.
const KERNEL_SAMPLE: usize = 512;
const KERNEL_SEED: u64 = 0x05ee_d0f0_ac1e;

/// Condition (e): `φ ≤ ∧ψ` pointwise, and every `e ∈ E` is some `φ(x)` with
/// `ψ(x) = [e, ·[_E`.
pub fn linked_e(irr: &Irreducibles, phi: &[u16], psi: &[u64]) -> bool {
    let below_meet = phi.iter().zip(psi).all(|(&t, &up)| up & !irr.above_mask(t as usize) == 0);
    below_meet
        && (0..irr.len()).all(|i| {
            let e = irr.element(i);
            phi.iter().zip(psi).any(|(&t, &up)| t as usize == e && up == irr.above_mask(e))
        })
}

/// Condition (d): `Γ_ψ^op Γ_φ = R^op`.
pub fn linked_d(lat: &Lattice, irr: &Irreducibles, phi: &[u16], psi: &[u64]) -> bool {
    let phi: Vec<usize> = phi.iter().map(|&t| t as usize).collect();
    let gamma = gamma_of_map(&phi, lat, irr).expect("map values lie in the lattice");
    let prod = gamma_op_of_upsets(psi, irr.len())
        .compose(&gamma)
        .expect("shapes agree");
    prod == r_op(irr)
}

/// `R^op` on `E`: row `e` holds every `f ≤ e`.
fn r_op(irr: &Irreducibles) -> Correspondence {
    let p = irr.poset();
    let rows: Vec<u64> = (0..p.size()).map(|e| p.down_set(e)).collect();
    Correspondence::from_row_masks(p.size(), &rows)
}

/// Condition (f): `ψ(φ⁻¹(t)) ⊆ [t, ·[_T ∩ E` for all `t`, with equality
/// `ψ(φ⁻¹(e)) = [e, ·[_E` for `e ∈ E`.
pub fn linked_f(lat: &Lattice, irr: &Irreducibles, phi: &[u16], psi: &[u64]) -> bool {
    let mut union = vec![0u64; lat.size()];
    for (&t, &up) in phi.iter().zip(psi) {
        union[t as usize] |= up;
    }
    (0..lat.size()).all(|t| union[t] & !irr.above_mask(t) == 0)
        && irr.elements().iter().all(|&e| union[e] == irr.above_mask(e))
}

/// `φ ⊢ ψ`, decided by condition (e). Debug builds also evaluate (d) and (f)
/// and assert that all three agree.
pub fn linked(lat: &Lattice, irr: &Irreducibles, phi: &[u16], psi: &[u64]) -> bool {
    let e = linked_e(irr, phi, psi);
    debug_assert_eq!(e, linked_d(lat, irr, phi, psi), "conditions (d) and (e) disagree on {phi:?}, {psi:?}");
    debug_assert_eq!(e, linked_f(lat, irr, phi, psi), "conditions (e) and (f) disagree on {phi:?}, {psi:?}");
    e
}

/// The 0/1 matrix `N`, stored by columns as sorted lists of nonzero rows.
///
/// Row `ψ` has index `Σ_x idx(ψ(x)) · |I↑|^(|X|-1-x)` where `idx` is the
/// position in [`NMatrix::upsets`]; column `φ` is numbered the same way
/// with base `|T|`.
#[derive(Debug, Clone)]
pub struct NMatrix {
    pub x: usize,
    pub t_size: usize,
    pub upsets: Vec<u64>,
    columns: Vec<Vec<usize>>,
}

fn encode(digits: impl Iterator<Item = usize>, base: usize) -> usize {
    digits.fold(0, |acc, d| acc * base + d)
}

/// Calls `f` on every tuple `(c_0, …, c_k)` with `c_i ∈ choices[i]`.
fn for_each_choice(choices: &[&[usize]], mut f: impl FnMut(&[usize])) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    let mut picked: Vec<usize> = choices.iter().map(|c| c[0]).collect();
    loop {
        f(&picked);
        let mut k = choices.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                picked[k] = choices[k][idx[k]];
                break;
            }
            idx[k] = 0;
            picked[k] = choices[k][0];
        }
    }
}

fn decode(mut code: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = code % base;
        code /= base;
    }
    out
}

impl NMatrix {
    pub fn build(lat: &Lattice, irr: &Irreducibles, x: usize, guard_cells: u128) -> Result<NMatrix> {
        let upsets = irr.poset().up_ideals()?;
        let rows = (upsets.len() as u128).checked_pow(x as u32).unwrap_or(u128::MAX);
        let cols = (lat.size() as u128).checked_pow(x as u32).unwrap_or(u128::MAX);
        let cells = rows.saturating_mul(cols);
        if cells > guard_cells {
            return Err(Error::Guard {
                what: "cells of the matrix N",
                requested: cells,
                limit: guard_cells,
            });
        }
        // ψ(x) must lie inside [φ(x), ·[ ∩ E, so only those upsets are tried.
        let allowed: Vec<Vec<usize>> = (0..lat.size())
            .map(|t| {
                let above = irr.above_mask(t);
                (0..upsets.len()).filter(|&k| upsets[k] & !above == 0).collect()
            })
            .collect();
        let columns = (0..cols as usize)
            .into_par_iter()
            .map(|code| {
                let phi: MapKey = decode(code, lat.size(), x).into_iter().map(|t| t as u16).collect();
                let choices: Vec<&[usize]> = phi.iter().map(|&t| allowed[t as usize].as_slice()).collect();
                let mut rows_hit = Vec::new();
                for_each_choice(&choices, |picked| {
                    let psi: Vec<u64> = picked.iter().map(|&k| upsets[k]).collect();
                    if linked(lat, irr, &phi, &psi) {
                        rows_hit.push(encode(picked.iter().copied(), upsets.len()));
                    }
                });
                rows_hit.sort_unstable();
                rows_hit
            })
            .collect();
        Ok(NMatrix {
            x,
            t_size: lat.size(),
            upsets,
            columns,
        })
    }

    pub fn rows(&self) -> usize {
        self.upsets.len().pow(self.x as u32)
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column_index(&self, phi: &[u16]) -> usize {
        encode(phi.iter().map(|&t| t as usize), self.t_size)
    }

    pub fn row_index(&self, psi: &[u64]) -> Option<usize> {
        let digits: Option<Vec<usize>> = psi.iter().map(|m| self.upsets.iter().position(|u| u == m)).collect();
        Some(encode(digits?.into_iter(), self.upsets.len()))
    }

    pub fn row_key(&self, row: usize) -> Vec<u64> {
        decode(row, self.upsets.len(), self.x).into_iter().map(|k| self.upsets[k]).collect()
    }

    pub fn column_key(&self, col: usize) -> MapKey {
        decode(col, self.t_size, self.x).into_iter().map(|t| t as u16).collect()
    }

    pub fn entry(&self, row: usize, col: usize) -> bool {
        self.columns[col].binary_search(&row).is_ok()
    }

    /// Dense submatrix on the given rows and columns.
    pub fn dense(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            if self.entry(rows[i], cols[j]) {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Rank of the columns `cols`, ignoring rows that vanish on all of them.
    pub fn rank_of_columns(&self, cols: &[usize]) -> usize {
        let mut rows: Vec<usize> = cols.iter().flat_map(|&c| self.columns[c].iter().copied()).collect();
        rows.sort_unstable();
        rows.dedup();
        let cols: Vec<usize> = cols.iter().copied().filter(|&c| !self.columns[c].is_empty()).collect();
        self.dense(&rows, &cols).rank()
    }

    pub fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.cols()).collect();
        self.rank_of_columns(&all)
    }

    /// `N · v` as a sparse vector with zero entries removed.
    pub fn apply(&self, v: &MapSum) -> BTreeMap<usize, BigInt> {
        let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (phi, c) in v.terms() {
            for &row in &self.columns[self.column_index(phi)] {
                *out.entry(row).or_insert_with(BigInt::zero) += c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub lattice_size: usize,
    pub irreducibles: usize,
    pub x: usize,
    pub g_size: usize,
    pub basis_size: usize,
    pub closed_form_dimension: String,
    pub n_rows: usize,
    pub n_cols: usize,
    pub n_square: bool,
    pub rank_n: usize,
    pub rank_basis_columns: usize,
    pub rank_m: usize,
    pub kernel_maps_tested: usize,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
    /// Wall-clock milliseconds per phase; omitted unless requested so that
    /// reports are reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, u128>>,
}

/// Knobs for [`verify_basis_with`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub guard_cells: u128,
    pub timings: bool,
    /// Negative control: doubles the leading coefficient of every `u_a`.
    pub corrupt_u: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            guard_cells: DEFAULT_GUARD_CELLS,
            timings: false,
            corrupt_u: false,
        }
    }
}

pub fn verify_basis(lat: &Lattice, x: usize) -> Result<VerifyReport> {
    verify_basis_with(lat, x, &VerifyOptions::default())
}

fn corrupt(u: &MapSum) -> MapSum {
    let mut out = u.clone();
    if let Some((m, c)) = u.terms().next() {
        out.add_term(m.clone(), c.clone());
    }
    out
}

/// Runs the four checks: `B_X` columns independent, `rank N = |B_X|`,
/// `N(φ − u_a ∘ φ) = 0`, and `M` invertible.
pub fn verify_basis_with(lat: &Lattice, x: usize, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut timings = BTreeMap::new();
    let clock = Instant::now();
    let eval = Evaluation::new(lat.clone(), x)?;
    let irr = &eval.gdata.irr;
    let n = NMatrix::build(lat, irr, x, opts.guard_cells)?;
    timings.insert("build", clock.elapsed().as_millis());

    let clock = Instant::now();
    let basis_cols: Vec<usize> = eval.basis.maps().iter().map(|m| n.column_index(m)).collect();
    let rank_basis_columns = n.rank_of_columns(&basis_cols);
    let rank_n = n.rank();
    timings.insert("rank", clock.elapsed().as_millis());

    let mut checks = Vec::new();
    let b = eval.basis.len();
    let closed = dim_fundamental(irr.len(), eval.gdata.g_size(), x)?;
    checks.push(CheckResult {
        name: "basis size matches closed form",
        passed: BigInt::from(b) == closed,
        witness: (BigInt::from(b) != closed).then(|| format!("|B_X| = {b}, closed form {closed}")),
    });
    checks.push(CheckResult {
        name: "basis columns independent",
        passed: rank_basis_columns == b,
        witness: (rank_basis_columns != b).then(|| format!("rank {rank_basis_columns} < {b}")),
    });
    checks.push(CheckResult {
        name: "rank N equals |B_X|",
        passed: rank_n == b,
        witness: (rank_n != b).then(|| format!("rank N = {rank_n}, |B_X| = {b}")),
    });

    let clock = Instant::now();
    let total = n.cols();
    let sample: Vec<usize> = if total <= KERNEL_SAMPLE * 8 {
        (0..total).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(KERNEL_SEED);
        (0..KERNEL_SAMPLE).map(|_| rng.gen_range(0..total)).collect()
    };
    let mut kernel_witness = None;
    'kernel: for &a in &eval.gdata.g_complement {
        let mut ua = u_element(lat, &eval.gdata, a)?;
        if opts.corrupt_u {
            ua = corrupt(&ua);
        }
        for &col in &sample {
            let phi = MapSum::from_map(n.column_key(col));
            let diff = phi.sub(&ua.compose(&phi)?);
            let image = n.apply(&diff);
            if let Some((row, v)) = image.iter().next() {
                kernel_witness = Some(format!(
                    "a = {}, φ = {:?}: N(φ − u_a∘φ) has entry {v} at ψ = {:?}",
                    lat.label(a),
                    n.column_key(col),
                    n.row_key(*row)
                ));
                break 'kernel;
            }
        }
    }
    checks.push(CheckResult {
        name: "φ − u_a∘φ in kernel",
        passed: kernel_witness.is_none(),
        witness: kernel_witness,
    });
    timings.insert("kernel", clock.elapsed().as_millis());

    let clock = Instant::now();
    let zeta = &eval.gdata.zeta;
    let m_rows: Vec<usize> = eval
        .basis
        .maps()
        .iter()
        .map(|m| {
            let psi: Vec<u64> = m.iter().map(|&t| zeta[t as usize].expect("basis maps take values in G")).collect();
            n.row_index(&psi).expect("ζ takes values in I↑(E,R)")
        })
        .collect();
    let m = n.dense(&m_rows, &basis_cols);
    let rank_m = m.rank();
    checks.push(CheckResult {
        name: "M invertible",
        passed: rank_m == b,
        witness: (rank_m != b).then(|| format!("rank M = {rank_m} < {b}")),
    });
    timings.insert("m", clock.elapsed().as_millis());

    let n_square = n.rows() == n.cols();
    if lat.is_distributive()? {
        checks.push(CheckResult {
            name: "N square for distributive T",
            passed: n_square,
            witness: (!n_square).then(|| format!("{} × {}", n.rows(), n.cols())),
        });
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        lattice_size: lat.size(),
        irreducibles: irr.len(),
        x,
        g_size: eval.gdata.g_size(),
        basis_size: b,
        closed_form_dimension: closed.to_string(),
        n_rows: n.rows(),
        n_cols: n.cols(),
        n_square,
        rank_n,
        rank_basis_columns,
        rank_m,
        kernel_maps_tested: sample.len(),
        checks,
        passed,
        timings_ms: opts.timings.then_some(timings),
    })
}

/// Rank of `N` after relabelling `X` by `perm`, used to test relabelling symmetry.
pub fn rank_after_relabel(n: &NMatrix, perm: &[usize]) -> usize {
    let cols: Vec<usize> = (0..n.cols())
        .map(|c| {
            let key = n.column_key(c);
            let moved: MapKey = (0..key.len()).map(|i| key[perm[i]]).collect();
            n.column_index(&moved)
        })
        .collect();
    n.rank_of_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::poset::Poset;

    #[test]
    fn inclusion_is_linked_to_principal_upsets() {
        for name in catalog::LATTICE_NAMES {
            let lat = catalog::lattice(name).unwrap();
            let irr = lat.irreducibles().unwrap();
            let phi: MapKey = irr.elements().iter().map(|&e| e as u16).collect();
            let psi: Vec<u64> = irr.elements().iter().map(|&e| irr.above_mask(e)).collect();
            assert!(linked(&lat, &irr, &phi, &psi), "{name}");
        }
    }

    #[test]
    fn missing_irreducible_never_links() {
        let loz = catalog::lattice("lozenge").unwrap();
        let irr = loz.irreducibles().unwrap();
        let phi = vec![1u16, 1];
        for a in 0..4u64 {
            for b in 0..4u64 {
                assert!(!linked(&loz, &irr, &phi, &[a, b]));
            }
        }
    }

    #[test]
    fn small_ranks() {
        let loz = Poset::antichain(2).down_ideal_lattice().unwrap();
        let n = NMatrix::build(&loz, &loz.irreducibles().unwrap(), 2, DEFAULT_GUARD_CELLS).unwrap();
        assert_eq!((n.rows(), n.cols()), (16, 16));
        assert_eq!(n.rank(), 2);
        let c3 = Lattice::chain(3).unwrap();
        let n = NMatrix::build(&c3, &c3.irreducibles().unwrap(), 2, DEFAULT_GUARD_CELLS).unwrap();
        assert_eq!(n.rank(), 2);
        let c2 = Lattice::chain(2).unwrap();
        let n = NMatrix::build(&c2, &c2.irreducibles().unwrap(), 1, DEFAULT_GUARD_CELLS).unwrap();
        assert_eq!(n.rank(), 1);
    }

    #[test]
    fn guard_applies() {
        let b = catalog::lattice("boolean3").unwrap();
        let err = NMatrix::build(&b, &b.irreducibles().unwrap(), 5, DEFAULT_GUARD_CELLS).unwrap_err();
        assert!(err.is_guard());
    }
}

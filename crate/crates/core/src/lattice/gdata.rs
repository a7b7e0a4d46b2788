//! The subsets `ΛE`, `Ĝ`, `G`, `G♯`, `G^c` of a lattice and the map `ζ`.

use serde::Serialize;

use super::{Irreducibles, Lattice};
use crate::error::{Error, Result};

/// Everything derived from `T` and `Irr(T)` that the functor code needs.
///
/// Element lists are sorted increasingly.
#[derive(Debug, Clone)]
pub struct GData {
    pub irr: Irreducibles,
    pub r: Vec<usize>,
    pub sigma: Vec<usize>,
    pub r_inf: Vec<usize>,
    pub sigma_inf: Vec<usize>,
    pub lambda_e: Vec<usize>,
    pub g_hat: Vec<usize>,
    pub g: Vec<usize>,
    pub g_sharp: Vec<usize>,
    pub g_complement: Vec<usize>,
    in_g: Vec<bool>,
    /// `ζ(t)` as a mask over `E` for `t ∈ G`, `None` outside `G`.
    pub zeta: Vec<Option<u64>>,
}

/// Serializable summary of [`GData`] using element labels.
#[derive(Debug, Clone, Serialize)]
pub struct GSummary {
    pub size: usize,
    pub irreducibles: Vec<String>,
    pub lambda_e: Vec<String>,
    pub g_hat: Vec<String>,
    pub g: Vec<String>,
    pub g_complement: Vec<String>,
}

fn sorted_unique(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

impl GData {
    /// Computes both descriptions `ΛE ⊔ Ĝ` and `E ⊔ G♯` of `G` and checks
    /// that they agree.
    pub fn compute(lat: &Lattice) -> Result<GData> {
        let n = lat.size();
        let irr = lat.irreducibles()?;
        let r: Vec<usize> = (0..n).map(|t| lat.r(t)).collect();
        let sigma: Vec<usize> = (0..n).map(|t| lat.sigma(&irr, t)).collect();
        let fix = |table: &[usize], t: usize| {
            let mut t = t;
            while table[t] != t {
                t = table[t];
            }
            t
        };
        let r_inf: Vec<usize> = (0..n).map(|t| fix(&r, t)).collect();
        let sigma_inf: Vec<usize> = (0..n).map(|t| fix(&sigma, t)).collect();

        let mut lambda = vec![lat.top()];
        for &e in irr.elements() {
            let extra: Vec<usize> = lambda.iter().map(|&s| lat.meet(s, e)).collect();
            lambda = sorted_unique([lambda, extra].concat());
        }
        let in_lambda = membership(n, &lambda);
        let g_hat = sorted_unique(
            irr.elements()
                .iter()
                .filter(|&&e| sigma[e] == e)
                .map(|&e| r_inf[e])
                .filter(|&t| !in_lambda[t])
                .collect(),
        );
        let g = sorted_unique([lambda.clone(), g_hat.clone()].concat());

        let g_sharp: Vec<usize> = (0..n).filter(|&a| r_inf[sigma_inf[a]] == a).collect();
        if g_sharp.iter().any(|&a| irr.contains(a)) {
            return Err(Error::Internal("G♯ meets E".into()));
        }
        let alternative = sorted_unique([irr.elements().to_vec(), g_sharp.clone()].concat());
        if alternative != g {
            return Err(Error::Internal(format!(
                "ΛE ⊔ Ĝ = {g:?} differs from E ⊔ G♯ = {alternative:?}"
            )));
        }

        let in_g = membership(n, &g);
        let g_complement: Vec<usize> = (0..n).filter(|&a| !in_g[a]).collect();
        let by_order: Vec<usize> = (0..n)
            .filter(|&a| !irr.contains(a) && lat.lt(a, r_inf[sigma_inf[a]]))
            .collect();
        if by_order != g_complement {
            return Err(Error::Internal(format!(
                "T − G = {g_complement:?} differs from {{a ∉ E | a < r∞σ∞(a)}} = {by_order:?}"
            )));
        }

        let zeta = (0..n)
            .map(|t| {
                in_g[t].then(|| {
                    if irr.contains(t) {
                        irr.above_mask(t)
                    } else {
                        let s = sigma_inf[t];
                        irr.above_mask(s) & !irr.below_mask(s)
                    }
                })
            })
            .collect();

        Ok(GData {
            irr,
            r,
            sigma,
            r_inf,
            sigma_inf,
            lambda_e: lambda,
            g_hat,
            g,
            g_sharp,
            g_complement,
            in_g,
            zeta,
        })
    }

    pub fn in_g(&self, t: usize) -> bool {
        self.in_g[t]
    }

    pub fn g_size(&self) -> usize {
        self.g.len()
    }

    /// `∧ζ(t)` for `t ∈ G`.
    pub fn wedge_zeta(&self, lat: &Lattice, t: usize) -> Option<usize> {
        let mask = self.zeta[t]?;
        Some(lat.meet_all((0..self.irr.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.irr.element(i))))
    }

    /// The reduction sequence `a < σ(a) < … < σ^r(a) < b` with `b = r∞σ∞(a)`.
    pub fn reduction_sequence(&self, lat: &Lattice, a: usize) -> Result<Vec<usize>> {
        if a >= lat.size() {
            return Err(Error::OutOfRange {
                value: a,
                size: lat.size(),
            });
        }
        if self.in_g[a] {
            return Err(Error::Precondition(format!(
                "reduction sequence requested for `{}` which lies in G",
                lat.label(a)
            )));
        }
        let b = self.r_inf[self.sigma_inf[a]];
        let mut seq = vec![a];
        let mut cur = a;
        loop {
            let next = self.sigma[cur];
            if lat.leq(b, next) {
                break;
            }
            if !self.irr.contains(next) || !lat.lt(cur, next) || !lat.lt(next, b) {
                return Err(Error::Internal(format!("bad reduction step from {cur} to {next}")));
            }
            seq.push(next);
            cur = next;
        }
        if !lat.lt(cur, b) || self.r_inf[self.sigma_inf[b]] != b {
            return Err(Error::Internal(format!("reduction sequence of {a} ends badly at {b}")));
        }
        seq.push(b);
        Ok(seq)
    }

    pub fn summary(&self, lat: &Lattice) -> GSummary {
        let names = |v: &[usize]| v.iter().map(|&t| lat.label(t).to_string()).collect();
        GSummary {
            size: lat.size(),
            irreducibles: names(self.irr.elements()),
            lambda_e: names(&self.lambda_e),
            g_hat: names(&self.g_hat),
            g: names(&self.g),
            g_complement: names(&self.g_complement),
        }
    }
}

fn membership(n: usize, items: &[usize]) -> Vec<bool> {
    let mut v = vec![false; n];
    for &t in items {
        v[t] = true;
    }
    v
}

impl Lattice {
    pub fn gdata(&self) -> Result<GData> {
        GData::compute(self)
    }
}

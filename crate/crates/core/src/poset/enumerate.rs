//! Posets up to isomorphism.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::Poset;
use crate::error::{Error, Result};

/// Largest size accepted by [`enumerate_posets`].
pub const MAX_ENUMERATION_SIZE: usize = 8;

/// Up to this size the classes are found by exhaustive search over strict relations.
const BRUTE_FORCE_LIMIT: usize = 5;

/// One isomorphism class: its canonical representative and `|Aut|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetClass {
    pub poset: Poset,
    pub aut_order: usize,
}

fn guard(e: usize, limit: usize, what: &'static str) -> Result<()> {
    if e > limit {
        return Err(Error::Guard {
            what,
            requested: e as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Deterministic order: fewer strict relations first, then canonical rows.
fn finish(classes: BTreeSet<Poset>) -> Vec<PosetClass> {
    let mut out: Vec<PosetClass> = classes
        .into_par_iter()
        .map(|poset| {
            let aut_order = poset.automorphisms().order();
            PosetClass { poset, aut_order }
        })
        .collect();
    out.sort_by(|a, b| {
        (a.poset.strict_relation_count(), &a.poset).cmp(&(b.poset.strict_relation_count(), &b.poset))
    });
    out
}

/// One representative per isomorphism class of posets on `e` elements.
pub fn enumerate_posets(e: usize) -> Result<Vec<PosetClass>> {
    guard(e, MAX_ENUMERATION_SIZE, "poset enumeration size")?;
    if e <= BRUTE_FORCE_LIMIT {
        enumerate_by_brute_force(e)
    } else {
        enumerate_by_extension(e)
    }
}

/// Walks every labelled strict order on `e` points, `e <= 5`, calling `f` on
/// each valid poset.
fn for_each_labeled(e: usize, mut f: impl FnMut(Poset)) {
    let pairs: Vec<(usize, usize)> = (0..e)
        .flat_map(|a| (0..e).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    for code in 0u64..1 << pairs.len() {
        let mut up: Vec<u64> = (0..e).map(|a| 1 << a).collect();
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if code >> k & 1 == 1 {
                up[a] |= 1 << b;
            }
        }
        if let Ok(p) = Poset::from_up_masks(up) {
            f(p);
        }
    }
}

pub fn enumerate_by_brute_force(e: usize) -> Result<Vec<PosetClass>> {
    guard(e, BRUTE_FORCE_LIMIT, "brute-force poset enumeration size")?;
    let mut classes = BTreeSet::new();
    for_each_labeled(e, |p| {
        classes.insert(p.canonical_form());
    });
    Ok(finish(classes))
}

/// Number of labelled posets on `e` points, by exhaustive search (`e <= 5`).
pub fn labeled_poset_count(e: usize) -> Result<u64> {
    guard(e, BRUTE_FORCE_LIMIT, "labelled poset count size")?;
    let mut count = 0u64;
    for_each_labeled(e, |_| count += 1);
    Ok(count)
}

/// Builds the classes of size `e` from those of size `e - 1` by adjoining a
/// new minimal element below an arbitrary upper ideal.
pub fn enumerate_by_extension(e: usize) -> Result<Vec<PosetClass>> {
    guard(e, MAX_ENUMERATION_SIZE, "poset enumeration size")?;
    let mut layer: Vec<Poset> = vec![Poset::antichain(0)];
    for size in 1..=e {
        let next: BTreeSet<Poset> = layer
            .par_iter()
            .flat_map_iter(|p| {
                let ups = p.up_ideals().expect("at most 2^7 upper ideals");
                ups.into_iter().map(move |u| extend_below(p, u).canonical_form())
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        if size == e {
            return Ok(finish(next));
        }
        layer = next.into_iter().collect();
    }
    Ok(finish(layer.into_iter().collect()))
}

/// Appends a new element whose strict up-set is `upper`.
fn extend_below(p: &Poset, upper: u64) -> Poset {
    let n = p.size();
    let mut up = p.up_masks().to_vec();
    up.push(upper | 1 << n);
    Poset::from_up_masks_unchecked(up)
}

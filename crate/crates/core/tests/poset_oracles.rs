//! Canonical forms, automorphism groups and enumeration checked against
//! exhaustive search over labelled posets and permutations.

use std::collections::BTreeMap;

use proptest::prelude::*;
use relmod::poset::{enumerate_posets, labeled_poset_count};
use relmod::{Perm, Poset};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// All partial orders on `n` points, from every reflexive relation.
fn labelled_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for code in 0u64..1 << pairs.len() {
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for (i, &(a, b)) in pairs.iter().enumerate() {
            leq[a][b] = code >> i & 1 == 1;
        }
        let antisymmetric = (0..n).all(|a| (0..n).all(|b| a == b || !(leq[a][b] && leq[b][a])));
        let transitive =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c])));
        if antisymmetric && transitive {
            out.push(Poset::from_matrix(&leq).unwrap());
        }
    }
    out
}

fn is_order_isomorphism(p: &Poset, q: &Poset, f: &[usize]) -> bool {
    let n = p.size();
    (0..n).all(|a| (0..n).all(|b| p.leq(a, b) == q.leq(f[a], f[b])))
}

fn brute_isomorphic(p: &Poset, q: &Poset, perms: &[Vec<usize>]) -> bool {
    p.size() == q.size() && perms.iter().any(|f| is_order_isomorphism(p, q, f))
}

#[test]
fn canonical_form_decides_isomorphism_up_to_four() {
    for n in 0..=4 {
        let perms = permutations(n);
        let posets = labelled_posets(n);
        let forms: Vec<Poset> = posets.iter().map(Poset::canonical_form).collect();
        // compare each poset against one representative per canonical form
        let mut reps: BTreeMap<&Poset, &Poset> = BTreeMap::new();
        for (p, f) in posets.iter().zip(&forms) {
            reps.entry(f).or_insert(p);
        }
        for (p, f) in posets.iter().zip(&forms) {
            for (g, rep) in &reps {
                assert_eq!(
                    *g == f,
                    brute_isomorphic(p, rep, &perms),
                    "{p:?} vs {rep:?}"
                );
            }
        }
        // distinct forms are pairwise non-isomorphic
        let rs: Vec<&Poset> = reps.values().copied().collect();
        for i in 0..rs.len() {
            for j in i + 1..rs.len() {
                assert!(!brute_isomorphic(rs[i], rs[j], &perms));
            }
        }
    }
}

#[test]
fn automorphism_groups_match_brute_force() {
    for n in 0..=4 {
        let perms = permutations(n);
        for p in labelled_posets(n) {
            let group = p.automorphisms();
            let brute: Vec<&Vec<usize>> = perms.iter().filter(|f| is_order_isomorphism(&p, &p, f)).collect();
            assert_eq!(group.order(), brute.len(), "{p:?}");
            for f in brute {
                assert!(group.position(&Perm::from_images(f.clone()).unwrap()).is_some());
            }
        }
    }
}

#[test]
fn labelled_counts_match_orbit_sums() {
    let factorial = |e: u64| (1..=e).product::<u64>();
    for e in 0..=5usize {
        let direct = labelled_posets(e).len() as u64;
        assert_eq!(labeled_poset_count(e).unwrap(), direct);
        let orbit_sum: u64 = enumerate_posets(e).unwrap().iter().map(|c| factorial(e as u64) / c.aut_order as u64).sum();
        assert_eq!(orbit_sum, direct, "e = {e}");
    }
    assert_eq!(labelled_posets(4).len(), 219);
}

#[test]
fn larger_censuses() {
    let factorial = |e: u64| (1..=e).product::<u64>();
    for (e, classes, labelled) in [(6usize, 318usize, 130_023u64), (7, 2045, 6_129_859)] {
        let found = enumerate_posets(e).unwrap();
        assert_eq!(found.len(), classes);
        let sum: u64 = found.iter().map(|c| factorial(e as u64) / c.aut_order as u64).sum();
        assert_eq!(sum, labelled, "e = {e}");
    }
}

#[test]
fn census_of_eight() {
    let found = enumerate_posets(8).unwrap();
    assert_eq!(found.len(), 16_999);
    let sum: u64 = found.iter().map(|c| 40_320 / c.aut_order as u64).sum();
    assert_eq!(sum, 431_723_379);
}

fn random_poset_and_perm() -> impl Strategy<Value = (Poset, Vec<usize>)> {
    (1usize..=7).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n * n),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(move |(bits, perm)| {
                let mut leq = vec![vec![false; n]; n];
                for a in 0..n {
                    leq[a][a] = true;
                    for b in a + 1..n {
                        leq[a][b] = bits[a * n + b];
                    }
                }
                for k in 0..n {
                    for i in 0..n {
                        for j in 0..n {
                            if leq[i][k] && leq[k][j] {
                                leq[i][j] = true;
                            }
                        }
                    }
                }
                (Poset::from_matrix(&leq).unwrap(), perm)
            })
    })
}

proptest! {
    #[test]
    fn canonical_form_ignores_labelling((p, perm) in random_poset_and_perm()) {
        let q = p.relabel(&Perm::from_images(perm).unwrap());
        prop_assert_eq!(p.canonical_form(), q.canonical_form());
        prop_assert_eq!(p.automorphisms().order(), q.automorphisms().order());
        prop_assert!(p.canonical_form().is_isomorphic(&p));
    }

    #[test]
    fn automorphisms_preserve_order((p, _perm) in random_poset_and_perm()) {
        let group = p.automorphisms();
        prop_assert!(group.elements()[0].is_identity());
        for g in group.elements() {
            prop_assert!(is_order_isomorphism(&p, &p, g.images()));
        }
    }
}

//! Canonical labelling of posets.
//!
//! Elements are first coloured by an isomorphism-invariant refinement of
//! `(height, #below, #above)`. A labelling lists the colour classes in colour
//! order; among all such labellings we keep the one whose code is
//! lexicographically least. The code is built column by column: column `k`
//! records, for every earlier position `i`, whether `p_i ≤ p_k` and whether
//! `p_k ≤ p_i`. Elements with identical strict up- and down-sets ("twins")
//! are interchangeable by an automorphism, so they are only tried in
//! increasing index order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::Poset;

impl Poset {
    /// Isomorphism-invariant colours, numbered densely from 0 in signature order.
    pub fn refined_colors(&self) -> Vec<u32> {
        let n = self.size();
        let heights = self.heights();
        let below: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&b| self.lt(b, a)).collect()).collect();
        let above: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&b| self.lt(a, b)).collect()).collect();
        let initial: Vec<Vec<u32>> = (0..n)
            .map(|a| vec![heights[a] as u32, below[a].len() as u32, above[a].len() as u32])
            .collect();
        let mut colors = densify(&initial);
        loop {
            let classes = colors.iter().max().map_or(0, |m| m + 1);
            let signatures: Vec<Vec<u32>> = (0..n)
                .map(|a| {
                    let mut lo: Vec<u32> = below[a].iter().map(|&b| colors[b]).collect();
                    let mut hi: Vec<u32> = above[a].iter().map(|&b| colors[b]).collect();
                    lo.sort_unstable();
                    hi.sort_unstable();
                    let mut sig = vec![colors[a], lo.len() as u32];
                    sig.extend(lo);
                    sig.extend(hi);
                    sig
                })
                .collect();
            let next = densify(&signatures);
            let next_classes = next.iter().max().map_or(0, |m| m + 1);
            colors = next;
            if next_classes == classes {
                return colors;
            }
        }
    }

    /// The representative of the isomorphism class of `self` with the least code.
    pub fn canonical_form(&self) -> Poset {
        let order = self.canonical_labelling();
        let n = self.size();
        let mut up = vec![0u64; n];
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                if self.leq(a, b) {
                    up[i] |= 1 << j;
                }
            }
        }
        Poset::from_up_masks_unchecked(up)
    }

    /// `order[k]` is the element placed at position `k` of the canonical form.
    pub fn canonical_labelling(&self) -> Vec<usize> {
        let n = self.size();
        let colors = self.refined_colors();
        let mut slots: Vec<u32> = colors.clone();
        slots.sort_unstable();
        let strict_up: Vec<u64> = (0..n).map(|a| self.up_set(a) & !(1 << a)).collect();
        let strict_down: Vec<u64> = (0..n).map(|a| self.down_set(a) & !(1 << a)).collect();
        // Twins of `a` with a smaller index must be placed before `a`.
        let earlier_twins: Vec<u64> = (0..n)
            .map(|a| {
                (0..a)
                    .filter(|&b| strict_up[b] == strict_up[a] && strict_down[b] == strict_down[a])
                    .fold(0, |m, b| m | 1 << b)
            })
            .collect();
        let mut search = Search {
            poset: self,
            colors: &colors,
            slots: &slots,
            earlier_twins: &earlier_twins,
            order: Vec::with_capacity(n),
            code: Vec::with_capacity(n),
            best_order: Vec::new(),
            best_code: Vec::new(),
            have_best: false,
        };
        search.run(0);
        search.best_order
    }
}

fn densify(signatures: &[Vec<u32>]) -> Vec<u32> {
    let mut ranks: BTreeMap<&Vec<u32>, u32> = signatures.iter().map(|s| (s, 0)).collect();
    for (i, v) in ranks.values_mut().enumerate() {
        *v = i as u32;
    }
    signatures.iter().map(|s| ranks[s]).collect()
}

struct Search<'a> {
    poset: &'a Poset,
    colors: &'a [u32],
    slots: &'a [u32],
    earlier_twins: &'a [u64],
    order: Vec<usize>,
    code: Vec<u128>,
    best_order: Vec<usize>,
    best_code: Vec<u128>,
    have_best: bool,
}

impl Search<'_> {
    fn column(&self, v: usize) -> u128 {
        let mut col = 0u128;
        for &u in &self.order {
            col = (col << 2) | (self.poset.leq(u, v) as u128) << 1 | self.poset.leq(v, u) as u128;
        }
        col
    }

    fn run(&mut self, depth: usize) {
        let n = self.poset.size();
        if depth == n {
            if !self.have_best || self.code < self.best_code {
                self.best_order = self.order.clone();
                self.best_code = self.code.clone();
                self.have_best = true;
            }
            return;
        }
        let prefix = if self.have_best {
            self.code.as_slice().cmp(&self.best_code[..depth])
        } else {
            Ordering::Less
        };
        if prefix == Ordering::Greater {
            return;
        }
        let placed: u64 = self.order.iter().fold(0, |m, &a| m | 1 << a);
        for v in 0..n {
            if placed & (1 << v) != 0
                || self.colors[v] != self.slots[depth]
                || self.earlier_twins[v] & !placed != 0
            {
                continue;
            }
            let col = self.column(v);
            // The best code may have improved while exploring earlier siblings.
            if self.have_best
                && self.code.as_slice() == &self.best_code[..depth]
                && col > self.best_code[depth]
            {
                continue;
            }
            self.order.push(v);
            self.code.push(col);
            self.run(depth + 1);
            self.order.pop();
            self.code.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    #[test]
    fn relabelled_chain_has_one_form() {
        let c = Poset::chain(3);
        let p = Perm::from_images(vec![2, 0, 1]).unwrap();
        assert_eq!(c.relabel(&p).canonical_form(), c.canonical_form());
    }

    #[test]
    fn antichain_and_chain_differ() {
        assert_ne!(Poset::antichain(2).canonical_form(), Poset::chain(2).canonical_form());
    }

    #[test]
    fn canonical_form_is_isomorphic_and_idempotent() {
        let p = Poset::from_leq_fn(4, |a, b| a == b || (a == 3 && b != 3) || (a, b) == (1, 0)).unwrap();
        let c = p.canonical_form();
        assert_eq!(c.canonical_form(), c);
        assert_eq!(c.automorphisms().order(), p.automorphisms().order());
        assert_eq!(c.strict_relation_count(), p.strict_relation_count());
    }
}

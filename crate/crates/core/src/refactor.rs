// SPDX-License-Identifier: Apache-2.0
//! Reconvergence-driven cuts and refactoring of large cones.

use rustc_hash::FxHashSet;

use crate::aig::{Aig, Lit};
use crate::cut::{cut_tt, Cut};
use crate::recipe::Recipe;
use crate::sop::{compile_form, factor_best};
use crate::truth::MAX_VARS;

pub const DEFAULT_REFACTOR_LEAVES: usize = 10;

/// Grows a cut of `v` from its fanins, repeatedly expanding the leaf whose
/// replacement by its fanins adds the fewest new leaves, while the cut
/// stays within `max_leaves`. Ties go to the lowest node index.
pub fn reconv_cut(aig: &Aig, v: u32, max_leaves: usize) -> Cut {
    let Some((a, b)) = aig.fanins(v) else {
        return Cut::new(vec![v]);
    };
    let mut visited: FxHashSet<u32> = FxHashSet::default();
    visited.insert(v);
    let mut leaves: Vec<u32> = Vec::new();
    for f in [a.node(), b.node()] {
        if visited.insert(f) {
            leaves.push(f);
        }
    }
    loop {
        let mut best: Option<(i32, u32)> = None;
        for &l in &leaves {
            let Some((x, y)) = aig.fanins(l) else {
                continue;
            };
            let fresh = [x.node(), y.node()]
                .iter()
                .filter(|n| !visited.contains(n))
                .count() as i32
                - (x.node() == y.node()) as i32;
            let cost = fresh - 1;
            if best.is_none_or(|(bc, bl)| cost < bc || (cost == bc && l < bl)) {
                best = Some((cost, l));
            }
        }
        let Some((cost, l)) = best else {
            break;
        };
        if leaves.len() as i32 + cost > max_leaves as i32 {
            break;
        }
        leaves.retain(|&x| x != l);
        let (x, y) = aig.fanins(l).unwrap();
        for f in [x.node(), y.node()] {
            if visited.insert(f) {
                leaves.push(f);
            }
        }
    }
    Cut::new(leaves)
}

/// Refactoring replacement of `v` over its reconvergence-driven cut, as
/// (gain, recipe).
pub fn refactor_candidate(aig: &Aig, v: u32, max_leaves: usize) -> Option<(i64, Recipe)> {
    if !aig.is_and(v) {
        return None;
    }
    let cut = reconv_cut(aig, v, max_leaves);
    if cut.len() > MAX_VARS || cut.is_trivial_of(v) {
        return None;
    }
    let tt = cut_tt(aig, v, &cut.leaves).ok()?;
    let (form, compl) = factor_best(&tt);
    let (mut net, out) = compile_form(&form, compl);
    let out = net.prune(out);
    let inputs: Vec<Lit> = cut.leaves.iter().map(|&l| Lit::new(l, false)).collect();
    let recipe = Recipe::new(inputs, net, out);
    let doomed: FxHashSet<u32> = aig.mffc_bounded(v, &cut.leaves).into_iter().collect();
    let added = recipe.dry_run(aig, v, &doomed)?;
    Some((doomed.len() as i64 - added as i64, recipe))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_tree_expands_to_inputs() {
        let mut g = Aig::new();
        let pis: Vec<Lit> = (0..8).map(|_| g.add_pi()).collect();
        let mut layer = pis.clone();
        while layer.len() > 1 {
            layer = layer.chunks(2).map(|p| g.add_and(p[0], p[1])).collect();
        }
        g.add_po(layer[0]);
        let cut = reconv_cut(&g, layer[0].node(), 10);
        let expect: Vec<u32> = pis.iter().map(|l| l.node()).collect();
        assert_eq!(cut.leaves, expect);
        let cut = reconv_cut(&g, layer[0].node(), 5);
        assert!(cut.len() <= 5);
    }

    #[test]
    fn pi_cut_is_itself() {
        let mut g = Aig::new();
        let a = g.add_pi();
        assert_eq!(reconv_cut(&g, a.node(), 10).leaves, vec![a.node()]);
    }

    #[test]
    fn factored_minimal_cone_is_not_improved() {
        let mut g = Aig::new();
        let a = g.add_pi();
        let b = g.add_pi();
        let c = g.add_pi();
        let ab = g.add_and(a, b);
        let top = g.add_and(ab, c);
        g.add_po(top);
        let (gain, _) = refactor_candidate(&g, top.node(), 10).unwrap_or((-1, Recipe::wire(a)));
        assert!(gain <= 0);
    }
}

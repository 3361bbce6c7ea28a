// SPDX-License-Identifier: Apache-2.0
//! DAG-aware rewriting of 4-input cuts with precomputed templates.

use rustc_hash::FxHashSet;

use crate::aig::{Aig, Lit};
use crate::cut::CutManager;
use crate::npn::{npn_canon, RewriteLibrary};
use crate::recipe::Recipe;

/// Cut size used by rewriting.
pub const REWRITE_CUT_SIZE: usize = 4;

/// Best template replacement of `v` over its 4-leaf cuts, as (gain, recipe).
///
/// Cuts with fewer than four leaves are not considered. Among candidates of
/// equal gain the earlier cut in priority order wins, then the earlier
/// template.
pub fn rewrite_candidate(
    aig: &Aig,
    v: u32,
    cuts: &mut CutManager,
    lib: &RewriteLibrary,
) -> Option<(i64, Recipe)> {
    if !aig.is_and(v) {
        return None;
    }
    let mut best: Option<(i64, Recipe)> = None;
    for cut in cuts.cuts(aig, v).to_vec() {
        if cut.len() != REWRITE_CUT_SIZE {
            continue;
        }
        let tt = cut.tt as u16;
        let (canon, t) = npn_canon(tt);
        let templates = lib.templates(canon);
        if templates.is_empty() {
            continue;
        }
        let doomed: FxHashSet<u32> = aig.mffc_bounded(v, &cut.leaves).into_iter().collect();
        let inputs: Vec<Lit> = (0..4)
            .map(|j| Lit::new(cut.leaves[t.perm[j] as usize], (t.neg >> j) & 1 == 1))
            .collect();
        for tpl in templates {
            let recipe = Recipe::new(inputs.clone(), tpl.net.clone(), tpl.out ^ t.oc as u32);
            let Some(added) = recipe.dry_run(aig, v, &doomed) else {
                continue;
            };
            let gain = doomed.len() as i64 - added as i64;
            if best.as_ref().is_none_or(|(g, _)| gain > *g) {
                best = Some((gain, recipe));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::DEFAULT_CUTS_PER_NODE;
    use crate::truth::TruthTable;

    fn table_of(aig: &Aig, recipe: &Recipe, leaves: &[u32]) -> u16 {
        // evaluate the recipe output over the leaves
        let mut g = aig.clone();
        let out = recipe.build(&mut g);
        let tt = crate::cut::cut_tt(&g, out.node(), leaves).unwrap();
        let tt = tt.xor_const(out.is_compl());
        tt.to_u64() as u16
    }

    #[test]
    fn template_wiring_reproduces_cut_function() {
        let lib = RewriteLibrary::standard();
        for seed in 0..200u64 {
            let mut g = Aig::new();
            let pis: Vec<Lit> = (0..4).map(|_| g.add_pi()).collect();
            // build a random 4-input function as a mux tree of minterms
            let f = (seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 20) as u16;
            let tt = TruthTable::from_u64(4, f as u64);
            let sop = crate::sop::isop(&tt);
            let mut acc = Lit::FALSE;
            for c in &sop.cubes {
                let mut term = Lit::TRUE;
                for l in c.literals() {
                    term = g.add_and(term, pis[(l >> 1) as usize].xor(l & 1 == 1));
                }
                acc = g.add_or(acc, term);
            }
            if !g.is_and(acc.node()) {
                continue;
            }
            g.add_po(acc);
            let v = acc.node();
            let mut mgr = CutManager::new(4, DEFAULT_CUTS_PER_NODE);
            let leaves: Vec<u32> = pis.iter().map(|l| l.node()).collect();
            let Some((_, recipe)) = rewrite_candidate(&g, v, &mut mgr, lib) else {
                continue;
            };
            let expect = crate::cut::cut_tt(&g, v, &leaves).unwrap().to_u64() as u16;
            assert_eq!(table_of(&g, &recipe, &leaves), expect, "seed {seed}");
        }
    }

    #[test]
    fn redundant_structure_has_positive_gain() {
        // (a & b) & (a & (b & c)) & d computes a & b & c & d with 5 nodes
        let mut g = Aig::new();
        let a = g.add_pi();
        let b = g.add_pi();
        let c = g.add_pi();
        let d = g.add_pi();
        let ab = g.add_and(a, b);
        let bc = g.add_and(b, c);
        let abc = g.add_and(a, bc);
        let x = g.add_and(ab, abc);
        let top = g.add_and(x, d);
        g.add_po(top);
        let mut mgr = CutManager::new(4, DEFAULT_CUTS_PER_NODE);
        let (gain, _) =
            rewrite_candidate(&g, top.node(), &mut mgr, RewriteLibrary::standard()).unwrap();
        assert_eq!(gain, 2);
    }
}

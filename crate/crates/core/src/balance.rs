// SPDX-License-Identifier: Apache-2.0
//! Depth-oriented rebalancing of AND super-gates.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::aig::{Aig, Lit};

/// Rebuilds every maximal AND super-gate as a minimum-depth tree.
///
/// A super-gate grows through uncomplemented edges into AND nodes with a
/// single fanout. Its operands are combined two at a time, always taking
/// the two with the lowest level.
pub fn balance(aig: &Aig) -> Aig {
    let mut out = Aig::with_name(aig.name());
    out.set_symbols(aig.symbols().to_vec());
    out.set_comment(aig.comment().map(str::to_string));
    let mut map: Vec<Option<Lit>> = vec![None; aig.slot_count()];
    map[0] = Some(Lit::FALSE);
    for &p in aig.pis() {
        map[p as usize] = Some(out.add_pi());
    }
    // nodes that must exist as their own signal
    let mut is_root = vec![false; aig.slot_count()];
    for p in aig.pos() {
        is_root[p.node() as usize] = true;
    }
    let order = aig.and_order();
    for &n in &order {
        if aig.refs(n) != 1 {
            is_root[n as usize] = true;
        }
        let (a, b) = aig.fanins(n).unwrap();
        for f in [a, b] {
            if f.is_compl() {
                is_root[f.node() as usize] = true;
            }
        }
    }
    for &n in &order {
        if !is_root[n as usize] {
            continue;
        }
        let leaves = supergate(aig, n, &is_root);
        let lits: Vec<Lit> = leaves
            .iter()
            .map(|l| {
                map[l.node() as usize]
                    .expect("operand built")
                    .xor(l.is_compl())
            })
            .collect();
        map[n as usize] = Some(build_balanced(&mut out, lits));
    }
    for p in aig.pos() {
        out.add_po(map[p.node() as usize].unwrap().xor(p.is_compl()));
    }
    out.cleanup();
    out.recompute_levels();
    out.compact().0
}

fn supergate(aig: &Aig, root: u32, is_root: &[bool]) -> Vec<Lit> {
    let mut leaves = Vec::new();
    let mut stack = vec![Lit::new(root, false)];
    while let Some(l) = stack.pop() {
        let n = l.node();
        let expand = !l.is_compl() && aig.is_and(n) && (n == root || !is_root[n as usize]);
        if expand {
            let (a, b) = aig.fanins(n).unwrap();
            stack.push(b);
            stack.push(a);
        } else {
            leaves.push(l);
        }
    }
    leaves
}

fn build_balanced(out: &mut Aig, mut lits: Vec<Lit>) -> Lit {
    lits.sort_unstable();
    lits.dedup();
    if lits.windows(2).any(|w| w[0].node() == w[1].node()) || lits.contains(&Lit::FALSE) {
        return Lit::FALSE;
    }
    lits.retain(|&l| l != Lit::TRUE);
    if lits.is_empty() {
        return Lit::TRUE;
    }
    let mut heap: BinaryHeap<Reverse<(u32, Lit)>> = lits
        .into_iter()
        .map(|l| Reverse((out.level(l.node()), l)))
        .collect();
    while heap.len() > 1 {
        let Reverse((_, a)) = heap.pop().unwrap();
        let Reverse((_, b)) = heap.pop().unwrap();
        let l = out.add_and(a, b);
        heap.push(Reverse((out.level(l.node()), l)));
    }
    heap.pop().unwrap().0 .1
}

// SPDX-License-Identifier: Apache-2.0
//! Reference implementations used as oracles. They only read the graph
//! through `fanins`, `pis` and `pos`.
#![allow(dead_code)]

pub mod npn_oracle;

use std::collections::{HashMap, HashSet};

use aig_orch::{Aig, Lit};

/// Evaluates every PO by memoized recursion, optionally pretending that
/// node `over.0` computes literal `over.1`.
pub fn eval_with(aig: &Aig, inputs: &[bool], over: Option<(u32, Lit)>) -> Vec<bool> {
    let mut memo: HashMap<u32, bool> = HashMap::new();
    memo.insert(0, false);
    for (i, &p) in aig.pis().iter().enumerate() {
        memo.insert(p, inputs[i]);
    }
    aig.pos()
        .iter()
        .map(|&l| lit_value(aig, l, &mut memo, over))
        .collect()
}

pub fn eval(aig: &Aig, inputs: &[bool]) -> Vec<bool> {
    eval_with(aig, inputs, None)
}

fn lit_value(aig: &Aig, l: Lit, memo: &mut HashMap<u32, bool>, over: Option<(u32, Lit)>) -> bool {
    node_value(aig, l.node(), memo, over) ^ l.is_compl()
}

fn node_value(aig: &Aig, n: u32, memo: &mut HashMap<u32, bool>, over: Option<(u32, Lit)>) -> bool {
    if let Some(&v) = memo.get(&n) {
        return v;
    }
    let v = match over {
        Some((o, l)) if o == n => lit_value(aig, l, memo, over),
        _ => {
            let (a, b) = aig.fanins(n).expect("AND node");
            lit_value(aig, a, memo, over) && lit_value(aig, b, memo, over)
        }
    };
    memo.insert(n, v);
    v
}

/// All input assignments for up to 12 inputs, otherwise `n` pseudo-random
/// ones from a fixed xorshift stream.
pub fn assignments(pis: usize, n: usize) -> Vec<Vec<bool>> {
    if pis <= 12 {
        return (0..1usize << pis)
            .map(|x| (0..pis).map(|i| x >> i & 1 == 1).collect())
            .collect();
    }
    let mut s = 0x9E37_79B9_7F4A_7C15u64;
    (0..n)
        .map(|_| {
            (0..pis)
                .map(|_| {
                    s ^= s << 13;
                    s ^= s >> 7;
                    s ^= s << 17;
                    s & 1 == 1
                })
                .collect()
        })
        .collect()
}

/// True when both graphs agree on every assignment from `assignments`.
pub fn same_function(a: &Aig, b: &Aig) -> bool {
    assert_eq!(a.num_pis(), b.num_pis());
    assignments(a.num_pis(), 4096)
        .iter()
        .all(|x| eval(a, x) == eval(b, x))
}

/// Transitive fanin of `n`, including `n`.
pub fn tfi(aig: &Aig, n: u32) -> HashSet<u32> {
    let mut seen = HashSet::new();
    let mut stack = vec![n];
    while let Some(x) = stack.pop() {
        if !seen.insert(x) {
            continue;
        }
        if let Some((a, b)) = aig.fanins(x) {
            stack.push(a.node());
            stack.push(b.node());
        }
    }
    seen
}

/// AND nodes that no longer reach a PO once `root` is cut out of the
/// graph. Assumes every live node reaches some PO.
pub fn mffc_by_reachability(aig: &Aig, root: u32) -> HashSet<u32> {
    let mut reached = HashSet::new();
    let mut stack: Vec<u32> = aig.pos().iter().map(|l| l.node()).collect();
    while let Some(x) = stack.pop() {
        if x == root || !reached.insert(x) {
            continue;
        }
        if let Some((a, b)) = aig.fanins(x) {
            stack.push(a.node());
            stack.push(b.node());
        }
    }
    tfi(aig, root)
        .into_iter()
        .filter(|&n| aig.is_and(n) && !reached.contains(&n))
        .collect()
}

/// Live AND nodes of a graph.
pub fn ands(aig: &Aig) -> Vec<u32> {
    (0..aig.slot_count() as u32)
        .filter(|&n| aig.is_and(n))
        .collect()
}

/// Nodes of `aig` (AND and PI) in index order with their fanins, as a
/// structural fingerprint.
pub fn structure(aig: &Aig) -> (usize, Vec<Lit>, Vec<(u32, Lit, Lit)>) {
    let nodes = ands(aig)
        .into_iter()
        .map(|n| {
            let (a, b) = aig.fanins(n).unwrap();
            (n, a, b)
        })
        .collect();
    (aig.num_pis(), aig.pos().to_vec(), nodes)
}

// SPDX-License-Identifier: Apache-2.0
//! K-feasible cut enumeration with priority pruning, and cut truth tables.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::aig::{Aig, NodeKind};
use crate::error::{Error, Result};
use crate::truth::{TruthTable, MAX_VARS};

/// Default number of cuts kept per node.
pub const DEFAULT_CUTS_PER_NODE: usize = 8;

/// A set of leaves, sorted by ascending node index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    pub leaves: Vec<u32>,
    pub sig: u64,
    /// Function of the root over the leaves, low `2^len` bits; only
    /// maintained for cuts of at most six leaves.
    pub(crate) tt: u64,
}

#[inline]
fn leaf_sig(n: u32) -> u64 {
    1u64 << (n % 64)
}

impl Cut {
    pub fn new(mut leaves: Vec<u32>) -> Cut {
        leaves.sort_unstable();
        leaves.dedup();
        let sig = leaves.iter().fold(0, |s, &l| s | leaf_sig(l));
        Cut { leaves, sig, tt: 0 }
    }

    fn trivial(node: u32) -> Cut {
        Cut {
            leaves: vec![node],
            sig: leaf_sig(node),
            tt: 0b10,
        }
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    pub fn is_trivial_of(&self, node: u32) -> bool {
        self.leaves.len() == 1 && self.leaves[0] == node
    }

    /// Truth table carried with the cut (at most six leaves).
    pub fn truth(&self) -> TruthTable {
        TruthTable::from_u64(self.len(), self.tt)
    }

    fn leaf_sum(&self) -> u64 {
        self.leaves.iter().map(|&l| l as u64).sum()
    }

    fn priority_key(&self) -> (usize, u64) {
        (self.len(), self.leaf_sum())
    }

    /// True when every leaf of `self` is a leaf of `other`.
    fn subset_of(&self, other: &Cut) -> bool {
        if self.sig & !other.sig != 0 || self.len() > other.len() {
            return false;
        }
        let mut j = 0;
        for &l in &self.leaves {
            while j < other.leaves.len() && other.leaves[j] < l {
                j += 1;
            }
            if j == other.leaves.len() || other.leaves[j] != l {
                return false;
            }
        }
        true
    }
}

fn merge_leaves(a: &Cut, b: &Cut, k: usize) -> Option<Vec<u32>> {
    let mut out = Vec::with_capacity(k);
    let (mut i, mut j) = (0, 0);
    while i < a.leaves.len() || j < b.leaves.len() {
        let next = match (a.leaves.get(i), b.leaves.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if out.len() == k {
            return None;
        }
        out.push(next);
    }
    Some(out)
}

/// Re-expresses a cut function over a superset of its leaves.
fn stretch(tt: u64, from: &[u32], to: &[u32]) -> u64 {
    let pos: Vec<usize> = from
        .iter()
        .map(|l| to.iter().position(|x| x == l).expect("leaf subset"))
        .collect();
    let mut out = 0u64;
    for m in 0..(1usize << to.len()) {
        let mut idx = 0;
        for (i, &p) in pos.iter().enumerate() {
            idx |= ((m >> p) & 1) << i;
        }
        if (tt >> idx) & 1 == 1 {
            out |= 1 << m;
        }
    }
    out
}

fn mask(len: usize) -> u64 {
    if len >= 6 {
        !0
    } else {
        (1u64 << (1 << len)) - 1
    }
}

/// Priority cuts of every node in a graph, computed on demand and cached.
#[derive(Debug)]
pub struct CutManager {
    k: usize,
    c: usize,
    cache: FxHashMap<u32, Vec<Cut>>,
}

impl CutManager {
    pub fn new(k: usize, c: usize) -> CutManager {
        assert!((2..=8).contains(&k), "cut size must be in 2..=8");
        assert!(c >= 1);
        CutManager {
            k,
            c,
            cache: FxHashMap::default(),
        }
    }

    /// Drops cached cuts of the given nodes and of their transitive fanouts.
    pub fn invalidate(&mut self, aig: &Aig, nodes: &[u32]) {
        let mut stack: Vec<u32> = nodes.to_vec();
        while let Some(n) = stack.pop() {
            if self.cache.remove(&n).is_some() && aig.is_live(n) {
                stack.extend_from_slice(aig.fanouts(n));
            }
        }
    }

    pub fn clear(&mut self) {
        self.cache.clear();
    }

    pub fn cuts(&mut self, aig: &Aig, root: u32) -> &[Cut] {
        if !self.cache.contains_key(&root) {
            self.compute(aig, root);
        }
        &self.cache[&root]
    }

    fn compute(&mut self, aig: &Aig, root: u32) {
        // iterative post-order over uncached nodes
        let mut stack = vec![(root, false)];
        while let Some((n, ready)) = stack.pop() {
            if self.cache.contains_key(&n) {
                continue;
            }
            match aig.kind(n) {
                NodeKind::And(a, b) => {
                    if !ready {
                        stack.push((n, true));
                        for f in [a.node(), b.node()] {
                            if !self.cache.contains_key(&f) {
                                stack.push((f, false));
                            }
                        }
                        continue;
                    }
                    let cuts = self.merge(n, a, b);
                    self.cache.insert(n, cuts);
                }
                NodeKind::Const => {
                    self.cache.insert(
                        n,
                        vec![Cut {
                            leaves: Vec::new(),
                            sig: 0,
                            tt: 0,
                        }],
                    );
                }
                _ => {
                    self.cache.insert(n, vec![Cut::trivial(n)]);
                }
            }
        }
    }

    fn merge(&self, n: u32, a: crate::aig::Lit, b: crate::aig::Lit) -> Vec<Cut> {
        let ca = &self.cache[&a.node()];
        let cb = &self.cache[&b.node()];
        let mut found: Vec<Cut> = Vec::new();
        let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
        for x in ca {
            for y in cb {
                if (x.sig | y.sig).count_ones() as usize > self.k {
                    continue;
                }
                let Some(leaves) = merge_leaves(x, y, self.k) else {
                    continue;
                };
                if !seen.insert(leaves.clone()) {
                    continue;
                }
                let sig = x.sig | y.sig;
                let mut tx = stretch(x.tt, &x.leaves, &leaves);
                let mut ty = stretch(y.tt, &y.leaves, &leaves);
                let m = mask(leaves.len());
                if a.is_compl() {
                    tx = !tx & m;
                }
                if b.is_compl() {
                    ty = !ty & m;
                }
                found.push(Cut {
                    leaves,
                    sig,
                    tt: tx & ty & m,
                });
            }
        }
        found.sort_by_key(|c| c.priority_key());
        let mut kept: Vec<Cut> = Vec::new();
        for c in found {
            if kept.iter().any(|k| k.subset_of(&c)) {
                continue;
            }
            kept.push(c);
        }
        kept.truncate(self.c.saturating_sub(1));
        kept.insert(0, Cut::trivial(n));
        kept
    }
}

/// Up to `c` irredundant `k`-feasible cuts of `root`, trivial cut first,
/// the rest ordered by (leaf count, leaf index sum).
pub fn enumerate_cuts(aig: &Aig, root: u32, k: usize, c: usize) -> Result<Vec<Cut>> {
    if !aig.is_live(root) {
        return Err(Error::DeadNode(root));
    }
    let mut mgr = CutManager::new(k, c);
    Ok(mgr.cuts(aig, root).to_vec())
}

/// AND nodes strictly inside the cone of `root` bounded by `leaves`, in
/// topological order (root last). Fails if the cone reaches a primary input
/// that is not a leaf.
pub fn cone_nodes(aig: &Aig, root: u32, leaves: &[u32]) -> Result<Vec<u32>> {
    let mut order = Vec::new();
    if leaves.contains(&root) {
        return Ok(order);
    }
    let mut visited: FxHashSet<u32> = leaves.iter().copied().collect();
    visited.insert(0);
    let mut stack = vec![(root, false)];
    while let Some((n, done)) = stack.pop() {
        if done {
            order.push(n);
            continue;
        }
        if !visited.insert(n) {
            continue;
        }
        let Some((a, b)) = aig.fanins(n) else {
            return Err(Error::NotACut(root));
        };
        stack.push((n, true));
        for f in [b.node(), a.node()] {
            if !visited.contains(&f) {
                stack.push((f, false));
            }
        }
    }
    Ok(order)
}

/// Truth tables of the given nodes over `leaves`. `nodes` must be in
/// topological order and supported by the leaves.
pub fn simulate_nodes(aig: &Aig, leaves: &[u32], nodes: &[u32]) -> FxHashMap<u32, TruthTable> {
    let k = leaves.len();
    let mut tts: FxHashMap<u32, TruthTable> = FxHashMap::default();
    tts.insert(0, TruthTable::zero(k));
    for (i, &l) in leaves.iter().enumerate() {
        tts.insert(l, TruthTable::var(k, i));
    }
    for &n in nodes {
        if tts.contains_key(&n) {
            continue;
        }
        let (a, b) = aig.fanins(n).expect("simulated node is an AND");
        let ta = tts[&a.node()].xor_const(a.is_compl());
        let tb = tts[&b.node()].xor_const(b.is_compl());
        tts.insert(n, ta.and(&tb));
    }
    tts
}

/// Function of `root` over `leaves` (in the given order).
pub fn cut_tt(aig: &Aig, root: u32, leaves: &[u32]) -> Result<TruthTable> {
    if leaves.len() > MAX_VARS {
        return Err(Error::NotACut(root));
    }
    let nodes = cone_nodes(aig, root, leaves)?;
    let tts = simulate_nodes(aig, leaves, &nodes);
    Ok(tts[&root].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_has_only_trivial_cut() {
        let mut g = Aig::new();
        let a = g.add_pi();
        let cuts = enumerate_cuts(&g, a.node(), 4, 8).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].leaves, vec![a.node()]);
    }

    #[test]
    fn two_input_and() {
        let mut g = Aig::new();
        let a = g.add_pi();
        let b = g.add_pi();
        let n = g.add_and(a, b);
        let cuts = enumerate_cuts(&g, n.node(), 4, 8).unwrap();
        let sets: Vec<_> = cuts.iter().map(|c| c.leaves.clone()).collect();
        assert_eq!(sets, vec![vec![n.node()], vec![a.node(), b.node()]]);
        assert_eq!(cuts[1].tt, 0x8);
    }

    #[test]
    fn cut_tables() {
        let mut g = Aig::new();
        let a = g.add_pi();
        let b = g.add_pi();
        let n = g.add_and(a, b);
        let leaves = [a.node(), b.node()];
        assert_eq!(cut_tt(&g, n.node(), &leaves).unwrap().to_u64(), 0x8);
        let m = g.add_and(!a, b);
        let nand = !g.add_and(n, m);
        let t = cut_tt(&g, nand.node(), &leaves).unwrap();
        // n & m is constant false, so the node itself evaluates to zero
        assert_eq!(t.to_u64(), 0x0);
        assert!(matches!(
            cut_tt(&g, n.node(), &[a.node()]),
            Err(Error::NotACut(_))
        ));
    }

    #[test]
    fn stretch_reorders() {
        // f = x0 over {5}, stretched to {3, 5} is x1
        assert_eq!(stretch(0b10, &[5], &[3, 5]), 0b1100);
    }
}

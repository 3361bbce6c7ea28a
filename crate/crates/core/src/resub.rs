// SPDX-License-Identifier: Apache-2.0
//! Window-based Boolean resubstitution with up to three new nodes.

use rustc_hash::FxHashSet;

use crate::aig::{Aig, Lit};
use crate::cut::{cone_nodes, simulate_nodes};
use crate::recipe::{Net, NetLit, Recipe};
use crate::refactor::reconv_cut;
use crate::truth::TruthTable;

pub const DEFAULT_RESUB_LEAVES: usize = 8;
pub const DEFAULT_DIVISOR_LIMIT: usize = 150;
pub const MAX_RESUB_K: usize = 3;

/// Unate divisors considered when forming 3- and 4-operand gates.
const MAX_UNATE_COMBO: usize = 32;
/// Divisor pairs kept per polarity.
const MAX_PAIRS: usize = 256;

/// Window of a node and the existing nodes usable to re-express it.
#[derive(Clone, Debug)]
pub struct DivisorSet {
    pub root: u32,
    pub leaves: Vec<u32>,
    /// Nodes freed when the root is replaced; never divisors.
    pub mffc: Vec<u32>,
    /// Divisors in topological order, leaves first.
    pub divisors: Vec<u32>,
    /// Window truth tables, parallel to `divisors`.
    pub tts: Vec<TruthTable>,
    pub root_tt: TruthTable,
}

impl DivisorSet {
    pub fn contains(&self, node: u32) -> bool {
        self.divisors.contains(&node)
    }
}

/// Collects at most `limit` divisors for `v` over its reconvergence-driven
/// window of at most `max_leaves` leaves.
pub fn collect_divisors(aig: &Aig, v: u32, max_leaves: usize, limit: usize) -> Option<DivisorSet> {
    if !aig.is_and(v) {
        return None;
    }
    let cut = reconv_cut(aig, v, max_leaves);
    let leaves = cut.leaves;
    let mffc = aig.mffc_bounded(v, &leaves);
    let mffc_set: FxHashSet<u32> = mffc.iter().copied().collect();
    let cone = cone_nodes(aig, v, &leaves).ok()?;

    let mut divisors: Vec<u32> = leaves.clone();
    let mut in_set: FxHashSet<u32> = leaves.iter().copied().collect();
    for &n in &cone {
        if divisors.len() >= limit {
            break;
        }
        if n != v && !mffc_set.contains(&n) && in_set.insert(n) {
            divisors.push(n);
        }
    }
    // nodes outside the cone computed only from divisors
    let mut i = 0;
    while i < divisors.len() && divisors.len() < limit {
        let d = divisors[i];
        let mut outs: Vec<u32> = aig.fanouts(d).to_vec();
        outs.sort_unstable();
        outs.dedup();
        for f in outs {
            if divisors.len() >= limit {
                break;
            }
            if f == v || mffc_set.contains(&f) || in_set.contains(&f) {
                continue;
            }
            let (a, b) = aig.fanins(f).unwrap();
            if in_set.contains(&a.node()) && in_set.contains(&b.node()) {
                in_set.insert(f);
                divisors.push(f);
            }
        }
        i += 1;
    }
    divisors.truncate(limit);

    let mut sim_nodes: Vec<u32> = cone.clone();
    sim_nodes.extend(divisors.iter().copied().filter(|d| !cone.contains(d)));
    let tts_map = simulate_nodes(aig, &leaves, &sim_nodes);
    let tts = divisors.iter().map(|d| tts_map[d].clone()).collect();
    let root_tt = tts_map[&v].clone();
    Some(DivisorSet {
        root: v,
        leaves,
        mffc,
        divisors,
        tts,
        root_tt,
    })
}

/// A divisor with polarity.
#[derive(Clone, Copy, Debug)]
struct Sig {
    div: usize,
    compl: bool,
}

struct Search<'a> {
    aig: &'a Aig,
    set: &'a DivisorSet,
    doomed: FxHashSet<u32>,
    zero_cost: bool,
}

/// Gate shapes over divisor literals.
enum Shape {
    Wire(Sig),
    And(Vec<Sig>),
    Or(Vec<Sig>),
    /// `a | (b & c)` style: first operand list joined with the pairs.
    OrOfAnds(Vec<Vec<Sig>>),
    AndOfOrs(Vec<Vec<Sig>>),
}

impl<'a> Search<'a> {
    fn tt(&self, s: Sig) -> TruthTable {
        self.set.tts[s.div].xor_const(s.compl)
    }

    fn lit(&self, s: Sig) -> Lit {
        Lit::new(self.set.divisors[s.div], s.compl)
    }

    fn passes(&self, gain: i64) -> bool {
        if self.zero_cost {
            gain >= 0
        } else {
            gain > 0
        }
    }

    fn recipe(&self, shape: &Shape) -> Recipe {
        let mut inputs: Vec<Lit> = Vec::new();
        let slot = |s: Sig, inputs: &mut Vec<Lit>| -> usize {
            let l = self.lit(s);
            match inputs.iter().position(|&x| x == l) {
                Some(i) => i,
                None => {
                    inputs.push(l);
                    inputs.len() - 1
                }
            }
        };
        // collect inputs first so the net knows its arity
        let groups: Vec<Vec<Sig>> = match shape {
            Shape::Wire(s) => vec![vec![*s]],
            Shape::And(v) | Shape::Or(v) => vec![v.clone()],
            Shape::OrOfAnds(g) | Shape::AndOfOrs(g) => g.clone(),
        };
        let idx: Vec<Vec<usize>> = groups
            .iter()
            .map(|g| g.iter().map(|&s| slot(s, &mut inputs)).collect())
            .collect();
        let mut net = Net::new(inputs.len());
        let lits: Vec<Vec<NetLit>> = idx
            .iter()
            .map(|g| g.iter().map(|&i| net.input(i)).collect())
            .collect();
        let out = match shape {
            Shape::Wire(_) => lits[0][0],
            Shape::And(_) => net.and_all(&lits[0]),
            Shape::Or(_) => net.or_all(&lits[0]),
            Shape::OrOfAnds(_) => {
                let terms: Vec<NetLit> = lits.iter().map(|g| net.and_all(g)).collect();
                net.or_all(&terms)
            }
            Shape::AndOfOrs(_) => {
                let terms: Vec<NetLit> = lits.iter().map(|g| net.or_all(g)).collect();
                net.and_all(&terms)
            }
        };
        Recipe::new(inputs, net, out)
    }

    /// Costs a shape; returns it when it passes the threshold.
    fn try_shape(&self, shape: Shape) -> Option<(i64, Recipe, usize)> {
        let recipe = self.recipe(&shape);
        let k = recipe.net.size();
        let added = recipe.dry_run(self.aig, self.set.root, &self.doomed)?;
        let gain = self.doomed.len() as i64 - added as i64;
        (self.passes(gain) && k <= self.doomed.len()).then_some((gain, recipe, k))
    }
}

/// Searches for a replacement of the window root built from at most
/// `max_k` new gates over the divisors. Smaller `k` is tried first; the
/// first candidate that passes the gain threshold is returned as
/// (gain, recipe, k).
pub fn try_resub(
    aig: &Aig,
    set: &DivisorSet,
    max_k: usize,
    zero_cost: bool,
) -> Option<(i64, Recipe, usize)> {
    let s = Search {
        aig,
        set,
        doomed: set.mffc.iter().copied().collect(),
        zero_cost,
    };
    let saved = s.doomed.len() as i64;
    let target = &set.root_tt;
    let ndiv = set.divisors.len();
    let sigs: Vec<Sig> = (0..ndiv)
        .flat_map(|div| [Sig { div, compl: false }, Sig { div, compl: true }])
        .collect();

    // k = 0
    if s.passes(saved) {
        for &sig in &sigs {
            if s.tt(sig) == *target {
                if let Some(c) = s.try_shape(Shape::Wire(sig)) {
                    return Some(c);
                }
            }
        }
    }
    if max_k < 1 || !s.passes(saved - 1) {
        return None;
    }

    // unate divisors: pos imply the target, neg are implied by it
    let mut pos: Vec<Sig> = Vec::new();
    let mut neg: Vec<Sig> = Vec::new();
    for &sig in &sigs {
        let t = s.tt(sig);
        if t.is_zero() || t.is_ones() {
            continue;
        }
        if t.implies(target) {
            pos.push(sig);
        }
        if target.implies(&t) {
            neg.push(sig);
        }
    }
    let tts_pos: Vec<TruthTable> = pos.iter().map(|&x| s.tt(x)).collect();
    let tts_neg: Vec<TruthTable> = neg.iter().map(|&x| s.tt(x)).collect();

    // k = 1
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if tts_pos[i].or(&tts_pos[j]) == *target {
                if let Some(c) = s.try_shape(Shape::Or(vec![pos[i], pos[j]])) {
                    return Some(c);
                }
            }
        }
    }
    for i in 0..neg.len() {
        for j in i + 1..neg.len() {
            if tts_neg[i].and(&tts_neg[j]) == *target {
                if let Some(c) = s.try_shape(Shape::And(vec![neg[i], neg[j]])) {
                    return Some(c);
                }
            }
        }
    }
    if max_k < 2 || !s.passes(saved - 2) {
        return None;
    }

    // pairs: AND pairs contained in the target, OR pairs containing it
    let mut and_pairs: Vec<(Sig, Sig, TruthTable)> = Vec::new();
    let mut or_pairs: Vec<(Sig, Sig, TruthTable)> = Vec::new();
    let binate: Vec<Sig> = sigs
        .iter()
        .copied()
        .filter(|&x| {
            let t = s.tt(x);
            !t.is_zero() && !t.is_ones()
        })
        .collect();
    let btts: Vec<TruthTable> = binate.iter().map(|&x| s.tt(x)).collect();
    'outer: for i in 0..binate.len() {
        for j in i + 1..binate.len() {
            if binate[i].div == binate[j].div {
                continue;
            }
            if and_pairs.len() >= MAX_PAIRS && or_pairs.len() >= MAX_PAIRS {
                break 'outer;
            }
            let (ti, tj) = (&btts[i], &btts[j]);
            if and_pairs.len() < MAX_PAIRS && !ti.implies(target) && !tj.implies(target) {
                let t = ti.and(tj);
                if !t.is_zero() && t.implies(target) {
                    and_pairs.push((binate[i], binate[j], t));
                }
            }
            if or_pairs.len() < MAX_PAIRS && !target.implies(ti) && !target.implies(tj) {
                let t = ti.or(tj);
                if !t.is_ones() && target.implies(&t) {
                    or_pairs.push((binate[i], binate[j], t));
                }
            }
        }
    }

    // k = 2
    let pos3 = &pos[..pos.len().min(MAX_UNATE_COMBO)];
    let neg3 = &neg[..neg.len().min(MAX_UNATE_COMBO)];
    for i in 0..pos3.len() {
        for j in i + 1..pos3.len() {
            let tij = tts_pos[i].or(&tts_pos[j]);
            for k in j + 1..pos3.len() {
                if tij.or(&tts_pos[k]) == *target {
                    if let Some(c) = s.try_shape(Shape::Or(vec![pos[i], pos[j], pos[k]])) {
                        return Some(c);
                    }
                }
            }
        }
    }
    for i in 0..neg3.len() {
        for j in i + 1..neg3.len() {
            let tij = tts_neg[i].and(&tts_neg[j]);
            for k in j + 1..neg3.len() {
                if tij.and(&tts_neg[k]) == *target {
                    if let Some(c) = s.try_shape(Shape::And(vec![neg[i], neg[j], neg[k]])) {
                        return Some(c);
                    }
                }
            }
        }
    }
    for (i, &p) in pos.iter().enumerate() {
        for (a, b, t) in &and_pairs {
            if tts_pos[i].or(t) == *target {
                let shape = Shape::OrOfAnds(vec![vec![p], vec![*a, *b]]);
                if let Some(c) = s.try_shape(shape) {
                    return Some(c);
                }
            }
        }
    }
    for (i, &n) in neg.iter().enumerate() {
        for (a, b, t) in &or_pairs {
            if tts_neg[i].and(t) == *target {
                let shape = Shape::AndOfOrs(vec![vec![n], vec![*a, *b]]);
                if let Some(c) = s.try_shape(shape) {
                    return Some(c);
                }
            }
        }
    }
    if max_k < 3 || !s.passes(saved - 3) {
        return None;
    }

    // k = 3
    for i in 0..pos3.len() {
        for j in i + 1..pos3.len() {
            let tij = tts_pos[i].or(&tts_pos[j]);
            for k in j + 1..pos3.len() {
                let tijk = tij.or(&tts_pos[k]);
                for l in k + 1..pos3.len() {
                    if tijk.or(&tts_pos[l]) == *target {
                        let shape = Shape::Or(vec![pos[i], pos[j], pos[k], pos[l]]);
                        if let Some(c) = s.try_shape(shape) {
                            return Some(c);
                        }
                    }
                }
            }
        }
    }
    for i in 0..neg3.len() {
        for j in i + 1..neg3.len() {
            let tij = tts_neg[i].and(&tts_neg[j]);
            for k in j + 1..neg3.len() {
                let tijk = tij.and(&tts_neg[k]);
                for l in k + 1..neg3.len() {
                    if tijk.and(&tts_neg[l]) == *target {
                        let shape = Shape::And(vec![neg[i], neg[j], neg[k], neg[l]]);
                        if let Some(c) = s.try_shape(shape) {
                            return Some(c);
                        }
                    }
                }
            }
        }
    }
    for i in 0..pos3.len() {
        for j in i + 1..pos3.len() {
            let tij = tts_pos[i].or(&tts_pos[j]);
            for (a, b, t) in &and_pairs {
                if tij.or(t) == *target {
                    let shape = Shape::OrOfAnds(vec![vec![pos[i]], vec![pos[j]], vec![*a, *b]]);
                    if let Some(c) = s.try_shape(shape) {
                        return Some(c);
                    }
                }
            }
        }
    }
    for i in 0..neg3.len() {
        for j in i + 1..neg3.len() {
            let tij = tts_neg[i].and(&tts_neg[j]);
            for (a, b, t) in &or_pairs {
                if tij.and(t) == *target {
                    let shape = Shape::AndOfOrs(vec![vec![neg[i]], vec![neg[j]], vec![*a, *b]]);
                    if let Some(c) = s.try_shape(shape) {
                        return Some(c);
                    }
                }
            }
        }
    }
    let ap = &and_pairs[..and_pairs.len().min(64)];
    for i in 0..ap.len() {
        for j in i + 1..ap.len() {
            if ap[i].2.or(&ap[j].2) == *target {
                let shape = Shape::OrOfAnds(vec![vec![ap[i].0, ap[i].1], vec![ap[j].0, ap[j].1]]);
                if let Some(c) = s.try_shape(shape) {
                    return Some(c);
                }
            }
        }
    }
    let op = &or_pairs[..or_pairs.len().min(64)];
    for i in 0..op.len() {
        for j in i + 1..op.len() {
            if op[i].2.and(&op[j].2) == *target {
                let shape = Shape::AndOfOrs(vec![vec![op[i].0, op[i].1], vec![op[j].0, op[j].1]]);
                if let Some(c) = s.try_shape(shape) {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Resubstitution candidate for `v` as (gain, recipe).
pub fn resub_candidate(
    aig: &Aig,
    v: u32,
    max_leaves: usize,
    limit: usize,
    max_k: usize,
    zero_cost: bool,
) -> Option<(i64, Recipe)> {
    let set = collect_divisors(aig, v, max_leaves, limit)?;
    try_resub(aig, &set, max_k, zero_cost).map(|(g, r, _)| (g, r))
}

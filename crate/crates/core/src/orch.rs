// SPDX-License-Identifier: Apache-2.0
//! Single-traversal optimization driven by a policy over rewrite,
//! resubstitution and refactoring.
//!
//! Every pass, including the stand-alone ones, walks the AND nodes once in
//! topological order. At each node the policy decides which transformations
//! to evaluate and which one to apply. Nodes created during the traversal
//! are not visited, and a node is never revisited.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::aig::{Aig, Lit};
use crate::cut::{CutManager, DEFAULT_CUTS_PER_NODE};
use crate::error::Error;
use crate::npn::RewriteLibrary;
use crate::recipe::Recipe;
use crate::refactor::{refactor_candidate, DEFAULT_REFACTOR_LEAVES};
use crate::resub::{resub_candidate, DEFAULT_DIVISOR_LIMIT, DEFAULT_RESUB_LEAVES, MAX_RESUB_K};
use crate::rewrite::{rewrite_candidate, REWRITE_CUT_SIZE};
use crate::stats::PassStats;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Rw,
    Rs,
    Rf,
}

impl Op {
    pub const ALL: [Op; 3] = [Op::Rw, Op::Rs, Op::Rf];

    pub fn name(self) -> &'static str {
        match self {
            Op::Rw => "rw",
            Op::Rs => "rs",
            Op::Rf => "rf",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-operation gains at one node; -1 marks an operation that is not
/// applicable or does not pass the acceptance threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct GainVector {
    pub rw: i64,
    pub rs: i64,
    pub rf: i64,
}

impl GainVector {
    pub const NONE: GainVector = GainVector {
        rw: -1,
        rs: -1,
        rf: -1,
    };

    pub fn get(&self, op: Op) -> i64 {
        match op {
            Op::Rw => self.rw,
            Op::Rs => self.rs,
            Op::Rf => self.rf,
        }
    }

    fn set(&mut self, op: Op, g: i64) {
        match op {
            Op::Rw => self.rw = g,
            Op::Rs => self.rs = g,
            Op::Rf => self.rf = g,
        }
    }

    /// The operation with the highest non-negative gain, ties resolved in
    /// the order rw, rs, rf.
    pub fn best(&self) -> Option<Op> {
        let mut best: Option<Op> = None;
        for op in Op::ALL {
            let g = self.get(op);
            if g >= 0 && best.is_none_or(|b| g > self.get(b)) {
                best = Some(op);
            }
        }
        best
    }
}

/// The six priority orders, indexed 1..=6.
pub const PRIORITY_ORDERS: [[Op; 3]; 6] = [
    [Op::Rw, Op::Rs, Op::Rf],
    [Op::Rw, Op::Rf, Op::Rs],
    [Op::Rs, Op::Rw, Op::Rf],
    [Op::Rs, Op::Rf, Op::Rw],
    [Op::Rf, Op::Rs, Op::Rw],
    [Op::Rf, Op::Rw, Op::Rs],
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolicyKind {
    /// Evaluate every operation and apply the one with the largest gain.
    LocalGreedy,
    /// Apply the first operation in the list whose gain passes.
    Priority(Vec<Op>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Policy {
    pub kind: PolicyKind,
    /// Accept zero-gain transformations.
    pub zero_cost: bool,
}

impl Policy {
    pub fn standalone(op: Op, zero_cost: bool) -> Policy {
        Policy {
            kind: PolicyKind::Priority(vec![op]),
            zero_cost,
        }
    }

    pub fn local_greedy(zero_cost: bool) -> Policy {
        Policy {
            kind: PolicyKind::LocalGreedy,
            zero_cost,
        }
    }

    /// Priority order `O1`..`O6`.
    pub fn order(index: usize, zero_cost: bool) -> Policy {
        assert!(
            (1..=6).contains(&index),
            "priority orders are numbered 1 to 6"
        );
        Policy {
            kind: PolicyKind::Priority(PRIORITY_ORDERS[index - 1].to_vec()),
            zero_cost,
        }
    }

    pub fn accepts(&self, gain: i64) -> bool {
        if self.zero_cost {
            gain >= 0
        } else {
            gain > 0
        }
    }

    /// Short name as used in scripts: rw, rwz, o3, z3, lgp, lgpz, ...
    pub fn name(&self) -> String {
        let z = self.zero_cost;
        match &self.kind {
            PolicyKind::LocalGreedy => if z { "lgpz" } else { "lgp" }.to_string(),
            PolicyKind::Priority(ops) if ops.len() == 1 => {
                format!("{}{}", ops[0], if z { "z" } else { "" })
            }
            PolicyKind::Priority(ops) => {
                match PRIORITY_ORDERS
                    .iter()
                    .position(|o| o.as_slice() == ops.as_slice())
                {
                    Some(i) => format!("{}{}", if z { "z" } else { "o" }, i + 1),
                    None => {
                        let names: Vec<&str> = ops.iter().map(|o| o.name()).collect();
                        format!("{}{}", names.join(">"), if z { "z" } else { "" })
                    }
                }
            }
        }
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Policy, Error> {
        let s = s.trim().to_ascii_lowercase();
        let p = match s.as_str() {
            "rw" => Policy::standalone(Op::Rw, false),
            "rwz" => Policy::standalone(Op::Rw, true),
            "rs" => Policy::standalone(Op::Rs, false),
            "rsz" => Policy::standalone(Op::Rs, true),
            "rf" => Policy::standalone(Op::Rf, false),
            "rfz" => Policy::standalone(Op::Rf, true),
            "lgp" => Policy::local_greedy(false),
            "lgpz" => Policy::local_greedy(true),
            _ => {
                let (z, rest) = if let Some(r) = s.strip_prefix('o') {
                    (false, r)
                } else if let Some(r) = s.strip_prefix('z') {
                    (true, r)
                } else {
                    return Err(Error::BadRecipe(format!("unknown policy `{s}`")));
                };
                match rest.parse::<usize>() {
                    Ok(i @ 1..=6) => Policy::order(i, z),
                    _ => return Err(Error::BadRecipe(format!("unknown policy `{s}`"))),
                }
            }
        };
        Ok(p)
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Tuning knobs of the three transformations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    /// Priority cuts kept per node for rewriting.
    pub rw_cuts: usize,
    /// Reconvergence-driven cut size for refactoring.
    pub rf_leaves: usize,
    /// Window size for resubstitution.
    pub rs_leaves: usize,
    pub rs_divisors: usize,
    pub rs_max_k: usize,
    /// Keep a per-node trace in the returned statistics.
    pub trace: bool,
}

impl Default for Params {
    fn default() -> Params {
        Params {
            rw_cuts: DEFAULT_CUTS_PER_NODE,
            rf_leaves: DEFAULT_REFACTOR_LEAVES,
            rs_leaves: DEFAULT_RESUB_LEAVES,
            rs_divisors: DEFAULT_DIVISOR_LIMIT,
            rs_max_k: MAX_RESUB_K,
            trace: false,
        }
    }
}

/// A costed transformation of one node.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub op: Op,
    pub root: u32,
    pub gain: i64,
    pub recipe: Recipe,
}

/// What happened at one visited node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeTrace {
    pub node: u32,
    /// Operations evaluated, in evaluation order, with their gains after
    /// thresholding.
    pub checks: Vec<(Op, i64)>,
    pub applied: Option<Op>,
    /// Gain predicted by the dry run of the applied operation.
    pub estimated: i64,
    /// Node count reduction actually observed.
    pub actual: i64,
}

/// Evaluates and applies transformations on one graph, caching cuts
/// between calls.
pub struct Optimizer<'l> {
    lib: &'l RewriteLibrary,
    cuts: CutManager,
    pub params: Params,
}

impl Optimizer<'static> {
    pub fn new(params: Params) -> Optimizer<'static> {
        Optimizer::with_library(RewriteLibrary::standard(), params)
    }
}

impl<'l> Optimizer<'l> {
    pub fn with_library(lib: &'l RewriteLibrary, params: Params) -> Optimizer<'l> {
        Optimizer {
            lib,
            cuts: CutManager::new(REWRITE_CUT_SIZE, params.rw_cuts),
            params,
        }
    }

    /// Brings cached state in line with changes made to `aig` since the
    /// last call. Must be called whenever the graph was mutated outside
    /// this optimizer.
    pub fn sync(&mut self, aig: &mut Aig) {
        let modified = aig.take_modified();
        self.cuts.invalidate(aig, &modified);
    }

    /// Forgets all cached state.
    pub fn reset(&mut self) {
        self.cuts.clear();
    }

    /// Best candidate of `op` at `v` without any threshold, or `None` when
    /// the operation does not apply. Resubstitution already searches with
    /// the threshold of `zero_cost`.
    pub fn evaluate(&mut self, aig: &Aig, v: u32, op: Op, zero_cost: bool) -> Option<Candidate> {
        if !aig.is_and(v) {
            return None;
        }
        let p = &self.params;
        let found = match op {
            Op::Rw => rewrite_candidate(aig, v, &mut self.cuts, self.lib),
            Op::Rf => refactor_candidate(aig, v, p.rf_leaves),
            Op::Rs => resub_candidate(aig, v, p.rs_leaves, p.rs_divisors, p.rs_max_k, zero_cost),
        };
        found.map(|(gain, recipe)| Candidate {
            op,
            root: v,
            gain,
            recipe,
        })
    }

    /// Gain vector at `v`; entries failing the threshold are -1.
    pub fn gains(&mut self, aig: &Aig, v: u32, zero_cost: bool) -> GainVector {
        let mut g = GainVector::NONE;
        for op in Op::ALL {
            if let Some(c) = self.evaluate(aig, v, op, zero_cost) {
                if accepts(zero_cost, c.gain) {
                    g.set(op, c.gain);
                }
            }
        }
        g
    }

    /// Applies a candidate produced on the current graph and returns the
    /// observed reduction in node count.
    pub fn apply(&mut self, aig: &mut Aig, cand: &Candidate) -> i64 {
        let before = aig.size() as i64;
        let out: Lit = cand.recipe.build(aig);
        if out.node() != cand.root {
            aig.replace_unchecked(cand.root, out);
        }
        self.sync(aig);
        before - aig.size() as i64
    }

    /// One traversal of `aig` under `policy`.
    pub fn run(&mut self, aig: &mut Aig, policy: &Policy) -> PassStats {
        self.run_observed(aig, policy, &mut |_, _, _| {})
    }

    /// Like [`Optimizer::run`], calling `observer` with the graph, the node
    /// and the chosen candidate right before each transformation is applied.
    pub fn run_observed(
        &mut self,
        aig: &mut Aig,
        policy: &Policy,
        observer: &mut dyn FnMut(&Aig, u32, &Candidate),
    ) -> PassStats {
        let start = Instant::now();
        aig.recompute_levels();
        self.sync(aig);
        let mut stats = PassStats::new(aig.name(), &policy.name());
        stats.nodes_before = aig.size();
        stats.depth_before = aig.depth();
        let order = aig.and_order();
        for v in order {
            if !aig.is_and(v) {
                continue;
            }
            let mut trace = NodeTrace {
                node: v,
                checks: Vec::new(),
                applied: None,
                estimated: 0,
                actual: 0,
            };
            #[cfg(debug_assertions)]
            let digest = aig.checksum();
            let chosen = match &policy.kind {
                PolicyKind::LocalGreedy => {
                    let mut cands: Vec<Option<Candidate>> = Vec::with_capacity(3);
                    let mut gv = GainVector::NONE;
                    for op in Op::ALL {
                        let c = self
                            .evaluate(aig, v, op, policy.zero_cost)
                            .filter(|c| policy.accepts(c.gain));
                        let g = c.as_ref().map_or(-1, |c| c.gain);
                        gv.set(op, g);
                        trace.checks.push((op, g));
                        cands.push(c);
                    }
                    gv.best().and_then(|op| cands[op as usize].take())
                }
                PolicyKind::Priority(ops) => {
                    let mut chosen = None;
                    for &op in ops {
                        let c = self
                            .evaluate(aig, v, op, policy.zero_cost)
                            .filter(|c| policy.accepts(c.gain));
                        trace.checks.push((op, c.as_ref().map_or(-1, |c| c.gain)));
                        if c.is_some() {
                            chosen = c;
                            break;
                        }
                    }
                    chosen
                }
            };
            #[cfg(debug_assertions)]
            debug_assert_eq!(digest, aig.checksum(), "gain evaluation mutated the graph");
            stats.checks += trace.checks.len();
            if let Some(c) = chosen {
                observer(aig, v, &c);
                let actual = self.apply(aig, &c);
                trace.applied = Some(c.op);
                trace.estimated = c.gain;
                trace.actual = actual;
            }
            stats.record_iteration(v, trace.applied);
            if self.params.trace {
                stats.trace.push(trace);
            }
        }
        aig.recompute_levels();
        stats.nodes_after = aig.size();
        stats.depth_after = aig.depth();
        stats.wall_ms = start.elapsed().as_secs_f64() * 1e3;
        stats
    }
}

fn accepts(zero_cost: bool, gain: i64) -> bool {
    if zero_cost {
        gain >= 0
    } else {
        gain > 0
    }
}

/// Gain vector of `v` with default parameters.
pub fn gains(aig: &Aig, v: u32, zero_cost: bool) -> GainVector {
    Optimizer::new(Params::default()).gains(aig, v, zero_cost)
}

/// Runs one pass of `policy` over `aig` with default parameters.
pub fn run_pass(aig: &mut Aig, policy: &Policy) -> PassStats {
    Optimizer::new(Params::default()).run(aig, policy)
}

pub fn local_greedy_pass(aig: &mut Aig, zero_cost: bool) -> PassStats {
    run_pass(aig, &Policy::local_greedy(zero_cost))
}

pub fn priority_pass(aig: &mut Aig, order: &[Op], zero_cost: bool) -> PassStats {
    let policy = Policy {
        kind: PolicyKind::Priority(order.to_vec()),
        zero_cost,
    };
    run_pass(aig, &policy)
}

pub fn rewrite(aig: &mut Aig, zero_cost: bool) -> PassStats {
    run_pass(aig, &Policy::standalone(Op::Rw, zero_cost))
}

pub fn refactor(aig: &mut Aig, zero_cost: bool) -> PassStats {
    run_pass(aig, &Policy::standalone(Op::Rf, zero_cost))
}

pub fn resub(aig: &mut Aig, zero_cost: bool) -> PassStats {
    run_pass(aig, &Policy::standalone(Op::Rs, zero_cost))
}

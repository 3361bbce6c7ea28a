// SPDX-License-Identifier: Apache-2.0
//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

mod common;

use std::collections::HashMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use aig_orch::balance::balance;
use aig_orch::cec::{self, CecResult, Mode};
use aig_orch::flow::{self, FlowOptions, BUILTINS};
use aig_orch::npn::{npn_canon, RewriteLibrary};
use aig_orch::orch::{self, Op, PRIORITY_ORDERS};
use aig_orch::sop::{compile_form, factor, factor_best, isop};
use aig_orch::testgen::{random_aig, RandomAigConfig};
use aig_orch::truth::TruthTable;
use aig_orch::{aiger, benchmarks, resub, Aig, Optimizer, Params, Policy};

/// Allowed shortfall of the flow comparison, as a fraction.
const FLOW_TOLERANCE: f64 = 0.005;
/// Fraction of designs on which orchestration must be at least as good.
const DOMINANCE_GE: f64 = 0.80;
/// Fraction of designs on which orchestration must be strictly better.
const DOMINANCE_GT: f64 = 0.50;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn designs() -> Vec<Aig> {
    benchmarks::all()
        .iter()
        .map(|g| {
            let bytes = aiger::write_binary(g);
            let mut h = aiger::parse(&bytes).unwrap().strashed();
            h.set_name(g.name());
            h
        })
        .collect()
}

fn random_graphs(n: u64, base: u64) -> Vec<Aig> {
    (0..n)
        .map(|i| {
            let cfg = RandomAigConfig {
                pis: 5 + (i as usize % 8),
                gates: 20 + (i as usize * 13) % 100,
                ..RandomAigConfig::default()
            };
            let mut g = random_aig(base + i, cfg);
            g.cleanup();
            g
        })
        .collect()
}

fn non_zero_policies() -> Vec<Policy> {
    let mut v: Vec<Policy> = Op::ALL
        .iter()
        .map(|&op| Policy::standalone(op, false))
        .collect();
    v.extend((1..=6).map(|i| Policy::order(i, false)));
    v.push(Policy::local_greedy(false));
    v
}

fn equivalence_safety() -> Outcome {
    let mut scripts: Vec<String> = ["rw", "rf", "rs", "b", "lgp"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    scripts.extend((1..=6).map(|i| format!("o{i}")));
    scripts.extend((1..=6).map(|i| format!("z{i}")));
    scripts.extend(BUILTINS.iter().map(|(name, _)| name.to_string()));
    let opts = FlowOptions {
        params: Params::default(),
        verify: Some(Mode::Auto {
            patterns: cec::DEFAULT_PATTERNS,
            seed: cec::DEFAULT_SEED,
        }),
    };
    let ds = designs();
    let jobs: Vec<(&Aig, &String)> = ds
        .iter()
        .flat_map(|d| scripts.iter().map(move |s| (d, s)))
        .collect();
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|(d, s)| {
            let script = flow::parse_script(s).unwrap();
            let r = flow::run_flow(d, &script, &opts).unwrap();
            match r.cec {
                Some(CecResult::Equivalent) | Some(CecResult::Unknown { .. }) => None,
                _ => Some(format!("{}/{}", d.name(), s)),
            }
        })
        .collect();
    outcome(
        bad.is_empty(),
        format!("{} runs, counterexamples: {:?}", jobs.len(), bad),
    )
}

fn monotonicity() -> Outcome {
    let mut graphs = designs();
    graphs.extend(random_graphs(200, 1000));
    let policies = non_zero_policies();
    let violations: Vec<String> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let mut out = Vec::new();
            for p in &policies {
                let mut h = g.clone();
                let s = orch::run_pass(&mut h, p);
                if s.nodes_after > s.nodes_before {
                    out.push(format!("{}/{}", g.name(), p));
                }
            }
            let mut lv = g.clone();
            lv.recompute_levels();
            if balance(&lv).depth() > lv.depth() {
                out.push(format!("{}/b depth", g.name()));
            }
            out
        })
        .collect();
    outcome(
        violations.is_empty(),
        format!(
            "{} graphs x {} passes + balance, violations: {:?}",
            graphs.len(),
            policies.len(),
            violations
        ),
    )
}

/// Argmax with ties resolved in the order rw, rs, rf; `None` when every
/// gain is below zero.
fn expected_choice(rw: i64, rs: i64, rf: i64) -> Option<(Op, i64)> {
    let mut best: Option<(Op, i64)> = None;
    for (op, g) in [(Op::Rw, rw), (Op::Rs, rs), (Op::Rf, rf)] {
        if g > 0 && best.is_none_or(|(_, b)| g > b) {
            best = Some((op, g));
        }
    }
    best
}

fn greedy_fidelity() -> Outcome {
    let mut checked = 0usize;
    let mut violations = Vec::new();
    for g in random_graphs(50, 5000) {
        let mut h = g.clone();
        let mut fresh = Optimizer::new(Params::default());
        let mut opt = Optimizer::new(Params::default());
        opt.run_observed(&mut h, &Policy::local_greedy(false), &mut |aig, v, c| {
            checked += 1;
            fresh.reset();
            let gv = fresh.gains(aig, v, false);
            let want = expected_choice(gv.rw, gv.rs, gv.rf);
            if want != Some((c.op, c.gain)) {
                violations.push(format!(
                    "{} node {v}: got {:?}/{}, want {:?}",
                    g.name(),
                    c.op,
                    c.gain,
                    want
                ));
            }
        });
    }
    outcome(
        violations.is_empty() && checked > 0,
        format!(
            "{checked} valid iterations, violations: {}",
            violations.len()
        ),
    )
}

fn priority_fidelity() -> Outcome {
    let mut graphs = random_graphs(40, 9000);
    graphs.extend(designs());
    let mut nodes = 0usize;
    let mut violations = 0usize;
    for order in PRIORITY_ORDERS {
        for zero_cost in [false, true] {
            for g in &graphs {
                let mut h = g.clone();
                let mut opt = Optimizer::new(Params {
                    trace: true,
                    ..Params::default()
                });
                let policy = Policy::order(
                    PRIORITY_ORDERS.iter().position(|o| *o == order).unwrap() + 1,
                    zero_cost,
                );
                let s = opt.run(&mut h, &policy);
                for t in &s.trace {
                    nodes += 1;
                    let evaluated: Vec<Op> = t.checks.iter().map(|c| c.0).collect();
                    let allowed = match t.applied {
                        Some(op) => order.iter().position(|&o| o == op).unwrap() + 1,
                        None => 3,
                    };
                    let prefix_ok = evaluated.as_slice() == &order[..evaluated.len().min(3)];
                    let earlier_rejected = t.checks[..t.checks.len().saturating_sub(1)]
                        .iter()
                        .all(|&(_, gain)| !policy.accepts(gain));
                    if evaluated.len() > allowed
                        || !prefix_ok
                        || (t.applied.is_some() && !earlier_rejected)
                    {
                        violations += 1;
                    }
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!("{nodes} visited nodes over 6 orders x 2 thresholds, violations: {violations}"),
    )
}

fn final_nodes(g: &Aig, policy: &Policy) -> usize {
    let mut h = g.clone();
    orch::run_pass(&mut h, policy).nodes_after
}

fn dominance() -> Outcome {
    let ds = designs();
    let rows: Vec<(String, usize, usize)> = ds
        .par_iter()
        .map(|g| {
            let stand = Op::ALL
                .iter()
                .map(|&op| final_nodes(g, &Policy::standalone(op, false)))
                .min()
                .unwrap();
            let orch = (1..=6)
                .map(|i| Policy::order(i, false))
                .chain([Policy::local_greedy(false)])
                .map(|p| final_nodes(g, &p))
                .min()
                .unwrap();
            (g.name().to_string(), stand, orch)
        })
        .collect();
    let n = rows.len() as f64;
    let ge = rows.iter().filter(|r| r.2 <= r.1).count();
    let gt = rows.iter().filter(|r| r.2 < r.1).count();
    let pass = ge as f64 >= DOMINANCE_GE * n && gt as f64 >= DOMINANCE_GT * n;
    let table: Vec<String> = rows
        .iter()
        .map(|(d, s, o)| format!("{d} {s}->{o}"))
        .collect();
    outcome(
        pass,
        format!(
            "orchestrated <= stand-alone on {ge}/{}, < on {gt}/{} [{}]",
            rows.len(),
            rows.len(),
            table.join(", ")
        ),
    )
}

fn geomean(xs: &[usize]) -> f64 {
    (xs.iter().map(|&x| (x.max(1) as f64).ln()).sum::<f64>() / xs.len() as f64).exp()
}

fn flow_gain() -> Outcome {
    let ds = designs();
    let names = ["resyn", "lgp-resyn", "resyn3", "o-resyn3"];
    let opts = FlowOptions::default();
    let mut sizes: HashMap<&str, Vec<usize>> = HashMap::new();
    for name in names {
        let script = flow::parse_script(name).unwrap();
        let v: Vec<usize> = ds
            .par_iter()
            .map(|g| flow::run_flow(g, &script, &opts).unwrap().aig.size())
            .collect();
        sizes.insert(name, v);
    }
    let gm: HashMap<&str, f64> = names.iter().map(|&n| (n, geomean(&sizes[n]))).collect();
    let ok1 = gm["lgp-resyn"] <= gm["resyn"] * (1.0 + FLOW_TOLERANCE);
    let ok2 = gm["o-resyn3"] <= gm["resyn3"] * (1.0 + FLOW_TOLERANCE);
    outcome(
        ok1 && ok2,
        format!(
            "geomean lgp-resyn {:.2} vs resyn {:.2}; o-resyn3 {:.2} vs resyn3 {:.2}",
            gm["lgp-resyn"], gm["resyn"], gm["o-resyn3"], gm["resyn3"]
        ),
    )
}

fn npn_suite() -> Outcome {
    let roots = common::npn_oracle::brute_force_classes();
    let mut classes: HashMap<u16, u32> = HashMap::new();
    let mut bad = 0usize;
    for f in 0..=u16::MAX {
        let (c, t) = npn_canon(f);
        if t.apply(f) != c || t.inverse().apply(c) != f {
            bad += 1;
        }
        let r = roots[f as usize];
        if *classes.entry(c).or_insert(r) != r {
            bad += 1;
        }
    }
    let mut distinct_roots: Vec<u32> = classes.values().copied().collect();
    distinct_roots.sort_unstable();
    distinct_roots.dedup();
    let lib = RewriteLibrary::standard();
    let bad_templates = lib
        .iter()
        .flat_map(|(c, ts)| ts.iter().map(move |t| (c, t)))
        .filter(|(c, t)| t.truth() != *c)
        .count();
    let pass =
        bad == 0 && classes.len() == 222 && distinct_roots.len() == 222 && bad_templates == 0;
    outcome(
        pass,
        format!(
            "{} classes (oracle {}), round-trip errors {bad}, template mismatches {bad_templates}",
            classes.len(),
            distinct_roots.len()
        ),
    )
}

fn cover_ok(tt: &TruthTable) -> bool {
    let sop = isop(tt);
    let form = factor(&sop);
    let (best, compl) = factor_best(tt);
    let (net, out) = compile_form(&best, compl);
    let net_tt = net.truth(out);
    (0..tt.num_bits()).all(|x| {
        let v = tt.bit(x);
        sop.eval(x) == v && form.eval(x) == v && (best.eval(x) ^ compl) == v && net_tt.bit(x) == v
    })
}

fn isop_oracle() -> Outcome {
    let mut failures = 0usize;
    for bits in 0..256u64 {
        failures += !cover_ok(&TruthTable::from_u64(3, bits)) as usize;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FE);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.05..0.95);
        let mut tt = TruthTable::zero(n);
        for x in 0..1usize << n {
            tt.set_bit(x, rng.gen_bool(p));
        }
        failures += !cover_ok(&tt) as usize;
    }
    outcome(
        failures == 0,
        format!("256 + 10000 functions, mismatches: {failures}"),
    )
}

fn fragment() -> Outcome {
    let g = aiger::parse(include_bytes!("data/fragment.aag")).unwrap();
    let (p, d, gnode) = (7u32, 6u32, 8u32);
    let gv = orch::gains(&g, gnode, false);
    let set = resub::collect_divisors(&g, gnode, 8, 150).unwrap();
    let zero = resub::try_resub(&g, &set, 0, false);
    let mut removed = Vec::new();
    if let Some((_, recipe, 0)) = &zero {
        let mut h = g.clone();
        let new = recipe.build(&mut h);
        h.replace(gnode, new).unwrap();
        removed = (0..g.slot_count() as u32)
            .filter(|&n| g.is_and(n) && !h.is_live(n))
            .collect();
    }
    let pass = (gv.rw, gv.rs, gv.rf) == (-1, 3, 1) && removed == vec![d, p, gnode];
    outcome(
        pass,
        format!(
            "gains(g) = ({}, {}, {}), 0-resub removes {:?}",
            gv.rw, gv.rs, gv.rf, removed
        ),
    )
}

fn aiger_round_trip() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for g in benchmarks::all() {
        count += 1;
        let first = aiger::parse(&aiger::write_binary(&g)).unwrap();
        let second = aiger::parse(&aiger::write_binary(&first)).unwrap();
        if common::structure(&first) != common::structure(&second) {
            bad.push(g.name().to_string());
        }
    }
    for seed in 0..1000u64 {
        count += 1;
        let cfg = RandomAigConfig {
            pis: 3 + (seed as usize % 14),
            gates: 5 + (seed as usize * 11) % 150,
            ..RandomAigConfig::default()
        };
        let g = random_aig(seed, cfg);
        let first = aiger::parse(&aiger::write_binary(&g)).unwrap();
        let second = aiger::parse(&aiger::write_binary(&first)).unwrap();
        if common::structure(&first) != common::structure(&second)
            || !cec::check(&g, &first, Mode::default())
                .unwrap()
                .is_equivalent()
        {
            bad.push(format!("rand{seed}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{count} graphs, mismatches: {bad:?}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("equivalence safety", equivalence_safety),
        ("monotonicity", monotonicity),
        ("local-greedy fidelity", greedy_fidelity),
        ("priority fidelity", priority_fidelity),
        ("orchestration dominance", dominance),
        ("flow-level gain", flow_gain),
        ("NPN suite", npn_suite),
        ("ISOP/factoring oracle", isop_oracle),
        ("encoded fragment", fragment),
        ("AIGER round-trip", aiger_round_trip),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        failed += !o.pass as usize;
        println!(
            "criterion {:>2}: {} {name} ({}; {:.1}s)",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/10 passed in {:.1}s",
        10 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

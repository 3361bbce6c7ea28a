// SPDX-License-Identifier: Apache-2.0
//! Properties of the optimization passes and the two orchestration
//! policies on random graphs.

mod common;

use proptest::prelude::*;

use aig_orch::balance::balance;
use aig_orch::orch::{self, Op, PolicyKind, PRIORITY_ORDERS};
use aig_orch::testgen::{random_aig, RandomAigConfig};
use aig_orch::{Aig, Optimizer, Params, PassStats, Policy};

fn graph(seed: u64) -> Aig {
    let mut g = random_aig(seed, RandomAigConfig::default());
    g.cleanup();
    g
}

fn traced(g: &mut Aig, policy: &Policy) -> PassStats {
    let mut opt = Optimizer::new(Params {
        trace: true,
        ..Params::default()
    });
    opt.run(g, policy)
}

fn all_policies() -> Vec<Policy> {
    let mut v = Vec::new();
    for z in [false, true] {
        for op in Op::ALL {
            v.push(Policy::standalone(op, z));
        }
        for i in 1..=6 {
            v.push(Policy::order(i, z));
        }
        v.push(Policy::local_greedy(z));
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn passes_preserve_function(seed in any::<u64>()) {
        let g = graph(seed);
        for policy in all_policies() {
            let mut h = g.clone();
            let s = orch::run_pass(&mut h, &policy);
            prop_assert!(h.check().is_ok(), "{}: {:?}", policy, h.check());
            prop_assert!(common::same_function(&g, &h), "{} changed the function", policy);
            prop_assert_eq!(s.nodes_after, h.size());
            if !policy.zero_cost {
                prop_assert!(s.nodes_after <= s.nodes_before, "{} grew the graph", policy);
            }
        }
    }

    #[test]
    fn balance_preserves_function_and_depth(seed in any::<u64>()) {
        let mut g = graph(seed);
        g.recompute_levels();
        let b = balance(&g);
        prop_assert!(b.check().is_ok());
        prop_assert!(b.depth() <= g.depth());
        prop_assert!(common::same_function(&g, &b));
    }

    #[test]
    fn stats_bookkeeping(seed in any::<u64>()) {
        let g = graph(seed);
        for policy in all_policies() {
            let mut h = g.clone();
            let s = traced(&mut h, &policy);
            let applied: Vec<_> = s.trace.iter().filter(|t| t.applied.is_some()).collect();
            let actual: i64 = applied.iter().map(|t| t.actual).sum();
            let estimated: i64 = applied.iter().map(|t| t.estimated).sum();
            prop_assert_eq!(s.nodes_before as i64 - s.nodes_after as i64, actual);
            // merges triggered by the replacement can only add to the
            // predicted saving
            prop_assert!(actual >= estimated, "{}", policy);
            for t in &applied {
                prop_assert!(t.actual >= t.estimated, "{}: {:?}", policy, t);
            }
            prop_assert_eq!(
                s.valid_rw + s.valid_rs + s.valid_rf,
                s.valid_iterations()
            );
            prop_assert_eq!(s.valid_iterations(), applied.len());
            prop_assert_eq!(s.total_iterations, s.trace.len());
        }
    }

    #[test]
    fn single_op_priority_is_standalone(seed in any::<u64>()) {
        let g = graph(seed);
        for z in [false, true] {
            for op in Op::ALL {
                let mut a = g.clone();
                let mut b = g.clone();
                let sa = orch::run_pass(&mut a, &Policy::standalone(op, z));
                let sb = orch::priority_pass(&mut b, &[op], z);
                prop_assert_eq!(a.checksum(), b.checksum());
                prop_assert_eq!(sa.roots, sb.roots);
            }
        }
    }

    #[test]
    fn priority_checks_fewer_than_greedy(seed in any::<u64>()) {
        let g = graph(seed);
        let mut a = g.clone();
        let greedy = orch::local_greedy_pass(&mut a, false);
        prop_assert_eq!(greedy.checks, 3 * greedy.total_iterations);
        for order in PRIORITY_ORDERS {
            let mut b = g.clone();
            let s = orch::priority_pass(&mut b, &order, false);
            prop_assert!(s.checks <= 3 * s.total_iterations);
            if s.valid_iterations() > 0 {
                prop_assert!(s.checks < 3 * s.total_iterations);
            }
        }
    }
}

#[test]
fn nothing_to_do_leaves_graph_alone() {
    // a single AND gate cannot be improved
    let mut g = Aig::new();
    let a = g.add_pi();
    let b = g.add_pi();
    let x = g.add_and(a, b);
    g.add_po(x);
    for policy in all_policies().into_iter().filter(|p| !p.zero_cost) {
        let mut h = g.clone();
        let s = orch::run_pass(&mut h, &policy);
        assert_eq!(s.nodes_after, s.nodes_before);
        assert_eq!(s.valid_iterations(), 0);
    }
}

#[test]
fn only_resub_applies_then_o3_equals_resub() {
    // three redundant copies of the same function: only resubstitution
    // finds the sharing across the separate cones
    let mut g = Aig::new();
    let x: Vec<_> = (0..4).map(|_| g.add_pi()).collect();
    let ab = g.add_and(x[0], x[1]);
    let abc = g.add_and(ab, x[2]);
    let bc = g.add_and(x[1], x[2]);
    let abc2 = g.add_and(bc, x[0]);
    let o1 = g.add_and(abc, x[3]);
    let o2 = g.add_and(abc2, !x[3]);
    g.add_po(o1);
    g.add_po(o2);
    let mut a = g.clone();
    let mut b = g.clone();
    let sa = orch::resub(&mut a, false);
    let sb = orch::run_pass(&mut b, &Policy::order(3, false));
    if sb.valid_rw == 0 && sb.valid_rf == 0 {
        assert_eq!(a.checksum(), b.checksum());
        assert_eq!(sa.roots, sb.roots);
        assert_eq!(sa.nodes_after, sb.nodes_after);
    }
}

#[test]
fn policy_kinds_follow_names() {
    assert!(matches!(
        Policy::local_greedy(false).kind,
        PolicyKind::LocalGreedy
    ));
    for (i, order) in PRIORITY_ORDERS.iter().enumerate() {
        let p = Policy::order(i + 1, true);
        assert!(p.zero_cost);
        match &p.kind {
            PolicyKind::Priority(ops) => assert_eq!(ops.as_slice(), order.as_slice()),
            _ => panic!("order {} is not a priority policy", i + 1),
        }
    }
}

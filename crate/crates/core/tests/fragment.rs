// SPDX-License-Identifier: Apache-2.0
//! The five-node example subgraph with hand-computed gains.

use aig_orch::cec::{self, Mode};
use aig_orch::orch::{self, Op, Policy};
use aig_orch::resub;
use aig_orch::{aiger, Aig, Optimizer, Params};

const FRAGMENT: &[u8] = include_bytes!("data/fragment.aag");

/// Node indices of the parsed fragment.
const M: u32 = 5;
const D: u32 = 6;
const P: u32 = 7;
const G: u32 = 8;

fn fragment() -> Aig {
    aiger::parse(FRAGMENT).unwrap()
}

#[test]
fn fragment_parses_as_drawn() {
    let g = fragment();
    assert_eq!(g.size(), 5);
    // g = a & (m | d) = a & b & c, the same function as m
    for x in 0..8usize {
        let (c, a, b) = (x & 1 == 1, x & 2 == 2, x & 4 == 4);
        let out = g.eval(&[c, a, b]);
        assert_eq!(out[0], a && b && c);
        assert_eq!(out[1], a && b && c);
    }
}

#[test]
fn gain_vector_at_g() {
    let g = fragment();
    let gv = orch::gains(&g, G, false);
    assert_eq!((gv.rw, gv.rs, gv.rf), (-1, 3, 1));
}

#[test]
fn zero_resub_removes_g_p_d() {
    let g = fragment();
    let set = resub::collect_divisors(&g, G, 8, 150).unwrap();
    let mut removed = set.mffc.clone();
    removed.sort_unstable();
    assert_eq!(removed, vec![D, P, G]);
    let (gain, recipe, k) = resub::try_resub(&g, &set, 3, false).unwrap();
    assert_eq!((gain, k), (3, 0));

    let mut h = g.clone();
    let new = recipe.build(&mut h);
    h.replace(G, new).unwrap();
    h.cleanup();
    for n in [D, P, G] {
        assert!(!h.is_live(n), "node {n} survived");
    }
    assert!(h.is_live(M));
    assert_eq!(h.size(), 2);
    assert!(cec::check(&g, &h, Mode::Exhaustive)
        .unwrap()
        .is_equivalent());
}

fn applied_at(policy: &Policy) -> Vec<(u32, Op, i64)> {
    let mut g = fragment();
    let mut opt = Optimizer::new(Params::default());
    let mut seen = Vec::new();
    opt.run_observed(&mut g, policy, &mut |_, v, c| seen.push((v, c.op, c.gain)));
    seen
}

#[test]
fn local_greedy_picks_resub_at_g() {
    let seen = applied_at(&Policy::local_greedy(false));
    assert!(seen.contains(&(G, Op::Rs, 3)), "{seen:?}");
}

#[test]
fn order_two_picks_refactor_at_g() {
    let seen = applied_at(&Policy::order(2, false));
    assert!(seen.contains(&(G, Op::Rf, 1)), "{seen:?}");

    let mut a = fragment();
    let mut b = fragment();
    let greedy = orch::local_greedy_pass(&mut a, false);
    let o2 = orch::priority_pass(&mut b, &[Op::Rw, Op::Rf, Op::Rs], false);
    assert!(greedy.nodes_after < o2.nodes_after);
}

// SPDX-License-Identifier: Apache-2.0
//! Seeded random graph generation for tests and experiments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aig::{Aig, Lit};

#[derive(Clone, Copy, Debug)]
pub struct RandomAigConfig {
    pub pis: usize,
    /// Gates to generate; the AND count ends up in the same ballpark.
    pub gates: usize,
    /// Extra outputs on top of the dangling nodes.
    pub extra_pos: usize,
    /// Fanins are drawn from the most recent `window` signals.
    pub window: usize,
}

impl Default for RandomAigConfig {
    fn default() -> RandomAigConfig {
        RandomAigConfig {
            pis: 8,
            gates: 60,
            extra_pos: 2,
            window: 24,
        }
    }
}

/// Random graph mixing plain AND gates with OR/XOR/MUX gates written in
/// redundant sum-of-products style, so that every pass has work to do.
/// Every node with no fanout becomes an output.
pub fn random_aig(seed: u64, cfg: RandomAigConfig) -> Aig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Aig::with_name(format!("rand{seed}"));
    let mut sigs: Vec<Lit> = (0..cfg.pis.max(1)).map(|_| g.add_pi()).collect();
    let window = cfg.window.max(2);
    for _ in 0..cfg.gates {
        let lo = sigs.len().saturating_sub(window);
        let pick = |rng: &mut ChaCha8Rng| {
            let l = sigs[rng.gen_range(lo..sigs.len())];
            l.xor(rng.gen_bool(0.5))
        };
        let a = pick(&mut rng);
        let b = pick(&mut rng);
        let out = match rng.gen_range(0..10) {
            0..=3 => g.add_and(a, b),
            4 => g.add_or(a, b),
            5 => {
                // a ^ b as a two-cube cover
                let x = g.add_and(a, !b);
                let y = g.add_and(!a, b);
                g.add_or(x, y)
            }
            6 => {
                let c = pick(&mut rng);
                g.add_mux(a, b, c)
            }
            7 => {
                // a & b | a & c, unfactored
                let c = pick(&mut rng);
                let x = g.add_and(a, b);
                let y = g.add_and(a, c);
                g.add_or(x, y)
            }
            8 => {
                // majority as three cubes
                let c = pick(&mut rng);
                let x = g.add_and(a, b);
                let y = g.add_and(a, c);
                let z = g.add_and(b, c);
                let xy = g.add_or(x, y);
                g.add_or(xy, z)
            }
            _ => {
                // a & (a | b) style absorption
                let o = g.add_or(a, b);
                g.add_and(o, a.xor(rng.gen_bool(0.3)))
            }
        };
        if !out.is_const() {
            sigs.push(out);
        }
    }
    for n in 0..g.slot_count() as u32 {
        if g.is_and(n) && g.refs(n) == 0 {
            g.add_po(Lit::new(n, rng.gen_bool(0.5)));
        }
    }
    for _ in 0..cfg.extra_pos {
        let l = sigs[rng.gen_range(0..sigs.len())];
        g.add_po(l);
    }
    if g.num_pos() == 0 {
        g.add_po(sigs[sigs.len() - 1]);
    }
    g
}

/// Random graph with `pis` inputs and about `gates` gates, default shape.
pub fn random_small(seed: u64, pis: usize, gates: usize) -> Aig {
    random_aig(
        seed,
        RandomAigConfig {
            pis,
            gates,
            ..RandomAigConfig::default()
        },
    )
}

// SPDX-License-Identifier: Apache-2.0
//! Combinational equivalence checking by miter simulation.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aig::{Aig, Lit};
use crate::error::{Error, Result};

/// Largest input count checked exhaustively.
pub const MAX_EXHAUSTIVE_PIS: usize = 16;
pub const DEFAULT_PATTERNS: usize = 1 << 17;
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Words simulated per block.
const BLOCK_WORDS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// All input assignments; needs at most 16 inputs.
    Exhaustive,
    /// Seeded random patterns (rounded up to a multiple of 64).
    Random { patterns: usize, seed: u64 },
    /// Exhaustive when possible, random otherwise.
    Auto { patterns: usize, seed: u64 },
}

impl Default for Mode {
    fn default() -> Mode {
        Mode::Auto {
            patterns: DEFAULT_PATTERNS,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CecResult {
    Equivalent,
    /// An input assignment, one value per PI, on which the outputs differ.
    Counterexample(Vec<bool>),
    /// No difference found among this many random patterns.
    Unknown {
        patterns: usize,
    },
}

impl CecResult {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, CecResult::Equivalent)
    }

    pub fn is_counterexample(&self) -> bool {
        matches!(self, CecResult::Counterexample(_))
    }
}

fn copy_into(dst: &mut Aig, src: &Aig, pis: &[Lit]) -> Vec<Lit> {
    let mut map = vec![Lit::FALSE; src.slot_count()];
    for (i, &p) in src.pis().iter().enumerate() {
        map[p as usize] = pis[i];
    }
    for n in src.and_order() {
        let (a, b) = src.fanins(n).unwrap();
        let la = map[a.node() as usize].xor(a.is_compl());
        let lb = map[b.node() as usize].xor(b.is_compl());
        map[n as usize] = dst.add_and(la, lb);
    }
    src.pos()
        .iter()
        .map(|p| map[p.node() as usize].xor(p.is_compl()))
        .collect()
}

/// Single-output graph that is 1 exactly when some pair of corresponding
/// outputs of `a` and `b` differ.
pub fn miter(a: &Aig, b: &Aig) -> Result<Aig> {
    if a.num_pis() != b.num_pis() {
        return Err(Error::InterfaceMismatch(format!(
            "{} vs {} inputs",
            a.num_pis(),
            b.num_pis()
        )));
    }
    if a.num_pos() != b.num_pos() {
        return Err(Error::InterfaceMismatch(format!(
            "{} vs {} outputs",
            a.num_pos(),
            b.num_pos()
        )));
    }
    let mut m = Aig::with_name("miter");
    let pis: Vec<Lit> = (0..a.num_pis()).map(|_| m.add_pi()).collect();
    let oa = copy_into(&mut m, a, &pis);
    let ob = copy_into(&mut m, b, &pis);
    let mut any = Lit::FALSE;
    for (x, y) in oa.into_iter().zip(ob) {
        let d = m.add_xor(x, y);
        any = m.add_or(any, d);
    }
    m.add_po(any);
    m.cleanup();
    Ok(m)
}

fn exhaustive_block(num_pis: usize, first_word: usize, words: usize) -> Vec<Vec<u64>> {
    (0..num_pis)
        .map(|i| {
            (first_word..first_word + words)
                .map(|w| {
                    if i < 6 {
                        crate::truth::TruthTable::var(6, i).words()[0]
                    } else if (w >> (i - 6)) & 1 == 1 {
                        !0
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

/// Returns the first differing pattern of a miter output block.
fn find_hit(out: &[u64], pis: &[Vec<u64>]) -> Option<Vec<bool>> {
    for (w, &word) in out.iter().enumerate() {
        if word != 0 {
            let bit = word.trailing_zeros();
            return Some(pis.iter().map(|row| (row[w] >> bit) & 1 == 1).collect());
        }
    }
    None
}

/// Checks `a` and `b` for equivalence.
pub fn check(a: &Aig, b: &Aig, mode: Mode) -> Result<CecResult> {
    let m = miter(a, b)?;
    let n = m.num_pis();
    let mode = match mode {
        Mode::Auto { .. } if n <= MAX_EXHAUSTIVE_PIS => Mode::Exhaustive,
        Mode::Auto { patterns, seed } => Mode::Random { patterns, seed },
        other => other,
    };
    match mode {
        Mode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_PIS {
                return Err(Error::TooManyInputs {
                    pis: n,
                    max: MAX_EXHAUSTIVE_PIS,
                });
            }
            let total_words = if n <= 6 { 1 } else { 1 << (n - 6) };
            let mut w = 0;
            while w < total_words {
                let len = BLOCK_WORDS.min(total_words - w);
                let pis = exhaustive_block(n, w, len);
                let out = &m.simulate(&pis)[0];
                if let Some(cex) = find_hit(out, &pis) {
                    return Ok(CecResult::Counterexample(cex));
                }
                w += len;
            }
            Ok(CecResult::Equivalent)
        }
        Mode::Random { patterns, seed } => {
            let total_words = patterns.div_ceil(64).max(1);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut w = 0;
            while w < total_words {
                let len = BLOCK_WORDS.min(total_words - w);
                let pis: Vec<Vec<u64>> = (0..n)
                    .map(|_| (0..len).map(|_| rng.next_u64()).collect())
                    .collect();
                let out = &m.simulate(&pis)[0];
                if let Some(cex) = find_hit(out, &pis) {
                    return Ok(CecResult::Counterexample(cex));
                }
                w += len;
            }
            Ok(CecResult::Unknown {
                patterns: total_words * 64,
            })
        }
        Mode::Auto { .. } => unreachable!(),
    }
}

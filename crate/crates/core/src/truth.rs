// SPDX-License-Identifier: Apache-2.0
//! Truth tables over up to 16 variables.
//!
//! Bit `i` holds the function value under the assignment given by the binary
//! expansion of `i`, variable 0 being the least significant bit. Tables with
//! fewer than six variables are replicated across a single 64-bit word so
//! that word-wise operations need no masking.

use std::fmt;

pub const MAX_VARS: usize = 16;

const VAR_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: u8,
    words: Vec<u64>,
}

#[inline]
fn word_count(arity: usize) -> usize {
    if arity <= 6 {
        1
    } else {
        1 << (arity - 6)
    }
}

/// Replicates the low `2^arity` bits across a word.
fn replicate(mut w: u64, arity: usize) -> u64 {
    let mut width = 1usize << arity;
    if width < 64 {
        w &= (1u64 << width) - 1;
    }
    while width < 64 {
        w |= w << width;
        width *= 2;
    }
    w
}

impl TruthTable {
    pub fn zero(arity: usize) -> TruthTable {
        assert!(
            arity <= MAX_VARS,
            "truth tables support at most {MAX_VARS} variables"
        );
        TruthTable {
            arity: arity as u8,
            words: vec![0; word_count(arity)],
        }
    }

    pub fn ones(arity: usize) -> TruthTable {
        let mut t = TruthTable::zero(arity);
        t.words.fill(!0);
        t
    }

    /// Projection onto variable `var`.
    pub fn var(arity: usize, var: usize) -> TruthTable {
        assert!(var < arity);
        let mut t = TruthTable::zero(arity);
        if var < 6 {
            t.words.fill(VAR_MASKS[var]);
        } else {
            let stride = 1 << (var - 6);
            for (i, w) in t.words.iter_mut().enumerate() {
                if i & stride != 0 {
                    *w = !0;
                }
            }
        }
        t
    }

    /// Builds a table from its low `2^arity` bits (arity ≤ 6).
    pub fn from_u64(arity: usize, bits: u64) -> TruthTable {
        assert!(arity <= 6);
        TruthTable {
            arity: arity as u8,
            words: vec![replicate(bits, arity)],
        }
    }

    pub fn from_words(arity: usize, words: Vec<u64>) -> TruthTable {
        assert_eq!(words.len(), word_count(arity));
        let mut t = TruthTable {
            arity: arity as u8,
            words,
        };
        if arity < 6 {
            t.words[0] = replicate(t.words[0], arity);
        }
        t
    }

    pub fn from_fn(arity: usize, f: impl Fn(usize) -> bool) -> TruthTable {
        let mut t = TruthTable::zero(arity);
        for i in 0..(1usize << arity) {
            if f(i) {
                t.set_bit(i, true);
            }
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn num_bits(&self) -> usize {
        1 << self.arity
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The low `2^arity` bits as an integer (arity ≤ 6).
    pub fn to_u64(&self) -> u64 {
        assert!(self.arity <= 6);
        let n = self.num_bits();
        if n == 64 {
            self.words[0]
        } else {
            self.words[0] & ((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    pub fn set_bit(&mut self, i: usize, v: bool) {
        if self.arity < 6 {
            let width = self.num_bits();
            let mut j = i;
            while j < 64 {
                self.set_word_bit(j, v);
                j += width;
            }
        } else {
            self.set_word_bit(i, v);
        }
    }

    fn set_word_bit(&mut self, i: usize, v: bool) {
        let w = &mut self.words[i >> 6];
        if v {
            *w |= 1 << (i & 63);
        } else {
            *w &= !(1 << (i & 63));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_ones(&self) -> bool {
        self.words.iter().all(|&w| w == !0)
    }

    pub fn count_ones(&self) -> usize {
        let total: u32 = self.words.iter().map(|w| w.count_ones()).sum();
        if self.arity < 6 {
            total as usize >> (6 - self.arity)
        } else {
            total as usize
        }
    }

    #[must_use]
    pub fn not(&self) -> TruthTable {
        self.map(|w| !w)
    }

    #[must_use]
    pub fn and(&self, o: &TruthTable) -> TruthTable {
        self.zip(o, |a, b| a & b)
    }

    #[must_use]
    pub fn or(&self, o: &TruthTable) -> TruthTable {
        self.zip(o, |a, b| a | b)
    }

    #[must_use]
    pub fn xor(&self, o: &TruthTable) -> TruthTable {
        self.zip(o, |a, b| a ^ b)
    }

    /// `self & !o`
    #[must_use]
    pub fn and_not(&self, o: &TruthTable) -> TruthTable {
        self.zip(o, |a, b| a & !b)
    }

    /// Complements the table when `c` is set.
    #[must_use]
    pub fn xor_const(&self, c: bool) -> TruthTable {
        if c {
            self.not()
        } else {
            self.clone()
        }
    }

    /// True when every minterm of `self` is a minterm of `o`.
    pub fn implies(&self, o: &TruthTable) -> bool {
        debug_assert_eq!(self.arity, o.arity);
        self.words.iter().zip(&o.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn intersects(&self, o: &TruthTable) -> bool {
        self.words.iter().zip(&o.words).any(|(&a, &b)| a & b != 0)
    }

    fn map(&self, f: impl Fn(u64) -> u64) -> TruthTable {
        TruthTable {
            arity: self.arity,
            words: self.words.iter().map(|&w| f(w)).collect(),
        }
    }

    fn zip(&self, o: &TruthTable, f: impl Fn(u64, u64) -> u64) -> TruthTable {
        assert_eq!(self.arity, o.arity, "truth table arity mismatch");
        TruthTable {
            arity: self.arity,
            words: self
                .words
                .iter()
                .zip(&o.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Cofactor with `var` fixed to `value`, expressed over the same
    /// variables (the result does not depend on `var`).
    #[must_use]
    pub fn cofactor(&self, var: usize, value: bool) -> TruthTable {
        assert!(var < self.arity());
        let mut t = self.clone();
        if var < 6 {
            let m = VAR_MASKS[var];
            let s = 1u32 << var;
            for w in &mut t.words {
                *w = if value {
                    (*w & m) | ((*w & m) >> s)
                } else {
                    (*w & !m) | ((*w & !m) << s)
                };
            }
        } else {
            let stride = 1 << (var - 6);
            for i in 0..t.words.len() {
                if i & stride == 0 {
                    let src = if value { i | stride } else { i };
                    let w = self.words[src];
                    t.words[i] = w;
                    t.words[i | stride] = w;
                }
            }
        }
        t
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.cofactor(var, false) != self.cofactor(var, true)
    }

    /// Support variables in ascending order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.arity()).filter(|&v| self.depends_on(v)).collect()
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({}, 0x", self.arity)?;
        if self.arity <= 6 {
            let digits = (self.num_bits() / 4).max(1);
            write!(f, "{:0width$x}", self.to_u64(), width = digits)?;
        } else {
            for w in self.words.iter().rev() {
                write!(f, "{w:016x}")?;
            }
        }
        write!(f, ")")
    }
}

// SPDX-License-Identifier: Apache-2.0
//! Generators for the small bundled benchmark designs.
//!
//! The circuits are written gate by gate in plain sum-of-products style
//! without any optimization, so they carry the kind of redundancy that
//! technology-independent passes remove.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aig::{Aig, Lit};

fn nand(g: &mut Aig, a: Lit, b: Lit) -> Lit {
    !g.add_and(a, b)
}

/// `a ^ b` as the cover `a!b + !ab`.
fn xor2(g: &mut Aig, a: Lit, b: Lit) -> Lit {
    let x = g.add_and(a, !b);
    let y = g.add_and(!a, b);
    g.add_or(x, y)
}

/// Three-input parity as its four-minterm cover.
fn xor3(g: &mut Aig, a: Lit, b: Lit, c: Lit) -> Lit {
    let mut acc = Lit::FALSE;
    for m in [0b001u8, 0b010, 0b100, 0b111] {
        let t1 = g.add_and(a.xor(m & 1 == 0), b.xor(m & 2 == 0));
        let t = g.add_and(t1, c.xor(m & 4 == 0));
        acc = g.add_or(acc, t);
    }
    acc
}

fn maj3(g: &mut Aig, a: Lit, b: Lit, c: Lit) -> Lit {
    let x = g.add_and(a, b);
    let y = g.add_and(a, c);
    let z = g.add_and(b, c);
    let xy = g.add_or(x, y);
    g.add_or(xy, z)
}

fn full_adder(g: &mut Aig, a: Lit, b: Lit, c: Lit) -> (Lit, Lit) {
    (xor3(g, a, b, c), maj3(g, a, b, c))
}

fn inputs(g: &mut Aig, n: usize) -> Vec<Lit> {
    (0..n).map(|_| g.add_pi()).collect()
}

/// The ISCAS-85 c17 netlist.
pub fn c17() -> Aig {
    let mut g = Aig::with_name("c17");
    let n = inputs(&mut g, 5);
    let (n1, n2, n3, n6, n7) = (n[0], n[1], n[2], n[3], n[4]);
    let n10 = nand(&mut g, n1, n3);
    let n11 = nand(&mut g, n3, n6);
    let n16 = nand(&mut g, n2, n11);
    let n19 = nand(&mut g, n11, n7);
    let n22 = nand(&mut g, n10, n16);
    let n23 = nand(&mut g, n16, n19);
    g.add_po(n22);
    g.add_po(n23);
    g
}

/// Ripple-carry adder of two `bits`-wide operands and a carry-in.
pub fn adder(bits: usize) -> Aig {
    let mut g = Aig::with_name(format!("add{bits}"));
    let a = inputs(&mut g, bits);
    let b = inputs(&mut g, bits);
    let mut carry = g.add_pi();
    for i in 0..bits {
        let (s, c) = full_adder(&mut g, a[i], b[i], carry);
        g.add_po(s);
        carry = c;
    }
    g.add_po(carry);
    g
}

/// Unsigned array multiplier.
pub fn multiplier(bits: usize) -> Aig {
    let mut g = Aig::with_name(format!("mul{bits}"));
    let a = inputs(&mut g, bits);
    let b = inputs(&mut g, bits);
    // rows of partial products accumulated with ripple adders
    let mut acc: Vec<Lit> = (0..2 * bits).map(|_| Lit::FALSE).collect();
    for (j, &bj) in b.iter().enumerate() {
        let mut carry = Lit::FALSE;
        for (i, &ai) in a.iter().enumerate() {
            let pp = g.add_and(ai, bj);
            let (s, c) = full_adder(&mut g, acc[i + j], pp, carry);
            acc[i + j] = s;
            carry = c;
        }
        acc[j + bits] = carry;
    }
    for l in acc {
        g.add_po(l);
    }
    g
}

/// Magnitude comparator with less, equal and greater outputs.
pub fn comparator(bits: usize) -> Aig {
    let mut g = Aig::with_name(format!("cmp{bits}"));
    let a = inputs(&mut g, bits);
    let b = inputs(&mut g, bits);
    let mut lt = Lit::FALSE;
    let mut eq = Lit::TRUE;
    // from the most significant bit down
    for i in (0..bits).rev() {
        let ai_lt = g.add_and(!a[i], b[i]);
        let x = xor2(&mut g, a[i], b[i]);
        let t = g.add_and(eq, ai_lt);
        lt = g.add_or(lt, t);
        eq = g.add_and(eq, !x);
    }
    let ge = !lt;
    let gt = g.add_and(ge, !eq);
    g.add_po(lt);
    g.add_po(eq);
    g.add_po(gt);
    g
}

/// Four-bit ALU: add, and, or, xor selected by two opcode bits.
pub fn alu4() -> Aig {
    let mut g = Aig::with_name("alu4");
    let a = inputs(&mut g, 4);
    let b = inputs(&mut g, 4);
    let op = inputs(&mut g, 2);
    let mut carry = g.add_pi();
    let sel: Vec<Lit> = (0..4)
        .map(|k| {
            let x = op[0].xor(k & 1 == 0);
            let y = op[1].xor(k & 2 == 0);
            g.add_and(x, y)
        })
        .collect();
    for i in 0..4 {
        let (s, c) = full_adder(&mut g, a[i], b[i], carry);
        carry = c;
        let and = g.add_and(a[i], b[i]);
        let or = g.add_or(a[i], b[i]);
        let xor = xor2(&mut g, a[i], b[i]);
        let mut out = Lit::FALSE;
        for (k, f) in [s, and, or, xor].into_iter().enumerate() {
            let t = g.add_and(sel[k], f);
            out = g.add_or(out, t);
        }
        g.add_po(out);
    }
    let c_out = g.add_and(sel[0], carry);
    g.add_po(c_out);
    g
}

/// Majority of seven inputs as the cover of all four-input subsets.
pub fn majority7() -> Aig {
    let mut g = Aig::with_name("maj7");
    let x = inputs(&mut g, 7);
    let mut acc = Lit::FALSE;
    for m in 0u32..128 {
        if m.count_ones() != 4 {
            continue;
        }
        let mut cube = Lit::TRUE;
        for (i, &xi) in x.iter().enumerate() {
            if m >> i & 1 == 1 {
                cube = g.add_and(cube, xi);
            }
        }
        acc = g.add_or(acc, cube);
    }
    g.add_po(acc);
    g
}

/// 4-to-16 decoder with enable, each output a full minterm.
pub fn decoder4() -> Aig {
    let mut g = Aig::with_name("dec4");
    let s = inputs(&mut g, 4);
    let en = g.add_pi();
    for k in 0..16 {
        let mut t = en;
        for (i, &si) in s.iter().enumerate() {
            t = g.add_and(t, si.xor(k >> i & 1 == 0));
        }
        g.add_po(t);
    }
    g
}

/// Seeded random multi-output PLA: `outs` covers of `cubes` cubes over
/// `ins` inputs.
pub fn pla(ins: usize, outs: usize, cubes: usize, seed: u64) -> Aig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Aig::with_name(format!("pla{ins}"));
    let x = inputs(&mut g, ins);
    // shared cube pool, as in a PLA AND plane
    let pool: Vec<Vec<(usize, bool)>> = (0..cubes * 2)
        .map(|_| {
            let width = rng.gen_range(2..=ins.min(5));
            let mut vars: Vec<usize> = (0..ins).collect();
            for i in 0..width {
                let j = rng.gen_range(i..ins);
                vars.swap(i, j);
            }
            vars[..width]
                .iter()
                .map(|&v| (v, rng.gen_bool(0.5)))
                .collect()
        })
        .collect();
    for _ in 0..outs {
        let mut acc = Lit::FALSE;
        for _ in 0..cubes {
            let cube = &pool[rng.gen_range(0..pool.len())];
            let mut t = Lit::TRUE;
            for &(v, c) in cube {
                t = g.add_and(t, x[v].xor(c));
            }
            acc = g.add_or(acc, t);
        }
        g.add_po(acc);
    }
    g
}

/// One byte step of a CRC-8 (polynomial 0x07) in parallel form.
pub fn crc8() -> Aig {
    let mut g = Aig::with_name("crc8");
    let data = inputs(&mut g, 8);
    let mut state = inputs(&mut g, 8);
    for &d in data.iter().rev() {
        let fb = xor2(&mut g, state[7], d);
        let mut next = vec![Lit::FALSE; 8];
        next[0] = fb;
        next[1] = xor2(&mut g, state[0], fb);
        next[2] = xor2(&mut g, state[1], fb);
        next[3..8].copy_from_slice(&state[2..7]);
        state = next;
    }
    for l in state {
        g.add_po(l);
    }
    g
}

/// All bundled designs, in a fixed order.
pub fn all() -> Vec<Aig> {
    let mut out = vec![
        c17(),
        adder(7),
        multiplier(4),
        comparator(8),
        alu4(),
        majority7(),
        decoder4(),
        pla(10, 4, 12, 7),
        crc8(),
        adder(12),
    ];
    for g in &mut out {
        g.cleanup();
        *g = g.compact().0;
    }
    out
}

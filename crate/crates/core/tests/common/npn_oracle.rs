// SPDX-License-Identifier: Apache-2.0
//! Brute-force NPN reference.

use aig_orch::npn::NpnTransform;

/// Direct reading of the transform definition: `g(x) = oc ^ f(y)` with
/// `y[perm[i]] = x[i] ^ neg[i]`.
pub fn apply_oracle(t: &NpnTransform, f: u16) -> u16 {
    let mut g = 0u16;
    for x in 0..16usize {
        let mut y = 0usize;
        for i in 0..4 {
            let bit = (x >> i & 1) ^ (t.neg as usize >> i & 1);
            y |= bit << t.perm[i];
        }
        let v = (f >> y & 1 == 1) ^ t.oc;
        g |= (v as u16) << x;
    }
    g
}

fn find(p: &mut [u32], x: u32) -> u32 {
    let mut r = x;
    while p[r as usize] != r {
        r = p[r as usize];
    }
    let mut x = x;
    while p[x as usize] != r {
        let n = p[x as usize];
        p[x as usize] = r;
        x = n;
    }
    r
}

/// Classes of 4-input functions by closing under generators: adjacent
/// input swaps, negation of input 0 and output negation.
pub fn brute_force_classes() -> Vec<u32> {
    let mut p: Vec<u32> = (0..65536).collect();
    let swap = |f: u16, i: usize| -> u16 {
        let mut g = 0u16;
        for x in 0..16usize {
            let (a, b) = (x >> i & 1, x >> (i + 1) & 1);
            let y = (x & !(0b11 << i)) | (b << i) | (a << (i + 1));
            g |= (f >> y & 1) << x;
        }
        g
    };
    let neg0 = |f: u16| -> u16 {
        let mut g = 0u16;
        for x in 0..16usize {
            g |= (f >> (x ^ 1) & 1) << x;
        }
        g
    };
    for f in 0..=u16::MAX {
        let mut images = vec![!f, neg0(f)];
        for i in 0..3 {
            images.push(swap(f, i));
        }
        for g in images {
            let (a, b) = (find(&mut p, f as u32), find(&mut p, g as u32));
            if a != b {
                p[a as usize] = b;
            }
        }
    }
    (0..65536).map(|f| find(&mut p, f)).collect()
}

// SPDX-License-Identifier: Apache-2.0
//! NPN canonicalization of 4-input functions and the rewrite template
//! library.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::recipe::{Net, NetLit};
use crate::sop::{compile_form, factor, isop};
use crate::truth::TruthTable;

pub const NUM_TRANSFORMS: usize = 768;

/// An input permutation, input negation and output negation.
///
/// Applying `t` to `f` gives `g(x) = oc ^ f(y)` where
/// `y[perm[i]] = x[i] ^ neg[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NpnTransform {
    pub perm: [u8; 4],
    pub neg: u8,
    pub oc: bool,
}

impl NpnTransform {
    pub const IDENTITY: NpnTransform = NpnTransform {
        perm: [0, 1, 2, 3],
        neg: 0,
        oc: false,
    };

    /// All 768 transforms in a fixed order.
    pub fn all() -> &'static [NpnTransform] {
        static ALL: OnceLock<Vec<NpnTransform>> = OnceLock::new();
        ALL.get_or_init(|| {
            let mut out = Vec::with_capacity(NUM_TRANSFORMS);
            for perm in permutations4() {
                for neg in 0..16u8 {
                    for oc in [false, true] {
                        out.push(NpnTransform { perm, neg, oc });
                    }
                }
            }
            out
        })
    }

    /// Source minterm read for each output minterm.
    fn minterm_map(&self) -> [u8; 16] {
        let mut m = [0u8; 16];
        for (x, slot) in m.iter_mut().enumerate() {
            let mut y = 0u8;
            for i in 0..4 {
                let bit = ((x >> i) as u8 & 1) ^ ((self.neg >> i) & 1);
                y |= bit << self.perm[i];
            }
            *slot = y;
        }
        m
    }

    fn from_minterm_map(m: &[u8; 16], oc: bool) -> NpnTransform {
        let base = m[0];
        let mut perm = [0u8; 4];
        let mut neg = 0u8;
        for i in 0..4 {
            let p = (m[1 << i] ^ base).trailing_zeros() as u8;
            perm[i] = p;
            neg |= ((base >> p) & 1) << i;
        }
        NpnTransform { perm, neg, oc }
    }

    pub fn apply(&self, tt: u16) -> u16 {
        let m = self.minterm_map();
        let mut out = 0u16;
        for (x, &y) in m.iter().enumerate() {
            out |= ((tt >> y) & 1) << x;
        }
        if self.oc {
            !out
        } else {
            out
        }
    }

    pub fn inverse(&self) -> NpnTransform {
        let mut perm = [0u8; 4];
        let mut neg = 0u8;
        for i in 0..4 {
            perm[self.perm[i] as usize] = i as u8;
        }
        for (j, &p) in perm.iter().enumerate() {
            neg |= ((self.neg >> p) & 1) << j;
        }
        NpnTransform {
            perm,
            neg,
            oc: self.oc,
        }
    }

    /// The transform equal to applying `self`, then `then`.
    pub fn then(&self, then: &NpnTransform) -> NpnTransform {
        let m1 = self.minterm_map();
        let m2 = then.minterm_map();
        let mut m = [0u8; 16];
        for x in 0..16 {
            m[x] = m1[m2[x] as usize];
        }
        NpnTransform::from_minterm_map(&m, self.oc ^ then.oc)
    }
}

fn permutations4() -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    let mut seen = 0u8;
                    for &x in &p {
                        seen |= 1 << x;
                    }
                    if seen == 0xF {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

struct CanonTable {
    canon: Vec<u16>,
    transform: Vec<NpnTransform>,
    classes: Vec<u16>,
}

fn canon_table() -> &'static CanonTable {
    static TABLE: OnceLock<CanonTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = 1 << 16;
        let mut canon = vec![0u16; n];
        let mut transform = vec![NpnTransform::IDENTITY; n];
        let mut done = vec![false; n];
        let mut classes = Vec::new();
        let all = NpnTransform::all();
        for f in 0..n {
            if done[f] {
                continue;
            }
            let f16 = f as u16;
            let (best_t, c) = all
                .iter()
                .map(|t| (t, t.apply(f16)))
                .min_by_key(|&(_, g)| g)
                .unwrap();
            classes.push(c);
            for t in all {
                let g = t.apply(f16) as usize;
                if done[g] {
                    continue;
                }
                done[g] = true;
                canon[g] = c;
                // g -> f -> canonical form
                transform[g] = t.inverse().then(best_t);
            }
        }
        classes.sort_unstable();
        CanonTable {
            canon,
            transform,
            classes,
        }
    })
}

/// Canonical representative of `tt` (the smallest table reachable by any
/// transform) and a transform mapping `tt` to it.
pub fn npn_canon(tt: u16) -> (u16, NpnTransform) {
    let t = canon_table();
    (t.canon[tt as usize], t.transform[tt as usize])
}

/// Canonical representatives of all NPN classes, ascending.
pub fn npn_classes() -> &'static [u16] {
    &canon_table().classes
}

/// A precomputed subgraph for a canonical function over four inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub net: Net,
    pub out: NetLit,
}

impl Template {
    pub fn node_count(&self) -> usize {
        self.net.size()
    }

    pub fn depth(&self) -> u32 {
        self.net.depth(self.out)
    }

    pub fn truth(&self) -> u16 {
        self.net.truth(self.out).to_u64() as u16
    }
}

/// Templates for every NPN class of 4-input functions, keyed by canonical
/// table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteLibrary {
    entries: Vec<(u16, Vec<Template>)>,
}

const LIBRARY_MAGIC: &[u8; 4] = b"AORL";
const LIBRARY_VERSION: u16 = 1;

fn template_for(tt: &TruthTable, compl: bool) -> Template {
    let form = factor(&isop(tt));
    let (mut net, out) = compile_form(&form, compl);
    let out = net.prune(out);
    Template { net, out }
}

impl RewriteLibrary {
    /// Builds one template per class. With `variants`, the templates
    /// derived from both output polarities are kept when they differ.
    pub fn build(variants: bool) -> RewriteLibrary {
        let mut entries = Vec::new();
        for &c in npn_classes() {
            let tt = TruthTable::from_u64(4, c as u64);
            let direct = template_for(&tt, false);
            let dual = template_for(&tt.not(), true);
            let mut list = if dual.node_count() < direct.node_count() {
                vec![dual.clone(), direct.clone()]
            } else {
                vec![direct.clone(), dual.clone()]
            };
            if !variants || direct == dual {
                list.truncate(1);
            }
            entries.push((c, list));
        }
        RewriteLibrary { entries }
    }

    /// The shared single-template library.
    pub fn standard() -> &'static RewriteLibrary {
        static LIB: OnceLock<RewriteLibrary> = OnceLock::new();
        LIB.get_or_init(|| RewriteLibrary::build(false))
    }

    pub fn num_classes(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u16, &[Template])> {
        self.entries.iter().map(|(c, t)| (*c, t.as_slice()))
    }

    pub fn templates(&self, canon: u16) -> &[Template] {
        match self.entries.binary_search_by_key(&canon, |e| e.0) {
            Ok(i) => &self.entries[i].1,
            Err(_) => &[],
        }
    }

    /// Serializes to a versioned binary blob.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(LIBRARY_MAGIC);
        out.extend_from_slice(&LIBRARY_VERSION.to_le_bytes());
        out.extend_from_slice(&(self.entries.len() as u32).to_le_bytes());
        for (c, templates) in &self.entries {
            out.extend_from_slice(&c.to_le_bytes());
            out.push(templates.len() as u8);
            for t in templates {
                out.push(t.net.size() as u8);
                for &(a, b) in t.net.steps() {
                    out.push(a as u8);
                    out.push(b as u8);
                }
                out.push(t.out as u8);
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<RewriteLibrary> {
        let bad = |m: &str| Error::BadLibrary(m.to_string());
        let mut pos = 0usize;
        let mut take = |n: usize| -> Result<&[u8]> {
            let s = bytes.get(pos..pos + n).ok_or_else(|| bad("truncated"))?;
            pos += n;
            Ok(s)
        };
        if take(4)? != LIBRARY_MAGIC {
            return Err(bad("wrong magic"));
        }
        let version = u16::from_le_bytes(take(2)?.try_into().unwrap());
        if version != LIBRARY_VERSION {
            return Err(Error::BadLibrary(format!("unsupported version {version}")));
        }
        let count = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
        let mut entries = Vec::with_capacity(count);
        for _ in 0..count {
            let c = u16::from_le_bytes(take(2)?.try_into().unwrap());
            let nt = take(1)?[0];
            let mut list = Vec::new();
            for _ in 0..nt {
                let steps = take(1)?[0] as usize;
                let mut net = Net::new(4);
                for _ in 0..steps {
                    let s = take(2)?;
                    let (a, b) = (s[0] as u32, s[1] as u32);
                    let limit = 2 * (5 + net.size()) as u32;
                    if a >= limit || b >= limit {
                        return Err(bad("step references a later node"));
                    }
                    net.and(a, b);
                }
                let out = take(1)?[0] as u32;
                let t = Template { net, out };
                if t.net.size() != steps || t.truth() != c {
                    return Err(bad("template does not match its key"));
                }
                list.push(t);
            }
            entries.push((c, list));
        }
        if pos != bytes.len() {
            return Err(bad("trailing bytes"));
        }
        Ok(RewriteLibrary { entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(npn_canon(0x0000).0, 0);
        let (c, t) = npn_canon(0xFFFF);
        assert_eq!(c, 0);
        assert!(t.oc);
    }

    #[test]
    fn inverse_round_trip() {
        for t in NpnTransform::all() {
            for tt in [0x1234u16, 0x8000, 0x6996, 0xCAFE] {
                assert_eq!(t.inverse().apply(t.apply(tt)), tt);
            }
        }
    }

    #[test]
    fn composition() {
        let all = NpnTransform::all();
        for (i, a) in all.iter().enumerate().step_by(37) {
            for b in all.iter().skip(i % 11).step_by(53) {
                let tt = 0x1E5Au16;
                assert_eq!(a.then(b).apply(tt), b.apply(a.apply(tt)));
            }
        }
    }

    #[test]
    fn and4_and_xor_templates() {
        let lib = RewriteLibrary::standard();
        let (c, _) = npn_canon(0x8000);
        assert_eq!(lib.templates(c)[0].node_count(), 3);
        let xor = 0x6666u16; // x0 ^ x1
        let (c, _) = npn_canon(xor);
        assert_eq!(lib.templates(c)[0].node_count(), 3);
        let (c, _) = npn_canon(0xAAAA);
        assert_eq!(lib.templates(c)[0].node_count(), 0);
    }

    #[test]
    fn blob_round_trip() {
        let lib = RewriteLibrary::build(true);
        let back = RewriteLibrary::from_bytes(&lib.to_bytes()).unwrap();
        assert_eq!(back, lib);
        assert!(RewriteLibrary::from_bytes(b"AORX").is_err());
    }
}

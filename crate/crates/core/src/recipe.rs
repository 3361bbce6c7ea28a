// SPDX-License-Identifier: Apache-2.0
//! Small standalone AND/inverter networks and their insertion into a graph.
//!
//! Every transformation expresses its replacement as a [`Net`] over a few
//! existing graph literals. The same [`Recipe`] is first costed with
//! [`Recipe::dry_run`], which touches nothing, and then materialized with
//! [`Recipe::build`].

use rustc_hash::{FxHashMap, FxHashSet};

use crate::aig::{trivial_and, Aig, Lit};
use crate::truth::TruthTable;

/// Literal inside a [`Net`]: `2 * index + complement`, where index 0 is the
/// constant, `1..=num_inputs` are inputs and the rest are AND steps.
pub type NetLit = u32;

pub const NET_FALSE: NetLit = 0;
pub const NET_TRUE: NetLit = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Net {
    num_inputs: usize,
    steps: Vec<(NetLit, NetLit)>,
    hash: FxHashMap<(NetLit, NetLit), NetLit>,
}

#[inline]
fn net_trivial(a: NetLit, b: NetLit) -> Option<NetLit> {
    trivial_and(Lit::from_raw(a), Lit::from_raw(b)).map(Lit::raw)
}

impl Net {
    pub fn new(num_inputs: usize) -> Net {
        Net {
            num_inputs,
            steps: Vec::new(),
            hash: FxHashMap::default(),
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    /// Number of AND steps.
    pub fn size(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[(NetLit, NetLit)] {
        &self.steps
    }

    pub fn input(&self, i: usize) -> NetLit {
        assert!(i < self.num_inputs);
        2 * (i as u32 + 1)
    }

    pub fn and(&mut self, a: NetLit, b: NetLit) -> NetLit {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        if let Some(l) = net_trivial(a, b) {
            return l;
        }
        if let Some(&l) = self.hash.get(&(a, b)) {
            return l;
        }
        let l = 2 * (self.num_inputs + 1 + self.steps.len()) as u32;
        self.steps.push((a, b));
        self.hash.insert((a, b), l);
        l
    }

    pub fn or(&mut self, a: NetLit, b: NetLit) -> NetLit {
        self.and(a ^ 1, b ^ 1) ^ 1
    }

    /// Conjunction of all operands, paired left to right level by level.
    pub fn and_all(&mut self, ops: &[NetLit]) -> NetLit {
        if ops.is_empty() {
            return NET_TRUE;
        }
        let mut layer = ops.to_vec();
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            for pair in layer.chunks(2) {
                next.push(if pair.len() == 2 {
                    self.and(pair[0], pair[1])
                } else {
                    pair[0]
                });
            }
            layer = next;
        }
        layer[0]
    }

    pub fn or_all(&mut self, ops: &[NetLit]) -> NetLit {
        let inv: Vec<NetLit> = ops.iter().map(|l| l ^ 1).collect();
        self.and_all(&inv) ^ 1
    }

    /// Number of steps on the longest input-to-`out` path.
    pub fn depth(&self, out: NetLit) -> u32 {
        let mut levels = vec![0u32; 1 + self.num_inputs + self.steps.len()];
        for (i, &(a, b)) in self.steps.iter().enumerate() {
            let idx = 1 + self.num_inputs + i;
            levels[idx] = 1 + levels[(a >> 1) as usize].max(levels[(b >> 1) as usize]);
        }
        levels[(out >> 1) as usize]
    }

    /// Function computed at `out` over the inputs.
    pub fn truth(&self, out: NetLit) -> TruthTable {
        let k = self.num_inputs;
        let mut vals: Vec<TruthTable> = Vec::with_capacity(1 + k + self.steps.len());
        vals.push(TruthTable::zero(k));
        for i in 0..k {
            vals.push(TruthTable::var(k, i));
        }
        for &(a, b) in &self.steps {
            let ta = vals[(a >> 1) as usize].xor_const(a & 1 == 1);
            let tb = vals[(b >> 1) as usize].xor_const(b & 1 == 1);
            vals.push(ta.and(&tb));
        }
        vals[(out >> 1) as usize].xor_const(out & 1 == 1)
    }

    /// Keeps only the steps reachable from `out` and returns the remapped
    /// output literal.
    pub fn prune(&mut self, out: NetLit) -> NetLit {
        let base = 1 + self.num_inputs;
        let mut used = vec![false; self.steps.len()];
        let mut stack = vec![out >> 1];
        while let Some(idx) = stack.pop() {
            let idx = idx as usize;
            if idx < base || used[idx - base] {
                continue;
            }
            used[idx - base] = true;
            let (a, b) = self.steps[idx - base];
            stack.push(a >> 1);
            stack.push(b >> 1);
        }
        let mut remap: Vec<u32> = (0..base as u32).collect();
        let mut steps = Vec::new();
        for (i, &(a, b)) in self.steps.iter().enumerate() {
            if used[i] {
                let m = |l: NetLit| (2 * remap[(l >> 1) as usize]) | (l & 1);
                let (ma, mb) = (m(a), m(b));
                remap.push((base + steps.len()) as u32);
                steps.push(if ma <= mb { (ma, mb) } else { (mb, ma) });
            } else {
                remap.push(u32::MAX);
            }
        }
        self.steps = steps;
        self.hash = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, 2 * (base + i) as u32))
            .collect();
        (2 * remap[(out >> 1) as usize]) | (out & 1)
    }
}

/// A net bound to concrete graph literals.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub inputs: Vec<Lit>,
    pub net: Net,
    pub out: NetLit,
}

impl Recipe {
    pub fn new(inputs: Vec<Lit>, net: Net, out: NetLit) -> Recipe {
        assert_eq!(inputs.len(), net.num_inputs());
        Recipe { inputs, net, out }
    }

    /// A recipe that adds no logic and returns an existing literal.
    pub fn wire(lit: Lit) -> Recipe {
        let net = Net::new(1);
        let out = net.input(0);
        Recipe::new(vec![lit], net, out)
    }

    /// Counts the AND nodes that building the recipe would add to `aig`.
    ///
    /// Existing nodes found through structural hashing are free unless they
    /// belong to `doomed` (the cone about to be freed), in which case they
    /// count as added because they would otherwise have been deleted.
    /// Returns `None` when the construction would hash onto `root` itself.
    pub fn dry_run(&self, aig: &Aig, root: u32, doomed: &FxHashSet<u32>) -> Option<usize> {
        let base = self.inputs.len() + 1;
        let mut map: Vec<Lit> = Vec::with_capacity(base + self.net.size());
        map.push(Lit::FALSE);
        map.extend_from_slice(&self.inputs);
        let first_virtual = aig.slot_count() as u32;
        let mut next_virtual = first_virtual;
        let mut local: FxHashMap<(Lit, Lit), Lit> = FxHashMap::default();
        let mut revived: FxHashSet<u32> = FxHashSet::default();
        let mut added = 0;
        let resolve = |map: &Vec<Lit>, l: NetLit| map[(l >> 1) as usize].xor(l & 1 == 1);
        for &(a, b) in self.net.steps() {
            let la = resolve(&map, a);
            let lb = resolve(&map, b);
            let (la, lb) = if la <= lb { (la, lb) } else { (lb, la) };
            let lit = if let Some(l) = trivial_and(la, lb) {
                l
            } else if la.node() < first_virtual && lb.node() < first_virtual {
                match aig.lookup_and(la, lb) {
                    Some(h) => {
                        if h.node() == root {
                            return None;
                        }
                        if doomed.contains(&h.node()) && revived.insert(h.node()) {
                            added += 1;
                        }
                        h
                    }
                    None => *local.entry((la, lb)).or_insert_with(|| {
                        added += 1;
                        next_virtual += 1;
                        Lit::new(next_virtual - 1, false)
                    }),
                }
            } else {
                *local.entry((la, lb)).or_insert_with(|| {
                    added += 1;
                    next_virtual += 1;
                    Lit::new(next_virtual - 1, false)
                })
            };
            map.push(lit);
        }
        if resolve(&map, self.out).node() == root {
            return None;
        }
        Some(added)
    }

    /// Materializes the recipe and returns the literal of its output.
    pub fn build(&self, aig: &mut Aig) -> Lit {
        let mut map: Vec<Lit> = Vec::with_capacity(self.inputs.len() + 1 + self.net.size());
        map.push(Lit::FALSE);
        map.extend_from_slice(&self.inputs);
        for &(a, b) in self.net.steps() {
            let la = map[(a >> 1) as usize].xor(a & 1 == 1);
            let lb = map[(b >> 1) as usize].xor(b & 1 == 1);
            let l = aig.add_and(la, lb);
            map.push(l);
        }
        map[(self.out >> 1) as usize].xor(self.out & 1 == 1)
    }
}

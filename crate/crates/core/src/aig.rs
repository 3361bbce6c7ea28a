// SPDX-License-Identifier: Apache-2.0
//! And-inverter graph storage.
//!
//! Nodes live in a single vector indexed by `u32`. Index 0 is the constant
//! false node, primary inputs and AND nodes follow. Deleted nodes are
//! tombstoned (`NodeKind::Dead`) and their slots are only reclaimed by
//! [`Aig::compact`], so node indices stay stable while a pass mutates the
//! graph.
//!
//! Freshly built or compacted graphs store every AND node after both of its
//! fanins. In-place replacement may redirect an old fanout onto a newer node,
//! after which index order is no longer topological; [`Aig::topo_order`]
//! always returns a valid order and [`Aig::compact`] restores index order.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Not;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};

/// A possibly complemented reference to a node, packed as `2 * node + compl`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Lit(u32);

impl Lit {
    pub const FALSE: Lit = Lit(0);
    pub const TRUE: Lit = Lit(1);

    #[inline]
    pub const fn new(node: u32, compl: bool) -> Lit {
        Lit((node << 1) | compl as u32)
    }

    #[inline]
    pub const fn from_raw(raw: u32) -> Lit {
        Lit(raw)
    }

    #[inline]
    pub const fn raw(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn node(self) -> u32 {
        self.0 >> 1
    }

    #[inline]
    pub const fn is_compl(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub const fn regular(self) -> Lit {
        Lit(self.0 & !1)
    }

    /// Complements the literal when `c` is set.
    #[inline]
    pub const fn xor(self, c: bool) -> Lit {
        Lit(self.0 ^ c as u32)
    }

    #[inline]
    pub const fn is_const(self) -> bool {
        self.0 < 2
    }
}

impl Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_compl() {
            write!(f, "!n{}", self.node())
        } else {
            write!(f, "n{}", self.node())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Const,
    Pi,
    And(Lit, Lit),
    Dead,
}

#[derive(Clone, Debug)]
struct Node {
    kind: NodeKind,
    /// Fanout references: AND fanins plus primary outputs.
    refs: u32,
    /// Nodes on the longest PI path, inclusive. Exact after
    /// [`Aig::recompute_levels`]; an estimate while a pass is running.
    level: u32,
    /// AND nodes using this node as a fanin (one entry per edge).
    fanouts: Vec<u32>,
}

impl Node {
    fn new(kind: NodeKind, level: u32) -> Node {
        Node {
            kind,
            refs: 0,
            level,
            fanouts: Vec::new(),
        }
    }
}

/// The maximum fanout-free cone of a node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mffc {
    pub root: u32,
    /// Members in discovery order, root first.
    pub members: Vec<u32>,
}

impl Mffc {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, node: u32) -> bool {
        self.members.contains(&node)
    }
}

#[derive(Clone, Default)]
pub struct Aig {
    nodes: Vec<Node>,
    pis: Vec<u32>,
    pos: Vec<Lit>,
    strash: FxHashMap<(Lit, Lit), u32>,
    name: String,
    live_ands: usize,
    ordered: bool,
    /// Nodes whose fanins changed or that were deleted since the last
    /// [`Aig::take_modified`].
    modified: Vec<u32>,
    symbols: Vec<String>,
    comment: Option<String>,
}

impl fmt::Debug for Aig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Aig")
            .field("name", &self.name)
            .field("pis", &self.pis.len())
            .field("pos", &self.pos.len())
            .field("ands", &self.live_ands)
            .finish()
    }
}

impl Aig {
    pub fn new() -> Aig {
        Aig::with_name("")
    }

    pub fn with_name(name: impl Into<String>) -> Aig {
        Aig {
            nodes: vec![Node::new(NodeKind::Const, 0)],
            pis: Vec::new(),
            pos: Vec::new(),
            strash: FxHashMap::default(),
            name: name.into(),
            live_ands: 0,
            ordered: true,
            modified: Vec::new(),
            symbols: Vec::new(),
            comment: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// AIGER symbol table lines, kept verbatim.
    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn set_symbols(&mut self, symbols: Vec<String>) {
        self.symbols = symbols;
    }

    /// AIGER comment section, kept verbatim.
    pub fn comment(&self) -> Option<&str> {
        self.comment.as_deref()
    }

    pub fn set_comment(&mut self, comment: Option<String>) {
        self.comment = comment;
    }

    /// Number of live AND nodes.
    pub fn size(&self) -> usize {
        self.live_ands
    }

    /// Number of node slots, including tombstones.
    pub fn slot_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_pis(&self) -> usize {
        self.pis.len()
    }

    pub fn num_pos(&self) -> usize {
        self.pos.len()
    }

    pub fn pis(&self) -> &[u32] {
        &self.pis
    }

    pub fn pos(&self) -> &[Lit] {
        &self.pos
    }

    pub fn pi(&self, i: usize) -> Lit {
        Lit::new(self.pis[i], false)
    }

    pub fn po(&self, i: usize) -> Lit {
        self.pos[i]
    }

    pub fn kind(&self, node: u32) -> NodeKind {
        self.nodes[node as usize].kind
    }

    pub fn is_and(&self, node: u32) -> bool {
        matches!(self.nodes[node as usize].kind, NodeKind::And(..))
    }

    pub fn is_pi(&self, node: u32) -> bool {
        matches!(self.nodes[node as usize].kind, NodeKind::Pi)
    }

    pub fn is_live(&self, node: u32) -> bool {
        (node as usize) < self.nodes.len() && self.nodes[node as usize].kind != NodeKind::Dead
    }

    /// Fanins of an AND node.
    #[inline]
    pub fn fanins(&self, node: u32) -> Option<(Lit, Lit)> {
        match self.nodes[node as usize].kind {
            NodeKind::And(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn refs(&self, node: u32) -> u32 {
        self.nodes[node as usize].refs
    }

    pub fn level(&self, node: u32) -> u32 {
        self.nodes[node as usize].level
    }

    pub fn fanouts(&self, node: u32) -> &[u32] {
        &self.nodes[node as usize].fanouts
    }

    /// True when every live AND node is stored after both of its fanins.
    pub fn is_index_ordered(&self) -> bool {
        self.ordered
    }

    pub fn add_pi(&mut self) -> Lit {
        let idx = self.nodes.len() as u32;
        self.nodes.push(Node::new(NodeKind::Pi, 0));
        self.pis.push(idx);
        Lit::new(idx, false)
    }

    pub fn add_po(&mut self, lit: Lit) -> usize {
        self.nodes[lit.node() as usize].refs += 1;
        self.pos.push(lit);
        self.pos.len() - 1
    }

    pub fn set_po(&mut self, i: usize, lit: Lit) {
        let old = self.pos[i];
        self.nodes[old.node() as usize].refs -= 1;
        self.nodes[lit.node() as usize].refs += 1;
        self.pos[i] = lit;
    }

    /// Looks up the AND of two literals without creating anything. Returns
    /// the literal `add_and` would produce if no new node is needed.
    pub fn lookup_and(&self, a: Lit, b: Lit) -> Option<Lit> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        if let Some(l) = trivial_and(a, b) {
            return Some(l);
        }
        self.strash.get(&(a, b)).map(|&n| Lit::new(n, false))
    }

    /// Returns a literal computing `a & b`, reusing a hashed node when one
    /// exists.
    pub fn add_and(&mut self, a: Lit, b: Lit) -> Lit {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        if let Some(l) = trivial_and(a, b) {
            return l;
        }
        if let Some(&n) = self.strash.get(&(a, b)) {
            return Lit::new(n, false);
        }
        let n = self.push_and(a, b);
        self.strash.insert((a, b), n);
        Lit::new(n, false)
    }

    /// Appends an AND node without simplification. The node is entered into
    /// the structural hash only if its fanin pair is not already present.
    /// Used by readers that must reproduce a file structurally.
    pub fn add_and_raw(&mut self, a: Lit, b: Lit) -> Lit {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let n = self.push_and(a, b);
        self.strash.entry((a, b)).or_insert(n);
        Lit::new(n, false)
    }

    pub fn add_or(&mut self, a: Lit, b: Lit) -> Lit {
        !self.add_and(!a, !b)
    }

    pub fn add_xor(&mut self, a: Lit, b: Lit) -> Lit {
        let x = self.add_and(a, !b);
        let y = self.add_and(!a, b);
        self.add_or(x, y)
    }

    pub fn add_mux(&mut self, sel: Lit, then: Lit, other: Lit) -> Lit {
        let x = self.add_and(sel, then);
        let y = self.add_and(!sel, other);
        self.add_or(x, y)
    }

    fn push_and(&mut self, a: Lit, b: Lit) -> u32 {
        debug_assert!(self.is_live(a.node()) && self.is_live(b.node()));
        let n = self.nodes.len() as u32;
        let level = 1 + self.level(a.node()).max(self.level(b.node()));
        self.nodes.push(Node::new(NodeKind::And(a, b), level));
        for f in [a, b] {
            let fi = &mut self.nodes[f.node() as usize];
            fi.refs += 1;
            fi.fanouts.push(n);
        }
        self.live_ands += 1;
        n
    }

    /// Drains the journal of nodes that were rewired or deleted.
    pub fn take_modified(&mut self) -> Vec<u32> {
        std::mem::take(&mut self.modified)
    }

    /// Maximum fanout-free cone of `root`.
    pub fn mffc(&self, root: u32) -> Result<Mffc> {
        if !self.is_and(root) {
            return Err(Error::NotInternal(root));
        }
        Ok(Mffc {
            root,
            members: self.mffc_bounded(root, &[]),
        })
    }

    /// Nodes that would be deleted together with `root`, never crossing the
    /// given boundary nodes. Simulated with a scratch reference map; the
    /// graph is not touched.
    pub fn mffc_bounded(&self, root: u32, boundary: &[u32]) -> Vec<u32> {
        let mut members = vec![root];
        if !self.is_and(root) {
            return members;
        }
        let mut dec: FxHashMap<u32, u32> = FxHashMap::default();
        let mut stack = vec![root];
        while let Some(n) = stack.pop() {
            let (a, b) = self.fanins(n).expect("mffc member is an AND node");
            for f in [a.node(), b.node()] {
                if !self.is_and(f) || boundary.contains(&f) {
                    continue;
                }
                let d = dec.entry(f).or_insert(0);
                *d += 1;
                if *d == self.nodes[f as usize].refs {
                    members.push(f);
                    stack.push(f);
                }
            }
        }
        members
    }

    /// True when `node` lies in the transitive fanin of `target` (or is it).
    pub fn depends_on(&self, target: u32, node: u32) -> bool {
        if target == node {
            return true;
        }
        let mut seen = FxHashSet::default();
        let mut stack = vec![target];
        while let Some(n) = stack.pop() {
            if let Some((a, b)) = self.fanins(n) {
                for f in [a.node(), b.node()] {
                    if f == node {
                        return true;
                    }
                    if seen.insert(f) {
                        stack.push(f);
                    }
                }
            }
        }
        false
    }

    /// Redirects every fanout of `old` (including POs) to `new` and deletes
    /// the cone of `old` that becomes unreferenced. Returns the number of AND
    /// nodes removed from the graph.
    pub fn replace(&mut self, old: u32, new: Lit) -> Result<usize> {
        if !self.is_and(old) {
            return Err(Error::NotInternal(old));
        }
        if !self.is_live(new.node()) {
            return Err(Error::DeadNode(new.node()));
        }
        if self.depends_on(new.node(), old) {
            return Err(Error::ReplacementDependsOnRoot(old));
        }
        Ok(self.replace_unchecked(old, new))
    }

    /// [`Aig::replace`] without the dependency check. The caller guarantees
    /// `new` is not in the transitive fanout of `old`.
    pub(crate) fn replace_unchecked(&mut self, old: u32, new: Lit) -> usize {
        debug_assert!(self.is_and(old));
        let before = self.live_ands;
        // Pending substitutions. Targets are pinned with an extra reference so
        // that cascaded deletions cannot free them before they are used.
        let mut queue: VecDeque<(u32, Lit)> = VecDeque::new();
        let mut forward: FxHashMap<u32, Lit> = FxHashMap::default();
        self.pin(new);
        queue.push_back((old, new));

        while let Some((o, target)) = queue.pop_front() {
            let n = resolve(&forward, target);
            if self.nodes[o as usize].kind == NodeKind::Dead {
                self.unpin(target);
                continue;
            }
            // `o` leaves the hash table and forwards to `n` from now on.
            if let NodeKind::And(a, b) = self.nodes[o as usize].kind {
                if self.strash.get(&(a, b)) == Some(&o) {
                    self.strash.remove(&(a, b));
                }
            }
            forward.insert(o, n);
            self.nodes[n.node() as usize].refs += 1;
            self.unpin(target);

            // primary outputs
            let po_refs =
                self.nodes[o as usize].refs as usize - self.nodes[o as usize].fanouts.len();
            if po_refs > 0 {
                for i in 0..self.pos.len() {
                    let p = self.pos[i];
                    if p.node() == o {
                        self.pos[i] = n.xor(p.is_compl());
                        self.nodes[o as usize].refs -= 1;
                        self.nodes[n.node() as usize].refs += 1;
                    }
                }
            }

            let fanouts = std::mem::take(&mut self.nodes[o as usize].fanouts);
            for f in fanouts {
                let NodeKind::And(a, b) = self.nodes[f as usize].kind else {
                    continue;
                };
                if self.strash.get(&(a, b)) == Some(&f) {
                    self.strash.remove(&(a, b));
                }
                let sub = |l: Lit| {
                    if l.node() == o {
                        n.xor(l.is_compl())
                    } else {
                        l
                    }
                };
                let (na, nb) = (sub(a), sub(b));
                // one edge per fanout entry; a node never lists `o` twice
                // because `o & o` and `o & !o` are never stored
                self.nodes[o as usize].refs -= 1;
                self.nodes[n.node() as usize].refs += 1;
                self.nodes[n.node() as usize].fanouts.push(f);
                let (na, nb) = if na <= nb { (na, nb) } else { (nb, na) };
                self.nodes[f as usize].kind = NodeKind::And(na, nb);
                self.modified.push(f);
                let level = 1 + self.level(na.node()).max(self.level(nb.node()));
                self.nodes[f as usize].level = level;
                if n.node() > f {
                    self.ordered = false;
                }
                if forward.contains_key(&f) {
                    // already scheduled for removal
                    continue;
                }
                let collapsed = match trivial_and(na, nb) {
                    Some(l) => Some(l),
                    None => match self.strash.get(&(na, nb)) {
                        Some(&h) if h != f => Some(Lit::new(h, false)),
                        Some(_) => None,
                        None => {
                            self.strash.insert((na, nb), f);
                            None
                        }
                    },
                };
                if let Some(l) = collapsed {
                    self.pin(l);
                    queue.push_back((f, l));
                }
            }
            if self.nodes[o as usize].refs == 0 {
                self.delete_rec(o);
            }
            self.unpin(n);
        }
        before - self.live_ands
    }

    fn pin(&mut self, l: Lit) {
        self.nodes[l.node() as usize].refs += 1;
    }

    fn unpin(&mut self, l: Lit) {
        let n = l.node();
        let node = &mut self.nodes[n as usize];
        node.refs -= 1;
        if node.refs == 0 && matches!(node.kind, NodeKind::And(..)) {
            self.delete_rec(n);
        }
    }

    /// Deletes an unreferenced AND node and every fanin that becomes
    /// unreferenced as a result.
    fn delete_rec(&mut self, root: u32) -> usize {
        let mut count = 0;
        let mut stack = vec![root];
        while let Some(n) = stack.pop() {
            let NodeKind::And(a, b) = self.nodes[n as usize].kind else {
                continue;
            };
            debug_assert_eq!(self.nodes[n as usize].refs, 0);
            if self.strash.get(&(a, b)) == Some(&n) {
                self.strash.remove(&(a, b));
            }
            self.nodes[n as usize].kind = NodeKind::Dead;
            self.nodes[n as usize].fanouts.clear();
            self.live_ands -= 1;
            self.modified.push(n);
            count += 1;
            for f in [a.node(), b.node()] {
                let fi = &mut self.nodes[f as usize];
                fi.refs -= 1;
                if let Some(pos) = fi.fanouts.iter().position(|&x| x == n) {
                    fi.fanouts.swap_remove(pos);
                }
                if fi.refs == 0 && matches!(fi.kind, NodeKind::And(..)) {
                    stack.push(f);
                }
            }
        }
        count
    }

    /// Deletes an AND node that has no fanouts, together with its newly
    /// unreferenced cone. Returns the number of nodes removed.
    pub fn delete_dangling(&mut self, node: u32) -> usize {
        if self.is_and(node) && self.refs(node) == 0 {
            self.delete_rec(node)
        } else {
            0
        }
    }

    /// Removes every AND node not reachable from a primary output.
    pub fn cleanup(&mut self) -> usize {
        let mut removed = 0;
        for n in 0..self.nodes.len() as u32 {
            removed += self.delete_dangling(n);
        }
        removed
    }

    /// Primary inputs followed by live AND nodes, fanins before fanouts.
    pub fn topo_order(&self) -> Vec<u32> {
        let mut order: Vec<u32> = self.pis.clone();
        order.extend(self.and_order());
        order
    }

    /// Live AND nodes, fanins before fanouts.
    pub fn and_order(&self) -> Vec<u32> {
        if self.ordered {
            return (0..self.nodes.len() as u32)
                .filter(|&n| self.is_and(n))
                .collect();
        }
        let mut order = Vec::with_capacity(self.live_ands);
        let mut state = vec![0u8; self.nodes.len()];
        let mut stack: Vec<(u32, bool)> = Vec::new();
        for root in 0..self.nodes.len() as u32 {
            if !self.is_and(root) || state[root as usize] != 0 {
                continue;
            }
            stack.push((root, false));
            while let Some((n, expanded)) = stack.pop() {
                if expanded {
                    state[n as usize] = 2;
                    order.push(n);
                    continue;
                }
                if state[n as usize] != 0 {
                    continue;
                }
                state[n as usize] = 1;
                stack.push((n, true));
                let (a, b) = self.fanins(n).unwrap();
                for f in [b.node(), a.node()] {
                    if self.is_and(f) && state[f as usize] == 0 {
                        stack.push((f, false));
                    }
                }
            }
        }
        order
    }

    /// Restores exact levels and returns the maximum level over all nodes.
    pub fn recompute_levels(&mut self) -> u32 {
        let mut max = 0;
        for n in self.and_order() {
            let (a, b) = self.fanins(n).unwrap();
            let l = 1 + self.level(a.node()).max(self.level(b.node()));
            self.nodes[n as usize].level = l;
            max = max.max(l);
        }
        max
    }

    /// Largest level among primary outputs.
    pub fn depth(&self) -> u32 {
        let mut levels = vec![0u32; self.nodes.len()];
        for n in self.and_order() {
            let (a, b) = self.fanins(n).unwrap();
            levels[n as usize] = 1 + levels[a.node() as usize].max(levels[b.node() as usize]);
        }
        self.pos
            .iter()
            .map(|p| levels[p.node() as usize])
            .max()
            .unwrap_or(0)
    }

    /// Copies the graph without tombstones, AND nodes in topological index
    /// order. The second element maps old node indices to new literals.
    pub fn compact(&self) -> (Aig, Vec<Option<Lit>>) {
        let mut out = Aig::with_name(self.name.clone());
        out.symbols = self.symbols.clone();
        out.comment = self.comment.clone();
        let mut map: Vec<Option<Lit>> = vec![None; self.nodes.len()];
        map[0] = Some(Lit::FALSE);
        for &p in &self.pis {
            map[p as usize] = Some(out.add_pi());
        }
        for n in self.and_order() {
            let (a, b) = self.fanins(n).unwrap();
            let ma = map[a.node() as usize].unwrap().xor(a.is_compl());
            let mb = map[b.node() as usize].unwrap().xor(b.is_compl());
            map[n as usize] = Some(out.add_and_raw(ma, mb));
        }
        for &p in &self.pos {
            out.add_po(map[p.node() as usize].unwrap().xor(p.is_compl()));
        }
        (out, map)
    }

    /// Compacts in place.
    pub fn compact_in_place(&mut self) {
        if self.ordered && self.live_ands + self.pis.len() + 1 == self.nodes.len() {
            return;
        }
        *self = self.compact().0;
    }

    /// Returns a structurally hashed copy: duplicate and trivial AND nodes
    /// from raw construction are merged.
    pub fn strashed(&self) -> Aig {
        let mut out = Aig::with_name(self.name.clone());
        out.symbols = self.symbols.clone();
        out.comment = self.comment.clone();
        let mut map: Vec<Lit> = vec![Lit::FALSE; self.nodes.len()];
        for &p in &self.pis {
            map[p as usize] = out.add_pi();
        }
        for n in self.and_order() {
            let (a, b) = self.fanins(n).unwrap();
            let ma = map[a.node() as usize].xor(a.is_compl());
            let mb = map[b.node() as usize].xor(b.is_compl());
            map[n as usize] = out.add_and(ma, mb);
        }
        for &p in &self.pos {
            out.add_po(map[p.node() as usize].xor(p.is_compl()));
        }
        out.cleanup();
        out.compact().0
    }

    /// Bit-parallel simulation. `pi_words[i]` holds the patterns of PI `i`;
    /// all rows must have equal length. Returns one row per PO.
    pub fn simulate(&self, pi_words: &[Vec<u64>]) -> Vec<Vec<u64>> {
        assert_eq!(pi_words.len(), self.pis.len(), "one pattern row per PI");
        let width = pi_words.first().map_or(1, |w| w.len());
        let mut values: Vec<Vec<u64>> = vec![Vec::new(); self.nodes.len()];
        values[0] = vec![0; width];
        for (i, &p) in self.pis.iter().enumerate() {
            values[p as usize] = pi_words[i].clone();
        }
        for n in self.and_order() {
            let (a, b) = self.fanins(n).unwrap();
            let va = &values[a.node() as usize];
            let vb = &values[b.node() as usize];
            let ca = if a.is_compl() { !0 } else { 0 };
            let cb = if b.is_compl() { !0 } else { 0 };
            let v: Vec<u64> = va
                .iter()
                .zip(vb)
                .map(|(&x, &y)| (x ^ ca) & (y ^ cb))
                .collect();
            values[n as usize] = v;
        }
        self.pos
            .iter()
            .map(|p| {
                let c = if p.is_compl() { !0 } else { 0 };
                values[p.node() as usize].iter().map(|&w| w ^ c).collect()
            })
            .collect()
    }

    /// Evaluates all POs under a single input assignment.
    pub fn eval(&self, inputs: &[bool]) -> Vec<bool> {
        let rows: Vec<Vec<u64>> = inputs.iter().map(|&b| vec![b as u64]).collect();
        self.simulate(&rows)
            .into_iter()
            .map(|r| r[0] & 1 == 1)
            .collect()
    }

    /// Checks the structural invariants. Intended for tests and debug
    /// assertions.
    pub fn check(&self) -> std::result::Result<(), String> {
        let mut refs = vec![0u32; self.nodes.len()];
        let mut live = 0;
        for (i, node) in self.nodes.iter().enumerate() {
            if let NodeKind::And(a, b) = node.kind {
                live += 1;
                if a > b {
                    return Err(format!("node {i}: fanins out of order"));
                }
                for f in [a, b] {
                    if !self.is_live(f.node()) {
                        return Err(format!("node {i}: fanin {f:?} is dead"));
                    }
                    refs[f.node() as usize] += 1;
                    if self.ordered && f.node() as usize >= i {
                        return Err(format!("node {i}: fanin {f:?} not below it"));
                    }
                    let fo = &self.nodes[f.node() as usize].fanouts;
                    if !fo.contains(&(i as u32)) {
                        return Err(format!("node {i}: missing from fanouts of {f:?}"));
                    }
                }
            }
        }
        for p in &self.pos {
            if !self.is_live(p.node()) {
                return Err(format!("PO {p:?} references dead node"));
            }
            refs[p.node() as usize] += 1;
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if i != 0 && node.kind != NodeKind::Dead && node.refs != refs[i] {
                return Err(format!(
                    "node {i}: refs {} but {} users",
                    node.refs, refs[i]
                ));
            }
        }
        if live != self.live_ands {
            return Err(format!("live count {} != {}", self.live_ands, live));
        }
        for (&(a, b), &n) in &self.strash {
            if self.kind(n) != NodeKind::And(a, b) {
                return Err(format!("hash entry for {n} is stale"));
            }
        }
        // no two live hashed nodes share a fanin pair
        let mut pairs = FxHashMap::default();
        for (i, node) in self.nodes.iter().enumerate() {
            if let NodeKind::And(a, b) = node.kind {
                if let Some(&other) = pairs.get(&(a, b)) {
                    if !self.strash.contains_key(&(a, b)) {
                        return Err(format!("nodes {other} and {i} share fanins, none hashed"));
                    }
                }
                pairs.insert((a, b), i);
            }
        }
        if self.and_order().len() != self.live_ands {
            return Err("cycle detected".into());
        }
        Ok(())
    }

    /// Order-sensitive digest of node kinds, reference counts and outputs.
    pub fn checksum(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = rustc_hash::FxHasher::default();
        for n in &self.nodes {
            match n.kind {
                NodeKind::Const => 0u8.hash(&mut h),
                NodeKind::Pi => 1u8.hash(&mut h),
                NodeKind::And(a, b) => {
                    2u8.hash(&mut h);
                    a.hash(&mut h);
                    b.hash(&mut h);
                }
                NodeKind::Dead => 3u8.hash(&mut h),
            }
            n.refs.hash(&mut h);
        }
        self.pos.hash(&mut h);
        self.strash.len().hash(&mut h);
        h.finish()
    }
}

/// Constant and trivial AND rules. Expects `a <= b`.
#[inline]
pub(crate) fn trivial_and(a: Lit, b: Lit) -> Option<Lit> {
    if a == Lit::FALSE {
        Some(Lit::FALSE)
    } else if a == Lit::TRUE || a == b {
        Some(b)
    } else if a.node() == b.node() {
        Some(Lit::FALSE)
    } else {
        None
    }
}

fn resolve(forward: &FxHashMap<u32, Lit>, mut l: Lit) -> Lit {
    while let Some(&next) = forward.get(&l.node()) {
        l = next.xor(l.is_compl());
    }
    l
}

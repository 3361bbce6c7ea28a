// SPDX-License-Identifier: Apache-2.0
//! Per-pass statistics, root-set overlap and CSV reporting.

use std::collections::BTreeSet;
use std::io::Write;

use crate::error::Result;
use crate::orch::{NodeTrace, Op};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PassStats {
    pub design: String,
    pub pass: String,
    pub nodes_before: usize,
    pub nodes_after: usize,
    pub depth_before: u32,
    pub depth_after: u32,
    /// Nodes visited.
    pub total_iterations: usize,
    pub valid_rw: usize,
    pub valid_rs: usize,
    pub valid_rf: usize,
    /// Roots of valid iterations in traversal order, with the applied
    /// operation.
    pub roots: Vec<(u32, Op)>,
    /// Transformability checks performed.
    pub checks: usize,
    pub wall_ms: f64,
    pub trace: Vec<NodeTrace>,
}

impl PassStats {
    pub fn new(design: &str, pass: &str) -> PassStats {
        PassStats {
            design: design.to_string(),
            pass: pass.to_string(),
            ..PassStats::default()
        }
    }

    /// Counts a visited node and, when an operation was applied, attributes
    /// the valid iteration to it.
    pub fn record_iteration(&mut self, node: u32, applied: Option<Op>) {
        self.total_iterations += 1;
        if let Some(op) = applied {
            match op {
                Op::Rw => self.valid_rw += 1,
                Op::Rs => self.valid_rs += 1,
                Op::Rf => self.valid_rf += 1,
            }
            self.roots.push((node, op));
        }
    }

    pub fn valid_iterations(&self) -> usize {
        self.valid_rw + self.valid_rs + self.valid_rf
    }

    pub fn valid(&self, op: Op) -> usize {
        match op {
            Op::Rw => self.valid_rw,
            Op::Rs => self.valid_rs,
            Op::Rf => self.valid_rf,
        }
    }

    /// Root nodes of valid iterations.
    pub fn root_set(&self) -> BTreeSet<u32> {
        self.roots.iter().map(|&(n, _)| n).collect()
    }

    pub fn reduction_pct(&self) -> f64 {
        if self.nodes_before == 0 {
            0.0
        } else {
            100.0 * (self.nodes_before as f64 - self.nodes_after as f64) / self.nodes_before as f64
        }
    }

    /// Summarizes consecutive steps run on one design as a single row.
    pub fn combine(design: &str, pass: &str, steps: &[PassStats]) -> PassStats {
        let mut s = PassStats::new(design, pass);
        if let (Some(first), Some(last)) = (steps.first(), steps.last()) {
            s.nodes_before = first.nodes_before;
            s.depth_before = first.depth_before;
            s.nodes_after = last.nodes_after;
            s.depth_after = last.depth_after;
        }
        for st in steps {
            s.total_iterations += st.total_iterations;
            s.valid_rw += st.valid_rw;
            s.valid_rs += st.valid_rs;
            s.valid_rf += st.valid_rf;
            s.checks += st.checks;
            s.wall_ms += st.wall_ms;
        }
        s
    }
}

/// Root-set comparison of two runs on the same input graph.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Overlap {
    pub only_a: BTreeSet<u32>,
    pub only_b: BTreeSet<u32>,
    pub both: BTreeSet<u32>,
}

pub fn overlap(a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> Overlap {
    Overlap {
        only_a: a.difference(b).copied().collect(),
        only_b: b.difference(a).copied().collect(),
        both: a.intersection(b).copied().collect(),
    }
}

/// Overlap after truncating the longer run to the number of valid
/// iterations of the shorter one, keeping traversal order.
pub fn overlap_aligned(a: &PassStats, b: &PassStats) -> Overlap {
    let n = a.roots.len().min(b.roots.len());
    let sa = a.roots[..n].iter().map(|&(r, _)| r).collect();
    let sb = b.roots[..n].iter().map(|&(r, _)| r).collect();
    overlap(&sa, &sb)
}

pub const CSV_HEADER: [&str; 12] = [
    "design",
    "pass",
    "nodes_before",
    "nodes_after",
    "reduction_pct",
    "depth_before",
    "depth_after",
    "valid_rw",
    "valid_rs",
    "valid_rf",
    "total_iters",
    "wall_ms",
];

/// Writes rows as CSV. Without `timing` the wall-clock column is written
/// as 0 so that repeated runs produce identical bytes.
pub fn write_csv<W: Write>(out: W, rows: &[PassStats], timing: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let wall = if timing { r.wall_ms } else { 0.0 };
        w.write_record([
            r.design.clone(),
            r.pass.clone(),
            r.nodes_before.to_string(),
            r.nodes_after.to_string(),
            format!("{:.2}", r.reduction_pct()),
            r.depth_before.to_string(),
            r.depth_after.to_string(),
            r.valid_rw.to_string(),
            r.valid_rs.to_string(),
            r.valid_rf.to_string(),
            r.total_iterations.to_string(),
            format!("{wall:.3}"),
        ])?;
    }
    w.flush().map_err(|e| crate::error::Error::io("<csv>", e))?;
    Ok(())
}

pub fn emit_csv(rows: &[PassStats], timing: bool) -> Vec<u8> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows, timing).expect("writing to memory");
    buf
}

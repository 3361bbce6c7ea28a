// SPDX-License-Identifier: Apache-2.0
//! Pass scripts such as `b;rw;rwz;b` and the built-in flows.

use std::fmt;
use std::time::Instant;

use crate::aig::Aig;
use crate::balance::balance;
use crate::cec::{self, CecResult};
use crate::error::{Error, Result};
use crate::orch::{Op, Optimizer, Params, Policy, PolicyKind};
use crate::stats::PassStats;

pub const MIN_RESUB_LEAVES: usize = 5;
pub const MAX_RESUB_LEAVES: usize = 16;

/// Built-in scripts by name.
pub const BUILTINS: [(&str, &str); 6] = [
    ("resyn", "b;rw;rwz;b;rwz;b"),
    ("resyn3", "b;rs;rs -K 6;b;rsz;rsz -K 6;b;rsz -K 5;b"),
    ("o-resyn", "b;o1;z1;b;z1;b"),
    ("o-resyn3", "b;o3;o3 -K 6;b;z3;z3 -K 6;b;z3 -K 5;b"),
    ("lgp-resyn", "b;lgp;lgpz;b;lgpz;b"),
    (
        "lgp-resyn3",
        "b;lgp;lgp -K 6;b;lgpz;lgpz -K 6;b;lgpz -K 5;b",
    ),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Balance,
    Pass(Policy),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub command: Command,
    /// Resubstitution window size.
    pub k: Option<usize>,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.command {
            Command::Balance => write!(f, "b")?,
            Command::Pass(p) => write!(f, "{p}")?,
        }
        if let Some(k) = self.k {
            write!(f, " -K {k}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FlowScript {
    pub steps: Vec<Step>,
}

impl fmt::Display for FlowScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

fn uses_resub(policy: &Policy) -> bool {
    match &policy.kind {
        PolicyKind::LocalGreedy => true,
        PolicyKind::Priority(ops) => ops.contains(&Op::Rs),
    }
}

fn parse_step(text: &str) -> Result<Vec<Step>> {
    let mut words = text.split_ascii_whitespace();
    let Some(name) = words.next() else {
        return Ok(Vec::new());
    };
    let name = name.to_ascii_lowercase();
    let mut k = None;
    while let Some(w) = words.next() {
        if w != "-K" {
            return Err(Error::BadRecipe(format!(
                "unknown parameter `{w}` in `{text}`"
            )));
        }
        let v = words
            .next()
            .ok_or_else(|| Error::BadRecipe(format!("-K needs a value in `{text}`")))?;
        let v: usize = v
            .parse()
            .map_err(|_| Error::BadRecipe(format!("bad -K value `{v}`")))?;
        if !(MIN_RESUB_LEAVES..=MAX_RESUB_LEAVES).contains(&v) {
            return Err(Error::BadRecipe(format!(
                "-K {v} outside {MIN_RESUB_LEAVES}..={MAX_RESUB_LEAVES}"
            )));
        }
        k = Some(v);
    }
    if let Some((_, body)) = BUILTINS.iter().find(|(n, _)| *n == name) {
        if k.is_some() {
            return Err(Error::BadRecipe(format!("`{name}` takes no parameters")));
        }
        return Ok(parse_script(body)?.steps);
    }
    let command = match name.as_str() {
        "b" | "balance" => Command::Balance,
        other => Command::Pass(other.parse()?),
    };
    if k.is_some() {
        let ok = matches!(&command, Command::Pass(p) if uses_resub(p));
        if !ok {
            return Err(Error::BadRecipe(format!("`{name}` does not take -K")));
        }
    }
    Ok(vec![Step { command, k }])
}

/// Parses `cmd [-K n]; cmd ...`. Built-in script names may appear as
/// commands.
pub fn parse_script(text: &str) -> Result<FlowScript> {
    let mut steps = Vec::new();
    for part in text.split(';') {
        steps.extend(parse_step(part)?);
    }
    Ok(FlowScript { steps })
}

#[derive(Clone, Debug, Default)]
pub struct FlowOptions {
    pub params: Params,
    /// Check the result against the input at the end.
    pub verify: Option<cec::Mode>,
}

#[derive(Clone, Debug)]
pub struct FlowResult {
    pub aig: Aig,
    pub steps: Vec<PassStats>,
    pub cec: Option<CecResult>,
}

/// Runs one step in place.
pub fn run_step(aig: &mut Aig, step: &Step, params: &Params) -> PassStats {
    let mut stats = match &step.command {
        Command::Balance => {
            let start = Instant::now();
            let mut s = PassStats::new(aig.name(), "b");
            s.nodes_before = aig.size();
            s.depth_before = aig.depth();
            *aig = balance(aig);
            s.depth_after = aig.depth();
            s.wall_ms = start.elapsed().as_secs_f64() * 1e3;
            s
        }
        Command::Pass(policy) => {
            let mut p = params.clone();
            if let Some(k) = step.k {
                p.rs_leaves = k;
            }
            let mut opt = Optimizer::new(p);
            opt.run(aig, policy)
        }
    };
    stats.pass = step.to_string();
    aig.cleanup();
    aig.compact_in_place();
    stats.nodes_after = aig.size();
    stats.depth_after = aig.depth();
    stats
}

/// Runs `script` on a structurally hashed copy of `input`.
pub fn run_flow(input: &Aig, script: &FlowScript, opts: &FlowOptions) -> Result<FlowResult> {
    let mut aig = input.strashed();
    let mut steps = Vec::with_capacity(script.steps.len());
    for step in &script.steps {
        steps.push(run_step(&mut aig, step, &opts.params));
    }
    let cec = match opts.verify {
        Some(mode) => Some(cec::check(input, &aig, mode)?),
        None => None,
    };
    Ok(FlowResult { aig, steps, cec })
}

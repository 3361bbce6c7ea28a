// SPDX-License-Identifier: Apache-2.0
//! Technology-independent optimization of And-Inverter Graphs.
//!
//! The crate provides the graph ([`aig`]), AIGER I/O ([`aiger`]), the
//! DAG-aware transformations rewrite ([`rewrite`]), refactor
//! ([`refactor`]), resubstitution ([`resub`]) and balancing ([`balance`]),
//! and drivers that combine the transformations within a single traversal
//! under a greedy or a priority-ordered policy ([`orch`]). Flows chain
//! passes ([`flow`]), results are verified by simulation ([`cec`]) and
//! summarized as CSV ([`stats`]).
//!
//! ```
//! use aig_orch::{aiger, flow, cec};
//!
//! let g = aiger::parse(b"aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n").unwrap();
//! let script = flow::parse_script("resyn").unwrap();
//! let out = flow::run_flow(&g, &script, &flow::FlowOptions::default()).unwrap();
//! assert!(cec::check(&g, &out.aig, cec::Mode::Exhaustive).unwrap().is_equivalent());
//! ```

pub mod aig;
pub mod aiger;
pub mod balance;
pub mod benchmarks;
pub mod cec;
pub mod cut;
pub mod error;
pub mod flow;
pub mod npn;
pub mod orch;
pub mod recipe;
pub mod refactor;
pub mod resub;
pub mod rewrite;
pub mod sop;
pub mod stats;
pub mod testgen;
pub mod truth;

pub use aig::{Aig, Lit, Mffc, NodeKind};
pub use error::{Error, Result};
pub use orch::{GainVector, Op, Optimizer, Params, Policy, PolicyKind};
pub use stats::PassStats;

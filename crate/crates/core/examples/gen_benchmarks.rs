// SPDX-License-Identifier: Apache-2.0
//! Writes the bundled designs as binary AIGER files.
//!
//! ```text
//! cargo run --example gen_benchmarks -- crates/core/benchmarks
//! ```

use std::path::PathBuf;

fn main() -> aig_orch::Result<()> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "benchmarks".to_string()),
    );
    std::fs::create_dir_all(&dir).map_err(|e| aig_orch::Error::io(&dir, e))?;
    for g in aig_orch::benchmarks::all() {
        let path = dir.join(format!("{}.aig", g.name()));
        aig_orch::aiger::write_file(&path, &g)?;
        println!(
            "{}: {} inputs, {} outputs, {} ands, depth {}",
            path.display(),
            g.num_pis(),
            g.num_pos(),
            g.size(),
            g.depth()
        );
    }
    Ok(())
}

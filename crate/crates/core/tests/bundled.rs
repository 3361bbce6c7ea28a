// SPDX-License-Identifier: Apache-2.0
//! The checked-in benchmark files are exactly what the generators produce.

use std::path::Path;

use aig_orch::{aiger, benchmarks};

#[test]
fn files_match_generators() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("benchmarks");
    let designs = benchmarks::all();
    assert_eq!(designs.len(), 10);
    let mut on_disk: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".aig"))
        .collect();
    on_disk.sort();
    let mut expected: Vec<String> = designs
        .iter()
        .map(|g| format!("{}.aig", g.name()))
        .collect();
    expected.sort();
    assert_eq!(on_disk, expected);
    for g in &designs {
        let bytes = std::fs::read(dir.join(format!("{}.aig", g.name()))).unwrap();
        assert_eq!(bytes, aiger::write_binary(g), "{} is stale", g.name());
        assert!(g.size() <= 2000);
    }
    let narrow = designs.iter().filter(|g| g.num_pis() <= 16).count();
    assert_eq!(narrow, 9);
}

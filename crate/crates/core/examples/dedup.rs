//! Enumerates hard diagrams at one crossing number and groups them up to sphere
//! isotopy, mirror image and switch.
//!
//! cargo run --release --example dedup -- 8 0

use std::collections::BTreeMap;

use chdiag::pipeline::dedup_spherical_mirror;
use chdiag::{run_enumeration, DiagramRecord, RunConfig};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().expect("integer"));
    let n = args.next().unwrap_or(7);
    let mut config = RunConfig::new(n);
    config.markers = args.next().map(|m| vec![m]);
    let out = run_enumeration(&config).expect("enumeration");

    let mut by_class: BTreeMap<(usize, String), Vec<DiagramRecord>> = BTreeMap::new();
    for r in out.records {
        by_class.entry((r.m, r.class().to_string())).or_default().push(r);
    }
    for ((m, class), records) in &by_class {
        let groups = dedup_spherical_mirror(records).expect("records parse");
        println!("m={m} {class}: {} diagrams, {} classes", records.len(), groups.len());
        for g in groups {
            println!("  {} (x{})", records[g[0]].name, g.len());
        }
    }
}

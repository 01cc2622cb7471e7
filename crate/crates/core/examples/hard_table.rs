//! Counts hard prime diagrams per marked-vertex count and prints the table.
//!
//! cargo run --release --example hard_table -- 3 8

use std::collections::BTreeMap;
use std::time::Instant;

use chdiag::pipeline::{run_enumeration, hard_table, RunConfig};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().expect("integer"));
    let lo = args.next().unwrap_or(3);
    let hi = args.next().unwrap_or(7);
    let mut rows = BTreeMap::new();
    for n in lo..=hi {
        let start = Instant::now();
        let out = run_enumeration(&RunConfig::new(n)).expect("enumeration");
        eprintln!("n={n}: {} diagrams over {} shadows in {:.1?}", out.summary.diagrams, out.summary.shadows, start.elapsed());
        rows.insert(n, out.summary.hard);
    }
    print!("{}", hard_table(&rows));
}

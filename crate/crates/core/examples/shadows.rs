//! Enumerates prime reduced link shadows and prints the count per crossing number.
//!
//! cargo run --release --example shadows -- 9

use std::time::Instant;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let start = Instant::now();
    for level in chdiag::shadows::shadow_levels(max).expect("n >= 2") {
        println!("n={:>2}  S={:>6}  ({:.1?})", level.n, level.len(), start.elapsed());
    }
}

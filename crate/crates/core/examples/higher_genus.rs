//! Builds the periodic hard diagrams of orientable genus 2k - 1 and checks them.
//!
//! cargo run --release --example higher_genus -- 4

use chdiag::family::higher_genus_hard_diagram;
use chdiag::{is_admissible, is_hard, SurfaceClass};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for k in 1..=max {
        let code = higher_genus_hard_diagram(k).expect("k >= 1");
        let class = SurfaceClass::of_code(&code);
        println!(
            "k={k} n={} admissible={} hard={} surface {class} genus {}",
            code.len(),
            is_admissible(&code).unwrap(),
            is_hard(&code).unwrap(),
            (2 - class.euler) / 2
        );
        println!("  {code}");
    }
}

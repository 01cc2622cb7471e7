//! Kauffman bracket and writhe of the two resolutions of a marked diagram.
//!
//! cargo run --example bracket -- "X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]"

use chdiag::invariants::{is_trivial_unlink, kauffman_bracket, unlink_bracket, writhe, PdCode};
use chdiag::resolution::{resolve, Sign};
use chdiag::EpdCode;

fn report(label: &str, pd: &PdCode) {
    let bracket = kauffman_bracket(pd).expect("small enough");
    let w = writhe(pd);
    let c = chdiag::invariants::component_count(pd);
    println!("{label}: {} crossings, {c} components, writhe {w}", pd.len());
    println!("  <D> = {bracket}");
    println!("  unlink would give {}", unlink_bracket(c, w));
    if let Ok(t) = is_trivial_unlink(pd) {
        println!("  trivial: {t}");
    }
}

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]".to_string());
    let code: EpdCode = text.parse().expect("valid EPD code");
    if code.is_classical() {
        report("diagram", &PdCode::from_epd(&code).unwrap());
    } else {
        for sign in [Sign::Plus, Sign::Minus] {
            report(&format!("{sign:?}"), &resolve(&code, sign).diagram);
        }
    }
}

//! Draws a diagram as SVG.
//!
//! cargo run --example render -- 'Y[1,6,2,5],Y[4,8,1,5],Z[6,3,7,2],Y[3,8,4,7]' torus.svg

use chdiag::render::render_svg;
use chdiag::EpdCode;

const SPHERE_AND_P2: &str = "X[1, 5, 2, 4], X[18, 10, 19, 1], Y[5, 19, 6, 20], X[14, 2, 15, 3], X[3, 13, 4, 14], X[17, 12, 18, 13], X[9, 6, 10, 7], X[20, 16, 17, 15], X[7, 12, 8, 11], X[16, 9, 11, 8]";

fn main() {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| SPHERE_AND_P2.to_string());
    let out = args.next().unwrap_or_else(|| "diagram.svg".to_string());
    let code: EpdCode = text.parse().unwrap_or_else(|e| panic!("bad code: {e}"));
    std::fs::write(&out, render_svg(&code)).expect("write svg");
    println!("wrote {out} ({} crossings, {} marked)", code.len(), code.marker_count());
}

//! Classifies a marked graph diagram given as an EPD code.
//!
//! cargo run --example classify -- "X[1,5,2,4], Y[5,19,6,20], ..."

use chdiag::moves::{geometric_move_oracle, Move};
use chdiag::resolution::{resolve, Sign};
use chdiag::{DiagramRecord, EpdCode};

const EXAMPLE: &str = "X[1, 5, 2, 4], X[18, 10, 19, 1], Y[5, 19, 6, 20], X[14, 2, 15, 3], X[3, 13, 4, 14], \
                       X[17, 12, 18, 13], X[9, 6, 10, 7], X[20, 16, 17, 15], X[7, 12, 8, 11], X[16, 9, 11, 8]";

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| EXAMPLE.to_string());
    let code: EpdCode = text.parse().expect("valid EPD code");

    for sign in [Sign::Plus, Sign::Minus] {
        let r = resolve(&code, sign);
        println!("{sign:?} resolution: {} crossings, {} free circles", r.diagram.len(), r.diagram.circles);
    }
    for kind in Move::ALL {
        match geometric_move_oracle(&code, kind) {
            Some(w) => println!("{kind} applies at crossings {:?}", w.crossings),
            None => println!("{kind} does not apply"),
        }
    }
    let record = DiagramRecord::classify(&code, 1).expect("within bracket limits");
    println!("admissible={} hard={}", record.admissible, record.hard);
    println!("surface {}  name {}", record.class(), record.name);
}

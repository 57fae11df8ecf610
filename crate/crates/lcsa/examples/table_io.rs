//! The declarative text format for generator tables, and the term grammar
//! shared by the polynomial and element parsers.

use lcsa::conformal::GeneratorTable;
use lcsa::rw::build_rw;
use lcsa::superpoly::{Signature, SuperPolynomial};

fn main() {
    let t = build_rw(1, 0);
    let text = t.to_text();
    println!("RW(1,0) in the declarative format:\n{text}");
    let back = GeneratorTable::parse(t.sig, &text).unwrap();
    println!("parse(print(table)) == table: {}\n", back == t);

    let sig = Signature::new(4, 4);
    for src in ["-1/2*l5*d6", "1*y1*y1*y5 + 3/4*dy7", "0"] {
        let p = SuperPolynomial::parse(sig, src).unwrap();
        println!("parse {src:<22} -> prints as {}", p.text());
    }

    // a slice of the RW(4,4) table
    let t = build_rw(4, 4);
    for line in t.to_text().lines().take(12) {
        println!("{line}");
    }
    println!("…");
}

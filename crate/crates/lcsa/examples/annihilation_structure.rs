//! The annihilation algebra of RE(4,4): normal forms, the spanning set,
//! its grading, the scalar table, and the supertrace character.

use lcsa::annihilation::{
    character_chi, re_span_element, re_y_alpha, span_reduce, Ann,
};
use lcsa::conformal::Element;
use lcsa::rational::rat;
use lcsa::re44::Re44;
use lcsa::rw::build_rw;
use lcsa::superpoly::{SuperMonomial, SuperPolynomial, Symbol};

fn main() {
    let re = Re44::new(build_rw(4, 4));
    let rw = build_rw(4, 4);
    let ann = Ann::new(&rw);
    let sig = re.sig();

    println!("y5y6y7y8 · alpha_i in annihilation normal form:");
    for i in 1..=8u8 {
        let e = re_span_element(&re, &SuperMonomial::one(), i);
        println!("  i = {i}: {}", e.text(&rw.gens));
    }

    // elements with fewer than four odd y's vanish: depth 2
    let m = SuperPolynomial::from_word(sig, &[Symbol::y(5), Symbol::y(6), Symbol::y(7)], rat(1))
        .unwrap()
        .terms()
        .next()
        .unwrap()
        .0
        .clone();
    println!(
        "\ny5y6y7 · alpha5 reduces to {} terms (degree −4 component is empty)",
        re_y_alpha(&re, &m, 5).num_terms()
    );

    // the worked spanning-set rewriting
    let input_mono = SuperPolynomial::from_word(
        sig,
        &[Symbol::y(1), Symbol::y(2), Symbol::y(5), Symbol::y(6), Symbol::y(7)],
        rat(1),
    )
    .unwrap()
    .terms()
    .next()
    .unwrap()
    .0
    .clone();
    let input = Element::from_parts(sig, input_mono, 5, rat(1));
    let span = span_reduce(&re, &input).unwrap();
    println!("\ny1y2y5y6y7 · alpha6 in spanning form:");
    for ((mono, alpha), c) in &span.terms {
        println!("  {c} · {mono:?} · y5y6y7y8 · alpha{alpha}");
    }

    // the character vanishes on the degree-0 component
    let x = re_span_element(&re, &SuperMonomial::from_symbol(&sig, Symbol::y(1)), 1);
    println!(
        "\nsupertrace character on y1·y5y6y7y8·alpha1: {}",
        character_chi(&ann, &x).unwrap()
    );
}

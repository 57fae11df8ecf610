//! The vector-field model of E(4,4), the embedding Φ into W(4,4), and the
//! isomorphism Ψ onto the annihilation algebra of RE(4,4).

use lcsa::geometry::{e44_bracket, phi_embed, psi_iso, vf_bracket, w_to_ann, E44Element};
use lcsa::rational::rat;
use lcsa::re44::Re44;
use lcsa::rw::build_rw;
use lcsa::superpoly::{Signature, SuperPolynomial, Symbol};

fn main() {
    let sig = Signature::new(4, 4);
    let re = Re44::new(build_rw(4, 4));
    let x = |i: u8| SuperPolynomial::symbol(sig, Symbol::y(i));

    // a bracket in the geometric model: [dx1, x3 dx2] = ∂/∂x4
    let u = E44Element::one_form(sig, 1, &SuperPolynomial::one(sig));
    let v = E44Element::one_form(sig, 2, &x(3));
    println!("[dx1, x3·dx2] = {}", e44_bracket(&u, &v).text());

    // images under Φ
    for (label, e) in [
        ("d/dx1", E44Element::vector_field(sig, 1, &SuperPolynomial::one(sig))),
        ("x2·d/dx1", E44Element::vector_field(sig, 1, &x(2))),
        ("x1x2·dx3", E44Element::one_form(sig, 3, &x(1).mul(&x(2)))),
    ] {
        println!("\nΦ({label}) = {}", phi_embed(&e).text());
    }

    // Φ is a homomorphism
    let a = E44Element::vector_field(sig, 2, &x(2));
    let b = E44Element::one_form(sig, 3, &x(1).mul(&x(4)));
    let lhs = phi_embed(&e44_bracket(&a, &b));
    let rhs = vf_bracket(&phi_embed(&a), &phi_embed(&b));
    println!("\nΦ([x2·d/dx2, x1x4·dx3]) equals [Φ(x2·d/dx2), Φ(x1x4·dx3)]: {}", lhs == rhs);

    // Ψ maps into the annihilation algebra and factors through Φ
    let gens = &re.rw.gens;
    let e = E44Element::vector_field(sig, 1, &x(1));
    let via_psi = psi_iso(&e, &re);
    let via_phi = w_to_ann(&phi_embed(&e));
    println!("\nΨ(x1·d/dx1) = {}", via_psi.text(gens));
    println!("φ(Φ(x1·d/dx1)) = {}", via_phi.text(gens));
    let scaled = e.scale(&rat(2));
    println!("Ψ is linear: Ψ(2u) = 2Ψ(u): {}", psi_iso(&scaled, &re) == via_psi.scale(&rat(2)));
}

//! Conformal modules, the conformal dual, and the duality functor laws on a
//! rank-1 module and its parity shift.

use lcsa::modules::{
    dual_action, dual_m2_defect, dual_morphism, ConformalModule, DualElement, Morphism,
};
use lcsa::conformal::OutFam;
use lcsa::rational::rat;
use lcsa::rw::build_rw;
use lcsa::superpoly::SuperPolynomial;

fn main() {
    let alg = build_rw(1, 0);
    let m = ConformalModule::rank1(&alg, rat(1), false);
    let a = alg.generator(0);

    println!(
        "rank-1 module, weight 1: a_λ v = {}",
        m.action[0][0].text(&m.gens)
    );
    let d = m.m2_defect(&alg, &a, &a, &m.generator(0)).unwrap();
    println!("module composition axiom defect: {} terms", d.num_terms());

    // the dual action on the dual basis functional
    let f = DualElement::dual_basis(&m, 0);
    let af = dual_action(&alg, &m, &a, &f, OutFam::Lambda);
    println!("\n(a_λ f) as a value table: f ↦ [{}]", af.values[0].text());
    let d = dual_m2_defect(&alg, &m, &a, &a, &f).unwrap();
    println!(
        "dual module composition axiom defect: [{}]",
        d.values.iter().map(|p| p.text()).collect::<Vec<_>>().join(", ")
    );

    // functor laws on the module plus its parity shift
    let m2 = ConformalModule::rank1_with_shift(&alg, rat(1));
    let sig = m2.sig;
    let z = SuperPolynomial::zero(sig);
    let odd = |c: i128| Morphism {
        odd: true,
        mat: vec![
            vec![z.clone(), SuperPolynomial::constant(sig, rat(c))],
            vec![SuperPolynomial::constant(sig, rat(1)), z.clone()],
        ],
    };
    let s = odd(2);
    let t = odd(3);
    let st = Morphism::compose(&s, &t);
    let f = DualElement::dual_basis(&m2, 0);
    let lhs = dual_morphism(&st, &m2, &m2, &f);
    let rhs = dual_morphism(&t, &m2, &m2, &dual_morphism(&s, &m2, &m2, &f)).scale(&rat(-1));
    println!(
        "\nodd S, T: (S∘T)^dual = −T^dual∘S^dual on the dual basis: {}",
        lhs.values == rhs.values
    );
}

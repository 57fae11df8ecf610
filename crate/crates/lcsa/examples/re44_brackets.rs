//! Expands the α generators of RE(4,4) inside RW(4,4), checks the rewriting
//! relations, and compares the closed-form bracket against the full
//! sesquilinear expansion.

use lcsa::re44::Re44;
use lcsa::rw::build_rw;

fn main() {
    let re = Re44::new(build_rw(4, 4));
    for i in [1u8, 5] {
        let a = re.alpha(i);
        println!("alpha{i}: {} terms, degree -10", a.num_terms());
    }
    println!("\nalpha1 = {}\n", re.alpha(1).text(&re.rw.gens));

    // the rewriting relations
    for (k, i, j) in [(1u8, 5u8, 0u8), (5, 5, 6), (4, 7, 0)] {
        let d = re.relation_defect(k, i, j).unwrap();
        println!("relation {k} at (i,j) = ({i},{j}): defect has {} terms", d.num_terms());
    }

    // closed form versus expansion
    println!();
    for (i, j) in [(5u8, 5u8), (1, 1), (2, 7)] {
        let lhs = re.expanded_bracket(i, j);
        let rhs = re.closed_form_bracket(i, j);
        println!(
            "[alpha{i} λ alpha{j}]: expansion {} terms, closed form {} terms, equal: {}",
            lhs.num_terms(),
            rhs.num_terms(),
            lhs == rhs
        );
    }
    println!(
        "\n[alpha5 λ alpha5] = {}",
        re.expanded_bracket(5, 5).text(&re.rw.gens)
    );

    // coordinates over the free F[∂1..∂4]-basis
    let coords = re.coordinates(re.alpha(3)).unwrap();
    println!(
        "\ncoordinates of alpha3: [{}]",
        coords
            .coords
            .iter()
            .map(|f| f.text())
            .collect::<Vec<_>>()
            .join(", ")
    );
}

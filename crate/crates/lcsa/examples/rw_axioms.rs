//! Builds RW(4,4) and machine-checks the conformal axioms on its generators.

use lcsa::harness::{run_suite, SuiteOptions};
use lcsa::rw::build_rw;

fn main() {
    let t = build_rw(4, 4);
    println!("RW(4,4): {} generators, {} bracket entries\n", t.len(), t.len() * t.len());
    println!("sample brackets:");
    for (i, j) in [(0usize, 1usize), (0, 0), (4, 4), (0, 4)] {
        println!(
            "  [{} λ {}] = {}",
            t.gens[i].name,
            t.gens[j].name,
            t.entry(i, j).text(&t.gens)
        );
    }
    println!("\nskew-symmetry defect for (a1, a5): {}",
        t.skew_defect(&t.generator(0), &t.generator(4)).unwrap().text(&t.gens));
    println!(
        "Jacobi defect for (a5, a6, a7):    {}",
        t.jacobi_defect(&t.generator(4), &t.generator(5), &t.generator(6))
            .unwrap()
            .text(&t.gens)
    );

    let report = run_suite("rw-axioms", &SuiteOptions::default()).unwrap();
    println!(
        "\nfull axiom suite: {} cases, {} passed, {} failed",
        report.summary.total, report.summary.passed, report.summary.failed
    );
}

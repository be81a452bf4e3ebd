//! Matrix factorizations of x^3 and the syzygy-duality theorems for
//! G-perfect modules, checked on the default parameter grid.

use selfdual::algebra::QuotientRing;
use selfdual::resolution::{GradedMatrix, ModulePresentation};
use selfdual::theorems::{
    make_matrix_factorization, mf_module, mf_transpose, verify_ep_theorems, Certificate, EpParams,
};

fn main() -> selfdual::Result<()> {
    let s = QuotientRing::polynomial_ring(101, &["x", "y"], None)?;
    let p = |t: &str| s.parse(t).unwrap();
    let phi = GradedMatrix::new(
        &s,
        vec![1, 1],
        vec![3, 2],
        vec![vec![p("x^2"), p("-y")], vec![p("0"), p("x")]],
    )?;
    let psi = GradedMatrix::new(
        &s,
        vec![3, 2],
        vec![4, 4],
        vec![vec![p("x"), p("y")], vec![p("0"), p("x^2")]],
    )?;
    let mf = make_matrix_factorization(&s, &phi, &psi, &p("x^3"))?;
    println!("phi*psi = x^3 E: {}", phi.compose(&s, &psi)?.format(&s));

    let m = mf_module(&mf)?;
    let t = mf_module(&mf_transpose(&mf)?)?;
    println!("coker phi   = {}", m.format());
    println!("coker phi^T = {}", t.format());

    let rep = verify_ep_theorems(
        &m,
        Certificate::MatrixFactorization(&mf),
        EpParams::default(),
    )?;
    println!(
        "\ncertificate {} grade {} period {:?}",
        rep.certificate, rep.grade, rep.period
    );
    for c in &rep.forward {
        println!("  forward  i={} m={}: {}", c.i, c.m, c.holds);
    }
    let premises = rep.converse.iter().filter(|c| c.premise).count();
    println!(
        "  converse: {} of {} premises hold, all conclusions verified: {}",
        premises,
        rep.converse.len(),
        rep.converse.iter().all(|c| c.periodic != Some(false))
    );
    println!("all verified: {}", rep.all_verified());

    let ci = ModulePresentation::cyclic(&s, &[p("x^2"), p("y^3")])?;
    let rep = verify_ep_theorems(&ci, Certificate::Perfect, EpParams::default())?;
    println!("\nF[x,y]/(x^2,y^3): grade {}", rep.grade);
    for l in &rep.lemma {
        println!(
            "  Omega^g N ~ Omega^{i}((Omega^{i} M)*): {}",
            l.holds,
            i = l.i
        );
    }
    println!("all verified: {}", rep.all_verified());
    Ok(())
}

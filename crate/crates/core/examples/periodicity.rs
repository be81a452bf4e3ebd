//! Eventually periodic resolutions: k over F[x]/(x^2) has period 1, and the
//! cokernel of a matrix factorization of x^3 has period 2 with differentials
//! alternating between the two factors.

use selfdual::algebra::QuotientRing;
use selfdual::duality::residue_field;
use selfdual::resolution::{resolve, GradedMatrix, ModulePresentation};
use selfdual::theorems::detect_periodicity;

fn main() -> selfdual::Result<()> {
    let a = QuotientRing::new(101, &["x"], &[1], &["x^2"])?;
    let rep = detect_periodicity(&residue_field(&a), 6, 4, 32, 0)?;
    println!(
        "k over F[x]/(x^2): {:?}, ranks {:?}",
        rep.verdict, rep.betti
    );

    let r = QuotientRing::new(101, &["x", "y"], &[1, 1], &["x^3"])?;
    let p = |t: &str| r.parse(t).unwrap();
    let phi = GradedMatrix::new(
        &r,
        vec![1, 1],
        vec![3, 2],
        vec![vec![p("x^2"), p("-y")], vec![p("0"), p("x")]],
    )?;
    let m = ModulePresentation::coker(&r, &phi)?;
    let rep = detect_periodicity(&m, 6, 4, 32, 0)?;
    println!(
        "coker phi over F[x,y]/(x^3): {:?}, ranks {:?}",
        rep.verdict, rep.betti
    );

    let (f, pd) = resolve(&m, 5)?;
    println!("{pd:?}");
    for (i, d) in f.differentials().iter().enumerate() {
        println!("d{} = {}", i + 1, d.format(&r));
    }
    Ok(())
}

//! The Koszul resolution of the residue field of F_101[x,y,z] is self-dual.
//!
//! Prints the Betti table, the chain isomorphism F* -> F(3) and the
//! syzygy-duality probe with m = n = 2.

use selfdual::algebra::QuotientRing;
use selfdual::duality::{is_self_dual_resolution, residue_field, syzygy_dual_probe};
use selfdual::resolution::resolve;

fn main() -> selfdual::Result<()> {
    let s = QuotientRing::polynomial_ring(101, &["x", "y", "z"], None)?;
    let k = residue_field(&s);

    let (f, pd) = resolve(&k, 5)?;
    println!("resolution of k, {pd:?}");
    print!("{}", f.betti());
    for (i, d) in f.differentials().iter().enumerate() {
        println!("d{} = {}", i + 1, d.format(&s));
    }

    let rep = is_self_dual_resolution(&k, 32, 0)?;
    println!(
        "\nself-dual: {} (shift {:?}, theorem route {}, defect {})",
        rep.verdict, rep.shift, rep.theorem_route, rep.defect
    );
    for (j, a) in rep.witness.iter().enumerate() {
        println!("alpha_{j} = {}", a.format(&s));
    }

    let probe = syzygy_dual_probe(&k, 2, 2, 32, 0)?;
    println!(
        "\n(Omega^2 k)* = Omega^2 k: {:?}, shift {:?}",
        probe.hypothesis, probe.shift
    );
    println!(
        "grade = pd = m + n - 1: {:?}",
        probe.grade_equals_pd_equals_m_plus_n_minus_1
    );
    println!("conclusions hold: {}", probe.consistent());
    Ok(())
}

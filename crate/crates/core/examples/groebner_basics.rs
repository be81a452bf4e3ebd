//! Gröbner bases of submodules, normal forms, syzygies and lifting.

use selfdual::algebra::QuotientRing;
use selfdual::groebner::{buchberger, Lifter, Vector};

fn main() -> selfdual::Result<()> {
    let r = QuotientRing::new(101, &["x", "y", "z"], &[1, 1, 1], &["x*z - y^2"])?;
    let p = |t: &str| r.parse(t).unwrap();
    let v = |es: &[&str]| Vector::from_components(&es.iter().map(|e| p(e)).collect::<Vec<_>>());

    let gens = vec![v(&["x", "y"]), v(&["y", "z"])];
    let gb = buchberger(&r, &[0, 0], &gens)?;
    println!("Gröbner basis of <(x,y), (y,z)> in R^2, R = F[x,y,z]/(xz - y^2):");
    // The basis lives over F[x,y,z] and includes I·R^2; skip what is zero in R.
    for g in gb
        .generators()
        .iter()
        .filter(|g| !r.reduce_vector(g).is_zero())
    {
        println!(
            "  {:?}",
            g.components(2)
                .iter()
                .map(|c| r.format(c))
                .collect::<Vec<_>>()
        );
    }
    println!(
        "dimension of the quotient in degrees 0..4: {:?}",
        (0..5).map(|d| gb.quotient_dimension(d)).collect::<Vec<_>>()
    );

    let target = v(&["x*y", "y^2"]);
    let nf = gb.normal_form(&target)?;
    println!("normal form of (xy, y^2): zero = {}", nf.is_zero());

    let lifter = Lifter::new(&r, &[0, 0], &[1, 1], &gens)?;
    let coeffs = lifter.lift(&target).expect("in the image");
    println!(
        "(xy, y^2) = {} (x,y) + {} (y,z)",
        r.format(&coeffs.component(0)),
        r.format(&coeffs.component(1))
    );
    println!("syzygies of the generators:");
    for s in lifter.syzygies() {
        println!(
            "  {:?}",
            s.components(2)
                .iter()
                .map(|c| r.format(c))
                .collect::<Vec<_>>()
        );
    }
    Ok(())
}

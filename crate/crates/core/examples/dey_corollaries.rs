//! When is the dual of a syzygy of k isomorphic to the syzygy itself?
//!
//! Below the depth this forces a regular ring of odd depth 2i - 1; at or
//! above the depth it singles out hypersurfaces of even depth.

use selfdual::algebra::QuotientRing;
use selfdual::theorems::{classify_ring, dey_ep_check, dey_sd_check};

fn ring(vars: &[&str], ideal: &[&str]) -> selfdual::Result<QuotientRing> {
    QuotientRing::new(101, vars, &vec![1; vars.len()], ideal)
}

fn main() -> selfdual::Result<()> {
    println!("below the depth, i = 2");
    for (name, r) in [
        ("F[x,y,z]", ring(&["x", "y", "z"], &[])?),
        ("F[x,y,z,w]", ring(&["x", "y", "z", "w"], &[])?),
        ("F[x,y,z]/(x^2)", ring(&["x", "y", "z"], &["x^2"])?),
    ] {
        let rep = dey_sd_check(&r, 2, 32, 0)?;
        println!(
            "  {name:<16} depth {}  iso {:?}  shift {:?}  applicable {}  consistent {}",
            rep.depth, rep.hypothesis_verdict, rep.shift, rep.applicable, rep.consistent
        );
    }

    println!("\nat or above the depth");
    let q = ring(&["x", "y", "z"], &["x^2 + y^2 + z^2"])?;
    for i in 2..=4 {
        let rep = dey_ep_check(&q, i, 10, 32, 0)?;
        println!(
            "  x^2+y^2+z^2, i = {i}: iso {:?} shift {:?} consistent {}",
            rep.iso_verdict, rep.shift, rep.consistent
        );
    }
    let m2 = ring(&["x", "y"], &["x^2", "x*y", "y^2"])?;
    let rep = dey_ep_check(&m2, 2, 10, 32, 0)?;
    println!(
        "  (x,y)^2,      i = 2: iso {:?} consistent {}",
        rep.iso_verdict, rep.consistent
    );

    let c = classify_ring(&m2, 10, 32, 0)?;
    println!(
        "\nF[x,y]/(x,y)^2: regular {} hypersurface {} depth {} growth {}",
        c.regular, c.hypersurface, c.depth, c.growth
    );
    println!("Betti numbers of k: {:?}", c.betti);
    Ok(())
}

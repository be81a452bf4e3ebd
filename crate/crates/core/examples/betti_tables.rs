//! Minimal free resolutions, Betti tables and Hilbert series for a few
//! standard modules.

use selfdual::algebra::QuotientRing;
use selfdual::duality::residue_field;
use selfdual::resolution::{resolve, HilbertSeries, ModulePresentation};

fn show(name: &str, m: &ModulePresentation, cap: usize) -> selfdual::Result<()> {
    let (f, pd) = resolve(m, cap)?;
    println!(
        "{name}: {pd:?}, minimal {}, d∘d = 0 {}",
        f.is_minimal(),
        f.is_complex()
    );
    println!("Hilbert series {}", HilbertSeries::of(m));
    println!("{}", f.betti());
    Ok(())
}

fn main() -> selfdual::Result<()> {
    let s = QuotientRing::polynomial_ring(101, &["x", "y", "z"], None)?;
    let p = |t: &str| s.parse(t).unwrap();
    show("k over F[x,y,z]", &residue_field(&s), 5)?;
    show(
        "twisted cubic",
        &ModulePresentation::cyclic(&s, &[p("x^2 - y*z"), p("x*y - z^2"), p("y^2 - x*z")])?,
        5,
    )?;
    show(
        "(x,y,z)^2",
        &ModulePresentation::cyclic(
            &s,
            &[p("x^2"), p("x*y"), p("x*z"), p("y^2"), p("y*z"), p("z^2")],
        )?,
        5,
    )?;
    let r = QuotientRing::new(101, &["x", "y"], &[1, 1], &["x^2", "x*y", "y^2"])?;
    show("k over F[x,y]/(x,y)^2", &residue_field(&r), 5)?;
    Ok(())
}

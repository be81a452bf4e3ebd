//! Totally self-dual modules: Gorenstein versus non-Gorenstein quotients,
//! direct sums of equal grade, and graded twists that line duals up.

use selfdual::algebra::QuotientRing;
use selfdual::duality::{ext, is_totally_self_dual};
use selfdual::resolution::{direct_sum, min_generators, ModulePresentation};

fn report(name: &str, m: &ModulePresentation) -> selfdual::Result<()> {
    let r = is_totally_self_dual(m, 6, 32, 0)?;
    println!(
        "{name:<28} grade {}  Ext^g = M(s): {:<5} shift {:?}  verdict {} ({:?})",
        r.grade,
        r.iso.as_ref().is_some_and(|i| i.is_isomorphic()),
        r.shift(),
        r.verdict,
        r.window_kind
    );
    Ok(())
}

fn main() -> selfdual::Result<()> {
    let s = QuotientRing::polynomial_ring(101, &["x", "y"], None)?;
    let p = |t: &str| s.parse(t).unwrap();
    let ci = ModulePresentation::cyclic(&s, &[p("x^2"), p("y^3")])?;
    let m2 = ModulePresentation::cyclic(&s, &[p("x^2"), p("x*y"), p("y^2")])?;
    report("F[x,y]/(x^2,y^3)", &ci)?;
    report("F[x,y]/(x,y)^2", &m2)?;
    println!(
        "  mu(Ext^2(F[x,y]/(x,y)^2)) = {}",
        min_generators(&ext(&m2, 2, 4)?.module)
    );

    // Ext^1(R/(x^a)) = R/(x^a)(a·wt x): a uniform twist only exists when the
    // exponents' weighted degrees allow it.
    let t = QuotientRing::polynomial_ring(101, &["x"], None)?;
    let q = |e: &str| ModulePresentation::cyclic(&t, &[t.parse(e).unwrap()]);
    report(
        "R/(x^2) + R/(x^4)(1)",
        &direct_sum(&q("x^2")?, &q("x^4")?.twist(1))?,
    )?;
    report("R/(x^2) + R/(x^5)", &direct_sum(&q("x^2")?, &q("x^5")?)?)?;

    let w = QuotientRing::polynomial_ring(101, &["x"], Some(&[2]))?;
    let q = |e: &str| ModulePresentation::cyclic(&w, &[w.parse(e).unwrap()]);
    report(
        "R/(x^2) + R/(x^5)(3), wt 2",
        &direct_sum(&q("x^2")?, &q("x^5")?.twist(3))?,
    )?;
    Ok(())
}

//! Two modules whose duals are isomorphic to a syzygy but which are not
//! totally self-dual: M = (x,y)/(x^3) and M' = M/y^2 M over F_101[x,y].

use selfdual::algebra::QuotientRing;
use selfdual::duality::{ext, grade, is_totally_self_dual, module_dual};
use selfdual::iso::{is_isomorphic, strip_free_summands};
use selfdual::resolution::{
    min_generators, quotient_module, subquotient, GradedMatrix, ModulePresentation,
};
use selfdual::theorems::{make_matrix_factorization, mf_module};

/// The ideal generated by `gens` in `S`, modulo `x^3`.
fn ideal_mod_x3(s: &QuotientRing, gens: &[&str]) -> selfdual::Result<ModulePresentation> {
    let p = |t: &str| s.parse(t).unwrap();
    let z =
        GradedMatrix::with_inferred_source(s, vec![0], vec![gens.iter().map(|g| p(g)).collect()])?;
    let b = GradedMatrix::with_inferred_source(s, vec![0], vec![vec![p("x^3")]])?;
    subquotient(s, &z, &b)
}

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

    // i = 0, over R = S/(x^3)
    let r = mf.hypersurface();
    let m = mf_module(&mf)?;
    let n = ideal_mod_x3(&s, &["x^2", "y"])?.change_ring(&r)?;
    let ideal = ideal_mod_x3(&s, &["x", "y"])?.change_ring(&r)?;
    println!(
        "coker phi = (x,y)/(x^3): {:?}",
        is_isomorphic(&m, &ideal, 32, 0).verdict
    );
    let hom = is_isomorphic(&module_dual(&m), &n, 32, 0);
    println!(
        "Hom(M,R) = (x^2,y)/(x^3): {:?}, shift {:?}",
        hom.verdict, hom.shift
    );
    println!("M = N: {:?}", is_isomorphic(&m, &n, 32, 0).verdict);
    println!(
        "M totally self-dual: {}",
        is_totally_self_dual(&m, 10, 32, 0)?.verdict
    );

    let t = s.quotient(&[p("x^2"), p("y^2")])?;
    for (name, x) in [
        ("M", ideal_mod_x3(&s, &["x", "y"])?),
        ("N", ideal_mod_x3(&s, &["x^2", "y"])?),
    ] {
        let st = strip_free_summands(&x.change_ring(&t)?);
        println!(
            "{name}/(x^2,y^2){name}: free summands in degrees {:?}",
            st.free_degrees
        );
    }

    // i = 1, over S: M' = M/y^2 M and N' = Ext^2_S(M', S)
    let ms = ideal_mod_x3(&s, &["x", "y"])?;
    let m1 = quotient_module(&ms, &[p("y^2")])?;
    let g = grade(&m1)?;
    let n1 = ext(&m1, g, 4)?.module;
    println!(
        "\ngrade M' = {g}, mu(M') = {}, mu(N') = {}",
        min_generators(&m1),
        min_generators(&n1)
    );
    println!("M' = N': {:?}", is_isomorphic(&m1, &n1, 32, 0).verdict);
    println!(
        "M' totally self-dual: {}",
        is_totally_self_dual(&m1, 4, 32, 0)?.verdict
    );
    Ok(())
}

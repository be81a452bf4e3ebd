use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Monomial;
use crate::groebner::ModuleGB;

use super::ModulePresentation;

/// `H_M(t) = Q(t) / ∏ (1 - t^{w_i})` with a Laurent polynomial numerator `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: BTreeMap<i32, i64>,
    weights: Vec<u32>,
}

impl HilbertSeries {
    pub fn of(m: &ModulePresentation) -> Self {
        Self::from_gb(&m.relation_gb())
    }

    pub(crate) fn from_gb(gb: &ModuleGB) -> Self {
        let w = gb.ring().weights().to_vec();
        let mut num = BTreeMap::new();
        for (pos, &d) in gb.degrees().iter().enumerate() {
            let leads: Vec<Monomial> = gb
                .generators()
                .iter()
                .filter_map(|g| g.lead().filter(|t| t.pos as usize == pos).map(|t| t.mon))
                .collect();
            for (e, c) in monomial_numerator(leads, &w) {
                add_term(&mut num, e + d, c);
            }
        }
        HilbertSeries {
            numerator: num,
            weights: w,
        }
    }

    /// Coefficients of the numerator, by exponent.
    pub fn numerator(&self) -> &BTreeMap<i32, i64> {
        &self.numerator
    }

    /// `dim M_d` for `d` in `lo..=hi`, by power-series expansion.
    pub fn coefficients(&self, lo: i32, hi: i32) -> Vec<i64> {
        if hi < lo {
            return vec![];
        }
        let start = self.numerator.keys().next().copied().unwrap_or(lo).min(lo);
        let len = (hi - start + 1) as usize;
        let mut series = vec![0i64; len];
        for (&e, &c) in &self.numerator {
            if e >= start && e <= hi {
                series[(e - start) as usize] += c;
            }
        }
        for &w in &self.weights {
            let w = w as usize;
            for i in w..len {
                series[i] += series[i - w];
            }
        }
        series[(lo - start) as usize..].to_vec()
    }

    /// The series of `M(s)`.
    pub fn twist(&self, s: i32) -> HilbertSeries {
        HilbertSeries {
            numerator: self.numerator.iter().map(|(&e, &c)| (e - s, c)).collect(),
            weights: self.weights.clone(),
        }
    }

    /// Lowest degree where the two series differ.
    pub fn first_difference(&self, other: &HilbertSeries) -> Option<i32> {
        let mut diff = self.numerator.clone();
        for (&e, &c) in &other.numerator {
            add_term(&mut diff, e, -c);
        }
        diff.keys().next().copied()
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (&e, &c) in &self.numerator {
            let mono = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{e}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (-1, false) => format!("-{mono}"),
                _ => format!("{c}*{mono}"),
            });
        }
        let num = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        };
        let mut den: BTreeMap<u32, usize> = BTreeMap::new();
        for &w in &self.weights {
            *den.entry(w).or_insert(0) += 1;
        }
        let den: Vec<String> = den
            .iter()
            .map(|(&w, &k)| {
                let base = if w == 1 {
                    "(1-t)".to_string()
                } else {
                    format!("(1-t^{w})")
                };
                if k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect();
        if den.is_empty() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/{}", den.join(""))
        }
    }
}

fn add_term(p: &mut BTreeMap<i32, i64>, e: i32, c: i64) {
    let v = p.entry(e).or_insert(0);
    *v += c;
    if *v == 0 {
        p.remove(&e);
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `S / (gens)` via pivoting on a variable power.
fn monomial_numerator(gens: Vec<Monomial>, w: &[u32]) -> BTreeMap<i32, i64> {
    let gens = minimalize(gens);
    let mut out = BTreeMap::new();
    if gens.is_empty() {
        out.insert(0, 1);
        return out;
    }
    if gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.coprime(b)))
    {
        out.insert(0, 1);
        for g in &gens {
            let d = g.degree() as i32;
            let mut next = BTreeMap::new();
            for (&e, &c) in &out {
                add_term(&mut next, e, c);
                add_term(&mut next, e + d, -c);
            }
            out = next;
        }
        return out;
    }
    // pivot on the variable shared by the most generators
    let n = w.len();
    let var = (0..n)
        .max_by_key(|&i| gens.iter().filter(|g| g.exponent(i) > 0).count())
        .unwrap();
    let mut exps: Vec<u32> = gens
        .iter()
        .map(|g| g.exponent(var))
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let mut pe = vec![0u32; n];
    pe[var] = e;
    let p = Monomial::from_exponents(&pe, w);
    // N(J) = N(J + p) + t^{deg p} N(J : p)
    let mut plus = gens.clone();
    plus.push(p);
    let colon: Vec<Monomial> = gens.iter().map(|g| p.gcd(g, w).quotient_of(g)).collect();
    for (e, c) in monomial_numerator(plus, w) {
        add_term(&mut out, e, c);
    }
    for (e, c) in monomial_numerator(colon, w) {
        add_term(&mut out, e + p.degree() as i32, c);
    }
    out
}

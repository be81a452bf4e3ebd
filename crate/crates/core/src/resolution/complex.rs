use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{Polynomial, QuotientRing};
use crate::error::{Error, Result};
use crate::groebner::Vector;

use super::presentation::{subquotient, syzygy_matrix};
use super::{GradedMatrix, ModulePresentation};

/// A finite complex `0 → F_r → … → F_1 → F_0 → 0` of graded free modules.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
    ring: QuotientRing,
    f0: Vec<i32>,
    diffs: Vec<GradedMatrix>,
}

impl FreeComplex {
    /// Validates composability and `d_i ∘ d_{i+1} = 0`.
    pub fn new(ring: &QuotientRing, f0: Vec<i32>, diffs: Vec<GradedMatrix>) -> Result<Self> {
        let c = FreeComplex {
            ring: ring.clone(),
            f0,
            diffs,
        };
        for i in 1..=c.length() {
            if c.diffs[i - 1].target() != c.degrees(i - 1) {
                return Err(Error::NotAComplex(format!(
                    "d_{i} does not land in F_{}",
                    i - 1
                )));
            }
        }
        if let Some(i) = c.first_nonzero_composite() {
            return Err(Error::NotAComplex(format!("d_{i} ∘ d_{} ≠ 0", i + 1)));
        }
        Ok(c)
    }

    pub(crate) fn from_parts(ring: &QuotientRing, f0: Vec<i32>, diffs: Vec<GradedMatrix>) -> Self {
        FreeComplex {
            ring: ring.clone(),
            f0,
            diffs,
        }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    /// Number of differentials.
    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    /// `d_i : F_i → F_{i-1}` for `1 ≤ i ≤ length`.
    pub fn differential(&self, i: usize) -> Option<&GradedMatrix> {
        if i == 0 {
            None
        } else {
            self.diffs.get(i - 1)
        }
    }

    pub fn differentials(&self) -> &[GradedMatrix] {
        &self.diffs
    }

    /// Generator degrees of `F_i` (empty beyond the length).
    pub fn degrees(&self, i: usize) -> &[i32] {
        if i == 0 {
            &self.f0
        } else {
            self.diffs.get(i - 1).map_or(&[], |d| d.source())
        }
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees(i).len()
    }

    fn first_nonzero_composite(&self) -> Option<usize> {
        (1..self.length()).find(|&i| {
            self.diffs[i - 1]
                .compose(&self.ring, &self.diffs[i])
                .map_or(true, |m| !m.is_zero())
        })
    }

    pub fn is_complex(&self) -> bool {
        self.first_nonzero_composite().is_none()
    }

    /// Every differential entry lies in the irrelevant ideal.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.is_minimal())
    }

    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for i in 0..=self.length() {
            for &d in self.degrees(i) {
                *t.entries.entry((i, d)).or_insert(0) += 1;
            }
        }
        t
    }

    /// `H_i = ker d_i / im d_{i+1}`.
    pub fn homology(&self, i: usize) -> Result<ModulePresentation> {
        if i > self.length() {
            return Err(Error::InvalidArgument(format!(
                "homology index {i} beyond length {}",
                self.length()
            )));
        }
        if !self.is_complex() {
            return Err(Error::NotAComplex("d ∘ d ≠ 0".into()));
        }
        let fi = self.degrees(i).to_vec();
        let z = match self.differential(i) {
            Some(d) => syzygy_matrix(&self.ring, d)?,
            None => GradedMatrix::identity(fi.clone()),
        };
        let b = match self.differential(i + 1) {
            Some(d) => d.clone(),
            None => GradedMatrix::zero(fi, vec![]),
        };
        subquotient(&self.ring, &z, &b)
    }

    /// `Hom(F, R)`: `F_{r-j}^*` in position `j`, differentials `d_{r-j+1}^T`.
    pub fn dual(&self) -> FreeComplex {
        let r = self.length();
        let f0: Vec<i32> = self.degrees(r).iter().map(|d| -d).collect();
        let diffs = (1..=r).map(|j| self.diffs[r - j].transpose()).collect();
        FreeComplex {
            ring: self.ring.clone(),
            f0,
            diffs,
        }
    }

    /// Twist every free module: `F(s)`.
    pub fn twist(&self, s: i32) -> FreeComplex {
        FreeComplex {
            ring: self.ring.clone(),
            f0: self.f0.iter().map(|d| d - s).collect(),
            diffs: self.diffs.iter().map(|d| d.twist(s)).collect(),
        }
    }

    /// Remove split exact pieces `R(-a) --unit--> R(-a)` until no scalar entry is left.
    pub fn minimalize(&self) -> Result<FreeComplex> {
        if !self.is_complex() {
            return Err(Error::NotAComplex("d ∘ d ≠ 0".into()));
        }
        let f = self.ring.field();
        let mut f0 = self.f0.clone();
        let mut diffs = self.diffs.clone();
        while let Some((k, (a, b, c))) = diffs
            .iter()
            .enumerate()
            .find_map(|(k, d)| d.unit_entry().map(|u| (k, u)))
        {
            // column operations on d_{k+1} clear row a; the matching basis change
            // in F_{k+1} turns row b of d_{k+2} into zero
            let mut d = diffs[k].clone();
            let cinv = f.inv(c);
            let pivot = d.column(b).clone();
            for l in 0..d.ncols() {
                if l == b {
                    continue;
                }
                let e = d.entry(a, l);
                if !e.is_zero() {
                    let new = d.column(l).sub(&pivot.mul_poly(&e.scale(cinv, &f), &f), &f);
                    d.set_column(l, self.ring.reduce_vector(&new));
                }
            }
            diffs[k] = d.without_column(b).without_row(a);
            if k + 1 < diffs.len() {
                diffs[k + 1] = diffs[k + 1].without_row(b);
            }
            if k > 0 {
                diffs[k - 1] = diffs[k - 1].without_column(a);
            } else {
                f0.remove(a);
            }
        }
        while diffs.last().is_some_and(|d| d.ncols() == 0) {
            diffs.pop();
        }
        Ok(FreeComplex {
            ring: self.ring.clone(),
            f0,
            diffs,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ring": self.ring.describe(),
            "ranks": (0..=self.length()).map(|i| self.rank(i)).collect::<Vec<_>>(),
            "differentials": self.diffs.iter().map(|d| d.to_json(&self.ring)).collect::<Vec<_>>(),
        })
    }
}

/// Graded Betti numbers `β_{i,j}`: the number of degree-`j` generators of `F_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i32), usize>,
}

#[derive(Serialize)]
struct BettiEntry {
    i: usize,
    j: i32,
    rank: usize,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total ranks per homological degree.
    pub fn ranks(&self) -> Vec<usize> {
        let n = self.entries.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let mut out = vec![0; n];
        for (&(i, _), &r) in &self.entries {
            out[i] += r;
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i32, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &r)| (i, j, r))
    }

    /// `[{"i":..,"j":..,"rank":..}, ..]`
    pub fn to_json(&self) -> serde_json::Value {
        let v: Vec<BettiEntry> = self
            .entries()
            .map(|(i, j, rank)| BettiEntry { i, j, rank })
            .collect();
        serde_json::to_value(v).unwrap()
    }
}

/// Macaulay2-style grid: columns are homological degrees, rows are `j - i`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks = self.ranks();
        if ranks.is_empty() {
            return writeln!(f, "0");
        }
        let rows: Vec<i32> = {
            let mut r: Vec<i32> = self.entries.keys().map(|&(i, j)| j - i as i32).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let lo = rows[0];
        let hi = *rows.last().unwrap();
        let width = ranks
            .iter()
            .map(|r| r.to_string().len())
            .max()
            .unwrap_or(1)
            .max(ranks.len().to_string().len());
        let label = (lo..=hi)
            .map(|r| format!("{r}:").len())
            .max()
            .unwrap()
            .max("total:".len());
        write!(f, "{:>label$}", "")?;
        for i in 0..ranks.len() {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>label$}", "total:")?;
        for r in &ranks {
            write!(f, " {:>width$}", r)?;
        }
        writeln!(f)?;
        for row in lo..=hi {
            write!(f, "{:>label$}", format!("{row}:"))?;
            for i in 0..ranks.len() {
                let v = self.get(i, row + i as i32);
                if v == 0 {
                    write!(f, " {:>width$}", ".")?;
                } else {
                    write!(f, " {:>width$}", v)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Outcome of a bounded resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PdReport {
    Finite(usize),
    ExceedsCap(usize),
}

/// A minimal free resolution, extended on demand.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: QuotientRing,
    f0: Vec<i32>,
    diffs: Vec<GradedMatrix>,
    terminated: bool,
}

impl Resolution {
    pub fn new(m: &ModulePresentation) -> Self {
        let m = m.pruned();
        let d1 = m.matrix().clone();
        let terminated = d1.ncols() == 0;
        let diffs = if terminated { vec![] } else { vec![d1] };
        Resolution {
            ring: m.ring().clone(),
            f0: m.generator_degrees().to_vec(),
            diffs,
            terminated,
        }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    /// Compute differentials up to `d_n` (or until the resolution stops).
    pub fn extend_to(&mut self, n: usize) {
        while !self.terminated && self.diffs.len() < n {
            let next = syzygy_matrix(&self.ring, self.diffs.last().unwrap())
                .expect("differentials are homogeneous");
            if next.ncols() == 0 {
                self.terminated = true;
            } else {
                self.diffs.push(next);
            }
        }
    }

    /// Number of differentials computed so far.
    pub fn computed(&self) -> usize {
        self.diffs.len()
    }

    /// `Some(pd)` once the resolution is known to stop.
    pub fn known_pd(&self) -> Option<usize> {
        self.terminated.then_some(self.diffs.len())
    }

    /// Generator degrees of `F_i`.
    pub fn degrees(&mut self, i: usize) -> Vec<i32> {
        if i == 0 {
            return self.f0.clone();
        }
        self.extend_to(i);
        self.diffs
            .get(i - 1)
            .map_or(vec![], |d| d.source().to_vec())
    }

    pub fn rank(&mut self, i: usize) -> usize {
        self.degrees(i).len()
    }

    /// `d_i`, a zero map once past the projective dimension.
    pub fn differential(&mut self, i: usize) -> GradedMatrix {
        assert!(i >= 1, "differentials start at d_1");
        self.extend_to(i);
        match self.diffs.get(i - 1) {
            Some(d) => d.clone(),
            None => GradedMatrix::zero(self.degrees(i - 1), vec![]),
        }
    }

    /// `Ω^n M = coker d_{n+1}` as a submodule-free presentation over `F_n`.
    pub fn syzygy(&mut self, n: usize) -> ModulePresentation {
        let d = self.differential(n + 1);
        ModulePresentation::from_minimal(&self.ring, d)
    }

    /// `d_1..d_n` (fewer when the resolution stops earlier).
    pub fn complex(&mut self, n: usize) -> FreeComplex {
        self.extend_to(n);
        let k = n.min(self.diffs.len());
        FreeComplex::from_parts(&self.ring, self.f0.clone(), self.diffs[..k].to_vec())
    }

    /// Outcome of resolving up to `cap` steps.
    pub fn pd_report(&mut self, cap: usize) -> PdReport {
        self.extend_to(cap + 1);
        match self.known_pd() {
            Some(p) if p <= cap => PdReport::Finite(p),
            _ => PdReport::ExceedsCap(cap),
        }
    }
}

/// Minimal free resolution `d_1..d_min(pd, cap)`.
pub fn resolve(m: &ModulePresentation, cap: usize) -> Result<(FreeComplex, PdReport)> {
    if cap == 0 {
        return Err(Error::InvalidArgument(
            "length cap must be at least 1".into(),
        ));
    }
    let mut r = Resolution::new(m);
    let pd = r.pd_report(cap);
    Ok((r.complex(cap), pd))
}

/// `Ω^n M`; the zero module once `n > pd M`.
pub fn syzygy_module(m: &ModulePresentation, n: usize) -> ModulePresentation {
    Resolution::new(m).syzygy(n)
}

/// Koszul complex on homogeneous elements, basis of `F_i` = `i`-subsets in lexicographic order.
pub fn koszul_complex(ring: &QuotientRing, elements: &[Polynomial]) -> Result<FreeComplex> {
    let n = elements.len();
    let mut degs = Vec::with_capacity(n);
    for e in elements {
        let e = ring.reduce(e);
        if e.is_zero() {
            return Err(Error::InvalidArgument(
                "Koszul complex of a zero element".into(),
            ));
        }
        degs.push(e.homogeneous_degree().ok_or(Error::InhomogeneousElement)? as i32);
    }
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| k_subsets(n, k)).collect();
    let deg_of = |s: &Vec<usize>| s.iter().map(|&i| degs[i]).sum::<i32>();
    let f = ring.field();
    let mut diffs = Vec::new();
    for k in 1..=n {
        let target: Vec<i32> = subsets[k - 1].iter().map(deg_of).collect();
        let source: Vec<i32> = subsets[k].iter().map(deg_of).collect();
        let cols = subsets[k]
            .iter()
            .map(|s| {
                let mut v = Vector::zero();
                for (j, &idx) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(j);
                    let row = subsets[k - 1].iter().position(|t| *t == rest).unwrap();
                    let sign = if j % 2 == 0 { 1 } else { f.neg(1) };
                    v = v.add(
                        &Vector::unit(row, &ring.reduce(&elements[idx]).scale(sign, &f)),
                        &f,
                    );
                }
                v
            })
            .collect();
        diffs.push(GradedMatrix::from_columns(target, source, cols));
    }
    Ok(FreeComplex::from_parts(ring, vec![0], diffs))
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> QuotientRing {
        QuotientRing::new(101, &["x", "y", "z"], &[1, 1, 1], &[]).unwrap()
    }

    #[test]
    fn residue_field_resolution_is_koszul_shaped() {
        let s = xyz();
        let k = ModulePresentation::cyclic(
            &s,
            &[
                s.parse("x").unwrap(),
                s.parse("y").unwrap(),
                s.parse("z").unwrap(),
            ],
        )
        .unwrap();
        let (c, pd) = resolve(&k, 5).unwrap();
        assert_eq!(pd, PdReport::Finite(3));
        assert_eq!(c.betti().ranks(), vec![1, 3, 3, 1]);
        assert_eq!(c.betti().get(2, 2), 3);
        assert!(c.is_complex() && c.is_minimal());
    }

    #[test]
    fn koszul_signs_and_shape() {
        let s = QuotientRing::new(101, &["x", "y"], &[1, 1], &[]).unwrap();
        let p = |t: &str| s.parse(t).unwrap();
        let k = koszul_complex(&s, &[p("x"), p("y")]).unwrap();
        assert_eq!(k.betti().ranks(), vec![1, 2, 1]);
        let d2 = k.differential(2).unwrap();
        assert_eq!(d2.entry(0, 0), p("-y"));
        assert_eq!(d2.entry(1, 0), p("x"));
        assert!(k.is_complex());
    }

    #[test]
    fn dual_is_an_involution() {
        let s = xyz();
        let p = |t: &str| s.parse(t).unwrap();
        let k = koszul_complex(&s, &[p("x"), p("y"), p("z")]).unwrap();
        assert_eq!(k.dual().dual(), k);
        assert_eq!(k.dual().degrees(0), &[-3]);
    }

    #[test]
    fn residue_field_over_dual_numbers() {
        let r = QuotientRing::new(101, &["x"], &[1], &["x^2"]).unwrap();
        let k = ModulePresentation::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        let (c, pd) = resolve(&k, 6).unwrap();
        assert_eq!(pd, PdReport::ExceedsCap(6));
        assert_eq!(c.betti().ranks(), vec![1; 7]);
        for d in c.differentials() {
            assert_eq!(d.entry(0, 0), r.parse("x").unwrap());
        }
    }

    #[test]
    fn split_complex_minimalizes_to_zero() {
        let s = xyz();
        let c = FreeComplex::new(&s, vec![0], vec![GradedMatrix::identity(vec![0])]).unwrap();
        let m = c.minimalize().unwrap();
        assert_eq!(m.length(), 0);
        assert_eq!(m.rank(0), 0);
    }

    #[test]
    fn betti_grid_text() {
        let s = xyz();
        let p = |t: &str| s.parse(t).unwrap();
        let k = koszul_complex(&s, &[p("x"), p("y"), p("z")]).unwrap();
        let txt = k.betti().to_string();
        assert_eq!(txt, "       0 1 2 3\ntotal: 1 3 3 1\n    0: 1 3 3 1\n");
    }
}

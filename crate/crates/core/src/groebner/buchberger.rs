//! Graded Buchberger algorithm for submodules of `S^r` in the
//! position-over-term order.
//!
//! Input is split into *base* generators (typically the defining ideal times
//! each basis vector) and *input* generators. Everything is homogeneous, so
//! the algorithm runs degree by degree; an input generator is recorded as
//! minimal exactly when it does not reduce to zero against everything of
//! lower or equal degree seen before it. That is the graded Nakayama test.

use std::collections::BTreeMap;

use super::vector::{merge_scaled, Term, Vector};
use crate::algebra::{Monomial, PrimeField};

#[derive(Clone, Copy)]
pub(crate) struct Ctx<'a> {
    pub f: PrimeField,
    pub weights: &'a [u32],
    pub gen_degs: &'a [i32],
}

impl<'a> Ctx<'a> {
    pub fn degree(&self, v: &Vector) -> i32 {
        let t = v.lead().expect("degree of zero vector");
        t.mon.degree() as i32 + self.gen_degs[t.pos as usize]
    }
}

/// Lead-term lookup by position.
#[derive(Default, Clone)]
pub(crate) struct LeadIndex {
    by_pos: Vec<Vec<usize>>,
}

impl LeadIndex {
    pub fn new(rank: usize) -> Self {
        LeadIndex {
            by_pos: vec![Vec::new(); rank],
        }
    }

    pub fn build(rank: usize, gb: &[Vector]) -> Self {
        let mut idx = LeadIndex::new(rank);
        for (i, g) in gb.iter().enumerate() {
            idx.push(i, g);
        }
        idx
    }

    pub fn push(&mut self, i: usize, g: &Vector) {
        let p = g.lead().unwrap().pos as usize;
        if p >= self.by_pos.len() {
            self.by_pos.resize(p + 1, Vec::new());
        }
        self.by_pos[p].push(i);
    }

    #[inline]
    fn divisor(
        &self,
        gb: &[Vector],
        pos: u32,
        mon: &Monomial,
        skip: Option<usize>,
    ) -> Option<usize> {
        self.by_pos
            .get(pos as usize)?
            .iter()
            .copied()
            .find(|&i| Some(i) != skip && gb[i].lead().unwrap().mon.divides(mon))
    }
}

/// Full normal form of `v` against monic `gb`.
pub(crate) fn reduce(f: &PrimeField, v: &Vector, gb: &[Vector], index: &LeadIndex) -> Vector {
    reduce_skip(f, v, gb, index, None)
}

fn reduce_skip(
    f: &PrimeField,
    v: &Vector,
    gb: &[Vector],
    index: &LeadIndex,
    skip: Option<usize>,
) -> Vector {
    let mut work: Vec<Term> = v.terms().to_vec();
    let mut cursor = 0;
    while cursor < work.len() {
        let t = work[cursor];
        match index.divisor(gb, t.pos, &t.mon, skip) {
            Some(i) => {
                let g = &gb[i];
                let m = g.lead().unwrap().mon.quotient_of(&t.mon);
                let tail = merge_scaled(&work[cursor..], g.terms(), f.neg(t.coeff), &m, f);
                work.truncate(cursor);
                work.extend(tail);
            }
            None => cursor += 1,
        }
    }
    Vector::from_sorted(work)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub(crate) struct GbResult {
    pub gb: Vec<Vector>,
    /// Indices into the input slice that survived as minimal generators, in input order.
    pub minimal_inputs: Vec<usize>,
}

struct State<'a> {
    ctx: Ctx<'a>,
    gb: Vec<Vector>,
    index: LeadIndex,
    single: Vec<bool>,
    pending: BTreeMap<i32, Vec<Pair>>,
}

impl<'a> State<'a> {
    fn insert(&mut self, mut h: Vector) {
        h.make_monic(&self.ctx.f);
        let k = self.gb.len();
        let lead = *h.lead().unwrap();
        let w = self.ctx.weights;
        let gdeg = self.ctx.gen_degs[lead.pos as usize];

        // chain criterion on pending pairs
        for pairs in self.pending.values_mut() {
            pairs.retain(|pr| {
                let gi = self.gb[pr.i].lead().unwrap();
                if gi.pos != lead.pos || !lead.mon.divides(&pr.lcm) {
                    return true;
                }
                let gj = self.gb[pr.j].lead().unwrap();
                gi.mon.lcm(&lead.mon, w) == pr.lcm || gj.mon.lcm(&lead.mon, w) == pr.lcm
            });
        }
        self.pending.retain(|_, v| !v.is_empty());

        let single_h = h.single_position();
        let mut cands: Vec<(usize, Monomial, bool)> = self
            .index
            .by_pos
            .get(lead.pos as usize)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
            .iter()
            .map(|&i| {
                let li = self.gb[i].lead().unwrap().mon;
                let coprime = single_h && self.single[i] && li.coprime(&lead.mon);
                (i, li.lcm(&lead.mon, w), coprime)
            })
            .collect();
        // drop pairs whose lcm is a proper multiple of another new lcm
        let lcms: Vec<Monomial> = cands.iter().map(|c| c.1).collect();
        cands.retain(|c| !lcms.iter().any(|l| *l != c.1 && l.divides(&c.1)));
        // one pair per lcm; drop the class if the product criterion applies
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        let mut seen: Vec<Monomial> = Vec::new();
        for c in &cands {
            if seen.contains(&c.1) {
                continue;
            }
            seen.push(c.1);
            let class_coprime = cands.iter().any(|d| d.1 == c.1 && d.2);
            if !class_coprime {
                kept.push((c.0, c.1));
            }
        }
        for (i, l) in kept {
            let deg = l.degree() as i32 + gdeg;
            self.pending
                .entry(deg)
                .or_default()
                .push(Pair { i, j: k, lcm: l });
        }

        self.index.push(k, &h);
        self.single.push(single_h);
        self.gb.push(h);
    }

    fn spoly(&self, p: &Pair) -> Vector {
        let f = &self.ctx.f;
        let gi = &self.gb[p.i];
        let gj = &self.gb[p.j];
        let mi = gi.lead().unwrap().mon.quotient_of(&p.lcm);
        let mj = gj.lead().unwrap().mon.quotient_of(&p.lcm);
        Vector::zero()
            .add_scaled(gi, 1, &mi, f)
            .add_scaled(gj, f.neg(1), &mj, f)
    }
}

/// Graded Buchberger. `base` and `inputs` must be homogeneous for `ctx.gen_degs`.
pub(crate) fn graded_gb(ctx: Ctx<'_>, base: &[Vector], inputs: &[Vector]) -> GbResult {
    let rank = ctx.gen_degs.len();
    let mut st = State {
        ctx,
        gb: Vec::new(),
        index: LeadIndex::new(rank),
        single: Vec::new(),
        pending: BTreeMap::new(),
    };

    let mut base_q: Vec<(i32, &Vector)> = base
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| (ctx.degree(v), v))
        .collect();
    base_q.sort_by_key(|e| e.0);
    let mut input_q: Vec<(i32, usize)> = inputs
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (ctx.degree(v), i))
        .collect();
    input_q.sort_by_key(|e| e.0);

    let (mut bi, mut ii) = (0, 0);
    let mut minimal = Vec::new();
    loop {
        let mut d = i32::MAX;
        if let Some((&k, _)) = st.pending.iter().next() {
            d = d.min(k);
        }
        if bi < base_q.len() {
            d = d.min(base_q[bi].0);
        }
        if ii < input_q.len() {
            d = d.min(input_q[ii].0);
        }
        if d == i32::MAX {
            break;
        }
        if let Some(pairs) = st.pending.remove(&d) {
            for p in pairs {
                let s = st.spoly(&p);
                let r = reduce(&ctx.f, &s, &st.gb, &st.index);
                if !r.is_zero() {
                    st.insert(r);
                }
            }
        }
        while bi < base_q.len() && base_q[bi].0 == d {
            let r = reduce(&ctx.f, base_q[bi].1, &st.gb, &st.index);
            if !r.is_zero() {
                st.insert(r);
            }
            bi += 1;
        }
        while ii < input_q.len() && input_q[ii].0 == d {
            let idx = input_q[ii].1;
            let r = reduce(&ctx.f, &inputs[idx], &st.gb, &st.index);
            if !r.is_zero() {
                minimal.push(idx);
                st.insert(r);
            }
            ii += 1;
        }
    }
    minimal.sort_unstable();
    GbResult {
        gb: st.gb,
        minimal_inputs: minimal,
    }
}

/// Tail-reduce a Gröbner basis whose leads are already pairwise non-dividing.
pub(crate) fn interreduce(f: &PrimeField, mut gb: Vec<Vector>, rank: usize) -> Vec<Vector> {
    // leads that are divisible by another lead are dropped first
    let leads: Vec<Term> = gb.iter().map(|g| *g.lead().unwrap()).collect();
    let keep: Vec<bool> = (0..gb.len())
        .map(|i| {
            !(0..gb.len()).any(|j| {
                j != i
                    && leads[j].pos == leads[i].pos
                    && leads[j].mon.divides(&leads[i].mon)
                    && (leads[j].mon != leads[i].mon || j < i)
            })
        })
        .collect();
    let mut it = keep.iter();
    gb.retain(|_| *it.next().unwrap());
    let index = LeadIndex::build(rank, &gb);
    for i in 0..gb.len() {
        let lead = *gb[i].lead().unwrap();
        let tail = Vector::from_sorted(gb[i].terms()[1..].to_vec());
        let r = reduce_skip(f, &tail, &gb, &index, Some(i));
        let mut terms = vec![lead];
        terms.extend_from_slice(r.terms());
        let mut v = Vector::from_sorted(terms);
        v.make_monic(f);
        gb[i] = v;
    }
    gb
}

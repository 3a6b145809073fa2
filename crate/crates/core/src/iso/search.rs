//! Depth-first search for an isomorphism `A -> B`.
//!
//! `A` is re-presented on its minimal generators `y_1..y_e` (the degree-one
//! standard monomials): `A = k[y]/K` with `K ⊇ (y)^M`, `M` the nilpotency
//! index. A map is fixed by images `ψ_i ∈ m_B`, split by the degree
//! filtration of `B`. The degree-`d+1` component of `ψ(g)` for `g ∈ K` is
//! affine-linear in the degree-`d` coordinates once lower degrees are fixed,
//! since every `g` has order at least two. So the search enumerates
//! invertible linear parts, then for each higher degree solves an affine
//! system and walks its solution set. Coordinates of degree `M - 1` never
//! reach a nonzero product, so one solution suffices there.

use std::collections::HashMap;

use crate::artin::ArtinAlgebra;
use crate::exactcore::{left_kernel, solve_affine, Echelon, ExactMatrix, Field, Scalar};
use crate::poly::{monomials_below, Monomial, Poly};

pub(crate) enum Outcome {
    Found(Vec<Vec<Scalar>>),
    Exhausted,
    OutOfEffort,
}

enum Step {
    Found,
    Continue,
    Stop,
}

/// Scalars tried for linear parts over `Q`: signed permutations with these
/// scalings.
const Q_SCALARS: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];
/// Coefficients of free directions tried over `Q`.
const Q_FREE: [i64; 3] = [0, 1, -1];

struct Search<'a> {
    a: &'a ArtinAlgebra,
    b: &'a ArtinAlgebra,
    f: Field,
    e: usize,
    nilp: u32,
    gen_vars: Vec<usize>,
    relations: Vec<Poly>,
    /// `(largest variable, quadratic part)` of each relation.
    quad: Vec<(usize, Poly)>,
    tuple_a: Vec<Poly>,
    tuple_b: Vec<Vec<Scalar>>,
    tuple_lin: Vec<(usize, Poly)>,
    levels: Vec<Vec<usize>>,
    graded: bool,
    effort: u64,
    limit: u64,
    psi: Vec<Vec<Scalar>>,
}

/// Search with a node budget; `effort` accumulates nodes visited.
pub(crate) fn search(a: &ArtinAlgebra, b: &ArtinAlgebra, graded: bool, limit: u64, effort: &mut u64) -> Outcome {
    let Some(mut s) = Search::new(a, b, graded, limit) else {
        return Outcome::Exhausted;
    };
    let step = if s.e == 0 { Step::Found } else { s.level_one(0, &Echelon::new(&s.f, s.e)) };
    *effort += s.effort;
    match step {
        Step::Found => Outcome::Found(s.witness_images()),
        Step::Continue => Outcome::Exhausted,
        Step::Stop => Outcome::OutOfEffort,
    }
}

fn max_var(p: &Poly) -> Option<usize> {
    p.terms()
        .filter_map(|(m, _)| m.exps().iter().rposition(|&x| x > 0))
        .max()
}

impl<'a> Search<'a> {
    fn new(a: &'a ArtinAlgebra, b: &'a ArtinAlgebra, graded: bool, limit: u64) -> Option<Self> {
        let f = a.field().clone();
        if a.dim() != b.dim() || a.is_zero_ring() {
            return None;
        }
        let nilp = a.nilpotency_index().ok()?;
        if b.nilpotency_index().ok()? != nilp {
            return None;
        }
        let gen_vars: Vec<usize> = a
            .basis()
            .iter()
            .filter(|m| m.degree() == 1)
            .map(|m| m.exps().iter().position(|&x| x == 1).expect("variable"))
            .collect();
        let e = gen_vars.len();
        if b.embdim() != e {
            return None;
        }
        let slot: HashMap<usize, usize> = gen_vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let to_y = |m: &Monomial| -> Monomial {
            let mut exps = vec![0; e];
            for (v, &x) in m.exps().iter().enumerate() {
                if x > 0 {
                    exps[slot[&v]] = x;
                }
            }
            Monomial::new(exps)
        };
        let vec_to_y = |v: &[Scalar]| -> Poly {
            Poly::from_terms(
                &f,
                e,
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|(i, c)| (to_y(&a.basis()[i]), c.clone())),
            )
        };
        let from_y = |u: &Monomial| -> Monomial {
            let mut exps = vec![0; a.nvars()];
            for (i, &x) in u.exps().iter().enumerate() {
                exps[gen_vars[i]] = x;
            }
            Monomial::new(exps)
        };

        // Kernel of k[y]_{<M} -> A, then its minimal generators modulo y*K.
        let vplus: Vec<Monomial> = monomials_below(e, nilp).into_iter().filter(|m| !m.is_one()).collect();
        let col: HashMap<&Monomial, usize> = vplus.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let rows: Vec<Vec<Scalar>> = vplus
            .iter()
            .map(|u| {
                let mut row = a.zero();
                for (k, c) in a.monomial_nf(&from_y(u)) {
                    row[*k] = c.clone();
                }
                row
            })
            .collect();
        let kernel = left_kernel(&f, a.dim(), &rows);
        let mut span = Echelon::new(&f, vplus.len());
        for k in &kernel {
            for i in 0..e {
                let mut shifted = vec![f.zero(); vplus.len()];
                for (j, c) in k.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    let m = vplus[j].mul(&Monomial::var(e, i));
                    if let Some(&t) = col.get(&m) {
                        shifted[t] = c.clone();
                    }
                }
                let _ = span.insert(shifted);
            }
        }
        let mut relations = Vec::new();
        for k in kernel {
            if span.insert(k.clone()).is_ok() {
                relations.push(Poly::from_terms(
                    &f,
                    e,
                    k.iter()
                        .enumerate()
                        .filter(|(_, c)| !f.is_zero(c))
                        .map(|(j, c)| (vplus[j].clone(), c.clone())),
                ));
            }
        }
        let quad = relations
            .iter()
            .map(|g| {
                let q = g.component(2);
                (max_var(&q).unwrap_or(0), q)
            })
            .collect();

        let (tuple_a, tuple_b) = match (a.tuple(), b.tuple()) {
            (None, None) => (Vec::new(), Vec::new()),
            (Some(ta), Some(tb)) if ta.len() == tb.len() => (
                ta.iter().map(|t| vec_to_y(&a.normal_form(t))).collect(),
                tb.iter().map(|t| b.normal_form(t)).collect(),
            ),
            _ => return None,
        };
        let tuple_lin = tuple_a
            .iter()
            .map(|t: &Poly| {
                let l = t.component(1);
                (max_var(&l).unwrap_or(0), l)
            })
            .collect();
        let mut levels = vec![Vec::new(); nilp as usize];
        for (i, &d) in b.degrees().iter().enumerate() {
            levels[d as usize].push(i);
        }
        Some(Search {
            a,
            b,
            f,
            e,
            nilp,
            gen_vars,
            relations,
            quad,
            tuple_a,
            tuple_b,
            tuple_lin,
            levels,
            graded,
            effort: 0,
            limit,
            psi: vec![b.zero(); e],
        })
    }

    fn tick(&mut self) -> bool {
        self.effort += 1;
        self.effort <= self.limit
    }

    fn component_is_zero(&self, v: &[Scalar], d: usize) -> bool {
        self.levels[d].iter().all(|&k| self.f.is_zero(&v[k]))
    }

    /// Linear-part candidates for one generator, in a fixed order: sparse
    /// vectors first over finite fields, signed scaled unit vectors over `Q`.
    fn candidates(&self) -> Box<dyn Iterator<Item = Vec<Scalar>>> {
        let e = self.e;
        let f = self.f.clone();
        match f.size() {
            None => Box::new((0..e).flat_map(move |t| {
                let f = f.clone();
                Q_SCALARS.iter().map(move |(n, d)| {
                    let mut v = vec![f.zero(); e];
                    v[t] = f
                        .from_ratio(&(*n).into(), &(*d).into())
                        .expect("nonzero denominator");
                    v
                })
            })),
            Some(q) => Box::new(SparseVectors::new(e, q as u32).map(|codes| codes.into_iter().map(Scalar::F).collect())),
        }
    }

    fn level_one(&mut self, i: usize, ech: &Echelon) -> Step {
        let lev1 = self.levels[1].clone();
        for cand in self.candidates() {
            if !self.tick() {
                return Step::Stop;
            }
            let mut next = ech.clone();
            if next.insert(cand.clone()).is_err() {
                continue;
            }
            for (t, &k) in lev1.iter().enumerate() {
                self.psi[i][k] = cand[t].clone();
            }
            if !self.linear_checks(i) {
                continue;
            }
            let step = if i + 1 == self.e {
                self.higher(2)
            } else {
                self.level_one(i + 1, &next)
            };
            match step {
                Step::Continue => {}
                other => return other,
            }
        }
        for &k in &lev1 {
            self.psi[i][k] = self.f.zero();
        }
        Step::Continue
    }

    /// Degree-two components of relations and degree-one components of tuple
    /// entries that only involve generators `0..=i`.
    fn linear_checks(&self, i: usize) -> bool {
        for (top, q) in &self.quad {
            if *top == i && !q.is_zero() {
                let v = self.b.evaluate(q, &self.psi);
                if self.levels.len() > 2 && !self.component_is_zero(&v, 2) {
                    return false;
                }
            }
        }
        for (j, (top, l)) in self.tuple_lin.iter().enumerate() {
            if *top == i && !l.is_zero() {
                let v = self.b.evaluate(l, &self.psi);
                if self.levels[1].iter().any(|&k| v[k] != self.tuple_b[j][k]) {
                    return false;
                }
            }
        }
        if i + 1 == self.e {
            // tuple entries without linear part must have none in B either
            for (j, (_, l)) in self.tuple_lin.iter().enumerate() {
                if l.is_zero() && self.levels[1].iter().any(|&k| !self.f.is_zero(&self.tuple_b[j][k])) {
                    return false;
                }
            }
        }
        true
    }

    /// Constraints fixed by the degree-`d` coordinates: degree `d + 1` of
    /// every relation and degree `d` of every tuple entry.
    fn residual(&self, d: usize) -> Vec<Scalar> {
        let f = &self.f;
        let mut out = Vec::new();
        if d + 1 < self.levels.len() {
            for g in &self.relations {
                let v = self.b.evaluate(&g.truncate(d as u32 + 2), &self.psi);
                out.extend(self.levels[d + 1].iter().map(|&k| v[k].clone()));
            }
        }
        for (t, target) in self.tuple_a.iter().zip(&self.tuple_b) {
            let v = self.b.evaluate(&t.truncate(d as u32 + 1), &self.psi);
            out.extend(self.levels[d].iter().map(|&k| f.sub(&v[k], &target[k])));
        }
        out
    }

    fn set_level(&mut self, d: usize, x: &[Scalar]) {
        let lev = self.levels[d].clone();
        for i in 0..self.e {
            for (t, &k) in lev.iter().enumerate() {
                self.psi[i][k] = x[i * lev.len() + t].clone();
            }
        }
    }

    fn higher(&mut self, d: u32) -> Step {
        if d >= self.nilp {
            return Step::Found;
        }
        let d = d as usize;
        let f = self.f.clone();
        let h = self.levels[d].len();
        let n_unknowns = self.e * h;
        let r0 = self.residual(d);
        if self.graded {
            if r0.iter().any(|c| !f.is_zero(c)) {
                return Step::Continue;
            }
            return self.higher(d as u32 + 1);
        }
        let mut cols = Vec::with_capacity(n_unknowns);
        let mut x = vec![f.zero(); n_unknowns];
        for u in 0..n_unknowns {
            x[u] = f.one();
            self.set_level(d, &x);
            let r = self.residual(d);
            cols.push(r.iter().zip(&r0).map(|(a, b)| f.sub(a, b)).collect::<Vec<_>>());
            x[u] = f.zero();
        }
        self.set_level(d, &x);
        let mut mat = ExactMatrix::zeros(&f, r0.len(), n_unknowns);
        for (u, col) in cols.iter().enumerate() {
            for (r, c) in col.iter().enumerate() {
                mat.set(r, u, c.clone());
            }
        }
        let rhs: Vec<Scalar> = r0.iter().map(|c| f.neg(c)).collect();
        let Some((particular, kernel)) = solve_affine(&mat, &rhs) else {
            return Step::Continue;
        };
        let last = d as u32 + 1 == self.nilp;
        let values: Vec<Scalar> = match f.size() {
            None => Q_FREE.iter().map(|v| f.from_i64(*v)).collect(),
            Some(q) => (0..q as u32).map(Scalar::F).collect(),
        };
        let k = if last { 0 } else { kernel.len() };
        let mut digits = vec![0usize; k];
        loop {
            if !self.tick() {
                return Step::Stop;
            }
            let mut point = particular.clone();
            for (j, &dg) in digits.iter().enumerate() {
                if dg != 0 {
                    for (p, kv) in point.iter_mut().zip(&kernel[j]) {
                        *p = f.mul_add(p, &values[dg], kv);
                    }
                }
            }
            self.set_level(d, &point);
            match self.higher(d as u32 + 1) {
                Step::Continue => {}
                other => return other,
            }
            // next coefficient tuple, little-endian
            let mut pos = 0;
            loop {
                if pos == k {
                    self.set_level(d, &vec![f.zero(); n_unknowns]);
                    return Step::Continue;
                }
                digits[pos] += 1;
                if digits[pos] < values.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    fn witness_images(&self) -> Vec<Vec<Scalar>> {
        let f = &self.f;
        let a = self.a;
        let slot: HashMap<usize, usize> = self.gen_vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        (0..a.nvars())
            .map(|v| {
                if let Some(&i) = slot.get(&v) {
                    return self.psi[i].clone();
                }
                let nf = a.normal_form(&Poly::var(f, a.nvars(), v));
                let y = Poly::from_terms(
                    f,
                    self.e,
                    nf.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(k, c)| {
                        let m = &a.basis()[k];
                        let mut exps = vec![0; self.e];
                        for (w, &x) in m.exps().iter().enumerate() {
                            if x > 0 {
                                exps[slot[&w]] = x;
                            }
                        }
                        (Monomial::new(exps), c.clone())
                    }),
                );
                self.b.evaluate(&y, &self.psi)
            })
            .collect()
    }
}

/// Nonzero vectors of `F_q^e` as code tuples, by increasing weight, then
/// support, then codes.
struct SparseVectors {
    e: usize,
    q: u32,
    support: Vec<usize>,
    codes: Vec<u32>,
    done: bool,
}

impl SparseVectors {
    fn new(e: usize, q: u32) -> Self {
        SparseVectors {
            e,
            q,
            support: vec![0],
            codes: vec![1],
            done: e == 0,
        }
    }

    fn advance(&mut self) {
        for c in self.codes.iter_mut() {
            *c += 1;
            if *c < self.q {
                return;
            }
            *c = 1;
        }
        // next support of the same weight
        let w = self.support.len();
        let mut i = w;
        while i > 0 {
            i -= 1;
            if self.support[i] < self.e - (w - i) {
                self.support[i] += 1;
                for j in i + 1..w {
                    self.support[j] = self.support[j - 1] + 1;
                }
                return;
            }
        }
        if w == self.e {
            self.done = true;
            return;
        }
        self.support = (0..w + 1).collect();
        self.codes = vec![1; w + 1];
    }
}

impl Iterator for SparseVectors {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let mut v = vec![0; self.e];
        for (s, c) in self.support.iter().zip(&self.codes) {
            v[*s] = *c;
        }
        self.advance();
        Some(v)
    }
}

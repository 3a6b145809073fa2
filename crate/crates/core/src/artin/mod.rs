//! Finite-dimensional local algebras: jets `R/m^n` and the quotients
//! `R/x^[n]R` of deformation pairs.
//!
//! An algebra is kept as the quotient `k[x]/(relations + m^cap)` together with
//! its standard-monomial basis and the normal form of every monomial below
//! the cap. The product of two basis monomials is their monomial product, so
//! structure constants are looked up rather than stored densely. Standard
//! monomials are graded by degree and `m^i` is spanned by those of degree
//! `>= i`, so the Hilbert function of the associated graded ring is read off
//! the basis.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactcore::{left_kernel, Echelon, Field, Scalar};
use crate::poly::{monomials_of_degree, truncated_quotient, truncated_quotient_dim, Monomial, Poly, TruncatedQuotient};
use crate::presentation::Presentation;

/// Default bound on the dimension of a constructed algebra.
pub const DEFAULT_DIM_LIMIT: usize = 2000;

/// Largest cap tried when looking for the colength of a tuple.
const STABILIZATION_CAP: u32 = 64;

/// Sparse coordinate vector over a basis.
pub type Sparse = Vec<(usize, Scalar)>;

/// How an algebra was obtained from its presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Origin {
    /// `R/m^order`.
    Jet { order: u32 },
    /// `R/(x_1^order, ..., x_s^order)`, computed below `internal_cap`.
    DefPair { order: u32, internal_cap: u32, colength: usize },
}

#[derive(Clone, Debug)]
pub struct ArtinAlgebra {
    field: Field,
    vars: Vec<String>,
    relations: Vec<Poly>,
    cap: u32,
    tuple: Option<Vec<Poly>>,
    origin: Origin,
    basis: Vec<Monomial>,
    degrees: Vec<u32>,
    index: HashMap<Monomial, usize>,
    nf: HashMap<Monomial, Sparse>,
    var_mult: Vec<Vec<Sparse>>,
}

/// `R/m^n` with the default capacity.
pub fn jet(p: &Presentation, n: u32) -> Result<ArtinAlgebra> {
    jet_with_limit(p, n, DEFAULT_DIM_LIMIT)
}

pub fn jet_with_limit(p: &Presentation, n: u32, limit: usize) -> Result<ArtinAlgebra> {
    let tq = truncated_quotient(p.field(), p.nvars(), p.gens(), n)?;
    check_capacity(&tq, limit)?;
    Ok(ArtinAlgebra::from_quotient(
        tq,
        p.vars().to_vec(),
        p.gens().to_vec(),
        None,
        Origin::Jet { order: n },
    ))
}

fn check_capacity(tq: &TruncatedQuotient, limit: usize) -> Result<()> {
    if tq.dim() > limit {
        return Err(Error::Capacity { dim: tq.dim(), limit });
    }
    Ok(())
}

/// `ℓ(R/(I + xR))`, found as the cap at which the truncated dimension stops
/// growing. Equal dimensions at caps `c` and `c + 1` mean `m^c ⊆ J + m^{c+1}`,
/// hence `m^c ⊆ J` by Nakayama, so the value is exact once seen.
pub fn tuple_colength(p: &Presentation) -> Result<usize> {
    let tuple = p.tuple().ok_or(Error::MissingTuple)?;
    let mut gens = p.gens().to_vec();
    gens.extend(tuple.iter().cloned());
    let mut c = 1;
    while c <= STABILIZATION_CAP {
        let a = truncated_quotient_dim(p.field(), p.nvars(), &gens, c)?;
        let b = truncated_quotient_dim(p.field(), p.nvars(), &gens, c + 1)?;
        if a == b {
            return Ok(a);
        }
        c *= 2;
    }
    Err(Error::NotPrimary(format!(
        "quotient by the tuple still grows at cap {}",
        STABILIZATION_CAP + 1
    )))
}

/// `R/(x_1^n, ..., x_s^n)` for the presentation's tuple. With `l` the
/// colength of the tuple, `m^{l s n} ⊆ (xR)^{s n} ⊆ x^[n]R`, so truncating at
/// `l s n + 1` loses nothing.
pub fn defpair_jet(p: &Presentation, n: u32) -> Result<ArtinAlgebra> {
    defpair_jet_with_limit(p, n, DEFAULT_DIM_LIMIT)
}

pub fn defpair_jet_with_limit(p: &Presentation, n: u32, limit: usize) -> Result<ArtinAlgebra> {
    let tuple = p.tuple().ok_or(Error::MissingTuple)?;
    if n == 0 {
        return Err(Error::InvalidArgument("deformation order must be positive".into()));
    }
    let l = tuple_colength(p)?;
    let s = tuple.len().max(1) as u64;
    let cap64 = l as u64 * s * n as u64 + 1;
    let cap = u32::try_from(cap64).map_err(|_| Error::Capacity {
        dim: usize::MAX,
        limit,
    })?;
    let mut relations = p.gens().to_vec();
    relations.extend(tuple.iter().map(|t| t.pow(n)));
    let tq = truncated_quotient(p.field(), p.nvars(), &relations, cap)?;
    check_capacity(&tq, limit)?;
    Ok(ArtinAlgebra::from_quotient(
        tq,
        p.vars().to_vec(),
        relations,
        Some(tuple.to_vec()),
        Origin::DefPair {
            order: n,
            internal_cap: cap,
            colength: l,
        },
    ))
}

impl ArtinAlgebra {
    fn from_quotient(
        tq: TruncatedQuotient,
        vars: Vec<String>,
        relations: Vec<Poly>,
        tuple: Option<Vec<Poly>>,
        origin: Origin,
    ) -> Self {
        let TruncatedQuotient {
            field,
            nvars,
            cap,
            basis,
            nf_table,
        } = tq;
        let degrees = basis.iter().map(Monomial::degree).collect();
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let var_mult = (0..nvars)
            .map(|v| {
                let x = Monomial::var(nvars, v);
                basis
                    .iter()
                    .map(|b| nf_table.get(&b.mul(&x)).cloned().unwrap_or_default())
                    .collect()
            })
            .collect();
        ArtinAlgebra {
            field,
            vars,
            relations,
            cap,
            tuple,
            origin,
            basis,
            degrees,
            index,
            nf: nf_table,
            var_mult,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Ideal generators of the defining ideal, apart from `m^cap`.
    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// The deformation tuple, for quotients of deformation pairs.
    pub fn tuple(&self) -> Option<&[Poly]> {
        self.tuple.as_deref()
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Indices of the basis elements spanning the maximal ideal.
    pub fn maxideal_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] > 0).collect()
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn one(&self) -> Vec<Scalar> {
        let mut v = self.zero();
        if let Some(i) = self.index_of(&Monomial::one(self.nvars())) {
            v[i] = self.field.one();
        }
        v
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    /// Normal form of an arbitrary monomial (zero at or above the cap).
    pub fn monomial_nf(&self, m: &Monomial) -> &[(usize, Scalar)] {
        if m.degree() >= self.cap {
            return &[];
        }
        self.nf.get(m).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Product of the basis elements `i` and `j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        if self.degrees[i] + self.degrees[j] >= self.cap {
            return &[];
        }
        self.monomial_nf(&self.basis[i].mul(&self.basis[j]))
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = self.zero();
        let bn: Vec<usize> = (0..b.len()).filter(|&j| !f.is_zero(&b[j])).collect();
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for &j in &bn {
                let c = f.mul(ai, &b[j]);
                for (k, s) in self.mul_basis(i, j) {
                    out[*k] = f.mul_add(&out[*k], &c, s);
                }
            }
        }
        out
    }

    /// `x_v * a`.
    pub fn mul_var(&self, v: usize, a: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (k, s) in &self.var_mult[v][i] {
                out[*k] = f.mul_add(&out[*k], ai, s);
            }
        }
        out
    }

    /// Image of a polynomial in the algebra's own variables.
    pub fn normal_form(&self, p: &Poly) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = self.zero();
        for (m, c) in p.terms() {
            for (k, s) in self.monomial_nf(m) {
                out[*k] = f.mul_add(&out[*k], c, s);
            }
        }
        out
    }

    /// Value of `p` (in any variables) when its variables are sent to
    /// `images`, elements of this algebra.
    pub fn evaluate(&self, p: &Poly, images: &[Vec<Scalar>]) -> Vec<Scalar> {
        let mut ev = Evaluator::new(self, images);
        ev.poly(p)
    }

    /// `ℓ(A/m^k)` for `k = 0..=nilpotency`.
    pub fn lengths(&self) -> Vec<u64> {
        let mut out = vec![0u64];
        let mut acc = 0u64;
        for h in self.hf_by_degree() {
            acc += h as u64;
            out.push(acc);
        }
        out
    }

    fn hf_by_degree(&self) -> Vec<usize> {
        let top = self.degrees.iter().max().map_or(0, |d| *d as usize + 1);
        let mut hf = vec![0; top];
        for d in &self.degrees {
            hf[*d as usize] += 1;
        }
        hf
    }

    /// `(length, hf)` with `hf[i] = dim m^i/m^{i+1}`.
    pub fn hilbert_function(&self) -> (usize, Vec<usize>) {
        (self.dim(), self.hf_by_degree())
    }

    /// Dimensions of `m, m^2, ...` computed by repeated multiplication with
    /// the variables, independently of the basis grading.
    pub fn maxideal_power_dims(&self) -> Vec<usize> {
        let f = &self.field;
        let mut ech = Echelon::new(f, self.dim());
        let mut current: Vec<Vec<Scalar>> = Vec::new();
        for i in self.maxideal_basis() {
            if ech.insert(self.unit_vector(i)).is_ok() {
                current.push(self.unit_vector(i));
            }
        }
        let mut dims = Vec::new();
        while !current.is_empty() {
            dims.push(current.len());
            let mut next = Echelon::new(f, self.dim());
            let mut kept = Vec::new();
            for a in &current {
                for v in 0..self.nvars() {
                    let prod = self.mul_var(v, a);
                    if next.insert(prod.clone()).is_ok() {
                        kept.push(prod);
                    }
                }
            }
            current = kept;
        }
        dims
    }

    /// Least `n` with `m^n = 0`.
    pub fn nilpotency_index(&self) -> Result<u32> {
        self.degrees.iter().max().map(|d| d + 1).ok_or(Error::ZeroRing)
    }

    /// Embedding dimension `dim m/m^2`.
    pub fn embdim(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 1).count()
    }

    /// Basis of `{a : a m^d = 0}`.
    pub fn annihilator_of_power(&self, d: u32) -> Result<Vec<Vec<Scalar>>> {
        if self.is_zero_ring() {
            return Err(Error::ZeroRing);
        }
        let span: Vec<usize> = (0..self.dim()).filter(|&j| self.degrees[j] >= d).collect();
        let n = self.dim();
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row = vec![self.field.zero(); n * span.len()];
                for (t, &j) in span.iter().enumerate() {
                    for (k, s) in self.mul_basis(i, j) {
                        row[t * n + k] = s.clone();
                    }
                }
                row
            })
            .collect();
        Ok(left_kernel(&self.field, n * span.len(), &rows))
    }

    /// `(dimension, basis)` of the socle `{a : a m = 0}`, computed as the
    /// kernel of the stacked multiplication-by-variable maps.
    pub fn socle(&self) -> Result<(usize, Vec<Vec<Scalar>>)> {
        if self.is_zero_ring() {
            return Err(Error::ZeroRing);
        }
        let n = self.dim();
        let r = self.nvars();
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row = vec![self.field.zero(); n * r];
                for v in 0..r {
                    for (k, s) in &self.var_mult[v][i] {
                        row[v * n + k] = s.clone();
                    }
                }
                row
            })
            .collect();
        let basis = left_kernel(&self.field, n * r, &rows);
        Ok((basis.len(), basis))
    }

    /// Same algebra with scalars embedded in a larger field.
    pub fn base_change(&self, target: &Field) -> Result<ArtinAlgebra> {
        if target == &self.field {
            return Ok(self.clone());
        }
        let emb = self.field.embedding_into(target)?;
        let map_sparse = |s: &Sparse| -> Sparse { s.iter().map(|(i, c)| (*i, emb.apply(c))).collect() };
        let map_poly = |p: &Poly| p.map_coeffs(target, |c| emb.apply(c));
        Ok(ArtinAlgebra {
            field: target.clone(),
            vars: self.vars.clone(),
            relations: self.relations.iter().map(map_poly).collect(),
            cap: self.cap,
            tuple: self.tuple.as_ref().map(|t| t.iter().map(map_poly).collect()),
            origin: self.origin,
            basis: self.basis.clone(),
            degrees: self.degrees.clone(),
            index: self.index.clone(),
            nf: self.nf.iter().map(|(m, s)| (m.clone(), map_sparse(s))).collect(),
            var_mult: self.var_mult.iter().map(|row| row.iter().map(map_sparse).collect()).collect(),
        })
    }

    /// Image of an element under the quotient map onto `other`, an algebra on
    /// the same variables whose defining ideal contains this one's.
    pub fn project_onto(&self, other: &ArtinAlgebra, a: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = other.zero();
        for (i, c) in a.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (k, s) in other.monomial_nf(&self.basis[i]) {
                out[*k] = f.mul_add(&out[*k], c, s);
            }
        }
        out
    }

    /// Monomials of degree `cap`, which vanish in the algebra.
    pub fn cap_monomials(&self) -> Vec<Monomial> {
        monomials_of_degree(self.nvars(), self.cap)
    }
}

/// Evaluates polynomials at fixed images of the variables, caching monomial
/// values.
pub struct Evaluator<'a> {
    alg: &'a ArtinAlgebra,
    images: &'a [Vec<Scalar>],
    cache: HashMap<Monomial, Vec<Scalar>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(alg: &'a ArtinAlgebra, images: &'a [Vec<Scalar>]) -> Self {
        Evaluator {
            alg,
            images,
            cache: HashMap::new(),
        }
    }

    pub fn monomial(&mut self, m: &Monomial) -> Vec<Scalar> {
        if let Some(v) = self.cache.get(m) {
            return v.clone();
        }
        let value = match m.exps().iter().position(|&e| e > 0) {
            None => self.alg.one(),
            Some(v) => {
                let mut exps = m.exps().to_vec();
                exps[v] -= 1;
                let rest = self.monomial(&Monomial::new(exps));
                self.alg.mul(&rest, &self.images[v])
            }
        };
        self.cache.insert(m.clone(), value.clone());
        value
    }

    pub fn poly(&mut self, p: &Poly) -> Vec<Scalar> {
        let f = self.alg.field.clone();
        let mut out = self.alg.zero();
        for (m, c) in p.terms() {
            let v = self.monomial(m);
            for (o, x) in out.iter_mut().zip(&v) {
                if !f.is_zero(x) {
                    *o = f.mul_add(o, c, x);
                }
            }
        }
        out
    }
}

//! Multivariate polynomials over an exact field, monomial enumeration and
//! the truncated quotients `k[x]/(I + m^n)`.

mod quotient;

pub use quotient::{
    graded_component_rank, truncated_quotient, truncated_quotient_dim, GradedComponents,
    TruncatedQuotient,
};

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::exactcore::{Field, Scalar};

/// Exponent vector. Ordered graded-lexicographically: by total degree, then
/// lexicographically with `x_1 > x_2 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        }
    }

    /// Text form such as `x^2*y`; `1` for the empty monomial.
    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomials of degree exactly `d`, lexicographically descending
/// (`x^d` first).
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(nvars, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    let mut cur = vec![0; nvars];
    rec(nvars, 0, d, &mut cur, &mut out);
    out
}

/// Monomials of degree `< n` in local column order: ascending degree, and
/// lexicographically descending within a degree.
pub fn monomials_below(nvars: usize, n: u32) -> Vec<Monomial> {
    (0..n).flat_map(|d| monomials_of_degree(nvars, d)).collect()
}

/// `C(n, k)` as `u128`; saturates instead of overflowing.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn count_monomials(nvars: usize, d: u64) -> u128 {
    if nvars == 0 {
        return (d == 0) as u128;
    }
    binomial(d + nvars as u64 - 1, nvars as u64 - 1)
}

/// Polynomial with nonzero coefficients keyed by monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        Poly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: Scalar) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn term(field: &Field, mono: Monomial, c: Scalar) -> Self {
        let nvars = mono.nvars();
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(mono, c);
        }
        Poly {
            field: field.clone(),
            nvars,
            terms,
        }
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), field.one())
    }

    pub fn from_terms(field: &Field, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = self.field.add(v, c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(&self.field, self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &self.field.mul(v, c));
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(&self.field, self.nvars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Poly {
        let f = &self.field;
        let mut out = Poly::zero(f, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[v];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[v] -= 1;
            out.add_term(Monomial::new(exps), &f.mul(c, &f.from_i64(e as i64)));
        }
        out
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.order(), self.degree()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Drop all terms of degree `>= n`.
    pub fn truncate(&self, n: u32) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients mapped through `f` into another field.
    pub fn map_coeffs(&self, target: &Field, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        Poly::from_terms(target, self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Canonical text, terms in descending graded-lex order.
    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let f = &self.field;
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = f.is_negative(c);
            let abs = if neg { f.neg(c) } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.format(names);
            if m.is_one() {
                let s = f.format(&abs);
                if f.needs_parens(&abs) {
                    out.push_str(&format!("({s})"));
                } else {
                    out.push_str(&s);
                }
            } else if f.is_one(&abs) {
                out.push_str(&mono);
            } else {
                let s = f.format(&abs);
                if f.needs_parens(&abs) {
                    out.push_str(&format!("({s})*{mono}"));
                } else {
                    out.push_str(&format!("{s}*{mono}"));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grlex_order() {
        let x2 = Monomial::new(vec![2, 0]);
        let xy = Monomial::new(vec![1, 1]);
        let y3 = Monomial::new(vec![0, 3]);
        assert!(x2 > xy);
        assert!(y3 > x2);
        let d2 = monomials_of_degree(2, 2);
        assert_eq!(d2, vec![x2, xy, Monomial::new(vec![0, 2])]);
    }

    #[test]
    fn monomial_counts() {
        for r in 1..4 {
            for n in 0..8u32 {
                let all = monomials_below(r, n).len() as u128;
                assert_eq!(all, binomial(n as u64 + r as u64 - 1, r as u64), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn arithmetic_and_format() {
        let f = Field::rationals();
        let x = Poly::var(&f, 2, 0);
        let y = Poly::var(&f, 2, 1);
        let p = y.pow(2).sub(&x.pow(3));
        assert_eq!(p.format(&names(&["x", "y"])), "-x^3 + y^2");
        assert_eq!(p.order(), Some(2));
        assert_eq!(p.degree(), Some(3));
        assert!(!p.is_homogeneous());
        let sq = x.add(&y).pow(2);
        assert_eq!(sq.format(&names(&["x", "y"])), "x^2 + 2*x*y + y^2");
        assert!(x.sub(&x).is_zero());
    }
}

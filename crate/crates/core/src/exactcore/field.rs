//! Coefficient fields: the rationals and finite fields `F_{p^m}`.
//!
//! Finite field elements are encoded as integers `0..q`: the base-`p` digits
//! of the code are the coefficients of the element in the power basis
//! `1, a, a^2, ...` where `a` is a root of the defining polynomial. Prime
//! fields are the special case `m = 1`, where the code is the residue itself.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest field cardinality for which extension tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Description of a coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldDesc {
    Rationals,
    PrimeField { p: u64 },
    /// `minpoly` lists the coefficients of a monic irreducible polynomial of
    /// degree `m` over `F_p`, constant term first.
    ExtensionField { p: u64, m: u32, minpoly: Vec<u64> },
}

impl FieldDesc {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDesc::Rationals => 0,
            FieldDesc::PrimeField { p } | FieldDesc::ExtensionField { p, .. } => *p,
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            FieldDesc::Rationals | FieldDesc::PrimeField { .. } => 1,
            FieldDesc::ExtensionField { m, .. } => *m,
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::PrimeField { p } => write!(f, "F_{p}"),
            FieldDesc::ExtensionField { p, m, minpoly } => {
                write!(f, "F_{p}^{m} minpoly {}", format_fp_poly(minpoly, "a"))
            }
        }
    }
}

/// A field element. `Q` values are always in lowest terms (guaranteed by
/// `BigRational`); `F` values are codes valid for the owning field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Q(BigRational),
    F(u32),
}

struct GfTables {
    /// `exp[i] = g^i` for a primitive element `g`, `i < q - 1`.
    exp: Vec<u32>,
    /// `log[c]` for nonzero codes; `log[0]` is unused.
    log: Vec<u32>,
}

struct FieldInner {
    desc: FieldDesc,
    p: u64,
    m: u32,
    q: u64,
    tables: Option<GfTables>,
}

/// Shared handle to a validated coefficient field.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.desc == other.inner.desc
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.inner.desc)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.desc.fmt(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// --- dense polynomials over F_p, coefficient vectors constant term first ---

fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

fn fp_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn fp_poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = fp_trim(b.to_vec());
    let mut r = fp_trim(a.to_vec());
    let lead_inv = fp_inv(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * lead_inv % p;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn format_fp_poly(coeffs: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if mono.is_empty() {
            c.to_string()
        } else if c == 1 {
            mono
        } else {
            format!("{c}*{mono}")
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Irreducibility by trial division against every monic polynomial of degree
/// `1..=deg/2`.
pub fn is_irreducible_fp(f: &[u64], p: u64) -> bool {
    let f = fp_trim(f.iter().map(|c| c % p).collect());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if fp_poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The first monic irreducible polynomial of degree `m` over `F_p`, in the
/// enumeration order of codes (constant term as least significant digit).
pub fn first_irreducible(p: u64, m: u32) -> Vec<u64> {
    let count = p.pow(m);
    for code in 0..count {
        let mut g = Vec::with_capacity(m as usize + 1);
        let mut c = code;
        for _ in 0..m {
            g.push(c % p);
            c /= p;
        }
        g.push(1);
        if is_irreducible_fp(&g, p) {
            return g;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    pub fn rationals() -> Field {
        Field {
            inner: Arc::new(FieldInner {
                desc: FieldDesc::Rationals,
                p: 0,
                m: 1,
                q: 0,
                tables: None,
            }),
        }
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::Field(format!("prime {p} exceeds 2^31")));
        }
        Ok(Field {
            inner: Arc::new(FieldInner {
                desc: FieldDesc::PrimeField { p },
                p,
                m: 1,
                q: p,
                tables: None,
            }),
        })
    }

    /// `F_{p^m}` defined by `minpoly` (constant term first, monic of degree
    /// `m`). With `m = 1` this is the prime field.
    pub fn extension(p: u64, m: u32, minpoly: Vec<u64>) -> Result<Field> {
        if m == 0 {
            return Err(Error::Field("extension degree must be positive".into()));
        }
        if m == 1 {
            return Field::prime(p);
        }
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or_else(|| Error::Field(format!("F_{p}^{m} exceeds the supported size")))?;
        let minpoly: Vec<u64> = minpoly.iter().map(|c| c % p).collect();
        let minpoly = fp_trim(minpoly);
        if minpoly.len() != m as usize + 1 {
            return Err(Error::Field(format!(
                "minimal polynomial {} does not have degree {m}",
                format_fp_poly(&minpoly, "a")
            )));
        }
        if *minpoly.last().unwrap() != 1 {
            return Err(Error::Field("minimal polynomial must be monic".into()));
        }
        if !is_irreducible_fp(&minpoly, p) {
            return Err(Error::Field(format!(
                "{} is reducible over F_{p}",
                format_fp_poly(&minpoly, "a")
            )));
        }
        let tables = build_tables(p, m, q, &minpoly)?;
        Ok(Field {
            inner: Arc::new(FieldInner {
                desc: FieldDesc::ExtensionField { p, m, minpoly },
                p,
                m,
                q,
                tables: Some(tables),
            }),
        })
    }

    /// `F_{p^m}` with the first irreducible polynomial of degree `m`.
    pub fn galois(p: u64, m: u32) -> Result<Field> {
        if m <= 1 {
            return Field::prime(p);
        }
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        Field::extension(p, m, first_irreducible(p, m))
    }

    pub fn from_desc(desc: &FieldDesc) -> Result<Field> {
        match desc {
            FieldDesc::Rationals => Ok(Field::rationals()),
            FieldDesc::PrimeField { p } => Field::prime(*p),
            FieldDesc::ExtensionField { p, m, minpoly } => {
                Field::extension(*p, *m, minpoly.clone())
            }
        }
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.inner.desc
    }

    pub fn is_rational(&self) -> bool {
        self.inner.p == 0
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    /// Number of elements, `None` for the rationals.
    pub fn size(&self) -> Option<u64> {
        if self.is_rational() {
            None
        } else {
            Some(self.inner.q)
        }
    }

    pub fn zero(&self) -> Scalar {
        if self.is_rational() {
            Scalar::Q(BigRational::zero())
        } else {
            Scalar::F(0)
        }
    }

    pub fn one(&self) -> Scalar {
        if self.is_rational() {
            Scalar::Q(BigRational::one())
        } else {
            Scalar::F(1)
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        if self.is_rational() {
            Scalar::Q(BigRational::from_integer(v.clone()))
        } else {
            let p = BigInt::from(self.inner.p);
            let r = v.mod_floor(&p);
            Scalar::F(r.to_u32().expect("residue fits"))
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        let inv = self
            .inv(&d)
            .ok_or_else(|| Error::Field(format!("denominator {den} vanishes in {self}")))?;
        Ok(self.mul(&self.from_bigint(num), &inv))
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        self.from_ratio(r.numer(), r.denom())
    }

    /// The class of the extension generator `a`.
    pub fn generator(&self) -> Result<Scalar> {
        if self.inner.m < 2 {
            return Err(Error::Field(format!(
                "{self} has no extension generator `a`"
            )));
        }
        Ok(Scalar::F(self.inner.p as u32))
    }

    /// Element with the given power-basis coordinates over `F_p`.
    pub fn from_fp_coeffs(&self, coeffs: &[u64]) -> Scalar {
        let p = self.inner.p;
        let mut code = 0u64;
        for c in coeffs.iter().take(self.inner.m as usize).rev() {
            code = code * p + c % p;
        }
        Scalar::F(code as u32)
    }

    /// Power-basis coordinates over `F_p` of a finite field element.
    pub fn fp_coeffs(&self, s: &Scalar) -> Vec<u64> {
        let mut c = self.code(s) as u64;
        let p = self.inner.p;
        (0..self.inner.m)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    fn code(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::F(c) => *c,
            Scalar::Q(_) => panic!("rational scalar used in {self}"),
        }
    }

    fn rat<'a>(&self, s: &'a Scalar) -> &'a BigRational {
        match s {
            Scalar::Q(r) => r,
            Scalar::F(_) => panic!("finite field scalar used in Q"),
        }
    }

    /// All elements of a finite field in code order.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        self.size().map(|q| (0..q as u32).map(Scalar::F))
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Q(r) => r.is_zero(),
            Scalar::F(c) => *c == 0,
        }
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Q(r) => r.is_one(),
            Scalar::F(c) => *c == 1,
        }
    }

    fn add_codes(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        if self.inner.m == 1 {
            return ((a as u64 + b as u64) % p) as u32;
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.inner.m {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u32
    }

    fn neg_code(&self, a: u32) -> u32 {
        let p = self.inner.p;
        if self.inner.m == 1 {
            return ((p - a as u64) % p) as u32;
        }
        if p == 2 {
            return a;
        }
        let mut a = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.inner.m {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out as u32
    }

    fn mul_codes(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.inner.tables {
            None => ((a as u64 * b as u64) % self.inner.p) as u32,
            Some(t) => {
                let order = (self.inner.q - 1) as usize;
                let e = (t.log[a as usize] as usize + t.log[b as usize] as usize) % order;
                t.exp[e]
            }
        }
    }

    fn inv_code(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        match &self.inner.tables {
            None => Some(fp_inv(a as u64, self.inner.p) as u32),
            Some(t) => {
                let order = (self.inner.q - 1) as usize;
                let l = t.log[a as usize] as usize;
                Some(t.exp[(order - l) % order])
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::F(x), Scalar::F(y)) => Scalar::F(self.add_codes(*x, *y)),
            _ => Scalar::Q(self.rat(a) + self.rat(b)),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::F(x), Scalar::F(y)) => Scalar::F(self.add_codes(*x, self.neg_code(*y))),
            _ => Scalar::Q(self.rat(a) - self.rat(b)),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::F(x) => Scalar::F(self.neg_code(*x)),
            Scalar::Q(r) => Scalar::Q(-r),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::F(x), Scalar::F(y)) => Scalar::F(self.mul_codes(*x, *y)),
            _ => Scalar::Q(self.rat(a) * self.rat(b)),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::F(x) => self.inv_code(*x).map(Scalar::F),
            Scalar::Q(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Q(r.recip()))
                }
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a + b * c`, the inner step of every elimination.
    pub fn mul_add(&self, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
        self.add(a, &self.mul(b, c))
    }

    /// Canonical text form, parseable back by the presentation grammar.
    pub fn format(&self, s: &Scalar) -> String {
        match s {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::F(c) => {
                if self.inner.m == 1 {
                    c.to_string()
                } else {
                    format_fp_poly(&self.fp_coeffs(s), "a")
                }
            }
        }
    }

    /// Whether the canonical text of `s` needs parentheses when used as a
    /// coefficient in a product.
    pub fn needs_parens(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Q(_) => false,
            Scalar::F(_) => self.inner.m > 1 && self.fp_coeffs(s).iter().filter(|c| **c != 0).count() > 1,
        }
    }

    /// Whether the value is "negative" for printing purposes (only over Q).
    pub fn is_negative(&self, s: &Scalar) -> bool {
        matches!(s, Scalar::Q(r) if r.is_negative())
    }

    /// Embedding of `self` into `target`, which must be a finite field of the
    /// same characteristic whose degree is a multiple of `self`'s.
    pub fn embedding_into(&self, target: &Field) -> Result<Embedding> {
        if self.is_rational() || target.is_rational() {
            if self.is_rational() && target.is_rational() {
                return Ok(Embedding {
                    source: self.clone(),
                    target: target.clone(),
                    table: None,
                });
            }
            return Err(Error::Field(
                "base change is only supported between finite fields".into(),
            ));
        }
        if self.characteristic() != target.characteristic() {
            return Err(Error::Field(format!(
                "no embedding of {self} into {target}: characteristics differ"
            )));
        }
        if target.degree() % self.degree() != 0 {
            return Err(Error::Field(format!(
                "no embedding of {self} into {target}: degree {} does not divide {}",
                self.degree(),
                target.degree()
            )));
        }
        let p = self.characteristic();
        let root = match &self.inner.desc {
            FieldDesc::ExtensionField { minpoly, .. } => {
                let mut found = None;
                for cand in target.elements().expect("finite") {
                    let mut acc = target.zero();
                    for c in minpoly.iter().rev() {
                        acc = target.add(&target.mul(&acc, &cand), &target.from_i64(*c as i64));
                    }
                    if target.is_zero(&acc) {
                        found = Some(cand);
                        break;
                    }
                }
                found.ok_or_else(|| {
                    Error::Field(format!("{target} contains no root of the minimal polynomial of {self}"))
                })?
            }
            _ => target.zero(),
        };
        let q = self.inner.q as u32;
        let mut table = Vec::with_capacity(q as usize);
        for code in 0..q {
            let coeffs = self.fp_coeffs(&Scalar::F(code));
            let mut acc = target.zero();
            for c in coeffs.iter().rev() {
                acc = target.add(&target.mul(&acc, &root), &target.from_i64((*c % p) as i64));
            }
            table.push(acc);
        }
        Ok(Embedding {
            source: self.clone(),
            target: target.clone(),
            table: Some(table),
        })
    }

    /// Exact rational value of a scalar when the field is `Q`.
    pub fn as_rational(&self, s: &Scalar) -> Option<BigRational> {
        match s {
            Scalar::Q(r) => Some(r.clone()),
            Scalar::F(_) => None,
        }
    }

    /// Small integer value of a prime-field element, or of a rational integer.
    pub fn as_i64(&self, s: &Scalar) -> Option<i64> {
        match s {
            Scalar::Q(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::F(c) if self.inner.m == 1 => Some(*c as i64),
            _ => None,
        }
    }
}

fn build_tables(p: u64, m: u32, q: u64, minpoly: &[u64]) -> Result<GfTables> {
    // Multiply codes via polynomial arithmetic modulo the defining polynomial;
    // used only while searching for a primitive element.
    let to_digits = |mut c: u64| -> Vec<u64> {
        (0..m)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    };
    let from_digits = |d: &[u64]| -> u64 { d.iter().rev().fold(0u64, |acc, x| acc * p + x) };
    let slow_mul = |a: u64, b: u64| -> u64 {
        let da = to_digits(a);
        let db = to_digits(b);
        let mut prod = vec![0u64; 2 * m as usize];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut r = fp_poly_rem(&prod, minpoly, p);
        r.resize(m as usize, 0);
        from_digits(&r)
    };
    let order = q - 1;
    for g in 2..q {
        let mut exp = Vec::with_capacity(order as usize);
        let mut x = 1u64;
        let mut ok = true;
        for i in 0..order {
            if i > 0 && x == 1 {
                ok = false;
                break;
            }
            exp.push(x as u32);
            x = slow_mul(x, g);
        }
        if ok && x == 1 {
            let mut log = vec![0u32; q as usize];
            for (i, e) in exp.iter().enumerate() {
                log[*e as usize] = i as u32;
            }
            return Ok(GfTables { exp, log });
        }
    }
    Err(Error::Field("no primitive element found".into()))
}

/// A field embedding `F_{p^m} -> F_{p^{m'}}` (or the identity on `Q`).
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    table: Option<Vec<Scalar>>,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, s: &Scalar) -> Scalar {
        match (&self.table, s) {
            (Some(t), Scalar::F(c)) => t[*c as usize].clone(),
            _ => s.clone(),
        }
    }
}

//! Hilbert series, Hilbert-Samuel polynomials, dimension, multiplicity and
//! Euler characteristics.
//!
//! Two polynomials are kept apart throughout: the degreewise Hilbert
//! polynomial `P(n) = dim (S/I)_n` of a graded ring, and the cumulative
//! polynomial `ℓ(R/m^n)`, which has one degree more.

mod ratpoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactcore::ser;
use crate::poly::{truncated_quotient, GradedComponents};
use crate::presentation::{Mode, Presentation};

pub use ratpoly::RatPoly;

/// `Q(t) / (1 - t)^pole_order` with `Q(1) != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalForm {
    #[serde(serialize_with = "ser::ints")]
    pub numerator: Vec<BigInt>,
    pub pole_order: usize,
}

impl RationalForm {
    pub fn numerator_poly(&self) -> RatPoly {
        RatPoly::from_bigints(&self.numerator)
    }

    /// Series coefficients `h_0 .. h_{len-1}`.
    pub fn expand(&self, len: usize) -> Vec<BigInt> {
        let mut h: Vec<BigInt> = (0..len)
            .map(|i| self.numerator.get(i).cloned().unwrap_or_default())
            .collect();
        for _ in 0..self.pole_order {
            for i in 1..len {
                let prev = h[i - 1].clone();
                h[i] += prev;
            }
        }
        h
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HilbertSource {
    GradedExact,
    LocalFitted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// `h_0 .. h_N`: graded pieces, or the Hilbert function of the associated
    /// graded ring for local inputs.
    pub series_prefix: Vec<u64>,
    pub rational_form: Option<RationalForm>,
    /// Degreewise Hilbert polynomial (graded inputs of positive dimension).
    pub degreewise: Option<RatPoly>,
    /// `ℓ(R/m^n)` as a polynomial in `n`.
    pub cumulative: RatPoly,
    /// The cumulative polynomial is exact for `n >= cumulative_from`.
    pub cumulative_from: u64,
    pub dim: usize,
    #[serde(serialize_with = "ser::int")]
    pub mult: BigInt,
    pub source: HilbertSource,
}

fn factorial(d: usize) -> BigRational {
    (1..=d as i64).fold(BigRational::one(), |acc, i| acc * BigRational::from_integer(i.into()))
}

fn generator_degree_sum(p: &Presentation) -> usize {
    p.gens().iter().filter_map(|g| g.degree()).map(|d| d as usize).sum()
}

/// Prefix length used when a caller does not choose one: enough to certify
/// the rational form with a few spare coefficients.
pub fn default_prefix_len(p: &Presentation) -> usize {
    generator_degree_sum(p) + p.nvars() + 2
}

/// Hilbert series of a standard graded presentation: the prefix `h_0..h_N`
/// and the rational form read off from it.
pub fn hilbert_series(p: &Presentation, n: usize) -> Result<HilbertData> {
    if !p.is_graded() {
        return Err(Error::Grading("presentation is local; use the jet fit".into()));
    }
    let bound = generator_degree_sum(p);
    if n <= bound {
        return Err(Error::PrefixTooShort(n));
    }
    let prefix: Vec<u64> = GradedComponents::new(p.field(), p.nvars(), p.gens())?
        .take(n + 1)
        .map(|piece| piece.hf as u64)
        .collect();
    // (1 - t)^r h(t), exact through degree N
    let mut c: Vec<BigInt> = prefix.iter().map(|&v| BigInt::from(v)).collect();
    for _ in 0..p.nvars() {
        for i in (1..c.len()).rev() {
            let prev = c[i - 1].clone();
            c[i] -= prev;
        }
    }
    if c[bound + 1..].iter().any(|v| !v.is_zero()) {
        return Err(Error::NotStabilized(format!(
            "(1-t)^{} times the series is not a polynomial of degree <= {bound}",
            p.nvars()
        )));
    }
    c.truncate(bound + 1);
    let mut q = RatPoly::from_bigints(&c);
    let mut d = p.nvars();
    while d > 0 {
        match q.div_one_minus_x() {
            Some(next) => {
                q = next;
                d -= 1;
            }
            None => break,
        }
    }
    let numerator: Vec<BigInt> = q.coeffs().iter().map(|c| c.to_integer()).collect();
    let form = RationalForm {
        numerator,
        pole_order: d,
    };
    let degreewise = if d >= 1 { Some(series_polynomial(&q, d)) } else { None };
    let cumulative = series_polynomial(&q.shift(), d + 1);
    let deg_q = q.degree().unwrap_or(0) as i64;
    let (dim, mult) = dim_mult_of(&cumulative);
    Ok(HilbertData {
        series_prefix: prefix,
        rational_form: Some(form),
        degreewise,
        cumulative,
        cumulative_from: (deg_q - d as i64 + 1).max(0) as u64,
        dim,
        mult,
        source: HilbertSource::GradedExact,
    })
}

/// `P(n) = Σ_{j<d} (-1)^j / j! · Q^(j)(1) · C(n + d - 1 - j, d - 1 - j)`,
/// the polynomial agreeing with the coefficients of `Q/(1-t)^d` for
/// `n > deg Q - d`.
fn series_polynomial(q: &RatPoly, d: usize) -> RatPoly {
    let mut out = RatPoly::zero();
    let mut deriv = q.clone();
    for j in 0..d {
        let sign = if j % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let c = sign * deriv.eval_int(1) / factorial(j);
        let k = (d - 1 - j) as i64;
        out = out.add(&RatPoly::binomial(k, k as usize).scale(&c));
        deriv = deriv.derivative();
    }
    out
}

/// Degreewise Hilbert polynomial of `Q(t)/(1-t)^d`.
pub fn hs_polynomial_from_series(q: &RatPoly, d: usize) -> Result<RatPoly> {
    if d == 0 {
        return Err(Error::PoleOrderZero("the series is a polynomial; its Hilbert polynomial is zero".into()));
    }
    if q.eval_int(1).is_zero() {
        return Err(Error::InvalidArgument("numerator vanishes at t = 1".into()));
    }
    Ok(series_polynomial(q, d))
}

/// `(d, e)`: the degree of the cumulative polynomial and `d!` times its
/// leading coefficient.
pub fn dim_mult(hd: &HilbertData) -> (usize, BigInt) {
    dim_mult_of(&hd.cumulative)
}

fn dim_mult_of(cumulative: &RatPoly) -> (usize, BigInt) {
    let d = cumulative.degree().unwrap_or(0);
    let e = factorial(d) * cumulative.leading();
    (d, e.to_integer())
}

/// `ℓ(R/m^k)` for `k = 0..=n`. Homogeneous ideals use the rational form of
/// their series (cheap for any `n`); others count standard monomials of the
/// `n`-th jet by degree.
pub fn jet_lengths(p: &Presentation, n: u32) -> Result<Vec<u64>> {
    if p.gens().iter().all(|g| g.is_homogeneous()) {
        let graded = Presentation::new(p.field().clone(), p.vars().to_vec(), p.gens().to_vec(), Mode::Graded, None)?;
        let hd = hilbert_series(&graded, default_prefix_len(&graded))?;
        let h = hd.rational_form.expect("graded").expand(n as usize);
        let mut out = Vec::with_capacity(n as usize + 1);
        let mut acc = BigInt::zero();
        out.push(0);
        for v in h {
            acc += v;
            out.push(acc.to_u64().ok_or_else(|| Error::Capacity {
                dim: usize::MAX,
                limit: u64::MAX as usize,
            })?);
        }
        return Ok(out);
    }
    let tq = truncated_quotient(p.field(), p.nvars(), p.gens(), n)?;
    let mut counts = vec![0u64; n as usize + 1];
    for m in &tq.basis {
        counts[m.degree() as usize + 1] += 1;
    }
    for k in 1..counts.len() {
        counts[k] += counts[k - 1];
    }
    Ok(counts)
}

/// A Hilbert-Samuel polynomial fitted to jet lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetFit {
    pub poly: RatPoly,
    pub certified: bool,
    /// First order from which the fit reproduces every length in the window.
    pub start: u32,
    pub difference_order: usize,
    pub verification: (u32, u32),
}

/// Fits `ℓ(R/m^n)` on `[n1, n2]` by finite differences and Newton's forward
/// formula, then checks the fit on the disjoint window right after `n2`.
pub fn hs_polynomial_from_jets(p: &Presentation, n1: u32, n2: u32) -> Result<JetFit> {
    if n1 == 0 || n2 < n1 + 2 {
        return Err(Error::WindowTooSmall {
            lo: n1 as usize,
            hi: n2 as usize,
            reason: "need n1 >= 1 and at least three orders".into(),
        });
    }
    let width = (n2 - n1 + 1) as usize;
    // the verification window has the width needed to pin the fit's degree
    let verify_hi = n2 + width.min(8) as u32;
    let all = jet_lengths(p, verify_hi)?;
    let window: Vec<BigInt> = all[n1 as usize..=n2 as usize].iter().map(|&v| v.into()).collect();
    let mut diffs = vec![window];
    for k in 0..width - 2 {
        // smallest start s whose k-th differences on [s, n2] are constant,
        // with at least three values at that level
        let level = &diffs[k];
        let last = level.last().expect("nonempty");
        let mut s = level.len();
        while s > 0 && &level[s - 1] == last {
            s -= 1;
        }
        if level.len() - s >= 3 {
            let start = n1 + s as u32;
            let mut poly = RatPoly::zero();
            for (j, lvl) in diffs.iter().enumerate().take(k + 1) {
                let c = BigRational::from_integer(lvl[s].clone());
                poly = poly.add(&RatPoly::binomial(-(start as i64), j).scale(&c));
            }
            let certified = (n2 + 1..=verify_hi)
                .all(|n| poly.eval_int(n as i64) == BigRational::from_integer(all[n as usize].into()));
            return Ok(JetFit {
                poly,
                certified,
                start,
                difference_order: k,
                verification: (n2 + 1, verify_hi),
            });
        }
        let next: Vec<BigInt> = level.windows(2).map(|w| &w[1] - &w[0]).collect();
        diffs.push(next);
    }
    Err(Error::NotStabilized(format!(
        "finite differences of the lengths on {n1}..{n2} never become constant"
    )))
}

/// Hilbert data of a local presentation from a certified jet fit on
/// `[n1, n2]`.
pub fn hilbert_data_local(p: &Presentation, n1: u32, n2: u32) -> Result<HilbertData> {
    let fit = hs_polynomial_from_jets(p, n1, n2)?;
    if !fit.certified {
        return Err(Error::NotStabilized(format!(
            "fit on {n1}..{n2} fails on the verification window {}..{}",
            fit.verification.0, fit.verification.1
        )));
    }
    let lengths = jet_lengths(p, n2)?;
    let (dim, mult) = dim_mult_of(&fit.poly);
    Ok(HilbertData {
        series_prefix: lengths.windows(2).map(|w| w[1] - w[0]).collect(),
        rational_form: None,
        degreewise: None,
        cumulative: fit.poly,
        cumulative_from: fit.start as u64,
        dim,
        mult,
        source: HilbertSource::LocalFitted,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerData {
    #[serde(serialize_with = "ser::rat")]
    pub chi: BigRational,
    /// `1 - χ`, reported when the section ring has dimension two.
    #[serde(serialize_with = "ser::opt_rat")]
    pub genus: Option<BigRational>,
    pub hilbert_polynomial: RatPoly,
}


/// `χ = P(0)` for the degreewise Hilbert polynomial of a section ring; for
/// curves the arithmetic genus `1 - χ`.
pub fn euler_characteristic(p: &Presentation) -> Result<EulerData> {
    let hd = hilbert_series(p, default_prefix_len(p))?;
    let form = hd.rational_form.as_ref().expect("graded");
    let poly = hs_polynomial_from_series(&form.numerator_poly(), form.pole_order)?;
    let chi = poly.eval_int(0);
    Ok(EulerData {
        genus: (form.pole_order == 2).then(|| BigRational::one() - &chi),
        chi,
        hilbert_polynomial: poly,
    })
}

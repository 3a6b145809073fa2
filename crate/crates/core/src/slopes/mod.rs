//! Quasi-slopes computed from jet lengths: `δ₀`, `ε₀`, the invariant `ρ`
//! and the rounding certificate for the dimension.
//!
//! Everything here works on length sequences `ℓ_k = ℓ(A/m^k)`, so jets of
//! large order never have to be built when their lengths are known.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::artin::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::exactcore::ser;
use crate::hilbert::{hilbert_series, hs_polynomial_from_jets, jet_lengths, RatPoly, default_prefix_len};
use crate::presentation::{FamilyTemplate, Mode, Presentation};

/// Decimal approximations are labeled with their precision.
fn ser_approx<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Approx {
        approx: f64,
        digits: u32,
    }
    Approx { approx: *v, digits: 12 }.serialize(s)
}

fn rat(v: u64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Least `k` with `ℓ_k = ℓ_n`; `lengths` runs over `k = 0..=n`.
fn nilpotency(lengths: &[u64]) -> Result<usize> {
    let last = *lengths.last().ok_or(Error::ZeroRing)?;
    if last == 0 {
        return Err(Error::ZeroRing);
    }
    Ok(lengths.iter().position(|&l| l == last).expect("present"))
}

/// The integer `k` with `k - 1/2 < log2(num/den) <= k + 1/2`, decided
/// exactly by comparing squares with powers of two.
pub fn round_log2(num: &BigInt, den: &BigInt) -> i64 {
    // 4^k b < 2a <= 4^(k+1) b with a = num^2, b = den^2
    let a2: BigInt = num * num * 2;
    let b: BigInt = den * den;
    let below = |k: i64| -> bool {
        // 4^k b < 2a
        if k >= 0 {
            (&b << (2 * k as usize)) < a2
        } else {
            b < (&a2 << (2 * (-k) as usize))
        }
    };
    let mut k = 0i64;
    while !below(k) {
        k -= 1;
    }
    while below(k + 1) {
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Delta0 {
    /// Nilpotency index `n`.
    pub order: u32,
    /// `ℓ(A)`.
    pub numerator: u64,
    /// `ℓ(A/m^⌊n/2⌋)`.
    pub denominator: u64,
    /// Display value of `log2(numerator / denominator)`, 12 decimals.
    #[serde(serialize_with = "ser_approx")]
    pub log2: f64,
    pub rounded: i64,
}

pub fn delta0_from_lengths(lengths: &[u64]) -> Result<Delta0> {
    let n = nilpotency(lengths)?;
    if n == 1 {
        return Err(Error::NilpotencyOne);
    }
    let num = lengths[n];
    let den = lengths[n / 2];
    let log2 = ((num as f64).log2() - (den as f64).log2()) * 1e12;
    Ok(Delta0 {
        order: n as u32,
        numerator: num,
        denominator: den,
        log2: log2.round() / 1e12,
        rounded: round_log2(&num.into(), &den.into()),
    })
}

pub fn delta0(a: &ArtinAlgebra) -> Result<Delta0> {
    delta0_from_lengths(&a.lengths())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eps0 {
    pub order: u32,
    /// `ℓ(A/m^⌊√n⌋)`.
    pub root_length: u64,
    pub length: u64,
    #[serde(serialize_with = "ser::rat")]
    pub value: BigRational,
}

pub fn eps0_from_lengths(lengths: &[u64]) -> Result<Eps0> {
    let n = nilpotency(lengths)?;
    let r = lengths[(n as u64).sqrt() as usize];
    let l = lengths[n];
    Ok(Eps0 {
        order: n as u32,
        root_length: r,
        length: l,
        value: BigRational::new((BigInt::from(r) * r).clone(), l.into()),
    })
}

pub fn eps0(a: &ArtinAlgebra) -> Result<Eps0> {
    eps0_from_lengths(&a.lengths())
}

/// The cumulative Hilbert-Samuel polynomial and the order from which it
/// gives every jet length exactly.
fn samuel_polynomial(p: &Presentation) -> Result<(RatPoly, u64)> {
    if p.gens().iter().all(|g| g.is_homogeneous()) {
        let graded = Presentation::new(p.field().clone(), p.vars().to_vec(), p.gens().to_vec(), Mode::Graded, None)?;
        let hd = hilbert_series(&graded, default_prefix_len(&graded))?;
        return Ok((hd.cumulative, hd.cumulative_from.max(1)));
    }
    let mut hi = 8;
    loop {
        let fit = hs_polynomial_from_jets(p, 1, hi)?;
        if fit.certified {
            return Ok((fit.poly, fit.start as u64));
        }
        if hi >= 64 {
            return Err(Error::NotStabilized(format!(
                "no certified Hilbert-Samuel polynomial on orders up to {hi}"
            )));
        }
        hi *= 2;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoResult {
    #[serde(serialize_with = "ser::rat")]
    pub value: BigRational,
    /// Whether some order attains the value; otherwise it is the limit of
    /// `f(n)` as `n` grows.
    pub attained: bool,
    pub argmax: Option<u64>,
    #[serde(serialize_with = "ser::rat")]
    pub tail_limit: BigRational,
    pub dim: usize,
    #[serde(serialize_with = "ser::rat")]
    pub mult: BigRational,
    /// Orders `1..=scan_to` were evaluated; beyond, `f` is monotone.
    pub scan_to: u64,
}

fn factorial(d: usize) -> BigRational {
    (1..=d as u64).fold(BigRational::one(), |acc, i| acc * rat(i))
}

/// `f(n) = d! ℓ_n / (e n^(d-1)) - n`.
pub fn rho_summand(len: u64, n: u64, d: usize, e: &BigRational) -> BigRational {
    let pow = (0..d.saturating_sub(1)).fold(BigRational::one(), |acc, _| acc * rat(n));
    factorial(d) * rat(len) / (e * pow) - rat(n)
}

/// Smallest `ρ >= 0` with `n^d - ρ n^(d-1) <= (d!/e) ℓ_n <= n^d + ρ n^(d-1)`
/// for all `n > 0`.
pub fn rho(p: &Presentation) -> Result<RhoResult> {
    let (poly, n1) = samuel_polynomial(p)?;
    let d = poly.degree().unwrap_or(0);
    if d == 0 {
        return Err(Error::DimensionZero("ρ needs a ring of positive dimension".into()));
    }
    let e = factorial(d) * poly.leading();
    // for n >= n1, f(n) = g(1/n) with g(u) = (d!/e) Σ_k c_{d-1-k} u^k
    let scale = factorial(d) / &e;
    let a: Vec<BigRational> = (0..d).map(|k| poly.coeff(d - 1 - k) * &scale).collect();
    let tail_limit = a[0].clone();
    let n_star = match (1..d).find(|&k| !a[k].is_zero()) {
        None => 1,
        Some(k0) => {
            let lead = (rat(k0 as u64) * &a[k0]).abs();
            let rest: BigRational = (k0 + 1..d).map(|k| rat(k as u64) * a[k].abs()).sum();
            let two = rat(2);
            // on 0 < u <= u*, g' keeps the sign of a_k0
            let u_star = if rest.is_zero() {
                BigRational::one()
            } else {
                (lead / (two * rest)).min(BigRational::one())
            };
            (BigRational::one() / u_star).ceil().to_integer().to_u64().unwrap_or(u64::MAX)
        }
    };
    let scan_to = n1.max(n_star).max(1);
    let direct = jet_lengths(p, (n1.min(scan_to)) as u32)?;
    let mut best = BigRational::zero();
    let mut argmax = None;
    for n in 1..=scan_to {
        let len = if n < n1 {
            direct[n as usize]
        } else {
            poly.eval_int(n as i64).to_integer().to_u64().expect("nonnegative length")
        };
        let f = rho_summand(len, n, d, &e).abs();
        if argmax.is_none() || f > best {
            best = f;
            argmax = Some(n);
        }
    }
    let limit = tail_limit.abs();
    let attained = best >= limit;
    Ok(RhoResult {
        value: if attained { best } else { limit },
        attained,
        argmax: if attained { argmax } else { None },
        tail_limit,
        dim: d,
        mult: e,
        scan_to,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuasiDimension {
    pub rounded: i64,
    pub n_used: u64,
    #[serde(serialize_with = "ser::rat")]
    pub rho: BigRational,
    pub delta0: Delta0,
    /// `n_used >= 10 ρ`.
    pub satisfied: bool,
    pub dim: usize,
}

/// Smallest even `n >= max(10 ρ, 2)`.
pub fn rounding_order(rho: &BigRational) -> u64 {
    let n = (rho * rat(10)).ceil().to_integer().to_u64().unwrap_or(u64::MAX).max(2);
    n + n % 2
}

/// `⌊δ₀(R/m^n)⌉` at the smallest even `n >= 10 ρ`.
pub fn quasi_dimension(p: &Presentation) -> Result<QuasiDimension> {
    let r = rho(p)?;
    let n = rounding_order(&r.value);
    let lengths = jet_lengths(p, n as u32)?;
    let d0 = delta0_from_lengths(&lengths)?;
    Ok(QuasiDimension {
        rounded: d0.rounded,
        n_used: n,
        satisfied: rat(n) >= &r.value * rat(10),
        rho: r.value,
        delta0: d0,
        dim: r.dim,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SlopeKind {
    Delta0,
    Eps0,
    Hilbert,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum TraceValue {
    Delta0(Delta0),
    Eps0(Eps0),
    Hilbert { prefix: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitClaim {
    pub value: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeTrace {
    pub kind: SlopeKind,
    pub orders: Vec<u32>,
    pub values: Vec<TraceValue>,
    pub limit_claim: Option<LimitClaim>,
}

/// A slope evaluated on the jets of the listed orders. The limit claim, when
/// the Hilbert-Samuel polynomial is available, is `d` for `δ₀` and `e/d!`
/// for `ε₀`.
pub fn slope_trace(p: &Presentation, kind: SlopeKind, orders: &[u32]) -> Result<SlopeTrace> {
    if orders.is_empty() || orders.windows(2).any(|w| w[0] >= w[1]) || orders[0] == 0 {
        return Err(Error::InvalidArgument("orders must be positive and strictly increasing".into()));
    }
    let lengths = jet_lengths(p, *orders.last().expect("nonempty"))?;
    let values = orders
        .iter()
        .map(|&n| {
            let prefix = &lengths[..=n as usize];
            Ok(match kind {
                SlopeKind::Delta0 => TraceValue::Delta0(delta0_from_lengths(prefix)?),
                SlopeKind::Eps0 => TraceValue::Eps0(eps0_from_lengths(prefix)?),
                SlopeKind::Hilbert => TraceValue::Hilbert {
                    prefix: prefix.windows(2).map(|w| w[1] - w[0]).collect(),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let limit_claim = match kind {
        SlopeKind::Hilbert => None,
        _ => samuel_polynomial(p).ok().and_then(|(poly, _)| {
            let d = poly.degree()?;
            Some(match kind {
                SlopeKind::Delta0 => LimitClaim {
                    value: d.to_string(),
                    source: "dimension".into(),
                },
                _ => LimitClaim {
                    value: poly.leading().to_string(),
                    source: "multiplicity / d!".into(),
                },
            })
        }),
    };
    Ok(SlopeTrace {
        kind,
        orders: orders.to_vec(),
        values,
        limit_claim,
    })
}

/// Hilbert functions of the `n`-th jets along a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyTrace {
    pub rows: Vec<(i64, Vec<u64>)>,
    /// First parameter from which the Hilbert function no longer changes.
    pub stable_from: i64,
}

pub fn family_hilbert_trace(tpl: &FamilyTemplate, n: u32) -> Result<FamilyTrace> {
    let mut rows = Vec::new();
    for w in tpl.range() {
        let lengths = jet_lengths(&tpl.instantiate(w)?, n)?;
        rows.push((w, lengths.windows(2).map(|x| x[1] - x[0]).collect::<Vec<u64>>()));
    }
    let last = rows.last().expect("nonempty range").1.clone();
    let mut from = rows.len();
    while from > 0 && rows[from - 1].1 == last {
        from -= 1;
    }
    let stable_from = rows[from].0;
    Ok(FamilyTrace { rows, stable_from })
}

//! The deformation semi-metric `d(R, S) = inf { 2^-n : R/m^n ≅ S/m^n }`,
//! certified order by order.

use serde::Serialize;

use crate::artin::{defpair_jet, jet, ArtinAlgebra};
use crate::error::{Error, Result};
use crate::iso::{decide_isomorphism, Budget, InvariantValue, IsoVerdict, Separator};
use crate::presentation::{FamilyTemplate, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderVerdict {
    pub order: u32,
    pub verdict: IsoVerdict,
}

/// Certified interval `[lower, upper]` for a distance. `upper = 2^-upper_exp`;
/// `lower = 2^-lower_exp`, or `0` when no order separated the inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceVerdict {
    pub lower_exp: Option<u32>,
    pub upper_exp: u32,
    pub exact: bool,
    pub per_order: Vec<OrderVerdict>,
}

impl DistanceVerdict {
    pub fn lower(&self) -> f64 {
        self.lower_exp.map_or(0.0, |a| 2f64.powi(-(a as i32)))
    }

    pub fn upper(&self) -> f64 {
        2f64.powi(-(self.upper_exp as i32))
    }

    /// Distance 1, proven at order one.
    fn one(separator: Separator) -> Self {
        DistanceVerdict {
            lower_exp: Some(0),
            upper_exp: 0,
            exact: true,
            per_order: vec![OrderVerdict {
                order: 1,
                verdict: IsoVerdict::NotIso { separator },
            }],
        }
    }
}

/// Residue fields differ (distance 1), or the comparison is rejected across
/// characteristics.
fn field_check(p: &Presentation, q: &Presentation) -> Result<Option<DistanceVerdict>> {
    let (f, g) = (p.field(), q.field());
    if f == g {
        return Ok(None);
    }
    if f.characteristic() != g.characteristic() {
        return Err(Error::FieldMismatch(f.to_string(), g.to_string()));
    }
    Ok(Some(DistanceVerdict::one(Separator {
        invariant: "residue-field".into(),
        left: InvariantValue::Text(f.to_string()),
        right: InvariantValue::Text(g.to_string()),
    })))
}

/// Runs the order scan. `pair(n)` builds the two algebras at order `n`.
fn scan(max_order: u32, budget: &Budget, pair: impl Fn(u32) -> Result<(ArtinAlgebra, ArtinAlgebra)>) -> Result<DistanceVerdict> {
    let mut per_order: Vec<OrderVerdict> = Vec::new();
    let mut first_not_iso = None;
    let mut last_iso = 0;
    for n in 1..=max_order {
        let (a, b) = pair(n)?;
        let verdict = decide_isomorphism(&a, &b, budget)?;
        match &verdict {
            IsoVerdict::NotIso { .. } => first_not_iso = Some(n),
            IsoVerdict::Iso { witness } => {
                // isomorphic at n implies isomorphic below n
                for earlier in per_order.iter_mut() {
                    if earlier.verdict.is_iso() {
                        continue;
                    }
                    let (sa, sb) = pair(earlier.order)?;
                    let w = witness.project(&sb)?;
                    w.verify(&sa, &sb).map_err(|e| {
                        Error::Inconsistency(format!(
                            "order {} is {} but the order {n} witness does not descend: {e}",
                            earlier.order,
                            earlier.verdict.status()
                        ))
                    })?;
                    earlier.verdict = IsoVerdict::Iso { witness: w };
                }
                last_iso = n;
            }
            IsoVerdict::Unknown { .. } => {}
        }
        per_order.push(OrderVerdict { order: n, verdict });
        if first_not_iso.is_some() {
            break;
        }
    }
    Ok(DistanceVerdict {
        lower_exp: first_not_iso.map(|a| a - 1),
        upper_exp: last_iso,
        exact: first_not_iso == Some(last_iso + 1),
        per_order,
    })
}

/// Certified bounds on `d(p, q)` from the jets of orders `1..=max_order`.
pub fn jet_distance(p: &Presentation, q: &Presentation, max_order: u32, budget: &Budget) -> Result<DistanceVerdict> {
    if let Some(v) = field_check(p, q)? {
        return Ok(v);
    }
    scan(max_order, budget, |n| Ok((jet(p, n)?, jet(q, n)?)))
}

/// Distance between deformation pairs, comparing `R/(x^n)` with `S/(y^n)`
/// through maps that send the tuple `x` to `y`.
pub fn defpair_distance(p: &Presentation, q: &Presentation, max_n: u32, budget: &Budget) -> Result<DistanceVerdict> {
    let (tp, tq) = (p.tuple().ok_or(Error::MissingTuple)?, q.tuple().ok_or(Error::MissingTuple)?);
    if tp.len() != tq.len() {
        // no morphisms between pairs with tuples of different length
        return Ok(DistanceVerdict::one(Separator {
            invariant: "tuple-length".into(),
            left: InvariantValue::Count(tp.len() as u64),
            right: InvariantValue::Count(tq.len() as u64),
        }));
    }
    if let Some(v) = field_check(p, q)? {
        return Ok(v);
    }
    scan(max_n, budget, |n| Ok((defpair_jet(p, n)?, defpair_jet(q, n)?)))
}

/// A ball of the metric and the Artinian ring it corresponds to; the radius
/// is `2^-radius_exp = 2^(1 - nilpotency)`.
#[derive(Clone, Debug)]
pub struct BallDescriptor {
    pub residue_ring: ArtinAlgebra,
    pub radius_exp: u32,
}

impl BallDescriptor {
    pub fn radius(&self) -> f64 {
        2f64.powi(-(self.radius_exp as i32))
    }
}

pub fn ball_descriptor(a: &ArtinAlgebra) -> Result<BallDescriptor> {
    let n = a.nilpotency_index()?;
    Ok(BallDescriptor {
        residue_ring: a.clone(),
        radius_exp: n - 1,
    })
}

/// Number of trailing family members that must agree.
pub const STABLE_TAIL: usize = 3;

/// Why the stable run starts where it does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    /// The whole range agrees.
    RangeStart,
    /// The previous member is provably different.
    Separated,
    /// The previous member could not be decided; the start may be earlier.
    Undecided,
}

#[derive(Clone, Debug)]
pub struct LimitJet {
    pub jet: ArtinAlgebra,
    pub stabilized_at: i64,
    pub boundary: Boundary,
    /// One verdict per member against the last member, from `stabilized_at`
    /// (or the undecided predecessor) to the end.
    pub verdicts: Vec<(i64, IsoVerdict)>,
}

/// The eventually constant `n`-th jet of a family, with the least parameter
/// from which every member's jet is isomorphic to it.
pub fn limit_jets(tpl: &FamilyTemplate, n: u32, budget: &Budget) -> Result<LimitJet> {
    let ws: Vec<i64> = tpl.range().collect();
    let jets: Vec<ArtinAlgebra> = ws
        .iter()
        .map(|&w| jet(&tpl.instantiate(w)?, n))
        .collect::<Result<_>>()?;
    let last = jets.len() - 1;
    let tail = STABLE_TAIL.min(jets.len());
    let mut verdicts = vec![];
    for i in (0..jets.len()).rev() {
        let v = decide_isomorphism(&jets[i], &jets[last], budget)?;
        let in_tail = i + tail > last;
        let w = ws[i];
        match &v {
            IsoVerdict::Iso { .. } => verdicts.push((w, v)),
            IsoVerdict::NotIso { separator } if in_tail => {
                return Err(Error::NotStabilized(format!(
                    "members w = {w} and w = {} differ in {}",
                    ws[last], separator.invariant
                )))
            }
            IsoVerdict::Unknown { .. } if in_tail => {
                return Err(Error::UnknownStabilization(format!(
                    "members w = {w} and w = {} could not be compared",
                    ws[last]
                )))
            }
            IsoVerdict::NotIso { .. } | IsoVerdict::Unknown { .. } => {
                let boundary = if v.is_not_iso() { Boundary::Separated } else { Boundary::Undecided };
                verdicts.push((w, v));
                verdicts.reverse();
                return Ok(LimitJet {
                    jet: jets[i + 1].clone(),
                    stabilized_at: ws[i + 1],
                    boundary,
                    verdicts,
                });
            }
        }
    }
    verdicts.reverse();
    Ok(LimitJet {
        jet: jets[0].clone(),
        stabilized_at: ws[0],
        boundary: Boundary::RangeStart,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn identical_inputs_never_claim_zero() {
        let p = pres("ring F_3[x,y]; local; ideal: y^2 - x^3;");
        let d = jet_distance(&p, &p, 5, &budget()).unwrap();
        assert_eq!(d.upper_exp, 5);
        assert_eq!(d.lower_exp, None);
        assert!(!d.exact);
        assert_eq!(d.lower(), 0.0);
    }

    #[test]
    fn square_vs_cube() {
        let p = pres("ring Q[x]; local; ideal: x^2;");
        let q = pres("ring Q[x]; local; ideal: x^3;");
        let d = jet_distance(&p, &q, 6, &budget()).unwrap();
        assert_eq!((d.lower_exp, d.upper_exp, d.exact), (Some(2), 2, true));
        assert_eq!(d.per_order.len(), 3);
        assert_eq!(d.upper(), 0.25);
    }

    #[test]
    fn line_vs_plane() {
        let p = pres("ring Q[x]; local; ideal: ;");
        let q = pres("ring Q[x,y]; local; ideal: ;");
        let d = jet_distance(&p, &q, 4, &budget()).unwrap();
        assert_eq!((d.lower_exp, d.upper_exp, d.exact), (Some(1), 1, true));
    }

    #[test]
    fn fields_of_one_characteristic_are_far_apart() {
        let p = pres("ring F_2[x]; local; ideal: x^2;");
        let q = pres("ring F_2^2 minpoly a^2 + a + 1 [x]; local; ideal: x^2;");
        let d = jet_distance(&p, &q, 4, &budget()).unwrap();
        assert_eq!((d.lower_exp, d.upper_exp, d.exact), (Some(0), 0, true));
        let r = pres("ring F_3[x]; local; ideal: x^2;");
        assert!(matches!(jet_distance(&p, &r, 4, &budget()), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn balls() {
        let alg = |t: &str, n| jet(&pres(t), n).unwrap();
        assert_eq!(ball_descriptor(&alg("ring Q[x]; local; ideal: ;", 1)).unwrap().radius(), 1.0);
        assert_eq!(ball_descriptor(&alg("ring Q[x]; local; ideal: x^3;", 9)).unwrap().radius(), 0.25);
        assert_eq!(ball_descriptor(&alg("ring Q[x,y]; local; ideal: ;", 2)).unwrap().radius(), 0.5);
        let zero = jet(&pres("ring Q[x]; local; ideal: ;"), 0).unwrap();
        assert!(matches!(ball_descriptor(&zero), Err(Error::ZeroRing)));
    }

    #[test]
    fn deformation_pairs() {
        let p = pres("ring Q[x]; local; ideal: ; tuple: x;");
        let d = defpair_distance(&p, &p, 4, &budget()).unwrap();
        assert!(d.per_order.iter().all(|o| o.verdict.is_iso()));
        let q = pres("ring Q[x]; local; ideal: x^5; tuple: x;");
        let d = defpair_distance(&p, &q, 8, &budget()).unwrap();
        assert_eq!((d.lower_exp, d.upper_exp, d.exact), (Some(5), 5, true));
        let two = pres("ring Q[x,y]; local; ideal: ; tuple: x, y;");
        let d = defpair_distance(&p, &two, 4, &budget()).unwrap();
        assert_eq!((d.lower(), d.upper(), d.exact), (1.0, 1.0, true));
        let bare = pres("ring Q[x]; local; ideal: ;");
        assert!(matches!(defpair_distance(&p, &bare, 2, &budget()), Err(Error::MissingTuple)));
    }

    #[test]
    fn limit_of_cusps() {
        let t = FamilyTemplate::new("ring Q[x,y]; local; ideal: y^2 - x^w;", 1, 10).unwrap();
        let l = limit_jets(&t, 3, &budget()).unwrap();
        assert_eq!(l.stabilized_at, 3);
        assert_eq!(l.boundary, Boundary::Separated);
        let target = jet(&pres("ring Q[x,y]; local; ideal: y^2;"), 3).unwrap();
        assert!(decide_isomorphism(&l.jet, &target, &budget()).unwrap().is_iso());
    }

    #[test]
    fn constant_and_unstable_families() {
        let t = FamilyTemplate::new("ring Q[x]; local; ideal: x^3;", 1, 5).unwrap();
        let l = limit_jets(&t, 4, &budget()).unwrap();
        assert_eq!((l.stabilized_at, l.boundary), (1, Boundary::RangeStart));
        let t = FamilyTemplate::new("ring Q[x]; local; ideal: x^(11-w);", 1, 10).unwrap();
        assert!(matches!(limit_jets(&t, 3, &budget()), Err(Error::NotStabilized(_))));
    }

    #[test]
    fn unknown_orders_are_backfilled() {
        // over F_3 the two twisted forms need F_9: with no extension budget
        // the scan stays UNKNOWN, with it every order is ISO
        let p = pres("ring F_3[x,y]; local; ideal: x^2 + y^2, x*y;");
        let q = pres("ring F_3[x,y]; local; ideal: x*y, x^2 - y^2;");
        let d = jet_distance(&p, &q, 4, &budget()).unwrap();
        assert_eq!(d.upper_exp, 2);
        assert!(d.per_order[2].verdict.status() == "UNKNOWN");
        let wide = Budget {
            ext_degree_max: 2,
            ..budget()
        };
        let d = jet_distance(&p, &q, 4, &wide).unwrap();
        assert_eq!(d.upper_exp, 4);
    }
}

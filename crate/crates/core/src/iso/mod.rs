//! Isomorphism of Artinian local algebras: invariant separation, witness
//! search after finite base change, and verifiable witnesses.

mod search;
mod signature;
mod witness;

use serde::Serialize;

use crate::artin::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::exactcore::Field;

pub use signature::{derivation_dim, invariant_signature, InvariantSignature, InvariantValue};
pub use witness::IsoWitness;

/// Limits for the witness search. `ext_degree_max` is the largest factor by
/// which the coefficient field is extended; `effort` caps the number of
/// search nodes per direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub ext_degree_max: u32,
    pub effort: u64,
    /// Restrict to degree-preserving maps (for standard graded algebras).
    pub graded: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            ext_degree_max: 1,
            effort: 1_000_000,
            graded: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separator {
    pub invariant: String,
    pub left: InvariantValue,
    pub right: InvariantValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    /// Largest extension degree searched (relative to the input field).
    pub ext_degree: u32,
    pub effort: u64,
    /// Whether every field up to `ext_degree` was searched completely.
    pub exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum IsoVerdict {
    #[serde(rename = "ISO")]
    Iso { witness: IsoWitness },
    #[serde(rename = "NOT_ISO")]
    NotIso { separator: Separator },
    #[serde(rename = "UNKNOWN")]
    Unknown { bounds: SearchBounds },
}

impl IsoVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            IsoVerdict::Iso { .. } => "ISO",
            IsoVerdict::NotIso { .. } => "NOT_ISO",
            IsoVerdict::Unknown { .. } => "UNKNOWN",
        }
    }

    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso { .. })
    }

    pub fn is_not_iso(&self) -> bool {
        matches!(self, IsoVerdict::NotIso { .. })
    }

    pub fn witness(&self) -> Option<&IsoWitness> {
        match self {
            IsoVerdict::Iso { witness } => Some(witness),
            _ => None,
        }
    }
}

/// `A` with scalars extended from `F_{p^m}` to `F_{p^{m'}}`.
pub fn base_change(a: &ArtinAlgebra, m_prime: u32) -> Result<ArtinAlgebra> {
    let f = a.field();
    if f.is_rational() {
        return Err(Error::Field("base change is only defined over finite fields".into()));
    }
    let m = f.degree();
    if m_prime == 0 || m_prime % m != 0 {
        return Err(Error::Field(format!("degree {m_prime} is not a multiple of {m}")));
    }
    if m_prime == m {
        return Ok(a.clone());
    }
    a.base_change(&Field::galois(f.characteristic(), m_prime)?)
}

fn separate(a: &ArtinAlgebra, b: &ArtinAlgebra) -> Option<Separator> {
    let ta = a.tuple().map(|t| t.len());
    let tb = b.tuple().map(|t| t.len());
    if ta != tb {
        let v = |t: Option<usize>| t.map_or(InvariantValue::Missing, |n| InvariantValue::Count(n as u64));
        return Some(Separator {
            invariant: "tuple-length".into(),
            left: v(ta),
            right: v(tb),
        });
    }
    let sa = invariant_signature(a);
    let sb = invariant_signature(b);
    sa.first_difference(&sb).map(|(name, left, right)| Separator {
        invariant: name.into(),
        left,
        right,
    })
}

/// Decide whether `A ≅ B`, over the common field extended by a factor of at
/// most `budget.ext_degree_max`. Tuples, when present, must correspond.
///
/// `NOT_ISO` is only reported with a differing invariant: a failed search
/// says nothing about larger extensions, so it ends in `UNKNOWN`.
pub fn decide_isomorphism(a: &ArtinAlgebra, b: &ArtinAlgebra, budget: &Budget) -> Result<IsoVerdict> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().to_string(), b.field().to_string()));
    }
    if let Some(separator) = separate(a, b) {
        return Ok(IsoVerdict::NotIso { separator });
    }
    if a.is_zero_ring() {
        return Ok(IsoVerdict::Iso {
            witness: IsoWitness::from_vectors(a, b, &vec![Vec::new(); a.nvars()]),
        });
    }
    let f = a.field();
    let mut effort = 0;
    let mut searched = 0;
    let mut exhausted = true;
    let max_ext = if f.is_rational() { 1 } else { budget.ext_degree_max.max(1) };
    for k in 1..=max_ext {
        let (ax, bx) = if k == 1 {
            (a.clone(), b.clone())
        } else {
            (base_change(a, f.degree() * k)?, base_change(b, f.degree() * k)?)
        };
        let mut forward = 0;
        let outcome = search::search(&ax, &bx, budget.graded, budget.effort, &mut forward);
        effort += forward;
        let witness = match outcome {
            search::Outcome::Found(images) => Some(IsoWitness::from_vectors(&ax, &bx, &images)),
            other => {
                let mut backward = 0;
                let reverse = search::search(&bx, &ax, budget.graded, budget.effort, &mut backward);
                effort += backward;
                match reverse {
                    search::Outcome::Found(images) => Some(IsoWitness::from_vectors(&bx, &ax, &images).invert(&bx, &ax)?),
                    rev => {
                        let complete = matches!(other, search::Outcome::Exhausted) && matches!(rev, search::Outcome::Exhausted);
                        searched = k;
                        if !complete {
                            exhausted = false;
                            break;
                        }
                        None
                    }
                }
            }
        };
        if let Some(witness) = witness {
            witness
                .verify(a, b)
                .map_err(|e| Error::Inconsistency(format!("search produced an invalid witness: {e}")))?;
            return Ok(IsoVerdict::Iso { witness });
        }
    }
    Ok(IsoVerdict::Unknown {
        bounds: SearchBounds {
            ext_degree: searched,
            effort,
            exhausted,
        },
    })
}

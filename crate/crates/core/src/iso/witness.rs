use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::artin::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::exactcore::{solve_affine, ExactMatrix, Field, Scalar};
use crate::poly::{Monomial, Poly};

/// An algebra map `A -> B` given by the images of `A`'s variables, as
/// polynomials in `B`'s variables over a common extension field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub field: Field,
    pub source_vars: Vec<String>,
    pub target_vars: Vec<String>,
    pub images: Vec<Poly>,
}

impl Serialize for IsoWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Images<'a>(&'a IsoWitness);
        impl Serialize for Images<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let w = self.0;
                let mut seq = s.serialize_seq(Some(w.images.len()))?;
                for (v, p) in w.source_vars.iter().zip(&w.images) {
                    seq.serialize_element(&[v.as_str(), &p.format(&w.target_vars)])?;
                }
                seq.end()
            }
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("field", &self.field.to_string())?;
        map.serialize_entry("images", &Images(self))?;
        map.end()
    }
}

/// Coordinates over `b`'s basis as a polynomial in `b`'s variables.
pub(crate) fn vector_to_poly(b: &ArtinAlgebra, v: &[Scalar]) -> Poly {
    Poly::from_terms(
        b.field(),
        b.nvars(),
        v.iter()
            .enumerate()
            .filter(|(_, c)| !b.field().is_zero(c))
            .map(|(i, c)| (b.basis()[i].clone(), c.clone())),
    )
}

fn over(a: &ArtinAlgebra, field: &Field) -> Result<ArtinAlgebra> {
    a.base_change(field)
}

impl IsoWitness {
    pub(crate) fn from_vectors(a: &ArtinAlgebra, b: &ArtinAlgebra, images: &[Vec<Scalar>]) -> Self {
        IsoWitness {
            field: b.field().clone(),
            source_vars: a.vars().to_vec(),
            target_vars: b.vars().to_vec(),
            images: images.iter().map(|v| vector_to_poly(b, v)).collect(),
        }
    }

    /// Images of `a`'s variables as coordinate vectors in `b` (both already
    /// over the witness field).
    pub(crate) fn image_vectors(&self, b: &ArtinAlgebra) -> Vec<Vec<Scalar>> {
        self.images.iter().map(|p| b.normal_form(p)).collect()
    }

    /// Matrix of the induced linear map on `a`'s basis, one column per basis
    /// monomial.
    fn linear_map(&self, a: &ArtinAlgebra, b: &ArtinAlgebra) -> ExactMatrix {
        let images = self.image_vectors(b);
        let cols: Vec<Vec<Scalar>> = a
            .basis()
            .iter()
            .map(|m| b.evaluate(&Poly::term(b.field(), m.clone(), b.field().one()), &images))
            .collect();
        let mut mat = ExactMatrix::zeros(b.field(), b.dim(), a.dim());
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                mat.set(i, j, c.clone());
            }
        }
        mat
    }

    /// Checks the witness from scratch: relations map to zero, the cap is
    /// respected, the induced linear map is bijective and tuples correspond.
    pub fn verify(&self, a: &ArtinAlgebra, b: &ArtinAlgebra) -> std::result::Result<(), String> {
        let a = over(a, &self.field).map_err(|e| e.to_string())?;
        let b = over(b, &self.field).map_err(|e| e.to_string())?;
        if self.images.len() != a.nvars() {
            return Err("wrong number of images".into());
        }
        if a.dim() != b.dim() {
            return Err(format!("dimensions differ: {} vs {}", a.dim(), b.dim()));
        }
        if a.is_zero_ring() {
            return Ok(());
        }
        let f = b.field().clone();
        let images = self.image_vectors(&b);
        let one = b.index_of(&Monomial::one(b.nvars()));
        for (v, img) in images.iter().enumerate() {
            if vector_to_poly(&b, img) != self.images[v] {
                return Err(format!("image of {} is not in normal form", a.vars()[v]));
            }
            if let Some(i) = one {
                if !f.is_zero(&img[i]) {
                    return Err(format!("image of {} is a unit", a.vars()[v]));
                }
            }
        }
        for (k, r) in a.relations().iter().enumerate() {
            if b.evaluate(r, &images).iter().any(|c| !f.is_zero(c)) {
                return Err(format!("relation #{} does not vanish", k + 1));
            }
        }
        let nilp_b = b.nilpotency_index().map_err(|e| e.to_string())?;
        if nilp_b > a.cap() {
            for m in a.cap_monomials() {
                let p = Poly::term(&f, m, f.one());
                if b.evaluate(&p, &images).iter().any(|c| !f.is_zero(c)) {
                    return Err("a monomial of degree cap does not vanish".into());
                }
            }
        }
        if self.linear_map(&a, &b).rank() != a.dim() {
            return Err("induced linear map is not bijective".into());
        }
        match (a.tuple(), b.tuple()) {
            (None, None) => {}
            (Some(ta), Some(tb)) if ta.len() == tb.len() => {
                for (j, (x, y)) in ta.iter().zip(tb).enumerate() {
                    if b.evaluate(x, &images) != b.normal_form(y) {
                        return Err(format!("tuple entry #{} is not preserved", j + 1));
                    }
                }
            }
            _ => return Err("tuples do not correspond".into()),
        }
        Ok(())
    }

    /// The inverse map `B -> A`.
    pub fn invert(&self, a: &ArtinAlgebra, b: &ArtinAlgebra) -> Result<IsoWitness> {
        let a = over(a, &self.field)?;
        let b = over(b, &self.field)?;
        let mat = self.linear_map(&a, &b);
        let mut images = Vec::with_capacity(b.nvars());
        for v in 0..b.nvars() {
            let target = b.normal_form(&Poly::var(b.field(), b.nvars(), v));
            let (sol, _) = solve_affine(&mat, &target)
                .ok_or_else(|| Error::Inconsistency("witness is not invertible".into()))?;
            images.push(sol);
        }
        Ok(IsoWitness::from_vectors(&b, &a, &images))
    }

    /// `other ∘ self`, for `self: A -> B` and `other: B -> C`.
    pub fn compose(&self, other: &IsoWitness, b: &ArtinAlgebra, c: &ArtinAlgebra) -> Result<IsoWitness> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if b.vars() != other.source_vars.as_slice() {
            return Err(Error::InvalidArgument("witnesses do not compose".into()));
        }
        let c = over(c, &self.field)?;
        let inner = other.image_vectors(&c);
        let images: Vec<Vec<Scalar>> = self.images.iter().map(|p| c.evaluate(p, &inner)).collect();
        Ok(IsoWitness {
            field: self.field.clone(),
            source_vars: self.source_vars.clone(),
            target_vars: c.vars().to_vec(),
            images: images.iter().map(|v| vector_to_poly(&c, v)).collect(),
        })
    }

    /// The induced map between quotients: `small_b` must be a quotient of the
    /// witness target on the same variables.
    pub fn project(&self, small_b: &ArtinAlgebra) -> Result<IsoWitness> {
        let sb = over(small_b, &self.field)?;
        let images: Vec<Vec<Scalar>> = self.images.iter().map(|p| sb.normal_form(p)).collect();
        Ok(IsoWitness {
            field: self.field.clone(),
            source_vars: self.source_vars.clone(),
            target_vars: self.target_vars.clone(),
            images: images.iter().map(|v| vector_to_poly(&sb, v)).collect(),
        })
    }
}

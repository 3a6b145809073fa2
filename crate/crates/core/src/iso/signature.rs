use serde::Serialize;

use crate::artin::ArtinAlgebra;
use crate::exactcore::{left_kernel, Scalar};
use crate::poly::Poly;

/// Algebras larger than this skip the derivation count, whose linear system
/// has `nvars * dim` unknowns.
const DERIVATION_DIM_LIMIT: usize = 120;

/// Isomorphism invariants of an Artinian local algebra. All of them are
/// ranks of linear maps defined over the coefficient field, so they are
/// also unchanged by extending scalars.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSignature {
    pub length: usize,
    pub hf: Vec<usize>,
    pub nilpotency: u32,
    pub socle_dim: usize,
    pub embdim: usize,
    /// `dim ann(m^d)` for `d = 1 .. nilpotency - 1`.
    pub annihilator_profile: Vec<usize>,
    /// For each `d >= 1`, the dimension of `{a in gr_1 : a gr_d = 0}` in the
    /// associated graded ring.
    pub linear_annihilator_profile: Vec<usize>,
    /// `dim Der_k(A)`, omitted for large algebras.
    pub derivations: Option<usize>,
    /// Betti numbers of the residue field, when requested.
    pub betti_prefix: Option<Vec<u64>>,
}

/// One invariant value, for reporting separators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum InvariantValue {
    Count(u64),
    Profile(Vec<u64>),
    Missing,
    Text(String),
}

impl InvariantSignature {
    /// Named invariants in comparison order.
    pub fn entries(&self) -> Vec<(&'static str, InvariantValue)> {
        let prof = |v: &[usize]| InvariantValue::Profile(v.iter().map(|x| *x as u64).collect());
        let mut out = vec![
            ("length", InvariantValue::Count(self.length as u64)),
            ("hilbert-function", prof(&self.hf)),
            ("nilpotency-index", InvariantValue::Count(self.nilpotency as u64)),
            ("embedding-dimension", InvariantValue::Count(self.embdim as u64)),
            ("socle-dimension", InvariantValue::Count(self.socle_dim as u64)),
            ("annihilator-profile", prof(&self.annihilator_profile)),
            ("linear-annihilator-profile", prof(&self.linear_annihilator_profile)),
        ];
        out.push((
            "derivations",
            match self.derivations {
                Some(d) => InvariantValue::Count(d as u64),
                None => InvariantValue::Missing,
            },
        ));
        if let Some(b) = &self.betti_prefix {
            out.push(("betti-prefix", InvariantValue::Profile(b.clone())));
        }
        out
    }

    /// First invariant on which the two signatures differ. Optional entries
    /// only separate when both sides computed them.
    pub fn first_difference(&self, other: &InvariantSignature) -> Option<(&'static str, InvariantValue, InvariantValue)> {
        let theirs = other.entries();
        for (name, mine) in self.entries() {
            let Some((_, other_value)) = theirs.iter().find(|(n, _)| *n == name) else {
                continue;
            };
            let comparable = !matches!(mine, InvariantValue::Missing)
                && !matches!(other_value, InvariantValue::Missing);
            if comparable && &mine != other_value {
                return Some((name, mine, other_value.clone()));
            }
        }
        None
    }
}

pub fn invariant_signature(a: &ArtinAlgebra) -> InvariantSignature {
    let (length, hf) = a.hilbert_function();
    if a.is_zero_ring() {
        return InvariantSignature {
            length,
            hf,
            nilpotency: 0,
            socle_dim: 0,
            embdim: 0,
            annihilator_profile: Vec::new(),
            linear_annihilator_profile: Vec::new(),
            derivations: Some(0),
            betti_prefix: None,
        };
    }
    let nilpotency = a.nilpotency_index().expect("nonzero");
    let annihilator_profile = (1..nilpotency)
        .map(|d| a.annihilator_of_power(d).expect("nonzero").len())
        .collect();
    InvariantSignature {
        length,
        embdim: a.embdim(),
        nilpotency,
        socle_dim: a.socle().expect("nonzero").0,
        annihilator_profile,
        linear_annihilator_profile: linear_annihilators(a, &hf),
        derivations: (a.dim() <= DERIVATION_DIM_LIMIT).then(|| derivation_dim(a)),
        hf,
        betti_prefix: None,
    }
}

fn linear_annihilators(a: &ArtinAlgebra, hf: &[usize]) -> Vec<usize> {
    let f = a.field();
    let deg = a.degrees();
    let of_degree = |d: u32| -> Vec<usize> { (0..a.dim()).filter(|&i| deg[i] == d).collect() };
    let ones = of_degree(1);
    let mut out = Vec::new();
    for d in 1..hf.len() as u32 {
        let src = of_degree(d);
        let dst = of_degree(d + 1);
        let pos: std::collections::HashMap<usize, usize> = dst.iter().enumerate().map(|(t, &k)| (k, t)).collect();
        let width = src.len() * dst.len();
        let rows: Vec<Vec<Scalar>> = ones
            .iter()
            .map(|&i| {
                let mut row = vec![f.zero(); width];
                for (s, &j) in src.iter().enumerate() {
                    for (k, c) in a.mul_basis(i, j) {
                        if let Some(t) = pos.get(k) {
                            row[s * dst.len() + t] = c.clone();
                        }
                    }
                }
                row
            })
            .collect();
        out.push(left_kernel(f, width, &rows).len());
    }
    out
}

/// Dimension of the space of `k`-derivations: `D` is determined by the
/// values `D(x_v)`, subject to `sum_v (dg/dx_v) D(x_v) = 0` in the algebra
/// for every generator `g` of the defining ideal, including `m^cap`.
pub fn derivation_dim(a: &ArtinAlgebra) -> usize {
    let f = a.field();
    let n = a.dim();
    let r = a.nvars();
    let mut gens: Vec<Poly> = a.relations().to_vec();
    gens.extend(
        a.cap_monomials()
            .into_iter()
            .map(|m| Poly::term(f, m, f.one())),
    );
    // partials[g][v] = normal form of dg/dx_v
    let partials: Vec<Vec<Vec<Scalar>>> = gens
        .iter()
        .map(|g| (0..r).map(|v| a.normal_form(&g.derivative(v))).collect())
        .collect();
    let partials: Vec<Vec<Vec<Scalar>>> = partials
        .into_iter()
        .filter(|ps| ps.iter().any(|p| p.iter().any(|c| !f.is_zero(c))))
        .collect();
    let width = partials.len() * n;
    let mut rows = Vec::with_capacity(r * n);
    for v in 0..r {
        for k in 0..n {
            let bk = a.unit_vector(k);
            let mut row = Vec::with_capacity(width);
            for ps in &partials {
                row.extend(a.mul(&ps[v], &bk));
            }
            rows.push(row);
        }
    }
    left_kernel(f, width, &rows).len()
}

//! Macaulay-style truncated quotients.
//!
//! `R/(I + m^n)` is supported only at the origin, so the quotient of the
//! polynomial ring by `I + m^n` already equals the jet of the localization:
//! no standard-basis machinery is needed, only linear algebra on the
//! monomials of degree `< n`. Columns are ordered by ascending degree (and
//! descending lex within a degree), so the pivot of a row is its lowest-order
//! leading monomial. The surviving standard monomials then split by degree
//! exactly as the associated graded ring does, and the standard monomials of
//! a lower-order jet are the low-degree standard monomials of any higher one.

use std::collections::HashMap;

use super::{count_monomials, monomials_below, monomials_of_degree, Monomial, Poly};
use crate::error::{Error, Result};
use crate::exactcore::{Echelon, Field, Scalar};

/// Largest number of monomial columns a single Macaulay matrix may have.
const MAX_COLUMNS: usize = 200_000;

/// `k[x_1..x_r]/(I + m^n)` as a monomial basis with normal forms.
#[derive(Clone, Debug)]
pub struct TruncatedQuotient {
    pub field: Field,
    pub nvars: usize,
    pub cap: u32,
    /// Standard monomials, in column order (ascending degree).
    pub basis: Vec<Monomial>,
    /// Normal form of every monomial of degree `< cap`, as sparse coordinates
    /// over `basis`.
    pub nf_table: HashMap<Monomial, Vec<(usize, Scalar)>>,
}

impl TruncatedQuotient {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Normal form of an arbitrary polynomial as a dense coordinate vector.
    pub fn normal_form(&self, p: &Poly) -> Vec<Scalar> {
        let f = &self.field;
        let mut v = vec![f.zero(); self.dim()];
        for (m, c) in p.terms() {
            if m.degree() >= self.cap {
                continue;
            }
            for (i, s) in &self.nf_table[m] {
                v[*i] = f.mul_add(&v[*i], c, s);
            }
        }
        v
    }
}

fn check_generators(gens: &[Poly]) -> Result<()> {
    for (i, g) in gens.iter().enumerate() {
        if !g.field().is_zero(&g.constant_term()) {
            return Err(Error::ConstantTerm(format!("#{}", i + 1)));
        }
    }
    Ok(())
}

fn build_echelon(
    field: &Field,
    nvars: usize,
    gens: &[Poly],
    cap: u32,
) -> Result<(Vec<Monomial>, HashMap<Monomial, usize>, Echelon)> {
    check_generators(gens)?;
    let ncols: u128 = (0..cap as u64).map(|d| count_monomials(nvars, d)).sum();
    if ncols > MAX_COLUMNS as u128 {
        return Err(Error::Capacity {
            dim: ncols.min(usize::MAX as u128) as usize,
            limit: MAX_COLUMNS,
        });
    }
    let cols = monomials_below(nvars, cap);
    let index: HashMap<Monomial, usize> =
        cols.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut ech = Echelon::new(field, cols.len());
    for g in gens {
        let Some(ord) = g.order() else { continue };
        if ord >= cap {
            continue;
        }
        for u in monomials_below(nvars, cap - ord) {
            let mut row = vec![field.zero(); cols.len()];
            let mut any = false;
            for (m, c) in g.terms() {
                let prod = m.mul(&u);
                if let Some(&i) = index.get(&prod) {
                    row[i] = c.clone();
                    any = true;
                }
            }
            if any {
                let _ = ech.insert(row);
            }
        }
    }
    Ok((cols, index, ech))
}

/// Dimension of `k[x]/(I + m^cap)` without building normal forms.
pub fn truncated_quotient_dim(field: &Field, nvars: usize, gens: &[Poly], cap: u32) -> Result<usize> {
    let (cols, _, ech) = build_echelon(field, nvars, gens, cap)?;
    Ok(cols.len() - ech.rank())
}

/// The truncated quotient `k[x]/(I + m^cap)`. `cap = 0` gives the zero ring.
pub fn truncated_quotient(field: &Field, nvars: usize, gens: &[Poly], cap: u32) -> Result<TruncatedQuotient> {
    let (cols, _, ech) = build_echelon(field, nvars, gens, cap)?;
    let basis_cols: Vec<usize> = (0..cols.len()).filter(|&c| !ech.is_pivot(c)).collect();
    let mut pos_in_basis = vec![usize::MAX; cols.len()];
    for (i, &c) in basis_cols.iter().enumerate() {
        pos_in_basis[c] = i;
    }
    let mut nf_table = HashMap::with_capacity(cols.len());
    for &c in &basis_cols {
        nf_table.insert(cols[c].clone(), vec![(pos_in_basis[c], field.one())]);
    }
    for (c, row) in ech.reduced_rows() {
        let coords: Vec<(usize, Scalar)> = row
            .iter()
            .enumerate()
            .skip(c + 1)
            .filter(|(_, v)| !field.is_zero(v))
            .map(|(j, v)| (pos_in_basis[j], field.neg(v)))
            .collect();
        debug_assert!(coords.iter().all(|(i, _)| *i != usize::MAX));
        nf_table.insert(cols[c].clone(), coords);
    }
    Ok(TruncatedQuotient {
        field: field.clone(),
        nvars,
        cap,
        basis: basis_cols.iter().map(|&c| cols[c].clone()).collect(),
        nf_table,
    })
}

fn check_homogeneous(gens: &[Poly]) -> Result<()> {
    for (i, g) in gens.iter().enumerate() {
        if !g.is_homogeneous() {
            return Err(Error::Grading(format!("#{}", i + 1)));
        }
    }
    Ok(())
}

/// `(rank of I_d, dim (S/I)_d)` for homogeneous generators, computed
/// directly from all monomial multiples landing in degree `d`.
pub fn graded_component_rank(field: &Field, nvars: usize, gens: &[Poly], d: u32) -> Result<(usize, usize)> {
    check_homogeneous(gens)?;
    let cols = monomials_of_degree(nvars, d);
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = Echelon::new(field, cols.len());
    for g in gens {
        let Some(deg) = g.degree() else { continue };
        if deg > d {
            continue;
        }
        for u in monomials_of_degree(nvars, d - deg) {
            let mut row = vec![field.zero(); cols.len()];
            for (m, c) in g.terms() {
                row[index[&m.mul(&u)]] = c.clone();
            }
            let _ = ech.insert(row);
        }
    }
    Ok((ech.rank(), cols.len() - ech.rank()))
}

/// Degree-by-degree walk through a homogeneous ideal: `I_{d+1}` is spanned by
/// `x_i * I_d` together with the generators of degree `d + 1`.
pub struct GradedComponents {
    field: Field,
    nvars: usize,
    gens: Vec<Poly>,
    next_degree: u32,
    prev: Option<(Vec<Monomial>, Vec<Vec<Scalar>>)>,
}

/// One graded piece of `S/I`.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: u32,
    /// All monomials of this degree (column order).
    pub monomials: Vec<Monomial>,
    /// Basis of `I_d` in those coordinates, fully reduced.
    pub ideal_rows: Vec<(usize, Vec<Scalar>)>,
    pub ideal_rank: usize,
    pub hf: usize,
}

impl GradedComponents {
    pub fn new(field: &Field, nvars: usize, gens: &[Poly]) -> Result<Self> {
        check_homogeneous(gens)?;
        Ok(GradedComponents {
            field: field.clone(),
            nvars,
            gens: gens.iter().filter(|g| !g.is_zero()).cloned().collect(),
            next_degree: 0,
            prev: None,
        })
    }
}

impl Iterator for GradedComponents {
    type Item = GradedPiece;

    fn next(&mut self) -> Option<GradedPiece> {
        let d = self.next_degree;
        self.next_degree += 1;
        let f = &self.field;
        let cols = monomials_of_degree(self.nvars, d);
        let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = Echelon::new(f, cols.len());
        if let Some((pcols, prows)) = &self.prev {
            for row in prows {
                for v in 0..self.nvars {
                    let x = Monomial::var(self.nvars, v);
                    let mut out = vec![f.zero(); cols.len()];
                    for (j, c) in row.iter().enumerate() {
                        if !f.is_zero(c) {
                            out[index[&pcols[j].mul(&x)]] = c.clone();
                        }
                    }
                    let _ = ech.insert(out);
                }
            }
        }
        for g in &self.gens {
            if g.degree() == Some(d) {
                let mut out = vec![f.zero(); cols.len()];
                for (m, c) in g.terms() {
                    out[index[m]] = c.clone();
                }
                let _ = ech.insert(out);
            }
        }
        let ideal_rows = ech.reduced_rows();
        let rank = ideal_rows.len();
        self.prev = Some((cols.clone(), ideal_rows.iter().map(|(_, r)| r.clone()).collect()));
        Some(GradedPiece {
            degree: d,
            hf: cols.len() - rank,
            monomials: cols,
            ideal_rows,
            ideal_rank: rank,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn xy(f: &Field) -> (Poly, Poly) {
        (Poly::var(f, 2, 0), Poly::var(f, 2, 1))
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn monomial_ideal_in_one_variable() {
        let f = q();
        let x = Poly::var(&f, 1, 0);
        let tq = truncated_quotient(&f, 1, &[x.pow(2)], 5).unwrap();
        assert_eq!(tq.basis, vec![mono(&[0]), mono(&[1])]);
        assert_eq!(tq.dim(), 2);
        assert!(tq.nf_table[&mono(&[3])].is_empty());
    }

    #[test]
    fn cusp_at_cap_three() {
        let f = q();
        let (x, y) = xy(&f);
        let g = y.pow(2).sub(&x.pow(3));
        let tq = truncated_quotient(&f, 2, &[g], 3).unwrap();
        let expect = vec![mono(&[0, 0]), mono(&[1, 0]), mono(&[0, 1]), mono(&[2, 0]), mono(&[1, 1])];
        assert_eq!(tq.basis, expect);
    }

    #[test]
    fn cusp_at_cap_four_reduces_y_squared() {
        let f = q();
        let (x, y) = xy(&f);
        let g = y.pow(2).sub(&x.pow(3));
        let tq = truncated_quotient(&f, 2, &[g], 4).unwrap();
        assert_eq!(tq.dim(), 7);
        // y^2 = x^3 in the jet
        assert_eq!(tq.nf_table[&mono(&[0, 2])], vec![(tq.basis.iter().position(|m| m == &mono(&[3, 0])).unwrap(), f.one())]);
    }

    #[test]
    fn full_jet_of_regular_ring() {
        let f = q();
        let tq = truncated_quotient(&f, 2, &[], 2).unwrap();
        assert_eq!(tq.dim(), 3);
        assert_eq!(truncated_quotient(&f, 2, &[], 0).unwrap().dim(), 0);
    }

    #[test]
    fn constant_term_rejected() {
        let f = q();
        let one = Poly::constant(&f, 1, f.one());
        assert!(matches!(truncated_quotient(&f, 1, &[one], 3), Err(Error::ConstantTerm(_))));
    }

    #[test]
    fn component_ranks() {
        let f = q();
        assert_eq!(graded_component_rank(&f, 2, &[], 3).unwrap().1, 4);
        let (x, y) = xy(&f);
        let m2 = [x.pow(2), x.mul(&y), y.pow(2)];
        assert_eq!(graded_component_rank(&f, 2, &m2, 2).unwrap().1, 0);
        assert_eq!(graded_component_rank(&f, 2, &m2, 1).unwrap().1, 2);
        // generic quartic in three variables
        let v: Vec<Poly> = (0..3).map(|i| Poly::var(&f, 3, i)).collect();
        let quartic = v[0].pow(4).add(&v[1].pow(4)).add(&v[2].pow(4));
        assert_eq!(graded_component_rank(&f, 3, &[quartic.clone()], 5).unwrap().1, 18);
        let walk: Vec<usize> = GradedComponents::new(&f, 3, &[quartic]).unwrap().take(7).map(|p| p.hf).collect();
        assert_eq!(walk, vec![1, 3, 6, 10, 14, 18, 22]);
    }

    #[test]
    fn non_homogeneous_rejected() {
        let f = q();
        let (x, y) = xy(&f);
        let g = y.pow(2).sub(&x.pow(3));
        assert!(matches!(graded_component_rank(&f, 2, &[g], 3), Err(Error::Grading(_))));
    }
}

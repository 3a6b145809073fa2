//! Minimal free resolutions by degreewise linear algebra, Betti numbers of
//! the residue field, projective dimension, depth and the regular / CM /
//! Gorenstein flags.
//!
//! A syzygy module `Z_i ⊆ F_i` is stored as a basis of each graded piece
//! `Z_{i,j}`. Since the ring is standard graded, `m Z_i` in degree `j` is
//! `R_1 Z_{i,j-1}`; new generators of `F_{i+1}` in degree `j` complete it to
//! a basis of `Z_{i,j}`, and `Z_{i+1}` is the kernel of `F_{i+1} -> F_i`.

use std::collections::HashMap;

use serde::Serialize;

use crate::artin::{jet, jet_with_limit, ArtinAlgebra};
use crate::error::{Error, Result};
use crate::exactcore::{left_kernel, Echelon, Scalar};
use crate::hilbert::{default_prefix_len, hilbert_series};
use crate::poly::Poly;
use crate::presentation::{Mode, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionData {
    /// `betti[i][j] = β_{i,j}` for internal degrees `j <= internal_degree_cap`;
    /// empty rows for ungraded resolutions.
    pub betti: Vec<Vec<u64>>,
    /// Total Betti numbers `β_i`.
    pub ranks: Vec<u64>,
    /// Projective dimension, when the resolution ended inside the caps.
    pub pd: Option<usize>,
    /// The homological cap stopped the computation while syzygies remained.
    pub cap_reached: bool,
    pub internal_degree_cap: Option<u32>,
    pub homological_cap: usize,
    /// Every differential entry lies in the maximal ideal.
    pub minimal: bool,
}

/// Position of `(generator, ring basis element)` pairs in one graded piece of
/// a free module.
struct Layout {
    index: HashMap<(usize, usize), usize>,
    len: usize,
}

struct GradedFrame {
    ring: ArtinAlgebra,
    by_degree: Vec<Vec<usize>>,
}

impl GradedFrame {
    fn new(ring: ArtinAlgebra) -> Self {
        let top = ring.cap() as usize;
        let mut by_degree = vec![Vec::new(); top.max(1)];
        for (i, &d) in ring.degrees().iter().enumerate() {
            by_degree[d as usize].push(i);
        }
        GradedFrame { ring, by_degree }
    }

    fn piece(&self, d: i64) -> &[usize] {
        if d < 0 {
            return &[];
        }
        self.by_degree.get(d as usize).map_or(&[], |v| v.as_slice())
    }

    fn layout(&self, gens: &[u32], j: u32) -> Layout {
        let mut index = HashMap::new();
        for (k, &a) in gens.iter().enumerate() {
            for &r in self.piece(j as i64 - a as i64) {
                let n = index.len();
                index.insert((k, r), n);
            }
        }
        let len = index.len();
        Layout { index, len }
    }

    /// `r * z` for `z` in degree `j` of the free module, placed in `to`.
    fn mul(&self, r: usize, z: &[Scalar], from: &Layout, to: &Layout) -> Vec<Scalar> {
        let f = self.ring.field();
        let mut out = vec![f.zero(); to.len];
        for (&(k, s), &pos) in &from.index {
            let c = &z[pos];
            if f.is_zero(c) {
                continue;
            }
            for (t, v) in self.ring.mul_basis(r, s) {
                let p = to.index[&(k, *t)];
                out[p] = f.mul_add(&out[p], c, v);
            }
        }
        out
    }
}

/// Resolves `R/J` for a graded ring `R` (given truncated above `dcap`) and a
/// homogeneous ideal `J` of `R`.
fn resolve_graded(frame: &GradedFrame, j_gens: &[Poly], hcap: usize, dcap: u32) -> Result<ResolutionData> {
    let f = frame.ring.field().clone();
    let ones: Vec<usize> = frame.piece(1).to_vec();
    // Z_0 = J, degree by degree
    let mut gens: Vec<u32> = vec![0];
    let mut layouts: Vec<Layout> = (0..=dcap).map(|j| frame.layout(&gens, j)).collect();
    let mut z: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); dcap as usize + 1];
    for j in 0..=dcap {
        let mut ech = Echelon::new(&f, layouts[j as usize].len);
        for g in j_gens {
            let Some(dg) = g.degree() else { continue };
            if dg > j {
                continue;
            }
            for &r in frame.piece(j as i64 - dg as i64) {
                let m = &frame.ring.basis()[r];
                let v = frame.ring.normal_form(&g.mul_monomial(m));
                let row: Vec<Scalar> = frame.piece(j as i64).iter().map(|&t| v[t].clone()).collect();
                let _ = ech.insert(row);
            }
        }
        z[j as usize] = ech.rows().to_vec();
    }
    let mut betti = vec![{
        let mut row = vec![0u64; dcap as usize + 1];
        row[0] = 1;
        row
    }];
    let mut minimal = true;
    let mut pd = None;
    for i in 0..hcap {
        // minimal generators of Z_i
        let mut new_gens: Vec<(u32, Vec<Scalar>)> = Vec::new();
        for j in 0..=dcap as usize {
            let mut ech = Echelon::new(&f, layouts[j].len);
            if j > 0 {
                for zv in &z[j - 1] {
                    for &v in &ones {
                        let _ = ech.insert(frame.mul(v, zv, &layouts[j - 1], &layouts[j]));
                    }
                }
            }
            for zv in &z[j] {
                if ech.insert(zv.clone()).is_ok() {
                    new_gens.push((j as u32, zv.clone()));
                }
            }
        }
        if new_gens.is_empty() {
            pd = Some(i);
            break;
        }
        // minimality: no coordinate on a generator of the same degree
        for (d, g) in &new_gens {
            for (k, &a) in gens.iter().enumerate() {
                if a == *d {
                    for &r in frame.piece(0) {
                        if let Some(&p) = layouts[*d as usize].index.get(&(k, r)) {
                            minimal &= f.is_zero(&g[p]);
                        }
                    }
                }
            }
        }
        let mut row = vec![0u64; dcap as usize + 1];
        for (d, _) in &new_gens {
            row[*d as usize] += 1;
        }
        betti.push(row);
        // Z_{i+1} = kernel of F_{i+1} -> F_i
        let next_degrees: Vec<u32> = new_gens.iter().map(|(d, _)| *d).collect();
        let next_layouts: Vec<Layout> = (0..=dcap).map(|j| frame.layout(&next_degrees, j)).collect();
        let mut next_z = vec![Vec::new(); dcap as usize + 1];
        for j in 0..=dcap as usize {
            let mut rows = vec![Vec::new(); next_layouts[j].len];
            for (&(k, r), &pos) in &next_layouts[j].index {
                let (dk, g) = &new_gens[k];
                rows[pos] = frame.mul(r, g, &layouts[*dk as usize], &layouts[j]);
            }
            let kernel = left_kernel(&f, layouts[j].len, &rows);
            if rows.len() - kernel.len() != z[j].len() {
                return Err(Error::Inconsistency(format!(
                    "step {} is not exact in degree {j}: image rank {} vs syzygy dimension {}",
                    i + 1,
                    rows.len() - kernel.len(),
                    z[j].len()
                )));
            }
            next_z[j] = kernel;
        }
        gens = next_degrees;
        layouts = next_layouts;
        z = next_z;
    }
    let ranks = betti.iter().map(|r| r.iter().sum()).collect();
    Ok(ResolutionData {
        betti,
        ranks,
        cap_reached: pd.is_none(),
        pd,
        internal_degree_cap: Some(dcap),
        homological_cap: hcap,
        minimal,
    })
}

fn require_graded(p: &Presentation) -> Result<()> {
    if !p.is_graded() {
        return Err(Error::Grading("resolutions need a graded presentation".into()));
    }
    Ok(())
}

fn frame_for(p: &Presentation, gens: &[Poly], dcap: u32) -> Result<GradedFrame> {
    let ring = Presentation::new(p.field().clone(), p.vars().to_vec(), gens.to_vec(), Mode::Graded, None)?;
    Ok(GradedFrame::new(jet_with_limit(&ring, dcap + 1, usize::MAX)?))
}

/// Betti numbers of the residue field over a graded presentation, through
/// homological degree `hcap` and internal degree `dcap`.
pub fn betti_residue_field_graded(p: &Presentation, hcap: usize, dcap: u32) -> Result<ResolutionData> {
    require_graded(p)?;
    if hcap == 0 || dcap == 0 {
        return Err(Error::InvalidArgument("caps must be at least 1".into()));
    }
    let frame = frame_for(p, p.gens(), dcap)?;
    let vars: Vec<Poly> = (0..p.nvars()).map(|v| Poly::var(p.field(), p.nvars(), v)).collect();
    resolve_graded(&frame, &vars, hcap, dcap)
}

/// Minimal resolution of `S/I` over `S = k[vars]` with fixed caps.
pub fn minimal_resolution_of_quotient(p: &Presentation, hcap: usize, dcap: u32) -> Result<ResolutionData> {
    require_graded(p)?;
    let frame = frame_for(p, &[], dcap)?;
    resolve_graded(&frame, p.gens(), hcap, dcap)
}

/// `Σ_i (-1)^i Σ_j β_{i,j} t^j`, truncated at the internal cap.
fn k_polynomial(res: &ResolutionData) -> Vec<i64> {
    let width = res.betti.first().map_or(0, |r| r.len());
    let mut out = vec![0i64; width];
    for (i, row) in res.betti.iter().enumerate() {
        for (j, &b) in row.iter().enumerate() {
            out[j] += if i % 2 == 0 { b as i64 } else { -(b as i64) };
        }
    }
    out
}

/// Resolution of `S/I` with the internal cap raised until the Betti table
/// stops changing and reproduces the numerator of `(1-t)^r HS(t)`. Finite by
/// the syzygy theorem; the stopping rule is a certificate check, not a bound.
pub fn resolve_quotient(p: &Presentation) -> Result<ResolutionData> {
    require_graded(p)?;
    let hcap = p.nvars() + 1;
    let top = p.gens().iter().filter_map(|g| g.degree()).max().unwrap_or(1);
    let hd = hilbert_series(p, default_prefix_len(p))?;
    // K-polynomial = Q(t) (1-t)^(r - pole order)
    let form = hd.rational_form.expect("graded");
    let mut kpoly: Vec<i64> = form.numerator.iter().map(|c| i64::try_from(c).expect("small coefficients")).collect();
    for _ in 0..p.nvars() - form.pole_order {
        kpoly.push(0);
        for i in (1..kpoly.len()).rev() {
            kpoly[i] -= kpoly[i - 1];
        }
    }
    let mut dcap = top + p.nvars() as u32;
    let mut prev: Option<ResolutionData> = None;
    loop {
        let res = minimal_resolution_of_quotient(p, hcap, dcap)?;
        let kp = k_polynomial(&res);
        let matches = (0..kp.len().max(kpoly.len()))
            .all(|j| kp.get(j).copied().unwrap_or(0) == kpoly.get(j).copied().unwrap_or(0));
        let stable = prev.as_ref().is_some_and(|q| {
            q.pd == res.pd && q.ranks == res.ranks && q.betti.iter().zip(&res.betti).all(|(a, b)| b.starts_with(a))
        });
        if matches && stable && res.pd.is_some() {
            return Ok(res);
        }
        if dcap > 4 * (top + p.nvars() as u32) + 16 {
            return Err(Error::NotStabilized("Betti table did not settle".into()));
        }
        prev = Some(res);
        dcap *= 2;
    }
}

/// Betti numbers `β_0..β_hcap` of the residue field of an Artinian local
/// algebra, by linear algebra on `A^β`: generators of each syzygy space are
/// chosen as a complement of `m Z`.
pub fn betti_residue_field(a: &ArtinAlgebra, hcap: usize) -> Result<ResolutionData> {
    if a.is_zero_ring() {
        return Err(Error::ZeroRing);
    }
    let f = a.field().clone();
    let n = a.dim();
    let one = a.basis().iter().position(|m| m.is_one()).expect("unit");
    let mut ranks = vec![1u64];
    let mut z: Vec<Vec<Scalar>> = (0..n).filter(|&i| i != one).map(|i| a.unit_vector(i)).collect();
    let mut beta = 1usize;
    let mut minimal = true;
    let mut pd = None;
    for i in 0..hcap {
        let mut ech = Echelon::new(&f, n * beta);
        for zv in &z {
            for v in 0..a.nvars() {
                let mut prod = Vec::with_capacity(n * beta);
                for k in 0..beta {
                    prod.extend(a.mul_var(v, &zv[k * n..(k + 1) * n]));
                }
                let _ = ech.insert(prod);
            }
        }
        let gens: Vec<Vec<Scalar>> = z.iter().filter(|zv| ech.insert((*zv).clone()).is_ok()).cloned().collect();
        if gens.is_empty() {
            pd = Some(i);
            break;
        }
        for g in &gens {
            minimal &= (0..beta).all(|k| f.is_zero(&g[k * n + one]));
        }
        let next = gens.len();
        ranks.push(next as u64);
        let mut rows = Vec::with_capacity(next * n);
        for g in &gens {
            for b in 0..n {
                let mut row = vec![f.zero(); n * beta];
                for k in 0..beta {
                    for (s, c) in g[k * n..(k + 1) * n].iter().enumerate() {
                        if f.is_zero(c) {
                            continue;
                        }
                        for (t, v) in a.mul_basis(b, s) {
                            let p = k * n + t;
                            row[p] = f.mul_add(&row[p], c, v);
                        }
                    }
                }
                rows.push(row);
            }
        }
        let kernel = left_kernel(&f, n * beta, &rows);
        if rows.len() - kernel.len() != z.len() {
            return Err(Error::Inconsistency(format!("step {} is not exact", i + 1)));
        }
        z = kernel;
        beta = next;
    }
    Ok(ResolutionData {
        betti: Vec::new(),
        cap_reached: pd.is_none(),
        pd,
        ranks,
        internal_degree_cap: None,
        homological_cap: hcap,
        minimal,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Flag {
    True,
    False,
    Unknown,
}

impl From<bool> for Flag {
    fn from(b: bool) -> Self {
        if b {
            Flag::True
        } else {
            Flag::False
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub depth: usize,
    pub dim: usize,
    pub pd: usize,
    pub embdim: usize,
    pub regular: bool,
    pub cohen_macaulay: bool,
    pub gorenstein: Flag,
    pub resolution: ResolutionData,
}

/// Depth by Auslander-Buchsbaum and the regular / CM / Gorenstein flags of
/// a graded presentation. Gorenstein is decided by the socle for Artinian
/// rings and by the last Betti number for Cohen-Macaulay ones; otherwise it
/// is `UNKNOWN`.
pub fn depth_and_classify(p: &Presentation) -> Result<Classification> {
    require_graded(p)?;
    let res = resolve_quotient(p)?;
    let pd = res.pd.expect("resolved");
    let depth = p.nvars() - pd;
    let hd = hilbert_series(p, default_prefix_len(p))?;
    let dim = hd.dim;
    let embdim = jet(p, 2)?.embdim();
    let cm = depth == dim;
    let gorenstein = if dim == 0 {
        let top = hd.rational_form.as_ref().expect("graded").numerator.len() as u32;
        Flag::from(jet(p, top + 1)?.socle()?.0 == 1)
    } else if cm {
        Flag::from(res.ranks[pd] == 1)
    } else {
        Flag::Unknown
    };
    Ok(Classification {
        depth,
        dim,
        pd,
        embdim,
        regular: embdim == dim,
        cohen_macaulay: cm,
        gorenstein,
        resolution: res,
    })
}

/// Checks `Σ_i (-1)^i dim (F_i)_j = hf(j)` for `j <= dcap`, with `ring_hf`
/// the Hilbert function of the ring the free modules live over.
pub fn rank_accounting(res: &ResolutionData, ring_hf: &[u64], module_hf: &[u64]) -> bool {
    let Some(dcap) = res.internal_degree_cap else {
        return false;
    };
    (0..=dcap as usize).all(|j| {
        let mut total: i64 = 0;
        for (i, row) in res.betti.iter().enumerate() {
            let dim: i64 = row
                .iter()
                .enumerate()
                .filter(|(a, _)| *a <= j)
                .map(|(a, &b)| b as i64 * ring_hf.get(j - a).copied().unwrap_or(0) as i64)
                .sum();
            total += if i % 2 == 0 { dim } else { -dim };
        }
        total == module_hf.get(j).copied().unwrap_or(0) as i64
    })
}

//! Dense exact matrices, reduced row echelon form and kernels, plus an
//! incremental echelon basis used wherever subspaces are grown one vector at
//! a time (Macaulay rows, syzygy modules, isomorphism frames).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Scalar};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            entries.extend(r);
        }
        ExactMatrix {
            field: field.clone(),
            rows: n,
            cols,
            entries,
        }
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.mul_add(&acc, a, b))
            })
            .collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = ExactMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.mul_add(out.get(i, j), a, other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        let f = &self.field;
        ExactMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| f.mul(e, c)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form. Pivots are chosen as the first nonzero entry in
/// column order. Over `Q` the elimination runs on integer rows with content
/// removal after every row operation; finite fields use plain elimination.
pub fn rref(m: &ExactMatrix) -> Rref {
    if m.field.is_rational() {
        rref_rational(m)
    } else {
        rref_gauss(m)
    }
}

fn rref_gauss(m: &ExactMatrix) -> Rref {
    let f = m.field.clone();
    let mut rows = m.row_vecs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = f.neg(&row[c]);
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !f.is_zero(p) {
                    *x = f.mul_add(x, &factor, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        matrix: ExactMatrix::from_rows(&f, m.cols, rows),
        rank: r,
        pivots,
    }
}

fn content_normalize(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

fn rref_rational(m: &ExactMatrix) -> Rref {
    let f = m.field.clone();
    // Clear denominators row by row.
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| {
            let vals: Vec<BigRational> = m
                .row(r)
                .iter()
                .map(|s| f.as_rational(s).expect("rational entry"))
                .collect();
            let l = vals
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let mut ints: Vec<BigInt> = vals
                .iter()
                .map(|v| v.numer() * (&l / v.denom()))
                .collect();
            content_normalize(&mut ints);
            ints
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let pivot_row = rows[r].clone();
        let a = pivot_row[c].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let b = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &a * &*x - &b * p;
            }
            content_normalize(row);
        }
        pivots.push(c);
        r += 1;
    }
    // Back substitution, still fraction free.
    for (i, &c) in pivots.iter().enumerate().rev() {
        let pivot_row = rows[i].clone();
        let a = pivot_row[c].clone();
        for row in rows.iter_mut().take(i) {
            if row[c].is_zero() {
                continue;
            }
            let b = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &a * &*x - &b * p;
            }
            content_normalize(row);
        }
    }
    let out: Vec<Vec<Scalar>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            if i < r {
                let mut lead = row[pivots[i]].clone();
                if lead.is_negative() {
                    lead = -lead;
                }
                let sign = if row[pivots[i]].is_negative() { -1 } else { 1 };
                row.into_iter()
                    .map(|x| Scalar::Q(BigRational::new(x * sign, lead.clone())))
                    .collect()
            } else {
                row.into_iter().map(|_| Scalar::Q(BigRational::zero())).collect()
            }
        })
        .collect();
    Rref {
        matrix: ExactMatrix::from_rows(&f, m.cols, out),
        rank: r,
        pivots,
    }
}

/// Basis of the right kernel `{v : M v = 0}`: one vector per free column,
/// with that free variable set to 1 and the other free variables 0.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    let f = &m.field;
    let red = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); m.cols];
            v[free] = f.one();
            for (i, &p) in red.pivots.iter().enumerate() {
                v[p] = f.neg(red.matrix.get(i, free));
            }
            v
        })
        .collect()
}

/// All solutions of `M u = b`: a particular solution with every free
/// variable 0, plus a kernel basis. `None` when the system is inconsistent.
pub fn solve_affine(m: &ExactMatrix, b: &[Scalar]) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
    let f = &m.field;
    let mut rows = Vec::with_capacity(m.rows);
    for r in 0..m.rows {
        let mut row = m.row(r).to_vec();
        row.push(b[r].clone());
        rows.push(row);
    }
    let aug = ExactMatrix::from_rows(f, m.cols + 1, rows);
    let red = rref(&aug);
    if red.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut particular = vec![f.zero(); m.cols];
    for (i, &p) in red.pivots.iter().enumerate() {
        particular[p] = red.matrix.get(i, m.cols).clone();
    }
    let mut is_pivot = vec![false; m.cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let kernel = (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); m.cols];
            v[free] = f.one();
            for (i, &p) in red.pivots.iter().enumerate() {
                v[p] = f.neg(red.matrix.get(i, free));
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

/// Basis of `{c : sum_i c_i rows[i] = 0}`, one vector per row that depends on
/// the rows before it.
pub fn left_kernel(field: &Field, ncols: usize, rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = rows.len();
    let mut ech = Echelon::with_tag(field, ncols, n);
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        v.resize(ncols + n, field.zero());
        v[ncols + i] = field.one();
        if let Err(res) = ech.insert(v) {
            out.push(res[ncols..].to_vec());
        }
    }
    out
}

/// Determinant-free invertibility check for square matrices.
pub fn is_invertible(m: &ExactMatrix) -> bool {
    m.rows == m.cols && m.rank() == m.rows
}

/// Incrementally grown echelon basis of a subspace of `F^ncols`.
///
/// Pivots are only taken among the first `main` columns; the remaining
/// columns are carried along as a tag. Reducing a vector whose main part lies
/// in the span leaves `-(combination)` of the inserted tags in the tag part,
/// which is how preimages and kernel vectors are recovered.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    main: usize,
    rows: Vec<Vec<Scalar>>,
    pivot_of_col: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: &Field, ncols: usize) -> Self {
        Self::with_tag(field, ncols, 0)
    }

    /// `main` pivot columns followed by `tag` carried columns.
    pub fn with_tag(field: &Field, main: usize, tag: usize) -> Self {
        Echelon {
            field: field.clone(),
            ncols: main + tag,
            main,
            rows: Vec::new(),
            pivot_of_col: vec![None; main],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col].is_some()
    }

    pub fn pivot_row(&self, col: usize) -> Option<&[Scalar]> {
        self.pivot_of_col[col].map(|r| self.rows[r].as_slice())
    }

    /// Reduce `v` by every pivot in column order; the main part of the result
    /// vanishes at all pivot columns.
    pub fn reduce(&self, v: &mut [Scalar]) {
        debug_assert_eq!(v.len(), self.ncols);
        let f = &self.field;
        for c in 0..self.main {
            if f.is_zero(&v[c]) {
                continue;
            }
            if let Some(r) = self.pivot_of_col[c] {
                let factor = f.neg(&v[c]);
                let row = &self.rows[r];
                for (x, p) in v.iter_mut().zip(row).skip(c) {
                    if !f.is_zero(p) {
                        *x = f.mul_add(x, &factor, p);
                    }
                }
            }
        }
    }

    /// Whether the main part of `v` lies in the span.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w[..self.main].iter().all(|x| self.field.is_zero(x))
    }

    /// Insert `v`; returns the new pivot column, or `Err(residue)` with the
    /// fully reduced vector when the main part was already in the span.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> std::result::Result<usize, Vec<Scalar>> {
        self.reduce(&mut v);
        let f = self.field.clone();
        let Some(c) = (0..self.main).find(|&c| !f.is_zero(&v[c])) else {
            return Err(v);
        };
        let inv = f.inv(&v[c]).expect("nonzero");
        if !f.is_one(&inv) {
            for x in v.iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        self.pivot_of_col[c] = Some(self.rows.len());
        self.rows.push(v);
        Ok(c)
    }

    /// Rows fully inter-reduced (each pivot column zero in every other row),
    /// ordered by pivot column.
    pub fn reduced_rows(&self) -> Vec<(usize, Vec<Scalar>)> {
        let mut cols: Vec<usize> = (0..self.main).filter(|&c| self.is_pivot(c)).collect();
        cols.sort_unstable();
        let f = &self.field;
        let mut out: Vec<(usize, Vec<Scalar>)> = Vec::with_capacity(cols.len());
        // Process from the last pivot backwards so later rows are final when
        // used for reduction.
        let mut done: Vec<Option<Vec<Scalar>>> = vec![None; self.main];
        for &c in cols.iter().rev() {
            let mut row = self.rows[self.pivot_of_col[c].unwrap()].clone();
            for c2 in c + 1..self.main {
                if f.is_zero(&row[c2]) {
                    continue;
                }
                if let Some(r2) = &done[c2] {
                    let factor = f.neg(&row[c2]);
                    for (x, p) in row.iter_mut().zip(r2).skip(c2) {
                        if !f.is_zero(p) {
                            *x = f.mul_add(x, &factor, p);
                        }
                    }
                }
            }
            done[c] = Some(row);
        }
        for c in cols {
            out.push((c, done[c].take().unwrap()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn affine_solutions_and_left_kernels() {
        let m = ExactMatrix::from_i64(&q(), &[&[1, 2, 3]]);
        let b = vec![q().from_i64(6)];
        let (p, k) = solve_affine(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&p), b);
        assert_eq!(k.len(), 2);
        let m = ExactMatrix::from_i64(&q(), &[&[1, 1], &[2, 2]]);
        assert!(solve_affine(&m, &[q().from_i64(1), q().from_i64(3)]).is_none());
        let rows = m.row_vecs();
        let lk = left_kernel(&q(), 2, &rows);
        assert_eq!(lk, vec![vec![q().from_i64(-2), q().from_i64(1)]]);
    }

    #[test]
    fn rref_identity_and_proportional_rows() {
        let id = ExactMatrix::identity(&q(), 2);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);

        let m = ExactMatrix::from_i64(&q(), &[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.matrix, ExactMatrix::from_i64(&q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let m = ExactMatrix::from_i64(&f2, &[&[1, 1], &[1, 2]]);
        let r = rref(&m);
        assert_eq!(r.matrix, ExactMatrix::identity(&f2, 2));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn kernel_examples() {
        let z = ExactMatrix::zeros(&q(), 1, 3);
        let k = kernel_basis(&z);
        assert_eq!(k.len(), 3);
        assert!(kernel_basis(&ExactMatrix::identity(&q(), 3)).is_empty());

        let m = ExactMatrix::from_i64(&q(), &[&[1, 2, 3]]);
        let k = kernel_basis(&m);
        let f = q();
        let expect: Vec<Vec<Scalar>> = vec![
            vec![f.from_i64(-2), f.from_i64(1), f.from_i64(0)],
            vec![f.from_i64(-3), f.from_i64(0), f.from_i64(1)],
        ];
        assert_eq!(k, expect);
    }

    #[test]
    fn rational_rref_with_fractions() {
        let f = q();
        let half = f.from_ratio(&1.into(), &2.into()).unwrap();
        let m = ExactMatrix::from_rows(
            &f,
            3,
            vec![
                vec![half.clone(), f.from_i64(1), f.from_i64(0)],
                vec![f.from_i64(1), f.from_i64(3), f.from_i64(-1)],
            ],
        );
        let r = rref(&m);
        // rows: [1,2,0] and [0,1,-1] → [1,0,2],[0,1,-1]
        assert_eq!(
            r.matrix,
            ExactMatrix::from_i64(&f, &[&[1, 0, 2], &[0, 1, -1]])
        );
    }

    #[test]
    fn echelon_tags_recover_kernel_and_preimage() {
        let f = q();
        // images of three tagged vectors in F^2: (1,0), (0,1), (1,1)
        let mut e = Echelon::with_tag(&f, 2, 3);
        let imgs = [[1, 0], [0, 1], [1, 1]];
        let mut kernel = Vec::new();
        for (k, img) in imgs.iter().enumerate() {
            let mut v: Vec<Scalar> = img.iter().map(|&x| f.from_i64(x)).collect();
            v.extend((0..3).map(|t| f.from_i64((t == k) as i64)));
            if let Err(res) = e.insert(v) {
                kernel.push(res[2..].to_vec());
            }
        }
        assert_eq!(e.rank(), 2);
        assert_eq!(kernel.len(), 1);
        // kernel vector is (-1,-1,1): e1 + e2 - e3 maps to 0
        assert_eq!(
            kernel[0],
            vec![f.from_i64(-1), f.from_i64(-1), f.from_i64(1)]
        );
    }
}

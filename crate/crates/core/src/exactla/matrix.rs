//! Dense matrices over an exact field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Field, LARGE_PRIME};

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.field.render(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form: the nonzero rows and their pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F: Field> {
    pub rows: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { field: field.clone(), rows: n, cols, data }
    }

    pub fn from_i64(field: &F, cols: usize, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut F::Elem {
        &mut self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [F::Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !self.field.is_zero(x)).count()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// `self * other`
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                let orow = other.row(k);
                let dst = out.row_mut(r);
                for (c, b) in orow.iter().enumerate() {
                    if !f.is_zero(b) {
                        f.add_mul_assign(&mut dst[c], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !f.is_zero(a) {
                    f.add_mul_assign(o, a, x);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Kronecker product: `(A ⊗ B)[(i,k),(j,l)] = A[i,j] B[k,l]`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !f.is_zero(b) {
                            out.set(i * other.rows + k, j * other.cols + l, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack width mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack height mismatch");
        Self::from_fn(&self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                let v = block.get(r, c);
                if !self.field.is_zero(v) {
                    self.set(r0 + r, c0 + c, v.clone());
                }
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    /// In-place Gauss-Jordan elimination. Returns the pivot columns; the
    /// first `pivots.len()` rows are the reduced rows, the rest are zero.
    fn eliminate(&mut self, reduce_above: bool) -> Vec<usize> {
        let f = self.field.clone();
        let (nr, nc) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..nc {
            if r == nr {
                break;
            }
            let Some(p) = (r..nr).find(|&i| !f.is_zero(self.get(i, c))) else { continue };
            if p != r {
                for j in c..nc {
                    self.data.swap(p * nc + j, r * nc + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            if !f.is_one(&inv) {
                for j in c..nc {
                    let v = f.mul(self.get(r, j), &inv);
                    self.set(r, j, v);
                }
            }
            let support: Vec<usize> = (c + 1..nc).filter(|&j| !f.is_zero(self.get(r, j))).collect();
            let prow: Vec<F::Elem> = support.iter().map(|&j| self.get(r, j).clone()).collect();
            let start = if reduce_above { 0 } else { r + 1 };
            for i in start..nr {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let row = &mut self.data[i * nc..(i + 1) * nc];
                for (k, &j) in support.iter().enumerate() {
                    f.sub_mul_assign(&mut row[j], &factor, &prow[k]);
                }
                row[c] = f.zero();
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        Rref { rows: m, pivots }
    }

    pub fn rank(&self) -> usize {
        if let Some(r) = self.rank_mod_p_if_full() {
            return r;
        }
        let mut m = self.clone();
        m.eliminate(false).len()
    }

    /// Rank of the reduction modulo a large prime. For `p`-integral matrices
    /// this is a lower bound for the rank over the rationals.
    pub fn rank_mod_p(&self, p: u64) -> Option<usize> {
        let mut d: Vec<u64> = Vec::with_capacity(self.data.len());
        for x in &self.data {
            d.push(self.field.to_prime(x, p)?);
        }
        Some(rank_u64(&mut d, self.rows, self.cols, p))
    }

    /// The modular rank, when it already equals the trivial upper bound.
    fn rank_mod_p_if_full(&self) -> Option<usize> {
        let r = self.rank_mod_p(LARGE_PRIME)?;
        (r == self.rows.min(self.cols)).then_some(r)
    }

    /// Basis of the right null space `{x : A x = 0}`, as rows in RREF.
    pub fn kernel(&self) -> Matrix<F> {
        let Rref { rows, pivots } = self.rref();
        null_space_of_rref(&rows, &pivots, self.cols)
    }

    /// Some `x` with `A x = b`, or `None`.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let col = Matrix::from_rows(f, 1, b.iter().map(|x| vec![x.clone()]).collect());
        let aug = self.hstack(&col).rref();
        if aug.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &p) in aug.pivots.iter().enumerate() {
            x[p] = aug.rows.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Solves `A X = B` column by column; `None` if some column is inconsistent.
    pub fn solve_matrix(&self, b: &Matrix<F>) -> Option<Matrix<F>> {
        let f = &self.field;
        let aug = self.hstack(b).rref();
        if aug.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(f, self.cols, b.cols);
        for (r, &p) in aug.pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, aug.rows.get(r, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        self.solve_matrix(&Matrix::identity(&self.field, self.rows))
    }
}

/// Null space basis from a reduced echelon form, one row per free column.
pub(crate) fn null_space_of_rref<F: Field>(rref: &Matrix<F>, pivots: &[usize], n: usize) -> Matrix<F> {
    let f = rref.field().clone();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut out = Matrix::zeros(&f, free.len(), n);
    for (k, &fc) in free.iter().enumerate() {
        out.set(k, fc, f.one());
        for (r, &p) in pivots.iter().enumerate() {
            let v = rref.get(r, fc);
            if !f.is_zero(v) {
                out.set(k, p, f.neg(v));
            }
        }
    }
    // already reduced: pivots of `out` are the free columns
    out
}

pub(crate) fn rank_u64(d: &mut [u64], nr: usize, nc: usize, p: u64) -> usize {
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        let (mut b, mut e, mut r) = (a, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(piv) = (r..nr).find(|&i| d[i * nc + c] != 0) else { continue };
        if piv != r {
            for j in c..nc {
                d.swap(piv * nc + j, r * nc + j);
            }
        }
        let iv = inv(d[r * nc + c]);
        let support: Vec<(usize, u64)> = (c..nc).filter(|&j| d[r * nc + j] != 0).map(|j| (j, mulmod(d[r * nc + j], iv))).collect();
        for i in r + 1..nr {
            let factor = d[i * nc + c];
            if factor == 0 {
                continue;
            }
            for &(j, v) in &support {
                let t = mulmod(factor, v);
                let x = &mut d[i * nc + j];
                *x = if *x >= t { *x - t } else { *x + p - t };
            }
        }
        r += 1;
    }
    r
}

//! Column-sparse matrices and complexes, for Hom complexes too large to
//! hold densely.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::complex::ComplexOfSpaces;
use super::matrix::Matrix;
use super::space::BasedSpace;
use crate::error::Result;
use crate::field::{Field, FieldSpec, PrimeField, LARGE_PRIME};

pub type SparseVec<E> = Vec<(usize, E)>;

/// Columns stored as sorted `(row, value)` lists without zeros.
#[derive(Clone, Debug)]
pub struct SparseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn new(field: &F, rows: usize, ncols: usize) -> Self {
        SparseMatrix { field: field.clone(), rows, cols: (0..ncols).map(|_| Vec::new()).collect() }
    }

    /// Columns may be unsorted and contain repeated rows; they are normalized.
    pub fn from_columns(field: &F, rows: usize, cols: Vec<SparseVec<F::Elem>>) -> Self {
        let cols = cols.into_iter().map(|c| normalize(field, c)).collect();
        SparseMatrix { field: field.clone(), rows, cols }
    }

    pub fn from_dense(m: &Matrix<F>) -> Self {
        let f = m.field();
        let cols = (0..m.cols()).map(|c| (0..m.rows()).filter(|&r| !f.is_zero(m.get(r, c))).map(|r| (r, m.get(r, c).clone())).collect()).collect();
        SparseMatrix { field: f.clone(), rows: m.rows(), cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, F::Elem)] {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols.len());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, c, v.clone());
            }
        }
        m
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = alloc::vec![f.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (r, a) in &self.cols[c] {
                f.add_mul_assign(&mut out[*r], a, x);
            }
        }
        out
    }

    /// `self ∘ other`
    pub fn mul(&self, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        let f = &self.field;
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
                for (k, b) in col {
                    for (r, a) in &self.cols[*k] {
                        let e = acc.entry(*r).or_insert_with(|| f.zero());
                        f.add_mul_assign(e, a, b);
                    }
                }
                acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect()
            })
            .collect();
        SparseMatrix { field: f.clone(), rows: self.rows, cols }
    }

    /// Exact rank by sparse elimination.
    pub fn rank(&self) -> usize {
        sparse_rank(&self.field, self.cols.clone())
    }

    /// Rank of the reduction modulo `p`, a lower bound for the rank over the
    /// rationals; `None` if some entry has a denominator divisible by `p`.
    pub fn rank_mod_p(&self, p: u64) -> Option<usize> {
        let fp = PrimeField::new(p)?;
        let mut cols = Vec::with_capacity(self.cols.len());
        for col in &self.cols {
            let mut c = Vec::with_capacity(col.len());
            for (r, v) in col {
                let x = self.field.to_prime(v, p)?;
                if x != 0 {
                    c.push((*r, x));
                }
            }
            cols.push(c);
        }
        Some(sparse_rank(&fp, cols))
    }
}

fn normalize<F: Field>(f: &F, mut c: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    c.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(c.len());
    for (r, v) in c {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv = f.add(lv, &v),
            _ => out.push((r, v)),
        }
    }
    out.retain(|(_, v)| !f.is_zero(v));
    out
}

/// `a - s * b` on sorted sparse vectors.
fn axpy<F: Field>(f: &F, a: &[(usize, F::Elem)], s: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.neg(&f.mul(s, &b[j].1))));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            f.sub_mul_assign(&mut v, s, &b[j].1);
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_rank<F: Field>(f: &F, mut cols: Vec<SparseVec<F::Elem>>) -> usize {
    // short columns first keeps fill-in down
    cols.sort_by_key(Vec::len);
    let mut pivots: BTreeMap<usize, SparseVec<F::Elem>> = BTreeMap::new();
    for mut c in cols {
        while let Some((r, v)) = c.first().cloned() {
            match pivots.get(&r) {
                Some(p) => c = axpy(f, &c, &v, p),
                None => {
                    let inv = f.inv(&v).expect("nonzero pivot");
                    let c: SparseVec<F::Elem> = c.into_iter().map(|(i, x)| (i, f.mul(&x, &inv))).collect();
                    pivots.insert(r, c);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// A cochain complex with sparse differentials.
#[derive(Clone, Debug)]
pub struct SparseComplex<F: Field> {
    field: F,
    lo: i64,
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix<F>>,
}

impl<F: Field> SparseComplex<F> {
    /// `diffs[t]` maps degree `lo + t` to `lo + t + 1`.
    pub fn new(field: &F, lo: i64, dims: Vec<usize>, diffs: Vec<SparseMatrix<F>>) -> Self {
        debug_assert_eq!(diffs.len() + 1, dims.len().max(1));
        SparseComplex { field: field.clone(), lo, dims, diffs }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, deg: i64) -> usize {
        usize::try_from(deg - self.lo).ok().and_then(|k| self.dims.get(k)).copied().unwrap_or(0)
    }

    pub fn diff(&self, deg: i64) -> Option<&SparseMatrix<F>> {
        usize::try_from(deg - self.lo).ok().and_then(|k| self.diffs.get(k))
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.dims.len())
            .map(|k| {
                let d = self.dims[k] as i64;
                if (self.lo + k as i64).rem_euclid(2) == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }

    pub fn is_square_zero(&self) -> bool {
        self.diffs.windows(2).all(|w| w[1].mul(&w[0]).nnz() == 0)
    }

    fn from_ranks(&self, ranks: &[usize]) -> Vec<usize> {
        (0..self.dims.len())
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k == 0 { 0 } else { ranks[k - 1] };
                self.dims[k] - out - inc
            })
            .collect()
    }

    /// Exact cohomology dimensions indexed from `lo`. Over the rationals the
    /// modular ranks are tried first and accepted when they leave at most
    /// one nonzero degree (the Euler characteristic then fixes it).
    pub fn homology_dims(&self) -> Vec<usize> {
        if self.field.spec() == FieldSpec::Rationals {
            let ranks: Option<Vec<usize>> = self.diffs.iter().map(|d| d.rank_mod_p(LARGE_PRIME)).collect();
            if let Some(ranks) = ranks {
                let h = self.from_ranks(&ranks);
                let nonzero: Vec<usize> = (0..h.len()).filter(|&k| h[k] != 0).collect();
                match nonzero.as_slice() {
                    [] => return h,
                    [k] => {
                        let sign = if (self.lo + *k as i64).rem_euclid(2) == 0 { 1 } else { -1 };
                        let mut out = alloc::vec![0; h.len()];
                        out[*k] = (sign * self.euler_characteristic()) as usize;
                        return out;
                    }
                    _ => {}
                }
            }
        }
        let ranks: Vec<usize> = self.diffs.iter().map(SparseMatrix::rank).collect();
        self.from_ranks(&ranks)
    }

    /// `(degree, dim)` for every nonzero cohomology group.
    pub fn homology_support(&self) -> Vec<(i64, usize)> {
        self.homology_dims().into_iter().enumerate().filter(|&(_, h)| h != 0).map(|(k, h)| (self.lo + k as i64, h)).collect()
    }

    pub fn to_dense(&self) -> Result<ComplexOfSpaces<F>> {
        let terms = self.dims.iter().map(|&d| BasedSpace::atoms("e", d)).collect();
        let diffs = self.diffs.iter().map(SparseMatrix::to_dense).collect();
        ComplexOfSpaces::new(&self.field, self.lo, terms, diffs)
    }
}

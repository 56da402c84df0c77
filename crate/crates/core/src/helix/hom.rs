//! `Hom^•(X, Y)`: degree `t` is `⊕_a Hom(X^a, Y^{a+t})`, and
//! `D f = d_Y f - (-1)^t f d_X`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::complex::{ChainMap, PMap, ProjComplex};
use crate::error::Result;
use crate::exactla::{ComplexOfSpaces, Matrix, SparseComplex, SparseMatrix};
use crate::field::Field;
use crate::ngrass::FDAlgebra;

/// Offsets of the blocks of `Hom(⊕ P_src, ⊕ P_tgt)`, row-major in blocks.
#[derive(Clone, Debug)]
struct Layout {
    base: usize,
    ns: usize,
    offs: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct HomComplex<F: Field> {
    x: ProjComplex<F>,
    y: ProjComplex<F>,
    complex: SparseComplex<F>,
    layouts: BTreeMap<(i64, i64), Layout>,
}

fn layout<F: Field>(alg: &FDAlgebra<F>, src: &[i64], tgt: &[i64], base: usize) -> (Layout, usize) {
    let mut offs = Vec::with_capacity(src.len() * tgt.len());
    let mut at = 0;
    for &t in tgt {
        for &s in src {
            offs.push(at);
            at += alg.dim(s, t);
        }
    }
    (Layout { base, ns: src.len(), offs }, at)
}

pub fn hom_complex<F: Field>(alg: &FDAlgebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>) -> Result<HomComplex<F>> {
    let f = alg.field();
    if x.is_zero() || y.is_zero() {
        let complex = SparseComplex::new(f, 0, vec![0], Vec::new());
        return Ok(HomComplex { x: x.clone(), y: y.clone(), complex, layouts: BTreeMap::new() });
    }
    let (lo, hi) = (y.lo() - x.hi(), y.hi() - x.lo());
    let mut layouts = BTreeMap::new();
    let mut dims = Vec::new();
    for t in lo..=hi {
        let mut total = 0;
        for a in x.degrees() {
            let (src, tgt) = (x.term(a), y.term(a + t));
            if src.is_empty() || tgt.is_empty() {
                continue;
            }
            let (l, n) = layout(alg, src, tgt, total);
            layouts.insert((t, a), l);
            total += n;
        }
        dims.push(total);
    }
    let mut diffs = Vec::new();
    for t in lo..hi {
        let mut cols = Vec::with_capacity(dims[(t - lo) as usize]);
        let sign_x = if t.rem_euclid(2) == 0 { f.neg(&f.one()) } else { f.one() };
        for a in x.degrees() {
            if !layouts.contains_key(&(t, a)) {
                continue;
            }
            let (src, tgt) = (x.term(a), y.term(a + t));
            let post = y.diff(a + t).zip(layouts.get(&(t + 1, a)));
            let pre = x.diff(a - 1).zip(layouts.get(&(t + 1, a - 1)));
            for (r, &yr) in tgt.iter().enumerate() {
                for (c, &xc) in src.iter().enumerate() {
                    for e in 0..alg.dim(xc, yr) {
                        let mut col = Vec::new();
                        if let Some((dy, out)) = post {
                            for (r2, &y2) in dy.tgt().iter().enumerate() {
                                let at = out.base + out.offs[r2 * out.ns + c];
                                for (b, beta) in dy.block(r2, r).iter().enumerate() {
                                    if f.is_zero(beta) {
                                        continue;
                                    }
                                    for (i, v) in alg.compose_basis((xc, yr, y2), b, e) {
                                        col.push((at + i, f.mul(beta, v)));
                                    }
                                }
                            }
                        }
                        if let Some((dx, out)) = pre {
                            for (c2, &x2) in dx.src().iter().enumerate() {
                                let at = out.base + out.offs[r * out.ns + c2];
                                for (b, beta) in dx.block(c, c2).iter().enumerate() {
                                    if f.is_zero(beta) {
                                        continue;
                                    }
                                    let s = f.mul(&sign_x, beta);
                                    for (i, v) in alg.compose_basis((x2, xc, yr), e, b) {
                                        col.push((at + i, f.mul(&s, v)));
                                    }
                                }
                            }
                        }
                        cols.push(col);
                    }
                }
            }
        }
        diffs.push(SparseMatrix::from_columns(f, dims[(t - lo + 1) as usize], cols));
    }
    let complex = SparseComplex::new(f, lo, dims, diffs);
    Ok(HomComplex { x: x.clone(), y: y.clone(), complex, layouts })
}

impl<F: Field> HomComplex<F> {
    pub fn complex(&self) -> &SparseComplex<F> {
        &self.complex
    }

    pub fn source(&self) -> &ProjComplex<F> {
        &self.x
    }

    pub fn target(&self) -> &ProjComplex<F> {
        &self.y
    }

    pub fn to_dense(&self) -> Result<ComplexOfSpaces<F>> {
        self.complex.to_dense()
    }

    /// `(degree, dim)` of every nonzero `H^k`.
    pub fn homology_support(&self) -> Vec<(i64, usize)> {
        self.complex.homology_support()
    }

    pub fn h(&self, t: i64) -> usize {
        self.homology_support().into_iter().find(|&(k, _)| k == t).map_or(0, |(_, d)| d)
    }

    /// The degree-`t` map with coordinates `v`.
    pub fn to_map(&self, alg: &FDAlgebra<F>, t: i64, v: &[F::Elem]) -> ChainMap<F> {
        let mut comps = BTreeMap::new();
        for a in self.x.degrees() {
            let Some(lay) = self.layouts.get(&(t, a)) else { continue };
            let mut m = PMap::zero(alg, self.x.term(a), self.y.term(a + t));
            for r in 0..m.tgt().len() {
                for c in 0..m.src().len() {
                    let at = lay.base + lay.offs[r * lay.ns + c];
                    let b = m.block_mut(r, c);
                    let n = b.len();
                    b.clone_from_slice(&v[at..at + n]);
                }
            }
            comps.insert(a, m);
        }
        ChainMap { degree: t, comps }
    }

    /// Coordinates of a map `X → Y` of any degree within the complex.
    pub fn to_vector(&self, alg: &FDAlgebra<F>, m: &ChainMap<F>) -> Vec<F::Elem> {
        let f = alg.field();
        let t = m.degree;
        let mut v = vec![f.zero(); self.complex.dim(t)];
        for (a, p) in &m.comps {
            let Some(lay) = self.layouts.get(&(t, *a)) else { continue };
            for r in 0..p.tgt().len() {
                for c in 0..p.src().len() {
                    let at = lay.base + lay.offs[r * lay.ns + c];
                    for (k, x) in p.block(r, c).iter().enumerate() {
                        v[at + k] = x.clone();
                    }
                }
            }
        }
        v
    }

    /// Cocycles representing a basis of `H^t`, with a reducer to coordinates.
    pub fn homology(&self, t: i64) -> Homology<F> {
        let f = self.complex.field();
        let n = self.complex.dim(t);
        let zero_in = Matrix::zeros(f, n, 0);
        let d_out = self.complex.diff(t).map_or_else(|| Matrix::zeros(f, 0, n), SparseMatrix::to_dense);
        let d_in = self.complex.diff(t - 1).map_or(zero_in, SparseMatrix::to_dense);
        let cycles = d_out.kernel();
        // pivot columns of [boundaries | cycles] pick cycles independent mod boundaries
        let bd = d_in.transpose();
        let all = bd.vstack(&cycles).transpose();
        let pivots = all.rref().pivots;
        let nb = bd.rows();
        let reps: Vec<Vec<F::Elem>> = pivots.iter().filter(|&&p| p >= nb).map(|&p| cycles.row(p - nb).to_vec()).collect();
        let k = reps.len();
        let reps_m = Matrix::from_rows(f, n, reps.clone());
        // P with P·rep_i = e_i and P·boundaries = 0
        let sys = reps_m.vstack(&bd);
        let mut rhs = Matrix::zeros(f, sys.rows(), k);
        for i in 0..k {
            rhs.set(i, i, f.one());
        }
        let reducer = sys.solve_matrix(&rhs).map(|y| y.transpose()).unwrap_or_else(|| Matrix::zeros(f, k, n));
        Homology { degree: t, reps, reducer }
    }
}

/// A basis of `H^t` of a Hom complex.
#[derive(Clone, Debug)]
pub struct Homology<F: Field> {
    pub degree: i64,
    pub reps: Vec<Vec<F::Elem>>,
    reducer: Matrix<F>,
}

impl<F: Field> Homology<F> {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cocycle.
    pub fn coordinates(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.reducer.apply(v)
    }
}

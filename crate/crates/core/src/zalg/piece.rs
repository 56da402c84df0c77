//! Graded pieces `A_{ij}` of a positively oriented quadratic Z-algebra.
//!
//! A row `i` is built degree by degree: `A_{i,j+1}` is the quotient of
//! `A_{j,j+1} ⊗ A_{ij}` by the image of `I_{j-1,j+1} ⊗ A_{i,j-1}`. The basis
//! of each piece is the set of non-pivot words of the echelon form, which is
//! the same basis the quotient of the whole tensor string by the sum of all
//! shifted relation spaces produces.

use alloc::vec;
use alloc::vec::Vec;

use super::algebra::QuadraticZAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{quotient_space, BasedSpace, Label, LinMap, Matrix, Subspace};
use crate::field::Field;

/// One degree of a row.
#[derive(Clone, Debug)]
pub struct Level<F: Field> {
    /// basis words, latest generator first
    pub words: Vec<Vec<u32>>,
    /// column `a * dim_prev + u` is the class of `g_a ⊗ u` (sparse)
    step: Vec<Vec<(usize, F::Elem)>>,
    pub relsum_dim: usize,
}

impl<F: Field> Level<F> {
    pub fn dim(&self) -> usize {
        self.words.len()
    }
}

/// Pieces `A_{i,i}, A_{i,i+1}, …` of a fixed source `i`.
#[derive(Clone, Debug)]
pub struct PieceRow<'a, F: Field> {
    alg: &'a QuadraticZAlgebra<F>,
    i: i64,
    levels: Vec<Level<F>>,
}

impl<'a, F: Field> PieceRow<'a, F> {
    /// Uses the stored (positive) data of `alg`.
    pub fn new(alg: &'a QuadraticZAlgebra<F>, i: i64) -> Result<Self> {
        if !alg.has_piece(i, i) {
            return Err(Error::OutOfWindow(i, i));
        }
        let unit = Level { words: vec![Vec::new()], step: Vec::new(), relsum_dim: 0 };
        Ok(PieceRow { alg, i, levels: vec![unit] })
    }

    pub fn source(&self) -> i64 {
        self.i
    }

    pub fn algebra(&self) -> &'a QuadraticZAlgebra<F> {
        self.alg
    }

    /// Highest target computed so far.
    pub fn top(&self) -> i64 {
        self.i + self.levels.len() as i64 - 1
    }

    pub fn extend_to(&mut self, j: i64) -> Result<()> {
        if !self.alg.has_piece(self.i, j) {
            return Err(Error::OutOfWindow(self.i, j));
        }
        while self.top() < j {
            self.push_level();
        }
        Ok(())
    }

    pub fn level(&self, j: i64) -> &Level<F> {
        &self.levels[(j - self.i) as usize]
    }

    pub fn dim(&self, j: i64) -> usize {
        self.level(j).dim()
    }

    pub fn words(&self, j: i64) -> &[Vec<u32>] {
        &self.level(j).words
    }

    fn push_level(&mut self) {
        let f = self.alg.field().clone();
        let j = self.top(); // building A_{i,j+1}
        let g = self.alg.gen(j).expect("generator in range");
        let gd = g.dim();
        let prev = self.level(j);
        let pd = prev.dim();
        let ncols = gd * pd;
        if j == self.i {
            let words = (0..gd as u32).map(|a| vec![a]).collect();
            let step = (0..gd).map(|a| vec![(a, f.one())]).collect();
            self.levels.push(Level { words, step, relsum_dim: 0 });
            return;
        }
        // relations I_{j-1,j+1} ⊂ A_{j,j+1} ⊗ A_{j-1,j}
        let rel = self.alg.rel(j - 1).expect("relation in range");
        let hd = self.alg.gen(j - 1).unwrap().dim();
        let before = self.level(j - 1).dim();
        let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(rel.dim() * before);
        for r in 0..rel.dim() {
            let rho = rel.basis().row(r);
            for u in 0..before {
                let mut v = vec![f.zero(); ncols];
                for a in 0..gd {
                    for b in 0..hd {
                        let c = &rho[a * hd + b];
                        if f.is_zero(c) {
                            continue;
                        }
                        for (t, x) in &prev.step[b * before + u] {
                            f.add_mul_assign(&mut v[a * pd + t], c, x);
                        }
                    }
                }
                rows.push(v);
            }
        }
        let m = Matrix::from_rows(&f, ncols, rows);
        let rref = m.rref();
        let mut pos = vec![usize::MAX; ncols];
        let mut is_pivot = vec![false; ncols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let mut words = Vec::new();
        for c in 0..ncols {
            if !is_pivot[c] {
                pos[c] = words.len();
                let mut w = vec![(c / pd) as u32];
                w.extend_from_slice(&prev.words[c % pd]);
                words.push(w);
            }
        }
        let mut step: Vec<Vec<(usize, F::Elem)>> = (0..ncols).map(|c| if is_pivot[c] { Vec::new() } else { vec![(pos[c], f.one())] }).collect();
        for (r, &p) in rref.pivots.iter().enumerate() {
            // e_p ≡ -Σ a_{r,c} e_c over free columns
            step[p] = (0..ncols).filter(|&c| !is_pivot[c] && !f.is_zero(rref.rows.get(r, c))).map(|c| (pos[c], f.neg(rref.rows.get(r, c)))).collect();
        }
        self.levels.push(Level { words, step, relsum_dim: rref.pivots.len() });
    }

    /// `g_a · x` for `x ∈ A_{ij}`, landing in `A_{i,j+1}` (already computed).
    pub fn left_mul_generator(&self, j: i64, a: usize, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.alg.field();
        let next = self.level(j + 1);
        let pd = self.dim(j);
        let mut out = vec![f.zero(); next.dim()];
        for (u, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (t, v) in &next.step[a * pd + u] {
                f.add_mul_assign(&mut out[*t], c, v);
            }
        }
        out
    }

    /// `w · x` for a word `w` (latest generator first) of generators
    /// `A_{j,j+1}, …` applied to `x ∈ A_{ij}`.
    pub fn act_word(&self, j: i64, word: &[u32], x: &[F::Elem]) -> Vec<F::Elem> {
        let mut cur = x.to_vec();
        let mut at = j;
        for &a in word.iter().rev() {
            cur = self.left_mul_generator(at, a as usize, &cur);
            at += 1;
        }
        cur
    }

    /// Class of a tensor-string word from `i` in `A_{i,i+len}`.
    pub fn project_word(&self, word: &[u32]) -> Vec<F::Elem> {
        self.act_word(self.i, word, &[self.alg.field().one()])
    }

    /// Product `y · x` for `y ∈ A_{jl}` (from `row_j`) and `x ∈ A_{ij}`.
    pub fn compose(&self, row_j: &PieceRow<'_, F>, l: i64, y: &[F::Elem], x: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.alg.field();
        let j = row_j.source();
        let mut out = vec![f.zero(); self.dim(l)];
        for (w, c) in row_j.words(l).iter().zip(y) {
            if f.is_zero(c) {
                continue;
            }
            let v = self.act_word(j, w, x);
            for (o, t) in out.iter_mut().zip(&v) {
                f.add_mul_assign(o, c, t);
            }
        }
        out
    }

    /// Matrix of left multiplication `A_{jl} ⊗ A_{ij} → A_{il}` restricted to
    /// a fixed `y`: columns indexed by the basis of `A_{ij}`.
    pub fn left_mul_matrix(&self, row_j: &PieceRow<'_, F>, l: i64, y: &[F::Elem]) -> Matrix<F> {
        let f = self.alg.field();
        let j = row_j.source();
        let dj = self.dim(j);
        let mut m = Matrix::zeros(f, self.dim(l), dj);
        for u in 0..dj {
            let mut e = vec![f.zero(); dj];
            e[u] = f.one();
            let v = self.compose(row_j, l, y, &e);
            for (r, x) in v.into_iter().enumerate() {
                m.set(r, u, x);
            }
        }
        m
    }

    pub fn piece_space(&self, j: i64) -> BasedSpace {
        let gens: Vec<&BasedSpace> = (self.i..j).rev().map(|k| self.alg.gen(k).unwrap()).collect();
        BasedSpace::from_distinct(
            self.words(j)
                .iter()
                .map(
                    |w| {
                        if w.is_empty() {
                            Label::Unit
                        } else {
                            Label::Tensor(w.iter().zip(&gens).map(|(&a, g)| g.label(a as usize).clone()).collect())
                        }
                    },
                )
                .collect(),
        )
    }
}

/// `A_{ij}` as the quotient of the full tensor string by the sum of shifted
/// relation spaces.
#[derive(Clone, Debug)]
pub struct PiecePresentation<F: Field> {
    pub i: i64,
    pub j: i64,
    /// `A_{j-1,j} ⊗ … ⊗ A_{i,i+1}`
    pub string: BasedSpace,
    pub relsum: Subspace<F>,
    pub piece: BasedSpace,
    pub proj: LinMap<F>,
}

/// The tensor string `A_{j-1,j} ⊗ … ⊗ A_{i,i+1}` of the stored data.
pub fn tensor_string<F: Field>(alg: &QuadraticZAlgebra<F>, i: i64, j: i64) -> BasedSpace {
    if i == j {
        return BasedSpace::from_distinct(vec![Label::Tensor(Vec::new())]);
    }
    let gens: Vec<&BasedSpace> = (i..j).rev().map(|k| alg.gen(k).unwrap()).collect();
    BasedSpace::tensor(&gens)
}

/// Embeds a relation slot into a tensor string: vectors of
/// `A ⊗ … ⊗ I_{k,k+2} ⊗ … ⊗ A` inside `A_{j-1,j} ⊗ … ⊗ A_{i,i+1}`.
pub fn shifted_relation_rows<F: Field>(alg: &QuadraticZAlgebra<F>, i: i64, j: i64, k: i64) -> Matrix<F> {
    let f = alg.field();
    let dims: Vec<usize> = (i..j).rev().map(|t| alg.gen(t).unwrap().dim()).collect();
    // string position of generator t is j-1-t
    let pos = (j - 1 - (k + 1)) as usize; // the pair occupies pos, pos+1
    let left: usize = dims[..pos].iter().product();
    let right: usize = dims[pos + 2..].iter().product();
    let (da, db) = (dims[pos], dims[pos + 1]);
    let total = left * da * db * right;
    let rel = alg.rel(k).unwrap();
    let mut rows = Vec::with_capacity(left * rel.dim() * right);
    for l in 0..left {
        for r in 0..rel.dim() {
            let rho = rel.basis().row(r);
            for t in 0..right {
                let mut v = vec![f.zero(); total];
                for (ab, c) in rho.iter().enumerate() {
                    if !f.is_zero(c) {
                        v[(l * da * db + ab) * right + t] = c.clone();
                    }
                }
                rows.push(v);
            }
        }
    }
    Matrix::from_rows(f, total, rows)
}

/// Full-string presentation of `A_{ij}`; `(i, j)` index the algebra in its
/// own orientation.
pub fn graded_piece<F: Field>(alg: &QuadraticZAlgebra<F>, i: i64, j: i64) -> Result<PiecePresentation<F>> {
    let (si, sj) = alg.stored_index(i, j);
    if !alg.has_piece(si, sj) {
        return Err(Error::OutOfWindow(i, j));
    }
    let f = alg.field();
    let string = tensor_string(alg, si, sj);
    let mut span = Matrix::zeros(f, 0, string.dim());
    for k in si..sj - 1 {
        span = span.vstack(&shifted_relation_rows(alg, si, sj, k));
    }
    let relsum = Subspace::span(&string, &span);
    let (piece, proj) = quotient_space(&string, &relsum)?;
    Ok(PiecePresentation { i, j, string, relsum, piece, proj })
}

/// `A_{ij}` dimension, with a readable error for missing data.
pub fn piece_dim<F: Field>(alg: &QuadraticZAlgebra<F>, i: i64, j: i64) -> Result<usize> {
    let (si, sj) = alg.stored_index(i, j);
    if si > sj {
        return Ok(0);
    }
    let mut row = PieceRow::new(alg, si)?;
    row.extend_to(sj).map_err(|_| Error::OutOfWindow(i, j))?;
    Ok(row.dim(sj))
}

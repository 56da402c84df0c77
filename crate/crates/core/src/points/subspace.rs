use alloc::vec::Vec;

use crate::error::{structural, Result};
use crate::exactla::BasedSpace;
use crate::exactla::Matrix;
use crate::field::Field;
use crate::multilinear::{build_power, PowerKind, SymAlgebra};

/// `W ⊂ V` with a complement `U`, `V = W ⊕ U`.
#[derive(Clone, Debug)]
pub struct SubspaceW<F: Field> {
    n: usize,
    /// `d × n`, rows `w_1, …, w_d`
    w: Matrix<F>,
    /// `(n-d) × n`, rows `u_1, …, u_{n-d}`
    u: Matrix<F>,
    /// rows `w^{*1}, …, w^{*d}, ξ^1, …, ξ^{n-d}`: the basis dual to `w, u`
    dual: Matrix<F>,
}

impl<F: Field> SubspaceW<F> {
    /// `W` spanned by the rows of `rows` (`d × n`, rank `d`); `U` is spanned
    /// by the coordinate vectors at the non-pivot columns of `W`'s echelon form.
    pub fn new(rows: Matrix<F>) -> Result<Self> {
        let f = rows.field().clone();
        let (d, n) = (rows.rows(), rows.cols());
        if d == 0 || d >= n {
            return Err(structural("need 1 <= dim W <= n-1"));
        }
        let r = rows.rref();
        if r.pivots.len() < d {
            return Err(structural("the rows spanning W are linearly dependent"));
        }
        let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
        let mut u = Matrix::zeros(&f, free.len(), n);
        for (k, &c) in free.iter().enumerate() {
            u.set(k, c, f.one());
        }
        Self::with_complement(rows, u)
    }

    pub fn with_complement(w: Matrix<F>, u: Matrix<F>) -> Result<Self> {
        let (d, n) = (w.rows(), w.cols());
        if u.cols() != n || u.rows() + d != n {
            return Err(structural("complement has the wrong shape"));
        }
        let p = w.vstack(&u).transpose();
        let dual = p.inverse().ok_or_else(|| structural("W and U do not span V"))?;
        Ok(SubspaceW { n, w, u, dual })
    }

    pub fn field(&self) -> &F {
        self.w.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.w.rows()
    }

    pub fn codim(&self) -> usize {
        self.n - self.dim()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.w
    }

    pub fn complement(&self) -> &Matrix<F> {
        &self.u
    }

    /// `w^{*j}` as a linear form on `V` (vanishes on `U`).
    pub fn w_dual(&self, j: usize) -> &[F::Elem] {
        self.dual.row(j)
    }

    /// `ξ^a ∈ W^⊥` with `ξ^a(u_b) = δ_{ab}`.
    pub fn xi(&self, a: usize) -> &[F::Elem] {
        self.dual.row(self.dim() + a)
    }

    /// A linear form as a vector of `S^1 V*`.
    pub(crate) fn linear(&self, form: &[F::Elem]) -> Vec<F::Elem> {
        let vd = BasedSpace::atoms("x", self.n).dual();
        let s1 = build_power(&vd, PowerKind::Sym, 1);
        let f = self.field();
        let mut out = alloc::vec![f.zero(); self.n];
        for (i, c) in form.iter().enumerate() {
            out[s1.index_of(&[i]).unwrap()] = c.clone();
        }
        out
    }

    /// `w^{*α_1} ⋯ w^{*α_k} ∈ S^k V*` for a multiset `α` of `0..d`.
    pub(crate) fn w_monomial(&self, sym: &SymAlgebra, alpha: &[usize]) -> Vec<F::Elem> {
        let f = self.field();
        let mut acc = alloc::vec![f.one()];
        for (k, &j) in alpha.iter().enumerate() {
            acc = sym.mul(f, k, &acc, 1, &self.linear(self.w_dual(j)));
        }
        acc
    }
}

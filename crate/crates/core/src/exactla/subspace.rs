use alloc::vec;
use alloc::vec::Vec;

use super::linmap::LinMap;
use super::matrix::{null_space_of_rref, Matrix, Rref};
use super::space::BasedSpace;
use crate::error::{structural, Result};
use crate::field::Field;

/// A subspace held as the reduced row echelon form of a spanning set.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    ambient: BasedSpace,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersect,
    Annihilator,
}

impl<F: Field> Subspace<F> {
    /// Row span of `spanning` (columns indexed by the ambient basis).
    pub fn span(ambient: &BasedSpace, spanning: &Matrix<F>) -> Self {
        assert_eq!(spanning.cols(), ambient.dim(), "spanning set width");
        let Rref { rows, pivots } = spanning.rref();
        Subspace { ambient: ambient.clone(), basis: rows, pivots }
    }

    pub fn span_vectors(field: &F, ambient: &BasedSpace, vs: Vec<Vec<F::Elem>>) -> Self {
        Self::span(ambient, &Matrix::from_rows(field, ambient.dim(), vs))
    }

    pub fn zero(field: &F, ambient: &BasedSpace) -> Self {
        Subspace { ambient: ambient.clone(), basis: Matrix::zeros(field, 0, ambient.dim()), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: &BasedSpace) -> Self {
        let n = ambient.dim();
        Subspace { ambient: ambient.clone(), basis: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient(&self) -> &BasedSpace {
        &self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    /// Echelon rows.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn codim(&self) -> usize {
        self.ambient.dim() - self.dim()
    }

    /// Normal form of `v` modulo the subspace: zero at every pivot.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut v = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (j, b) in self.basis.row(r).iter().enumerate() {
                if !f.is_zero(b) {
                    f.sub_mul_assign(&mut v[j], &c, b);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Coordinates in the echelon basis, for `v` in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(structural("subspaces live in different ambient spaces"));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::span(&self.ambient, &self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        Ok(a.sum(&b)?.annihilator())
    }

    /// `{φ ∈ ambient* : φ(S) = 0}`, in the dual basis.
    pub fn annihilator(&self) -> Self {
        let n = self.ambient.dim();
        let k = null_space_of_rref(&self.basis, &self.pivots, n);
        Self::span(&self.ambient.dual(), &k)
    }

    /// Restatement of the same subspace in another space with identical labels
    /// (e.g. the double dual).
    pub fn relabel(&self, ambient: &BasedSpace) -> Result<Self> {
        if ambient.dim() != self.ambient.dim() {
            return Err(structural("relabel to a space of different dimension"));
        }
        Ok(Subspace { ambient: ambient.clone(), basis: self.basis.clone(), pivots: self.pivots.clone() })
    }

    /// Inclusion map into the ambient space, from the echelon basis.
    pub fn inclusion(&self, domain: &BasedSpace) -> LinMap<F> {
        LinMap::new(domain.clone(), self.ambient.clone(), self.basis.transpose()).expect("inclusion shape")
    }
}

pub fn subspace_algebra<F: Field>(a: &Subspace<F>, b: &Subspace<F>, op: SubspaceOp) -> Result<Subspace<F>> {
    match op {
        SubspaceOp::Sum => a.sum(b),
        SubspaceOp::Intersect => a.intersect(b),
        SubspaceOp::Annihilator => Ok(a.annihilator()),
    }
}

/// `ambient / sub`, with basis the non-pivot labels of `sub`'s echelon form.
pub fn quotient_space<F: Field>(ambient: &BasedSpace, sub: &Subspace<F>) -> Result<(BasedSpace, LinMap<F>)> {
    if *sub.ambient() != *ambient {
        return Err(structural("subspace does not live in the given ambient space"));
    }
    let f = sub.field();
    let n = ambient.dim();
    let mut pos = vec![None; n];
    for (r, &p) in sub.pivots().iter().enumerate() {
        pos[p] = Some(r);
    }
    let free: Vec<usize> = (0..n).filter(|&c| pos[c].is_none()).collect();
    let quotient = BasedSpace::from_distinct(free.iter().map(|&c| ambient.label(c).clone()).collect());
    let mut m = Matrix::zeros(f, free.len(), n);
    for (k, &c) in free.iter().enumerate() {
        m.set(k, c, f.one());
    }
    for (c, r) in pos.iter().enumerate() {
        if let Some(r) = *r {
            // e_p ≡ -Σ_f a_{r,f} e_f
            for (k, &fc) in free.iter().enumerate() {
                let a = sub.basis().get(r, fc);
                if !f.is_zero(a) {
                    m.set(k, c, f.neg(a));
                }
            }
        }
    }
    let proj = LinMap::new(ambient.clone(), quotient.clone(), m)?;
    Ok((quotient, proj))
}

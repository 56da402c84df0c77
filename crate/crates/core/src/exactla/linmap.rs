use alloc::vec::Vec;

use super::matrix::Matrix;
use super::space::BasedSpace;
use super::subspace::Subspace;
use crate::error::{structural, Result};
use crate::field::Field;

/// A linear map; the matrix is `dim(codomain) × dim(domain)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinMap<F: Field> {
    domain: BasedSpace,
    codomain: BasedSpace,
    matrix: Matrix<F>,
}

impl<F: Field> LinMap<F> {
    pub fn new(domain: BasedSpace, codomain: BasedSpace, matrix: Matrix<F>) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(structural("matrix shape does not match domain/codomain"));
        }
        Ok(LinMap { domain, codomain, matrix })
    }

    pub fn identity(field: &F, space: &BasedSpace) -> Self {
        LinMap { domain: space.clone(), codomain: space.clone(), matrix: Matrix::identity(field, space.dim()) }
    }

    pub fn zero(field: &F, domain: &BasedSpace, codomain: &BasedSpace) -> Self {
        LinMap { domain: domain.clone(), codomain: codomain.clone(), matrix: Matrix::zeros(field, codomain.dim(), domain.dim()) }
    }

    pub fn domain(&self) -> &BasedSpace {
        &self.domain
    }
    pub fn codomain(&self) -> &BasedSpace {
        &self.codomain
    }
    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }
    pub fn field(&self) -> &F {
        self.matrix.field()
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.matrix.apply(v)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.codomain != other.domain {
            return Err(structural("composition of non-composable maps"));
        }
        Ok(LinMap { domain: self.domain.clone(), codomain: other.codomain.clone(), matrix: other.matrix.mul(&self.matrix) })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        LinMap {
            domain: BasedSpace::tensor(&[&self.domain, &other.domain]),
            codomain: BasedSpace::tensor(&[&self.codomain, &other.codomain]),
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn transpose(&self) -> Self {
        LinMap { domain: self.codomain.dual(), codomain: self.domain.dual(), matrix: self.matrix.transpose() }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Kernel, image and rank.
    pub fn kernel_image(&self) -> (Subspace<F>, Subspace<F>, usize) {
        let ker = Subspace::span(&self.domain, &self.matrix.kernel());
        let img = Subspace::span(&self.codomain, &self.matrix.transpose());
        let rank = img.dim();
        (ker, img, rank)
    }

    pub fn image_of(&self, sub: &Subspace<F>) -> Subspace<F> {
        let rows = sub.basis().mul(&self.matrix.transpose());
        Subspace::span(&self.codomain, &rows)
    }
}

pub fn kernel_image<F: Field>(f: &LinMap<F>) -> (Subspace<F>, Subspace<F>, usize) {
    f.kernel_image()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn zero_and_identity() {
        let q = Rationals;
        let v3 = BasedSpace::atoms("e", 3);
        let (k, _, r) = LinMap::zero(&q, &v3, &v3).kernel_image();
        assert_eq!((k.dim(), r), (3, 0));
        let v4 = BasedSpace::atoms("e", 4);
        let (k, i, r) = LinMap::identity(&q, &v4).kernel_image();
        assert_eq!((k.dim(), i.dim(), r), (0, 4, 4));
    }

    #[test]
    fn shape_errors() {
        let q = Rationals;
        let a = BasedSpace::atoms("a", 2);
        let b = BasedSpace::atoms("b", 3);
        assert!(LinMap::new(a.clone(), b.clone(), Matrix::zeros(&q, 2, 3)).is_err());
        let f = LinMap::zero(&q, &a, &b);
        assert!(f.then(&f).is_err());
    }
}

use alloc::vec::Vec;

use super::matrix::Matrix;
use super::space::BasedSpace;
use crate::error::{structural, Error, Result};
use crate::field::{Field, LARGE_PRIME};

/// A bounded cochain complex `C^lo → … → C^hi` of based spaces.
/// `diffs[k]` maps `terms[k]` to `terms[k+1]`.
#[derive(Clone, Debug)]
pub struct ComplexOfSpaces<F: Field> {
    field: F,
    lo: i64,
    terms: Vec<BasedSpace>,
    diffs: Vec<Matrix<F>>,
}

impl<F: Field> ComplexOfSpaces<F> {
    /// Validates shapes and `d∘d = 0`.
    pub fn new(field: &F, lo: i64, terms: Vec<BasedSpace>, diffs: Vec<Matrix<F>>) -> Result<Self> {
        let c = Self::new_unchecked(field, lo, terms, diffs)?;
        c.check_square_zero()?;
        Ok(c)
    }

    /// Validates shapes only.
    pub fn new_unchecked(field: &F, lo: i64, terms: Vec<BasedSpace>, diffs: Vec<Matrix<F>>) -> Result<Self> {
        if diffs.len() + 1 != terms.len() && !(terms.is_empty() && diffs.is_empty()) {
            return Err(structural("a complex needs one differential between adjacent terms"));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.cols() != terms[k].dim() || d.rows() != terms[k + 1].dim() {
                return Err(structural("differential shape does not match its terms"));
            }
        }
        Ok(ComplexOfSpaces { field: field.clone(), lo, terms, diffs })
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for k in 1..self.diffs.len() {
            if !self.diffs[k].mul(&self.diffs[k - 1]).is_zero() {
                return Err(Error::NonZeroSquare(self.lo + k as i64 - 1));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }
    pub fn terms(&self) -> &[BasedSpace] {
        &self.terms
    }
    pub fn diffs(&self) -> &[Matrix<F>] {
        &self.diffs
    }

    pub fn term(&self, deg: i64) -> Option<&BasedSpace> {
        let k = deg.checked_sub(self.lo)?;
        usize::try_from(k).ok().and_then(|k| self.terms.get(k))
    }

    /// `d: C^deg → C^{deg+1}`
    pub fn diff(&self, deg: i64) -> Option<&Matrix<F>> {
        let k = deg.checked_sub(self.lo)?;
        usize::try_from(k).ok().and_then(|k| self.diffs.get(k))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(BasedSpace::dim).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.terms.iter().enumerate().map(|(k, t)| if (self.lo + k as i64) % 2 == 0 { t.dim() as i64 } else { -(t.dim() as i64) }).sum()
    }

    /// Exact ranks of all differentials.
    pub fn ranks(&self) -> Vec<usize> {
        self.diffs.iter().map(Matrix::rank).collect()
    }

    fn dims_from_ranks(&self, ranks: &[usize]) -> Vec<usize> {
        (0..self.terms.len())
            .map(|k| {
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                let out = ranks.get(k).copied().unwrap_or(0);
                self.terms[k].dim() - inc - out
            })
            .collect()
    }

    /// Cohomology dimensions, indexed from `lo`.
    pub fn homology_dims(&self) -> Vec<usize> {
        if let Some(h) = self.homology_dims_modular() {
            return h;
        }
        self.dims_from_ranks(&self.ranks())
    }

    /// Exact cohomology dimensions whenever the reduction modulo a large
    /// prime leaves at most one nonzero degree: modular ranks bound the
    /// rational ranks from below, so zero modular cohomology is zero
    /// rational cohomology, and the Euler characteristic fixes the rest.
    pub fn homology_dims_modular(&self) -> Option<Vec<usize>> {
        let mut ranks = Vec::with_capacity(self.diffs.len());
        for d in &self.diffs {
            ranks.push(d.rank_mod_p(LARGE_PRIME)?);
        }
        let h = self.dims_from_ranks(&ranks);
        let nonzero: Vec<usize> = (0..h.len()).filter(|&k| h[k] != 0).collect();
        match nonzero.as_slice() {
            [] => Some(h),
            [k] => {
                let chi = self.euler_characteristic();
                let sign = if (self.lo + *k as i64) % 2 == 0 { 1 } else { -1 };
                let mut out = alloc::vec![0; h.len()];
                out[*k] = usize::try_from(sign * chi).ok()?;
                Some(out)
            }
            _ => None,
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().iter().all(|&h| h == 0)
    }

    /// Lowest degree with nonzero cohomology.
    pub fn first_homology(&self) -> Option<(i64, usize)> {
        self.homology_dims().into_iter().enumerate().find(|&(_, h)| h != 0).map(|(k, h)| (self.lo + k as i64, h))
    }

    /// Cycles in degree `deg` whose classes form a basis of `H^deg`, as rows.
    pub fn homology_basis(&self, deg: i64) -> Matrix<F> {
        let Some(term) = self.term(deg) else {
            panic!("degree {deg} outside the complex");
        };
        let n = term.dim();
        let f = self.field.clone();
        let cycles = match self.diff(deg) {
            Some(d) => d.kernel(),
            None => Matrix::identity(&f, n),
        };
        let bounds = match self.diff(deg - 1) {
            Some(d) => d.transpose(),
            None => Matrix::zeros(&f, 0, n),
        };
        let mut span = super::subspace::Subspace::span(term, &bounds);
        let mut keep = Vec::new();
        for r in 0..cycles.rows() {
            let v = cycles.row(r);
            if !span.contains(v) {
                keep.push(r);
                let add = Matrix::from_rows(&f, n, alloc::vec![v.to_vec()]);
                span = super::subspace::Subspace::span(term, &span.basis().vstack(&add));
            }
        }
        cycles.select_rows(&keep)
    }
}

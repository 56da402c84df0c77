//! Finite-dimensional algebras given as linear categories on a window of
//! integer objects.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::NgrSpec;
use crate::error::{structural, Result};
use crate::exactla::BasedSpace;
use crate::field::Field;
use crate::multilinear::{build_power, PowerKind, SymAlgebra};
use crate::zalg::{PieceRow, QuadraticZAlgebra};

type Sparse<F> = Vec<(usize, <F as Field>::Elem)>;

/// Objects `lo..=hi`, `hom(i,j) = 0` for `i > j`, `hom(i,i) = k`.
#[derive(Clone, Debug)]
pub struct FDAlgebra<F: Field> {
    field: F,
    lo: i64,
    hi: i64,
    hom: BTreeMap<(i64, i64), BasedSpace>,
    /// `(i,j,l)` ↦ products `b ∘ a` indexed `a * dim(j,l) + b`
    mult: BTreeMap<(i64, i64, i64), Vec<Sparse<F>>>,
}

impl<F: Field> FDAlgebra<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn objects(&self) -> core::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn hom(&self, i: i64, j: i64) -> BasedSpace {
        self.hom.get(&(i, j)).cloned().unwrap_or_else(BasedSpace::zero)
    }

    pub fn dim(&self, i: i64, j: i64) -> usize {
        self.hom.get(&(i, j)).map_or(0, BasedSpace::dim)
    }

    /// `b ∘ a` for basis elements `a ∈ hom(i,j)`, `b ∈ hom(j,l)`.
    pub fn compose_basis(&self, (i, j, l): (i64, i64, i64), b: usize, a: usize) -> &[(usize, F::Elem)] {
        let t = &self.mult[&(i, j, l)];
        &t[a * self.dim(j, l) + b]
    }

    /// `g ∘ f` for `f ∈ hom(i,j)`, `g ∈ hom(j,l)`.
    pub fn compose(&self, (i, j, l): (i64, i64, i64), g: &[F::Elem], f: &[F::Elem]) -> Vec<F::Elem> {
        let fl = &self.field;
        let mut out = vec![fl.zero(); self.dim(i, l)];
        if !(i <= j && j <= l) {
            return out;
        }
        for (a, x) in f.iter().enumerate() {
            if fl.is_zero(x) {
                continue;
            }
            for (b, y) in g.iter().enumerate() {
                if fl.is_zero(y) {
                    continue;
                }
                let xy = fl.mul(x, y);
                for (t, c) in self.compose_basis((i, j, l), b, a) {
                    fl.add_mul_assign(&mut out[*t], &xy, c);
                }
            }
        }
        out
    }

    pub fn unit(&self, _i: i64) -> Vec<F::Elem> {
        vec![self.field.one()]
    }

    /// Associativity and unit laws on every triple/quadruple of objects.
    pub fn check_laws(&self) -> bool {
        let f = &self.field;
        for i in self.objects() {
            for j in i..=self.hi {
                let n = self.dim(i, j);
                for a in 0..n {
                    let mut e = vec![f.zero(); n];
                    e[a] = f.one();
                    if self.compose((i, j, j), &self.unit(j), &e) != e || self.compose((i, i, j), &e, &self.unit(i)) != e {
                        return false;
                    }
                }
                for l in j..=self.hi {
                    for r in l..=self.hi {
                        for a in 0..self.dim(i, j) {
                            for b in 0..self.dim(j, l) {
                                for c in 0..self.dim(l, r) {
                                    let ea = basis_vec(f, self.dim(i, j), a);
                                    let eb = basis_vec(f, self.dim(j, l), b);
                                    let ec = basis_vec(f, self.dim(l, r), c);
                                    let left = self.compose((i, l, r), &ec, &self.compose((i, j, l), &eb, &ea));
                                    let right = self.compose((i, j, r), &self.compose((j, l, r), &ec, &eb), &ea);
                                    if left != right {
                                        return false;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// From Hom spaces and composition tables; `mult[(i,j,l)][a * dim(j,l) + b]`
    /// is `b ∘ a` as a sparse vector of `hom(i,l)`.
    pub fn from_parts(
        field: &F,
        (lo, hi): (i64, i64),
        hom: BTreeMap<(i64, i64), BasedSpace>,
        mult: BTreeMap<(i64, i64, i64), Vec<Vec<(usize, F::Elem)>>>,
    ) -> Self {
        FDAlgebra { field: field.clone(), lo, hi, hom, mult }
    }

    /// `A_{[lo,hi]}`: the pieces of a positively oriented Z-algebra on a window.
    pub fn from_zalgebra(alg: &QuadraticZAlgebra<F>, lo: i64, hi: i64) -> Result<Self> {
        let f = alg.field().clone();
        let mut rows = Vec::new();
        for i in lo..=hi {
            let mut r = PieceRow::new(alg, i)?;
            r.extend_to(hi)?;
            rows.push(r);
        }
        let mut hom = BTreeMap::new();
        let mut mult = BTreeMap::new();
        for i in lo..=hi {
            let ri = &rows[(i - lo) as usize];
            for j in i..=hi {
                hom.insert((i, j), ri.piece_space(j));
                let rj = &rows[(j - lo) as usize];
                for l in j..=hi {
                    let (da, db) = (ri.dim(j), rj.dim(l));
                    let mut t = Vec::with_capacity(da * db);
                    for a in 0..da {
                        let ea = basis_vec(&f, da, a);
                        for b in 0..db {
                            let eb = basis_vec(&f, db, b);
                            let v = ri.compose(rj, l, &eb, &ea);
                            t.push(sparse(&f, v));
                        }
                    }
                    mult.insert((i, j, l), t);
                }
            }
        }
        Ok(FDAlgebra { field: f, lo, hi, hom, mult })
    }
}

pub(crate) fn basis_vec<F: Field>(f: &F, n: usize, k: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    v[k] = f.one();
    v
}

pub(crate) fn sparse<F: Field>(f: &F, v: Vec<F::Elem>) -> Sparse<F> {
    v.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).collect()
}

/// `B^{m,V}`: objects `m-n..=0`, `hom(i,j) = S^{j-i}V*`, composition is
/// multiplication of polynomials.
pub fn build_b_algebra<F: Field>(field: &F, spec: NgrSpec) -> FDAlgebra<F> {
    line_bundle_algebra(field, &spec.v(), spec.m as i64 - spec.n as i64, 0)
}

/// The line bundles `O(lo), …, O(hi)` on `P(V)` with their Hom spaces.
pub fn line_bundle_algebra<F: Field>(field: &F, v: &BasedSpace, lo: i64, hi: i64) -> FDAlgebra<F> {
    let vd = v.dual();
    let top = (hi - lo).max(0) as usize;
    let sym = SymAlgebra::new(&vd, top);
    let mut hom = BTreeMap::new();
    let mut mult = BTreeMap::new();
    for i in lo..=hi {
        for j in i..=hi {
            hom.insert((i, j), build_power(&vd, PowerKind::Sym, (j - i) as usize).space);
            for l in j..=hi {
                let (da, db) = ((j - i) as usize, (l - j) as usize);
                let mut t = Vec::with_capacity(sym.dim(da) * sym.dim(db));
                for a in 0..sym.dim(da) {
                    for b in 0..sym.dim(db) {
                        t.push(vec![(sym.mul_basis(da, a, db, b), field.one())]);
                    }
                }
                mult.insert((i, j, l), t);
            }
        }
    }
    FDAlgebra { field: field.clone(), lo, hi, hom, mult }
}

/// Matrix of a generator identification `A_{i,i+1} → hom(i,i+1)` given by
/// matching each generator label `ℓ` with the degree-one monomial `ℓ`.
pub fn monomial_identification<F: Field>(f: &F, gen: &BasedSpace, target: &BasedSpace) -> Result<crate::exactla::Matrix<F>> {
    let mut m = crate::exactla::Matrix::zeros(f, target.dim(), gen.dim());
    for (a, l) in gen.labels().iter().enumerate() {
        let want = crate::exactla::Label::Monomial(vec![l.clone()]);
        let t =
            target.index_of(&want).or_else(|| target.index_of(l)).ok_or_else(|| structural("generator label has no counterpart in the target"))?;
        m.set(t, a, f.one());
    }
    Ok(m)
}

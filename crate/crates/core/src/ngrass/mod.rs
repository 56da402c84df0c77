//! The algebras `A^{m,V}` and `B^{m,V}` and their comparison.

pub mod fdalg;

pub use fdalg::{build_b_algebra, line_bundle_algebra, monomial_identification, FDAlgebra};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactla::{BasedSpace, Matrix, Subspace};
use crate::field::Field;
use crate::multilinear::{build_power, canonical_map, CanonicalMap, PowerKind};
use crate::zalg::{make_quadratic, Certificate, Datum, Extent, Orientation, PieceRow, QuadraticZAlgebra};
use fdalg::basis_vec;

/// `(m, n)` with `1 ≤ m ≤ n-1`; `V` has basis `x1, …, xn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NgrSpec {
    pub m: usize,
    pub n: usize,
}

impl NgrSpec {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 1 || m + 1 > n {
            return Err(Error::InvalidSpec(format!("need 1 <= m <= n-1, got m={m}, n={n}")));
        }
        Ok(NgrSpec { m, n })
    }

    /// `n - m + 1`
    pub fn period(&self) -> usize {
        self.n - self.m + 1
    }

    pub fn v(&self) -> BasedSpace {
        BasedSpace::atoms("x", self.n)
    }

    /// `A_{i,i+1}`: `V*` off multiples of the period, `Λ^{n-m}V` on them.
    pub fn generator(&self, i: i64) -> BasedSpace {
        if i.rem_euclid(self.period() as i64) == 0 {
            build_power(&self.v(), PowerKind::Ext, self.n - self.m).space
        } else {
            self.v().dual()
        }
    }
}

pub fn build_ngr<F: Field>(field: &F, spec: NgrSpec) -> Result<QuadraticZAlgebra<F>> {
    let p = spec.period() as i64;
    let v = spec.v();
    let c = spec.n - spec.m - 1;
    let mut gens = Vec::new();
    let mut rels = Vec::new();
    for i in 0..p {
        gens.push((i, spec.generator(i)));
        let amb = BasedSpace::tensor(&[&spec.generator(i + 1), &spec.generator(i)]);
        let map = if i % p == 0 {
            canonical_map(field, &v, CanonicalMap::HookLeft { c })?
        } else if (i + 1) % p == 0 {
            canonical_map(field, &v, CanonicalMap::HookRight { c })?
        } else {
            canonical_map(field, &v.dual(), CanonicalMap::ExtEmbed)?
        };
        debug_assert_eq!(*map.codomain(), amb);
        rels.push((i, Subspace::span(&amb, &map.matrix().transpose())));
    }
    make_quadratic(field, gens, rels, Orientation::Positive, Extent::Periodic(spec.period()))
}

/// Checks that the generator identifications `gamma[i]: A_{i,i+1} → B(i,i+1)`
/// extend to an isomorphism of linear categories on `B`'s window: dims
/// agree, relations map to zero, the induced maps on every piece are
/// bijective and compositions are respected.
pub fn compare_with_fd<F: Field>(alg: &QuadraticZAlgebra<F>, b: &FDAlgebra<F>, gamma: &BTreeMap<i64, Matrix<F>>, check: &str) -> Result<Certificate> {
    let f = alg.field();
    let (lo, hi) = b.window();
    let mut cert = Certificate::pass(check, (lo, hi));
    let mut rows = Vec::new();
    for i in lo..=hi {
        let mut r = PieceRow::new(alg, i)?;
        r.extend_to(hi)?;
        rows.push(r);
    }
    let row = |i: i64| &rows[(i - lo) as usize];
    let mut dims = Vec::new();
    for i in lo..=hi {
        let mut d = Vec::new();
        for j in i..=hi {
            let (da, db) = (row(i).dim(j), b.dim(i, j));
            d.push(da as i64);
            if da != db {
                cert.reject(Datum::map([("i", Datum::from(i)), ("j", Datum::from(j)), ("dim_a", Datum::from(da)), ("dim_b", Datum::from(db))]));
            }
        }
        dims.push(d);
    }
    cert.set("dims", Datum::table(dims));
    if !cert.passed() {
        return Ok(cert);
    }
    // images of generators
    let gen_img = |i: i64, a: usize| -> Vec<F::Elem> { gamma[&i].col(a) };
    for k in lo..hi - 1 {
        let rel = alg.rel(k).unwrap();
        let (gl, gr) = (alg.gen(k + 1).unwrap().dim(), alg.gen(k).unwrap().dim());
        for r in 0..rel.dim() {
            let mut acc = vec![f.zero(); b.dim(k, k + 2)];
            for x in 0..gl {
                for y in 0..gr {
                    let c = rel.basis().get(r, x * gr + y);
                    if f.is_zero(c) {
                        continue;
                    }
                    let p = b.compose((k, k + 1, k + 2), &gen_img(k + 1, x), &gen_img(k, y));
                    for (o, t) in acc.iter_mut().zip(&p) {
                        f.add_mul_assign(o, c, t);
                    }
                }
            }
            if acc.iter().any(|x| !f.is_zero(x)) {
                cert.reject(Datum::map([("relation_slot", Datum::from(k)), ("relation", Datum::from(r))]));
                return Ok(cert);
            }
        }
    }
    // θ on basis words
    let mut theta: BTreeMap<(i64, i64), Matrix<F>> = BTreeMap::new();
    for i in lo..=hi {
        for j in i..=hi {
            let words = row(i).words(j);
            let mut m = Matrix::zeros(f, b.dim(i, j), words.len());
            for (c, w) in words.iter().enumerate() {
                let mut v = b.unit(i);
                let mut at = i;
                for &a in w.iter().rev() {
                    v = b.compose((i, at, at + 1), &gen_img(at, a as usize), &v);
                    at += 1;
                }
                for (r, x) in v.into_iter().enumerate() {
                    m.set(r, c, x);
                }
            }
            if m.rank() != m.cols() || m.rows() != m.cols() {
                cert.reject(Datum::map([("i", Datum::from(i)), ("j", Datum::from(j)), ("bijective", Datum::from(false))]));
                return Ok(cert);
            }
            theta.insert((i, j), m);
        }
    }
    let mut products = 0usize;
    for i in lo..=hi {
        for j in i..=hi {
            for l in j..=hi {
                let (da, db) = (row(i).dim(j), row(j).dim(l));
                for x in 0..da {
                    let ex = basis_vec(f, da, x);
                    let tx = theta[&(i, j)].apply(&ex);
                    for y in 0..db {
                        let ey = basis_vec(f, db, y);
                        let lhs = theta[&(i, l)].apply(&row(i).compose(row(j), l, &ey, &ex));
                        let rhs = b.compose((i, j, l), &theta[&(j, l)].apply(&ey), &tx);
                        products += 1;
                        if lhs != rhs {
                            cert.reject(Datum::map([
                                ("i", Datum::from(i)),
                                ("j", Datum::from(j)),
                                ("l", Datum::from(l)),
                                ("composition", Datum::from(false)),
                            ]));
                            return Ok(cert);
                        }
                    }
                }
            }
        }
    }
    cert.set("products_checked", Datum::from(products));
    Ok(cert)
}

/// `A^{m,V}` against `B^{m,V}` on the objects `m-n..=0`, with
/// `A_{i,i+1} = V* = hom(i,i+1)`.
pub fn compare_with_geometry<F: Field>(alg: &QuadraticZAlgebra<F>, b: &FDAlgebra<F>) -> Result<Certificate> {
    let (lo, hi) = b.window();
    let mut gamma = BTreeMap::new();
    for i in lo..hi {
        let g = alg.gen(i).ok_or(crate::error::Error::OutOfWindow(i, i + 1))?;
        gamma.insert(i, monomial_identification(alg.field(), g, &b.hom(i, i + 1))?);
    }
    compare_with_fd(alg, b, &gamma, "geometry")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;
    use crate::field::Rationals;

    #[test]
    fn rows_of_a24() {
        let q = Rationals;
        let a = build_ngr(&q, NgrSpec::new(2, 4).unwrap()).unwrap();
        let mut row = PieceRow::new(&a, -2).unwrap();
        row.extend_to(3).unwrap();
        let dims: Vec<usize> = (-2..=3).map(|j| row.dim(j)).collect();
        assert_eq!(dims, vec![1, 4, 10, 45, 144, 316]);
        let d3: Vec<usize> = (0..3)
            .map(|i| {
                let mut r = PieceRow::new(&a, i).unwrap();
                r.extend_to(i + 3).unwrap();
                r.dim(i + 3)
            })
            .collect();
        assert_eq!(d3, vec![45, 45, 65]);
    }

    fn compare(m: usize, n: usize) -> Certificate {
        let q = Rationals;
        let spec = NgrSpec::new(m, n).unwrap();
        let a = build_ngr(&q, spec).unwrap();
        let b = build_b_algebra(&q, spec);
        assert!(b.check_laws());
        compare_with_geometry(&a, &b).unwrap()
    }

    #[test]
    fn geometry_13() {
        let c = compare(1, 3);
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.data["dims"], Datum::table(vec![vec![1i64, 3, 6], vec![1, 3], vec![1]]));
    }

    #[test]
    fn geometry_24() {
        let c = compare(2, 4);
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.data["dims"], Datum::table(vec![vec![1i64, 4, 10], vec![1, 4], vec![1]]));
    }

    #[test]
    fn geometry_other_specs() {
        for (m, n) in [(1, 2), (2, 3), (3, 4), (1, 4)] {
            assert!(compare(m, n).passed(), "({m},{n})");
        }
    }

    #[test]
    fn b_algebra_shape() {
        let q = Rationals;
        let b = build_b_algebra(&q, NgrSpec::new(1, 2).unwrap());
        assert_eq!(b.window(), (-1, 0));
        assert_eq!(b.dim(-1, 0), 2);
        assert_eq!(b.dim(0, -1), 0);
        assert_eq!(b.dim(0, 0), 1);
    }

    #[test]
    fn a_window_is_a_category() {
        let q = Rationals;
        let a = build_ngr(&q, NgrSpec::new(1, 3).unwrap()).unwrap();
        let fd = FDAlgebra::from_zalgebra(&a, 0, 3).unwrap();
        assert!(fd.check_laws());
        assert_eq!(fd.dim(0, 3), 10);
    }

    #[test]
    fn perturbed_relations_are_caught() {
        // Replacing one relation slot by a generic line breaks the comparison.
        let q = Rationals;
        let spec = NgrSpec::new(1, 3).unwrap();
        let a = build_ngr(&q, spec).unwrap();
        let amb = BasedSpace::tensor(&[&spec.generator(-1), &spec.generator(-2)]);
        let mut row = vec![Q::ZERO; amb.dim()];
        row[0] = Q::ONE;
        row[1] = Q::int(2);
        let bad = Subspace::span(&amb, &Matrix::from_rows(&q, amb.dim(), vec![row]));
        let mut gens = Vec::new();
        let mut rels = Vec::new();
        for i in -2..=0 {
            gens.push((i, spec.generator(i)));
        }
        for i in -2..=-1 {
            let r = if i == -2 { bad.clone() } else { a.rel(i).unwrap().clone() };
            rels.push((i, r));
        }
        gens.push((1, spec.generator(1)));
        let p = make_quadratic(&q, gens, rels, Orientation::Positive, Extent::Window(-2, 2)).unwrap();
        let c = compare_with_geometry(&p, &build_b_algebra(&q, spec)).unwrap();
        assert!(!c.passed());
        let w = c.witness().unwrap();
        assert_eq!(
            w,
            &Datum::map([("i", Datum::from(-2i64)), ("j", Datum::from(0i64)), ("dim_a", Datum::from(8usize)), ("dim_b", Datum::from(6usize)),])
        );
    }
}

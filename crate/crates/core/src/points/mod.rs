//! k-points of `NGr(m, V)`: the point functors, the resolution of
//! `O_{P(W)}` with its Ext algebra, and the local ring at `x_W`.

pub mod ext;
pub mod functor;
pub mod local;
mod subspace;

pub use ext::{ext_algebra, point_resolution, CBasis, ExtTable};
pub use functor::{point_functor, PointData, PointOutcome};
pub use local::{local_ring, tangent_dimension, LocalRingPresentation};
pub use subspace::SubspaceW;

#[cfg(test)]
mod tests {
    use alloc::vec;
    use alloc::vec::Vec;

    use super::*;
    use crate::exactla::{Matrix, Q};
    use crate::field::{Field, Rationals};
    use crate::helix::{hom_complex, ProjComplex};
    use crate::multilinear::{binomial, subsets};
    use crate::ngrass::{build_b_algebra, NgrSpec};
    use crate::zalg::Datum;

    fn spec(m: usize, n: usize) -> NgrSpec {
        NgrSpec::new(m, n).unwrap()
    }

    fn w(n: usize, rows: &[&[i64]]) -> SubspaceW<Rationals> {
        SubspaceW::new(Matrix::from_i64(&Rationals, n, rows)).unwrap()
    }

    /// `dim Λ^{c+1}V - rank(Λ^c V ⊗ W → Λ^{c+1} V)` by listing wedges `w ∧ x_S`.
    fn cokernel_oracle(n: usize, c: usize, wrows: &[&[i64]]) -> usize {
        let q = Rationals;
        let top = subsets(n, c + 1);
        let mut rows = Vec::new();
        for wr in wrows {
            for s in subsets(n, c) {
                let mut v = vec![q.zero(); top.len()];
                for (k, &x) in wr.iter().enumerate() {
                    if x == 0 || s.contains(&k) {
                        continue;
                    }
                    let mut t = s.clone();
                    t.push(k);
                    t.sort_unstable();
                    // x_k ∧ x_S moved into sorted position
                    let sign = if s.iter().filter(|&&y| y < k).count() % 2 == 0 { x } else { -x };
                    let at = top.iter().position(|u| *u == t).unwrap();
                    v[at] = q.add(&v[at], &q.from_i64(sign));
                }
                rows.push(v);
            }
        }
        top.len() - Matrix::from_rows(&q, top.len(), rows).rank()
    }

    const W24_2: &[&[i64]] = &[&[1, 2, 0, -1], &[0, 1, 3, 1]];
    const W24_1: &[&[i64]] = &[&[2, -1, 1, 5]];
    const W24_3: &[&[i64]] = &[&[1, 0, 0, 1], &[0, 1, 0, 2], &[0, 0, 1, 3]];

    #[test]
    fn points_of_ngr24() {
        for rows in [W24_2, W24_1] {
            let out = point_functor(&Rationals, spec(2, 4), &w(4, rows), (-4, 4)).unwrap();
            let p = out.point().expect("accepted");
            assert!(p.passed(), "{:?}", p.certificates);
            assert_eq!(p.dim(-1), rows.len());
            assert_eq!(p.dim(0), 1);
            assert_eq!(p.dim(1), cokernel_oracle(4, 1, rows));
            for i in -2..=0 {
                assert_eq!(p.dim(i) as u128, binomial(rows.len() as i64 - 1 - i, -i));
            }
        }
        assert_eq!(cokernel_oracle(4, 1, W24_2), 1);
        assert_eq!(cokernel_oracle(4, 1, W24_1), 3);
    }

    #[test]
    fn too_large_subspace_is_rejected() {
        let out = point_functor(&Rationals, spec(2, 4), &w(4, W24_3), (-4, 4)).unwrap();
        let PointOutcome::Rejected(c) = out else { panic!("expected a rejection") };
        assert!(!c.passed());
        assert_eq!(c.witness(), Some(&Datum::from("F(1)=0")));
        assert_eq!(cokernel_oracle(4, 1, W24_3), 0);
    }

    #[test]
    fn points_of_projective_spaces() {
        for n in 2..=4 {
            let mut row = vec![0; n];
            row[0] = 1;
            row[n - 1] = -2;
            let out = point_functor(&Rationals, spec(1, n), &w(n, &[&row]), (-3, 3)).unwrap();
            let p = out.point().unwrap();
            assert!(p.passed(), "{:?}", p.certificates);
            assert_eq!(cokernel_oracle(n, n - 2, &[&row]), p.dim(1));
        }
        let out = point_functor(&Rationals, spec(3, 4), &w(4, &[&[1, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]]), (-3, 3)).unwrap();
        assert!(out.point().unwrap().passed());
    }

    #[test]
    fn degenerate_subspace_is_an_error() {
        assert!(SubspaceW::new(Matrix::from_i64(&Rationals, 4, &[&[1, 2, 0, 0], &[2, 4, 0, 0]])).is_err());
        assert!(SubspaceW::new(Matrix::from_i64(&Rationals, 2, &[&[1, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn resolution_multiplicities() {
        let cases: [(usize, usize, &[&[i64]], [usize; 3]); 3] =
            [(2, 4, W24_2, [1, 2, 1]), (1, 3, &[&[1, 1, 1]], [1, 2, 1]), (2, 4, W24_1, [3, 3, 1])];
        for (m, n, rows, mult) in cases {
            let b = build_b_algebra(&Rationals, spec(m, n));
            let res = point_resolution(&b, spec(m, n), &w(n, rows)).unwrap();
            let got: Vec<usize> = res.degrees().map(|t| res.term(t).len()).collect();
            assert_eq!(got, mult);
            assert!(res.is_minimal(&Rationals));
        }
    }

    #[test]
    fn resolution_sections() {
        for (m, n, rows) in
            [(2, 4, W24_2), (2, 4, W24_1), (1, 3, &[&[0, 1, 1][..]][..]), (3, 4, &[&[1, 0, 0, 0][..], &[0, 1, 0, 0], &[0, 0, 1, 1]][..])]
        {
            let b = build_b_algebra(&Rationals, spec(m, n));
            let wsp = w(n, rows);
            let res = point_resolution(&b, spec(m, n), &wsp).unwrap();
            let d = wsp.dim() as i64;
            for i in m as i64 - n as i64..=0 {
                let h = hom_complex(&b, &ProjComplex::projective(i), &res).unwrap();
                assert_eq!(h.homology_support(), vec![(0, binomial(d - 1 - i, d - 1) as usize)], "P_{i}");
            }
        }
    }

    #[test]
    fn ext_algebras() {
        let cases: [(usize, usize, &[&[i64]], &[usize]); 4] = [
            (2, 4, W24_2, &[1, 4, 3]),
            (1, 3, &[&[1, -1, 2]], &[1, 2, 1]),
            (1, 4, &[&[0, 0, 1, 0]], &[1, 3, 3, 1]),
            (3, 5, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 1], &[0, 0, 1, 1, 0]], &[1, 6, 6]),
        ];
        for (m, n, rows, dims) in cases {
            let b = build_b_algebra(&Rationals, spec(m, n));
            let wsp = w(n, rows);
            let (t, c) = ext_algebra(&b, spec(m, n), &wsp).unwrap();
            assert!(c.passed(), "{c:?}");
            assert_eq!(t.dims, dims);
            let oracle: Vec<usize> =
                (0..dims.len()).map(|k| (binomial((n - m) as i64, k as i64) * binomial((m - 1 + k) as i64, k as i64)) as usize).collect();
            assert_eq!(t.dims, oracle);
            assert_eq!(t.dims[1], m * (n - m));
        }
    }

    #[test]
    fn ext_of_smaller_subspaces_is_truncated() {
        // the window cuts the Koszul resolution at P_{m-n}
        for (m, n, rows, dims) in [(2, 4, W24_1, vec![1, 3, 3]), (3, 5, &[&[1, 0, 0, 0, 0][..], &[0, 1, 0, 0, 1]][..], vec![1, 6, 9])] {
            let b = build_b_algebra(&Rationals, spec(m, n));
            let wsp = w(n, rows);
            let (t, c) = ext_algebra(&b, spec(m, n), &wsp).unwrap();
            assert!(c.passed(), "{c:?}");
            let d = wsp.dim();
            let oracle: Vec<usize> =
                (0..=n - m).map(|k| (binomial((n - d) as i64, k as i64) * binomial((d - 1 + k) as i64, k as i64)) as usize).collect();
            assert_eq!(t.dims, dims);
            assert_eq!(t.dims, oracle);
        }
    }

    #[test]
    fn ext_products_are_associative() {
        let b = build_b_algebra(&Rationals, spec(1, 4));
        let (t, _) = ext_algebra(&b, spec(1, 4), &w(4, &[&[1, 2, 3, 4]])).unwrap();
        let q = Rationals;
        let mul = |a: usize, x: &[Q], bb: usize, y: &[Q]| -> Vec<Q> {
            let table = &t.products[&(a, bb)];
            let mut out = vec![q.zero(); t.dims[a + bb]];
            for (i, xi) in x.iter().enumerate() {
                for (j, yj) in y.iter().enumerate() {
                    for (k, z) in table[i][j].iter().enumerate() {
                        out[k] = q.add(&out[k], &q.mul(&q.mul(xi, yj), z));
                    }
                }
            }
            out
        };
        let e = |n: usize, k: usize| {
            let mut v = vec![q.zero(); n];
            v[k] = q.one();
            v
        };
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let (x, y, z) = (e(3, i), e(3, j), e(3, k));
                    assert_eq!(mul(2, &mul(1, &x, 1, &y), 1, &z), mul(1, &x, 2, &mul(1, &y, 1, &z)));
                }
            }
        }
        // odd classes square to zero in the exterior algebra of a point
        for i in 0..3 {
            assert!(mul(1, &e(3, i), 1, &e(3, i)).iter().all(|x| q.is_zero(x)));
        }
    }

    #[test]
    fn local_ring_of_ngr24() {
        let lr = local_ring(&Rationals, spec(2, 4), &w(4, W24_2), 3).unwrap();
        assert!(lr.passed(), "{:?}", lr.certificates);
        assert_eq!(lr.generators.len(), 4);
        assert_eq!((lr.rel1.len(), lr.rel2.len(), lr.relations.dim()), (2, 1, 3));
        assert_eq!(lr.relations.dim(), 16 - 13);
        assert_eq!(lr.hilbert[1], 4);
        assert_eq!(lr.hilbert[2], 16 - 3);
    }

    #[test]
    fn local_rings_of_projective_spaces() {
        for n in 2..=5 {
            let mut row = vec![0; n];
            row[1] = 1;
            let lr = local_ring(&Rationals, spec(1, n), &w(n, &[&row]), 4).unwrap();
            assert!(lr.passed(), "{:?}", lr.certificates);
            assert!(lr.rel2.is_empty());
            assert_eq!(lr.rel1.len() as u128, binomial(n as i64 - 1, 2));
            for (t, h) in lr.hilbert.iter().enumerate() {
                assert_eq!(*h, binomial((n - 2 + t) as i64, t as i64));
            }
        }
    }

    #[test]
    fn tangent_dimensions() {
        assert_eq!(tangent_dimension(spec(2, 4), &w(4, W24_2)).unwrap(), 4);
        assert_eq!(tangent_dimension(spec(3, 4), &w(4, W24_3)).unwrap(), 3);
        for n in 2..7 {
            let mut row = vec![0; n];
            row[0] = 1;
            assert_eq!(tangent_dimension(spec(1, n), &w(n, &[&row])).unwrap(), n - 1);
        }
        assert!(matches!(tangent_dimension(spec(2, 4), &w(4, W24_1)), Err(crate::Error::Unsupported(_))));
        assert!(matches!(local_ring(&Rationals, spec(2, 4), &w(4, W24_1), 2), Err(crate::Error::Unsupported(_))));
    }

    #[test]
    fn outputs_do_not_depend_on_the_basis_of_w() {
        let s = spec(2, 4);
        let b = build_b_algebra(&Rationals, s);
        let base = w(4, W24_2);
        // same subspace: rows (w1 + w2, 2 w1 - w2)
        let other = w(4, &[&[1, 3, 3, 0], &[2, 3, -3, -3]]);
        let q = Rationals;
        let u = Matrix::from_i64(&q, 4, &[&[1, 1, 1, 1], &[0, 0, 1, 7]]);
        let moved = SubspaceW::with_complement(base.basis().clone(), u).unwrap();
        let reference = point_functor(&q, s, &base, (-3, 3)).unwrap().point().unwrap().dims();
        let ext = ext_algebra(&b, s, &base).unwrap().0;
        let lr = local_ring(&q, s, &base, 3).unwrap();
        for x in [&other, &moved] {
            let p = point_functor(&q, s, x, (-3, 3)).unwrap();
            assert_eq!(p.point().unwrap().dims(), reference);
            let (e, c) = ext_algebra(&b, s, x).unwrap();
            assert!(c.passed());
            assert_eq!(e.dims, ext.dims);
            assert_eq!(e.products, ext.products);
            let l = local_ring(&q, s, x, 3).unwrap();
            assert_eq!(l.hilbert, lr.hilbert);
            assert_eq!(l.relations, lr.relations);
        }
    }
}

//! Quadratic Z-algebras: pieces, duals, Koszul complexes, certificates.

pub mod algebra;
pub mod certificate;
pub mod koszul;
pub mod pbw;
pub mod piece;

pub use algebra::{make_quadratic, quadratic_dual, Extent, Orientation, QuadraticZAlgebra};
pub use certificate::{Certificate, Datum};
pub use koszul::{koszul_complex, koszulity_check, twisted_koszul, Coexpansion, GeneratorAction, KoszulData, KoszulOptions};
pub use piece::{graded_piece, piece_dim, PiecePresentation, PieceRow};
pub mod frobenius;

pub use frobenius::{dual_dimension_check, frobenius_check, hilbert_table};

#[cfg(test)]
mod tests {
    use alloc::vec;
    use alloc::vec::Vec;

    use super::koszul::{coexpansion_by_intersection, Coexpansion};
    use super::*;
    use crate::exactla::{BasedSpace, Matrix, Subspace, Q};
    use crate::field::Rationals;
    use crate::multilinear::binomial;
    use crate::ngrass::{build_ngr, NgrSpec};

    fn one_periodic(g: usize, rows: &[&[i64]]) -> QuadraticZAlgebra<Rationals> {
        let q = Rationals;
        let gen = BasedSpace::atoms("x", g);
        let amb = BasedSpace::tensor(&[&gen, &gen]);
        let rel = Subspace::span(&amb, &Matrix::from_i64(&q, g * g, rows));
        make_quadratic(&q, vec![(0, gen)], vec![(0, rel)], Orientation::Positive, Extent::Periodic(1)).unwrap()
    }

    /// `x_a ⊗ x_b - x_b ⊗ x_a` for `a < b`
    fn commutators(g: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for a in 0..g {
            for b in a + 1..g {
                let mut v = vec![0; g * g];
                v[a * g + b] = 1;
                v[b * g + a] = -1;
                out.push(v);
            }
        }
        out
    }

    fn symmetric(g: usize) -> QuadraticZAlgebra<Rationals> {
        let c = commutators(g);
        let rows: Vec<&[i64]> = c.iter().map(Vec::as_slice).collect();
        one_periodic(g, &rows)
    }

    fn non_koszul() -> QuadraticZAlgebra<Rationals> {
        one_periodic(2, &[&[1, 0, 0, 0], &[0, 0, 1, -1]])
    }

    #[test]
    fn symmetric_pieces() {
        let a = symmetric(2);
        assert_eq!(graded_piece(&a, 0, 2).unwrap().piece.dim(), 3);
        assert_eq!(graded_piece(&a, 3, 3).unwrap().piece.dim(), 1);
        assert_eq!(graded_piece(&a, 3, 4).unwrap().piece.dim(), 2);
        for n in 2..=4 {
            let t = hilbert_table(&symmetric(n), (-2, 3)).unwrap();
            for (r, i) in (-2i64..=3).enumerate() {
                for (c, j) in (-2i64..=3).enumerate() {
                    let expect = if j < i { 0 } else { binomial(j - i + n as i64 - 1, n as i64 - 1) };
                    assert_eq!(t[r][c], expect);
                }
            }
        }
    }

    #[test]
    fn extreme_relations() {
        let full = one_periodic(2, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(piece_dim(&full, 0, 2).unwrap(), 0);
        assert_eq!(piece_dim(&full, 0, 5).unwrap(), 0);
        let free = one_periodic(2, &[]);
        assert_eq!(piece_dim(&free, 0, 4).unwrap(), 16);
        let d = quadratic_dual(&free);
        let r = d.mirror();
        assert_eq!(r.rel(0).unwrap().dim(), 4);
    }

    #[test]
    fn incremental_pieces_agree_with_the_full_string() {
        let spec = NgrSpec::new(2, 4).unwrap();
        let a = build_ngr(&Rationals, spec).unwrap();
        for i in -2..=0 {
            let mut row = PieceRow::new(&a, i).unwrap();
            for j in i..=i + 3 {
                row.extend_to(j).unwrap();
                let p = graded_piece(&a, i, j).unwrap();
                assert_eq!(p.piece.dim(), row.dim(j), "({i},{j})");
                assert_eq!(p.piece.dim() + p.relsum.dim(), p.string.dim());
            }
        }
        assert_eq!(graded_piece(&a, -2, 0).unwrap().piece.dim(), 10);
    }

    #[test]
    fn dual_of_symmetric_is_exterior() {
        for n in 2..=4 {
            let d = quadratic_dual(&symmetric(n));
            assert_eq!(d.orientation(), Orientation::Negative);
            let dims: Vec<usize> = (0..=n as i64 + 1).map(|k| piece_dim(&d, k, 0).unwrap()).collect();
            let expect: Vec<usize> = (0..=n as i64 + 1).map(|k| binomial(n as i64, k) as usize).collect();
            assert_eq!(dims, expect);
            let a = symmetric(n);
            let r = a.rel(0).unwrap();
            assert_eq!(r.dim() + d.mirror().rel(0).unwrap().dim(), n * n);
        }
    }

    #[test]
    fn double_dual_returns_the_relations() {
        for (m, n) in [(1, 3), (2, 4), (3, 4)] {
            let a = build_ngr(&Rationals, NgrSpec::new(m, n).unwrap()).unwrap();
            let dd = quadratic_dual(&quadratic_dual(&a));
            assert_eq!(dd.orientation(), Orientation::Positive);
            for k in 0..a.period().unwrap() as i64 {
                assert_eq!(dd.rel(k), a.rel(k));
            }
        }
    }

    #[test]
    fn koszul_complexes_of_the_plane() {
        let a = symmetric(2);
        let k = koszul_complex(&a, 3, (-1, 3)).unwrap();
        let coef: Vec<usize> = (1..=3).rev().map(|i| k.coexpansion.dim(i)).collect();
        assert_eq!(coef, vec![1, 2, 1]);
        assert_eq!(k.coexpansion.dim(0), 0);
        // K_l^l = k
        assert_eq!(k.complexes[&3].dims(), vec![1]);
        for m in -1..3 {
            assert!(k.complexes[&m].is_acyclic(), "m = {m}");
            assert!(k.complexes[&m].check_square_zero().is_ok());
        }
    }

    #[test]
    fn koszul_coefficients_of_a24() {
        let a = build_ngr(&Rationals, NgrSpec::new(2, 4).unwrap()).unwrap();
        let k = koszul_complex(&a, 1, (-3, 1)).unwrap();
        let coef: Vec<usize> = [0, -1, -2].iter().map(|&i| k.coexpansion.dim(i)).collect();
        assert_eq!(coef, vec![6, 4, 1]);
        assert_eq!(k.coexpansion.bottom, -2);
        for m in -3..1 {
            assert!(k.complexes[&m].is_acyclic(), "m = {m}");
        }
    }

    #[test]
    fn coexpansion_is_the_intersection() {
        for (m, n) in [(1, 3), (2, 4), (3, 4)] {
            let a = build_ngr(&Rationals, NgrSpec::new(m, n).unwrap()).unwrap();
            for l in 0..=2 {
                let co = Coexpansion::new(&a, l, l - 3).unwrap();
                for k in l - 3..=l {
                    let s = coexpansion_by_intersection(&a, l, k).unwrap();
                    assert_eq!(co.subspace(&a, k), s, "({m},{n}) l={l} k={k}");
                }
            }
        }
    }

    #[test]
    fn koszulity_verdicts() {
        let opts = KoszulOptions::default();
        assert!(koszulity_check(&symmetric(2), (-4, 4), opts).unwrap().passed());
        assert!(koszulity_check(&symmetric(3), (-3, 3), opts).unwrap().passed());
        let a = build_ngr(&Rationals, NgrSpec::new(2, 4).unwrap()).unwrap();
        assert!(koszulity_check(&a, (-4, 4), opts).unwrap().passed());
        let bad = koszulity_check(&non_koszul(), (0, 5), opts).unwrap();
        assert!(!bad.passed());
        assert_eq!(bad.witness(), Some(&Datum::map([("euler_characteristic", Datum::Int(1)), ("l", Datum::from(4i64)), ("m", Datum::from(0i64))])));
    }

    #[test]
    fn frobenius_verdicts() {
        for n in 2..=4 {
            assert!(frobenius_check(&symmetric(n), n, (-2, 2 + n as i64)).unwrap().passed());
        }
        let free = frobenius_check(&one_periodic(2, &[]), 2, (0, 3)).unwrap();
        assert!(!free.passed());
        let a = build_ngr(&Rationals, NgrSpec::new(2, 4).unwrap()).unwrap();
        assert!(frobenius_check(&a, 3, (-6, 6)).unwrap().passed());
    }

    #[test]
    fn dims_of_a24() {
        let a = build_ngr(&Rationals, NgrSpec::new(2, 4).unwrap()).unwrap();
        let t = hilbert_table(&a, (-2, 1)).unwrap();
        assert_eq!(t[0], vec![1, 4, 10, 45]);
        for i in 0..4 {
            assert_eq!(t[i][i], 1);
        }
        // period 3
        let big = hilbert_table(&a, (-4, 4)).unwrap();
        for i in 0..6 {
            for j in i..6 {
                assert_eq!(big[i][j], big[i + 3][j + 3]);
            }
        }
        assert!(dual_dimension_check(&a, (-3, 3)).unwrap().passed());
    }

    #[test]
    fn composition_is_associative() {
        let a = build_ngr(&Rationals, NgrSpec::new(2, 3).unwrap()).unwrap();
        let q = Rationals;
        let rows: Vec<PieceRow<'_, Rationals>> = (0..=4)
            .map(|i| {
                let mut r = PieceRow::new(&a, i).unwrap();
                r.extend_to(4).unwrap();
                r
            })
            .collect();
        let vec_of = |n: usize, s: i64| -> Vec<Q> { (0..n).map(|k| Q::int((k as i64 * 7 + s) % 5 - 2)).collect() };
        let _ = q;
        for (i, j, k, l) in [(0, 1, 2, 4), (0, 2, 3, 4), (1, 2, 3, 4), (0, 1, 3, 4)] {
            let (ri, rj, rk) = (&rows[i], &rows[j], &rows[k]);
            let x = vec_of(ri.dim(j as i64), 1);
            let y = vec_of(rj.dim(k as i64), 2);
            let z = vec_of(rk.dim(l as i64), 3);
            let left = ri.compose(rk, l as i64, &z, &ri.compose(rj, k as i64, &y, &x));
            let right = ri.compose(rj, l as i64, &rj.compose(rk, l as i64, &z, &y), &x);
            assert_eq!(left, right);
        }
    }
}

//! Frobenius property of the quadratic dual, Hilbert tables and the
//! quotient-versus-intersection dimension cross-check.

use alloc::vec;
use alloc::vec::Vec;

use super::algebra::{quadratic_dual, Orientation, QuadraticZAlgebra};
use super::certificate::{Certificate, Datum};
use super::koszul::{dims_table, search_pbw, Coexpansion};
use super::piece::PieceRow;
use crate::error::{Error, Result};
use crate::field::Field;

/// `dim A_{ij}` for `i, j` in the window, in the algebra's own orientation
/// (zero where the piece vanishes for orientation reasons).
pub fn hilbert_table<F: Field>(alg: &QuadraticZAlgebra<F>, window: (i64, i64)) -> Result<Vec<Vec<u128>>> {
    let (lo, hi) = window;
    if hi < lo {
        return Err(Error::InvalidSpec("empty window".into()));
    }
    let stored = match alg.orientation() {
        Orientation::Positive => (lo, hi),
        Orientation::Negative => (-hi, -lo),
    };
    let m = alg.mirror();
    if !m.has_piece(stored.0, stored.1) {
        return Err(Error::OutOfWindow(lo, hi));
    }
    let pbw = if stored.1 - stored.0 >= 3 { search_pbw(&m, 200_000)? } else { None };
    let t = dims_table(&m, stored, pbw.as_ref())?;
    let n = (hi - lo + 1) as usize;
    let mut out = vec![vec![0u128; n]; n];
    for (r, i) in (lo..=hi).enumerate() {
        for (c, j) in (lo..=hi).enumerate() {
            let (si, sj) = alg.stored_index(i, j);
            if si <= sj {
                out[r][c] = t[(si - stored.0) as usize][(sj - stored.0) as usize];
            }
        }
    }
    Ok(out)
}

/// Checks that `A^!` is Frobenius of degree `p_h` on the window: the pieces
/// `A^!_{i+p_h,i}` are lines, the multiplication pairings into them are
/// perfect, and `A^!_{i+p_h+1,i} = 0`.
pub fn frobenius_check<F: Field>(alg: &QuadraticZAlgebra<F>, p_h: usize, window: (i64, i64)) -> Result<Certificate> {
    let f = alg.field();
    let ph = p_h as i64;
    let (lo, hi) = window;
    let dual = quadratic_dual(&alg.mirror());
    let m = dual.mirror();
    let mut cert = Certificate::pass("frobenius", window).with("degree", p_h);
    let mut tops = Vec::new();
    let mut pairings = 0usize;
    for i in lo..=hi - ph {
        // A^!_{k,i} for i ≤ k lives at mirror (-k, -i)
        let a = -i - ph;
        if !m.has_piece(a, -i) {
            return Err(Error::OutOfWindow(i, i + ph));
        }
        let mut row_a = PieceRow::new(&m, a)?;
        row_a.extend_to(-i)?;
        let top = row_a.dim(-i);
        tops.push(top as i64);
        if top != 1 {
            cert.reject(Datum::map([("i", Datum::from(i)), ("top_dim", Datum::from(top))]));
            continue;
        }
        if i + ph < hi {
            let mut below = PieceRow::new(&m, a - 1)?;
            below.extend_to(-i)?;
            let d = below.dim(-i);
            if d != 0 {
                cert.reject(Datum::map([("i", Datum::from(i)), ("beyond_top_dim", Datum::from(d))]));
            }
        }
        for j in i..=i + ph {
            // A^!_{j,i} ⊗ A^!_{i+p_h,j} → A^!_{i+p_h,i}
            let b = -j;
            let mut row_b = PieceRow::new(&m, b)?;
            row_b.extend_to(-i)?;
            let (dx, dy) = (row_a.dim(b), row_b.dim(-i));
            let mut gram = crate::exactla::Matrix::zeros(f, dx, dy);
            for x in 0..dx {
                let mut ex = vec![f.zero(); dx];
                ex[x] = f.one();
                for y in 0..dy {
                    let mut ey = vec![f.zero(); dy];
                    ey[y] = f.one();
                    let v = row_a.compose(&row_b, -i, &ey, &ex);
                    gram.set(x, y, v[0].clone());
                }
            }
            pairings += 1;
            if dx != dy || gram.rank() != dx {
                cert.reject(Datum::map([
                    ("i", Datum::from(i)),
                    ("j", Datum::from(j)),
                    ("dims", Datum::ints([dx as i64, dy as i64])),
                    ("rank", Datum::from(gram.rank())),
                ]));
            }
        }
    }
    cert.set("top_dims", Datum::ints(tops));
    cert.set("pairings", Datum::from(pairings));
    Ok(cert)
}

/// `dim A^!_{l,k}` computed as a quotient of the dual algebra equals
/// `dim A^{!*}_{l,k}` computed as an intersection, for `k ≤ l` in the window.
pub fn dual_dimension_check<F: Field>(alg: &QuadraticZAlgebra<F>, window: (i64, i64)) -> Result<Certificate> {
    let a = alg.mirror();
    let m = quadratic_dual(&a).mirror();
    let (lo, hi) = window;
    let mut cert = Certificate::pass("dual_dimension", window);
    let mut compared = 0usize;
    for l in lo..=hi {
        let co = Coexpansion::new(&a, l, lo)?;
        let mut row = PieceRow::new(&m, -l)?;
        for k in (lo..=l).rev() {
            row.extend_to(-k)?;
            let q = row.dim(-k);
            let s = co.dim(k);
            compared += 1;
            if q != s {
                cert.reject(Datum::map([
                    ("l", Datum::from(l)),
                    ("k", Datum::from(k)),
                    ("quotient", Datum::from(q)),
                    ("intersection", Datum::from(s)),
                ]));
            }
            if q == 0 && s == 0 {
                break;
            }
        }
    }
    cert.set("pairs", Datum::from(compared));
    Ok(cert)
}

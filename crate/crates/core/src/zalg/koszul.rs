//! Koszul complexes `K_l = A^{!*} ⊗ A` and the Koszulity certificate.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::algebra::{Orientation, QuadraticZAlgebra};
use super::certificate::{Certificate, Datum};
use super::pbw::{find_pbw, PbwBasis};
use super::piece::{shifted_relation_rows, tensor_string, PieceRow};
use crate::error::{structural, Error, Result};
use crate::exactla::{BasedSpace, ComplexOfSpaces, Label, Matrix, Subspace};
use crate::field::Field;

/// `A^{!*}_{l,k}` for `k = l, l-1, …` as nested coefficient matrices:
/// row `α` of `coef[k]` expresses basis vector `α` of `A^{!*}_{l,k}` in the
/// basis `β ⊗ e_x` of `A^{!*}_{l,k+1} ⊗ A_{k,k+1}` (index `β * g_k + x`).
#[derive(Clone, Debug)]
pub struct Coexpansion<F: Field> {
    pub l: i64,
    coef: BTreeMap<i64, Matrix<F>>,
    /// lowest `k` with nonzero `A^{!*}_{l,k}`
    pub bottom: i64,
}

impl<F: Field> Coexpansion<F> {
    /// Stops at the first zero piece or at `floor`.
    pub fn new(alg: &QuadraticZAlgebra<F>, l: i64, floor: i64) -> Result<Self> {
        if alg.orientation() != Orientation::Positive {
            return Err(structural("Koszul complexes need a positively oriented algebra"));
        }
        let f = alg.field();
        let mut coef = BTreeMap::new();
        coef.insert(l, Matrix::identity(f, 1));
        let mut bottom = l;
        let mut k = l - 1;
        while k >= floor && alg.has_piece(k, l) {
            let g = alg.gen(k).unwrap().dim();
            let above = coef[&(k + 1)].rows();
            let m = if k == l - 1 {
                Matrix::identity(f, g)
            } else {
                // v = Σ c_{β,x} B_β ⊗ e_x must satisfy (id ⊗ φ)(v) = 0 for φ ∈ I_k^⊥
                let full_above = expand(alg, &coef, l, k + 1);
                let h = alg.gen(k + 1).unwrap().dim();
                let prefix = full_above.cols() / h;
                let ann = alg.rel(k).unwrap().annihilator();
                let mut eq = Matrix::zeros(f, ann.dim() * prefix, above * g);
                for (s, phi_row) in (0..ann.dim()).map(|s| (s, ann.basis().row(s))) {
                    for beta in 0..above {
                        for pi in 0..prefix {
                            for y in 0..h {
                                let b = full_above.get(beta, pi * h + y);
                                if f.is_zero(b) {
                                    continue;
                                }
                                for x in 0..g {
                                    let ph = &phi_row[y * g + x];
                                    if !f.is_zero(ph) {
                                        let e = eq.get_mut(s * prefix + pi, beta * g + x);
                                        f.add_mul_assign(e, b, ph);
                                    }
                                }
                            }
                        }
                    }
                }
                eq.kernel()
            };
            if m.rows() == 0 {
                break;
            }
            coef.insert(k, m);
            bottom = k;
            k -= 1;
        }
        Ok(Coexpansion { l, coef, bottom })
    }

    pub fn dim(&self, k: i64) -> usize {
        self.coef.get(&k).map_or(0, Matrix::rows)
    }

    pub fn coefficients(&self, k: i64) -> Option<&Matrix<F>> {
        self.coef.get(&k)
    }

    /// `A^{!*}_{l,k}` inside the full tensor string.
    pub fn subspace(&self, alg: &QuadraticZAlgebra<F>, k: i64) -> Subspace<F> {
        let string = tensor_string(alg, k, self.l);
        match self.coef.get(&k) {
            Some(_) => Subspace::span(&string, &expand(alg, &self.coef, self.l, k)),
            None => Subspace::zero(alg.field(), &string),
        }
    }
}

/// Basis of `A^{!*}_{l,k}` as full-string row vectors.
fn expand<F: Field>(alg: &QuadraticZAlgebra<F>, coef: &BTreeMap<i64, Matrix<F>>, l: i64, k: i64) -> Matrix<F> {
    let f = alg.field();
    let mut full = Matrix::identity(f, 1);
    for t in (k..l).rev() {
        let g = alg.gen(t).unwrap().dim();
        full = coef[&t].mul(&full.kron(&Matrix::identity(f, g)));
    }
    full
}

/// Direct definition: the intersection of all shifted relation spaces.
pub fn coexpansion_by_intersection<F: Field>(alg: &QuadraticZAlgebra<F>, l: i64, k: i64) -> Result<Subspace<F>> {
    let string = tensor_string(alg, k, l);
    let f = alg.field();
    let mut acc = Subspace::full(f, &string);
    for t in k..l - 1 {
        acc = acc.intersect(&Subspace::span(&string, &shifted_relation_rows(alg, k, l, t)))?;
    }
    Ok(acc)
}

/// The complexes `K_l^m` for a target `l`.
#[derive(Clone, Debug)]
pub struct KoszulData<F: Field> {
    pub l: i64,
    pub coexpansion: Coexpansion<F>,
    pub complexes: BTreeMap<i64, ComplexOfSpaces<F>>,
}

/// A graded module over the generators: spaces `M(k)` and the action
/// `A_{k,k+1} ⊗ M(k) → M(k+1)`.
pub trait GeneratorAction<F: Field> {
    fn space(&self, k: i64) -> BasedSpace;
    /// `e_x · u` for the generator `e_x` of `A_{k,k+1}` and `u ∈ M(k)`
    fn act(&self, k: i64, x: usize, u: &[F::Elem]) -> Vec<F::Elem>;
}

impl<F: Field> GeneratorAction<F> for PieceRow<'_, F> {
    fn space(&self, k: i64) -> BasedSpace {
        self.piece_space(k)
    }

    fn act(&self, k: i64, x: usize, u: &[F::Elem]) -> Vec<F::Elem> {
        self.left_mul_generator(k, x, u)
    }
}

/// `K_l ⊗ M`: terms `A^{!*}_{l,k} ⊗ M(k)` for `max(lo, bottom) ≤ k ≤ l`, in
/// degrees `k - l`. The differential peels the factor `A_{k,k+1}` off the
/// coefficient and lets it act on `M(k)`.
pub fn twisted_koszul<F: Field, M: GeneratorAction<F>>(
    alg: &QuadraticZAlgebra<F>,
    co: &Coexpansion<F>,
    lo: i64,
    module: &M,
) -> Result<ComplexOfSpaces<F>> {
    let f = alg.field();
    let l = co.l;
    let lo = lo.max(co.bottom);
    if lo > l {
        return ComplexOfSpaces::new(f, 0, vec![BasedSpace::zero()], Vec::new());
    }
    let spaces: Vec<BasedSpace> = (lo..=l).map(|k| module.space(k)).collect();
    let mut terms = Vec::new();
    for (k, sp) in (lo..=l).zip(&spaces) {
        let labels =
            (0..co.dim(k)).flat_map(|a| sp.labels().iter().map(move |p| Label::Tensor(vec![Label::Atom(format!("k{a}")), p.clone()]))).collect();
        terms.push(BasedSpace::from_distinct(labels));
    }
    let mut diffs = Vec::new();
    for k in lo..l {
        let g = alg.gen(k).unwrap().dim();
        let c = co.coefficients(k).unwrap();
        let (da, db) = (spaces[(k - lo) as usize].dim(), spaces[(k - lo + 1) as usize].dim());
        let above = co.dim(k + 1);
        let mut d = Matrix::zeros(f, above * db, c.rows() * da);
        let mut e = vec![f.zero(); da];
        // products e_x · u, shared across coefficient rows
        let mut prods: Vec<Vec<Vec<F::Elem>>> = Vec::with_capacity(g);
        for x in 0..g {
            let mut px = Vec::with_capacity(da);
            for u in 0..da {
                e[u] = f.one();
                px.push(module.act(k, x, &e));
                e[u] = f.zero();
            }
            prods.push(px);
        }
        for alpha in 0..c.rows() {
            for beta in 0..above {
                for x in 0..g {
                    let cf = c.get(alpha, beta * g + x);
                    if f.is_zero(cf) {
                        continue;
                    }
                    for u in 0..da {
                        for (t, v) in prods[x][u].iter().enumerate() {
                            if !f.is_zero(v) {
                                let cell = d.get_mut(beta * db + t, alpha * da + u);
                                f.add_mul_assign(cell, cf, v);
                            }
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }
    ComplexOfSpaces::new(f, lo - l, terms, diffs)
}

/// `K_l^m = K_l ⊗ A_{m,-}`.
pub fn koszul_component<F: Field>(alg: &QuadraticZAlgebra<F>, co: &Coexpansion<F>, row: &PieceRow<'_, F>) -> Result<ComplexOfSpaces<F>> {
    twisted_koszul(alg, co, row.source(), row)
}

/// `K_l^m` for all `m` in `sources`.
pub fn koszul_complex<F: Field>(alg: &QuadraticZAlgebra<F>, l: i64, sources: (i64, i64)) -> Result<KoszulData<F>> {
    let co = Coexpansion::new(alg, l, sources.0.min(l))?;
    let mut complexes = BTreeMap::new();
    for m in sources.0..=sources.1 {
        if !alg.has_piece(m, m) {
            return Err(Error::OutOfWindow(m, l));
        }
        let mut row = PieceRow::new(alg, m)?;
        if m <= l {
            row.extend_to(l)?;
        }
        complexes.insert(m, koszul_component(alg, &co, &row)?);
    }
    Ok(KoszulData { l, coexpansion: co, complexes })
}

/// Options for [`koszulity_check`].
#[derive(Clone, Copy, Debug)]
pub struct KoszulOptions {
    /// largest total dimension of a `K_l^m` whose homology is computed directly
    pub direct_budget: usize,
    /// assignments of letter orders tried by the PBW search
    pub pbw_budget: usize,
}

impl Default for KoszulOptions {
    fn default() -> Self {
        KoszulOptions { direct_budget: 2500, pbw_budget: 2_000_000 }
    }
}

/// Dimensions `dim A_{ij}` on `lo ≤ i ≤ j ≤ hi` of the stored data, using
/// normal words when a PBW basis is known.
pub fn dims_table<F: Field>(alg: &QuadraticZAlgebra<F>, window: (i64, i64), pbw: Option<&PbwBasis>) -> Result<Vec<Vec<u128>>> {
    let (lo, hi) = window;
    let mut out = Vec::new();
    for i in lo..=hi {
        let mut r = vec![0u128; (i - lo) as usize];
        match pbw {
            Some(b) => r.extend(b.normal_word_counts(i, hi)),
            None => {
                let mut row = PieceRow::new(alg, i)?;
                row.extend_to(hi)?;
                r.extend((i..=hi).map(|j| row.dim(j) as u128));
            }
        }
        out.push(r);
    }
    Ok(out)
}

/// PBW search against the degree-3 dimensions of the stored data.
pub fn search_pbw<F: Field>(alg: &QuadraticZAlgebra<F>, budget: usize) -> Result<Option<PbwBasis>> {
    let mut d3 = BTreeMap::new();
    let slots: Vec<i64> = match alg.extent() {
        super::algebra::Extent::Periodic(p) => (0..p as i64).collect(),
        super::algebra::Extent::Window(lo, hi) => (lo..hi - 2).collect(),
    };
    for i in slots {
        let mut row = PieceRow::new(alg, i)?;
        row.extend_to(i + 3)?;
        d3.insert(i, row.dim(i + 3));
    }
    Ok(find_pbw(alg, |i| d3[&i], budget))
}

/// Certifies that `K_l^m` is acyclic for all `m < l` in the window.
///
/// Each pair is covered either by a direct homology computation or, when
/// the algebra has a PBW basis, by Koszulity of PBW algebras. The Euler
/// characteristic of every pair is checked independently.
pub fn koszulity_check<F: Field>(alg: &QuadraticZAlgebra<F>, window: (i64, i64), opts: KoszulOptions) -> Result<Certificate> {
    let alg = &alg.mirror();
    let (lo, hi) = window;
    if !alg.has_piece(lo, hi) {
        return Err(Error::OutOfWindow(lo, hi));
    }
    let mut cert = Certificate::pass("koszulity", window);
    let pbw = search_pbw(alg, opts.pbw_budget)?;
    cert.set("pbw", pbw.is_some());
    if let Some(b) = &pbw {
        cert.set("pbw_left_dominant", b.left_dominant);
        cert.set("pbw_orders", Datum::table(b.orders.iter().map(|o| o.iter().map(|&x| x as i64))));
    }
    let dims = dims_table(alg, window, pbw.as_ref())?;
    let a = |i: i64, j: i64| dims[(i - lo) as usize][(j - lo) as usize];
    let mut direct = 0usize;
    let mut euler_checked = 0usize;
    let mut uncovered = Vec::new();
    let mut rows: Vec<Option<PieceRow<'_, F>>> = (lo..=hi).map(|_| None).collect();
    for l in lo + 1..=hi {
        let co = Coexpansion::new(alg, l, lo)?;
        for m in lo..l {
            let ks = m.max(co.bottom)..=l;
            let chi: i128 = ks
                .clone()
                .map(|k| {
                    let t = co.dim(k) as i128 * a(m, k) as i128;
                    if (l - k) % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum();
            euler_checked += 1;
            if chi != 0 {
                cert.reject(Datum::map([("l", Datum::from(l)), ("m", Datum::from(m)), ("euler_characteristic", Datum::Int(chi))]));
            }
            let size: u128 = ks.map(|k| co.dim(k) as u128 * a(m, k)).sum();
            if size as usize <= opts.direct_budget {
                let slot = &mut rows[(m - lo) as usize];
                if slot.is_none() {
                    *slot = Some(PieceRow::new(alg, m)?);
                }
                let row = slot.as_mut().unwrap();
                row.extend_to(l)?;
                let k = koszul_component(alg, &co, row)?;
                direct += 1;
                if let Some((deg, h)) = k.first_homology() {
                    cert.reject(Datum::map([
                        ("l", Datum::from(l)),
                        ("m", Datum::from(m)),
                        ("degree", Datum::from(deg)),
                        ("homology_dim", Datum::from(h)),
                    ]));
                }
            } else if pbw.is_none() {
                uncovered.push((m, l));
            }
        }
    }
    if !uncovered.is_empty() {
        let (m, l) = uncovered[0];
        cert.reject(Datum::map([
            ("unverified_pairs", Datum::from(uncovered.len())),
            ("first_unverified", Datum::ints([m, l])),
            ("reason", Datum::from("no PBW basis and complex exceeds the direct budget")),
        ]));
    }
    cert.set("pairs", Datum::from(euler_checked));
    cert.set("pairs_direct", Datum::from(direct));
    Ok(cert)
}

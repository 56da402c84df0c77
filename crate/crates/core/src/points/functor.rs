//! The functor `F: A → Vect` of a k-point, built outward from
//! `F(-1) = W → F(0) = k`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::SubspaceW;
use crate::error::{structural, Result};
use crate::exactla::{quotient_space, BasedSpace, Label, Matrix, Subspace};
use crate::field::Field;
use crate::ngrass::{build_ngr, NgrSpec};
use crate::zalg::{twisted_koszul, Certificate, Coexpansion, Datum, GeneratorAction, QuadraticZAlgebra};

#[derive(Clone, Debug)]
pub struct PointData<F: Field> {
    pub window: (i64, i64),
    /// lowest index with a computed `F(i)`
    bottom: i64,
    spaces: Vec<BasedSpace>,
    /// `act[k - bottom]: A_{k,k+1} ⊗ F(k) → F(k+1)`, column `a * dim F(k) + u`
    act: Vec<Matrix<F>>,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug)]
pub enum PointOutcome<F: Field> {
    Point(PointData<F>),
    /// `dim W > m`; carries the failing certificate
    Rejected(Certificate),
}

impl<F: Field> PointOutcome<F> {
    pub fn point(&self) -> Option<&PointData<F>> {
        match self {
            PointOutcome::Point(p) => Some(p),
            PointOutcome::Rejected(_) => None,
        }
    }
}

impl<F: Field> PointData<F> {
    pub fn range(&self) -> (i64, i64) {
        (self.bottom, self.bottom + self.spaces.len() as i64 - 1)
    }

    pub fn dim(&self, i: i64) -> usize {
        self.space_at(i).map_or(0, BasedSpace::dim)
    }

    pub fn space_at(&self, i: i64) -> Option<&BasedSpace> {
        usize::try_from(i - self.bottom).ok().and_then(|k| self.spaces.get(k))
    }

    pub fn action(&self, k: i64) -> Option<&Matrix<F>> {
        usize::try_from(k - self.bottom).ok().and_then(|k| self.act.get(k))
    }

    pub fn dims(&self) -> Vec<(i64, usize)> {
        let (lo, hi) = self.range();
        (lo..=hi).map(|i| (i, self.dim(i))).collect()
    }

    pub fn passed(&self) -> bool {
        self.certificates.iter().all(Certificate::passed)
    }
}

impl<F: Field> GeneratorAction<F> for PointData<F> {
    fn space(&self, k: i64) -> BasedSpace {
        self.space_at(k).cloned().unwrap_or_else(BasedSpace::zero)
    }

    fn act(&self, k: i64, x: usize, u: &[F::Elem]) -> Vec<F::Elem> {
        let m = &self.act[(k - self.bottom) as usize];
        let du = u.len();
        let f = m.field();
        let mut out = vec![f.zero(); m.rows()];
        for (c, s) in u.iter().enumerate() {
            if f.is_zero(s) {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                f.add_mul_assign(o, m.get(r, x * du + c), s);
            }
        }
        out
    }
}

/// `r ⊗ u ↦ Σ r_{ab} e_a ⊗ act(e_b ⊗ u)` for `r ∈ I_{k,k+2}`, landing in
/// `A_{k+1,k+2} ⊗ F(k+1)`.
fn relation_images<F: Field>(rel: &Subspace<F>, g_hi: usize, g_lo: usize, act: &Matrix<F>, du: usize) -> Vec<Vec<F::Elem>> {
    let f = act.field();
    let dv = act.rows();
    let mut out = Vec::new();
    for r in rel.basis().row_vecs() {
        for u in 0..du {
            let mut v = vec![f.zero(); g_hi * dv];
            for a in 0..g_hi {
                for b in 0..g_lo {
                    let c = &r[a * g_lo + b];
                    if f.is_zero(c) {
                        continue;
                    }
                    for t in 0..dv {
                        f.add_mul_assign(&mut v[a * dv + t], c, act.get(t, b * du + u));
                    }
                }
            }
            out.push(v);
        }
    }
    out
}

/// `F(k+2) = coker(I_{k,k+2} ⊗ F(k) → A_{k+1,k+2} ⊗ F(k+1))`.
fn step_up<F: Field>(alg: &QuadraticZAlgebra<F>, k: i64, fk: &BasedSpace, fk1: &BasedSpace, act: &Matrix<F>) -> Result<(BasedSpace, Matrix<F>)> {
    let f = alg.field();
    let (g_hi, g_lo) = (alg.gen(k + 1).unwrap().dim(), alg.gen(k).unwrap().dim());
    let amb = BasedSpace::tensor(&[alg.gen(k + 1).unwrap(), fk1]);
    let imgs = relation_images(alg.rel(k).unwrap(), g_hi, g_lo, act, fk.dim());
    let sub = Subspace::span_vectors(f, &amb, imgs);
    let (q, proj) = quotient_space(&amb, &sub)?;
    Ok((q, proj.matrix().clone()))
}

/// `F(k) = {φ ∈ Hom(A_{k,k+1}, F(k+1)) : φ respects I_{k,k+2}}`, with its
/// action `e_b ⊗ φ ↦ φ(e_b)`.
fn step_down<F: Field>(alg: &QuadraticZAlgebra<F>, k: i64, dv: usize, act: &Matrix<F>) -> (BasedSpace, Matrix<F>) {
    let f = alg.field();
    let (g_hi, g_lo) = (alg.gen(k + 1).unwrap().dim(), alg.gen(k).unwrap().dim());
    let dw = act.rows();
    let rel = alg.rel(k).unwrap();
    let mut n = Matrix::zeros(f, rel.dim() * dw, g_lo * dv);
    for (s, r) in rel.basis().row_vecs().iter().enumerate() {
        for a in 0..g_hi {
            for b in 0..g_lo {
                let c = &r[a * g_lo + b];
                if f.is_zero(c) {
                    continue;
                }
                for v in 0..dv {
                    for t in 0..dw {
                        let x = act.get(t, a * dv + v);
                        if !f.is_zero(x) {
                            f.add_mul_assign(n.get_mut(s * dw + t, b * dv + v), c, x);
                        }
                    }
                }
            }
        }
    }
    let ker = n.kernel();
    let dk = ker.rows();
    let space = BasedSpace::from_distinct((0..dk).map(|j| Label::atom(format!("f{k}.{j}"))).collect());
    let mut down = Matrix::zeros(f, dv, g_lo * dk);
    for j in 0..dk {
        for b in 0..g_lo {
            for v in 0..dv {
                down.set(v, b * dk + j, ker.get(j, b * dv + v).clone());
            }
        }
    }
    (space, down)
}

/// The functor of the point `W`, computed on `[lo - p, hi]` so that every
/// twisted Koszul complex `K_l ⊗ F`, `l ∈ [lo, hi]`, is complete.
pub fn point_functor<F: Field>(field: &F, spec: NgrSpec, w: &SubspaceW<F>, window: (i64, i64)) -> Result<PointOutcome<F>> {
    if w.ambient_dim() != spec.n {
        return Err(structural("W does not live in V"));
    }
    let (lo, hi) = window;
    if lo > -1 || hi < 1 {
        return Err(structural("the window must contain -1, 0 and 1"));
    }
    let alg = build_ngr(field, spec)?;
    let p = spec.period() as i64;
    let bottom = lo - p;
    let d = w.dim();

    // F(-1) = W, F(0) = k, A_{-1,0} = V* acting by evaluation
    let fw = BasedSpace::atoms("w", d);
    let mut base = Matrix::zeros(field, 1, spec.n * d);
    for k in 0..spec.n {
        for j in 0..d {
            base.set(0, k * d + j, w.basis().get(j, k).clone());
        }
    }
    let mut up_spaces = vec![fw.clone(), BasedSpace::unit()];
    let mut up_act = vec![base.clone()];
    for k in -1..hi - 1 {
        let t = (k + 1) as usize;
        let (q, a) = step_up(&alg, k, &up_spaces[t], &up_spaces[t + 1], &up_act[t])?;
        if k == -1 && q.dim() == 0 {
            let witness = Datum::from("F(1)=0");
            let c = Certificate::fail("point_functor", window, witness).with("dim_w", d).with("dim_f1", 0usize);
            return Ok(PointOutcome::Rejected(c));
        }
        up_spaces.push(q);
        up_act.push(a);
    }
    let mut down_spaces = Vec::new();
    let mut down_act = Vec::new();
    let (mut cur_dim, mut cur_act) = (d, base);
    for k in (bottom..-1).rev() {
        let (s, a) = step_down(&alg, k, cur_dim, &cur_act);
        cur_dim = s.dim();
        down_spaces.push(s);
        down_act.push(a.clone());
        cur_act = a;
    }
    down_spaces.reverse();
    down_act.reverse();
    let mut spaces = down_spaces;
    spaces.extend(up_spaces);
    let mut act = down_act;
    act.extend(up_act);
    let mut data = PointData { window, bottom, spaces, act, certificates: Vec::new() };
    data.certificates = vec![shape_certificate(&data), relations_certificate(&alg, &data), acyclicity_certificate(&alg, &data, p)?];
    Ok(PointOutcome::Point(data))
}

/// `F(0) = k` and no `F(i)` vanishes.
fn shape_certificate<F: Field>(data: &PointData<F>) -> Certificate {
    let mut c = Certificate::pass("point_spaces", data.window);
    if data.dim(0) != 1 {
        c.reject(Datum::map([("i", Datum::from(0i64)), ("dim", data.dim(0).into())]));
    }
    for (i, n) in data.dims() {
        if n == 0 {
            c.reject(Datum::map([("i", Datum::from(i)), ("dim", 0usize.into())]));
        }
    }
    c.set("dims", Datum::List(data.dims().into_iter().map(|(i, n)| Datum::ints([i as i128, n as i128])).collect()));
    c
}

/// Every relation acts by zero: `I_{k,k+2} ⊗ F(k) → F(k+2)` vanishes.
fn relations_certificate<F: Field>(alg: &QuadraticZAlgebra<F>, data: &PointData<F>) -> Certificate {
    let mut c = Certificate::pass("point_relations", data.window);
    let (lo, hi) = data.range();
    for k in lo..=hi - 2 {
        let (g_hi, g_lo) = (alg.gen(k + 1).unwrap().dim(), alg.gen(k).unwrap().dim());
        let a0 = data.action(k).unwrap();
        let a1 = data.action(k + 1).unwrap();
        for v in relation_images(alg.rel(k).unwrap(), g_hi, g_lo, a0, data.dim(k)) {
            if a1.apply(&v).iter().any(|x| !a1.field().is_zero(x)) {
                c.reject(Datum::map([("k", Datum::from(k))]));
                return c;
            }
        }
    }
    c
}

/// `K_l ⊗ F` is exact for every `l` in the window, including at `F(l)`.
fn acyclicity_certificate<F: Field>(alg: &QuadraticZAlgebra<F>, data: &PointData<F>, p: i64) -> Result<Certificate> {
    let (lo, hi) = data.window;
    let mut c = Certificate::pass("point_acyclicity", data.window);
    let mut lengths = Vec::new();
    for l in lo..=hi {
        let co = Coexpansion::new(alg, l, l - p)?;
        let k = twisted_koszul(alg, &co, data.bottom, data)?;
        lengths.push(k.terms().len());
        if let Some((deg, dim)) = k.first_homology() {
            c.reject(Datum::map([("l", Datum::from(l)), ("degree", deg.into()), ("dim", dim.into())]));
        }
    }
    c.set("terms", Datum::ints(lengths.into_iter().map(|x| x as i128)));
    Ok(c)
}

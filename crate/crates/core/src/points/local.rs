//! The completed local ring at `x_W` as the quadratic dual of `C^{W,V}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::ext::{c_basis, c_product};
use super::SubspaceW;
use crate::error::{structural, Error, Result};
use crate::exactla::{BasedSpace, Label, Matrix, Subspace};
use crate::field::Field;
use crate::ngrass::NgrSpec;
use crate::zalg::{hilbert_table, koszulity_check, make_quadratic, Certificate, Datum, Extent, KoszulOptions, Orientation, QuadraticZAlgebra};

#[derive(Clone, Debug)]
pub struct LocalRingPresentation<F: Field> {
    /// `x_{ij}` at index `i * d + j`, `i` over the basis of `U`, `j` over `W`
    pub generators: Vec<String>,
    /// `R ⊂ span(x) ⊗ span(x)`, index `s * g + t` for `x_s ⊗ x_t`
    pub relations: Subspace<F>,
    /// `[x_{ij}, x_{lj}]`, `i < l`
    pub rel1: Vec<Vec<F::Elem>>,
    /// `[x_{ij} + x_{ik}, x_{lj} + x_{lk}]`, `i < l`, `j < k`
    pub rel2: Vec<Vec<F::Elem>>,
    /// `h_t = dim 𝔄_t` for `t = 0..=depth`
    pub hilbert: Vec<u128>,
    pub certificates: Vec<Certificate>,
}

impl<F: Field> LocalRingPresentation<F> {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(Certificate::passed)
    }
}

fn check_d<F: Field>(spec: NgrSpec, w: &SubspaceW<F>) -> Result<()> {
    if w.ambient_dim() != spec.n {
        return Err(structural("W does not live in V"));
    }
    if w.dim() != spec.m {
        return Err(Error::Unsupported(format!("local rings need dim W = m, got {} and {}", w.dim(), spec.m)));
    }
    Ok(())
}

/// `dim (V/W) ⊗ W*`.
pub fn tangent_dimension<F: Field>(spec: NgrSpec, w: &SubspaceW<F>) -> Result<usize> {
    check_d(spec, w)?;
    Ok(w.codim() * w.dim())
}

fn one_periodic<F: Field>(f: &F, gen: &BasedSpace, rel: Subspace<F>) -> Result<QuadraticZAlgebra<F>> {
    make_quadratic(f, vec![(0, gen.clone())], vec![(0, rel)], Orientation::Positive, Extent::Periodic(1))
}

/// `x_s ⊗ x_t - x_t ⊗ x_s`
fn commutator<F: Field>(f: &F, g: usize, xs: &[usize], ys: &[usize]) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); g * g];
    for &s in xs {
        for &t in ys {
            f.add_mul_assign(&mut v[s * g + t], &f.one(), &f.one());
            let e = &mut v[t * g + s];
            *e = f.sub(e, &f.one());
        }
    }
    v
}

/// Generators, relations and Hilbert truncation of `𝔄 = (C^{W,V})^!`, with
/// certificates: (a) `rel1 ∪ rel2` spans `R`; (b) `C^{W,V}` is Koszul on
/// `[0, depth]`; (c) the Hilbert truncation `h_0..h_depth`.
pub fn local_ring<F: Field>(field: &F, spec: NgrSpec, w: &SubspaceW<F>, depth: usize) -> Result<LocalRingPresentation<F>> {
    check_d(spec, w)?;
    let f = field;
    let (c, d) = (w.codim(), w.dim());
    let g = c * d;
    let x = |i: usize, j: usize| i * d + j;
    let generators: Vec<String> = (0..c).flat_map(|i| (0..d).map(move |j| format!("x{}{}", i + 1, j + 1))).collect();
    let span_x = BasedSpace::from_distinct(generators.iter().map(|s| Label::atom(s.clone())).collect());
    let gen_c = span_x.dual();

    // C_1 ⊗ C_1 → C_2, e_s ⊗ e_t ↦ e_s e_t
    let basis = c_basis(c, d, 2);
    let (c1, c2) = (&basis[1], &basis[2]);
    let mut mult = Matrix::zeros(f, c2.len(), g * g);
    for (s, a) in c1.iter().enumerate() {
        for (t, b) in c1.iter().enumerate() {
            if let Some((odd, z)) = c_product(a, b) {
                let k = c2.iter().position(|y| *y == z).unwrap();
                mult.set(k, s * g + t, f.sign(odd));
            }
        }
    }
    let c1_index = |i: usize, j: usize| c1.iter().position(|e| e.wedge == [i] && e.sym == [j]).unwrap();
    // C_1 is listed in the same order as the x_{ij}
    debug_assert!((0..c).all(|i| (0..d).all(|j| c1_index(i, j) == x(i, j))));
    let amb_c = BasedSpace::tensor(&[&gen_c, &gen_c]);
    let i_c = Subspace::span(&amb_c, &mult.kernel());
    let amb_x = BasedSpace::tensor(&[&span_x, &span_x]);
    let r = i_c.annihilator().relabel(&amb_x)?;

    let mut rel1 = Vec::new();
    let mut rel2 = Vec::new();
    for i in 0..c {
        for l in i + 1..c {
            for j in 0..d {
                rel1.push(commutator(f, g, &[x(i, j)], &[x(l, j)]));
            }
            for j in 0..d {
                for k in j + 1..d {
                    rel2.push(commutator(f, g, &[x(i, j), x(i, k)], &[x(l, j), x(l, k)]));
                }
            }
        }
    }
    let named: Vec<Vec<F::Elem>> = rel1.iter().chain(&rel2).cloned().collect();
    let spanned = Subspace::span_vectors(f, &amb_x, named.clone());
    let mut span_cert = Certificate::pass("local_ring_relations", (0, 2))
        .with("rel1", rel1.len())
        .with("rel2", rel2.len())
        .with("dim_r", r.dim())
        .with("dim_c2", c2.len());
    if let Some(k) = named.iter().position(|v| !r.contains(v)) {
        span_cert.reject(Datum::map([("outside", Datum::from(k))]));
    }
    if spanned.dim() != r.dim() || spanned.dim() != named.len() {
        span_cert.reject(Datum::map([("span", Datum::from(spanned.dim())), ("dim_r", r.dim().into())]));
    }

    let c_alg = one_periodic(f, &gen_c, i_c)?;
    let koszul = koszulity_check(&c_alg, (0, depth as i64), KoszulOptions::default())?;
    let dual = one_periodic(f, &span_x, r.clone())?;
    let hilbert = hilbert_table(&dual, (0, depth as i64))?.swap_remove(0);
    let hilb_cert =
        Certificate::pass("local_ring_hilbert", (0, depth as i64)).with("h", Datum::ints(hilbert.iter().map(|&h| h as i128))).with("tangent", g);
    Ok(LocalRingPresentation { generators, relations: r, rel1, rel2, hilbert, certificates: vec![span_cert, koszul, hilb_cert] })
}

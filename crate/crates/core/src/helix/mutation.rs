//! Mutations of exceptional pairs, helices and their endomorphism algebras.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::complex::{cone, ChainMap, PMap, ProjComplex};
use super::hom::{hom_complex, Homology};
use crate::error::{Error, Result};
use crate::exactla::{BasedSpace, Label, Matrix};
use crate::field::Field;
use crate::ngrass::fdalg::monomial_identification;
use crate::ngrass::{compare_with_fd, FDAlgebra};
use crate::zalg::{Certificate, Datum, QuadraticZAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

fn support<F: Field>(alg: &FDAlgebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>) -> Result<Vec<(i64, usize)>> {
    Ok(hom_complex(alg, x, y)?.homology_support())
}

/// `Hom^•(E, E) = k` in degree 0.
pub fn is_exceptional<F: Field>(alg: &FDAlgebra<F>, e: &ProjComplex<F>) -> Result<bool> {
    Ok(support(alg, e, e)? == vec![(0, 1)])
}

/// Both objects exceptional and `Hom^•(F, E) = 0`.
pub fn check_exceptional_pair<F: Field>(alg: &FDAlgebra<F>, e: &ProjComplex<F>, f: &ProjComplex<F>) -> Result<()> {
    if !is_exceptional(alg, e)? || !is_exceptional(alg, f)? {
        return Err(Error::NotExceptional(String::from("an object has endomorphisms beyond the scalars")));
    }
    let back = support(alg, f, e)?;
    if let Some((k, d)) = back.first() {
        return Err(Error::NotExceptional(format!("Hom^{k}(F,E) has dimension {d}")));
    }
    Ok(())
}

/// `R_F E = cone(E → Hom^•(E,F)^∨ ⊗ F)` and `L_E F = cone(Hom^•(E,F) ⊗ E → F)[-1]`,
/// both minimized. The pair is `(E, F)` in either direction.
pub fn mutate<F: Field>(alg: &FDAlgebra<F>, dir: Direction, e: &ProjComplex<F>, f: &ProjComplex<F>) -> Result<ProjComplex<F>> {
    check_exceptional_pair(alg, e, f)?;
    let fl = alg.field();
    let h = hom_complex(alg, e, f)?;
    let mut maps: Vec<ChainMap<F>> = Vec::new();
    for (k, _) in h.homology_support() {
        let hk = h.homology(k);
        maps.extend(hk.reps.iter().map(|v| h.to_map(alg, k, v)));
    }
    let out = match dir {
        Direction::Right => {
            // ⊕_b F[k_b], the map E → F[k_b] has the components of φ_b
            let parts: Vec<ProjComplex<F>> = maps.iter().map(|m| f.shift(fl, m.degree)).collect();
            let target = ProjComplex::direct_sum(alg, &parts);
            let mut comps = BTreeMap::new();
            for a in e.degrees() {
                let pieces: Vec<PMap<F>> = maps.iter().map(|m| m.component(alg, e, f, a)).collect();
                comps.insert(a, PMap::vstack(e.term(a), &pieces));
            }
            let coev = ChainMap { degree: 0, comps };
            cone(alg, e, &target, &coev)?
        }
        Direction::Left => {
            let parts: Vec<ProjComplex<F>> = maps.iter().map(|m| e.shift(fl, -m.degree)).collect();
            let source = ProjComplex::direct_sum(alg, &parts);
            let mut comps = BTreeMap::new();
            for a in source.degrees() {
                let pieces: Vec<PMap<F>> = maps.iter().zip(&parts).map(|(m, _)| m.component(alg, e, f, a - m.degree)).collect();
                comps.insert(a, PMap::hstack(f.term(a), &pieces));
            }
            let ev = ChainMap { degree: 0, comps };
            cone(alg, &source, f, &ev)?.shift(fl, -1)
        }
    };
    Ok(out.minimize(alg))
}

/// A window `lo..=hi` of a helix of the given period.
#[derive(Clone, Debug)]
pub struct HelixWindow<F: Field> {
    pub period: usize,
    pub objects: BTreeMap<i64, ProjComplex<F>>,
}

impl<F: Field> HelixWindow<F> {
    pub fn window(&self) -> (i64, i64) {
        (*self.objects.keys().next().unwrap(), *self.objects.keys().next_back().unwrap())
    }

    pub fn get(&self, i: i64) -> Option<&ProjComplex<F>> {
        self.objects.get(&i)
    }
}

/// Extends `collection` (placed at `lo, lo+1, …`) by `up` objects above via
/// `E_{i+p} = R_{E_{i+p-1}} ⋯ R_{E_{i+1}} E_i` and `down` objects below via
/// `E_{i-p} = L_{E_{i-p+1}} ⋯ L_{E_{i-1}} E_i`.
pub fn extend_helix<F: Field>(alg: &FDAlgebra<F>, lo: i64, collection: Vec<ProjComplex<F>>, up: usize, down: usize) -> Result<HelixWindow<F>> {
    let p = collection.len() as i64;
    if p == 0 {
        return Err(Error::InvalidSpec(String::from("empty collection")));
    }
    let mut objects: BTreeMap<i64, ProjComplex<F>> = collection.into_iter().enumerate().map(|(k, x)| (lo + k as i64, x)).collect();
    for _ in 0..up {
        let j = *objects.keys().next_back().unwrap() + 1;
        let mut x = objects[&(j - p)].clone();
        for k in j - p + 1..j {
            x = mutate(alg, Direction::Right, &x, &objects[&k])?;
        }
        objects.insert(j, x);
    }
    for _ in 0..down {
        let j = *objects.keys().next().unwrap() - 1;
        let mut x = objects[&(j + p)].clone();
        for k in (j + 1..j + p).rev() {
            x = mutate(alg, Direction::Left, &objects[&k], &x)?;
        }
        objects.insert(j, x);
    }
    Ok(HelixWindow { period: p as usize, objects })
}

/// The helix through `P_{lo}, …, P_0` of `alg`, grown to `len` objects,
/// splitting the extra objects as evenly as possible with the larger half above.
pub fn line_bundle_helix<F: Field>(alg: &FDAlgebra<F>, len: usize) -> Result<HelixWindow<F>> {
    let (lo, hi) = alg.window();
    let coll: Vec<ProjComplex<F>> = (lo..=hi).map(ProjComplex::projective).collect();
    let extra = len.saturating_sub(coll.len());
    extend_helix(alg, lo, coll, extra.div_ceil(2), extra / 2)
}

/// Forward Homs concentrated in degree 0 on the window, and exceptionality
/// of every run of `period` consecutive objects.
pub fn verify_geometric<F: Field>(alg: &FDAlgebra<F>, helix: &HelixWindow<F>, window: (i64, i64)) -> Result<Certificate> {
    let (lo, hi) = window;
    let mut cert = Certificate::pass("geometric_helix", window);
    let p = helix.period as i64;
    let mut table = Vec::new();
    for i in lo..=hi {
        let ei = helix.get(i).ok_or(Error::OutOfWindow(i, i))?;
        let mut row = Vec::new();
        for j in i..=hi {
            let ej = helix.get(j).ok_or(Error::OutOfWindow(j, j))?;
            let sup = support(alg, ei, ej)?;
            let mut h0 = 0;
            for (k, d) in sup {
                if k == 0 {
                    h0 = d;
                } else {
                    cert.reject(Datum::map([("i", Datum::from(i)), ("j", Datum::from(j)), ("k", Datum::from(k))]));
                }
            }
            if i == j && h0 != 1 {
                cert.reject(Datum::map([("i", Datum::from(i)), ("j", Datum::from(j)), ("endomorphisms", Datum::from(h0))]));
            }
            row.push(h0 as i64);
            if j > i && j < i + p {
                if let Some((k, _)) = support(alg, ej, ei)?.first() {
                    cert.reject(Datum::map([("i", Datum::from(j)), ("j", Datum::from(i)), ("k", Datum::from(*k))]));
                }
            }
        }
        table.push(row);
    }
    cert.set("hom_dims", Datum::table(table));
    Ok(cert)
}

/// Minimal complexes are isomorphic iff they have the same terms and a
/// degree-0 cocycle between them has invertible scalar parts; a random
/// combination of a basis of `H^0 Hom(X, Y)` is tried.
pub fn isomorphic<F: Field>(alg: &FDAlgebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>, seed: u64) -> Result<bool> {
    let (x, y) = (x.minimize(alg), y.minimize(alg));
    if x.multiplicities(alg) != y.multiplicities(alg) {
        return Ok(false);
    }
    if x.is_zero() {
        return Ok(true);
    }
    let f = alg.field();
    let h = hom_complex(alg, &x, &y)?;
    let hom0 = h.homology(0);
    if hom0.dim() == 0 {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = h.complex().dim(0);
    let mut v = vec![f.zero(); n];
    for rep in &hom0.reps {
        let c = f.from_i64(rng.random_range(1..=97));
        for (a, b) in v.iter_mut().zip(rep) {
            f.add_mul_assign(a, &c, b);
        }
    }
    let m = h.to_map(alg, 0, &v);
    for t in x.degrees() {
        let comp = m.component(alg, &x, &y, t);
        let (src, tgt) = (x.term(t), y.term(t));
        let s = Matrix::from_fn(f, tgt.len(), src.len(), |r, c| comp.scalar(r, c).cloned().unwrap_or_else(|| f.zero()));
        if s.rank() != src.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `H^0 Hom(E_i, E_j)` with composition on a window, as a finite-dimensional
/// algebra, and its comparison with `alg`. Generator identifications are
/// monomial on the consecutive projectives of `base`, and solved for
/// elsewhere from the relations, moving outward from `base`.
pub fn helix_end_algebra<F: Field>(
    b: &FDAlgebra<F>,
    helix: &HelixWindow<F>,
    window: (i64, i64),
    alg: &QuadraticZAlgebra<F>,
    seed: u64,
) -> Result<(FDAlgebra<F>, Certificate)> {
    let f = b.field();
    let (lo, hi) = window;
    let mut homs: BTreeMap<(i64, i64), (super::hom::HomComplex<F>, Homology<F>)> = BTreeMap::new();
    for i in lo..=hi {
        for j in i..=hi {
            let (ei, ej) = (helix.get(i).ok_or(Error::OutOfWindow(i, j))?, helix.get(j).ok_or(Error::OutOfWindow(i, j))?);
            let h = hom_complex(b, ei, ej)?;
            let hom0 = h.homology(0);
            homs.insert((i, j), (h, hom0));
        }
    }
    let mut spaces = BTreeMap::new();
    let mut mult = BTreeMap::new();
    for i in lo..=hi {
        for j in i..=hi {
            let (hij, bij) = &homs[&(i, j)];
            let labels = (0..bij.dim()).map(|k| Label::Atom(format!("h{i}_{j}_{k}"))).collect();
            spaces.insert((i, j), BasedSpace::from_distinct(labels));
            for l in j..=hi {
                let (hjl, bjl) = &homs[&(j, l)];
                let (hil, bil) = &homs[&(i, l)];
                let mut t = Vec::with_capacity(bij.dim() * bjl.dim());
                for x in &bij.reps {
                    let fx = hij.to_map(b, 0, x);
                    for y in &bjl.reps {
                        let gy = hjl.to_map(b, 0, y);
                        let v = hil.to_vector(b, &ChainMap::compose(b, &gy, &fx));
                        let c = bil.coordinates(&v);
                        t.push(c.into_iter().enumerate().filter(|(_, z)| !f.is_zero(z)).collect());
                    }
                }
                mult.insert((i, j, l), t);
            }
        }
    }
    let end = FDAlgebra::from_parts(f, window, spaces, mult);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // generator identifications
    let is_proj = |i: i64| helix.get(i).is_some_and(|e| e.size() == 1 && e.lo() == 0 && e.term(0) == [i]);
    let mut gamma: BTreeMap<i64, Matrix<F>> = BTreeMap::new();
    for i in lo..hi {
        if is_proj(i) && is_proj(i + 1) {
            let (_, hom0) = &homs[&(i, i + 1)];
            let mono = monomial_identification(f, alg.gen(i).ok_or(Error::OutOfWindow(i, i + 1))?, &b.hom(i, i + 1))?;
            // hom(i,i+1) coordinates are Hom complex coordinates for projectives
            let m = Matrix::from_fn(f, hom0.dim(), mono.cols(), |_, _| f.zero());
            let mut m = m;
            for a in 0..mono.cols() {
                let c = hom0.coordinates(&mono.col(a));
                for (r, v) in c.into_iter().enumerate() {
                    m.set(r, a, v);
                }
            }
            gamma.insert(i, m);
        }
    }
    let mut cert;
    let mut solution_dims = Vec::new();
    if gamma.is_empty() {
        cert = Certificate::fail("helix_end_algebra", window, Datum::from("no consecutive projectives in the window"));
        return Ok((end, cert));
    }
    let first = *gamma.keys().next().unwrap();
    let last = *gamma.keys().next_back().unwrap();
    let mut failed = None;
    for i in (last + 1)..hi {
        match solve_gamma(&end, alg, &gamma, i - 1, Side::Upper, &mut rng) {
            Some((g, dim)) => {
                solution_dims.push(Datum::ints([i as i128, dim as i128]));
                gamma.insert(i, g);
            }
            None => {
                failed = Some(i);
                break;
            }
        }
    }
    if failed.is_none() {
        for i in (lo..first).rev() {
            match solve_gamma(&end, alg, &gamma, i, Side::Lower, &mut rng) {
                Some((g, dim)) => {
                    solution_dims.push(Datum::ints([i as i128, dim as i128]));
                    gamma.insert(i, g);
                }
                None => {
                    failed = Some(i);
                    break;
                }
            }
        }
    }
    if let Some(i) = failed {
        cert = Certificate::fail("helix_end_algebra", window, Datum::map([("generator", Datum::from(i))]));
    } else {
        cert = compare_with_fd(alg, &end, &gamma, "helix_end_algebra")?;
    }
    cert.set("gamma_solutions", Datum::List(solution_dims));
    Ok((end, cert))
}

#[derive(Clone, Copy)]
enum Side {
    /// solve for `γ_{k+1}` knowing `γ_k`
    Upper,
    /// solve for `γ_k` knowing `γ_{k+1}`
    Lower,
}

/// An invertible `γ` for the unknown generator of relation slot `k` such that
/// `I_k` maps to zero; `None` if there is none among random trials.
fn solve_gamma<F: Field>(
    end: &FDAlgebra<F>,
    alg: &QuadraticZAlgebra<F>,
    gamma: &BTreeMap<i64, Matrix<F>>,
    k: i64,
    side: Side,
    rng: &mut ChaCha8Rng,
) -> Option<(Matrix<F>, usize)> {
    let f = end.field();
    let rel = alg.rel(k)?;
    let (gl, gr) = (alg.gen(k + 1)?.dim(), alg.gen(k)?.dim());
    let unknown = match side {
        Side::Upper => k + 1,
        Side::Lower => k,
    };
    let (gu, hu) = (alg.gen(unknown)?.dim(), end.dim(unknown, unknown + 1));
    let target = end.dim(k, k + 2);
    // unknown entries γ[c][a] at index c * gu + a
    let mut eq = Matrix::zeros(f, rel.dim() * target, hu * gu);
    for r in 0..rel.dim() {
        for x in 0..gl {
            for y in 0..gr {
                let rho = rel.basis().get(r, x * gr + y);
                if f.is_zero(rho) {
                    continue;
                }
                for c in 0..hu {
                    let e = crate::ngrass::fdalg::basis_vec(f, hu, c);
                    let p = match side {
                        Side::Upper => end.compose((k, k + 1, k + 2), &e, &gamma[&k].col(y)),
                        Side::Lower => end.compose((k, k + 1, k + 2), &gamma[&(k + 1)].col(x), &e),
                    };
                    let a = match side {
                        Side::Upper => x,
                        Side::Lower => y,
                    };
                    for (t, v) in p.iter().enumerate() {
                        if !f.is_zero(v) {
                            f.add_mul_assign(eq.get_mut(r * target + t, c * gu + a), rho, v);
                        }
                    }
                }
            }
        }
    }
    let ker = eq.kernel();
    let dim = ker.rows();
    for trial in 0..8 {
        let v: Vec<F::Elem> = if dim == 1 && trial == 0 {
            ker.row(0).to_vec()
        } else {
            let mut v = vec![f.zero(); hu * gu];
            for r in 0..dim {
                let c = f.from_i64(rng.random_range(-50..=50));
                for (a, b) in v.iter_mut().zip(ker.row(r)) {
                    f.add_mul_assign(a, &c, b);
                }
            }
            v
        };
        let g = Matrix::from_fn(f, hu, gu, |c, a| v[c * gu + a].clone());
        if hu == gu && g.rank() == gu {
            return Some((g, dim));
        }
    }
    None
}

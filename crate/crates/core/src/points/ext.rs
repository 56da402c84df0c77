//! The resolution of `O_{P(W)}` by line bundles and its Ext algebra.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::SubspaceW;
use crate::error::{structural, Error, Result};
use crate::exactla::{BasedSpace, Matrix};
use crate::field::Field;
use crate::helix::{hom_complex, ChainMap, PMap, ProjComplex};
use crate::multilinear::{binomial, multisets, shuffle_sign, subsets, SymAlgebra};
use crate::ngrass::{FDAlgebra, NgrSpec};
use crate::zalg::{Certificate, Datum};

fn check_w<F: Field>(spec: NgrSpec, w: &SubspaceW<F>) -> Result<()> {
    if w.ambient_dim() != spec.n {
        return Err(structural("W does not live in V"));
    }
    if w.dim() > spec.m {
        return Err(Error::Unsupported(format!("dim W = {} exceeds m = {}", w.dim(), spec.m)));
    }
    Ok(())
}

/// Degree `-k` holds `Λ^k (V/W)* ⊗ P_{-k}` for `m-n ≤ -k ≤ 0`, summands
/// indexed by `subsets(n-d, k)`; the differential sends `ξ^S` to
/// `Σ_j (-1)^j ξ^{s_j} ξ^{S∖s_j}`.
pub fn point_resolution<F: Field>(b: &FDAlgebra<F>, spec: NgrSpec, w: &SubspaceW<F>) -> Result<ProjComplex<F>> {
    check_w(spec, w)?;
    let f = b.field();
    let c = w.codim();
    let top = spec.n - spec.m;
    let terms: Vec<Vec<i64>> = (0..=top).rev().map(|k| vec![-(k as i64); binomial(c as i64, k as i64) as usize]).collect();
    let mut diffs = Vec::new();
    for k in (1..=top).rev() {
        let src = subsets(c, k);
        let tgt = subsets(c, k - 1);
        let pos: BTreeMap<&[usize], usize> = tgt.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
        let mut m = PMap::zero(b, &terms[top - k], &terms[top - k + 1]);
        for (ci, s) in src.iter().enumerate() {
            for j in 0..k {
                let rest: Vec<usize> = s.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, &x)| x).collect();
                let form = w.linear(w.xi(s[j]));
                let sign = f.sign(j % 2 == 1);
                *m.block_mut(pos[rest.as_slice()], ci) = form.iter().map(|x| f.mul(&sign, x)).collect();
            }
        }
        diffs.push(m);
    }
    ProjComplex::new(b, spec.m as i64 - spec.n as i64, terms, diffs)
}

/// A basis element `u_A ⊗ w^{*α}` of `Λ^{|A|}(V/W) ⊗ S^{|A|}W*`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CBasis {
    pub wedge: Vec<usize>,
    pub sym: Vec<usize>,
}

impl CBasis {
    pub fn label(&self) -> String {
        let u: Vec<String> = self.wedge.iter().map(|a| format!("u{}", a + 1)).collect();
        let s: Vec<String> = self.sym.iter().map(|j| format!("w{}*", j + 1)).collect();
        if u.is_empty() {
            return "1".into();
        }
        format!("{}⊗{}", u.join("∧"), s.join("·"))
    }
}

/// `C = ⊕ Λ^t(V/W) ⊗ S^t W*` for `t = 0..=top`.
pub fn c_basis(codim: usize, d: usize, top: usize) -> Vec<Vec<CBasis>> {
    (0..=top)
        .map(|t| {
            let mut out = Vec::new();
            for a in subsets(codim, t) {
                for s in multisets(d, t) {
                    out.push(CBasis { wedge: a.clone(), sym: s });
                }
            }
            out
        })
        .collect()
}

/// `x·y` in `C`: the wedge sign and the merged monomial, or `None` if the
/// wedge vanishes.
pub fn c_product(x: &CBasis, y: &CBasis) -> Option<(bool, CBasis)> {
    let odd = shuffle_sign(&x.wedge, &y.wedge)?;
    let mut wedge: Vec<usize> = x.wedge.iter().chain(&y.wedge).copied().collect();
    wedge.sort_unstable();
    let mut sym: Vec<usize> = x.sym.iter().chain(&y.sym).copied().collect();
    sym.sort_unstable();
    Some((odd, CBasis { wedge, sym }))
}

/// `ι_{u_{a_1}} ∘ ⋯ ∘ ι_{u_{a_t}} (ξ^S)`: the sign and the remaining subset.
fn contract(a: &[usize], s: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut cur = s.to_vec();
    let mut odd = false;
    for x in a.iter().rev() {
        let p = cur.iter().position(|y| y == x)?;
        odd ^= p % 2 == 1;
        cur.remove(p);
    }
    Some((odd, cur))
}

/// The cocycle `φ(u_A ⊗ f)`: `ξ^S ↦ ι_{u_A}(ξ^S) ⊗ f̃` with `f̃` extended by
/// zero on `U`.
pub fn phi<F: Field>(b: &FDAlgebra<F>, res: &ProjComplex<F>, w: &SubspaceW<F>, sym: &SymAlgebra, c: &CBasis) -> ChainMap<F> {
    let f = b.field();
    let t = c.wedge.len();
    let poly = w.w_monomial(sym, &c.sym);
    let codim = w.codim();
    let mut comps = BTreeMap::new();
    for a in res.degrees() {
        let k = (-a) as usize;
        if k < t || a + t as i64 > res.hi() {
            continue;
        }
        let (src, tgt) = (subsets(codim, k), subsets(codim, k - t));
        let mut m = PMap::zero(b, res.term(a), res.term(a + t as i64));
        for (ci, s) in src.iter().enumerate() {
            if let Some((odd, rest)) = contract(&c.wedge, s) {
                let r = tgt.iter().position(|x| *x == rest).unwrap();
                let sign = f.sign(odd);
                *m.block_mut(r, ci) = poly.iter().map(|x| f.mul(&sign, x)).collect();
            }
        }
        comps.insert(a, m);
    }
    ChainMap { degree: t as i64, comps }
}

/// `Ext^•(O_{P(W)}, O_{P(W)})` with structure constants in the basis of
/// classes `[φ(c)]`.
#[derive(Clone, Debug)]
pub struct ExtTable<F: Field> {
    pub dims: Vec<usize>,
    pub basis: Vec<Vec<CBasis>>,
    /// `(a, b)` ↦ `[i][j]`: coordinates of `e_i · e_j` in degree `a + b`
    pub products: BTreeMap<(usize, usize), Vec<Vec<Vec<F::Elem>>>>,
}

impl<F: Field> ExtTable<F> {
    pub fn labels(&self) -> Vec<Vec<String>> {
        self.basis.iter().map(|r| r.iter().map(CBasis::label).collect()).collect()
    }
}

/// Homology of `Hom^•(K_W, K_W)`, compared with `C^{W,V}`: graded dims, the
/// classes of the `φ(c)` forming a basis, and the product `[φ(x)]∘[φ(y)] = [φ(xy)]`.
pub fn ext_algebra<F: Field>(b: &FDAlgebra<F>, spec: NgrSpec, w: &SubspaceW<F>) -> Result<(ExtTable<F>, Certificate)> {
    let f = b.field();
    let res = point_resolution(b, spec, w)?;
    let top = spec.n - spec.m;
    let h = hom_complex(b, &res, &res)?;
    let support = h.homology_support();
    let hom: Vec<_> = (0..=top).map(|t| h.homology(t as i64)).collect();
    let dims: Vec<usize> = hom.iter().map(|x| x.dim()).collect();
    let basis = c_basis(w.codim(), w.dim(), top);
    let expected: Vec<usize> = basis.iter().map(Vec::len).collect();
    let window = (0, top as i64);
    let mut cert = Certificate::pass("ext_algebra", window).with("dims", Datum::ints(dims.iter().map(|&x| x as i128)));
    cert.set("expected", Datum::ints(expected.iter().map(|&x| x as i128)));
    if let Some(&(t, n)) = support.iter().find(|&&(t, _)| t < 0 || t > top as i64) {
        cert.reject(Datum::map([("degree", Datum::from(t)), ("dim", n.into())]));
    }
    if let Some(t) = (0..=top).find(|&t| dims[t] != expected[t]) {
        cert.reject(Datum::map([("degree", Datum::from(t)), ("dim", dims[t].into()), ("expected", expected[t].into())]));
    }
    let sym = SymAlgebra::new(&BasedSpace::atoms("x", spec.n).dual(), top);
    let phis: Vec<Vec<ChainMap<F>>> = basis.iter().map(|r| r.iter().map(|c| phi(b, &res, w, &sym, c)).collect()).collect();
    let mut inverses = Vec::new();
    for t in 0..=top {
        let coords: Vec<Vec<F::Elem>> = phis[t]
            .iter()
            .map(|p| {
                if !p.is_closed(b, &res, &res) {
                    cert.reject(Datum::map([("degree", Datum::from(t)), ("not_closed", true.into())]));
                }
                hom[t].coordinates(&h.to_vector(b, p))
            })
            .collect();
        // columns: classes of the φ(c)
        let m = Matrix::from_rows(f, dims[t], coords).transpose();
        let inv = if m.rows() == m.cols() { m.inverse() } else { None };
        if inv.is_none() {
            cert.reject(Datum::map([("degree", Datum::from(t)), ("basis", false.into())]));
        }
        inverses.push(inv);
    }
    let mut products = BTreeMap::new();
    if cert.passed() {
        for a in 0..=top {
            for bb in 0..=top - a {
                let inv = inverses[a + bb].as_ref().unwrap();
                let n = basis[a + bb].len();
                let mut table = Vec::new();
                for (i, x) in basis[a].iter().enumerate() {
                    let mut row = Vec::new();
                    for (j, y) in basis[bb].iter().enumerate() {
                        let comp = ChainMap::compose(b, &phis[a][i], &phis[bb][j]);
                        let got = inv.apply(&hom[a + bb].coordinates(&h.to_vector(b, &comp)));
                        let mut want = vec![f.zero(); n];
                        if let Some((odd, z)) = c_product(x, y) {
                            let k = basis[a + bb].iter().position(|c| *c == z).unwrap();
                            want[k] = f.sign(odd);
                        }
                        if got != want {
                            cert.reject(Datum::map([("left", Datum::from(x.label())), ("right", Datum::from(y.label()))]));
                        }
                        row.push(got);
                    }
                    table.push(row);
                }
                products.insert((a, bb), table);
            }
        }
    }
    Ok((ExtTable { dims, basis, products }, cert))
}

//! Symmetric and exterior powers, their canonical maps, and line-bundle
//! cohomology on a projective space.
//!
//! Signs: `e_S` is the wedge of the basis vectors in `S` taken in increasing
//! order, and `e_S ∧ e_T = (-1)^{inv(S,T)} e_{S∪T}` where `inv` counts pairs
//! `s > t`. The hook maps are the partial transposes of `wedge_mul`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{structural, Result};
use crate::exactla::{BasedSpace, Label, LinMap, Matrix};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomSpace {
    pub name: String,
    pub dim: usize,
    pub dual: bool,
}

impl AtomSpace {
    pub fn new(name: &str, dim: usize) -> Self {
        AtomSpace { name: name.into(), dim, dual: false }
    }

    pub fn dual(&self) -> Self {
        AtomSpace { dual: !self.dual, ..self.clone() }
    }

    pub fn space(&self) -> BasedSpace {
        let s = BasedSpace::atoms(&self.name, self.dim);
        if self.dual {
            s.dual()
        } else {
            s
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PowerKind {
    Sym,
    Ext,
}

/// `S^d(base)` or `Λ^d(base)` with basis indexed by sorted index tuples.
#[derive(Clone, Debug)]
pub struct PowerSpace {
    pub base: BasedSpace,
    pub kind: PowerKind,
    pub degree: usize,
    pub space: BasedSpace,
    tuples: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl PartialEq for PowerSpace {
    fn eq(&self, o: &Self) -> bool {
        self.kind == o.kind && self.degree == o.degree && self.base == o.base
    }
}

/// Increasing `d`-subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < d - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    rec(0, n, d, &mut cur, &mut out);
    out
}

/// Weakly increasing `d`-tuples in `0..n`, lexicographic.
pub fn multisets(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, d, cur, out);
            cur.pop();
        }
    }
    rec(0, n, d, &mut cur, &mut out);
    out
}

pub fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Sign of `e_S ∧ e_T` for disjoint sorted `S`, `T`; `None` if they meet.
pub fn shuffle_sign(s: &[usize], t: &[usize]) -> Option<bool> {
    let mut odd = false;
    for &a in s {
        for &b in t {
            if a == b {
                return None;
            }
            if a > b {
                odd = !odd;
            }
        }
    }
    Some(odd)
}

fn merge(s: &[usize], t: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = s.iter().chain(t).copied().collect();
    v.sort_unstable();
    v
}

pub fn build_power(base: &BasedSpace, kind: PowerKind, d: usize) -> PowerSpace {
    let n = base.dim();
    let tuples = match kind {
        PowerKind::Ext => subsets(n, d),
        PowerKind::Sym => multisets(n, d),
    };
    let labels = tuples
        .iter()
        .map(|t| {
            let ls = t.iter().map(|&i| base.label(i).clone()).collect();
            match kind {
                PowerKind::Ext => Label::Wedge(ls),
                PowerKind::Sym => Label::Monomial(ls),
            }
        })
        .collect();
    let index = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    PowerSpace { base: base.clone(), kind, degree: d, space: BasedSpace::from_distinct(labels), tuples, index }
}

impl PowerSpace {
    pub fn dim(&self) -> usize {
        self.tuples.len()
    }
    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }
    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.tuples[i]
    }
    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// Names of the canonical maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalMap {
    /// `Λ²U → U⊗U`
    ExtEmbed,
    /// `Λ^a⊗Λ^b → Λ^{a+b}`
    WedgeMul { a: usize, b: usize },
    /// `S^a⊗S^b → S^{a+b}`
    SymMul { a: usize, b: usize },
    /// `Λ^{a+b} → Λ^a⊗Λ^b`
    ExtComul { a: usize, b: usize },
    /// `Λ^c V → Λ^{c+1}V ⊗ V*`
    HookRight { c: usize },
    /// `Λ^c V → V* ⊗ Λ^{c+1}V`
    HookLeft { c: usize },
    /// `V* ⊗ Λ^c V → Λ^{c-1} V`
    Contraction { c: usize },
}

pub fn canonical_map<F: Field>(field: &F, base: &BasedSpace, name: CanonicalMap) -> Result<LinMap<F>> {
    let f = field;
    let ext = |d| build_power(base, PowerKind::Ext, d);
    let sym = |d| build_power(base, PowerKind::Sym, d);
    let dual = base.dual();
    let n = base.dim();
    let one = f.one();
    let signed = |odd: bool| if odd { f.neg(&one) } else { one.clone() };
    match name {
        CanonicalMap::ExtEmbed => canonical_map(f, base, CanonicalMap::ExtComul { a: 1, b: 1 }).map(|m| {
            let uu = BasedSpace::tensor(&[base, base]);
            LinMap::new(m.domain().clone(), uu, m.matrix().clone()).expect("same shape")
        }),
        CanonicalMap::WedgeMul { a, b } => {
            let (pa, pb, pc) = (ext(a), ext(b), ext(a + b));
            let dom = BasedSpace::tensor(&[&pa.space, &pb.space]);
            let mut m = Matrix::zeros(f, pc.dim(), dom.dim());
            for (i, s) in pa.tuples().iter().enumerate() {
                for (j, t) in pb.tuples().iter().enumerate() {
                    if let Some(odd) = shuffle_sign(s, t) {
                        let k = pc.index_of(&merge(s, t)).expect("union is a subset");
                        m.set(k, i * pb.dim() + j, signed(odd));
                    }
                }
            }
            LinMap::new(dom, pc.space, m)
        }
        CanonicalMap::SymMul { a, b } => {
            let (pa, pb, pc) = (sym(a), sym(b), sym(a + b));
            let dom = BasedSpace::tensor(&[&pa.space, &pb.space]);
            let mut m = Matrix::zeros(f, pc.dim(), dom.dim());
            for (i, s) in pa.tuples().iter().enumerate() {
                for (j, t) in pb.tuples().iter().enumerate() {
                    let k = pc.index_of(&merge(s, t)).expect("product is a monomial");
                    m.set(k, i * pb.dim() + j, one.clone());
                }
            }
            LinMap::new(dom, pc.space, m)
        }
        CanonicalMap::ExtComul { a, b } => {
            let (pa, pb, pc) = (ext(a), ext(b), ext(a + b));
            let cod = BasedSpace::tensor(&[&pa.space, &pb.space]);
            let mut m = Matrix::zeros(f, cod.dim(), pc.dim());
            for (k, u) in pc.tuples().iter().enumerate() {
                for pick in subsets(u.len(), a) {
                    let s: Vec<usize> = pick.iter().map(|&x| u[x]).collect();
                    let t: Vec<usize> = u.iter().copied().filter(|x| !s.contains(x)).collect();
                    let odd = shuffle_sign(&s, &t).expect("disjoint");
                    let (i, j) = (pa.index_of(&s).unwrap(), pb.index_of(&t).unwrap());
                    m.set(i * pb.dim() + j, k, signed(odd));
                }
            }
            LinMap::new(pc.space, cod, m)
        }
        CanonicalMap::HookRight { c } => {
            let (pc, pd) = (ext(c), ext(c + 1));
            let cod = BasedSpace::tensor(&[&pd.space, &dual]);
            let mut m = Matrix::zeros(f, cod.dim(), pc.dim());
            for (k, s) in pc.tuples().iter().enumerate() {
                for a in 0..n {
                    if let Some(odd) = shuffle_sign(s, &[a]) {
                        let i = pd.index_of(&merge(s, &[a])).unwrap();
                        m.set(i * n + a, k, signed(odd));
                    }
                }
            }
            LinMap::new(pc.space, cod, m)
        }
        CanonicalMap::HookLeft { c } => {
            let (pc, pd) = (ext(c), ext(c + 1));
            let cod = BasedSpace::tensor(&[&dual, &pd.space]);
            let mut m = Matrix::zeros(f, cod.dim(), pc.dim());
            for (k, s) in pc.tuples().iter().enumerate() {
                for a in 0..n {
                    if let Some(odd) = shuffle_sign(&[a], s) {
                        let i = pd.index_of(&merge(s, &[a])).unwrap();
                        m.set(a * pd.dim() + i, k, signed(odd));
                    }
                }
            }
            LinMap::new(pc.space, cod, m)
        }
        CanonicalMap::Contraction { c } => {
            if c == 0 {
                return Err(structural("contraction needs positive degree"));
            }
            let (pc, pd) = (ext(c), ext(c - 1));
            let dom = BasedSpace::tensor(&[&dual, &pc.space]);
            let mut m = Matrix::zeros(f, pd.dim(), dom.dim());
            for a in 0..n {
                for (k, s) in pc.tuples().iter().enumerate() {
                    if let Some(pos) = s.iter().position(|&x| x == a) {
                        let rest: Vec<usize> = s.iter().copied().filter(|&x| x != a).collect();
                        let i = pd.index_of(&rest).unwrap();
                        m.set(i, a * pc.dim() + k, signed(pos % 2 == 1));
                    }
                }
            }
            LinMap::new(dom, pd.space, m)
        }
    }
}

/// The space `Ext^k(O(i), O(j))` on `P(V)`, `dim V = n`, written in terms of
/// symmetric powers of the dual basis `x1*, …, xn*`.
pub fn line_bundle_hom(v: &BasedSpace, i: i64, j: i64, k: usize) -> BasedSpace {
    let n = v.dim();
    if k == 0 {
        if j < i {
            return BasedSpace::zero();
        }
        return build_power(&v.dual(), PowerKind::Sym, (j - i) as usize).space;
    }
    if n >= 2 && k == n - 1 {
        let d = i - j - n as i64;
        if d < 0 {
            return BasedSpace::zero();
        }
        return build_power(&v.dual(), PowerKind::Sym, d as usize).space.dual();
    }
    BasedSpace::zero()
}

/// Multiplication `S^a V* × S^b V* → S^{a+b} V*` of coefficient vectors in
/// the monomial bases.
#[derive(Clone, Debug)]
pub struct SymAlgebra {
    pub n: usize,
    powers: Vec<PowerSpace>,
}

impl SymAlgebra {
    pub fn new(vdual: &BasedSpace, max_degree: usize) -> Self {
        let powers = (0..=max_degree).map(|d| build_power(vdual, PowerKind::Sym, d)).collect();
        SymAlgebra { n: vdual.dim(), powers }
    }

    pub fn max_degree(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn power(&self, d: usize) -> &PowerSpace {
        &self.powers[d]
    }

    pub fn dim(&self, d: usize) -> usize {
        self.powers[d].dim()
    }

    /// Index of the product of basis monomials `a ∈ S^da`, `b ∈ S^db`.
    pub fn mul_basis(&self, da: usize, a: usize, db: usize, b: usize) -> usize {
        let m = merge(self.powers[da].tuple(a), self.powers[db].tuple(b));
        self.powers[da + db].index_of(&m).expect("degree within range")
    }

    pub fn mul<F: Field>(&self, f: &F, da: usize, x: &[F::Elem], db: usize, y: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![f.zero(); self.dim(da + db)];
        for (a, u) in x.iter().enumerate() {
            if f.is_zero(u) {
                continue;
            }
            for (b, w) in y.iter().enumerate() {
                if !f.is_zero(w) {
                    f.add_mul_assign(&mut out[self.mul_basis(da, a, db, b)], u, w);
                }
            }
        }
        out
    }
}

/// `g ∘ f` for `f ∈ Hom(O(i),O(j)) = S^{j-i}V*` and `g ∈ S^{l-j}V*`.
pub fn compose_line_bundle<F: Field>(field: &F, sym: &SymAlgebra, (i, j, l): (i64, i64, i64), f: &[F::Elem], g: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if i > j || j > l || (l - i) as usize > sym.max_degree() {
        return Err(structural("line bundle twists do not chain"));
    }
    let (da, db) = ((j - i) as usize, (l - j) as usize);
    if f.len() != sym.dim(da) || g.len() != sym.dim(db) {
        return Err(structural("coefficient vector has the wrong length"));
    }
    Ok(sym.mul(field, da, f, db, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn v(n: usize) -> BasedSpace {
        BasedSpace::atoms("x", n)
    }

    #[test]
    fn power_dims() {
        assert_eq!(build_power(&v(4), PowerKind::Ext, 2).dim(), 6);
        assert_eq!(build_power(&v(2), PowerKind::Sym, 2).dim(), 3);
        assert_eq!(build_power(&v(4), PowerKind::Ext, 5).dim(), 0);
        assert_eq!(build_power(&v(4), PowerKind::Ext, 0).dim(), 1);
        for n in 1..6 {
            for d in 0..5 {
                assert_eq!(build_power(&v(n), PowerKind::Sym, d).dim() as u128, binomial((n + d - 1) as i64, d as i64));
            }
        }
    }

    #[test]
    fn ext_embed_antisymmetrizes() {
        let q = Rationals;
        let m = canonical_map(&q, &v(2).dual(), CanonicalMap::ExtEmbed).unwrap();
        let col = m.matrix().col(0);
        assert_eq!(col, [0, 1, -1, 0].map(|x| q.from_i64(x)).to_vec());
    }

    #[test]
    fn wedge_after_comul_is_binomial() {
        let q = Rationals;
        let comul = canonical_map(&q, &v(4), CanonicalMap::ExtComul { a: 1, b: 1 }).unwrap();
        let mul = canonical_map(&q, &v(4), CanonicalMap::WedgeMul { a: 1, b: 1 }).unwrap();
        let two = Matrix::identity(&q, 6).scale(&q.from_i64(2));
        assert_eq!(*comul.then(&mul).unwrap().matrix(), two);
    }

    #[test]
    fn hooks_are_injective() {
        let q = Rationals;
        for n in 1..5 {
            for c in 0..n {
                let r = canonical_map(&q, &v(n), CanonicalMap::HookRight { c }).unwrap();
                let l = canonical_map(&q, &v(n), CanonicalMap::HookLeft { c }).unwrap();
                let d = binomial(n as i64, c as i64) as usize;
                assert_eq!(r.rank(), d);
                assert_eq!(l.rank(), d);
            }
        }
    }

    #[test]
    fn line_bundle_cohomology() {
        assert_eq!(line_bundle_hom(&v(4), -2, 0, 0).dim(), 10);
        assert_eq!(line_bundle_hom(&v(4), 0, -1, 0).dim(), 0);
        assert_eq!(line_bundle_hom(&v(2), 0, -2, 1).dim(), 1);
        assert_eq!(line_bundle_hom(&v(3), 0, -1, 1).dim(), 0);
    }

    #[test]
    fn composition_unit_and_monomials() {
        let q = Rationals;
        let s = SymAlgebra::new(&v(3).dual(), 4);
        let one = [q.one()];
        let x1 = [1, 0, 0].map(|x| q.from_i64(x));
        let x2 = [0, 1, 0].map(|x| q.from_i64(x));
        assert_eq!(compose_line_bundle(&q, &s, (0, 0, 1), &one, &x1).unwrap(), x1.to_vec());
        let p = compose_line_bundle(&q, &s, (0, 1, 2), &x1, &x2).unwrap();
        let k = s.power(2).index_of(&[0, 1]).unwrap();
        assert!(p.iter().enumerate().all(|(i, c)| (i == k) == !q.is_zero(c)));
        assert!(compose_line_bundle(&q, &s, (1, 0, 2), &x1, &x2).is_err());
    }
}

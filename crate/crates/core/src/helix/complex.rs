//! Bounded complexes in the additive closure of an [`FDAlgebra`]: a term is a
//! list of objects `P_i`, a map between terms is a block matrix with the
//! block `(r, c)` in `hom(src[c], tgt[r])`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{structural, Error, Result};
use crate::field::Field;
use crate::ngrass::FDAlgebra;

/// A map `⊕ P_{src[c]} → ⊕ P_{tgt[r]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PMap<F: Field> {
    src: Vec<i64>,
    tgt: Vec<i64>,
    /// `blocks[r * src.len() + c]`, a vector of `hom(src[c], tgt[r])`
    blocks: Vec<Vec<F::Elem>>,
}

impl<F: Field> PMap<F> {
    pub fn zero(alg: &FDAlgebra<F>, src: &[i64], tgt: &[i64]) -> Self {
        let f = alg.field();
        let mut blocks = Vec::with_capacity(src.len() * tgt.len());
        for &t in tgt {
            for &s in src {
                blocks.push(vec![f.zero(); alg.dim(s, t)]);
            }
        }
        PMap { src: src.to_vec(), tgt: tgt.to_vec(), blocks }
    }

    pub fn identity(alg: &FDAlgebra<F>, objs: &[i64]) -> Self {
        let mut m = Self::zero(alg, objs, objs);
        for k in 0..objs.len() {
            m.block_mut(k, k)[0] = alg.field().one();
        }
        m
    }

    pub fn src(&self) -> &[i64] {
        &self.src
    }

    pub fn tgt(&self) -> &[i64] {
        &self.tgt
    }

    pub fn block(&self, r: usize, c: usize) -> &[F::Elem] {
        &self.blocks[r * self.src.len() + c]
    }

    pub fn block_mut(&mut self, r: usize, c: usize) -> &mut Vec<F::Elem> {
        let ns = self.src.len();
        &mut self.blocks[r * ns + c]
    }

    pub fn is_zero(&self, f: &F) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|x| f.is_zero(x)))
    }

    /// The scalar of block `(r, c)` when both ends are the same object.
    pub fn scalar(&self, r: usize, c: usize) -> Option<&F::Elem> {
        (self.src[c] == self.tgt[r]).then(|| &self.block(r, c)[0])
    }

    /// `g ∘ f`
    pub fn compose(alg: &FDAlgebra<F>, g: &PMap<F>, f: &PMap<F>) -> PMap<F> {
        debug_assert_eq!(g.src, f.tgt);
        let fl = alg.field();
        let mut out = Self::zero(alg, &f.src, &g.tgt);
        for r in 0..g.tgt.len() {
            for c in 0..f.src.len() {
                let mut acc = vec![fl.zero(); alg.dim(f.src[c], g.tgt[r])];
                for k in 0..f.tgt.len() {
                    let (gb, fb) = (g.block(r, k), f.block(k, c));
                    if gb.is_empty() || fb.is_empty() {
                        continue;
                    }
                    let p = alg.compose((f.src[c], f.tgt[k], g.tgt[r]), gb, fb);
                    for (a, b) in acc.iter_mut().zip(&p) {
                        *a = fl.add(a, b);
                    }
                }
                *out.block_mut(r, c) = acc;
            }
        }
        out
    }

    pub fn add(&self, f: &F, other: &PMap<F>) -> PMap<F> {
        debug_assert!(self.src == other.src && self.tgt == other.tgt);
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()).collect();
        PMap { src: self.src.clone(), tgt: self.tgt.clone(), blocks }
    }

    pub fn scale(&self, f: &F, s: &F::Elem) -> PMap<F> {
        let blocks = self.blocks.iter().map(|b| b.iter().map(|x| f.mul(x, s)).collect()).collect();
        PMap { src: self.src.clone(), tgt: self.tgt.clone(), blocks }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PMap<F> {
        let mut blocks = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                blocks.push(self.block(r, c).to_vec());
            }
        }
        PMap { src: cols.iter().map(|&c| self.src[c]).collect(), tgt: rows.iter().map(|&r| self.tgt[r]).collect(), blocks }
    }

    /// The block matrix `[[a, b], [c, d]]` from `S1 ⊕ S2` to `T1 ⊕ T2`.
    pub fn from_quadrants(a: &PMap<F>, b: &PMap<F>, c: &PMap<F>, d: &PMap<F>) -> PMap<F> {
        debug_assert!(a.src == c.src && b.src == d.src && a.tgt == b.tgt && c.tgt == d.tgt);
        let src: Vec<i64> = a.src.iter().chain(&b.src).copied().collect();
        let tgt: Vec<i64> = a.tgt.iter().chain(&c.tgt).copied().collect();
        let mut blocks = Vec::with_capacity(src.len() * tgt.len());
        for (top, bot) in [(a, b), (c, d)] {
            for r in 0..top.tgt.len() {
                for k in 0..top.src.len() {
                    blocks.push(top.block(r, k).to_vec());
                }
                for k in 0..bot.src.len() {
                    blocks.push(bot.block(r, k).to_vec());
                }
            }
        }
        PMap { src, tgt, blocks }
    }

    /// Maps with a common source stacked on top of each other.
    pub fn vstack(src: &[i64], parts: &[PMap<F>]) -> PMap<F> {
        let tgt: Vec<i64> = parts.iter().flat_map(|p| p.tgt.iter().copied()).collect();
        let mut blocks = Vec::with_capacity(src.len() * tgt.len());
        for p in parts {
            debug_assert_eq!(p.src, src);
            blocks.extend(p.blocks.iter().cloned());
        }
        PMap { src: src.to_vec(), tgt, blocks }
    }

    /// Maps with a common target side by side.
    pub fn hstack(tgt: &[i64], parts: &[PMap<F>]) -> PMap<F> {
        let src: Vec<i64> = parts.iter().flat_map(|p| p.src.iter().copied()).collect();
        let mut blocks = Vec::with_capacity(src.len() * tgt.len());
        for r in 0..tgt.len() {
            for p in parts {
                for c in 0..p.src.len() {
                    blocks.push(p.block(r, c).to_vec());
                }
            }
        }
        PMap { src, tgt: tgt.to_vec(), blocks }
    }

    /// Block diagonal sum.
    pub fn diagonal(alg: &FDAlgebra<F>, parts: &[PMap<F>]) -> PMap<F> {
        let src: Vec<i64> = parts.iter().flat_map(|p| p.src.iter().copied()).collect();
        let tgt: Vec<i64> = parts.iter().flat_map(|p| p.tgt.iter().copied()).collect();
        let mut out = Self::zero(alg, &src, &tgt);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for r in 0..p.tgt.len() {
                for c in 0..p.src.len() {
                    *out.block_mut(r0 + r, c0 + c) = p.block(r, c).to_vec();
                }
            }
            r0 += p.tgt.len();
            c0 += p.src.len();
        }
        out
    }
}

/// A bounded complex `X^lo → … → X^hi` of sums of projectives.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjComplex<F: Field> {
    lo: i64,
    terms: Vec<Vec<i64>>,
    /// `diffs[k]: X^{lo+k} → X^{lo+k+1}`
    diffs: Vec<PMap<F>>,
}

impl<F: Field> ProjComplex<F> {
    /// Checks objects, shapes and `d ∘ d = 0`.
    pub fn new(alg: &FDAlgebra<F>, lo: i64, terms: Vec<Vec<i64>>, diffs: Vec<PMap<F>>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(structural("a complex needs one differential between consecutive terms"));
        }
        for t in &terms {
            if let Some(o) = t.iter().find(|o| !alg.contains(**o)) {
                return Err(Error::OutOfWindow(*o, *o));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.src != terms[k] || d.tgt != terms[k + 1] {
                return Err(structural(&format!("differential {k} has the wrong shape")));
            }
        }
        let x = ProjComplex { lo, terms, diffs };
        x.check_square_zero(alg)?;
        Ok(x)
    }

    pub fn check_square_zero(&self, alg: &FDAlgebra<F>) -> Result<()> {
        for (k, w) in self.diffs.windows(2).enumerate() {
            if !PMap::compose(alg, &w[1], &w[0]).is_zero(alg.field()) {
                return Err(Error::NonZeroSquare(self.lo + k as i64));
            }
        }
        Ok(())
    }

    /// `P_i` in degree 0.
    pub fn projective(i: i64) -> Self {
        ProjComplex { lo: 0, terms: vec![vec![i]], diffs: Vec::new() }
    }

    pub fn zero() -> Self {
        ProjComplex { lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> core::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn term(&self, t: i64) -> &[i64] {
        usize::try_from(t - self.lo).ok().and_then(|k| self.terms.get(k)).map_or(&[], Vec::as_slice)
    }

    pub fn terms(&self) -> &[Vec<i64>] {
        &self.terms
    }

    /// `d^t: X^t → X^{t+1}`, if both terms lie in the complex.
    pub fn diff(&self, t: i64) -> Option<&PMap<F>> {
        usize::try_from(t - self.lo).ok().and_then(|k| self.diffs.get(k))
    }

    pub fn diff_or_zero(&self, alg: &FDAlgebra<F>, t: i64) -> PMap<F> {
        self.diff(t).cloned().unwrap_or_else(|| PMap::zero(alg, self.term(t), self.term(t + 1)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(Vec::is_empty)
    }

    /// Number of summands `P_i` over all degrees.
    pub fn size(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// `(degree, multiplicity of P_i for each object i of the algebra)`.
    pub fn multiplicities(&self, alg: &FDAlgebra<F>) -> Vec<(i64, Vec<usize>)> {
        self.degrees().map(|t| (t, alg.objects().map(|o| self.term(t).iter().filter(|&&x| x == o).count()).collect())).collect()
    }

    /// No differential has a nonzero scalar component.
    pub fn is_minimal(&self, f: &F) -> bool {
        self.diffs.iter().all(|d| (0..d.tgt.len()).all(|r| (0..d.src.len()).all(|c| d.scalar(r, c).is_none_or(|x| f.is_zero(x)))))
    }

    /// `X[s]^t = X^{t+s}` with differential `(-1)^s d`.
    pub fn shift(&self, f: &F, s: i64) -> Self {
        let diffs = if s.rem_euclid(2) == 0 { self.diffs.clone() } else { self.diffs.iter().map(|d| d.scale(f, &f.neg(&f.one()))).collect() };
        ProjComplex { lo: self.lo - s, terms: self.terms.clone(), diffs }
    }

    /// Degreewise direct sum, summands in the given order.
    pub fn direct_sum(alg: &FDAlgebra<F>, parts: &[ProjComplex<F>]) -> Self {
        let nonzero: Vec<&ProjComplex<F>> = parts.iter().filter(|p| !p.is_zero()).collect();
        let Some(lo) = nonzero.iter().map(|p| p.lo).min() else {
            return Self::zero();
        };
        let hi = nonzero.iter().map(|p| p.hi()).max().unwrap();
        let terms: Vec<Vec<i64>> = (lo..=hi).map(|t| nonzero.iter().flat_map(|p| p.term(t).iter().copied()).collect()).collect();
        let diffs = (lo..hi).map(|t| PMap::diagonal(alg, &nonzero.iter().map(|p| p.diff_or_zero(alg, t)).collect::<Vec<_>>())).collect();
        ProjComplex { lo, terms, diffs }
    }

    /// Drops empty terms at both ends.
    pub fn trim(mut self) -> Self {
        while self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(Vec::is_empty) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.terms.is_empty() {
            return Self::zero();
        }
        self
    }

    /// Gaussian elimination of invertible scalar components, first in
    /// `(degree, row, column)` order, until none is left.
    pub fn minimize(&self, alg: &FDAlgebra<F>) -> Self {
        let f = alg.field();
        let mut x = self.clone();
        'outer: loop {
            for k in 0..x.diffs.len() {
                let d = &x.diffs[k];
                for r in 0..d.tgt.len() {
                    for c in 0..d.src.len() {
                        if let Some(s) = d.scalar(r, c) {
                            if !f.is_zero(s) {
                                x.eliminate(alg, k, r, c);
                                continue 'outer;
                            }
                        }
                    }
                }
            }
            break;
        }
        x.trim()
    }

    /// Cancels `P` in `X^{lo+k}` (column `c`) against `P` in `X^{lo+k+1}`
    /// (row `r`) along the invertible scalar `d[r][c]`.
    fn eliminate(&mut self, alg: &FDAlgebra<F>, k: usize, r: usize, c: usize) {
        let f = alg.field();
        let d = &self.diffs[k];
        let inv = f.inv(d.scalar(r, c).unwrap()).unwrap();
        let keep_r: Vec<usize> = (0..d.tgt.len()).filter(|&x| x != r).collect();
        let keep_c: Vec<usize> = (0..d.src.len()).filter(|&x| x != c).collect();
        let s = d.src[c];
        let mut new = d.select(&keep_r, &keep_c);
        for (nr, &rr) in keep_r.iter().enumerate() {
            let gamma = d.block(rr, c);
            if gamma.iter().all(|x| f.is_zero(x)) {
                continue;
            }
            for (nc, &cc) in keep_c.iter().enumerate() {
                let delta = d.block(r, cc);
                if delta.iter().all(|x| f.is_zero(x)) {
                    continue;
                }
                let p = alg.compose((d.src[cc], s, d.tgt[rr]), gamma, delta);
                let b = new.block_mut(nr, nc);
                for (a, v) in b.iter_mut().zip(&p) {
                    f.sub_mul_assign(a, &inv, v);
                }
            }
        }
        self.diffs[k] = new;
        if k > 0 {
            let prev = &self.diffs[k - 1];
            let all: Vec<usize> = (0..prev.src.len()).collect();
            self.diffs[k - 1] = prev.select(&keep_c, &all);
        }
        if k + 1 < self.diffs.len() {
            let next = &self.diffs[k + 1];
            let all: Vec<usize> = (0..next.tgt.len()).collect();
            self.diffs[k + 1] = next.select(&all, &keep_r);
        }
        self.terms[k].remove(c);
        self.terms[k + 1].remove(r);
    }
}

/// A map of complexes of degree `degree`: `comps[a]: X^a → Y^{a+degree}`.
/// Missing components are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<F: Field> {
    pub degree: i64,
    pub comps: BTreeMap<i64, PMap<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn component(&self, alg: &FDAlgebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>, a: i64) -> PMap<F> {
        self.comps.get(&a).cloned().unwrap_or_else(|| PMap::zero(alg, x.term(a), y.term(a + self.degree)))
    }

    pub fn identity(alg: &FDAlgebra<F>, x: &ProjComplex<F>) -> Self {
        ChainMap { degree: 0, comps: x.degrees().map(|t| (t, PMap::identity(alg, x.term(t)))).collect() }
    }

    /// `g ∘ f` for `f: X → Y`, `g: Y → Z`.
    pub fn compose(alg: &FDAlgebra<F>, g: &ChainMap<F>, f: &ChainMap<F>) -> ChainMap<F> {
        let mut comps = BTreeMap::new();
        for (a, fa) in &f.comps {
            if let Some(gb) = g.comps.get(&(a + f.degree)) {
                comps.insert(*a, PMap::compose(alg, gb, fa));
            }
        }
        ChainMap { degree: f.degree + g.degree, comps }
    }

    /// `d_Y f = (-1)^degree f d_X`.
    pub fn is_closed(&self, alg: &FDAlgebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>) -> bool {
        let f = alg.field();
        let t = self.degree;
        let lo = x.lo().min(y.lo() - t) - 1;
        let hi = x.hi().max(y.hi() - t) + 1;
        for a in lo..=hi {
            let left = PMap::compose(alg, &y.diff_or_zero(alg, a + t), &self.component(alg, x, y, a));
            let right = PMap::compose(alg, &self.component(alg, x, y, a + 1), &x.diff_or_zero(alg, a));
            let right = if t.rem_euclid(2) == 0 { right } else { right.scale(f, &f.neg(&f.one())) };
            if left != right {
                return false;
            }
        }
        true
    }
}

/// `cone(f)^t = X^{t+1} ⊕ Y^t` with differential `[[-d_X, 0], [f, d_Y]]`.
pub fn cone<F: Field>(alg: &FDAlgebra<F>, x: &ProjComplex<F>, y: &ProjComplex<F>, f: &ChainMap<F>) -> Result<ProjComplex<F>> {
    if f.degree != 0 || !f.is_closed(alg, x, y) {
        return Err(Error::NotClosed);
    }
    let fl = alg.field();
    let minus = fl.neg(&fl.one());
    if x.is_zero() && y.is_zero() {
        return Ok(ProjComplex::zero());
    }
    let lo = if x.is_zero() {
        y.lo()
    } else if y.is_zero() {
        x.lo() - 1
    } else {
        (x.lo() - 1).min(y.lo())
    };
    let hi = if x.is_zero() {
        y.hi()
    } else if y.is_zero() {
        x.hi() - 1
    } else {
        (x.hi() - 1).max(y.hi())
    };
    let terms: Vec<Vec<i64>> = (lo..=hi).map(|t| x.term(t + 1).iter().chain(y.term(t)).copied().collect()).collect();
    let mut diffs = Vec::new();
    for t in lo..hi {
        let a = x.diff_or_zero(alg, t + 1).scale(fl, &minus);
        let b = PMap::zero(alg, y.term(t), x.term(t + 2));
        let c = f.component(alg, x, y, t + 1);
        let d = y.diff_or_zero(alg, t);
        diffs.push(PMap::from_quadrants(&a, &b, &c, &d));
    }
    Ok(ProjComplex { lo, terms, diffs }.trim())
}

//! Quadratic Gröbner (PBW) bases of a quadratic Z-algebra.
//!
//! Fix a total order on the basis of each generator space and order words of
//! equal length lexicographically. The leading words of the relations then
//! span-complement a set of normal words, and the normal words of every
//! degree form a basis exactly when they do so in degree three. An algebra
//! with such a basis is Koszul.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::algebra::{Extent, QuadraticZAlgebra};
use crate::exactla::Matrix;
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwBasis {
    /// compare the later (left) letter first
    pub left_dominant: bool,
    /// stored slot range: `first_slot + k` for `k < orders.len()`
    pub first_slot: i64,
    pub periodic: bool,
    /// rank of each basis element, per generator slot; larger is bigger
    pub orders: Vec<Vec<usize>>,
    /// `leading[k][a * g_k + b]`: the word `(a, b)` in
    /// `A_{k+1,k+2} ⊗ A_{k,k+1}` is a leading word
    leading: Vec<Vec<bool>>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // Heap's algorithm would do; lexicographic order keeps the search deterministic
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn candidate_orders(n: usize) -> Vec<Vec<usize>> {
    if n <= 6 {
        permutations(n)
    } else {
        vec![(0..n).collect(), (0..n).rev().collect()]
    }
}

/// Leading words of `rel` under the given letter ranks.
fn leading_words<F: Field>(rel: &Matrix<F>, left: &[usize], right: &[usize], left_dominant: bool) -> Vec<bool> {
    let (gl, gr) = (left.len(), right.len());
    let key = |c: usize| {
        let (a, b) = (c / gr, c % gr);
        if left_dominant {
            (left[a], right[b])
        } else {
            (right[b], left[a])
        }
    };
    let mut cols: Vec<usize> = (0..gl * gr).collect();
    cols.sort_by(|&x, &y| key(y).cmp(&key(x)));
    let piv = rel.select_cols(&cols).rref().pivots;
    let mut lead = vec![false; gl * gr];
    for p in piv {
        lead[cols[p]] = true;
    }
    lead
}

struct Slots<'a, F: Field> {
    alg: &'a QuadraticZAlgebra<F>,
    first: i64,
    count: usize,
    periodic: bool,
}

impl<F: Field> Slots<'_, F> {
    fn at(&self, k: i64) -> usize {
        if self.periodic {
            (k - self.first).rem_euclid(self.count as i64) as usize
        } else {
            (k - self.first) as usize
        }
    }
}

impl PbwBasis {
    fn slot(&self, k: i64) -> usize {
        let n = self.orders.len() as i64;
        if self.periodic {
            (k - self.first_slot).rem_euclid(n) as usize
        } else {
            (k - self.first_slot) as usize
        }
    }

    /// Number of normal words for each target `i..=j`, starting at `i`.
    pub fn normal_word_counts(&self, i: i64, j: i64) -> Vec<u128> {
        let mut out = vec![1u128];
        if j == i {
            return out;
        }
        let g0 = self.orders[self.slot(i)].len();
        let mut cnt = vec![1u128; g0];
        out.push(g0 as u128);
        for k in i + 1..j {
            // letters at slot k follow letters at slot k-1
            let (sk, sp) = (self.slot(k), self.slot(k - 1));
            let (gk, gp) = (self.orders[sk].len(), self.orders[sp].len());
            let lead = &self.leading[sp];
            let mut next = vec![0u128; gk];
            for (a, n) in next.iter_mut().enumerate() {
                for b in 0..gp {
                    if !lead[a * gp + b] {
                        *n += cnt[b];
                    }
                }
            }
            cnt = next;
            out.push(cnt.iter().sum());
        }
        out
    }
}

/// Searches for a PBW basis; `deg3(i)` must return `dim A_{i,i+3}` for the
/// stored data. The number of assignments tried is bounded by `budget`.
pub fn find_pbw<F: Field>(alg: &QuadraticZAlgebra<F>, deg3: impl Fn(i64) -> usize, budget: usize) -> Option<PbwBasis> {
    let (first, count, periodic, triples): (i64, usize, bool, Vec<i64>) = match alg.extent() {
        Extent::Periodic(p) => (0, p, true, (0..p as i64).collect()),
        Extent::Window(lo, hi) => {
            let n = (hi - lo) as usize;
            (lo, n, false, (lo..hi - 2).collect())
        }
    };
    let slots = Slots { alg, first, count, periodic };
    let dims: Vec<usize> = (0..count).map(|k| alg.gen(first + k as i64).unwrap().dim()).collect();
    let target: BTreeMap<i64, usize> = triples.iter().map(|&i| (i, deg3(i))).collect();
    let cands: Vec<Vec<Vec<usize>>> = if periodic || count <= 4 {
        dims.iter().map(|&d| candidate_orders(d)).collect()
    } else {
        dims.iter().map(|&d| vec![(0..d).collect(), (0..d).rev().collect()]).collect()
    };
    // assign small slots first so the big permutation sets sit innermost
    let mut assign_order: Vec<usize> = (0..count).collect();
    assign_order.sort_by_key(|&k| (cands[k].len(), k));
    let mut tried = 0usize;
    for left_dominant in [true, false] {
        let mut cache: BTreeMap<(usize, usize, usize), Vec<bool>> = BTreeMap::new();
        let mut choice = vec![0usize; count];
        // odometer over the assignment order
        loop {
            tried += 1;
            if tried > budget {
                return None;
            }
            let nrel = if periodic { count } else { count.saturating_sub(1) };
            let mut leading: Vec<Vec<bool>> = Vec::with_capacity(nrel);
            for k in 0..nrel {
                let kk = first + k as i64;
                let (l, r) = (slots.at(kk + 1), slots.at(kk));
                let key = (k, choice[l], choice[r]);
                let lead = cache
                    .entry(key)
                    .or_insert_with(|| {
                        let rel = slots.alg.rel(kk).unwrap();
                        leading_words(rel.basis(), &cands[l][choice[l]], &cands[r][choice[r]], left_dominant)
                    })
                    .clone();
                leading.push(lead);
            }
            let basis =
                PbwBasis { left_dominant, first_slot: first, periodic, orders: (0..count).map(|k| cands[k][choice[k]].clone()).collect(), leading };
            if target.iter().all(|(&i, &d)| basis.normal_word_counts(i, i + 3)[3] == d as u128) {
                return Some(basis);
            }
            // advance
            let mut pos = count;
            for (idx, &k) in assign_order.iter().enumerate().rev() {
                if choice[k] + 1 < cands[k].len() {
                    choice[k] += 1;
                    pos = idx;
                    break;
                }
                choice[k] = 0;
            }
            if pos == count {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_enumeration() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4)[1], vec![0, 1, 3, 2]);
    }
}

use alloc::format;
use alloc::vec::Vec;

use crate::error::{structural, Error, Result};
use crate::exactla::{BasedSpace, Matrix, Subspace};
use crate::field::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn opposite(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// Where generator data is defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extent {
    /// data repeats with this period; defined for every index
    Periodic(usize),
    /// objects `lo..=hi`
    Window(i64, i64),
}

/// A connected quadratic Z-algebra.
///
/// Data is always stored in positive orientation. For a negatively oriented
/// algebra `N` the stored algebra is its mirror `M`, with
/// `M_{a,a+1} = N_{-a,-a-1}`; relation slot `a` of `M` is the relation of `N`
/// sitting in `N_{-a-1,-a-2} ⊗ N_{-a,-a-1}`.
#[derive(Clone, Debug)]
pub struct QuadraticZAlgebra<F: Field> {
    field: F,
    orientation: Orientation,
    extent: Extent,
    gens: Vec<BasedSpace>,
    rels: Vec<Subspace<F>>,
}

/// Relations are the subspace `I_{i,i+2}` of `A_{i+1,i+2} ⊗ A_{i,i+1}`.
pub fn relation_ambient(left: &BasedSpace, right: &BasedSpace) -> BasedSpace {
    BasedSpace::tensor(&[left, right])
}

/// Builds and validates a quadratic Z-algebra.
///
/// Generators and relations are keyed by index. In positive orientation key
/// `i` is `A_{i,i+1}` and `I_{i,i+2} ⊂ A_{i+1,i+2} ⊗ A_{i,i+1}`. In negative
/// orientation key `i` is `A_{i+1,i}` and the relation with key `i` lies in
/// `A_{i+1,i} ⊗ A_{i+2,i+1}`. A periodic algebra takes keys `0..p`; a
/// windowed one on objects `lo..=hi` takes generator keys `lo..hi` and
/// relation keys `lo..hi-1`.
pub fn make_quadratic<F: Field>(
    field: &F,
    generators: Vec<(i64, BasedSpace)>,
    relations: Vec<(i64, Subspace<F>)>,
    orientation: Orientation,
    extent: Extent,
) -> Result<QuadraticZAlgebra<F>> {
    let (lo, ngen, nrel) = match extent {
        Extent::Periodic(0) => return Err(Error::InvalidSpec("period must be positive".into())),
        Extent::Periodic(p) => (0, p, p),
        Extent::Window(lo, hi) if hi < lo => return Err(Error::InvalidSpec("empty window".into())),
        Extent::Window(lo, hi) => (lo, (hi - lo) as usize, (hi - lo - 1).max(0) as usize),
    };
    let place = |key: i64, n: usize, what: &str| -> Result<usize> {
        let k = key - lo;
        if k < 0 || k as usize >= n {
            return Err(structural(format!("{what} key {key} outside the declared range")));
        }
        Ok(k as usize)
    };
    let mut gens: Vec<Option<BasedSpace>> = alloc::vec![None; ngen];
    for (key, g) in generators {
        let k = place(key, ngen, "generator")?;
        match &gens[k] {
            Some(old) if *old != g => {
                return Err(structural(format!("inconsistent generator data for key {key}")));
            }
            _ => gens[k] = Some(g),
        }
    }
    let gens: Vec<BasedSpace> = gens
        .into_iter()
        .enumerate()
        .map(|(k, g)| g.ok_or_else(|| structural(format!("missing generator for key {}", lo + k as i64))))
        .collect::<Result<_>>()?;
    let gen_at = |key: i64| -> &BasedSpace {
        match extent {
            Extent::Periodic(p) => &gens[key.rem_euclid(p as i64) as usize],
            Extent::Window(..) => &gens[(key - lo) as usize],
        }
    };
    let mut rels: Vec<Option<Subspace<F>>> = alloc::vec![None; nrel];
    for (key, r) in relations {
        let k = place(key, nrel, "relation")?;
        let amb = match orientation {
            Orientation::Positive => relation_ambient(gen_at(key + 1), gen_at(key)),
            Orientation::Negative => relation_ambient(gen_at(key), gen_at(key + 1)),
        };
        if *r.ambient() != amb {
            return Err(structural(format!("relation {key} does not sit in the declared tensor ambient")));
        }
        match &rels[k] {
            Some(old) if *old != r => {
                return Err(structural(format!("inconsistent relation data for key {key}")));
            }
            _ => rels[k] = Some(r),
        }
    }
    let rels: Vec<Subspace<F>> = rels
        .into_iter()
        .enumerate()
        .map(|(k, r)| {
            let key = lo + k as i64;
            r.unwrap_or_else(|| {
                let amb = match orientation {
                    Orientation::Positive => relation_ambient(gen_at(key + 1), gen_at(key)),
                    Orientation::Negative => relation_ambient(gen_at(key), gen_at(key + 1)),
                };
                Subspace::zero(field, &amb)
            })
        })
        .collect();
    let raw = QuadraticZAlgebra { field: field.clone(), orientation: Orientation::Positive, extent, gens, rels };
    Ok(match orientation {
        Orientation::Positive => raw,
        Orientation::Negative => raw.reindexed_as_mirror(),
    })
}

impl<F: Field> QuadraticZAlgebra<F> {
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }
    pub fn extent(&self) -> Extent {
        self.extent
    }
    pub fn period(&self) -> Option<usize> {
        match self.extent {
            Extent::Periodic(p) => Some(p),
            Extent::Window(..) => None,
        }
    }

    /// Objects on which the stored (positive) data lives.
    pub fn stored_window(&self) -> Option<(i64, i64)> {
        match self.extent {
            Extent::Periodic(_) => None,
            Extent::Window(lo, hi) => Some((lo, hi)),
        }
    }

    fn slot(&self, i: i64, count: usize) -> Option<usize> {
        match self.extent {
            Extent::Periodic(p) => Some(i.rem_euclid(p as i64) as usize),
            Extent::Window(lo, _) => {
                let k = i - lo;
                (k >= 0 && (k as usize) < count).then_some(k as usize)
            }
        }
    }

    /// Stored generator `M_{i,i+1}` (the algebra itself when positive).
    pub fn gen(&self, i: i64) -> Option<&BasedSpace> {
        self.slot(i, self.gens.len()).map(|k| &self.gens[k])
    }

    /// Stored relation in `M_{i+1,i+2} ⊗ M_{i,i+1}`.
    pub fn rel(&self, i: i64) -> Option<&Subspace<F>> {
        self.slot(i, self.rels.len()).map(|k| &self.rels[k])
    }

    /// Whether the stored pieces `M_{ij}` are defined.
    pub fn has_piece(&self, i: i64, j: i64) -> bool {
        i <= j
            && match self.extent {
                Extent::Periodic(_) => true,
                Extent::Window(lo, hi) => lo <= i && j <= hi,
            }
    }

    /// The positively oriented algebra holding the data.
    pub fn mirror(&self) -> QuadraticZAlgebra<F> {
        QuadraticZAlgebra { orientation: Orientation::Positive, ..self.clone() }
    }

    /// Stored pair `(i, j)` for the piece `A_{ij}` of this algebra.
    pub fn stored_index(&self, i: i64, j: i64) -> (i64, i64) {
        match self.orientation {
            Orientation::Positive => (i, j),
            Orientation::Negative => (-i, -j),
        }
    }

    /// Reads positive data given with negative-orientation keys as the mirror.
    fn reindexed_as_mirror(self) -> Self {
        let (gens, rels, extent) = match self.extent {
            Extent::Periodic(p) => {
                let pi = p as i64;
                let gens = (0..pi).map(|a| self.gens[(-a - 1).rem_euclid(pi) as usize].clone()).collect();
                let rels = (0..pi).map(|a| self.rels[(-a - 2).rem_euclid(pi) as usize].clone()).collect();
                (gens, rels, Extent::Periodic(p))
            }
            Extent::Window(lo, hi) => {
                // N objects lo..=hi become M objects -hi..=-lo
                let gens = (-hi..-lo).map(|a| self.gens[(-a - 1 - lo) as usize].clone()).collect();
                let rels = (-hi..-lo - 1).map(|a| self.rels[(-a - 2 - lo) as usize].clone()).collect();
                (gens, rels, Extent::Window(-hi, -lo))
            }
        };
        QuadraticZAlgebra { field: self.field, orientation: Orientation::Negative, extent, gens, rels }
    }

    /// Positive algebra `D` with `D_{a,a+1} = M_{-a-1,-a}^*` and relations the
    /// swapped annihilators of `M`'s relations.
    fn transpose_dual(&self) -> QuadraticZAlgebra<F> {
        let f = &self.field;
        let dual_rel = |a: i64| -> Subspace<F> {
            // slot a of D uses M's relation at -a-2, inside M_{-a-1} ⊗ M_{-a-2}
            let left = self.gen(-a - 1).expect("generator in range");
            let right = self.gen(-a - 2).expect("generator in range");
            let ann = self.rel(-a - 2).expect("relation in range").annihilator();
            let (nl, nr) = (left.dim(), right.dim());
            let amb = relation_ambient(&right.dual(), &left.dual());
            let mut m = Matrix::zeros(f, ann.dim(), nl * nr);
            for r in 0..ann.dim() {
                for x in 0..nl {
                    for y in 0..nr {
                        m.set(r, y * nl + x, ann.basis().get(r, x * nr + y).clone());
                    }
                }
            }
            Subspace::span(&amb, &m)
        };
        let (gens, rels, extent) = match self.extent {
            Extent::Periodic(p) => {
                let pi = p as i64;
                let gens = (0..pi).map(|a| self.gen(-a - 1).unwrap().dual()).collect();
                let rels = (0..pi).map(dual_rel).collect();
                (gens, rels, Extent::Periodic(p))
            }
            Extent::Window(lo, hi) => {
                let gens = (-hi..-lo).map(|a| self.gen(-a - 1).unwrap().dual()).collect();
                let rels = (-hi..-lo - 1).map(dual_rel).collect();
                (gens, rels, Extent::Window(-hi, -lo))
            }
        };
        QuadraticZAlgebra { field: f.clone(), orientation: Orientation::Positive, extent, gens, rels }
    }
}

/// `A^!`: dual generators, opposite orientation, relations `S(I^⊥)`.
pub fn quadratic_dual<F: Field>(a: &QuadraticZAlgebra<F>) -> QuadraticZAlgebra<F> {
    let d = a.transpose_dual();
    QuadraticZAlgebra { orientation: a.orientation.opposite(), ..d }
}

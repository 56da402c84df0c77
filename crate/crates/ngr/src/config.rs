//! JSON input files: subspaces `W ⊂ V` and custom quadratic Z-algebras.
//! Entries are integers or rational strings like `"-3/4"`.

use std::path::Path;

use anyhow::{anyhow, bail, Context};
use ngr_core::exactla::{BasedSpace, Label, Matrix, Subspace};
use ngr_core::points::SubspaceW;
use ngr_core::zalg::{make_quadratic, Extent, Orientation, QuadraticZAlgebra};
use ngr_core::Field;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    /// rows spanning `W`, in the basis `x1, …, xn`
    pub rows: Vec<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<Vec<Vec<Scalar>>>,
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum OrientationName {
    Positive,
    Negative,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub index: i64,
    pub labels: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RelationEntry {
    pub index: i64,
    /// rows spanning the relation space in the ambient tensor basis
    pub rows: Vec<Vec<Scalar>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub orientation: OrientationName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[i64; 2]>,
    pub generators: Vec<GeneratorEntry>,
    pub relations: Vec<RelationEntry>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn scalar<F: Field>(f: &F, s: &Scalar) -> anyhow::Result<F::Elem> {
    match s {
        Scalar::Int(v) => Ok(f.from_i64(*v)),
        Scalar::Text(t) => f.parse(t.trim()).ok_or_else(|| anyhow!("not an exact scalar: {t:?}")),
    }
}

pub fn matrix<F: Field>(f: &F, cols: usize, rows: &[Vec<Scalar>]) -> anyhow::Result<Matrix<F>> {
    let mut out = Vec::with_capacity(rows.len());
    for (k, r) in rows.iter().enumerate() {
        if r.len() != cols {
            bail!("row {k} has {} entries, expected {cols}", r.len());
        }
        out.push(r.iter().map(|s| scalar(f, s)).collect::<anyhow::Result<Vec<_>>>()?);
    }
    Ok(Matrix::from_rows(f, cols, out))
}

pub fn render_rows<F: Field>(m: &Matrix<F>) -> Vec<Vec<Scalar>> {
    let f = m.field();
    m.row_vecs()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let s = f.render(x);
                    s.parse::<i64>().map_or(Scalar::Text(s), Scalar::Int)
                })
                .collect()
        })
        .collect()
}

impl SubspaceFile {
    pub fn to_subspace<F: Field>(&self, f: &F, n: usize) -> anyhow::Result<SubspaceW<F>> {
        let w = matrix(f, n, &self.rows)?;
        let out = match &self.complement {
            None => SubspaceW::new(w),
            Some(u) => SubspaceW::with_complement(w, matrix(f, n, u)?),
        };
        out.map_err(|e| anyhow!("invalid subspace: {e}"))
    }

    /// `span(x1, …, xd)`
    pub fn coordinate(d: usize, n: usize) -> Self {
        let rows = (0..d).map(|j| (0..n).map(|k| Scalar::Int((j == k) as i64)).collect()).collect();
        SubspaceFile { rows, complement: None }
    }
}

impl AlgebraFile {
    pub fn to_algebra<F: Field>(&self, f: &F) -> anyhow::Result<QuadraticZAlgebra<F>> {
        let orientation = match self.orientation {
            OrientationName::Positive => Orientation::Positive,
            OrientationName::Negative => Orientation::Negative,
        };
        let extent = match (self.period, self.window) {
            (Some(p), None) => Extent::Periodic(p),
            (None, Some([lo, hi])) => Extent::Window(lo, hi),
            _ => bail!("give exactly one of \"period\" and \"window\""),
        };
        let gens: Vec<(i64, BasedSpace)> =
            self.generators.iter().map(|g| (g.index, BasedSpace::from_distinct(g.labels.iter().map(|l| Label::atom(l.clone())).collect()))).collect();
        let gen_at = |i: i64| -> anyhow::Result<&BasedSpace> {
            let key = match extent {
                Extent::Periodic(p) => i.rem_euclid(p.max(1) as i64),
                Extent::Window(..) => i,
            };
            gens.iter().find(|(k, _)| *k == key).map(|(_, s)| s).ok_or_else(|| anyhow!("no generators at index {i}"))
        };
        let mut rels = Vec::new();
        for r in &self.relations {
            let (a, b) = (gen_at(r.index + 1)?, gen_at(r.index)?);
            // positive: A_{i+1,i+2} ⊗ A_{i,i+1}; negative: A_{i+1,i} ⊗ A_{i+2,i+1}
            let amb = match orientation {
                Orientation::Positive => BasedSpace::tensor(&[a, b]),
                Orientation::Negative => BasedSpace::tensor(&[b, a]),
            };
            let m = matrix(f, amb.dim(), &r.rows).with_context(|| format!("relation {}", r.index))?;
            rels.push((r.index, Subspace::span(&amb, &m)));
        }
        make_quadratic(f, gens, rels, orientation, extent).map_err(|e| anyhow!("invalid algebra: {e}"))
    }

    /// The stored generators and relations of a periodic, positively oriented algebra.
    pub fn from_periodic<F: Field>(alg: &QuadraticZAlgebra<F>) -> anyhow::Result<Self> {
        let p = alg.period().context("only periodic algebras can be exported")?;
        if alg.orientation() != Orientation::Positive {
            bail!("only positively oriented algebras can be exported");
        }
        let idx = 0..p as i64;
        let generators =
            idx.clone().map(|i| GeneratorEntry { index: i, labels: alg.gen(i).unwrap().labels().iter().map(|l| l.to_string()).collect() }).collect();
        let relations = idx.map(|i| RelationEntry { index: i, rows: render_rows(alg.rel(i).unwrap().basis()) }).collect();
        Ok(AlgebraFile { orientation: OrientationName::Positive, period: Some(p), window: None, generators, relations })
    }
}

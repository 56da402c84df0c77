use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use ngr_core::helix::{helix_end_algebra, line_bundle_helix, verify_geometric};
use ngr_core::ngrass::{build_b_algebra, build_ngr, compare_with_geometry, NgrSpec};
use ngr_core::points::{ext_algebra, local_ring, point_functor, tangent_dimension, PointOutcome, SubspaceW};
use ngr_core::zalg::{
    dual_dimension_check, frobenius_check, hilbert_table, koszulity_check, quadratic_dual, Certificate, KoszulOptions, QuadraticZAlgebra,
};
use ngr_core::{Field, FieldSpec, PrimeField, Rationals};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{AlgebraArgs, Cli, Command, Common, SpecArgs};
use crate::config::{read_json, AlgebraFile, SubspaceFile};
use crate::report::{Record, Report};

/// Seed for the random `H^0` elements used by isomorphism tests.
const SEED: u64 = 7;

#[derive(Default)]
struct Part {
    certs: Vec<Certificate>,
    tables: Vec<(String, Value)>,
}

impl Part {
    fn cert(c: Certificate) -> Self {
        Part { certs: vec![c], tables: Vec::new() }
    }

    fn table(mut self, name: &str, v: Value) -> Self {
        self.tables.push((name.into(), v));
        self
    }
}

type Task<'a> = Box<dyn Fn() -> anyhow::Result<Part> + Send + Sync + 'a>;

/// Runs the independent tasks on the current pool; records keep task order.
fn run_tasks(report: &mut Report, tasks: Vec<Task<'_>>, timings: bool) -> anyhow::Result<()> {
    let done: Vec<anyhow::Result<(Part, u128)>> = tasks
        .par_iter()
        .map(|t| {
            let start = Instant::now();
            let part = t()?;
            Ok((part, start.elapsed().as_millis()))
        })
        .collect();
    for r in done {
        let (part, ms) = r?;
        for c in &part.certs {
            let mut rec = Record::from_certificate(c);
            rec.millis = timings.then_some(ms);
            report.certificates.push(rec);
        }
        report.tables.extend(part.tables);
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> anyhow::Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.common.jobs.unwrap_or(0)).build()?;
    pool.install(|| match cli.common.field {
        FieldSpec::Rationals => run(&Rationals, cli),
        FieldSpec::Prime(p) => run(&PrimeField::new(p).ok_or_else(|| anyhow!("{p} is not prime"))?, cli),
    })
}

fn spec_of(s: SpecArgs) -> anyhow::Result<NgrSpec> {
    NgrSpec::new(s.m, s.n).map_err(|e| anyhow!("{e}"))
}

fn check_window(w: (i64, i64), common: &Common) -> anyhow::Result<(i64, i64)> {
    if w.1 - w.0 > common.max_window {
        bail!("window {}..{} is wider than the cap {}", w.0, w.1, common.max_window);
    }
    Ok(w)
}

/// Prime fields must satisfy `p > 2 (width + dim)`, `width` the largest window
/// width and `dim` the largest generator space of the run.
fn check_field(common: &Common, width: i64, dim: usize) -> anyhow::Result<()> {
    if let FieldSpec::Prime(p) = common.field {
        let bound = 2 * (width.max(0) as u64 + dim as u64);
        if p <= bound {
            bail!("prime {p} is too small for this run: need p > {bound}");
        }
    }
    Ok(())
}

fn max_gen_dim<F: Field>(alg: &QuadraticZAlgebra<F>, w: (i64, i64)) -> usize {
    (w.0..=w.1).filter_map(|i| alg.gen(i)).map(|g| g.dim()).max().unwrap_or(0)
}

/// `[-2p, 2p]`, narrowed to fit the cap.
fn default_window(spec: NgrSpec, common: &Common) -> (i64, i64) {
    let h = (2 * spec.period() as i64).min(common.max_window / 2);
    (-h, h)
}

fn dims_json(t: &[Vec<u128>]) -> Value {
    Value::Array(t.iter().map(|r| Value::Array(r.iter().map(|&x| json!(x as u64)).collect())).collect())
}

fn render_vec<F: Field>(f: &F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|x| json!(f.render(x))).collect())
}

struct Loaded<F: Field> {
    alg: QuadraticZAlgebra<F>,
    spec: Option<NgrSpec>,
}

fn load_algebra<F: Field>(f: &F, a: &AlgebraArgs, report: &mut Report) -> anyhow::Result<Loaded<F>> {
    match (&a.algebra, a.m, a.n) {
        (Some(path), _, _) => {
            report.config.insert("algebra".into(), json!(path.display().to_string()));
            let file: AlgebraFile = read_json(path)?;
            Ok(Loaded { alg: file.to_algebra(f)?, spec: None })
        }
        (None, Some(m), Some(n)) => {
            let spec = spec_of(SpecArgs { m, n })?;
            report.config.insert("m".into(), json!(m));
            report.config.insert("n".into(), json!(n));
            Ok(Loaded { alg: build_ngr(f, spec).map_err(|e| anyhow!("{e}"))?, spec: Some(spec) })
        }
        _ => bail!("give --m and --n, or --algebra"),
    }
}

fn algebra_window<F: Field>(l: &Loaded<F>, w: Option<(i64, i64)>, common: &Common) -> anyhow::Result<(i64, i64)> {
    let w = match (w, l.spec) {
        (Some(w), _) => w,
        (None, Some(s)) => default_window(s, common),
        (None, None) => l.alg.stored_window().unwrap_or((0, 4)),
    };
    check_window(w, common)
}

fn load_subspace<F: Field>(f: &F, path: &Path, n: usize) -> anyhow::Result<SubspaceW<F>> {
    let file: SubspaceFile = read_json(path)?;
    file.to_subspace(f, n)
}

fn spec_config(report: &mut Report, spec: NgrSpec) {
    report.config.insert("m".into(), json!(spec.m));
    report.config.insert("n".into(), json!(spec.n));
}

fn core<T>(r: ngr_core::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| anyhow!("{e}"))
}

fn run<F: Field>(f: &F, cli: &Cli) -> anyhow::Result<Report> {
    let common = &cli.common;
    let name = command_name(&cli.command);
    let mut report = Report::new(name);
    report.config.insert("field".into(), json!(common.field.to_string()));
    if common.timings {
        report.config.insert("timings".into(), json!(true));
    }
    let timings = common.timings;
    match &cli.command {
        Command::Build { alg, window, export } => {
            let l = load_algebra(f, alg, &mut report)?;
            let w = algebra_window(&l, *window, common)?;
            check_field(common, w.1 - w.0, max_gen_dim(&l.alg, w))?;
            report.config.insert("window".into(), json!([w.0, w.1]));
            if let Some(path) = export {
                let file = AlgebraFile::from_periodic(&l.alg)?;
                let mut text = serde_json::to_string_pretty(&file)?;
                text.push('\n');
                std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            let mut tasks: Vec<Task> = vec![Box::new(|| Ok(Part::default().table("dims", dims_json(&core(hilbert_table(&l.alg, w))?))))];
            if let Some(spec) = l.spec {
                let a = &l.alg;
                tasks.push(Box::new(move || Ok(Part::cert(core(compare_with_geometry(a, &build_b_algebra(f, spec)))?))));
            }
            run_tasks(&mut report, tasks, timings)?;
        }
        Command::KoszulCheck { alg, window } => {
            let l = load_algebra(f, alg, &mut report)?;
            let w = algebra_window(&l, *window, common)?;
            check_field(common, w.1 - w.0, max_gen_dim(&l.alg, w))?;
            report.config.insert("window".into(), json!([w.0, w.1]));
            let a = &l.alg;
            run_tasks(&mut report, vec![Box::new(move || Ok(Part::cert(core(koszulity_check(a, w, KoszulOptions::default()))?)))], timings)?;
        }
        Command::Dual { alg, window, degree } => {
            let l = load_algebra(f, alg, &mut report)?;
            let w = algebra_window(&l, *window, common)?;
            check_field(common, w.1 - w.0, max_gen_dim(&l.alg, w))?;
            report.config.insert("window".into(), json!([w.0, w.1]));
            let a = &l.alg;
            let p_h = degree.or(l.spec.map(|s| s.period()));
            if let Some(d) = degree {
                report.config.insert("degree".into(), json!(d));
            }
            let mut tasks: Vec<Task> = vec![
                Box::new(move || Ok(Part::default().table("dual_dims", dims_json(&core(hilbert_table(&quadratic_dual(a), w))?)))),
                Box::new(move || Ok(Part::cert(core(dual_dimension_check(a, w))?))),
            ];
            if let Some(p_h) = p_h {
                tasks.push(Box::new(move || Ok(Part::cert(core(frobenius_check(a, p_h, w))?))));
            }
            run_tasks(&mut report, tasks, timings)?;
        }
        Command::Helix { spec, extend } => {
            let spec = spec_of(*spec)?;
            spec_config(&mut report, spec);
            report.config.insert("extend".into(), json!(extend));
            let b = build_b_algebra(f, spec);
            let h = core(line_bundle_helix(&b, spec.period() + extend))?;
            let w = check_window(h.window(), common)?;
            check_field(common, w.1 - w.0, spec.n)?;
            let mult: Vec<Value> = h
                .objects
                .iter()
                .map(|(i, e)| json!({ "i": i, "terms": e.multiplicities(&b).into_iter().map(|(t, m)| json!([t, m])).collect::<Vec<_>>() }))
                .collect();
            report.tables.insert("objects".into(), json!((b.window().0..=b.window().1).collect::<Vec<_>>()));
            report.tables.insert("multiplicities".into(), Value::Array(mult));
            let (b, h) = (&b, &h);
            let task: Task = Box::new(move || {
                let c = core(verify_geometric(b, h, w))?;
                let t = c.data.get("hom_dims").map(crate::report::datum).unwrap_or(Value::Null);
                Ok(Part::cert(c).table("hom_dims", t))
            });
            run_tasks(&mut report, vec![task], timings)?;
        }
        Command::Compare { spec } => {
            let spec = spec_of(*spec)?;
            spec_config(&mut report, spec);
            check_field(common, spec.period() as i64 + 1, spec.n)?;
            let a = core(build_ngr(f, spec))?;
            let b = build_b_algebra(f, spec);
            let (a, b) = (&a, &b);
            let tasks: Vec<Task> =
                vec![Box::new(move || Ok(Part::cert(core(compare_with_geometry(a, b))?))), Box::new(move || end_algebra(b, a, spec))];
            run_tasks(&mut report, tasks, timings)?;
        }
        Command::Point { spec, subspace, window } => {
            let spec = spec_of(*spec)?;
            spec_config(&mut report, spec);
            report.config.insert("subspace".into(), json!(subspace.display().to_string()));
            let w = check_window(window.unwrap_or((-4, 4)), common)?;
            check_field(common, w.1 - w.0 + spec.period() as i64, spec.n)?;
            report.config.insert("window".into(), json!([w.0, w.1]));
            let sub = load_subspace(f, subspace, spec.n)?;
            let sub = &sub;
            run_tasks(&mut report, vec![Box::new(move || point_part(f, spec, sub, w))], timings)?;
        }
        Command::Ext { spec, subspace } => {
            let spec = spec_of(*spec)?;
            check_field(common, (spec.n - spec.m) as i64, spec.n)?;
            spec_config(&mut report, spec);
            report.config.insert("subspace".into(), json!(subspace.display().to_string()));
            let sub = load_subspace(f, subspace, spec.n)?;
            let sub = &sub;
            run_tasks(&mut report, vec![Box::new(move || ext_part(f, spec, sub))], timings)?;
        }
        Command::LocalRing { spec, subspace, depth } => {
            let spec = spec_of(*spec)?;
            check_field(common, *depth as i64, spec.n)?;
            spec_config(&mut report, spec);
            report.config.insert("subspace".into(), json!(subspace.display().to_string()));
            report.config.insert("depth".into(), json!(depth));
            let sub = load_subspace(f, subspace, spec.n)?;
            let (sub, depth) = (&sub, *depth);
            run_tasks(&mut report, vec![Box::new(move || local_part(f, spec, sub, depth))], timings)?;
        }
        Command::Suite { spec, subspace } => {
            let spec = spec_of(*spec)?;
            spec_config(&mut report, spec);
            let sub = match subspace {
                Some(path) => {
                    report.config.insert("subspace".into(), json!(path.display().to_string()));
                    load_subspace(f, path, spec.n)?
                }
                None => SubspaceFile::coordinate(spec.m, spec.n).to_subspace(f, spec.n)?,
            };
            suite(f, spec, &sub, common, &mut report)?;
        }
    }
    Ok(report)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Build { .. } => "build",
        Command::KoszulCheck { .. } => "koszul-check",
        Command::Dual { .. } => "dual",
        Command::Helix { .. } => "helix",
        Command::Compare { .. } => "compare",
        Command::Point { .. } => "point",
        Command::Ext { .. } => "ext",
        Command::LocalRing { .. } => "local-ring",
        Command::Suite { .. } => "suite",
    }
}

fn end_algebra<F: Field>(b: &ngr_core::ngrass::FDAlgebra<F>, a: &QuadraticZAlgebra<F>, spec: NgrSpec) -> anyhow::Result<Part> {
    let h = core(line_bundle_helix(b, spec.period() + 1))?;
    let lo = spec.m as i64 - spec.n as i64;
    let (end, c) = core(helix_end_algebra(b, &h, (lo, 1), a, SEED))?;
    let dims: Vec<Vec<u64>> = (lo..=1).map(|i| (lo..=1).map(|j| if j < i { 0 } else { end.dim(i, j) as u64 }).collect()).collect();
    Ok(Part::cert(c).table("end_dims", json!(dims)))
}

fn point_part<F: Field>(f: &F, spec: NgrSpec, w: &SubspaceW<F>, window: (i64, i64)) -> anyhow::Result<Part> {
    Ok(match core(point_functor(f, spec, w, window))? {
        PointOutcome::Rejected(c) => Part::cert(c),
        PointOutcome::Point(p) => Part { certs: p.certificates.clone(), tables: Vec::new() }
            .table("point_dims", json!(p.dims().into_iter().map(|(i, d)| json!([i, d])).collect::<Vec<_>>())),
    })
}

fn ext_part<F: Field>(f: &F, spec: NgrSpec, w: &SubspaceW<F>) -> anyhow::Result<Part> {
    let b = build_b_algebra(f, spec);
    let (t, c) = core(ext_algebra(&b, spec, w))?;
    let products: serde_json::Map<String, Value> = t
        .products
        .iter()
        .map(|((a, bb), rows)| {
            let rows: Vec<Value> = rows.iter().map(|r| Value::Array(r.iter().map(|v| render_vec(f, v)).collect())).collect();
            (format!("{a},{bb}"), Value::Array(rows))
        })
        .collect();
    Ok(Part::cert(c).table("ext_dims", json!(t.dims)).table("ext_basis", json!(t.labels())).table("ext_products", Value::Object(products)))
}

/// A relation as `[coefficient, "x_s x_t"]` pairs in the monomial basis.
fn relation_terms<F: Field>(f: &F, gens: &[String], v: &[F::Elem]) -> Value {
    let g = gens.len();
    Value::Array(
        v.iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(k, x)| json!([f.render(x), format!("{} {}", gens[k / g], gens[k % g])])).collect(),
    )
}

fn local_part<F: Field>(f: &F, spec: NgrSpec, w: &SubspaceW<F>, depth: usize) -> anyhow::Result<Part> {
    let lr = core(local_ring(f, spec, w, depth))?;
    let tangent = core(tangent_dimension(spec, w))?;
    let terms = |rows: &[Vec<F::Elem>]| Value::Array(rows.iter().map(|v| relation_terms(f, &lr.generators, v)).collect());
    Ok(Part { certs: lr.certificates.clone(), tables: Vec::new() }
        .table("generators", json!(lr.generators))
        .table("rel1", terms(&lr.rel1))
        .table("rel2", terms(&lr.rel2))
        .table("relations", terms(&lr.relations.basis().row_vecs()))
        .table("hilbert", json!(lr.hilbert.iter().map(|&h| h as u64).collect::<Vec<_>>()))
        .table("tangent_dimension", json!(tangent)))
}

fn suite<F: Field>(f: &F, spec: NgrSpec, w: &SubspaceW<F>, common: &Common, report: &mut Report) -> anyhow::Result<()> {
    let a = core(build_ngr(f, spec))?;
    let b = build_b_algebra(f, spec);
    let (a, b) = (&a, &b);
    let p = spec.period();
    let wide = default_window(spec, common);
    let pi = p as i64;
    check_field(common, wide.1 - wide.0, spec.n)?;
    report.config.insert("window".into(), json!([wide.0, wide.1]));
    let mut tasks: Vec<Task> = vec![
        Box::new(move || Ok(Part::cert(core(koszulity_check(a, wide, KoszulOptions::default()))?))),
        Box::new(move || Ok(Part::cert(core(frobenius_check(a, p, wide))?))),
        Box::new(move || Ok(Part::cert(core(dual_dimension_check(a, (-pi, pi)))?))),
        Box::new(move || Ok(Part::cert(core(compare_with_geometry(a, b))?))),
        Box::new(move || {
            let h = core(line_bundle_helix(b, 2 * p + 1))?;
            Ok(Part::cert(core(verify_geometric(b, &h, h.window()))?))
        }),
        Box::new(move || end_algebra(b, a, spec)),
        Box::new(move || point_part(f, spec, w, (-pi - 1, pi + 1))),
    ];
    if w.dim() <= spec.m {
        tasks.push(Box::new(move || ext_part(f, spec, w)));
    }
    if w.dim() == spec.m {
        tasks.push(Box::new(move || local_part(f, spec, w, 3)));
    }
    run_tasks(report, tasks, common.timings)
}

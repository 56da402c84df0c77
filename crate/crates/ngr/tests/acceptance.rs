//! One line per acceptance criterion. Runs without the libtest harness so the
//! verdict lines are always printed; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use ngr::args::Cli;
use ngr_core::exactla::{BasedSpace, Matrix, Subspace};
use ngr_core::helix::{cone, extend_helix, hom_complex, isomorphic, line_bundle_helix, mutate, verify_geometric, Direction, ProjComplex};
use ngr_core::ngrass::{build_b_algebra, build_ngr, compare_with_geometry, FDAlgebra, NgrSpec};
use ngr_core::points::{ext_algebra, local_ring, point_functor, tangent_dimension, PointOutcome, SubspaceW};
use ngr_core::zalg::{
    dual_dimension_check, frobenius_check, hilbert_table, koszul_complex, koszulity_check, make_quadratic, Datum, Extent, KoszulOptions, Orientation,
    QuadraticZAlgebra,
};
use ngr_core::{Field, PrimeField, Rationals};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};

const SPECS: [(usize, usize); 5] = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)];
const Q: Rationals = Rationals;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(m: usize, n: usize) -> NgrSpec {
    NgrSpec::new(m, n).unwrap()
}

fn binomial(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    (0..b).fold(1, |acc, k| acc * (a - k) / (k + 1))
}

fn subspace(n: usize, rows: &[&[i64]]) -> SubspaceW<Rationals> {
    SubspaceW::new(Matrix::from_i64(&Q, n, rows)).unwrap()
}

fn coordinate(d: usize, n: usize) -> SubspaceW<Rationals> {
    let rows: Vec<Vec<i64>> = (0..d).map(|j| (0..n).map(|k| (j == k) as i64).collect()).collect();
    let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    subspace(n, &rows)
}

/// Seeded random `d`-dimensional subspaces of `k^n` with small entries.
fn random_subspaces(d: usize, n: usize, count: usize, seed: u64) -> Vec<SubspaceW<Rationals>> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..n).map(|_| rng.random_range(-3..=3)).collect()).collect();
        let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        if let Ok(w) = SubspaceW::new(Matrix::from_i64(&Q, n, &rows)) {
            out.push(w);
        }
    }
    out
}

fn symmetric_recovery() -> Outcome {
    for n in 2..=4usize {
        let a = build_ngr(&Q, spec(1, n)).map_err(|e| e.to_string())?;
        let t = hilbert_table(&a, (-4, 4)).map_err(|e| e.to_string())?;
        for i in 0..9usize {
            for j in i..9usize {
                let expect = binomial((j - i + n - 1) as u64, (n - 1) as u64) as u128;
                ensure(t[i][j] == expect, || format!("n={n}: dim A_({},{}) = {} != {expect}", i as i64 - 4, j as i64 - 4, t[i][j]))?;
            }
        }
    }
    Ok("n = 2,3,4 on [-4,4]".into())
}

fn wide(m: usize, n: usize) -> (i64, i64) {
    let p = spec(m, n).period() as i64;
    (-2 * p, 2 * p)
}

fn koszulity() -> Outcome {
    for (m, n) in SPECS {
        let a = build_ngr(&Q, spec(m, n)).map_err(|e| e.to_string())?;
        let c = koszulity_check(&a, wide(m, n), KoszulOptions::default()).map_err(|e| e.to_string())?;
        ensure(c.passed(), || format!("({m},{n}): {:?}", c.witness()))?;
    }
    Ok("5 specs on [-2p,2p]".into())
}

fn frobenius() -> Outcome {
    for (m, n) in SPECS {
        let a = build_ngr(&Q, spec(m, n)).map_err(|e| e.to_string())?;
        let c = frobenius_check(&a, n - m + 1, wide(m, n)).map_err(|e| e.to_string())?;
        ensure(c.passed(), || format!("({m},{n}): {:?}", c.witness()))?;
    }
    Ok("5 specs, p_h = n-m+1".into())
}

fn geometry() -> Outcome {
    for (m, n) in SPECS {
        let a = build_ngr(&Q, spec(m, n)).map_err(|e| e.to_string())?;
        let c = compare_with_geometry(&a, &build_b_algebra(&Q, spec(m, n))).map_err(|e| e.to_string())?;
        ensure(c.passed(), || format!("({m},{n}): {:?}", c.witness()))?;
    }
    let a = build_ngr(&Q, spec(2, 4)).map_err(|e| e.to_string())?;
    let row = hilbert_table(&a, (-2, 1)).map_err(|e| e.to_string())?.swap_remove(0);
    // E_1 = [P_{-2} -> V ⊗ P_{-1} -> Λ²V ⊗ P_0]: Hom(P_{-2}, -) has Euler characteristic
    // Σ (-1)^k dim Λ^k V · dim S^k V*
    let euler: i64 = (0..=2u64).map(|k| (if k % 2 == 0 { 1 } else { -1 }) * (binomial(4, k) * binomial(k + 3, 3)) as i64).sum();
    let sym: Vec<u128> = (0..3u64).map(|k| binomial(k + 3, 3) as u128).collect();
    ensure(row[..3] == sym[..], || format!("superdiagonal {row:?}"))?;
    ensure(row[3] as i64 == euler && euler == 45, || format!("dim A_(-2,1) = {} vs Euler characteristic {euler}", row[3]))?;
    Ok("5 specs; (2,4) row 1,4,10,45".into())
}

fn helix() -> Outcome {
    let b = build_b_algebra(&Q, spec(2, 4));
    let h = extend_helix(&b, -2, (-2..=0).map(ProjComplex::projective).collect(), 1, 0).map_err(|e| e.to_string())?;
    let e1 = &h.objects[&1];
    let shape = [vec![-2], vec![-1; 4], vec![0; 6]];
    ensure(e1.lo() == -2 && e1.terms() == shape, || format!("E_1 terms {:?} from {}", e1.terms(), e1.lo()))?;
    let hom = hom_complex(&b, &ProjComplex::projective(0), e1).map_err(|e| e.to_string())?;
    ensure(hom.homology_support() == vec![(0, binomial(4, 2) as usize)], || format!("Hom(E_0, E_1) = {:?}", hom.homology_support()))?;
    let seven = line_bundle_helix(&b, 7).map_err(|e| e.to_string())?;
    let c = verify_geometric(&b, &seven, seven.window()).map_err(|e| e.to_string())?;
    ensure(c.passed(), || format!("{:?}", c.witness()))?;
    Ok(format!("E_1 shape 1,4,6; Hom(E_0,E_1) = 6; geometric on {:?}", seven.window()))
}

fn mutation() -> Outcome {
    let b = build_b_algebra(&Q, spec(1, 2));
    let r = mutate(&b, Direction::Right, &ProjComplex::projective(-1), &ProjComplex::projective(0)).map_err(|e| e.to_string())?.minimize(&b);
    ensure(r.is_minimal(b.field()), || "not minimal".into())?;
    // O(1) on P¹: Hom(O(i), O(1)) = S^{1-i} V*
    for (i, expect) in [(-1i64, binomial(3, 1)), (0, binomial(2, 1))] {
        let s = hom_complex(&b, &ProjComplex::projective(i), &r).map_err(|e| e.to_string())?.homology_support();
        ensure(s == vec![(0, expect as usize)], || format!("Hom(P_{i}, R) = {s:?}"))?;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let helices: Vec<_> = SPECS
        .iter()
        .map(|&(m, n)| {
            let b = build_b_algebra(&Q, spec(m, n));
            let h = line_bundle_helix(&b, 7).unwrap();
            (b, h)
        })
        .collect();
    for trial in 0..20u64 {
        let (b, h) = &helices[rng.random_range(0..helices.len())];
        let (lo, hi) = h.window();
        let i = rng.random_range(lo..hi);
        let j = rng.random_range(i + 1..=(i + h.period as i64 - 1).min(hi));
        let (e, f) = (&h.objects[&i], &h.objects[&j]);
        let r = mutate(b, Direction::Right, e, f).map_err(|e| e.to_string())?.minimize(b);
        let l = mutate(b, Direction::Left, f, &r).map_err(|e| e.to_string())?.minimize(b);
        ensure(isomorphic(b, &l, e, trial).map_err(|e| e.to_string())?, || format!("trial {trial}: L∘R on ({i},{j})"))?;
    }
    Ok("R(P_-1) has Hom dims (3,2); 20 round trips".into())
}

fn points() -> Outcome {
    let s = spec(2, 4);
    let mut accepted = 0;
    for d in 1..=2usize {
        let mut ws = vec![coordinate(d, 4)];
        ws.extend(random_subspaces(d, 4, 2, 40 + d as u64));
        for w in &ws {
            match point_functor(&Q, s, w, (-4, 4)).map_err(|e| e.to_string())? {
                PointOutcome::Point(p) => {
                    ensure(p.passed(), || format!("dim W = {d}: {:?}", p.certificates.iter().find(|c| !c.passed())))?;
                    ensure(p.certificates.iter().any(|c| c.check == "point_acyclicity"), || "no acyclicity certificate".into())?;
                    accepted += 1;
                }
                PointOutcome::Rejected(c) => return Err(format!("dim W = {d} rejected: {:?}", c.witness())),
            }
        }
    }
    let mut rejected = 0;
    for w in [coordinate(3, 4)].into_iter().chain(random_subspaces(3, 4, 2, 43)) {
        match point_functor(&Q, s, &w, (-4, 4)).map_err(|e| e.to_string())? {
            PointOutcome::Rejected(c) => {
                ensure(c.witness() == Some(&Datum::from("F(1)=0")), || format!("witness {:?}", c.witness()))?;
                rejected += 1;
            }
            PointOutcome::Point(_) => return Err("dim W = 3 accepted".into()),
        }
    }
    Ok(format!("{accepted} subspaces accepted, {rejected} rejected with F(1)=0"))
}

fn ext() -> Outcome {
    for (m, n, d, expect) in [(2usize, 4usize, 2usize, vec![1usize, 4, 3]), (1, 3, 1, vec![1, 2, 1])] {
        let b = build_b_algebra(&Q, spec(m, n));
        for w in [coordinate(d, n)].into_iter().chain(random_subspaces(d, n, 1, 80)) {
            let (t, c) = ext_algebra(&b, spec(m, n), &w).map_err(|e| e.to_string())?;
            // Λ^k(V/W) ⊗ S^k W*
            let oracle: Vec<usize> = (0..=(n - m) as u64).map(|k| (binomial((n - d) as u64, k) * binomial(d as u64 + k - 1, k)) as usize).collect();
            ensure(t.dims == expect && t.dims == oracle, || format!("({m},{n}): dims {:?}", t.dims))?;
            ensure(c.passed(), || format!("({m},{n}): {:?}", c.witness()))?;
            ensure(!t.products.is_empty(), || "no products".into())?;
        }
    }
    Ok("(2,4): 1,4,3; (1,3): 1,2,1; products certified".into())
}

fn commutators(f: &Rationals, g: usize) -> Vec<Vec<<Rationals as Field>::Elem>> {
    let mut out = Vec::new();
    for a in 0..g {
        for b in a + 1..g {
            let mut v = vec![f.zero(); g * g];
            v[a * g + b] = f.one();
            v[b * g + a] = f.from_i64(-1);
            out.push(v);
        }
    }
    out
}

fn local() -> Outcome {
    let w = coordinate(2, 4);
    let lr = local_ring(&Q, spec(2, 4), &w, 3).map_err(|e| e.to_string())?;
    ensure(lr.certificates.iter().all(|c| c.passed()), || format!("{:?}", lr.certificates.iter().find(|c| !c.passed())))?;
    // I_C = ker(C_1 ⊗ C_1 -> C_2), so dim R = dim C_2 = Λ²(V/W) ⊗ S²W*
    let c2 = binomial(2, 2) * binomial(3, 2);
    let dim_i = 16 - c2;
    ensure((lr.rel1.len(), lr.rel2.len(), lr.relations.dim()) == (2, 1, 3) && 16 - dim_i == 3, || {
        format!("rel1 {}, rel2 {}, R {}", lr.rel1.len(), lr.rel2.len(), lr.relations.dim())
    })?;
    let spanned = Subspace::span_vectors(&Q, lr.relations.ambient(), lr.rel1.iter().chain(&lr.rel2).cloned().collect());
    ensure(spanned == lr.relations, || "rel1 ∪ rel2 does not span R".into())?;
    for n in 2..=4usize {
        let lr = local_ring(&Q, spec(1, n), &coordinate(1, n), 3).map_err(|e| e.to_string())?;
        let g = n - 1;
        let comm = Subspace::span_vectors(&Q, lr.relations.ambient(), commutators(&Q, g));
        ensure(lr.relations == comm, || format!("(1,{n}): relations are not the commutators"))?;
        let h: Vec<u128> = (0..=3u64).map(|t| binomial(g as u64 - 1 + t, t) as u128).collect();
        ensure(lr.hilbert == h, || format!("(1,{n}): Hilbert {:?}", lr.hilbert))?;
        ensure(lr.certificates.iter().all(|c| c.passed()), || format!("(1,{n}) certificate failed"))?;
    }
    for (m, n) in SPECS {
        for w in [coordinate(m, n)].into_iter().chain(random_subspaces(m, n, 1, 90)) {
            let t = tangent_dimension(spec(m, n), &w).map_err(|e| e.to_string())?;
            ensure(t == m * (n - m), || format!("({m},{n}): tangent {t}"))?;
            let lr = local_ring(&Q, spec(m, n), &w, 2).map_err(|e| e.to_string())?;
            ensure(lr.generators.len() == t && lr.hilbert.get(1) == Some(&(t as u128)), || format!("({m},{n}): h_1 {:?}", lr.hilbert))?;
        }
    }
    Ok("(2,4): 2+1 = 3 = 16-13; (1,n) commutative; tangent m(n-m)".into())
}

#[derive(Clone, Debug)]
struct RandomAlgebra {
    dims: Vec<usize>,
    rels: Vec<Vec<Vec<i64>>>,
}

impl RandomAlgebra {
    fn build(&self) -> QuadraticZAlgebra<Rationals> {
        let p = self.dims.len();
        let gens: Vec<(i64, BasedSpace)> = self.dims.iter().enumerate().map(|(i, &g)| (i as i64, BasedSpace::atoms(&format!("x{i}_"), g))).collect();
        let rels = (0..p)
            .map(|i| {
                let amb = BasedSpace::tensor(&[&gens[(i + 1) % p].1, &gens[i].1]);
                let rows: Vec<&[i64]> = self.rels[i].iter().map(Vec::as_slice).collect();
                (i as i64, Subspace::span(&amb, &Matrix::from_i64(&Q, amb.dim(), &rows)))
            })
            .collect();
        make_quadratic(&Q, gens, rels, Orientation::Positive, Extent::Periodic(p)).unwrap()
    }
}

fn random_algebra() -> impl Strategy<Value = RandomAlgebra> {
    prop_oneof![(2usize..=3).prop_map(|g| vec![g]), (1usize..=2, 1usize..=2).prop_map(|(a, b)| vec![a.max(b), a])].prop_flat_map(|dims| {
        let p = dims.len();
        let rels: Vec<_> = (0..p)
            .map(|i| {
                let amb = dims[i] * dims[(i + 1) % p];
                prop::collection::vec(prop::collection::vec(-2i64..=2, amb), 0..=amb)
            })
            .collect();
        (Just(dims), rels).prop_map(|(dims, rels)| RandomAlgebra { dims, rels })
    })
}

fn runner() -> TestRunner {
    TestRunner::new_with_rng(Config { cases: 100, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run_cli(args: &[String]) -> String {
    let cli = Cli::try_parse_from(std::iter::once("ngr".to_string()).chain(args.iter().cloned())).unwrap();
    let report = ngr::commands::execute(&cli).unwrap();
    ngr::render(&cli, &report)
}

fn fail<T: std::fmt::Debug>(name: &str, e: proptest::test_runner::TestError<T>) -> String {
    format!("{name}: {e}")
}

fn properties() -> Outcome {
    let helices: Vec<(FDAlgebra<Rationals>, _)> = SPECS
        .iter()
        .map(|&(m, n)| {
            let b = build_b_algebra(&Q, spec(m, n));
            let h = line_bundle_helix(&b, spec(m, n).period() + 2).unwrap();
            (b, h)
        })
        .collect();

    runner()
        .run(&(random_algebra(), 0i64..3), |(r, l)| {
            let k = koszul_complex(&r.build(), l, (l - 3, l)).unwrap();
            prop_assert!(k.complexes.values().all(|c| c.check_square_zero().is_ok()));
            Ok(())
        })
        .map_err(|e| fail("d∘d on Koszul complexes", e))?;
    runner()
        .run(&(0..SPECS.len(), 0i64..8, 0i64..8, -3i64..=3), |(s, i, gap, c)| {
            let (b, h) = &helices[s];
            let (lo, hi) = h.window();
            let i = lo + i % (hi - lo + 1);
            let j = (i + gap % h.period as i64).min(hi);
            let (x, y) = (&h.objects[&i], &h.objects[&j]);
            let hom = hom_complex(b, x, y).unwrap();
            prop_assert!(hom.complex().is_square_zero());
            let h0 = hom.homology(0);
            let f = b.field();
            let mut v = vec![f.zero(); hom.complex().dim(0)];
            for rep in &h0.reps {
                for (acc, r) in v.iter_mut().zip(rep) {
                    f.add_mul_assign(acc, &f.from_i64(c), r);
                }
            }
            let cone = cone(b, x, y, &hom.to_map(b, 0, &v)).unwrap();
            prop_assert!(cone.check_square_zero(b).is_ok());
            if i < j {
                prop_assert!(mutate(b, Direction::Right, x, y).unwrap().check_square_zero(b).is_ok());
            }
            Ok(())
        })
        .map_err(|e| fail("d∘d on Hom complexes and cones", e))?;
    runner()
        .run(&(0..SPECS.len(), -4i64..=0, 0i64..=4), |(s, lo, width)| {
            let (m, n) = SPECS[s];
            let c = dual_dimension_check(&build_ngr(&Q, spec(m, n)).unwrap(), (lo, lo + width)).unwrap();
            prop_assert!(c.passed());
            Ok(())
        })
        .map_err(|e| fail("dual dimension", e))?;
    runner()
        .run(&(random_algebra(), -2i64..2, 0i64..4), |(r, lo, width)| {
            prop_assert!(dual_dimension_check(&r.build(), (lo, lo + width)).unwrap().passed());
            Ok(())
        })
        .map_err(|e| fail("dual dimension on random algebras", e))?;
    runner()
        .run(&(1usize..7, prop::collection::vec(prop::collection::vec(-4i64..=4, 7), 0..7), any::<bool>()), |(n, rows, prime)| {
            let rows: Vec<&[i64]> = rows.iter().map(|r| &r[..n]).collect();
            let amb = BasedSpace::atoms("e", n);
            if prime {
                let f = PrimeField::new(101).unwrap();
                let s = Subspace::span(&amb, &Matrix::from_i64(&f, n, &rows));
                prop_assert_eq!(s.annihilator().annihilator(), s);
            } else {
                let s = Subspace::span(&amb, &Matrix::from_i64(&Q, n, &rows));
                prop_assert_eq!(s.annihilator().annihilator(), s);
            }
            Ok(())
        })
        .map_err(|e| fail("double annihilator", e))?;
    runner()
        .run(&(0usize..3, 0..SPECS.len(), -3i64..=1, 0i64..=2, 1usize..=3), |(cmd, s, lo, width, jobs)| {
            let (m, n) = SPECS[s];
            let name = ["build", "dual", "koszul-check"][cmd];
            let mut args: Vec<String> =
                [name, "--m", &m.to_string(), "--n", &n.to_string(), "--window", &format!("{lo}..{}", lo + width)].map(String::from).to_vec();
            let first = run_cli(&args);
            args.extend(["--jobs".to_string(), jobs.to_string()]);
            prop_assert_eq!(first, run_cli(&args));
            Ok(())
        })
        .map_err(|e| fail("report determinism", e))?;
    Ok("d∘d, dual dimension, double annihilator, determinism: 100 cases each".into())
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("symmetric-algebra recovery", 10, symmetric_recovery),
        ("Koszulity certificate", 120, koszulity),
        ("Frobenius certificate", 60, frobenius),
        ("geometry match", 60, geometry),
        ("helix generation", 120, helix),
        ("mutation sanity on P1", 30, mutation),
        ("k-point classification", 60, points),
        ("Ext algebra", 60, ext),
        ("local ring", 30, local),
        ("property suites", 120, properties),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let out = match out {
            Ok(s) if took > Duration::from_secs(*budget) => Err(format!("{s}, but over the {budget} s budget")),
            other => other,
        };
        let (verdict, detail) = match &out {
            Ok(s) => ("PASS", s),
            Err(s) => ("FAIL", s),
        };
        failed += out.is_err() as usize;
        println!("criterion {:>2} {verdict} {name}: {detail} ({:.1} s)", k + 1, took.as_secs_f64());
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

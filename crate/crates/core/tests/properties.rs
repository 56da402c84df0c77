use std::sync::OnceLock;

use ngr_core::exactla::{BasedSpace, Matrix, Subspace};
use ngr_core::helix::{cone, hom_complex, line_bundle_helix, mutate, Direction, HelixWindow};
use ngr_core::ngrass::{build_b_algebra, build_ngr, FDAlgebra, NgrSpec};
use ngr_core::zalg::{
    dual_dimension_check, hilbert_table, koszul_complex, koszulity_check, make_quadratic, Extent, KoszulOptions, Orientation, QuadraticZAlgebra,
};
use ngr_core::{Field, PrimeField, Rationals};
use proptest::prelude::*;

const SPECS: [(usize, usize); 5] = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)];

fn config() -> ProptestConfig {
    ProptestConfig { cases: 100, ..ProptestConfig::default() }
}

/// Generator dims and relation rows for a 1- or 2-periodic algebra.
#[derive(Clone, Debug)]
struct RandomAlgebra {
    dims: Vec<usize>,
    rels: Vec<Vec<Vec<i64>>>,
}

impl RandomAlgebra {
    fn build<F: Field>(&self, f: &F) -> QuadraticZAlgebra<F> {
        let p = self.dims.len();
        let gens: Vec<(i64, BasedSpace)> = self.dims.iter().enumerate().map(|(i, &g)| (i as i64, BasedSpace::atoms(&format!("x{i}_"), g))).collect();
        let rels = (0..p)
            .map(|i| {
                let amb = BasedSpace::tensor(&[&gens[(i + 1) % p].1, &gens[i].1]);
                let rows: Vec<&[i64]> = self.rels[i].iter().map(Vec::as_slice).collect();
                (i as i64, Subspace::span(&amb, &Matrix::from_i64(f, amb.dim(), &rows)))
            })
            .collect();
        make_quadratic(f, gens, rels, Orientation::Positive, Extent::Periodic(p)).unwrap()
    }
}

fn random_algebra() -> impl Strategy<Value = RandomAlgebra> {
    prop_oneof![(2usize..=3).prop_map(|g| vec![g]), (1usize..=2, 1usize..=2).prop_map(|(a, b)| vec![a.max(b), a]),].prop_flat_map(|dims| {
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

fn helices() -> &'static Vec<(FDAlgebra<Rationals>, HelixWindow<Rationals>)> {
    static H: OnceLock<Vec<(FDAlgebra<Rationals>, HelixWindow<Rationals>)>> = OnceLock::new();
    H.get_or_init(|| {
        SPECS
            .iter()
            .map(|&(m, n)| {
                let spec = NgrSpec::new(m, n).unwrap();
                let b = build_b_algebra(&Rationals, spec);
                let h = line_bundle_helix(&b, spec.period() + 2).unwrap();
                (b, h)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn koszul_differentials_square_to_zero(r in random_algebra(), l in 0i64..3) {
        let a = r.build(&Rationals);
        let k = koszul_complex(&a, l, (l - 3, l)).unwrap();
        for (m, c) in &k.complexes {
            prop_assert!(c.check_square_zero().is_ok(), "m = {m}");
        }
    }

    #[test]
    fn hom_complexes_and_cones_square_to_zero(
        s in 0usize..SPECS.len(),
        i in 0i64..8,
        gap in 0i64..8,
        coefs in prop::collection::vec(-3i64..=3, 8),
    ) {
        let (b, h) = &helices()[s];
        let (lo, hi) = h.window();
        let i = lo + i % (hi - lo + 1);
        let j = (i + gap % h.period as i64).min(hi);
        let (x, y) = (&h.objects[&i], &h.objects[&j]);
        prop_assert!(x.check_square_zero(b).is_ok());
        let hom = hom_complex(b, x, y).unwrap();
        prop_assert!(hom.complex().is_square_zero());
        let f = b.field();
        let h0 = hom.homology(0);
        let mut v = vec![f.zero(); hom.complex().dim(0)];
        for (rep, c) in h0.reps.iter().zip(coefs.iter().cycle()) {
            for (acc, r) in v.iter_mut().zip(rep) {
                f.add_mul_assign(acc, &f.from_i64(*c), r);
            }
        }
        let map = hom.to_map(b, 0, &v);
        prop_assert!(map.is_closed(b, x, y));
        let c = cone(b, x, y, &map).unwrap();
        prop_assert!(c.check_square_zero(b).is_ok());
        prop_assert!(c.minimize(b).check_square_zero(b).is_ok());
        if i < j {
            let r = mutate(b, Direction::Right, x, y).unwrap();
            prop_assert!(r.check_square_zero(b).is_ok());
            let l = mutate(b, Direction::Left, x, y).unwrap();
            prop_assert!(l.check_square_zero(b).is_ok());
        }
    }

    #[test]
    fn dual_dimensions_agree_on_random_algebras(r in random_algebra(), lo in -2i64..2, width in 0i64..4) {
        let a = r.build(&Rationals);
        let c = dual_dimension_check(&a, (lo, lo + width)).unwrap();
        prop_assert!(c.passed(), "{:?}", c.witness());
    }

    #[test]
    fn dual_dimensions_agree_on_grassmannians(s in 0usize..SPECS.len(), lo in -4i64..=0, width in 0i64..=4) {
        let (m, n) = SPECS[s];
        let a = build_ngr(&Rationals, NgrSpec::new(m, n).unwrap()).unwrap();
        let c = dual_dimension_check(&a, (lo, lo + width)).unwrap();
        prop_assert!(c.passed(), "{:?}", c.witness());
    }

    #[test]
    fn double_annihilator_is_the_identity(
        n in 1usize..7,
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 7), 0..7),
        prime in any::<bool>(),
    ) {
        let rows: Vec<&[i64]> = rows.iter().map(|r| &r[..n]).collect();
        let amb = BasedSpace::atoms("e", n);
        if prime {
            let f = PrimeField::new(101).unwrap();
            let s = Subspace::span(&amb, &Matrix::from_i64(&f, n, &rows));
            let ann = s.annihilator();
            prop_assert_eq!(ann.dim() + s.dim(), n);
            prop_assert_eq!(ann.annihilator(), s);
        } else {
            let s = Subspace::span(&amb, &Matrix::from_i64(&Rationals, n, &rows));
            let ann = s.annihilator();
            prop_assert_eq!(ann.dim() + s.dim(), n);
            prop_assert_eq!(ann.annihilator(), s);
        }
    }

    #[test]
    fn certificates_are_deterministic(r in random_algebra(), lo in -2i64..2) {
        let w = (lo, lo + 3);
        let (a, b) = (r.build(&Rationals), r.build(&Rationals));
        prop_assert_eq!(hilbert_table(&a, w).unwrap(), hilbert_table(&b, w).unwrap());
        let opts = KoszulOptions::default();
        prop_assert_eq!(koszulity_check(&a, w, opts).unwrap(), koszulity_check(&b, w, opts).unwrap());
        prop_assert_eq!(dual_dimension_check(&a, w).unwrap(), dual_dimension_check(&b, w).unwrap());
    }
}

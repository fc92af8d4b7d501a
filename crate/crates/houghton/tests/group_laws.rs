mod common;

use houghton::elements::{
    generators, random_element, random_houghton, sample_element, validate, Bounds, ClassSpec, ElementError, GenMap,
    HoughtonMap, RawGenMap,
};
use houghton::lattice::{Line, Point};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn element(n: usize, class: ClassSpec, seed: u64) -> GenMap {
    random_element(n, class, &Bounds::default(), seed).unwrap()
}

// ---------------------------------------------------------------- fixtures

#[test]
fn two_quadrant_example() {
    let g = common::skew2();
    assert_eq!(g.apply(Point::new(6, 5, 1)), Point::new(8, 6, 1));
    assert_eq!((g.x0(), g.y0()), (5, 4));
    assert_eq!(g.m(), &[(2, 1), (-2, -1)]);
    let class = g.classify();
    assert!(class.is_bijective && class.in_gtilde && !class.in_gn && !class.in_m);
    assert_eq!(g.phi(), vec![1, -1]);

    let inv = g.invert().unwrap();
    assert_eq!(inv.m(), &[(-2, -1), (2, 1)]);
    assert_eq!(g.compose(&inv).unwrap(), GenMap::identity(2));

    // Columns (3,2) and (4,2) land on columns 6 and 5 of quadrant 1,
    // moved up by 3 and 2.
    let pi = g.project_pi();
    assert_eq!(pi.m(), &[2, -2]);
    assert_eq!(pi.apply(Line::new(3, 2)), Line::new(6, 1));
    assert_eq!(pi.apply(Line::new(4, 2)), Line::new(5, 1));
    assert_eq!(g.col_image(Line::new(3, 2)).shift, 3);
    assert_eq!(g.col_image(Line::new(4, 2)).shift, 2);
    assert_eq!(g.row_image(Line::new(3, 2)).shift, -2);
    assert!(pi.is_bijective() && g.project_sigma().is_bijective());
}

#[test]
fn three_ray_example() {
    let h = common::houghton3();
    assert_eq!((h.x0(), h.m()), (8, &[2, -1, -1][..]));
    assert!(h.is_bijective());
    let inv = h.invert().unwrap();
    assert_eq!(h.compose(&inv).unwrap(), HoughtonMap::identity(3));
    assert_eq!(inv.compose(&h).unwrap(), HoughtonMap::identity(3));
    for q in 1..=3 {
        for x in 1..40 {
            let p = Line::new(x, q);
            assert_eq!(inv.apply(h.apply(p)), p);
        }
    }
}

#[test]
fn translations() {
    let t1 = GenMap::t(2, 1);
    let t2 = GenMap::t(2, 2);
    assert_eq!(t1.apply(Point::new(2, 3, 1)), Point::new(3, 4, 1));
    let c = t1.classify();
    assert!(c.in_t && c.in_m && !c.is_bijective);
    assert_eq!(t1.invert(), Err(ElementError::NotBijective));
    let t12 = t1.compose(&t2).unwrap();
    assert_eq!(t12.m(), &[(1, 1), (1, 1)]);
    assert_eq!(t12, t2.compose(&t1).unwrap());
    assert_ne!(t1, t2);
    assert_ne!(t1.apply(Point::new(1, 1, 1)), t2.apply(Point::new(1, 1, 1)));
    let pi = t1.project_pi();
    assert_eq!(pi.apply(Line::new(4, 1)), Line::new(5, 1));
    assert_eq!(pi.apply(Line::new(4, 2)), Line::new(4, 2));
    assert_eq!(t1.project_sigma().apply(Line::new(4, 1)), Line::new(5, 1));
}

#[test]
fn identity_everywhere() {
    let id = GenMap::identity(3);
    for p in common::window(3, 6) {
        assert_eq!(id.apply(p), p);
    }
    assert_eq!(id.phi(), vec![0, 0, 0]);
    assert_eq!(id.invert().unwrap(), id);
    assert_eq!(id.project_pi(), HoughtonMap::identity(3));
    assert_eq!(id.project_sigma(), HoughtonMap::identity(3));
    let c = validate(&common::raw_fixture("identity.json")).unwrap();
    assert!(c.in_t && c.in_m && c.in_gn && c.in_gtilde && c.is_bijective);
}

#[test]
fn colliding_table_is_rejected() {
    match validate(&common::raw_fixture("colliding.json")) {
        Err(ElementError::NotInjective { first, second, image }) => {
            assert_eq!(image, Point::new(1, 1, 1));
            assert_ne!(first, second);
        }
        other => panic!("expected NotInjective, got {other:?}"),
    }
}

#[test]
fn malformed_input() {
    let mut raw = GenMap::t(2, 1).to_raw();
    raw.m.pop();
    assert!(matches!(GenMap::try_from_raw(&raw), Err(ElementError::Malformed(_))));
    let err = serde_json::from_str::<RawGenMap>(
        r#"{"n":1,"x0":1,"y0":1,"m":[[0,0]],"colmap":[],"rowmap":[],"rect":[],"extra":1}"#,
    );
    assert!(err.is_err());
}

// ------------------------------------------------------------- exact sequence

#[test]
fn phi_generators_span_the_sum_zero_lattice() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=4 {
        let gens: Vec<GenMap> = (1..n).map(|i| generators::horizontal_shift(n, i, n)).collect();
        for (i, g) in gens.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            e[n - 1] = -1;
            assert_eq!(g.phi(), e);
            assert!(g.classify().in_gtilde);
        }
        for _ in 0..10 {
            let mut v: Vec<i64> = (0..n - 1).map(|_| rand::Rng::gen_range(&mut rng, -3..=3)).collect();
            v.push(-v.iter().sum::<i64>());
            let mut g = GenMap::identity(n);
            for (i, &c) in v[..n - 1].iter().enumerate() {
                let step = if c >= 0 { gens[i].clone() } else { gens[i].invert().unwrap() };
                for _ in 0..c.abs() {
                    g = g.compose(&step).unwrap();
                }
            }
            assert_eq!(g.phi(), v);
        }
    }
}

// ---------------------------------------------------------------- properties

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apply_matches_the_tables(seed in any::<u64>(), n in 1..=3usize) {
        let g = element(n, ClassSpec::GTilde, seed);
        let raw = g.to_raw();
        for p in common::window(n, common::safe_width(&[&g])) {
            prop_assert_eq!(g.apply(p), common::raw_apply(&raw, p));
        }
        let json = serde_json::to_string(&raw).unwrap();
        let back: RawGenMap = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(GenMap::try_from_raw(&back).unwrap(), g);
    }

    #[test]
    fn composition_is_pointwise(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), n in 1..=3usize) {
        let g = element(n, ClassSpec::GTilde, a);
        let h = element(n, ClassSpec::Monoid, b);
        let k = element(n, ClassSpec::Gn, c);
        let gh = g.compose(&h).unwrap();
        for p in common::window(n, common::safe_width(&[&g, &h])) {
            prop_assert_eq!(gh.apply(p), h.apply(g.apply(p)));
        }
        prop_assert_eq!(gh.compose(&k).unwrap(), g.compose(&h.compose(&k).unwrap()).unwrap());
        prop_assert_eq!(g.compose(&GenMap::identity(n)).unwrap(), g.clone());
        prop_assert_eq!(GenMap::identity(n).compose(&g).unwrap(), g);
    }

    #[test]
    fn inverses(seed in any::<u64>(), n in 1..=3usize) {
        let g = element(n, ClassSpec::GTilde, seed);
        let inv = g.invert().unwrap();
        prop_assert_eq!(g.compose(&inv).unwrap(), GenMap::identity(n));
        prop_assert_eq!(inv.compose(&g).unwrap(), GenMap::identity(n));
        prop_assert_eq!(inv.invert().unwrap(), g.clone());
        for p in common::window(n, common::safe_width(&[&g])) {
            prop_assert_eq!(inv.apply(g.apply(p)), p);
        }
    }

    #[test]
    fn projections_are_homomorphisms(a in any::<u64>(), b in any::<u64>(), n in 1..=3usize) {
        let g = element(n, ClassSpec::GTilde, a);
        let h = element(n, ClassSpec::GTilde, b);
        let gh = g.compose(&h).unwrap();
        prop_assert_eq!(gh.project_pi(), g.project_pi().compose(&h.project_pi()).unwrap());
        prop_assert_eq!(gh.project_sigma(), g.project_sigma().compose(&h.project_sigma()).unwrap());
        let sum: Vec<i64> = g.phi().iter().zip(h.phi()).map(|(x, y)| x + y).collect();
        prop_assert_eq!(gh.phi(), sum);
        prop_assert_eq!(g.phi().iter().sum::<i64>(), 0);
    }

    #[test]
    fn phi_kernel_is_gn(seed in any::<u64>(), n in 1..=4usize) {
        let g = element(n, ClassSpec::GTilde, seed);
        let diagonal = g.m().iter().all(|(a, b)| a == b);
        prop_assert_eq!(g.phi().iter().all(|&v| v == 0), g.classify().in_gn);
        prop_assert_eq!(g.classify().in_gn, diagonal);
    }

    #[test]
    fn houghton_group_laws(a in any::<u64>(), n in 1..=4usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(a);
        let f = random_houghton(&mut rng, n, 6, 4);
        let g = random_houghton(&mut rng, n, 6, 4);
        let h = random_houghton(&mut rng, n, 6, 4);
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.compose(&h).unwrap(), f.compose(&g.compose(&h).unwrap()).unwrap());
        prop_assert_eq!(f.compose(&f.invert().unwrap()).unwrap(), HoughtonMap::identity(n));
        prop_assert_eq!(f.compose(&HoughtonMap::identity(n)).unwrap(), f.clone());
        prop_assert_eq!(f.m().iter().sum::<i64>(), 0);
        for q in 1..=n {
            for x in 1..30 {
                let p = Line::new(x, q);
                prop_assert_eq!(fg.apply(p), g.apply(f.apply(p)));
            }
        }
    }
}

#[test]
fn shifts_on_disjoint_rays_commute() {
    let a = generators::ray_shift(4, 1, 2);
    let b = generators::ray_shift(4, 3, 4);
    assert_eq!(a.compose(&b).unwrap(), b.compose(&a).unwrap());
}

#[test]
fn sampling_is_deterministic_and_valid() {
    let b = Bounds::default();
    assert_eq!(element(3, ClassSpec::Monoid, 5), element(3, ClassSpec::Monoid, 5));
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in 0..1000 {
        let n = 1 + k % 3;
        let class = [ClassSpec::Translation, ClassSpec::Monoid, ClassSpec::Gn, ClassSpec::GTilde][k % 4];
        let g = sample_element(&mut rng, n, class, &b).unwrap();
        let c = validate(&g.to_raw()).unwrap();
        match class {
            ClassSpec::Translation => {
                assert!(c.in_t);
                assert!(g.m().iter().map(|p| p.0).sum::<i64>() <= b.max_grade);
            }
            ClassSpec::Monoid => assert!(c.in_m),
            ClassSpec::Gn => assert!(c.in_gn),
            ClassSpec::GTilde => assert!(c.in_gtilde),
        }
        assert!(g.x0() <= b.max_threshold && g.y0() <= b.max_threshold);
    }
    let bad = Bounds { max_threshold: 0, ..b };
    assert!(matches!(random_element(2, ClassSpec::Gn, &bad, 0), Err(ElementError::InfeasibleBounds(_))));
}

#[test]
fn samples_are_not_degenerate() {
    let gs: Vec<GenMap> = (0..100).map(|s| element(2, ClassSpec::GTilde, s)).collect();
    assert!(gs.iter().filter(|g| g.phi() != vec![0, 0]).count() >= 10);
    assert!(gs.iter().filter(|g| !g.rect().is_empty()).count() >= 30);
    let ms: Vec<GenMap> = (0..100).map(|s| element(2, ClassSpec::Monoid, s)).collect();
    assert!(ms.iter().filter(|g| !g.classify().in_t && g.m().iter().any(|p| p.0 > 0)).count() >= 30);
}

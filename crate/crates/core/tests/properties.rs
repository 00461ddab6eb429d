mod common;

use erpoly::harness::{image_size, FiniteSet};
use erpoly::poly::{interpolate, uni_reduce, MultiPoly, Rational, UniPoly};
use erpoly::special::{analyze, analyze_with, ratio_independent_of, AnalysisConfig, Kind};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_special, rat, Shape};

const D: usize = 3;

fn names() -> Vec<String> {
    MultiPoly::default_names(D)
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n) / rat(d))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::array::uniform3(0u32..=3), small_rat()), 0..6).prop_map(|terms| {
        let names = names();
        terms.into_iter().fold(MultiPoly::zero(&names), |acc, (e, c)| {
            let m = (0..D).fold(MultiPoly::constant(&names, c), |t, i| &t * &MultiPoly::var(&names, i).pow(e[i]));
            &acc + &m
        })
    })
}

fn uni() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rat(), 1..6).prop_map(UniPoly::new)
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-1000i64..=1000, 1i64..=7).prop_map(|(n, d)| rat(n) / rat(d)), D)
}

fn int_set() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(-20i64..=20, 1..7).prop_map(|s| s.into_iter().collect())
}

fn set(values: &[i64]) -> FiniteSet {
    FiniteSet::from_values(values.iter().map(|&v| rat(v)).collect()).unwrap()
}

/// Sends slot `i` to `perm[i]`.
fn permuted(f: &MultiPoly, perm: &[usize]) -> MultiPoly {
    f.remap(perm, f.names())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn terms_are_strictly_ascending(a in poly(), b in poly()) {
        let p = &a * &b;
        prop_assert!(p.terms().windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(p.terms().iter().all(|(_, c)| *c != rat(0)));
    }

    #[test]
    fn derivative_is_a_derivation(a in poly(), b in poly(), i in 0..D) {
        let da = a.partial_derivative(i).unwrap();
        let db = b.partial_derivative(i).unwrap();
        prop_assert_eq!((&a * &b).partial_derivative(i).unwrap(), &(&da * &b) + &(&a * &db));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly(), pt in point()) {
        let (va, vb) = (a.evaluate(&pt).unwrap(), b.evaluate(&pt).unwrap());
        prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), &va * &vb);
        prop_assert_eq!((&a + &b).evaluate(&pt).unwrap(), va + vb);
    }

    #[test]
    fn restriction_agrees_with_evaluation(a in poly(), pt in point(), keep in 0..D) {
        let u = a.restrict_to(keep, &pt).unwrap();
        prop_assert_eq!(u.eval(&pt[keep]), a.evaluate(&pt).unwrap());
    }

    #[test]
    fn reduction_is_idempotent(n in uni(), d in uni().prop_filter("nonzero", |d| !d.is_zero())) {
        let once = uni_reduce(&n, &d).unwrap();
        let twice = uni_reduce(once.num(), once.den()).unwrap();
        prop_assert_eq!(once.num(), twice.num());
        prop_assert_eq!(once.den(), twice.den());
        // Same function: n * den' == d * num'.
        prop_assert_eq!(n.mul(once.den()), d.mul(once.num()));
    }

    #[test]
    fn interpolation_round_trip(p in uni(), shift in -5i64..=5) {
        let k = p.degree().unwrap_or(0) + 1;
        let pts: Vec<(Rational, Rational)> = (0..k as i64).map(|x| {
            let x = rat(x + shift);
            let y = p.eval(&x);
            (x, y)
        }).collect();
        prop_assert_eq!(interpolate(&pts).unwrap(), p);
    }

    #[test]
    fn image_size_grows_with_the_sets(f in poly(), a in int_set(), b in int_set(), c in int_set(), extra in 21i64..=30) {
        let sets = [set(&a), set(&b), set(&c)];
        let base = image_size(&f, &sets).unwrap();
        let mut bigger = a.clone();
        bigger.push(extra);
        let grown = image_size(&f, &[set(&bigger), set(&b), set(&c)]).unwrap();
        prop_assert!(grown >= base);
        prop_assert!(base <= a.len() * b.len() * c.len());
    }

    #[test]
    fn image_size_ignores_variable_order(f in poly(), a in int_set(), b in int_set(), c in int_set()) {
        let base = image_size(&f, &[set(&a), set(&b), set(&c)]).unwrap();
        // Slot 0 -> 2, 1 -> 0, 2 -> 1, so the sets rotate the same way.
        let g = permuted(&f, &[2, 0, 1]);
        prop_assert_eq!(image_size(&g, &[set(&b), set(&c), set(&a)]).unwrap(), base);
    }

    #[test]
    fn ratio_test_agrees_with_numeric_cross_check(f in poly(), pts in prop::collection::vec(point(), 3), kk in prop::collection::vec(-1000i64..=1000, 3)) {
        prop_assume!(f.depends_on(0) && f.depends_on(1));
        let holds = ratio_independent_of(&f, 0, 1, 2).unwrap().holds();
        let d0 = f.partial_derivative(0).unwrap();
        let d1 = f.partial_derivative(1).unwrap();
        // The ratio is free of x3 iff d0(x3) d1(x3') = d0(x3') d1(x3).
        let mismatches = pts.iter().zip(&kk).filter(|(pt, &k)| {
            let mut moved = (*pt).clone();
            moved[2] = rat(k);
            let lhs = d0.evaluate(pt).unwrap() * d1.evaluate(&moved).unwrap();
            let rhs = d0.evaluate(&moved).unwrap() * d1.evaluate(pt).unwrap();
            lhs != rhs
        }).count();
        if holds {
            prop_assert_eq!(mismatches, 0);
        } else {
            // A nonzero polynomial of this size vanishing at three random points is
            // astronomically unlikely.
            prop_assert!(mismatches > 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn special_forms_round_trip(seed in any::<u64>(), multiplicative in any::<bool>()) {
        let shape = if multiplicative { Shape::Multiplicative } else { Shape::Additive };
        let inst = random_special(&mut ChaCha8Rng::seed_from_u64(seed), shape);
        let d = analyze(&inst.f).unwrap();
        let expected = if multiplicative { Kind::Multiplicative } else { Kind::Additive };
        prop_assert_eq!(d.kind(), expected);
        prop_assert_eq!(d.recompose(inst.f.names()), Some(inst.f.clone()));
    }

    #[test]
    fn kind_survives_affine_rescaling(seed in any::<u64>(), multiplicative in any::<bool>(), c in small_rat().prop_filter("nonzero", |c| *c != rat(0)), e in small_rat()) {
        let shape = if multiplicative { Shape::Multiplicative } else { Shape::Additive };
        let inst = random_special(&mut ChaCha8Rng::seed_from_u64(seed), shape);
        let g = &inst.f.scale(&c) + &MultiPoly::constant(inst.f.names(), e);
        let (df, dg) = (analyze(&inst.f).unwrap(), analyze(&g).unwrap());
        prop_assert_eq!(df.kind(), dg.kind());
        prop_assert_eq!(dg.recompose(g.names()), Some(g));
    }

    #[test]
    fn kind_survives_permuting_variables(seed in any::<u64>(), multiplicative in any::<bool>(), rot in 1usize..5) {
        let shape = if multiplicative { Shape::Multiplicative } else { Shape::Additive };
        let inst = random_special(&mut ChaCha8Rng::seed_from_u64(seed), shape);
        let d = inst.f.nvars();
        let perm: Vec<usize> = (0..d).map(|i| (i + rot) % d).collect();
        let g = permuted(&inst.f, &perm);
        let dg = analyze(&g).unwrap();
        prop_assert_eq!(analyze(&inst.f).unwrap().kind(), dg.kind());
        prop_assert_eq!(dg.recompose(g.names()), Some(g));
    }

    #[test]
    fn non_special_verdicts_are_stable_under_permutation(f in poly(), rot in 1usize..3) {
        let perm: Vec<usize> = (0..D).map(|i| (i + rot) % D).collect();
        let g = permuted(&f, &perm);
        let (df, dg) = (analyze(&f).unwrap(), analyze(&g).unwrap());
        prop_assert_eq!(df.kind(), dg.kind());
        if let Some(w) = dg.witness() {
            prop_assert!(w.recheck());
        }
    }

    #[test]
    fn analysis_is_deterministic(f in poly(), seed in any::<u64>()) {
        let config = AnalysisConfig { seed, ..AnalysisConfig::default() };
        let a = analyze_with(&f, &config).unwrap().decomposition.to_json(f.names());
        let b = analyze_with(&f, &config).unwrap().decomposition.to_json(f.names());
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

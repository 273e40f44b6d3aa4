mod common;

use common::{Naive, NaiveMap};
use degseq_core::gallery;
use degseq_core::growth::{self, GrowthConfig, GrowthLabel};
use degseq_core::dynamics::iterate_degrees_squaring;
use degseq_core::{
    gcd, gcd_many, iterate_degrees, maps_equal, monoid_ball_degrees, period_detect, AffineMap, Budget, DegreeSequence,
    Field, Monomial, Polynomial, ProjectiveMap,
};
use proptest::prelude::*;

fn f7() -> Field {
    Field::prime(7).unwrap()
}

/// Exponent vectors in `nvars` variables of total degree exactly `k`.
fn monomials_of_degree(nvars: usize, k: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in monomials_of_degree(nvars - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn build(field: Field, nvars: usize, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    let terms = terms.iter().map(|(e, c)| (Monomial::new(e), field.from_i64(*c)));
    Polynomial::from_terms(field, nvars, terms).unwrap()
}

/// A polynomial over F_7 in 3 variables of degree at most 4.
fn poly_f7() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=4, 3), 0i64..7), 0..8).prop_map(|raw| {
        let terms: Vec<(Vec<u32>, i64)> = raw
            .into_iter()
            .map(|(mut e, c)| {
                while e.iter().sum::<u32>() > 4 {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    e[i] -= 1;
                }
                (e, c)
            })
            .collect();
        build(f7(), 3, &terms)
    })
}

/// Three forms of a common degree `1..=max_degree` over F_7; may fail to be a map.
fn raw_map(max_degree: u32) -> impl Strategy<Value = Vec<Polynomial>> {
    (1..=max_degree).prop_flat_map(|k| {
        let monos = monomials_of_degree(3, k);
        let n = monos.len();
        prop::collection::vec(prop::collection::vec(0i64..7, n), 3).prop_map(move |coeffs| {
            coeffs
                .iter()
                .map(|cs| {
                    let terms: Vec<(Vec<u32>, i64)> = monos.iter().cloned().zip(cs.iter().copied()).collect();
                    build(f7(), 3, &terms)
                })
                .collect()
        })
    })
}

fn map_f7(max_degree: u32) -> impl Strategy<Value = ProjectiveMap> {
    raw_map(max_degree).prop_filter_map("not a map", |c| ProjectiveMap::new(c).ok())
}

fn degree(p: &Polynomial) -> Option<u64> {
    p.total_degree().finite()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_is_additive(a in poly_f7(), b in poly_f7()) {
        let prod = a.mul(&b).unwrap();
        match (degree(&a), degree(&b)) {
            (Some(x), Some(y)) => prop_assert_eq!(degree(&prod), Some(x + y)),
            _ => prop_assert!(prod.is_zero()),
        }
        prop_assert_eq!(Naive::from_poly(&prod), Naive::from_poly(&a).mul(&Naive::from_poly(&b)));
    }

    #[test]
    fn addition_commutes(a in poly_f7(), b in poly_f7()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(Naive::from_poly(&a.add(&b).unwrap()), Naive::from_poly(&a).add(&Naive::from_poly(&b)));
    }

    #[test]
    fn gcd_divides_and_keeps_common_factors(a in poly_f7(), b in poly_f7(), c in poly_f7()) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (ac, bc) = (a.mul(&c).unwrap(), b.mul(&c).unwrap());
        let g = gcd(&ac, &bc).unwrap();
        prop_assert!(ac.is_divisible_by(&g).unwrap());
        prop_assert!(bc.is_divisible_by(&g).unwrap());
        prop_assert!(g.is_divisible_by(&c).unwrap());
    }

    #[test]
    fn substituting_variables_is_identity(a in poly_f7()) {
        let vars: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(f7(), 3, i)).collect();
        prop_assert_eq!(a.substitute(&vars).unwrap(), a);
    }

    #[test]
    fn composition_is_submultiplicative(f in map_f7(3), g in map_f7(3)) {
        let raw = NaiveMap::from_polys(f.components()).compose(&NaiveMap::from_polys(g.components()));
        prop_assume!(raw.0.iter().any(|p| !p.is_zero()));
        let c = f.compose(&g).unwrap();
        prop_assert!(c.map.degree() <= f.degree() * g.degree());
        prop_assert_eq!(c.drop, f.degree() * g.degree() - c.map.degree());
        prop_assert_eq!(raw.degree() as u64 - c.drop, c.map.degree());
        let res = NaiveMap::from_polys(c.map.components());
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(raw.0[i].mul(&res.0[j]), raw.0[j].mul(&res.0[i]));
            }
        }
    }

    #[test]
    fn reduction_leaves_coprime_components(raw in raw_map(3), factor in poly_f7()) {
        prop_assume!(!factor.is_zero() && factor.is_homogeneous());
        let scaled: Vec<Polynomial> = raw.iter().map(|p| p.mul(&factor).unwrap()).collect();
        if let Ok(r) = ProjectiveMap::reduce(scaled) {
            prop_assert!(gcd_many(r.map.components()).unwrap().is_constant());
            prop_assert!(r.removed_degree >= degree(&factor).unwrap());
            let direct = ProjectiveMap::new(raw).unwrap();
            prop_assert!(maps_equal(&direct, &r.map));
        }
    }

    #[test]
    fn composition_is_associative(f in map_f7(2), g in map_f7(2), h in map_f7(2)) {
        let left = f.compose(&g).and_then(|fg| fg.map.compose(&h));
        let right = g.compose(&h).and_then(|gh| f.compose(&gh.map));
        if let (Ok(l), Ok(r)) = (left, right) {
            prop_assert!(maps_equal(&l.map, &r.map));
        }
    }

    #[test]
    fn homogenize_then_dehomogenize(a in poly_f7(), b in poly_f7()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let f = AffineMap::new(vec![a.clone(), b.clone(), Polynomial::var(f7(), 3, 2)]).unwrap();
        prop_assert_eq!(f.homogenize().unwrap().dehomogenize().unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn squaring_agrees_with_left_multiplication(f in map_f7(2)) {
        let budget = Budget::default();
        if let (Ok(a), Ok(b)) = (iterate_degrees(&f, 6, budget), iterate_degrees_squaring(&f, 6, budget)) {
            prop_assert_eq!(&a.degrees, &b.degrees);
            prop_assert!(a.is_consistent());
        }
    }

    #[test]
    fn single_generator_ball(f in map_f7(2)) {
        let budget = Budget::default();
        if let (Ok(ball), Ok(seq)) = (monoid_ball_degrees(std::slice::from_ref(&f), 4, budget), iterate_degrees(&f, 4, budget)) {
            let mut best = 1;
            for (m, d) in seq.degrees.iter().enumerate() {
                best = best.max(*d);
                prop_assert_eq!(ball.max_degrees[m], best);
            }
        }
    }

    #[test]
    fn periodic_maps_have_bounded_degrees(rows in prop::collection::vec(prop::collection::vec(0u32..=1, 3), 3)) {
        let f = match ProjectiveMap::monomial(Field::prime(3).unwrap(), &rows) {
            Ok(f) if f.degree() > 0 => f,
            _ => return Ok(()),
        };
        if let Ok(Some(p)) = period_detect(&f, 12, Budget::default()) {
            // Long enough for the classifier's minimum window.
            let n = (p.preperiod + 3 * p.period).max(12);
            let seq = iterate_degrees(&f, n, Budget::default()).unwrap();
            prop_assume!(seq.degrees.iter().all(|&d| d > 0));
            let top = *seq.degrees[..p.preperiod + p.period].iter().max().unwrap();
            prop_assert!(seq.degrees.iter().all(|&d| d <= top));
            let report = growth::classify_growth(&DegreeSequence { period: Some(p), ..seq }, &GrowthConfig::default()).unwrap();
            prop_assert_eq!(report.label, GrowthLabel::Bounded);
        }
    }

    #[test]
    fn low_degree_count_matches_filter(degrees in prop::collection::vec(1u64..50, 0..40), k in 0u64..60) {
        let want = degrees.iter().filter(|&&d| d <= k).count();
        prop_assert_eq!(growth::count_low_degree_iterates(&degrees, k), want);
    }
}

fn classify(seq: &[u64]) -> growth::GrowthReport {
    growth::classify_degrees(seq, None, false, &GrowthConfig::default()).unwrap()
}

#[test]
fn power_laws_are_classified() {
    for k in 0..=4u32 {
        for c in [1u64, 2, 5] {
            let seq: Vec<u64> = (1..=60u64).map(|n| c * n.pow(k)).collect();
            let r = classify(&seq);
            if k == 0 {
                assert_eq!(r.label, GrowthLabel::Bounded);
                assert_eq!(r.dpol, Some(0.0));
            } else {
                assert_eq!(r.label, GrowthLabel::Polynomial, "k = {}, c = {}", k, c);
                assert!((r.dpol.unwrap() - k as f64).abs() <= 0.1, "k = {}, c = {}: {:?}", k, c, r.dpol);
            }
        }
    }
}

#[test]
fn exponential_laws_are_classified() {
    for (base, c) in [(2u64, 1u64), (2, 5), (3, 2)] {
        let seq: Vec<u64> = (1..=36u32).map(|n| c * base.pow(n)).collect();
        let r = classify(&seq);
        assert_eq!(r.label, GrowthLabel::Exponential);
        assert!((r.lambda.unwrap() - base as f64).abs() <= 0.05, "{:?}", r.lambda);
    }
}

#[test]
fn degaut_inequality_grid() {
    for d in 2..=6 {
        for k in 1..=50 {
            assert!(growth::degaut_bound(d, k).unwrap().holds, "d = {}, K = {}", d, k);
        }
    }
    assert!(growth::degaut_bound(1, 1).unwrap().boundary);
}

#[test]
fn rational_and_residue_degrees_agree() {
    let fp = Field::prime(101).unwrap();
    for (q, p) in gallery::list_gallery(Field::Rational).into_iter().zip(gallery::list_gallery(fp)) {
        // exaut over Q grows too fast for the full range; these lengths keep it cheap.
        let n = match q.name.as_str() {
            "henon" => 8,
            s if s.starts_with("exaut") => 6,
            _ => 10,
        };
        let a = iterate_degrees(&q.map.projective().unwrap(), n, Budget::default()).unwrap();
        let b = iterate_degrees(&p.map.projective().unwrap(), n, Budget::default()).unwrap();
        assert_eq!(a.degrees, b.degrees, "{}", q.name);
    }
}

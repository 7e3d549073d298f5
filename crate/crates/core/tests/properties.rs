//! Invariant suites: group-law axioms on random triples, the classical
//! identity between the model invariants, valuation arithmetic in bulk,
//! Hasse bounds on every computed trace, extension-field point counts
//! against brute force, and agreement of the valuation route with the
//! formal-group route on every kernel point tested.

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unram_core::arith::{factorize, int, rat, vp, FactorEffort, Int, Valuation};
use unram_core::curve::torsion::torsion_subgroup;
use unram_core::curve::{IsomorphismData, RationalPoint, WeierstrassModel};
use unram_core::finite_field::{extension_count, reduce_curve, reduce_point, FqCtx};
use unram_core::formal::e1_divisibility;

fn curve(ainvs: [i64; 5]) -> Arc<WeierstrassModel> {
    WeierstrassModel::from_int_coeffs(ainvs).unwrap()
}

fn corpus() -> Vec<Arc<WeierstrassModel>> {
    [
        [0, -1, 1, -7820, -263580],
        [0, -1, 1, -10, -20],
        [0, -1, 1, 0, 0],
        [1, 0, 1, 4, -6],
        [1, 1, 1, -10, -10],
        [0, 0, 1, 0, -7],
        [0, 0, 1, 0, 0],
        [0, 0, 1, -1, 0],
        [0, 1, 1, 0, 0],
        [1, -1, 0, -2, -1],
        [0, 1, 1, -2, 0],
        [0, 0, 1, -7, 6],
        [0, 0, 0, -2401, 1],
    ]
    .into_iter()
    .map(curve)
    .collect()
}

#[test]
fn group_law_axioms_on_random_triples() {
    // Free part: multiples of (0, 0) on the rank-one curve of conductor 37.
    let e37 = curve([0, 0, 1, -1, 0]);
    let g = RationalPoint::from_ints(&e37, 0, 0).unwrap();
    let mut multiples = vec![RationalPoint::infinity(&e37)];
    let mut acc = RationalPoint::infinity(&e37);
    for _ in 0..6 {
        acc = acc.add(&g);
        multiples.push(acc.neg());
        multiples.push(acc.clone());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut triples = 0usize;
    for _ in 0..60 {
        let p = &multiples[rng.gen_range(0..multiples.len())];
        let q = &multiples[rng.gen_range(0..multiples.len())];
        let r = &multiples[rng.gen_range(0..multiples.len())];
        assert_eq!(p.add(q).add(r), p.add(&q.add(r)), "associativity");
        assert_eq!(p.add(q), q.add(p), "commutativity");
        assert_eq!(p.add(&RationalPoint::infinity(&e37)), *p, "identity");
        assert!(p.add(&p.neg()).is_infinity(), "inverse");
        triples += 1;
    }

    // Non-cyclic torsion: every triple from the full torsion subgroup.
    let e15 = curve([1, 1, 1, -10, -10]);
    let torsion = torsion_subgroup(&e15).unwrap();
    assert_eq!(torsion.invariants, vec![2, 4]);
    for p in &torsion.points {
        for q in &torsion.points {
            assert!(torsion.contains(&p.add(q)), "closure");
            for r in &torsion.points {
                assert_eq!(p.add(q).add(r), p.add(&q.add(r)), "associativity");
                triples += 1;
            }
        }
    }
    assert!(triples >= 100, "only {triples} triples exercised");
}

proptest! {
    #[test]
    fn model_invariants_satisfy_the_classical_identity(a in prop::array::uniform5(-30i64..=30)) {
        if let Ok(m) = WeierstrassModel::from_int_coeffs(a) {
            let c4 = m.c4();
            let c6 = m.c6();
            let disc = m.discriminant();
            prop_assert_eq!(&c4 * &c4 * &c4 - &c6 * &c6, rat(1728, 1) * &disc);
            let b2 = m.b2();
            let b4 = m.b4();
            let b6 = m.b6();
            let b8 = m.b8();
            prop_assert_eq!(rat(4, 1) * &b8, &b2 * &b6 - &b4 * &b4);
            prop_assert_eq!(m.j_invariant() * disc, &c4 * &c4 * &c4);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]
    #[test]
    fn vp_is_multiplicative_and_ultrametric(
        xn in -1_000_000i64..=1_000_000,
        xd in 1i64..=1_000_000,
        yn in -1_000_000i64..=1_000_000,
        yd in 1i64..=1_000_000,
        which in 0usize..5,
    ) {
        let p = int([3, 5, 7, 13, 97][which]);
        let x = rat(xn, xd);
        let y = rat(yn, yd);
        let vx = vp(&x, &p).unwrap();
        let vy = vp(&y, &p).unwrap();
        prop_assert_eq!(vp(&(&x * &y), &p).unwrap(), vx + vy);
        let vsum = vp(&(&x + &y), &p).unwrap();
        prop_assert!(vsum >= vx.min(vy));
        if vx != vy {
            prop_assert_eq!(vsum, vx.min(vy));
        }
    }
}

#[test]
fn hasse_bound_on_every_computed_trace() {
    let mut sieve = vec![true; 201];
    let primes: Vec<u64> = (2..=200u64)
        .filter(|&q| {
            if !sieve[q as usize] {
                return false;
            }
            let mut m = q * q;
            while m <= 200 {
                sieve[m as usize] = false;
                m += q;
            }
            true
        })
        .collect();

    let mut traces = 0usize;
    for model in corpus() {
        for &q in &primes {
            let Ok(ctx) = FqCtx::prime(q) else { continue };
            let Ok(reduced) = reduce_curve(&model, &ctx) else { continue };
            let Ok(t) = reduced.trace_of_frobenius() else { continue };
            assert!(
                t * t <= 4 * q as i64,
                "Hasse violated at {q}: trace {t} on {:?}",
                model
            );
            traces += 1;
        }
    }
    assert!(traces >= 500, "only {traces} traces computed");
}

#[test]
fn extension_counts_match_brute_force_over_f5() {
    for model in [curve([0, 0, 1, -1, 0]), curve([0, 1, 1, 0, 0]), curve([0, -1, 1, 0, 0])] {
        let base = reduce_curve(&model, &FqCtx::prime(5).unwrap()).unwrap();
        let a5 = base.trace_of_frobenius().unwrap();
        for d in 1..=5 {
            let ctx = FqCtx::new(5, d).unwrap();
            let reduced = reduce_curve(&model, &ctx).unwrap();
            let brute = reduced.count_points().unwrap();
            assert_eq!(extension_count(a5, 5, d).unwrap(), brute, "d = {d}");
            if d <= 3 {
                assert_eq!(reduced.points().unwrap().len() as u64, brute, "enumeration, d = {d}");
            }
        }
    }
}

#[test]
fn reduction_is_a_homomorphism() {
    let e37 = curve([0, 0, 1, -1, 0]);
    let g = RationalPoint::from_ints(&e37, 0, 0).unwrap();
    let mut points = vec![RationalPoint::infinity(&e37)];
    let mut acc = RationalPoint::infinity(&e37);
    for _ in 0..6 {
        acc = acc.add(&g);
        points.push(acc.neg());
        points.push(acc.clone());
    }
    for q in [3u64, 5, 7, 11, 13, 17] {
        let ctx = FqCtx::prime(q).unwrap();
        let reduced = reduce_curve(&e37, &ctx).unwrap();
        let images: Vec<_> =
            points.iter().map(|p| reduce_point(p, &reduced).unwrap()).collect();
        for (p, pbar) in points.iter().zip(&images) {
            for (r, rbar) in points.iter().zip(&images) {
                assert_eq!(
                    reduce_point(&p.add(r), &reduced).unwrap(),
                    reduced.add_points(pbar, rbar),
                    "at {q}"
                );
            }
        }
    }
}

#[test]
fn factorisation_round_trips() {
    let effort = FactorEffort::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1729);
    for _ in 0..200 {
        let n = int(rng.gen_range(2i64..=10_000_000_000));
        let f = factorize(&n, &effort).unwrap();
        assert!(f.complete, "{n} left a cofactor");
        assert_eq!(f.value(), n);
        let mut last = Int::from(1);
        for (q, e) in &f.factors {
            assert!(*q > last, "factors out of order for {n}");
            assert!(*e >= 1);
            last = q.clone();
        }
    }
}

#[test]
fn isomorphisms_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let e = curve([0, 0, 1, -1, 0]);
    let g = RationalPoint::from_ints(&e, 0, 0).unwrap();
    let p = g.add(&g.double());
    for _ in 0..100 {
        let u = rat(*[1, -1, 2, 3, 1, 2].get(rng.gen_range(0..6)).unwrap(), rng.gen_range(1..=3));
        let iso = IsomorphismData::new(
            u,
            rat(rng.gen_range(-5..=5), 1),
            rat(rng.gen_range(-5..=5), 1),
            rat(rng.gen_range(-5..=5), 1),
        );
        let moved_model = iso.apply(&e);
        let moved = iso.transport(&p, &moved_model);
        let back_model = iso.inverse().apply(&moved_model);
        assert_eq!(back_model, e);
        assert_eq!(iso.inverse().transport(&moved, &back_model), p);
        let (x, y) = moved.coords().unwrap();
        assert!(moved_model.contains(x, y));
    }
}

/// For every kernel point, "v_p(x/y) ≥ n + 1" (the valuation route) must
/// match membership as computed through the formal logarithm, over ≥ 200
/// point/level pairs with both accepted and rejected outcomes represented.
#[test]
fn the_valuation_route_agrees_with_the_formal_logarithm() {
    let sources: [([i64; 5], [i64; 2], i64, u32); 6] = [
        ([0, 0, 1, -1, 0], [0, 0], 3, 10),
        ([0, 0, 1, -1, 0], [0, 0], 5, 10),
        ([0, 1, 1, -2, 0], [0, 0], 3, 10),
        ([0, 1, 1, -2, 0], [0, 0], 5, 10),
        ([0, 1, 1, 0, 0], [0, 0], 13, 4),
        ([0, 0, 0, -2401, 1], [0, 1], 7, 6),
    ];
    let mut pairs = 0usize;
    let mut accepted = 0usize;
    let mut rejected = 0usize;
    for (ainvs, [gx, gy], p, m_max) in sources {
        let model = curve(ainvs);
        let p = int(p);
        let base = RationalPoint::from_ints(&model, gx, gy).unwrap();

        // The first multiple of the base entering the kernel of reduction.
        let mut kernel = None;
        let mut acc = RationalPoint::infinity(&model);
        for _ in 1..=60 {
            acc = acc.add(&base);
            let in_kernel = acc
                .x()
                .map(|x| vp(x, &p).unwrap() < Valuation::Finite(0))
                .unwrap_or(false);
            if in_kernel {
                kernel = Some(acc.clone());
                break;
            }
        }
        let kernel = kernel.expect("some multiple reduces to the origin");

        let mut q = RationalPoint::infinity(&model);
        for _ in 1..=m_max {
            q = q.add(&kernel);
            let (x, y) = q.coords().unwrap();
            let vz = vp(&(x / y), &p).unwrap();
            for n in 1..=5u32 {
                let valuation_route = vz >= Valuation::Finite(i64::from(n) + 1);
                let formal_route = e1_divisibility(&q, &p, n).unwrap().member;
                assert_eq!(
                    valuation_route, formal_route,
                    "routes disagree at p = {p}, n = {n}, v(z) = {vz}"
                );
                pairs += 1;
                if valuation_route {
                    accepted += 1;
                } else {
                    rejected += 1;
                }
            }
        }
    }
    assert!(pairs >= 200, "only {pairs} point/level pairs compared");
    assert!(accepted >= 20 && rejected >= 100, "skewed outcomes: {accepted} / {rejected}");
}

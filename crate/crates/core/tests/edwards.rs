mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use tracezero::{AffinePoint, EdwardsCurve, Error, FqnElement};

use common::{curve, montgomery_count, rng, tz_order};

/// Addition on the birational Montgomery model `B v^2 = u^3 + A u^2 + u`,
/// with `u = (1+y)/(1-y)` and `v = u/x`. Only for points where the maps
/// and the chord are defined.
fn montgomery_add(c: &EdwardsCurve, p: &AffinePoint, q: &AffinePoint) -> AffinePoint {
    let k = c.field();
    let one = k.one();
    let a = k.embed(c.a());
    let d = k.embed(c.d());
    let amd_inv = k.inv(&k.sub(&a, &d)).unwrap();
    let big_a = k.mul(&k.mul(&k.from_u64(2), &k.add(&a, &d)), &amd_inv);
    let big_b = k.mul(&k.from_u64(4), &amd_inv);
    let to_mont = |p: &AffinePoint| -> (FqnElement, FqnElement) {
        let u = k.div(&k.add(&one, &p.y), &k.sub(&one, &p.y)).unwrap();
        let v = k.div(&u, &p.x).unwrap();
        (u, v)
    };
    let (u1, v1) = to_mont(p);
    let (u2, v2) = to_mont(q);
    let lambda = k.div(&k.sub(&v2, &v1), &k.sub(&u2, &u1)).unwrap();
    let u3 = k.sub(&k.sub(&k.sub(&k.mul(&big_b, &k.square(&lambda)), &big_a), &u1), &u2);
    let v3 = k.sub(&k.mul(&lambda, &k.sub(&u1, &u3)), &v1);
    AffinePoint {
        x: k.div(&u3, &v3).unwrap(),
        y: k.div(&k.sub(&u3, &one), &k.add(&u3, &one)).unwrap(),
    }
}

fn known_n5_point(c: &EdwardsCurve) -> AffinePoint {
    c.parse_point("515,745,158,713,1020 | 62,976,135,557,891").unwrap()
}

#[test]
fn identity_and_negation() {
    let c = curve("q1021_n3");
    let mut r = rng(1);
    let o = c.identity();
    assert!(c.is_on_curve(&o) && c.is_on_curve(&c.o_prime()));
    for _ in 0..100 {
        let p = c.random_point(&mut r).unwrap();
        assert_eq!(c.add(&p, &o).unwrap(), p);
        assert_eq!(c.add(&p, &c.neg(&p)).unwrap(), o);
        assert_eq!(c.scalar_mul(&p, &BigUint::from(1u8)).unwrap(), p);
        assert_eq!(c.scalar_mul(&p, &BigUint::from(0u8)).unwrap(), o);
    }
    assert_eq!(c.scalar_mul(&o, &BigUint::from(2u8)).unwrap(), o);
    assert_eq!(c.double(&c.o_prime()).unwrap(), o);
}

#[test]
fn commutativity_on_ten_thousand_pairs() {
    let c = curve("q1021_n3");
    let mut r = rng(2);
    for _ in 0..10_000 {
        let p = c.random_point(&mut r).unwrap();
        let q = c.random_point(&mut r).unwrap();
        assert_eq!(c.add(&p, &q).unwrap(), c.add(&q, &p).unwrap());
    }
}

#[test]
fn associativity_on_a_thousand_triples() {
    for name in ["q1021_n3", "e210_924"] {
        let c = curve(name);
        let mut r = rng(3);
        for _ in 0..1000 {
            let [p, q, s] = [0; 3].map(|_| c.random_point(&mut r).unwrap());
            let lhs = c.add(&c.add(&p, &q).unwrap(), &s).unwrap();
            let rhs = c.add(&p, &c.add(&q, &s).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn addition_agrees_with_montgomery_model() {
    for name in ["q1021_n3", "e210_924", "q64_n5"] {
        let c = curve(name);
        let mut r = rng(4);
        let mut checked = 0;
        while checked < 200 {
            let p = c.random_point(&mut r).unwrap();
            let q = c.random_point(&mut r).unwrap();
            let k = c.field();
            // The chord formula needs distinct u, and the maps need x != 0, y != 1.
            if p.x.is_zero() || q.x.is_zero() || p.y == q.y || p.y == k.one() || q.y == k.one() {
                continue;
            }
            let s = c.add(&p, &q).unwrap();
            if s.x.is_zero() {
                continue;
            }
            assert_eq!(montgomery_add(&c, &p, &q), s, "{name}");
            checked += 1;
        }
    }
}

#[test]
fn known_point_plus_its_frobenius() {
    let c = curve("e210_924");
    let p = known_n5_point(&c);
    let s = c.add(&p, &c.frobenius(&p, 1)).unwrap();
    assert_eq!(s, montgomery_add(&c, &p, &c.frobenius(&p, 1)));
    assert_eq!(s.y.to_string(), "170,408,437,265,838");
}

#[test]
fn exceptional_denominator_is_reported() {
    // d = 4 is a square mod 13, so the curve is not complete and some pair
    // has 1 +- d x1 x2 y1 y2 = 0.
    let c = EdwardsCurve::small(13, 3, 2, 1, 4).unwrap();
    let f = c.base();
    let mut pts = Vec::new();
    for y in 0..13 {
        let y = c.field().embed(&f.from_u64(y));
        if let Some(p) = c.lift_y(&y) {
            if c.field().is_base(&p.x) {
                pts.push(c.neg(&p));
                pts.push(p);
            }
        }
    }
    let hits = pts
        .iter()
        .flat_map(|p| pts.iter().map(move |q| (p, q)))
        .filter(|(p, q)| c.add(p, q) == Err(Error::ExceptionalDenominator))
        .count();
    assert!(hits > 0);
}

#[test]
fn configured_orders_match_point_counts() {
    for (name, q, n, a, d) in [
        ("q1021_n3", 1021u64, 3u32, 3u64, 7u64),
        ("e210_924", 1021, 5, 210, 924),
        ("e1_6", 1021, 5, 1, 6),
        ("q65521_n5", 65521, 5, 4, 17),
    ] {
        let c = curve(name);
        assert_eq!(c.tz_order(), Some(&tz_order(q, n, a, d)), "{name}");
        c.check_tz_order(20, &mut rng(5)).unwrap();
    }
}

#[test]
fn montgomery_count_small_curve() {
    // Exhaustive count on the Edwards model for a tiny complete curve
    // (a = 3 is a square mod 13, d = 2 is not).
    let (q, a, d) = (13u64, 3u64, 2u64);
    let mut count = 0;
    for x in 0..q {
        for y in 0..q {
            if (a * x * x + y * y) % q == (1 + d * x * x % q * y * y) % q {
                count += 1;
            }
        }
    }
    // No points at infinity on a complete curve.
    assert_eq!(montgomery_count(q, a, d), count);
}

#[test]
fn order_kills_trace_zero_points() {
    let c = curve("q65521_n5");
    let ord = c.tz_order().unwrap().clone();
    let mut r = rng(6);
    for _ in 0..50 {
        let p = c.random_trace_zero(&mut r).unwrap();
        assert!(c.is_identity(&c.scalar_mul(&p, &ord).unwrap()));
    }
}

#[test]
fn trace_membership_examples() {
    let c = curve("e210_924");
    assert!(c.is_trace_zero(&c.identity()));
    assert!(!c.is_trace_zero(&c.o_prime()));
    assert_eq!(c.trace(&c.o_prime()).unwrap(), c.o_prime());
    assert_eq!(c.trace(&c.identity()).unwrap(), c.identity());
    assert!(c.is_trace_zero(&known_n5_point(&c)));
    let mut r = rng(7);
    for _ in 0..100 {
        let p = c.random_point(&mut r).unwrap();
        if c.field().is_base(&p.x) && c.field().is_base(&p.y) {
            assert_eq!(c.trace(&p).unwrap(), c.scalar_mul(&p, &BigUint::from(5u8)).unwrap());
        }
    }
}

#[test]
fn base_points_trace_to_multiples() {
    let c = curve("q1021_n3");
    let k = c.field();
    let f = c.base();
    let mut seen = 0;
    for y in 0..1021 {
        if let Some(p) = c.lift_y(&k.embed(&f.from_u64(y))) {
            if k.is_base(&p.x) {
                assert_eq!(c.frobenius(&p, 1), p);
                assert_eq!(c.trace(&p).unwrap(), c.scalar_mul(&p, &BigUint::from(3u8)).unwrap());
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}

// The affine points with [2]P = O are O and O'; (+-1/sqrt(a), 0) have order 4
// and the other two points of order 2 lie at infinity.
#[test]
fn two_torsion_meets_trace_zero_only_in_identity() {
    for name in ["q1021_n3", "e210_924", "e1_6", "q65521_n5"] {
        let c = curve(name);
        let k = c.field();
        if let Some(s) = k.sqrt(&k.inv(&k.embed(c.a())).unwrap()) {
            let p = c.point(s, k.zero()).unwrap();
            assert_eq!(c.double(&p).unwrap(), c.o_prime());
        }
        for p in [c.identity(), c.o_prime()] {
            assert!(c.is_identity(&c.double(&p).unwrap()));
            assert_eq!(c.is_trace_zero(&p), c.is_identity(&p), "{name}: {p}");
        }
    }
}

// Brute force on complete curves (a square, d non-square), where the
// addition law has no exceptional pairs.
#[test]
fn three_torsion_matches_brute_force() {
    let f = common::fq(1021);
    let complete = (1..40u64)
        .flat_map(|a| (1..40u64).map(move |d| (a, d)))
        .filter(|&(a, d)| a != d && f.is_square(&f.from_u64(a)) && !f.is_square(&f.from_u64(d)))
        .step_by(37)
        .take(12);
    let mut total = 0;
    for (a, d) in complete {
        let c = EdwardsCurve::small(1021, 5, 2, a, d).unwrap();
        let k = c.field();
        let three = BigUint::from(3u8);
        let mut brute = Vec::new();
        for y in 0..1021 {
            let y = f.from_u64(y);
            if let Some(p) = c.lift_y(&k.embed(&y)) {
                if k.is_base(&p.x) && !c.is_identity(&p) && c.is_identity(&c.scalar_mul(&p, &three).unwrap()) {
                    brute.push(y);
                }
            }
        }
        assert_eq!(c.three_torsion_y(), brute.as_slice(), "a={a} d={d}");
        total += brute.len();
    }
    assert!(total > 0, "no sampled curve has rational 3-torsion");
}

#[test]
fn seeded_sampling_is_reproducible() {
    let c = curve("q1021_n3");
    let p = c.random_trace_zero(&mut rng(42)).unwrap();
    assert_eq!(p, c.random_trace_zero(&mut rng(42)).unwrap());
    assert_eq!(p.to_string(), "640,636,64 | 919,349,371");
}

#[test]
fn point_text_round_trip() {
    let c = curve("e210_924");
    let p = known_n5_point(&c);
    assert_eq!(c.parse_point(&p.to_string()).unwrap(), p);
    assert!(c.parse_point("1,2,3,4,5 | 6,7,8,9,10").is_err());
    assert!(c.parse_point("1,2,3").is_err());
}

fn trace_zero_pair(name: &'static str) -> impl Strategy<Value = (EdwardsCurve, AffinePoint, AffinePoint)> {
    any::<u64>().prop_map(move |seed| {
        let c = curve(name);
        let mut r = rng(seed);
        let p = c.random_trace_zero(&mut r).unwrap();
        let q = c.random_trace_zero(&mut r).unwrap();
        (c, p, q)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn trace_lies_in_base_field(seed: u64) {
        let c = curve("e210_924");
        let p = c.random_point(&mut rng(seed)).unwrap();
        let t = c.trace(&p).unwrap();
        prop_assert!(c.field().is_base(&t.x) && c.field().is_base(&t.y));
    }

    #[test]
    fn sampled_points_are_trace_zero(seed: u64) {
        let c = curve("q1021_n3");
        let p = c.random_trace_zero(&mut rng(seed)).unwrap();
        prop_assert!(c.is_on_curve(&p));
        prop_assert!(c.is_identity(&c.trace(&p).unwrap()));
        prop_assert!(c.is_trace_zero(&p));
    }

    #[test]
    fn trace_zero_is_closed((c, p, q) in trace_zero_pair("e210_924")) {
        prop_assert!(c.is_trace_zero(&c.add(&p, &q).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn frobenius_has_order_n(seed: u64) {
        for name in ["q1021_n3", "e210_924"] {
            let c = curve(name);
            let p = c.random_point(&mut rng(seed)).unwrap();
            prop_assert_eq!(c.frobenius(&p, c.n()), p.clone());
            prop_assert!(c.is_on_curve(&c.frobenius(&p, 1)));
        }
    }

    #[test]
    fn frobenius_is_a_homomorphism(seed: u64) {
        let c = curve("e210_924");
        let mut r = rng(seed);
        let p = c.random_point(&mut r).unwrap();
        let q = c.random_point(&mut r).unwrap();
        let lhs = c.frobenius(&c.add(&p, &q).unwrap(), 1);
        let rhs = c.add(&c.frobenius(&p, 1), &c.frobenius(&q, 1)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

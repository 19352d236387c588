mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use tracezero::semaev::{self, SemaevRep};
use tracezero::{counters, AffinePoint, EdwardsCurve, Error, FqElement};

use common::{curve, elems, rng};

fn big_q_point() -> String {
    let text = std::fs::read_to_string(common::repo_path("vectors/published.json")).unwrap();
    let file = tracezero::VectorFile::parse(&text).unwrap();
    file.cases.into_iter().find(|c| c.name == "semaev n=3, q=2^79-67").unwrap().point.unwrap()
}

fn rep(c: &EdwardsCurve, s: &str) -> SemaevRep {
    SemaevRep::parse(c, s).unwrap()
}

fn orbit_pm(c: &EdwardsCurve, p: &AffinePoint) -> BTreeSet<AffinePoint> {
    let mut s: BTreeSet<AffinePoint> = c.orbit(p).into_iter().collect();
    s.extend(c.orbit(&c.neg(p)));
    s
}

#[test]
fn big_q_example() {
    let c = curve("q79_n3");
    let p = c.parse_point(&big_q_point()).unwrap();
    let start = Instant::now();
    let r = semaev::compress(&c, &p).unwrap();
    assert_eq!(r.to_string(), "204123269581289703918756,98788782936076524413527");
    let fiber = semaev::decompress(&c, &r, &mut rng(0)).unwrap();
    assert!(start.elapsed() < Duration::from_secs(1));
    assert_eq!(fiber.iter().cloned().collect::<BTreeSet<_>>(), orbit_pm(&c, &p));
    let ys: BTreeSet<String> = fiber.iter().map(|q| q.y.to_string()).collect();
    assert_eq!(ys.len(), 3);
    assert!(ys.contains("68041089860429901306252,451121944550219947368811,208520713897518236215966"));
}

#[test]
fn e210_924_example() {
    let c = curve("e210_924");
    let p = c.parse_point("515,745,158,713,1020 | 62,976,135,557,891").unwrap();
    let r = semaev::compress(&c, &p).unwrap();
    assert_eq!(r.to_string(), "310,887,19,660");
    let mut g = rng(1);
    let roots = semaev::e5_candidates(&c, &r.values, &mut g).unwrap();
    assert_eq!(roots, elems(c.base(), &[428, 550, 835]));

    let mut e = r.values.clone();
    e.push(c.base().from_u64(835));
    let ys = tracezero::polyalg::roots_in_fqn(c.field(), &semaev::char_poly(&c, &e), &mut g);
    assert!(!ys.is_empty());
    assert!(semaev::points_with_e(&c, &e, &mut g).is_empty());

    let fiber = semaev::decompress(&c, &r, &mut g).unwrap();
    assert_eq!(fiber.len(), 20);
    assert_eq!(semaev::count_classes(&c, &fiber), 2);
    assert!(orbit_pm(&c, &p).is_subset(&fiber.into_iter().collect()));
}

#[test]
fn e1_6_example() {
    let c = curve("e1_6");
    let r = rep(&c, "686,289,865,418");
    let mut g = rng(2);
    assert_eq!(semaev::e5_candidates(&c, &r.values, &mut g).unwrap(), elems(c.base(), &[790]));
    let fiber = semaev::decompress(&c, &r, &mut g).unwrap();
    assert_eq!(fiber.len(), 10);
    for q in &fiber {
        assert_eq!(semaev::compress(&c, q).unwrap(), r);
    }
}

#[test]
fn identity_compresses_to_three_four() {
    let c = curve("q1021_n3");
    let r = semaev::compress(&c, &c.identity()).unwrap();
    assert_eq!(r.to_string(), "3,4");
    let fiber = semaev::decompress(&c, &r, &mut rng(3)).unwrap();
    assert_eq!(fiber, vec![c.identity()]);
}

#[test]
fn rejects_points_outside_the_subgroup() {
    let c = curve("q1021_n3");
    assert_eq!(semaev::compress(&c, &c.o_prime()), Err(Error::NotTraceZero));
    let mut g = rng(4);
    let mut rejected = 0;
    for _ in 0..20 {
        let p = c.random_point(&mut g).unwrap();
        if !c.is_trace_zero(&p) {
            assert_eq!(semaev::compress(&c, &p), Err(Error::NotTraceZero));
            rejected += 1;
        }
    }
    assert!(rejected > 0);
    let off = tracezero::AffinePoint { x: c.field().one(), y: c.field().one() };
    assert_eq!(semaev::compress(&c, &off), Err(Error::NotOnCurve));
}

#[test]
fn rep_parsing() {
    let c = curve("e210_924");
    assert!(SemaevRep::parse(&c, "1,2,3").is_err());
    assert!(SemaevRep::parse(&c, "1,2,3,x").is_err());
    assert_eq!(rep(&c, "310,887,19,660").to_string(), "310,887,19,660");
}

#[test]
fn n3_compression_costs_three_squarings_four_multiplications() {
    let c = curve("q79_n3");
    let p = c.random_trace_zero(&mut rng(5)).unwrap();
    let (r, ops) = counters::measure(|| semaev::compress(&c, &p).unwrap());
    assert_eq!(ops.base(), (3, 4, 0));
    assert_eq!(ops.ext(), (0, 0, 0));
    let (_, ops) = counters::measure(|| semaev::recover_t3(&c, &r.values[0], &r.values[1]).unwrap());
    assert_eq!(ops.base(), (0, 3, 1));
    assert_eq!(ops.ext(), (0, 0, 0));
}

#[test]
fn n5_compression_uses_newton_identities() {
    for name in ["e210_924", "q64_n5"] {
        let c = curve(name);
        let mut g = rng(13);
        for _ in 0..500 {
            let p = c.random_trace_zero(&mut g).unwrap();
            let mut e = c.field().char_poly_coeffs(&p.y);
            e.truncate(4);
            let (r, ops) = counters::measure(|| semaev::compress(&c, &p).unwrap());
            assert_eq!(r.values, e);
            assert_eq!(ops.ext(), (2, 1, 0));
            assert_eq!(ops.base(), (1, 5, 0));
        }
    }
}

#[test]
fn t_coordinates_match_char_poly() {
    for name in ["q1021_n3", "q64_n3", "q79_n3"] {
        let c = curve(name);
        let f = c.base();
        let mut g = rng(6);
        for _ in 0..1000 {
            let p = c.random_trace_zero(&mut g).unwrap();
            let e = c.field().char_poly_coeffs(&p.y);
            let (t1, t2) = semaev::t_coordinates(&c, p.y.coeffs());
            assert_eq!(t1, e[0]);
            assert_eq!(t2, f.add(&e[2], &e[1]));
            let t3 = semaev::recover_t3(&c, &t1, &t2).unwrap().unwrap();
            assert_eq!(t3, f.sub(&e[2], &e[1]));
        }
    }
}

#[test]
fn f_n_vanishes_on_conjugates() {
    for name in ["q1021_n3", "e210_924"] {
        let c = curve(name);
        let k = c.field();
        let f = match c.n() {
            3 => c.summation().f3().clone(),
            _ => c.summation().f5().clone(),
        };
        let mut g = rng(7);
        for _ in 0..200 {
            let p = c.random_trace_zero(&mut g).unwrap();
            let ys: Vec<_> = (0..c.n()).map(|i| k.frobenius(&p.y, i)).collect();
            assert!(f.eval_ext(k, &ys).is_zero());
        }
    }
}

fn synthetic_degenerate(c: &EdwardsCurve) -> (FqElement, FqElement) {
    let f = c.base();
    let t1 = f.from_u64(5);
    let t2 = f.neg(&f.add(&t1, &f.one()));
    (t1, t2)
}

// On the line t1 + t2 + 1 = 0 the t-form of g3 reduces to
// (1 + t1)^2 (1 - d/a), so only (-1, 0) can have points there.
#[test]
fn degenerate_fiber_small_q_is_scanned() {
    let c = curve("q1021_n3");
    let f = c.base();
    let (t1, t2) = synthetic_degenerate(&c);
    let off_line = SemaevRep { values: vec![t1, t2] };
    assert_eq!(semaev::decompress(&c, &off_line, &mut rng(8)).unwrap(), vec![]);

    let r = SemaevRep { values: vec![f.neg(&f.one()), f.zero()] };
    assert_eq!(semaev::recover_t3(&c, &r.values[0], &r.values[1]).unwrap(), None);
    for q in semaev::decompress(&c, &r, &mut rng(8)).unwrap() {
        assert!(c.is_trace_zero(&q));
        assert_eq!(semaev::compress(&c, &q).unwrap(), r);
    }
}

#[test]
fn degenerate_fiber_large_q_is_an_error() {
    let c = curve("q64_n3");
    let (t1, t2) = synthetic_degenerate(&c);
    let r = SemaevRep { values: vec![t1, t2] };
    assert_eq!(semaev::decompress(&c, &r, &mut rng(9)), Err(Error::DegenerateFiber));
}

#[test]
fn reps_outside_the_image_decompress_to_nothing() {
    let c = curve("q64_n3");
    let f = c.base();
    let mut g = rng(10);
    let mut empty = 0;
    for _ in 0..50 {
        let r = SemaevRep { values: vec![f.random(&mut g), f.random(&mut g)] };
        let fiber = semaev::decompress(&c, &r, &mut g).unwrap();
        if fiber.is_empty() {
            empty += 1;
        }
        for q in &fiber {
            assert_eq!(semaev::compress(&c, q).unwrap(), r);
        }
    }
    assert!(empty > 0);
}

#[test]
fn fiber_statistics_are_sane() {
    let c = curve("q65521_n5");
    let hist = semaev::fiber_stats(&c, 50, &mut rng(11)).unwrap();
    assert_eq!(hist.values().sum::<usize>(), 50);
    assert!(hist.keys().all(|&k| (1..=8).contains(&k)));
    assert!(hist.get(&1).copied().unwrap_or(0) > 25);
}

#[test]
fn three_torsion_fast_path_agrees() {
    let c = curve("e210_924");
    let ys = c.three_torsion_y().to_vec();
    let fast = c.clone().with_three_torsion(ys);
    assert!(fast.three_torsion_configured() && !c.three_torsion_configured());
    let mut g = rng(12);
    for _ in 0..20 {
        let p = c.random_trace_zero(&mut g).unwrap();
        let r = semaev::compress(&c, &p).unwrap();
        assert_eq!(
            semaev::decompress(&c, &r, &mut rng(1)).unwrap(),
            semaev::decompress(&fast, &r, &mut rng(1)).unwrap()
        );
    }
}

fn round_trip(name: &str, seed: u64) -> Result<(), TestCaseError> {
    let c = curve(name);
    let mut g = rng(seed);
    let p = c.random_trace_zero(&mut g).unwrap();
    let r = semaev::compress(&c, &p).unwrap();
    prop_assert_eq!(&semaev::compress(&c, &c.neg(&p)).unwrap(), &r);
    prop_assert_eq!(&semaev::compress(&c, &c.frobenius(&p, 1)).unwrap(), &r);
    let fiber: BTreeSet<AffinePoint> = semaev::decompress(&c, &r, &mut g).unwrap().into_iter().collect();
    prop_assert!(orbit_pm(&c, &p).is_subset(&fiber));
    for q in &fiber {
        prop_assert!(c.is_trace_zero(q));
        prop_assert_eq!(&semaev::compress(&c, q).unwrap(), &r);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn round_trip_n3(seed: u64) {
        round_trip("q64_n3", seed)?;
    }

    #[test]
    fn round_trip_n3_small(seed: u64) {
        round_trip("q1021_n3", seed)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn round_trip_n5(seed: u64) {
        round_trip("q64_n5", seed)?;
    }

    #[test]
    fn round_trip_n5_small(seed: u64) {
        round_trip("e210_924", seed)?;
    }
}

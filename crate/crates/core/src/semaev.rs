//! Compression by elementary symmetric functions of the Frobenius conjugates
//! of `y`, and decompression through the symmetrized summation polynomial.
//!
//! For `n = 3` the representation is `(t1, t2) = (e1, e3 + e2)`; the third
//! coordinate `t3 = e3 - e2` is then determined linearly. For `n = 5` it is
//! `(e1, e2, e3, e4)` and `e5` is a root of `g5(e1, e2, e3, e4, t)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rand::RngCore;

use crate::bigfield::{counters, FqElement, FqnElement};
use crate::edwards::{AffinePoint, EdwardsCurve};
use crate::error::{Error, Result};
use crate::polyalg::{roots_in_fq, roots_in_fqn, UniPoly};

/// Below this field size a degenerate `n = 3` fiber is enumerated.
pub const DEGENERATE_SCAN_LIMIT: u64 = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SemaevRep {
    pub values: Vec<FqElement>,
}

impl SemaevRep {
    pub fn n(&self) -> usize {
        self.values.len() + 1
    }

    pub fn parse(curve: &EdwardsCurve, s: &str) -> Result<SemaevRep> {
        let f = curve.base();
        let values = s
            .split(',')
            .map(|v| f.parse(v))
            .collect::<Result<Vec<_>>>()?;
        if values.len() != curve.n() - 1 {
            return Err(Error::MalformedRep(format!(
                "expected {} values, found {}",
                curve.n() - 1,
                values.len()
            )));
        }
        Ok(SemaevRep { values })
    }
}

impl fmt::Display for SemaevRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(FqElement::to_string).collect();
        f.write_str(&v.join(","))
    }
}

fn require_trace_zero(curve: &EdwardsCurve, p: &AffinePoint) -> Result<()> {
    if !counters::suspended(|| curve.is_on_curve(p)) {
        return Err(Error::NotOnCurve);
    }
    if !curve.is_trace_zero(p) {
        return Err(Error::NotTraceZero);
    }
    Ok(())
}

/// `(t1, t2)` from the coordinates of `y`, 3S + 4M.
pub fn t_coordinates(curve: &EdwardsCurve, y: &[FqElement]) -> (FqElement, FqElement) {
    let f = curve.base();
    let mu = curve.field().mu();
    let (y0, y1, y2) = (&y[0], &y[1], &y[2]);
    let t1 = f.mul_u64(y0, 3);
    let y0s = f.square(y0);
    let y1y2 = f.mul(y1, y2);
    let inner = f.sub(&y0s, &f.mul_const(&f.mul_u64(&y1y2, 3), mu));
    let first = f.mul(&f.add(y0, &f.one()), &inner);
    let y1c = f.mul(&f.square(y1), y1);
    let y2c = f.mul(&f.square(y2), y2);
    let mu2 = f.mul_const(mu, mu);
    let t2 = f.add(
        &f.add(&first, &f.mul_const(&y1c, mu)),
        &f.add(&f.mul_const(&y2c, &mu2), &f.mul_u64(&y0s, 2)),
    );
    (t1, t2)
}

pub fn compress(curve: &EdwardsCurve, p: &AffinePoint) -> Result<SemaevRep> {
    require_trace_zero(curve, p)?;
    let values = match curve.n() {
        3 => {
            let (t1, t2) = t_coordinates(curve, p.y.coeffs());
            vec![t1, t2]
        }
        5 => e_coordinates_n5(curve, &p.y),
        n => return Err(Error::InvalidParams(format!("n = {n} is not supported"))),
    };
    Ok(SemaevRep { values })
}

/// `(e1, e2, e3, e4)` of the conjugates of `y` from the power sums
/// `Tr(y^k) = 5 (y^k)_0` by Newton's identities: 2S + 1M in the extension and
/// 1S + 5M in the base field.
pub fn e_coordinates_n5(curve: &EdwardsCurve, y: &FqnElement) -> Vec<FqElement> {
    let k = curve.field();
    let f = curve.base();
    let y2 = k.square(y);
    let y3 = k.mul(&y2, y);
    let y4 = k.square(&y2);
    let [p1, p2, p3, p4] = [y, &y2, &y3, &y4].map(|v| f.mul_u64(&v.coeffs()[0], 5));
    let inv = |m: u64| counters::suspended(|| f.inv(&f.from_u64(m))).expect("q > 5");
    let e1 = p1.clone();
    let e2 = f.mul_const(&f.sub(&f.square(&p1), &p2), &inv(2));
    let e3 = f.mul_const(&f.add(&f.sub(&f.mul(&e2, &p1), &f.mul(&e1, &p2)), &p3), &inv(3));
    let e4 = f.mul_const(
        &f.sub(&f.add(&f.sub(&f.mul(&e3, &p1), &f.mul(&e2, &p2)), &f.mul(&e1, &p3)), &p4),
        &inv(4),
    );
    vec![e1, e2, e3, e4]
}

/// Solves the t-form of `g3` for `t3`, 3M + 1I. `None` when
/// `t1 + t2 + 1 = 0`, where every `t3` is a solution.
pub fn recover_t3(curve: &EdwardsCurve, t1: &FqElement, t2: &FqElement) -> Result<Option<FqElement>> {
    let f = curve.base();
    let one = f.one();
    let r = counters::suspended(|| f.div(curve.d(), curve.a()))?;
    let den = f.add(&f.add(t1, t2), &one);
    if den.is_zero() {
        return Ok(None);
    }
    let num = f.add(
        &f.add(&f.mul_const(t2, &f.sub(&r, &f.from_u64(2))), &f.mul_const(&f.mul(t1, t2), &r)),
        &f.mul(&f.add(t1, &one), &f.sub(t1, &one)),
    );
    let inv = f.inv(&f.mul_const(&den, &r))?;
    Ok(Some(f.neg(&f.mul(&num, &inv))))
}

/// Monic `T^n - e1 T^(n-1) + e2 T^(n-2) - ... + (-1)^n e_n`.
pub fn char_poly(curve: &EdwardsCurve, e: &[FqElement]) -> UniPoly<FqElement> {
    let f = curve.base();
    let n = e.len();
    let mut c = vec![f.zero(); n + 1];
    c[n] = f.one();
    for (k, ek) in e.iter().enumerate() {
        let k = k + 1;
        c[n - k] = if k % 2 == 1 { f.neg(ek) } else { ek.clone() };
    }
    UniPoly::new(f, c)
}

/// The candidate values of the missing coordinate: `e5` for `n = 5`, or
/// the full `(e1, e2, e3)` tuples for `n = 3`.
pub fn candidate_e_tuples(curve: &EdwardsCurve, rep: &SemaevRep, rng: &mut dyn RngCore) -> Result<Vec<Vec<FqElement>>> {
    let f = curve.base();
    if rep.values.len() != curve.n() - 1 {
        return Err(Error::MalformedRep(format!("expected {} values", curve.n() - 1)));
    }
    match curve.n() {
        3 => {
            let (t1, t2) = (&rep.values[0], &rep.values[1]);
            let t3s = match recover_t3(curve, t1, t2)? {
                Some(t3) => vec![t3],
                None => match f.modulus().iter_u64_digits().next() {
                    Some(q) if f.bits() <= 64 && q < DEGENERATE_SCAN_LIMIT => (0..q).map(|v| f.from_u64(v)).collect(),
                    _ => return Err(Error::DegenerateFiber),
                },
            };
            let half = f.inv(&f.from_u64(2))?;
            Ok(t3s
                .into_iter()
                .map(|t3| {
                    let e2 = f.mul_const(&f.sub(t2, &t3), &half);
                    let e3 = f.mul_const(&f.add(t2, &t3), &half);
                    vec![t1.clone(), e2, e3]
                })
                .collect())
        }
        5 => Ok(e5_candidates(curve, &rep.values, rng)?
            .into_iter()
            .map(|e5| {
                let mut e = rep.values.clone();
                e.push(e5);
                e
            })
            .collect()),
        n => Err(Error::InvalidParams(format!("n = {n} is not supported"))),
    }
}

/// `g5(e1, e2, e3, e4, t)` as a polynomial in `t`.
pub fn g5_in_t(curve: &EdwardsCurve, e: &[FqElement]) -> UniPoly<FqElement> {
    let f = curve.base();
    let g5 = curve.summation().g5();
    let point: Vec<Option<FqElement>> = e.iter().cloned().map(Some).chain([None]).collect();
    let coeffs = g5
        .partial_eval(f, &point)
        .coefficients_in(4)
        .into_iter()
        .map(|c| c.coeff(&crate::polyalg::Monomial::ONE).cloned().unwrap_or_else(|| f.zero()))
        .collect();
    UniPoly::new(f, coeffs)
}

/// Roots in `F_q` of `g5(e1, ..., e4, t)`, ascending.
pub fn e5_candidates(curve: &EdwardsCurve, e: &[FqElement], rng: &mut dyn RngCore) -> Result<Vec<FqElement>> {
    let g = g5_in_t(curve, e);
    if g.is_zero() {
        return Err(Error::DegenerateFiber);
    }
    Ok(roots_in_fq(curve.base(), &g, rng))
}

/// Trace-zero points whose `y` has the given elementary symmetric functions.
pub fn points_with_e(curve: &EdwardsCurve, e: &[FqElement], rng: &mut dyn RngCore) -> Vec<AffinePoint> {
    let ys = roots_in_fqn(curve.field(), &char_poly(curve, e), rng);
    let use_list = curve.n() == 5 && curve.three_torsion_configured();
    let mut out = Vec::new();
    for y in ys {
        // A root of a reducible char poly can have different conjugates.
        if counters::suspended(|| curve.field().char_poly_coeffs(&y)) != e {
            continue;
        }
        let Some(p) = curve.lift_y(&y) else { continue };
        let keep = if use_list {
            match curve.field().as_base(&y) {
                Some(yb) => !curve.three_torsion_y().contains(&yb),
                None => true,
            }
        } else {
            curve.is_trace_zero(&p)
        };
        if keep {
            out.push(p);
        }
    }
    out
}

/// The full fiber: all trace-zero points with this representation, closed
/// under negation and Frobenius, sorted by `(y, x)`.
pub fn decompress(curve: &EdwardsCurve, rep: &SemaevRep, rng: &mut dyn RngCore) -> Result<Vec<AffinePoint>> {
    let mut out = Vec::new();
    for e in candidate_e_tuples(curve, rep, rng)? {
        for p in points_with_e(curve, &e, rng) {
            out.extend(curve.orbit(&p));
            out.extend(curve.orbit(&curve.neg(&p)));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A canonical member of the class of `p` under negation and Frobenius.
pub fn class_representative(curve: &EdwardsCurve, p: &AffinePoint) -> AffinePoint {
    let mut all = curve.orbit(p);
    all.extend(curve.orbit(&curve.neg(p)));
    all.into_iter().min().expect("orbit is nonempty")
}

/// Number of classes (under negation and Frobenius) in a fiber.
pub fn count_classes(curve: &EdwardsCurve, fiber: &[AffinePoint]) -> usize {
    let mut reps: Vec<AffinePoint> = fiber.iter().map(|p| class_representative(curve, p)).collect();
    reps.sort();
    reps.dedup();
    reps.len()
}

/// Histogram of the number of classes in `decompress(compress(P))` over
/// `samples` random trace-zero points.
pub fn fiber_stats(curve: &EdwardsCurve, samples: usize, rng: &mut dyn RngCore) -> Result<BTreeMap<usize, usize>> {
    let mut hist = BTreeMap::new();
    for _ in 0..samples {
        let p = curve.random_trace_zero(rng)?;
        let fiber = decompress(curve, &compress(curve, &p)?, rng)?;
        *hist.entry(count_classes(curve, &fiber)).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Field size below which degenerate fibers are scanned, for callers that
/// want to report it.
pub fn degenerate_scan_limit() -> BigUint {
    BigUint::from(DEGENERATE_SCAN_LIMIT)
}

//! Twisted Edwards curves `a x^2 + y^2 = 1 + d x^2 y^2` over `F_{q^n}`, with
//! the Frobenius endomorphism and the trace-zero subgroup.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::bigfield::{counters, FieldParams, FieldParamsJson, Fq, FqElement, Fqn, FqnElement};
use crate::error::{Error, Result};
use crate::polyalg::{roots_in_fq, SummationPolys, UniPoly};

/// Number of `y` samples before [`EdwardsCurve::random_point`] gives up.
pub const MAX_SAMPLES: usize = 1000;

/// An affine point. Points order by `(y, x)` coefficient vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffinePoint {
    pub x: FqnElement,
    pub y: FqnElement,
}

impl Ord for AffinePoint {
    fn cmp(&self, o: &Self) -> Ordering {
        (&self.y, &self.x).cmp(&(&o.y, &o.x))
    }
}

impl PartialOrd for AffinePoint {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.x, self.y)
    }
}

impl fmt::Debug for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// JSON form of a curve.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CurveJson {
    pub a: String,
    pub d: String,
    pub params: FieldParamsJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tz_order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub three_torsion_y: Option<Vec<String>>,
}

#[derive(Clone)]
pub struct EdwardsCurve {
    fqn: Fqn,
    a: FqElement,
    d: FqElement,
    a_ext: FqnElement,
    d_ext: FqnElement,
    tz_order: Option<BigUint>,
    three_torsion: Arc<OnceLock<Vec<FqElement>>>,
    torsion_configured: bool,
    summation: Arc<SummationPolys>,
}

impl fmt::Debug for EdwardsCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E(a={}, d={}) over {:?}", self.a, self.d, self.fqn)
    }
}

impl EdwardsCurve {
    pub fn new(params: &FieldParams, a: BigUint, d: BigUint) -> Result<EdwardsCurve> {
        let fqn = Fqn::new(params)?;
        let f = fqn.base();
        if a >= params.q || d >= params.q {
            return Err(Error::InvalidParams("a and d must be reduced modulo q".into()));
        }
        let (a, d) = (f.elem(&a), f.elem(&d));
        if a.is_zero() || d.is_zero() || a == d {
            return Err(Error::InvalidParams(format!(
                "need a != 0, d != 0 and a != d (a = {a}, d = {d})"
            )));
        }
        let summation = Arc::new(SummationPolys::new(f, &a, &d));
        Ok(EdwardsCurve {
            a_ext: fqn.embed(&a),
            d_ext: fqn.embed(&d),
            fqn,
            a,
            d,
            tz_order: None,
            three_torsion: Arc::new(OnceLock::new()),
            torsion_configured: false,
            summation,
        })
    }

    pub fn small(q: u64, n: usize, mu: u64, a: u64, d: u64) -> Result<EdwardsCurve> {
        EdwardsCurve::new(&FieldParams::small(q, n, mu)?, BigUint::from(a), BigUint::from(d))
    }

    /// Records `|T_n|`. Not checked here; see [`EdwardsCurve::check_tz_order`].
    pub fn with_tz_order(mut self, order: BigUint) -> EdwardsCurve {
        self.tz_order = Some(order);
        self
    }

    /// Supplies the `y`-coordinates of the 3-torsion points of `E(F_q)`
    /// instead of computing them.
    pub fn with_three_torsion(mut self, ys: Vec<FqElement>) -> EdwardsCurve {
        let mut ys = ys;
        ys.sort();
        ys.dedup();
        let cell = OnceLock::new();
        let _ = cell.set(ys);
        self.three_torsion = Arc::new(cell);
        self.torsion_configured = true;
        self
    }

    pub fn from_json(j: &CurveJson) -> Result<EdwardsCurve> {
        let params = FieldParams::from_json(&j.params)?;
        let num = |name: &str, s: &str| -> Result<BigUint> {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{name}: not a decimal integer: {s:?}")))
        };
        let mut c = EdwardsCurve::new(&params, num("a", &j.a)?, num("d", &j.d)?)?;
        if let Some(o) = &j.tz_order {
            c = c.with_tz_order(num("tz_order", o)?);
        }
        if let Some(ys) = &j.three_torsion_y {
            let f = c.base();
            let ys = ys.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>>>()?;
            if ys.len() > 4 {
                return Err(Error::InvalidParams("at most four 3-torsion y-values".into()));
            }
            c = c.with_three_torsion(ys);
        }
        Ok(c)
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson {
            a: self.a.to_string(),
            d: self.d.to_string(),
            params: self.fqn.params().to_json(),
            tz_order: self.tz_order.as_ref().map(BigUint::to_string),
            three_torsion_y: self
                .three_torsion
                .get()
                .map(|v| v.iter().map(FqElement::to_string).collect()),
        }
    }

    pub fn field(&self) -> &Fqn {
        &self.fqn
    }

    pub fn base(&self) -> &Fq {
        self.fqn.base()
    }

    pub fn n(&self) -> usize {
        self.fqn.degree()
    }

    pub fn a(&self) -> &FqElement {
        &self.a
    }

    pub fn d(&self) -> &FqElement {
        &self.d
    }

    pub fn tz_order(&self) -> Option<&BigUint> {
        self.tz_order.as_ref()
    }

    /// Whether the 3-torsion list was supplied rather than computed.
    pub fn three_torsion_configured(&self) -> bool {
        self.torsion_configured
    }

    pub fn summation(&self) -> &SummationPolys {
        &self.summation
    }

    /// The neutral element `O = (0, 1)`.
    pub fn identity(&self) -> AffinePoint {
        AffinePoint {
            x: self.fqn.zero(),
            y: self.fqn.one(),
        }
    }

    /// The point `O' = (0, -1)` of order two.
    pub fn o_prime(&self) -> AffinePoint {
        AffinePoint {
            x: self.fqn.zero(),
            y: self.fqn.neg(&self.fqn.one()),
        }
    }

    pub fn is_identity(&self, p: &AffinePoint) -> bool {
        *p == self.identity()
    }

    pub fn is_on_curve(&self, p: &AffinePoint) -> bool {
        let k = &self.fqn;
        let x2 = k.raw_mul(&p.x, &p.x);
        let y2 = k.raw_mul(&p.y, &p.y);
        let lhs = k.add(&k.mul_const(&x2, &self.a_ext), &y2);
        let rhs = k.add(&k.one(), &k.mul_const(&k.raw_mul(&x2, &y2), &self.d_ext));
        lhs == rhs
    }

    pub fn point(&self, x: FqnElement, y: FqnElement) -> Result<AffinePoint> {
        let p = AffinePoint { x, y };
        if self.is_on_curve(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn embed_point(&self, x: &FqElement, y: &FqElement) -> Result<AffinePoint> {
        self.point(self.fqn.embed(x), self.fqn.embed(y))
    }

    pub fn parse_point(&self, s: &str) -> Result<AffinePoint> {
        let (x, y) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("expected \"x | y\", found {s:?}")))?;
        self.point(self.fqn.parse(x)?, self.fqn.parse(y)?)
    }

    /// `x^2 = (1 - y^2) / (a - d y^2)`, or `None` at a pole.
    pub fn x_squared(&self, y: &FqnElement) -> Option<FqnElement> {
        let k = &self.fqn;
        let y2 = k.raw_mul(y, y);
        let den = k.sub(&self.a_ext, &k.mul_const(&y2, &self.d_ext));
        let inv = k.raw_inv(&den).ok()?;
        Some(k.raw_mul(&k.sub(&k.one(), &y2), &inv))
    }

    /// The point with this `y` and the canonical square root as `x`.
    pub fn lift_y(&self, y: &FqnElement) -> Option<AffinePoint> {
        let x = self.fqn.sqrt(&self.x_squared(y)?)?;
        Some(AffinePoint { x, y: y.clone() })
    }

    pub fn neg(&self, p: &AffinePoint) -> AffinePoint {
        AffinePoint {
            x: self.fqn.neg(&p.x),
            y: p.y.clone(),
        }
    }

    pub fn add(&self, p: &AffinePoint, q: &AffinePoint) -> Result<AffinePoint> {
        let k = &self.fqn;
        let x1x2 = k.mul(&p.x, &q.x);
        let y1y2 = k.mul(&p.y, &q.y);
        let t = k.mul_const(&k.mul(&x1x2, &y1y2), &self.d_ext);
        let one = k.one();
        let dx = k.add(&one, &t);
        let dy = k.sub(&one, &t);
        if dx.is_zero() || dy.is_zero() {
            return Err(Error::ExceptionalDenominator);
        }
        let nx = k.add(&k.mul(&p.x, &q.y), &k.mul(&q.x, &p.y));
        let ny = k.sub(&y1y2, &k.mul_const(&x1x2, &self.a_ext));
        Ok(AffinePoint {
            x: k.div(&nx, &dx)?,
            y: k.div(&ny, &dy)?,
        })
    }

    pub fn sub(&self, p: &AffinePoint, q: &AffinePoint) -> Result<AffinePoint> {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &AffinePoint) -> Result<AffinePoint> {
        self.add(p, p)
    }

    pub fn scalar_mul(&self, p: &AffinePoint, k: &BigUint) -> Result<AffinePoint> {
        let mut acc = self.identity();
        for i in (0..k.bits()).rev() {
            acc = self.double(&acc)?;
            if k.bit(i) {
                acc = self.add(&acc, p)?;
            }
        }
        Ok(acc)
    }

    pub fn frobenius(&self, p: &AffinePoint, i: usize) -> AffinePoint {
        AffinePoint {
            x: self.fqn.frobenius(&p.x, i),
            y: self.fqn.frobenius(&p.y, i),
        }
    }

    /// `P, phi(P), ..., phi^(n-1)(P)`.
    pub fn orbit(&self, p: &AffinePoint) -> Vec<AffinePoint> {
        (0..self.n()).map(|i| self.frobenius(p, i)).collect()
    }

    /// `P + phi(P) + ... + phi^(n-1)(P)`, which lies in `E(F_q)`.
    ///
    /// The conjugates are summed in the order `phi^(s*i)` for the first
    /// stride `s` that avoids an exceptional denominator.
    pub fn trace(&self, p: &AffinePoint) -> Result<AffinePoint> {
        let n = self.n();
        let conj = self.orbit(p);
        let mut last = Error::ExceptionalDenominator;
        for s in 1..n {
            let sum = (1..n).try_fold(conj[0].clone(), |acc, i| self.add(&acc, &conj[(s * i) % n]));
            match sum {
                Ok(t) => {
                    assert!(
                        self.fqn.is_base(&t.x) && self.fqn.is_base(&t.y),
                        "trace left the base field"
                    );
                    return Ok(t);
                }
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    pub fn is_trace_zero(&self, p: &AffinePoint) -> bool {
        counters::suspended(|| {
            self.is_on_curve(p) && matches!(self.trace(p), Ok(t) if self.is_identity(&t))
        })
    }

    /// A random affine point of `E(F_{q^n})`: a random `y` that lifts, with a
    /// random sign on `x`.
    pub fn random_point(&self, rng: &mut dyn RngCore) -> Result<AffinePoint> {
        for _ in 0..MAX_SAMPLES {
            let y = self.fqn.random(rng);
            if let Some(p) = self.lift_y(&y) {
                return Ok(if rng.next_u32() & 1 == 1 { self.neg(&p) } else { p });
            }
        }
        Err(Error::SamplingFailed(MAX_SAMPLES))
    }

    /// `phi(Q) - Q` for a random `Q`, which is a random element of `T_n`.
    pub fn random_trace_zero(&self, rng: &mut dyn RngCore) -> Result<AffinePoint> {
        for _ in 0..MAX_SAMPLES {
            let q = self.random_point(rng)?;
            if let Ok(p) = self.sub(&self.frobenius(&q, 1), &q) {
                return Ok(p);
            }
        }
        Err(Error::SamplingFailed(MAX_SAMPLES))
    }

    /// Checks the configured `|T_n|` against `samples` random trace-zero
    /// points.
    pub fn check_tz_order(&self, samples: usize, rng: &mut dyn RngCore) -> Result<()> {
        let Some(ord) = &self.tz_order else {
            return Ok(());
        };
        for _ in 0..samples {
            let p = self.random_trace_zero(rng)?;
            if !self.is_identity(&self.scalar_mul(&p, ord)?) {
                return Err(Error::InvalidParams(format!("[{ord}]P != O for a trace-zero P")));
            }
        }
        Ok(())
    }

    /// `y`-coordinates of the points of order 3 in `E(F_q)`, ascending.
    ///
    /// Unless configured, these are the roots in `F_q` of
    /// `d y^4 + 2 d y^3 - 2 a y - a` whose points are rational: the
    /// condition `[2]P = -P` rewritten with the curve equation.
    pub fn three_torsion_y(&self) -> &[FqElement] {
        self.three_torsion.get_or_init(|| {
            counters::suspended(|| {
                let f = self.base();
                let (a, d) = (&self.a, &self.d);
                let quartic = UniPoly::new(
                    f,
                    vec![
                        f.neg(a),
                        f.neg(&f.mul_u64(a, 2)),
                        f.zero(),
                        f.mul_u64(d, 2),
                        d.clone(),
                    ],
                );
                let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
                roots_in_fq(f, &quartic, &mut rng)
                    .into_iter()
                    .filter(|y| {
                        let y2 = f.raw_mul(y, y);
                        let den = f.sub(a, &f.raw_mul(d, &y2));
                        match f.raw_inv(&den) {
                            Ok(inv) => f.is_square(&f.raw_mul(&f.sub(&f.one(), &y2), &inv)),
                            Err(_) => false,
                        }
                    })
                    .collect()
            })
        })
    }
}

//! Compression through the rational function `q_P = (1 + y) q1(y) + x q2(y)`
//! whose affine zeros are exactly the Frobenius conjugates of `P` (plus the
//! fixed point `O'`). Its coefficients lie in `F_q`, `q1` has degree at most
//! `(n - 3) / 2`, `q2` at most `(n - 1) / 2`, and after scaling the top
//! coefficient of `q2` is a single bit.
//!
//! Decompression recovers the `y`-coordinates as the roots of
//! `Q_P(y) = (a - d y^2)(1 + y) q1(y)^2 + (y - 1) q2(y)^2`, the norm of `q_P`
//! to `F_q(y)` divided by `1 + y`.

use std::fmt;

use rand::RngCore;

use crate::bigfield::{counters, Fq, FqElement, Fqn, FqnElement};
use crate::edwards::{AffinePoint, EdwardsCurve};
use crate::error::{Error, Result};
use crate::polyalg::{roots_in_fqn, UniPoly};

/// Coefficients of `q_P`, lowest degree first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPoly {
    pub q1: Vec<FqElement>,
    pub q2: Vec<FqElement>,
}

/// `(a_0, ..., a_{h-1}, b_0, ..., b_{h-1}, bit)` with `h = (n - 1) / 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunRep {
    pub a: Vec<FqElement>,
    pub b: Vec<FqElement>,
    pub bit: bool,
}

impl RatFunRep {
    pub fn n(&self) -> usize {
        2 * self.a.len() + 1
    }

    pub fn from_qpoly(f: &Fq, q: &QPoly) -> Result<RatFunRep> {
        let h = q.q1.len();
        if q.q2.len() != h + 1 {
            return Err(Error::Internal("q2 must have one more coefficient than q1".into()));
        }
        let top = &q.q2[h];
        let bit = if top.is_zero() {
            false
        } else if *top == f.one() {
            true
        } else {
            return Err(Error::Internal("q_P is not normalized".into()));
        };
        Ok(RatFunRep {
            a: q.q1.clone(),
            b: q.q2[..h].to_vec(),
            bit,
        })
    }

    pub fn qpoly(&self, f: &Fq) -> QPoly {
        let mut q2 = self.b.clone();
        q2.push(if self.bit { f.one() } else { f.zero() });
        QPoly { q1: self.a.clone(), q2 }
    }

    pub fn parse(curve: &EdwardsCurve, s: &str) -> Result<RatFunRep> {
        let f = curve.base();
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let n = curve.n();
        if parts.len() != n {
            return Err(Error::MalformedRep(format!("expected {n} values, found {}", parts.len())));
        }
        let h = (n - 1) / 2;
        let vals = parts[..n - 1].iter().map(|v| f.parse(v)).collect::<Result<Vec<_>>>()?;
        let bit = match parts[n - 1] {
            "0" => false,
            "1" => true,
            other => return Err(Error::MalformedRep(format!("last entry must be 0 or 1, found {other:?}"))),
        };
        Ok(RatFunRep {
            a: vals[..h].to_vec(),
            b: vals[h..].to_vec(),
            bit,
        })
    }
}

impl fmt::Display for RatFunRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut v: Vec<String> = self.a.iter().chain(&self.b).map(FqElement::to_string).collect();
        v.push(if self.bit { "1" } else { "0" }.to_string());
        f.write_str(&v.join(","))
    }
}

/// `q_P` for `P = O`: the constant multiple of `(y - 1)^h` with top
/// coefficient one.
fn identity_qpoly(f: &Fq, n: usize) -> QPoly {
    let h = (n - 1) / 2;
    let mut q2 = vec![f.one()];
    for _ in 0..h {
        // multiply by (y - 1)
        let mut next = vec![f.zero(); q2.len() + 1];
        for (i, c) in q2.iter().enumerate() {
            next[i + 1] = f.add(&next[i + 1], c);
            next[i] = f.sub(&next[i], c);
        }
        q2 = next;
    }
    QPoly {
        q1: vec![f.zero(); h],
        q2,
    }
}

/// A basis of the right kernel of `m` (rows of equal length).
fn kernel(f: &Fq, mut m: Vec<Vec<FqElement>>, cols: usize) -> Vec<Vec<FqElement>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.raw_inv(&m[r][c]).expect("pivot is nonzero");
        for v in m[r].iter_mut() {
            *v = f.raw_mul(v, &inv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let k = m[i][c].clone();
                let pivot = m[r].clone();
                for (v, pv) in m[i].iter_mut().zip(&pivot) {
                    *v = f.sub(v, &f.raw_mul(&k, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&m[row][fc]);
            }
            v
        })
        .collect()
}

/// Scales a kernel vector `(a_0, .., a_{h-1}, b_0, .., b_h)` so that its
/// highest nonzero `b` is one.
fn normalize(f: &Fq, v: Vec<FqElement>, h: usize) -> Result<QPoly> {
    let top = (h..=2 * h).rev().find(|&i| !v[i].is_zero()).ok_or(Error::NoSolution)?;
    let inv = f.raw_inv(&v[top])?;
    let v: Vec<FqElement> = v.iter().map(|c| f.raw_mul(c, &inv)).collect();
    Ok(QPoly {
        q1: v[..h].to_vec(),
        q2: v[h..].to_vec(),
    })
}

/// Power series of `x` around `P = (u, v)` in `t = y - v`, to `n` terms.
fn x_series(f: &Fq, a: &FqElement, d: &FqElement, u: &FqElement, v: &FqElement, n: usize) -> Result<Vec<FqElement>> {
    let one = f.one();
    let two = f.from_u64(2);
    let v2 = f.raw_mul(v, v);
    let mut num = vec![f.sub(&one, &v2), f.neg(&f.raw_mul(&two, v)), f.neg(&one)];
    let mut den = vec![
        f.sub(a, &f.raw_mul(d, &v2)),
        f.neg(&f.raw_mul(&f.raw_mul(&two, d), v)),
        f.neg(d),
    ];
    num.resize(n.max(3), f.zero());
    den.resize(n.max(3), f.zero());
    let den_inv = f.raw_inv(&den[0])?;
    let mut s = vec![f.zero(); n];
    for k in 0..n {
        let mut acc = num[k].clone();
        for i in 1..=k {
            acc = f.sub(&acc, &f.raw_mul(&den[i], &s[k - i]));
        }
        s[k] = f.raw_mul(&acc, &den_inv);
    }
    let two_u_inv = f.raw_inv(&f.raw_mul(&two, u))?;
    let mut x = vec![u.clone()];
    for k in 1..n {
        let mut acc = s[k].clone();
        for i in 1..k {
            acc = f.sub(&acc, &f.raw_mul(&x[i], &x[k - i]));
        }
        x.push(f.raw_mul(&acc, &two_u_inv));
    }
    Ok(x)
}

fn series_mul(f: &Fq, a: &[FqElement], b: &[FqElement], n: usize) -> Vec<FqElement> {
    let mut out = vec![f.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = f.add(&out[i + j], &f.raw_mul(x, y));
        }
    }
    out
}

/// `q_P` by linear algebra, used as the reference implementation.
///
/// For `P` outside `E(F_q)` the condition `q_P(P) = 0` in `F_{q^n}` gives `n`
/// linear equations over `F_q` in the `n` unknown coefficients. For
/// `P` in `E(F_q)` the conditions are that `q_P` vanishes to order `n` at `P`,
/// expanded in the local parameter `y - v`.
pub fn compute_qp_linear(curve: &EdwardsCurve, p: &AffinePoint) -> Result<QPoly> {
    counters::suspended(|| {
        let k = curve.field();
        let f = curve.base();
        let n = curve.n();
        let h = (n - 1) / 2;
        if curve.is_identity(p) {
            return Ok(identity_qpoly(f, n));
        }
        let rows = match (k.as_base(&p.x), k.as_base(&p.y)) {
            (Some(u), Some(v)) => {
                if u.is_zero() {
                    return Err(Error::NoSolution);
                }
                let xs = x_series(f, curve.a(), curve.d(), &u, &v, n)?;
                // columns: (1 + y) y^i for q1, x y^j for q2, as series in t
                let y = vec![v.clone(), f.one()];
                let mut ypow = vec![vec![f.one()]];
                for i in 1..=h {
                    ypow.push(series_mul(f, &ypow[i - 1], &y, n));
                }
                let one_plus_y = vec![f.add(&f.one(), &v), f.one()];
                let mut cols: Vec<Vec<FqElement>> = Vec::new();
                for yp in ypow.iter().take(h) {
                    cols.push(series_mul(f, &one_plus_y, yp, n));
                }
                for yp in &ypow {
                    cols.push(series_mul(f, &xs, yp, n));
                }
                transpose(f, &cols, n)
            }
            _ => {
                let (u, v) = (&p.x, &p.y);
                let mut vpow = vec![k.one()];
                for i in 1..=h {
                    vpow.push(k.raw_mul(&vpow[i - 1], v));
                }
                let one_plus_v = k.add(&k.one(), v);
                let mut cols: Vec<Vec<FqElement>> = Vec::new();
                for vp in vpow.iter().take(h) {
                    cols.push(k.raw_mul(&one_plus_v, vp).coeffs().to_vec());
                }
                for vp in &vpow {
                    cols.push(k.raw_mul(u, vp).coeffs().to_vec());
                }
                transpose(f, &cols, n)
            }
        };
        let ker = kernel(f, rows, n);
        if ker.len() != 1 {
            return Err(Error::NoSolution);
        }
        normalize(f, ker.into_iter().next().expect("one kernel vector"), h)
    })
}

fn transpose(f: &Fq, cols: &[Vec<FqElement>], rows: usize) -> Vec<Vec<FqElement>> {
    (0..rows)
        .map(|r| cols.iter().map(|c| c.get(r).cloned().unwrap_or_else(|| f.zero())).collect())
        .collect()
}

/// `q_P` for `n = 3` by the case analysis on `t = (v + 1) / u`.
///
/// Outside `E(F_q)` this costs 1M + 1I in `F_{q^3}` and 2S + 6M + 1I in
/// `F_q`: with `t^q - t` and `v^q - v` written in the basis `xi, xi^2` as
/// `(B_1, B_2)` and `(A_1, A_2)`, the ratio `A / B` lies in `F_q` and equals
/// `(A_1 B_1^2 + mu A_2 B_2^2) / (B_1^3 + mu B_2^3)`. The denominator is
/// nonzero because `mu` is not a cube.
fn qp_n3(curve: &EdwardsCurve, p: &AffinePoint) -> Result<QPoly> {
    let k = curve.field();
    let f = curve.base();
    let one = f.one();
    let zero = f.zero();
    if curve.is_identity(p) {
        return Ok(identity_qpoly(f, 3));
    }
    let case_two = |t: &FqElement| -> Result<QPoly> {
        let a0 = f.neg(&f.inv(t)?);
        Ok(QPoly {
            q1: vec![a0],
            q2: vec![one.clone(), zero.clone()],
        })
    };
    if let (Some(u), Some(v)) = (k.as_base(&p.x), k.as_base(&p.y)) {
        if u.is_zero() {
            return Err(Error::NoSolution);
        }
        let u2 = f.square(&u);
        let den = f.sub(&f.mul(&f.mul_const(&u2, curve.d()), &v), &one);
        if den.is_zero() {
            let t = f.div(&f.add(&v, &one), &u)?;
            return case_two(&t);
        }
        let inv = f.inv(&den)?;
        let a0 = f.mul(&f.mul(&u, &f.sub(&one, &v)), &inv);
        let b0 = f.mul(&f.sub(&v, &f.mul_const(&u2, curve.a())), &inv);
        return Ok(QPoly {
            q1: vec![a0],
            q2: vec![b0, one],
        });
    }
    let t = k.mul(&k.add(&p.y, &k.one()), &k.inv(&p.x)?);
    let tc = t.coeffs();
    if tc[1].is_zero() && tc[2].is_zero() {
        return case_two(&tc[0]);
    }
    let vc = p.y.coeffs();
    let (w1, w2) = (
        f.sub(k.omega_pow(1), &one),
        f.sub(k.omega_pow(2), &one),
    );
    let a1 = f.mul_const(&vc[1], &w1);
    let a2 = f.mul_const(&vc[2], &w2);
    let b1 = f.mul_const(&tc[1], &w1);
    let b2 = f.mul_const(&tc[2], &w2);
    let b1s = f.square(&b1);
    let b2s = f.square(&b2);
    let mu = k.mu();
    let num = f.add(&f.mul(&a1, &b1s), &f.mul_const(&f.mul(&a2, &b2s), mu));
    let den = f.add(&f.mul(&b1s, &b1), &f.mul_const(&f.mul(&b2s, &b2), mu));
    let a0 = f.neg(&f.mul(&num, &f.inv(&den)?));
    let b0 = f.neg(&f.add(&f.mul(&a0, &tc[0]), &vc[0]));
    Ok(QPoly {
        q1: vec![a0],
        q2: vec![b0, one],
    })
}

/// The conic `p (y + 1) + x (y + q)` through two affine points with
/// nonzero `x`, or `None` when they do not determine it.
pub fn conic_through(k: &Fqn, p1: &AffinePoint, p2: &AffinePoint) -> Option<(FqnElement, FqnElement)> {
    let one = k.one();
    let (u1, v1, u2, v2) = (&p1.x, &p1.y, &p2.x, &p2.y);
    let det = k.sub(&k.mul(&k.add(v1, &one), u2), &k.mul(&k.add(v2, &one), u1));
    let inv = k.inv(&det).ok()?;
    let u1u2 = k.mul(u1, u2);
    let p = k.mul(&k.mul(&u1u2, &k.sub(v2, v1)), &inv);
    let q = k.mul(
        &k.sub(
            &k.mul(&k.mul(&k.add(v2, &one), u1), v1),
            &k.mul(&k.mul(&k.add(v1, &one), u2), v2),
        ),
        &inv,
    );
    Some((p, q))
}

/// Variants of the closed formula for `b_0` for `n = 5`; the printed
/// formula has an unmatched parenthesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum B0Variant {
    /// `k (X) - 1 + ...`
    OutsideK,
    /// `k (X - 1) + ...`
    InsideK,
}

/// `q_P` for `n = 5` in the generic case through three conics. `None` when a
/// conic degenerates or a coefficient falls outside `F_q`.
pub fn qp_n5_conics(curve: &EdwardsCurve, p: &AffinePoint, variant: B0Variant) -> Result<Option<QPoly>> {
    let k = curve.field();
    let one = k.one();
    let conj = curve.orbit(p);
    if conj.iter().any(|c| c.x.is_zero()) {
        return Ok(None);
    }
    let (Some((p1, q1)), s2) = (conic_through(k, &conj[0], &conj[1]), curve.add(&conj[0], &conj[1])) else {
        return Ok(None);
    };
    let Ok(s2) = s2 else { return Ok(None) };
    if s2.x.is_zero() {
        return Ok(None);
    }
    let Some((p2, q2)) = conic_through(k, &s2, &conj[2]) else {
        return Ok(None);
    };
    let Ok(s3) = curve.add(&s2, &conj[2]) else {
        return Ok(None);
    };
    if s3.x.is_zero() {
        return Ok(None);
    }
    let Some((p3, q3)) = conic_through(k, &s3, &conj[3]) else {
        return Ok(None);
    };
    let d = k.embed(curve.d());
    let a = k.embed(curve.a());
    let (k1, k2) = (s2.y.clone(), s3.y.clone());
    let p1p2 = k.mul(&p1, &p2);
    let sum_pp = k.add(&k.add(&p1p2, &k.mul(&p1, &p3)), &k.mul(&p2, &p3));
    let ppp = k.mul(&p1p2, &p3);
    let sum_p = k.add(&k.add(&p1, &p2), &p3);
    let sum_q = k.add(&k.add(&q1, &q2), &q3);
    let sum_ppq = k.add(
        &k.add(&k.mul(&p1p2, &q3), &k.mul(&k.mul(&p1, &p3), &q2)),
        &k.mul(&k.mul(&p2, &p3), &q1),
    );
    let sum_pq = [(&p1, &q2), (&p1, &q3), (&q1, &p2), (&q1, &p3), (&p2, &q3), (&q2, &p3)]
        .iter()
        .fold(k.zero(), |acc, (x, y)| k.add(&acc, &k.mul(x, y)));
    let sum_qq = k.add(&k.add(&k.mul(&q1, &q2), &k.mul(&q1, &q3)), &k.mul(&q2, &q3));
    let Ok(kk) = k.inv(&k.add(&k.mul_const(&sum_pp, &d), &one)) else {
        return Ok(None);
    };
    let ksum = k.add(&k1, &k2);
    let two = k.from_u64(2);
    let three = k.from_u64(3);
    let a1 = k.mul(&kk, &k.add(&k.mul_const(&ppp, &d), &sum_p));
    let a0 = k.add(
        &k.mul(&kk, &k.add(&k.add(&k.mul_const(&ppp, &k.mul_const(&d, &three)), &sum_pq), &sum_p)),
        &k.mul(&a1, &k.sub(&ksum, &two)),
    );
    let b1 = k.add(
        &k.mul(
            &kk,
            &k.add(
                &k.add(&k.mul_const(&sum_ppq, &d), &k.mul_const(&sum_pp, &k.mul_const(&d, &two))),
                &sum_q,
            ),
        ),
        &k.sub(&ksum, &one),
    );
    let x = k.add(
        &k.add(&k.mul_const(&sum_ppq, &k.mul_const(&d, &two)), &k.mul_const(&sum_pp, &k.sub(&d, &a))),
        &sum_qq,
    );
    let head = match variant {
        B0Variant::OutsideK => k.sub(&k.mul(&kk, &x), &one),
        B0Variant::InsideK => k.mul(&kk, &k.sub(&x, &one)),
    };
    let b0 = k.add(
        &k.add(&head, &k.mul(&b1, &k.sub(&ksum, &one))),
        &k.sub(&ksum, &k.mul(&k1, &k2)),
    );
    let coeffs = [a0, a1, b0, b1].iter().map(|c| k.as_base(c)).collect::<Option<Vec<_>>>();
    let Some(c) = coeffs else { return Ok(None) };
    let f = curve.base();
    Ok(Some(QPoly {
        q1: vec![c[0].clone(), c[1].clone()],
        q2: vec![c[2].clone(), c[3].clone(), f.one()],
    }))
}

/// `q_P` by the explicit formulas, falling back to linear algebra where
/// they do not apply.
pub fn compute_qp(curve: &EdwardsCurve, p: &AffinePoint) -> Result<QPoly> {
    match curve.n() {
        3 => qp_n3(curve, p),
        5 => {
            if curve.is_identity(p) || curve.field().is_base(&p.y) {
                return compute_qp_linear(curve, p);
            }
            match qp_n5_conics(curve, p, B0Variant::InsideK)? {
                Some(q) => Ok(q),
                None => compute_qp_linear(curve, p),
            }
        }
        n => Err(Error::InvalidParams(format!("n = {n} is not supported"))),
    }
}

pub fn compress(curve: &EdwardsCurve, p: &AffinePoint) -> Result<RatFunRep> {
    if !counters::suspended(|| curve.is_on_curve(p)) {
        return Err(Error::NotOnCurve);
    }
    if !curve.is_trace_zero(p) {
        return Err(Error::NotTraceZero);
    }
    RatFunRep::from_qpoly(curve.base(), &compute_qp(curve, p)?)
}

/// `Q_P(y) = (a - d y^2)(1 + y) q1(y)^2 + (y - 1) q2(y)^2`, which must
/// have degree exactly `n`.
pub fn build_root_poly(curve: &EdwardsCurve, rep: &RatFunRep) -> Result<UniPoly<FqElement>> {
    let f = curve.base();
    let n = curve.n();
    if rep.n() != n || rep.b.len() != rep.a.len() {
        return Err(Error::MalformedRep(format!("representation does not match n = {n}")));
    }
    let q = rep.qpoly(f);
    let q1 = UniPoly::new(f, q.q1);
    let q2 = UniPoly::new(f, q.q2);
    let ad = UniPoly::new(f, vec![curve.a().clone(), f.zero(), f.neg(curve.d())]);
    let one_plus_y = UniPoly::new(f, vec![f.one(), f.one()]);
    let y_minus_1 = UniPoly::new(f, vec![f.neg(&f.one()), f.one()]);
    let poly = ad
        .mul(f, &one_plus_y)
        .mul(f, &q1.square(f))
        .add(f, &y_minus_1.mul(f, &q2.square(f)));
    match poly.degree() {
        Some(dg) if dg == n => Ok(poly),
        found => Err(Error::DegreeDefect {
            expected: n,
            found: found.unwrap_or(0),
        }),
    }
}

fn eval_ext(k: &Fqn, c: &[FqElement], v: &FqnElement) -> FqnElement {
    c.iter().rev().fold(k.zero(), |acc, ci| k.add(&k.mul(&acc, v), &k.embed(ci)))
}

/// The trace-zero points with this representation: one Frobenius orbit,
/// sorted by `(y, x)`, or empty.
pub fn decompress(curve: &EdwardsCurve, rep: &RatFunRep, rng: &mut dyn RngCore) -> Result<Vec<AffinePoint>> {
    let k = curve.field();
    let f = curve.base();
    let poly = build_root_poly(curve, rep)?;
    let q = rep.qpoly(f);
    let mut out = Vec::new();
    for v in roots_in_fqn(k, &poly, rng) {
        let u = if v == k.one() {
            k.zero()
        } else {
            let num = k.mul(&eval_ext(k, &q.q1, &v), &k.add(&v, &k.one()));
            let den = eval_ext(k, &q.q2, &v);
            k.neg(&k.div(&num, &den)?)
        };
        let pt = AffinePoint { x: u, y: v };
        if curve.is_trace_zero(&pt) {
            out.push(pt);
        }
    }
    out.sort();
    Ok(out)
}

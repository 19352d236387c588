use std::fmt;

use num_bigint::BigUint;
use rand::RngCore;

use super::counters::{self, Op};
use super::fq::{Fq, FqElement};
use super::params::FieldParams;
use super::sqrt::TonelliShanks;
use super::Field;
use crate::error::{Error, Result};

/// An element `c_0 + c_1 xi + ... + c_{n-1} xi^{n-1}` of `F_{q^n}`.
///
/// The derived order compares coefficient vectors lexicographically,
/// constant term first. It is the order used to pick canonical square roots
/// and to sort decompression output.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqnElement {
    coeffs: Vec<FqElement>,
}

impl FqnElement {
    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FqElement::is_zero)
    }
}

impl fmt::Display for FqnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FqnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// The Kummer extension `F_q[xi]/(xi^n - mu)`.
#[derive(Clone)]
pub struct Fqn {
    params: FieldParams,
    base: Fq,
    n: usize,
    mu: FqElement,
    /// `omega^k` for `k < n`, where `omega = mu^((q-1)/n)` and `xi^q = omega xi`.
    omega_pows: Vec<FqElement>,
    order: BigUint,
    ts: TonelliShanks<FqnElement>,
}

impl fmt::Debug for Fqn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fqn(q={}, n={}, mu={})", self.params.q, self.n, self.mu)
    }
}

impl Fqn {
    pub fn new(params: &FieldParams) -> Result<Fqn> {
        params.validate()?;
        let base = Fq::new(params.q.clone())?;
        let n = params.n;
        let mu = base.elem(&params.mu);
        let omega = base.pow(&mu, &((&params.q - 1u32) / n));
        let mut omega_pows = vec![base.one()];
        for k in 1..n {
            omega_pows.push(base.raw_mul(&omega_pows[k - 1], &omega));
        }
        let order = params.q.pow(n as u32);
        let mut field = Fqn {
            params: params.clone(),
            base,
            n,
            mu,
            omega_pows,
            order,
            ts: TonelliShanks::placeholder(),
        };
        let ts = TonelliShanks::with_candidates(
            &field,
            (0..).map(|k| field.add(&field.xi(), &field.from_u64(k))),
        );
        field.ts = ts;
        Ok(field)
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn base(&self) -> &Fq {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> &FqElement {
        &self.mu
    }

    /// `omega^k` with `xi^q = omega xi`.
    pub fn omega_pow(&self, k: usize) -> &FqElement {
        &self.omega_pows[k % self.n]
    }

    pub fn zero(&self) -> FqnElement {
        FqnElement {
            coeffs: vec![self.base.zero(); self.n],
        }
    }

    pub fn one(&self) -> FqnElement {
        self.embed(&self.base.one())
    }

    pub fn xi(&self) -> FqnElement {
        let mut e = self.zero();
        e.coeffs[1] = self.base.one();
        e
    }

    pub fn embed(&self, c: &FqElement) -> FqnElement {
        let mut e = self.zero();
        e.coeffs[0] = c.clone();
        e
    }

    pub fn from_u64(&self, v: u64) -> FqnElement {
        self.embed(&self.base.from_u64(v))
    }

    pub fn from_coeffs(&self, coeffs: Vec<FqElement>) -> Result<FqnElement> {
        if coeffs.len() != self.n {
            return Err(Error::Parse(format!(
                "expected {} coefficients, found {}",
                self.n,
                coeffs.len()
            )));
        }
        Ok(FqnElement { coeffs })
    }

    /// The base-field value of `a`, if `a` lies in `F_q`.
    pub fn as_base(&self, a: &FqnElement) -> Option<FqElement> {
        if a.coeffs[1..].iter().all(FqElement::is_zero) {
            Some(a.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_base(&self, a: &FqnElement) -> bool {
        self.as_base(a).is_some()
    }

    pub fn random(&self, rng: &mut dyn RngCore) -> FqnElement {
        FqnElement {
            coeffs: (0..self.n).map(|_| self.base.random(rng)).collect(),
        }
    }

    /// Parses `"c0,c1,...,c_{n-1}"`, constant term first.
    pub fn parse(&self, s: &str) -> Result<FqnElement> {
        let coeffs = s
            .split(',')
            .map(|c| self.base.parse(c))
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(coeffs)
    }

    fn zip(&self, a: &FqnElement, b: &FqnElement, f: impl Fn(&FqElement, &FqElement) -> FqElement) -> FqnElement {
        FqnElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f(x, y)).collect(),
        }
    }

    pub fn add(&self, a: &FqnElement, b: &FqnElement) -> FqnElement {
        self.zip(a, b, |x, y| self.base.add(x, y))
    }

    pub fn sub(&self, a: &FqnElement, b: &FqnElement) -> FqnElement {
        self.zip(a, b, |x, y| self.base.sub(x, y))
    }

    pub fn neg(&self, a: &FqnElement) -> FqnElement {
        FqnElement {
            coeffs: a.coeffs.iter().map(|x| self.base.neg(x)).collect(),
        }
    }

    /// Counted multiplication in `F_{q^n}`.
    pub fn mul(&self, a: &FqnElement, b: &FqnElement) -> FqnElement {
        counters::bump(Op::ExtMul);
        self.raw_mul(a, b)
    }

    /// Counted squaring in `F_{q^n}`.
    pub fn square(&self, a: &FqnElement) -> FqnElement {
        counters::bump(Op::ExtSqr);
        self.raw_mul(a, a)
    }

    /// Counted inversion in `F_{q^n}`.
    pub fn inv(&self, a: &FqnElement) -> Result<FqnElement> {
        counters::bump(Op::ExtInv);
        self.raw_inv(a)
    }

    pub fn div(&self, a: &FqnElement, b: &FqnElement) -> Result<FqnElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Multiplication by a base-field scalar, not counted.
    pub fn scale(&self, a: &FqnElement, c: &FqElement) -> FqnElement {
        FqnElement {
            coeffs: a.coeffs.iter().map(|x| self.base.raw_mul(x, c)).collect(),
        }
    }

    /// Multiplication by a fixed constant of `F_{q^n}`, not counted.
    pub fn mul_const(&self, a: &FqnElement, c: &FqnElement) -> FqnElement {
        self.raw_mul(a, c)
    }

    pub(crate) fn raw_mul(&self, a: &FqnElement, b: &FqnElement) -> FqnElement {
        let n = self.n;
        let f = &self.base;
        let mut lo = vec![f.zero(); n];
        let mut hi = vec![f.zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let k = i + j;
                let p = f.raw_mul(x, y);
                if k < n {
                    lo[k] = f.add(&lo[k], &p);
                } else {
                    hi[k - n] = f.add(&hi[k - n], &p);
                }
            }
        }
        for k in 0..n {
            if !hi[k].is_zero() {
                lo[k] = f.add(&lo[k], &f.raw_mul(&hi[k], &self.mu));
            }
        }
        FqnElement { coeffs: lo }
    }

    /// Inverse by the extended Euclidean algorithm on `a(X)` and `X^n - mu`.
    pub(crate) fn raw_inv(&self, a: &FqnElement) -> Result<FqnElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.base;
        let mut modulus = vec![f.zero(); self.n + 1];
        modulus[0] = f.neg(&self.mu);
        modulus[self.n] = f.one();
        let mut r0 = modulus;
        let mut r1 = trimmed(a.coeffs.clone());
        let mut s0 = vec![];
        let mut s1 = vec![f.one()];
        while r1.len() > 1 {
            let (quo, rem) = divmod(f, &r0, &r1)?;
            let s2 = poly_sub(f, &s0, &poly_mul(f, &quo, &s1));
            (r0, r1) = (r1, rem);
            (s0, s1) = (s1, s2);
        }
        let c = f.raw_inv(&r1[0])?;
        let mut coeffs: Vec<FqElement> = s1.iter().map(|x| f.raw_mul(x, &c)).collect();
        coeffs.resize(self.n, f.zero());
        Ok(FqnElement { coeffs })
    }

    /// Uncounted exponentiation.
    pub fn pow(&self, a: &FqnElement, e: &BigUint) -> FqnElement {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.raw_mul(&acc, &acc);
            if e.bit(i) {
                acc = self.raw_mul(&acc, a);
            }
        }
        acc
    }

    /// `a^(q^i)`, coefficientwise through the table `xi^(q^i) = omega^i xi`.
    pub fn frobenius(&self, a: &FqnElement, i: usize) -> FqnElement {
        let n = self.n;
        let i = i % n;
        FqnElement {
            coeffs: a
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| self.base.raw_mul(c, &self.omega_pows[(i * j) % n]))
                .collect(),
        }
    }

    /// `a, a^q, ..., a^(q^(n-1))`.
    pub fn conjugates(&self, a: &FqnElement) -> Vec<FqnElement> {
        (0..self.n).map(|i| self.frobenius(a, i)).collect()
    }

    pub fn norm(&self, a: &FqnElement) -> FqElement {
        let conj = self.conjugates(a);
        let prod = conj[1..].iter().fold(a.clone(), |acc, c| self.raw_mul(&acc, c));
        self.as_base(&prod).expect("norm lies in the base field")
    }

    /// For odd `n`, `a` is a square in `F_{q^n}` exactly when its norm is a
    /// square in `F_q`.
    pub fn is_square(&self, a: &FqnElement) -> bool {
        self.base.is_square(&self.norm(a))
    }

    /// Square root, choosing the lexicographically smaller coefficient vector.
    pub fn sqrt(&self, a: &FqnElement) -> Option<FqnElement> {
        let r = self.ts.sqrt(self, a)?;
        let s = self.neg(&r);
        Some(if s < r { s } else { r })
    }

    /// `(e_1, ..., e_n)` with `prod_i (T - a^(q^i)) = T^n - e_1 T^(n-1) + ... + (-1)^n e_n`.
    pub fn char_poly_coeffs(&self, a: &FqnElement) -> Vec<FqElement> {
        let f = &self.base;
        // poly[k] is the coefficient of T^k.
        let mut poly = vec![self.one()];
        for c in self.conjugates(a) {
            let mut next = vec![self.zero(); poly.len() + 1];
            for (k, p) in poly.iter().enumerate() {
                next[k + 1] = self.add(&next[k + 1], p);
                next[k] = self.sub(&next[k], &self.raw_mul(p, &c));
            }
            poly = next;
        }
        (1..=self.n)
            .map(|k| {
                let c = self
                    .as_base(&poly[self.n - k])
                    .expect("characteristic polynomial coefficient outside the base field");
                if k % 2 == 1 {
                    f.neg(&c)
                } else {
                    c
                }
            })
            .collect()
    }
}

fn trimmed(mut p: Vec<FqElement>) -> Vec<FqElement> {
    while p.last().is_some_and(FqElement::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(f: &Fq, a: &[FqElement], b: &[FqElement]) -> Vec<FqElement> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.raw_mul(x, y));
        }
    }
    trimmed(out)
}

fn poly_sub(f: &Fq, a: &[FqElement], b: &[FqElement]) -> Vec<FqElement> {
    let len = a.len().max(b.len());
    let z = f.zero();
    let out = (0..len)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(out)
}

fn divmod(f: &Fq, a: &[FqElement], b: &[FqElement]) -> Result<(Vec<FqElement>, Vec<FqElement>)> {
    let lead_inv = f.raw_inv(b.last().ok_or(Error::DivisionByZero)?)?;
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return Ok((vec![], rem));
    }
    let mut quo = vec![f.zero(); rem.len() - b.len() + 1];
    for k in (0..quo.len()).rev() {
        let c = f.raw_mul(&rem[k + b.len() - 1], &lead_inv);
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] = f.sub(&rem[k + j], &f.raw_mul(&c, y));
        }
        quo[k] = c;
    }
    rem.truncate(b.len() - 1);
    Ok((trimmed(quo), trimmed(rem)))
}

impl Field for Fqn {
    type Elem = FqnElement;

    fn zero(&self) -> FqnElement {
        Fqn::zero(self)
    }
    fn one(&self) -> FqnElement {
        Fqn::one(self)
    }
    fn is_zero(&self, a: &FqnElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FqnElement, b: &FqnElement) -> FqnElement {
        Fqn::add(self, a, b)
    }
    fn sub(&self, a: &FqnElement, b: &FqnElement) -> FqnElement {
        Fqn::sub(self, a, b)
    }
    fn neg(&self, a: &FqnElement) -> FqnElement {
        Fqn::neg(self, a)
    }
    fn mul(&self, a: &FqnElement, b: &FqnElement) -> FqnElement {
        Fqn::mul(self, a, b)
    }
    fn square(&self, a: &FqnElement) -> FqnElement {
        Fqn::square(self, a)
    }
    fn inv(&self, a: &FqnElement) -> Result<FqnElement> {
        Fqn::inv(self, a)
    }
    fn from_u64(&self, v: u64) -> FqnElement {
        Fqn::from_u64(self, v)
    }
    fn random(&self, rng: &mut dyn RngCore) -> FqnElement {
        Fqn::random(self, rng)
    }
    fn cardinality(&self) -> &BigUint {
        &self.order
    }
    fn pow(&self, a: &FqnElement, e: &BigUint) -> FqnElement {
        Fqn::pow(self, a, e)
    }
    fn is_square(&self, a: &FqnElement) -> bool {
        Fqn::is_square(self, a)
    }
}

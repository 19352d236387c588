use std::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, RngCore};

use super::counters::{self, Op};
use super::params::is_probable_prime;
use super::sqrt::TonelliShanks;
use super::Field;
use crate::error::{Error, Result};

/// An element of a prime field, always reduced into `[0, q)`.
///
/// Elements do not carry their modulus; all arithmetic goes through the
/// owning [`Fq`]. Fields whose modulus fits in a machine word store values
/// inline.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElement(Repr);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Word(u64),
    Big(BigUint),
}

impl FqElement {
    pub fn to_biguint(&self) -> BigUint {
        match &self.0 {
            Repr::Word(v) => BigUint::from(*v),
            Repr::Big(v) => v.clone(),
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match &self.0 {
            Repr::Word(v) => Some(*v),
            Repr::Big(v) => v.to_u64(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Word(v) => *v == 0,
            Repr::Big(v) => v.is_zero(),
        }
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Word(v) => write!(f, "{v}"),
            Repr::Big(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The prime field `F_q`.
#[derive(Clone)]
pub struct Fq {
    q: BigUint,
    word: Option<u64>,
    ts: TonelliShanks<FqElement>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({})", self.q)
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for Fq {}

impl Fq {
    /// Builds `F_q`; `q` must be an odd prime.
    pub fn new(q: BigUint) -> Result<Fq> {
        if q < BigUint::from(3u32) || !q.bit(0) {
            return Err(Error::InvalidParams(format!("q = {q} is not an odd prime")));
        }
        if !is_probable_prime(&q) {
            return Err(Error::InvalidParams(format!("q = {q} is composite")));
        }
        let word = q.to_u64();
        let mut field = Fq {
            q,
            word,
            ts: TonelliShanks::placeholder(),
        };
        let ts = TonelliShanks::with_candidates(&field, (2..).map(|v| field.from_u64(v)));
        field.ts = ts;
        Ok(field)
    }

    pub fn modulus(&self) -> &BigUint {
        &self.q
    }

    pub fn bits(&self) -> u64 {
        self.q.bits()
    }

    /// Reduces an arbitrary integer into the field.
    pub fn elem(&self, v: &BigUint) -> FqElement {
        match self.word {
            Some(q) => FqElement(Repr::Word((v % q).to_u64().unwrap())),
            None => FqElement(Repr::Big(v % &self.q)),
        }
    }

    pub fn from_u64(&self, v: u64) -> FqElement {
        match self.word {
            Some(q) => FqElement(Repr::Word(v % q)),
            None => FqElement(Repr::Big(BigUint::from(v))),
        }
    }

    pub fn from_u128(&self, v: u128) -> FqElement {
        match self.word {
            Some(q) => FqElement(Repr::Word((v % q as u128) as u64)),
            None => self.elem(&BigUint::from(v)),
        }
    }

    pub fn from_i64(&self, v: i64) -> FqElement {
        let e = self.from_u64(v.unsigned_abs());
        if v < 0 {
            self.neg(&e)
        } else {
            e
        }
    }

    /// Parses a decimal integer, which must already lie in `[0, q)`.
    pub fn parse(&self, s: &str) -> Result<FqElement> {
        let v: BigUint = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not a decimal integer: {s:?}")))?;
        if v >= self.q {
            return Err(Error::Parse(format!("{v} is not reduced modulo {}", self.q)));
        }
        Ok(self.elem(&v))
    }

    pub fn zero(&self) -> FqElement {
        self.from_u64(0)
    }

    pub fn one(&self) -> FqElement {
        self.from_u64(1)
    }

    pub fn random(&self, rng: &mut dyn RngCore) -> FqElement {
        match self.word {
            Some(q) => FqElement(Repr::Word(rng.gen_range(0..q))),
            None => FqElement(Repr::Big(rng.gen_biguint_below(&self.q))),
        }
    }

    pub fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        match (&a.0, &b.0, self.word) {
            (Repr::Word(x), Repr::Word(y), Some(q)) => {
                let (s, carry) = x.overflowing_add(*y);
                FqElement(Repr::Word(if carry || s >= q { s.wrapping_sub(q) } else { s }))
            }
            (Repr::Big(x), Repr::Big(y), None) => {
                let s = x + y;
                FqElement(Repr::Big(if s >= self.q { s - &self.q } else { s }))
            }
            _ => unreachable!("element from a different field"),
        }
    }

    pub fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        match (&a.0, &b.0, self.word) {
            (Repr::Word(x), Repr::Word(y), Some(q)) => {
                FqElement(Repr::Word(if x >= y { x - y } else { q - (y - x) }))
            }
            (Repr::Big(x), Repr::Big(y), None) => FqElement(Repr::Big(if x >= y {
                x - y
            } else {
                &self.q - (y - x)
            })),
            _ => unreachable!("element from a different field"),
        }
    }

    pub fn neg(&self, a: &FqElement) -> FqElement {
        if a.is_zero() {
            return a.clone();
        }
        match (&a.0, self.word) {
            (Repr::Word(x), Some(q)) => FqElement(Repr::Word(q - x)),
            (Repr::Big(x), None) => FqElement(Repr::Big(&self.q - x)),
            _ => unreachable!("element from a different field"),
        }
    }

    /// Counted multiplication (M).
    pub fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        counters::bump(Op::Mul);
        self.raw_mul(a, b)
    }

    /// Counted squaring (S).
    pub fn square(&self, a: &FqElement) -> FqElement {
        counters::bump(Op::Sqr);
        self.raw_mul(a, a)
    }

    /// Counted inversion (I).
    pub fn inv(&self, a: &FqElement) -> Result<FqElement> {
        counters::bump(Op::Inv);
        self.raw_inv(a)
    }

    /// Multiplication by a fixed constant (curve coefficient, `mu`, small
    /// integer). Not counted.
    pub fn mul_const(&self, a: &FqElement, c: &FqElement) -> FqElement {
        self.raw_mul(a, c)
    }

    pub fn mul_u64(&self, a: &FqElement, c: u64) -> FqElement {
        self.raw_mul(a, &self.from_u64(c))
    }

    pub fn div(&self, a: &FqElement, b: &FqElement) -> Result<FqElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub(crate) fn raw_mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        match (&a.0, &b.0, self.word) {
            (Repr::Word(x), Repr::Word(y), Some(q)) => {
                FqElement(Repr::Word(((*x as u128 * *y as u128) % q as u128) as u64))
            }
            (Repr::Big(x), Repr::Big(y), None) => FqElement(Repr::Big((x * y) % &self.q)),
            _ => unreachable!("element from a different field"),
        }
    }

    pub(crate) fn raw_inv(&self, a: &FqElement) -> Result<FqElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (&a.0, self.word) {
            (Repr::Word(x), Some(q)) => Ok(FqElement(Repr::Word(inv_word(*x, q)))),
            (Repr::Big(x), None) => Ok(FqElement(Repr::Big(x.modpow(&(&self.q - 2u32), &self.q)))),
            _ => unreachable!("element from a different field"),
        }
    }

    pub fn pow(&self, a: &FqElement, e: &BigUint) -> FqElement {
        match (&a.0, self.word) {
            (Repr::Big(x), None) => FqElement(Repr::Big(x.modpow(e, &self.q))),
            _ => {
                let mut acc = self.one();
                for i in (0..e.bits()).rev() {
                    acc = self.raw_mul(&acc, &acc);
                    if e.bit(i) {
                        acc = self.raw_mul(&acc, a);
                    }
                }
                acc
            }
        }
    }

    pub fn pow_u64(&self, a: &FqElement, e: u64) -> FqElement {
        self.pow(a, &BigUint::from(e))
    }

    /// Legendre symbol test; zero is a square.
    pub fn is_square(&self, a: &FqElement) -> bool {
        a.is_zero() || self.pow(a, &((&self.q - 1u32) >> 1)) == self.one()
    }

    /// Square root, choosing the root with the smaller integer value.
    pub fn sqrt(&self, a: &FqElement) -> Option<FqElement> {
        let r = self.ts.sqrt(self, a)?;
        let s = self.neg(&r);
        Some(if s < r { s } else { r })
    }

    /// `n`-th power test for `n | q - 1`.
    pub fn is_nth_power(&self, a: &FqElement, n: u64) -> bool {
        if a.is_zero() {
            return true;
        }
        self.pow(a, &((&self.q - 1u32) / n)) == self.one()
    }
}

fn inv_word(a: u64, q: u64) -> u64 {
    let (mut r0, mut r1) = (q as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(q as i128) as u64
}

impl Field for Fq {
    type Elem = FqElement;

    fn zero(&self) -> FqElement {
        Fq::zero(self)
    }
    fn one(&self) -> FqElement {
        Fq::one(self)
    }
    fn is_zero(&self, a: &FqElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        Fq::add(self, a, b)
    }
    fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        Fq::sub(self, a, b)
    }
    fn neg(&self, a: &FqElement) -> FqElement {
        Fq::neg(self, a)
    }
    fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        Fq::mul(self, a, b)
    }
    fn square(&self, a: &FqElement) -> FqElement {
        Fq::square(self, a)
    }
    fn inv(&self, a: &FqElement) -> Result<FqElement> {
        Fq::inv(self, a)
    }
    fn from_u64(&self, v: u64) -> FqElement {
        Fq::from_u64(self, v)
    }
    fn random(&self, rng: &mut dyn RngCore) -> FqElement {
        Fq::random(self, rng)
    }
    fn cardinality(&self) -> &BigUint {
        &self.q
    }
    fn pow(&self, a: &FqElement, e: &BigUint) -> FqElement {
        Fq::pow(self, a, e)
    }
    fn is_square(&self, a: &FqElement) -> bool {
        Fq::is_square(self, a)
    }
}

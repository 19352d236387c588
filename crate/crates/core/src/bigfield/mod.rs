//! Prime fields `F_q` and Kummer extensions `F_q[xi]/(xi^n - mu)`.

pub mod counters;
mod fq;
mod fqn;
mod params;
mod sqrt;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::RngCore;

use crate::error::Result;

pub use fq::{Fq, FqElement};
pub use fqn::{Fqn, FqnElement};
pub use params::{is_probable_prime, FieldParams, FieldParamsJson};

/// Common interface of [`Fq`] and [`Fqn`], used by the generic polynomial
/// and root-finding code.
pub trait Field {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn square(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_u64(&self, v: u64) -> Self::Elem;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// Number of elements of the field.
    fn cardinality(&self) -> &BigUint;

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Euler's criterion. Zero counts as a square.
    fn is_square(&self, a: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let e = (self.cardinality() - 1u32) >> 1;
        self.pow(a, &e) == self.one()
    }
}

/// Splits `m` as `2^s * odd`.
pub(crate) fn two_adic(m: &BigUint) -> (u64, BigUint) {
    debug_assert!(!m.is_zero());
    let s = m.trailing_zeros().unwrap_or(0);
    (s, m >> s)
}

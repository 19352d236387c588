//! Opt-in, thread-local operation counters.
//!
//! Counting follows the usual convention for field operation counts: only
//! general multiplications (M), squarings (S) and inversions (I) are
//! recorded. Additions and multiplications by fixed constants are free.
//! Base-field operations performed *inside* an extension-field operation are
//! not recorded separately; the extension operation is counted instead.

use std::cell::Cell;
use std::ops::{Add, AddAssign};

use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpCounts {
    pub mul: u64,
    pub sqr: u64,
    pub inv: u64,
    pub ext_mul: u64,
    pub ext_sqr: u64,
    pub ext_inv: u64,
}

impl OpCounts {
    /// Counts restricted to the base field, as `(S, M, I)`.
    pub fn base(&self) -> (u64, u64, u64) {
        (self.sqr, self.mul, self.inv)
    }

    /// Counts restricted to the extension field, as `(S, M, I)`.
    pub fn ext(&self) -> (u64, u64, u64) {
        (self.ext_sqr, self.ext_mul, self.ext_inv)
    }
}

impl Add for OpCounts {
    type Output = OpCounts;
    fn add(self, o: OpCounts) -> OpCounts {
        OpCounts {
            mul: self.mul + o.mul,
            sqr: self.sqr + o.sqr,
            inv: self.inv + o.inv,
            ext_mul: self.ext_mul + o.ext_mul,
            ext_sqr: self.ext_sqr + o.ext_sqr,
            ext_inv: self.ext_inv + o.ext_inv,
        }
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, o: OpCounts) {
        *self = *self + o;
    }
}

#[derive(Clone, Copy)]
pub(crate) enum Op {
    Mul,
    Sqr,
    Inv,
    ExtMul,
    ExtSqr,
    ExtInv,
}

thread_local! {
    static ENABLED: Cell<bool> = const { Cell::new(false) };
    static COUNTS: Cell<OpCounts> = const { Cell::new(OpCounts {
        mul: 0, sqr: 0, inv: 0, ext_mul: 0, ext_sqr: 0, ext_inv: 0,
    }) };
}

#[inline]
pub(crate) fn bump(op: Op) {
    if !ENABLED.with(Cell::get) {
        return;
    }
    COUNTS.with(|c| {
        let mut v = c.get();
        match op {
            Op::Mul => v.mul += 1,
            Op::Sqr => v.sqr += 1,
            Op::Inv => v.inv += 1,
            Op::ExtMul => v.ext_mul += 1,
            Op::ExtSqr => v.ext_sqr += 1,
            Op::ExtInv => v.ext_inv += 1,
        }
        c.set(v);
    });
}

/// Runs `f` with counting enabled and returns its result together with the
/// operations it performed. Nested calls are accumulated into the outer
/// measurement.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, OpCounts) {
    let was_enabled = ENABLED.with(|e| e.replace(true));
    let outer = COUNTS.with(|c| c.replace(OpCounts::default()));
    let out = f();
    let inner = COUNTS.with(Cell::get);
    ENABLED.with(|e| e.set(was_enabled));
    COUNTS.with(|c| c.set(if was_enabled { outer + inner } else { outer }));
    (out, inner)
}

/// Runs `f` with counting disabled. Used for validation work that is not
/// part of the measured algorithm.
pub fn suspended<R>(f: impl FnOnce() -> R) -> R {
    let was_enabled = ENABLED.with(|e| e.replace(false));
    let out = f();
    ENABLED.with(|e| e.set(was_enabled));
    out
}

//! Summation polynomials of a twisted Edwards curve and their symmetrized
//! forms.

use std::sync::OnceLock;

use super::multipoly::MultiPoly;
use super::resultant::resultant;
use super::symmetric::symmetrize;
use crate::bigfield::{Fq, FqElement};
use crate::error::{Error, Result};

/// `f_3` for the curve `a x^2 + y^2 = 1 + d x^2 y^2`, in `z_1, z_2, z_3`.
pub fn f3(f: &Fq, a: &FqElement, d: &FqElement) -> Result<MultiPoly> {
    let c = f.raw_mul(a, &f.raw_inv(d)?);
    let one = f.one();
    let two = f.from_u64(2);
    let neg = |x: &FqElement| f.neg(x);
    let terms = vec![
        (one.clone(), vec![2, 2, 2]),
        (neg(&one), vec![2, 0, 2]),
        (neg(&one), vec![0, 2, 2]),
        (c.clone(), vec![0, 0, 2]),
        (f.raw_mul(&two, &f.sub(&one, &c)), vec![1, 1, 1]),
        (c.clone(), vec![2, 0, 0]),
        (c.clone(), vec![0, 2, 0]),
        (neg(&c), vec![0, 0, 0]),
        (neg(&one), vec![2, 2, 0]),
    ];
    Ok(MultiPoly::from_terms(f, 3, terms))
}

/// `res_t(f_3(z_1, z_2, t), f_3(z_3, z_4, t))`, normalized.
pub fn f4_from(f: &Fq, f3: &MultiPoly) -> Result<MultiPoly> {
    let a = f3.remap(5, &[0, 1, 4]);
    let b = f3.remap(5, &[2, 3, 4]);
    resultant(f, &a, &b, 4)?.remap(4, &[0, 1, 2, 3, 0]).normalized(f)
}

/// `res_t(f_{5-k}(z_1, ..., z_{4-k}, t), f_{k+2}(z_{5-k}, ..., z_5, t))` for
/// `k` in `{1, 2}`, normalized.
pub fn f5_from(f: &Fq, f3: &MultiPoly, f4: &MultiPoly, k: usize) -> Result<MultiPoly> {
    let r = match k {
        1 => {
            let a = f4.remap(6, &[0, 1, 2, 5]);
            let b = f3.remap(6, &[3, 4, 5]);
            resultant(f, &a, &b, 5)?
        }
        2 => {
            let a = f3.remap(6, &[0, 1, 5]);
            let b = f4.remap(6, &[2, 3, 4, 5]);
            resultant(f, &b, &a, 5)?
        }
        _ => return Err(Error::Internal(format!("unsupported split k = {k}"))),
    };
    r.remap(5, &[0, 1, 2, 3, 4, 0]).normalized(f)
}

/// Lazily built `f_3, f_4, f_5, g_3, g_5` for one curve. Each polynomial is
/// computed at most once and may be read from several threads.
#[derive(Debug)]
pub struct SummationPolys {
    f: Fq,
    a: FqElement,
    d: FqElement,
    f3: OnceLock<MultiPoly>,
    f4: OnceLock<MultiPoly>,
    f5: OnceLock<MultiPoly>,
    g3: OnceLock<MultiPoly>,
    g5: OnceLock<MultiPoly>,
}

impl SummationPolys {
    pub fn new(f: &Fq, a: &FqElement, d: &FqElement) -> SummationPolys {
        SummationPolys {
            f: f.clone(),
            a: a.clone(),
            d: d.clone(),
            f3: OnceLock::new(),
            f4: OnceLock::new(),
            f5: OnceLock::new(),
            g3: OnceLock::new(),
            g5: OnceLock::new(),
        }
    }

    pub fn f3(&self) -> &MultiPoly {
        self.f3
            .get_or_init(|| f3(&self.f, &self.a, &self.d).expect("curve has d != 0"))
    }

    pub fn f4(&self) -> &MultiPoly {
        self.f4
            .get_or_init(|| f4_from(&self.f, self.f3()).expect("f4 is nonzero"))
    }

    pub fn f5(&self) -> &MultiPoly {
        self.f5
            .get_or_init(|| f5_from(&self.f, self.f3(), self.f4(), 1).expect("f5 is nonzero"))
    }

    /// Summation polynomial in `n` variables, `n` in `3..=5`.
    pub fn f(&self, n: usize) -> &MultiPoly {
        match n {
            3 => self.f3(),
            4 => self.f4(),
            5 => self.f5(),
            _ => panic!("summation polynomials are provided for 3 <= n <= 5"),
        }
    }

    /// `g_3(e_1, e_2, e_3)`, normalized so that `e_1^2` has coefficient 1.
    pub fn g3(&self) -> &MultiPoly {
        self.g3.get_or_init(|| {
            symmetrize(&self.f, self.f3())
                .and_then(|g| g.normalized(&self.f))
                .expect("f3 is symmetric")
        })
    }

    /// `g_5(e_1, ..., e_5)`, normalized so that `e_1^8` has coefficient 1.
    pub fn g5(&self) -> &MultiPoly {
        self.g5.get_or_init(|| {
            symmetrize(&self.f, self.f5())
                .and_then(|g| g.normalized(&self.f))
                .expect("f5 is symmetric")
        })
    }

    pub fn g(&self, n: usize) -> &MultiPoly {
        match n {
            3 => self.g3(),
            5 => self.g5(),
            _ => panic!("symmetrized polynomials are provided for n = 3, 5"),
        }
    }
}

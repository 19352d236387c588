use std::collections::HashMap;

use super::MultiPoly;
use crate::bigfield::Fq;
use crate::error::{Error, Result};

/// Resultant of `a` and `b` with respect to the variable `var`, as the
/// determinant of the Sylvester matrix whose first rows hold the
/// coefficients of `a` (leading coefficient first). With this convention
/// `res(t - z1, t - z2) = z1 - z2`.
///
/// The determinant is expanded along rows from the top, memoizing minors
/// by their column set. Rows of `b` end up in the memoized minors, so pass
/// the polynomial with the larger coefficients as `a`.
pub fn resultant(f: &Fq, a: &MultiPoly, b: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ca = a.coefficients_in(var);
    let cb = b.coefficients_in(var);
    let (m, k) = (ca.len() - 1, cb.len() - 1);
    let n = m + k;
    if n == 0 {
        return Ok(MultiPoly::constant(f, a.nvars(), f.one()));
    }
    assert!(n <= 64, "Sylvester matrix too large");
    let zero = MultiPoly::zero(a.nvars());
    let mut rows: Vec<Vec<&MultiPoly>> = Vec::with_capacity(n);
    for i in 0..k {
        rows.push((0..n).map(|c| if c >= i && c - i <= m { &ca[m - (c - i)] } else { &zero }).collect());
    }
    for j in 0..m {
        rows.push((0..n).map(|c| if c >= j && c - j <= k { &cb[k - (c - j)] } else { &zero }).collect());
    }
    let mut memo = HashMap::new();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(minor(f, &rows, full, &mut memo))
}

fn minor(f: &Fq, rows: &[Vec<&MultiPoly>], cols: u64, memo: &mut HashMap<u64, MultiPoly>) -> MultiPoly {
    let n = rows.len();
    let r = n - cols.count_ones() as usize;
    let nvars = rows[0][0].nvars();
    if r == n {
        return MultiPoly::constant(f, nvars, f.one());
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    let mut sign_neg = false;
    for c in 0..n {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = rows[r][c];
        if !entry.is_zero() {
            let sub = minor(f, rows, cols & !(1 << c), memo);
            if !sub.is_zero() {
                let t = entry.mul(f, &sub);
                acc = if sign_neg { acc.sub(f, &t) } else { acc.add(f, &t) };
            }
        }
        sign_neg = !sign_neg;
    }
    memo.insert(cols, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn setup() -> Fq {
        Fq::new(BigUint::from(1021u32)).unwrap()
    }

    #[test]
    fn linear_convention() {
        let f = setup();
        // variables z1, z2, t
        let t = MultiPoly::var(&f, 3, 2);
        let a = t.sub(&f, &MultiPoly::var(&f, 3, 0));
        let b = t.sub(&f, &MultiPoly::var(&f, 3, 1));
        let r = resultant(&f, &a, &b, 2).unwrap();
        assert_eq!(r, MultiPoly::var(&f, 3, 0).sub(&f, &MultiPoly::var(&f, 3, 1)));
    }

    #[test]
    fn common_root_gives_zero() {
        let f = setup();
        let t = MultiPoly::var(&f, 1, 0);
        let a = t.sub(&f, &MultiPoly::constant(&f, 1, f.one()));
        assert!(resultant(&f, &a, &a, 0).unwrap().is_zero());
    }

    #[test]
    fn quadratic_against_product_formula() {
        // res(a, b) = lc(a)^deg b * prod b(roots of a) for a = (t-2)(t-3).
        let f = setup();
        let t = MultiPoly::var(&f, 1, 0);
        let c = |v: u64| MultiPoly::constant(&f, 1, f.from_u64(v));
        let a = t.sub(&f, &c(2)).mul(&f, &t.sub(&f, &c(3)));
        let b = t.pow(&f, 3).add(&f, &c(5)).add(&f, &t.scale(&f, &f.from_u64(7)));
        let r = resultant(&f, &a, &b, 0).unwrap();
        let expect = f.mul(&b.eval(&f, &[f.from_u64(2)]), &b.eval(&f, &[f.from_u64(3)]));
        assert_eq!(r, c(0).add(&f, &MultiPoly::constant(&f, 1, expect)));
    }

    #[test]
    fn zero_input_rejected() {
        let f = setup();
        let z = MultiPoly::zero(2);
        let t = MultiPoly::var(&f, 2, 1);
        assert_eq!(resultant(&f, &z, &t, 1), Err(Error::ZeroPolynomial));
    }
}

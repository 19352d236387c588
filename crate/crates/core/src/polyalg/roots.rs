//! Root finding over `F_q` and `F_{q^n}` by distinct-degree isolation and
//! Cantor-Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::RngCore;

use super::UniPoly;
use crate::bigfield::{Field, Fq, FqElement, Fqn, FqnElement};

/// All distinct roots of `p` in `F_q`, ascending.
pub fn roots_in_fq(f: &Fq, p: &UniPoly<FqElement>, rng: &mut dyn RngCore) -> Vec<FqElement> {
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let p = p.monic(f);
    let x = UniPoly::x(f);
    let xq = x.powmod(f, f.modulus(), &p).expect("nonzero modulus");
    let g = p.gcd(f, &xq.sub(f, &x));
    let mut out = Vec::new();
    split_linear(f, g, rng, &mut out);
    out.sort();
    out
}

/// All distinct roots in `F_{q^n}` of a polynomial with coefficients in
/// `F_q`, ascending in the coefficient-vector order.
pub fn roots_in_fqn(fqn: &Fqn, p: &UniPoly<FqElement>, rng: &mut dyn RngCore) -> Vec<FqnElement> {
    let f = fqn.base();
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let p = p.monic(f);
    let x = UniPoly::x(f);
    // X^(q^n) mod p, one q-th power at a time.
    let mut r = x.clone();
    for _ in 0..fqn.degree() {
        r = r.powmod(f, f.modulus(), &p).expect("nonzero modulus");
    }
    let g = p.gcd(f, &r.sub(f, &x));
    let lifted = g.map(fqn, |c| fqn.embed(c));
    let mut out = Vec::new();
    split_linear(fqn, lifted, rng, &mut out);
    out.sort();
    out
}

/// All distinct roots of `p` in the field `f` itself.
pub fn roots_in_field<F: Field>(f: &F, p: &UniPoly<F::Elem>, rng: &mut dyn RngCore) -> Vec<F::Elem> {
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let p = p.monic(f);
    let x = UniPoly::x(f);
    let xq = x.powmod(f, f.cardinality(), &p).expect("nonzero modulus");
    let g = p.gcd(f, &xq.sub(f, &x));
    let mut out = Vec::new();
    split_linear(f, g, rng, &mut out);
    out.sort();
    out
}

/// Splits a monic, squarefree product of distinct linear factors.
fn split_linear<F: Field>(f: &F, g: UniPoly<F::Elem>, rng: &mut dyn RngCore, out: &mut Vec<F::Elem>) {
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            out.push(f.neg(&g.coeffs()[0]));
            return;
        }
        _ => {}
    }
    let half: BigUint = (f.cardinality() - 1u32) >> 1;
    let one = UniPoly::constant(f, f.one());
    loop {
        let delta = f.random(rng);
        let shifted = UniPoly::new(f, vec![delta, f.one()]);
        let h = shifted.powmod(f, &half, &g).expect("nonzero modulus").sub(f, &one);
        let d = g.gcd(f, &h);
        let k = d.degree().unwrap_or(0);
        if k > 0 && Some(k) < g.degree() {
            let (other, _) = g.divmod(f, &d).expect("nonzero divisor");
            split_linear(f, d, rng, out);
            split_linear(f, other.monic(f), rng, out);
            return;
        }
    }
}

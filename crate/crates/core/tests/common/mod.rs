#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tracezero::{CurveJson, EdwardsCurve, Fq, FqElement};

pub fn repo_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

pub fn curve(name: &str) -> EdwardsCurve {
    let text = std::fs::read_to_string(repo_path(&format!("vectors/curves/{name}.json"))).unwrap();
    let j: CurveJson = serde_json::from_str(&text).unwrap();
    EdwardsCurve::from_json(&j).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fq(q: u64) -> Fq {
    Fq::new(BigUint::from(q)).unwrap()
}

pub fn elems(f: &Fq, vals: &[u64]) -> Vec<FqElement> {
    vals.iter().map(|&v| f.from_u64(v)).collect()
}

/// Number of points on the curve over `F_q`, counted on the birational
/// Montgomery model `B v^2 = u^3 + A u^2 + u` with `A = 2(a+d)/(a-d)`,
/// `B = 4/(a-d)`, including the point at infinity.
pub fn montgomery_count(q: u64, a: u64, d: u64) -> u64 {
    let m = |x: u128| (x % q as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = m(r as u128 * b as u128);
            }
            b = m(b as u128 * b as u128);
            e >>= 1;
        }
        r
    };
    let inv = |x: u64| pow(x, q - 2);
    let amd = (a + q - d) % q;
    let big_a = m(2 * m((a + d) as u128) as u128 * inv(amd) as u128);
    let big_b = m(4 * inv(amd) as u128);
    let mut n = 1;
    for u in 0..q {
        let u2 = m(u as u128 * u as u128);
        let rhs = m(m(u2 as u128 * u as u128) as u128 + m(big_a as u128 * u2 as u128) as u128 + u as u128);
        let r = m(big_b as u128 * rhs as u128);
        if r == 0 {
            n += 1;
        } else if pow(r, (q - 1) / 2) == 1 {
            n += 2;
        }
    }
    n
}

/// `|T_n| = #E(F_{q^n}) / #E(F_q)` from the Frobenius trace.
pub fn tz_order(q: u64, n: u32, a: u64, d: u64) -> BigUint {
    let n1 = montgomery_count(q, a, d);
    let t = num_bigint::BigInt::from(q + 1) - num_bigint::BigInt::from(n1);
    let qb = num_bigint::BigInt::from(q);
    let mut s = vec![num_bigint::BigInt::from(2), t.clone()];
    for k in 2..=n as usize {
        let next = &t * &s[k - 1] - &qb * &s[k - 2];
        s.push(next);
    }
    let nn: num_bigint::BigInt = qb.pow(n) + 1 - &s[n as usize];
    let q_big = nn / num_bigint::BigInt::from(n1);
    q_big.to_biguint().unwrap()
}

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first thirteen prime bases, which is a proof of
/// primality below 3.3 * 10^24, plus further fixed bases for larger inputs.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == &BigUint::from(p) {
            return true;
        }
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let extra = [43u32, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
    let bases = SMALL_PRIMES.iter().chain(if n.bits() > 81 { &extra[..] } else { &[] });
    'witness: for &b in bases {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Parameters of the extension `F_{q^n} = F_q[xi]/(xi^n - mu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldParams {
    pub q: BigUint,
    pub n: usize,
    pub mu: BigUint,
}

/// Wire form of [`FieldParams`]; big integers travel as decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldParamsJson {
    pub q: String,
    pub n: usize,
    pub mu: String,
}

impl FieldParams {
    pub fn new(q: BigUint, n: usize, mu: BigUint) -> Result<FieldParams> {
        let p = FieldParams { q, n, mu };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let q = &self.q;
        if q < &BigUint::from(3u32) || q.is_even() || !is_probable_prime(q) {
            return Err(Error::InvalidParams(format!("q = {q} is not an odd prime")));
        }
        let n = self.n;
        if n < 3 || !is_probable_prime(&BigUint::from(n)) {
            return Err(Error::InvalidParams(format!("n = {n} is not an odd prime")));
        }
        let q_minus_1 = q - 1u32;
        if !(&q_minus_1 % n).is_zero() {
            return Err(Error::InvalidParams(format!(
                "n = {n} does not divide q - 1; only the Kummer basis is supported"
            )));
        }
        if self.mu.is_zero() || &self.mu >= q {
            return Err(Error::InvalidParams(format!("mu = {} is not a nonzero residue mod q", self.mu)));
        }
        if self.mu.modpow(&(&q_minus_1 / n), q).is_one() {
            return Err(Error::InvalidParams(format!(
                "mu = {} is an {n}-th power, so xi^{n} - mu is reducible",
                self.mu
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> FieldParamsJson {
        FieldParamsJson {
            q: self.q.to_string(),
            n: self.n,
            mu: self.mu.to_string(),
        }
    }

    pub fn from_json(j: &FieldParamsJson) -> Result<FieldParams> {
        let parse = |name: &str, s: &str| -> Result<BigUint> {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{name}: not a decimal integer: {s:?}")))
        };
        FieldParams::new(parse("q", &j.q)?, j.n, parse("mu", &j.mu)?)
    }

    /// Convenience for small moduli.
    pub fn small(q: u64, n: usize, mu: u64) -> Result<FieldParams> {
        FieldParams::new(BigUint::from(q), n, BigUint::from(mu))
    }

    pub fn q_u64(&self) -> Option<u64> {
        self.q.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_against_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000u64 {
            assert_eq!(is_probable_prime(&BigUint::from(n)), trial(n), "n = {n}");
        }
    }

    #[test]
    fn known_large_primes_and_composites() {
        let p79 = (BigUint::one() << 79) - 67u32;
        assert!(is_probable_prime(&p79));
        assert!(is_probable_prime(&((BigUint::one() << 127) - 1u32)));
        // 2^64 + 1 = 274177 * 67280421310721
        assert!(!is_probable_prime(&((BigUint::one() << 64) + 1u32)));
        // Carmichael number
        assert!(!is_probable_prime(&BigUint::from(561u32)));
        // Strong pseudoprime to bases 2..37
        assert!(!is_probable_prime(&BigUint::from(3317044064679887385961981u128)));
    }

    #[test]
    fn validation() {
        assert!(FieldParams::small(1021, 5, 2).is_ok());
        assert!(FieldParams::small(1021, 5, 1).is_err());
        assert!(FieldParams::small(15, 5, 2).is_err());
        assert!(FieldParams::small(1021, 4, 2).is_err());
        // 7 does not divide 1020
        assert!(FieldParams::small(1021, 7, 2).is_err());
        assert!(FieldParams::small(1021, 5, 1021).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = FieldParams::small(1021, 5, 2).unwrap();
        let s = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(s, r#"{"q":"1021","n":5,"mu":"2"}"#);
        let back: FieldParamsJson = serde_json::from_str(&s).unwrap();
        assert_eq!(FieldParams::from_json(&back).unwrap(), p);
    }
}

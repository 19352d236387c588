use num_bigint::BigUint;

use super::{two_adic, Field};

/// Precomputed Tonelli-Shanks data for a field of odd cardinality `Q`, with
/// `Q - 1 = 2^s * m`, `m` odd.
#[derive(Clone)]
pub(crate) struct TonelliShanks<E> {
    s: u64,
    m: BigUint,
    half_m_plus_1: BigUint,
    /// `z^m` for a fixed non-residue `z`.
    root_of_unity: Option<E>,
}

impl<E: Clone + Eq> TonelliShanks<E> {
    pub(crate) fn placeholder() -> Self {
        TonelliShanks {
            s: 0,
            m: BigUint::default(),
            half_m_plus_1: BigUint::default(),
            root_of_unity: None,
        }
    }

    /// `candidates` must eventually yield a quadratic non-residue.
    pub(crate) fn with_candidates<F, I>(f: &F, candidates: I) -> Self
    where
        F: Field<Elem = E>,
        I: IntoIterator<Item = E>,
    {
        let (s, m) = two_adic(&(f.cardinality() - 1u32));
        let z = candidates
            .into_iter()
            .find(|z| !f.is_square(z))
            .expect("candidate list contains no quadratic non-residue");
        let root_of_unity = Some(f.pow(&z, &m));
        let half_m_plus_1 = (&m + 1u32) >> 1;
        TonelliShanks {
            s,
            m,
            half_m_plus_1,
            root_of_unity,
        }
    }

    /// Some square root of `a`, or `None` for a non-residue.
    pub(crate) fn sqrt<F: Field<Elem = E>>(&self, f: &F, a: &E) -> Option<E> {
        if f.is_zero(a) {
            return Some(f.zero());
        }
        if !f.is_square(a) {
            return None;
        }
        let one = f.one();
        let mut c = self.root_of_unity.clone().expect("uninitialised Tonelli-Shanks data");
        let mut t = f.pow(a, &self.m);
        let mut r = f.pow(a, &self.half_m_plus_1);
        let mut m = self.s;
        while t != one {
            let mut i = 0;
            let mut t2 = t.clone();
            while t2 != one {
                t2 = f.square(&t2);
                i += 1;
                if i == m {
                    return None;
                }
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = f.square(&b);
            }
            m = i;
            c = f.square(&b);
            t = f.mul(&t, &c);
            r = f.mul(&r, &b);
        }
        Some(r)
    }
}

use num_bigint::BigUint;

use crate::bigfield::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first, with no trailing zeros.
///
/// Elements carry no field, so every operation takes the coefficient field
/// explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + Eq> UniPoly<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::new(f, vec![c])
    }

    /// The monic linear polynomial `X - r`.
    pub fn linear_root<F: Field<Elem = E>>(f: &F, r: &E) -> Self {
        UniPoly {
            coeffs: vec![f.neg(r), f.one()],
        }
    }

    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        UniPoly {
            coeffs: vec![f.zero(), f.one()],
        }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero past the degree.
    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| f.add(&self.coeff(f, i), &o.coeff(f, i))).collect();
        Self::new(f, c)
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| f.sub(&self.coeff(f, i), &o.coeff(f, i))).collect();
        Self::new(f, c)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        Self::new(f, self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    pub fn square<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.mul(f, self)
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn divmod<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> Result<(Self, Self)> {
        let dl = d.lead().ok_or(Error::DivisionByZero)?;
        let dl_inv = f.inv(dl)?;
        let dn = d.coeffs.len();
        if self.coeffs.len() < dn {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![f.zero(); rem.len() - dn + 1];
        for k in (0..quo.len()).rev() {
            let c = f.mul(&rem[k + dn - 1], &dl_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, b));
            }
            quo[k] = c;
        }
        rem.truncate(dn - 1);
        Ok((Self::new(f, quo), Self::new(f, rem)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> Result<Self> {
        Ok(self.divmod(f, d)?.1)
    }

    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let li = f.inv(l).expect("nonzero leading coefficient");
                self.scale(f, &li)
            }
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
            .collect();
        Self::new(f, c)
    }

    /// `self^e mod m`.
    pub fn powmod<F: Field<Elem = E>>(&self, f: &F, e: &BigUint, m: &Self) -> Result<Self> {
        let base = self.rem(f, m)?;
        let mut acc = Self::constant(f, f.one()).rem(f, m)?;
        for i in (0..e.bits()).rev() {
            acc = acc.square(f).rem(f, m)?;
            if e.bit(i) {
                acc = acc.mul(f, &base).rem(f, m)?;
            }
        }
        Ok(acc)
    }

    /// Composition `self(g(X)) mod m`, by Horner's rule.
    pub fn compose_mod<F: Field<Elem = E>>(&self, f: &F, g: &Self, m: &Self) -> Result<Self> {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(f, g).add(f, &Self::constant(f, c.clone())).rem(f, m)?;
        }
        Ok(acc)
    }

    /// Applies `h` to every coefficient, e.g. to embed into an extension.
    pub fn map<G: Field>(&self, g: &G, h: impl Fn(&E) -> G::Elem) -> UniPoly<G::Elem> {
        UniPoly::new(g, self.coeffs.iter().map(h).collect())
    }
}

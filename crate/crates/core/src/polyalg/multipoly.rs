use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::bigfield::{Fq, FqElement, Fqn, FqnElement};
use crate::error::{Error, Result};

/// Maximum number of variables of a [`MultiPoly`].
pub const MAX_VARS: usize = 8;
/// Maximum exponent of a single variable.
pub const MAX_EXP: u32 = 127;

const GUARD: u64 = 0x8080_8080_8080_8080;

/// A monomial packed into one word, one byte per variable, with variable 0
/// in the most significant byte. Integer order on the packed word is then
/// lexicographic order with `z_1 > z_2 > ...`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_exps(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut w = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXP, "exponent {e} too large");
            w |= (e as u64) << shift(i);
        }
        Monomial(w)
    }

    pub fn var(i: usize, e: u32) -> Monomial {
        assert!(i < MAX_VARS && e <= MAX_EXP);
        Monomial((e as u64) << shift(i))
    }

    pub fn exp(&self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & 0xff) as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i)).sum()
    }

    pub fn mul(self, o: Monomial) -> Monomial {
        let w = self.0 + o.0;
        assert_eq!(w & GUARD, 0, "exponent overflow");
        Monomial(w)
    }

    fn with_exp(self, i: usize, e: u32) -> Monomial {
        assert!(e <= MAX_EXP);
        Monomial((self.0 & !(0xffu64 << shift(i))) | ((e as u64) << shift(i)))
    }

    pub fn swap(self, i: usize, j: usize) -> Monomial {
        let (ei, ej) = (self.exp(i), self.exp(j));
        self.with_exp(i, ej).with_exp(j, ei)
    }
}

fn shift(i: usize) -> u32 {
    (8 * (MAX_VARS - 1 - i)) as u32
}

/// Sparse polynomial over `F_q` in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, FqElement>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        assert!(nvars <= MAX_VARS);
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(f: &Fq, nvars: usize, c: FqElement) -> MultiPoly {
        MultiPoly::zero(nvars).with_term(f, Monomial::ONE, c)
    }

    /// The variable `z_i` (0-based).
    pub fn var(f: &Fq, nvars: usize, i: usize) -> MultiPoly {
        assert!(i < nvars);
        MultiPoly::zero(nvars).with_term(f, Monomial::var(i, 1), f.one())
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs; like terms
    /// are combined.
    pub fn from_terms(f: &Fq, nvars: usize, terms: impl IntoIterator<Item = (FqElement, Vec<u32>)>) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(f, Monomial::from_exps(&e), &c);
        }
        p
    }

    fn with_term(mut self, f: &Fq, m: Monomial, c: FqElement) -> MultiPoly {
        self.add_term(f, m, &c);
        self
    }

    pub fn add_term(&mut self, f: &Fq, m: Monomial, c: &FqElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = f.add(v, c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FqElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&FqElement> {
        self.terms.get(m)
    }

    /// Largest term in lex order.
    pub fn leading(&self) -> Option<(&Monomial, &FqElement)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, f: &Fq, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(f, *m, c);
        }
        r
    }

    pub fn neg(&self, f: &Fq) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, f: &Fq, o: &MultiPoly) -> MultiPoly {
        self.add(f, &o.neg(f))
    }

    pub fn scale(&self, f: &Fq, s: &FqElement) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, f.raw_mul(c, s))).collect(),
        }
    }

    pub fn mul(&self, f: &Fq, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                r.add_term(f, ma.mul(*mb), &f.raw_mul(ca, cb));
            }
        }
        r
    }

    pub fn pow(&self, f: &Fq, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(f, self.nvars, f.one());
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Scales so that the leading lex coefficient is one.
    pub fn normalized(&self, f: &Fq) -> Result<MultiPoly> {
        let (_, lc) = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(f, &f.raw_inv(lc)?))
    }

    /// Reinterprets the polynomial in `nvars` variables, sending old
    /// variable `i` to new variable `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; nvars];
                for (i, &t) in map.iter().enumerate() {
                    e[t] += m.exp(i);
                }
                (Monomial::from_exps(&e), c.clone())
            })
            .collect();
        MultiPoly { nvars, terms }
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.swap(i, j), c.clone())).collect(),
        }
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    /// The returned polynomials no longer involve `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(var) as usize;
            out[k].terms.insert(m.with_exp(var, 0), c.clone());
        }
        out
    }

    /// Evaluates at a point of `F_q^nvars`.
    pub fn eval(&self, f: &Fq, x: &[FqElement]) -> FqElement {
        assert_eq!(x.len(), self.nvars);
        let pows = power_table(self, x, |a, b| f.raw_mul(a, b), f.one());
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, p) in pows.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = f.raw_mul(&t, &p[e]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Evaluates at a point of `F_{q^n}^nvars`.
    pub fn eval_ext(&self, fqn: &Fqn, x: &[FqnElement]) -> FqnElement {
        assert_eq!(x.len(), self.nvars);
        let pows = power_table(self, x, |a, b| fqn.raw_mul(a, b), fqn.one());
        let mut acc = fqn.zero();
        for (m, c) in &self.terms {
            let mut t = fqn.embed(c);
            for (i, p) in pows.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = fqn.raw_mul(&t, &p[e]);
                }
            }
            acc = fqn.add(&acc, &t);
        }
        acc
    }

    /// Substitutes values for some variables; `None` keeps the variable.
    pub fn partial_eval(&self, f: &Fq, x: &[Option<FqElement>]) -> MultiPoly {
        assert_eq!(x.len(), self.nvars);
        let mut r = MultiPoly::zero(self.nvars);
        let mut cache: Vec<Vec<FqElement>> = vec![vec![f.one()]; self.nvars];
        for (m, c) in &self.terms {
            let mut t = c.clone();
            let mut mono = *m;
            for (i, v) in x.iter().enumerate() {
                let Some(v) = v else { continue };
                let e = m.exp(i) as usize;
                let tab = &mut cache[i];
                while tab.len() <= e {
                    let next = f.raw_mul(tab.last().unwrap(), v);
                    tab.push(next);
                }
                t = f.raw_mul(&t, &tab[e]);
                mono = mono.with_exp(i, 0);
            }
            r.add_term(f, mono, &t);
        }
        r
    }

    /// One `"coeff:e1,e2,..."` line per term, ascending lex order.
    pub fn to_debug_lines(&self) -> String {
        let mut s = String::new();
        for (m, c) in &self.terms {
            let e: Vec<String> = m.exps(self.nvars).iter().map(u32::to_string).collect();
            writeln!(s, "{c}:{}", e.join(",")).unwrap();
        }
        s
    }

    pub fn from_debug_lines(f: &Fq, nvars: usize, text: &str) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(nvars);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: malformed term {line:?}", lineno + 1));
            let (c, e) = line.split_once(':').ok_or_else(bad)?;
            let c = f.parse(c)?;
            let e: Vec<u32> = e
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            if e.len() != nvars || e.iter().any(|&x| x > MAX_EXP) {
                return Err(bad());
            }
            p.add_term(f, Monomial::from_exps(&e), &c);
        }
        Ok(p)
    }
}

fn power_table<E: Clone>(p: &MultiPoly, x: &[E], mul: impl Fn(&E, &E) -> E, one: E) -> Vec<Vec<E>> {
    (0..p.nvars)
        .map(|i| {
            let d = p.degree_in(i) as usize;
            let mut t = vec![one.clone()];
            for k in 1..=d {
                t.push(mul(&t[k - 1], &x[i]));
            }
            t
        })
        .collect()
}

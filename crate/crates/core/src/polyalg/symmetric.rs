//! Rewriting symmetric polynomials in the elementary symmetric functions.
//!
//! A symmetric polynomial in `m` variables of degree at most `D` in each
//! variable is determined by its coefficients at the partitions
//! `D >= l_1 >= ... >= l_m >= 0`. Gauss's method repeatedly removes the
//! lex-largest partition `l` by subtracting a multiple of
//! `e_1^(l_1-l_2) e_2^(l_2-l_3) ... e_m^(l_m)`, whose own largest partition
//! is `l`. The expansions of these products on the partition basis are
//! integer tables that depend only on `(m, D)` and are cached.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::multipoly::{Monomial, MultiPoly};
use crate::bigfield::{Fq, FqElement};
use crate::error::{Error, Result};

struct Table {
    /// Partitions in ascending lex order.
    parts: Vec<Vec<u32>>,
    index: HashMap<Monomial, usize>,
    /// `rows[i][j]`: coefficient of the monomial `z^parts[j]` in the product
    /// of elementary functions led by `parts[i]`; zero for `j > i`.
    rows: Vec<Vec<u128>>,
}

fn partitions(m: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max {
            cur.push(v);
            rec(m, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn subsets(m: usize, k: usize) -> Vec<u32> {
    (0u32..(1 << m)).filter(|s| s.count_ones() as usize == k).collect()
}

impl Table {
    fn build(m: usize, d: u32) -> Table {
        let parts = partitions(m, d);
        let index: HashMap<Monomial, usize> = parts
            .iter()
            .enumerate()
            .map(|(i, p)| (Monomial::from_exps(p), i))
            .collect();
        let subsets_by_k: Vec<Vec<u32>> = (0..=m).map(|k| subsets(m, k)).collect();
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(parts.len());
        for (i, lam) in parts.iter().enumerate() {
            let k = lam.iter().filter(|&&v| v > 0).count();
            if k == 0 {
                rows.push(vec![1]);
                continue;
            }
            let parent: Vec<u32> = lam.iter().map(|&v| v.saturating_sub(1)).collect();
            let prow = &rows[index[&Monomial::from_exps(&parent)]];
            let mut row = vec![0u128; i + 1];
            let mut shifted = vec![0u32; m];
            for (j, nu) in parts[..=i].iter().enumerate() {
                let mut acc = 0u128;
                for &s in &subsets_by_k[k] {
                    let mut ok = true;
                    for (t, slot) in shifted.iter_mut().enumerate() {
                        let bit = (s >> t) & 1;
                        if nu[t] < bit {
                            ok = false;
                            break;
                        }
                        *slot = nu[t] - bit;
                    }
                    if !ok {
                        continue;
                    }
                    shifted.sort_unstable_by(|a, b| b.cmp(a));
                    let pj = index[&Monomial::from_exps(&shifted)];
                    if let Some(v) = prow.get(pj) {
                        acc += v;
                    }
                }
                row[j] = acc;
            }
            rows.push(row);
        }
        Table { parts, index, rows }
    }
}

type TableCache = Mutex<HashMap<(usize, u32), Arc<Table>>>;

fn table(m: usize, d: u32) -> Arc<Table> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(m, d)) {
        return t.clone();
    }
    let t = Arc::new(Table::build(m, d));
    cache.lock().unwrap().insert((m, d), t.clone());
    t
}

/// Checks invariance under all adjacent transpositions, which generate the
/// symmetric group. Reports the first failing pair, 1-based.
pub fn check_symmetric(p: &MultiPoly) -> Result<()> {
    for i in 0..p.nvars().saturating_sub(1) {
        if p.swap_vars(i, i + 1) != *p {
            return Err(Error::NotSymmetric(i + 1, i + 2));
        }
    }
    Ok(())
}

/// Writes a symmetric `p(z_1, ..., z_m)` as `g(e_1, ..., e_m)`. Variable `k`
/// of the result stands for `e_{k+1}`.
pub fn symmetrize(f: &Fq, p: &MultiPoly) -> Result<MultiPoly> {
    check_symmetric(p)?;
    let m = p.nvars();
    let d = p.degree_in(0);
    let tab = table(m, d);
    let mut c: Vec<FqElement> = vec![f.zero(); tab.parts.len()];
    for (mono, coeff) in p.terms() {
        if let Some(&i) = tab.index.get(mono) {
            c[i] = coeff.clone();
        }
    }
    let mut g = MultiPoly::zero(m);
    for i in (0..tab.parts.len()).rev() {
        if c[i].is_zero() {
            continue;
        }
        let lead = c[i].clone();
        let lam = &tab.parts[i];
        let mu: Vec<u32> = (0..m).map(|k| lam[k] - lam.get(k + 1).copied().unwrap_or(0)).collect();
        g.add_term(f, Monomial::from_exps(&mu), &lead);
        for (j, &t) in tab.rows[i].iter().enumerate() {
            if t != 0 {
                c[j] = f.sub(&c[j], &f.raw_mul(&lead, &f.from_u128(t)));
            }
        }
        debug_assert!(c[i].is_zero());
    }
    Ok(g)
}

/// `(e_1(z), ..., e_m(z))`.
pub fn elementary_values(f: &Fq, z: &[FqElement]) -> Vec<FqElement> {
    // e[k] after processing a prefix holds e_k of that prefix.
    let mut e = vec![f.one()];
    for x in z {
        e.push(f.zero());
        for k in (1..e.len()).rev() {
            let t = f.raw_mul(&e[k - 1], x);
            e[k] = f.add(&e[k], &t);
        }
    }
    e.remove(0);
    e
}

/// The elementary symmetric polynomial `e_k` in `m` variables.
pub fn elementary(f: &Fq, m: usize, k: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(m);
    for s in subsets(m, k) {
        let e: Vec<u32> = (0..m).map(|t| (s >> t) & 1).collect();
        p.add_term(f, Monomial::from_exps(&e), &f.one());
    }
    p
}

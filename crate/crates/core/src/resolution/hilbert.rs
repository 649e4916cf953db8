//! Hilbert series and polynomials of graded modules, from leading-term ideals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::groebner::GroebnerBasis;
use crate::monomial::{Monomial, MAX_VARS};
use crate::poly::Rational;

/// `HS_M(t) = N(t) / (1 - t)^nvars` with a Laurent polynomial numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    nvars: usize,
    numerator: BTreeMap<i64, i64>,
}

impl HilbertSeries {
    pub fn from_numerator(nvars: usize, numerator: BTreeMap<i64, i64>) -> Self {
        let numerator = numerator.into_iter().filter(|(_, c)| *c != 0).collect();
        Self { nvars, numerator }
    }

    /// `⊕ R(-twists[k])`.
    pub fn of_free(nvars: usize, twists: &[i64]) -> Self {
        let mut num = BTreeMap::new();
        for &t in twists {
            *num.entry(t).or_insert(0) += 1;
        }
        Self::from_numerator(nvars, num)
    }

    /// `F / M` where `gb` is a Gröbner basis of the submodule `M ⊆ F = ⊕ R(-twists[k])`.
    pub fn of_quotient(gb: &GroebnerBasis, twists: &[i64]) -> Self {
        let nvars = gb.nvars();
        let mut per_comp: Vec<Vec<Monomial>> = vec![Vec::new(); twists.len()];
        for (m, k) in gb.leading_terms() {
            per_comp[k].push(m);
        }
        let mut num = BTreeMap::new();
        for (k, leads) in per_comp.into_iter().enumerate() {
            for (e, c) in monomial_quotient_numerator(leads).into_iter().enumerate() {
                if c != 0 {
                    *num.entry(twists[k] + e as i64).or_insert(0) += c;
                }
            }
        }
        Self::from_numerator(nvars, num)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn numerator(&self) -> &BTreeMap<i64, i64> {
        &self.numerator
    }

    /// `dim_k M_d`.
    pub fn function(&self, d: i64) -> i64 {
        let n = self.nvars as i64 - 1;
        self.numerator.iter().map(|(&k, &c)| c * binomial_int(d - k + n, n)).sum()
    }

    pub fn polynomial(&self) -> HilbertPolynomial {
        let n = self.nvars as i64 - 1;
        let mut acc = vec![Rational::zero()];
        for (&k, &c) in &self.numerator {
            let p = binomial_poly(n - k, n);
            add_scaled(&mut acc, &p, &Rational::from_integer(BigInt::from(c)));
        }
        HilbertPolynomial::new(acc)
    }

    /// `H_M - H_N` for the alternating-sum bookkeeping of exact sequences.
    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        let mut num = self.numerator.clone();
        for (&k, &c) in &other.numerator {
            *num.entry(k).or_insert(0) -= c;
        }
        Self::from_numerator(self.nvars, num)
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        let mut num = self.numerator.clone();
        for (&k, &c) in &other.numerator {
            *num.entry(k).or_insert(0) += c;
        }
        Self::from_numerator(self.nvars, num)
    }

    /// Series of `M(a)`.
    pub fn twisted(&self, a: i64) -> HilbertSeries {
        Self::from_numerator(self.nvars, self.numerator.iter().map(|(&k, &c)| (k - a, c)).collect())
    }
}

/// `C(m, n)` for integers, zero when `m < n` or `m < 0`.
pub fn binomial_int(m: i64, n: i64) -> i64 {
    if n < 0 || m < n {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..n {
        r = r * (m - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

/// Coefficients (ascending in `t`) of `C(t + a, n) = (t+a)(t+a-1)⋯(t+a-n+1)/n!`.
fn binomial_poly(a: i64, n: i64) -> Vec<Rational> {
    let mut p = vec![Rational::one()];
    let mut fact = BigInt::one();
    for i in 0..n {
        // multiply by (t + a - i)
        let c = Rational::from_integer(BigInt::from(a - i));
        let mut next = vec![Rational::zero(); p.len() + 1];
        for (e, v) in p.iter().enumerate() {
            next[e + 1] += v;
            next[e] += v * &c;
        }
        p = next;
        fact *= i + 1;
    }
    let f = Rational::from_integer(fact);
    p.into_iter().map(|v| v / &f).collect()
}

fn add_scaled(acc: &mut Vec<Rational>, p: &[Rational], c: &Rational) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Rational::zero());
    }
    for (e, v) in p.iter().enumerate() {
        acc[e] += v * c;
    }
}

/// Numerator (ascending coefficients) of the Hilbert series of `R / (leads)`.
///
/// Uses `0 → R/(I:x)(-1) → R/I → R/(I+(x)) → 0` with `x` the variable
/// occurring in the most generators, down to ideals with coprime generators.
pub fn monomial_quotient_numerator(gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return vec![0];
    }
    let mut counts = [0usize; MAX_VARS];
    for g in &gens {
        for (i, c) in counts.iter_mut().enumerate() {
            if g.exponent(i) > 0 {
                *c += 1;
            }
        }
    }
    let (x, &most) = counts.iter().enumerate().max_by_key(|(i, c)| (**c, std::cmp::Reverse(*i))).unwrap();
    if most <= 1 {
        let mut p = vec![1i64];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = vec![0i64; p.len() + d];
            for (e, v) in p.iter().enumerate() {
                next[e] += v;
                next[e + d] -= v;
            }
            p = next;
        }
        return p;
    }
    let xv = Monomial::var(x);
    let mut plus = gens.clone();
    plus.push(xv);
    let colon: Vec<Monomial> = gens.iter().map(|g| colon_var(g, x)).collect();
    let a = monomial_quotient_numerator(plus);
    let b = monomial_quotient_numerator(colon);
    let mut out = vec![0i64; a.len().max(b.len() + 1)];
    for (e, v) in a.iter().enumerate() {
        out[e] += v;
    }
    for (e, v) in b.iter().enumerate() {
        out[e + 1] += v;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// `g : x_i`, i.e. `g` with one factor `x_i` removed if present.
fn colon_var(g: &Monomial, i: usize) -> Monomial {
    match g.derivative(i) {
        Some((_, m)) => m,
        None => *g,
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// A polynomial in one variable `t` with rational coefficients (ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    coeffs: Vec<Rational>,
}

impl HilbertPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        Self { coeffs }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, e: usize) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        if self.is_zero() {
            -1
        } else {
            self.coeffs.len() as i64 - 1
        }
    }

    pub fn eval(&self, t: i64) -> Rational {
        let tt = Rational::from_integer(BigInt::from(t));
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &tt + c)
    }

    pub fn eval_int(&self, t: i64) -> Option<i64> {
        let v = self.eval(t);
        if v.is_integer() {
            v.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Rank of a module on `P^n` with this Hilbert polynomial: `n! · a_n` when the degree is `n`.
    pub fn rank(&self, n: usize) -> Rational {
        let mut f = BigInt::one();
        for i in 1..=n {
            f *= i;
        }
        self.coefficient(n) * Rational::from_integer(f)
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = a.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

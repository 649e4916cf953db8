//! Monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Upper bound on the number of ring variables.
pub const MAX_VARS: usize = 12;

/// A monomial `x_0^{e_0} ... x_n^{e_n}` with a cached total degree.
///
/// Exponents beyond the ring's variable count are always zero, so monomials of
/// a fixed ring compare and hash correctly without carrying the ring size.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Panics if there are more than [`MAX_VARS`] exponents or one does not fit in 16 bits.
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut m = Self::default();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.degree += e;
        }
        m
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS);
        let mut m = Self::default();
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        m.degree += other.degree;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, if `self` divides `other`.
    pub fn divide_into(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.degree -= self.degree;
        Some(m)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = Self::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.degree += m.exps[i] as u32;
        }
        m
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut m = Self::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.degree += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Bit `i` set iff `x_i` occurs; a cheap necessary condition for divisibility.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0;
        for i in 0..MAX_VARS {
            if self.exps[i] != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Partial derivative of the monomial: `(e_i, m / x_i)`, or `None` if `x_i` does not occur.
    pub fn derivative(&self, i: usize) -> Option<(u32, Self)> {
        let e = self.exps[i];
        if e == 0 {
            return None;
        }
        let mut m = *self;
        m.exps[i] -= 1;
        m.degree -= 1;
        Some((e as u32, m))
    }

    /// Applies a variable renaming: exponent of variable `i` moves to `map[i]`.
    pub fn permuted(&self, map: &[usize]) -> Self {
        let mut m = Self::default();
        for (i, &j) in map.iter().enumerate() {
            m.exps[j] = self.exps[i];
        }
        m.degree = self.degree;
        m
    }

    /// All monomials of total degree `d` in `nvars` variables, in descending degrevlex order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Self> {
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Self::one());
            }
            return out;
        }
        let mut exps = vec![0u32; nvars];
        fn rec(pos: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 == exps.len() {
                exps[pos] = left;
                out.push(Monomial::from_exponents(exps));
                return;
            }
            for e in (0..=left).rev() {
                exps[pos] = e;
                rec(pos + 1, left - e, exps, out);
            }
        }
        rec(0, d, &mut exps, &mut out);
        out.sort_by(|a, b| degrevlex(b, a));
        out
    }

    pub(crate) fn write_with(&self, f: &mut impl fmt::Write, nvars: usize) -> fmt::Result {
        let mut first = true;
        for i in 0..nvars {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            write!(f, "x_{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = (0..MAX_VARS).rev().find(|&i| self.exps[i] != 0).map_or(0, |i| i + 1);
        self.write_with(f, last)
    }
}

/// Number of monomials of degree `d` in `nvars` variables, `C(d + nvars - 1, nvars - 1)`; zero for `d < 0`.
pub fn count_monomials(nvars: usize, d: i64) -> u64 {
    if d < 0 || nvars == 0 {
        return u64::from(d == 0 && nvars == 0);
    }
    let n = nvars as u64 - 1;
    let mut r: u64 = 1;
    for i in 1..=n {
        r = r * (d as u64 + i) / i;
    }
    r
}

/// Graded reverse lexicographic comparison with `x_0 > x_1 > ... `.
#[inline]
pub fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree.cmp(&b.degree) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Degrevlex,
    Deglex,
    Lex,
}

impl std::str::FromStr for OrderKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "degrevlex" | "grevlex" => Ok(Self::Degrevlex),
            "deglex" | "glex" => Ok(Self::Deglex),
            "lex" => Ok(Self::Lex),
            other => Err(crate::Error::InvalidInput(format!("unknown monomial order `{other}`"))),
        }
    }
}

/// A monomial order on a ring with `nvars` variables.
///
/// `priority` lists the variables from largest to smallest. When `eliminate`
/// is positive, the first `eliminate` variables of `priority` form a block that
/// is compared (by its partial degree) right after the total degree; for
/// homogeneous input this makes the order an elimination order for that block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    eliminate: usize,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        Self { kind, priority: (0..nvars).collect(), eliminate: 0 }
    }

    pub fn degrevlex(nvars: usize) -> Self {
        Self::new(OrderKind::Degrevlex, nvars)
    }

    /// Reorders the variables; `priority[0]` becomes the largest.
    pub fn with_priority(mut self, priority: Vec<usize>) -> Self {
        let mut seen = priority.clone();
        seen.sort_unstable();
        assert!(seen == (0..self.priority.len()).collect::<Vec<_>>(), "not a permutation");
        self.priority = priority;
        self
    }

    /// Degrevlex in which `var` is the smallest variable.
    pub fn degrevlex_with_last(nvars: usize, var: usize) -> Self {
        let mut prio: Vec<usize> = (0..nvars).filter(|&i| i != var).collect();
        prio.push(var);
        Self::degrevlex(nvars).with_priority(prio)
    }

    /// Elimination order for `vars` (homogeneous input), degrevlex-based.
    pub fn elimination(nvars: usize, vars: &[usize]) -> Self {
        let mut prio: Vec<usize> = vars.to_vec();
        prio.extend((0..nvars).filter(|i| !vars.contains(i)));
        Self { kind: OrderKind::Degrevlex, priority: prio, eliminate: vars.len() }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn eliminated(&self) -> usize {
        self.eliminate
    }

    /// Map sending variable `i` to its internal position (`0` = largest).
    pub(crate) fn position_map(&self) -> Vec<usize> {
        let mut map = vec![0; self.priority.len()];
        for (pos, &v) in self.priority.iter().enumerate() {
            map[v] = pos;
        }
        map
    }

    pub(crate) fn raw(&self) -> RawOrder {
        RawOrder { kind: self.kind, eliminate: self.eliminate, nvars: self.priority.len() }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let map = self.position_map();
        self.raw().cmp(&a.permuted(&map), &b.permuted(&map))
    }
}

/// An order on monomials already permuted into priority positions.
#[derive(Clone, Copy, Debug)]
pub(crate) struct RawOrder {
    pub kind: OrderKind,
    pub eliminate: usize,
    pub nvars: usize,
}

impl RawOrder {
    #[inline]
    fn block_degree(&self, m: &Monomial) -> u32 {
        (0..self.eliminate).map(|i| m.exps[i] as u32).sum()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.kind != OrderKind::Lex {
            match a.degree.cmp(&b.degree) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        if self.eliminate > 0 {
            match self.block_degree(a).cmp(&self.block_degree(b)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match self.kind {
            OrderKind::Degrevlex => {
                for i in (0..self.nvars).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }
            OrderKind::Deglex | OrderKind::Lex => {
                for i in 0..self.nvars {
                    if a.exps[i] != b.exps[i] {
                        return a.exps[i].cmp(&b.exps[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

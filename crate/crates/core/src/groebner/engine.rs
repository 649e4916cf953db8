//! Homogeneous Buchberger algorithm for submodules of graded free modules.
//!
//! Vectors are sparse lists of `(monomial, component, integer coefficient)`
//! kept sorted by the module order. Reduction is fraction-free; contents are
//! removed periodically. Pairs are processed degree by degree, which makes
//! minimal-generator detection and degree truncation straightforward.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::monomial::{Monomial, RawOrder};

pub(crate) type Term = (Monomial, u32, BigInt);

#[derive(Clone, Debug, Default)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }
}

/// Which pair of a degree is reduced first; the final basis is independent of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairStrategy {
    /// Smallest lcm first.
    #[default]
    Ascending,
    /// Largest lcm first.
    Descending,
}

#[derive(Clone, Debug, Default)]
pub struct GbOptions {
    pub strategy: PairStrategy,
    /// Stop after this (twisted) degree; the result is then a truncated basis.
    pub max_degree: Option<i64>,
}

#[derive(Clone, Debug)]
pub(crate) struct Context {
    pub order: RawOrder,
    /// Components below `split` dominate every component at or above it.
    pub split: u32,
    pub twists: Vec<i64>,
    pub product_criterion: bool,
}

impl Context {
    #[inline]
    pub fn cmp(&self, a: (&Monomial, u32), b: (&Monomial, u32)) -> Ordering {
        let ua = a.1 < self.split;
        let ub = b.1 < self.split;
        if ua != ub {
            return if ua { Ordering::Greater } else { Ordering::Less };
        }
        match self.order.cmp(a.0, b.0) {
            Ordering::Equal => b.1.cmp(&a.1),
            o => o,
        }
    }

    pub fn sort(&self, terms: &mut [Term]) {
        terms.sort_by(|x, y| self.cmp((&y.0, y.1), (&x.0, x.1)));
    }

    pub fn degree(&self, m: &Monomial, comp: u32) -> i64 {
        m.degree() as i64 + self.twists[comp as usize]
    }

    /// `a*qa*f - b*qb*g` for sorted `f`, `g`.
    fn lin_comb(&self, a: &BigInt, qa: &Monomial, f: &[Term], b: &BigInt, qb: &Monomial, g: &[Term]) -> Vec<Term> {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let a_one = a.is_one();
        let qa_one = qa.is_one();
        let mut fm = f.first().map(|t| if qa_one { t.0 } else { t.0.mul(qa) });
        let mut gm = g.first().map(|t| t.0.mul(qb));
        loop {
            let ord = match (&fm, &gm) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => self.cmp((x, f[i].1), (y, g[j].1)),
            };
            match ord {
                Ordering::Greater => {
                    let c = if a_one { f[i].2.clone() } else { a * &f[i].2 };
                    out.push((fm.unwrap(), f[i].1, c));
                    i += 1;
                    fm = f.get(i).map(|t| if qa_one { t.0 } else { t.0.mul(qa) });
                }
                Ordering::Less => {
                    out.push((gm.unwrap(), g[j].1, -(b * &g[j].2)));
                    j += 1;
                    gm = g.get(j).map(|t| t.0.mul(qb));
                }
                Ordering::Equal => {
                    let c = if a_one { f[i].2.clone() } else { a * &f[i].2 } - b * &g[j].2;
                    if !c.is_zero() {
                        out.push((fm.unwrap(), f[i].1, c));
                    }
                    i += 1;
                    j += 1;
                    fm = f.get(i).map(|t| if qa_one { t.0 } else { t.0.mul(qa) });
                    gm = g.get(j).map(|t| t.0.mul(qb));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub v: Vector,
    pub lead: Monomial,
    pub comp: u32,
    pub mask: u32,
    pub deg: i64,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    deg: i64,
}

fn content(terms: &[Term]) -> BigInt {
    let mut g = BigInt::zero();
    for t in terms {
        g = g.gcd(&t.2);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
/// Returns the factor that was divided out (signed).
pub(crate) fn make_primitive(v: &mut Vector) -> BigInt {
    if v.terms.is_empty() {
        return BigInt::one();
    }
    let mut g = content(&v.terms);
    if v.terms[0].2.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for t in &mut v.terms {
            t.2 = &t.2 / &g;
        }
    }
    g
}

#[derive(Clone, Debug)]
pub(crate) struct Engine {
    pub ctx: Context,
    pub basis: Vec<Elem>,
}

impl Engine {
    pub fn new(ctx: Context) -> Self {
        Self { ctx, basis: Vec::new() }
    }

    fn find_divisor(&self, m: &Monomial, comp: u32, exclude: Option<usize>) -> Option<usize> {
        let mask = m.support_mask();
        self.basis
            .iter()
            .enumerate()
            .position(|(k, e)| Some(k) != exclude && e.comp == comp && e.mask & !mask == 0 && e.lead.divides(m))
    }

    /// Reduces `f` by the basis. With `full`, every term is reduced, otherwise
    /// only the leading term. Returns `(r, s)` with `r = s * remainder`.
    pub fn reduce(&self, f: Vector, full: bool, exclude: Option<usize>) -> (Vector, BigRational) {
        let mut scale = BigRational::one();
        let mut done: Vec<Term> = Vec::new();
        let mut rest = f.terms;
        let mut idx = 0;
        let mut steps = 0usize;
        let one = Monomial::one();
        while idx < rest.len() {
            let (m, comp) = (rest[idx].0, rest[idx].1);
            match self.find_divisor(&m, comp, exclude) {
                Some(k) => {
                    let g = &self.basis[k];
                    let q = g.lead.divide_into(&m).expect("divisor");
                    let lc = &g.v.terms[0].2;
                    let c = &rest[idx].2;
                    let gg = c.gcd(lc);
                    let a = lc / &gg;
                    let b = c / &gg;
                    rest = self.ctx.lin_comb(&a, &one, &rest[idx..], &b, &q, &g.v.terms);
                    idx = 0;
                    if !a.is_one() {
                        for t in &mut done {
                            t.2 *= &a;
                        }
                        scale *= BigRational::from_integer(a);
                    }
                    steps += 1;
                    if steps.is_multiple_of(12) {
                        let mut g = content(&rest);
                        for t in &done {
                            if g.is_one() {
                                break;
                            }
                            g = g.gcd(&t.2);
                        }
                        if !g.is_one() && !g.is_zero() {
                            for t in rest.iter_mut().chain(done.iter_mut()) {
                                t.2 = &t.2 / &g;
                            }
                            scale /= BigRational::from_integer(g);
                        }
                    }
                }
                None => {
                    if !full {
                        break;
                    }
                    idx += 1;
                }
            }
            if full && idx > 0 {
                // Irreducible prefix moves to `done`.
                done.extend(rest.drain(..idx));
                idx = 0;
            }
        }
        done.append(&mut rest);
        let mut v = Vector { terms: done };
        let g = make_primitive(&mut v);
        scale /= BigRational::from_integer(g);
        (v, scale)
    }

    fn spoly(&self, p: &Pair) -> Vector {
        let (gi, gj) = (&self.basis[p.i], &self.basis[p.j]);
        let qi = gi.lead.divide_into(&p.lcm).unwrap();
        let qj = gj.lead.divide_into(&p.lcm).unwrap();
        let ci = &gi.v.terms[0].2;
        let cj = &gj.v.terms[0].2;
        let g = ci.gcd(cj);
        let a = cj / &g;
        let b = ci / &g;
        Vector { terms: self.ctx.lin_comb(&a, &qi, &gi.v.terms, &b, &qj, &gj.v.terms) }
    }

    fn add(&mut self, v: Vector, pending: &mut Vec<Pair>) {
        let (lead, comp) = {
            let t = v.lead().expect("nonzero");
            (t.0, t.1)
        };
        let k = self.basis.len();
        pending.retain(|p| {
            if p.comp != comp || !lead.divides(&p.lcm) {
                return true;
            }
            let li = self.basis[p.i].lead.lcm(&lead);
            let lj = self.basis[p.j].lead.lcm(&lead);
            li == p.lcm || lj == p.lcm
        });
        let mut cands: Vec<(Pair, bool)> = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, e)| e.comp == comp)
            .map(|(i, e)| {
                let lcm = e.lead.lcm(&lead);
                let deg = self.ctx.degree(&lcm, comp);
                (Pair { i, j: k, lcm, comp, deg }, e.lead.is_coprime(&lead))
            })
            .collect();
        // Gebauer-Moeller: drop pairs whose lcm is strictly divisible by another new lcm.
        let lcms: Vec<Monomial> = cands.iter().map(|c| c.0.lcm).collect();
        cands.retain(|(p, _)| !lcms.iter().any(|l| *l != p.lcm && l.divides(&p.lcm)));
        // Equal lcms: keep one, or none if the product criterion applies to any.
        let mut kept: Vec<Pair> = Vec::new();
        let mut used = vec![false; cands.len()];
        for a in 0..cands.len() {
            if used[a] {
                continue;
            }
            let mut any_coprime = cands[a].1;
            for b in a + 1..cands.len() {
                if !used[b] && cands[b].0.lcm == cands[a].0.lcm {
                    used[b] = true;
                    any_coprime |= cands[b].1;
                }
            }
            if !(self.ctx.product_criterion && any_coprime) {
                kept.push(cands[a].0.clone());
            }
        }
        pending.extend(kept);
        let mask = lead.support_mask();
        let deg = self.ctx.degree(&lead, comp);
        self.basis.push(Elem { v, lead, comp, mask, deg });
    }

    /// Runs Buchberger on `inputs` (all homogeneous). Returns, for every input,
    /// whether it was kept as a minimal generator.
    pub fn run(&mut self, inputs: Vec<Vector>, opts: &GbOptions) -> Vec<bool> {
        let mut minimal = vec![false; inputs.len()];
        let mut queue: Vec<(i64, usize)> = inputs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (self.ctx.degree(&v.terms[0].0, v.terms[0].1), i))
            .collect();
        queue.sort();
        let mut inputs: Vec<Option<Vector>> = inputs.into_iter().map(Some).collect();
        let mut qpos = 0;
        let mut pending: Vec<Pair> = Vec::new();
        loop {
            let pd = pending.iter().map(|p| p.deg).min();
            let id = queue.get(qpos).map(|q| q.0);
            let d = match (pd, id) {
                (None, None) => break,
                (Some(a), None) | (None, Some(a)) => a,
                (Some(a), Some(b)) => a.min(b),
            };
            if opts.max_degree.is_some_and(|m| d > m) {
                break;
            }
            let (mut batch, rest): (Vec<Pair>, Vec<Pair>) = pending.drain(..).partition(|p| p.deg == d);
            pending = rest;
            batch.sort_by(|x, y| {
                let o = self.ctx.cmp((&x.lcm, x.comp), (&y.lcm, y.comp)).then((x.i, x.j).cmp(&(y.i, y.j)));
                match opts.strategy {
                    PairStrategy::Ascending => o,
                    PairStrategy::Descending => o.reverse(),
                }
            });
            for p in &batch {
                let s = self.spoly(p);
                if s.is_zero() {
                    continue;
                }
                let (r, _) = self.reduce(s, true, None);
                if !r.is_zero() {
                    self.add(r, &mut pending);
                }
            }
            while qpos < queue.len() && queue[qpos].0 == d {
                let idx = queue[qpos].1;
                qpos += 1;
                let v = inputs[idx].take().unwrap();
                let (r, _) = self.reduce(v, true, None);
                if !r.is_zero() {
                    minimal[idx] = true;
                    self.add(r, &mut pending);
                }
            }
        }
        minimal
    }

    /// Tail-reduces every element, producing the reduced basis (up to scaling).
    pub fn interreduce(&mut self) {
        // Leads are pairwise non-divisible already (degree-by-degree processing),
        // but guard against it anyway for bases assembled from other sources.
        let mut keep = vec![true; self.basis.len()];
        for i in 0..self.basis.len() {
            for j in 0..self.basis.len() {
                if i != j && keep[j] && self.basis[j].comp == self.basis[i].comp {
                    let (lj, li) = (&self.basis[j].lead, &self.basis[i].lead);
                    if lj.divides(li) && (lj != li || j < i) {
                        keep[i] = false;
                        break;
                    }
                }
            }
        }
        let mut it = keep.iter();
        self.basis.retain(|_| *it.next().unwrap());
        for i in 0..self.basis.len() {
            let v = std::mem::take(&mut self.basis[i].v);
            let (r, _) = self.reduce(v, true, Some(i));
            self.basis[i].v = r;
        }
        let ctx = &self.ctx;
        self.basis.sort_by(|a, b| ctx.cmp((&a.lead, a.comp), (&b.lead, b.comp)));
    }

    /// Buchberger's criterion with no pair elimination: every S-vector reduces to zero.
    pub fn verify(&self) -> bool {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let (a, b) = (&self.basis[i], &self.basis[j]);
                if a.comp != b.comp {
                    continue;
                }
                let lcm = a.lead.lcm(&b.lead);
                let p = Pair { i, j, lcm, comp: a.comp, deg: 0 };
                let s = self.spoly(&p);
                if !self.reduce(s, true, None).0.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::{Error, Result};

use super::{primitive_vector, GbOptions, GroebnerBasis};

/// A homogeneous ideal with a lazily computed reduced Gröbner basis.
#[derive(Clone)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Polynomial>,
    order: MonomialOrder,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl Ideal {
    /// Zero generators are dropped; every other generator must be homogeneous.
    pub fn new(nvars: usize, gens: Vec<Polynomial>) -> Result<Self> {
        Self::with_order_unchecked(nvars, gens, MonomialOrder::degrevlex(nvars))
    }

    pub fn with_ring_order(nvars: usize, gens: Vec<Polynomial>, order: MonomialOrder) -> Result<Self> {
        Self::with_order_unchecked(nvars, gens, order)
    }

    fn with_order_unchecked(nvars: usize, gens: Vec<Polynomial>, order: MonomialOrder) -> Result<Self> {
        if nvars > crate::monomial::MAX_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.nvars() != nvars {
                return Err(Error::RingMismatch { left: nvars, right: g.nvars() });
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
            kept.push(g);
        }
        Ok(Self { nvars, gens: kept, order, gb: OnceLock::new() })
    }

    fn from_trusted(nvars: usize, gens: Vec<Polynomial>, order: MonomialOrder) -> Self {
        Self::with_order_unchecked(nvars, gens, order).expect("homogeneous by construction")
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_trusted(nvars, vec![], MonomialOrder::degrevlex(nvars))
    }

    pub fn unit(nvars: usize) -> Self {
        Self::from_trusted(nvars, vec![Polynomial::one(nvars)], MonomialOrder::degrevlex(nvars))
    }

    /// The ideal generated by the given variables.
    pub fn of_variables(nvars: usize, vars: &[usize]) -> Self {
        let gens = vars.iter().map(|&i| Polynomial::var(nvars, i)).collect();
        Self::from_trusted(nvars, gens, MonomialOrder::degrevlex(nvars))
    }

    /// The irrelevant ideal `(x_0, ..., x_n)`.
    pub fn maximal(nvars: usize) -> Self {
        Self::of_variables(nvars, &(0..nvars).collect::<Vec<_>>())
    }

    /// Parses the ideal file format: a `vars: N` header, `#` comments, one generator per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut nvars: Option<usize> = None;
        let mut gens = Vec::new();
        let mut offset = 0;
        for line in text.lines() {
            let body = line.split('#').next().unwrap_or("");
            let trimmed = body.trim();
            let lead = body.len() - body.trim_start().len();
            if !trimmed.is_empty() {
                match nvars {
                    None => {
                        let rest = trimmed.strip_prefix("vars:").ok_or_else(|| Error::Syntax {
                            pos: offset + lead,
                            message: "expected a `vars: N` header".into(),
                        })?;
                        let n: usize = rest.trim().parse().map_err(|_| Error::Syntax {
                            pos: offset + lead,
                            message: "variable count must be a positive integer".into(),
                        })?;
                        if n == 0 {
                            return Err(Error::Syntax { pos: offset + lead, message: "no variables".into() });
                        }
                        if n > crate::monomial::MAX_VARS {
                            return Err(Error::TooManyVariables(n));
                        }
                        nvars = Some(n);
                    }
                    Some(n) => {
                        let f = Polynomial::parse(body, n).map_err(|e| shift_position(e, offset))?;
                        gens.push(f);
                    }
                }
            }
            offset += line.len() + 1;
        }
        let n = nvars.ok_or_else(|| Error::Syntax { pos: 0, message: "missing `vars: N` header".into() })?;
        Self::new(n, gens)
    }

    /// Inverse of [`Ideal::parse`].
    pub fn to_file_format(&self) -> String {
        let mut s = format!("vars: {}\n", self.nvars);
        for g in &self.gens {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Same generators under another order; the cached basis is not carried over.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        assert_eq!(order.nvars(), self.nvars);
        Self { nvars: self.nvars, gens: self.gens.clone(), order, gb: OnceLock::new() }
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            let (gb, _) =
                GroebnerBasis::of_ideal(self.nvars, &self.gens, &self.order).expect("checked at construction");
            Arc::new(gb)
        })
    }

    /// The reduced Gröbner basis, monic, in the engine's (degree-ascending) order.
    pub fn groebner_basis(&self) -> Vec<Polynomial> {
        self.gb().elements().into_iter().map(|mut v| v.pop().unwrap()).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gb().leading_terms().into_iter().map(|(m, _)| m).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.gb().normal_form(std::slice::from_ref(f)).pop().unwrap()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.gb().contains(std::slice::from_ref(f))
    }

    pub fn is_unit(&self) -> bool {
        self.leading_monomials().iter().any(Monomial::is_one)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Equality of ideals, via the reduced Gröbner bases under `self`'s order.
    pub fn equal(&self, other: &Ideal) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        let other = if other.order == self.order { other.clone() } else { other.with_order(self.order.clone()) };
        self.groebner_basis() == other.groebner_basis()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self::from_trusted(self.nvars, gens, self.order.clone())
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Self::from_trusted(self.nvars, gens, self.order.clone())
    }

    /// `I ∩ J`, from a Gröbner basis of `{(f, f) : f ∈ I} ∪ {(g, 0) : g ∈ J}` in `R^2`
    /// with the first component dominating: the elements `(0, h)` generate `I ∩ J`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let z = Polynomial::zero(self.nvars);
        let mut vecs = Vec::new();
        for f in &self.gens {
            vecs.push(vec![f.clone(), f.clone()]);
        }
        for g in &other.gens {
            vecs.push(vec![g.clone(), z.clone()]);
        }
        let (gb, _) = GroebnerBasis::compute(self.nvars, &[0, 0], &vecs, &self.order, 1, &GbOptions::default())
            .expect("homogeneous inputs");
        let gens = gb.tail_elements(1).into_iter().map(|mut v| v.pop().unwrap()).collect();
        Self::from_trusted(self.nvars, gens, self.order.clone()).minimalized()
    }

    pub fn intersect_all(ideals: &[Ideal]) -> Ideal {
        let mut it = ideals.iter();
        let first = it.next().expect("at least one ideal").clone();
        it.fold(first, |acc, j| acc.intersect(j))
    }

    /// `I : (g)` for a single homogeneous `g`, as `(I ∩ (g)) / g`.
    pub fn quotient_by_element(&self, g: &Polynomial) -> Ideal {
        if g.is_zero() {
            return Self::unit(self.nvars);
        }
        let principal = Self::from_trusted(self.nvars, vec![g.clone()], self.order.clone());
        let inter = self.intersect(&principal);
        let gens = inter.gens.iter().map(|h| h.div_exact(g).expect("element of (g)")).collect();
        Self::from_trusted(self.nvars, gens, self.order.clone())
    }

    /// `I : J = ⋂_j (I : g_j)`.
    pub fn quotient(&self, other: &Ideal) -> Ideal {
        if other.is_zero() {
            return Self::unit(self.nvars);
        }
        let parts: Vec<Ideal> = other.gens.iter().map(|g| self.quotient_by_element(g)).collect();
        Self::intersect_all(&parts).with_order(self.order.clone())
    }

    /// Basis under degrevlex with `x_var` smallest: for homogeneous `g`, `x_var`
    /// divides `g` exactly when it divides the leading monomial.
    fn revlex_last_basis(&self, var: usize) -> Vec<Polynomial> {
        self.with_order(MonomialOrder::degrevlex_with_last(self.nvars, var)).groebner_basis()
    }

    /// `I : x_var`.
    pub fn quotient_by_variable(&self, var: usize) -> Ideal {
        let x = Monomial::var(var);
        let gens = self
            .revlex_last_basis(var)
            .into_iter()
            .map(|g| if g.terms().iter().all(|(m, _)| x.divides(m)) { divide_monomial(&g, &x, 1) } else { g })
            .collect();
        Self::from_trusted(self.nvars, gens, self.order.clone())
    }

    /// `I : x_var^∞`.
    pub fn saturate_by_variable(&self, var: usize) -> Ideal {
        let gens = self
            .revlex_last_basis(var)
            .into_iter()
            .map(|g| {
                let k = g.terms().iter().map(|(m, _)| m.exponent(var)).min().unwrap_or(0);
                if k > 0 {
                    divide_monomial(&g, &Monomial::var(var), k)
                } else {
                    g
                }
            })
            .collect();
        Self::from_trusted(self.nvars, gens, self.order.clone())
    }

    /// Saturation by the irrelevant ideal: `I : m^∞ = ⋂_i (I : x_i^∞)`.
    pub fn saturate(&self) -> Ideal {
        if self.is_zero() {
            return self.clone();
        }
        if self.is_unit() {
            return Self::unit(self.nvars).with_order(self.order.clone());
        }
        let parts: Vec<Ideal> =
            (0..self.nvars).map(|i| self.saturate_by_variable(i)).filter(|j| !j.is_unit()).collect();
        if parts.is_empty() {
            return Self::unit(self.nvars).with_order(self.order.clone());
        }
        Self::intersect_all(&parts).with_order(self.order.clone())
    }

    /// `I : J^∞` by iterating `I ↦ I : J` until the ideal stops growing.
    pub fn saturate_by(&self, other: &Ideal) -> Ideal {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(other);
            if next.equal(&cur) {
                return cur;
            }
            cur = next;
        }
    }

    /// `dim_k (I)_d`.
    pub fn graded_piece_dim(&self, d: i64) -> u64 {
        if d < 0 {
            return 0;
        }
        let leads = self.leading_monomials();
        Monomial::all_of_degree(self.nvars, d as u32).into_iter().filter(|m| leads.iter().any(|l| l.divides(m))).count()
            as u64
    }

    /// A basis of `(I)_d`: `m - NF(m)` for each leading monomial `m` of degree `d`.
    pub fn graded_piece_basis(&self, d: i64) -> Vec<Polynomial> {
        if d < 0 {
            return Vec::new();
        }
        let leads = self.leading_monomials();
        Monomial::all_of_degree(self.nvars, d as u32)
            .into_iter()
            .filter(|m| leads.iter().any(|l| l.divides(m)))
            .map(|m| {
                let p = Polynomial::monomial(self.nvars, m, crate::poly::rat(1));
                &p - &self.normal_form(&p)
            })
            .collect()
    }

    /// A minimal homogeneous generating set taken from the generators, with
    /// integer coefficients and no common content.
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        let (_, flags) = GroebnerBasis::of_ideal(self.nvars, &self.gens, &self.order).expect("checked");
        self.gens
            .iter()
            .zip(flags)
            .filter(|(_, keep)| *keep)
            .map(|(g, _)| primitive_vector(std::slice::from_ref(g)).pop().unwrap())
            .collect()
    }

    /// Same ideal, generated by a minimal generating set.
    pub fn minimalized(&self) -> Ideal {
        Self::from_trusted(self.nvars, self.minimal_generators(), self.order.clone())
    }

    /// `I ∩ k[x_j : j ∉ vars]`, still as an ideal of the full ring.
    pub fn eliminate(&self, vars: &[usize]) -> Ideal {
        let elim = self.with_order(MonomialOrder::elimination(self.nvars, vars));
        let gens = elim
            .groebner_basis()
            .into_iter()
            .filter(|g| g.terms().iter().all(|(m, _)| vars.iter().all(|&v| m.exponent(v) == 0)))
            .collect();
        Self::from_trusted(self.nvars, gens, self.order.clone())
    }

    /// Largest degree of a minimal generator (0 for the zero ideal).
    pub fn max_generator_degree(&self) -> u32 {
        self.gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }
}

fn divide_monomial(g: &Polynomial, x: &Monomial, k: u32) -> Polynomial {
    let mut q = Monomial::one();
    for _ in 0..k {
        q = q.mul(x);
    }
    Polynomial::from_terms(g.nvars(), g.terms().iter().map(|(m, c)| (q.divide_into(m).expect("divisible"), c.clone())))
}

fn shift_position(e: Error, offset: usize) -> Error {
    match e {
        Error::Syntax { pos, message } => Error::Syntax { pos: pos + offset, message },
        Error::UnknownVariable { name, pos } => Error::UnknownVariable { name, pos: pos + offset },
        Error::NonIntegerExponent { pos } => Error::NonIntegerExponent { pos: pos + offset },
        other => other,
    }
}

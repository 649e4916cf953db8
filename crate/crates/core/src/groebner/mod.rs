//! Gröbner bases of homogeneous submodules of graded free modules, and the
//! ideal operations built on them.

mod engine;
mod ideal;

pub use engine::{GbOptions, PairStrategy};
pub use ideal::Ideal;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Rational};
use crate::{Error, Result};
use engine::{Context, Engine, Term, Vector};

/// A vector in a graded free module, one polynomial per component.
pub type ModuleVector = Vec<Polynomial>;

/// Degree of a homogeneous vector under the given component twists, or `None` for zero.
pub fn vector_degree(v: &[Polynomial], twists: &[i64]) -> Result<Option<i64>> {
    let mut deg: Option<i64> = None;
    for (k, f) in v.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let fd = f.homogeneous_degree().ok_or_else(|| Error::NotHomogeneous(format!("{f}")))?;
        let d = fd as i64 + twists[k];
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return Err(Error::NotHomogeneous(format!("vector mixes degrees {e} and {d}"))),
            _ => {}
        }
    }
    Ok(deg)
}

/// A Gröbner basis of a submodule of `⊕ R(-twists[k])`.
///
/// With `split > 0` the order is position-over-term between the first `split`
/// components and the rest, so that the elements supported in components
/// `split..` generate the intersection of the submodule with that summand.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    rank: usize,
    order: MonomialOrder,
    to_internal: Vec<usize>,
    engine: Engine,
}

impl GroebnerBasis {
    /// Computes a reduced Gröbner basis. Also returns, per generator, whether it
    /// is part of the minimal generating set selected by the degree-by-degree run.
    pub fn compute(
        nvars: usize,
        twists: &[i64],
        gens: &[ModuleVector],
        order: &MonomialOrder,
        split: usize,
        opts: &GbOptions,
    ) -> Result<(Self, Vec<bool>)> {
        assert_eq!(order.nvars(), nvars, "order and ring disagree");
        for g in gens {
            if g.len() != twists.len() {
                return Err(Error::ShapeMismatch(format!(
                    "vector of length {} in a module of rank {}",
                    g.len(),
                    twists.len()
                )));
            }
            for f in g {
                if f.nvars() != nvars {
                    return Err(Error::RingMismatch { left: nvars, right: f.nvars() });
                }
            }
            vector_degree(g, twists)?;
        }
        let ctx = Context {
            order: order.raw(),
            split: split as u32,
            twists: twists.to_vec(),
            product_criterion: twists.len() == 1,
        };
        let mut gb = Self {
            nvars,
            rank: twists.len(),
            order: order.clone(),
            to_internal: order.position_map(),
            engine: Engine::new(ctx),
        };
        let inputs: Vec<Vector> = gens.iter().map(|g| gb.encode(g)).collect();
        let minimal = gb.engine.run(inputs, opts);
        gb.engine.interreduce();
        Ok((gb, minimal))
    }

    /// Ideal case: rank one, no twist.
    pub fn of_ideal(nvars: usize, gens: &[Polynomial], order: &MonomialOrder) -> Result<(Self, Vec<bool>)> {
        let vecs: Vec<ModuleVector> = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::compute(nvars, &[0], &vecs, order, 0, &GbOptions::default())
    }

    fn encode(&self, v: &[Polynomial]) -> Vector {
        let mut den = BigInt::one();
        for f in v {
            den = den.lcm(&f.denominator_lcm());
        }
        let mut terms: Vec<Term> = Vec::new();
        for (k, f) in v.iter().enumerate() {
            for (m, c) in f.terms() {
                let num = (c * Rational::from_integer(den.clone())).to_integer();
                terms.push((m.permuted(&self.to_internal), k as u32, num));
            }
        }
        self.engine.ctx.sort(&mut terms);
        let mut v = Vector { terms };
        engine::make_primitive(&mut v);
        v
    }

    fn decode(&self, v: &Vector, scale: &BigRational) -> ModuleVector {
        let prio = self.order.priority();
        let mut comps: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); self.rank];
        for (m, k, c) in &v.terms {
            comps[*k as usize].push((m.permuted(prio), Rational::from_integer(c.clone()) / scale));
        }
        comps.into_iter().map(|t| Polynomial::from_terms(self.nvars, t)).collect()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.engine.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.engine.basis.is_empty()
    }

    /// Basis elements normalized so that the leading coefficient is one.
    pub fn elements(&self) -> Vec<ModuleVector> {
        self.engine
            .basis
            .iter()
            .map(|e| {
                let lc = BigRational::from_integer(e.v.terms[0].2.clone());
                self.decode(&e.v, &lc)
            })
            .collect()
    }

    /// Leading monomial and component of each element, in the caller's variables.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        let prio = self.order.priority();
        self.engine.basis.iter().map(|e| (e.lead.permuted(prio), e.comp as usize)).collect()
    }

    /// Twisted degree of each element.
    pub fn degrees(&self) -> Vec<i64> {
        self.engine.basis.iter().map(|e| e.deg).collect()
    }

    /// The unique remainder of `v` modulo the submodule.
    pub fn normal_form(&self, v: &[Polynomial]) -> ModuleVector {
        assert_eq!(v.len(), self.rank, "vector rank");
        let enc = self.encode(v);
        if enc.is_zero() {
            return vec![Polynomial::zero(self.nvars); self.rank];
        }
        // encode() scaled by den/content; recover that factor from one coefficient.
        let (m, k, c) = &enc.terms[0];
        let orig = v[*k as usize].coefficient(&m.permuted(self.order.priority()));
        let factor = Rational::from_integer(c.clone()) / orig;
        let (r, s) = self.engine.reduce(enc, true, None);
        self.decode(&r, &(s * factor))
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        let enc = self.encode(v);
        enc.is_zero() || self.engine.reduce(enc, true, None).0.is_zero()
    }

    /// Checks that every S-vector of the basis reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        self.engine.verify()
    }

    /// Elements whose components below `from` all vanish, restricted to components `from..`.
    pub fn tail_elements(&self, from: usize) -> Vec<ModuleVector> {
        self.elements()
            .into_iter()
            .filter(|v| v[..from].iter().all(Polynomial::is_zero))
            .map(|v| v[from..].to_vec())
            .collect()
    }
}

/// Clears denominators and content of a polynomial, keeping the leading coefficient positive.
pub(crate) fn primitive_vector(v: &[Polynomial]) -> ModuleVector {
    let mut den = BigInt::one();
    for f in v {
        den = den.lcm(&f.denominator_lcm());
    }
    let mut g = BigInt::zero();
    let dq = Rational::from_integer(den);
    let scaled: Vec<Polynomial> = v.iter().map(|f| f.scale(&dq)).collect();
    for f in &scaled {
        for (_, c) in f.terms() {
            g = g.gcd(c.numer());
        }
    }
    if g.is_zero() {
        return scaled;
    }
    let first_sign_negative =
        scaled.iter().find(|f| !f.is_zero()).map(|f| f.terms()[0].1 < Rational::zero()).unwrap_or(false);
    let mut s = Rational::from_integer(g).recip();
    if first_sign_negative {
        s = -s;
    }
    scaled.iter().map(|f| f.scale(&s)).collect()
}

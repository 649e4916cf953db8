//! Polynomial differential forms on `k^{n+1}`: wedge, `d`, contraction, `δ`,
//! and matrices of forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::monomial::Monomial;
use crate::parse::{parse_expr, Expr};
use crate::poly::{write_term, Polynomial, Rational};
use crate::resolution::GradedMap;
use crate::{Error, Result};

/// Strictly increasing index tuple `(i_1 < … < i_p)`.
pub type Indices = Vec<usize>;

/// `Σ A_I dx_I` with `I` strictly increasing and no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PForm {
    nvars: usize,
    p: usize,
    coeffs: BTreeMap<Indices, Polynomial>,
}

/// Sorts `idx` in place; returns the sign of the permutation, or `None` on a repeated index.
fn sort_with_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl PForm {
    pub fn zero(nvars: usize, p: usize) -> Self {
        Self { nvars, p, coeffs: BTreeMap::new() }
    }

    /// The 0-form `f`.
    pub fn function(f: Polynomial) -> Self {
        let mut out = Self::zero(f.nvars(), 0);
        out.add_term(Vec::new(), f);
        out
    }

    pub fn dx(nvars: usize, i: usize) -> Self {
        Self::basis(nvars, &[i])
    }

    /// `dx_{i_1} ∧ … ∧ dx_{i_p}` for arbitrary (unsorted) indices.
    pub fn basis(nvars: usize, idx: &[usize]) -> Self {
        Self::from_terms(nvars, idx.len(), [(idx.to_vec(), Polynomial::one(nvars))])
    }

    /// `dx_0 ∧ … ∧ dx_n`.
    pub fn volume(nvars: usize) -> Self {
        Self::basis(nvars, &(0..nvars).collect::<Vec<_>>())
    }

    /// Collects `Σ f · dx_I`, normalizing each `I` with its permutation sign.
    pub fn from_terms(nvars: usize, p: usize, terms: impl IntoIterator<Item = (Indices, Polynomial)>) -> Self {
        let mut out = Self::zero(nvars, p);
        for (mut idx, f) in terms {
            assert_eq!(idx.len(), p, "index tuple of the wrong length");
            assert!(idx.iter().all(|&i| i < nvars), "index out of range");
            if let Some(s) = sort_with_sign(&mut idx) {
                out.add_term(idx, if s < 0 { -f } else { f });
            }
        }
        out
    }

    fn add_term(&mut self, idx: Indices, f: Polynomial) {
        if f.is_zero() {
            return;
        }
        match self.coeffs.remove(&idx) {
            Some(g) => {
                let s = &g + &f;
                if !s.is_zero() {
                    self.coeffs.insert(idx, s);
                }
            }
            None => {
                self.coeffs.insert(idx, f);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Exterior degree.
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Indices, &Polynomial)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> Polynomial {
        self.coeffs.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    /// The nonzero coefficients, in index order.
    pub fn coefficients(&self) -> Vec<Polynomial> {
        self.coeffs.values().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Common degree of the coefficients, `None` for zero or mixed degrees.
    pub fn coefficient_degree(&self) -> Option<u32> {
        let mut deg = None;
        for f in self.coeffs.values() {
            let d = f.homogeneous_degree()?;
            if deg.is_some_and(|e| e != d) {
                return None;
            }
            deg = Some(d);
        }
        deg
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.coefficient_degree().is_some()
    }

    /// Coefficient degree plus `p`, with `deg dx_i = 1`.
    pub fn total_degree(&self) -> Option<u32> {
        self.coefficient_degree().map(|d| d + self.p as u32)
    }

    fn check(&self, other: &PForm) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &PForm) -> Result<PForm> {
        self.check(other)?;
        if self.p != other.p && !self.is_zero() && !other.is_zero() {
            return Err(Error::ShapeMismatch(format!("adding a {}-form and a {}-form", self.p, other.p)));
        }
        let mut out = if self.is_zero() { Self::zero(self.nvars, other.p) } else { self.clone() };
        for (i, f) in &other.coeffs {
            out.add_term(i.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PForm) -> Result<PForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PForm {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> PForm {
        if c.is_zero() {
            return Self::zero(self.nvars, self.p);
        }
        Self {
            nvars: self.nvars,
            p: self.p,
            coeffs: self.coeffs.iter().map(|(i, f)| (i.clone(), f.scale(c))).collect(),
        }
    }

    /// Integer coefficients with no common factor, same sign.
    pub fn primitive(&self) -> PForm {
        let mut den = BigInt::one();
        for f in self.coeffs.values() {
            den = den.lcm(&f.denominator_lcm());
        }
        let mut g = BigInt::zero();
        for f in self.coeffs.values() {
            for (_, c) in f.terms() {
                g = g.gcd(&(c * Rational::from_integer(den.clone())).to_integer());
            }
        }
        if g.is_zero() {
            return self.clone();
        }
        self.scale(&Rational::new(den, g))
    }

    pub fn mul_poly(&self, g: &Polynomial) -> PForm {
        let mut out = Self::zero(self.nvars, self.p);
        for (i, f) in &self.coeffs {
            out.add_term(i.clone(), f * g);
        }
        out
    }

    /// `self ∧ other`; zero when the degrees exceed `n+1`.
    pub fn wedge(&self, other: &PForm) -> PForm {
        assert_eq!(self.nvars, other.nvars, "ring mismatch");
        let mut out = Self::zero(self.nvars, self.p + other.p);
        if self.p + other.p > self.nvars {
            return out;
        }
        for (a, f) in &self.coeffs {
            for (b, g) in &other.coeffs {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                // sign = (-1)^{#{(i, j) : i in a, j in b, j < i}}
                let inv: usize = a.iter().map(|i| b.iter().filter(|j| *j < i).count()).sum();
                let mut idx: Indices = a.iter().chain(b.iter()).copied().collect();
                idx.sort_unstable();
                let prod = f * g;
                out.add_term(idx, if inv % 2 == 1 { -prod } else { prod });
            }
        }
        out
    }

    /// `dω = Σ_I Σ_j ∂_j A_I dx_j ∧ dx_I`.
    pub fn exterior_derivative(&self) -> PForm {
        let mut out = Self::zero(self.nvars, self.p + 1);
        for (idx, f) in &self.coeffs {
            for j in 0..self.nvars {
                if idx.contains(&j) {
                    continue;
                }
                let df = f.partial_derivative(j).expect("index in range");
                if df.is_zero() {
                    continue;
                }
                let pos = idx.iter().filter(|&&i| i < j).count();
                let mut next = idx.clone();
                next.insert(pos, j);
                out.add_term(next, if pos % 2 == 1 { -df } else { df });
            }
        }
        out
    }

    /// `ι_v ω`. A 0-form contracts to zero.
    pub fn contract(&self, v: &VectorField) -> PForm {
        assert_eq!(self.nvars, v.nvars(), "ring mismatch");
        if self.p == 0 {
            return Self::zero(self.nvars, 0);
        }
        let mut out = Self::zero(self.nvars, self.p - 1);
        for (idx, f) in &self.coeffs {
            for (k, &i) in idx.iter().enumerate() {
                let a = &v.coefficients()[i];
                if a.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(k);
                let prod = f * a;
                out.add_term(rest, if k % 2 == 1 { -prod } else { prod });
            }
        }
        out
    }

    /// `ι_{v_k} ⋯ ι_{v_1} ω`; the empty list contracts to `ω` itself.
    pub fn contract_all(&self, vs: &[VectorField]) -> PForm {
        vs.iter().fold(self.clone(), |w, v| w.contract(v))
    }

    /// `ι_{∂/∂x_i} ω`.
    pub fn contract_partial(&self, i: usize) -> PForm {
        if self.p == 0 {
            return Self::zero(self.nvars, 0);
        }
        let mut out = Self::zero(self.nvars, self.p - 1);
        for (idx, f) in &self.coeffs {
            if let Some(k) = idx.iter().position(|&j| j == i) {
                let mut rest = idx.clone();
                rest.remove(k);
                out.add_term(rest, if k % 2 == 1 { -f } else { f.clone() });
            }
        }
        out
    }

    /// `ι_rad ω` for the radial field `Σ x_i ∂/∂x_i`.
    pub fn contract_rad(&self) -> PForm {
        self.contract(&VectorField::radial(self.nvars))
    }

    /// Whether `ι_rad ω = 0`, i.e. the form descends to projective space.
    pub fn descends(&self) -> bool {
        self.contract_rad().is_zero()
    }

    /// `δω = dω / deg ω`; satisfies `ι_rad δω = ω` when `ι_rad ω = 0`.
    pub fn delta(&self) -> Result<PForm> {
        if self.is_zero() {
            return Ok(Self::zero(self.nvars, self.p + 1));
        }
        let deg = self.total_degree().ok_or_else(|| Error::NotHomogeneous(self.to_string()))?;
        if deg == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(self.exterior_derivative().scale(&Rational::new(1.into(), (deg as i64).into())))
    }

    /// Coefficient polynomials after multiplying out; used for parsing.
    fn from_expr(e: &Expr, nvars: usize) -> Result<PForm> {
        Ok(match e {
            Expr::Num(c) => PForm::function(Polynomial::constant(nvars, c.clone())),
            Expr::Var(i) => PForm::function(Polynomial::var(nvars, *i)),
            Expr::Dx(i) => PForm::dx(nvars, *i),
            Expr::Add(a, b) => Self::from_expr(a, nvars)?.add(&Self::from_expr(b, nvars)?)?,
            Expr::Sub(a, b) => Self::from_expr(a, nvars)?.sub(&Self::from_expr(b, nvars)?)?,
            Expr::Neg(a) => Self::from_expr(a, nvars)?.neg(),
            Expr::Mul(a, b) => Self::from_expr(a, nvars)?.wedge(&Self::from_expr(b, nvars)?),
            Expr::Pow(a, k) => {
                let base = Self::from_expr(a, nvars)?;
                let mut acc = PForm::function(Polynomial::one(nvars));
                for _ in 0..*k {
                    acc = acc.wedge(&base);
                }
                acc
            }
        })
    }

    /// Parses e.g. `x_0*x_1*dx_2 - x_0*x_2*dx_1` or `x_0*dx_1^dx_2`.
    pub fn parse(text: &str, nvars: usize) -> Result<PForm> {
        if nvars > crate::monomial::MAX_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        Self::from_expr(&parse_expr(text, nvars)?, nvars)
    }

    /// `{"p": p, "terms": [{"idx": [..], "coef": ".."}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.coeffs.iter().map(|(i, f)| json!({"idx": i, "coef": f.to_string()})).collect();
        json!({"p": self.p, "terms": terms})
    }

    pub fn from_json(v: &Value, nvars: usize) -> Result<PForm> {
        let bad = |m: &str| Error::InvalidInput(format!("form JSON: {m}"));
        let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("missing `p`"))? as usize;
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing `terms`"))?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let idx: Indices = t
                .get("idx")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing `idx`"))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).filter(|&x| x < nvars))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("bad index"))?;
            if idx.len() != p {
                return Err(bad("index tuple length differs from `p`"));
            }
            let coef = t.get("coef").and_then(Value::as_str).ok_or_else(|| bad("missing `coef`"))?;
            out.push((idx, Polynomial::parse(coef, nvars)?));
        }
        Ok(PForm::from_terms(nvars, p, out))
    }
}

fn dx_suffix(idx: &[usize]) -> String {
    idx.iter().map(|i| format!("dx_{i}")).collect::<Vec<_>>().join("^")
}

impl fmt::Display for PForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (idx, c) in &self.coeffs {
            let suffix = dx_suffix(idx);
            for (m, a) in c.terms() {
                write_term(f, first, m, a, self.nvars, &suffix)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-form[{self}]", self.p)
    }
}

/// `Σ a_j ∂/∂x_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    coeffs: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("a vector field needs at least one coefficient".into()));
        }
        let n = coeffs[0].nvars();
        if coeffs.len() != n {
            return Err(Error::ShapeMismatch(format!("{} coefficients in {n} variables", coeffs.len())));
        }
        if let Some(g) = coeffs.iter().find(|g| g.nvars() != n) {
            return Err(Error::RingMismatch { left: n, right: g.nvars() });
        }
        Ok(Self { coeffs })
    }

    pub fn radial(nvars: usize) -> Self {
        Self { coeffs: (0..nvars).map(|i| Polynomial::var(nvars, i)).collect() }
    }

    /// `∂/∂x_i`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        Self {
            coeffs: (0..nvars).map(|j| if i == j { Polynomial::one(nvars) } else { Polynomial::zero(nvars) }).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Common coefficient degree.
    pub fn degree(&self) -> Option<u32> {
        PForm::from_terms(self.nvars(), 1, self.coeffs.iter().enumerate().map(|(i, a)| (vec![i], a.clone())))
            .coefficient_degree()
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn mul_poly(&self, g: &Polynomial) -> VectorField {
        Self { coeffs: self.coeffs.iter().map(|a| a * g).collect() }
    }

    /// Comma-separated coefficients `a_0, …, a_n`.
    pub fn parse(text: &str, nvars: usize) -> Result<VectorField> {
        let parts: Vec<Polynomial> =
            text.split(',').map(|s| Polynomial::parse(s.trim(), nvars)).collect::<Result<_>>()?;
        Self::new(parts)
    }
}

/// `ω = ι_rad ι_v (dx_0 ∧ … ∧ dx_n)`, an `(n-1)`-form killed by `ι_rad`.
pub fn nform_from_vfield(v: &VectorField) -> PForm {
    PForm::volume(v.nvars()).contract(v).contract_rad()
}

/// The field `w` with `ι_w (dx_0 ∧ … ∧ dx_n) = δω`; equals the field `ω` came from up to a multiple of `rad`.
pub fn vfield_from_nform(omega: &PForm) -> Result<VectorField> {
    let n = omega.nvars();
    if omega.p() + 2 != n {
        return Err(Error::ShapeMismatch(format!(
            "expected an {}-form, got a {}-form",
            n.saturating_sub(2),
            omega.p()
        )));
    }
    let eta = omega.delta()?;
    let coeffs = (0..n)
        .map(|j| {
            let rest: Indices = (0..n).filter(|&i| i != j).collect();
            let c = eta.coefficient(&rest);
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    VectorField::new(coeffs)
}

/// Row-major matrix of forms of one exterior degree; products wedge the entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix {
    nvars: usize,
    p: usize,
    rows: usize,
    cols: usize,
    entries: Vec<PForm>,
}

impl FormMatrix {
    pub fn zeros(nvars: usize, p: usize, rows: usize, cols: usize) -> Self {
        Self { nvars, p, rows, cols, entries: vec![PForm::zero(nvars, p); rows * cols] }
    }

    pub fn from_entries(nvars: usize, p: usize, rows: usize, cols: usize, entries: Vec<PForm>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if let Some(e) = entries.iter().find(|e| !e.is_zero() && e.p() != p) {
            return Err(Error::ShapeMismatch(format!("a {}-form in a matrix of {p}-forms", e.p())));
        }
        let entries = entries.into_iter().map(|e| if e.is_zero() { PForm::zero(nvars, p) } else { e }).collect();
        Ok(Self { nvars, p, rows, cols, entries })
    }

    /// The polynomial matrix of a graded map, as 0-forms.
    pub fn from_map(map: &GradedMap) -> Self {
        let (rows, cols) = (map.nrows(), map.ncols());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(PForm::function(map.entry(r, c).clone()));
            }
        }
        Self { nvars: map.nvars(), p: 0, rows, cols, entries }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &PForm {
        &self.entries[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(PForm::is_zero)
    }

    pub fn select_columns(&self, cols: &[usize]) -> FormMatrix {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        Self { nvars: self.nvars, p: self.p, rows: self.rows, cols: cols.len(), entries }
    }

    pub fn select_rows(&self, rows: &[usize]) -> FormMatrix {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            for c in 0..self.cols {
                entries.push(self.get(r, c).clone());
            }
        }
        Self { nvars: self.nvars, p: self.p, rows: rows.len(), cols: self.cols, entries }
    }

    /// `(A · B)_{ik} = Σ_j A_{ij} ∧ B_{jk}`.
    pub fn mul(&self, other: &FormMatrix) -> Result<FormMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p + other.p;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for k in 0..other.cols {
                let mut acc = PForm::zero(self.nvars, p);
                for j in 0..self.cols {
                    let (a, b) = (self.get(i, j), other.get(j, k));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.wedge(b))?;
                }
                entries.push(acc);
            }
        }
        Ok(Self { nvars: self.nvars, p, rows: self.rows, cols: other.cols, entries })
    }

    /// Matrix times a constant column vector.
    pub fn apply(&self, t: &[Rational]) -> Result<Vec<PForm>> {
        if t.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("vector of length {} for {} columns", t.len(), self.cols)));
        }
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = PForm::zero(self.nvars, self.p);
            for (c, tc) in t.iter().enumerate() {
                if !tc.is_zero() {
                    acc = acc.add(&self.get(r, c).scale(tc))?;
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    fn map_entries(&self, p: usize, f: impl Fn(&PForm) -> Result<PForm>) -> Result<FormMatrix> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::from_entries(self.nvars, p, self.rows, self.cols, entries)
    }

    /// Entrywise `δ`, each entry divided by its own total degree.
    pub fn delta(&self) -> Result<FormMatrix> {
        self.map_entries(self.p + 1, PForm::delta)
    }

    /// Entrywise `d`.
    pub fn exterior_derivative(&self) -> FormMatrix {
        self.map_entries(self.p + 1, |e| Ok(e.exterior_derivative())).expect("degrees agree")
    }

    /// Entrywise `ι_rad`.
    pub fn contract_rad(&self) -> FormMatrix {
        self.map_entries(self.p.saturating_sub(1), |e| Ok(e.contract_rad())).expect("degrees agree")
    }

    /// Entrywise `η ∧ ·`.
    pub fn wedge_left(&self, eta: &PForm) -> FormMatrix {
        self.map_entries(self.p + eta.p(), |e| Ok(eta.wedge(e))).expect("degrees agree")
    }
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All strictly increasing `p`-tuples from `0..nvars`, lexicographically.
pub fn index_tuples(nvars: usize, p: usize) -> Vec<Indices> {
    fn go(start: usize, nvars: usize, left: usize, cur: &mut Indices, out: &mut Vec<Indices>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..nvars {
            if nvars - i < left {
                break;
            }
            cur.push(i);
            go(i + 1, nvars, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(nvars, p));
    go(0, nvars, p, &mut Vec::new(), &mut out);
    out
}

/// Coordinates of `p`-forms with coefficients of degree `deg`, indexed by
/// (index tuple, monomial) with monomials in descending degrevlex.
#[derive(Clone, Debug)]
pub struct FormCoordinates {
    nvars: usize,
    p: usize,
    deg: u32,
    tuples: Vec<Indices>,
    tuple_pos: BTreeMap<Indices, usize>,
    monomials: Vec<Monomial>,
    monomial_pos: std::collections::HashMap<Monomial, usize>,
}

impl FormCoordinates {
    pub fn new(nvars: usize, p: usize, deg: u32) -> Self {
        let tuples = index_tuples(nvars, p);
        let tuple_pos = tuples.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
        let monomials = Monomial::all_of_degree(nvars, deg);
        let monomial_pos = monomials.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        Self { nvars, p, deg, tuples, tuple_pos, monomials, monomial_pos }
    }

    pub fn len(&self) -> usize {
        self.tuples.len() * self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tuples(&self) -> &[Indices] {
        &self.tuples
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index(&self, tuple: usize, monomial: usize) -> usize {
        tuple * self.monomials.len() + monomial
    }

    /// Panics unless `ω` is a `p`-form with coefficients of degree `deg`.
    pub fn encode(&self, omega: &PForm) -> crate::linalg::SparseRow {
        let mut row = Vec::new();
        if omega.is_zero() {
            return row;
        }
        assert_eq!(omega.p(), self.p, "exterior degree mismatch");
        for (idx, f) in omega.terms() {
            let t = self.tuple_pos[idx];
            for (m, c) in f.terms() {
                assert_eq!(m.degree(), self.deg, "coefficient degree mismatch");
                row.push((self.index(t, self.monomial_pos[m]), c.clone()));
            }
        }
        row.sort_by_key(|e| e.0);
        row
    }

    pub fn decode(&self, row: &crate::linalg::SparseRow) -> PForm {
        let nm = self.monomials.len();
        let mut per_tuple: BTreeMap<usize, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (k, c) in row {
            per_tuple.entry(k / nm).or_default().push((self.monomials[k % nm], c.clone()));
        }
        PForm::from_terms(
            self.nvars,
            self.p,
            per_tuple.into_iter().map(|(t, terms)| (self.tuples[t].clone(), Polynomial::from_terms(self.nvars, terms))),
        )
    }
}

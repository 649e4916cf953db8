//! Forms vanishing on a projective subscheme: the map `ξ_p` from the minimal
//! resolution, its linear-strand shortcut, the graded pieces of `𝒜^p(Z)`, and a
//! brute-force linear-algebra oracle for the same spaces.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::forms::{index_tuples, FormCoordinates, FormMatrix, PForm};
use crate::groebner::Ideal;
use crate::linalg::{self, Echelon, SparseRow};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Rational};
use crate::resolution::{FreeResolution, GradedMap};
use crate::{Error, Result};

/// Where a basis element of a [`FormSpace`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    XiImage,
    RadialPart,
    /// Solved for directly by [`brute_force_space`].
    Nullspace,
    /// Passed to [`FormSpace::spanned_by`].
    Supplied,
}

/// A basis of `𝒜^p(Z)_d`: `p`-forms with coefficients of degree `d+1` in `I_Z`, killed by `ι_rad`.
#[derive(Clone, Debug)]
pub struct FormSpace {
    nvars: usize,
    p: usize,
    d: i64,
    basis: Vec<PForm>,
    provenance: Vec<Provenance>,
}

impl FormSpace {
    fn empty(nvars: usize, p: usize, d: i64) -> Self {
        Self { nvars, p, d, basis: Vec::new(), provenance: Vec::new() }
    }

    /// The span of `forms`, keeping an independent subset. Every form must be a `p`-form with
    /// coefficients of degree `d + 1` (zero forms are dropped).
    pub fn spanned_by(nvars: usize, p: usize, d: i64, forms: &[PForm]) -> Result<Self> {
        let mut space = Self::empty(nvars, p, d);
        let Some(coords) = space.coordinates() else {
            return match forms.iter().all(PForm::is_zero) {
                true => Ok(space),
                false => Err(Error::InvalidInput("forms of negative coefficient degree".into())),
            };
        };
        let mut e = Echelon::new();
        for w in forms {
            if w.is_zero() {
                continue;
            }
            if w.nvars() != nvars || w.p() != p || w.coefficient_degree().map(i64::from) != Some(d + 1) {
                return Err(Error::InvalidInput(format!("`{w}` is not a {p}-form of coefficient degree {}", d + 1)));
            }
            if e.insert(coords.encode(w)) {
                space.basis.push(w.clone());
                space.provenance.push(Provenance::Supplied);
            }
        }
        Ok(space)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[PForm] {
        &self.basis
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    fn count(&self, which: Provenance) -> usize {
        self.provenance.iter().filter(|&&p| p == which).count()
    }

    /// Number of basis elements that are `ξ_p` images.
    pub fn tor_part(&self) -> usize {
        self.count(Provenance::XiImage)
    }

    pub fn radial_part(&self) -> usize {
        self.count(Provenance::RadialPart)
    }

    /// Coordinate system for the elements of this space; `None` when `d + 1 < 0`.
    pub fn coordinates(&self) -> Option<FormCoordinates> {
        u32::try_from(self.d + 1).ok().map(|deg| FormCoordinates::new(self.nvars, self.p, deg))
    }

    fn rows(&self, coords: &FormCoordinates) -> Vec<SparseRow> {
        self.basis.iter().map(|w| coords.encode(w)).collect()
    }

    /// Exact span comparison by mutual reduction.
    pub fn same_span(&self, other: &FormSpace) -> bool {
        if (self.nvars, self.p, self.d) != (other.nvars, other.p, other.d) {
            return false;
        }
        match self.coordinates() {
            Some(c) => linalg::same_span(&self.rows(&c), &other.rows(&c)),
            None => true,
        }
    }

    /// Whether `ω` lies in the span of the basis.
    pub fn contains(&self, omega: &PForm) -> bool {
        if omega.is_zero() {
            return true;
        }
        if omega.p() != self.p || omega.coefficient_degree().map(i64::from) != Some(self.d + 1) {
            return false;
        }
        let c = self.coordinates().expect("nonnegative degree");
        let mut e = Echelon::new();
        for r in self.rows(&c) {
            e.insert(r);
        }
        e.contains(&c.encode(omega))
    }

    /// Reduced row echelon basis of the same space (in coordinates), each element made primitive.
    /// Usually has far smaller coefficients than the `ξ_p` images.
    pub fn reduced_basis(&self) -> Vec<PForm> {
        let Some(c) = self.coordinates() else {
            return Vec::new();
        };
        let mut e = Echelon::new();
        for r in self.rows(&c) {
            e.insert(r);
        }
        e.into_rref().into_iter().map(|(_, r)| c.decode(&r).primitive()).collect()
    }

    /// `k`-linear combination of the basis.
    pub fn combination(&self, coeffs: &[Rational]) -> PForm {
        assert_eq!(coeffs.len(), self.basis.len(), "one coefficient per basis element");
        let mut acc = PForm::zero(self.nvars, self.p);
        for (w, c) in self.basis.iter().zip(coeffs) {
            acc = acc.add(&w.scale(c)).expect("same exterior degree");
        }
        acc
    }

    /// `{"dim": k, "basis": [...], "split": {"tor": k1, "radial": k2}}`.
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim(),
            "basis": self.basis.iter().map(PForm::to_json).collect::<Vec<_>>(),
            "split": {"tor": self.tor_part(), "radial": self.radial_part()},
        })
    }
}

/// The ideal together with its minimal free resolution, which `ξ_p` is read from.
#[derive(Clone, Debug)]
pub struct SyzygyForms {
    ideal: Ideal,
    res: FreeResolution,
}

impl SyzygyForms {
    pub fn new(ideal: &Ideal) -> Self {
        Self { ideal: ideal.clone(), res: FreeResolution::of_ideal(ideal) }
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn resolution(&self) -> &FreeResolution {
        &self.res
    }

    fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    fn phi(&self, i: usize) -> &GradedMap {
        self.res.phi(i).expect("map within the resolution")
    }

    /// Indices of the degree-`m` generators of `F_p`.
    fn columns_of_degree(&self, p: usize, m: i64) -> Vec<usize> {
        let f = self.res.module(p);
        (0..f.rank()).filter(|&k| f.twists[k] == m).collect()
    }

    /// Support of `t`, checked to lie in a single degree.
    fn homogeneous_support(&self, p: usize, t: &[Rational]) -> Result<(Vec<usize>, Option<i64>)> {
        let f = self.res.module(p);
        if t.len() != f.rank() {
            return Err(Error::ShapeMismatch(format!(
                "Tor vector of length {} for F_{p} of rank {}",
                t.len(),
                f.rank()
            )));
        }
        let support: Vec<usize> = (0..t.len()).filter(|&k| !t[k].is_zero()).collect();
        let mut deg = None;
        for &k in &support {
            match deg {
                Some(m) if m != f.twists[k] => return Err(Error::MixedDegrees(m as i32, f.twists[k] as i32)),
                _ => deg = Some(f.twists[k]),
            }
        }
        Ok((support, deg))
    }

    /// `δ(φ_1 · δ(φ_2 ⋯ δ(φ_p)))` restricted to the given columns of `F_p`, innermost first.
    fn inner(&self, p: usize, cols: &[usize]) -> Result<FormMatrix> {
        assert!(p >= 1);
        let mut m = FormMatrix::from_map(self.phi(p)).select_columns(cols).delta()?;
        for j in (1..p).rev() {
            m = FormMatrix::from_map(self.phi(j)).mul(&m)?.delta()?;
        }
        Ok(m)
    }

    /// `ξ_p` of the given columns of `F_p`, as a `1 × cols` matrix of `p`-forms.
    fn xi_matrix(&self, p: usize, cols: &[usize]) -> Result<FormMatrix> {
        let phi0 = FormMatrix::from_map(self.phi(0));
        if p == 0 {
            return Ok(phi0.select_columns(cols));
        }
        phi0.mul(&self.inner(p, cols)?)
    }

    /// `ξ_p(e_k)` for every degree-`m` basis vector `e_k` of `Tor_p(I, k)`.
    pub fn xi_images(&self, p: usize, m: i64) -> Result<Vec<PForm>> {
        if p > self.res.length() {
            return Ok(Vec::new());
        }
        let cols = self.columns_of_degree(p, m);
        if cols.is_empty() {
            return Ok(Vec::new());
        }
        let mat = self.xi_matrix(p, &cols)?;
        Ok((0..cols.len()).map(|c| mat.get(0, c).clone()).collect())
    }

    /// `ξ_p(t) = φ_0 · δ(φ_1 · δ(⋯ δ(φ_p))) · t` for `t` supported in one degree.
    pub fn xi(&self, p: usize, t: &[Rational]) -> Result<PForm> {
        if p > self.res.length() {
            if t.iter().all(Zero::is_zero) {
                return Ok(PForm::zero(self.nvars(), p));
            }
            return Err(Error::ShapeMismatch(format!("F_{p} is zero")));
        }
        let (support, _) = self.homogeneous_support(p, t)?;
        if support.is_empty() {
            return Ok(PForm::zero(self.nvars(), p));
        }
        let mat = self.xi_matrix(p, &support)?;
        let ts: Vec<Rational> = support.iter().map(|&k| t[k].clone()).collect();
        Ok(mat.apply(&ts)?.remove(0))
    }

    /// `ξ_p^0(t) = φ_0^0 · dφ_1^0 ∧ ⋯ ∧ dφ_p^0 · t` on the first linear strand.
    /// Requires `(I)_d = 0` and `t` supported in degree `d+p+1`; equals `p! · ξ_p(t)`.
    pub fn xi_linear_strand(&self, p: usize, d: i64, t: &[Rational]) -> Result<PForm> {
        if self.ideal.graded_piece_dim(d) != 0 {
            return Err(Error::LinearStrandInvalid(d as i32));
        }
        let n = self.nvars();
        if p > self.res.length() {
            return Ok(PForm::zero(n, p));
        }
        let (support, deg) = self.homogeneous_support(p, t)?;
        if let Some(m) = deg {
            if m != d + p as i64 + 1 {
                return Err(Error::MixedDegrees(m as i32, (d + p as i64 + 1) as i32));
            }
        }
        if support.is_empty() {
            return Ok(PForm::zero(n, p));
        }
        let mut prod = FormMatrix::from_map(self.phi(0)).select_columns(&self.columns_of_degree(0, d + 1));
        for i in 1..=p {
            let rows = self.columns_of_degree(i - 1, d + i as i64);
            let cols = if i == p { support.clone() } else { self.columns_of_degree(i, d + i as i64 + 1) };
            let block = FormMatrix::from_map(self.phi(i)).select_rows(&rows).select_columns(&cols);
            prod = prod.mul(&block.exterior_derivative())?;
        }
        let ts: Vec<Rational> = support.iter().map(|&k| t[k].clone()).collect();
        Ok(prod.apply(&ts)?.remove(0))
    }

    /// Checks `f ξ_p(t) = φ_0 · ι_rad(δf ∧ δ(φ_1 · δ(⋯))) · t` exactly.
    pub fn radial_decomposition_check(&self, p: usize, t: &[Rational], f: &Polynomial) -> Result<bool> {
        if p == 0 || p > self.res.length() {
            return Err(Error::ShapeMismatch(format!("no map φ_{p} to decompose")));
        }
        let df = PForm::function(f.clone()).delta()?;
        let (support, _) = self.homogeneous_support(p, t)?;
        let lhs = self.xi(p, t)?.mul_poly(f);
        if support.is_empty() {
            return Ok(lhs.is_zero());
        }
        let inner = self.inner(p, &support)?;
        let rhs_mat = FormMatrix::from_map(self.phi(0)).mul(&inner.wedge_left(&df).contract_rad())?;
        let ts: Vec<Rational> = support.iter().map(|&k| t[k].clone()).collect();
        let rhs = rhs_mat.apply(&ts)?.remove(0);
        Ok(lhs == rhs)
    }

    /// `f · ι_rad(dx_J)` for `f` in a basis of `(I)_d` and `|J| = p + 1`.
    pub fn radial_spanning_set(&self, p: usize, d: i64) -> Vec<PForm> {
        let n = self.nvars();
        let gens = self.ideal.graded_piece_basis(d);
        let etas: Vec<PForm> = index_tuples(n, p + 1).iter().map(|j| PForm::basis(n, j).contract_rad()).collect();
        let mut out = Vec::with_capacity(gens.len() * etas.len());
        for f in &gens {
            for eta in &etas {
                out.push(eta.mul_poly(f));
            }
        }
        out
    }

    /// Basis of `𝒜^p(Z)_d`: the `ξ_p` images of `Tor_p(I, k)_{d+p+1}` followed by
    /// an independent subset of the radial spanning set.
    pub fn form_space(&self, p: usize, d: i64) -> Result<FormSpace> {
        let n = self.nvars();
        let mut space = FormSpace::empty(n, p, d);
        let Some(coords) = space.coordinates() else {
            return Ok(space);
        };
        let mut ech = Echelon::new();
        let candidates = self
            .xi_images(p, d + p as i64 + 1)?
            .into_iter()
            .map(|w| (w, Provenance::XiImage))
            .chain(self.radial_spanning_set(p, d).into_iter().map(|w| (w, Provenance::RadialPart)));
        for (w, prov) in candidates {
            if ech.insert(coords.encode(&w)) {
                space.basis.push(w);
                space.provenance.push(prov);
            }
        }
        Ok(space)
    }
}

/// `𝒜^p(Z)_d` solved directly: unknown coefficients of degree `d+1` on every
/// `p`-tuple, subject to `ι_rad ω = 0` and every coefficient reducing to zero modulo `I`.
pub fn brute_force_space(ideal: &Ideal, p: usize, d: i64) -> FormSpace {
    let n = ideal.nvars();
    let mut space = FormSpace::empty(n, p, d);
    let Some(unknowns) = space.coordinates() else {
        return space;
    };
    let deg = (d + 1) as u32;
    let monos = unknowns.monomials().to_vec();
    let pos: std::collections::HashMap<Monomial, usize> = monos.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let normal_forms: Vec<Polynomial> = monos
        .iter()
        .map(|m| ideal.normal_form(&Polynomial::monomial(n, *m, Rational::from_integer(1.into()))))
        .collect();
    let radial = (p >= 1).then(|| FormCoordinates::new(n, p - 1, deg + 1));
    let offset = radial.as_ref().map_or(0, FormCoordinates::len);
    let mut rows: Vec<SparseRow> = vec![Vec::new(); offset + unknowns.len()];
    for (t, tuple) in unknowns.tuples().iter().enumerate() {
        for (k, m) in monos.iter().enumerate() {
            let u = unknowns.index(t, k);
            let term = PForm::from_terms(
                n,
                p,
                [(tuple.clone(), Polynomial::monomial(n, *m, Rational::from_integer(1.into())))],
            );
            if let Some(rc) = &radial {
                for (r, c) in rc.encode(&term.contract_rad()) {
                    rows[r].push((u, c));
                }
            }
            for (m2, c) in normal_forms[k].terms() {
                rows[offset + unknowns.index(t, pos[m2])].push((u, c.clone()));
            }
        }
    }
    rows.retain(|r| !r.is_empty());
    for v in linalg::nullspace(&rows, unknowns.len()) {
        space.basis.push(unknowns.decode(&v));
        space.provenance.push(Provenance::Nullspace);
    }
    space
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn ideal(gens: &[&str], n: usize) -> Ideal {
        Ideal::new(n, gens.iter().map(|g| Polynomial::parse(g, n).unwrap()).collect()).unwrap()
    }

    fn form(s: &str, n: usize) -> PForm {
        PForm::parse(s, n).unwrap()
    }

    #[test]
    fn three_points_xi() {
        let i = ideal(&["x0*x1", "x0*x2", "x1*x2"], 3);
        let s = SyzygyForms::new(&i);
        let imgs = s.xi_images(1, 3).unwrap();
        assert_eq!(imgs.len(), 2);
        let w1 = form("x0*x1*dx2 - x0*x2*dx1", 3);
        let w2 = form("x0*x2*dx1 - x1*x2*dx0", 3);
        let space = s.form_space(1, 1).unwrap();
        assert_eq!(space.dim(), 2);
        assert_eq!(space.tor_part(), 2);
        for w in &imgs {
            assert!(w.descends());
            assert_eq!(w.total_degree(), Some(3));
        }
        let reference =
            FormSpace { nvars: 3, p: 1, d: 1, basis: vec![w1, w2], provenance: vec![Provenance::Nullspace; 2] };
        assert!(space.same_span(&reference));
        assert!(space.same_span(&brute_force_space(&i, 1, 1)));
    }

    #[test]
    fn xi_rejects_mixed_degrees_and_handles_zero() {
        let i = ideal(&["x0^2", "x1^3"], 2);
        let s = SyzygyForms::new(&i);
        assert!(s.xi(1, &[rat(0)]).unwrap().is_zero());
        let s = SyzygyForms::new(&ideal(&["x0", "x1^2"], 3));
        let f0 = s.resolution().module(0);
        assert_eq!(f0.twists, vec![1, 2]);
        assert!(matches!(s.xi(0, &[rat(1), rat(1)]), Err(Error::MixedDegrees(..))));
    }

    #[test]
    fn linear_strand_scalar() {
        let i = ideal(&["x1*x3 - x2^2", "x1*x2 - x0*x3", "x0*x2 - x1^2"], 4);
        let s = SyzygyForms::new(&i);
        let f1 = s.resolution().module(1);
        for k in 0..f1.rank() {
            let mut t = vec![rat(0); f1.rank()];
            t[k] = rat(1);
            let full = s.xi(1, &t).unwrap();
            let strand = s.xi_linear_strand(1, 1, &t).unwrap();
            assert_eq!(strand, full);
        }
        let k = ideal(&["x0", "x1", "x2"], 3);
        let s = SyzygyForms::new(&k);
        let f2 = s.resolution().module(2);
        let mut t = vec![rat(0); f2.rank()];
        t[0] = rat(1);
        assert_eq!(s.xi_linear_strand(2, 0, &t).unwrap(), s.xi(2, &t).unwrap().scale(&rat(2)));
        assert!(matches!(s.xi_linear_strand(2, 1, &t), Err(Error::LinearStrandInvalid(1))));
    }

    #[test]
    fn radial_decomposition() {
        let i = ideal(&["x0*x1", "x0*x2", "x1*x2"], 3);
        let s = SyzygyForms::new(&i);
        let t = vec![rat(1), rat(0)];
        assert!(s.radial_decomposition_check(1, &t, &Polynomial::parse("x0", 3).unwrap()).unwrap());
        assert!(s.radial_decomposition_check(1, &t, &Polynomial::parse("x1^2 - 3*x0*x2", 3).unwrap()).unwrap());
        assert!(matches!(s.radial_decomposition_check(1, &t, &Polynomial::one(3)), Err(Error::ZeroDegree)));
    }

    #[test]
    fn oracle_edge_cases() {
        let unit = Ideal::unit(3);
        // (1): the kernel of ι_rad on 1-forms with linear coefficients is ι_rad of constant 2-forms.
        assert_eq!(brute_force_space(&unit, 1, 0).dim(), 3);
        let cubic = ideal(&["x1*x3 - x2^2", "x1*x2 - x0*x3", "x0*x2 - x1^2"], 4);
        assert_eq!(brute_force_space(&cubic, 1, 0).dim(), 0);
        assert_eq!(brute_force_space(&cubic, 1, 1).dim(), 2);
        assert_eq!(SyzygyForms::new(&cubic).form_space(1, 1).unwrap().dim(), 2);
    }
}

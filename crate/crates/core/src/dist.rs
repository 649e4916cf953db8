//! Distributions on `P^n` defined by a twisted `p`-form: LDS and integrability
//! tests, singular scheme, the complex `O → O(1)⊗V → O(d+2)⊗Λ^{p-1}V*`,
//! tangent/normal/conormal sheaves, Chern classes on `P^3`, sheaf cohomology,
//! and seeded random generators.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::forms::{index_tuples, PForm};
use crate::groebner::Ideal;
use crate::poly::{rat, Polynomial, Rational};
use crate::resolution::{
    homology_presentation, quotient_hilbert_series, GradedFreeModule, GradedMap, HilbertPolynomial, Presentation,
};
use crate::syzforms::{FormSpace, SyzygyForms};
use crate::{Error, Result};

/// Magnitude bound for random form coefficients.
pub const FORM_COEFFICIENT_BOUND: i64 = 50;
/// Magnitude bound for the coefficients of random lines.
pub const LINE_COEFFICIENT_BOUND: i64 = 2;
/// Attempts per line before giving up on a disjoint one.
const LINE_ATTEMPTS: usize = 100;

/// A codimension-`p` distribution on `P^n` given by `ω ∈ H^0(Ω^p(d+p+1))`.
#[derive(Clone, Debug)]
pub struct Distribution {
    omega: PForm,
    d: i64,
}

impl Distribution {
    /// Rejects forms that are zero, inhomogeneous or not killed by `ι_rad`.
    pub fn new(omega: PForm) -> Result<Self> {
        if omega.is_zero() {
            return Err(Error::InvalidInput("the zero form defines no distribution".into()));
        }
        let deg = omega.coefficient_degree().ok_or_else(|| Error::NotHomogeneous(omega.to_string()))?;
        if !omega.descends() {
            return Err(Error::DoesNotDescend);
        }
        Ok(Self { omega, d: i64::from(deg) - 1 })
    }

    pub fn form(&self) -> &PForm {
        &self.omega
    }

    /// Ambient dimension `n` of `P^n`.
    pub fn n(&self) -> usize {
        self.omega.nvars() - 1
    }

    /// Codimension, the exterior degree of `ω`.
    pub fn p(&self) -> usize {
        self.omega.p()
    }

    /// Degree `d`, with coefficients of `ω` of degree `d + 1`.
    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn is_lds(&self) -> bool {
        lds_check(&self.omega)
    }

    pub fn is_integrable(&self) -> Result<bool> {
        integrability_check(&self.omega)
    }

    pub fn sing_scheme(&self) -> Ideal {
        sing_scheme(&self.omega)
    }

    pub fn cw_complex(&self) -> (GradedMap, GradedMap) {
        cw_complex(&self.omega)
    }

    pub fn tangent_sheaf(&self) -> Result<SheafPresentation> {
        tangent_sheaf(&self.omega)
    }

    pub fn normal_sheaf(&self) -> Result<SheafPresentation> {
        normal_sheaf(&self.omega)
    }

    pub fn conormal_sheaf(&self) -> Result<SheafPresentation> {
        conormal_sheaf(&self.omega)
    }
}

/// `ι_{∂_{i_{p-1}}} ⋯ ι_{∂_{i_1}} ω` for every `(p-1)`-tuple.
fn basis_contractions(omega: &PForm) -> Vec<PForm> {
    let n = omega.nvars();
    let p = omega.p();
    if p == 0 {
        return Vec::new();
    }
    index_tuples(n, p - 1)
        .into_iter()
        .map(|idx| idx.iter().fold(omega.clone(), |w, &i| w.contract_partial(i)))
        .collect()
}

/// `(ι_v ω) ∧ ω = 0` for all basis multivectors `v ∈ Λ^{p-1}V`.
pub fn lds_check(omega: &PForm) -> bool {
    basis_contractions(omega).par_iter().all(|c| c.wedge(omega).is_zero())
}

/// `(ι_v ω) ∧ dω = 0` for all basis multivectors; only meaningful for LDS forms.
pub fn integrability_check(omega: &PForm) -> Result<bool> {
    if !lds_check(omega) {
        return Err(Error::NotLds);
    }
    let dw = omega.exterior_derivative();
    Ok(basis_contractions(omega).par_iter().all(|c| c.wedge(&dw).is_zero()))
}

/// Ideal generated by the coefficients of `ω`.
pub fn coefficient_ideal(omega: &PForm) -> Ideal {
    Ideal::new(omega.nvars(), omega.coefficients()).expect("coefficients of a homogeneous form")
}

/// Saturation of the coefficient ideal.
pub fn sing_scheme(omega: &PForm) -> Ideal {
    coefficient_ideal(omega).saturate()
}

/// Dimension of the projective scheme `V(I)`, `-1` when empty.
pub fn projective_dimension(ideal: &Ideal) -> i64 {
    quotient_hilbert_series(ideal).polynomial().degree()
}

/// `(A, B)` for `O → O(1)⊗V → O(d+2)⊗Λ^{p-1}V*`: `A` is the radial column and
/// column `j` of `B` holds the coefficients of `ι_{∂/∂x_j} ω` on the `(p-1)`-tuples.
pub fn cw_complex(omega: &PForm) -> (GradedMap, GradedMap) {
    let n = omega.nvars();
    let p = omega.p();
    let deg = i64::from(omega.coefficient_degree().unwrap_or(1));
    let v = GradedFreeModule::new(vec![-1; n]);
    let a = GradedMap::new(
        n,
        v.clone(),
        GradedFreeModule::new(vec![0]),
        vec![(0..n).map(|i| Polynomial::var(n, i)).collect()],
    )
    .expect("radial column is homogeneous");
    let tuples = index_tuples(n, p.saturating_sub(1));
    let target = GradedFreeModule::new(vec![-1 - deg; tuples.len()]);
    let cols = (0..n)
        .map(|j| {
            let c = omega.contract_partial(j);
            tuples.iter().map(|t| c.coefficient(t)).collect()
        })
        .collect();
    let b = GradedMap::new(n, target, v, cols).expect("contractions are homogeneous");
    (a, b)
}

/// `ker B / im A`; the tangent sheaf when `ω` is LDS.
pub fn cw_homology(omega: &PForm) -> Result<SheafPresentation> {
    let (a, b) = cw_complex(omega);
    Ok(SheafPresentation::new(homology_presentation(&a, &b)?))
}

fn require_lds(omega: &PForm) -> Result<()> {
    if !omega.descends() {
        return Err(Error::DoesNotDescend);
    }
    if !lds_check(omega) {
        return Err(Error::NotLds);
    }
    Ok(())
}

pub fn tangent_sheaf(omega: &PForm) -> Result<SheafPresentation> {
    require_lds(omega)?;
    cw_homology(omega)
}

/// Image of `C_ω`, presented by its syzygies.
pub fn normal_sheaf(omega: &PForm) -> Result<SheafPresentation> {
    require_lds(omega)?;
    let (_, b) = cw_complex(omega);
    Ok(SheafPresentation::new(Presentation::image(&b)))
}

/// `Hom(N, R)` as the minimally presented kernel of the transposed presentation of `N`.
pub fn conormal_sheaf(omega: &PForm) -> Result<SheafPresentation> {
    Ok(normal_sheaf(omega)?.dual())
}

/// A graded module standing for its sheafification on `P^{nvars-1}`.
#[derive(Clone, Debug)]
pub struct SheafPresentation {
    module: Presentation,
}

impl SheafPresentation {
    pub fn new(module: Presentation) -> Self {
        Self { module }
    }

    /// `O(a)` on `P^{nvars-1}`.
    pub fn line_bundle(nvars: usize, a: i64) -> Self {
        Self::new(Presentation::free(nvars, GradedFreeModule::new(vec![-a])))
    }

    /// `⊕ O(a_k)`.
    pub fn split(nvars: usize, degrees: &[i64]) -> Self {
        Self::new(Presentation::free(nvars, GradedFreeModule::new(degrees.iter().map(|a| -a).collect())))
    }

    /// Tangent bundle from `0 → O → O(1)^{n+1} → T → 0`.
    pub fn tangent_bundle(nvars: usize) -> Self {
        let col = (0..nvars).map(|i| Polynomial::var(nvars, i)).collect();
        let rels =
            GradedMap::new(nvars, GradedFreeModule::new(vec![-1; nvars]), GradedFreeModule::new(vec![0]), vec![col])
                .expect("radial column");
        Self::new(Presentation::cokernel(rels))
    }

    pub fn module(&self) -> &Presentation {
        &self.module
    }

    pub fn nvars(&self) -> usize {
        self.module.nvars()
    }

    pub fn rank(&self) -> i64 {
        self.module.rank()
    }

    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        self.module.hilbert_polynomial()
    }

    /// `F(a)`.
    pub fn twist(&self, a: i64) -> SheafPresentation {
        Self::new(self.module.twist(a))
    }

    pub fn dual(&self) -> SheafPresentation {
        Self::new(self.module.dual())
    }

    pub fn double_dual(&self) -> SheafPresentation {
        self.dual().dual()
    }

    /// Whether the module is zero (so is the sheaf).
    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    pub fn chern_classes(&self) -> Result<ChernClasses> {
        chern_classes(self)
    }

    /// `h^i(F(d))`.
    pub fn cohomology_dim(&self, i: usize, d: i64) -> Result<u64> {
        sheaf_cohomology_dim(self, i, d)
    }
}

/// Rank, `(c_1, c_2, c_3)` and Hilbert polynomial of a sheaf on `P^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernClasses {
    pub rank: i64,
    pub c: [i64; 3],
    pub hilbert: HilbertPolynomial,
}

impl ChernClasses {
    /// `{"rank": r, "c": [c1, c2, c3], "hilbert": "P(t)"}`.
    pub fn to_json(&self) -> Value {
        json!({"rank": self.rank, "c": self.c, "hilbert": self.hilbert.to_string()})
    }
}

/// Matches the Hilbert polynomial against `χ(F(t)) = ∫ ch(F) e^{tH} td(P^3)`:
/// `P(t) = r(t³/6 + t² + 11t/6 + 1) + c_1(t²/2 + 2t + 11/6) + ch_2(t + 2) + ch_3`.
pub fn chern_classes(sheaf: &SheafPresentation) -> Result<ChernClasses> {
    let n = sheaf.nvars() - 1;
    if n != 3 {
        return Err(Error::UnsupportedAmbient(n));
    }
    let hilbert = sheaf.hilbert_polynomial();
    if hilbert.degree() > 3 {
        return Err(Error::NonIntegralChern(format!("Hilbert polynomial {hilbert} has degree above 3")));
    }
    let a: Vec<Rational> = (0..4).map(|e| hilbert.coefficient(e)).collect();
    let q = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    let r = &a[3] * rat(6);
    let c1 = (&a[2] - &r) * rat(2);
    let ch2 = &a[1] - &r * q(11, 6) - &c1 * rat(2);
    let ch3 = &a[0] - &r - &c1 * q(11, 6) - &ch2 * rat(2);
    let c2 = (&c1 * &c1 - &ch2 * rat(2)) / rat(2);
    let c3 = (&ch3 * rat(6) - &c1 * &c1 * &c1 + &c1 * &c2 * rat(3)) / rat(3);
    let int = |v: &Rational, name: &str| -> Result<i64> {
        if !v.is_integer() {
            return Err(Error::NonIntegralChern(format!("{name} = {v} from P(t) = {hilbert}")));
        }
        v.to_integer().to_i64().ok_or_else(|| Error::NonIntegralChern(format!("{name} = {v} is too large")))
    };
    Ok(ChernClasses {
        rank: int(&r, "rank")?,
        c: [int(&c1, "c1")?, int(&c2, "c2")?, int(&c3, "c3")?],
        hilbert: hilbert.clone(),
    })
}

/// `h^i(F(d))` on `P^n` by graded local duality against `R(-n-1)`:
/// `h^i(F(d)) = dim Ext^{n-i}(M, R(-n-1))_{-d}` for `i ≥ 1`, and
/// `h^0(F(d)) = dim M_d - dim Ext^{n+1}(M, R(-n-1))_{-d} + dim Ext^n(M, R(-n-1))_{-d}`.
pub fn sheaf_cohomology_dim(sheaf: &SheafPresentation, i: usize, d: i64) -> Result<u64> {
    let n = sheaf.nvars() - 1;
    let m = sheaf.module();
    if i > n {
        return Ok(0);
    }
    if i >= 1 {
        return Ok(m.ext_dim(n - i, -d));
    }
    let hf = m.hilbert_function(d);
    let v = hf - m.ext_dim(n + 1, -d) as i64 + m.ext_dim(n, -d) as i64;
    u64::try_from(v).map_err(|_| Error::InvalidInput(format!("negative h^0 computed: {v}")))
}

/// `k` pairwise disjoint lines in `P^3`, each cut out by two random linear forms;
/// disjointness is certified by `saturate(L_i + L_j) = (1)`.
pub fn random_disjoint_lines_with<R: Rng>(count: usize, rng: &mut R) -> Result<Vec<Ideal>> {
    let n = 4;
    let mut lines: Vec<Ideal> = Vec::with_capacity(count);
    while lines.len() < count {
        let mut found = None;
        for _ in 0..LINE_ATTEMPTS {
            let forms: Vec<Polynomial> = (0..2)
                .map(|_| {
                    Polynomial::from_terms(
                        n,
                        (0..n).map(|i| {
                            let c = rng.gen_range(-LINE_COEFFICIENT_BOUND..=LINE_COEFFICIENT_BOUND);
                            (crate::monomial::Monomial::var(i), rat(c))
                        }),
                    )
                })
                .collect();
            let line = Ideal::new(n, forms).expect("linear forms");
            if line.graded_piece_dim(1) != 2 {
                continue;
            }
            if lines.iter().all(|l| l.sum(&line).saturate().is_unit()) {
                found = Some(line);
                break;
            }
        }
        match found {
            Some(l) => lines.push(l),
            None => return Err(Error::RetryBudgetExhausted(format!("no disjoint line after {LINE_ATTEMPTS} draws"))),
        }
    }
    Ok(lines)
}

/// Ideal of `count` disjoint random lines, deterministic in `seed`.
pub fn random_disjoint_lines(count: usize, seed: u64) -> Result<Ideal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Ideal::intersect_all(&random_disjoint_lines_with(count, &mut rng)?))
}

/// A random nonzero integer combination, coefficients in `[-50, 50]`, of the
/// row-reduced basis of the space.
pub fn random_element<R: Rng>(space: &FormSpace, rng: &mut R) -> Result<PForm> {
    if space.dim() == 0 {
        return Err(Error::EmptySpace);
    }
    let basis = space.reduced_basis();
    loop {
        let coeffs: Vec<i64> =
            (0..basis.len()).map(|_| rng.gen_range(-FORM_COEFFICIENT_BOUND..=FORM_COEFFICIENT_BOUND)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let mut acc = PForm::zero(space.nvars(), space.p());
        for (w, &c) in basis.iter().zip(&coeffs) {
            acc = acc.add(&w.scale(&rat(c)))?;
        }
        return Ok(acc);
    }
}

/// Random element of `𝒜^p(Z)_d`, deterministic in `seed`.
pub fn random_vanishing_form(p: usize, d: i64, z: &Ideal, seed: u64) -> Result<PForm> {
    let space = SyzygyForms::new(z).form_space(p, d)?;
    random_element(&space, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::nform_from_vfield;
    use crate::forms::VectorField;

    fn form(s: &str, n: usize) -> PForm {
        PForm::parse(s, n).unwrap()
    }

    fn ideal(gens: &[&str], n: usize) -> Ideal {
        Ideal::new(n, gens.iter().map(|g| Polynomial::parse(g, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn lds_and_integrability() {
        let w = form("x0*dx1 - x1*dx0", 4);
        assert!(lds_check(&w));
        assert!(integrability_check(&w).unwrap());
        let contact = form("x0*dx1 - x1*dx0 + x2*dx3 - x3*dx2", 4);
        assert!(lds_check(&contact));
        assert!(!integrability_check(&contact).unwrap());
        let v = VectorField::parse("x1, x2, x3, x0", 4).unwrap();
        let w2 = nform_from_vfield(&v);
        assert!(lds_check(&w2));
        assert!(integrability_check(&w2).unwrap());
    }

    #[test]
    fn non_lds_form_on_p4() {
        let w = form("x0*dx1^dx2 + x0*dx3^dx4 - x1*dx0^dx2 + x2*dx0^dx1 - x3*dx0^dx4 + x4*dx0^dx3", 5);
        assert!(w.descends());
        assert!(!lds_check(&w));
        assert!(matches!(integrability_check(&w), Err(Error::NotLds)));
        assert!(matches!(tangent_sheaf(&w), Err(Error::NotLds)));
        assert!(cw_homology(&w).unwrap().is_zero());
    }

    #[test]
    fn singular_schemes_of_example_one() {
        let n = 3;
        let w1 = form("x0*x1*dx2 - x0*x2*dx1", n);
        let line_and_point = Ideal::of_variables(n, &[0]).intersect(&Ideal::of_variables(n, &[1, 2]));
        assert!(sing_scheme(&w1).equal(&line_and_point));
        let generic = form("2*x0*x1*dx2 + x0*x2*dx1 - 3*x1*x2*dx0", n);
        assert!(generic.descends());
        let points = ideal(&["x0*x1", "x0*x2", "x1*x2"], n);
        assert!(sing_scheme(&generic).equal(&points));
        let dist = Distribution::new(generic).unwrap();
        assert_eq!(dist.degree(), 1);
        let (a, b) = dist.cw_complex();
        assert!(b.compose(&a).unwrap().is_zero());
        assert_eq!(b.nrows(), 1);
        let t = dist.tangent_sheaf().unwrap();
        let nn = dist.normal_sheaf().unwrap();
        assert_eq!(t.rank() + nn.rank(), 2);
        assert_eq!(nn.rank(), 1);
        assert_eq!(projective_dimension(&dist.sing_scheme()), 0);
    }

    #[test]
    fn chern_of_line_bundles_and_tangent() {
        for a in -5..=5 {
            let c = SheafPresentation::line_bundle(4, a).chern_classes().unwrap();
            assert_eq!((c.rank, c.c), (1, [a, 0, 0]));
        }
        let t = SheafPresentation::tangent_bundle(4).chern_classes().unwrap();
        assert_eq!((t.rank, t.c), (3, [4, 6, 4]));
        let s = SheafPresentation::split(4, &[1, 2]).chern_classes().unwrap();
        assert_eq!((s.rank, s.c), (2, [3, 2, 0]));
        assert!(matches!(SheafPresentation::line_bundle(3, 0).chern_classes(), Err(Error::UnsupportedAmbient(2))));
    }

    #[test]
    fn cohomology_of_line_bundles() {
        let o = SheafPresentation::line_bundle(4, 0);
        assert_eq!(o.twist(1).cohomology_dim(0, 0).unwrap(), 4);
        assert_eq!(o.cohomology_dim(0, 1).unwrap(), 4);
        assert_eq!(o.cohomology_dim(3, -4).unwrap(), 1);
        assert_eq!(o.cohomology_dim(3, -5).unwrap(), 4);
        for i in 1..3 {
            for d in -6..3 {
                assert_eq!(o.cohomology_dim(i, d).unwrap(), 0);
            }
        }
        // The ideal sheaf of a point has h^1(I(0)) = 0 and h^0(I(1)) = 3 on P^2.
        let pt = Presentation::image(&GradedMap::row(3, &[Polynomial::var(3, 0), Polynomial::var(3, 1)]).unwrap());
        let s = SheafPresentation::new(pt);
        assert_eq!(s.cohomology_dim(0, 1).unwrap(), 2);
        assert_eq!(s.cohomology_dim(1, 0).unwrap(), 0);
        assert_eq!(s.cohomology_dim(0, 0).unwrap(), 0);
    }

    #[test]
    fn random_lines_are_disjoint_and_deterministic() {
        let a = random_disjoint_lines(2, 11).unwrap();
        let b = random_disjoint_lines(2, 11).unwrap();
        assert!(a.equal(&b));
        assert_eq!(a.graded_piece_dim(1), 0);
        assert_eq!(a.graded_piece_dim(2), 10 - 6);
        let one = random_disjoint_lines(1, 3).unwrap();
        assert_eq!(one.minimal_generators().len(), 2);
    }

    #[test]
    fn random_forms() {
        let i = ideal(&["x0*x1", "x0*x2", "x1*x2"], 3);
        let w = random_vanishing_form(1, 1, &i, 0).unwrap();
        assert!(w.descends());
        assert!(w.coefficients().iter().all(|c| i.contains(c)));
        assert!(matches!(random_vanishing_form(1, 0, &i, 0), Err(Error::EmptySpace)));
    }
}

//! Randomized invariant suites, shared by the core integration tests and the
//! acceptance runner. Every suite runs a fixed number of cases from a
//! deterministic seed. The strategies are reused by the other test files.
#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use syzforms::dist::SheafPresentation;
use syzforms::forms::{index_tuples, PForm, VectorField};
use syzforms::groebner::Ideal;
use syzforms::poly::rat;
use syzforms::resolution::FreeResolution;
use syzforms::syzforms::{FormSpace, SyzygyForms};
use syzforms::{Monomial, Polynomial, Rational};

pub const CASES: u32 = 200;

pub type Suite = (&'static str, fn() -> Result<(), String>);

pub const SUITES: &[Suite] = &[
    ("delta identity on ker ι_rad", delta_identity),
    ("ι_rad ξ_p(t) = 0 and coefficients in I", xi_vanishes),
    ("ξ_p injective and disjoint from the radial part", xi_injective_and_disjoint),
    ("f·ξ_p(t) decomposition", xi_decomposition),
    ("d∘d = 0 and ι_v∘ι_v = 0", d_squared),
    ("Buchberger criterion on emitted bases", buchberger),
    ("resolutions are exact complexes", resolution_exactness),
    ("Chern classes of split bundles", chern_additivity),
];

fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

pub fn monomial(nvars: usize, vars: &[usize]) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for &v in vars {
        exps[v] += 1;
    }
    Monomial::from_exponents(&exps)
}

/// Homogeneous of degree `k` with up to three terms (possibly zero after cancellation).
pub fn poly(nvars: usize, k: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..nvars, k), -5i64..=5), 1..=3).prop_map(move |terms| {
        Polynomial::from_terms(nvars, terms.into_iter().map(|(vars, c)| (monomial(nvars, &vars), rat(c))))
    })
}

pub fn form(nvars: usize, p: usize, k: usize) -> impl Strategy<Value = PForm> {
    let tuples = index_tuples(nvars, p);
    let count = tuples.len();
    prop::collection::vec((0..count, poly(nvars, k)), 1..=3)
        .prop_map(move |parts| PForm::from_terms(nvars, p, parts.into_iter().map(|(i, f)| (tuples[i].clone(), f))))
}

pub fn any_form() -> impl Strategy<Value = PForm> {
    (3usize..=5, 0usize..=3, 0usize..=3).prop_flat_map(|(n, p, k)| form(n, p.min(n), k))
}

pub fn ideal_from(nvars: usize, gens: &[&str]) -> Ideal {
    Ideal::new(nvars, gens.iter().map(|g| Polynomial::parse(g, nvars).unwrap()).collect()).unwrap()
}

/// A few ideals with resolutions of different shapes, resolved once.
pub fn golden() -> &'static [SyzygyForms] {
    static CELL: OnceLock<Vec<SyzygyForms>> = OnceLock::new();
    CELL.get_or_init(|| {
        [
            ideal_from(3, &["x0*x1", "x0*x2", "x1*x2"]),
            ideal_from(4, &["x1*x3 - x2^2", "x1*x2 - x0*x3", "x0*x2 - x1^2"]),
            ideal_from(4, &["x0^2", "x1^2", "x0*x2", "x1*x2", "x2^2 - x0*x1"]),
            ideal_from(3, &["x0^2", "x1^3"]),
            ideal_from(3, &["x0*x1", "x1*x2^2", "x0^3"]),
            ideal_from(4, &["x0", "x1*x2", "x3^2"]),
        ]
        .iter()
        .map(SyzygyForms::new)
        .collect()
    })
}

/// A nonzero Tor vector of one random degree: `(ideal, p, m, t)`.
pub fn tor_vector() -> impl Strategy<Value = (usize, usize, i64, Vec<Rational>)> {
    (0..golden().len(), any::<prop::sample::Index>(), prop::collection::vec(-5i64..=5, 8)).prop_map(
        |(i, pick, coeffs)| {
            let sf = &golden()[i];
            let betti = sf.resolution().betti().unwrap();
            let entries: Vec<(usize, i64)> = betti.entries().filter(|e| e.0 >= 1).map(|e| (e.0, e.1)).collect();
            let (p, m) = entries[pick.index(entries.len())];
            let basis = sf.resolution().tor_basis(p, m);
            let mut t = vec![Rational::from_integer(0.into()); basis[0].len()];
            for (b, &c) in basis.iter().zip(coeffs.iter().cycle()) {
                for (x, y) in t.iter_mut().zip(b) {
                    *x += y * rat(c);
                }
            }
            if t.iter().all(|x| *x == rat(0)) {
                t = basis[0].clone();
            }
            (i, p, m, t)
        },
    )
}

pub fn delta_identity() -> Result<(), String> {
    run((3usize..=5, 0usize..=2, 0usize..=2).prop_flat_map(|(n, p, k)| form(n, p + 1, k)), |eta| {
        let omega = eta.contract_rad();
        if omega.is_zero() {
            return Ok(());
        }
        let back = omega.delta().map_err(|e| TestCaseError::fail(e.to_string()))?.contract_rad();
        prop_assert_eq!(back, omega);
        Ok(())
    })
}

pub fn xi_vanishes() -> Result<(), String> {
    run(tor_vector(), |(i, p, _, t)| {
        let sf = &golden()[i];
        let w = sf.xi(p, &t).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(w.contract_rad().is_zero());
        prop_assert!(w.coefficients().iter().all(|c| sf.ideal().contains(c)));
        Ok(())
    })
}

pub fn xi_injective_and_disjoint() -> Result<(), String> {
    run(tor_vector(), |(i, p, m, t)| {
        let sf = &golden()[i];
        let w = sf.xi(p, &t).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(!w.is_zero());
        let d = m - p as i64 - 1;
        let radial = FormSpace::spanned_by(sf.ideal().nvars(), p, d, &sf.radial_spanning_set(p, d))
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(!radial.contains(&w));
        Ok(())
    })
}

pub fn xi_decomposition() -> Result<(), String> {
    run(
        (tor_vector(), 1usize..=2, any::<prop::sample::Index>()).prop_flat_map(|(tv, k, _)| {
            let n = golden()[tv.0].ideal().nvars();
            (Just(tv), poly(n, k))
        }),
        |((i, p, _, t), f)| {
            if f.is_zero() {
                return Ok(());
            }
            let ok =
                golden()[i].radial_decomposition_check(p, &t, &f).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(ok);
            Ok(())
        },
    )
}

pub fn d_squared() -> Result<(), String> {
    run(
        any_form().prop_flat_map(|w| {
            let n = w.nvars();
            (Just(w), prop::collection::vec(poly(n, 1), n))
        }),
        |(w, v)| {
            prop_assert!(w.exterior_derivative().exterior_derivative().is_zero());
            let v = VectorField::new(v).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(w.contract(&v).contract(&v).is_zero());
            prop_assert!(w.contract_rad().contract_rad().is_zero());
            Ok(())
        },
    )
}

/// Two to four homogeneous generators in three variables.
pub fn small_ideal() -> impl Strategy<Value = Ideal> {
    prop::collection::vec((1usize..=3).prop_flat_map(|k| poly(3, k)), 2..=4)
        .prop_map(|gens| Ideal::new(3, gens).unwrap())
}

pub fn buchberger() -> Result<(), String> {
    run((small_ideal(), 0usize..3), |(ideal, o)| {
        use syzforms::{MonomialOrder, OrderKind};
        let kind = [OrderKind::Degrevlex, OrderKind::Deglex, OrderKind::Lex][o];
        let ideal = ideal.with_order(MonomialOrder::new(kind, 3));
        prop_assert!(ideal.gb().satisfies_buchberger_criterion());
        for g in ideal.generators() {
            prop_assert!(ideal.contains(g));
        }
        Ok(())
    })
}

pub fn resolution_exactness() -> Result<(), String> {
    run(small_ideal(), |ideal| {
        let res = FreeResolution::of_ideal(&ideal);
        prop_assert!(res.is_complex());
        prop_assert!(res.is_minimal());
        for d in 0..=8 {
            prop_assert!(res.is_exact_in_degree(d), "not exact in degree {}", d);
        }
        Ok(())
    })
}

pub fn chern_additivity() -> Result<(), String> {
    run(prop::collection::vec(-4i64..=4, 1..=3), |degrees| {
        let c =
            SheafPresentation::split(4, &degrees).chern_classes().map_err(|e| TestCaseError::fail(e.to_string()))?;
        // Product of (1 + a_i h), truncated at h^3.
        let mut poly = [1i64, 0, 0, 0];
        for &a in &degrees {
            for k in (1..4).rev() {
                poly[k] += a * poly[k - 1];
            }
        }
        prop_assert_eq!(c.rank, degrees.len() as i64);
        prop_assert_eq!(c.c, [poly[1], poly[2], poly[3]]);
        Ok(())
    })
}

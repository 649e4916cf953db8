#[path = "support/properties.rs"]
mod properties;

use properties::{golden, ideal_from, tor_vector};
use proptest::prelude::*;
use syzforms::forms::PForm;
use syzforms::groebner::Ideal;
use syzforms::monomial::count_monomials;
use syzforms::poly::rat;
use syzforms::resolution::binomial_int;
use syzforms::syzforms::{brute_force_space, FormSpace, SyzygyForms};
use syzforms::{Polynomial, Rational};

fn f(s: &str, n: usize) -> PForm {
    PForm::parse(s, n).unwrap()
}

fn unit(k: usize, len: usize) -> Vec<Rational> {
    (0..len).map(|i| rat(i64::from(i == k))).collect()
}

fn factorial(p: usize) -> i64 {
    (1..=p as i64).product()
}

#[test]
fn three_points_xi() {
    let sf = SyzygyForms::new(&ideal_from(3, &["x0*x1", "x0*x2", "x1*x2"]));
    let images: Vec<PForm> = (0..2).map(|k| sf.xi(1, &unit(k, 2)).unwrap()).collect();
    let expected = [f("x0*x1*dx2 - x0*x2*dx1", 3), f("x0*x2*dx1 - x1*x2*dx0", 3)];
    let ours = FormSpace::spanned_by(3, 1, 1, &images).unwrap();
    assert!(ours.same_span(&FormSpace::spanned_by(3, 1, 1, &expected).unwrap()));
    assert_eq!(ours.dim(), 2);
    assert!(sf.xi(1, &[rat(0), rat(0)]).unwrap().is_zero());
}

#[test]
fn mixed_degrees_are_rejected() {
    let sf = SyzygyForms::new(&ideal_from(3, &["x0^2", "x1^3"]));
    assert!(sf.xi(0, &[rat(1), rat(1)]).is_err());
    assert!(sf.xi(0, &[rat(1), rat(0)]).is_ok());
}

#[test]
fn form_space_examples() {
    let three = SyzygyForms::new(&ideal_from(3, &["x0*x1", "x0*x2", "x1*x2"]));
    assert_eq!(three.form_space(1, 1).unwrap().dim(), 2);
    assert_eq!(three.form_space(1, 0).unwrap().dim(), 0);
    let fat = SyzygyForms::new(&ideal_from(4, &["x0^2", "x1^2", "x0*x2", "x1*x2", "x2^2 - x0*x1"]));
    let space = fat.form_space(1, 1).unwrap();
    assert_eq!(space.dim(), 5);
    assert!(space.same_span(&brute_force_space(fat.ideal(), 1, 1)));
    let cubic = ideal_from(4, &["x1*x3 - x2^2", "x1*x2 - x0*x3", "x0*x2 - x1^2"]);
    assert_eq!(brute_force_space(&cubic, 1, 0).dim(), 0);
    assert_eq!(brute_force_space(&cubic, 1, 1).dim(), 2);
}

/// With `I = (1)` only `ι_rad ω = 0` constrains `ω`. The Koszul complex is exact
/// in positive degree, so the kernel has dimension `Σ_j (-1)^j C(n, p+1+j) dim S_{d-j}`.
#[test]
fn unit_ideal_gives_the_whole_kernel() {
    for n in 2..=4usize {
        let ideal = Ideal::unit(n);
        for p in 0..n {
            for d in 0..=2i64 {
                let expected: i64 = (0..=d)
                    .map(|j| {
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        sign * binomial_int(n as i64, p as i64 + 1 + j) * count_monomials(n, d - j) as i64
                    })
                    .sum();
                assert_eq!(brute_force_space(&ideal, p, d).dim() as i64, expected, "n={n} p={p} d={d}");
                assert_eq!(SyzygyForms::new(&ideal).form_space(p, d).unwrap().dim() as i64, expected);
            }
        }
    }
}

#[test]
fn golden_dimensions_match_brute_force() {
    for sf in golden() {
        let n = sf.ideal().nvars();
        let betti = sf.resolution().betti().unwrap();
        for p in 0..n {
            for d in 0..=betti.regularity() + 1 {
                let space = sf.form_space(p, d).unwrap();
                let brute = brute_force_space(sf.ideal(), p, d);
                assert!(space.same_span(&brute), "p={p} d={d}");
                let piece = sf.ideal().graded_piece_dim(d);
                if piece == 0 {
                    assert_eq!(space.dim() as u64, betti.get(p, d + p as i64 + 1));
                }
                assert_eq!(space.tor_part() as u64, betti.get(p, d + p as i64 + 1));
                for w in space.basis() {
                    assert!(w.contract_rad().is_zero());
                    assert!(w.coefficients().iter().all(|c| sf.ideal().contains(c)));
                }
            }
        }
    }
}

#[test]
fn linear_strand_is_a_multiple_of_xi() {
    for sf in golden() {
        let n = sf.ideal().nvars();
        for p in 1..n {
            for d in 0..=2i64 {
                if sf.ideal().graded_piece_dim(d) != 0 {
                    assert!(sf.xi_linear_strand(p, d, &[]).is_err());
                    continue;
                }
                let basis = sf.resolution().tor_basis(p, d + p as i64 + 1);
                for t in &basis {
                    let fast = sf.xi_linear_strand(p, d, t).unwrap();
                    assert_eq!(fast, sf.xi(p, t).unwrap().scale(&rat(factorial(p))));
                }
            }
        }
    }
}

#[test]
fn decomposition_examples() {
    let sf = SyzygyForms::new(&ideal_from(3, &["x0*x1", "x0*x2", "x1*x2"]));
    let x0 = Polynomial::var(3, 0);
    assert!(sf.radial_decomposition_check(1, &unit(0, 2), &x0).unwrap());
    assert!(sf.radial_decomposition_check(1, &unit(0, 2), &Polynomial::one(3)).is_err());
}

#[test]
fn spanned_by_checks_shapes() {
    assert!(FormSpace::spanned_by(3, 1, 1, &[f("x0*dx1", 3)]).is_err());
    assert!(FormSpace::spanned_by(3, 1, 0, &[f("x0*x1*dx2", 3)]).is_err());
    let s = FormSpace::spanned_by(3, 1, 0, &[f("x0*dx1", 3), f("2*x0*dx1", 3), PForm::zero(3, 1)]).unwrap();
    assert_eq!(s.dim(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn xi_has_the_tor_degree((i, p, m, t) in tor_vector()) {
        let w = golden()[i].xi(p, &t).unwrap();
        prop_assert_eq!(w.total_degree(), Some(m as u32));
        // Linearity: ξ(2t) = 2ξ(t).
        let doubled: Vec<Rational> = t.iter().map(|x| x * rat(2)).collect();
        prop_assert_eq!(golden()[i].xi(p, &doubled).unwrap(), w.scale(&rat(2)));
    }
}

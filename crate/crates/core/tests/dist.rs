#[path = "support/properties.rs"]
mod properties;

use properties::{form, ideal_from};
use proptest::prelude::*;
use syzforms::dist::{
    cw_complex, lds_check, projective_dimension, random_vanishing_form, sing_scheme, Distribution, SheafPresentation,
};
use syzforms::forms::{nform_from_vfield, PForm, VectorField};
use syzforms::resolution::{GradedMap, Presentation};
use syzforms::syzforms::SyzygyForms;

/// `ι_rad η` for a random `(p+1)`-form `η`: always descends.
fn descending(nvars: usize, p: usize, k: usize) -> impl Strategy<Value = PForm> {
    form(nvars, p + 1, k).prop_map(|eta| eta.contract_rad())
}

fn euler_characteristic(sheaf: &SheafPresentation, d: i64) -> i64 {
    let n = sheaf.nvars() - 1;
    (0..=n).map(|i| (if i % 2 == 0 { 1 } else { -1 }) * sheaf.cohomology_dim(i, d).unwrap() as i64).sum()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cw_complex_is_a_complex(w in (3usize..=5, 0usize..=2, 0usize..=2).prop_flat_map(|(n, p, k)| descending(n, p.min(n - 2), k))) {
        let (a, b) = cw_complex(&w);
        prop_assert!(b.compose(&a).unwrap().is_zero());
    }

    #[test]
    fn ranks_add_up_for_plane_foliations(w in descending(3, 1, 1)) {
        prop_assume!(!w.is_zero());
        prop_assert!(lds_check(&w));
        let dist = Distribution::new(w).unwrap();
        let t = dist.tangent_sheaf().unwrap();
        let nn = dist.normal_sheaf().unwrap();
        prop_assert_eq!(t.rank() + nn.rank(), 2);
        prop_assert_eq!(nn.rank(), 1);
    }
}

#[test]
fn singular_schemes_have_codimension_two() {
    let n = 4;
    let forms = [
        PForm::parse("2*x0*x1*dx2 + x0*x2*dx1 - 3*x1*x2*dx0", 3).unwrap(),
        nform_from_vfield(&VectorField::parse("x1, x2, x3, x0", n).unwrap()),
        nform_from_vfield(&VectorField::parse("x0^2, x1^2, x2^2, x3^2", n).unwrap()),
    ];
    for w in forms {
        let dist = Distribution::new(w).unwrap();
        assert!(dist.is_lds());
        let ambient = dist.n() as i64;
        assert!(projective_dimension(&dist.sing_scheme()) <= ambient - 2);
    }
}

#[test]
fn euler_characteristic_matches_hilbert_polynomial() {
    let three = ideal_from(3, &["x0*x1", "x0*x2", "x1*x2"]);
    let sheaves = [
        SheafPresentation::line_bundle(4, 0),
        SheafPresentation::split(4, &[-1, 2]),
        SheafPresentation::tangent_bundle(4),
        SheafPresentation::new(Presentation::image(&GradedMap::row(3, three.generators()).unwrap())),
        Distribution::new(PForm::parse("2*x0*x1*dx2 + x0*x2*dx1 - 3*x1*x2*dx0", 3).unwrap())
            .unwrap()
            .normal_sheaf()
            .unwrap(),
    ];
    for sheaf in &sheaves {
        let hp = sheaf.hilbert_polynomial();
        for d in -4..=3 {
            assert_eq!(Some(euler_characteristic(sheaf, d)), hp.eval_int(d), "d = {d}");
        }
    }
}

#[test]
fn random_forms_vanish_on_the_scheme() {
    let ideal = ideal_from(3, &["x0*x1", "x0*x2", "x1*x2"]);
    let space = SyzygyForms::new(&ideal).form_space(1, 1).unwrap();
    for seed in 0..20 {
        let w = random_vanishing_form(1, 1, &ideal, seed).unwrap();
        assert!(w.descends());
        assert!(space.contains(&w));
        assert_eq!(w, random_vanishing_form(1, 1, &ideal, seed).unwrap());
    }
    // A generic element is singular exactly at the three points.
    let w = random_vanishing_form(1, 1, &ideal, 1).unwrap();
    assert!(sing_scheme(&w).equal(&ideal));
    assert!(random_vanishing_form(1, 0, &ideal, 0).is_err());
}

#[test]
fn split_sheaves_and_duals() {
    let s = SheafPresentation::split(4, &[1, -2, 0]);
    assert_eq!(s.rank(), 3);
    let d = s.dual().chern_classes().unwrap();
    let c = s.chern_classes().unwrap();
    assert_eq!(d.c, [-c.c[0], c.c[1], -c.c[2]]);
}

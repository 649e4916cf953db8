#[path = "support/properties.rs"]
mod properties;

use properties::{golden, ideal_from, small_ideal};
use proptest::prelude::*;
use syzforms::groebner::{GbOptions, Ideal, PairStrategy};
use syzforms::monomial::count_monomials;
use syzforms::poly::rat;
use syzforms::resolution::{binomial_int, FreeResolution, GradedFreeModule, GradedMap, Presentation};
use syzforms::Polynomial;

fn polys(n: usize, gens: &[&str]) -> Vec<Polynomial> {
    gens.iter().map(|g| Polynomial::parse(g, n).unwrap()).collect()
}

/// A map given column by column.
fn columns(n: usize, target: Vec<i64>, cols: &[&[&str]]) -> GradedMap {
    GradedMap::from_columns(n, GradedFreeModule::new(target), cols.iter().map(|c| polys(n, c)).collect()).unwrap()
}

fn betti_entries(ideal: &Ideal) -> Vec<(usize, i64, u64)> {
    FreeResolution::of_ideal(ideal).betti().unwrap().entries().collect()
}

#[test]
fn three_points_syzygies() {
    let phi = GradedMap::row(3, &polys(3, &["x0*x1", "x0*x2", "x1*x2"])).unwrap();
    let syz = phi.syzygies();
    assert_eq!(syz.ncols(), 2);
    assert!(phi.compose(&syz).unwrap().is_zero());
    let expected = columns(3, vec![2, 2, 2], &[&["x2", "-x1", "0"], &["0", "x1", "-x0"]]);
    assert!(syz.image_contains(&expected) && expected.image_contains(&syz));
}

#[test]
fn twisted_cubic_syzygies() {
    let phi = GradedMap::row(4, &polys(4, &["x1*x3 - x2^2", "x1*x2 - x0*x3", "x0*x2 - x1^2"])).unwrap();
    let syz = phi.syzygies();
    assert_eq!(syz.ncols(), 2);
    assert!(phi.compose(&syz).unwrap().is_zero());
    // The 2x2 minors of [[x0, x1, x2], [x1, x2, x3]] give these two linear relations.
    let expected = columns(4, vec![2, 2, 2], &[&["x0", "x1", "x2"], &["x1", "x2", "x3"]]);
    assert!(syz.image_contains(&expected) && expected.image_contains(&syz));
}

#[test]
fn nonzerodivisor_has_no_syzygies() {
    let phi = GradedMap::row(3, &polys(3, &["x0"])).unwrap();
    assert_eq!(phi.syzygies().ncols(), 0);
}

#[test]
fn betti_examples() {
    assert_eq!(betti_entries(&ideal_from(3, &["x0*x1", "x0*x2", "x1*x2"])), vec![(0, 2, 3), (1, 3, 2)]);
    assert_eq!(
        betti_entries(&ideal_from(4, &["x1*x3 - x2^2", "x1*x2 - x0*x3", "x0*x2 - x1^2"])),
        vec![(0, 2, 3), (1, 3, 2)]
    );
    assert_eq!(betti_entries(&ideal_from(4, &["x0^4 + x1*x2*x3^2"])), vec![(0, 4, 1)]);
    let fat = ideal_from(4, &["x0^2", "x1^2", "x0*x2", "x1*x2", "x2^2 - x0*x1"]);
    let table = FreeResolution::of_ideal(&fat).betti().unwrap();
    assert_eq!(table.get(0, 2), 5);
    assert_eq!(table.get(1, 3), 5);
}

#[test]
fn tor_basis_counts() {
    let res = FreeResolution::of_ideal(&ideal_from(3, &["x0*x1", "x0*x2", "x1*x2"]));
    assert_eq!(res.tor_basis(1, 3).len(), 2);
    assert!(res.tor_basis(1, 2).is_empty());
    assert!(res.tor_basis(7, 3).is_empty());
    let fat = ideal_from(4, &["x0^2", "x1^2", "x0*x2", "x1*x2", "x2^2 - x0*x1"]);
    assert_eq!(FreeResolution::of_ideal(&fat).tor_basis(1, 3).len(), 5);
}

#[test]
fn hilbert_polynomial_examples() {
    let free = Presentation::free(4, GradedFreeModule::new(vec![0]));
    let hyperplane = Presentation::cokernel(GradedMap::row(4, &polys(4, &["x0"])).unwrap());
    for t in 0..8 {
        assert_eq!(free.hilbert_polynomial().eval_int(t), Some(binomial_int(t + 3, 3)));
        assert_eq!(hyperplane.hilbert_polynomial().eval_int(t), Some(binomial_int(t + 2, 2)));
    }
    // The three coordinate points: graded pieces 0, 0, 3, 7, 12, ...
    let ideal = ideal_from(3, &["x0*x1", "x0*x2", "x1*x2"]);
    let iz = Presentation::image(&GradedMap::row(3, ideal.generators()).unwrap());
    let hp = iz.hilbert_polynomial();
    for t in 0..=6 {
        assert_eq!(iz.hilbert_function(t), ideal.graded_piece_dim(t) as i64);
        if t >= 1 {
            assert_eq!(hp.eval_int(t), Some(ideal.graded_piece_dim(t) as i64), "t = {t}");
        }
    }
    assert_eq!(hp.eval_int(2), Some(3));
    assert_eq!(hp.rank(2), rat(1));
}

#[test]
fn ext_of_free_module_and_residue_field() {
    let free = Presentation::free(4, GradedFreeModule::new(vec![0]));
    for d in -2..8 {
        assert_eq!(free.ext_dim(0, d), count_monomials(4, d - 4), "d = {d}");
        assert_eq!(free.ext_dim(1, d), 0);
    }
    // Koszul complex: Ext^4(k, R(-4)) is k in degree 0 and nothing else survives.
    let k = Presentation::cokernel(GradedMap::row(4, &polys(4, &["x0", "x1", "x2", "x3"])).unwrap());
    for d in -3..4 {
        assert_eq!(k.ext_dim(4, d), u64::from(d == 0), "d = {d}");
        for q in 0..4 {
            assert_eq!(k.ext_dim(q, d), 0);
        }
    }
}

#[test]
fn golden_resolutions_have_bounded_length() {
    for sf in golden() {
        let res = sf.resolution();
        assert!(res.is_complex() && res.is_minimal());
        assert!(res.length() <= sf.ideal().nvars());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn betti_tables_ignore_pair_order(ideal in small_ideal()) {
        let opts = GbOptions { strategy: PairStrategy::Descending, ..GbOptions::default() };
        let a = FreeResolution::of_ideal(&ideal).betti().unwrap();
        let b = FreeResolution::of_ideal_with(&ideal, &opts).betti().unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hilbert_polynomial_agrees_past_regularity(ideal in small_ideal(), offset in 0i64..4) {
        prop_assume!(!ideal.is_zero());
        let res = FreeResolution::of_ideal(&ideal);
        prop_assert!(res.length() <= ideal.nvars());
        let reg = res.betti().unwrap().regularity();
        let iz = Presentation::image(&GradedMap::row(3, ideal.generators()).unwrap());
        let d = reg + offset;
        prop_assert_eq!(iz.hilbert_polynomial().eval_int(d), Some(ideal.graded_piece_dim(d) as i64));
    }
}

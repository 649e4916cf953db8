#[path = "support/properties.rs"]
mod properties;

macro_rules! suite_tests {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = properties::$name() {
                    panic!("{e}");
                }
            }
        )*
    };
}

suite_tests!(
    delta_identity,
    xi_vanishes,
    xi_injective_and_disjoint,
    xi_decomposition,
    d_squared,
    buchberger,
    resolution_exactness,
    chern_additivity,
);

#[test]
fn every_suite_is_listed() {
    assert_eq!(properties::SUITES.len(), 8);
}

//! Graded free modules and maps, minimal free resolutions, Betti tables,
//! Hilbert series, module presentations and degreewise `Ext`.

mod complex;
mod hilbert;
mod map;
mod presentation;

pub use complex::{BettiTable, FreeResolution};
pub use hilbert::{binomial_int, monomial_quotient_numerator, HilbertPolynomial, HilbertSeries};
pub use map::{GradedFreeModule, GradedMap};
pub use presentation::{homology_presentation, presentation_dim_by_rank, Presentation};

use crate::groebner::Ideal;

/// Hilbert series of `R / I`.
pub fn quotient_hilbert_series(ideal: &Ideal) -> HilbertSeries {
    HilbertSeries::of_quotient(ideal.gb(), &[0])
}

/// Hilbert series of `I` itself.
pub fn ideal_hilbert_series(ideal: &Ideal) -> HilbertSeries {
    HilbertSeries::of_free(ideal.nvars(), &[0]).sub(&quotient_hilbert_series(ideal))
}

//! Exact computer algebra for differential forms vanishing on projective
//! schemes.
//!
//! The crate is layered bottom-up:
//!
//! - [`poly`], [`monomial`], [`parse`]: polynomials over the rationals.
//! - [`groebner`]: Gröbner bases for ideals and submodules of graded free
//!   modules, and the ideal operations built on them.
//! - [`resolution`]: graded free modules and maps, syzygies, minimal free
//!   resolutions, Betti tables, Hilbert functions and polynomials, and graded
//!   `Ext` in a single degree.
//! - [`forms`]: the exterior algebra of polynomial differential forms.
//! - [`syzforms`]: the map from `Tor_p(I, k)` to `p`-forms vanishing on
//!   `V(I)`, the full graded pieces of that space, and a brute-force oracle.
//! - [`dist`]: distributions defined by a form: decomposability,
//!   integrability, singular scheme, tangent/normal/conormal sheaves, Chern
//!   classes and sheaf cohomology on `P^3`.

pub mod dist;
pub mod error;
pub mod forms;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod syzforms;

pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::{Polynomial, Rational};

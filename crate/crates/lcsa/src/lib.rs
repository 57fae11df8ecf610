//! Exact symbolic machinery for Lie conformal superalgebras of type (r,s).
//!
//! The crate is organized bottom-up:
//!
//! - [`superpoly`] — sparse supercommutative polynomials over families of even
//!   and odd indeterminates, with Koszul sign normalization and exact rational
//!   coefficients;
//! - [`conformal`] — free `F[∂]`-modules over named generators, λ-brackets
//!   extended by sesquilinearity, and the conformal axioms as executable
//!   defect computations;
//! - [`rw`] — the conformal superalgebra RW(r,s) of Witt type;
//! - [`re44`] — the generators α₁…α₈ of RE(4,4) inside RW(4,4), their
//!   rewriting relations, and the closed-form bracket;
//! - [`annihilation`] — the quotient 𝒜(R) of the affinization with
//!   normal-form reduction, gradings, regularity and character computations;
//! - [`geometry`] — polynomial superderivations for W(4,4), the vector-field ⊕
//!   one-form model of E(4,4), and the maps Φ, φ, Ψ between them;
//! - [`modules`] — finite-rank conformal modules, the conformal dual, and the
//!   correspondence with continuous annihilation-algebra modules;
//! - [`harness`] — named verification suites with deterministic JSON reports.
//!
//! Every identity checked by this crate is an exact equality of sparse
//! rational expressions; there are no tolerances anywhere.

pub mod annihilation;
pub mod conformal;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod modules;
pub mod rational;
pub mod re44;
pub mod report;
pub mod rw;
pub mod superpoly;

pub use conformal::{Element, GenInfo, GeneratorTable};
pub use error::AlgebraError;
pub use rational::Rational;
pub use superpoly::{Family, Signature, SuperMonomial, SuperPolynomial, Symbol};

//! Exact symbolic engine for the boundary term of the noncommutative residue
//! of the Witten deformation squared inverse on a 7-dimensional manifold
//! with boundary, together with an independent floating-point oracle and a
//! report layer.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalars`] — Q(i) and the parameter ring all results live in;
//! * [`clifford`] — the abstract Clifford algebra and its trace functional;
//! * [`poly`], [`ratfunc`] — rational functions of `xi_n` with poles at
//!   `+/- i`, the Hardy projection and residue integration;
//! * [`sphere`] — exact monomial moments over the unit 5-sphere;
//! * [`curvature`] — boundary Riemann tensor canonicalization and
//!   contraction into scalar-curvature multiples;
//! * [`jets`] — the symbol expression trees and the finite derivative tables
//!   at the boundary point that drive all differentiation;
//! * [`pipeline`] — the fifteen boundary cases, their assembly into the
//!   boundary term, the theorem total and the gravitational-action record;
//! * [`oracle`] — adaptive quadrature and Gamma-function cross-checks;
//! * [`grammar`] — a small term parser used by test fixtures;
//! * [`report`] — report document, emitters and verification entry point.

pub mod clifford;
pub mod curvature;
pub mod grammar;
pub mod jets;
pub mod oracle;
pub mod pipeline;
pub mod poly;
pub mod ratfunc;
pub mod report;
pub mod scalars;
pub mod sphere;

pub use clifford::{CliffordElement, CliffordWord, GeneratorKind};
pub use ratfunc::PoleLimitedRational;
pub use scalars::{Assignment, GaussianRational, Indeterminate, ParameterPolynomial, Rational};

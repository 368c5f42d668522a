//! # odchar — exact arithmetic for prime graphs of simple unitary groups
//!
//! Everything here is computed with exact integer arithmetic: no floats, no
//! approximations. The crate provides
//!
//! - [`arith`] — factored integers, multiplicative orders, r-parts and
//!   primitive prime divisors with the Bang–Zsigmondy exception list;
//! - [`unitary`] — closed-form orders, full spectra and maximal-order μ-sets
//!   of the projective special unitary groups U_n(q), plus their order
//!   components;
//! - [`catalog`] — an order catalog of the finite simple groups (Lie type,
//!   alternating, sporadic) with bounded candidate enumeration;
//! - [`graph`] — Gruenberg–Kegel prime graphs, degree patterns, components,
//!   independence numbers, the Erdős–Gallai graphic test and the
//!   degree-sequence nonadjacency/connectivity criteria, with DOT export;
//! - [`certify`] — machine-checkable OD-characterization certificates for
//!   U_3(q) and U_4(q), q < 100;
//! - [`tables`] — embedded printed reference tables and the diff machinery
//!   that compares them cell by cell against recomputed values.
//!
//! The certificate pipeline never constructs group elements; it only checks
//! arithmetic and combinatorial premises and records the group-theoretic
//! theorems it relies on as named axiom steps, so every certificate can be
//! replayed by an independent checker.

pub mod arith;
pub mod catalog;
pub mod certify;
pub mod error;
pub mod graph;
pub mod tables;
pub mod unitary;

pub use arith::FactoredInteger;
pub use catalog::{Family, GroupSpec};
pub use certify::{Certificate, Step, Verdict};
pub use error::{Error, Result};
pub use graph::{DegreePattern, PrimeGraph};
pub use unitary::{Spectrum, UnitaryParams};

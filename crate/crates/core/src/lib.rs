//! Exact-arithmetic toolkit for the rank stratification of Hessian matrices
//! of cubic forms: finite-field censuses of the rank strata, Hilbert
//! functions of the minor ideals by graded linear algebra, closed-form
//! intersection-theoretic invariants of the strata, and cohomology
//! certificates for the isotropic-family double cover.
//!
//! The library layers are:
//! - [`polycore`]: coefficient fields, sparse polynomials, determinants and
//!   minors, GF(p) linear algebra;
//! - [`hessian`]: cubic forms, Hessian matrices, the identity layer, named
//!   and seeded cubics;
//! - [`strata`]: exhaustive point enumeration over GF(p);
//! - [`hilbert`]: graded-piece ranks, Hilbert windows, polynomial fits;
//! - [`chern`]: exact rational intersection numbers;
//! - [`bott`]: weight combinatorics and cohomology tables;
//! - [`commands`] / [`report`]: the reproduction harness behind the CLI.

pub mod bott;
pub mod chern;
pub mod commands;
pub mod hessian;
pub mod hilbert;
pub mod polycore;
pub mod report;
pub mod strata;

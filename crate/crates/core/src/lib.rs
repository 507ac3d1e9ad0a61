//! Exact minimal log discrepancies of cyclic quotient singularities, and an
//! exact solver for systems of floor-sum equations over rational boxes.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: the exact [`Rational`] scalar and integer predicates.
//! - [`singularity`]: `1/r(a_1, ..., a_d)`, its mld, the associated function
//!   `f(n)`, the conditions `D(n, c)` / `C(n)` and set memberships.
//! - [`boxsolver`]: disjoint unions of half-open boxes refined one floor
//!   equation at a time, plus a brute-force grid oracle.
//! - [`theorems`]: reproducible verification reports for each
//!   computer-assisted classification and non-existence statement.
//! - [`cli`]: the `mldlab` command-line front end.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod arith;
pub mod boxsolver;
pub mod cli;
pub mod error;
pub mod singularity;
pub mod theorems;

pub use arith::Rational;
pub use error::{Error, Result};

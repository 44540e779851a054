//! Exact Newton-polygon arithmetic for monomial ideals and monomial modules in
//! two variables.
//!
//! A monomial ideal in `k[x, y]` is identified with its set of exponent
//! vectors in `N²`, and a monomial module in `k[x^±1, y^±1]` with a subset of
//! `Z²` that is stable under adding `N²`. Everything here works on those
//! exponent sets with exact integer arithmetic:
//!
//! - [`geometry`]: lattice points, primitive edge directions, lower-left
//!   convex hulls and the boundary paths of Newton polyhedra.
//! - [`ideal`]: minimal generators, membership, integral closure and products.
//! - [`factorization`]: the simple ideals `E_{r/s}` and the unique
//!   factorization of integrally closed ideals into them.
//! - [`monomial_module`]: co-artinian modules in `Z²`, infinite factor
//!   streams, their finite approximants and window-based convergence checks.
//! - [`enumeration`]: the Calkin–Wilf enumeration of the positive rationals
//!   that fixes the truncation maps.
//!
//! Integers are `i64`. Every operation that can grow coordinates checks for
//! overflow and reports [`Error::OverflowDetected`] instead of wrapping.

#![no_std]

extern crate alloc;

pub mod enumeration;
mod error;
pub mod factorization;
pub mod geometry;
pub mod ideal;
pub mod monomial_module;

pub use enumeration::{calkin_wilf_rank, CalkinWilf};
pub use error::{Error, Result, Violation};
pub use factorization::{simple_ideal, Factorization};
pub use geometry::{
    lattice_length, lower_left_hull, orientation, primitive_step, BoundaryPath, Edge, Floor,
    Fraction, LatticePoint, Orientation, PrimitiveStep, Slope,
};
pub use ideal::{closure_contains_oracle, ClosureOracle, MonomialIdeal};
pub use monomial_module::{
    admit_module, check_convergence, factor_stream_of_module, truncate_factorization,
    truncate_stream, Admitted, FactorStream, ModuleDescription, MonomialModule, NamedFamily, Rect,
    Side, SideRule, StabilizationReport, Window,
};

//! Exact symbolic machinery for generating and verifying nonlinear ODEs
//! whose point-symmetry algebra is prescribed to be sl(2,R) (or one of
//! its two natural enlargements).
//!
//! The crate is organized bottom-up:
//!
//! - [`rat`], [`poly`], [`expr`]: exact rationals, sparse multivariate
//!   polynomials, and normalized rational functions with a decidable
//!   zero test;
//! - [`jet`]: jet variables, the total derivative, and restriction of
//!   expressions to an ODE's solution manifold;
//! - [`fields`]: point vector fields, prolongations, commutators, and
//!   structure constants;
//! - [`factory`]: the coefficient recursion / closed form and the
//!   equation family builders;
//! - [`symmetry`]: the determining-equations solver and the symmetry
//!   algebra classifier;
//! - [`parse`], [`render`], [`report`]: the text front end (expression
//!   grammar, ASCII/LaTeX emission, JSON schemas).
//!
//! Everything is immutable after construction and every operation is a
//! pure function; all values are `Send + Sync`.

pub mod acceptance;
pub mod ast;
pub mod error;
pub mod expr;
pub mod factory;
pub mod fields;
pub mod jet;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod render;
pub mod report;
pub mod symmetry;
pub mod vars;

pub use error::{Error, ParseError, Result};
pub use expr::RatExpr;
pub use factory::{
    build_eq10, build_eq11, build_eq3, build_eq9, closed_form, eq10_tail, f_value,
    solve_recursion, CoeffSource, CoefficientVector, Family, PhiTerm,
};
pub use fields::{bracket_table, prolong, BracketTable, ProlongedField, VectorField};
pub use jet::{JetCtx, OdeSpec};
pub use parse::{parse_expr, parse_field};
pub use poly::{Monomial, Poly};
pub use rat::Rat;
pub use symmetry::{
    classify_algebra, determining_system, is_symmetry, solve_determining, symmetry_residual,
    AlgebraClass, AnsatzSpace, DeterminingSystem, SymmetryReport,
};
pub use vars::Var;

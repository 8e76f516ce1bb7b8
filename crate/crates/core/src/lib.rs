//! Symbolic-numeric toolkit for Lie point symmetry analysis of the
//! Grad-Shafranov equation family
//! `u_xx + (a/x) u_x + u_tt = x^p F(u) + G(u)`.
//!
//! The crate is organized around a small exact expression engine
//! ([`expr`]), jet-space machinery for prolongations and brackets
//! ([`jets`]), the equation family and its determining equations ([`gs`]),
//! exact Lie-algebra structure analysis ([`lie`]), the adjoint
//! representation and the optimal system of one-dimensional subalgebras
//! ([`adjoint`]), special functions with independent quadrature oracles
//! ([`specfun`]), a catalog of closed-form invariant solutions with
//! residual verification ([`solutions`]), and structured computed-versus-
//! printed table diffs ([`report`]).

pub mod adjoint;
pub mod expr;
pub mod gs;
pub mod jets;
pub mod lie;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod solutions;
pub mod specfun;

pub use expr::{Expr, ExprError, Symbol};
pub use rational::Rational;

//! Exact arithmetic for split octonions over finite fields and over Z2(t),
//! together with tools for the functional identity
//! `f(x) + x^2 g(x^{-1}) = 0` on additive maps:
//!
//! * [`fields`]: GF(p) and GF(p^k) with prime-subfield coordinates.
//! * [`ratfunc2`]: GF(2)[t] and the non-perfect field Z2(t).
//! * [`octonion`]: the split octonion algebra, trace, norm, inverse, and
//!   evaluators for the alternative, Moufang, Hua and Artin identities.
//! * [`patho_map`]: the two-parameter family of additive solutions on Z2(t)
//!   that are not of the form `x -> x q`.
//! * [`solver`]: computes every additive solution pair over a finite algebra
//!   as the nullspace of a linear system over GF(p).
//! * [`cli`]: report-producing drivers behind the `splitocto` binary.

pub mod cli;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod octonion;
pub mod patho_map;
pub mod ratfunc2;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use fields::{FieldElem, FieldRef, FieldSpec};
pub use octonion::{associator, hua_check, moufang_check, OctIndex, Octonion};
pub use patho_map::PathoMap;
pub use ratfunc2::{Poly2, RatFunc2};
pub use scalar::Scalar;
pub use solver::{AlgebraHandle, AlgebraKind, SolveMode, SolveReport};

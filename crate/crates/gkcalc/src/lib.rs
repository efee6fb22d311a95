//! Exact-arithmetic engine for generalized complex and generalized Kahler
//! structures in the pure-spinor formalism.
//!
//! The core stack: exact scalars over Q(i, sqrt2, sqrt3) (`scalar`), symbolic
//! expressions and randomized zero testing (`expr`, `parse`, `sample`), a
//! Clifford/exterior blade engine generic over coefficients (`clifford`),
//! exact dense linear algebra (`linalg`), coordinate-patch differential forms
//! and Courant calculus (`patch`, `forms`, `section`), pointwise spinor
//! structure analysis and scalar curvature (`pointwise`, `curvature`), the
//! model catalogue (`models`), Clifford-algebraic structures on compact Lie
//! algebras (`lie`), a floating-point bounded-domain fibration module
//! (`fiber`), and machine-readable reporting (`report`).

pub mod scalar;
pub mod expr;
pub mod parse;
pub mod sample;
pub mod clifford;
pub mod linalg;
pub mod lie;
pub mod patch;
pub mod forms;
pub mod section;
pub mod pointwise;
pub mod curvature;
pub mod models;
pub mod fiber;
pub mod report;

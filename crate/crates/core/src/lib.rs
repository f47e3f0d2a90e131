//! Matrix-variate Riesz, Kotz-Riesz, Pearson type II-Riesz and beta-Riesz
//! distributions over the real normed division algebras ℝ, ℂ, ℍ (and 𝕆 for
//! scalar formulas).
//!
//! [`algebra`] and [`matvar`] give scalar and matrix arithmetic, [`weights`]
//! the generalized powers `q_κ`, [`special`] the weighted gamma functions,
//! [`densities`] and [`samplers`] the families themselves, and [`verify`]
//! the numerical checks driven by the `riesz-matvar` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod densities;
pub mod distribution;
pub mod error;
pub mod matvar;
pub mod quadrature;
pub mod samplers;
pub mod special;
pub mod verify;
pub mod weights;

//! Multiple q-zeta values and the identities between them.
//!
//! The nested series
//!
//! ```text
//! ζ[s₁,…,s_m] = Σ_{k₁>…>k_m>0} ∏ q^{(s_j−1)k_j} / [k_j]_q^{s_j}
//! ```
//!
//! is evaluated either exactly, as a power series in a formal `q` truncated at
//! `q^Q`, or numerically at a fixed `0 < q < 1`. On top of the evaluators sit
//! the q-stuffle algebra, the Hoffman word algebra with its derivations, the
//! Jackson integral and a registry of identity checks.
//!
//! Modules, bottom up:
//!
//! - [`qcore`]: rationals, polynomials and series in `q`, float and complex
//!   values with tail bounds, `[n]_q`, `Γ_q`, `γ_q`.
//! - [`algebra`]: words in `x`, `y`, duality, the derivations `D_n`, `∂_n` and
//!   the substitution `σ_θ`.
//! - [`stuffle`]: q-stuffle products, set partitions and reductions.
//! - [`series`]: evaluators for ζ, `Z`, `λ_q`, `Li`, `T`, `S`, `f`, `₂φ₁` and
//!   the generating-function coefficients.
//! - [`jackson`]: single and iterated Jackson integrals.
//! - [`identities`]: the verification registry.

pub mod algebra;
pub mod error;
pub mod identities;
pub mod jackson;
pub mod parse;
pub mod qcore;
pub mod series;
pub mod stuffle;

pub use algebra::{Composition, Word, WordPoly};
pub use error::{Error, Result};
pub use qcore::{BackendConfig, ComplexVal, FloatVal, Mode, QPoly, QSeries, Rational, Value};
pub use stuffle::{ZetaCombo, ZetaPoly};

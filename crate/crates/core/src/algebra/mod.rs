//! The word algebra `𝔥 = ℚ⟨x, y⟩`.
//!
//! Admissible compositions correspond to words in `x𝔥y` via
//! `(s₁,…,s_m) ↦ x^{s₁−1}y ⋯ x^{s_m−1}y`. On words live the duality `τ`
//! (reverse and swap letters), the derivations `D_n`, `∂_n`, and the
//! substitution `σ_θ`.

mod composition;
mod derivation;
mod word;

pub use composition::{BlockForm, Composition};
pub use derivation::{
    apply_derivation, check_exp_partial, derivation_d, derivation_partial,
    derivation_partial_with_y_sign, exp_derivation, sigma_theta, sigma_via_exp, ExpPartialReport,
    ParamWordSeries,
};
pub use word::{composition_of_word, dual_composition, tau, word_of_composition, Letter, Word, WordPoly};

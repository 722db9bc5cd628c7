//! Evaluators for the nested q-series.
//!
//! Exact mode returns integer power series mod `q^Q`; numeric modes return
//! a value with a tail bound, flagged heuristic when the bound came from a
//! doubling test.

mod fword;
mod genfunc;
mod kernel;
mod polylog;
mod ts;
mod zeta;

pub use fword::{eval_f, f_theta_series, FWordSpec};
pub use genfunc::{
    drin_rhs_coeff, euler_convolution_residual, euler_statement_residual, eval_2phi1,
    gen_func_coeff, heine_double_sum, heine_gamma_ratio, heine_gamma_side, log_qgamma_direct,
    log_qgamma_series, zeta_m2_ones,
};
pub use polylog::{eval_lambda, eval_li, lambda_params_of_li, zeta_lambda_params};
pub use ts::{eval_s, eval_t};
pub use zeta::{
    eval_z, eval_zeta, eval_zeta_combo, eval_zeta_hat, eval_zeta_poly, eval_zeta_tilde,
    weak_compositions, zeta, zeta_tilde_via_zeta,
};

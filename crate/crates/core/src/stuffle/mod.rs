//! The q-stuffle algebra of multiple q-zeta values.
//!
//! Products are expanded with
//!
//! ```text
//! ζ[s]ζ[t] = Σ_{(φ,ψ)} Σ_{A ⊆ im φ ∩ im ψ} (1−q)^{|A|} ζ[…, s_{φ⁻¹k} + t_{ψ⁻¹k} − [k∈A], …]
//! ```
//!
//! and linear combinations are kept as [`ZetaCombo`] (compositions with
//! polynomial coefficients) or [`ZetaPoly`] (products of compositions).

mod combo;
mod parity;
mod partitions;
mod product;
mod reduce;

pub use combo::{ZetaCombo, ZetaPoly};
pub use parity::{parity_reduce, regularize, RegPoly};
pub use partitions::{enumerate_set_partitions, SetPartition};
pub use product::{
    delta_apply, enumerate_stuffles, qstuffle_product, stuffle_formal, Stuffle,
};
pub use reduce::{nproduct_expand, partition_identity_sides, period1_reduce};

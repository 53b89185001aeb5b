//! Radii of uniform convexity for normalized q-Bessel functions (Jackson's
//! second and third kinds) and normalized Wright functions.
//!
//! For each family three normalizations f, g, h of the underlying entire
//! function are treated. The radius of uniform convexity of each is computed
//! by two independent routes — the direct functional equation in the series
//! derivatives, and the strictly decreasing sum over the function's positive
//! zeros — and can be verified against a disk-sampling oracle for the
//! uniform-convexity criterion itself.
//!
//! The numeric kernels are generic over the scalar type through the
//! [`scalar::Real`] and [`scalar::Field`] traits (f32/f64, real/complex);
//! concrete f64 aliases for the main types live at the crate root.

// `!(x > 0)` is used for validation on purpose: unlike `x <= 0` it also
// rejects NaN inputs.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use serde::{Deserialize, Serialize};

pub mod error;
pub mod gamma;
pub mod oracle;
pub mod qseries;
pub mod radius;
pub mod scalar;
pub mod wright;
pub mod zeros;

mod series;
mod sum;

pub mod cli;

/// The three normalizations attached to each family member.
///
/// With the underlying function u (a q-Bessel function J or the function
/// Ψ(z) = z^β Γ(β) φ(ρ, β; −z²) built from the Wright series):
/// * `F`: the power normalization [z^{1-order} u(z)]^{1/order}, handled
///   throughout via its logarithmic-derivative ratios so no fractional
///   powers are ever taken;
/// * `G`: z^{1-order} u(z), an odd function of z;
/// * `H`: the same with z²→z, i.e. z^{1-order/2} u(√z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Norm {
    F,
    G,
    H,
}

impl std::fmt::Display for Norm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Norm::F => write!(f, "f"),
            Norm::G => write!(f, "g"),
            Norm::H => write!(f, "h"),
        }
    }
}

pub use error::{Error, Result};
pub use oracle::{oracle_radius, uc_margin, MarginReport};
pub use qseries::{
    c_nu, classical_bessel, jackson_qbessel, normalized_qbessel, q_pochhammer,
    ratio_one_plus_zfpp_fp, EvalResult, QBesselParams, QKind,
};
pub use radius::{
    direct_form_eval, radius_uc_qbessel_f, radius_uc_qbessel_g, radius_uc_qbessel_h,
    radius_uc_wright_f, radius_uc_wright_g, radius_uc_wright_h, uc_radius, zero_sum_form,
    DualRadius, FreshTables, Method, RadiusOptions, RadiusResult, TableSource, ZeroSumForm,
};
pub use wright::{lambda_func, normalized_wright, psi_func, wright_phi, WrightParams};
pub use zeros::{
    interlacing_check, scan_and_refine, Family, InterlacingReport, TargetKind, ZeroTable,
    ZeroTarget,
};

/// Concrete f64 aliases for the main types.
pub type QBesselParams64 = QBesselParams<f64>;
pub type WrightParams64 = WrightParams<f64>;
pub type Family64 = Family<f64>;
pub type ZeroTarget64 = ZeroTarget<f64>;
pub type ZeroTable64 = ZeroTable<f64>;
pub type DualRadius64 = DualRadius<f64>;
pub type RadiusResult64 = RadiusResult<f64>;
pub type MarginReport64 = MarginReport<f64>;

/// Concrete f32 aliases.
pub type QBesselParams32 = QBesselParams<f32>;
pub type WrightParams32 = WrightParams<f32>;
pub type Family32 = Family<f32>;

//! Γ, ζ, ξ and the scaled modified Bessel function of imaginary order.

mod bessel;
mod gamma;
mod zeta;

pub use bessel::{bessel_k_imag_scaled, bessel_k_imag_scaled_with, BesselLimits, ScaledBesselValue};
pub use gamma::{gamma_complex, ln_abs_gamma, log_cos_pi, log_gamma_complex, log_sin_pi};
pub use zeta::{
    default_cutoff, log_xi, xi_log_derivative_re, xi_complete, zeta_complex, zeta_em, zeta_eta, DEFAULT_EM_TERMS, MAX_EM_TERMS,
};

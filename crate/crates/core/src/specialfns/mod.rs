//! Scalar special functions: ξ, the entire function I and ρ̂, the exponential
//! integral, the Dickman function, ζ on the real line and the Hardy Z-function.

mod big_i;
mod dickman;
mod expint;
mod xi;
mod zeta;

pub use big_i::{big_i, big_i_deriv, big_i_real, rho_hat};
pub use dickman::{rho, rho_prime, DickmanSolver, DEFAULT_GRID_STEP, DEFAULT_MAX_U};
pub use expint::{ei_difference, expint_e1, expint_e1_complex, expint_ei};
pub use xi::{xi, XiValue};
pub use zeta::{
    bernoulli_over_factorial, hardy_z, log_zeta_pole_removed, riemann_siegel_theta, z_fn,
    zeta_complex, zeta_real, ZetaReal,
};

use crate::error::{domain, Result};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `log t / (sqrt(1 + 1/t) log(1 + t))`, the limiting profile of the variance ratio B.
pub fn h_fn(t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(
            "h_fn",
            format!("t must be positive and finite, got {t}"),
        ));
    }
    Ok(t.ln() / ((1.0 + 1.0 / t).sqrt() * t.ln_1p()))
}

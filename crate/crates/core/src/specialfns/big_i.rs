use num_complex::Complex64;

use super::expint::{expint_e1, expint_e1_complex, expint_ei};
use super::EULER_GAMMA;
use crate::error::{check_finite, domain, Result};

/// I(r) = ∫_0^r (e^v − 1)/v dv for real r.
pub fn big_i_real(r: f64) -> f64 {
    if r == 0.0 {
        0.0
    } else if (-2.0..=50.0).contains(&r) {
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..400 {
            term *= r / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() <= 1e-17 * sum.abs() {
                break;
            }
        }
        sum
    } else if r < 0.0 {
        -(expint_e1(-r).expect("positive argument") + EULER_GAMMA + (-r).ln())
    } else {
        expint_ei(r).expect("nonzero argument") - EULER_GAMMA - r.ln()
    }
}

/// The entire function I(s) = ∫_0^s (e^v − 1)/v dv = Σ_{k≥1} s^k/(k·k!).
///
/// The power series is used near the origin and in the right half-plane close
/// to the real axis; elsewhere `I(s) = −(E₁(−s) + γ + log(−s))`.
pub fn big_i(s: Complex64) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(domain("big_I", "argument must be finite"));
    }
    if s.im == 0.0 {
        return Ok(Complex64::new(big_i_real(s.re), 0.0));
    }
    let series_ok = s.norm() <= 2.0 || (s.re >= -2.0 && s.im.abs() <= 8.0 && s.norm() <= 60.0);
    if series_ok {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 1..600 {
            term *= s / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        return Ok(sum);
    }
    let z = -s;
    Ok(-(expint_e1_complex(z) + EULER_GAMMA + z.ln()))
}

/// k-th derivative of I at a real point, k = 0..=8.
///
/// For k ≥ 1, `I^{(k)}(r) = ∫_0^1 t^{k−1} e^{rt} dt = Σ_{i≥0} r^i/(i!(i+k))`.
pub fn big_i_deriv(k: usize, r: f64) -> Result<f64> {
    check_finite("big_I_deriv", "r", r)?;
    if k > 8 {
        return Err(domain("big_I_deriv", format!("order {k} not supported")));
    }
    if k == 0 {
        return Ok(big_i_real(r));
    }
    if (-2.0..=50.0).contains(&r) {
        let mut term = 1.0;
        let mut sum = 1.0 / k as f64;
        for i in 1..400 {
            term *= r / i as f64;
            let add = term / (i + k) as f64;
            sum += add;
            if add.abs() <= 1e-17 * sum.abs() {
                break;
            }
        }
        return Ok(sum);
    }
    // J_m = (e^r − m J_{m−1})/r, J_0 = (e^r − 1)/r
    let er = r.exp();
    let mut j = r.exp_m1() / r;
    for m in 1..k {
        j = (er - m as f64 * j) / r;
    }
    Ok(j)
}

/// Laplace transform of the Dickman function, ρ̂(s) = exp(γ + I(−s)).
pub fn rho_hat(s: Complex64) -> Result<Complex64> {
    Ok((EULER_GAMMA + big_i(-s)?).exp())
}

use num_complex::Complex64;

use super::EULER_GAMMA;
use crate::error::{check_finite, domain, Result};

const SERIES_MAX: f64 = 40.0;

/// Σ_{k≥1} x^k/(k·k!), the regular part of Ei around 0.
fn ein_series(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..500 {
        term *= x / k as f64;
        let add = term / k as f64;
        sum += add;
        if add.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Principal-value exponential integral Ei(x) = ∫_{−∞}^{x} e^t/t dt.
pub fn expint_ei(x: f64) -> Result<f64> {
    check_finite("expint_Ei", "x", x)?;
    if x == 0.0 {
        return Err(domain("expint_Ei", "logarithmic singularity at x = 0"));
    }
    if x < 0.0 {
        return Ok(-e1_positive(-x));
    }
    if x <= SERIES_MAX {
        return Ok(EULER_GAMMA + x.ln() + ein_series(x));
    }
    // asymptotic series, truncated at the smallest term
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..(x as usize) {
        let next = term * k as f64 / x;
        if next > term {
            break;
        }
        term = next;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    Ok(x.exp() / x * sum)
}

/// E₁(x) = ∫_x^∞ e^{−t}/t dt for x > 0.
pub fn expint_e1(x: f64) -> Result<f64> {
    check_finite("expint_E1", "x", x)?;
    if !(x > 0.0) {
        return Err(domain("expint_E1", format!("x must be positive, got {x}")));
    }
    Ok(e1_positive(x))
}

fn e1_positive(x: f64) -> f64 {
    if x <= 1.0 {
        return -EULER_GAMMA - x.ln() - ein_series(-x);
    }
    if x > 740.0 {
        return 0.0;
    }
    // modified Lentz evaluation of the continued fraction
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let a = -((i as f64) * (i as f64));
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 4e-16 {
            break;
        }
    }
    h * (-x).exp()
}

/// E₁(z) on the plane cut along the negative real axis.
pub fn expint_e1_complex(z: Complex64) -> Complex64 {
    if z.norm() <= 2.0 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 1..200 {
            term *= -z / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        return -EULER_GAMMA - z.ln() - sum;
    }
    let one = Complex64::new(1.0, 0.0);
    let mut b = z + 1.0;
    let mut c = Complex64::new(1e300, 0.0);
    let mut d = one / b;
    let mut h = d;
    for i in 1..20_000 {
        let a = -((i as f64) * (i as f64));
        b += 2.0;
        d = one / (d * a + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 4e-16 {
            break;
        }
    }
    h * (-z).exp()
}

/// `Ei(a) − Ei(b)` for `a`, `b` of the same sign.
///
/// When `|a|` is below `switch` the difference is summed as
/// `log(a/b) + Σ (a^k − b^k)/(k·k!)`, which avoids subtracting two large
/// logarithmic terms of opposite sign near the origin.
pub fn ei_difference(a: f64, b: f64, switch: f64) -> Result<f64> {
    if a == 0.0 || b == 0.0 || (a > 0.0) != (b > 0.0) {
        return Err(domain(
            "ei_difference",
            "arguments must be nonzero and of equal sign",
        ));
    }
    if a.abs().max(b.abs()) < switch {
        let mut ta = 1.0;
        let mut tb = 1.0;
        let mut sum = 0.0;
        for k in 1..200 {
            ta *= a / k as f64;
            tb *= b / k as f64;
            let add = (ta - tb) / k as f64;
            sum += add;
            if add.abs() <= 1e-18 {
                break;
            }
        }
        return Ok((a / b).ln() + sum);
    }
    Ok(expint_ei(a)? - expint_ei(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, QuadConfig};

    // Oracle: Ei(x) = γ + log|x| + Σ x^k/(k·k!) summed in exact-order.
    fn series_oracle(x: f64) -> f64 {
        let mut s = 0.0;
        let mut log_fact = 0.0;
        for k in 1..300 {
            log_fact += (k as f64).ln();
            let mag = (k as f64 * x.abs().ln() - log_fact).exp() / k as f64;
            s += if x < 0.0 && k % 2 == 1 { -mag } else { mag };
        }
        EULER_GAMMA + x.abs().ln() + s
    }

    // Oracle: E1 via the classic continued fraction evaluated bottom-up.
    fn cf_oracle(x: f64) -> f64 {
        let mut t = 0.0;
        for n in (1..400).rev() {
            let n = n as f64;
            t = n / (1.0 + n / (x + t));
        }
        (-x).exp() / (x + t)
    }

    #[test]
    fn ei_at_one() {
        let v = expint_ei(1.0).unwrap();
        assert!((v - series_oracle(1.0)).abs() < 1e-12);
        assert!((v - 1.895_117_816_355_936_8).abs() < 1e-13);
    }

    #[test]
    fn ei_at_minus_one() {
        let v = expint_ei(-1.0).unwrap();
        assert!((v + cf_oracle(1.0)).abs() < 1e-12);
        assert!((v + 0.219_383_934_395_520_27).abs() < 1e-14);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(expint_ei(0.0).is_err());
    }

    #[test]
    fn large_argument_branches_agree() {
        for x in [30.0, 39.9, 40.1, 60.0] {
            let s = series_oracle(x);
            let v = expint_ei(x).unwrap();
            assert!(((v - s) / s).abs() < 1e-13, "x = {x}");
        }
        for x in [0.5, 1.0, 1.5, 3.0, 10.0, 30.0] {
            assert!(((expint_e1(x).unwrap() - cf_oracle(x)) / cf_oracle(x)).abs() < 1e-13);
        }
    }

    #[test]
    fn asymptotic_shape() {
        for x in [50.0_f64, -50.0] {
            let v = expint_ei(x).unwrap();
            let lead = x.exp() / x;
            assert!((v / lead - 1.0).abs() < 2.0 / x.abs());
        }
    }

    #[test]
    fn log_integral_closed_form() {
        let x = 1e4_f64;
        let s = 0.3;
        let lx = x.ln();
        let closed = expint_ei((1.0 - 2.0 * s) * lx).unwrap() - expint_ei((0.5 - s) * lx).unwrap();
        let q = integrate(
            |t: f64| t.powf(-2.0 * s) / t.ln(),
            x.sqrt(),
            x,
            QuadConfig::with_abs(1e-11),
        )
        .unwrap();
        assert!((closed - q.value).abs() < 1e-8);
    }

    #[test]
    fn complex_e1_matches_real() {
        for x in [0.3, 1.7, 2.5, 8.0] {
            let c = expint_e1_complex(Complex64::new(x, 0.0));
            assert!((c.re - expint_e1(x).unwrap()).abs() < 1e-13);
            assert!(c.im.abs() < 1e-14);
        }
    }

    #[test]
    fn complex_e1_against_quadrature() {
        // E1(z) = ∫_0^∞ e^{−z(1+τ)}/(1+τ) dτ for Re z > 0.
        let z = Complex64::new(3.0, 25.0);
        let q = integrate(
            |w: f64| {
                // τ = w/(1−w) maps [0,1) to [0,∞)
                let tau = w / (1.0 - w);
                let jac = 1.0 / ((1.0 - w) * (1.0 - w));
                (-z * (1.0 + tau)).exp() / (1.0 + tau) * jac
            },
            0.0,
            1.0 - 1e-12,
            QuadConfig {
                abs_tol: 1e-13,
                rel_tol: 1e-12,
                max_intervals: 20_000,
            },
        )
        .unwrap();
        assert!((expint_e1_complex(z) - q.value).norm() < 1e-10);
    }

    #[test]
    fn difference_series_near_origin() {
        let a = 3e-5;
        let b = 1.5e-5;
        let d = ei_difference(a, b, 1e-4).unwrap();
        let direct = series_oracle(a) - series_oracle(b);
        assert!((d - direct).abs() < 1e-12);
        assert!((d - 2f64.ln()).abs() < 1e-4);
    }
}

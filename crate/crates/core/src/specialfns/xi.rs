use serde::{Deserialize, Serialize};

use crate::error::{check_finite, domain, numeric, Result};

/// The root ξ(u) ≥ 0 of `e^ξ = 1 + uξ`, with the achieved residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiValue {
    pub u: f64,
    pub xi: f64,
    /// `|e^ξ − 1 − uξ|`
    pub residual: f64,
}

/// `(e^ξ − 1)/ξ − u`, increasing in ξ, negative at 0⁺ for u > 1.
fn excess(xi: f64, u: f64) -> f64 {
    if xi == 0.0 {
        1.0 - u
    } else {
        xi.exp_m1() / xi - u
    }
}

fn excess_slope(xi: f64) -> f64 {
    if xi.abs() < 1e-4 {
        0.5 + xi / 3.0
    } else {
        (xi * xi.exp() - xi.exp_m1()) / (xi * xi)
    }
}

/// Solves `e^ξ = 1 + uξ` for u ≥ 1.
///
/// Safeguarded Newton seeded at `log u + log log(u + 2)`, kept inside the
/// bracket `[0, 2 log(u + 2)]` and falling back to bisection whenever a Newton
/// step leaves it.
pub fn xi(u: f64) -> Result<XiValue> {
    check_finite("xi", "u", u)?;
    if u < 1.0 {
        return Err(domain("xi", format!("u must be >= 1, got {u}")));
    }
    if u == 1.0 {
        return Ok(XiValue {
            u,
            xi: 0.0,
            residual: 0.0,
        });
    }
    let mut lo = 0.0_f64;
    let mut hi = 2.0 * (u + 2.0).ln();
    let mut x = (u.ln() + (u + 2.0).ln().ln()).clamp(1e-12, hi);
    if u < 1.5 {
        x = 2.0 * (u - 1.0);
    }
    let mut converged = false;
    for _ in 0..200 {
        let g = excess(x, u);
        if g < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - g / excess_slope(x);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-16 * x.max(1e-300) || hi - lo <= 1e-16 * hi {
            x = next;
            converged = true;
            break;
        }
        x = next;
    }
    if !converged {
        return Err(numeric("xi", format!("no convergence for u = {u}")));
    }
    let residual = (x.exp_m1() - u * x).abs();
    Ok(XiValue { u, xi: x, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bisection_oracle(u: f64) -> f64 {
        let f = |x: f64| x.exp() - 1.0 - u * x;
        let (mut a, mut b) = (1e-9, u.max(2.0));
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if f(m) < 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn trivial_points() {
        assert_eq!(xi(1.0).unwrap().xi, 0.0);
        let e = std::f64::consts::E;
        assert!((xi(e - 1.0).unwrap().xi - 1.0).abs() < 1e-14);
    }

    #[test]
    fn matches_bisection_at_ten() {
        let v = xi(10.0).unwrap();
        assert!((v.xi - bisection_oracle(10.0)).abs() < 1e-12);
        assert!(v.residual <= 1e-12 * (1.0 + 10.0 * v.xi));
    }

    #[test]
    fn asymptotic_band() {
        for u in [10.0_f64, 100.0, 1e4] {
            let v = xi(u).unwrap().xi;
            let ll = u.ln().ln();
            assert!((v - (u.ln() + ll)).abs() <= 2.0 * ll / u.ln(), "u = {u}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(xi(0.5).is_err());
        assert!(xi(f64::NAN).is_err());
        assert!(xi(f64::INFINITY).is_err());
    }

    #[test]
    fn near_one() {
        let v = xi(1.0 + 1e-9).unwrap();
        assert!(v.xi > 0.0 && (v.xi - 2e-9).abs() < 1e-12);
    }

    proptest::proptest! {
        #[test]
        fn monotone_with_small_residual(u in 1.0f64..1e6, du in 1e-6f64..10.0) {
            let a = xi(u).unwrap();
            let b = xi(u + du).unwrap();
            proptest::prop_assert!(b.xi > a.xi);
            proptest::prop_assert!(a.residual <= 1e-12 * (1.0 + u * a.xi));
        }
    }
}

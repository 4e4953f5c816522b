//! The Dickman function ρ, solved on a uniform mesh.
//!
//! ρ = 1 on [0, 1] and ρ = 1 − log t on [1, 2] are stored exactly. Past 2 each
//! mesh value comes from the integrated form `t·ρ(t) = ∫_{t−1}^{t} ρ(v) dv`,
//! which is implicit in ρ(t) only through one quadrature weight. Stepping the
//! differential form `ρ' = −ρ(t − 1)/t` directly lets rounding excite the
//! slowly decaying `c/t` solution of the same equation, so it is only used for
//! the first two steps after each integer, where the quadrature lacks nodes.
//!
//! All stencils are cubic and never straddle an integer, where ρ has kinks.
//! Off-mesh values use cubic Lagrange interpolation under the same constraint.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{check_finite, domain, Result};

pub const DEFAULT_GRID_STEP: f64 = 1e-3;
pub const DEFAULT_MAX_U: f64 = 100.0;

const CENTERED: [f64; 4] = [-1.0 / 24.0, 13.0 / 24.0, 13.0 / 24.0, -1.0 / 24.0];
const FORWARD: [f64; 4] = [9.0 / 24.0, 19.0 / 24.0, -5.0 / 24.0, 1.0 / 24.0];
const BACKWARD: [f64; 4] = [1.0 / 24.0, -5.0 / 24.0, 19.0 / 24.0, 9.0 / 24.0];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DickmanSolver {
    grid_step: f64,
    max_u: f64,
    per_unit: usize,
    /// ρ(i·h) for i = 0..=max_u/h
    history: Vec<f64>,
}

impl DickmanSolver {
    /// Builds the mesh; `1/grid_step` must be an integer ≥ 4.
    pub fn new(grid_step: f64, max_u: f64) -> Result<Self> {
        check_finite("DickmanSolver::new", "max_u", max_u)?;
        let per_unit = (1.0 / grid_step).round();
        if !(grid_step > 0.0) || (per_unit * grid_step - 1.0).abs() > 1e-12 || per_unit < 4.0 {
            return Err(domain(
                "DickmanSolver::new",
                format!("grid_step must be 1/n with integer n >= 4, got {grid_step}"),
            ));
        }
        if !(2.0..=150.0).contains(&max_u) {
            return Err(domain(
                "DickmanSolver::new",
                format!("max_u must lie in [2, 150], got {max_u}"),
            ));
        }
        let n = per_unit as usize;
        let h = 1.0 / n as f64;
        let total = (max_u * n as f64).ceil() as usize;
        let mut history = Vec::with_capacity(total + 1);
        for i in 0..=total.min(2 * n) {
            let t = i as f64 * h;
            history.push(if i <= n { 1.0 } else { 1.0 - t.ln() });
        }
        for k in 2 * n + 1..=total {
            let rho_k = if k - ((k - 1) / n) * n >= 3 {
                average_step(&history, n, k)
            } else {
                delay_step(&history, n, k)
            };
            history.push(rho_k);
        }
        Ok(DickmanSolver {
            grid_step: h,
            max_u: total as f64 * h,
            per_unit: n,
            history,
        })
    }

    /// A process-wide solver with the default mesh.
    pub fn shared() -> &'static DickmanSolver {
        static SOLVER: OnceLock<DickmanSolver> = OnceLock::new();
        SOLVER.get_or_init(|| {
            DickmanSolver::new(DEFAULT_GRID_STEP, DEFAULT_MAX_U).expect("default mesh is valid")
        })
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step
    }

    pub fn max_u(&self) -> f64 {
        self.max_u
    }

    /// Mesh samples `(t, ρ(t))`.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.history
            .iter()
            .enumerate()
            .map(move |(i, &v)| (i as f64 * self.grid_step, v))
    }

    pub fn rho(&self, t: f64) -> Result<f64> {
        check_finite("rho", "t", t)?;
        if t < 0.0 || t > self.max_u {
            return Err(domain(
                "rho",
                format!("t must lie in [0, {}], got {t}", self.max_u),
            ));
        }
        if t <= 1.0 {
            return Ok(1.0);
        }
        if t <= 2.0 {
            return Ok(1.0 - t.ln());
        }
        let n = self.per_unit;
        let pos = t * n as f64;
        let i = (pos.floor() as usize).min(self.history.len() - 2);
        let frac = pos - i as f64;
        if frac == 0.0 {
            return Ok(self.history[i]);
        }
        // stencil of four nodes inside the unit interval containing t
        let left = (i / n) * n;
        let right = left + n;
        let mut first = i.saturating_sub(1).max(left);
        if first + 3 > right {
            first = right - 3;
        }
        let x = pos - first as f64;
        let nodes = [0.0, 1.0, 2.0, 3.0];
        let mut value = 0.0;
        for a in 0..4 {
            let mut basis = 1.0;
            for b in 0..4 {
                if a != b {
                    basis *= (x - nodes[b]) / (nodes[a] - nodes[b]);
                }
            }
            value += basis * self.history[first + a];
        }
        Ok(value)
    }

    /// ρ'(t) = −ρ(t − 1)/t, zero on [0, 1).
    pub fn rho_prime(&self, t: f64) -> Result<f64> {
        if t < 1.0 {
            if t < 0.0 {
                return Err(domain("rho_prime", format!("t must be >= 0, got {t}")));
            }
            return Ok(0.0);
        }
        Ok(-self.rho(t - 1.0)? / t)
    }
}

/// Four-node stencil for `∫` over mesh interval `[m, m + 1]`, using nodes up to `last`.
fn interval_stencil(n: usize, m: usize, last: usize) -> (usize, &'static [f64; 4]) {
    let left = (m / n) * n;
    if m == left {
        (m, &FORWARD)
    } else if m + 1 == left + n || m + 2 > last {
        (m - 2, &BACKWARD)
    } else {
        (m - 1, &CENTERED)
    }
}

/// ρ at mesh index k from `k·h·ρ_k = ∫_{(k−n)h}^{kh} ρ`.
fn average_step(history: &[f64], n: usize, k: usize) -> f64 {
    let mut explicit = 0.0;
    let mut implicit = 0.0;
    for m in k - n..k {
        let (first, weights) = interval_stencil(n, m, k);
        for (a, w) in weights.iter().enumerate() {
            if first + a == k {
                implicit += w;
            } else {
                explicit += w * history[first + a];
            }
        }
    }
    explicit / (k as f64 - implicit)
}

/// ρ at mesh index k from `ρ_{k−1} − ∫ ρ(s − 1)/s ds` over the last step.
fn delay_step(history: &[f64], n: usize, k: usize) -> f64 {
    let h = 1.0 / n as f64;
    let (first, weights) = interval_stencil(n, k - 1 - n, k - 1);
    let mut integral = 0.0;
    for (a, w) in weights.iter().enumerate() {
        let m = first + a;
        integral += w * history[m] / ((m + n) as f64 * h);
    }
    history[k - 1] - h * integral
}

/// ρ(t) from the shared default solver.
pub fn rho(t: f64) -> Result<f64> {
    DickmanSolver::shared().rho(t)
}

pub fn rho_prime(t: f64) -> Result<f64> {
    DickmanSolver::shared().rho_prime(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, QuadConfig};
    use crate::specialfns::{big_i_deriv, big_i_real, rho_hat, xi, EULER_GAMMA};
    use num_complex::Complex64;

    // Oracle for [2, 3]: ρ(u) = 1 − (1 − log(u−1)) log u + Li₂(1−u) + π²/12,
    // with Li₂(z) = −∫_0^z log(1−t)/t dt by quadrature.
    fn rho_on_two_three(u: f64) -> f64 {
        let z = 1.0 - u;
        let li2 = -integrate(
            |t: f64| if t == 0.0 { -1.0 } else { (-t).ln_1p() / t },
            0.0,
            z,
            QuadConfig::with_abs(1e-14),
        )
        .unwrap()
        .value;
        1.0 - (1.0 - (u - 1.0).ln()) * u.ln() + li2 + std::f64::consts::PI.powi(2) / 12.0
    }

    #[test]
    fn exact_pieces() {
        assert_eq!(rho(0.7).unwrap(), 1.0);
        assert_eq!(rho(0.0).unwrap(), 1.0);
        assert!((rho(2.0).unwrap() - (1.0 - 2f64.ln())).abs() < 1e-15);
        for k in 0..=100 {
            let t = 1.0 + k as f64 / 100.0;
            assert!((rho(t).unwrap() - (1.0 - t.ln())).abs() < 1e-10);
        }
    }

    #[test]
    fn matches_closed_form_on_two_three() {
        for u in [2.25, 2.5, 2.7301, 3.0] {
            let v = rho(u).unwrap();
            assert!((v - rho_on_two_three(u)).abs() < 1e-12, "u = {u}");
        }
        assert!((rho(3.0).unwrap() - 0.048_608_388_291_131_6).abs() < 1e-12);
    }

    #[test]
    fn step_halving() {
        let coarse = DickmanSolver::new(1e-3, 20.0).unwrap();
        let fine = DickmanSolver::new(5e-4, 20.0).unwrap();
        for t in [3.0, 5.5, 10.0, 20.0] {
            let a = coarse.rho(t).unwrap();
            let b = fine.rho(t).unwrap();
            assert!(((a - b) / b).abs() < 10.0 * 1e-6, "t = {t}");
            assert!(((a - b) / b).abs() < 1e-9, "t = {t}: {a} vs {b}");
        }
    }

    #[test]
    fn known_values() {
        // de Bruijn's tabulated values
        assert!((rho(4.0).unwrap() / 4.910_925_648_462_19e-3 - 1.0).abs() < 1e-9);
        assert!((rho(10.0).unwrap() / 2.770_171_837_725_34e-11 - 1.0).abs() < 1e-8);
    }

    #[test]
    fn positive_and_nonincreasing() {
        let s = DickmanSolver::shared();
        let mut prev = f64::INFINITY;
        for (_, v) in s.samples() {
            assert!(v > 0.0 && v <= prev);
            prev = v;
        }
    }

    #[test]
    fn domain_errors() {
        assert!(rho(-0.1).is_err());
        assert!(rho(1e6).is_err());
        assert!(DickmanSolver::new(0.3, 10.0).is_err());
    }

    #[test]
    fn saddle_formula_band() {
        for u in [5.0, 10.0, 20.0, 50.0] {
            let x = xi(u).unwrap().xi;
            let approx = (EULER_GAMMA - u * x + big_i_real(x)).exp()
                / (2.0 * std::f64::consts::PI * big_i_deriv(2, x).unwrap()).sqrt();
            let ratio = rho(u).unwrap() / approx;
            assert!(
                ratio >= 1.0 - 5.0 / u && ratio <= 1.0 + 5.0 / u,
                "u = {u}: {ratio}"
            );
        }
    }

    #[test]
    fn laplace_transform_matches_quadrature() {
        let solver = DickmanSolver::shared();
        for s in [1.0_f64, -1.0] {
            let q = integrate(
                |v: f64| (-s * v).exp() * solver.rho(v).unwrap(),
                0.0,
                solver.max_u(),
                QuadConfig {
                    abs_tol: 1e-10,
                    rel_tol: 1e-12,
                    max_intervals: 20_000,
                },
            )
            .unwrap();
            let v = rho_hat(Complex64::new(s, 0.0)).unwrap();
            assert!(
                (v.re - q.value).abs() < 1e-6,
                "s = {s}: {} vs {}",
                v.re,
                q.value
            );
        }
    }
}

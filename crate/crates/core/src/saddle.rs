//! The partial zeta function ζ(s,y), the saddle point α, its smooth-model
//! companion σ = 1 − ξ(u)/log y, the functions f and g with their derivatives,
//! and the factors B(x,y), H(y,α) and C_σ.

use serde::{Deserialize, Serialize};

use crate::error::{check_finite, domain, numeric, Result};
use crate::par::{self, Execution};
use crate::primes::PrimeTable;
use crate::specialfns::{big_i_deriv, log_zeta_pole_removed, xi, EULER_GAMMA};

/// Highest derivative order tracked for f and g.
pub const MAX_ORDER: usize = 4;

/// Everything the main formula needs at one (x, y).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaddleContext {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub xi_u: f64,
    pub sigma: f64,
    pub alpha: f64,
    /// g⁽ᵏ⁾(α), k = 0..=4
    pub g_derivs: [f64; 5],
    /// f⁽ᵏ⁾(σ), k = 0..=4
    pub f_derivs: [f64; 5],
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "C_sigma")]
    pub c_sigma: f64,
    /// I''(ξ(u))
    pub i2_xi: f64,
    /// y ≤ 2 log x
    pub near_boundary: bool,
}

impl SaddleContext {
    pub fn log_x(&self) -> f64 {
        self.x.ln()
    }

    pub fn log_y(&self) -> f64 {
        self.y.ln()
    }

    /// φ₂(α, y) = g''(α).
    pub fn phi2(&self) -> f64 {
        self.g_derivs[2]
    }
}

/// Per-prime derivatives of `−log(1 − p^{−s})` in s, orders 0..=4.
fn prime_terms(s: f64, a: f64) -> [f64; 5] {
    let q = 1.0 / (a * s).exp_m1();
    let q2 = q * q;
    let q3 = q2 * q;
    [
        -(-(-a * s).exp()).ln_1p(),
        -a * q,
        a * a * (q + q2),
        -a * a * a * (q + 3.0 * q2 + 2.0 * q3),
        a.powi(4) * (q + 7.0 * q2 + 12.0 * q3 + 6.0 * q3 * q),
    ]
}

fn check_zeta_args(op: &'static str, s: f64, y: f64, table: &PrimeTable) -> Result<()> {
    check_finite(op, "s", s)?;
    check_finite(op, "y", y)?;
    if !(s > 0.0) {
        return Err(domain(op, format!("s must be positive, got {s}")));
    }
    if y < 2.0 {
        return Err(domain(op, format!("y must be >= 2, got {y}")));
    }
    table.check_covers(op, y)
}

/// `(log ζ)(s, y)` and its first four derivatives in s.
pub fn log_partial_zeta_all(s: f64, y: f64, table: &PrimeTable) -> Result<[f64; 5]> {
    check_zeta_args("log_partial_zeta", s, y, table)?;
    let logs = &table.logs()[..table.count_upto(y)];
    let mut out = [0.0; 5];
    for (k, o) in out.iter_mut().enumerate() {
        *o = par::sum_range(Execution::default(), 0..logs.len(), |i| {
            prime_terms(s, logs[i])[k]
        });
    }
    Ok(out)
}

/// k-th derivative in s of `log ζ(s, y) = Σ_{p ≤ y} −log(1 − p^{−s})`.
pub fn log_partial_zeta(s: f64, y: f64, table: &PrimeTable, k: usize) -> Result<f64> {
    if k > MAX_ORDER {
        return Err(domain(
            "log_partial_zeta",
            format!("order {k} not supported"),
        ));
    }
    check_zeta_args("log_partial_zeta", s, y, table)?;
    let logs = &table.logs()[..table.count_upto(y)];
    Ok(par::sum_range(Execution::default(), 0..logs.len(), |i| {
        prime_terms(s, logs[i])[k]
    }))
}

/// `Σ_{p ≤ y} log p/(p^s − 1)`, decreasing in s.
fn mean_log(s: f64, logs: &[f64]) -> f64 {
    par::sum_range(Execution::default(), 0..logs.len(), |i| {
        logs[i] / (logs[i] * s).exp_m1()
    })
}

/// The saddle point α: the root of `Σ_{p ≤ y} log p/(p^α − 1) = log x`.
pub fn solve_alpha(x: f64, y: f64, table: &PrimeTable) -> Result<f64> {
    const OP: &str = "solve_alpha";
    check_finite(OP, "x", x)?;
    check_finite(OP, "y", y)?;
    if !(y >= 2.0 && x >= y) {
        return Err(domain(
            OP,
            format!("need x >= y >= 2, got x = {x}, y = {y}"),
        ));
    }
    table.check_covers(OP, y)?;
    let lx = x.ln();
    let logs = &table.logs()[..table.count_upto(y)];
    // g'(s) = log x − mean_log(s) is increasing
    let gp = |s: f64| lx - mean_log(s, logs);
    let mut lo = 1e-8;
    let mut hi = 1.5;
    if gp(lo) >= 0.0 {
        return Err(numeric(OP, "saddle point lies below 1e-8"));
    }
    while gp(hi) <= 0.0 {
        hi *= 2.0;
        if hi > 1e3 {
            return Err(numeric(OP, "could not bracket the saddle point"));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gp(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    let mut a = 0.5 * (lo + hi);
    for _ in 0..3 {
        let d1 = gp(a);
        let d2 = par::sum_range(Execution::default(), 0..logs.len(), |i| {
            prime_terms(a, logs[i])[2]
        });
        let next = a - d1 / d2;
        if !(next > 0.0) || !next.is_finite() {
            break;
        }
        if gp(next).abs() <= d1.abs() {
            a = next;
        } else {
            break;
        }
    }
    let residual = gp(a).abs();
    if residual > 1e-9 * lx {
        return Err(numeric(OP, format!("residual {residual:e} too large")));
    }
    Ok(a)
}

/// `g(t) = t log x + log ζ(t, y)`.
pub fn g_fn(t: f64, x: f64, y: f64, table: &PrimeTable) -> Result<f64> {
    Ok(t * x.ln() + log_partial_zeta(t, y, table, 0)?)
}

/// g and its first four derivatives at t.
pub fn g_derivatives(t: f64, x: f64, y: f64, table: &PrimeTable) -> Result<[f64; 5]> {
    let mut d = log_partial_zeta_all(t, y, table)?;
    d[0] += t * x.ln();
    d[1] += x.ln();
    Ok(d)
}

/// `log F(t, y) = log(ζ(t)(t−1)) + log log y + γ + I((1−t) log y)` and its
/// first five derivatives in t.
pub fn log_f_derivatives(t: f64, y: f64) -> Result<[f64; 6]> {
    check_finite("log_F", "t", t)?;
    if !(t > 0.0) || !(y > 1.0) {
        return Err(domain(
            "log_F",
            format!("need t > 0 and y > 1, got t = {t}, y = {y}"),
        ));
    }
    let ly = y.ln();
    let l = log_zeta_pole_removed(t)?;
    let r = (1.0 - t) * ly;
    let mut out = [0.0; 6];
    out[0] = l[0] + ly.ln() + EULER_GAMMA + big_i_deriv(0, r)?;
    let mut scale = 1.0;
    for k in 1..6 {
        scale *= -ly;
        out[k] = l[k] + scale * big_i_deriv(k, r)?;
    }
    Ok(out)
}

/// `f(t) = t log x + log F(t, y)`.
pub fn f_fn(t: f64, x: f64, y: f64) -> Result<f64> {
    Ok(t * x.ln() + log_f_derivatives(t, y)?[0])
}

/// f and its first four derivatives at t.
pub fn f_derivatives(t: f64, x: f64, y: f64) -> Result<[f64; 5]> {
    let l = log_f_derivatives(t, y)?;
    let mut d = [l[0], l[1], l[2], l[3], l[4]];
    d[0] += t * x.ln();
    d[1] += x.ln();
    Ok(d)
}

/// `H(y, α) = (y^{1−2α} − y^{1/2−α})/((1 − 2α) log y)`, equal to 1/2 at α = 1/2.
pub fn h_factor(y: f64, alpha: f64) -> f64 {
    let w = (0.5 - alpha) * y.ln();
    if w == 0.0 {
        return 0.5;
    }
    w.exp() * w.exp_m1() / (2.0 * w)
}

/// Builds the saddle context for `x ≥ y > 1 + log x`.
pub fn build_context(x: f64, y: f64, table: &PrimeTable) -> Result<SaddleContext> {
    const OP: &str = "build_context";
    check_finite(OP, "x", x)?;
    check_finite(OP, "y", y)?;
    let lx = x.ln();
    if !(x >= y) {
        return Err(domain(OP, format!("need x >= y, got x = {x}, y = {y}")));
    }
    if !(y > 1.0 + lx) {
        return Err(domain(
            OP,
            format!(
                "y = {y} must exceed 1 + log x = {} so that sigma > 0",
                1.0 + lx
            ),
        ));
    }
    let ly = y.ln();
    let u = lx / ly;
    let xi_u = xi(u.max(1.0))?.xi;
    let sigma = 1.0 - xi_u / ly;
    if !(sigma > 0.0) {
        return Err(domain(OP, format!("sigma = {sigma} is not positive")));
    }
    let alpha = solve_alpha(x, y, table)?;
    let g_derivs = g_derivatives(alpha, x, y, table)?;
    let f_derivs = f_derivatives(sigma, x, y)?;
    let i2_xi = big_i_deriv(2, xi_u)?;
    let b = (sigma / alpha) * (i2_xi * ly * ly).sqrt() / g_derivs[2].sqrt();
    Ok(SaddleContext {
        x,
        y,
        u,
        xi_u,
        sigma,
        alpha,
        g_derivs,
        f_derivs,
        b,
        h: h_factor(y, alpha),
        c_sigma: log_zeta_pole_removed(sigma)?[1],
        i2_xi,
        near_boundary: y <= 2.0 * lx,
    })
}

/// `g(α) − g(σ)` by direct evaluation; never positive.
pub fn taylor_gap_g(ctx: &SaddleContext, table: &PrimeTable) -> Result<f64> {
    Ok(ctx.g_derivs[0] - g_fn(ctx.sigma, ctx.x, ctx.y, table)?)
}

/// `f(α) − f(σ)` and its split into the linear Taylor term `C_σ(α − σ)`, the
/// quadratic term `f''(σ)(α − σ)²/2` and what remains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FGap {
    pub gap: f64,
    pub linear: f64,
    pub quadratic: f64,
    pub residual: f64,
}

pub fn taylor_gap_f(ctx: &SaddleContext) -> Result<FGap> {
    let gap = f_fn(ctx.alpha, ctx.x, ctx.y)? - ctx.f_derivs[0];
    let d = ctx.alpha - ctx.sigma;
    let linear = ctx.c_sigma * d;
    let quadratic = ctx.f_derivs[2] * d * d / 2.0;
    Ok(FGap {
        gap,
        linear,
        quadratic,
        residual: gap - linear - quadratic,
    })
}

/// Model value `(G'/G(α, y) + C_σ)/f''(σ)` for σ − α.
pub fn sigma_alpha_gap_model(ctx: &SaddleContext, g_over_g: f64) -> f64 {
    (g_over_g + ctx.c_sigma) / ctx.f_derivs[2]
}

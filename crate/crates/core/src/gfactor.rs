//! The correction factor G(s,y) = ζ(s,y)/F(s,y) and its split G = G₁G₂, where
//! G₁ carries the prime powers up to y and G₂ the prime powers p^k > y with
//! p ≤ y.

use serde::{Deserialize, Serialize};

use crate::error::{check_finite, domain, Result};
use crate::par::{self, Execution};
use crate::primes::{chebyshev_psi, prime_power_base, s2_derivatives, Endpoint, PrimeTable};
use crate::quad::{integrate, QuadConfig};
use crate::saddle::{log_f_derivatives, log_partial_zeta};
use crate::specialfns::ei_difference;
use crate::zeros::{s2_smooth_part, s2_via_zeros, ZeroTable};

/// Below this |argument| the Ei difference is summed as a series.
const EI_SWITCH: f64 = 1e-4;

/// Highest order i accepted by [`g_logderiv`]; order i is the (i+1)-th
/// derivative of log G.
pub const MAX_LOGDERIV_ORDER: usize = 4;

/// Which factor of G a log-derivative refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GPart {
    G1,
    G2,
}

/// The pieces of log G at one (s, y).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GFactorBreakdown {
    pub s: f64,
    pub y: f64,
    pub log_g1_exact: f64,
    /// log G₁ from the explicit formula, with its error bound.
    pub log_g1_zeros: Option<ZeroFormula>,
    pub log_g2_exact: f64,
    pub log_g2_main: f64,
    pub log_g_total: f64,
    pub log_g_rh_formula: Option<RhFormula>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroFormula {
    pub value: f64,
    /// The same sum with each zero integral replaced by its leading term.
    pub value_main_term: f64,
    pub error_bound: f64,
    pub main_term_correction_bound: f64,
    pub zeros_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhFormula {
    pub value: f64,
    pub integral_term: f64,
    pub psi_term: f64,
    /// y^{1/2−σ}/log y, the size of the omitted remainder.
    pub remainder_scale: f64,
}

fn check_s_y(op: &'static str, s: f64, y: f64) -> Result<()> {
    check_finite(op, "s", s)?;
    check_finite(op, "y", y)?;
    if y < 2.0 {
        return Err(domain(op, format!("y must be >= 2, got {y}")));
    }
    Ok(())
}

/// Smallest k ≥ 2 with p^k > ⌊y⌋.
fn first_exponent(p: u64, n: u64) -> u32 {
    let mut k = 2;
    let mut pk = p.saturating_mul(p);
    while pk <= n {
        k += 1;
        pk = pk.saturating_mul(p);
    }
    k
}

/// `Σ_{k ≥ k0} z^k/k` for 0 < z < 1.
fn log_tail(z: f64, k0: u32) -> f64 {
    if z <= 0.5 {
        let mut zk = z.powi(k0 as i32);
        let mut sum = 0.0;
        let mut k = k0 as f64;
        loop {
            let add = zk / k;
            sum += add;
            if add <= 1e-18 * sum {
                break;
            }
            zk *= z;
            k += 1.0;
        }
        return sum;
    }
    let mut partial = 0.0;
    let mut zk = 1.0;
    for k in 1..k0 {
        zk *= z;
        partial += zk / k as f64;
    }
    -(-z).ln_1p() - partial
}

/// `Li_{−m}(z) = Σ_{k≥1} k^m z^k` for m = 0..=4.
fn polylog_neg(m: usize, z: f64) -> f64 {
    let w = 1.0 - z;
    match m {
        0 => z / w,
        1 => z / (w * w),
        2 => z * (1.0 + z) / w.powi(3),
        3 => z * (1.0 + 4.0 * z + z * z) / w.powi(4),
        _ => z * (1.0 + 11.0 * z + 11.0 * z * z + z * z * z) / w.powi(5),
    }
}

/// `Σ_{k ≥ k0} k^m z^k` for 0 < z < 1.
fn power_tail(m: usize, z: f64, k0: u32) -> f64 {
    if z <= 0.5 {
        let mut zk = z.powi(k0 as i32);
        let mut sum = 0.0;
        let mut k = k0 as f64;
        loop {
            let add = k.powi(m as i32) * zk;
            sum += add;
            if add <= 1e-18 * sum {
                break;
            }
            zk *= z;
            k += 1.0;
        }
        return sum;
    }
    let mut partial = 0.0;
    let mut zk = 1.0;
    for k in 1..k0 {
        zk *= z;
        partial += (k as f64).powi(m as i32) * zk;
    }
    polylog_neg(m, z) - partial
}

fn g2_guard(op: &'static str, s: f64, y: f64) -> Result<()> {
    let floor = 0.01 / y.ln();
    if !(s >= floor) {
        return Err(domain(
            op,
            format!("s must be >= 0.01/log y = {floor:e}, got {s}"),
        ));
    }
    Ok(())
}

/// `log G₂(s, y) = Σ_{p ≤ y} Σ_{k ≥ 2, p^k > y} p^{−ks}/k`, summed exactly.
pub fn log_g2_exact(s: f64, y: f64, table: &PrimeTable) -> Result<f64> {
    const OP: &str = "logG2_exact";
    check_s_y(OP, s, y)?;
    g2_guard(OP, s, y)?;
    table.check_covers(OP, y)?;
    let n = y.floor() as u64;
    let count = table.count_upto(y);
    let (primes, logs) = (table.primes(), table.logs());
    Ok(par::sum_range(Execution::default(), 0..count, |i| {
        let z = (-s * logs[i]).exp();
        log_tail(z, first_exponent(primes[i] as u64, n))
    }))
}

/// `(1/2)∫_{√y}^{y} dt/(t^{2s} log t) = (Ei((1−2s)log y) − Ei((1/2−s)log y))/2`.
pub fn log_g2_main(s: f64, y: f64) -> Result<f64> {
    const OP: &str = "logG2_main";
    check_s_y(OP, s, y)?;
    if !(s > 0.0 && s <= 1.0) {
        return Err(domain(OP, format!("s must lie in (0, 1], got {s}")));
    }
    let b = (0.5 - s) * y.ln();
    if b == 0.0 {
        return Ok(std::f64::consts::LN_2 / 2.0);
    }
    Ok(ei_difference(2.0 * b, b, EI_SWITCH)? / 2.0)
}

/// `log F(s, y)`.
pub fn log_f(s: f64, y: f64) -> Result<f64> {
    Ok(log_f_derivatives(s, y)?[0])
}

fn check_g1_args(op: &'static str, s: f64, y: f64, table: &PrimeTable) -> Result<()> {
    check_s_y(op, s, y)?;
    if !(s > 0.0 && s <= 1.0) {
        return Err(domain(op, format!("s must lie in (0, 1], got {s}")));
    }
    if y < 4.0 {
        return Err(domain(op, format!("y must be >= 4, got {y}")));
    }
    table.check_covers(op, y)
}

/// `log G₁(s, y) = Σ_{n ≤ y} Λ(n)/(n^s log n) − log F(s, y)`, with full weight
/// at n = y.
pub fn log_g1_exact(s: f64, y: f64, table: &PrimeTable) -> Result<f64> {
    const OP: &str = "logG1_exact";
    check_g1_args(OP, s, y, table)?;
    Ok(s2_derivatives(y, s, table, Endpoint::Full, 1)?[0] - log_f(s, y)?)
}

/// `log ζ(s, y) − log F(s, y)`, computed without the G₁/G₂ split.
pub fn log_g_total(s: f64, y: f64, table: &PrimeTable) -> Result<f64> {
    Ok(log_partial_zeta(s, y, table, 0)? - log_f(s, y)?)
}

/// log G₁(s, y) from the explicit formula truncated at height T.
pub fn log_g1_zeros(
    s: f64,
    y: f64,
    t: f64,
    zeros: &ZeroTable,
    table: &PrimeTable,
) -> Result<ZeroFormula> {
    const OP: &str = "logG1_zeros";
    check_g1_args(OP, s, y, table)?;
    let endpoint = if y.fract() == 0.0 {
        prime_power_base(y as u64)
            .map(|(p, _)| (p as f64).ln() / (2.0 * y.powf(s) * y.ln()))
            .unwrap_or(0.0)
    } else {
        0.0
    };
    let s2 = s2_via_zeros(y, s, t, zeros)?;
    let smooth = s2_smooth_part(y, s)?;
    Ok(ZeroFormula {
        value: endpoint + s2.value - smooth,
        value_main_term: endpoint + s2.value_main_term - smooth,
        error_bound: s2.error_bound,
        main_term_correction_bound: s2.main_term_correction_bound,
        zeros_used: s2.zeros_used,
    })
}

/// `(1/2)∫_{√y}^{y} dt/(t^{2σ} log t) + (ψ(y) − y)/(y^σ log y)`.
pub fn log_g_rh_formula(sigma: f64, y: f64, table: &PrimeTable) -> Result<RhFormula> {
    const OP: &str = "logG_rh_formula";
    check_s_y(OP, sigma, y)?;
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(domain(OP, format!("sigma must lie in (0, 1), got {sigma}")));
    }
    let integral_term = log_g2_main(sigma, y)?;
    let ly = y.ln();
    let psi_term = (chebyshev_psi(y, table)? - y) / (y.powf(sigma) * ly);
    Ok(RhFormula {
        value: integral_term + psi_term,
        integral_term,
        psi_term,
        remainder_scale: y.powf(0.5 - sigma) / ly,
    })
}

/// The (i+1)-th derivative in s of log G₁ or log G₂.
pub fn g_logderiv(s: f64, y: f64, order: usize, part: GPart, table: &PrimeTable) -> Result<f64> {
    const OP: &str = "G_logderiv";
    if order > MAX_LOGDERIV_ORDER {
        return Err(domain(OP, format!("order {order} not supported")));
    }
    let m = order + 1;
    match part {
        GPart::G1 => {
            check_g1_args(OP, s, y, table)?;
            let s2 = s2_derivatives(y, s, table, Endpoint::Full, m + 1)?[m];
            Ok(s2 - log_f_derivatives(s, y)?[m])
        }
        GPart::G2 => {
            check_s_y(OP, s, y)?;
            g2_guard(OP, s, y)?;
            table.check_covers(OP, y)?;
            let n = y.floor() as u64;
            let count = table.count_upto(y);
            let (primes, logs) = (table.primes(), table.logs());
            // d^m/ds^m Σ_k z^k/k = (−log p)^m Σ_k k^{m−1} z^k
            Ok(par::sum_range(Execution::default(), 0..count, |i| {
                let z = (-s * logs[i]).exp();
                (-logs[i]).powi(m as i32)
                    * power_tail(m - 1, z, first_exponent(primes[i] as u64, n))
            }))
        }
    }
}

/// `G'/G(s, y)` as the sum of the G₁ and G₂ parts.
pub fn g_over_g(s: f64, y: f64, table: &PrimeTable) -> Result<f64> {
    Ok(g_logderiv(s, y, 0, GPart::G1, table)? + g_logderiv(s, y, 0, GPart::G2, table)?)
}

/// `∫_{√y}^{y} (−log(1 − t^{−s}) − t^{−s}) dt/log t`, the main term of
/// log G₂ for small s.
pub fn logg2_low_s(s: f64, y: f64) -> Result<f64> {
    logg2_low_s_with(s, y, 1e-10)
}

pub fn logg2_low_s_with(s: f64, y: f64, rel_tol: f64) -> Result<f64> {
    const OP: &str = "logg2_low_s";
    check_s_y(OP, s, y)?;
    let floor = 0.01 / y.ln();
    if !(s >= floor && s <= 0.1) {
        return Err(domain(
            OP,
            format!("s must lie in [{floor:e}, 0.1], got {s}"),
        ));
    }
    let ly = y.ln();
    // t = e^w
    let q = integrate(
        |w: f64| {
            let z = (-s * w).exp();
            (-(-z).ln_1p() - z) * w.exp() / w
        },
        ly / 2.0,
        ly,
        QuadConfig {
            abs_tol: 0.0,
            rel_tol,
            max_intervals: 10_000,
        },
    )?;
    Ok(q.value)
}

/// Every piece of log G at (s, y); zero-formula and RH-formula pieces are
/// filled in when their inputs are supplied.
pub fn breakdown(
    s: f64,
    y: f64,
    table: &PrimeTable,
    zeros: Option<(&ZeroTable, f64)>,
    with_rh: bool,
) -> Result<GFactorBreakdown> {
    let log_g1_exact = log_g1_exact(s, y, table)?;
    let log_g2_exact = log_g2_exact(s, y, table)?;
    let log_g1_zeros = match zeros {
        Some((z, t)) => Some(log_g1_zeros(s, y, t, z, table)?),
        None => None,
    };
    let log_g_rh_formula = if with_rh && s < 1.0 {
        Some(log_g_rh_formula(s, y, table)?)
    } else {
        None
    };
    Ok(GFactorBreakdown {
        s,
        y,
        log_g1_exact,
        log_g1_zeros,
        log_g2_exact,
        log_g2_main: log_g2_main(s, y)?,
        log_g_total: log_g1_exact + log_g2_exact,
        log_g_rh_formula,
    })
}

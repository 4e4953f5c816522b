//! Approximations to Ψ(x,y) and the comparisons built on them: x·ρ(u), de
//! Bruijn's Λ(x,y), the Hildebrand–Tenenbaum saddle formula, x·ρ(u)Z(σ), the
//! G-corrected main formula, the Pomerance scan, the phase diagnostic and the
//! constant L.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_finite, domain, numeric, Error, Result};
use crate::gfactor::{log_g1_exact, log_g2_exact, log_g_total};
use crate::par::{self, Execution};
use crate::primes::{psi_smooth_exact_with, CountBudget, PrimeTable};
use crate::quad::{gk15, integrate, QuadConfig};
use crate::saddle::{build_context, taylor_gap_f, taylor_gap_g, SaddleContext};
use crate::specialfns::{ei_difference, z_fn, zeta_real, DickmanSolver};
use crate::tolerances::Tolerances;

fn dickman() -> &'static DickmanSolver {
    DickmanSolver::shared()
}

fn check_xy(op: &'static str, x: f64, y: f64) -> Result<()> {
    check_finite(op, "x", x)?;
    check_finite(op, "y", y)?;
    if !(x >= 1.0 && y >= 2.0) {
        return Err(domain(
            op,
            format!("need x >= 1 and y >= 2, got x = {x}, y = {y}"),
        ));
    }
    Ok(())
}

/// x·ρ(log x/log y).
pub fn approx_x_rho(x: f64, y: f64) -> Result<f64> {
    check_xy("approx_x_rho", x, y)?;
    let u = (x.ln() / y.ln()).max(0.0);
    Ok(x * dickman().rho(u)?)
}

/// de Bruijn's Λ(x, y) through the integrated-by-parts form
/// `xρ(u) − {x} + x∫_0^{u−1} (−ρ'(u−v)) {y^v} y^{−v} dv`.
///
/// At integral x the right limit is taken by evaluating at x + 1/2.
pub fn approx_debruijn_lambda(x: f64, y: f64) -> Result<f64> {
    const OP: &str = "approx_debruijn_lambda";
    check_xy(OP, x, y)?;
    let x = if x.fract() == 0.0 { x + 0.5 } else { x };
    let ly = y.ln();
    let u = x.ln() / ly;
    let base = x * dickman().rho(u)? - x.fract();
    if u <= 1.0 {
        return Ok(base);
    }
    Ok(base + x * lambda_integral(u, ly)?)
}

/// `∫_0^{u−1} ρ(u−v−1)/(u−v) · {y^v} y^{−v} dv`, split where y^v crosses an
/// integer and where u − v crosses an integer.
fn lambda_integral(u: f64, ly: f64) -> Result<f64> {
    const OP: &str = "approx_debruijn_lambda";
    let top = u - 1.0;
    let n_max = (top * ly).exp().floor() as u64;
    if n_max > 50_000_000 {
        return Err(Error::Resource {
            op: OP,
            reason: format!("{n_max} fractional-part pieces"),
            estimate: Some(n_max as f64),
        });
    }
    let mut cuts: Vec<f64> = (1..=n_max).map(|n| (n as f64).ln() / ly).collect();
    let mut k = 2.0;
    while u - k > 0.0 {
        cuts.push(u - k);
        k += 1.0;
    }
    cuts.push(top);
    cuts.retain(|&c| c >= 0.0 && c <= top);
    cuts.sort_by(|a, b| a.total_cmp(b));
    cuts.dedup();
    let solver = dickman();
    let pieces = cuts.len() - 1;
    let total = par::sum_range(Execution::default(), 0..pieces, |i| {
        let (a, b) = (cuts[i], cuts[i + 1]);
        if b <= a {
            return 0.0;
        }
        let mid = 0.5 * (a + b);
        let n = (mid * ly).exp().floor();
        let f = |v: f64| {
            let r = solver.rho(u - v - 1.0).unwrap_or(0.0);
            r / (u - v) * (1.0 - n * (-v * ly).exp())
        };
        if b - a > 0.05 {
            integrate(f, a, b, QuadConfig::with_abs(1e-14))
                .map(|q| q.value)
                .unwrap_or_else(|_| gk15(&f, a, b).0)
        } else {
            gk15(&f, a, b).0
        }
    });
    if !total.is_finite() {
        return Err(numeric(OP, "integral is not finite"));
    }
    Ok(total)
}

/// `x^α ζ(α, y)/(α √(2π g''(α)))`.
pub fn approx_ht_saddle(ctx: &SaddleContext) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    ctx.g_derivs[0].exp() / (ctx.alpha * (two_pi * ctx.g_derivs[2]).sqrt())
}

/// The two forms of the main formula and the pieces they are built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MainFormula {
    pub x_rho_z: f64,
    pub log_g_sigma: f64,
    pub log_g_alpha: f64,
    /// g(α) − g(σ)
    pub gap_g: f64,
    /// f(α) − f(σ)
    pub gap_f: f64,
    /// `xρ(u)Z(σ)·G(σ,y)·e^{g(α)−g(σ)}·B`
    pub form_sigma: f64,
    /// `xρ(u)Z(σ)·G(α,y)·e^{f(α)−f(σ)}·B`
    pub form_alpha: f64,
}

pub fn main_formula(ctx: &SaddleContext, table: &PrimeTable) -> Result<MainFormula> {
    if !(ctx.sigma > 0.0) {
        return Err(domain("main_formula", "sigma must be positive"));
    }
    let x_rho_z = approx_x_rho(ctx.x, ctx.y)? * z_fn(ctx.sigma)?;
    let log_g_sigma = log_g_total(ctx.sigma, ctx.y, table)?;
    let log_g_alpha = log_g_total(ctx.alpha, ctx.y, table)?;
    let gap_g = taylor_gap_g(ctx, table)?;
    let gap_f = taylor_gap_f(ctx)?.gap;
    Ok(MainFormula {
        x_rho_z,
        log_g_sigma,
        log_g_alpha,
        gap_g,
        gap_f,
        form_sigma: x_rho_z * (log_g_sigma + gap_g).exp() * ctx.b,
        form_alpha: x_rho_z * (log_g_alpha + gap_f).exp() * ctx.b,
    })
}

/// `1 + (g⁗/g''² − f⁗/f''²)/8 − 5(g'''²/g''³ − f'''²/f''³)/24`.
pub fn sharp_corrections(ctx: &SaddleContext) -> f64 {
    let g = &ctx.g_derivs;
    let f = &ctx.f_derivs;
    1.0 + (g[4] / (g[2] * g[2]) - f[4] / (f[2] * f[2])) / 8.0
        - 5.0 * (g[3] * g[3] / g[2].powi(3) - f[3] * f[3] / f[2].powi(3)) / 24.0
}

/// Exact Ψ(x,y) next to every approximation at one (x, y).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximationReport {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub sigma: f64,
    pub alpha: f64,
    pub near_boundary: bool,
    pub psi_exact: Option<u64>,
    /// Why `psi_exact` is missing.
    pub skipped: Option<String>,
    pub x_rho: f64,
    pub lambda_debruijn: f64,
    pub ht_saddle: f64,
    pub x_rho_z: f64,
    pub main_formula_sigma: f64,
    pub main_formula_alpha: f64,
    pub sharp_correction: f64,
    pub sharp_corrected: f64,
    pub log_g_sigma: f64,
    pub log_g_alpha: f64,
    /// psi_exact divided by each approximation.
    pub ratios: BTreeMap<String, f64>,
    pub pomerance_holds: Option<bool>,
    pub sandwich_ok: Option<bool>,
}

/// Builds the report, counting Ψ exactly when the budget allows.
pub fn approximation_report(
    x: f64,
    y: f64,
    table: &PrimeTable,
    budget: CountBudget,
    tol: &Tolerances,
) -> Result<ApproximationReport> {
    let ctx = build_context(x, y, table)?;
    let mf = main_formula(&ctx, table)?;
    let x_rho = approx_x_rho(x, y)?;
    let lambda = approx_debruijn_lambda(x, y)?;
    let ht = approx_ht_saddle(&ctx);
    let sharp = sharp_corrections(&ctx);
    let (psi_exact, skipped) =
        match psi_smooth_exact_with(x, y, table, budget, Execution::default()) {
            Ok(v) => (Some(v), None),
            Err(e @ Error::Resource { .. }) => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        };
    let mut report = ApproximationReport {
        x,
        y,
        u: ctx.u,
        sigma: ctx.sigma,
        alpha: ctx.alpha,
        near_boundary: ctx.near_boundary,
        psi_exact,
        skipped,
        x_rho,
        lambda_debruijn: lambda,
        ht_saddle: ht,
        x_rho_z: mf.x_rho_z,
        main_formula_sigma: mf.form_sigma,
        main_formula_alpha: mf.form_alpha,
        sharp_correction: sharp,
        sharp_corrected: mf.form_sigma * sharp,
        log_g_sigma: mf.log_g_sigma,
        log_g_alpha: mf.log_g_alpha,
        ratios: BTreeMap::new(),
        pomerance_holds: None,
        sandwich_ok: None,
    };
    if let Some(psi) = psi_exact {
        let p = psi as f64;
        let named = [
            ("x_rho", x_rho),
            ("lambda_debruijn", lambda),
            ("ht_saddle", ht),
            ("x_rho_z", mf.x_rho_z),
            ("main_formula_sigma", mf.form_sigma),
            ("main_formula_alpha", mf.form_alpha),
            ("sharp_corrected", report.sharp_corrected),
        ];
        for (k, v) in named {
            report.ratios.insert(k.to_string(), p / v);
        }
        report.pomerance_holds = Some(p >= x_rho);
        let r = p / mf.x_rho_z;
        let d = tol.sandwich_delta;
        report.sandwich_ok =
            Some(mf.log_g_alpha.exp() * (1.0 - d) <= r && r <= mf.log_g_sigma.exp() * (1.0 + d));
    }
    Ok(report)
}

/// How the y values of a scan are chosen for each x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum YSpec {
    /// ⌈c·log x⌉
    LogMultiple(f64),
    /// ⌈(log x)^A⌉
    LogPower(f64),
    Absolute(f64),
}

impl YSpec {
    pub fn resolve(self, x: f64) -> f64 {
        let lx = x.ln();
        match self {
            YSpec::LogMultiple(c) => (c * lx).ceil(),
            YSpec::LogPower(a) => lx.powf(a).ceil(),
            YSpec::Absolute(v) => v,
        }
    }
}

/// A grid of (x, y) cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub x_values: Vec<f64>,
    pub y_rule: Vec<YSpec>,
    pub budget: CountBudget,
}

impl ScanGrid {
    /// x ∈ {10⁴, …, 10⁷}; y ∈ {⌈2 log x⌉, ⌈(log x)^1.5⌉, ⌈(log x)^1.8⌉,
    /// ⌈(log x)^2.2⌉, ⌈(log x)^3⌉, 10³}.
    pub fn default_grid() -> Self {
        ScanGrid {
            x_values: vec![1e4, 1e5, 1e6, 1e7],
            y_rule: vec![
                YSpec::LogMultiple(2.0),
                YSpec::LogPower(1.5),
                YSpec::LogPower(1.8),
                YSpec::LogPower(2.2),
                YSpec::LogPower(3.0),
                YSpec::Absolute(1e3),
            ],
            budget: CountBudget::default(),
        }
    }

    /// Cells with 2 ≤ y ≤ x/2, sorted by (x, y), without duplicates.
    pub fn cells(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = self
            .x_values
            .iter()
            .flat_map(|&x| self.y_rule.iter().map(move |r| (x, r.resolve(x))))
            .filter(|&(x, y)| y >= 2.0 && y <= x / 2.0)
            .collect();
        out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        out.dedup();
        out
    }

    /// Largest y over all cells.
    pub fn max_y(&self) -> f64 {
        self.cells().iter().map(|c| c.1).fold(2.0, f64::max)
    }
}

/// One report per cell, in cell order.
pub fn run_grid(
    grid: &ScanGrid,
    table: &PrimeTable,
    tol: &Tolerances,
) -> Vec<Result<ApproximationReport>> {
    par::map_slice(Execution::default(), &grid.cells(), |&(x, y)| {
        approximation_report(x, y, table, grid.budget, tol)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PomeranceCell {
    pub x: f64,
    pub y: f64,
    pub psi_exact: Option<u64>,
    pub x_rho: f64,
    /// Ψ(x,y) − xρ(u)
    pub margin: Option<f64>,
    pub holds: Option<bool>,
    pub skipped: Option<String>,
}

/// Ψ(x,y) ≥ xρ(u) on every cell of the grid.
pub fn pomerance_scan(grid: &ScanGrid, table: &PrimeTable) -> Result<Vec<PomeranceCell>> {
    par::map_slice(Execution::default(), &grid.cells(), |&(x, y)| {
        let x_rho = approx_x_rho(x, y)?;
        Ok(
            match psi_smooth_exact_with(x, y, table, grid.budget, Execution::default()) {
                Ok(psi) => {
                    let margin = psi as f64 - x_rho;
                    PomeranceCell {
                        x,
                        y,
                        psi_exact: Some(psi),
                        x_rho,
                        margin: Some(margin),
                        holds: Some(margin >= 0.0),
                        skipped: None,
                    }
                }
                Err(e @ Error::Resource { .. }) => PomeranceCell {
                    x,
                    y,
                    psi_exact: None,
                    x_rho,
                    margin: None,
                    holds: None,
                    skipped: Some(e.to_string()),
                },
                Err(e) => return Err(e),
            },
        )
    })
    .into_iter()
    .collect()
}

/// The maximum of `e^v(−log(−ζ(1/2)) − (1/2)∫_v^{2v} e^{−r}/r dr)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantL {
    pub value: f64,
    pub argmax: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// Objective derivative at the returned argmax.
    pub derivative: f64,
}

/// `∫_v^{2v} e^{−r}/r dr = Ei(−2v) − Ei(−v)`, log 2 at v = 0.
fn exp_over_r_integral(v: f64) -> Result<f64> {
    if v == 0.0 {
        return Ok(std::f64::consts::LN_2);
    }
    ei_difference(-2.0 * v, -v, 1e-4)
}

fn neg_log_neg_zeta_half() -> Result<f64> {
    Ok(-(-zeta_real(0.5)?.value).ln())
}

/// The objective maximized by [`constant_l`].
pub fn constant_l_objective(v: f64) -> Result<f64> {
    Ok(v.exp() * (neg_log_neg_zeta_half()? - 0.5 * exp_over_r_integral(v)?))
}

fn objective_derivative(v: f64, c: f64) -> Result<f64> {
    let j = exp_over_r_integral(v)?;
    // d/dv ∫_v^{2v} e^{−r}/r dr = (e^{−2v} − e^{−v})/v
    let dj = if v.abs() < 1e-8 {
        -1.0 + 1.5 * v
    } else {
        ((-2.0 * v).exp() - (-v).exp()) / v
    };
    Ok(v.exp() * (c - 0.5 * j - 0.5 * dj))
}

/// Golden-section search on `[lo, hi]` followed by a secant polish of the
/// derivative.
pub fn constant_l(lo: f64, hi: f64) -> Result<ConstantL> {
    const OP: &str = "constant_L";
    check_finite(OP, "lo", lo)?;
    check_finite(OP, "hi", hi)?;
    if !(lo < hi) {
        return Err(domain(OP, format!("empty bracket [{lo}, {hi}]")));
    }
    let c = neg_log_neg_zeta_half()?;
    let f = |v: f64| -> Result<f64> { Ok(v.exp() * (c - 0.5 * exp_over_r_integral(v)?)) };
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut iterations = 0;
    while b - a > 1e-9 && iterations < 500 {
        iterations += 1;
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1)?;
        }
    }
    let mut v = 0.5 * (a + b);
    let (mut p, mut q) = (v - 1e-6, v + 1e-6);
    let (mut dp, mut dq) = (objective_derivative(p, c)?, objective_derivative(q, c)?);
    for _ in 0..20 {
        if dq == dp {
            break;
        }
        let next = q - dq * (q - p) / (dq - dp);
        if !next.is_finite() || next < lo || next > hi {
            break;
        }
        p = q;
        dp = dq;
        q = next;
        dq = objective_derivative(q, c)?;
        iterations += 1;
        if (q - p).abs() < 1e-15 {
            break;
        }
    }
    if f(q)? >= f(v)? {
        v = q;
    }
    Ok(ConstantL {
        value: f(v)?,
        argmax: v,
        bracket: (lo, hi),
        iterations,
        derivative: objective_derivative(v, c)?,
    })
}

/// The two phase-transition deviations at one (x, y).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseRecord {
    pub x: f64,
    pub y: f64,
    pub psi_exact: u64,
    /// log(Ψ/(xρ(u)Z(σ)G(σ,y)))
    pub d1: f64,
    /// log(Ψ/(xρ(u)Z(σ)G(α,y)))
    pub d2: f64,
    /// (log x)³/(y² log y)
    pub scale: f64,
    pub d1_over_scale: f64,
    pub d2_over_scale: f64,
    /// log B(x,y), the saddle-width factor absorbed into D₂
    pub log_b: f64,
    /// y ≤ (log x)^{2−ε}
    pub in_phase_range: bool,
}

pub fn phase_diagnostic(
    x: f64,
    y: f64,
    table: &PrimeTable,
    budget: CountBudget,
    tol: &Tolerances,
) -> Result<PhaseRecord> {
    const OP: &str = "phase_diagnostic";
    check_xy(OP, x, y)?;
    let lx = x.ln();
    if y < (1.0 + tol.range_epsilon) * lx {
        return Err(domain(
            OP,
            format!(
                "y = {y} is below (1 + eps) log x = {}",
                (1.0 + tol.range_epsilon) * lx
            ),
        ));
    }
    let ctx = build_context(x, y, table)?;
    let mf = main_formula(&ctx, table)?;
    let psi = psi_smooth_exact_with(x, y, table, budget, Execution::default())?;
    let base = (psi as f64 / mf.x_rho_z).ln();
    let d1 = base - mf.log_g_sigma;
    let d2 = base - mf.log_g_alpha;
    let scale = lx.powi(3) / (y * y * y.ln());
    Ok(PhaseRecord {
        x,
        y,
        psi_exact: psi,
        d1,
        d2,
        scale,
        d1_over_scale: d1 / scale,
        d2_over_scale: d2 / scale,
        log_b: ctx.b.ln(),
        in_phase_range: y <= lx.powf(2.0 - tol.range_epsilon),
    })
}

/// The terms of `log(Ψ/(xZ(σ))) ≈ log ρ(u) + log G₂(σ, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IneqRecord {
    pub x: f64,
    pub y: f64,
    pub log_psi_over_xz: f64,
    pub log_rho: f64,
    pub log_g2_sigma: f64,
    /// log(Ψ/(xZ(σ))) − log ρ(u) − log G₂(σ, y)
    pub residual: f64,
    /// log G₂(σ, y)·y log y/(log x)²
    pub g2_order_ratio: f64,
}

pub fn ineq_theorem_report(
    x: f64,
    y: f64,
    table: &PrimeTable,
    budget: CountBudget,
    tol: &Tolerances,
) -> Result<IneqRecord> {
    const OP: &str = "ineq_theorem_report";
    check_xy(OP, x, y)?;
    let lx = x.ln();
    if !(x > y) || y < (1.0 + tol.range_epsilon) * lx {
        return Err(domain(
            OP,
            format!("need x > y >= (1 + eps) log x, got x = {x}, y = {y}"),
        ));
    }
    let ctx = build_context(x, y, table)?;
    let psi = psi_smooth_exact_with(x, y, table, budget, Execution::default())? as f64;
    let log_psi_over_xz = (psi / (x * z_fn(ctx.sigma)?)).ln();
    let log_rho = dickman().rho(ctx.u)?.ln();
    let log_g2_sigma = log_g2_exact(ctx.sigma, y, table)?;
    Ok(IneqRecord {
        x,
        y,
        log_psi_over_xz,
        log_rho,
        log_g2_sigma,
        residual: log_psi_over_xz - log_rho - log_g2_sigma,
        g2_order_ratio: log_g2_sigma * y * y.ln() / (lx * lx),
    })
}

/// Sign and size of log G₁(σ₀, y) at one y.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillationSample {
    pub y: f64,
    pub sigma0: f64,
    pub log_g1: f64,
    /// c·y^{1/2−σ₀}(log y)²
    pub bound: f64,
    pub within_bound: bool,
}

/// log G₁(σ₀, y) at each y, with the bound `c·y^{1/2−σ₀}(log y)²`.
pub fn oscillation_record(
    sigma0: f64,
    ys: &[f64],
    table: &PrimeTable,
    tol: &Tolerances,
) -> Result<Vec<OscillationSample>> {
    par::map_slice(Execution::default(), ys, |&y| {
        let log_g1 = log_g1_exact(sigma0, y, table)?;
        let bound = tol.rh_logg1_const * y.powf(0.5 - sigma0) * y.ln().powi(2);
        Ok(OscillationSample {
            y,
            sigma0,
            log_g1,
            bound,
            within_bound: log_g1.abs() <= bound,
        })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::psi_smooth_exact;
    use crate::specialfns::rho;
    use std::sync::OnceLock;

    fn table() -> &'static PrimeTable {
        static T: OnceLock<PrimeTable> = OnceLock::new();
        T.get_or_init(|| PrimeTable::new(20_000).unwrap())
    }

    // Oracle: Λ by brute-force adaptive quadrature over the raw integrand,
    // ρ' taken by central differences.
    fn lambda_oracle(x: f64, y: f64) -> f64 {
        let ly = y.ln();
        let u = x.ln() / ly;
        let d = |t: f64| {
            let h = 1e-6;
            -(rho(t + h).unwrap() - rho(t - h).unwrap()) / (2.0 * h)
        };
        let g = |v: f64| {
            let yv = (v * ly).exp();
            d(u - v) * yv.fract() / yv
        };
        let mut total = 0.0;
        let top = u - 1.0;
        let steps = 4000;
        for i in 0..steps {
            let a = top * i as f64 / steps as f64;
            let b = top * (i + 1) as f64 / steps as f64;
            total += integrate(g, a, b, QuadConfig::with_abs(1e-12))
                .unwrap()
                .value;
        }
        x * rho(u).unwrap() - x.fract() + x * total
    }

    #[test]
    fn x_rho_values() {
        assert_eq!(approx_x_rho(100.0, 100.0).unwrap(), 100.0);
        let v = approx_x_rho(1e4, 100.0).unwrap();
        assert!((v - 1e4 * (1.0 - 2f64.ln())).abs() < 1e-8);
        let v = approx_x_rho(1e6, 100.0).unwrap();
        let fine = DickmanSolver::new(5e-4, 10.0).unwrap().rho(3.0).unwrap();
        assert!((v / 1e6 - fine).abs() < 1e-10);
    }

    #[test]
    fn lambda_trivial_range() {
        assert_eq!(approx_debruijn_lambda(50.3, 100.0).unwrap(), 50.0);
        let x = 10f64.powf(4.5);
        let lam = approx_debruijn_lambda(x, 200.0).unwrap();
        assert!(lam >= approx_x_rho(x, 200.0).unwrap() - x.fract());
    }

    #[test]
    fn lambda_matches_oracle() {
        for &(x, y) in &[(5000.5, 30.0), (12345.25, 100.0)] {
            let v = approx_debruijn_lambda(x, y).unwrap();
            let o = lambda_oracle(x, y);
            assert!(((v - o) / o).abs() < 1e-6, "x={x} y={y}: {v} vs {o}");
        }
    }

    #[test]
    fn lambda_against_smooth_model() {
        let (x, y) = (1e6, 1e3);
        let lam = approx_debruijn_lambda(x, y).unwrap();
        let ctx = build_context(x, y, table()).unwrap();
        let model = approx_x_rho(x, y).unwrap() * z_fn(ctx.sigma).unwrap();
        assert!((0.8..=1.25).contains(&(lam / model)), "{lam} {model}");
    }

    #[test]
    fn lambda_lower_bound() {
        for &(x, y) in &[(1e5 + 0.3, 20.0), (3e4 + 0.7, 50.0), (2e5 + 0.1, 300.0)] {
            let lam = approx_debruijn_lambda(x, y).unwrap();
            assert!(lam >= approx_x_rho(x, y).unwrap() - 1.0);
        }
    }

    #[test]
    fn ht_within_two_over_u() {
        for &(x, y) in &[(1e6, 1e3), (1e5, 50.0), (1e7, 1e4)] {
            let ctx = build_context(x, y, table()).unwrap();
            let psi = psi_smooth_exact(x, y, table()).unwrap() as f64;
            let err = (approx_ht_saddle(&ctx) / psi - 1.0).abs();
            assert!(err <= 2.0 / ctx.u, "x={x} y={y} err={err}");
        }
    }

    #[test]
    fn main_formula_forms_agree() {
        let ctx = build_context(1e6, 1e3, table()).unwrap();
        let mf = main_formula(&ctx, table()).unwrap();
        assert!((mf.form_sigma / mf.form_alpha - 1.0).abs() < 1e-9);
        let psi = psi_smooth_exact(1e6, 1e3, table()).unwrap() as f64;
        assert!((mf.form_sigma / psi - 1.0).abs() <= 3.0 / ctx.u);
    }

    #[test]
    fn near_boundary_report() {
        let x = 1e5_f64;
        let y = (2.0 * x.ln()).floor();
        let r = approximation_report(
            x,
            y,
            table(),
            CountBudget::default(),
            &Tolerances::default(),
        )
        .unwrap();
        assert!(r.near_boundary);
        assert!(r.main_formula_sigma.is_finite());
        assert!(r.sandwich_ok.is_some());
    }

    #[test]
    fn sharp_correction_shrinks_with_u() {
        let t = table();
        let small = build_context(1e6, 1e3, t).unwrap();
        let large = build_context(1e9, 1e3, t).unwrap();
        assert!((sharp_corrections(&large) - 1.0).abs() <= (sharp_corrections(&small) - 1.0).abs());
        let deg = build_context(1e3, 1e3, t).unwrap();
        assert!((sharp_corrections(&deg) - 1.0).abs() < 0.5);
    }

    #[test]
    fn default_grid_shape() {
        let cells = ScanGrid::default_grid().cells();
        assert_eq!(cells.len(), 24);
        assert!(cells.iter().all(|&(x, y)| y >= 2.0 && y <= x / 2.0));
        assert!(cells.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(cells[0], (1e4, 19.0));
    }

    #[test]
    fn pomerance_examples() {
        let grid = ScanGrid {
            x_values: vec![1e6],
            y_rule: vec![
                YSpec::Absolute(1e3),
                YSpec::LogMultiple(std::f64::consts::E * 0.9),
            ],
            budget: CountBudget::default(),
        };
        let cells = pomerance_scan(&grid, table()).unwrap();
        assert_eq!(cells.len(), 2);
        assert!(cells.iter().all(|c| c.holds == Some(true)));
        assert!(cells.iter().all(|c| c.margin.unwrap() > 0.0));
    }

    #[test]
    fn constant_l_value() {
        let l = constant_l(-10.0, 10.0).unwrap();
        assert!((l.value + 0.666217).abs() < 1e-5, "{l:?}");
        assert!(l.argmax > -10.0 && l.argmax < 10.0);
        for dv in [-1e-3, 1e-3] {
            assert!(constant_l_objective(l.argmax + dv).unwrap() < l.value);
        }
        let wide = constant_l(-20.0, 20.0).unwrap();
        assert!((wide.value - l.value).abs() < 1e-12);
        assert!((wide.argmax - l.argmax).abs() < 1e-6);
        let at0 = constant_l_objective(0.0).unwrap();
        let z = -zeta_real(0.5).unwrap().value;
        assert!((at0 - (-z.ln() - std::f64::consts::LN_2 / 2.0)).abs() < 1e-14);
        assert!((z - 1.460_354_508_809_586_8).abs() < 1e-12);
    }

    #[test]
    fn phase_examples() {
        let t = table();
        let tol = Tolerances::default();
        let x = 1e6_f64;
        let r =
            phase_diagnostic(x, x.ln().powf(1.7).ceil(), t, CountBudget::default(), &tol).unwrap();
        assert!(r.d1 < 0.0 && r.d1 < r.d2, "{r:?}");
        assert!(r.d2 - r.log_b > 0.0, "{r:?}");
        let r = phase_diagnostic(1e6, 1e3, t, CountBudget::default(), &tol).unwrap();
        assert!(r.d1.abs() <= 0.3 && r.d2.abs() <= 0.3, "{r:?}");
        assert!(!r.in_phase_range);
        assert!(phase_diagnostic(1e6, 14.0, t, CountBudget::default(), &tol).is_err());
    }

    #[test]
    fn ineq_examples() {
        let t = table();
        let tol = Tolerances::default();
        let r = ineq_theorem_report(1e6, 1e3, t, CountBudget::default(), &tol).unwrap();
        assert!(r.residual.abs() / r.log_rho.abs() <= 0.1, "{r:?}");
        let x = 1e6_f64;
        let r =
            ineq_theorem_report(x, (3.0 * x.ln()).ceil(), t, CountBudget::default(), &tol).unwrap();
        assert!((0.1..=10.0).contains(&r.g2_order_ratio), "{r:?}");
        assert!(ineq_theorem_report(1e3, 1e3, t, CountBudget::default(), &tol).is_err());
    }
}

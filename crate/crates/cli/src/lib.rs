//! Library side of the `friable` command: argument model, subcommands and
//! report rendering.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod grid;
pub mod report;

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use friable::approx::{
    approximation_report, constant_l, phase_diagnostic, pomerance_scan, sharp_corrections,
};
use friable::gfactor::{breakdown, g_over_g, log_g1_exact, log_g1_zeros};
use friable::par::map_slice;
use friable::primes::{
    chebyshev_psi, friable_count_estimate, psi_smooth_exact_with, psi_smooth_sieve, CountBudget,
    PrimeTable,
};
use friable::saddle::{build_context, sigma_alpha_gap_model, taylor_gap_f, taylor_gap_g};
use friable::specialfns::{rho, rho_prime, xi};
use friable::tolerances::Tolerances;
use friable::zeros::{
    bundled_zeros, load_zeros, psi_minus_y_via_zeros, validate_table, ZeroTable, ZeroVerdict,
};
use friable::{Error, Execution};

use crate::grid::parse_grid;
use crate::report::*;

/// Largest x for which `count` also runs the sieve.
const SIEVE_LIMIT: f64 = 2e7;

#[derive(Debug, Parser)]
#[command(
    name = "friable",
    version,
    about = "Counts y-friable integers and compares the approximations to Ψ(x, y)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact Ψ(x, y), checked against the sieve when x is small.
    Count(Common),
    /// ρ(u) and ρ'(u).
    Rho(Common),
    /// ξ(u), the root of e^ξ = 1 + uξ.
    Xi(Common),
    /// Saddle points σ, α and the derived quantities at (x, y).
    Saddle(Common),
    /// Ψ(x, y) against every approximation, at one point or over a grid.
    Compare(Common),
    /// Ψ(x, y) ≥ xρ(u) over a grid.
    ScanPomerance(Common),
    /// The phase-transition deviations D₁ and D₂.
    Phase(Common),
    /// The constant L.
    ConstantL(Common),
    /// Validates a zero file and compares the truncated explicit formula with ψ(y) − y.
    ZerosCheck(Common),
    /// log G split into G₁ and G₂ at (s, y).
    GDecompose(Common),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Count(c)
            | Command::Rho(c)
            | Command::Xi(c)
            | Command::Saddle(c)
            | Command::Compare(c)
            | Command::ScanPomerance(c)
            | Command::Phase(c)
            | Command::ConstantL(c)
            | Command::ZerosCheck(c)
            | Command::GDecompose(c) => c,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub y: Option<f64>,
    /// Argument of ρ or ξ; repeatable.
    #[arg(long)]
    pub u: Vec<f64>,
    /// Real part s for g-decompose.
    #[arg(long)]
    pub s: Option<f64>,
    /// `default` or `x=LIST;y=LIST` with y entries N, Clog or log^A.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub zeros_file: Option<PathBuf>,
    /// Truncation height for zero sums.
    #[arg(long = "T")]
    pub t: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Largest estimated Ψ(x, y) counted exactly.
    #[arg(long, default_value_t = 1e9)]
    pub budget: f64,
    /// KEY=VAL override of a tolerance; repeatable.
    #[arg(long = "tolerance", value_name = "KEY=VAL")]
    pub tolerance: Vec<String>,
    /// Search bracket for constant-l.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub bracket: Option<Vec<f64>>,
}

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Budget(anyhow::Error),
    Data(anyhow::Error),
    Numeric(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Data(_) => 4,
            Failure::Numeric(_) => 5,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(e) | Failure::Budget(e) | Failure::Data(e) | Failure::Numeric(e) => {
                format!("{e:#}")
            }
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::Resource { .. }) => Failure::Budget(e),
            Some(Error::Format { .. }) | Some(Error::Coverage { .. }) => Failure::Data(e),
            Some(Error::Numeric { .. }) => Failure::Numeric(e),
            _ => Failure::Usage(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(anyhow::Error::new(e))
    }
}

struct Ctx {
    common: Common,
    tol: Tolerances,
    budget: CountBudget,
}

impl Ctx {
    fn x(&self) -> Result<f64> {
        self.common.x.ok_or_else(|| anyhow!("--x is required"))
    }

    fn y(&self) -> Result<f64> {
        self.common.y.ok_or_else(|| anyhow!("--y is required"))
    }

    fn zeros(&self) -> Result<Option<ZeroTable>> {
        match &self.common.zeros_file {
            None => Ok(None),
            Some(p) => {
                let f = File::open(p).with_context(|| format!("cannot open {}", p.display()))?;
                let t = load_zeros(BufReader::new(f))
                    .map_err(anyhow::Error::new)
                    .with_context(|| format!("in {}", p.display()))?;
                Ok(Some(t))
            }
        }
    }

    /// Points to evaluate: the grid when given, otherwise (x, y).
    fn points(&self) -> Result<Vec<(f64, f64)>> {
        match &self.common.grid {
            Some(g) => Ok(parse_grid(g, self.budget)?.cells()),
            None => Ok(vec![(self.x()?, self.y()?)]),
        }
    }
}

fn prime_table(y_max: f64) -> Result<PrimeTable> {
    let limit = y_max.max(1000.0).ceil() as u64 + 1;
    Ok(PrimeTable::new(limit)?)
}

fn check_number(name: &str, v: Option<f64>) -> Result<()> {
    match v {
        Some(v) if !v.is_finite() => bail!("--{name} must be finite, got {v}"),
        _ => Ok(()),
    }
}

fn config(name: &str, c: &Common, tol: &Tolerances) -> RunConfig {
    RunConfig {
        subcommand: name.to_string(),
        x: c.x,
        y: c.y,
        u: c.u.clone(),
        s: c.s,
        grid: c.grid.clone(),
        zeros_file: c.zeros_file.as_ref().map(|p| p.display().to_string()),
        t: c.t,
        format: c.format,
        budget: c.budget,
        bracket: c.bracket.as_ref().map(|b| (b[0], b[1])),
        tolerances: tol.entries(),
    }
}

/// Runs one parsed command and returns its report.
pub fn run(cli: Cli) -> std::result::Result<Report, Failure> {
    let (name, common) = match cli.command {
        Command::Count(c) => ("count", c),
        Command::Rho(c) => ("rho", c),
        Command::Xi(c) => ("xi", c),
        Command::Saddle(c) => ("saddle", c),
        Command::Compare(c) => ("compare", c),
        Command::ScanPomerance(c) => ("scan-pomerance", c),
        Command::Phase(c) => ("phase", c),
        Command::ConstantL(c) => ("constant-l", c),
        Command::ZerosCheck(c) => ("zeros-check", c),
        Command::GDecompose(c) => ("g-decompose", c),
    };
    for (n, v) in [
        ("x", common.x),
        ("y", common.y),
        ("s", common.s),
        ("T", common.t),
    ] {
        check_number(n, v).map_err(Failure::Usage)?;
    }
    if !(common.budget > 0.0) || !common.budget.is_finite() {
        return Err(Failure::Usage(anyhow!(
            "--budget must be positive and finite"
        )));
    }
    let mut tol = Tolerances::default();
    for a in &common.tolerance {
        tol.apply(a)
            .map_err(|e| Failure::Usage(anyhow::Error::new(e)))?;
    }
    let cfg = config(name, &common, &tol);
    let ctx = Ctx {
        budget: CountBudget {
            max_estimate: common.budget,
        },
        common,
        tol,
    };
    let mut violations = Vec::new();
    let body = match name {
        "count" => cmd_count(&ctx, &mut violations)?,
        "rho" => cmd_rho(&ctx)?,
        "xi" => cmd_xi(&ctx)?,
        "saddle" => cmd_saddle(&ctx)?,
        "compare" => cmd_compare(&ctx, &mut violations)?,
        "scan-pomerance" => cmd_pomerance(&ctx, &mut violations)?,
        "phase" => cmd_phase(&ctx)?,
        "constant-l" => cmd_constant_l(&ctx)?,
        "zeros-check" => cmd_zeros_check(&ctx, &mut violations)?,
        "g-decompose" => cmd_g_decompose(&ctx, &mut violations)?,
        _ => unreachable!(),
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        config: cfg,
        body,
        violations,
    })
}

fn cmd_count(ctx: &Ctx, violations: &mut Vec<String>) -> std::result::Result<Body, Failure> {
    let (x, y) = (ctx.x()?, ctx.y()?);
    if !(x >= 1.0 && y >= 2.0) {
        return Err(Failure::Usage(anyhow!("need x >= 1 and y >= 2")));
    }
    let table = prime_table(y.min(x))?;
    let psi = match psi_smooth_exact_with(x, y, &table, ctx.budget, Execution::default()) {
        Ok(v) => v,
        Err(e @ Error::Resource { .. }) => {
            let x_rho = friable::approx::approx_x_rho(x, y)
                .map(|v| format!("{v:.6e}"))
                .unwrap_or_else(|_| "unavailable".into());
            let est = friable_count_estimate(x, y, &table);
            return Err(Failure::Budget(anyhow!(
                "{e}; estimated Ψ ≈ {est:.6e}, x·ρ(u) = {x_rho}; raise --budget to count"
            )));
        }
        Err(e) => return Err(e.into()),
    };
    let psi_sieve = if x <= SIEVE_LIMIT {
        Some(psi_smooth_sieve(x, y, &table, Execution::default())?)
    } else {
        None
    };
    let methods_agree = psi_sieve.map(|s| s == psi);
    if methods_agree == Some(false) {
        violations.push(format!(
            "enumeration {psi} and sieve {} disagree",
            psi_sieve.unwrap()
        ));
    }
    Ok(Body::Count(CountBody {
        x,
        y,
        psi,
        psi_sieve,
        methods_agree,
    }))
}

fn u_values(ctx: &Ctx) -> Result<Vec<f64>> {
    if ctx.common.u.is_empty() {
        bail!("--u is required");
    }
    Ok(ctx.common.u.clone())
}

fn cmd_rho(ctx: &Ctx) -> std::result::Result<Body, Failure> {
    let values = u_values(ctx)?
        .into_iter()
        .map(|u| {
            Ok(RhoRow {
                u,
                rho: rho(u)?,
                rho_prime: rho_prime(u)?,
            })
        })
        .collect::<std::result::Result<Vec<_>, Error>>()?;
    Ok(Body::Rho { values })
}

fn cmd_xi(ctx: &Ctx) -> std::result::Result<Body, Failure> {
    let values = u_values(ctx)?
        .into_iter()
        .map(xi)
        .collect::<std::result::Result<Vec<_>, Error>>()?;
    Ok(Body::Xi { values })
}

fn cmd_saddle(ctx: &Ctx) -> std::result::Result<Body, Failure> {
    let (x, y) = (ctx.x()?, ctx.y()?);
    let table = prime_table(y)?;
    let c = build_context(x, y, &table)?;
    let gap_model = sigma_alpha_gap_model(&c, g_over_g(c.alpha, y, &table)?);
    Ok(Body::Saddle(SaddleBody {
        gap_g: taylor_gap_g(&c, &table)?,
        gap_f: taylor_gap_f(&c)?.gap,
        gap_model,
        sharp_correction: sharp_corrections(&c),
        context: c,
    }))
}

fn cmd_compare(ctx: &Ctx, violations: &mut Vec<String>) -> std::result::Result<Body, Failure> {
    let points = ctx.points()?;
    let y_max = points.iter().map(|p| p.1).fold(2.0, f64::max);
    let table = prime_table(y_max)?;
    let zeros = ctx.zeros()?;
    let t = ctx.common.t.unwrap_or(100.0);
    let results = map_slice(
        Execution::default(),
        &points,
        |&(x, y)| -> Result<CompareCell> {
            let report = approximation_report(x, y, &table, ctx.budget, &ctx.tol)?;
            let (g1_zeros, g1_exact) = match &zeros {
                Some(z) if y >= 4.0 => (
                    Some(log_g1_zeros(report.sigma, y, t, z, &table)?),
                    Some(log_g1_exact(report.sigma, y, &table)?),
                ),
                _ => (None, None),
            };
            Ok(CompareCell {
                report,
                g1_zeros,
                g1_exact,
            })
        },
    );
    let single = ctx.common.grid.is_none();
    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    for (r, &(x, y)) in results.into_iter().zip(&points) {
        match r {
            Ok(c) => cells.push(c),
            Err(e) if single => return Err(e.into()),
            Err(e) => skipped.push(Skipped {
                x,
                y,
                reason: format!("{e:#}"),
            }),
        }
    }
    for c in &cells {
        let r = &c.report;
        let forms = (r.main_formula_sigma / r.main_formula_alpha - 1.0).abs();
        if forms > ctx.tol.forms_rel {
            violations.push(format!(
                "x={} y={}: main-formula forms differ by {forms:e}",
                r.x, r.y
            ));
        }
        if r.sandwich_ok == Some(false) {
            violations.push(format!("x={} y={}: sandwich bound fails", r.x, r.y));
        }
        if let (Some(z), Some(e)) = (&c.g1_zeros, c.g1_exact) {
            if (z.value - e).abs() > z.error_bound {
                violations.push(format!(
                    "x={} y={}: zero formula for log G1 outside its bound",
                    r.x, r.y
                ));
            }
        }
    }
    Ok(Body::Compare { cells, skipped })
}

fn cmd_pomerance(ctx: &Ctx, violations: &mut Vec<String>) -> std::result::Result<Body, Failure> {
    let spec = ctx.common.grid.as_deref().unwrap_or("default");
    let grid = parse_grid(spec, ctx.budget)?;
    let table = prime_table(grid.max_y())?;
    let cells = pomerance_scan(&grid, &table)?;
    let tol = &ctx.tol;
    let rows = cells
        .into_iter()
        .map(|cell| {
            let lx = cell.x.ln();
            let band = if cell.y >= lx.powf(tol.pomerance_exponent) {
                "large_y"
            } else if cell.y <= tol.pomerance_small_factor * std::f64::consts::E * lx {
                "small_y"
            } else {
                "middle"
            };
            if band != "middle" && cell.holds == Some(false) {
                violations.push(format!("x={} y={}: Ψ < xρ(u)", cell.x, cell.y));
            }
            PomeranceRow {
                cell,
                band: band.to_string(),
            }
        })
        .collect();
    Ok(Body::ScanPomerance { cells: rows })
}

fn cmd_phase(ctx: &Ctx) -> std::result::Result<Body, Failure> {
    let points = ctx.points()?;
    let y_max = points.iter().map(|p| p.1).fold(2.0, f64::max);
    let table = prime_table(y_max)?;
    let results = map_slice(Execution::default(), &points, |&(x, y)| {
        phase_diagnostic(x, y, &table, ctx.budget, &ctx.tol)
    });
    let single = ctx.common.grid.is_none();
    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    for (r, &(x, y)) in results.into_iter().zip(&points) {
        match r {
            Ok(c) => cells.push(c),
            Err(e) if single => return Err(e.into()),
            Err(e) => skipped.push(Skipped {
                x,
                y,
                reason: e.to_string(),
            }),
        }
    }
    Ok(Body::Phase { cells, skipped })
}

fn cmd_constant_l(ctx: &Ctx) -> std::result::Result<Body, Failure> {
    let (lo, hi) = match &ctx.common.bracket {
        Some(b) => (b[0], b[1]),
        None => (-10.0, 10.0),
    };
    Ok(Body::ConstantL(constant_l(lo, hi)?))
}

fn cmd_zeros_check(ctx: &Ctx, violations: &mut Vec<String>) -> std::result::Result<Body, Failure> {
    let zeros = ctx.zeros()?.unwrap_or_else(bundled_zeros);
    let t = ctx.common.t.unwrap_or_else(|| zeros.covered_height());
    let ys = match ctx.common.y {
        Some(y) => vec![y],
        None => vec![1e3, 1e4],
    };
    let table = prime_table(ys.iter().copied().fold(2.0, f64::max))?;
    let verdicts: Vec<ZeroVerdictRow> = zeros
        .ordinates()
        .iter()
        .zip(validate_table(&zeros, 1e-6, Execution::default()))
        .map(|(&gamma, verdict)| ZeroVerdictRow { gamma, verdict })
        .collect();
    for v in &verdicts {
        if v.verdict == ZeroVerdict::Invalid {
            violations.push(format!("no sign change of Z near γ = {}", v.gamma));
        }
    }
    let mut explicit_formula = Vec::new();
    for &y in &ys {
        let exact = chebyshev_psi(y, &table)? - y;
        let zero_sum = psi_minus_y_via_zeros(y, t, &zeros)?;
        let bound = ctx.tol.psi_truncation_const * y.ln().powi(2);
        let gap = (exact - zero_sum).abs();
        if gap > bound {
            violations.push(format!("y={y}: explicit-formula gap {gap} exceeds {bound}"));
        }
        explicit_formula.push(ExplicitRow {
            y,
            t,
            exact,
            zero_sum,
            gap,
            bound,
        });
    }
    Ok(Body::ZerosCheck(ZerosBody {
        count: zeros.count(),
        covered_height: zeros.covered_height(),
        verdicts,
        explicit_formula,
    }))
}

fn cmd_g_decompose(ctx: &Ctx, violations: &mut Vec<String>) -> std::result::Result<Body, Failure> {
    let s = ctx.common.s.ok_or_else(|| anyhow!("--s is required"))?;
    let y = ctx.y()?;
    let table = prime_table(y)?;
    let zeros = ctx.zeros()?;
    let t = ctx.common.t.unwrap_or(100.0);
    let b = breakdown(
        s,
        y,
        &table,
        zeros.as_ref().map(|z| (z, t)),
        s > 0.0 && s < 1.0,
    )?;
    let identity = (b.log_g_total - b.log_g1_exact - b.log_g2_exact).abs();
    if identity > ctx.tol.decomposition_abs {
        violations.push(format!(
            "log G differs from log G1 + log G2 by {identity:e}"
        ));
    }
    if !(b.log_g2_exact > 0.0) {
        violations.push("log G2 is not positive".into());
    }
    if let Some(z) = &b.log_g1_zeros {
        if (z.value - b.log_g1_exact).abs() > z.error_bound {
            violations.push("zero formula for log G1 outside its bound".into());
        }
    }
    Ok(Body::GDecompose(b))
}

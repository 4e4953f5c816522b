//! Ordinates of nontrivial zeta zeros and the truncated explicit formulas for
//! S₁, S₂ and ψ(y) − y built from them.
//!
//! Zeros are taken on the critical line, ρ = 1/2 ± iγ.

use std::io::BufRead;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_finite, domain, Error, Result};
use crate::par::{self, Execution};
use crate::primes::{prime_power_base, PrimeTable};
use crate::quad::{integrate, QuadConfig};
use crate::specialfns::{
    big_i_real, expint_e1, expint_e1_complex, hardy_z, log_zeta_pole_removed, zeta_complex,
    EULER_GAMMA,
};

/// Highest ordinate [`validate_zero`] will evaluate.
pub const VALIDATION_MAX_HEIGHT: f64 = 500.0;

/// Constant standing in for the implied constants of the remainder bounds.
pub const REMAINDER_CONSTANT: f64 = 10.0;

/// Zero integrals `∫_0^∞` are cut at `t = ZERO_INTEGRAL_CUTOFF/log x`.
pub const ZERO_INTEGRAL_CUTOFF: f64 = 40.0;

const BUNDLED_100: &str = include_str!("../data/zeros_100.txt");

/// Ascending ordinates γ of zeros 1/2 + iγ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    /// Absolute accuracy of each ordinate, from the fewest decimals present.
    precision: f64,
}

impl ZeroTable {
    pub fn from_ordinates(ordinates: Vec<f64>, precision: f64) -> Result<Self> {
        for (i, w) in ordinates.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::Format {
                    line: i + 2,
                    reason: format!("ordinate {} does not exceed {}", w[1], w[0]),
                });
            }
        }
        if let Some(&first) = ordinates.first() {
            if !(first > 14.0) || !first.is_finite() {
                return Err(Error::Format {
                    line: 1,
                    reason: format!("ordinate {first} lies below the first zero"),
                });
            }
        }
        Ok(ZeroTable {
            ordinates,
            precision,
        })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn precision(&self) -> f64 {
        self.precision
    }

    pub fn count(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Largest ordinate in the table, or 0 when empty.
    pub fn covered_height(&self) -> f64 {
        self.ordinates.last().copied().unwrap_or(0.0)
    }

    /// Number of ordinates ≤ t.
    pub fn count_below(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// Ordinates ≤ t.
    pub fn upto(&self, t: f64) -> &[f64] {
        &self.ordinates[..self.count_below(t)]
    }

    fn require(&self, height: f64) -> Result<()> {
        if self.is_empty() || self.covered_height() < height {
            return Err(Error::Coverage {
                requested: height,
                covered: self.covered_height(),
            });
        }
        Ok(())
    }
}

/// The first 100 zeros, shipped with the crate.
pub fn bundled_zeros() -> ZeroTable {
    load_zeros(BUNDLED_100.as_bytes()).expect("bundled zero table is well formed")
}

/// Parses one ordinate per line; blank lines and lines starting with `#` are
/// skipped. Line numbers in errors are 1-based.
pub fn load_zeros<R: BufRead>(source: R) -> Result<ZeroTable> {
    let mut ordinates: Vec<f64> = Vec::new();
    let mut min_decimals = usize::MAX;
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Format {
            line: line_no,
            reason: e.to_string(),
        })?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::Format {
            line: line_no,
            reason,
        };
        if !text.bytes().all(|b| b.is_ascii_digit() || b == b'.') || text.matches('.').count() > 1 {
            return Err(bad(format!("not a positive decimal: {text:?}")));
        }
        let value: f64 = text
            .parse()
            .map_err(|_| bad(format!("not a positive decimal: {text:?}")))?;
        if !(value > 14.0) {
            return Err(bad(format!("ordinate {value} lies below the first zero")));
        }
        if let Some(&prev) = ordinates.last() {
            if !(value > prev) {
                return Err(bad(format!("ordinate {value} does not exceed {prev}")));
            }
        }
        let decimals = text.split_once('.').map_or(0, |(_, f)| f.len());
        min_decimals = min_decimals.min(decimals);
        ordinates.push(value);
    }
    let precision = if ordinates.is_empty() {
        0.0
    } else {
        10f64.powi(-(min_decimals.min(15) as i32))
    };
    Ok(ZeroTable {
        ordinates,
        precision,
    })
}

/// Whether Hardy's Z changes sign between `gamma − tol` and `gamma + tol`.
pub fn validate_zero(gamma: f64, tol: f64) -> Result<bool> {
    check_finite("validate_zero", "gamma", gamma)?;
    check_finite("validate_zero", "tol", tol)?;
    if !(tol > 0.0) || gamma - tol <= 0.0 {
        return Err(domain(
            "validate_zero",
            format!("need 0 < tol < gamma, got gamma = {gamma}, tol = {tol}"),
        ));
    }
    if gamma + tol > VALIDATION_MAX_HEIGHT {
        return Err(Error::Resource {
            op: "validate_zero",
            reason: format!("height {gamma} exceeds the evaluation budget {VALIDATION_MAX_HEIGHT}"),
            estimate: Some(gamma),
        });
    }
    Ok(hardy_z(gamma - tol)? * hardy_z(gamma + tol)? < 0.0)
}

/// Outcome of checking one tabulated ordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroVerdict {
    Valid,
    Invalid,
    OutOfBudget,
}

/// Validates every ordinate with tolerance `max(tol, precision)`.
pub fn validate_table(table: &ZeroTable, tol: f64, exec: Execution) -> Vec<ZeroVerdict> {
    let tol = tol.max(table.precision());
    par::map_slice(exec, table.ordinates(), |&g| match validate_zero(g, tol) {
        Ok(true) => ZeroVerdict::Valid,
        Ok(false) => ZeroVerdict::Invalid,
        Err(_) => ZeroVerdict::OutOfBudget,
    })
}

/// Distance from x to the nearest prime power different from x.
pub fn distance_to_prime_power(x: f64) -> f64 {
    let base = x.floor() as u64;
    let mut best = f64::INFINITY;
    let mut k = 0u64;
    loop {
        let down = base.checked_sub(k);
        let up = base + 1 + k;
        for n in [down, Some(up)].into_iter().flatten() {
            if n as f64 != x && prime_power_base(n).is_some() {
                best = best.min((n as f64 - x).abs());
            }
        }
        if (k as f64) > best + 1.0 {
            return best;
        }
        k += 1;
    }
}

fn check_explicit_args(op: &'static str, x: f64, t: f64) -> Result<()> {
    check_finite(op, "x", x)?;
    check_finite(op, "T", t)?;
    if x < 4.0 {
        return Err(domain(op, format!("x must be >= 4, got {x}")));
    }
    if !(t > 0.0) {
        return Err(domain(op, format!("T must be positive, got {t}")));
    }
    Ok(())
}

/// A truncated explicit-formula value with its remainder bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExplicitS1 {
    pub value: Complex64,
    pub error_bound: f64,
    pub zeros_used: usize,
}

/// `x^{1−s}/(1−s) − ζ'/ζ(s)`, with the limit `log x − γ` at s = 1.
pub fn s1_main_term(x: f64, s: Complex64) -> Result<Complex64> {
    let lx = x.ln();
    if s.im == 0.0 {
        let s = s.re;
        if s < 0.0 {
            return Err(domain(
                "S1_main_term",
                format!("Re s must be >= 0, got {s}"),
            ));
        }
        // (x^{1−s} − 1)/(1 − s) − (log(ζ(s)(s − 1)))', regular at s = 1
        let l1 = log_zeta_pole_removed(s)?[1];
        let ratio = if s == 1.0 {
            lx
        } else {
            ((1.0 - s) * lx).exp_m1() / (1.0 - s)
        };
        return Ok(Complex64::new(ratio - l1, 0.0));
    }
    let one = Complex64::new(1.0, 0.0);
    let (z, dz) = zeta_complex(s)?;
    Ok(((one - s) * lx).exp() / (one - s) - dz / z)
}

/// Σ_{k ≥ 1} x^{−2k−s}/(2k + s).
fn trivial_zero_sum(x: f64, s: Complex64) -> Complex64 {
    let lx = x.ln();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..200 {
        let w = s + 2.0 * k as f64;
        let term = (-w * lx).exp() / w;
        acc += term;
        if term.norm() < 1e-18 * acc.norm().max(1e-300) {
            break;
        }
    }
    acc
}

/// Truncation remainder R for S₁ with the implied constant set to [`REMAINDER_CONSTANT`].
pub fn s1_remainder_bound(x: f64, t: f64, s_re: f64) -> f64 {
    let lx = x.ln();
    let near = (x / (t * distance_to_prime_power(x))).min(1.0);
    let first = lx * (x - 1.0).powf(-s_re) * near;
    let second =
        (x * t).ln().powi(2) / t * (2f64.powf(s_re) * x.powf(1.0 - s_re) + 2f64.powf(-s_re) / lx);
    REMAINDER_CONSTANT * (first + second)
}

/// Truncation remainder R₂ for S₂ and log G₁, implied constant [`REMAINDER_CONSTANT`].
pub fn s2_remainder_bound(x: f64, t: f64, s: f64) -> f64 {
    let lx = x.ln();
    let near = (x / (t * distance_to_prime_power(x))).min(1.0);
    REMAINDER_CONSTANT * (x.powf(-s) * near + (x * t).ln().powi(2) / (t * lx) * x.powf(1.0 - s))
}

/// S₁(x, s) from the truncated explicit formula.
pub fn s1_via_zeros(x: f64, s: Complex64, t: f64, table: &ZeroTable) -> Result<ExplicitS1> {
    check_explicit_args("S1_via_zeros", x, t)?;
    if !(s.re >= 0.0) || !s.im.is_finite() {
        return Err(domain(
            "S1_via_zeros",
            format!("need finite s with Re s >= 0, got {s}"),
        ));
    }
    table.require(t + s.im.abs())?;
    let lx = x.ln();
    let zeros = table.upto(t + s.im.abs());
    let term = |rho: Complex64| {
        let w = rho - s;
        (w * lx).exp() / w
    };
    let zero_sum = if s.im == 0.0 {
        let re = par::sum_range(Execution::default(), 0..zeros.len(), |i| {
            2.0 * term(Complex64::new(0.5, zeros[i])).re
        });
        Complex64::new(re, 0.0)
    } else {
        par::sum_range_complex(Execution::default(), 0..zeros.len(), |i| {
            let g = zeros[i];
            let mut acc = Complex64::new(0.0, 0.0);
            if (g + s.im).abs() <= t {
                acc += term(Complex64::new(0.5, g));
            }
            if (s.im - g).abs() <= t {
                acc += term(Complex64::new(0.5, -g));
            }
            acc
        })
    };
    let used = if s.im == 0.0 {
        2 * zeros.len()
    } else {
        zeros
            .iter()
            .map(|&g| ((g + s.im).abs() <= t) as usize + ((s.im - g).abs() <= t) as usize)
            .sum()
    };
    Ok(ExplicitS1 {
        value: s1_main_term(x, s)? - zero_sum + trivial_zero_sum(x, s),
        error_bound: s1_remainder_bound(x, t, s.re),
        zeros_used: used,
    })
}

/// `∫_0^∞ x^{w−t}/(w−t) dt` from its closed form `−E₁(−w log x)`.
pub fn zero_integral_exact(x: f64, w: Complex64) -> Complex64 {
    -expint_e1_complex(-w * x.ln())
}

/// `∫_0^{40/log x} x^{w−t}/(w−t) dt` by adaptive quadrature.
pub fn zero_integral_quadrature(x: f64, w: Complex64) -> Result<Complex64> {
    let lx = x.ln();
    let scale = (w * lx).exp();
    let q = integrate(
        |t: f64| scale * (-t * lx).exp() / (w - t),
        0.0,
        ZERO_INTEGRAL_CUTOFF / lx,
        QuadConfig {
            abs_tol: 1e-13 * scale.norm() / w.norm(),
            rel_tol: 1e-12,
            max_intervals: 2000,
        },
    )?;
    Ok(q.value)
}

/// Leading term `x^w/(w log x)` of a zero integral.
pub fn zero_integral_main_term(x: f64, w: Complex64) -> Complex64 {
    let lx = x.ln();
    (w * lx).exp() / (w * lx)
}

/// Bound `C·x^{Re w}/(d·|w|·(log x)²)` on the main-term error, with
/// `d = min_{t ≥ 0} |w − t|`.
pub fn zero_integral_correction_bound(x: f64, w: Complex64) -> f64 {
    let d = if w.re > 0.0 { w.im.abs() } else { w.norm() };
    REMAINDER_CONSTANT * x.powf(w.re) / (d * w.norm() * x.ln().powi(2))
}

/// Σ_{k ≥ 1} ∫_0^∞ x^{−2k−s−t}/(2k + s + t) dt = Σ E₁((2k + s) log x).
pub fn trivial_zero_integrals(x: f64, s: f64) -> Result<f64> {
    let lx = x.ln();
    let mut acc = 0.0;
    for k in 1..200 {
        let term = expint_e1((2.0 * k as f64 + s) * lx)?;
        acc += term;
        if term < 1e-18 * acc {
            break;
        }
    }
    Ok(acc)
}

/// Σ_{|γ| ≤ T} of the zero integrals at real s, both evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroIntegralSum {
    pub quadrature: f64,
    pub main_term: f64,
    /// Σ of the per-zero main-term error bounds.
    pub correction_bound: f64,
    pub zeros_used: usize,
}

/// Sums the conjugate pairs of zero integrals for ρ = 1/2 ± iγ, γ ≤ T.
pub fn zero_integral_sum(x: f64, s: f64, t: f64, table: &ZeroTable) -> Result<ZeroIntegralSum> {
    table.require(t)?;
    let zeros = table.upto(t);
    let parts: Vec<Result<(f64, f64, f64)>> = par::map_slice(Execution::default(), zeros, |&g| {
        let w = Complex64::new(0.5 - s, g);
        let q = zero_integral_quadrature(x, w)?;
        let m = zero_integral_main_term(x, w);
        Ok((
            2.0 * q.re,
            2.0 * m.re,
            2.0 * zero_integral_correction_bound(x, w),
        ))
    });
    let mut quad = crate::par::CompensatedSum::new();
    let mut main = crate::par::CompensatedSum::new();
    let mut bound = 0.0;
    for p in parts {
        let (a, b, c) = p?;
        quad.add(a);
        main.add(b);
        bound += c;
    }
    Ok(ZeroIntegralSum {
        quadrature: quad.value(),
        main_term: main.value(),
        correction_bound: bound,
        zeros_used: 2 * zeros.len(),
    })
}

/// S₂(x, s) from the integrated explicit formula, zero integrals evaluated
/// both by quadrature and by their leading term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExplicitS2 {
    pub value: f64,
    pub value_main_term: f64,
    pub error_bound: f64,
    pub main_term_correction_bound: f64,
    pub zeros_used: usize,
}

/// `I((1−s)log x) + γ + log log x + log(ζ(s)(s−1))`.
pub fn s2_smooth_part(x: f64, s: f64) -> Result<f64> {
    let lx = x.ln();
    Ok(big_i_real((1.0 - s) * lx) + EULER_GAMMA + lx.ln() + log_zeta_pole_removed(s)?[0])
}

pub fn s2_via_zeros(x: f64, s: f64, t: f64, table: &ZeroTable) -> Result<ExplicitS2> {
    check_explicit_args("S2_via_zeros", x, t)?;
    if !(0.0..=1.0).contains(&s) {
        return Err(domain(
            "S2_via_zeros",
            format!("s must lie in [0, 1], got {s}"),
        ));
    }
    let zs = zero_integral_sum(x, s, t, table)?;
    let base = s2_smooth_part(x, s)? + trivial_zero_integrals(x, s)?;
    Ok(ExplicitS2 {
        value: base - zs.quadrature,
        value_main_term: base - zs.main_term,
        error_bound: s2_remainder_bound(x, t, s),
        main_term_correction_bound: zs.correction_bound,
        zeros_used: zs.zeros_used,
    })
}

/// `−Σ_{|γ| ≤ T} y^ρ/ρ = −2 Σ_{γ ≤ T} Re(y^ρ/ρ)`.
pub fn psi_minus_y_via_zeros(y: f64, t: f64, table: &ZeroTable) -> Result<f64> {
    check_finite("psi_minus_y_via_zeros", "y", y)?;
    if y < 4.0 {
        return Err(domain(
            "psi_minus_y_via_zeros",
            format!("y must be >= 4, got {y}"),
        ));
    }
    table.require(t)?;
    let zeros = table.upto(t);
    let ly = y.ln();
    Ok(-par::sum_range(Execution::default(), 0..zeros.len(), |i| {
        let rho = Complex64::new(0.5, zeros[i]);
        2.0 * ((rho * ly).exp() / rho).re
    }))
}

/// S₁(x, s) summed directly and from the explicit formula.
pub fn s1_direct_vs_zeros(
    x: f64,
    s: Complex64,
    t: f64,
    zeros: &ZeroTable,
    primes: &PrimeTable,
) -> Result<(Complex64, ExplicitS1)> {
    Ok((
        crate::primes::s1_direct(x, s, primes)?,
        s1_via_zeros(x, s, t, zeros)?,
    ))
}

//! The Riemann zeta function: real-axis values with derivatives of
//! `log(ζ(s)(s − 1))`, Euler–Maclaurin values off the axis, and Hardy's Z.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_finite, domain, Result};

const BORWEIN_TERMS: usize = 50;
const DIRICHLET_SWITCH: f64 = 10.0;
const DIRICHLET_TERMS: usize = 80;

/// `B_{2n}/(2n)!` for n = 1..=30.
const BERNOULLI_OVER_FACTORIAL: [f64; 30] = [
    8.3333333333333333e-2,
    -1.3888888888888889e-3,
    3.3068783068783069e-5,
    -8.2671957671957672e-7,
    2.0876756987868099e-8,
    -5.2841901386874932e-10,
    1.3382536530684679e-11,
    -3.3896802963225829e-13,
    8.5860620562778446e-15,
    -2.1748686985580619e-16,
    5.5090028283602295e-18,
    -1.3954464685812523e-19,
    3.5347070396294675e-21,
    -8.9535174270375469e-23,
    2.2679524523376831e-24,
    -5.7447906688722024e-26,
    1.4551724756148649e-27,
    -3.6859949406653102e-29,
    9.3367342570950447e-31,
    -2.3650224157006299e-32,
    5.9906717624821343e-34,
    -1.5174548844682903e-35,
    3.8437581254541882e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
    -6.2470767418207437e-42,
    1.5824030244644914e-43,
    -4.008273685948936e-45,
    1.0153075855569556e-46,
    -2.5718041582418717e-48,
];

/// `B_{2n}/(2n)!` for 1 ≤ n ≤ 30.
pub fn bernoulli_over_factorial(n: usize) -> Result<f64> {
    if !(1..=30).contains(&n) {
        return Err(domain(
            "bernoulli_over_factorial",
            format!("n must lie in 1..=30, got {n}"),
        ));
    }
    Ok(BERNOULLI_OVER_FACTORIAL[n - 1])
}

/// ζ(s) on the real axis together with two logarithmic derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaReal {
    pub s: f64,
    pub value: f64,
    /// ζ'/ζ(s)
    pub log_derivative: f64,
    /// d/ds log(ζ(s)(s − 1))
    pub pole_removed_log_derivative: f64,
}

fn borwein_weights() -> &'static [f64; BORWEIN_TERMS] {
    static WEIGHTS: OnceLock<[f64; BORWEIN_TERMS]> = OnceLock::new();
    WEIGHTS.get_or_init(|| {
        let n = BORWEIN_TERMS;
        let nf = n as f64;
        let mut d = [0.0; BORWEIN_TERMS + 1];
        let mut term = 1.0;
        let mut acc = 1.0;
        d[0] = acc;
        for i in 1..=n {
            let fi = i as f64;
            term *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
            acc += term;
            d[i] = acc;
        }
        let dn = d[n];
        let mut w = [0.0; BORWEIN_TERMS];
        for (k, wk) in w.iter_mut().enumerate() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            *wk = sign * (dn - d[k]) / dn;
        }
        w
    })
}

/// Binomial-recursion conversion of `f, f', …` into `log f, (log f)', …`.
fn log_derivatives(f: &[f64; 6]) -> [f64; 6] {
    let mut l = [0.0; 6];
    l[0] = f[0].ln();
    for n in 1..6 {
        let mut acc = f[n];
        for k in 0..=n.saturating_sub(2) {
            if n < 2 {
                break;
            }
            acc -= binomial(n - 1, k) * l[k + 1] * f[n - 1 - k];
        }
        l[n] = acc / f[0];
    }
    l
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut b = 1.0;
    for i in 0..k {
        b = b * (n - i) as f64 / (i + 1) as f64;
    }
    b
}

/// φ(w) = w/2 − log(sinh(w/2)/(w/2)) and its first five derivatives.
fn phi_derivatives(w: f64) -> [f64; 6] {
    let mut out = [0.0; 6];
    if w.abs() < 2.0 {
        out[0] = w / 2.0;
        out[1] = 0.5;
        for (i, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
            let p = 2 * (i + 1);
            // d^m/dw^m of −c w^p / p
            let mut coeff = -c / p as f64;
            for m in 0..6 {
                if m > p {
                    break;
                }
                out[m] += coeff * w.powi((p - m) as i32);
                coeff *= (p - m) as f64;
            }
        }
        return out;
    }
    // φ(w) = log(w/(1 − e^{−w})), φ' = 1/w − g with g = 1/expm1(w)
    out[0] = w.abs().ln() - (-(-w).exp_m1()).abs().ln();
    let mut g = [0.0; 5];
    g[0] = 1.0 / w.exp_m1();
    for k in 0..4 {
        let mut sq = 0.0;
        for j in 0..=k {
            sq += binomial(k, j) * g[j] * g[k - j];
        }
        g[k + 1] = -(g[k] + sq);
    }
    let mut fact = 1.0;
    for m in 1..6 {
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        out[m] = sign * fact / w.powi(m as i32) - g[m - 1];
        fact *= m as f64;
    }
    out
}

/// `log(ζ(s)(s − 1))` and its first five derivatives in s, for real s ≥ 0.
pub fn log_zeta_pole_removed(s: f64) -> Result<[f64; 6]> {
    check_finite("log_zeta_pole_removed", "s", s)?;
    if s < 0.0 {
        return Err(domain(
            "log_zeta_pole_removed",
            format!("s must be >= 0, got {s}"),
        ));
    }
    if s > DIRICHLET_SWITCH {
        let mut f = [0.0; 6];
        for n in 1..=DIRICHLET_TERMS {
            let ln = (n as f64).ln();
            let base = (-s * ln).exp();
            let mut pw = 1.0;
            for fm in f.iter_mut() {
                *fm += pw * base;
                pw *= -ln;
            }
        }
        let mut l = log_derivatives(&f);
        let d = s - 1.0;
        l[0] += d.ln();
        let mut fact = 1.0;
        for (m, lm) in l.iter_mut().enumerate().skip(1) {
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            *lm += sign * fact / d.powi(m as i32);
            fact *= m as f64;
        }
        return Ok(l);
    }
    // ζ(s)(s − 1) = η(s)·(s − 1)/(1 − 2^{1−s})
    let mut eta = [0.0; 6];
    for (k, w) in borwein_weights().iter().enumerate() {
        let ln = ((k + 1) as f64).ln();
        let base = w * (-s * ln).exp();
        let mut pw = 1.0;
        for em in eta.iter_mut() {
            *em += pw * base;
            pw *= -ln;
        }
    }
    let mut l = log_derivatives(&eta);
    let ln2 = std::f64::consts::LN_2;
    let phi = phi_derivatives((s - 1.0) * ln2);
    l[0] += phi[0] - ln2.ln();
    let mut scale = 1.0;
    for m in 1..6 {
        scale *= ln2;
        l[m] += scale * phi[m];
    }
    Ok(l)
}

/// ζ(s) for real s > 0, s ≠ 1.
pub fn zeta_real(s: f64) -> Result<ZetaReal> {
    check_finite("zeta_real", "s", s)?;
    if s <= 0.0 || s == 1.0 {
        return Err(domain(
            "zeta_real",
            format!("s must be positive and different from 1, got {s}"),
        ));
    }
    let l = log_zeta_pole_removed(s)?;
    let d = s - 1.0;
    Ok(ZetaReal {
        s,
        value: l[0].exp() / d,
        log_derivative: l[1] - 1.0 / d,
        pole_removed_log_derivative: l[1],
    })
}

/// Z(t) = ζ(t)(t − 1)/t on (0, 1].
pub fn z_fn(t: f64) -> Result<f64> {
    check_finite("z_fn", "t", t)?;
    if !(t > 0.0 && t <= 1.0) {
        return Err(domain("z_fn", format!("t must lie in (0, 1], got {t}")));
    }
    Ok(log_zeta_pole_removed(t)?[0].exp() / t)
}

/// ζ(s) and ζ'(s) for complex s ≠ 1 by Euler–Maclaurin summation.
pub fn zeta_complex(s: Complex64) -> Result<(Complex64, Complex64)> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(domain("zeta_complex", "s must be finite"));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(domain("zeta_complex", "pole at s = 1"));
    }
    if s.re < -10.0 {
        return Err(domain(
            "zeta_complex",
            format!("Re s must be >= -10, got {}", s.re),
        ));
    }
    let m_terms = 12;
    let n = (s.norm() + 20.0).ceil() as usize;
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for k in 1..n {
        let ln = (k as f64).ln();
        let t = (-s * ln).exp();
        value += t;
        deriv -= ln * t;
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp();
    let one = Complex64::new(1.0, 0.0);
    let head = n_pow * nf / (s - one);
    value += head + 0.5 * n_pow;
    deriv += -ln_n * head - head / (s - one) - 0.5 * ln_n * n_pow;
    // P_k = s(s+1)…(s+2k−2), tail term c_k P_k N^{−s−2k+1}
    let mut p = s;
    let mut dp = one;
    let mut power = n_pow / nf;
    for k in 1..=m_terms {
        let c = BERNOULLI_OVER_FACTORIAL[k - 1];
        value += c * p * power;
        deriv += c * (dp - ln_n * p) * power;
        for j in [2 * k - 1, 2 * k] {
            let factor = s + j as f64;
            dp = dp * factor + p;
            p *= factor;
        }
        power /= nf * nf;
    }
    Ok((value, deriv))
}

fn ln_gamma(z: Complex64) -> Complex64 {
    const SHIFT: usize = 8;
    let mut shift_log = Complex64::new(0.0, 0.0);
    for j in 0..SHIFT {
        shift_log += (z + j as f64).ln();
    }
    let w = z + SHIFT as f64;
    let mut series = Complex64::new(0.0, 0.0);
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut pw = inv;
    // B_{2k}/(2k(2k−1)) = c_k (2k − 2)!
    let mut fact = 1.0;
    for k in 1..=10 {
        let c = BERNOULLI_OVER_FACTORIAL[k - 1] * fact;
        series += c * pw;
        pw *= inv2;
        fact *= ((2 * k - 1) * (2 * k)) as f64;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift_log
}

/// θ(t) = arg Γ(1/4 + it/2) − (t/2) log π, with continuous argument.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    check_finite("riemann_siegel_theta", "t", t)?;
    Ok(ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * std::f64::consts::PI.ln())
}

/// Z(t) = e^{iθ(t)} ζ(1/2 + it), real for real t.
pub fn hardy_z(t: f64) -> Result<f64> {
    let theta = riemann_siegel_theta(t)?;
    let (z, _) = zeta_complex(Complex64::new(0.5, t))?;
    Ok((Complex64::from_polar(1.0, theta) * z).re)
}

//! Every calibrated slack used by the reports and the acceptance checks, kept
//! in one table so a run can print and override them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// δ in G(α)(1−δ) ≤ Ψ/(xρ(u)Z(σ)) ≤ G(σ)(1+δ).
    pub sandwich_delta: f64,
    /// Hildebrand–Tenenbaum relative error allowed as c/u.
    pub ht_rel_const: f64,
    /// Main formula relative error allowed as c/u.
    pub main_rel_const: f64,
    /// Agreement of the two main-formula forms.
    pub forms_rel: f64,
    pub phase_band_lo: f64,
    pub phase_band_hi: f64,
    /// Share of phase cells that must show D₁ < 0 < D₂.
    pub phase_min_fraction: f64,
    /// ε in the lower range limit (1+ε)log x.
    pub range_epsilon: f64,
    /// Pomerance cells with y ≥ (log x)^A are asserted.
    pub pomerance_exponent: f64,
    /// Pomerance cells with y ≤ c·e·log x are asserted.
    pub pomerance_small_factor: f64,
    /// c in |log G₁(σ₀, y)| ≤ c·y^{1/2−σ₀}(log y)².
    pub rh_logg1_const: f64,
    /// c in |(ψ(y)−y) + Σ y^ρ/ρ| ≤ c(log y)².
    pub psi_truncation_const: f64,
    pub decomposition_abs: f64,
    pub constant_l_abs: f64,
    pub lambda_band_lo: f64,
    pub lambda_band_hi: f64,
    /// Relative slack, in units of log log y/log y, on the size estimate for α.
    pub alpha_size_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            sandwich_delta: 0.5,
            ht_rel_const: 2.0,
            main_rel_const: 3.0,
            forms_rel: 1e-9,
            phase_band_lo: 0.05,
            phase_band_hi: 20.0,
            phase_min_fraction: 0.9,
            range_epsilon: 0.1,
            pomerance_exponent: 2.2,
            pomerance_small_factor: 0.9,
            rh_logg1_const: 10.0,
            psi_truncation_const: 20.0,
            decomposition_abs: 1e-10,
            constant_l_abs: 1e-5,
            lambda_band_lo: 0.8,
            lambda_band_hi: 1.25,
            alpha_size_slack: 1.0,
        }
    }
}

impl Tolerances {
    /// The table as name → value, in name order.
    pub fn entries(&self) -> BTreeMap<String, f64> {
        pairs(self).into_iter().collect()
    }

    /// Overrides one entry by name.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(domain(
                "tolerance",
                format!("{key} must be finite, got {value}"),
            ));
        }
        let slot = match key {
            "sandwich_delta" => &mut self.sandwich_delta,
            "ht_rel_const" => &mut self.ht_rel_const,
            "main_rel_const" => &mut self.main_rel_const,
            "forms_rel" => &mut self.forms_rel,
            "phase_band_lo" => &mut self.phase_band_lo,
            "phase_band_hi" => &mut self.phase_band_hi,
            "phase_min_fraction" => &mut self.phase_min_fraction,
            "range_epsilon" => &mut self.range_epsilon,
            "pomerance_exponent" => &mut self.pomerance_exponent,
            "pomerance_small_factor" => &mut self.pomerance_small_factor,
            "rh_logg1_const" => &mut self.rh_logg1_const,
            "psi_truncation_const" => &mut self.psi_truncation_const,
            "decomposition_abs" => &mut self.decomposition_abs,
            "constant_l_abs" => &mut self.constant_l_abs,
            "lambda_band_lo" => &mut self.lambda_band_lo,
            "lambda_band_hi" => &mut self.lambda_band_hi,
            "alpha_size_slack" => &mut self.alpha_size_slack,
            _ => return Err(domain("tolerance", format!("unknown key {key:?}"))),
        };
        *slot = value;
        Ok(())
    }

    /// Parses `KEY=VAL` and applies it.
    pub fn apply(&mut self, assignment: &str) -> Result<()> {
        let (k, v) = assignment
            .split_once('=')
            .ok_or_else(|| domain("tolerance", format!("expected KEY=VAL, got {assignment:?}")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| domain("tolerance", format!("value for {k} is not a number: {v:?}")))?;
        self.set(k.trim(), v)
    }
}

fn pairs(t: &Tolerances) -> Vec<(String, f64)> {
    vec![
        ("sandwich_delta".into(), t.sandwich_delta),
        ("ht_rel_const".into(), t.ht_rel_const),
        ("main_rel_const".into(), t.main_rel_const),
        ("forms_rel".into(), t.forms_rel),
        ("phase_band_lo".into(), t.phase_band_lo),
        ("phase_band_hi".into(), t.phase_band_hi),
        ("phase_min_fraction".into(), t.phase_min_fraction),
        ("range_epsilon".into(), t.range_epsilon),
        ("pomerance_exponent".into(), t.pomerance_exponent),
        ("pomerance_small_factor".into(), t.pomerance_small_factor),
        ("rh_logg1_const".into(), t.rh_logg1_const),
        ("psi_truncation_const".into(), t.psi_truncation_const),
        ("decomposition_abs".into(), t.decomposition_abs),
        ("constant_l_abs".into(), t.constant_l_abs),
        ("lambda_band_lo".into(), t.lambda_band_lo),
        ("lambda_band_hi".into(), t.lambda_band_hi),
        ("alpha_size_slack".into(), t.alpha_size_slack),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_is_settable() {
        let mut t = Tolerances::default();
        for (k, v) in Tolerances::default().entries() {
            t.set(&k, v * 2.0 + 1.0).unwrap();
        }
        for (k, v) in t.entries() {
            assert_eq!(v, Tolerances::default().entries()[&k] * 2.0 + 1.0);
        }
    }

    #[test]
    fn parse_assignments() {
        let mut t = Tolerances::default();
        t.apply("sandwich_delta=0.25").unwrap();
        assert_eq!(t.sandwich_delta, 0.25);
        t.apply(" ht_rel_const = 1e1 ").unwrap();
        assert_eq!(t.ht_rel_const, 10.0);
        assert!(t.apply("nope=1").is_err());
        assert!(t.apply("sandwich_delta").is_err());
        assert!(t.apply("sandwich_delta=abc").is_err());
        assert!(t.apply("sandwich_delta=inf").is_err());
    }
}

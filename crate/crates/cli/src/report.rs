//! The versioned report envelope and its JSON, CSV and text renderings.

use std::collections::{BTreeMap, BTreeSet};

use anyhow::Result;
use clap::ValueEnum;
use friable::approx::{ApproximationReport, ConstantL, PhaseRecord, PomeranceCell};
use friable::gfactor::{GFactorBreakdown, ZeroFormula};
use friable::saddle::SaddleContext;
use friable::specialfns::XiValue;
use friable::zeros::ZeroVerdict;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// The parsed command line, echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub u: Vec<f64>,
    pub s: Option<f64>,
    pub grid: Option<String>,
    pub zeros_file: Option<String>,
    #[serde(rename = "T")]
    pub t: Option<f64>,
    pub format: Format,
    pub budget: f64,
    pub bracket: Option<(f64, f64)>,
    /// The effective tolerance table after overrides.
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: RunConfig,
    pub body: Body,
    /// Invariant violations; the exit status is nonzero when this is nonempty.
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Count(CountBody),
    Rho {
        values: Vec<RhoRow>,
    },
    Xi {
        values: Vec<XiValue>,
    },
    Saddle(SaddleBody),
    Compare {
        cells: Vec<CompareCell>,
        skipped: Vec<Skipped>,
    },
    ScanPomerance {
        cells: Vec<PomeranceRow>,
    },
    Phase {
        cells: Vec<PhaseRecord>,
        skipped: Vec<Skipped>,
    },
    ConstantL(ConstantL),
    ZerosCheck(ZerosBody),
    GDecompose(GFactorBreakdown),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountBody {
    pub x: f64,
    pub y: f64,
    pub psi: u64,
    /// Count by sieving, when x is small enough.
    pub psi_sieve: Option<u64>,
    pub methods_agree: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoRow {
    pub u: f64,
    pub rho: f64,
    pub rho_prime: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaddleBody {
    pub context: SaddleContext,
    pub gap_g: f64,
    pub gap_f: f64,
    pub gap_model: f64,
    pub sharp_correction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareCell {
    pub report: ApproximationReport,
    /// log G₁(σ, y) from the zeros, when a zero file is given.
    pub g1_zeros: Option<ZeroFormula>,
    pub g1_exact: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PomeranceRow {
    pub cell: PomeranceCell,
    /// "large_y", "small_y" or "middle"
    pub band: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub x: f64,
    pub y: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZerosBody {
    pub count: usize,
    pub covered_height: f64,
    pub verdicts: Vec<ZeroVerdictRow>,
    pub explicit_formula: Vec<ExplicitRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroVerdictRow {
    pub gamma: f64,
    pub verdict: ZeroVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExplicitRow {
    pub y: f64,
    #[serde(rename = "T")]
    pub t: f64,
    /// ψ(y) − y
    pub exact: f64,
    /// −Σ y^ρ/ρ over |γ| ≤ T
    pub zero_sum: f64,
    pub gap: f64,
    /// c·(log y)²
    pub bound: f64,
}

impl Body {
    /// One JSON object per output row.
    fn rows(&self) -> Vec<Value> {
        fn each<T: Serialize>(items: &[T]) -> Vec<Value> {
            items
                .iter()
                .map(|i| serde_json::to_value(i).expect("serializable"))
                .collect()
        }
        match self {
            Body::Count(c) => each(std::slice::from_ref(c)),
            Body::Rho { values } => each(values),
            Body::Xi { values } => each(values),
            Body::Saddle(s) => each(std::slice::from_ref(s)),
            Body::Compare { cells, .. } => each(cells),
            Body::ScanPomerance { cells } => each(cells),
            Body::Phase { cells, .. } => each(cells),
            Body::ConstantL(l) => {
                let mut m = Map::new();
                m.insert("L".into(), l.value.into());
                m.insert("v_argmax".into(), l.argmax.into());
                vec![Value::Object(m)]
            }
            Body::ZerosCheck(z) => {
                let mut rows = each(&z.explicit_formula);
                rows.extend(each(&z.verdicts));
                rows
            }
            Body::GDecompose(g) => each(std::slice::from_ref(g)),
        }
    }

    fn skipped(&self) -> &[Skipped] {
        match self {
            Body::Compare { skipped, .. } | Body::Phase { skipped, .. } => skipped,
            _ => &[],
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, inner) in m {
                flatten(&key(k), inner, out);
            }
        }
        Value::Array(a) => {
            for (i, inner) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), inner, out);
            }
        }
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn flat_rows(body: &Body) -> Vec<Vec<(String, String)>> {
    body.rows()
        .iter()
        .map(|r| {
            let mut out = Vec::new();
            flatten("", r, &mut out);
            out
        })
        .collect()
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => self.render_csv(),
            Format::Text => Ok(self.render_text()),
        }
    }

    fn render_csv(&self) -> Result<String> {
        let rows = flat_rows(&self.body);
        let mut header: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for row in &rows {
            for (k, _) in row {
                if seen.insert(k.clone()) {
                    header.push(k.clone());
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header)?;
        for row in &rows {
            let m: BTreeMap<&str, &str> =
                row.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
            w.write_record(
                header
                    .iter()
                    .map(|h| m.get(h.as_str()).copied().unwrap_or("")),
            )?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn render_text(&self) -> String {
        let mut out = format!(
            "# friable {} schema_version={}\n",
            self.config.subcommand, self.schema_version
        );
        for row in flat_rows(&self.body) {
            let line: Vec<String> = row.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out += &line.join(" ");
            out.push('\n');
        }
        for s in self.body.skipped() {
            out += &format!("skipped x={} y={}: {}\n", s.x, s.y, s.reason);
        }
        for v in &self.violations {
            out += &format!("violation: {v}\n");
        }
        out
    }
}

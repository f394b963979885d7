//! Machine-readable verification records and their serialized artifacts.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::algebra::{AlgebraSpec, Family};
use crate::comparison::RadialProfile;
use crate::error::Result;
use crate::geometry::TableFit;

pub const SCHEMA_VERSION: u32 = 1;

/// How a recorded value relates to its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// pass when value < tolerance
    Residual,
    /// pass when value > tolerance
    LowerBound,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// the mathematical statement this check certifies
    pub statement: String,
    pub kind: CheckKind,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn residual(name: &str, statement: &str, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            statement: statement.into(),
            kind: CheckKind::Residual,
            value,
            tolerance,
            pass: value < tolerance,
        }
    }

    pub fn lower_bound(name: &str, statement: &str, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            statement: statement.into(),
            kind: CheckKind::LowerBound,
            value,
            tolerance: bound,
            pass: value > bound,
        }
    }

    /// a check that could not be evaluated: recorded as failed with the
    /// reason in the statement
    pub fn failed(name: &str, reason: &str) -> Self {
        Self {
            name: name.into(),
            statement: reason.into(),
            kind: CheckKind::Residual,
            value: f64::INFINITY,
            tolerance: 0.0,
            pass: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: String,
    pub checks: Vec<CheckRecord>,
    /// section-specific payload (fit data, growth report, assumptions)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<serde_json::Value>,
}

impl Section {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            checks: Vec::new(),
            notes: None,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Echo of the verified configuration, written into every report.
#[derive(Debug, Clone, Serialize)]
pub struct AlgebraEcho {
    pub family: String,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub xi: Vec<f64>,
}

impl AlgebraEcho {
    pub fn new(spec: &AlgebraSpec, xi: &[f64]) -> Self {
        let (p, q, m, n) = match spec.family {
            Family::So => (Some(spec.param1), Some(spec.param2), None, None),
            Family::Sp => (None, None, Some(spec.param1), Some(spec.param2)),
        };
        Self {
            family: match spec.family {
                Family::So => "so".into(),
                Family::Sp => "sp".into(),
            },
            label: spec.label(),
            p,
            q,
            m,
            n,
            xi: xi.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub version: String,
    pub algebra: AlgebraEcho,
    pub seed: u64,
    pub tol_scale: f64,
    pub sections: Vec<Section>,
    pub overall_pass: bool,
    /// wall-clock milliseconds per section; kept out of the serialized
    /// report so identical (config, seed) runs produce identical bytes
    #[serde(skip)]
    pub timings_ms: Vec<(String, f64)>,
}

impl VerificationReport {
    pub fn new(algebra: AlgebraEcho, seed: u64, tol_scale: f64) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION").into(),
            algebra,
            seed,
            tol_scale,
            sections: Vec::new(),
            overall_pass: true,
            timings_ms: Vec::new(),
        }
    }

    pub fn push_section(&mut self, section: Section, elapsed_ms: f64) {
        self.overall_pass &= section.all_pass();
        self.timings_ms.push((section.name.clone(), elapsed_ms));
        self.sections.push(section);
    }

    /// Deterministic serialized form: field order is declaration order and
    /// floats print in shortest round-trip notation.
    pub fn to_canonical_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(self.to_canonical_json().as_bytes())?;
        Ok(())
    }
}

fn format_sec_range(min: f64, max: f64) -> String {
    if (min - max).abs() < 1e-9 {
        format!("K = {min:.6}")
    } else {
        format!("{min:.6} <= K <= {max:.6}")
    }
}

/// Two CSV lines per space, computed and reference, with the reference
/// table's columns: Type, Sec. Curvature, Ricci Curvature.
pub fn table_csv(fits: &[(String, TableFit)]) -> String {
    let mut out = String::from("type,sec_curvature,ricci_curvature\n");
    for (label, fit) in fits {
        out.push_str(&format!(
            "{label} (computed),\"{}\",{:.6}\n",
            format_sec_range(fit.fitted_min_k, fit.fitted_max_k),
            fit.fitted_ricci
        ));
        out.push_str(&format!(
            "{label} (reference),\"{}\",{:.6}\n",
            format_sec_range(fit.row.sec_min, fit.row.sec_max),
            fit.row.ricci
        ));
    }
    out
}

/// One profile per file: columns r, lambda_1..lambda_{n-1}, laplacian,
/// a_1..a_{n-1}.
pub fn profile_csv(profile: &RadialProfile) -> String {
    let tangential = profile.lambda.len();
    let mut header = String::from("r");
    for i in 1..=tangential {
        header.push_str(&format!(",lambda_{i}"));
    }
    header.push_str(",laplacian");
    for i in 1..=tangential {
        header.push_str(&format!(",a_{i}"));
    }
    header.push('\n');
    let mut out = header;
    for (g, &r) in profile.grid.iter().enumerate() {
        out.push_str(&format!("{r:.12e}"));
        for row in &profile.lambda {
            out.push_str(&format!(",{:.12e}", row[g]));
        }
        out.push_str(&format!(",{:.12e}", profile.laplacian[g]));
        for row in &profile.a_s {
            out.push_str(&format!(",{:.12e}", row[g]));
        }
        out.push('\n');
    }
    out
}

/// The constructed-algebra document: basis matrices in row-major order at
/// full precision, index ranges, and residuals.
#[derive(Debug, Clone, Serialize)]
pub struct AlgebraDocument {
    pub schema: u32,
    pub algebra: AlgebraEcho,
    pub matrix_size: usize,
    pub dim: usize,
    pub n: usize,
    pub n1: usize,
    pub r: usize,
    pub r1: usize,
    pub r2: usize,
    pub closure_residual: f64,
    pub min_basis_singular_value: f64,
    pub structure_expansion_residual: f64,
    /// canonical basis, each matrix flattened row-major
    pub basis_row_major: Vec<Vec<f64>>,
}

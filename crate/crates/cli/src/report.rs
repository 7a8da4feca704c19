//! Report structures and their text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use gefstab::gef::GefResult;
use gefstab::matrix::Mat;
use gefstab::poly::Polynomial;
use gefstab::synth::{CausalityReport, ControllerResult, SharpEntry, Verification};
use serde::Serialize;
use serde_json::Value;

use crate::files::MatrixBlock;

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub index_set: String,
    /// `det(Δ_I T) = 0`; the factor is then the zero ideal.
    pub singular: bool,
    pub generators: Vec<String>,
}

pub fn factors(g: &GefResult) -> Vec<FactorReport> {
    g.entries
        .iter()
        .map(|e| FactorReport {
            index_set: e.index_set.to_string(),
            singular: e.singular,
            generators: e.generators.iter().map(ToString::to_string).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GefReport {
    pub ring: String,
    pub denominator: String,
    pub factors: Vec<FactorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaReport {
    pub index_set: String,
    pub lambda: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
}

pub fn lambdas(entries: &[SharpEntry], coeffs: Option<&[Polynomial]>) -> Vec<LambdaReport> {
    entries
        .iter()
        .enumerate()
        .map(|(k, e)| LambdaReport {
            index_set: e.index_set.to_string(),
            lambda: e.lambda.to_string(),
            a: coeffs.map(|c| c[k].to_string()),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<LambdaReport>>,
    /// Gröbner basis of the proper ideal generated by all factors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub omega: u32,
    pub terms: Vec<LambdaReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepairReport {
    pub index_set: String,
    pub r_prime: Vec<Vec<String>>,
    pub minor: String,
}

pub fn poly_rows(m: &Mat<Polynomial>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub verdict: &'static str,
    pub well_posed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_e_pc: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<String>>>,
    pub h_in_ring: Vec<Vec<bool>>,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transpose_duality: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub controller_causal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub den_z_nonsingular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

impl VerificationReport {
    pub fn ill_posed() -> Self {
        VerificationReport {
            verdict: "ill_posed",
            well_posed: false,
            det_e_pc: None,
            h: None,
            h_in_ring: Vec::new(),
            consistent: false,
            transpose_duality: None,
            controller_causal: None,
            den_z_nonsingular: None,
            timing_ms: None,
        }
    }

    pub fn from_parts(v: &Verification, size: usize, duality: Option<bool>, causal: Option<&CausalityReport>) -> Self {
        let h = v.h.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        VerificationReport {
            verdict: if v.stabilizing { "stabilizing" } else { "not_stabilizing" },
            well_posed: true,
            det_e_pc: Some(v.det_e_pc.to_string()),
            h: Some(h),
            h_in_ring: v.in_ring.chunks(size).map(<[bool]>::to_vec).collect(),
            consistent: v.consistent,
            transpose_duality: duality,
            controller_causal: causal.map(|c| c.controller_causal),
            den_z_nonsingular: causal.and_then(|c| c.den_z_nonsingular),
            timing_ms: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SynthReport {
    pub verdict: &'static str,
    pub ring: String,
    pub denominator: String,
    pub factors: Vec<FactorReport>,
    pub certificate: CertificateReport,
    pub repair: Option<RepairReport>,
    pub controller: MatrixBlock,
    pub den: Vec<Vec<String>>,
    pub num: Vec<Vec<String>>,
    pub verification: VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

impl SynthReport {
    pub fn new(ring: String, denominator: String, res: &ControllerResult, verification: VerificationReport) -> Self {
        SynthReport {
            verdict: "stabilizable",
            ring,
            denominator,
            factors: factors(&res.gef),
            certificate: CertificateReport {
                omega: res.certificate.omega,
                terms: lambdas(&res.certificate.entries, Some(&res.certificate.coefficients)),
            },
            repair: res.repair.as_ref().map(|r| RepairReport {
                index_set: r.index_set.to_string(),
                r_prime: poly_rows(&r.repair.r_prime),
                minor: r.repair.det.to_string(),
            }),
            controller: MatrixBlock::from_mat(&res.controller),
            den: poly_rows(&res.den),
            num: poly_rows(&res.num),
            verification,
            timing_ms: None,
        }
    }
}

/// Indented `key: value` rendering of a JSON value.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                } else if x.as_array().is_some_and(|a| a.iter().all(is_scalar)) {
                    let items: Vec<String> = x.as_array().unwrap().iter().map(scalar).collect();
                    let _ = writeln!(out, "{pad}{k}: [{}]", items.join(", "));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    write_value(out, x, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_scalar(x) {
                    let _ = writeln!(out, "{pad}- {}", scalar(x));
                } else if x.as_array().is_some_and(|a| a.iter().all(is_scalar)) {
                    let row: Vec<String> = x.as_array().unwrap().iter().map(scalar).collect();
                    let _ = writeln!(out, "{pad}- [{}]", row.join(", "));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    write_value(out, x, indent + 1);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

//! JSON reports emitted by the command-line interface.

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::analysis::{FiniteTypeVerdict, MastEntry, QuotientVerdict, SequenceReport, UniserialDimension, WitnessReason};
use crate::detour::{MastContext, SimpleSequence};
use crate::field::{render_rational, Rational};
use crate::linalg::Matrix;
use crate::presentation::AlgebraPresentation;
use crate::quiver::{Path, Quiver};
use crate::rep::FiberReport;
use crate::variety::{variable_names, Classification, VarietyModel};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    /// Hex SHA-256 of the input file.
    pub input_digest: String,
    pub result: Value,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: &[u8], result: Value, diagnostics: Vec<String>) -> Self {
        Report { command: command.into(), input_digest: digest(input), result, diagnostics }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn sequence_names(quiver: &Quiver, seq: &SimpleSequence) -> Vec<String> {
    seq.render(quiver)
}

fn matrix_json(m: &Matrix<Rational>) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).iter().map(render_rational).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Coordinates keyed by variable name.
pub fn point_json(quiver: &Quiver, ctx: &MastContext, point: &[Rational]) -> Value {
    let names = variable_names(quiver, ctx.variables());
    let map: serde_json::Map<String, Value> =
        names.into_iter().zip(point).map(|(n, v)| (n, json!(render_rational(v)))).collect();
    Value::Object(map)
}

pub fn presentation_json(p: &AlgebraPresentation) -> Value {
    let q = p.quiver();
    json!({
        "vertices": q.vertex_ids().map(|v| q.vertex_name(v).to_string()).collect::<Vec<_>>(),
        "arrows": q.arrows().iter().map(|a| json!({
            "name": a.name,
            "source": q.vertex_name(a.source),
            "target": q.vertex_name(a.target),
        })).collect::<Vec<_>>(),
        "loewy_bound": p.loewy_bound(),
        "relations": p.relations().iter().map(|r| r.render(q)).collect::<Vec<_>>(),
    })
}

pub fn masts_json(quiver: &Quiver, max_len: usize, masts: &[MastEntry]) -> Value {
    json!({
        "max_len": max_len,
        "masts": masts.iter().map(|m| json!({
            "path": quiver.render_path(&m.path),
            "length": m.path.len(),
            "sequence": m.path.vertex_word(quiver).iter().map(|v| quiver.vertex_name(*v)).collect::<Vec<_>>(),
            "status": m.status,
            "dimension": m.dimension,
            "possibly_empty": m.possibly_empty,
        })).collect::<Vec<_>>(),
    })
}

pub fn detours_json(quiver: &Quiver, ctx: &MastContext) -> Value {
    json!({
        "path": quiver.render_path(ctx.path()),
        "length": ctx.len(),
        "sequence": sequence_names(quiver, &ctx.sequence()),
        "t": ctx.t(),
        "mu": ctx.mu(),
        "cycle_lengths": ctx.cycle_lengths(),
        "detours": ctx.detours().iter().map(|d| json!({
            "arrow": quiver.arrow(d.arrow).name,
            "m": d.m,
            "index_set": d.index_set,
        })).collect::<Vec<_>>(),
        "variables": variable_names(quiver, ctx.variables()),
    })
}

pub fn variety_json(quiver: &Quiver, model: &VarietyModel) -> Value {
    let mut out = json!({
        "status": model.classification().status(),
        "polynomials": model.render_polynomials(quiver),
        "solved_variables": model.render_solved(quiver),
        "variables": model.variable_names(quiver),
    });
    if let Some(d) = model.dimension() {
        out["dimension"] = json!(d);
    }
    if let Classification::Residual { remaining, .. } = model.classification() {
        let names = model.variable_names(quiver);
        out["remaining"] = json!(remaining.iter().map(|p| crate::poly::render_poly(p, &names)).collect::<Vec<_>>());
    }
    out
}

pub fn fiber_json(report: &FiberReport) -> Value {
    json!({
        "t": report.t,
        "mu": report.mu,
        "rank_A": report.rank_a,
        "delta": report.delta,
        "dim_aut_u": report.dim_aut_u,
        "fiber_dim": report.fiber_dim,
        "A": matrix_json(&report.a),
    })
}

pub fn endo_json(basis: &[Matrix<Rational>], commutative: bool) -> Value {
    json!({
        "dimension": basis.len(),
        "commutative": commutative,
        "basis": basis.iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

pub fn uniserdim_json(quiver: &Quiver, report: &SequenceReport) -> Value {
    let value = match report.value {
        UniserialDimension::Value(v) => json!(v),
        UniserialDimension::Unknown => json!("unknown"),
    };
    json!({
        "sequence": sequence_names(quiver, &report.sequence),
        "value": value,
        "per_path": report.per_path.iter().map(|p| json!({
            "path": quiver.render_path(&p.path),
            "status": p.status,
            "dimension": p.dimension,
            "generic_fiber_dim": p.generic_fiber_dim,
            "contribution": p.contribution,
            "samples": p.samples,
        })).collect::<Vec<_>>(),
    })
}

pub fn quotient_json(quiver: &Quiver, presentation: &AlgebraPresentation, verdict: &QuotientVerdict) -> Value {
    match verdict {
        QuotientVerdict::Yes => json!({ "verdict": "yes" }),
        QuotientVerdict::No { path, point, rank_a } => {
            let ctx = MastContext::new(presentation.quiver(), path);
            json!({
                "verdict": "no",
                "witness": {
                    "path": quiver.render_path(path),
                    "point": point_json(quiver, &ctx, point),
                    "rank_A": rank_a,
                },
            })
        }
        QuotientVerdict::Unknown { path } => json!({
            "verdict": "unknown",
            "residual_path": quiver.render_path(path),
        }),
    }
}

fn render_optional_path(quiver: &Quiver, p: &Option<Path>) -> Value {
    p.as_ref().map_or(Value::Null, |p| json!(quiver.render_path(p)))
}

pub fn finite_type_json(quiver: &Quiver, verdict: &FiniteTypeVerdict) -> Value {
    json!({
        "verdict": verdict.verdict.as_str(),
        "max_len": verdict.max_len,
        "witnesses": verdict.witnesses.iter().map(|w| {
            let reason = match &w.reason {
                WitnessReason::DoubleArrow { arrows } => json!({
                    "kind": "double_arrow",
                    "arrows": arrows.iter().map(|a| quiver.arrow(*a).name.clone()).collect::<Vec<_>>(),
                }),
                WitnessReason::ConditionN { arrow } => json!({
                    "kind": "condition_n",
                    "arrow": quiver.arrow(*arrow).name,
                }),
                WitnessReason::ExcessDimension { dimension, generic_fiber_dim } => json!({
                    "kind": "excess_dimension",
                    "dimension": dimension,
                    "generic_fiber_dim": generic_fiber_dim,
                }),
                WitnessReason::Residual => json!({ "kind": "residual" }),
            };
            json!({
                "sequence": sequence_names(quiver, &w.sequence),
                "path": render_optional_path(quiver, &w.path),
                "reason": reason,
            })
        }).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_hex_sha256() {
        assert_eq!(digest(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn report_keys_are_stable() {
        let r = Report::new("parse", b"", json!({"b": 1, "a": 2}), vec![]);
        let text = r.to_json();
        let cmd = text.find("\"command\"").unwrap();
        let digest = text.find("\"input_digest\"").unwrap();
        let result = text.find("\"result\"").unwrap();
        assert!(cmd < digest && digest < result);
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert_eq!(r.to_json(), text);
    }
}

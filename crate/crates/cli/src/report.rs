//! JSON views of library results. Non-finite numbers become `null`.

use polarsparse::polytope::doubled_label;
use polarsparse::{BpResult, CertificateReport, PolarVertex, PursuitTrace, Vector};
use serde_json::{json, Value};

pub fn vector(v: &Vector) -> Value {
    json!(v.iter().copied().collect::<Vec<f64>>())
}

fn opt_vector(v: Option<&Vector>) -> Value {
    v.map_or(Value::Null, vector)
}

pub fn certificate(r: &CertificateReport) -> Value {
    json!({
        "fuchs": {
            "holds": r.fuchs.holds,
            "witness": opt_vector(r.fuchs.witness.as_ref()),
            "margin": r.fuchs.margin,
            "full_rank": r.fuchs.full_rank,
        },
        "fuchs_corollary": {
            "holds": r.fuchs_corollary.holds,
            "c_opt": vector(&r.fuchs_corollary.c_opt),
            "max_dot": r.fuchs_corollary.max_dot,
        },
        "erc": {
            "holds": r.erc.holds,
            "coefficient": r.erc.coefficient,
        },
        "spark": r.spark,
        "l0_unique": r.l0_unique,
        "l1_unique": r.l1_unique,
        "l1l0_equivalent": r.l1l0_equivalent,
    })
}

pub fn bp(method: &str, result: &BpResult, residual_norm: f64, converged: bool) -> Value {
    json!({
        "method": method,
        "coeffs": vector(&result.coeffs),
        "objective": result.objective,
        "residual_norm": residual_norm,
        "converged": converged,
        "steps_used": Value::Null,
        "dual_point": vector(&result.dual_point),
        "unique_hint": result.unique_hint,
        "trace": Value::Null,
    })
}

pub fn pursuit(method: &str, trace: &PursuitTrace, y_norm: f64) -> Value {
    let n = trace.final_coeffs.len();
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .enumerate()
        .map(|(k, s)| {
            json!({
                "step": k + 1,
                "atom": doubled_label(s.chosen_index, n),
                "correlation": s.correlation,
                "coeffs": vector(&s.coeffs_after),
                "residual": vector(&s.residual),
                "residual_norm": s.residual_norm,
            })
        })
        .collect();
    let residual_norm = trace.steps.last().map_or(y_norm, |s| s.residual_norm);
    json!({
        "method": method,
        "coeffs": vector(&trace.final_coeffs),
        "objective": trace.final_coeffs.lp_norm(1),
        "residual_norm": residual_norm,
        "converged": trace.converged,
        "steps_used": trace.steps_used,
        "dual_point": Value::Null,
        "unique_hint": Value::Null,
        "trace": steps,
    })
}

pub fn vertices(d: usize, n: usize, list: &[PolarVertex]) -> Value {
    let items: Vec<Value> = list
        .iter()
        .map(|v| {
            json!({
                "point": vector(&v.point),
                "active": v.active_labels(n).join(","),
            })
        })
        .collect();
    json!({
        "dimension": d,
        "atoms": n,
        "count": list.len(),
        "vertices": items,
    })
}

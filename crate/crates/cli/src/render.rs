//! JSON views of core results. Exact values are strings, floats are decimal
//! strings in shortest round-trip form.

use ceva_core::classic::{CevaReport, RatioProduct};
use ceva_core::format::format_rational;
use ceva_core::rank_search::{FaceCheck, SearchStatus, TransversalResult};
use ceva_core::simplex::{OracleOutcome, Witness};
use ceva_core::{IndexSet, Point, Rational, Report};
use serde_json::{json, Value};

pub fn q(v: &Rational) -> Value {
    Value::String(format_rational(v))
}

pub fn point(p: &Point) -> Value {
    p.coords().iter().map(q).collect()
}

pub fn opt_point(p: Option<&Point>) -> Value {
    p.map_or(Value::Null, point)
}

fn subset(s: &IndexSet) -> Value {
    json!(s.members())
}

fn float(x: f64) -> Value {
    Value::String(x.to_string())
}

pub fn ceva(rep: &CevaReport<Rational>) -> Value {
    let ratio = match &rep.ratio_product {
        Some(RatioProduct::Finite(v)) => q(v),
        Some(RatioProduct::Infinite) => json!("infinite"),
        None => Value::Null,
    };
    let feet = rep.cevians.feet();
    json!({
        "concurrent": rep.concurrent,
        "determinant": q(&rep.determinant),
        "ratio_product": ratio,
        "cevians": {"d": point(&feet[0]), "e": point(&feet[1]), "f": point(&feet[2])},
        "barycentric": opt_point(rep.barycentric.as_ref()),
        "common_point": opt_point(rep.common_point.as_ref()),
        "euclidean_point": rep.euclidean_point().map_or(Value::Null, |p| json!([q(&p[0]), q(&p[1])])),
    })
}

fn witness(w: &Witness<Rational>) -> Value {
    match w {
        Witness::Triple(t) => json!({
            "kind": "triple",
            "indices": [t.a, t.b, t.c],
            "product": q(&t.product),
        }),
        Witness::Minor(m) => json!({
            "kind": "minor",
            "rows": [subset(&m.rows.0), subset(&m.rows.1)],
            "cols": [m.cols.0, m.cols.1],
            "value": q(&m.value),
        }),
    }
}

pub fn concurrency(rep: &Report) -> Value {
    json!({
        "verdict": rep.verdict,
        "criterion": rep.criterion.to_string(),
        "common_point": opt_point(rep.common_point.as_ref()),
        "witnesses": rep.witnesses.iter().map(witness).collect::<Vec<_>>(),
    })
}

pub fn oracle(outcome: &OracleOutcome<Rational>, agrees: bool) -> Value {
    let (kind, detail) = match outcome {
        OracleOutcome::Empty => ("empty", Value::Null),
        OracleOutcome::Point(p) => ("point", point(p)),
        OracleOutcome::Subspace(s) => ("subspace", json!(s.proj_dim())),
    };
    json!({"outcome": kind, "detail": detail, "agrees": agrees})
}

pub fn transversal(res: &TransversalResult<f64>, checks: &[FaceCheck<f64>]) -> Value {
    let status = match res.status {
        SearchStatus::Found => "found",
        SearchStatus::NotFoundWithinBudget => "not-found-within-budget",
    };
    let basis = res.subspace.as_ref().map_or(Value::Null, |b| {
        b.iter()
            .map(|v| v.iter().map(|&x| float(x)).collect::<Value>())
            .collect()
    });
    let mut out = json!({
        "status": status,
        "residual": float(res.residual),
        "restart": res.restart,
        "basis": basis,
    });
    if res.status == SearchStatus::Found {
        out["verified"] = json!(checks.iter().all(|c| c.passes));
        out["checks"] = checks
            .iter()
            .map(
                |c| json!({"subset": subset(&c.face), "sigma": float(c.sigma), "passes": c.passes}),
            )
            .collect();
    } else {
        out["note"] =
            json!("no completion found within the budget; this is not a proof that none exists");
    }
    out
}

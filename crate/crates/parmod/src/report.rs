//! Report documents and the JSON shapes of library results. Keys are sorted
//! (serde_json maps are ordered) and rationals are canonical strings, so equal
//! inputs give byte-identical output.

use serde_json::{json, Map, Value};

use parmod_core::hecke::HeckeChain;
use parmod_core::invariants::{FlipData, SlopeGap};
use parmod_core::oracle::{Conclusion, RuleOutcome, Verdict};
use parmod_core::weightspace::Wall;
use parmod_core::{ParabolicData, Rational, SubType, Weights};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct ReportDocument {
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub citations: Vec<(String, String)>,
}

impl ReportDocument {
    pub fn new(command: &str, input: Value, result: Value) -> Self {
        ReportDocument {
            command: command.to_string(),
            input,
            result,
            citations: Vec::new(),
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "input": self.input,
            "result": self.result,
            "toolVersion": TOOL_VERSION,
            "citations": self
                .citations
                .iter()
                .map(|(id, text)| json!({"ruleId": id, "citation": text}))
                .collect::<Vec<_>>(),
        })
    }
}

pub fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
    s.push('\n');
    s
}

pub fn rational(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn ids(data: &ParabolicData) -> impl Iterator<Item = &str> {
    data.points().iter().map(|p| p.id.as_str())
}

/// Per-point lists keyed by point id.
pub fn per_point<T>(data: &ParabolicData, rows: &[T], f: impl Fn(&T) -> Value) -> Value {
    Value::Object(
        ids(data)
            .zip(rows)
            .map(|(id, row)| (id.to_string(), f(row)))
            .collect::<Map<_, _>>(),
    )
}

pub fn weights(data: &ParabolicData, w: &Weights) -> Value {
    per_point(data, &w.0, |a| Value::Array(a.iter().map(rational).collect()))
}

pub fn sub_type(data: &ParabolicData, xi: &SubType) -> Value {
    json!({
        "dPrime": xi.d_prime,
        "rPrime": xi.r_prime,
        "mPrime": per_point(data, &xi.m_prime, |m| json!(m)),
    })
}

pub fn wall(data: &ParabolicData, w: &Wall) -> Value {
    json!({
        "xi": sub_type(data, &w.xi),
        "coeffs": per_point(data, &w.coeffs, |c| json!(c)),
        "rhs": w.rhs,
        "feasible": w.feasible,
        "degenerate": w.degenerate,
        "contributors": w.contributors.iter().map(|x| sub_type(data, x)).collect::<Vec<_>>(),
    })
}

pub fn flip(f: &FlipData) -> Value {
    json!({
        "eAlpha": f.e_alpha,
        "eBeta": f.e_beta,
        "codimSigma": f.codim_sigma,
        "chiQ": f.chi_q,
        "chiQPrime": f.chi_q_prime,
    })
}

pub fn slope_gap(e: &SlopeGap) -> Value {
    match e {
        SlopeGap::Finite(x) => rational(x),
        SlopeGap::Unbounded => Value::String("unbounded".into()),
    }
}

pub fn verdict(v: &Verdict) -> Value {
    let trail: Vec<Value> = v
        .trail
        .iter()
        .map(|e| match &e.outcome {
            RuleOutcome::Fired(bindings) => json!({
                "rule": e.rule.to_string(),
                "citation": e.citation,
                "outcome": "fired",
                "bindings": bindings.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect::<Map<_, _>>(),
            }),
            RuleOutcome::Failed(reason) => json!({
                "rule": e.rule.to_string(),
                "citation": e.citation,
                "outcome": "failed",
                "reason": reason,
            }),
        })
        .collect();
    let mut out = json!({
        "conclusion": v.conclusion.name(),
        "trail": trail,
        "normalizedInput": {
            "degreeResidue": v.normalized.degree_residue,
            "mults": v.normalized.mults,
        },
    });
    if let Conclusion::StablyRational { level_bound } = v.conclusion {
        out["levelBound"] = json!(level_bound);
    }
    out
}

pub fn citations(v: &Verdict) -> Vec<(String, String)> {
    v.trail
        .iter()
        .map(|e| (e.rule.to_string(), e.citation.to_string()))
        .collect()
}

pub fn hecke(c: &HeckeChain) -> Value {
    let data = &c.shifted;
    json!({
        "startDegree": c.start.degree(),
        "endDegree": c.end.degree(),
        "startWeights": weights(&c.start, &c.start.weights().expect("chain weights")),
        "eta": rational(&c.eta),
        "shiftedWeights": weights(data, &data.weights().expect("chain weights")),
        "endWeights": weights(&c.end, &c.end.weights().expect("chain weights")),
        "startFiberDim": c.start_fiber_dim,
        "endFiberDim": c.end_fiber_dim,
        "crossings": c.crossings.iter().map(|x| json!({
            "xi": sub_type(data, &x.wall.xi),
            "rhs": x.wall.rhs,
            "coeffs": per_point(data, &x.wall.coeffs, |v| json!(v)),
            "t": rational(&x.t),
            "gamma": weights(data, &x.gamma),
            "flip": flip(&x.flip),
            "witness": weights(data, &x.witness),
        })).collect::<Vec<_>>(),
    })
}

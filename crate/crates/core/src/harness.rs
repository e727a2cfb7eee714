//! Experiment drivers behind the `pclab` command line: each function takes
//! plain parameters, runs one module operation and returns a serialisable
//! result that embeds its seed and budgets.

use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::{Field, Polynomial};
use crate::encoding::{CnfFormula, ColInstance};
use crate::error::{Error, Result};
use crate::framework::{self, ContextSummary, FrameworkContext, FrameworkReport};
use crate::graph::{self, Graph, VertexOrder};
use crate::ideal::{pc_degree_refutable, PcConfig};
use crate::resgame::{self, Prover};

/// Instances with at most this many variables get a refutation-degree sweep
/// in [`pipeline`].
pub const PIPELINE_SWEEP_MAX_VARIABLES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Gnp,
    Regular,
}

/// Samples `G(n, d/n)` or a uniform `d`-regular graph.
pub fn sample(model: Model, n: usize, d: f64, seed: u64) -> Result<(Graph, Value)> {
    let g = match model {
        Model::Gnp => {
            if n == 0 {
                Graph::empty(0)
            } else {
                graph::sample_gnp(n, (d / n as f64).clamp(0.0, 1.0), seed)?
            }
        }
        Model::Regular => {
            if d < 0.0 || d.fract() != 0.0 {
                return Err(Error::domain("regular graphs need an integer degree"));
            }
            graph::sample_regular(n, d as usize, seed)?
        }
    };
    let summary = json!({
        "model": model,
        "n": g.n(),
        "m": g.m(),
        "max_degree": g.max_degree(),
        "d": d,
        "seed": seed,
        "budgets": {"regular_attempts": graph::REGULAR_ATTEMPTS},
    });
    Ok((g, summary))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EncodeFormat {
    Dimacs,
    Json,
}

pub fn encode(g: &Graph, k: usize, field: Field, format: EncodeFormat) -> Result<String> {
    match format {
        EncodeFormat::Dimacs => Ok(CnfFormula::encode(g, k).to_dimacs()),
        EncodeFormat::Json => {
            let inst = ColInstance::encode(g, k, field)?;
            let axioms: Vec<Value> = inst
                .axioms
                .iter()
                .map(|a| json!({"kind": a.kind, "degree": a.degree(), "polynomial": a.polynomial}))
                .collect();
            Ok(serde_json::to_string_pretty(&json!({
                "n": g.n(),
                "k": k,
                "field": field,
                "variables": inst.num_variables(),
                "axioms": axioms,
            }))?)
        }
    }
}

pub fn sparsity(g: &Graph, ell: usize, epsilon: Rational64, budget: u64) -> Result<Value> {
    let rep = graph::check_sparsity_with_budget(g, ell, epsilon, budget)?;
    let mut v = serde_json::to_value(&rep)?;
    v["budgets"] = json!({"sets_examined": budget});
    Ok(v)
}

pub fn closure(g: &Graph, order: Option<&VertexOrder>, u: &BTreeSet<usize>) -> Result<Value> {
    if let Some(&v) = u.iter().find(|&&v| v >= g.n()) {
        return Err(Error::domain(format!("vertex {v} outside the graph")));
    }
    let identity = VertexOrder::identity(g.n());
    let ord = order.unwrap_or(&identity);
    if ord.n() != g.n() {
        return Err(Error::domain("vertex order and graph sizes differ"));
    }
    let trace = graph::closure_with_witness(g, ord, u);
    Ok(json!({
        "u": u,
        "closure": trace.closure,
        "size": trace.closure.len(),
        "witness": trace.witness,
        "steps": trace.steps,
        "resolution_closure": graph::resolution_closure(g, u),
    }))
}

pub fn tdelta(g: &Graph, delta: usize) -> Result<Value> {
    let t = graph::high_degree_cover(g, delta)?;
    let rest: BTreeSet<usize> = (0..g.n()).filter(|v| !t.contains(v)).collect();
    let residual = g.induced(&rest).0.max_degree();
    Ok(json!({"delta": delta, "t_delta": t, "size": t.len(), "residual_max_degree": residual}))
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeSweep {
    /// Smallest refutation degree found, if any.
    pub value: Option<usize>,
    /// Largest degree fully decided.
    pub searched_up_to: usize,
    pub stopped_by: Option<String>,
    pub monomial_cap: u64,
}

/// Tries degrees `1..=d_max` in turn, stopping at the first refutation or
/// the first resource error.
pub fn degree_sweep(axioms: &[Polynomial], field: Field, d_max: usize, config: &PcConfig) -> Result<DegreeSweep> {
    let mut searched = 0;
    for d in 1..=d_max {
        match pc_degree_refutable(axioms, d, field, config) {
            Ok(r) if r.refutable => {
                return Ok(DegreeSweep {
                    value: Some(d),
                    searched_up_to: d,
                    stopped_by: None,
                    monomial_cap: config.monomial_cap,
                })
            }
            Ok(_) => searched = d,
            Err(e @ Error::Resource { .. }) => {
                return Ok(DegreeSweep {
                    value: None,
                    searched_up_to: searched,
                    stopped_by: Some(e.to_string()),
                    monomial_cap: config.monomial_cap,
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(DegreeSweep {
        value: None,
        searched_up_to: searched,
        stopped_by: None,
        monomial_cap: config.monomial_cap,
    })
}

pub fn mindegree(g: &Graph, k: usize, field: Field, d_max: usize) -> Result<Value> {
    let inst = ColInstance::encode(g, k, field)?;
    let sweep = degree_sweep(&inst.polynomials(), field, d_max, &PcConfig::default())?;
    let value = match sweep.value {
        Some(d) => json!(d),
        None => json!("none"),
    };
    Ok(json!({"k": k, "field": field, "dmax": d_max, "value": value, "sweep": sweep}))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossCheck {
    /// All conditions green, unsatisfiable, and no refutation at degree ≤ D.
    Consistent,
    /// All conditions green yet a refutation of degree ≤ D exists.
    Violated,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub context: ContextSummary,
    pub predicted_degree: Option<String>,
    pub report: FrameworkReport,
    pub all_green: bool,
    pub colourable: Option<bool>,
    pub min_refutation_degree: Option<DegreeSweep>,
    pub cross_check: CrossCheck,
    pub ell: Option<usize>,
    pub budgets: Value,
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub k: usize,
    pub field: Field,
    pub delta: usize,
    pub degree: usize,
    pub samples: usize,
    pub seed: u64,
    /// Sparsity parameter used for the degree prediction, when known.
    pub ell: Option<usize>,
}

/// High-degree cover, residual colouring and context, the three groups of
/// checks, and on small instances the refutation-degree sweep compared
/// against the verdict.
pub fn pipeline(g: &Graph, cfg: &PipelineConfig) -> Result<PipelineReport> {
    let ctx = FrameworkContext::build(g, cfg.k, cfg.field, cfg.delta)?;
    let report = framework::verify(&ctx, cfg.degree, cfg.samples, cfg.seed)?;
    let all_green = report.all_green();
    let nvars = g.n() * cfg.k;
    let (colourable, sweep) = if nvars <= PIPELINE_SWEEP_MAX_VARIABLES {
        let colourable = graph::is_k_colourable(g, cfg.k)?.is_some();
        let polys = ctx.instance.polynomials();
        (Some(colourable), Some(degree_sweep(&polys, cfg.field, nvars.max(1), &PcConfig::default())?))
    } else {
        (None, None)
    };
    let cross_check = match (&sweep, colourable) {
        (Some(s), Some(false)) if all_green => match s.value {
            Some(d) if d <= cfg.degree => CrossCheck::Violated,
            Some(_) => CrossCheck::Consistent,
            None if s.searched_up_to >= cfg.degree => CrossCheck::Consistent,
            None => CrossCheck::NotApplicable,
        },
        _ => CrossCheck::NotApplicable,
    };
    let predicted_degree = match cfg.ell {
        Some(ell) => Some(
            framework::predict_degree(ell as u64, cfg.delta as u64, ctx.c.max(1) as u32, ctx.t_delta.len() as u64)?
                .to_string(),
        ),
        None => None,
    };
    Ok(PipelineReport {
        context: ctx.summary(),
        predicted_degree,
        report,
        all_green,
        colourable,
        min_refutation_degree: sweep,
        cross_check,
        ell: cfg.ell,
        budgets: json!({
            "residual_colouring_nodes": framework::RESIDUAL_COLOURING_NODES,
            "max_algebra_vertices": framework::MAX_ALGEBRA_VERTICES,
            "exhaustive_monomials": framework::EXHAUSTIVE_MONOMIALS.to_string(),
            "pc_monomial_cap": PcConfig::default().monomial_cap,
        }),
    })
}

pub fn resgame(
    g: &Graph,
    k: usize,
    w: usize,
    prover: Prover,
    rounds: u64,
    seed: u64,
    transcript: Option<&mut dyn std::io::Write>,
) -> Result<Value> {
    let outcome = resgame::play(g, k, w, prover, rounds, seed, transcript)?;
    let reverified = match &outcome {
        resgame::Outcome::ProverWon { stuck, .. } => Some(stuck.reverify(g, k)?),
        _ => None,
    };
    Ok(json!({
        "k": k,
        "width": w,
        "prover": prover,
        "rounds": rounds,
        "seed": seed,
        "outcome": outcome,
        "witness_reverified": reverified,
        "note": "width counts remembered vertices, not clause literals",
    }))
}

/// Flattens a JSON object, or an array of objects, into CSV with dotted
/// column names. Nested arrays are embedded as JSON text.
pub fn to_csv(value: &Value) -> String {
    fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    flatten(&key, x, out);
                }
            }
            other => {
                out.insert(prefix.to_string(), other.clone());
            }
        }
    }
    let rows: Vec<Map<String, Value>> = match value {
        Value::Array(items) => items
            .iter()
            .map(|x| {
                let mut m = Map::new();
                flatten("", x, &mut m);
                m
            })
            .collect(),
        other => {
            let mut m = Map::new();
            flatten("", other, &mut m);
            vec![m]
        }
    };
    let mut header: Vec<String> = Vec::new();
    for r in &rows {
        for k in r.keys() {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let cell = |v: Option<&Value>| -> String {
        let text = match v {
            None | Some(Value::Null) => String::new(),
            Some(Value::String(s)) => s.clone(),
            Some(other) => other.to_string(),
        };
        if text.contains([',', '"', '\n']) {
            format!("\"{}\"", text.replace('"', "\"\""))
        } else {
            text
        }
    };
    let mut out = header.iter().map(|h| cell(Some(&Value::String(h.clone())))).collect::<Vec<_>>().join(",");
    out.push('\n');
    for r in &rows {
        out.push_str(&header.iter().map(|h| cell(r.get(h))).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_examples() {
        let (g, s) = sample(Model::Gnp, 10, 0.0, 1).unwrap();
        assert_eq!((g.n(), g.m()), (10, 0));
        assert_eq!(s["seed"], 1);
        let (k4, _) = sample(Model::Regular, 4, 3.0, 7).unwrap();
        assert_eq!(k4, Graph::complete(4));
    }

    #[test]
    fn dimacs_header_for_triangle() {
        let text = encode(&Graph::cycle(3), 3, Field::gf2(), EncodeFormat::Dimacs).unwrap();
        assert!(text.starts_with("p cnf 9 21") || text.lines().any(|l| l == "p cnf 9 21"));
    }

    #[test]
    fn pipeline_on_complete_graph() {
        let cfg = PipelineConfig {
            k: 3,
            field: Field::gf2(),
            delta: 10,
            degree: 2,
            samples: 100,
            seed: 1,
            ell: None,
        };
        let rep = pipeline(&Graph::complete(4), &cfg).unwrap();
        assert_eq!(rep.report.satisfiability.status, framework::Status::Fail);
        assert!(rep.min_refutation_degree.unwrap().value.is_some());
        assert_eq!(rep.colourable, Some(false));
    }

    #[test]
    fn csv_flattening() {
        let v = json!({"a": 1, "b": {"c": "x,y", "d": [1, 2]}});
        assert_eq!(to_csv(&v), "a,b.c,b.d\n1,\"x,y\",\"[1,2]\"\n");
    }
}

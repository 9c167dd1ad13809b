//! Deterministic JSON/CSV report writing.
//!
//! Numbers are serialized with 17 significant digits through serde_json's
//! arbitrary-precision literals, so reruns with identical configuration
//! produce byte-identical files.

use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{Map, Value};

/// One traceable numeric component of a result row.
#[derive(Debug, Clone)]
pub struct Component {
    pub name: &'static str,
    pub value: f64,
    /// Producing operation, e.g. "bounds.cos_bound".
    pub op: &'static str,
    /// Declared tolerance of that operation.
    pub tol: f64,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub param: f64,
    pub value: f64,
    pub components: Vec<Component>,
    pub tolerances_met: bool,
}

#[derive(Debug, Clone)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
}

/// A float as a JSON number literal with 17 significant digits.
pub fn num(x: f64) -> Value {
    let lit = format!("{x:.16e}");
    let n: serde_json::Number = lit
        .parse()
        .unwrap_or_else(|_| panic!("non-finite value {x} in report"));
    Value::Number(n)
}

/// The same 17-significant-digit literal used in the CSV table.
pub fn csv_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Fixed CSV header: param, value, then one column per BoundReport component.
pub const CSV_HEADER: &str = "param,value,n,p,q,paramValue,innerProductRe,innerProductIm,uNormQ,prefactor,strongBound,weakProxy,truncationDegree,uInfRefinementResidual";

/// Names (in CSV_HEADER order) of the BoundReport components; rows from
/// subcommands that do not produce BoundReports leave these cells empty.
const BOUND_COLUMNS: [&str; 12] = [
    "n",
    "p",
    "q",
    "paramValue",
    "innerProductRe",
    "innerProductIm",
    "uNormQ",
    "prefactor",
    "strongBound",
    "weakProxy",
    "truncationDegree",
    "uInfRefinementResidual",
];

pub fn write_report(
    out: &Path,
    config: Value,
    mut rows: Vec<Row>,
    fit: Option<Fit>,
) -> Result<bool> {
    rows.sort_by(|a, b| a.param.total_cmp(&b.param));
    let all_met = rows.iter().all(|r| r.tolerances_met);

    let mut results = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut components = Map::new();
        for c in &row.components {
            let mut entry = Map::new();
            entry.insert("value".into(), num(c.value));
            entry.insert("op".into(), Value::String(c.op.to_string()));
            // an infinite tolerance means "reported, not gated"
            entry.insert(
                "tol".into(),
                if c.tol.is_finite() {
                    num(c.tol)
                } else {
                    Value::Null
                },
            );
            components.insert(c.name.to_string(), Value::Object(entry));
        }
        let mut obj = Map::new();
        obj.insert("param".into(), num(row.param));
        obj.insert("components".into(), Value::Object(components));
        obj.insert("value".into(), num(row.value));
        obj.insert("tolerancesMet".into(), Value::Bool(row.tolerances_met));
        results.push(Value::Object(obj));
    }

    let fit_value = match &fit {
        None => Value::Null,
        Some(f) => {
            let mut obj = Map::new();
            obj.insert("slope".into(), num(f.slope));
            obj.insert("intercept".into(), num(f.intercept));
            obj.insert("maxResidual".into(), num(f.max_residual));
            Value::Object(obj)
        }
    };

    let mut versions = Map::new();
    versions.insert(
        "sphmult".into(),
        Value::String(sphmult::VERSION.to_string()),
    );
    versions.insert(
        "sphmult-cli".into(),
        Value::String(env!("CARGO_PKG_VERSION").to_string()),
    );
    let mut provenance = Map::new();
    provenance.insert("moduleVersions".into(), Value::Object(versions));
    provenance.insert(
        "smoothingChoice".into(),
        Value::String(sphmult::symbols::SMOOTHING_CHOICE.to_string()),
    );

    let mut doc = Map::new();
    doc.insert("config".into(), config);
    doc.insert("results".into(), Value::Array(results));
    doc.insert("fit".into(), fit_value);
    doc.insert("provenance".into(), Value::Object(provenance));

    let json = serde_json::to_string_pretty(&Value::Object(doc))? + "\n";
    std::fs::write(out, json).with_context(|| format!("writing {}", out.display()))?;

    // CSV table alongside, same stem
    let csv_path = out.with_extension("csv");
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(&csv_num(row.param));
        csv.push(',');
        csv.push_str(&csv_num(row.value));
        for col in BOUND_COLUMNS {
            csv.push(',');
            if let Some(c) = row.components.iter().find(|c| c.name == col) {
                csv.push_str(&csv_num(c.value));
            }
        }
        csv.push('\n');
    }
    std::fs::write(&csv_path, csv).with_context(|| format!("writing {}", csv_path.display()))?;

    Ok(all_met)
}

/// BoundReport → the standard component list.
pub fn bound_components(rep: &sphmult::bounds::BoundReport, op: &'static str) -> Vec<Component> {
    let t = |name, value, tol| Component {
        name,
        value,
        op,
        tol,
    };
    let mut out = vec![
        t("n", rep.n as f64, 0.0),
        t("p", rep.p, 0.0),
        t("q", rep.q, 0.0),
        t("paramValue", rep.param_value, 0.0),
        t("innerProductRe", rep.inner_product.re, 1e-8),
        t("innerProductIm", rep.inner_product.im, 1e-8),
        t("uNormQ", rep.u_norm_q, 1e-9),
        t("prefactor", rep.prefactor, 1e-11),
        t("strongBound", rep.strong_bound, 1e-8),
        t("weakProxy", rep.weak_proxy, 1e-8),
        t("truncationDegree", rep.truncation_degree as f64, 0.0),
        t(
            "uInfRefinementResidual",
            rep.u_inf_refinement_residual,
            f64::INFINITY,
        ),
    ];
    if let Some(v) = rep.u_norm_q_kernel {
        out.push(t("uNormQKernel", v, 1e-9));
    }
    if let Some(c) = &rep.chain {
        out.push(t("chainWeightedSum", c.weighted_sum, 1e-9));
        out.push(t("chainUL2Sq", c.u_l2_sq, 1e-9));
        out.push(t("chainCoeffFloor", c.coeff_floor, 1e-11));
        out.push(t("chainLiteralRhs", c.literal_rhs, 1e-9));
    }
    if let Some(s) = &rep.smoothing {
        out.push(t("smoothingDelta", s.delta, 0.0));
        out.push(t(
            "innerProductSmoothedRe",
            s.inner_product_smoothed.re,
            1e-8,
        ));
        out.push(t(
            "innerProductSmoothedIm",
            s.inner_product_smoothed.im,
            1e-8,
        ));
        out.push(t("smoothingPerturbationBound", s.perturbation_bound, 1e-8));
    }
    out
}

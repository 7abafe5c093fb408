//! The `ehresmann` command: inspect a connection on a product bundle chart —
//! curvature, per-generator torque, principality, and the Bianchi identity.
//!
//! A connection spec file is a JSON document:
//!
//! ```json
//! {
//!   "base": ["x1", "x2"],
//!   "fiber": ["u"],
//!   "A": [["0", "x1"]]
//! }
//! ```
//!
//! `A` is the horizontal-lift matrix: row p, column i holds the ∂/∂u^p
//! component of the lift of ∂/∂x^i, as an expression over all bundle
//! coordinates (base and fiber).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use obsplit_core::ehresmann::{BundleChart, ConnectionField};
use obsplit_core::ScalarField;

use crate::error::{CliError, Result};
use crate::parser::parse_expression;
use crate::render::{render_scalar, vector_form_components};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSpecFile {
    pub base: Vec<String>,
    pub fiber: Vec<String>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
}

type VectorFormMap = BTreeMap<String, BTreeMap<String, String>>;

#[derive(Debug, Serialize)]
pub struct EhresmannReport {
    pub source: String,
    pub base: Vec<String>,
    pub fiber: Vec<String>,
    /// The horizontal matrix A, canonically rendered.
    pub a: Vec<Vec<String>>,
    /// Curvature as output-component → basis-label → scalar.
    pub curvature: VectorFormMap,
    /// Torque of each fiber-translation generator, keyed by fiber coordinate.
    pub torque: BTreeMap<String, VectorFormMap>,
    /// The connection is invariant under fiber translations.
    pub principal: bool,
    pub bianchi: bool,
    pub verdict: String,
}

impl EhresmannReport {
    pub fn pass(&self) -> bool {
        self.bianchi
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("connection report ({})\n", self.source));
        out.push_str(&format!(
            "base: {}  fiber: {}\n",
            self.base.join(" "),
            self.fiber.join(" ")
        ));
        for (p, row) in self.a.iter().enumerate() {
            out.push_str(&format!("A[{}]: [{}]\n", self.fiber[p], row.join(", ")));
        }
        out.push_str("curvature:\n");
        render_vector_form_map(&mut out, &self.curvature, 1);
        out.push_str("torque:\n");
        for (name, map) in &self.torque {
            if map.is_empty() {
                out.push_str(&format!("  along {name}: 0\n"));
            } else {
                out.push_str(&format!("  along {name}:\n"));
                render_vector_form_map(&mut out, map, 2);
            }
        }
        out.push_str(&format!(
            "principal: {}  bianchi: {}\n",
            self.principal, self.bianchi
        ));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }
}

fn render_vector_form_map(out: &mut String, map: &VectorFormMap, indent: usize) {
    let pad = "  ".repeat(indent);
    if map.is_empty() {
        out.push_str(&pad);
        out.push_str("0\n");
        return;
    }
    for (component, forms) in map {
        let rendered: Vec<String> = forms
            .iter()
            .map(|(basis, c)| format!("({c}) {basis}"))
            .collect();
        out.push_str(&format!("{pad}d/d{component}: {}\n", rendered.join(" + ")));
    }
}

fn report_for(source: &str, bundle: &BundleChart, conn: &ConnectionField) -> EhresmannReport {
    let torque = conn
        .torque_general()
        .iter()
        .enumerate()
        .map(|(p, t)| {
            let name = bundle
                .chart()
                .coordinate_name(bundle.base_dim() + p)
                .to_string();
            (name, vector_form_components(t))
        })
        .collect();
    let bianchi = conn.bianchi_check();
    EhresmannReport {
        source: source.to_string(),
        base: (0..bundle.base_dim())
            .map(|i| bundle.chart().coordinate_name(i).to_string())
            .collect(),
        fiber: (0..bundle.fiber_dim())
            .map(|p| {
                bundle
                    .chart()
                    .coordinate_name(bundle.base_dim() + p)
                    .to_string()
            })
            .collect(),
        a: (0..bundle.fiber_dim())
            .map(|p| {
                (0..bundle.base_dim())
                    .map(|i| render_scalar(conn.horizontal_entry(p, i)))
                    .collect()
            })
            .collect(),
        curvature: vector_form_components(&conn.curvature_omega()),
        torque,
        principal: conn.is_principal(),
        bianchi,
        verdict: if bianchi { "PASS" } else { "FAIL" }.to_string(),
    }
}

/// The three built-in demos on base (x1, x2) with fiber u.
pub fn run_demo(name: &str) -> Result<EhresmannReport> {
    let bundle = BundleChart::new(&["x1", "x2"], &["u"]).unwrap();
    let vars = bundle.chart().vars().clone();
    let zero = ScalarField::zero(&vars);
    let a = match name {
        "product" => vec![vec![zero.clone(), zero]],
        "u1-like" => vec![vec![zero, ScalarField::var(&vars, "x1").unwrap()]],
        "non-principal" => vec![vec![ScalarField::var(&vars, "u").unwrap(), zero]],
        other => return Err(CliError::UnknownDemo(other.to_string())),
    };
    let conn = ConnectionField::from_horizontal(&bundle, a);
    Ok(report_for(&format!("demo {name}"), &bundle, &conn))
}

/// A connection read from a spec file.
pub fn run_spec(file: &BundleSpecFile) -> Result<EhresmannReport> {
    let bundle = BundleChart::new(&file.base, &file.fiber).map_err(|e| CliError::Field {
        path: "base/fiber".to_string(),
        message: e.to_string(),
    })?;
    if file.a.len() != bundle.fiber_dim() {
        return Err(CliError::Field {
            path: "A".to_string(),
            message: format!(
                "expected {} rows (one per fiber coordinate), got {}",
                bundle.fiber_dim(),
                file.a.len()
            ),
        });
    }
    let mut a = Vec::new();
    for (p, row) in file.a.iter().enumerate() {
        if row.len() != bundle.base_dim() {
            return Err(CliError::Field {
                path: format!("A[{p}]"),
                message: format!(
                    "expected {} columns (one per base coordinate), got {}",
                    bundle.base_dim(),
                    row.len()
                ),
            });
        }
        let mut parsed = Vec::new();
        for (i, src) in row.iter().enumerate() {
            parsed.push(
                parse_expression(src, bundle.chart())
                    .map_err(|e| e.at_field(&format!("A[{p}][{i}]")))?,
            );
        }
        a.push(parsed);
    }
    let conn = ConnectionField::from_horizontal(&bundle, a);
    Ok(report_for("spec file", &bundle, &conn))
}

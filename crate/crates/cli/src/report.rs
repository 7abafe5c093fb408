//! Report document for the `split` command: a structured mirror of the
//! engine's split data with every form rendered canonically, plus a
//! plain-text rendering. Identical inputs produce byte-identical reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use obsplit_core::maxwell::maxwell_residuals;

use crate::render::{form_components, vector_components};
use crate::scenario::BuiltScenario;

type FormMap = BTreeMap<String, String>;

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub chart: Vec<String>,
    pub observer: ObserverReport,
    pub fields: FieldsReport,
    pub sources: SourcesReport,
    pub residuals: ResidualsReport,
    /// "PASS" iff every applicable residual is exactly zero.
    pub verdict: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ObserverReport {
    /// Components of the time direction T.
    pub t: Vec<String>,
    /// The coframe τ.
    pub tau: FormMap,
    /// τ∧dτ = 0 (the spatial distribution is integrable).
    pub holonomic: bool,
    /// The torque form 𝓛_T τ vanishes.
    pub torque_free: bool,
    /// τ is the metric dual of T, making the constitutive relations apply.
    pub metric: bool,
    /// Torque form 𝓛_T τ.
    pub torque_form: FormMap,
    /// Curvature form −i_T(τ∧dτ).
    pub curvature_form: FormMap,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FieldsReport {
    pub e: FormMap,
    pub b: FormMap,
    pub h: FormMap,
    pub d: FormMap,
    pub j: FormMap,
    pub rho: FormMap,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<FormMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a3: Option<FormMap>,
}

/// The apparent source terms contributed by the observer geometry.
#[derive(Debug, Serialize, Deserialize)]
pub struct SourcesReport {
    pub torque_f: FormMap,
    pub curvature_f: FormMap,
    pub torque_g: FormMap,
    pub curvature_g: FormMap,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ResidualsReport {
    pub faraday: FormMap,
    pub magnetic_gauss: FormMap,
    pub ampere: FormMap,
    pub gauss: FormMap,
    pub continuity: FormMap,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential_e: Option<FormMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential_b: Option<FormMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constitutive_e_d: Option<FormMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constitutive_h_b: Option<FormMap>,
}

/// Build the report document; the boolean is the PASS verdict.
pub fn build_report(built: &BuiltScenario) -> (ReportFile, bool) {
    let scenario = &built.scenario;
    let observer = scenario.observer();
    let split = maxwell_residuals(scenario);

    let mut pass =
        split.field_residuals().iter().all(|r| r.is_zero()) && split.residual_continuity.is_zero();
    if let Some((res_e, res_b)) = &split.residual_potential {
        pass &= res_e.is_zero() && res_b.is_zero();
    }
    let include_constitutive = split.constitutive_applicable && built.options.check_constitutive;
    if include_constitutive {
        pass &= split.residual_constitutive.0.is_zero() && split.residual_constitutive.1.is_zero();
    }

    let report = ReportFile {
        chart: (0..4)
            .map(|i| scenario.minkowski().chart().coordinate_name(i).to_string())
            .collect(),
        observer: ObserverReport {
            t: vector_components(observer.t()),
            tau: form_components(observer.tau()),
            holonomic: split.is_holonomic,
            torque_free: split.is_torque_free,
            metric: split.constitutive_applicable,
            torque_form: form_components(&observer.torque_form()),
            curvature_form: form_components(&observer.curvature_form()),
        },
        fields: FieldsReport {
            e: form_components(&split.e),
            b: form_components(&split.b),
            h: form_components(&split.h),
            d: form_components(&split.d),
            j: form_components(&split.j),
            rho: form_components(&split.rho),
            phi: split.phi.as_ref().map(form_components),
            a3: split.a3.as_ref().map(form_components),
        },
        sources: SourcesReport {
            torque_f: form_components(&split.torque_term_f),
            curvature_f: form_components(&split.curv_term_f),
            torque_g: form_components(&split.torque_term_g),
            curvature_g: form_components(&split.curv_term_g),
        },
        residuals: ResidualsReport {
            faraday: form_components(&split.residual_faraday),
            magnetic_gauss: form_components(&split.residual_magnetic_gauss),
            ampere: form_components(&split.residual_ampere),
            gauss: form_components(&split.residual_gauss),
            continuity: form_components(&split.residual_continuity),
            potential_e: split
                .residual_potential
                .as_ref()
                .map(|(e, _)| form_components(e)),
            potential_b: split
                .residual_potential
                .as_ref()
                .map(|(_, b)| form_components(b)),
            constitutive_e_d: include_constitutive
                .then(|| form_components(&split.residual_constitutive.0)),
            constitutive_h_b: include_constitutive
                .then(|| form_components(&split.residual_constitutive.1)),
        },
        verdict: if pass { "PASS" } else { "FAIL" }.to_string(),
    };
    (report, pass)
}

fn write_form_line(out: &mut String, label: &str, comps: &FormMap) {
    out.push_str("  ");
    out.push_str(label);
    out.push_str(": ");
    if comps.is_empty() {
        out.push('0');
    } else {
        let rendered: Vec<String> = comps
            .iter()
            .map(|(basis, c)| {
                if basis == "1" {
                    c.clone()
                } else {
                    format!("({c}) {basis}")
                }
            })
            .collect();
        out.push_str(&rendered.join(" + "));
    }
    out.push('\n');
}

impl ReportFile {
    /// Deterministic plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("observer split report\n");
        out.push_str(&format!("chart: {}\n", self.chart.join(" ")));
        out.push_str(&format!("T: [{}]\n", self.observer.t.join(", ")));
        write_form_line(&mut out, "tau", &self.observer.tau);
        out.push_str(&format!(
            "holonomic: {}  torque-free: {}  metric: {}\n",
            self.observer.holonomic, self.observer.torque_free, self.observer.metric
        ));
        write_form_line(&mut out, "torque form", &self.observer.torque_form);
        write_form_line(&mut out, "curvature form", &self.observer.curvature_form);

        out.push_str("fields:\n");
        write_form_line(&mut out, "E", &self.fields.e);
        write_form_line(&mut out, "B", &self.fields.b);
        write_form_line(&mut out, "H", &self.fields.h);
        write_form_line(&mut out, "D", &self.fields.d);
        write_form_line(&mut out, "J", &self.fields.j);
        write_form_line(&mut out, "rho", &self.fields.rho);
        if let Some(phi) = &self.fields.phi {
            write_form_line(&mut out, "phi", phi);
        }
        if let Some(a3) = &self.fields.a3 {
            write_form_line(&mut out, "A3", a3);
        }

        out.push_str("apparent sources:\n");
        write_form_line(&mut out, "torque (faraday line)", &self.sources.torque_f);
        write_form_line(
            &mut out,
            "curvature (magnetic line)",
            &self.sources.curvature_f,
        );
        write_form_line(&mut out, "torque (ampere line)", &self.sources.torque_g);
        write_form_line(
            &mut out,
            "curvature (gauss line)",
            &self.sources.curvature_g,
        );

        out.push_str("residuals:\n");
        write_form_line(&mut out, "faraday", &self.residuals.faraday);
        write_form_line(&mut out, "magnetic gauss", &self.residuals.magnetic_gauss);
        write_form_line(&mut out, "ampere", &self.residuals.ampere);
        write_form_line(&mut out, "gauss", &self.residuals.gauss);
        write_form_line(&mut out, "continuity", &self.residuals.continuity);
        if let Some(res) = &self.residuals.potential_e {
            write_form_line(&mut out, "potential (E)", res);
        }
        if let Some(res) = &self.residuals.potential_b {
            write_form_line(&mut out, "potential (B)", res);
        }
        if let Some(res) = &self.residuals.constitutive_e_d {
            write_form_line(&mut out, "constitutive (*E - D)", res);
        }
        if let Some(res) = &self.residuals.constitutive_h_b {
            write_form_line(&mut out, "constitutive (*H - B)", res);
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }
}

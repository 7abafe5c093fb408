//! Identity suites for the `check` command. Each suite verifies a family of
//! operator identities for the observer declared in a scenario file, on a
//! fixed deterministic battery of forms (the full basis of every degree plus
//! polynomial-coefficient samples). Reports render the offending residual on
//! FAIL.

use serde::Serialize;

use obsplit_core::{
    d, fn_bracket_endo, fn_bracket_vf, form_basis, lie_derivative, maxwell, KForm, Minkowski,
    Observer, Polynomial, ScalarField, VectorForm,
};

use crate::error::{CliError, Result};
use crate::render::{render_form, render_vector_form};
use crate::scenario::ScenarioFile;

pub const SUITES: [&str; 5] = [
    "decomposition",
    "temperley-lieb",
    "prop21",
    "prop47",
    "lemma42",
];

#[derive(Debug, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub pass: bool,
    /// Rendered residual of the first counterexample, on FAIL.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub identities: Vec<IdentityResult>,
    pub verdict: String,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.identities.iter().all(|i| i.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("check suite: {}\n", self.suite));
        for identity in &self.identities {
            out.push_str(&format!(
                "  {}: {}\n",
                identity.name,
                if identity.pass { "PASS" } else { "FAIL" }
            ));
            if let Some(residual) = &identity.residual {
                out.push_str(&format!("    residual: {residual}\n"));
            }
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

/// The deterministic battery for one degree: every basis form plus one form
/// with distinct polynomial coefficients in every slot.
fn battery(mink: &Minkowski, degree: usize) -> Vec<KForm> {
    let chart = mink.chart();
    let vars = chart.vars();
    let mut forms = form_basis(chart, degree);
    let mut poly = KForm::zero(chart, degree);
    for (slot, basis_form) in form_basis(chart, degree).iter().enumerate() {
        let (key, _) = basis_form
            .components()
            .next()
            .expect("basis form has one component");
        // t·x plus a slot-dependent coordinate keeps the components distinct.
        let coeff = &(&Polynomial::var_idx(vars, 0) * &Polynomial::var_idx(vars, 1))
            + &Polynomial::var_idx(vars, slot % 4).scale(&obsplit_core::rat_int(1 + slot as i64));
        poly.add_component(key, ScalarField::from_poly(coeff));
    }
    forms.push(poly);
    forms
}

fn identity(name: String, failure: Option<String>) -> IdentityResult {
    IdentityResult {
        name,
        pass: failure.is_none(),
        residual: failure,
    }
}

/// First nonzero residual of `check` applied to the battery of `degree`.
fn first_failure(
    mink: &Minkowski,
    degree: usize,
    check: impl Fn(&KForm) -> KForm,
) -> Option<String> {
    for w in battery(mink, degree) {
        let residual = check(&w);
        if !residual.is_zero() {
            return Some(format!(
                "on {}: {}",
                render_form(&w),
                render_form(&residual)
            ));
        }
    }
    None
}

fn decomposition_suite(mink: &Minkowski, obs: &Observer) -> Vec<IdentityResult> {
    (0..=4)
        .map(|degree| {
            let failure = first_failure(mink, degree, |w| {
                let split =
                    &obs.tau().wedge(&w.interior(obs.t())) + &obs.tau().wedge(w).interior(obs.t());
                &split - w
            });
            identity(
                format!("e_tau i_T + i_T e_tau = id (degree {degree})"),
                failure,
            )
        })
        .collect()
}

fn temperley_lieb_suite(mink: &Minkowski, obs: &Observer) -> Vec<IdentityResult> {
    let mut results = Vec::new();
    for degree in 0..=4 {
        let failure = first_failure(mink, degree, |w| {
            &obs.tau().wedge(&w.interior(obs.t())).interior(obs.t()) - &w.interior(obs.t())
        });
        results.push(identity(
            format!("i_T e_tau i_T = i_T (degree {degree})"),
            failure,
        ));
        let failure = first_failure(mink, degree, |w| {
            &obs.tau().wedge(&obs.tau().wedge(w).interior(obs.t())) - &obs.tau().wedge(w)
        });
        results.push(identity(
            format!("e_tau i_T e_tau = e_tau (degree {degree})"),
            failure,
        ));
    }
    results
}

fn prop21_suite(obs: &Observer) -> Vec<IdentityResult> {
    let kappa = obs.kappa();

    let torque_diff = &fn_bracket_vf(obs.t(), &kappa)
        - &VectorForm::homogeneous(obs.t(), &lie_derivative(obs.t(), obs.tau()));
    let torque_failure = (!torque_diff.is_zero()).then(|| render_vector_form(&torque_diff));

    let curv_form = -&obs.tau().wedge(&d(obs.tau())).interior(obs.t());
    let curv_closed =
        VectorForm::homogeneous(obs.t(), &curv_form.scale_rat(&obsplit_core::rat_int(2)));
    let curv_diff = &fn_bracket_endo(&kappa, &kappa) - &curv_closed;
    let curv_failure = (!curv_diff.is_zero()).then(|| render_vector_form(&curv_diff));

    vec![
        identity("[T, kappa] = (L_T tau) (x) T".to_string(), torque_failure),
        identity(
            "[kappa, kappa] = -2 i_T(tau ^ d tau) (x) T".to_string(),
            curv_failure,
        ),
    ]
}

fn prop47_suite(mink: &Minkowski, obs: &Observer) -> Vec<IdentityResult> {
    let mut results = Vec::new();
    for degree in 0..=4 {
        let sign = if degree % 2 == 0 { 1 } else { -1 };
        let failure = first_failure(mink, degree, |w| {
            let lhs = mink.hodge(w).interior(obs.t());
            let rhs = mink
                .hodge(&obs.tau().wedge(w))
                .scale_rat(&obsplit_core::rat_int(sign));
            &lhs - &rhs
        });
        results.push(identity(
            format!("i_T * = (-1)^k * e_tau (degree {degree})"),
            failure,
        ));
        let failure = first_failure(mink, degree, |w| {
            let lhs = obs.tau().wedge(&mink.hodge(w));
            let rhs = mink
                .hodge(&w.interior(obs.t()))
                .scale_rat(&obsplit_core::rat_int(-sign));
            &lhs - &rhs
        });
        results.push(identity(
            format!("e_tau * = (-1)^(k+1) * i_T (degree {degree})"),
            failure,
        ));
    }
    results
}

fn lemma42_suite(mink: &Minkowski, obs: &Observer) -> Vec<IdentityResult> {
    let mut results = Vec::new();
    for degree in 0..=3 {
        let failure = first_failure(mink, degree, |w| {
            let (spatial, _) = maxwell::split_equation(obs, w, &d(w));
            spatial
        });
        results.push(identity(
            format!("spatial split of d (degree {degree})"),
            failure,
        ));
        let failure = first_failure(mink, degree, |w| {
            let (_, temporal) = maxwell::split_equation(obs, w, &d(w));
            temporal
        });
        results.push(identity(
            format!("temporal split of d (degree {degree})"),
            failure,
        ));
    }
    results
}

/// Run one suite (or `all`) against the scenario's observer.
pub fn run_check(file: &ScenarioFile, suite: &str) -> Result<CheckReport> {
    let mink = file.minkowski()?;
    let obs = file.observer(&mink)?;

    let identities = match suite {
        "decomposition" => decomposition_suite(&mink, &obs),
        "temperley-lieb" => temperley_lieb_suite(&mink, &obs),
        "prop21" => prop21_suite(&obs),
        "prop47" => prop47_suite(&mink, &obs),
        "lemma42" => lemma42_suite(&mink, &obs),
        "all" => {
            let mut all = decomposition_suite(&mink, &obs);
            all.extend(temperley_lieb_suite(&mink, &obs));
            all.extend(prop21_suite(&obs));
            all.extend(prop47_suite(&mink, &obs));
            all.extend(lemma42_suite(&mink, &obs));
            all
        }
        other => return Err(CliError::UnknownSuite(other.to_string())),
    };

    let verdict = if identities.iter().all(|i| i.pass) {
        "PASS"
    } else {
        "FAIL"
    };
    Ok(CheckReport {
        suite: suite.to_string(),
        identities,
        verdict: verdict.to_string(),
    })
}

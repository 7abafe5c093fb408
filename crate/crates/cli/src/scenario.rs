//! Scenario file schema and its translation into engine objects.
//!
//! A scenario is a JSON document:
//!
//! ```json
//! {
//!   "chart": ["t", "x", "y", "z"],
//!   "observer": { "T": ["1", "0", "0", "0"], "tau": ["1", "0", "x", "0"] },
//!   "em": { "a": ["0", "0", "x^2", "0"] },
//!   "j": ["0", "0", "0", "0"],
//!   "options": { "compute_j": true, "check_constitutive": true }
//! }
//! ```
//!
//! - `chart` (optional, default `t,x,y,z`): exactly four coordinate names;
//!   the metric is `diag(+,−,−,−)` in these coordinates.
//! - `observer.T`: four expressions, the components of the time direction.
//!   With no `tau`, the coframe is the metric dual τ = g(T,·)/g(T,T); with
//!   `tau`, four expressions for the coframe components (τ(T) = 1 required).
//! - `em`: exactly one of `a` (four potential components, F = da) or `F`
//!   (six field components in the order 01, 02, 03, 12, 13, 23 of coordinate
//!   pairs, i.e. dt∧dx, dt∧dy, dt∧dz, dx∧dy, dx∧dz, dy∧dz).
//! - `j` (optional): four current 3-form components in the order
//!   012, 013, 023, 123.  Validated against d(∗F).
//! - `options.compute_j` (default true): when no `j` is given, derive the
//!   current exactly from the field; with `compute_j` false a missing `j`
//!   is taken to assert a source-free scenario (j = 0) and validated.
//! - `options.check_constitutive` (default true): include the reduced-star
//!   constitutive residuals in the verdict when the observer is metric.

use serde::Deserialize;

use obsplit_core::{
    increasing_tuples, observer_from_t, EMScenario, Error as CoreError, KForm, Minkowski, Observer,
    ScalarField, VectorField,
};

use crate::error::{CliError, Result};
use crate::parser::parse_expression;

fn default_chart() -> Vec<String> {
    ["t", "x", "y", "z"].map(String::from).to_vec()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default = "default_chart")]
    pub chart: Vec<String>,
    pub observer: ObserverSpec,
    #[serde(default)]
    pub em: Option<EmSpec>,
    #[serde(default)]
    pub j: Option<Vec<String>>,
    #[serde(default)]
    pub options: OptionsSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObserverSpec {
    #[serde(rename = "T")]
    pub t: Vec<String>,
    #[serde(default)]
    pub tau: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmSpec {
    #[serde(default)]
    pub a: Option<Vec<String>>,
    #[serde(rename = "F", default)]
    pub f: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptionsSpec {
    pub compute_j: bool,
    pub check_constitutive: bool,
}

impl Default for OptionsSpec {
    fn default() -> Self {
        OptionsSpec {
            compute_j: true,
            check_constitutive: true,
        }
    }
}

/// A scenario translated into engine objects.
pub struct BuiltScenario {
    pub minkowski: Minkowski,
    pub scenario: EMScenario,
    pub options: OptionsSpec,
}

fn field_err(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Field {
        path: path.into(),
        message: message.into(),
    }
}

/// Parse a list of expressions into scalars, reporting errors with
/// `path[index]` locations.
fn parse_components(
    exprs: &[String],
    expected: usize,
    path: &str,
    mink: &Minkowski,
) -> Result<Vec<ScalarField>> {
    if exprs.len() != expected {
        return Err(field_err(
            path,
            format!("expected {expected} components, got {}", exprs.len()),
        ));
    }
    exprs
        .iter()
        .enumerate()
        .map(|(i, src)| {
            parse_expression(src, mink.chart()).map_err(|e| e.at_field(&format!("{path}[{i}]")))
        })
        .collect()
}

fn form_from_components(mink: &Minkowski, degree: usize, comps: Vec<ScalarField>) -> KForm {
    let keys = increasing_tuples(4, degree);
    KForm::from_components(mink.chart(), degree, keys.into_iter().zip(comps))
}

impl ScenarioFile {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    /// The Minkowski structure for the declared chart.
    pub fn minkowski(&self) -> Result<Minkowski> {
        if self.chart.len() != 4 {
            return Err(field_err(
                "chart",
                format!(
                    "expected exactly 4 coordinate names, got {}",
                    self.chart.len()
                ),
            ));
        }
        for name in &self.chart {
            let mut chars = name.chars();
            let head_ok = chars
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
            if !head_ok
                || !name
                    .chars()
                    .skip(1)
                    .all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(field_err(
                    "chart",
                    format!("`{name}` is not a usable coordinate name (letters, digits, `_`; must not start with a digit)"),
                ));
            }
        }
        let names: [String; 4] = self.chart.clone().try_into().expect("length checked above");
        Minkowski::with_names(names).map_err(|e| field_err("chart", e.to_string()))
    }

    /// The observer declared in the file.
    pub fn observer(&self, mink: &Minkowski) -> Result<Observer> {
        let t_comps = parse_components(&self.observer.t, 4, "observer.T", mink)?;
        let t = VectorField::from_components(mink.chart(), t_comps);
        match &self.observer.tau {
            Some(tau_exprs) => {
                let tau_comps = parse_components(tau_exprs, 4, "observer.tau", mink)?;
                let tau = form_from_components(mink, 1, tau_comps);
                Observer::new(t, tau).map_err(|_| {
                    field_err("observer", "tau(T) must be identically 1")
                })
            }
            None => observer_from_t(mink, &t).map_err(|e| match e {
                CoreError::NullObserver => field_err(
                    "observer.T",
                    "the direction field is null (g(T,T) = 0), so no coframe can be derived; give `tau` explicitly",
                ),
                other => CliError::Core(other),
            }),
        }
    }

    /// Translate the full file for the `split` command.
    pub fn build(&self) -> Result<BuiltScenario> {
        let mink = self.minkowski()?;
        let observer = self.observer(&mink)?;

        let em = self
            .em
            .as_ref()
            .ok_or_else(|| field_err("em", "required by the split command (give `a` or `F`)"))?;
        let (a, f) = match (&em.a, &em.f) {
            (Some(_), Some(_)) => {
                return Err(field_err("em", "`a` and `F` are mutually exclusive"));
            }
            (None, None) => {
                return Err(field_err(
                    "em",
                    "provide `a` (potential) or `F` (field strength)",
                ));
            }
            (Some(a_exprs), None) => {
                let comps = parse_components(a_exprs, 4, "em.a", &mink)?;
                (Some(form_from_components(&mink, 1, comps)), None)
            }
            (None, Some(f_exprs)) => {
                let comps = parse_components(f_exprs, 6, "em.F", &mink)?;
                (None, Some(form_from_components(&mink, 2, comps)))
            }
        };

        let mut assumed_source_free = false;
        let j = match &self.j {
            Some(j_exprs) => {
                let comps = parse_components(j_exprs, 4, "j", &mink)?;
                Some(form_from_components(&mink, 3, comps))
            }
            None if !self.options.compute_j => {
                assumed_source_free = true;
                Some(KForm::zero(mink.chart(), 3))
            }
            None => None,
        };

        let scenario = EMScenario::new(&mink, observer, a, f, j).map_err(|e| match e {
            CoreError::InconsistentScenario(m) if assumed_source_free => field_err(
                "options.compute_j",
                format!("the scenario is not source-free, so a current is required: {m}"),
            ),
            other => CliError::Core(other),
        })?;
        Ok(BuiltScenario {
            minkowski: mink,
            scenario,
            options: self.options,
        })
    }
}

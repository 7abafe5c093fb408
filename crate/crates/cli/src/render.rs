//! Canonical rendering of exact objects into strings.
//!
//! Scalars are reduced before printing, so the output is a canonical
//! reduced fraction with terms in descending graded-lexicographic order, and
//! it parses back (see [`crate::parser`]) to an equal scalar. Forms are
//! rendered as maps from basis labels (`"dt^dx"`) to canonical scalar
//! strings, which is also the shape they take in structured reports.

use std::collections::BTreeMap;

use obsplit_core::forms::basis_label;
use obsplit_core::{KForm, ScalarField, VectorField, VectorForm};

/// Canonical scalar string: reduced fraction, graded-lex term order.
pub fn render_scalar(s: &ScalarField) -> String {
    s.reduce().to_string()
}

/// A form as a basis-label → canonical-scalar map; zero forms give an empty
/// map.
pub fn form_components(w: &KForm) -> BTreeMap<String, String> {
    w.components()
        .filter(|(_, c)| !c.is_zero())
        .map(|(key, c)| (basis_label(w.chart(), key), render_scalar(c)))
        .collect()
}

/// Single-line rendering of a form for the text report.
pub fn render_form(w: &KForm) -> String {
    let comps = form_components(w);
    if comps.is_empty() {
        return "0".to_string();
    }
    if w.degree() == 0 {
        return comps.into_values().next().unwrap();
    }
    comps
        .into_iter()
        .map(|(label, c)| format!("({c}) {label}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Vector field as one canonical string per coordinate component.
pub fn vector_components(v: &VectorField) -> Vec<String> {
    v.components().iter().map(render_scalar).collect()
}

/// Vector-valued form as a map: output-component coordinate name →
/// basis-label → scalar. Zero components are omitted.
pub fn vector_form_components(v: &VectorForm) -> BTreeMap<String, BTreeMap<String, String>> {
    let chart = v.chart();
    v.components()
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(i, w)| (chart.coordinate_name(i).to_string(), form_components(w)))
        .collect()
}

/// Single-line rendering of a vector-valued form for the text report.
pub fn render_vector_form(v: &VectorForm) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let chart = v.chart();
    v.components()
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(i, w)| format!("({}) (x) d/d{}", render_form(w), chart.coordinate_name(i)))
        .collect::<Vec<_>>()
        .join(" + ")
}

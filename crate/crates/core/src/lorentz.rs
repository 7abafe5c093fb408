//! Minkowski structure on a fixed 4-chart: musical isomorphisms, scalar
//! products of equal-degree forms, and the Hodge star.
//!
//! The metric is the constant diagonal (+,−,−,−) and the orientation is the
//! coordinate volume form η = dt∧dx∧dy∧dz; every sign produced here is
//! derived from those two choices through the defining relation
//! α ∧ ∗β = (α,β)·η, never assumed.

use crate::error::{Error, Result};
use crate::forms::{Chart, KForm, VectorField};
use crate::ratfunc::{rat_int, Rational, ScalarField};

/// The Minkowski signature as chart metadata.
pub const SIGNATURE: [i8; 4] = [1, -1, -1, -1];

/// Minkowski structure: a 4-chart carrying the (+,−,−,−) metric and the
/// coordinate orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minkowski {
    chart: Chart,
}

impl Minkowski {
    /// The standard chart (t, x, y, z).
    pub fn new() -> Self {
        Self::with_names(["t", "x", "y", "z"]).expect("standard chart is valid")
    }

    pub fn with_names<S: Into<String> + Clone>(names: [S; 4]) -> Result<Self> {
        let chart = Chart::with_signature(names.to_vec(), SIGNATURE.to_vec())?;
        Ok(Minkowski { chart })
    }

    /// Adopts an existing chart; it must be 4-dimensional and already carry
    /// the (+,−,−,−) signature.
    pub fn from_chart(chart: &Chart) -> Result<Self> {
        if chart.dimension() != 4 {
            return Err(Error::InvalidChart(format!(
                "Minkowski structure needs 4 coordinates, got {}",
                chart.dimension()
            )));
        }
        if chart.signature() != Some(&SIGNATURE[..]) {
            return Err(Error::InvalidChart(
                "chart does not carry the (+,-,-,-) signature".into(),
            ));
        }
        Ok(Minkowski {
            chart: chart.clone(),
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    fn eps(&self, i: u8) -> i64 {
        SIGNATURE[i as usize] as i64
    }

    /// Product of signature entries over an index tuple.
    fn eps_tuple(&self, key: &[u8]) -> i64 {
        key.iter().map(|&i| self.eps(i)).product()
    }

    /// The orientation volume form η = dt∧dx∧dy∧dz.
    pub fn volume_form(&self) -> KForm {
        KForm::basis(&self.chart, &[0, 1, 2, 3])
    }

    /// Musical isomorphism `X ↦ g(X, ·)`.
    pub fn flat(&self, x: &VectorField) -> KForm {
        assert!(
            x.chart() == &self.chart,
            "flat: vector field on a different chart"
        );
        let mut w = KForm::zero(&self.chart, 1);
        for i in 0..4u8 {
            let c = x.component(i as usize);
            if !c.is_zero() {
                w.add_component(&[i], c * &ScalarField::int(self.chart.vars(), self.eps(i)));
            }
        }
        w
    }

    /// Musical isomorphism inverse to [`Minkowski::flat`].
    pub fn sharp(&self, alpha: &KForm) -> VectorField {
        assert!(
            alpha.chart() == &self.chart,
            "sharp: form on a different chart"
        );
        assert_eq!(alpha.degree(), 1, "sharp acts on 1-forms");
        let comps = (0..4u8)
            .map(|i| &alpha.component(&[i]) * &ScalarField::int(self.chart.vars(), self.eps(i)))
            .collect();
        VectorField::from_components(&self.chart, comps)
    }

    /// Metric pairing of vector fields `g(X, Y) = Σ εᵢ Xⁱ Yⁱ`.
    pub fn metric(&self, x: &VectorField, y: &VectorField) -> ScalarField {
        assert!(
            x.chart() == &self.chart && y.chart() == &self.chart,
            "metric: mixed charts"
        );
        let mut acc = ScalarField::zero(self.chart.vars());
        for i in 0..4u8 {
            let term = x.component(i as usize) * y.component(i as usize);
            if !term.is_zero() {
                acc = &acc + &(&term * &ScalarField::int(self.chart.vars(), self.eps(i)));
            }
        }
        acc
    }

    /// `g(X, X)`.
    pub fn norm_squared(&self, x: &VectorField) -> ScalarField {
        self.metric(x, x)
    }

    /// Pseudo-Euclidean scalar product of equal-degree forms: the
    /// Gram-determinant extension of the inverse-metric pairing, which for the
    /// diagonal metric is `Σ_I ε_I a_I b_I` over increasing index tuples.
    pub fn inner(&self, a: &KForm, b: &KForm) -> ScalarField {
        assert!(
            a.chart() == &self.chart && b.chart() == &self.chart,
            "inner: mixed charts"
        );
        assert_eq!(
            a.degree(),
            b.degree(),
            "inner: mixed degrees {} and {}",
            a.degree(),
            b.degree()
        );
        let mut acc = ScalarField::zero(self.chart.vars());
        for (key, ca) in a.components() {
            let cb = b.component(key);
            if cb.is_zero() {
                continue;
            }
            let term = &(ca * &cb) * &ScalarField::int(self.chart.vars(), self.eps_tuple(key));
            acc = &acc + &term;
        }
        acc
    }

    /// Hodge star: the unique (4−k)-form with `α ∧ ∗w = (α, w)·η` for every
    /// k-form α. On a basis form `dx^I` it is `ε_I · sgn(I, Iᶜ) · dx^{Iᶜ}`.
    pub fn hodge(&self, w: &KForm) -> KForm {
        assert!(w.chart() == &self.chart, "hodge: form on a different chart");
        if w.degree() > 4 {
            // such a form exists only as zero (every component repeats an index)
            assert!(w.is_zero(), "hodge: degree exceeds the chart dimension");
            return KForm::zero(&self.chart, 0);
        }
        let mut out = KForm::zero(&self.chart, 4 - w.degree());
        for (key, c) in w.components() {
            let complement: Vec<u8> = (0..4u8).filter(|i| !key.contains(i)).collect();
            // sign of the permutation (key, complement) of (0,1,2,3):
            // count inversions between the two increasing runs
            let inversions: usize = key
                .iter()
                .map(|&i| complement.iter().filter(|&&j| j < i).count())
                .sum();
            let mut s = self.eps_tuple(key);
            if inversions % 2 == 1 {
                s = -s;
            }
            out.add_component(&complement, c * &ScalarField::int(self.chart.vars(), s));
        }
        out
    }
}

impl Default for Minkowski {
    fn default() -> Self {
        Self::new()
    }
}

/// Basis k-forms of the chart, one per increasing index tuple.
pub fn form_basis(chart: &Chart, degree: usize) -> Vec<KForm> {
    crate::calculus::increasing_tuples(chart.dimension(), degree)
        .into_iter()
        .map(|key| KForm::basis(chart, &key))
        .collect()
}

/// The sign `−(−1)^{k(4−k)}`: Hodge composed with itself on Λᵏ of Minkowski
/// 4-space.
pub fn double_star_sign(k: usize) -> Rational {
    if (k * (4 - k)).is_multiple_of(2) {
        rat_int(-1)
    } else {
        rat_int(1)
    }
}

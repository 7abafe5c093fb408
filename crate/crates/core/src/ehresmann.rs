//! General (not necessarily principal) Ehresmann connections on a
//! trivialized bundle chart.
//!
//! The bundle is an adapted chart: the first n coordinates parametrize the
//! base, the last N the fiber, and the projection forgets the fiber
//! coordinates. A connection is the vertical projection ϰ (a degree-1
//! vector-valued form with ϰ² = ϰ, vertical image, and ϰ|_V = id), entered
//! through its horizontal-lift matrix A so the axioms hold by construction:
//!
//! ```text
//!   ϰ = Σ_p (du^p − Σᵢ Aᵖᵢ dxⁱ) ⊗ ∂_{u^p},    lift(∂ᵢ) = ∂ᵢ + Σ_p Aᵖᵢ ∂_{u^p}
//! ```
//!
//! Fiber-dependent A is allowed — that is exactly the non-principal case.
//! Curvature is the Nijenhuis torsion ½[ϰ, ϰ]; the Bianchi identity
//! [Ω, ϰ] = 0 is checked extensionally through the superbracket of the
//! induced Lie-derivative operators; and the connection's torque along the
//! fiber-translation group measures the failure of A to be fiber-independent.

use crate::calculus::{
    derivation_is_zero, fn_bracket_vf, lie_derivative_vf, nijenhuis_torsion, superbracket,
    VectorForm,
};
use crate::error::{Error, Result};
use crate::forms::{Chart, KForm, VectorField};
use crate::ratfunc::{Rational, ScalarField, Vars};
use std::collections::BTreeMap;

/// An adapted chart on a trivialized bundle: base coordinates first, fiber
/// coordinates last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleChart {
    chart: Chart,
    base_vars: Vars,
    base_dim: usize,
    fiber_dim: usize,
}

impl BundleChart {
    pub fn new<S: Into<String> + Clone>(base_names: &[S], fiber_names: &[S]) -> Result<Self> {
        let (n, nn) = (base_names.len(), fiber_names.len());
        if n == 0 || nn == 0 {
            return Err(Error::InvalidChart(
                "bundle chart needs at least one base and one fiber coordinate".into(),
            ));
        }
        if n + nn > Vars::MAX {
            return Err(Error::InvalidChart(format!(
                "bundle chart has {} coordinates; at most {} are supported",
                n + nn,
                Vars::MAX
            )));
        }
        let names: Vec<String> = base_names
            .iter()
            .cloned()
            .map(Into::into)
            .chain(fiber_names.iter().cloned().map(Into::into))
            .collect();
        let chart = Chart::new(names)?;
        let base_vars = Vars::new(base_names.iter().cloned().map(Into::into))?;
        Ok(BundleChart {
            chart,
            base_vars,
            base_dim: n,
            fiber_dim: nn,
        })
    }

    /// The total chart (base coordinates then fiber coordinates).
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// The base coordinates as a standalone variable set (for sections).
    pub fn base_vars(&self) -> &Vars {
        &self.base_vars
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn is_fiber_index(&self, idx: usize) -> bool {
        idx >= self.base_dim
    }

    /// ∂/∂xⁱ for the i-th base coordinate.
    pub fn base_vector(&self, i: usize) -> VectorField {
        assert!(i < self.base_dim, "base index out of range");
        VectorField::coordinate(&self.chart, i)
    }

    /// ∂/∂uᵖ for the p-th fiber coordinate.
    pub fn fiber_vector(&self, p: usize) -> VectorField {
        assert!(p < self.fiber_dim, "fiber index out of range");
        VectorField::coordinate(&self.chart, self.base_dim + p)
    }

    /// The pushforward π_* of the coordinate projection: forgets the fiber
    /// components.
    pub fn project(&self, v: &VectorField) -> Vec<ScalarField> {
        assert!(
            v.chart() == &self.chart,
            "project: vector field on a different chart"
        );
        v.components()[..self.base_dim].to_vec()
    }

    /// True when every fiber component of `v` vanishes.
    pub fn is_horizontal_coordinate_combination(&self, v: &VectorField) -> bool {
        v.components()[self.base_dim..]
            .iter()
            .all(ScalarField::is_zero)
    }
}

/// An Ehresmann connection on a bundle chart, stored as the vertical
/// projection ϰ together with the horizontal matrix A that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionField {
    bundle: BundleChart,
    kappa: VectorForm,
    /// A[p][i] = Aᵖᵢ — fiber row p, base column i.
    a: Vec<Vec<ScalarField>>,
}

impl ConnectionField {
    /// Builds the connection whose horizontal subspaces are spanned by
    /// ∂ᵢ + Σ_p Aᵖᵢ ∂_{u^p}. The projection axioms hold by construction.
    /// Entries live on the total chart; fiber dependence makes the
    /// connection non-principal.
    pub fn from_horizontal(bundle: &BundleChart, a: Vec<Vec<ScalarField>>) -> Self {
        let (n, nn) = (bundle.base_dim(), bundle.fiber_dim());
        assert_eq!(
            a.len(),
            nn,
            "horizontal matrix needs one row per fiber coordinate"
        );
        for row in &a {
            assert_eq!(
                row.len(),
                n,
                "horizontal matrix needs one column per base coordinate"
            );
            for entry in row {
                assert!(
                    entry.vars() == bundle.chart().vars(),
                    "horizontal matrix entry on a different coordinate set"
                );
            }
        }
        let chart = bundle.chart();
        let mut comps = vec![KForm::zero(chart, 1); chart.dimension()];
        for (p, row) in a.iter().enumerate() {
            let mut w = KForm::coordinate_differential(chart, n + p);
            for (i, entry) in row.iter().enumerate() {
                w.add_component(&[i as u8], -entry);
            }
            comps[n + p] = w;
        }
        ConnectionField {
            bundle: bundle.clone(),
            kappa: VectorForm::from_components(chart, comps),
            a,
        }
    }

    /// Validates a raw endomorphism as a connection: it must vanish on some
    /// horizontal complement (equivalently: base-component forms are zero,
    /// each fiber component is du^p minus a base-only 1-form). Returns the
    /// connection with its horizontal matrix recovered.
    pub fn from_kappa(bundle: &BundleChart, kappa: &VectorForm) -> Result<Self> {
        assert!(
            kappa.chart() == bundle.chart(),
            "from_kappa: endomorphism on a different chart"
        );
        if kappa.degree() != 1 {
            return Err(Error::InvalidConnection(
                "connection endomorphism must be a vector-valued 1-form".into(),
            ));
        }
        let (n, nn) = (bundle.base_dim(), bundle.fiber_dim());
        // verticality: π_* ∘ ϰ = 0
        for i in 0..n {
            if !kappa.component(i).is_zero() {
                return Err(Error::InvalidConnection(format!(
                    "image is not vertical: nonzero output along ∂{}",
                    bundle.chart().coordinate_name(i)
                )));
            }
        }
        // ϰ|_V = id: the du-part of the p-th fiber component must be du^p
        let mut a = vec![vec![ScalarField::zero(bundle.chart().vars()); n]; nn];
        for (p, row) in a.iter_mut().enumerate() {
            let w = kappa.component(n + p);
            for q in 0..nn {
                let c = w.component(&[(n + q) as u8]);
                let expected = if p == q {
                    ScalarField::one(bundle.chart().vars())
                } else {
                    ScalarField::zero(bundle.chart().vars())
                };
                if !c.equals(&expected) {
                    return Err(Error::InvalidConnection(format!(
                        "not the identity on vertical vectors: d{} coefficient in the {} output",
                        bundle.chart().coordinate_name(n + q),
                        bundle.chart().coordinate_name(n + p)
                    )));
                }
            }
            for (i, slot) in row.iter_mut().enumerate() {
                *slot = -&w.component(&[i as u8]);
            }
        }
        let built = Self::from_horizontal(bundle, a);
        // the two reads above pin every coefficient, so this always matches;
        // keep the comparison as a defensive exactness check
        if &built.kappa != kappa {
            return Err(Error::InvalidConnection(
                "endomorphism is not a vertical projection".into(),
            ));
        }
        Ok(built)
    }

    pub fn bundle(&self) -> &BundleChart {
        &self.bundle
    }

    /// The vertical projection ϰ.
    pub fn kappa(&self) -> &VectorForm {
        &self.kappa
    }

    /// The horizontal matrix entry Aᵖᵢ.
    pub fn horizontal_entry(&self, p: usize, i: usize) -> &ScalarField {
        &self.a[p][i]
    }

    /// Horizontal lift of a base vector field, given with its base
    /// components on the total chart (fiber components must vanish):
    /// lift(v) = v + Σ_p (Σᵢ Aᵖᵢ vⁱ) ∂_{u^p}. Satisfies π_*(lift v) = v and
    /// ϰ(lift v) = 0 (the exact-sequence identities).
    pub fn lift(&self, v: &VectorField) -> VectorField {
        assert!(
            v.chart() == self.bundle.chart(),
            "lift: vector field on a different chart"
        );
        assert!(
            self.bundle.is_horizontal_coordinate_combination(v),
            "lift: input has fiber components"
        );
        let n = self.bundle.base_dim();
        let mut comps = v.components().to_vec();
        for (p, row) in self.a.iter().enumerate() {
            let mut acc = ScalarField::zero(self.bundle.chart().vars());
            for (i, entry) in row.iter().enumerate() {
                acc = &acc + &(entry * v.component(i));
            }
            comps[n + p] = acc;
        }
        VectorField::from_components(self.bundle.chart(), comps)
    }

    /// The lift evaluated at a point: the components of the unique
    /// horizontal tangent vector over the point projecting to v.
    pub fn lift_at(
        &self,
        v: &VectorField,
        point: &BTreeMap<String, Rational>,
    ) -> Result<Vec<Rational>> {
        let lifted = self.lift(v);
        lifted
            .components()
            .iter()
            .map(|c| c.evaluate(point))
            .collect()
    }

    /// Covariant derivative of a section along the base coordinate
    /// directions: the N×n matrix with entries (∂ᵢψᵖ − Aᵖᵢ)∘Ψ, each a
    /// scalar on the base. The section's graph is horizontal iff the matrix
    /// is zero.
    pub fn covariant_derivative(&self, section: &SectionGraph) -> Result<Vec<Vec<ScalarField>>> {
        assert!(
            section.bundle() == &self.bundle,
            "covariant_derivative: section on a different bundle"
        );
        let (n, nn) = (self.bundle.base_dim(), self.bundle.fiber_dim());
        let mut out = vec![vec![ScalarField::zero(self.bundle.base_vars()); n]; nn];
        for (p, row) in out.iter_mut().enumerate() {
            for (i, slot) in row.iter_mut().enumerate() {
                let pulled_back = section.pull_back(&self.a[p][i])?;
                *slot = &section.component(p).partial_idx(i) - &pulled_back;
            }
        }
        Ok(out)
    }

    /// Curvature Ω = ½[ϰ, ϰ]: the Nijenhuis torsion of the vertical
    /// projection. A vertical-valued 2-form annihilated by vertical vectors.
    pub fn curvature_omega(&self) -> VectorForm {
        nijenhuis_torsion(&self.kappa)
    }

    /// Curvature paired with base directions through the horizontal lifts:
    /// Ω(lift v, lift w), a vertical vector field. Bilinear and antisymmetric.
    pub fn base_curvature(&self, v: &VectorField, w: &VectorField) -> VectorField {
        self.curvature_omega()
            .evaluate(&[&self.lift(v), &self.lift(w)])
    }

    /// The Bianchi identity [Ω, ϰ] = 0, checked extensionally: the
    /// superbracket of the induced Lie-derivative operators annihilates all
    /// chart generators.
    pub fn bianchi_check(&self) -> bool {
        derivation_is_zero(&superbracket(
            lie_derivative_vf(&self.curvature_omega()),
            lie_derivative_vf(&self.kappa),
        ))
    }

    /// Torque of the connection along the fiber-translation group: the list
    /// (𝔏_{∂_{u^p}} ϰ)_p over the fiber basis. All zero iff A is
    /// fiber-independent, i.e. iff the connection is principal for the
    /// translation action.
    pub fn torque_general(&self) -> Vec<VectorForm> {
        (0..self.bundle.fiber_dim())
            .map(|p| fn_bracket_vf(&self.bundle.fiber_vector(p), &self.kappa))
            .collect()
    }

    /// True when every torque component vanishes.
    pub fn is_principal(&self) -> bool {
        self.torque_general().iter().all(VectorForm::is_zero)
    }
}

/// A section of the bundle in graph form: u^p = ψᵖ(x¹, …, xⁿ), with the
/// components over the base coordinates only.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionGraph {
    bundle: BundleChart,
    comps: Vec<ScalarField>,
}

impl SectionGraph {
    pub fn new(bundle: &BundleChart, comps: Vec<ScalarField>) -> Self {
        assert_eq!(
            comps.len(),
            bundle.fiber_dim(),
            "section needs one component per fiber coordinate"
        );
        for c in &comps {
            assert!(
                c.vars() == bundle.base_vars(),
                "section components must be functions of the base coordinates only"
            );
        }
        SectionGraph {
            bundle: bundle.clone(),
            comps,
        }
    }

    pub fn bundle(&self) -> &BundleChart {
        &self.bundle
    }

    /// ψᵖ.
    pub fn component(&self, p: usize) -> &ScalarField {
        &self.comps[p]
    }

    /// Pull back a scalar on the total chart through the section:
    /// substitutes u^p ↦ ψᵖ, leaving base coordinates alone. The result is a
    /// scalar on the base. Fails with a pole error if the substitution
    /// annihilates a denominator.
    pub fn pull_back(&self, f: &ScalarField) -> Result<ScalarField> {
        assert!(
            f.vars() == self.bundle.chart().vars(),
            "pull_back: scalar on a different coordinate set"
        );
        let base = self.bundle.base_vars();
        let images: Vec<ScalarField> = (0..self.bundle.base_dim())
            .map(|i| ScalarField::var_idx(base, i))
            .chain(self.comps.iter().cloned())
            .collect();
        f.substitute(base, &images)
    }
}

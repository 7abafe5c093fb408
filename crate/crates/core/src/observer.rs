//! Observers: a pair (T, τ) of a reference vector field and a dual 1-form
//! with τ(T) = 1 exactly.
//!
//! An observer splits spacetime pointwise into TIME = span T and
//! SPACE = ker τ. The associated connection endomorphism ϰ = τ⊗T projects
//! onto the time direction; its Frölicher–Nijenhuis brackets produce the
//! observer's torque (failure of τ to be invariant along T) and curvature
//! (failure of ker τ to be integrable). Every k-form decomposes as
//! ω = τ∧ω_T + ω_S with both pieces purely spatial, which is the algebraic
//! backbone of the split field equations in [`crate::maxwell`].

use crate::calculus::{d, fn_bracket_vf, lie_derivative, nijenhuis_torsion, VectorForm};
use crate::error::{Error, Result};
use crate::forms::{Chart, KForm, VectorField};
use crate::lorentz::Minkowski;
use crate::ratfunc::ScalarField;

/// A reference frame: vector field T and 1-form τ with τ(T) = 1 exactly.
///
/// The normalization is projective, not metric: exact unit-norm vectors
/// generally need square roots, which live outside the rational-function
/// field, while every split identity below uses only τ(T) = 1. When T does
/// have g(T,T) = 1 and τ = flat(T), the pair is a metric-normalized observer
/// and additionally satisfies the constitutive relations (see
/// [`crate::maxwell`]).
#[derive(Clone, Debug, PartialEq)]
pub struct Observer {
    t: VectorField,
    tau: KForm,
}

impl Observer {
    /// Validates τ(T) = 1 exactly; any chart and any (T, τ) pair is accepted
    /// as long as the pairing is the constant 1.
    pub fn new(t: VectorField, tau: KForm) -> Result<Self> {
        assert!(
            t.chart() == tau.chart(),
            "observer: T and τ on different charts"
        );
        assert_eq!(tau.degree(), 1, "observer: τ must be a 1-form");
        let pairing = tau.evaluate(&[&t]);
        if !pairing.equals(&ScalarField::one(t.chart().vars())) {
            return Err(Error::ObserverNotNormalized);
        }
        Ok(Observer { t, tau })
    }

    pub fn t(&self) -> &VectorField {
        &self.t
    }

    pub fn tau(&self) -> &KForm {
        &self.tau
    }

    pub fn chart(&self) -> &Chart {
        self.t.chart()
    }

    /// The connection endomorphism ϰ = τ⊗T: the projection onto span T
    /// along ker τ.
    pub fn kappa(&self) -> VectorForm {
        VectorForm::homogeneous(&self.t, &self.tau)
    }

    /// Torque as a vector-valued 1-form: the Frölicher–Nijenhuis bracket
    /// [T, ϰ], which equals (𝔏_T τ)⊗T.
    pub fn torque(&self) -> VectorForm {
        fn_bracket_vf(&self.t, &self.kappa())
    }

    /// The torque 1-form 𝔏_T τ (the scalar-form factor of [`Observer::torque`]).
    pub fn torque_form(&self) -> KForm {
        lie_derivative(&self.t, &self.tau)
    }

    /// Curvature as a vector-valued 2-form: the Nijenhuis torsion of ϰ,
    /// equal to ½[ϰ, ϰ] and to −i_T(τ∧dτ)⊗T.
    pub fn curvature(&self) -> VectorForm {
        nijenhuis_torsion(&self.kappa())
    }

    /// The curvature 2-form −i_T(τ∧dτ) (the scalar-form factor of
    /// [`Observer::curvature`]).
    pub fn curvature_form(&self) -> KForm {
        -&self.tau.wedge(&d(&self.tau)).interior(&self.t)
    }

    /// True when the spatial distribution ker τ is integrable: τ∧dτ = 0.
    pub fn is_holonomic(&self) -> bool {
        self.tau.wedge(&d(&self.tau)).is_zero()
    }

    /// True when τ is invariant along T: 𝔏_T τ = 0.
    pub fn is_torque_free(&self) -> bool {
        self.torque_form().is_zero()
    }

    /// Temporal part ω_T = i_T ω. Purely spatial (i_T ω_T = 0).
    pub fn temporal_part(&self, w: &KForm) -> KForm {
        w.interior(&self.t)
    }

    /// Spatial part ω_S = i_T(τ ∧ ω). Purely spatial (i_T ω_S = 0).
    pub fn spatial_part(&self, w: &KForm) -> KForm {
        self.tau.wedge(w).interior(&self.t)
    }

    /// The decomposition ω = τ∧ω_T + ω_S, returned as (ω_T, ω_S).
    pub fn split(&self, w: &KForm) -> (KForm, KForm) {
        (self.temporal_part(w), self.spatial_part(w))
    }

    /// Inverse of [`Observer::split`]: τ∧ω_T + ω_S.
    pub fn reconstruct(&self, w_t: &KForm, w_s: &KForm) -> KForm {
        &self.tau.wedge(w_t) + w_s
    }

    /// The electromagnetic split table. Absent inputs yield absent outputs;
    /// present inputs must have the customary degrees (F, G: 2; j: 3; a: 1).
    ///
    /// The splits satisfy the exact reconstruction identities
    /// F = E∧τ + B, G = τ∧H + D, j = ρ − τ∧J, a = φτ + A₃.
    pub fn split_em(
        &self,
        f: Option<&KForm>,
        g: Option<&KForm>,
        j: Option<&KForm>,
        a: Option<&KForm>,
    ) -> EMFields {
        if let Some(f) = f {
            assert_eq!(f.degree(), 2, "split_em: F must be a 2-form");
        }
        if let Some(g) = g {
            assert_eq!(g.degree(), 2, "split_em: G must be a 2-form");
        }
        if let Some(j) = j {
            assert_eq!(j.degree(), 3, "split_em: j must be a 3-form");
        }
        if let Some(a) = a {
            assert_eq!(a.degree(), 1, "split_em: a must be a 1-form");
        }
        EMFields {
            e: f.map(|f| -&self.temporal_part(f)),
            b: f.map(|f| self.spatial_part(f)),
            h: g.map(|g| self.temporal_part(g)),
            d: g.map(|g| self.spatial_part(g)),
            j: j.map(|j| -&self.temporal_part(j)),
            rho: j.map(|j| self.spatial_part(j)),
            phi: a.map(|a| self.temporal_part(a)),
            a3: a.map(|a| self.spatial_part(a)),
        }
    }

    /// The reduced star ∗₃ = i_T ∘ ∗ of the observer on a Minkowski chart.
    pub fn reduced_hodge(&self, mink: &Minkowski, w: &KForm) -> KForm {
        assert!(
            self.chart() == mink.chart(),
            "reduced_hodge: observer not on the Minkowski chart"
        );
        mink.hodge(w).interior(&self.t)
    }
}

/// Constructs the observer of a non-null reference field T on a Minkowski
/// chart: τ = flat(T)/g(T,T), so τ(T) = 1 exactly. For g(T,T) = 1 this is
/// the metric-normalized observer; spacelike T (negative norm) is accepted
/// and must be flagged by callers that care (see the CLI).
pub fn observer_from_t(mink: &Minkowski, t: &VectorField) -> Result<Observer> {
    let norm2 = mink.norm_squared(t);
    if norm2.is_zero() {
        return Err(Error::NullObserver);
    }
    let inv = ScalarField::one(mink.chart().vars()).try_div(&norm2)?;
    let tau = mink.flat(t).scale(&inv);
    Observer::new(t.clone(), tau)
}

/// The split of the electromagnetic quantities relative to an observer.
/// Each field is present exactly when the corresponding input was provided:
/// `e`, `b` from F; `h`, `d` from G; `j`, `rho` from the current 3-form;
/// `phi`, `a3` from the potential.
#[derive(Clone, Debug, PartialEq)]
pub struct EMFields {
    /// Electric field 1-form E = −i_T F.
    pub e: Option<KForm>,
    /// Magnetic field 2-form B = i_T(τ ∧ F).
    pub b: Option<KForm>,
    /// Magnetic excitation 1-form H = i_T G.
    pub h: Option<KForm>,
    /// Electric excitation 2-form D = i_T(τ ∧ G).
    pub d: Option<KForm>,
    /// Current density 2-form J = −i_T j.
    pub j: Option<KForm>,
    /// Charge density 3-form ρ = i_T(τ ∧ j).
    pub rho: Option<KForm>,
    /// Scalar potential φ = i_T a.
    pub phi: Option<KForm>,
    /// Vector potential 1-form A₃ = i_T(τ ∧ a).
    pub a3: Option<KForm>,
}

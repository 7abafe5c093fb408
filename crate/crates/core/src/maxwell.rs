//! The observer split of the electromagnetic field equations.
//!
//! Relative to an observer (T, τ), the operators d₃ (spatial differential)
//! and ˙ (time derivative along T) split the spacetime equations
//! dF = 0, d∗F = j into four spatial equations with torque and curvature
//! source terms:
//!
//! ```text
//!   d₃E = −Ḃ − Torq(τ)⌟F          d₃H = Ḋ + J + Torq(τ)⌟G
//!   d₃B =  Curv(τ)⌟F              d₃D = ρ + Curv(τ)⌟G
//! ```
//!
//! where `Torq(τ)⌟ω = (𝔏_T τ) ∧ i_T ω` and `Curv(τ)⌟ω = −i_T(τ∧dτ) ∧ i_T ω`.
//! For a holonomic, torque-free observer all source terms vanish and the
//! system is the standard 3+1 split. Everything here is exact: a residual is
//! reported as a form and the equation holds iff the residual is the zero
//! form.

use crate::calculus::{d, lie_derivative};
use crate::error::{Error, Result};
use crate::forms::KForm;
use crate::lorentz::Minkowski;
use crate::observer::Observer;

/// Spatial differential d₃ω = i_T(τ ∧ dω). Output is purely spatial.
pub fn d3(obs: &Observer, w: &KForm) -> KForm {
    obs.spatial_part(&d(w))
}

/// Observer time derivative ω̇ = 𝔏_T ω.
pub fn dot(obs: &Observer, w: &KForm) -> KForm {
    lie_derivative(obs.t(), w)
}

/// Torque source term Torq(τ)⌟ω = (𝔏_T τ) ∧ i_T ω.
pub fn torque_contraction(obs: &Observer, w: &KForm) -> KForm {
    obs.torque_form().wedge(&obs.temporal_part(w))
}

/// Curvature source term Curv(τ)⌟ω = −i_T(τ∧dτ) ∧ i_T ω.
pub fn curvature_contraction(obs: &Observer, w: &KForm) -> KForm {
    obs.curvature_form().wedge(&obs.temporal_part(w))
}

/// The split of the generic equation dω = σ into its spatial and temporal
/// parts. Returns the two residuals
///
/// ```text
///   spatial:   d₃ω_S − σ_S − Curv(τ)⌟ω
///   temporal:  −ω̇_S + d₃ω_T + σ_T − Torq(τ)⌟ω
/// ```
///
/// both of which are exactly zero whenever dω = σ.
///
/// The temporal equation reads −ω̇_S + d₃ω_T = Torq(τ)⌟ω − σ_T; the sign of
/// its right-hand side is pinned by the Faraday line of the split Maxwell
/// system: substituting ω = F, σ = 0, ω_T = −E, ω_S = B gives
/// −Ḃ − d₃E = Torq(τ)⌟F, i.e. d₃E = −Ḃ − Torq(τ)⌟F, and no other sign
/// choice cancels exactly.
pub fn split_equation(obs: &Observer, w: &KForm, sigma: &KForm) -> (KForm, KForm) {
    assert!(
        sigma.is_zero() || sigma.degree() == w.degree() + 1,
        "split_equation: σ must have degree {} (got {})",
        w.degree() + 1,
        sigma.degree()
    );
    let (w_t, w_s) = obs.split(w);
    let (s_t, s_s) = obs.split(sigma);
    let spatial = &(&d3(obs, &w_s) - &s_s) - &curvature_contraction(obs, w);
    let temporal = &(&(&d3(obs, &w_t) - &dot(obs, &w_s)) + &s_t) - &torque_contraction(obs, w);
    (spatial, temporal)
}

/// A validated electromagnetic scenario: observer, optional potential a,
/// field F, and current j on a Minkowski chart.
///
/// At least one of the potential and the field must be given; when both are,
/// F = da must hold exactly. The current, when given, must equal d(∗F)
/// exactly (the inhomogeneous equation is then an identity and the tests
/// probe the split, not field dynamics); when absent it is computed as
/// d(∗F).
#[derive(Clone, Debug)]
pub struct EMScenario {
    mink: Minkowski,
    observer: Observer,
    a: Option<KForm>,
    f: KForm,
    j: KForm,
}

impl EMScenario {
    pub fn new(
        mink: &Minkowski,
        observer: Observer,
        a: Option<KForm>,
        f: Option<KForm>,
        j: Option<KForm>,
    ) -> Result<Self> {
        assert!(
            observer.chart() == mink.chart(),
            "scenario: observer not on the Minkowski chart"
        );
        if let Some(a) = &a {
            assert_eq!(a.degree(), 1, "scenario: potential must be a 1-form");
        }
        if let Some(f) = &f {
            assert_eq!(f.degree(), 2, "scenario: field must be a 2-form");
        }
        if let Some(j) = &j {
            assert_eq!(j.degree(), 3, "scenario: current must be a 3-form");
        }
        let f = match (&a, f) {
            (None, None) => {
                return Err(Error::InconsistentScenario(
                    "neither a potential nor a field is given".into(),
                ))
            }
            (Some(a), None) => d(a),
            (None, Some(f)) => f,
            (Some(a), Some(f)) => {
                if f != d(a) {
                    return Err(Error::InconsistentScenario(
                        "the given field does not equal the exterior derivative of the given potential".into(),
                    ));
                }
                f
            }
        };
        let expected_j = d(&mink.hodge(&f));
        let j = match j {
            None => expected_j,
            Some(j) => {
                if j != expected_j {
                    return Err(Error::InconsistentScenario(
                        "the given current does not equal d(∗F) for the scenario's field".into(),
                    ));
                }
                j
            }
        };
        Ok(EMScenario {
            mink: mink.clone(),
            observer,
            a,
            f,
            j,
        })
    }

    pub fn minkowski(&self) -> &Minkowski {
        &self.mink
    }

    pub fn observer(&self) -> &Observer {
        &self.observer
    }

    pub fn potential(&self) -> Option<&KForm> {
        self.a.as_ref()
    }

    /// The field 2-form F (given, or d(a)).
    pub fn field(&self) -> &KForm {
        &self.f
    }

    /// The excitation 2-form G = ∗F.
    pub fn excitation(&self) -> KForm {
        self.mink.hodge(&self.f)
    }

    /// The current 3-form j (given, or d(∗F)).
    pub fn current(&self) -> &KForm {
        &self.j
    }
}

/// The complete split of a scenario: all spatial fields, the torque and
/// curvature source terms, and the residual of every split equation. Each
/// residual is a form; the corresponding equation holds iff it is exactly
/// zero.
#[derive(Clone, Debug)]
pub struct SplitReport {
    /// Electric field E = −i_T F.
    pub e: KForm,
    /// Magnetic field B = i_T(τ ∧ F).
    pub b: KForm,
    /// Magnetic excitation H = i_T G.
    pub h: KForm,
    /// Electric excitation D = i_T(τ ∧ G).
    pub d: KForm,
    /// Current J = −i_T j.
    pub j: KForm,
    /// Charge density ρ = i_T(τ ∧ j).
    pub rho: KForm,
    /// Scalar potential φ = i_T a (when a is given).
    pub phi: Option<KForm>,
    /// Vector potential A₃ = i_T(τ ∧ a) (when a is given).
    pub a3: Option<KForm>,
    /// Torq(τ)⌟F.
    pub torque_term_f: KForm,
    /// Curv(τ)⌟F.
    pub curv_term_f: KForm,
    /// Torq(τ)⌟G.
    pub torque_term_g: KForm,
    /// Curv(τ)⌟G.
    pub curv_term_g: KForm,
    /// d₃E + Ḃ + Torq(τ)⌟F.
    pub residual_faraday: KForm,
    /// d₃B − Curv(τ)⌟F.
    pub residual_magnetic_gauss: KForm,
    /// d₃H − Ḋ − J − Torq(τ)⌟G.
    pub residual_ampere: KForm,
    /// d₃D − ρ − Curv(τ)⌟G.
    pub residual_gauss: KForm,
    /// ρ̇ + d₃J + Torq(τ)⌟j.
    pub residual_continuity: KForm,
    /// (E − (−Ȧ₃ + d₃φ − Torq(τ)⌟a), B − (d₃A₃ − Curv(τ)⌟a)), when a is given.
    pub residual_potential: Option<(KForm, KForm)>,
    /// (∗₃E − D, ∗₃H − B). Zero is asserted only for metric observers; see
    /// [`SplitReport::constitutive_applicable`].
    pub residual_constitutive: (KForm, KForm),
    /// True when τ = flat(T) with g(T,T) = 1, the hypothesis under which the
    /// constitutive relations are proved. For other observers the residuals
    /// are reported but not expected to vanish.
    pub constitutive_applicable: bool,
    /// τ ∧ dτ = 0.
    pub is_holonomic: bool,
    /// 𝔏_T τ = 0.
    pub is_torque_free: bool,
}

impl SplitReport {
    /// The four split field-equation residuals, in the order Faraday,
    /// magnetic Gauss, Ampère, Gauss.
    pub fn field_residuals(&self) -> [&KForm; 4] {
        [
            &self.residual_faraday,
            &self.residual_magnetic_gauss,
            &self.residual_ampere,
            &self.residual_gauss,
        ]
    }

    /// True when every residual that the scenario's hypotheses cover is
    /// exactly zero: the four field equations, continuity, the potential
    /// equations when a potential is present, and the constitutive relations
    /// when the observer is metric.
    pub fn is_valid(&self) -> bool {
        self.field_residuals().iter().all(|r| r.is_zero())
            && self.residual_continuity.is_zero()
            && self
                .residual_potential
                .as_ref()
                .is_none_or(|(re, rb)| re.is_zero() && rb.is_zero())
            && (!self.constitutive_applicable
                || (self.residual_constitutive.0.is_zero()
                    && self.residual_constitutive.1.is_zero()))
    }
}

/// True when the observer's τ is exactly flat(T) — which, with τ(T) = 1,
/// forces g(T,T) = 1. The constitutive relations ∗₃E = D, ∗₃H = B are
/// guaranteed only under this hypothesis.
pub fn constitutive_applicable(mink: &Minkowski, obs: &Observer) -> bool {
    obs.tau() == &mink.flat(obs.t())
}

/// Splits the scenario and evaluates every equation of the split system.
pub fn maxwell_residuals(s: &EMScenario) -> SplitReport {
    let obs = s.observer();
    let f = s.field();
    let g = s.excitation();
    let j3 = s.current();
    let em = obs.split_em(Some(f), Some(&g), Some(j3), s.potential());
    let (e, b) = (em.e.unwrap(), em.b.unwrap());
    let (h, dd) = (em.h.unwrap(), em.d.unwrap());
    let (jj, rho) = (em.j.unwrap(), em.rho.unwrap());

    let torque_term_f = torque_contraction(obs, f);
    let curv_term_f = curvature_contraction(obs, f);
    let torque_term_g = torque_contraction(obs, &g);
    let curv_term_g = curvature_contraction(obs, &g);

    let residual_faraday = &(&d3(obs, &e) + &dot(obs, &b)) + &torque_term_f;
    let residual_magnetic_gauss = &d3(obs, &b) - &curv_term_f;
    let residual_ampere = &(&(&d3(obs, &h) - &dot(obs, &dd)) - &jj) - &torque_term_g;
    let residual_gauss = &(&d3(obs, &dd) - &rho) - &curv_term_g;

    SplitReport {
        residual_faraday,
        residual_magnetic_gauss,
        residual_ampere,
        residual_gauss,
        residual_continuity: continuity_residual_for(obs, j3),
        residual_potential: s.potential().map(|_| potential_residuals(s).unwrap()),
        residual_constitutive: constitutive_residuals(s),
        constitutive_applicable: constitutive_applicable(s.minkowski(), obs),
        is_holonomic: obs.is_holonomic(),
        is_torque_free: obs.is_torque_free(),
        torque_term_f,
        curv_term_f,
        torque_term_g,
        curv_term_g,
        e,
        b,
        h,
        d: dd,
        j: jj,
        rho,
        phi: em.phi,
        a3: em.a3,
    }
}

/// Continuity residual ρ̇ + d₃J + Torq(τ)⌟j of the scenario's current.
/// Exactly zero, since a scenario's current always satisfies dj = 0.
pub fn continuity_residual(s: &EMScenario) -> KForm {
    continuity_residual_for(s.observer(), s.current())
}

/// Continuity residual for an arbitrary current 3-form (not required to be
/// closed): ρ̇ + d₃J + Torq(τ)⌟j with J = −i_T j, ρ = i_T(τ ∧ j). Zero
/// exactly when the temporal part of the statement dj = 0 holds; for dj ≠ 0
/// it reports the violation i_T(dj).
pub fn continuity_residual_for(obs: &Observer, j: &KForm) -> KForm {
    assert_eq!(j.degree(), 3, "continuity: current must be a 3-form");
    let big_j = -&obs.temporal_part(j);
    let rho = obs.spatial_part(j);
    &(&dot(obs, &rho) + &d3(obs, &big_j)) + &torque_contraction(obs, j)
}

/// Residuals of the potential equations
///
/// ```text
///   E = −Ȧ₃ + d₃φ − Torq(τ)⌟a      B = d₃A₃ − Curv(τ)⌟a
/// ```
///
/// as (E − rhs, B − rhs); both exactly zero since the scenario's field is
/// F = da whenever a potential is present.
pub fn potential_residuals(s: &EMScenario) -> Result<(KForm, KForm)> {
    let a = s.potential().ok_or(Error::MissingPotential)?;
    let obs = s.observer();
    let em = obs.split_em(Some(s.field()), None, None, Some(a));
    let (e, b) = (em.e.unwrap(), em.b.unwrap());
    let (phi, a3) = (em.phi.unwrap(), em.a3.unwrap());
    let e_rhs = &(&d3(obs, &phi) - &dot(obs, &a3)) - &torque_contraction(obs, a);
    let b_rhs = &d3(obs, &a3) - &curvature_contraction(obs, a);
    Ok((&e - &e_rhs, &b - &b_rhs))
}

/// Residuals of the constitutive relations (∗₃E − D, ∗₃H − B). These vanish
/// for metric observers (τ = flat(T), g(T,T) = 1); for the projective
/// generalization τ(T) = 1 they are reported as-is.
pub fn constitutive_residuals(s: &EMScenario) -> (KForm, KForm) {
    let obs = s.observer();
    let g = s.excitation();
    let em = obs.split_em(Some(s.field()), Some(&g), None, None);
    let (e, b) = (em.e.unwrap(), em.b.unwrap());
    let (h, dd) = (em.h.unwrap(), em.d.unwrap());
    let star3_e = obs.reduced_hodge(s.minkowski(), &e);
    let star3_h = obs.reduced_hodge(s.minkowski(), &h);
    (&star3_e - &dd, &star3_h - &b)
}

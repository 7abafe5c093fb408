//! Differential operators and the vector-valued-form layer: exterior
//! derivative, Lie bracket and derivative, contraction with vector-forms,
//! the operator superbracket, Frölicher–Nijenhuis brackets, and Nijenhuis
//! torsion.
//!
//! The Lie derivative of forms is implemented by the direct component
//! formula, not through Cartan's identity, so `𝔏_X = i_X∘d + d∘i_X` is a
//! genuine cross-check between independent code paths. Likewise the
//! four-term Nijenhuis torsion, the eight-term endomorphism bracket, and the
//! two closed forms for decomposable endomorphisms are implemented
//! separately and tested against each other.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::forms::{Chart, KForm, VectorField};
use crate::ratfunc::{Rational, ScalarField};

/// Exterior derivative; degree +1, `d∘d = 0`.
pub fn d(w: &KForm) -> KForm {
    let chart = w.chart();
    let mut out = KForm::zero(chart, w.degree() + 1);
    for (key, c) in w.components() {
        for m in 0..chart.dimension() {
            let dc = c.partial_idx(m);
            if dc.is_zero() {
                continue;
            }
            let mut idx = Vec::with_capacity(key.len() + 1);
            idx.push(m as u8);
            idx.extend_from_slice(key);
            out.add_component(&idx, dc);
        }
    }
    out
}

/// Lie bracket of vector fields: `[X,Y]ⁱ = X(Yⁱ) − Y(Xⁱ)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    assert!(
        x.chart() == y.chart(),
        "lie_bracket: operands live on different charts"
    );
    let comps = (0..x.chart().dimension())
        .map(|i| &x.apply(y.component(i)) - &y.apply(x.component(i)))
        .collect();
    VectorField::from_components(x.chart(), comps)
}

/// All strictly increasing index tuples of length `k` drawn from `0..n`.
/// All strictly increasing index tuples of length `k` drawn from `0..n` —
/// the basis labels of Λᵏ on an n-dimensional chart.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<u8>> {
    if k > n {
        return Vec::new();
    }
    let mut acc = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &acc {
            let lo = t.last().map_or(0, |&m| m + 1);
            for i in lo..n as u8 {
                let mut t2 = t.clone();
                t2.push(i);
                next.push(t2);
            }
        }
        acc = next;
    }
    acc
}

/// Lie derivative of a form along a vector field, by the direct component
/// formula `(𝔏_X ω)_I = X(ω_I) + Σ_α Σ_m (∂_{I_α} Xᵐ) ω_{I[α→m]}` — not via
/// Cartan's identity, which is verified against this as a theorem.
pub fn lie_derivative(x: &VectorField, w: &KForm) -> KForm {
    let chart = w.chart();
    assert!(
        x.chart() == chart,
        "lie_derivative: operands live on different charts"
    );
    let n = chart.dimension();
    let k = w.degree();
    let mut out = KForm::zero(chart, k);
    for key in increasing_tuples(n, k) {
        let mut acc = x.apply(&w.component(&key));
        for pos in 0..k {
            for m in 0..n {
                let dxm = x.component(m).partial_idx(key[pos] as usize);
                if dxm.is_zero() {
                    continue;
                }
                let mut replaced = key.clone();
                replaced[pos] = m as u8;
                let val = w.component(&replaced);
                if !val.is_zero() {
                    acc = &acc + &(&dxm * &val);
                }
            }
        }
        out.add_component(&key, acc);
    }
    out
}

/// Vector-valued k-form `Σᵢ ωᵢ ⊗ ∂ᵢ` (an element of 𝒳M ⊗ Λᵏ): degree 0 is a
/// vector field with function coefficients, degree 1 an endomorphism field.
#[derive(Clone, Debug)]
pub struct VectorForm {
    chart: Chart,
    degree: usize,
    comps: Vec<KForm>,
}

/// Like [`KForm`], the zero vector-form is degree-agnostic: two vector-forms
/// are equal when they share a chart and have componentwise equal forms,
/// with recorded degrees compared only between nonzero values.
impl PartialEq for VectorForm {
    fn eq(&self, other: &Self) -> bool {
        self.chart == other.chart
            && (self.degree == other.degree || (self.is_zero() && other.is_zero()))
            && self.comps == other.comps
    }
}

impl Eq for VectorForm {}

impl VectorForm {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        let comps = vec![KForm::zero(chart, degree); chart.dimension()];
        VectorForm {
            chart: chart.clone(),
            degree,
            comps,
        }
    }

    /// `X ⊗ α` — each output component is `Xⁱ·α`.
    pub fn homogeneous(x: &VectorField, alpha: &KForm) -> Self {
        assert!(
            x.chart() == alpha.chart(),
            "homogeneous vector-form: mixed charts"
        );
        let comps = (0..x.chart().dimension())
            .map(|i| alpha.scale(x.component(i)))
            .collect();
        VectorForm {
            chart: x.chart().clone(),
            degree: alpha.degree(),
            comps,
        }
    }

    pub fn from_components(chart: &Chart, comps: Vec<KForm>) -> Self {
        assert_eq!(
            comps.len(),
            chart.dimension(),
            "one form per output component"
        );
        let degree = comps.first().map_or(0, KForm::degree);
        for c in &comps {
            assert!(c.chart() == chart, "component form on a different chart");
            assert!(
                c.degree() == degree || c.is_zero(),
                "component forms of mixed degrees"
            );
        }
        VectorForm {
            chart: chart.clone(),
            degree,
            comps,
        }
    }

    /// A plain vector field as a degree-0 vector-form.
    pub fn from_vector_field(x: &VectorField) -> Self {
        let comps = x
            .components()
            .iter()
            .map(|c| KForm::from_scalar(x.chart(), c.clone()))
            .collect();
        VectorForm {
            chart: x.chart().clone(),
            degree: 0,
            comps,
        }
    }

    /// The identity endomorphism `Σᵢ dxⁱ ⊗ ∂ᵢ`.
    pub fn identity(chart: &Chart) -> Self {
        let comps = (0..chart.dimension())
            .map(|i| KForm::coordinate_differential(chart, i))
            .collect();
        VectorForm {
            chart: chart.clone(),
            degree: 1,
            comps,
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The form paired with `∂ᵢ`.
    pub fn component(&self, i: usize) -> &KForm {
        &self.comps[i]
    }

    pub fn components(&self) -> &[KForm] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(KForm::is_zero)
    }

    /// Evaluates on `degree` vector fields, producing a vector field.
    pub fn evaluate(&self, vectors: &[&VectorField]) -> VectorField {
        let comps = self.comps.iter().map(|c| c.evaluate(vectors)).collect();
        VectorField::from_components(&self.chart, comps)
    }

    /// Endomorphism action `K(X)` (degree-1 vector-forms only).
    pub fn apply_to_vector(&self, x: &VectorField) -> VectorField {
        assert_eq!(
            self.degree, 1,
            "apply_to_vector needs a degree-1 vector-form"
        );
        self.evaluate(&[x])
    }

    /// A degree-0 vector-form as the plain vector field it is.
    pub fn as_vector_field(&self) -> VectorField {
        assert_eq!(
            self.degree, 0,
            "as_vector_field needs a degree-0 vector-form"
        );
        let comps = self.comps.iter().map(KForm::as_scalar).collect();
        VectorField::from_components(&self.chart, comps)
    }

    pub fn scale(&self, c: &ScalarField) -> Self {
        let comps = self.comps.iter().map(|w| w.scale(c)).collect();
        VectorForm {
            chart: self.chart.clone(),
            degree: self.degree,
            comps,
        }
    }

    pub fn scale_rat(&self, c: &Rational) -> Self {
        self.scale(&ScalarField::constant(self.chart.vars(), c.clone()))
    }
}

impl Add for &VectorForm {
    type Output = VectorForm;
    fn add(self, rhs: &VectorForm) -> VectorForm {
        assert!(self.chart == rhs.chart, "vector-form add: mixed charts");
        let comps = self
            .comps
            .iter()
            .zip(&rhs.comps)
            .map(|(a, b)| a + b)
            .collect();
        VectorForm {
            chart: self.chart.clone(),
            degree: self.degree.max(rhs.degree),
            comps,
        }
    }
}

impl Sub for &VectorForm {
    type Output = VectorForm;
    fn sub(self, rhs: &VectorForm) -> VectorForm {
        self + &(-rhs)
    }
}

impl Neg for &VectorForm {
    type Output = VectorForm;
    fn neg(self) -> VectorForm {
        let comps = self.comps.iter().map(|w| -w).collect();
        VectorForm {
            chart: self.chart.clone(),
            degree: self.degree,
            comps,
        }
    }
}

impl fmt::Display for VectorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{}] ⊗ ∂{}", c, self.chart.coordinate_name(i))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Contraction with a vector-form: `i_A ω = Σᵢ ωᵢ... ` — for `A = Σᵢ αᵢ⊗∂ᵢ`,
/// `i_A ω = Σᵢ αᵢ ∧ (i_{∂ᵢ} ω)`; for homogeneous `A = X⊗α` this is
/// `α ∧ i_X ω`. Degree changes by `deg A − 1`.
pub fn contract_vf(a: &VectorForm, w: &KForm) -> KForm {
    assert!(
        a.chart() == w.chart(),
        "contract_vf: operands live on different charts"
    );
    let k = a.degree();
    if w.degree() == 0 {
        // contraction annihilates functions; keep the bookkeeping degree
        return KForm::zero(w.chart(), k.saturating_sub(1));
    }
    let mut out = KForm::zero(w.chart(), k + w.degree() - 1);
    for i in 0..a.chart().dimension() {
        let ai = a.component(i);
        if ai.is_zero() {
            continue;
        }
        let ei = VectorField::coordinate(a.chart(), i);
        out = &out + &ai.wedge(&w.interior(&ei));
    }
    out
}

/// A graded operator on forms, held as a composition tree over the primitive
/// derivations `d`, `i_A`, `𝔏_A` and superbrackets/differences thereof.
/// Equality testing is extensional on the chart's coordinate functions and
/// coordinate differentials, which determine any derivation.
#[derive(Clone, Debug)]
pub enum DerivationOp {
    /// The exterior derivative (degree +1).
    ExteriorD(Chart),
    /// Contraction `i_A` with a vector-valued k-form (degree k−1).
    Contract(VectorForm),
    /// Lie derivative `𝔏_A = [[i_A, d]]` (degree k).
    Lie(VectorForm),
    /// `[[a, b]] = a∘b − (−1)^{deg a · deg b} b∘a`.
    Superbracket(Box<DerivationOp>, Box<DerivationOp>),
    /// Pointwise difference `a − b` of operators of equal degree.
    Difference(Box<DerivationOp>, Box<DerivationOp>),
}

impl DerivationOp {
    pub fn lie(a: &VectorForm) -> Self {
        DerivationOp::Lie(a.clone())
    }

    pub fn contract(a: &VectorForm) -> Self {
        DerivationOp::Contract(a.clone())
    }

    pub fn exterior_d(chart: &Chart) -> Self {
        DerivationOp::ExteriorD(chart.clone())
    }

    pub fn chart(&self) -> &Chart {
        match self {
            DerivationOp::ExteriorD(c) => c,
            DerivationOp::Contract(a) | DerivationOp::Lie(a) => a.chart(),
            DerivationOp::Superbracket(a, _) | DerivationOp::Difference(a, _) => a.chart(),
        }
    }

    /// Operator degree: how much a form's degree shifts under `apply`.
    pub fn degree(&self) -> i64 {
        match self {
            DerivationOp::ExteriorD(_) => 1,
            DerivationOp::Contract(a) => a.degree() as i64 - 1,
            DerivationOp::Lie(a) => a.degree() as i64,
            DerivationOp::Superbracket(a, b) => a.degree() + b.degree(),
            DerivationOp::Difference(a, b) => {
                debug_assert_eq!(
                    a.degree(),
                    b.degree(),
                    "difference of mixed-degree operators"
                );
                a.degree()
            }
        }
    }

    pub fn apply(&self, w: &KForm) -> KForm {
        match self {
            DerivationOp::ExteriorD(_) => d(w),
            DerivationOp::Contract(a) => contract_vf(a, w),
            DerivationOp::Lie(a) => {
                // 𝔏_A = [[i_A, d]] = i_A∘d − (−1)^{k−1} d∘i_A
                let k = a.degree() as i64;
                let iad = contract_vf(a, &d(w));
                let dia = d(&contract_vf(a, w));
                if (k - 1).rem_euclid(2) == 0 {
                    &iad - &dia
                } else {
                    &iad + &dia
                }
            }
            DerivationOp::Superbracket(a, b) => {
                let ab = a.apply(&b.apply(w));
                let ba = b.apply(&a.apply(w));
                if (a.degree() * b.degree()).rem_euclid(2) == 0 {
                    &ab - &ba
                } else {
                    &ab + &ba
                }
            }
            DerivationOp::Difference(a, b) => &a.apply(w) - &b.apply(w),
        }
    }

    /// Extensional zero test: the operator annihilates every coordinate
    /// function and every coordinate differential of its chart. Sufficient
    /// for derivations, which are determined by their action on generators.
    pub fn is_zero(&self) -> bool {
        let chart = self.chart().clone();
        for i in 0..chart.dimension() {
            let f = KForm::from_scalar(&chart, chart.coordinate_function(i));
            if !self.apply(&f).is_zero() {
                return false;
            }
            let dxi = KForm::coordinate_differential(&chart, i);
            if !self.apply(&dxi).is_zero() {
                return false;
            }
        }
        true
    }
}

/// `[[a, b]]` as an operator value.
pub fn superbracket(a: DerivationOp, b: DerivationOp) -> DerivationOp {
    DerivationOp::Superbracket(Box::new(a), Box::new(b))
}

/// Extensional zero test of an operator (see [`DerivationOp::is_zero`]).
pub fn derivation_is_zero(op: &DerivationOp) -> bool {
    op.is_zero()
}

/// The Lie derivative along a vector-form, as an operator value.
pub fn lie_derivative_vf(a: &VectorForm) -> DerivationOp {
    DerivationOp::lie(a)
}

/// Frölicher–Nijenhuis bracket of a vector field with an endomorphism field:
/// `[T, K](X) = [T, KX] − K([T, X])` — the Lie derivative of the tensor `K`
/// along `T`.
pub fn fn_bracket_vf(t: &VectorField, k: &VectorForm) -> VectorForm {
    assert!(
        t.chart() == k.chart(),
        "fn_bracket_vf: operands live on different charts"
    );
    assert_eq!(
        k.degree(),
        1,
        "fn_bracket_vf needs an endomorphism (degree-1) field"
    );
    let chart = k.chart().clone();
    let n = chart.dimension();
    let cols: Vec<VectorField> = (0..n)
        .map(|j| {
            let ej = VectorField::coordinate(&chart, j);
            let kej = k.apply_to_vector(&ej);
            let lhs = lie_bracket(t, &kej);
            let rhs = k.apply_to_vector(&lie_bracket(t, &ej));
            &lhs - &rhs
        })
        .collect();
    assemble_from_columns(&chart, 1, |i, key| {
        cols[key[0] as usize].component(i).clone()
    })
}

/// Frölicher–Nijenhuis bracket of two endomorphism fields, by the eight-term
/// formula: `[K,L](X,Y) = [KX,LY] − [KY,LX] − L[KX,Y] + L[KY,X] − K[LX,Y]
/// + K[LY,X] + LK[X,Y] + KL[X,Y]`, evaluated on coordinate pairs.
pub fn fn_bracket_endo(k: &VectorForm, l: &VectorForm) -> VectorForm {
    assert!(
        k.chart() == l.chart(),
        "fn_bracket_endo: operands live on different charts"
    );
    assert_eq!(k.degree(), 1, "fn_bracket_endo needs degree-1 vector-forms");
    assert_eq!(l.degree(), 1, "fn_bracket_endo needs degree-1 vector-forms");
    let chart = k.chart().clone();
    let n = chart.dimension();
    let mut values = Vec::new(); // indexed by position in increasing_tuples(n, 2)
    for pair in increasing_tuples(n, 2) {
        let x = VectorField::coordinate(&chart, pair[0] as usize);
        let y = VectorField::coordinate(&chart, pair[1] as usize);
        let kx = k.apply_to_vector(&x);
        let ky = k.apply_to_vector(&y);
        let lx = l.apply_to_vector(&x);
        let ly = l.apply_to_vector(&y);
        let mut v = lie_bracket(&kx, &ly);
        v = &v - &lie_bracket(&ky, &lx);
        v = &v - &l.apply_to_vector(&lie_bracket(&kx, &y));
        v = &v + &l.apply_to_vector(&lie_bracket(&ky, &x));
        v = &v - &k.apply_to_vector(&lie_bracket(&lx, &y));
        v = &v + &k.apply_to_vector(&lie_bracket(&ly, &x));
        let xy = lie_bracket(&x, &y);
        v = &v + &l.apply_to_vector(&k.apply_to_vector(&xy));
        v = &v + &k.apply_to_vector(&l.apply_to_vector(&xy));
        values.push(v);
    }
    let pairs = increasing_tuples(n, 2);
    assemble_from_columns(&chart, 2, |i, key| {
        let pos = pairs.iter().position(|p| p == key).unwrap();
        values[pos].component(i).clone()
    })
}

/// Nijenhuis torsion by the four-term formula `N_K(X,Y) = [KX,KY] − K[KX,Y]
/// − K[X,KY] + K²[X,Y]`, an implementation independent of
/// [`fn_bracket_endo`] (which must satisfy `N_K = ½[K,K]`).
pub fn nijenhuis_torsion(k: &VectorForm) -> VectorForm {
    assert_eq!(
        k.degree(),
        1,
        "nijenhuis_torsion needs an endomorphism (degree-1) field"
    );
    let chart = k.chart().clone();
    let n = chart.dimension();
    let pairs = increasing_tuples(n, 2);
    let values: Vec<VectorField> = pairs
        .iter()
        .map(|pair| {
            let x = VectorField::coordinate(&chart, pair[0] as usize);
            let y = VectorField::coordinate(&chart, pair[1] as usize);
            let kx = k.apply_to_vector(&x);
            let ky = k.apply_to_vector(&y);
            let mut v = lie_bracket(&kx, &ky);
            v = &v - &k.apply_to_vector(&lie_bracket(&kx, &y));
            v = &v - &k.apply_to_vector(&lie_bracket(&x, &ky));
            let xy = lie_bracket(&x, &y);
            v = &v + &k.apply_to_vector(&k.apply_to_vector(&xy));
            v
        })
        .collect();
    assemble_from_columns(&chart, 2, |i, key| {
        let pos = pairs.iter().position(|p| p == key).unwrap();
        values[pos].component(i).clone()
    })
}

/// Closed form of the torsion of a decomposable endomorphism `X⊗α`:
/// `X ⊗ (α ∧ 𝔏_X α − α(X)·dα)`.
pub fn torsion_closed_form_lie(x: &VectorField, alpha: &KForm) -> VectorForm {
    assert_eq!(
        alpha.degree(),
        1,
        "decomposable endomorphism needs a 1-form"
    );
    let la = lie_derivative(x, alpha);
    let ax = alpha.evaluate(&[x]);
    let coeff = &alpha.wedge(&la) - &d(alpha).scale(&ax);
    VectorForm::homogeneous(x, &coeff)
}

/// The other closed form of the same torsion:
/// `X ⊗ (α ∧ d(α(X)) − i_X(α ∧ dα))`.
pub fn torsion_closed_form_contract(x: &VectorField, alpha: &KForm) -> VectorForm {
    assert_eq!(
        alpha.degree(),
        1,
        "decomposable endomorphism needs a 1-form"
    );
    let chart = alpha.chart();
    let ax = KForm::from_scalar(chart, alpha.evaluate(&[x]));
    let term1 = alpha.wedge(&d(&ax));
    let term2 = alpha.wedge(&d(alpha)).interior(x);
    VectorForm::homogeneous(x, &(&term1 - &term2))
}

/// Builds a vector-valued k-form from a value lookup `(output component i,
/// increasing key) → coefficient`.
fn assemble_from_columns(
    chart: &Chart,
    degree: usize,
    value: impl Fn(usize, &[u8]) -> ScalarField,
) -> VectorForm {
    let n = chart.dimension();
    let keys = increasing_tuples(n, degree);
    let comps = (0..n)
        .map(|i| {
            let mut w = KForm::zero(chart, degree);
            for key in &keys {
                w.add_component(key, value(i, key));
            }
            w
        })
        .collect();
    VectorForm::from_components(chart, comps)
}

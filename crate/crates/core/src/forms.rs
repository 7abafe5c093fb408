//! Exterior algebra over a coordinate chart: differential forms and vector
//! fields with rational-function components.
//!
//! Components of a k-form are stored only for strictly increasing index
//! tuples; all sign bookkeeping happens through permutation parity at
//! operation time, so structural equality of the component maps is exactly
//! mathematical equality. Zero components are never stored. Forms of degree
//! greater than the chart dimension exist only as zero forms (their component
//! maps are necessarily empty).
//!
//! Mixing values from different charts, or adding forms of different degrees,
//! is a programming error and panics; data-dependent failures return
//! [`crate::error::Error`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::ratfunc::{Rational, ScalarField, Vars};

/// A coordinate chart: ordered coordinate names, optionally carrying a
/// diagonal metric signature of ±1 entries (used by the Minkowski layer).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    vars: Vars,
    signature: Option<Vec<i8>>,
}

impl Chart {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(Chart {
            vars: Vars::new(names)?,
            signature: None,
        })
    }

    pub fn with_signature<I, S>(names: I, signature: Vec<i8>) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars = Vars::new(names)?;
        if signature.len() != vars.len() {
            return Err(Error::InvalidChart(format!(
                "signature lists {} entries for {} coordinates",
                signature.len(),
                vars.len()
            )));
        }
        if signature.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidChart(
                "signature entries must be +1 or -1".into(),
            ));
        }
        Ok(Chart {
            vars,
            signature: Some(signature),
        })
    }

    pub fn dimension(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn signature(&self) -> Option<&[i8]> {
        self.signature.as_deref()
    }

    pub fn coordinate_name(&self, idx: usize) -> &str {
        self.vars.name(idx)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.index_of(name)
    }

    /// The coordinate function `x^idx` as a scalar.
    pub fn coordinate_function(&self, idx: usize) -> ScalarField {
        ScalarField::var_idx(&self.vars, idx)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.vars)
    }
}

fn same_chart<'a>(a: &'a Chart, b: &Chart, what: &str) -> &'a Chart {
    assert!(
        a == b,
        "{what}: operands live on different charts ({a} vs {b})"
    );
    a
}

/// Sorts `indices` ascending, returning `None` when an index repeats (the
/// term is zero) and otherwise whether the permutation was odd.
fn sort_with_parity(indices: &mut [u8]) -> Option<bool> {
    let mut odd = false;
    // insertion sort; tuples have length <= 8
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

/// Differential form of fixed degree with [`ScalarField`] components.
#[derive(Clone, Debug)]
pub struct KForm {
    chart: Chart,
    degree: usize,
    comps: BTreeMap<Vec<u8>, ScalarField>,
}

/// Forms are equal when they live on the same chart and have identical
/// components. The zero form is degree-agnostic: operator compositions
/// produce zeros whose bookkeeping degree reflects the path taken (for
/// example `τ ∧ η` is a zero of recorded degree 5 while `∗(i_T 1)` is a zero
/// of degree 4), and all of them are the same form. Nonzero forms still
/// compare by exact degree and components.
impl PartialEq for KForm {
    fn eq(&self, other: &Self) -> bool {
        self.chart == other.chart
            && (self.degree == other.degree || (self.is_zero() && other.is_zero()))
            && self.comps == other.comps
    }
}

impl Eq for KForm {}

impl KForm {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        assert!(degree <= 2 * Vars::MAX, "form degree {degree} out of range");
        KForm {
            chart: chart.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// Degree-0 form from a scalar.
    pub fn from_scalar(chart: &Chart, s: ScalarField) -> Self {
        assert!(
            s.vars() == chart.vars(),
            "scalar on a different coordinate set"
        );
        let mut w = Self::zero(chart, 0);
        w.add_component(&[], s);
        w
    }

    pub fn constant(chart: &Chart, c: Rational) -> Self {
        Self::from_scalar(chart, ScalarField::constant(chart.vars(), c))
    }

    /// The coordinate differential `dx^idx`.
    pub fn coordinate_differential(chart: &Chart, idx: usize) -> Self {
        Self::basis(chart, &[idx as u8])
    }

    /// Basis form `dx^{i_1} ∧ … ∧ dx^{i_k}` for the given indices (any order;
    /// repeated indices give the zero form).
    pub fn basis(chart: &Chart, indices: &[u8]) -> Self {
        let mut w = Self::zero(chart, indices.len());
        w.add_component(indices, ScalarField::one(chart.vars()));
        w
    }

    pub fn from_components<I>(chart: &Chart, degree: usize, comps: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u8>, ScalarField)>,
    {
        let mut w = Self::zero(chart, degree);
        for (idx, c) in comps {
            w.add_component(&idx, c);
        }
        w
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Iterates stored components (strictly increasing keys, no zeros).
    pub fn components(&self) -> impl Iterator<Item = (&Vec<u8>, &ScalarField)> {
        self.comps.iter()
    }

    /// Adds `c · dx^indices` (indices in any order, parity applied).
    pub fn add_component(&mut self, indices: &[u8], c: ScalarField) {
        assert_eq!(
            indices.len(),
            self.degree,
            "component index tuple has wrong length"
        );
        assert!(
            c.vars() == self.chart.vars(),
            "component scalar on a different coordinate set"
        );
        if c.is_zero() {
            return;
        }
        let dim = self.chart.dimension() as u8;
        assert!(
            indices.iter().all(|&i| i < dim),
            "coordinate index out of range"
        );
        let mut key = indices.to_vec();
        let Some(odd) = sort_with_parity(&mut key) else {
            return; // repeated index: the term is zero
        };
        let signed = if odd { -&c } else { c };
        use std::collections::btree_map::Entry;
        match self.comps.entry(key) {
            Entry::Vacant(e) => {
                e.insert(signed);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &signed;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// The component for `indices` in any order, with parity sign; zero for
    /// absent or repeated indices.
    pub fn component(&self, indices: &[u8]) -> ScalarField {
        assert_eq!(
            indices.len(),
            self.degree,
            "component index tuple has wrong length"
        );
        let mut key = indices.to_vec();
        let Some(odd) = sort_with_parity(&mut key) else {
            return ScalarField::zero(self.chart.vars());
        };
        match self.comps.get(&key) {
            Some(c) if odd => -c,
            Some(c) => c.clone(),
            None => ScalarField::zero(self.chart.vars()),
        }
    }

    /// The scalar value of a degree-0 form.
    pub fn as_scalar(&self) -> ScalarField {
        assert_eq!(self.degree, 0, "as_scalar on a form of positive degree");
        self.component(&[])
    }

    pub fn scale(&self, c: &ScalarField) -> Self {
        let mut w = Self::zero(&self.chart, self.degree);
        if c.is_zero() {
            return w;
        }
        for (k, v) in &self.comps {
            w.add_component(k, v * c);
        }
        w
    }

    pub fn scale_rat(&self, c: &Rational) -> Self {
        self.scale(&ScalarField::constant(self.chart.vars(), c.clone()))
    }

    /// `self + c·other`; charts must agree and degrees must match, except
    /// that the zero form inhabits every degree: adding a zero form of a
    /// different bookkeeping degree is allowed and is a no-op on the values.
    pub fn add_scale(&self, other: &KForm, c: &ScalarField) -> Self {
        same_chart(&self.chart, &other.chart, "add_scale");
        if self.degree != other.degree {
            if other.is_zero() {
                return self.clone();
            }
            if self.is_zero() {
                return other.scale(c);
            }
            panic!(
                "add_scale: mixed degrees {} and {}",
                self.degree, other.degree
            );
        }
        let mut w = self.clone();
        if c.is_zero() {
            return w;
        }
        for (k, v) in &other.comps {
            w.add_component(k, v * c);
        }
        w
    }

    /// Exterior product.
    pub fn wedge(&self, rhs: &KForm) -> Self {
        same_chart(&self.chart, &rhs.chart, "wedge");
        let mut w = Self::zero(&self.chart, self.degree + rhs.degree);
        for (ka, ca) in &self.comps {
            for (kb, cb) in &rhs.comps {
                if ka.iter().any(|i| kb.contains(i)) {
                    continue;
                }
                // concatenated key; add_component sorts and applies the parity
                let mut key: Vec<u8> = Vec::with_capacity(ka.len() + kb.len());
                key.extend_from_slice(ka);
                key.extend_from_slice(kb);
                w.add_component(&key, ca * cb);
            }
        }
        w
    }

    /// Interior product `i_X self` (contraction in the first slot).
    pub fn interior(&self, x: &VectorField) -> Self {
        same_chart(&self.chart, &x.chart, "interior product");
        if self.degree == 0 {
            return Self::zero(&self.chart, 0);
        }
        let mut w = Self::zero(&self.chart, self.degree - 1);
        for (k, c) in &self.comps {
            for (pos, &i) in k.iter().enumerate() {
                let xi = x.component(i as usize);
                if xi.is_zero() {
                    continue;
                }
                let mut key = k.clone();
                key.remove(pos);
                let term = c * xi;
                let term = if pos % 2 == 1 { -&term } else { term };
                w.add_component(&key, term);
            }
        }
        w
    }

    /// Evaluates the k-form on k vector fields by iterated contraction.
    pub fn evaluate(&self, vectors: &[&VectorField]) -> ScalarField {
        assert_eq!(
            vectors.len(),
            self.degree,
            "evaluate: need one vector per degree"
        );
        let mut w = self.clone();
        for x in vectors {
            w = w.interior(x);
        }
        w.as_scalar()
    }
}

impl Add for &KForm {
    type Output = KForm;
    fn add(self, rhs: &KForm) -> KForm {
        self.add_scale(rhs, &ScalarField::one(self.chart.vars()))
    }
}

impl Sub for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        self.add_scale(
            rhs,
            &ScalarField::constant(self.chart.vars(), crate::ratfunc::rat_int(-1)),
        )
    }
}

impl Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        KForm::zero(&self.chart, self.degree).add_scale(
            self,
            &ScalarField::constant(self.chart.vars(), crate::ratfunc::rat_int(-1)),
        )
    }
}

macro_rules! owned_form_ops {
    ($($trait:ident :: $m:ident for $t:ty),*) => {$(
        impl $trait for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { $trait::$m(&self, &rhs) }
        }
        impl $trait<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t { $trait::$m(&self, rhs) }
        }
    )*};
}
owned_form_ops!(Add::add for KForm, Sub::sub for KForm);

impl Neg for KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        -&self
    }
}

/// Renders a basis key like `dt^dx`; empty key renders as `1`.
pub fn basis_label(chart: &Chart, key: &[u8]) -> String {
    if key.is_empty() {
        return "1".to_string();
    }
    key.iter()
        .map(|&i| format!("d{}", chart.coordinate_name(i as usize)))
        .collect::<Vec<_>>()
        .join("^")
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        if self.degree == 0 {
            return write!(f, "{}", self.as_scalar());
        }
        let mut first = true;
        for (k, c) in &self.comps {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}) {}", c, basis_label(&self.chart, k))?;
        }
        Ok(())
    }
}

/// Vector field with one [`ScalarField`] component per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    chart: Chart,
    comps: Vec<ScalarField>,
}

impl VectorField {
    pub fn zero(chart: &Chart) -> Self {
        let z = ScalarField::zero(chart.vars());
        VectorField {
            chart: chart.clone(),
            comps: vec![z; chart.dimension()],
        }
    }

    /// The coordinate field `∂/∂x^idx`.
    pub fn coordinate(chart: &Chart, idx: usize) -> Self {
        assert!(idx < chart.dimension(), "coordinate index out of range");
        let mut v = Self::zero(chart);
        v.comps[idx] = ScalarField::one(chart.vars());
        v
    }

    pub fn from_components(chart: &Chart, comps: Vec<ScalarField>) -> Self {
        assert_eq!(
            comps.len(),
            chart.dimension(),
            "one component per coordinate"
        );
        for c in &comps {
            assert!(
                c.vars() == chart.vars(),
                "component scalar on a different coordinate set"
            );
        }
        VectorField {
            chart: chart.clone(),
            comps,
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn component(&self, idx: usize) -> &ScalarField {
        &self.comps[idx]
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarField::is_zero)
    }

    /// Directional derivative `X(f) = Σ Xⁱ ∂ᵢ f`.
    pub fn apply(&self, f: &ScalarField) -> ScalarField {
        assert!(
            f.vars() == self.chart.vars(),
            "scalar on a different coordinate set"
        );
        let mut acc = ScalarField::zero(self.chart.vars());
        for (i, xi) in self.comps.iter().enumerate() {
            if !xi.is_zero() {
                acc = &acc + &(xi * &f.partial_idx(i));
            }
        }
        acc
    }

    pub fn scale(&self, c: &ScalarField) -> Self {
        let comps = self.comps.iter().map(|v| v * c).collect();
        VectorField {
            chart: self.chart.clone(),
            comps,
        }
    }

    pub fn add_scale(&self, other: &VectorField, c: &ScalarField) -> Self {
        same_chart(&self.chart, &other.chart, "vector add_scale");
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a + &(b * c))
            .collect();
        VectorField {
            chart: self.chart.clone(),
            comps,
        }
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        self.add_scale(rhs, &ScalarField::one(self.chart.vars()))
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        self.add_scale(
            rhs,
            &ScalarField::constant(self.chart.vars(), crate::ratfunc::rat_int(-1)),
        )
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField::zero(&self.chart).add_scale(
            self,
            &ScalarField::constant(self.chart.vars(), crate::ratfunc::rat_int(-1)),
        )
    }
}

owned_form_ops!(Add::add for VectorField, Sub::sub for VectorField);

impl Neg for VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        -&self
    }
}

impl fmt::Display for VectorField {
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
            write!(f, "({}) ∂{}", c, self.chart.coordinate_name(i))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::rat_int;

    fn chart() -> Chart {
        Chart::new(["t", "x", "y", "z"]).unwrap()
    }

    fn sf(chart: &Chart, name: &str) -> ScalarField {
        ScalarField::var(chart.vars(), name).unwrap()
    }

    #[test]
    fn wedge_basics() {
        let ch = chart();
        let dt = KForm::coordinate_differential(&ch, 0);
        let dx = KForm::coordinate_differential(&ch, 1);
        let dy = KForm::coordinate_differential(&ch, 2);

        let dtdx = dt.wedge(&dx);
        assert_eq!(dtdx, KForm::basis(&ch, &[0, 1]));
        assert_eq!(dx.wedge(&dt), -&dtdx);

        // repeated factor dies
        let xdy = dy.scale(&sf(&ch, "x"));
        assert!(xdy.wedge(&dx.wedge(&dy)).is_zero());

        // degree beyond the dimension is the zero form
        let eta = KForm::basis(&ch, &[0, 1, 2, 3]);
        let top = eta.wedge(&dt);
        assert_eq!(top.degree(), 5);
        assert!(top.is_zero());
    }

    #[test]
    fn wedge_graded_commutativity() {
        let ch = chart();
        let a = KForm::basis(&ch, &[0]).scale(&sf(&ch, "x")); // 1-form
        let b = KForm::basis(&ch, &[1, 2]); // 2-form
                                            // odd*even: a∧b = b∧a
        assert_eq!(a.wedge(&b), b.wedge(&a));
        let c = KForm::basis(&ch, &[3]);
        // odd*odd: a∧c = −c∧a
        assert_eq!(a.wedge(&c), -&c.wedge(&a));
    }

    #[test]
    fn interior_basics() {
        let ch = chart();
        let dt = KForm::coordinate_differential(&ch, 0);
        let dx = KForm::coordinate_differential(&ch, 1);
        let dy = KForm::coordinate_differential(&ch, 2);
        let et = VectorField::coordinate(&ch, 0);

        assert_eq!(dt.wedge(&dx).interior(&et), dx);
        assert_eq!(dx.wedge(&dt).interior(&et), -&dx);
        assert!(dx.wedge(&dy).interior(&et).is_zero());
        // degree 0 contracts to zero
        assert!(KForm::constant(&ch, rat_int(5)).interior(&et).is_zero());
    }

    #[test]
    fn interior_is_graded_leibniz() {
        let ch = chart();
        let x = VectorField::from_components(
            &ch,
            vec![
                sf(&ch, "t"),
                sf(&ch, "x"),
                ScalarField::one(ch.vars()),
                ScalarField::zero(ch.vars()),
            ],
        );
        let a = KForm::basis(&ch, &[0]).scale(&sf(&ch, "y")); // deg 1
        let b = KForm::basis(&ch, &[1, 3]).scale(&sf(&ch, "t")); // deg 2
        let lhs = a.wedge(&b).interior(&x);
        let rhs = &a.interior(&x).wedge(&b) - &a.wedge(&b.interior(&x));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_squares_to_zero() {
        let ch = chart();
        let x = VectorField::from_components(
            &ch,
            vec![
                sf(&ch, "t"),
                sf(&ch, "y"),
                sf(&ch, "x"),
                ScalarField::one(ch.vars()),
            ],
        );
        let w = KForm::from_components(
            &ch,
            2,
            [
                (vec![0, 1], sf(&ch, "x")),
                (vec![1, 2], sf(&ch, "t")),
                (vec![2, 3], ScalarField::one(ch.vars())),
            ],
        );
        assert!(w.interior(&x).interior(&x).is_zero());
    }

    #[test]
    fn add_scale_merges_components() {
        let ch = chart();
        let dt = KForm::coordinate_differential(&ch, 0);
        let two_dt = dt.add_scale(&dt, &ScalarField::one(ch.vars()));
        assert_eq!(two_dt, dt.scale_rat(&rat_int(2)));
        assert!(dt
            .add_scale(&dt, &ScalarField::int(ch.vars(), -1))
            .is_zero());

        let dy = KForm::coordinate_differential(&ch, 2);
        let xdy = dy.scale(&sf(&ch, "x"));
        let sum = xdy.add_scale(&dy, &sf(&ch, "t"));
        assert_eq!(sum.component(&[2]), &sf(&ch, "x") + &sf(&ch, "t"));
    }

    #[test]
    fn component_parity_access() {
        let ch = chart();
        let w = KForm::basis(&ch, &[0, 1]).scale(&sf(&ch, "y"));
        assert_eq!(w.component(&[1, 0]), -&sf(&ch, "y"));
        assert!(w.component(&[1, 1]).is_zero());
    }

    #[test]
    fn evaluation_on_vectors() {
        let ch = chart();
        let w = KForm::basis(&ch, &[0, 1]);
        let et = VectorField::coordinate(&ch, 0);
        let ex = VectorField::coordinate(&ch, 1);
        assert_eq!(w.evaluate(&[&et, &ex]), ScalarField::one(ch.vars()));
        assert_eq!(w.evaluate(&[&ex, &et]), ScalarField::int(ch.vars(), -1));
    }

    #[test]
    fn vector_apply_is_directional_derivative() {
        let ch = chart();
        let x = VectorField::from_components(
            &ch,
            vec![
                ScalarField::one(ch.vars()),
                sf(&ch, "t"),
                ScalarField::zero(ch.vars()),
                ScalarField::zero(ch.vars()),
            ],
        );
        // X = ∂t + t∂x applied to t*x: ∂t(tx) + t∂x(tx) = x + t^2
        let f = &sf(&ch, "t") * &sf(&ch, "x");
        let expect = &sf(&ch, "x") + &(&sf(&ch, "t") * &sf(&ch, "t"));
        assert_eq!(x.apply(&f), expect);
    }

    #[test]
    #[should_panic(expected = "different charts")]
    fn chart_mixing_panics() {
        let a = Chart::new(["t", "x"]).unwrap();
        let b = Chart::new(["u", "v"]).unwrap();
        let _ = KForm::coordinate_differential(&a, 0).wedge(&KForm::coordinate_differential(&b, 0));
    }

    #[test]
    #[should_panic(expected = "mixed degrees")]
    fn degree_mixing_panics() {
        let ch = chart();
        let dt = KForm::coordinate_differential(&ch, 0);
        let w = KForm::basis(&ch, &[0, 1]);
        let _ = dt.add_scale(&w, &ScalarField::one(ch.vars()));
    }
}

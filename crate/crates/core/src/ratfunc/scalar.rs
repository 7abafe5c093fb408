//! Rational functions: exact quotients of multivariate polynomials.
//!
//! Every operation is exact. Equality is decided by cross-multiplication
//! (`a/b = c/d  iff  a*d = c*b`), so it never depends on cancellation having
//! been performed. Fractions are kept in a mild normal form — denominator
//! integer-primitive with positive graded-lex leading coefficient, zero
//! stored as `0/1` — and [`ScalarField::reduce`] optionally divides out the
//! polynomial GCD when smaller representatives are wanted.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratfunc::gcd::exact_div;
use crate::ratfunc::{poly_gcd, Polynomial, Rational, Vars};

/// Exact rational function `num/den` on a fixed coordinate set.
#[derive(Clone, Debug)]
pub struct ScalarField {
    num: Polynomial,
    den: Polynomial,
}

impl ScalarField {
    /// Builds `num/den`, rejecting an identically-zero denominator.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroField);
        }
        assert!(
            num.vars() == den.vars(),
            "numerator and denominator on different coordinates"
        );
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            let one = Polynomial::one(num.vars());
            return ScalarField { num, den: one };
        }
        let mut c = den.content();
        if den.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        ScalarField {
            num: num.map_coeffs(|x| x / &c),
            den: den.map_coeffs(|x| x / &c),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.vars());
        ScalarField { num: p, den }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(Polynomial::zero(vars))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(Polynomial::one(vars))
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(vars, c))
    }

    pub fn int(vars: &Vars, n: i64) -> Self {
        Self::from_poly(Polynomial::int(vars, n))
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        Ok(Self::from_poly(Polynomial::var(vars, name)?))
    }

    pub fn var_idx(vars: &Vars, idx: usize) -> Self {
        Self::from_poly(Polynomial::var_idx(vars, idx))
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one(self.vars())
    }

    /// The underlying polynomial when the denominator is trivial (after
    /// reduction), `None` for genuinely rational values.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        let r = self.reduce();
        if r.den.is_constant() {
            let c = r.den.as_constant().unwrap();
            Some(r.num.map_coeffs(|x| x / &c))
        } else {
            None
        }
    }

    /// The value of a constant scalar, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        let r = self.reduce();
        match (r.num.as_constant(), r.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    /// Divides numerator and denominator by their polynomial GCD. Purely a
    /// size optimisation; the value is unchanged (checked in the tests by
    /// cross-multiplication).
    pub fn reduce(&self) -> Self {
        if self.num.is_zero() {
            return self.clone();
        }
        let g = poly_gcd(&self.num, &self.den);
        if g.is_constant() {
            return self.clone();
        }
        let num = exact_div(&self.num, &g).expect("gcd divides numerator");
        let den = exact_div(&self.den, &g).expect("gcd divides denominator");
        Self::normalized(num, den)
    }

    /// Exact equality by cross-multiplication. Panics if the operands live on
    /// different coordinate sets (use `vars()` to check beforehand).
    pub fn equals(&self, other: &Self) -> bool {
        assert!(
            self.vars() == other.vars(),
            "scalar equality: operands live on different coordinate sets"
        );
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroField);
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Exact partial derivative (quotient rule) with respect to variable `idx`.
    pub fn partial_idx(&self, idx: usize) -> Self {
        if self.den.is_constant() {
            let d = self.den.as_constant().unwrap();
            return Self::from_poly(self.num.partial_idx(idx).map_coeffs(|x| x / &d));
        }
        let dn = self.num.partial_idx(idx);
        let dd = self.den.partial_idx(idx);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        Self::normalized(num, den)
    }

    pub fn partial(&self, name: &str) -> Result<Self> {
        let idx = self
            .vars()
            .index_of(name)
            .ok_or_else(|| Error::UnknownCoordinate(name.into()))?;
        Ok(self.partial_idx(idx))
    }

    /// Evaluates at the point `{coordinate name -> value}`. Every coordinate
    /// must be assigned exactly; unknown names are rejected rather than
    /// ignored.
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        for name in point.keys() {
            if self.vars().index_of(name).is_none() {
                return Err(Error::UnknownCoordinate(name.clone()));
            }
        }
        let mut values = Vec::with_capacity(self.vars().len());
        for name in self.vars().names() {
            match point.get(name) {
                Some(v) => values.push(v.clone()),
                None => return Err(Error::UnassignedCoordinate(name.clone())),
            }
        }
        let d = self.den.eval_slice(&values);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.eval_slice(&values) / d)
    }

    /// Re-expresses the scalar on a superset of its variables, matched by name.
    pub fn extend_to(&self, target: &Vars) -> Self {
        ScalarField {
            num: self.num.extend_to(target),
            den: self.den.extend_to(target),
        }
    }

    /// Substitutes `images[i]` for variable `i` throughout. Fails with
    /// [`Error::PoleAtPoint`] when the substituted denominator vanishes
    /// identically (the composite has a pole everywhere on the image).
    pub fn substitute(&self, target: &Vars, images: &[ScalarField]) -> Result<Self> {
        assert_eq!(images.len(), self.vars().len(), "one image per variable");
        let num = substitute_poly(&self.num, target, images)?;
        let den = substitute_poly(&self.den, target, images)?;
        if den.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        num.try_div(&den)
    }
}

/// Substitutes scalar images into a polynomial by exact fraction arithmetic.
fn substitute_poly(p: &Polynomial, target: &Vars, images: &[ScalarField]) -> Result<ScalarField> {
    let mut acc = ScalarField::zero(target);
    for (e, c) in p.terms() {
        let mut m = ScalarField::constant(target, c.clone());
        for (i, &exp) in e.iter().enumerate() {
            for _ in 0..exp {
                if images[i].is_zero() {
                    m = ScalarField::zero(target);
                    break;
                }
                m = &m * &images[i];
            }
        }
        acc = &acc + &m;
    }
    Ok(acc)
}

impl PartialEq for ScalarField {
    /// Cross-multiplication equality; scalars on different coordinate sets
    /// are simply unequal.
    fn eq(&self, other: &Self) -> bool {
        self.vars() == other.vars() && self.equals(other)
    }
}

impl Eq for ScalarField {}

impl Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: &ScalarField) -> ScalarField {
        if self.den == rhs.den {
            return ScalarField::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        ScalarField::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: &ScalarField) -> ScalarField {
        self + &(-rhs)
    }
}

impl Mul for &ScalarField {
    type Output = ScalarField;
    fn mul(self, rhs: &ScalarField) -> ScalarField {
        if self.is_zero() || rhs.is_zero() {
            return ScalarField::zero(self.vars());
        }
        ScalarField::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &ScalarField {
    type Output = ScalarField;
    /// Panics on division by the zero scalar; use [`ScalarField::try_div`] to
    /// handle that case as a value.
    fn div(self, rhs: &ScalarField) -> ScalarField {
        self.try_div(rhs).expect("division by zero scalar field")
    }
}

impl Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        ScalarField {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $m:ident),*) => {$(
        impl $trait for ScalarField {
            type Output = ScalarField;
            fn $m(self, rhs: ScalarField) -> ScalarField { $trait::$m(&self, &rhs) }
        }
        impl $trait<&ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $m(self, rhs: &ScalarField) -> ScalarField { $trait::$m(&self, rhs) }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        -&self
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.as_constant().unwrap().is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::{rat, rat_int};

    fn xy() -> Vars {
        Vars::new(["x", "y"]).unwrap()
    }

    fn x(v: &Vars) -> ScalarField {
        ScalarField::var(v, "x").unwrap()
    }

    fn y(v: &Vars) -> ScalarField {
        ScalarField::var(v, "y").unwrap()
    }

    #[test]
    fn zero_denominator_rejected() {
        let v = xy();
        let err = ScalarField::new(Polynomial::one(&v), Polynomial::zero(&v));
        assert!(matches!(err, Err(Error::DivisionByZeroField)));
        assert!(matches!(
            x(&v).try_div(&ScalarField::zero(&v)),
            Err(Error::DivisionByZeroField)
        ));
    }

    #[test]
    fn cross_multiplication_equality_without_reduction() {
        let v = xy();
        let one = ScalarField::one(&v);
        // (x^2 - 1)/(x - 1) equals x + 1 with no GCD anywhere in the comparison
        let lhs = (&(&x(&v) * &x(&v)) - &one)
            .try_div(&(&x(&v) - &one))
            .unwrap();
        let rhs = &x(&v) + &one;
        assert_eq!(lhs, rhs);
        assert!(lhs.equals(&rhs));
    }

    #[test]
    fn reduce_cancels_common_factor() {
        let v = xy();
        let one = ScalarField::one(&v);
        let f = (&(&x(&v) * &x(&v)) - &one)
            .try_div(&(&x(&v) - &one))
            .unwrap();
        let r = f.reduce();
        assert!(r.den().is_constant());
        assert_eq!(r, f);
        assert_eq!(r.as_polynomial().unwrap().to_string(), "x + 1");
    }

    #[test]
    fn quotient_rule() {
        let v = xy();
        let one = ScalarField::one(&v);
        // d/dy [ x / (1 - y) ] = x / (1 - y)^2
        let f = x(&v).try_div(&(&one - &y(&v))).unwrap();
        let df = f.partial("y").unwrap();
        let denom = &(&one - &y(&v)) * &(&one - &y(&v));
        let expect = x(&v).try_div(&denom).unwrap();
        assert_eq!(df, expect);
    }

    #[test]
    fn evaluation_and_poles() {
        let v = xy();
        let one = ScalarField::one(&v);
        let f = x(&v).try_div(&(&one - &y(&v))).unwrap();
        let mut p = BTreeMap::new();
        p.insert("x".to_string(), rat_int(3));
        p.insert("y".to_string(), rat(1, 2));
        assert_eq!(f.evaluate(&p).unwrap(), rat_int(6));

        p.insert("y".to_string(), rat_int(1));
        assert!(matches!(f.evaluate(&p), Err(Error::PoleAtPoint)));

        p.remove("y");
        assert!(matches!(
            f.evaluate(&p),
            Err(Error::UnassignedCoordinate(_))
        ));

        p.insert("y".to_string(), rat_int(0));
        p.insert("z".to_string(), rat_int(0));
        assert!(matches!(f.evaluate(&p), Err(Error::UnknownCoordinate(_))));
    }

    #[test]
    fn substitution_detects_everywhere_pole() {
        let v = xy();
        let one = ScalarField::one(&v);
        let f = one.try_div(&(&x(&v) - &y(&v))).unwrap();
        // x := y makes the denominator identically zero
        let err = f.substitute(&v, &[y(&v), y(&v)]);
        assert!(matches!(err, Err(Error::PoleAtPoint)));

        let g = f.substitute(&v, &[&y(&v) + &one, y(&v)]).unwrap();
        assert_eq!(g, one);
    }

    #[test]
    fn display_forms() {
        let v = xy();
        let one = ScalarField::one(&v);
        // sign normalisation puts the positive leading coefficient downstairs
        let f = x(&v).try_div(&(&one - &y(&v))).unwrap();
        assert_eq!(f.to_string(), "(-x)/(y - 1)");
        assert_eq!(x(&v).to_string(), "x");
        assert_eq!(ScalarField::constant(&v, rat(-1, 2)).to_string(), "-1/2");
    }
}

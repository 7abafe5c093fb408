//! Sparse multivariate polynomials over arbitrary-precision rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratfunc::Rational;

/// Ordered set of coordinate names, shared by every value built over it.
///
/// Cloning is cheap (an `Arc` bump). Two `Vars` compare equal iff they list
/// the same names in the same order; values built over different `Vars` must
/// never be mixed, and the arithmetic operations panic if they are.
#[derive(Clone, Debug, Eq)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    /// At most this many coordinates per chart.
    pub const MAX: usize = 8;

    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > Self::MAX {
            return Err(Error::InvalidChart(format!(
                "need between 1 and {} coordinates, got {}",
                Self::MAX,
                names.len()
            )));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::InvalidChart("empty coordinate name".into()));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{a}`")));
            }
        }
        Ok(Vars(Arc::new(names)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires >= 1 name
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.0[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(","))
    }
}

fn same_vars<'a>(a: &'a Vars, b: &Vars, what: &str) -> &'a Vars {
    assert!(
        a == b,
        "{what}: operands live on different coordinate sets ({a} vs {b})"
    );
    a
}

/// Exponent tuple of one monomial; length always equals the number of variables.
pub type Exponents = Vec<u32>;

/// Graded-lexicographic comparison: total degree first, then the exponent
/// tuple itself (earlier variables weigh more).
pub(crate) fn grlex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Invariants: no zero coefficient is stored, and every exponent tuple has
/// length `vars.len()`. Equality is therefore plain structural equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars.len()], c);
        }
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn int(vars: &Vars, n: i64) -> Self {
        Self::constant(vars, Rational::from_integer(n.into()))
    }

    /// The coordinate monomial for variable index `idx`.
    pub fn var_idx(vars: &Vars, idx: usize) -> Self {
        assert!(idx < vars.len(), "variable index {idx} out of range");
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, Rational::one());
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    /// The coordinate monomial named `name`.
    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownCoordinate(name.into()))?;
        Ok(Self::var_idx(vars, idx))
    }

    /// Builds a polynomial from raw (exponents, coefficient) pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(vars: &Vars, iter: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (exps, c) in iter {
            assert_eq!(exps.len(), vars.len(), "exponent tuple length mismatch");
            p.add_term(exps, c);
        }
        p
    }

    fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    /// The value of a constant polynomial, if it is one.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[idx]).max()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        self.map_coeffs(|x| x * c)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to variable `idx`.
    pub fn partial_idx(&self, idx: usize) -> Self {
        assert!(idx < self.vars.len(), "variable index {idx} out of range");
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            p.add_term(e2, c * Rational::from_integer(e[idx].into()));
        }
        p
    }

    pub fn partial(&self, name: &str) -> Result<Self> {
        let idx = self
            .vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownCoordinate(name.into()))?;
        Ok(self.partial_idx(idx))
    }

    /// Evaluates at a point given as one value per variable, in order.
    pub fn eval_slice(&self, point: &[Rational]) -> Rational {
        assert_eq!(
            point.len(),
            self.vars.len(),
            "evaluation point arity mismatch"
        );
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    m *= &point[i];
                }
            }
            acc += m;
        }
        acc
    }

    /// Content: positive rational such that dividing by it leaves integer,
    /// collectively coprime coefficients. Zero polynomial has content 1.
    pub fn content(&self) -> Rational {
        if self.terms.is_empty() {
            return Rational::one();
        }
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        Rational::new(num, den)
    }

    /// Coefficient of the graded-lex largest monomial (None for zero).
    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| grlex(a, b))
            .map(|(_, c)| c)
    }

    /// Re-expresses the polynomial on a superset of its variables, matched by
    /// name. Panics if some variable has no counterpart in `target`.
    pub fn extend_to(&self, target: &Vars) -> Self {
        if self.vars == *target {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .unwrap_or_else(|| panic!("variable `{n}` not present in target coordinates"))
            })
            .collect();
        let mut p = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0u32; target.len()];
            for (i, &exp) in e.iter().enumerate() {
                e2[map[i]] = exp;
            }
            p.add_term(e2, c.clone());
        }
        p
    }

    /// Substitutes `images[i]` (a polynomial over `target`) for variable `i`.
    pub fn substitute(&self, target: &Vars, images: &[Polynomial]) -> Self {
        assert_eq!(
            images.len(),
            self.vars.len(),
            "one image polynomial per variable"
        );
        for im in images {
            assert!(im.vars() == target, "image polynomial on wrong coordinates");
        }
        let mut acc = Self::zero(target);
        for (e, c) in &self.terms {
            let mut m = Self::constant(target, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    m = &m * &images[i].pow(exp);
                }
            }
            acc = &acc + &m;
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let vars = same_vars(&self.vars, &rhs.vars, "polynomial add").clone();
        let mut p = Polynomial {
            vars,
            terms: self.terms.clone(),
        };
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let vars = same_vars(&self.vars, &rhs.vars, "polynomial sub").clone();
        let mut p = Polynomial {
            vars,
            terms: self.terms.clone(),
        };
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.map_coeffs(|c| -c)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let vars = same_vars(&self.vars, &rhs.vars, "polynomial mul").clone();
        let mut p = Polynomial {
            vars,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Exponents = ea
                    .iter()
                    .zip(eb)
                    .map(|(&x, &y)| x.checked_add(y).expect("monomial exponent overflow"))
                    .collect();
                p.add_term(exps, ca * cb);
            }
        }
        p
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $m:ident),*) => {$(
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial { $trait::$m(&self, &rhs) }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial { $trait::$m(&self, rhs) }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &Vars, c: &Rational, e: &[u32]) -> fmt::Result {
    let is_const = e.iter().all(|&x| x == 0);
    let one = c.is_one();
    if is_const || !one {
        write!(f, "{c}")?;
    }
    let mut lead = is_const || !one;
    for (i, &exp) in e.iter().enumerate() {
        if exp == 0 {
            continue;
        }
        if lead {
            write!(f, "*")?;
        }
        lead = true;
        write!(f, "{}", vars.name(i))?;
        if exp > 1 {
            write!(f, "^{exp}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    /// Canonical rendering: terms in descending graded-lexicographic order,
    /// coefficients as reduced fractions. Parses back via the CLI grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex(b, a));
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_monomial(f, &self.vars, &c.abs(), e)?;
        }
        Ok(())
    }
}

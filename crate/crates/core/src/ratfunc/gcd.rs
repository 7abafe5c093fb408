//! Multivariate polynomial GCD via the primitive polynomial remainder sequence.
//!
//! Used only for optional fraction reduction; no arithmetic correctness
//! anywhere else depends on it. Equality of rational functions is always
//! decided by cross-multiplication, never by canonical reduced forms.

use num_traits::Signed;

use crate::ratfunc::poly::grlex;
use crate::ratfunc::{Polynomial, Rational};

/// Exact division: returns `a / b` when the division is exact, else `None`.
/// Greedy graded-lex leading-term elimination, valid because grlex is a
/// monomial order.
pub(crate) fn exact_div(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    assert!(!b.is_zero(), "exact division by zero polynomial");
    let vars = a.vars().clone();
    assert!(
        *b.vars() == vars,
        "exact_div: operands on different coordinates"
    );
    let (lead_b, lc_b) = leading_term(b);
    let mut r = a.clone();
    let mut q = Polynomial::zero(&vars);
    while !r.is_zero() {
        let (lead_r, lc_r) = leading_term(&r);
        let mut e = Vec::with_capacity(lead_r.len());
        for (x, y) in lead_r.iter().zip(&lead_b) {
            if x < y {
                return None;
            }
            e.push(x - y);
        }
        let t = Polynomial::from_terms(&vars, [(e, lc_r / &lc_b)]);
        r = &r - &(&t * b);
        q = &q + &t;
    }
    Some(q)
}

fn leading_term(p: &Polynomial) -> (Vec<u32>, Rational) {
    p.terms()
        .max_by(|(a, _), (b, _)| grlex(a, b))
        .map(|(e, c)| (e.clone(), c.clone()))
        .expect("leading term of zero polynomial")
}

/// Integer-primitive form with positive graded-lex leading coefficient.
fn normalize(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let mut c = p.content();
    if p.leading_coeff().unwrap().is_negative() {
        c = -c;
    }
    p.map_coeffs(|x| x / &c)
}

/// Coefficients of `p` viewed as univariate in variable `v`; index `d` holds
/// the coefficient of `x_v^d` (a polynomial with `v`-degree zero).
fn coeffs_in(p: &Polynomial, v: usize) -> Vec<Polynomial> {
    let vars = p.vars().clone();
    let deg = p.degree_in(v).unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<(Vec<u32>, Rational)>> = vec![Vec::new(); deg + 1];
    for (e, c) in p.terms() {
        let d = e[v] as usize;
        let mut e2 = e.clone();
        e2[v] = 0;
        buckets[d].push((e2, c.clone()));
    }
    buckets
        .into_iter()
        .map(|ts| Polynomial::from_terms(&vars, ts))
        .collect()
}

fn mul_var_pow(p: &Polynomial, v: usize, d: u32) -> Polynomial {
    Polynomial::from_terms(
        p.vars(),
        p.terms().map(|(e, c)| {
            let mut e2 = e.clone();
            e2[v] += d;
            (e2, c.clone())
        }),
    )
}

/// Content of `p` with respect to variable `v`: the gcd of its `v`-coefficients.
fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let mut g = Polynomial::zero(p.vars());
    for c in coeffs_in(p, v) {
        if !c.is_zero() {
            g = gcd_primitive(&normalize(&c), &normalize(&g));
            if g.is_constant() {
                break;
            }
        }
    }
    if g.is_zero() {
        Polynomial::one(p.vars())
    } else {
        g
    }
}

/// One pseudo-division pass: the remainder of `a` by `b` in variable `v`,
/// after premultiplying by a power of `b`'s leading coefficient so every
/// division step is exact.
fn pseudo_rem(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let deg_b = b.degree_in(v).unwrap_or(0);
    let bc = coeffs_in(b, v);
    let lc_b = bc.last().unwrap().clone();
    let mut r = a.clone();
    loop {
        let deg_r = match r.degree_in(v) {
            Some(d) if !r.is_zero() => d,
            _ => return r,
        };
        if deg_r < deg_b || r.is_zero() {
            return r;
        }
        let lc_r = coeffs_in(&r, v).last().unwrap().clone();
        let shift = mul_var_pow(&lc_r, v, deg_r - deg_b);
        r = &(&r * &lc_b) - &(&shift * b);
        debug_assert!(r.degree_in(v).unwrap_or(0) < deg_r || r.is_zero());
    }
}

/// GCD of integer-primitive polynomials, up to sign; constants count as units.
fn gcd_primitive(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let vars = a.vars().clone();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(&vars);
    }
    if a == b {
        return a.clone();
    }
    let v = (0..vars.len())
        .find(|&i| a.degree_in(i).unwrap_or(0) > 0)
        .expect("non-constant polynomial has a main variable");
    if b.degree_in(v).unwrap_or(0) == 0 {
        return gcd_primitive(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_primitive(&ca, &cb);
    let mut pa = exact_div(a, &ca).expect("content divides");
    let mut pb = exact_div(b, &cb).expect("content divides");
    if pa.degree_in(v).unwrap_or(0) < pb.degree_in(v).unwrap_or(0) {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = pseudo_rem(&pa, &pb, v);
        if r.is_zero() {
            let g = normalize(&pb);
            // primitive part in v: strip stray content introduced by pseudo-division
            let g = exact_div(&g, &content_in(&g, v)).expect("content divides");
            return normalize(&(&c * &g));
        }
        if r.degree_in(v).unwrap_or(0) == 0 {
            return c;
        }
        pa = pb;
        pb = exact_div(&normalize(&r), &content_in(&normalize(&r), v)).expect("content divides");
    }
}

/// Greatest common divisor, returned integer-primitive with positive
/// graded-lex leading coefficient (`1` for coprime inputs, `0` only when both
/// inputs are zero).
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert!(
        a.vars() == b.vars(),
        "poly_gcd: operands on different coordinates"
    );
    if a.is_zero() && b.is_zero() {
        return Polynomial::zero(a.vars());
    }
    let g = gcd_primitive(&normalize(a), &normalize(b));
    if g.is_zero() {
        Polynomial::one(a.vars())
    } else {
        normalize(&g)
    }
}

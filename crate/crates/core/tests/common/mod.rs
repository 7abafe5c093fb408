//! Deterministic random generation of exact symbolic objects for the
//! integration suites. Everything is seeded, so failures reproduce exactly.

use obsplit_core::ehresmann::{BundleChart, ConnectionField};
use obsplit_core::{
    increasing_tuples, observer_from_t, rat, Chart, KForm, Minkowski, Observer, Polynomial,
    Rational, ScalarField, Vars, VectorField, VectorForm,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// Small nonzero rational with denominator 1..=3.
    pub fn rational(&mut self) -> Rational {
        let mut n = 0;
        while n == 0 {
            n = self.int(-4, 4);
        }
        rat(n, self.int(1, 3))
    }

    /// Sparse polynomial: up to `max_terms` monomials of total degree ≤ `max_deg`.
    pub fn polynomial(&mut self, vars: &Vars, max_deg: u32, max_terms: usize) -> Polynomial {
        let mut p = Polynomial::zero(vars);
        let terms = self.int(0, max_terms as i64) as usize;
        for _ in 0..terms {
            let mut exps = vec![0u32; vars.len()];
            let deg = self.int(0, max_deg as i64) as u32;
            for _ in 0..deg {
                let slot = self.int(0, vars.len() as i64 - 1) as usize;
                exps[slot] += 1;
            }
            p = &p + &Polynomial::from_terms(vars, vec![(exps, self.rational())]);
        }
        p
    }

    /// Sparse polynomial scalar.
    pub fn scalar(&mut self, vars: &Vars, max_deg: u32, max_terms: usize) -> ScalarField {
        ScalarField::from_poly(self.polynomial(vars, max_deg, max_terms))
    }

    /// Sparse k-form: each basis component is present with probability ~1/2.
    pub fn kform(&mut self, chart: &Chart, degree: usize, max_deg: u32, max_terms: usize) -> KForm {
        let mut w = KForm::zero(chart, degree);
        for key in increasing_tuples(chart.dimension(), degree) {
            if self.chance(0.5) {
                w.add_component(&key, self.scalar(chart.vars(), max_deg, max_terms));
            }
        }
        w
    }

    pub fn vector_field(&mut self, chart: &Chart, max_deg: u32, max_terms: usize) -> VectorField {
        let comps = (0..chart.dimension())
            .map(|_| self.scalar(chart.vars(), max_deg, max_terms))
            .collect();
        VectorField::from_components(chart, comps)
    }

    /// Endomorphism field (degree-1 vector-form) with about `density` nonzero
    /// coefficient slots.
    pub fn endomorphism(&mut self, chart: &Chart, max_deg: u32, density: usize) -> VectorForm {
        let n = chart.dimension();
        let mut comps = vec![KForm::zero(chart, 1); n];
        for _ in 0..density {
            let out = self.int(0, n as i64 - 1) as usize;
            let idx = self.int(0, n as i64 - 1) as u8;
            let mut addition = KForm::zero(chart, 1);
            addition.add_component(&[idx], self.scalar(chart.vars(), max_deg, 2));
            comps[out] = &comps[out] + &addition;
        }
        VectorForm::from_components(chart, comps)
    }

    /// Observer with polynomial T and τ and τ(T) = 1 exactly: the last
    /// component pair is solved for, so no division is needed.
    ///
    /// T = ∂t + u∂x + v∂y + ∂z and τ = dt + a dx + b dy + c dz with
    /// c = −(au + bv), giving τ(T) = 1 + au + bv + c = 1.
    pub fn polynomial_observer(&mut self, chart: &Chart) -> Observer {
        assert_eq!(chart.dimension(), 4);
        let vars = chart.vars();
        let u = self.scalar(vars, 1, 2);
        let v = self.scalar(vars, 1, 2);
        let a = self.scalar(vars, 1, 2);
        let b = self.scalar(vars, 1, 2);
        let c = -&(&(&a * &u) + &(&b * &v));
        let t = VectorField::from_components(
            chart,
            vec![ScalarField::one(vars), u, v, ScalarField::one(vars)],
        );
        let mut tau = KForm::coordinate_differential(chart, 0);
        tau.add_component(&[1], a);
        tau.add_component(&[2], b);
        tau.add_component(&[3], c);
        Observer::new(t, tau).expect("constructed with τ(T) = 1")
    }

    /// Observer with rational-function τ: a random pairing is divided out,
    /// τ = τ₀ / τ₀(T).
    pub fn rational_observer(&mut self, chart: &Chart) -> Observer {
        loop {
            let t = self.vector_field(chart, 1, 2);
            let mut tau0 = KForm::zero(chart, 1);
            for i in 0..chart.dimension() as u8 {
                if self.chance(0.6) {
                    tau0.add_component(&[i], self.scalar(chart.vars(), 1, 2));
                }
            }
            let pairing = tau0.evaluate(&[&t]);
            if pairing.is_zero() {
                continue;
            }
            let tau = tau0.scale(&ScalarField::one(chart.vars()).try_div(&pairing).unwrap());
            return Observer::new(t, tau).expect("normalized by division");
        }
    }

    /// Random connection on a bundle chart; A entries are sparse polynomials
    /// over the full chart, so fiber dependence (non-principality) occurs.
    pub fn connection(&mut self, bundle: &BundleChart, max_deg: u32) -> ConnectionField {
        let vars = bundle.chart().vars();
        let a = (0..bundle.fiber_dim())
            .map(|_| {
                (0..bundle.base_dim())
                    .map(|_| self.scalar(vars, max_deg, 2))
                    .collect()
            })
            .collect();
        ConnectionField::from_horizontal(bundle, a)
    }
}

/// The four canonical observers on the standard Minkowski chart:
/// (name, observer) for trivial, boosted, torqued, anholonomic.
pub fn canonical_observers(m: &Minkowski) -> Vec<(&'static str, Observer)> {
    let chart = m.chart();
    let vars = chart.vars();
    let trivial = observer_from_t(m, &VectorField::coordinate(chart, 0)).unwrap();
    let boosted = {
        let t = VectorField::from_components(
            chart,
            vec![
                ScalarField::constant(vars, rat(5, 3)),
                ScalarField::constant(vars, rat(4, 3)),
                ScalarField::zero(vars),
                ScalarField::zero(vars),
            ],
        );
        observer_from_t(m, &t).unwrap()
    };
    let torqued = {
        let mut tau = KForm::coordinate_differential(chart, 0);
        tau.add_component(&[1], ScalarField::var(vars, "t").unwrap());
        Observer::new(VectorField::coordinate(chart, 0), tau).unwrap()
    };
    let anholonomic = {
        let mut tau = KForm::coordinate_differential(chart, 0);
        tau.add_component(&[2], ScalarField::var(vars, "x").unwrap());
        Observer::new(VectorField::coordinate(chart, 0), tau).unwrap()
    };
    vec![
        ("trivial", trivial),
        ("boosted", boosted),
        ("torqued", torqued),
        ("anholonomic", anholonomic),
    ]
}

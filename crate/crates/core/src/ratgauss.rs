//! Rational Gauss rules.
//!
//! If `t_ν, w_ν` is the `n`-point Gauss rule of `dλ/ω_m`, then the rule with
//! nodes `t_ν` and weights `λ_ν = w_ν ω_m(t_ν)` integrates `g dλ` exactly
//! whenever `ω_m g` is a polynomial of degree `2n - 1`, i.e. for the
//! rational functions `(1 + ζ_μ t)^{-s}`, `s ≤ s_μ`, and for polynomials of
//! degree `2n - m - 1`.

use crate::discrete::{assemble_pf_measure, stieltjes, AssembleOptions, DiscreteMeasure};
use crate::eigenquad::{apply_rule, gauss_rule, QuadratureRule};
use crate::error::{invalid, Error, Result};
use crate::measures::{BaseMeasure, RecurrenceCoefficients};
use crate::modify::ModifyOptions;
use crate::parallel::{self, Execution};
use crate::partfrac::{CaseTag, PoleSet};

/// Default tolerance for the discretization sweep.
pub const DEFAULT_DISC_TOL: f64 = 1e-13;
/// Largest discretization tried by [`build_disc`].
pub const DEFAULT_DISC_MAX_POINTS: usize = 800;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Partial fractions and modified measures.
    Pf,
    /// Discretization by a large Gauss rule of the base measure.
    Disc,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Pf => "pf",
            Method::Disc => "disc",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions {
    /// Also compute `β̂_n` and the error constant `γ_n`.
    pub want_gamma: bool,
    pub modify: ModifyOptions,
    pub execution: Execution,
    pub disc_tol: f64,
    pub disc_max_points: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            want_gamma: false,
            modify: ModifyOptions::default(),
            execution: Execution::default(),
            disc_tol: DEFAULT_DISC_TOL,
            disc_max_points: DEFAULT_DISC_MAX_POINTS,
        }
    }
}

impl BuildOptions {
    pub fn with_gamma(mut self) -> Self {
        self.want_gamma = true;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

/// An `n`-point rule exact for `m` prescribed rational functions.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    n: usize,
    m: usize,
    method: Method,
    case: Option<CaseTag>,
    poles: PoleSet,
    coefficients: RecurrenceCoefficients,
    gamma_n: Option<f64>,
    discretization_points: Option<usize>,
}

impl RationalRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// `None` for the empty pole set.
    pub fn case(&self) -> Option<CaseTag> {
        self.case
    }

    pub fn poles(&self) -> &PoleSet {
        &self.poles
    }

    /// Recurrence coefficients of `dλ/|ω_m|` (`n + 1` pairs when the error
    /// constant was requested).
    pub fn coefficients(&self) -> &RecurrenceCoefficients {
        &self.coefficients
    }

    pub fn gamma_n(&self) -> Option<f64> {
        self.gamma_n
    }

    /// `β̂_0..β̂_n`, present together with `γ_n`.
    pub fn beta_hats(&self) -> Option<&[f64]> {
        self.gamma_n.map(|_| self.coefficients.betas())
    }

    /// Size of the accepted discretization for [`Method::Disc`].
    pub fn discretization_points(&self) -> Option<usize> {
        self.discretization_points
    }

    /// `Σ λ_ν g(t_ν)`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, g: F) -> Result<f64> {
        apply_rule(&self.nodes, &self.weights, g)
    }
}

/// Nodes unchanged, weights `w_ν |ω_m(t_ν)|`.
///
/// `gauss` is the Gauss rule of `dλ/|ω_m|`, so this equals `w ω_m` for the
/// signed rule of `dλ/ω_m`.
pub fn transform_rule(gauss: &QuadratureRule, poles: &PoleSet) -> (Vec<f64>, Vec<f64>) {
    let weights = gauss
        .nodes()
        .iter()
        .zip(gauss.weights())
        .map(|(&t, &w)| w * poles.omega(t).abs())
        .collect();
    (gauss.nodes().to_vec(), weights)
}

/// `γ_n = β̂_0 β̂_1 ⋯ β̂_n / (2n)!`, accumulated in log space.
pub fn error_constant(beta_hats: &[f64], n: usize) -> Result<f64> {
    if beta_hats.len() < n + 1 {
        return invalid(format!("{} beta values supplied, {} needed", beta_hats.len(), n + 1));
    }
    let mut log = 0.0;
    for (k, &b) in beta_hats[..=n].iter().enumerate() {
        if !(b > 0.0) {
            return invalid(format!("beta[{k}] = {b} is not positive"));
        }
        log += b.ln();
    }
    log -= (1..=2 * n).map(|k| (k as f64).ln()).sum::<f64>();
    Ok(log.exp())
}

fn validate(measure: &BaseMeasure, poles: &PoleSet, n: usize, m: usize) -> Result<Option<CaseTag>> {
    if n == 0 {
        return invalid("n must be at least 1");
    }
    if m > 2 * n {
        return invalid(format!("m = {m} exceeds 2n = {}", 2 * n));
    }
    if m != poles.m() {
        return invalid(format!("m = {m} but the pole set has degree {}", poles.m()));
    }
    if poles.is_empty() {
        return Ok(None);
    }
    poles.classify(measure.support()).map(Some)
}

/// Sign of `ω_m` on the support.
fn omega_sign(measure: &BaseMeasure, poles: &PoleSet) -> f64 {
    if poles.omega(measure.support().interior_point()) < 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn finish(
    coefficients: RecurrenceCoefficients,
    poles: &PoleSet,
    n: usize,
    m: usize,
    method: Method,
    case: Option<CaseTag>,
    want_gamma: bool,
    discretization_points: Option<usize>,
) -> Result<RationalRule> {
    let gauss = gauss_rule(&coefficients, n)?;
    let (nodes, weights) = transform_rule(&gauss, poles);
    let gamma_n = if want_gamma {
        Some(error_constant(coefficients.betas(), n)?)
    } else {
        None
    };
    Ok(RationalRule {
        nodes,
        weights,
        n,
        m,
        method,
        case,
        poles: poles.clone(),
        coefficients,
        gamma_n,
        discretization_points,
    })
}

/// Partial-fraction method (pole Cases 1, 2, 2′, 3 and 3′).
///
/// Fails with [`Error::NonPositiveBeta`] when cancellation among the signed
/// weights of the composite measure destroys the Stieltjes procedure; lower
/// `m` or use [`build_disc`] in that case.
pub fn build_pf(
    measure: &BaseMeasure,
    poles: &PoleSet,
    n: usize,
    m: usize,
    opts: &BuildOptions,
) -> Result<RationalRule> {
    let case = validate(measure, poles, n, m)?;
    let Some(case) = case else {
        return invalid("the partial-fraction method needs at least one pole");
    };
    let terms = poles.partial_fractions(measure.support())?;
    let count = if opts.want_gamma { n + 1 } else { n };
    let assemble = AssembleOptions {
        modify: opts.modify,
        execution: opts.execution,
    };
    let mut discrete = assemble_pf_measure(measure, &terms, count, &assemble)?;
    if omega_sign(measure, poles) < 0.0 {
        discrete = DiscreteMeasure::new(
            discrete.points().to_vec(),
            discrete.weights().iter().map(|w| -w).collect(),
        )?;
    }
    let coefficients = stieltjes(&discrete, count)?;
    finish(coefficients, poles, n, m, Method::Pf, Some(case), opts.want_gamma, None)
}

/// Discrete approximation of `dλ/|ω_m|` by the `size`-point Gauss rule of
/// `dλ` with weights divided by `|ω_m|`.
pub fn discretize(measure: &BaseMeasure, poles: &PoleSet, size: usize) -> Result<DiscreteMeasure> {
    discretize_with(measure, poles, size, Execution::default())
}

fn discretize_with(measure: &BaseMeasure, poles: &PoleSet, size: usize, exec: Execution) -> Result<DiscreteMeasure> {
    let (points, weights) = measure.gauss_rule(size)?.into_parts();
    let pairs: Vec<(f64, f64)> = points.iter().copied().zip(weights).collect();
    let weights = parallel::map(exec, &pairs, |&(t, w)| w / poles.omega(t).abs());
    DiscreteMeasure::new(points, weights)
}

fn max_change(old: &RecurrenceCoefficients, new: &RecurrenceCoefficients) -> f64 {
    let count = new.len();
    let mut worst: f64 = 0.0;
    for k in 0..count {
        let db = (new.beta(k) - old.beta(k)).abs() / new.beta(k);
        let scale = new.alpha(k).abs() + if count > 1 { new.beta(k.max(1)).sqrt() } else { 0.0 };
        let da = (new.alpha(k) - old.alpha(k)).abs();
        let da = if scale > 0.0 { da / scale } else { da };
        worst = worst.max(db).max(da);
    }
    worst
}

/// Discretization method (all pole cases, including the empty set).
///
/// The discretization size starts at `max(4n, n + m + 10)` and grows by a
/// factor 1.5 until every coefficient changes by less than
/// `opts.disc_tol`, up to `opts.disc_max_points`.
pub fn build_disc(
    measure: &BaseMeasure,
    poles: &PoleSet,
    n: usize,
    m: usize,
    opts: &BuildOptions,
) -> Result<RationalRule> {
    let case = validate(measure, poles, n, m)?;
    if !(opts.disc_tol > 0.0) {
        return invalid("discretization tolerance must be positive");
    }
    let count = if opts.want_gamma { n + 1 } else { n };
    let cap = opts.disc_max_points.max(count);
    let mut size = (4 * n).max(n + m + 10).min(cap);
    let mut previous = stieltjes(&discretize_with(measure, poles, size, opts.execution)?, count)?;
    loop {
        if size == cap {
            return Err(Error::ConvergenceFailure {
                what: "discretization",
                last: size,
            });
        }
        size = ((size as f64 * 1.5).ceil() as usize).min(cap);
        let current = stieltjes(&discretize_with(measure, poles, size, opts.execution)?, count)?;
        if max_change(&previous, &current) < opts.disc_tol {
            return finish(current, poles, n, m, Method::Disc, case, opts.want_gamma, Some(size));
        }
        previous = current;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::Interval;
    use crate::partfrac::Pole;
    use crate::Complex64;
    use std::f64::consts::PI;

    fn pair(xi: f64, eta: f64, s: u8) -> [Pole; 2] {
        [Pole::new(Complex64::new(xi, eta), s), Pole::new(Complex64::new(xi, -eta), s)]
    }

    #[test]
    fn transform_identity_cases() {
        let g = BaseMeasure::legendre().gauss_rule(3).unwrap();
        let (t, w) = transform_rule(&g, &PoleSet::empty());
        assert_eq!(t, g.nodes());
        assert_eq!(w, g.weights());
        let q = QuadratureRule::new(vec![0.0], vec![1.25]).unwrap();
        let poles = PoleSet::new(vec![Pole::real(-0.5, 1), Pole::real(0.5, 1)]).unwrap();
        assert_eq!(transform_rule(&q, &poles).1, vec![1.25]);
        let q = QuadratureRule::new(vec![1.0], vec![2.0]).unwrap();
        let poles = PoleSet::new(pair(0.0, 1.0 / (2.0 * PI), 1).to_vec()).unwrap();
        let w = transform_rule(&q, &poles).1[0];
        assert!((w - 2.0 * (1.0 + 1.0 / (4.0 * PI * PI))).abs() < 1e-15);
    }

    #[test]
    fn error_constant_log_space() {
        let g = error_constant(&[2.0, 1.0 / 3.0], 1).unwrap();
        assert!((g - 2.0 / 3.0 / 2.0).abs() < 1e-15);
        assert!(error_constant(&[2.0, 0.0], 1).is_err());
        assert!(error_constant(&[2.0], 1).is_err());
        let big = vec![1e5; 101];
        let g = error_constant(&big, 100).unwrap();
        let expect = 505.0 * 10f64.ln() - statrs::function::gamma::ln_gamma(201.0);
        assert!((g.ln() - expect).abs() < 1e-10);
    }

    #[test]
    fn validation() {
        let leg = BaseMeasure::legendre();
        let poles = PoleSet::new(vec![Pole::real(0.5, 1)]).unwrap();
        let o = BuildOptions::default();
        assert!(build_pf(&leg, &poles, 0, 1, &o).is_err());
        assert!(build_pf(&leg, &poles, 2, 2, &o).is_err());
        assert!(build_pf(&leg, &PoleSet::empty(), 2, 0, &o).is_err());
        let many = PoleSet::new((1..=5).map(|k| Pole::real(0.1 * k as f64, 1)).collect()).unwrap();
        assert!(matches!(build_disc(&leg, &many, 2, 5, &o), Err(Error::InvalidInput(_))));
        let case4 = PoleSet::new(pair(0.0, 0.1, 2).to_vec()).unwrap();
        let lag = BaseMeasure::laguerre();
        assert!(matches!(build_pf(&lag, &case4, 4, 4, &o), Err(Error::UnsupportedCase(_))));
    }

    #[test]
    fn exact_on_prescribed_rationals() {
        let leg = BaseMeasure::legendre();
        let poles = PoleSet::new(vec![Pole::real(-0.5, 1), Pole::real(0.5, 1)]).unwrap();
        for build in [build_pf, build_disc] {
            let rule = build(&leg, &poles, 3, 2, &BuildOptions::default()).unwrap();
            // ∫ dt/(1 ± t/2) = 2 ln 3
            let a = rule.integrate(|t| 1.0 / (1.0 + 0.5 * t)).unwrap();
            assert!((a - 2.0 * 3f64.ln()).abs() < 1e-13);
            let s = rule.integrate(|t| t * t * t).unwrap();
            assert!(s.abs() < 1e-14);
            let mass: f64 = rule.weights().iter().sum();
            assert!((mass - 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn negative_omega_on_support() {
        // support [2, 3], pole at 1.5 from ζ = -2/3: 1 - 2t/3 < 0 on [2, 3]
        let m = BaseMeasure::legendre().on_interval(2.0, 3.0).unwrap();
        let poles = PoleSet::new(vec![Pole::real(-2.0 / 3.0, 1)]).unwrap();
        let support = Interval::new(2.0, 3.0).unwrap();
        assert!(poles.omega(support.interior_point()) < 0.0);
        for build in [build_pf, build_disc] {
            let rule = build(&m, &poles, 3, 1, &BuildOptions::default()).unwrap();
            // ∫_2^3 dt/(1 - 2t/3) = -(3/2) ln 3
            let v = rule.integrate(|t| 1.0 / (1.0 - 2.0 * t / 3.0)).unwrap();
            assert!((v + 1.5 * 3f64.ln()).abs() < 1e-13, "{v}");
            assert!(rule.weights().iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn empty_pole_set_reduces_to_gauss() {
        let lag = BaseMeasure::laguerre();
        let rule = build_disc(&lag, &PoleSet::empty(), 6, 0, &BuildOptions::default()).unwrap();
        let g = lag.gauss_rule(6).unwrap();
        for (a, b) in rule.nodes().iter().zip(g.nodes()) {
            assert!((a - b).abs() < 1e-13 * b.abs().max(1.0));
        }
        assert_eq!(rule.case(), None);
    }

    #[test]
    fn gamma_requires_extra_beta() {
        let leg = BaseMeasure::legendre();
        let poles = PoleSet::new(vec![Pole::real(-0.5, 1), Pole::real(0.5, 1)]).unwrap();
        let r = build_pf(&leg, &poles, 4, 2, &BuildOptions::default().with_gamma()).unwrap();
        assert_eq!(r.beta_hats().unwrap().len(), 5);
        let manual = error_constant(r.beta_hats().unwrap(), 4).unwrap();
        assert_eq!(r.gamma_n(), Some(manual));
        let plain = build_pf(&leg, &poles, 4, 2, &BuildOptions::default()).unwrap();
        assert!(plain.gamma_n().is_none() && plain.beta_hats().is_none());
        for (a, b) in r.nodes().iter().zip(plain.nodes()) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}

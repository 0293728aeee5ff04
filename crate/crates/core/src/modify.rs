//! Modification of recurrence coefficients.
//!
//! Given the coefficients of a measure `dλ`, these routines produce the
//! coefficients of `dλ(t)/(t-x)`, `dλ(t)/((t-x)^2+y^2)` and `(c+dt) dλ(t)`.
//! Division uses the Cauchy moments `ρ_k(z) = ∫ π_k(t) dλ(t)/(t-z)`, which
//! form the minimal solution of the recurrence of `dλ` and are obtained by
//! backward recurrence, followed either by the modified Chebyshev algorithm
//! or by explicit kernel-polynomial formulas in the ratios `ρ_k/ρ_{k-1}`.
//!
//! Measures that change sign are represented by the coefficients of their
//! absolute value plus a sign flag, so the Gauss weights of the true measure
//! are `sign * w`.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::measures::{BaseMeasure, Interval, RecurrenceCoefficients, DEFAULT_MIN_POLE_DISTANCE};

/// Default relative tolerance for backward-recurrence convergence.
pub const DEFAULT_MOMENT_TOL: f64 = 1e-13;

const MAX_START_INDEX: usize = 1 << 20;

/// Anything that can supply recurrence coefficients on demand together with
/// its Cauchy transform.
pub trait MeasureSource: Sync {
    fn support(&self) -> Interval;

    /// First `count` recurrence coefficient pairs.
    fn coefficients(&self, count: usize) -> Result<RecurrenceCoefficients>;

    /// `∫ dμ(t)/(t - z)`.
    fn cauchy_transform(&self, z: Complex64) -> Result<Complex64>;

    /// `∫ dμ(t)/(t - z)^2`.
    fn cauchy_derivative(&self, z: Complex64) -> Result<Complex64>;
}

impl MeasureSource for BaseMeasure {
    fn support(&self) -> Interval {
        BaseMeasure::support(self)
    }

    fn coefficients(&self, count: usize) -> Result<RecurrenceCoefficients> {
        self.recurrence_coefficients(count)
    }

    fn cauchy_transform(&self, z: Complex64) -> Result<Complex64> {
        self.cauchy_transform_zero(z)
    }

    fn cauchy_derivative(&self, z: Complex64) -> Result<Complex64> {
        self.cauchy_transform_derivative(z)
    }
}

/// How a linear or quadratic divisor is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DivisionStrategy {
    /// Modified moments by backward recurrence, then the modified Chebyshev
    /// algorithm. On the half-line the map from moments to coefficients is
    /// ill-conditioned; expect accuracy to degrade past about ten
    /// coefficients for Laguerre-based measures.
    #[default]
    Moments,
    /// Backward-recurrence ratios fed directly into the kernel-polynomial
    /// (linear) or Uvarov (quadratic) update. Preferable for divisors very
    /// close to the support and for unbounded supports.
    Ratios,
}

/// Tuning knobs shared by the modification routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModifyOptions {
    /// Relative change below which backward recurrence is accepted.
    pub tol: f64,
    pub strategy: DivisionStrategy,
}

impl Default for ModifyOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_MOMENT_TOL,
            strategy: DivisionStrategy::Moments,
        }
    }
}

/// Coefficients of `|μ|` for a measure `μ` of constant sign `sign`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedCoefficients {
    pub coeffs: RecurrenceCoefficients,
    /// `+1.0` or `-1.0`.
    pub sign: f64,
}

/// Cauchy moments `ρ_0(z)..ρ_{K-1}(z)` and the backward-recurrence start
/// index that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyMoments {
    pub z: Complex64,
    pub rhos: Vec<Complex64>,
    pub start_index_used: usize,
}

/// Ratios `r_k = ρ_k/ρ_{k-1}`, `k = 1..=count`, of the minimal solution,
/// started at index `start` with `r_start = 0`.
fn ratios_from(coeffs: &RecurrenceCoefficients, z: Complex64, count: usize, start: usize) -> Vec<Complex64> {
    let mut r = Complex64::new(0.0, 0.0);
    let mut out = vec![Complex64::new(0.0, 0.0); count + 1];
    for k in (1..start).rev() {
        r = coeffs.beta(k) / (z - coeffs.alpha(k) - r);
        if k <= count {
            out[k] = r;
        }
    }
    out.remove(0);
    out
}

fn max_relative_change(old: &[Complex64], new: &[Complex64]) -> f64 {
    old.iter()
        .zip(new)
        .map(|(a, b)| {
            let d = (a - b).norm();
            let s = b.norm();
            if s > 0.0 {
                d / s
            } else {
                d
            }
        })
        .fold(0.0, f64::max)
}

/// Doubles the start index from `initial` until `produce` stabilizes.
fn converge<F>(initial: usize, tol: f64, mut produce: F) -> Result<(Vec<Complex64>, usize)>
where
    F: FnMut(usize) -> Result<Vec<Complex64>>,
{
    let mut start = initial;
    let mut previous = produce(start)?;
    loop {
        let next_start = start * 2;
        if next_start > MAX_START_INDEX {
            return Err(Error::ConvergenceFailure {
                what: "backward recurrence",
                last: start,
            });
        }
        let current = produce(next_start)?;
        if max_relative_change(&previous, &current) < tol {
            return Ok((current, next_start));
        }
        previous = current;
        start = next_start;
    }
}

fn initial_start(count: usize) -> usize {
    (2 * count).max(count + 20)
}

/// Ratios `r_1..r_count` of the minimal solution at `z`, with the accepted
/// start index.
pub fn minimal_ratios(
    source: &dyn MeasureSource,
    z: Complex64,
    count: usize,
    tol: f64,
) -> Result<(Vec<Complex64>, usize)> {
    source.support().check_off(z, DEFAULT_MIN_POLE_DISTANCE)?;
    converge(initial_start(count), tol, |start| {
        let coeffs = source.coefficients(start)?;
        Ok(ratios_from(&coeffs, z, count, start))
    })
}

/// Cauchy moments `ρ_0..ρ_{count-1}` at `z` as the minimal solution of
/// `ρ_{k+1} = (z - α_k) ρ_k - β_k ρ_{k-1}`, normalized by the Cauchy
/// transform of the source.
pub fn backward_cauchy_moments(
    source: &dyn MeasureSource,
    z: Complex64,
    count: usize,
    tol: f64,
) -> Result<CauchyMoments> {
    if count == 0 {
        return invalid("at least one moment must be requested");
    }
    if !(tol > 0.0) {
        return invalid("moment tolerance must be positive");
    }
    source.support().check_off(z, DEFAULT_MIN_POLE_DISTANCE)?;
    let rho0 = source.cauchy_transform(z)?;
    let moments_from = |ratios: &[Complex64]| {
        let mut rhos = Vec::with_capacity(count);
        rhos.push(rho0);
        for k in 1..count {
            let prev = rhos[k - 1];
            rhos.push(prev * ratios[k - 1]);
        }
        rhos
    };
    let (rhos, start) = converge(initial_start(count), tol, |start| {
        let coeffs = source.coefficients(start)?;
        Ok(moments_from(&ratios_from(&coeffs, z, count, start)))
    })?;
    Ok(CauchyMoments {
        z,
        rhos,
        start_index_used: start,
    })
}

/// Modified Chebyshev algorithm.
///
/// `moments[l] = ∫ p_l dμ` where `p_l` are the monic orthogonal polynomials
/// of `aux`; returns the first `n` coefficient pairs of `μ`.
pub fn modified_chebyshev(
    aux: &RecurrenceCoefficients,
    moments: &[f64],
    n: usize,
) -> Result<RecurrenceCoefficients> {
    if n == 0 {
        return invalid("n must be positive");
    }
    if moments.len() < 2 * n {
        return invalid(format!("{} moments supplied, {} needed", moments.len(), 2 * n));
    }
    if aux.len() < 2 * n - 1 {
        return invalid(format!(
            "{} auxiliary coefficient pairs supplied, {} needed",
            aux.len(),
            2 * n - 1
        ));
    }
    if moments[0] == 0.0 || !moments[0].is_finite() {
        return invalid("zeroth modified moment must be finite and non-zero");
    }
    let width = 2 * n;
    let a = aux.alphas();
    let b = aux.betas();
    let mut alphas = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n);
    alphas.push(a[0] + moments[1] / moments[0]);
    betas.push(moments[0]);

    // sigma rows k-2 and k-1 over l = 0..width
    let mut older = vec![0.0; width];
    let mut old = moments[..width].to_vec();
    for k in 1..n {
        let mut cur = vec![0.0; width];
        for l in k..(width - k) {
            cur[l] = old[l + 1] - (alphas[k - 1] - a[l]) * old[l] - betas[k - 1] * older[l]
                + b[l] * old[l - 1];
        }
        let beta = cur[k] / old[k - 1];
        if !(beta > 0.0) {
            return Err(Error::NonPositiveBeta { index: k, value: beta });
        }
        alphas.push(a[k] + cur[k + 1] / cur[k] - old[k] / old[k - 1]);
        betas.push(beta);
        older = old;
        old = cur;
    }
    RecurrenceCoefficients::new(alphas, betas)
}

fn real_side_sign(support: Interval, x: f64) -> Result<f64> {
    if x < support.lo {
        Ok(1.0)
    } else if x > support.hi {
        Ok(-1.0)
    } else {
        Err(Error::PoleOnSupport {
            pole: format!("{x}"),
            lo: support.lo,
            hi: support.hi,
            distance: 0.0,
        })
    }
}

/// Coefficients of `|1/(t-x)| dμ(t)` and the sign of `1/(t-x)` on the support.
pub fn divide_linear(
    source: &dyn MeasureSource,
    x: f64,
    n: usize,
    opts: &ModifyOptions,
) -> Result<SignedCoefficients> {
    if n == 0 {
        return invalid("n must be positive");
    }
    let support = source.support();
    support.check_off(Complex64::new(x, 0.0), DEFAULT_MIN_POLE_DISTANCE)?;
    let sign = real_side_sign(support, x)?;
    let z = Complex64::new(x, 0.0);
    let coeffs = match opts.strategy {
        DivisionStrategy::Moments => {
            let moments = backward_cauchy_moments(source, z, 2 * n, opts.tol)?;
            let real: Vec<f64> = moments.rhos.iter().map(|r| sign * r.re).collect();
            let aux = source.coefficients(2 * n - 1)?;
            modified_chebyshev(&aux, &real, n)?
        }
        DivisionStrategy::Ratios => {
            let (ratios, _) = minimal_ratios(source, z, n, opts.tol)?;
            let rho0 = source.cauchy_transform(z)?.re;
            let base = source.coefficients(n)?;
            let r: Vec<f64> = ratios.iter().map(|c| c.re).collect();
            divided_by_ratios(&base, &r, sign * rho0)?
        }
    };
    Ok(SignedCoefficients { coeffs, sign })
}

/// Kernel-polynomial update: with `π̂_k = π_k - r_k π_{k-1}`,
/// `α̂_k = α_k + r_{k+1} - r_k` and `β̂_k = β_{k-1} r_k / r_{k-1}`.
/// `ratios[j]` holds `r_{j+1}`.
fn divided_by_ratios(base: &RecurrenceCoefficients, ratios: &[f64], mass: f64) -> Result<RecurrenceCoefficients> {
    let n = ratios.len();
    let r = |k: usize| if k == 0 { 0.0 } else { ratios[k - 1] };
    let mut alphas = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n);
    for k in 0..n {
        alphas.push(base.alpha(k) + r(k + 1) - r(k));
    }
    betas.push(mass);
    for k in 1..n {
        let beta = if k == 1 {
            base.beta(1) + r(1) * (alphas[1] - base.alpha(0))
        } else {
            base.beta(k - 1) * r(k) / r(k - 1)
        };
        if !(beta > 0.0) {
            return Err(Error::NonPositiveBeta { index: k, value: beta });
        }
        betas.push(beta);
    }
    RecurrenceCoefficients::new(alphas, betas)
}

/// Uvarov update for a quadratic divisor `|t-z|^2`: with
/// `π̂_k = π_k + a_k π_{k-1} + b_k π_{k-2}`, the real pair `(a_k, b_k)` is
/// fixed by `∫ π̂_k dμ/(t-z) = 0`, and `‖π̂_k‖^2 = b_k β_0 ⋯ β_{k-2}`.
/// `ratios[j]` holds `r_{j+1}`; `cauchy` is `∫ dμ/(t-z)`.
fn quadratic_by_ratios(
    base: &RecurrenceCoefficients,
    ratios: &[Complex64],
    cauchy: Complex64,
    z: Complex64,
) -> Result<RecurrenceCoefficients> {
    let n = ratios.len();
    let r = |k: usize| ratios[k - 1];
    let mass = cauchy.im / z.im;
    if !(mass > 0.0) {
        return Err(Error::NonPositiveBeta { index: 0, value: mass });
    }
    let alpha0 = (z * cauchy).im / cauchy.im;
    // a[k], b[k] for k = 0..=n
    let mut a = vec![0.0; n + 1];
    let mut b = vec![0.0; n + 1];
    if n >= 1 {
        a[1] = base.alpha(0) - alpha0;
    }
    for k in 2..=n {
        let prod = r(k) * r(k - 1);
        a[k] = -prod.im / r(k - 1).im;
        b[k] = -prod.re - a[k] * r(k - 1).re;
    }
    let mut alphas = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n);
    for k in 0..n {
        let next = if k + 1 <= n { a[k + 1] } else { 0.0 };
        alphas.push(base.alpha(k) + a[k] - next);
    }
    betas.push(mass);
    let norm1 = if n >= 1 { ((r(1) + a[1]) * cauchy).re } else { 0.0 };
    for k in 1..n {
        let beta = match k {
            1 => norm1 / mass,
            2 => b[2] * base.beta(0) / norm1,
            _ => base.beta(k - 2) * b[k] / b[k - 1],
        };
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::NonPositiveBeta { index: k, value: beta });
        }
        betas.push(beta);
    }
    RecurrenceCoefficients::new(alphas, betas)
}

/// Coefficients of `dμ(t) / ((t-x)^2 + y^2)`, `y > 0`.
pub fn divide_quadratic(
    source: &dyn MeasureSource,
    x: f64,
    y: f64,
    n: usize,
    opts: &ModifyOptions,
) -> Result<RecurrenceCoefficients> {
    if n == 0 {
        return invalid("n must be positive");
    }
    if !(y > 0.0) {
        return invalid(format!("quadratic divisor needs y > 0, got {y}"));
    }
    let z = Complex64::new(x, y);
    let coeffs = match opts.strategy {
        DivisionStrategy::Moments => {
            let moments = backward_cauchy_moments(source, z, 2 * n, opts.tol)?;
            let real: Vec<f64> = moments.rhos.iter().map(|r| r.im / y).collect();
            let aux = source.coefficients(2 * n - 1)?;
            modified_chebyshev(&aux, &real, n)?
        }
        DivisionStrategy::Ratios => {
            let (ratios, _) = minimal_ratios(source, z, n, opts.tol)?;
            let cauchy = source.cauchy_transform(z)?;
            let base = source.coefficients(n)?;
            quadratic_by_ratios(&base, &ratios, cauchy, z)?
        }
    };
    if !(coeffs.mass() > 0.0) {
        return Err(Error::NonPositiveBeta {
            index: 0,
            value: coeffs.mass(),
        });
    }
    Ok(coeffs)
}

/// Coefficients of `|c + d t| dμ(t)` from those of `dμ`, for a linear factor
/// whose root `-c/d` lies outside `support`.
pub fn multiply_linear(
    base: &RecurrenceCoefficients,
    c: f64,
    d: f64,
    n: usize,
    support: Interval,
) -> Result<SignedCoefficients> {
    if d == 0.0 || !d.is_finite() {
        return invalid("multiply_linear needs a non-zero slope");
    }
    if n == 0 {
        return invalid("n must be positive");
    }
    let root = -c / d;
    if support.contains(root) {
        return invalid(format!(
            "root {root} of the linear factor lies inside [{}, {}]",
            support.lo, support.hi
        ));
    }
    if base.len() < n + 1 {
        return invalid(format!("{} coefficient pairs supplied, {} needed", base.len(), n + 1));
    }
    // r_k = π_{k+1}(root) / π_k(root)
    let mut r = Vec::with_capacity(n + 1);
    r.push(root - base.alpha(0));
    for k in 1..=n {
        let prev = r[k - 1];
        r.push(root - base.alpha(k) - base.beta(k) / prev);
    }
    let mass = base.mass() * (c + d * base.alpha(0));
    let sign = if mass < 0.0 { -1.0 } else { 1.0 };
    let mut alphas = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n);
    for k in 0..n {
        alphas.push(base.alpha(k + 1) + r[k + 1] - r[k]);
    }
    betas.push(mass.abs());
    for k in 1..n {
        let beta = base.beta(k) * r[k] / r[k - 1];
        if !(beta > 0.0) {
            return Err(Error::NonPositiveBeta { index: k, value: beta });
        }
        betas.push(beta);
    }
    Ok(SignedCoefficients {
        coeffs: RecurrenceCoefficients::new(alphas, betas)?,
        sign,
    })
}

/// The positive measure `|1/(t-x)| dμ(t)` as a source in its own right, so
/// that it can be divided by `(t-x)` a second time.
pub struct LinearDivided<'a> {
    parent: &'a dyn MeasureSource,
    x: f64,
    sign: f64,
    parent_at_x: f64,
    tol: f64,
}

impl<'a> LinearDivided<'a> {
    pub fn new(parent: &'a dyn MeasureSource, x: f64, tol: f64) -> Result<Self> {
        let support = parent.support();
        support.check_off(Complex64::new(x, 0.0), DEFAULT_MIN_POLE_DISTANCE)?;
        let sign = real_side_sign(support, x)?;
        let parent_at_x = parent.cauchy_transform(Complex64::new(x, 0.0))?.re;
        Ok(Self {
            parent,
            x,
            sign,
            parent_at_x,
            tol,
        })
    }

    pub fn sign(&self) -> f64 {
        self.sign
    }
}

impl MeasureSource for LinearDivided<'_> {
    fn support(&self) -> Interval {
        self.parent.support()
    }

    fn coefficients(&self, count: usize) -> Result<RecurrenceCoefficients> {
        let opts = ModifyOptions {
            tol: self.tol,
            strategy: DivisionStrategy::Ratios,
        };
        Ok(divide_linear(self.parent, self.x, count, &opts)?.coeffs)
    }

    fn cauchy_transform(&self, z: Complex64) -> Result<Complex64> {
        let xz = Complex64::new(self.x, 0.0);
        if z == xz {
            return Ok(self.sign * self.parent.cauchy_derivative(xz)?);
        }
        // 1/((t-x)(t-z)) = (1/(t-z) - 1/(t-x)) / (z-x)
        let rz = self.parent.cauchy_transform(z)?;
        Ok(self.sign * (rz - self.parent_at_x) / (z - xz))
    }

    fn cauchy_derivative(&self, _z: Complex64) -> Result<Complex64> {
        invalid("derivative of the Cauchy transform of a divided measure is not available")
    }
}

/// Coefficients of `dμ(t)/(t-x)^2` by two successive linear divisions.
pub fn divide_linear_squared(
    source: &dyn MeasureSource,
    x: f64,
    n: usize,
    opts: &ModifyOptions,
) -> Result<RecurrenceCoefficients> {
    let once = LinearDivided::new(source, x, opts.tol)?;
    Ok(divide_linear(&once, x, n, opts)?.coeffs)
}

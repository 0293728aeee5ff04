//! Base measures with closed-form recurrence coefficients.
//!
//! Each [`BaseMeasure`] knows its support, the coefficients `(α_k, β_k)` of the
//! three-term recurrence
//!
//! ```text
//! π_{k+1}(t) = (t - α_k) π_k(t) - β_k π_{k-1}(t),   π_0 = 1, π_{-1} = 0,
//! ```
//!
//! satisfied by its monic orthogonal polynomials (with `β_0 = ∫ dλ`), and the
//! Cauchy transform `ρ_0(z) = ∫ dλ(t) / (t - z)` used to normalize backward
//! recurrences.

use num_complex::Complex64;

use crate::eigenquad::{self, QuadratureRule};
use crate::error::{invalid, Error, Result};
use crate::special;

/// Minimum distance between an evaluation point and the support below which
/// the Cauchy transform is refused.
pub const DEFAULT_MIN_POLE_DISTANCE: f64 = 1e-12;

const FALLBACK_START: usize = 64;
const FALLBACK_CAP: usize = 4096;
const FALLBACK_TOL: f64 = 1e-13;

/// Recurrence coefficients `α_0..α_{K-1}`, `β_0..β_{K-1}` of a family of monic
/// orthogonal polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoefficients {
    alphas: Vec<f64>,
    betas: Vec<f64>,
}

impl RecurrenceCoefficients {
    pub fn new(alphas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if alphas.len() != betas.len() {
            return invalid(format!(
                "alpha/beta length mismatch ({} vs {})",
                alphas.len(),
                betas.len()
            ));
        }
        if alphas.is_empty() {
            return invalid("recurrence coefficients must be non-empty");
        }
        Ok(Self { alphas, betas })
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn alpha(&self, k: usize) -> f64 {
        self.alphas[k]
    }

    pub fn beta(&self, k: usize) -> f64 {
        self.betas[k]
    }

    /// Total mass `β_0` of the generating measure.
    pub fn mass(&self) -> f64 {
        self.betas[0]
    }

    /// First `count` pairs.
    pub fn truncated(&self, count: usize) -> Result<Self> {
        if count == 0 || count > self.len() {
            return invalid(format!(
                "cannot truncate {} coefficients to {count}",
                self.len()
            ));
        }
        Ok(Self {
            alphas: self.alphas[..count].to_vec(),
            betas: self.betas[..count].to_vec(),
        })
    }

    /// Same coefficients with the mass `β_0` replaced.
    pub fn with_mass(mut self, mass: f64) -> Self {
        self.betas[0] = mass;
        self
    }

    /// Monic `π_k(t)` by forward recurrence. Requires `k <= len()`.
    pub fn eval_orthopoly(&self, k: usize, t: f64) -> Result<f64> {
        if k > self.len() {
            return invalid(format!(
                "degree {k} needs {k} coefficient pairs, only {} available",
                self.len()
            ));
        }
        let mut prev = 0.0;
        let mut cur = 1.0;
        for j in 0..k {
            let next = (t - self.alphas[j]) * cur - self.betas[j] * prev;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// `π_0(t), ..., π_k(t)`.
    pub fn eval_all(&self, k: usize, t: f64) -> Result<Vec<f64>> {
        if k > self.len() {
            return invalid(format!("degree {k} exceeds {} coefficients", self.len()));
        }
        let mut out = Vec::with_capacity(k + 1);
        let mut prev = 0.0;
        let mut cur = 1.0;
        out.push(cur);
        for j in 0..k {
            let next = (t - self.alphas[j]) * cur - self.betas[j] * prev;
            prev = cur;
            cur = next;
            out.push(cur);
        }
        Ok(out)
    }
}

/// Closed support interval; `hi` may be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) || lo.is_nan() || hi.is_nan() || lo == f64::NEG_INFINITY {
            return invalid(format!("bad interval [{lo}, {hi}]"));
        }
        Ok(Self { lo, hi })
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_finite()
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.lo && t <= self.hi
    }

    /// Euclidean distance from a complex point to the interval.
    pub fn distance(&self, z: Complex64) -> f64 {
        let dx = if z.re < self.lo {
            self.lo - z.re
        } else if z.re > self.hi {
            z.re - self.hi
        } else {
            0.0
        };
        dx.hypot(z.im)
    }

    /// Midpoint for finite intervals, a point inside otherwise.
    pub fn interior_point(&self) -> f64 {
        if self.is_finite() {
            0.5 * (self.lo + self.hi)
        } else {
            self.lo + 1.0
        }
    }

    pub(crate) fn check_off(&self, z: Complex64, min_distance: f64) -> Result<()> {
        let distance = self.distance(z);
        if distance < min_distance || distance.is_nan() {
            return Err(Error::PoleOnSupport {
                pole: format!("{z}"),
                lo: self.lo,
                hi: self.hi,
                distance,
            });
        }
        Ok(())
    }
}

/// Classical measure families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureKind {
    /// `dt` on `[-1, 1]`.
    Legendre,
    /// `e^{-t} dt` on `[0, ∞)`.
    Laguerre,
    /// `(1-t)^a (1+t)^b dt` on `[-1, 1]`, `a, b > -1`.
    Jacobi { a: f64, b: f64 },
}

/// A classical measure, optionally moved to a finite interval `[lo, hi]`.
///
/// A mapped Jacobi measure has weight `(hi - t)^a (t - lo)^b` on `[lo, hi]`;
/// a mapped Legendre measure is `dt` on `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseMeasure {
    kind: MeasureKind,
    scale: f64,
    shift: f64,
}

impl BaseMeasure {
    pub fn legendre() -> Self {
        Self {
            kind: MeasureKind::Legendre,
            scale: 1.0,
            shift: 0.0,
        }
    }

    pub fn laguerre() -> Self {
        Self {
            kind: MeasureKind::Laguerre,
            scale: 1.0,
            shift: 0.0,
        }
    }

    pub fn jacobi(a: f64, b: f64) -> Result<Self> {
        if !(a > -1.0) || !(b > -1.0) {
            return invalid(format!("Jacobi parameters must exceed -1 (a={a}, b={b})"));
        }
        Ok(Self {
            kind: MeasureKind::Jacobi { a, b },
            scale: 1.0,
            shift: 0.0,
        })
    }

    /// Places the measure on `[lo, hi]` (replacing any previous placement).
    pub fn on_interval(self, lo: f64, hi: f64) -> Result<Self> {
        if matches!(self.kind, MeasureKind::Laguerre) {
            return invalid("the Laguerre measure cannot be mapped to a finite interval");
        }
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return invalid(format!("bad target interval [{lo}, {hi}]"));
        }
        Ok(Self {
            kind: self.kind,
            scale: 0.5 * (hi - lo),
            shift: 0.5 * (hi + lo),
        })
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    /// Scale `σ` and shift `τ` of the map `t ↦ σ t + τ` from `[-1, 1]`.
    pub fn affine_map(&self) -> (f64, f64) {
        (self.scale, self.shift)
    }

    pub fn support(&self) -> Interval {
        match self.kind {
            MeasureKind::Laguerre => Interval {
                lo: 0.0,
                hi: f64::INFINITY,
            },
            _ => Interval {
                lo: self.shift - self.scale,
                hi: self.shift + self.scale,
            },
        }
    }

    fn is_uniform(&self) -> bool {
        match self.kind {
            MeasureKind::Legendre => true,
            MeasureKind::Jacobi { a, b } => a == 0.0 && b == 0.0,
            MeasureKind::Laguerre => false,
        }
    }

    /// First `count` recurrence coefficient pairs from classical closed forms.
    pub fn recurrence_coefficients(&self, count: usize) -> Result<RecurrenceCoefficients> {
        if count < 1 {
            return invalid("coefficient count must be at least 1");
        }
        let (mut alphas, mut betas) = match self.kind {
            MeasureKind::Legendre => legendre_coefficients(count),
            MeasureKind::Laguerre => laguerre_coefficients(count),
            MeasureKind::Jacobi { a, b } => jacobi_coefficients(a, b, count),
        };
        if !matches!(self.kind, MeasureKind::Laguerre) && (self.scale != 1.0 || self.shift != 0.0)
        {
            let (s, tau) = (self.scale, self.shift);
            let mass_exponent = match self.kind {
                MeasureKind::Jacobi { a, b } => a + b + 1.0,
                _ => 1.0,
            };
            for x in alphas.iter_mut() {
                *x = s * *x + tau;
            }
            betas[0] *= s.powf(mass_exponent);
            for x in betas.iter_mut().skip(1) {
                *x *= s * s;
            }
        }
        RecurrenceCoefficients::new(alphas, betas)
    }

    /// `n`-point Gauss rule of the measure. Mapped measures reuse the rule on
    /// `[-1, 1]` and transform nodes and weights.
    pub fn gauss_rule(&self, n: usize) -> Result<QuadratureRule> {
        if matches!(self.kind, MeasureKind::Laguerre) || (self.scale == 1.0 && self.shift == 0.0) {
            return eigenquad::gauss_rule(&self.recurrence_coefficients(n)?, n);
        }
        let unit = Self { scale: 1.0, shift: 0.0, ..*self };
        let (nodes, weights) = unit.gauss_rule(n)?.into_parts();
        let factor = self.recurrence_coefficients(1)?.beta(0) / unit.recurrence_coefficients(1)?.beta(0);
        QuadratureRule::new(
            nodes.iter().map(|t| self.scale * t + self.shift).collect(),
            weights.iter().map(|w| w * factor).collect(),
        )
    }

    /// `ρ_0(z) = ∫ dλ(t)/(t - z)` with the default minimum pole distance.
    pub fn cauchy_transform_zero(&self, z: Complex64) -> Result<Complex64> {
        self.cauchy_transform_zero_with(z, DEFAULT_MIN_POLE_DISTANCE)
    }

    pub fn cauchy_transform_zero_with(&self, z: Complex64, min_distance: f64) -> Result<Complex64> {
        let support = self.support();
        support.check_off(z, min_distance)?;
        if self.is_uniform() {
            // ∫_lo^hi dt/(t-z) = Log((z-hi)/(z-lo)); the ratio is real negative only on (lo, hi)
            return Ok(log_1p(-(support.hi - support.lo) / (z - support.lo)));
        }
        match self.kind {
            MeasureKind::Laguerre => Ok(special::scaled_e1(-z)),
            _ => self.cauchy_by_quadrature(z, 1),
        }
    }

    /// `∫ dλ(t)/(t - z)^2`, the derivative of the Cauchy transform.
    pub fn cauchy_transform_derivative(&self, z: Complex64) -> Result<Complex64> {
        let support = self.support();
        support.check_off(z, DEFAULT_MIN_POLE_DISTANCE)?;
        if self.is_uniform() {
            return Ok((support.hi - support.lo) / ((z - support.hi) * (z - support.lo)));
        }
        match self.kind {
            MeasureKind::Laguerre => Ok(-special::scaled_e1(-z) - z.inv()),
            _ => self.cauchy_by_quadrature(z, 2),
        }
    }

    /// Gauss rules of doubling size until successive sums agree.
    fn cauchy_by_quadrature(&self, z: Complex64, power: i32) -> Result<Complex64> {
        let mut n = FALLBACK_START;
        let mut previous: Option<Complex64> = None;
        while n <= FALLBACK_CAP {
            let rule = self.gauss_rule(n)?;
            let value: Complex64 = rule
                .nodes()
                .iter()
                .zip(rule.weights())
                .map(|(&t, &w)| w * (Complex64::new(t, 0.0) - z).powi(-power))
                .sum();
            if let Some(prev) = previous {
                if (value - prev).norm() <= FALLBACK_TOL * value.norm() {
                    return Ok(value);
                }
            }
            previous = Some(value);
            n *= 2;
        }
        Err(Error::ConvergenceFailure {
            what: "Cauchy transform quadrature",
            last: FALLBACK_CAP,
        })
    }
}

/// Principal `Log(1 + u)`, accurate for small `|u|`.
fn log_1p(u: Complex64) -> Complex64 {
    if u.norm() >= 0.5 {
        return (1.0 + u).ln();
    }
    Complex64::new(
        0.5 * (u.re * (2.0 + u.re) + u.im * u.im).ln_1p(),
        u.im.atan2(1.0 + u.re),
    )
}

fn legendre_coefficients(count: usize) -> (Vec<f64>, Vec<f64>) {
    let alphas = vec![0.0; count];
    let betas = (0..count)
        .map(|k| {
            if k == 0 {
                2.0
            } else {
                let k2 = (k * k) as f64;
                k2 / (4.0 * k2 - 1.0)
            }
        })
        .collect();
    (alphas, betas)
}

fn laguerre_coefficients(count: usize) -> (Vec<f64>, Vec<f64>) {
    let alphas = (0..count).map(|k| (2 * k + 1) as f64).collect();
    let betas = (0..count)
        .map(|k| if k == 0 { 1.0 } else { (k * k) as f64 })
        .collect();
    (alphas, betas)
}

fn jacobi_coefficients(a: f64, b: f64, count: usize) -> (Vec<f64>, Vec<f64>) {
    let ab = a + b;
    let mut alphas = Vec::with_capacity(count);
    let mut betas = Vec::with_capacity(count);
    for k in 0..count {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let alpha = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        let beta = match k {
            0 => {
                2f64.powf(ab + 1.0) * special::gamma(a + 1.0) * special::gamma(b + 1.0)
                    / special::gamma(ab + 2.0)
            }
            1 => 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab)),
            _ => {
                4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
            }
        };
        alphas.push(alpha);
        betas.push(beta);
    }
    (alphas, betas)
}

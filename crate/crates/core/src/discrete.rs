//! Discrete measures and recurrence coefficients extracted from them.
//!
//! The partial-fraction method writes `∫ p dλ/ω_m` as a sum of Gauss rules,
//! one per partial-fraction term, and concatenates them into a single
//! discrete measure `Σ W_k δ(t - T_k)` that reproduces the modified measure on
//! polynomials of degree `2n - 1`. Its first `n` recurrence coefficients are
//! those of `dλ/ω_m`.

use crate::eigenquad::{gauss_rule, QuadratureRule};
use crate::error::{invalid, Error, Result};
use crate::measures::{BaseMeasure, RecurrenceCoefficients};
use crate::modify::{self, ModifyOptions};
use crate::parallel::{self, Execution};
use crate::partfrac::PartialFractionTerms;
use crate::summation::{compensated_sum, CompensatedSum};

/// Point masses `W_k` at `T_k`; weights may be negative.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiscreteMeasure {
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    pub fn new(points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if points.len() != weights.len() {
            return invalid("points and weights differ in length");
        }
        if points.iter().chain(&weights).any(|v| !v.is_finite()) {
            return invalid("discrete measure has non-finite entries");
        }
        Ok(Self { points, weights })
    }

    pub fn from_rule(rule: QuadratureRule) -> Self {
        let (points, weights) = rule.into_parts();
        Self { points, weights }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn mass(&self) -> f64 {
        compensated_sum(self.weights.iter().copied())
    }

    pub fn is_positive(&self) -> bool {
        self.weights.iter().all(|&w| w > 0.0)
    }

    /// `Σ W_k f(T_k)`.
    pub fn sum<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        compensated_sum(self.points.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)))
    }

    /// Appends `scale * w` at every node of `rule`.
    fn extend_scaled(&mut self, rule: &QuadratureRule, scale: impl Fn(f64) -> f64) {
        for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
            self.points.push(t);
            self.weights.push(w * scale(t));
        }
    }

    fn concat(parts: Vec<DiscreteMeasure>) -> Self {
        let mut out = DiscreteMeasure::default();
        for p in parts {
            out.points.extend(p.points);
            out.weights.extend(p.weights);
        }
        out
    }
}

/// Settings for [`assemble_pf_measure`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AssembleOptions {
    pub modify: ModifyOptions,
    pub execution: Execution,
}

#[derive(Debug, Clone, Copy)]
enum Piece {
    Linear { x: f64, c: f64 },
    LinearSquared { x: f64, d: f64 },
    Quadratic { x: f64, y: f64, c: f64, d: f64 },
}

fn pieces(terms: &PartialFractionTerms) -> Vec<Piece> {
    let mut out = Vec::with_capacity(terms.term_count() * 2);
    for s in &terms.simple {
        out.push(Piece::Linear { x: s.x, c: s.c });
    }
    for d in &terms.double {
        if d.c != 0.0 {
            out.push(Piece::Linear { x: d.x, c: d.c });
        }
        if d.d != 0.0 {
            out.push(Piece::LinearSquared { x: d.x, d: d.d });
        }
    }
    for q in &terms.quadratic {
        out.push(Piece::Quadratic {
            x: q.x,
            y: q.y,
            c: q.c,
            d: q.d,
        });
    }
    out
}

fn build_piece(measure: &BaseMeasure, piece: Piece, n: usize, opts: &ModifyOptions) -> Result<DiscreteMeasure> {
    let mut out = DiscreteMeasure::default();
    match piece {
        Piece::Linear { x, c } => {
            let div = modify::divide_linear(measure, x, n, opts)?;
            let rule = gauss_rule(&div.coeffs, n)?;
            out.extend_scaled(&rule, |_| c * div.sign);
        }
        Piece::LinearSquared { x, d } => {
            let coeffs = modify::divide_linear_squared(measure, x, n, opts)?;
            let rule = gauss_rule(&coeffs, n)?;
            out.extend_scaled(&rule, |_| d);
        }
        Piece::Quadratic { x, y, c, d } if d == 0.0 => {
            let coeffs = modify::divide_quadratic(measure, x, y, n, opts)?;
            let rule = gauss_rule(&coeffs, n)?;
            out.extend_scaled(&rule, |_| c);
        }
        Piece::Quadratic { x, y, c, d } => {
            let support = measure.support();
            let coeffs = modify::divide_quadratic(measure, x, y, n + 1, opts)?;
            if support.contains(-c / d) {
                let rule = gauss_rule(&coeffs, n + 1)?;
                out.extend_scaled(&rule, |t| c + d * t);
            } else {
                let multiplied = modify::multiply_linear(&coeffs, c, d, n, support)?;
                let rule = gauss_rule(&multiplied.coeffs, n)?;
                out.extend_scaled(&rule, |_| multiplied.sign);
            }
        }
    }
    Ok(out)
}

/// Concatenated Gauss rules of the partial-fraction terms, each with `n`
/// points (`n + 1` for a quadratic term whose linear numerator changes sign
/// on the support). Exact for polynomials of degree `2n - 1` against
/// `Σ terms · dλ`.
pub fn assemble_pf_measure(
    measure: &BaseMeasure,
    terms: &PartialFractionTerms,
    n: usize,
    opts: &AssembleOptions,
) -> Result<DiscreteMeasure> {
    if n == 0 {
        return invalid("n must be positive");
    }
    let work = pieces(terms);
    if work.is_empty() {
        return invalid("no partial-fraction terms to assemble");
    }
    let parts = parallel::try_map(opts.execution, &work, |&piece| {
        build_piece(measure, piece, n, &opts.modify)
    })?;
    Ok(DiscreteMeasure::concat(parts))
}

/// First `n` recurrence coefficients of `d` by the Stieltjes procedure.
///
/// Works for signed weights; the polynomials are kept normalized so that no
/// overflow occurs for widely spread points. A non-positive `β_k` means the
/// inner product is not positive definite on the polynomials reached, or that
/// cancellation destroyed it.
pub fn stieltjes(d: &DiscreteMeasure, n: usize) -> Result<RecurrenceCoefficients> {
    if n == 0 {
        return invalid("n must be positive");
    }
    let (t, w): (Vec<f64>, Vec<f64>) = d
        .points
        .iter()
        .zip(&d.weights)
        .filter(|(_, &w)| w != 0.0)
        .map(|(&t, &w)| (t, w))
        .unzip();
    if n > t.len() {
        return invalid(format!("{n} coefficient pairs requested from {} points", t.len()));
    }
    let mass: f64 = w.iter().copied().collect::<CompensatedSum>().value();
    if !(mass > 0.0) {
        return Err(Error::NonPositiveBeta { index: 0, value: mass });
    }
    let mut alphas = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n);
    betas.push(mass);
    let mut prev = vec![0.0; t.len()];
    let mut cur = vec![1.0 / mass.sqrt(); t.len()];
    for k in 0..n {
        let alpha = (0..t.len())
            .map(|i| w[i] * t[i] * cur[i] * cur[i])
            .collect::<CompensatedSum>()
            .value();
        alphas.push(alpha);
        if k + 1 == n {
            break;
        }
        let root_beta = if k == 0 { 0.0 } else { betas[k].sqrt() };
        let next: Vec<f64> = (0..t.len())
            .map(|i| (t[i] - alpha) * cur[i] - root_beta * prev[i])
            .collect();
        let beta = (0..t.len())
            .map(|i| w[i] * next[i] * next[i])
            .collect::<CompensatedSum>()
            .value();
        if !(beta > 0.0) {
            return Err(Error::NonPositiveBeta { index: k + 1, value: beta });
        }
        betas.push(beta);
        let scale = 1.0 / beta.sqrt();
        prev = cur;
        cur = next.into_iter().map(|v| v * scale).collect();
    }
    RecurrenceCoefficients::new(alphas, betas)
}

/// First `n` recurrence coefficients of a positive discrete measure by
/// Lanczos tridiagonalization of `diag(T)` with start vector `√W`, fully
/// reorthogonalized.
pub fn lanczos(d: &DiscreteMeasure, n: usize) -> Result<RecurrenceCoefficients> {
    if n == 0 {
        return invalid("n must be positive");
    }
    if !d.is_positive() {
        return invalid("lanczos needs strictly positive weights; use stieltjes for signed measures");
    }
    let size = d.len();
    if n > size {
        return invalid(format!("{n} coefficient pairs requested from {size} points"));
    }
    let t = &d.points;
    let mass = d.mass();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).collect::<CompensatedSum>().value();

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    basis.push(d.weights.iter().map(|&w| (w / mass).sqrt()).collect());
    let mut alphas = Vec::with_capacity(n);
    let mut betas = vec![mass];
    for k in 0..n {
        let v = &basis[k];
        let tv: Vec<f64> = v.iter().zip(t).map(|(x, s)| x * s).collect();
        let alpha = dot(v, &tv);
        alphas.push(alpha);
        if k + 1 == n {
            break;
        }
        let mut r: Vec<f64> = tv;
        for _ in 0..2 {
            for q in &basis {
                let h = dot(q, &r);
                r.iter_mut().zip(q).for_each(|(x, y)| *x -= h * y);
            }
        }
        let beta = dot(&r, &r);
        if !(beta > 0.0) {
            return Err(Error::NonPositiveBeta { index: k + 1, value: beta });
        }
        let norm = beta.sqrt();
        betas.push(beta);
        basis.push(r.into_iter().map(|x| x / norm).collect());
    }
    RecurrenceCoefficients::new(alphas, betas)
}

//! Gauss rules from recurrence coefficients (Golub–Welsch).
//!
//! The nodes of the `n`-point Gauss rule are the eigenvalues of the Jacobi
//! matrix with diagonal `α_0..α_{n-1}` and off-diagonal `√β_1..√β_{n-1}`;
//! the weights are `β_0` times the squared first components of the normalized
//! eigenvectors. Only that first row of the eigenvector matrix is carried
//! through the implicit QL sweeps.

use crate::error::{invalid, Error, Result};
use crate::measures::RecurrenceCoefficients;
use crate::summation::CompensatedSum;

const MAX_SWEEPS: usize = 30;

/// Nodes (ascending) and weights of a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.len() != weights.len() {
            return invalid("nodes and weights differ in length");
        }
        if nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return invalid("quadrature nodes must be strictly increasing");
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>) {
        (self.nodes, self.weights)
    }

    /// `Σ w_ν f(t_ν)` with compensated summation.
    pub fn apply<F: FnMut(f64) -> f64>(&self, f: F) -> Result<f64> {
        apply_rule(&self.nodes, &self.weights, f)
    }
}

/// Compensated weighted sum; fails if `f` is not finite at some node.
pub fn apply_rule<F: FnMut(f64) -> f64>(nodes: &[f64], weights: &[f64], mut f: F) -> Result<f64> {
    let mut acc = CompensatedSum::default();
    for (&t, &w) in nodes.iter().zip(weights) {
        let value = f(t);
        if !value.is_finite() {
            return Err(Error::NonFiniteValue { at: t, value });
        }
        acc.add(w * value);
    }
    Ok(acc.value())
}

/// `n`-point Gauss rule of the measure whose first `n` coefficient pairs are
/// given.
pub fn gauss_rule(coeffs: &RecurrenceCoefficients, n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return invalid("a Gauss rule needs at least one node");
    }
    if coeffs.len() < n {
        return invalid(format!(
            "{n}-point rule needs {n} coefficient pairs, got {}",
            coeffs.len()
        ));
    }
    for (k, &b) in coeffs.betas()[..n].iter().enumerate() {
        if !(b > 0.0) {
            return Err(Error::NonPositiveBeta { index: k, value: b });
        }
    }
    let mut diag = coeffs.alphas()[..n].to_vec();
    let mut off: Vec<f64> = (0..n)
        .map(|k| if k + 1 < n { coeffs.beta(k + 1).sqrt() } else { 0.0 })
        .collect();
    let mut first_row = vec![0.0; n];
    first_row[0] = 1.0;
    tridiagonal_ql(&mut diag, &mut off, &mut first_row)?;

    let mass = coeffs.mass();
    let mut pairs: Vec<(f64, f64)> = diag
        .into_iter()
        .zip(first_row)
        .map(|(t, z)| (t, mass * z * z))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule { nodes, weights })
}

/// Implicit-shift QL on a symmetric tridiagonal matrix.
///
/// `off[i]` couples rows `i` and `i+1` (the last entry is ignored). On return
/// `diag` holds the eigenvalues and `first_row[j]` the first component of the
/// `j`-th normalized eigenvector.
fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64], first_row: &mut [f64]) -> Result<()> {
    let n = diag.len();
    if n == 1 {
        return Ok(());
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if sweeps == MAX_SWEEPS {
                return Err(Error::EigensolverFailure {
                    index: l,
                    sweeps: MAX_SWEEPS,
                });
            }
            sweeps += 1;

            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0_f64, 1.0_f64, 0.0_f64);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let z = first_row[i + 1];
                first_row[i + 1] = s * first_row[i] + c * z;
                first_row[i] = c * first_row[i] - s * z;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

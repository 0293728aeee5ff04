//! Pole sets, their classification, and partial fractions of `1/ω_m`.
//!
//! A pole set lists parameters `ζ_μ` with multiplicities `s_μ ∈ {1, 2}`; the
//! prescribed rational functions are `(1 + ζ_μ t)^{-s}` and
//! `ω_m(t) = ∏ (1 + ζ_μ t)^{s_μ}`. Callers work with `ζ` only; the real and
//! imaginary parts `ξ, η` and the pole locations `x = -1/ξ` are derived here.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::measures::Interval;

/// Poles closer than this to the support are rejected.
pub const MIN_POLE_DISTANCE: f64 = 1e-10;

/// Poles closer than this to the support make the partial-fraction method
/// slow or ill-conditioned.
pub const NEAR_SUPPORT_WARNING: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub zeta: Complex64,
    pub multiplicity: u8,
}

impl Pole {
    pub fn new(zeta: Complex64, multiplicity: u8) -> Self {
        Self { zeta, multiplicity }
    }

    pub fn real(xi: f64, multiplicity: u8) -> Self {
        Self::new(Complex64::new(xi, 0.0), multiplicity)
    }

    pub fn is_real(&self) -> bool {
        self.zeta.im == 0.0
    }

    /// The singularity `-1/ζ` of `(1 + ζ t)^{-s}`.
    pub fn location(&self) -> Complex64 {
        -self.zeta.inv()
    }
}

/// Pole configurations with a known partial-fraction structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// Distinct simple real poles.
    Case1,
    /// Simple conjugate complex pairs.
    Case2,
    /// Simple conjugate pairs plus one simple real pole.
    Case2p,
    /// Double real poles.
    Case3,
    /// Double real poles plus one simple real pole.
    Case3p,
    /// Double conjugate complex pairs.
    Case4,
    Unsupported,
}

impl CaseTag {
    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::Case1 => "case1",
            CaseTag::Case2 => "case2",
            CaseTag::Case2p => "case2p",
            CaseTag::Case3 => "case3",
            CaseTag::Case3p => "case3p",
            CaseTag::Case4 => "case4",
            CaseTag::Unsupported => "unsupported",
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Validated list of poles, closed under conjugation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PoleSet {
    entries: Vec<Pole>,
}

impl PoleSet {
    /// The empty set, `ω_0 ≡ 1`.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Complex entries must be accompanied by their conjugates with equal
    /// multiplicity.
    pub fn new(entries: Vec<Pole>) -> Result<Self> {
        for p in &entries {
            if !(p.zeta.re.is_finite() && p.zeta.im.is_finite()) {
                return invalid(format!("pole parameter {} is not finite", p.zeta));
            }
            if p.zeta == Complex64::new(0.0, 0.0) {
                return invalid("pole parameter zeta must be non-zero");
            }
            if !(1..=2).contains(&p.multiplicity) {
                return Err(Error::UnsupportedCase(format!(
                    "pole multiplicity {} (only 1 and 2 are supported)",
                    p.multiplicity
                )));
            }
        }
        for (i, a) in entries.iter().enumerate() {
            if entries[..i].iter().any(|b| b.zeta == a.zeta) {
                return invalid(format!("pole parameter {} appears twice", a.zeta));
            }
            if !a.is_real() {
                let partner = entries.iter().find(|b| b.zeta == a.zeta.conj());
                match partner {
                    None => {
                        return invalid(format!("complex pole parameter {} lacks its conjugate", a.zeta))
                    }
                    Some(b) if b.multiplicity != a.multiplicity => {
                        return invalid(format!(
                            "conjugate pole parameters {} differ in multiplicity",
                            a.zeta
                        ))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(Self { entries })
    }

    /// Like [`PoleSet::new`], but missing conjugates are appended.
    pub fn with_conjugates(mut entries: Vec<Pole>) -> Result<Self> {
        let mut extra = Vec::new();
        for p in &entries {
            if !p.is_real() && !entries.iter().any(|b| b.zeta == p.zeta.conj()) {
                extra.push(Pole::new(p.zeta.conj(), p.multiplicity));
            }
        }
        entries.extend(extra);
        Self::new(entries)
    }

    pub fn entries(&self) -> &[Pole] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Degree of `ω_m`.
    pub fn m(&self) -> usize {
        self.entries.iter().map(|p| p.multiplicity as usize).sum()
    }

    /// `ω_m(t) = ∏ (1 + ζ_μ t)^{s_μ}`, evaluated pairwise as `|1 + ζ t|^2`
    /// so the result is exactly real.
    pub fn omega(&self, t: f64) -> f64 {
        let mut acc = 1.0;
        for p in &self.entries {
            let factor = if p.is_real() {
                1.0 + p.zeta.re * t
            } else if p.zeta.im > 0.0 {
                (Complex64::new(1.0, 0.0) + p.zeta * t).norm_sqr()
            } else {
                continue;
            };
            acc *= factor.powi(p.multiplicity as i32);
        }
        acc
    }

    /// Smallest distance from a pole `-1/ζ` to the support.
    pub fn min_distance(&self, support: Interval) -> f64 {
        self.entries
            .iter()
            .map(|p| support.distance(p.location()))
            .fold(f64::INFINITY, f64::min)
    }

    /// Rejects poles on or within [`MIN_POLE_DISTANCE`] of the support.
    pub fn check_support(&self, support: Interval) -> Result<()> {
        for p in &self.entries {
            support.check_off(p.location(), MIN_POLE_DISTANCE)?;
        }
        Ok(())
    }

    pub fn classify(&self, support: Interval) -> Result<CaseTag> {
        if self.entries.is_empty() {
            return invalid("cannot classify an empty pole set");
        }
        self.check_support(support)?;
        let count = |real: bool, s: u8| {
            self.entries
                .iter()
                .filter(|p| p.is_real() == real && p.multiplicity == s && (real || p.zeta.im > 0.0))
                .count()
        };
        let (r1, r2, c1, c2) = (count(true, 1), count(true, 2), count(false, 1), count(false, 2));
        let tag = match (r1, r2, c1, c2) {
            (_, 0, 0, 0) => CaseTag::Case1,
            (0, 0, _, 0) => CaseTag::Case2,
            (1, 0, _, 0) => CaseTag::Case2p,
            (0, _, 0, 0) => CaseTag::Case3,
            (1, _, 0, 0) => CaseTag::Case3p,
            (0, 0, 0, _) => CaseTag::Case4,
            _ => CaseTag::Unsupported,
        };
        Ok(tag)
    }

    /// Partial fractions of `1/ω_m` for Cases 1, 2, 2′, 3 and 3′.
    pub fn partial_fractions(&self, support: Interval) -> Result<PartialFractionTerms> {
        let tag = self.classify(support)?;
        let reals = |s: u8| -> Vec<f64> {
            self.entries
                .iter()
                .filter(|p| p.is_real() && p.multiplicity == s)
                .map(|p| p.zeta.re)
                .collect()
        };
        let upper = || -> (Vec<f64>, Vec<f64>) {
            self.entries
                .iter()
                .filter(|p| p.zeta.im > 0.0)
                .map(|p| (p.zeta.re, p.zeta.im))
                .unzip()
        };
        match tag {
            CaseTag::Case1 => pf_case1(&reals(1)),
            CaseTag::Case2 => {
                let (xis, etas) = upper();
                pf_case2(&xis, &etas)
            }
            CaseTag::Case2p => {
                let (xis, etas) = upper();
                pf_case2p(reals(1)[0], &xis, &etas)
            }
            CaseTag::Case3 => pf_case3(&reals(2)),
            CaseTag::Case3p => pf_case3p(&reals(2), reals(1)[0]),
            CaseTag::Case4 | CaseTag::Unsupported => Err(Error::UnsupportedCase(format!(
                "{tag} has no partial-fraction decomposition; use the discretization method"
            ))),
        }
    }
}

/// `c / (t - x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpleTerm {
    pub x: f64,
    pub c: f64,
}

/// `c / (t - x) + d / (t - x)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleTerm {
    pub x: f64,
    pub c: f64,
    pub d: f64,
}

/// `(c + d t) / ((t - x)^2 + y^2)`, `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticTerm {
    pub x: f64,
    pub y: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PartialFractionTerms {
    pub simple: Vec<SimpleTerm>,
    pub double: Vec<DoubleTerm>,
    pub quadratic: Vec<QuadraticTerm>,
}

impl PartialFractionTerms {
    /// Sum of all terms at `t`.
    pub fn eval(&self, t: f64) -> f64 {
        let s: f64 = self.simple.iter().map(|p| p.c / (t - p.x)).sum();
        let d: f64 = self
            .double
            .iter()
            .map(|p| {
                let u = 1.0 / (t - p.x);
                p.c * u + p.d * u * u
            })
            .sum();
        let q: f64 = self
            .quadratic
            .iter()
            .map(|p| (p.c + p.d * t) / ((t - p.x).powi(2) + p.y * p.y))
            .sum();
        s + d + q
    }

    pub fn term_count(&self) -> usize {
        self.simple.len() + self.double.len() + self.quadratic.len()
    }
}

fn check_real_params(xis: &[f64]) -> Result<()> {
    for (i, &x) in xis.iter().enumerate() {
        if x == 0.0 || !x.is_finite() {
            return invalid(format!("real pole parameter {x} must be finite and non-zero"));
        }
        if xis[..i].contains(&x) {
            return invalid(format!("real pole parameter {x} appears twice"));
        }
    }
    Ok(())
}

fn check_pairs(xis: &[f64], etas: &[f64]) -> Result<()> {
    if xis.len() != etas.len() {
        return invalid("xi and eta lists differ in length");
    }
    if xis.is_empty() {
        return invalid("at least one conjugate pair is required");
    }
    for i in 0..xis.len() {
        if !(etas[i] > 0.0) || !xis[i].is_finite() || !etas[i].is_finite() {
            return invalid(format!("pair ({}, {}) needs finite xi and eta > 0", xis[i], etas[i]));
        }
        if (0..i).any(|j| xis[j] == xis[i] && etas[j] == etas[i]) {
            return invalid(format!("conjugate pair ({}, {}) appears twice", xis[i], etas[i]));
        }
    }
    Ok(())
}

fn product_except(len: usize, skip: usize, f: impl Fn(usize) -> f64) -> f64 {
    (0..len).filter(|&j| j != skip).map(f).product()
}

fn sum_except(len: usize, skip: usize, f: impl Fn(usize) -> f64) -> f64 {
    (0..len).filter(|&j| j != skip).map(f).sum()
}

/// Distinct simple real poles.
pub fn pf_case1(xis: &[f64]) -> Result<PartialFractionTerms> {
    if xis.is_empty() {
        return invalid("at least one pole is required");
    }
    check_real_params(xis)?;
    let m = xis.len() as i32;
    let simple = (0..xis.len())
        .map(|v| {
            let prod = product_except(xis.len(), v, |u| xis[v] - xis[u]);
            SimpleTerm {
                x: -1.0 / xis[v],
                c: xis[v].powi(m - 2) / prod,
            }
        })
        .collect();
    Ok(PartialFractionTerms {
        simple,
        ..Default::default()
    })
}

/// `p_ν` for the conjugate pairs `ξ_ν ± iη_ν`.
fn pair_products(xis: &[f64], etas: &[f64]) -> Vec<Complex64> {
    (0..xis.len())
        .map(|v| {
            let zeta = Complex64::new(xis[v], etas[v]);
            (0..xis.len())
                .filter(|&u| u != v)
                .map(|u| {
                    let dx = xis[v] - xis[u];
                    let den = Complex64::new(
                        dx * dx - (etas[v] * etas[v] - etas[u] * etas[u]),
                        2.0 * etas[v] * dx,
                    );
                    zeta * zeta / den
                })
                .product()
        })
        .collect()
}

fn quadratic_term(xi: f64, eta: f64, p: Complex64) -> QuadraticTerm {
    let r = xi * xi + eta * eta;
    QuadraticTerm {
        x: -xi / r,
        y: eta / r,
        c: (xi / r * p.im + eta / r * p.re) / eta,
        d: p.im / eta,
    }
}

/// Simple conjugate pairs `ξ_ν ± iη_ν`, `η_ν > 0`.
pub fn pf_case2(xis: &[f64], etas: &[f64]) -> Result<PartialFractionTerms> {
    check_pairs(xis, etas)?;
    let quadratic = pair_products(xis, etas)
        .into_iter()
        .enumerate()
        .map(|(v, p)| quadratic_term(xis[v], etas[v], p))
        .collect();
    Ok(PartialFractionTerms {
        quadratic,
        ..Default::default()
    })
}

/// Simple conjugate pairs plus the simple real parameter `ξ_0`.
pub fn pf_case2p(xi0: f64, xis: &[f64], etas: &[f64]) -> Result<PartialFractionTerms> {
    if xi0 == 0.0 || !xi0.is_finite() {
        return invalid("real pole parameter must be finite and non-zero");
    }
    check_pairs(xis, etas)?;
    let m = (2 * xis.len() + 1) as i32;
    let den: f64 = xis
        .iter()
        .zip(etas)
        .map(|(&x, &e)| (xi0 - x).powi(2) + e * e)
        .product();
    let simple = vec![SimpleTerm {
        x: -1.0 / xi0,
        c: xi0.powi(m - 2) / den,
    }];
    let quadratic = pair_products(xis, etas)
        .into_iter()
        .enumerate()
        .map(|(v, p)| {
            let zeta = Complex64::new(xis[v], etas[v]);
            let pp = zeta / Complex64::new(xis[v] - xi0, etas[v]) * p;
            quadratic_term(xis[v], etas[v], pp)
        })
        .collect();
    Ok(PartialFractionTerms {
        simple,
        quadratic,
        ..Default::default()
    })
}

/// Distinct double real poles.
pub fn pf_case3(xis: &[f64]) -> Result<PartialFractionTerms> {
    if xis.is_empty() {
        return invalid("at least one pole is required");
    }
    check_real_params(xis)?;
    let len = xis.len();
    let m = (2 * len) as i32;
    let double = (0..len)
        .map(|v| {
            let xv = xis[v];
            let prod = product_except(len, v, |u| (xv - xis[u]).powi(2));
            let sum = sum_except(len, v, |u| xis[u] / (xv - xis[u]));
            DoubleTerm {
                x: -1.0 / xv,
                c: -2.0 * xv.powi(m - 3) * sum / prod,
                d: xv.powi(m - 4) / prod,
            }
        })
        .collect();
    Ok(PartialFractionTerms {
        double,
        ..Default::default()
    })
}

/// Distinct double real poles `xis` plus the simple real parameter `xi_m`.
pub fn pf_case3p(xis: &[f64], xi_m: f64) -> Result<PartialFractionTerms> {
    if xis.is_empty() {
        return invalid("at least one double pole is required");
    }
    let mut all = xis.to_vec();
    all.push(xi_m);
    check_real_params(&all)?;
    let len = xis.len();
    let m = (2 * len + 1) as i32;
    let prod_m: f64 = xis.iter().map(|&x| (xi_m - x).powi(2)).product();
    let simple = vec![SimpleTerm {
        x: -1.0 / xi_m,
        c: xi_m.powi(m - 2) / prod_m,
    }];
    let double = (0..len)
        .map(|v| {
            let xv = xis[v];
            let prod = product_except(len, v, |u| (xv - xis[u]).powi(2));
            let sum = sum_except(len, v, |u| xis[u] / (xv - xis[u]));
            let gap = xv - xi_m;
            DoubleTerm {
                x: -1.0 / xv,
                c: -xv.powi(m - 3) * (xi_m + 2.0 * gap * sum) / (gap * gap * prod),
                d: xv.powi(m - 4) / (gap * prod),
            }
        })
        .collect();
    Ok(PartialFractionTerms {
        simple,
        double,
        ..Default::default()
    })
}

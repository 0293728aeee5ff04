//! The six test integrals `I_1`–`I_6`: measures, pole presets matching the
//! integrand singularities, guarded integrands and reference values.
//!
//! | name | integral | measure | poles |
//! |------|----------|---------|-------|
//! | i1 | `∫_{-1}^{1} (πt/ω)/sin(πt/ω) dt`, `ω > 1` | Legendre | simple real, `±ω, ±2ω, …` |
//! | i2 | `∫_0^1 (1-t)^{-1/2} Γ(1+t)/(t+ω) dt`, `0 < ω < 1` | Jacobi on `[0, 1]` | simple real, `-ω, -1, -2, …` |
//! | i3 | `∫_{-1}^{1} ((πt/ω)/sin(πt/ω))^2 dt` | Legendre | double real |
//! | i4 | `∫_0^∞ t/(e^t-1) e^{-t} dt` | Laguerre | simple pairs `±2νπi` |
//! | i5 | `∫_0^∞ t/(e^{t-η}-1) e^{-t} dt`, `η < 0` | Laguerre | `η` and pairs `η ± 2νπi` |
//! | i6 | `∫_0^∞ (t/(e^t-1))^2 e^{-t} dt` | Laguerre | double pairs `±2νπi` |

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::measures::BaseMeasure;
use crate::partfrac::{CaseTag, Pole, PoleSet};
use crate::special::gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExampleName {
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
}

impl ExampleName {
    pub const ALL: [ExampleName; 6] = [
        ExampleName::I1,
        ExampleName::I2,
        ExampleName::I3,
        ExampleName::I4,
        ExampleName::I5,
        ExampleName::I6,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ExampleName::I1 => "i1",
            ExampleName::I2 => "i2",
            ExampleName::I3 => "i3",
            ExampleName::I4 => "i4",
            ExampleName::I5 => "i5",
            ExampleName::I6 => "i6",
        }
    }

    /// Pole configuration produced by the preset.
    pub fn case(&self) -> CaseTag {
        match self {
            ExampleName::I1 | ExampleName::I2 => CaseTag::Case1,
            ExampleName::I3 => CaseTag::Case3,
            ExampleName::I4 => CaseTag::Case2,
            ExampleName::I5 => CaseTag::Case2p,
            ExampleName::I6 => CaseTag::Case4,
        }
    }
}

impl fmt::Display for ExampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExampleName::ALL
            .into_iter()
            .find(|e| e.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown example {s:?} (expected i1..i6)")))
    }
}

/// Example parameters: `ω` for i1–i3, `η` for i5.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Params {
    pub omega: Option<f64>,
    pub eta: Option<f64>,
}

impl Params {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn omega(omega: f64) -> Self {
        Self {
            omega: Some(omega),
            eta: None,
        }
    }

    pub fn eta(eta: f64) -> Self {
        Self {
            omega: None,
            eta: Some(eta),
        }
    }
}

/// A reference value with the number of significant digits it is trusted
/// to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reference {
    pub value: f64,
    /// The value as printed, possibly with more digits than `f64` holds.
    pub text: &'static str,
    pub digits: u32,
}

/// A fully parameterized example.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExampleSpec {
    pub name: ExampleName,
    pub params: Params,
    pub measure: BaseMeasure,
}

/// Validates the parameters of `name` and builds its spec.
pub fn spec(name: ExampleName, params: Params) -> Result<ExampleSpec> {
    let need_omega = |lo: f64, hi: f64| -> Result<()> {
        match params.omega {
            Some(w) if w > lo && w < hi => Ok(()),
            Some(w) => invalid(format!("{name} needs {lo} < omega < {hi}, got {w}")),
            None => invalid(format!("{name} needs --omega")),
        }
    };
    let measure = match name {
        ExampleName::I1 | ExampleName::I3 => {
            need_omega(1.0, f64::INFINITY)?;
            BaseMeasure::legendre()
        }
        ExampleName::I2 => {
            need_omega(0.0, 1.0)?;
            BaseMeasure::jacobi(-0.5, 0.0)?.on_interval(0.0, 1.0)?
        }
        ExampleName::I5 => {
            match params.eta {
                Some(e) if e < 0.0 => {}
                Some(e) => return invalid(format!("i5 needs eta < 0, got {e}")),
                None => return invalid("i5 needs --eta"),
            }
            BaseMeasure::laguerre()
        }
        ExampleName::I4 | ExampleName::I6 => BaseMeasure::laguerre(),
    };
    Ok(ExampleSpec {
        name,
        params,
        measure,
    })
}

impl ExampleSpec {
    fn omega(&self) -> f64 {
        self.params.omega.unwrap_or(f64::NAN)
    }

    fn eta(&self) -> f64 {
        self.params.eta.unwrap_or(f64::NAN)
    }

    /// Preset pole set of degree `m`; `m = 0` gives the empty set.
    pub fn poles(&self, m: usize) -> Result<PoleSet> {
        pole_preset(self.name, self.params, m)
    }

    /// The integrand `g` with `∫ g dλ` the example integral.
    pub fn integrand(&self, t: f64) -> f64 {
        match self.name {
            ExampleName::I1 => pi_over_sin(PI * t / self.omega()),
            ExampleName::I2 => gamma(1.0 + t) / (t + self.omega()),
            ExampleName::I3 => pi_over_sin(PI * t / self.omega()).powi(2),
            ExampleName::I4 => einstein(t),
            ExampleName::I5 => t / (t - self.eta()).exp_m1(),
            ExampleName::I6 => einstein(t).powi(2),
        }
    }

    pub fn reference(&self) -> Result<Reference> {
        reference(self.name, self.params)
    }
}

/// `x / sin x`, continuous at 0.
fn pi_over_sin(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 + x * x / 6.0
    } else {
        x / x.sin()
    }
}

/// `t / (e^t - 1)`, continuous at 0.
fn einstein(t: f64) -> f64 {
    if t.abs() < 1e-8 {
        1.0 - 0.5 * t
    } else {
        t / t.exp_m1()
    }
}

/// Integrand of `name` at `t`, rejecting points outside the support.
pub fn integrand(name: ExampleName, params: Params, t: f64) -> Result<f64> {
    let s = spec(name, params)?;
    let value = if s.measure.support().contains(t) {
        s.integrand(t)
    } else {
        f64::NAN
    };
    if !value.is_finite() {
        return Err(Error::NonFiniteValue { at: t, value });
    }
    Ok(value)
}

fn symmetric_reals(omega: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|v| {
            let sign = if v % 2 == 0 { 1.0 } else { -1.0 };
            sign / (omega * ((v + 1) / 2) as f64)
        })
        .collect()
}

fn einstein_pairs(count: usize, multiplicity: u8) -> Vec<Pole> {
    (1..=count)
        .flat_map(|v| {
            let eta = 1.0 / (2.0 * v as f64 * PI);
            [
                Pole::new(Complex64::new(0.0, eta), multiplicity),
                Pole::new(Complex64::new(0.0, -eta), multiplicity),
            ]
        })
        .collect()
}

/// Preset pole set of degree `m` for `name`.
pub fn pole_preset(name: ExampleName, params: Params, m: usize) -> Result<PoleSet> {
    let s = spec(name, params)?;
    if m == 0 {
        return Ok(PoleSet::empty());
    }
    let entries = match name {
        ExampleName::I1 => symmetric_reals(s.omega(), m).into_iter().map(|x| Pole::real(x, 1)).collect(),
        ExampleName::I2 => {
            let mut v = vec![Pole::real(1.0 / s.omega(), 1)];
            v.extend((2..=m).map(|k| Pole::real(1.0 / (k - 1) as f64, 1)));
            v
        }
        ExampleName::I3 => {
            if m % 2 != 0 {
                return invalid(format!("i3 needs even m, got {m}"));
            }
            symmetric_reals(s.omega(), m / 2).into_iter().map(|x| Pole::real(x, 2)).collect()
        }
        ExampleName::I4 => {
            if m % 2 != 0 {
                return invalid(format!("i4 needs even m, got {m}"));
            }
            einstein_pairs(m / 2, 1)
        }
        ExampleName::I5 => {
            if m % 2 == 0 || m < 3 {
                return invalid(format!("i5 needs odd m >= 3, got {m}"));
            }
            let eta = s.eta();
            let mut v = vec![Pole::real(-1.0 / eta, 1)];
            for k in 1..=(m - 1) / 2 {
                let two_k_pi = 2.0 * k as f64 * PI;
                let r = eta * eta + two_k_pi * two_k_pi;
                v.push(Pole::new(Complex64::new(-eta / r, two_k_pi / r), 1));
                v.push(Pole::new(Complex64::new(-eta / r, -two_k_pi / r), 1));
            }
            v
        }
        ExampleName::I6 => {
            if m % 4 != 0 {
                return invalid(format!("i6 needs m divisible by 4, got {m}"));
            }
            einstein_pairs(m / 4, 2)
        }
    };
    PoleSet::new(entries)
}

const CATALOG: &[(ExampleName, Option<f64>, Option<f64>, &str, u32)] = &[
    (ExampleName::I1, Some(2.0), None, "2.332487232246550241107076", 25),
    (ExampleName::I1, Some(1.1), None, "4.467773646387765789236123", 25),
    (ExampleName::I1, Some(1.01), None, "8.430184580470842058971264", 25),
    (ExampleName::I2, Some(0.5), None, "1.750120591261335415394610", 25),
    (ExampleName::I3, Some(2.0), None, "2.772588722239781237668928", 25),
    (ExampleName::I3, Some(1.1), None, "16.53281773846041830155898", 25),
    (ExampleName::I3, Some(1.01), None, "188.6747842249941742708325", 25),
    (ExampleName::I4, None, None, "0.6449340668482264364724151", 25),
    (ExampleName::I5, None, Some(-0.1), "0.45019361444134784096", 20),
    (ExampleName::I5, None, Some(-1.0), "0.1111093516052317320105065", 25),
    (ExampleName::I5, None, Some(-10.0), "0.1135021146353905701870968e-4", 25),
    (ExampleName::I6, None, None, "0.4816405210580757313458777", 25),
];

/// Best known value of the example integral.
pub fn reference(name: ExampleName, params: Params) -> Result<Reference> {
    let uses_omega = matches!(name, ExampleName::I1 | ExampleName::I2 | ExampleName::I3);
    let uses_eta = name == ExampleName::I5;
    CATALOG
        .iter()
        .find(|(n, w, e, _, _)| {
            *n == name
                && (!uses_omega || *w == params.omega)
                && (!uses_eta || *e == params.eta)
        })
        .map(|&(_, _, _, text, digits)| Reference {
            value: text.parse().expect("catalog entries are valid numbers"),
            text,
            digits,
        })
        .ok_or_else(|| Error::InvalidInput(format!("no reference value for {name} with {params:?}")))
}

/// All catalogued `(name, params)` combinations.
pub fn catalog() -> Vec<(ExampleName, Params)> {
    CATALOG
        .iter()
        .map(|&(n, omega, eta, _, _)| (n, Params { omega, eta }))
        .collect()
}

//! Gauss-type quadrature rules that integrate exactly a prescribed set of
//! rational functions together with polynomials of the highest remaining
//! degree.
//!
//! For an integral `∫ g(t) dλ(t)` whose integrand has poles at known points
//! off the support of `dλ`, an `n`-point rule is built that is exact for `m`
//! rational functions `(1 + ζ t)^{-s}` matching those poles and for all
//! polynomials of degree `2n - m - 1`. The rule is obtained from the
//! ordinary Gauss rule of the modified measure `dλ / ω_m`, where
//! `ω_m(t) = ∏ (1 + ζ_μ t)^{s_μ}`, by rescaling the weights with `ω_m`.
//!
//! Two constructions are provided:
//!
//! * [`ratgauss::build_pf`] splits `1/ω_m` into partial fractions, builds a
//!   Gauss rule for each linearly or quadratically divided measure by
//!   backward recurrence and the modified Chebyshev algorithm, and extracts
//!   the recurrence coefficients of the combined discrete measure.
//! * [`ratgauss::build_disc`] discretizes `dλ / ω_m` with a large Gauss rule
//!   of `dλ` and lets the discrete recurrence coefficients converge.
//!
//! ```
//! use ratquad::examples::{self, ExampleName, Params};
//! use ratquad::ratgauss::{self, BuildOptions};
//!
//! let spec = examples::spec(ExampleName::I1, Params::omega(2.0)).unwrap();
//! let poles = spec.poles(20).unwrap();
//! let rule = ratgauss::build_pf(&spec.measure, &poles, 10, 20, &BuildOptions::default()).unwrap();
//! let value = rule.integrate(|t| spec.integrand(t)).unwrap();
//! assert!((value - 2.332487232246550).abs() < 1e-13);
//! ```

pub mod discrete;
pub mod eigenquad;
mod error;
pub mod examples;
pub mod measures;
pub mod modify;
pub mod parallel;
pub mod partfrac;
pub mod ratgauss;
pub mod special;
mod summation;

pub use error::{Error, Result};
pub use num_complex::Complex64;

//! Special functions and constants needed by the base measures and examples.

use num_complex::Complex64;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Catalan's constant.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

const SERIES_RADIUS: f64 = 4.0;
const MAX_CF_TERMS: usize = 200_000;

/// Gamma function for real arguments.
pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// `e^w E1(w)` for complex `w` off the closed negative real axis.
///
/// Power series near the origin and in the left half-plane up to `|w| = 4`,
/// where its terms do not cancel; continued fraction otherwise. The scaled
/// form avoids overflow of `e^w` for large `|w|`.
pub fn scaled_e1(w: Complex64) -> Complex64 {
    if use_series(w) {
        w.exp() * e1_series(w)
    } else {
        e1_scaled_cf(w)
    }
}

/// Exponential integral `E1(w) = ∫_w^∞ e^{-s}/s ds` (principal branch).
pub fn e1(w: Complex64) -> Complex64 {
    if use_series(w) {
        e1_series(w)
    } else {
        (-w).exp() * e1_scaled_cf(w)
    }
}

fn use_series(w: Complex64) -> bool {
    let r = w.norm();
    r <= 1.0 || (w.re < 0.0 && r <= SERIES_RADIUS)
}

fn e1_series(w: Complex64) -> Complex64 {
    // E1(w) = -γ - ln w - Σ_{k≥1} (-w)^k / (k k!)
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..200 {
        let kf = k as f64;
        term *= -w / kf;
        let contrib = term / kf;
        sum += contrib;
        if contrib.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    -EULER_GAMMA - w.ln() - sum
}

fn e1_scaled_cf(w: Complex64) -> Complex64 {
    // e^w E1(w) = 1/g, g = w+1 - 1²/(w+3 - 2²/(w+5 - ...)), modified Lentz.
    let tiny = 1e-150;
    let mut g = w + 1.0;
    let mut c = g;
    let mut d = Complex64::new(0.0, 0.0);
    for j in 1..MAX_CF_TERMS {
        let k = j as f64;
        let a = -k * k;
        let b = w + (2.0 * k + 1.0);
        d = b + a * d;
        if d.norm() < tiny {
            d = Complex64::new(tiny, 0.0);
        }
        c = b + a / c;
        if c.norm() < tiny {
            c = Complex64::new(tiny, 0.0);
        }
        d = d.inv();
        let delta = c * d;
        g *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    g.inv()
}

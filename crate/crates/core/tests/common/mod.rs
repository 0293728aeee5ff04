//! Test-side oracles, independent of the library's recurrence machinery.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

/// Gauss-Legendre nodes and weights by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * p - pm1) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Gauss-Laguerre nodes and weights by Newton iteration on `L_n`.
pub fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - x[i - 2])
            }
        };
        let mut pp = 0.0;
        let mut p2 = 0.0;
        for _ in 0..200 {
            let (mut p1, mut q2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = q2;
                q2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf + 1.0 - z) * q2 - jf * p3) / (jf + 1.0);
            }
            p2 = q2;
            pp = (nf * p1 - nf * p2) / z;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs() {
                break;
            }
        }
        x[i] = z;
        w[i] = -1.0 / (pp * nf * p2);
    }
    (x, w)
}

/// Composite 20-point Gauss-Legendre on `[a, b]` with `panels` equal panels.
pub fn composite<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, panels: usize) -> Complex64 {
    let (x, w) = gauss_legendre(20);
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mut s = Complex64::new(0.0, 0.0);
        for (xi, wi) in x.iter().zip(&w) {
            s += f(lo + 0.5 * h * (xi + 1.0)) * *wi;
        }
        total += s * (0.5 * h);
    }
    total
}

/// `∫_{-1}^{1} f dt`.
pub fn legendre_integral<F: Fn(f64) -> Complex64>(f: F) -> Complex64 {
    composite(f, -1.0, 1.0, 400)
}

/// `∫_0^∞ f e^{-t} dt`, truncated at 150.
pub fn laguerre_integral<F: Fn(f64) -> Complex64>(f: F) -> Complex64 {
    composite(|t| f(t) * (-t).exp(), 0.0, 150.0, 3000)
}

/// `(1 + ζt)^{-s}`.
pub fn pole_power(zeta: Complex64, s: i32, t: f64) -> Complex64 {
    (Complex64::new(1.0, 0.0) + zeta * t).powi(-s)
}

/// Legendre recurrence coefficients, `β_0 = 2`.
pub fn legendre_beta(k: usize) -> f64 {
    if k == 0 {
        2.0
    } else {
        let k2 = (k * k) as f64;
        k2 / (4.0 * k2 - 1.0)
    }
}

/// Minimal solution `ρ_0..ρ_{count-1}` of the Legendre recurrence at `z`,
/// by backward recurrence from `start` with `ρ_0 = ∫ dt/(t-z) = ln((z-1)/(z+1))`.
pub fn legendre_cauchy_moments(z: f64, count: usize, start: usize) -> Vec<f64> {
    let mut r = 0.0;
    let mut ratios = vec![0.0; count];
    for k in (1..start).rev() {
        r = legendre_beta(k) / (z - r);
        if k < count {
            ratios[k] = r;
        }
    }
    let mut rho = vec![((z - 1.0) / (z + 1.0)).ln()];
    for k in 1..count {
        let prev = rho[k - 1];
        rho.push(prev * ratios[k]);
    }
    rho
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Agreement in significant digits.
pub fn digits(a: f64, b: f64) -> f64 {
    -rel(a, b).max(1e-300).log10()
}

#[test]
fn oracle_self_check() {
    let (x, w) = gauss_legendre(5);
    let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
    assert!((s - 2.0 / 9.0).abs() < 1e-15);
    let (x, w) = gauss_laguerre(6);
    let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(11)).sum();
    assert!(rel(s, 39_916_800.0) < 1e-13);
    let v = laguerre_integral(|t| Complex64::new(t * t, 0.0));
    assert!((v.re - 2.0).abs() < 1e-13);
    let v = legendre_integral(|t| pole_power(Complex64::new(0.5, 0.0), 1, t));
    assert!((v.re - 2.0 * 3f64.ln()).abs() < 1e-14);
}

/// Pole configurations on `[-1, 1]` with every pole at distance ≥ 0.05 from
/// the interval, covering the cases with real or conjugate-pair poles.
pub fn legendre_matrix() -> Vec<(&'static str, Vec<ratquad::partfrac::Pole>)> {
    use ratquad::partfrac::Pole;
    let pair = |re: f64, im: f64| [Pole::new(Complex64::new(re, im), 1), Pole::new(Complex64::new(re, -im), 1)];
    let mut two_pairs = pair(0.3, 0.4).to_vec();
    two_pairs.extend(pair(-0.6, 0.2));
    let mut three_pairs = pair(0.1, 0.9).to_vec();
    three_pairs.extend(pair(-0.5, 0.5));
    three_pairs.extend(pair(0.7, 0.05));
    let mut case2p_a = vec![Pole::real(0.5, 1)];
    case2p_a.extend(pair(0.2, 0.6));
    let mut case2p_b = vec![Pole::real(-0.4, 1)];
    case2p_b.extend(pair(0.3, 0.4));
    case2p_b.extend(pair(-0.8, 0.3));
    vec![
        ("case1 single", vec![Pole::real(0.5, 1)]),
        ("case1 symmetric", vec![Pole::real(0.9, 1), Pole::real(-0.9, 1), Pole::real(0.6, 1), Pole::real(-0.6, 1)]),
        (
            "case1 six",
            [0.1, 0.2, 0.4, 0.6, 0.8, -0.7].iter().map(|&x| Pole::real(x, 1)).collect(),
        ),
        ("case2 two pairs", two_pairs),
        ("case2 three pairs", three_pairs),
        ("case2' one pair", case2p_a),
        ("case2' two pairs", case2p_b),
        ("case3 single", vec![Pole::real(0.5, 2)]),
        ("case3 symmetric", vec![Pole::real(0.7, 2), Pole::real(-0.7, 2)]),
        ("case3 three", vec![Pole::real(0.2, 2), Pole::real(0.5, 2), Pole::real(-0.8, 2)]),
        ("case3' one", vec![Pole::real(0.6, 2), Pole::real(-0.3, 1)]),
        ("case3' two", vec![Pole::real(0.3, 2), Pole::real(0.8, 2), Pole::real(-0.5, 1)]),
    ]
}

/// Composite-rule discretization `(points, weights)` of `∫_a^b f(t) w(t) dt`.
pub fn discretize<W: Fn(f64) -> f64>(w: W, a: f64, b: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, gw) = gauss_legendre(20);
    let h = (b - a) / panels as f64;
    let mut pts = Vec::with_capacity(panels * 20);
    let mut wts = Vec::with_capacity(panels * 20);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        for (xi, wi) in x.iter().zip(&gw) {
            let t = lo + 0.5 * h * (xi + 1.0);
            pts.push(t);
            wts.push(0.5 * h * wi * w(t));
        }
    }
    (pts, wts)
}

/// Legendre weight times `f` on `[-1, 1]`.
pub fn legendre_points<F: Fn(f64) -> f64>(f: F) -> (Vec<f64>, Vec<f64>) {
    discretize(f, -1.0, 1.0, 200)
}

/// Laguerre weight times `f`, truncated at 150.
pub fn laguerre_points<F: Fn(f64) -> f64>(f: F) -> (Vec<f64>, Vec<f64>) {
    discretize(|t| (-t).exp() * f(t), 0.0, 150.0, 1500)
}

/// `(1-t)^{-1/2}` on `[0, 1]` times `f`, via `t = 1 - u^2`.
pub fn sqrt_jacobi_points<F: Fn(f64) -> f64>(f: F) -> (Vec<f64>, Vec<f64>) {
    let (u, w) = discretize(|_| 2.0, 0.0, 1.0, 100);
    let t: Vec<f64> = u.iter().map(|u| 1.0 - u * u).collect();
    let w = t.iter().zip(&w).map(|(t, w)| w * f(*t)).collect();
    (t, w)
}

/// Plain monic Stieltjes procedure on a discrete measure.
pub fn oracle_coefficients(points: &[f64], weights: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut alphas = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n);
    let mut prev = vec![0.0; points.len()];
    let mut cur = vec![1.0; points.len()];
    let mut norm_prev = 1.0;
    for k in 0..n {
        let norm: f64 = cur.iter().zip(weights).map(|(p, w)| w * p * p).sum();
        let tp: f64 = cur.iter().zip(weights).zip(points).map(|((p, w), t)| w * t * p * p).sum();
        let alpha = tp / norm;
        let beta = if k == 0 { norm } else { norm / norm_prev };
        alphas.push(alpha);
        betas.push(beta);
        let next: Vec<f64> = (0..points.len())
            .map(|i| (points[i] - alpha) * cur[i] - if k == 0 { 0.0 } else { beta * prev[i] })
            .collect();
        prev = std::mem::replace(&mut cur, next);
        norm_prev = norm;
    }
    (alphas, betas)
}

/// Largest relative coefficient difference; `α` is scaled by `1 + |α|`.
pub fn coefficient_diff(c: &ratquad::measures::RecurrenceCoefficients, alphas: &[f64], betas: &[f64]) -> f64 {
    let mut d = 0.0f64;
    for k in 0..alphas.len() {
        d = d.max((c.alpha(k) - alphas[k]).abs() / (1.0 + alphas[k].abs()));
        d = d.max(rel(c.beta(k), betas[k]));
    }
    d
}

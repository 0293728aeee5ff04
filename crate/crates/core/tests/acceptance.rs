//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use common::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratquad::discrete::{lanczos, stieltjes, DiscreteMeasure};
use ratquad::examples::{spec, ExampleName, Params};
use ratquad::measures::BaseMeasure;
use ratquad::modify::backward_cauchy_moments;
use ratquad::partfrac::{CaseTag, Pole, PoleSet};
use ratquad::ratgauss::{build_disc, build_pf, BuildOptions, RationalRule};
use ratquad::Error;

const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

/// Collects failed checks for one criterion.
#[derive(Default)]
struct Report {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Report {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.failures.push(what.into());
    }
}

fn example_rule(name: ExampleName, params: Params, n: usize, m: usize, pf: bool) -> Result<(RationalRule, f64), Error> {
    let s = spec(name, params)?;
    let poles = s.poles(m)?;
    let opts = BuildOptions::default().with_gamma();
    let rule = if pf {
        build_pf(&s.measure, &poles, n, m, &opts)?
    } else {
        build_disc(&s.measure, &poles, n, m, &opts)?
    };
    let value = rule.integrate(|t| s.integrand(t))?;
    Ok((rule, value))
}

fn gauss_value(name: ExampleName, params: Params, n: usize) -> f64 {
    let s = spec(name, params).unwrap();
    s.measure.gauss_rule(n).unwrap().apply(|t| s.integrand(t)).unwrap()
}

fn within_factor(got: f64, want: f64, factor: f64) -> bool {
    got <= want * factor && got >= want / factor
}

fn within_pct(got: f64, want: f64, pct: f64) -> bool {
    rel(got, want) <= pct / 100.0
}

fn table_3_2(r: &mut Report) {
    let exact = 8.0 * CATALAN / PI;
    for (n, tol) in [(4, 1e-7), (7, 5e-14), (10, 5e-14)] {
        match example_rule(ExampleName::I1, Params::omega(2.0), n, 2 * n, true) {
            Ok((_, v)) => r.check(rel(v, exact) <= tol, format!("n={n} err {:.2e} <= {tol:.0e}", rel(v, exact))),
            Err(e) => r.fail(format!("n={n}: {e}")),
        }
    }
    for (n, want) in [(1, 3.94e-1), (4, 3.50e-7)] {
        match example_rule(ExampleName::I1, Params::omega(2.0), n, 2 * n, true) {
            Ok((rule, _)) => {
                let g = rule.gamma_n().unwrap_or(f64::NAN);
                r.check(within_pct(g, want, 5.0), format!("gamma_{n} = {g:.3e} vs {want:.2e}"));
            }
            Err(e) => r.fail(format!("gamma_{n}: {e}")),
        }
    }
}

fn table_3_2_gauss(r: &mut Report) {
    let exact = 8.0 * CATALAN / PI;
    for (n, want) in [(4, 7.18e-5), (7, 2.73e-8), (10, 1.02e-11)] {
        let e = rel(gauss_value(ExampleName::I1, Params::omega(2.0), n), exact);
        r.check(within_factor(e, want, 2.0), format!("n={n} gauss err {e:.2e} vs {want:.2e}"));
    }
}

fn table_3_7(r: &mut Report) {
    let exact = 4.0 * 2f64.ln();
    for (n, tol) in [(8, 1e-13), (11, 5e-14)] {
        match example_rule(ExampleName::I3, Params::omega(2.0), n, 2 * n, true) {
            Ok((_, v)) => r.check(rel(v, exact) <= tol, format!("n={n} err {:.2e} <= {tol:.0e}", rel(v, exact))),
            Err(e) => r.fail(format!("n={n}: {e}")),
        }
    }
    let e = rel(gauss_value(ExampleName::I3, Params::omega(2.0), 8), exact);
    r.check(within_factor(e, 2.92e-8, 2.0), format!("n=8 gauss err {e:.2e} vs 2.92e-8"));
    match example_rule(ExampleName::I3, Params::omega(1.1), 14, 28, true) {
        Ok((_, v)) => {
            let d = digits(v, 16.53281773846041830);
            r.check(d >= 14.0, format!("omega=1.1 n=14 {d:.1} digits"));
        }
        Err(e) => r.fail(format!("omega=1.1 n=14: {e}")),
    }
}

fn example_3_2(r: &mut Report) {
    let want = 1.750120591261335415394610;
    let p = Params::omega(0.5);
    match example_rule(ExampleName::I2, p, 12, 24, false) {
        Ok((_, v)) => r.check(digits(v, want) >= 14.0, format!("disc n=12 {:.1} digits", digits(v, want))),
        Err(e) => r.fail(format!("disc n=12: {e}")),
    }
    match example_rule(ExampleName::I2, p, 13, 2, true) {
        Ok((_, v)) => r.check(digits(v, want) >= 14.0, format!("pf m=2 n=13 {:.1} digits", digits(v, want))),
        Err(e) => r.fail(format!("pf m=2 n=13: {e}")),
    }
    match example_rule(ExampleName::I2, p, 18, 36, true) {
        Ok((_, v)) => r.check(rel(v, want) >= 1e-8, format!("pf m=36 n=18 unstable, err {:.2e}", rel(v, want))),
        Err(Error::NonPositiveBeta { index, .. }) => r.check(true, format!("pf m=36 n=18 non-positive beta at {index}")),
        Err(e) => r.fail(format!("pf m=36 n=18: unexpected {e}")),
    }
}

fn example_3_4(r: &mut Report) {
    let exact = PI * PI / 6.0 - 1.0;
    for (n, tol) in [(10, 1e-13), (15, 5e-14)] {
        match example_rule(ExampleName::I4, Params::none(), n, 2 * n, false) {
            Ok((_, v)) => r.check(rel(v, exact) <= tol, format!("n={n} err {:.2e} <= {tol:.0e}", rel(v, exact))),
            Err(e) => r.fail(format!("n={n}: {e}")),
        }
    }
    for (n, want) in [(5, 1.50e-5), (10, 2.22e-8), (15, 1.59e-11)] {
        let e = rel(gauss_value(ExampleName::I4, Params::none(), n), exact);
        r.check(within_factor(e, want, 2.0), format!("n={n} gauss err {e:.2e} vs {want:.2e}"));
    }
}

fn example_3_5(r: &mut Report) {
    for (eta, n, want) in [(-10.0, 11, 0.113502114635390578e-4), (-1.0, 16, 0.11110935160523173)] {
        match example_rule(ExampleName::I5, Params::eta(eta), n, 2 * n - 1, false) {
            Ok((_, v)) => r.check(digits(v, want) >= 13.0, format!("eta={eta} n={n} {:.1} digits", digits(v, want))),
            Err(e) => r.fail(format!("eta={eta} n={n}: {e}")),
        }
    }
}

fn example_3_6(r: &mut Report) {
    match example_rule(ExampleName::I6, Params::none(), 8, 16, false) {
        Ok((_, v)) => {
            let printed = format!("{v:.10}");
            r.check(printed == "0.4816405209", format!("n=8 value {printed}"));
        }
        Err(e) => r.fail(format!("n=8: {e}")),
    }
    match example_rule(ExampleName::I6, Params::none(), 14, 28, false) {
        Ok((_, v)) => {
            let d = digits(v, 0.4816405210580757);
            r.check(d >= 13.0, format!("n=14 {d:.1} digits"));
        }
        Err(e) => r.fail(format!("n=14: {e}")),
    }
}

fn integrand_scale<F: Fn(f64) -> Complex64>(f: F) -> (Complex64, f64) {
    let exact = legendre_integral(&f);
    let abs = legendre_integral(|t| Complex64::new(f(t).norm(), 0.0)).re;
    (exact, abs.max(exact.norm()))
}

fn exactness(r: &mut Report) {
    let leg = BaseMeasure::legendre();
    let opts = BuildOptions::default();
    let mut worst = 0.0f64;
    let mut count = 0;
    for (label, entries) in legendre_matrix() {
        let poles = PoleSet::new(entries.clone()).unwrap();
        if poles.min_distance(leg.support()) < 0.05 {
            r.fail(format!("{label}: pole too close"));
            continue;
        }
        let m = poles.m();
        for n in [3, 6, 10] {
            let rule = match build_pf(&leg, &poles, n, m, &opts) {
                Ok(rule) => rule,
                Err(e) => {
                    r.fail(format!("{label} n={n}: {e}"));
                    continue;
                }
            };
            let mut check = |f: &dyn Fn(f64) -> Complex64, what: String| {
                let (exact, scale) = integrand_scale(f);
                let q: Complex64 = rule.nodes().iter().zip(rule.weights()).map(|(x, w)| f(*x) * *w).sum();
                let e = (q - exact).norm() / scale;
                worst = worst.max(e);
                count += 1;
                if e > 1e-10 {
                    r.fail(format!("{label} n={n} {what}: err {e:.2e}"));
                }
            };
            for pole in &entries {
                for s in 1..=pole.multiplicity as i32 {
                    let z = pole.zeta;
                    check(&move |t| pole_power(z, s, t), format!("zeta={z} s={s}"));
                }
            }
            for k in 0..(2 * n).saturating_sub(m) {
                check(&move |t| Complex64::new(t.powi(k as i32), 0.0), format!("t^{k}"));
            }
        }
    }
    r.check(r.failures.is_empty(), format!("{count} integrals, worst err {worst:.2e} <= 1e-10"));
}

fn method_agreement(r: &mut Report) {
    let leg = BaseMeasure::legendre();
    let opts = BuildOptions::default();
    let mut worst = 0.0f64;
    for (label, entries) in legendre_matrix() {
        let poles = PoleSet::new(entries).unwrap();
        let case = poles.classify(leg.support()).unwrap();
        if !matches!(case, CaseTag::Case1 | CaseTag::Case3) {
            continue;
        }
        for n in [3, 6, 10] {
            let m = poles.m();
            match (build_pf(&leg, &poles, n, m, &opts), build_disc(&leg, &poles, n, m, &opts)) {
                (Ok(a), Ok(b)) => {
                    let d = max_abs_diff(a.nodes(), b.nodes()).max(max_abs_diff(a.weights(), b.weights()));
                    worst = worst.max(d);
                    if d > 1e-10 {
                        r.fail(format!("{label} n={n}: diff {d:.2e}"));
                    }
                }
                (a, b) => r.fail(format!("{label} n={n}: {:?} / {:?}", a.err(), b.err())),
            }
        }
    }
    r.check(r.failures.is_empty(), format!("worst node/weight diff {worst:.2e} <= 1e-10"));
}

fn degeneration(r: &mut Report) {
    let opts = BuildOptions::default();
    let tiny = 1e-14;
    for (label, measure, oracle) in [
        ("legendre", BaseMeasure::legendre(), gauss_legendre as fn(usize) -> (Vec<f64>, Vec<f64>)),
        ("laguerre", BaseMeasure::laguerre(), gauss_laguerre),
    ] {
        for n in [5, 12] {
            let (x, w) = oracle(n);
            let scaled = |a: &[f64], b: &[f64]| {
                a.iter().zip(b).map(|(p, q)| (p - q).abs() / q.abs().max(1.0)).fold(0.0, f64::max)
            };
            match build_disc(&measure, &PoleSet::empty(), n, 0, &opts) {
                Ok(rule) => {
                    let d = scaled(rule.nodes(), &x).max(scaled(rule.weights(), &w));
                    r.check(d <= 1e-13, format!("{label} n={n} disc m=0 diff {d:.1e}"));
                }
                Err(e) => r.fail(format!("{label} n={n} disc m=0: {e}")),
            }
            let poles = PoleSet::new(vec![Pole::real(tiny, 1), Pole::real(tiny / 2.0, 1)]).unwrap();
            match build_pf(&measure, &poles, n, 2, &opts) {
                Ok(rule) => {
                    let d = scaled(rule.nodes(), &x).max(scaled(rule.weights(), &w));
                    r.check(d <= 1e-13, format!("{label} n={n} pf zeta~1e-14 diff {d:.1e}"));
                }
                Err(e) => r.fail(format!("{label} n={n} pf: {e}")),
            }
        }
    }
}

fn backward_recurrence(r: &mut Report) {
    let leg = BaseMeasure::legendre();
    let count = 40;
    let mut starts = Vec::new();
    for omega in [2.0, 1.1, 1.01] {
        match backward_cauchy_moments(&leg, Complex64::new(omega, 0.0), count, 1e-13) {
            Ok(cm) => {
                let k0 = cm.start_index_used;
                starts.push(k0);
                let doubled = legendre_cauchy_moments(omega, count, 2 * k0);
                let d = cm.rhos.iter().zip(&doubled).map(|(a, b)| ((a.re - b) / b).abs()).fold(0.0, f64::max);
                r.check(d < 1e-13, format!("omega={omega} k0={k0}, doubled change {d:.1e}"));
            }
            Err(e) => r.fail(format!("omega={omega}: {e}")),
        }
    }
    r.check(starts.windows(2).all(|w| w[0] <= w[1]), format!("k0 sequence {starts:?} non-decreasing"));
}

fn stieltjes_lanczos(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for trial in 0..20 {
        let n = rng.gen_range(2..=40);
        let size = rng.gen_range((2 * n).max(50)..=500);
        let points: Vec<f64> = (0..size).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let weights: Vec<f64> = (0..size).map(|_| rng.gen_range(0.01..1.0)).collect();
        let d = DiscreteMeasure::new(points, weights).unwrap();
        match (stieltjes(&d, n), lanczos(&d, n)) {
            (Ok(a), Ok(b)) => {
                let mut diff = 0.0f64;
                for k in 0..n {
                    diff = diff.max((a.alpha(k) - b.alpha(k)).abs());
                    diff = diff.max(rel(a.beta(k), b.beta(k)));
                }
                worst = worst.max(diff);
                if diff > 1e-12 {
                    r.fail(format!("trial {trial} N={size} n={n}: diff {diff:.2e}"));
                }
            }
            (a, b) => r.fail(format!("trial {trial}: {:?} / {:?}", a.err(), b.err())),
        }
    }
    r.check(r.failures.is_empty(), format!("20 measures, worst diff {worst:.2e} <= 1e-12"));
}

fn main() {
    let criteria: [(&str, fn(&mut Report)); 12] = [
        ("I1(2) rational rule and error constants", table_3_2),
        ("I1(2) classical Gauss errors", table_3_2_gauss),
        ("I3 rational rule", table_3_7),
        ("I2 discretization and partial fractions", example_3_2),
        ("I4 discretization and Gauss-Laguerre errors", example_3_4),
        ("I5 discretization", example_3_5),
        ("I6 discretization", example_3_6),
        ("exactness on prescribed rationals and monomials", exactness),
        ("pf and disc agreement", method_agreement),
        ("classical degeneration", degeneration),
        ("backward recurrence start index", backward_recurrence),
        ("Stieltjes and Lanczos agreement", stieltjes_lanczos),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let mut report = Report::default();
        let start = Instant::now();
        run(&mut report);
        let secs = start.elapsed().as_secs_f64();
        let ok = report.failures.is_empty() && secs < 5.0;
        if !ok {
            failed += 1;
        }
        println!("criterion {:2} {} {title} ({secs:.2}s)", i + 1, if ok { "PASS" } else { "FAIL" });
        for note in &report.notes {
            println!("    ok   {note}");
        }
        for f in &report.failures {
            println!("    FAIL {f}");
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sphtet::dihedral::{l_function, q_coefficients, u_function, v_function, z0_of};
use sphtet::verifier::{
    duality_residual, lemma_suite, montecarlo_volume, montecarlo_volume_with, random_valid_tetrahedron,
    schlafli_residual, Threads,
};
use sphtet::{
    dilog, lengths_from_angles, volume_from_angles, volume_from_lengths, Angles, Complex, GramMatrix,
    Lengths,
};

const SAMPLES: u64 = 1000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn samples(n: u64) -> Vec<(Angles, Lengths)> {
    (0..n).map(random_valid_tetrahedron::<f64>).collect()
}

/// Σ (−1)ᵏ/(2k+1)², summed from the tail with half the first omitted term
/// added back, which cancels the leading truncation error.
fn catalan() -> f64 {
    let n = 1_000_000u64;
    let term = |k: u64| {
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        s / ((2 * k + 1) as f64).powi(2)
    };
    let tail = 0.5 * term(n);
    (0..n).rev().fold(tail, |acc, k| acc + term(k))
}

fn anchor_volume() -> Outcome {
    let right = Angles::uniform(FRAC_PI_2);
    let expected = PI * PI / 8.0;
    let start = Instant::now();
    let by_angles = volume_from_angles(&right);
    let by_lengths = lengths_from_angles(&right).and_then(|l| volume_from_lengths(&l));
    let elapsed = start.elapsed();
    match (by_angles, by_lengths) {
        (Ok(a), Ok(l)) => {
            let err = (a.volume - expected).abs().max((l.volume - expected).abs());
            outcome(
                err < 1e-11 && elapsed < Duration::from_millis(10),
                format!("error {err:.2e}, {elapsed:?}"),
            )
        }
        (a, l) => outcome(false, format!("{:?} / {:?}", a.err(), l.err())),
    }
}

fn intermediate_anchors() -> Outcome {
    let a = Angles::uniform(FRAC_PI_2).phases();
    let pi2 = PI * PI;
    let run = || -> sphtet::Result<[f64; 5]> {
        let z0 = z0_of(&a)?;
        Ok([
            (z0 - Complex::new(0.5, 0.5)).norm(),
            (l_function(&a, z0)?.re + 3.0 * pi2 / 8.0).abs(),
            (sphtet::dihedral::delta(&a)?.re - 5.0 * pi2 / 6.0).abs(),
            (u_function(&a, z0)?.re - 11.0 * pi2 / 24.0).abs(),
            v_function(&a)?.im.abs(),
        ])
    };
    match run() {
        Ok([z, l, d, u, v]) => outcome(
            z < 1e-13 && l < 1e-11 && d < 1e-11 && u < 1e-11 && v < 1e-11,
            format!("z0 {z:.1e}, L {l:.1e}, Δ {d:.1e}, U {u:.1e}, Im V {v:.1e}"),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn cross_formula() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut errors = 0;
    for (angles, lengths) in samples(SAMPLES) {
        match (volume_from_angles(&angles), volume_from_lengths(&lengths)) {
            (Ok(a), Ok(l)) => worst = worst.max((a.volume - l.volume).abs()),
            _ => errors += 1,
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-9 && errors == 0 && elapsed < Duration::from_secs(30),
        format!("max diff {worst:.2e}, {errors} errors, {elapsed:.2?}"),
    )
}

fn max_residual(n: u64, f: impl Fn(&Angles) -> sphtet::Result<f64>) -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut errors = 0;
    for (angles, _) in samples(n) {
        match f(&angles) {
            Ok(r) if r.is_finite() => worst = worst.max(r),
            _ => errors += 1,
        }
    }
    (worst, errors)
}

fn duality() -> Outcome {
    let (worst, errors) = max_residual(SAMPLES, duality_residual);
    outcome(worst < 1e-9 && errors == 0, format!("max residual {worst:.2e}, {errors} errors"))
}

fn schlafli() -> Outcome {
    let (worst, errors) = max_residual(100, schlafli_residual);
    outcome(worst < 1e-5 && errors == 0, format!("max residual {worst:.2e}, {errors} errors"))
}

fn discriminant() -> Outcome {
    let (worst, errors) = max_residual(SAMPLES, |angles| {
        let q = q_coefficients(&angles.phases())?;
        let sixteen_det = 16.0 * GramMatrix::from_angles(angles)?.det();
        Ok((q.q1 * q.q1 - 4.0 * q.q0 * q.q2 - sixteen_det).norm() / sixteen_det)
    });
    outcome(worst < 1e-10 && errors == 0, format!("max relative error {worst:.2e}, {errors} errors"))
}

fn lemmas() -> Outcome {
    let checks = [
        ("eqz_rational", 1e-10),
        ("z0_du_dz", 1e-10),
        ("im_delta_derivative", 1e-10),
        ("phi_psi_length", 1e-10),
        ("du_dtheta", 1e-8),
    ];
    let mut worst = [0.0f64; 5];
    let mut errors = 0;
    for (angles, _) in samples(100) {
        let report = lemma_suite(&angles);
        errors += report.errors.len();
        for (w, (name, _)) in worst.iter_mut().zip(checks) {
            let value = report.residuals.get(name).map_or(f64::NAN, |r| r.value);
            *w = if value.is_nan() { f64::NAN } else { w.max(value) };
        }
    }
    let pass = errors == 0 && worst.iter().zip(checks).all(|(w, (_, bound))| *w < bound);
    let detail = checks
        .iter()
        .zip(worst)
        .map(|((name, _), w)| format!("{name} {w:.1e}"))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(pass, detail)
}

fn montecarlo() -> Outcome {
    let n = 4_000_000;
    let mut within = 0;
    let mut errors = 0;
    for (s, (angles, _)) in samples(50).iter().enumerate() {
        let est = montecarlo_volume(angles, n, 7_000 + s as u64);
        match (est, volume_from_angles(angles)) {
            (Ok(est), Ok(v)) if est.z_score(v.volume).abs() <= 4.0 => within += 1,
            (Ok(_), Ok(_)) => {}
            _ => errors += 1,
        }
    }
    let (angles, _) = random_valid_tetrahedron::<f64>(0);
    let start = Instant::now();
    let single = montecarlo_volume_with(&angles, n, 7_000, Threads::Single);
    let elapsed = start.elapsed();
    outcome(
        within >= 48 && errors == 0 && single.is_ok() && elapsed < Duration::from_secs(5),
        format!("{within}/50 within 4σ, {errors} errors, single-threaded sample {elapsed:.2?}"),
    )
}

fn dilog_values() -> Outcome {
    let pi2 = PI * PI;
    let run = || -> sphtet::Result<(f64, f64, f64, f64)> {
        let minus_one = (dilog(Complex::new(-1.0, 0.0))? + pi2 / 12.0).norm();
        let one = (dilog(Complex::new(1.0, 0.0))? - pi2 / 6.0).norm();
        let cat = (dilog(Complex::new(0.0, 1.0))?.im - catalan()).abs();
        let mut circle = 0.0f64;
        for k in 0..1000 {
            let t = 2.0 * PI * k as f64 / 1000.0;
            let closed = t * t / 4.0 - PI * t / 2.0 + pi2 / 6.0;
            circle = circle.max((dilog(Complex::from_polar(1.0, t))?.re - closed).abs());
        }
        Ok((minus_one, one, cat, circle))
    };
    match run() {
        Ok((m, o, c, u)) => outcome(
            m < 1e-14 && o < 1e-13 && c < 1e-13 && u < 1e-12,
            format!("Li₂(−1) {m:.1e}, Li₂(1) {o:.1e}, Catalan {c:.1e}, circle {u:.1e}"),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn volume_range() -> Outcome {
    let mut out_of_range = 0;
    let mut warnings = 0;
    let mut errors = 0;
    for (angles, lengths) in samples(SAMPLES) {
        for r in [volume_from_angles(&angles), volume_from_lengths(&lengths)] {
            match r {
                Ok(r) => {
                    if !(r.volume > 0.0 && r.volume < PI * PI) {
                        out_of_range += 1;
                    }
                    warnings += r.warnings.len();
                }
                Err(_) => errors += 1,
            }
        }
    }
    outcome(
        out_of_range == 0 && warnings == 0 && errors == 0,
        format!("{out_of_range} out of range, {warnings} warnings, {errors} errors"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("anchor volume π²/8", anchor_volume),
        ("intermediate anchors", intermediate_anchors),
        ("cross-formula equivalence", cross_formula),
        ("duality", duality),
        ("Schläfli", schlafli),
        ("discriminant identity", discriminant),
        ("lemma suite", lemmas),
        ("Monte-Carlo oracle", montecarlo),
        ("dilog unit values", dilog_values),
        ("volume range", volume_range),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}  {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

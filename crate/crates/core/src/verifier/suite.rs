//! Residual reports for the identities behind the volume formulas.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::Serialize;

use super::montecarlo::{montecarlo_volume, McEstimate};
use crate::dihedral::{
    a_ddelta_da, delta, du_dtheta, exp_2z_dl_dz, q_coefficients, v_function, volume_from_angles,
    z_aux, z_dl_dz,
};
use crate::edge::volume_from_lengths;
use crate::error::{Error, Result};
use crate::gram::{dual, is_spherical, lengths_from_angles, DihedralAngles, GramMatrix};
use crate::scalar::Real;

/// Central-difference step for the Schläfli check.
pub const FD_STEP: f64 = 1e-6;

/// Near-degenerate tetrahedra (det G below this) are flagged in reports.
const NEAR_DEGENERATE_DET: f64 = 1e-3;

const IDENTITY: f64 = 1e-10;
const DERIVATIVE: f64 = 1e-8;
const CROSSCHECK: f64 = 1e-9;
const FINITE_DIFFERENCE: f64 = 1e-5;
const MC_SIGMAS: f64 = 4.0;

/// `φ = exp(4a₁ ∂Δ/∂a₁)` and `ψ = exp(2a₁ ∂L/∂a₁)|_{z₀}` as rational
/// functions of the phases.
pub fn phi_psi<T: Real>(a: &[Complex<T>; 6], z0: Complex<T>) -> (Complex<T>, Complex<T>) {
    let [a1, a2, a3, a4, a5, a6] = *a;
    let one = Complex::new(T::one(), T::zero());
    let phi = (a1 + a2 * a3) * (a1 * a2 * a3 + one) * (a1 + a5 * a6) * (a1 * a5 * a6 + one)
        / ((a1 * a2 + a3) * (a1 * a3 + a2) * (a1 * a5 + a6) * (a1 * a6 + a5));
    let psi = (a1 * a2 * a4 * a5 - z0) * (a1 * a3 * a4 * a6 - z0)
        / (a4 * (a1 * a2 * a3 + z0) * (a1 * a5 * a6 + z0));
    (phi, psi)
}

/// `max_j |∂Vol/∂θⱼ − lⱼ/2|` with central differences of step [`FD_STEP`].
pub fn schlafli_residual<T: Real>(angles: &DihedralAngles<T>) -> Result<T> {
    let lengths = lengths_from_angles(angles)?;
    let h = T::lit(FD_STEP);
    let mut worst = T::zero();
    for j in 0..6 {
        let (mut plus, mut minus) = (*angles, *angles);
        plus.0[j] = plus.0[j] + h;
        minus.0[j] = minus.0[j] - h;
        let fd = (volume_from_angles(&plus)?.volume - volume_from_angles(&minus)?.volume) / (h + h);
        worst = worst.max((fd - lengths.0[j] * T::lit(0.5)).abs());
    }
    Ok(worst)
}

/// `|Vol(T) + Vol(T*) + ½ Σ lⱼ(π − θⱼ) − π²|`.
pub fn duality_residual<T: Real>(angles: &DihedralAngles<T>) -> Result<T> {
    let lengths = lengths_from_angles(angles)?;
    let (dual_angles, _) = dual(angles, &lengths)?;
    let pi = T::PI();
    let mixed = (0..6).fold(T::zero(), |acc, j| acc + lengths.0[j] * (pi - angles.0[j]));
    let total = volume_from_angles(angles)?.volume
        + volume_from_angles(&dual_angles)?.volume
        + mixed * T::lit(0.5);
    Ok((total - pi * pi).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemma,
    Schlafli,
    Duality,
    Montecarlo,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lemma" => Ok(Self::Lemma),
            "schlafli" => Ok(Self::Schlafli),
            "duality" => Ok(Self::Duality),
            "montecarlo" => Ok(Self::Montecarlo),
            other => Err(format!(
                "unknown suite {other:?} (expected lemma, schlafli, duality or montecarlo)"
            )),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Lemma => "lemma",
            Self::Schlafli => "schlafli",
            Self::Duality => "duality",
            Self::Montecarlo => "montecarlo",
        };
        f.write_str(s)
    }
}

/// One checked quantity. `pass` is `value < bound`; a quantity that could
/// not be computed has a NaN value (null in JSON) and fails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub angles: [f64; 6],
    pub lengths: Option<[f64; 6]>,
    pub volume: Option<f64>,
    #[serde(rename = "detG")]
    pub det_g: f64,
    pub residuals: BTreeMap<String, Residual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub montecarlo: Option<McEstimate>,
    pub flags: Vec<String>,
    pub errors: Vec<String>,
    pub pass: bool,
}

impl VerifyReport {
    fn new(suite: Suite, angles: &DihedralAngles<f64>) -> Self {
        let report = is_spherical(angles);
        let mut flags = Vec::new();
        let mut errors = Vec::new();
        if !report.valid {
            errors.push(format!("not spherical: {}", report.reason()));
        } else if report.det < NEAR_DEGENERATE_DET {
            flags.push(format!("near-degenerate: det G = {:e}", report.det));
        }
        Self {
            suite,
            angles: angles.0,
            lengths: lengths_from_angles(angles).ok().map(|l| l.0),
            volume: volume_from_angles(angles).ok().map(|v| v.volume),
            det_g: report.det,
            residuals: BTreeMap::new(),
            montecarlo: None,
            flags,
            errors,
            pass: false,
        }
    }

    fn record(&mut self, name: &str, value: Result<f64>, bound: f64) {
        let value = value.unwrap_or_else(|e| {
            self.errors.push(format!("{name}: {e}"));
            f64::NAN
        });
        let pass = value < bound;
        self.residuals.insert(name.to_string(), Residual { value, bound, pass });
    }

    fn finish(mut self) -> Self {
        self.pass = self.errors.is_empty() && self.residuals.values().all(|r| r.pass);
        self
    }

    /// Names of the residuals that exceed their bound.
    pub fn failures(&self) -> Vec<&str> {
        self.residuals
            .iter()
            .filter(|(_, r)| !r.pass)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

fn max_over_edges(f: impl Fn(usize) -> Result<f64>) -> Result<f64> {
    (0..6).try_fold(0.0f64, |acc, j| Ok(acc.max(f(j)?)))
}

/// Every identity residual, plus the Schläfli, duality and cross-formula
/// checks, for one tetrahedron.
pub fn lemma_suite(angles: &DihedralAngles<f64>) -> VerifyReport {
    let mut report = VerifyReport::new(Suite::Lemma, angles);
    if !report.errors.is_empty() {
        return report.finish();
    }
    let a = angles.phases();
    let i_pi = Complex::new(0.0, PI);

    let q = q_coefficients(&a);
    let z0 = q.as_ref().map_err(Clone::clone).and_then(z_aux);
    let lengths = lengths_from_angles(angles);
    let gram = GramMatrix::from_angles(angles);

    report.record("z0_modulus", z0.as_ref().map(|z| z.norm()).map_err(Clone::clone), 1.0);
    report.record(
        "eqz_rational",
        z0.as_ref().map(|&z| (exp_2z_dl_dz(&a, z) - 1.0).norm()).map_err(Clone::clone),
        IDENTITY,
    );
    report.record(
        "z0_du_dz",
        z0.as_ref().map_err(Clone::clone).and_then(|&z| Ok((z_dl_dz(&a, z)? - i_pi).norm())),
        IDENTITY,
    );
    report.record(
        "im_delta_derivative",
        max_over_edges(|j| Ok((4.0 * a_ddelta_da(&a, j)?.im + 2.0 * PI).abs())),
        IDENTITY,
    );
    let phi_psi_sq = z0.as_ref().map_err(Clone::clone).map(|&z| {
        let (phi, psi) = phi_psi(&a, z);
        phi * psi * psi
    });
    report.record(
        "phi_psi_length",
        match (&phi_psi_sq, &lengths) {
            (Ok(f), Ok(l)) => Ok((f - Complex::from_polar(1.0, 2.0 * l.0[0])).norm()),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        },
        IDENTITY,
    );
    report.record(
        "phi_psi_cofactor",
        match (&phi_psi_sq, &gram) {
            (Ok(f), Ok(g)) => Ok((f - g.exp_2i_length(angles, 0)).norm()),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        },
        IDENTITY,
    );
    report.record(
        "du_dtheta",
        match (&z0, &lengths) {
            (Ok(z), Ok(l)) => max_over_edges(|j| {
                Ok((du_dtheta(&a, *z, j)? - (2.0 * PI - l.0[j]) / 2.0).norm())
            }),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        },
        DERIVATIVE,
    );
    report.record(
        "discriminant",
        match (&q, &gram) {
            (Ok(q), Ok(g)) => {
                let sixteen_det = 16.0 * g.det();
                let lhs = q.q1 * q.q1 - 4.0 * q.q0 * q.q2;
                Ok((lhs - sixteen_det).norm() / sixteen_det.abs())
            }
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        },
        IDENTITY,
    );
    let v = v_function(&a);
    report.record("im_v", v.as_ref().map(|v| v.im.abs()).map_err(Clone::clone), IDENTITY);
    report.record(
        "v_mod_period",
        v.and_then(|v| {
            let vol = volume_from_angles(angles)?.volume;
            let period = 2.0 * PI * PI;
            let d = (v.re - vol).rem_euclid(period);
            Ok(d.min(period - d))
        }),
        CROSSCHECK,
    );
    report.record(
        "re_delta",
        delta(&a).map(|d| (d.re - (-2.0 * PI * PI / 3.0 + PI * angles.sum() / 2.0)).abs()),
        IDENTITY,
    );
    report.record("schlafli", schlafli_residual(angles), FINITE_DIFFERENCE);
    report.record("duality", duality_residual(angles), CROSSCHECK);
    report.record(
        "cross_formula",
        lengths.as_ref().map_err(Clone::clone).and_then(|l| {
            Ok((volume_from_angles(angles)?.volume - volume_from_lengths(l)?.volume).abs())
        }),
        CROSSCHECK,
    );
    report.record(
        "length_gradient",
        lengths.as_ref().map_err(Clone::clone).and_then(|l| {
            max_over_edges(|j| Ok((crate::edge::d_re_ltilde_dl(l, j)? + angles.0[j] / 2.0).abs()))
        }),
        DERIVATIVE,
    );
    report.finish()
}

/// Compares the angle formula with a Monte-Carlo estimate.
pub fn montecarlo_suite(angles: &DihedralAngles<f64>, n: u64, seed: u64) -> VerifyReport {
    let mut report = VerifyReport::new(Suite::Montecarlo, angles);
    if !report.errors.is_empty() {
        return report.finish();
    }
    let estimate = montecarlo_volume(angles, n, seed);
    report.montecarlo = estimate.as_ref().ok().copied();
    let z = estimate.and_then(|e| Ok(e.z_score(volume_from_angles(angles)?.volume)));
    report.record("montecarlo_sigmas", z, MC_SIGMAS);
    report.finish()
}

pub fn run_suite(suite: Suite, angles: &DihedralAngles<f64>, n: u64, seed: u64) -> VerifyReport {
    match suite {
        Suite::Lemma => lemma_suite(angles),
        Suite::Montecarlo => montecarlo_suite(angles, n, seed),
        Suite::Schlafli | Suite::Duality => {
            let mut report = VerifyReport::new(suite, angles);
            if report.errors.is_empty() {
                if suite == Suite::Schlafli {
                    report.record("schlafli", schlafli_residual(angles), FINITE_DIFFERENCE);
                } else {
                    report.record("duality", duality_residual(angles), CROSSCHECK);
                }
            }
            report.finish()
        }
    }
}

impl From<Error> for VerifyReport {
    fn from(e: Error) -> Self {
        let nan = [f64::NAN; 6];
        Self {
            suite: Suite::Lemma,
            angles: nan,
            lengths: None,
            volume: None,
            det_g: f64::NAN,
            residuals: BTreeMap::new(),
            montecarlo: None,
            flags: Vec::new(),
            errors: vec![e.to_string()],
            pass: false,
        }
    }
}

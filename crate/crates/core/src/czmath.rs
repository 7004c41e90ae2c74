//! Principal-branch complex logarithm and dilogarithm.
//!
//! `Li₂` is evaluated by its Taylor series on `|z| ≤ 1/2`, by the Bernoulli
//! series in `u = −log(1 − z)` on the rest of the closed unit disk with
//! `Re z ≤ 1/2`, and everything else is mapped there with the reflection
//! `z ↦ 1 − z` and the inversion `z ↦ 1/z`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `B₂ₖ / (2k+1)!` for k = 1, 2, …
#[allow(clippy::excessive_precision)]
const BERNOULLI_COEFFS: [f64; 22] = [
    2.7777777777777778e-2,
    -2.7777777777777778e-4,
    4.7241118669690098e-6,
    -9.1857730746619636e-8,
    1.8978869988970999e-9,
    -4.0647616451442255e-11,
    8.9216910204564526e-13,
    -1.9939295860721076e-14,
    4.5189800296199182e-16,
    -1.0356517612181247e-17,
    2.3952186210261867e-19,
    -5.5817858743250093e-21,
    1.3091507554183213e-22,
    -3.0874198024267403e-24,
    7.3159756527022034e-26,
    -1.7408456572340007e-27,
    4.1576356446138997e-29,
    -9.9621484882846221e-31,
    2.3940344248961653e-32,
    -5.7683473553673901e-34,
    1.393179479647008e-35,
    -3.3721219654850895e-37,
];

const MAX_SERIES_TERMS: usize = 200;

fn check_finite<T: Real>(z: Complex<T>, op: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{op}: non-finite argument {z}")))
    }
}

/// Principal argument in (−π, π]; points on the negative real axis,
/// including those carrying a negative zero imaginary part, map to +π.
#[inline]
pub fn parg<T: Real>(z: Complex<T>) -> T {
    if z.im == T::zero() && z.re < T::zero() {
        T::PI()
    } else {
        z.im.atan2(z.re)
    }
}

/// Principal logarithm `log|z| + i·arg z` with `arg ∈ (−π, π]`.
pub fn plog<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    check_finite(z, "plog")?;
    if z.re == T::zero() && z.im == T::zero() {
        return Err(Error::Domain("plog(0) is undefined".into()));
    }
    Ok(Complex::new(z.norm().ln(), parg(z)))
}

/// Principal branch of the dilogarithm, analytic off `{x ∈ ℝ : x ≥ 1}`.
///
/// `dilog(1)` returns the limit π²/6. Real arguments greater than one lie on
/// the branch cut and are rejected.
pub fn dilog<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    check_finite(z, "dilog")?;
    let one = T::one();
    if z.im == T::zero() {
        if z.re > one {
            return Err(Error::Domain(format!(
                "dilog: {} lies on the branch cut (1, ∞)",
                z.re
            )));
        }
        if z.re == one {
            return Ok(Complex::new(zeta2(), T::zero()));
        }
    }
    if z.re == T::zero() && z.im == T::zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }

    if z.norm_sqr() > one {
        // Li₂(z) = −Li₂(1/z) − π²/6 − ½·log²(−z)
        let log_neg = plog(-z)?;
        let half = T::lit(0.5);
        Ok(-dilog_closed_disk(z.inv()) - zeta2::<T>() - log_neg * log_neg * half)
    } else {
        Ok(dilog_closed_disk(z))
    }
}

fn zeta2<T: Real>() -> T {
    T::PI() * T::PI() / T::lit(6.0)
}

/// `|z| ≤ 1`, `z ≠ 1`.
fn dilog_closed_disk<T: Real>(z: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    if z.re > half {
        // Li₂(z) = π²/6 − log z·log(1 − z) − Li₂(1 − z); |1 − z| < 1 here.
        let w = Complex::new(T::one(), T::zero()) - z;
        let log_z = Complex::new(z.norm().ln(), parg(z));
        let log_w = Complex::new(w.norm().ln(), parg(w));
        Complex::new(zeta2::<T>(), T::zero()) - log_z * log_w - dilog_left_disk(w)
    } else {
        dilog_left_disk(z)
    }
}

/// `|z| ≤ 1`, `Re z ≤ 1/2`.
fn dilog_left_disk<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.norm_sqr() <= T::lit(0.25) {
        taylor(z)
    } else {
        bernoulli(z)
    }
}

/// Σ zᵏ/k², truncated once the terms fall below machine precision.
fn taylor<T: Real>(z: Complex<T>) -> Complex<T> {
    let mut sum = Complex::new(T::zero(), T::zero());
    let mut power = z;
    for k in 1..=MAX_SERIES_TERMS {
        let kf = T::lit(k as f64);
        let term = power / (kf * kf);
        sum = sum + term;
        if term.norm() <= T::epsilon() * sum.norm() * T::lit(0.25) {
            break;
        }
        power = power * z;
    }
    sum
}

/// Σ Bₙ uⁿ⁺¹/(n+1)! with u = −log(1 − z); |u| ≤ 1.26 on the region used.
fn bernoulli<T: Real>(z: Complex<T>) -> Complex<T> {
    let w = Complex::new(T::one(), T::zero()) - z;
    let u = -Complex::new(w.norm().ln(), parg(w));
    let u2 = u * u;
    let mut sum = u - u2 * T::lit(0.25);
    let mut power = u;
    for &c in BERNOULLI_COEFFS.iter() {
        power = power * u2;
        let term = power * T::lit(c);
        sum = sum + term;
        if term.norm() <= T::epsilon() * sum.norm() * T::lit(0.25) {
            break;
        }
    }
    sum
}

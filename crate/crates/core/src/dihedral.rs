//! Volume from dihedral angles.
//!
//! Everything here takes the unit phases `aⱼ = e^{iθⱼ}`. The volume is
//!
//! ```text
//! Vol = −Re L(a, z₀) + π·(arg(−q₂) + ½ Σ θⱼ) − 3π²/2   (mod 2π²)
//! ```
//!
//! where `z₀` is the root of `q₂ z² + q₁ z + q₀` inside the unit disk.

use num_complex::Complex;
use serde::Serialize;

use crate::czmath::{dilog, parg, plog};
use crate::error::{Error, Result};
use crate::gram::{self, DihedralAngles, GramMatrix, VERTEX_TRIPLES};
use crate::scalar::Real;
use crate::ser;

/// Sets of phases divided out of `z` in the four `+Li₂(z/Πa)` terms of `L`.
/// The first is empty: the bare `Li₂(z)`.
const POSITIVE_TERMS: [&[usize]; 4] = [&[], &[0, 1, 3, 4], &[0, 2, 3, 5], &[1, 2, 4, 5]];

/// Sets for the four `−Li₂(−z/Πa)` terms; these are the vertex triples.
const NEGATIVE_TERMS: [[usize; 3]; 4] = VERTEX_TRIPLES;

const UNIT_MODULUS_TOL: f64 = 1e-12;
const IDENTITY_TOL: f64 = 1e-10;

/// Tolerance for treating an imaginary part as zero on the q₂ > 0 locus.
const POSITIVE_REAL_TOL: f64 = 1e-14;

/// Distance below a multiple of 2π² inside which a reduced value is read as
/// a zero volume.
pub const BRANCH_REPAIR_TOL: f64 = 1e-6;

#[inline]
fn one<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

fn product<T: Real>(a: &[Complex<T>; 6], idx: &[usize]) -> Complex<T> {
    idx.iter().fold(one(), |acc, &j| acc * a[j])
}

fn check_unit<T: Real>(a: &[Complex<T>; 6]) -> Result<()> {
    for (j, x) in a.iter().enumerate() {
        if !x.re.is_finite() || !x.im.is_finite() || (x.norm() - T::one()).abs() > T::tol(UNIT_MODULUS_TOL) {
            return Err(Error::Domain(format!("a{} = {x} is not on the unit circle", j + 1)));
        }
    }
    Ok(())
}

/// The quadratic `q₂ z² + q₁ z + q₀` whose inner root is `z₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QCoefficients<T> {
    #[serde(serialize_with = "ser::complex")]
    pub q0: Complex<T>,
    pub q1: T,
    #[serde(serialize_with = "ser::complex")]
    pub q2: Complex<T>,
    /// `q₁² − 4|q₀|²`, which equals `16 det G`.
    pub discriminant: T,
}

pub fn q_coefficients<T: Real>(a: &[Complex<T>; 6]) -> Result<QCoefficients<T>> {
    check_unit(a)?;
    let inv = a.map(|x| x.inv());
    let q_sum = |x: &[Complex<T>; 6]| {
        x[0] * x[3]
            + x[1] * x[4]
            + x[2] * x[5]
            + x[0] * x[1] * x[5]
            + x[0] * x[2] * x[4]
            + x[1] * x[2] * x[3]
            + x[3] * x[4] * x[5]
            + x.iter().fold(one(), |acc, &v| acc * v)
    };
    let q0 = q_sum(a);
    let q2 = q_sum(&inv);
    let q1c = -(0..3).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
        acc + (a[j] - inv[j]) * (a[j + 3] - inv[j + 3])
    });

    let tol = T::tol(IDENTITY_TOL);
    if q1c.im.abs() > tol {
        return Err(Error::Consistency(format!("Im q1 = {} is not zero", q1c.im)));
    }
    if (q2 - q0.conj()).norm() > tol {
        return Err(Error::Consistency(format!("q2 = {q2} is not conj(q0) = {}", q0.conj())));
    }
    let q1 = q1c.re;
    Ok(QCoefficients {
        q0,
        q1,
        q2,
        discriminant: q1 * q1 - T::lit(4.0) * q0.norm_sqr(),
    })
}

/// `z₀ = (−q₁ + √(q₁² − 4q₀q₂)) / (2q₂)` with the positive real root.
pub fn z_aux<T: Real>(q: &QCoefficients<T>) -> Result<Complex<T>> {
    if !(q.discriminant > T::zero()) {
        return Err(Error::Degenerate(format!(
            "discriminant {} is not positive",
            q.discriminant
        )));
    }
    if q.q2.norm() == T::zero() {
        return Err(Error::Degenerate("q2 vanishes".into()));
    }
    let numerator = -q.q1 + q.discriminant.sqrt();
    if numerator >= T::zero() {
        return Err(Error::Branch(format!(
            "numerator −q1 + √disc = {numerator} is not negative"
        )));
    }
    let z0 = Complex::new(numerator, T::zero()) / (q.q2 * T::lit(2.0));
    if z0.norm() >= T::one() {
        return Err(Error::Branch(format!("|z0| = {} is not inside the unit disk", z0.norm())));
    }
    Ok(z0)
}

/// `z₀` straight from the phases.
pub fn z0_of<T: Real>(a: &[Complex<T>; 6]) -> Result<Complex<T>> {
    z_aux(&q_coefficients(a)?)
}

fn positive_args<T: Real>(a: &[Complex<T>; 6], z: Complex<T>) -> [Complex<T>; 4] {
    POSITIVE_TERMS.map(|s| z / product(a, s))
}

fn negative_args<T: Real>(a: &[Complex<T>; 6], z: Complex<T>) -> [Complex<T>; 4] {
    NEGATIVE_TERMS.map(|s| -z / product(a, &s))
}

fn logs<T: Real>(a: &[Complex<T>; 6]) -> Result<[Complex<T>; 6]> {
    let mut out = [Complex::new(T::zero(), T::zero()); 6];
    for (o, &x) in out.iter_mut().zip(a.iter()) {
        *o = plog(x)?;
    }
    Ok(out)
}

/// The potential function `L(a₁, …, a₆, z)`.
pub fn l_function<T: Real>(a: &[Complex<T>; 6], z: Complex<T>) -> Result<Complex<T>> {
    let mut sum = Complex::new(T::zero(), T::zero());
    for w in positive_args(a, z) {
        sum = sum + dilog(w)?;
    }
    for w in negative_args(a, z) {
        sum = sum - dilog(w)?;
    }
    let la = logs(a)?;
    for j in 0..3 {
        sum = sum + la[j] * la[j + 3];
    }
    Ok(sum * T::lit(0.5))
}

/// `z ∂L/∂z` in closed logarithmic form.
pub fn z_dl_dz<T: Real>(a: &[Complex<T>; 6], z: Complex<T>) -> Result<Complex<T>> {
    let mut sum = Complex::new(T::zero(), T::zero());
    for w in positive_args(a, z) {
        sum = sum - plog(one::<T>() - w)?;
    }
    for w in negative_args(a, z) {
        sum = sum + plog(one::<T>() - w)?;
    }
    Ok(sum * T::lit(0.5))
}

/// `exp(2z ∂L/∂z)` as a rational function of `a` and `z`.
pub fn exp_2z_dl_dz<T: Real>(a: &[Complex<T>; 6], z: Complex<T>) -> Complex<T> {
    let num = NEGATIVE_TERMS
        .iter()
        .fold(one::<T>(), |acc, s| acc * (product(a, s) + z));
    let den = POSITIVE_TERMS
        .iter()
        .fold(one::<T>(), |acc, s| acc * (product(a, s) - z));
    num / den
}

/// `aⱼ ∂L/∂aⱼ` with `z` held fixed.
pub fn a_dl_da<T: Real>(a: &[Complex<T>; 6], z: Complex<T>, j: usize) -> Result<Complex<T>> {
    let mut sum = plog(a[gram::opposite(j)])?;
    for (s, w) in POSITIVE_TERMS.iter().zip(positive_args(a, z)) {
        if s.contains(&j) {
            sum = sum + plog(one::<T>() - w)?;
        }
    }
    for (s, w) in NEGATIVE_TERMS.iter().zip(negative_args(a, z)) {
        if s.contains(&j) {
            sum = sum - plog(one::<T>() - w)?;
        }
    }
    Ok(sum * T::lit(0.5))
}

/// `Δ₀(x, y, z) = −¼ (Li₂(−x/yz) + Li₂(−y/xz) + Li₂(−z/xy) + Li₂(−xyz))`.
pub fn delta0<T: Real>(x: Complex<T>, y: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    let s = dilog(-x / (y * z))? + dilog(-y / (x * z))? + dilog(-z / (x * y))? + dilog(-x * y * z)?;
    Ok(-s * T::lit(0.25))
}

/// `x ∂Δ₀/∂x`.
fn x_ddelta0_dx<T: Real>(x: Complex<T>, y: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    let s = plog(one::<T>() + x / (y * z))? - plog(one::<T>() + y / (x * z))?
        - plog(one::<T>() + z / (x * y))?
        + plog(one::<T>() + x * y * z)?;
    Ok(s * T::lit(0.25))
}

/// `Δ = Σ Δ₀(vertex triple) − ½ Σ (log aⱼ)²`.
pub fn delta<T: Real>(a: &[Complex<T>; 6]) -> Result<Complex<T>> {
    let mut sum = Complex::new(T::zero(), T::zero());
    for [p, q, r] in VERTEX_TRIPLES {
        sum = sum + delta0(a[p], a[q], a[r])?;
    }
    for l in logs(a)? {
        sum = sum - l * l * T::lit(0.5);
    }
    Ok(sum)
}

/// `aⱼ ∂Δ/∂aⱼ`.
pub fn a_ddelta_da<T: Real>(a: &[Complex<T>; 6], j: usize) -> Result<Complex<T>> {
    let mut sum = -plog(a[j])?;
    for triple in VERTEX_TRIPLES.iter().filter(|t| t.contains(&j)) {
        let others: Vec<usize> = triple.iter().copied().filter(|&k| k != j).collect();
        sum = sum + x_ddelta0_dx(a[j], a[others[0]], a[others[1]])?;
    }
    Ok(sum)
}

/// `U = L + Δ`.
pub fn u_function<T: Real>(a: &[Complex<T>; 6], z: Complex<T>) -> Result<Complex<T>> {
    Ok(l_function(a, z)? + delta(a)?)
}

/// `∂U/∂θⱼ = i aⱼ ∂U/∂aⱼ` at fixed `z`.
pub fn du_dtheta<T: Real>(a: &[Complex<T>; 6], z: Complex<T>, j: usize) -> Result<Complex<T>> {
    let i = Complex::new(T::zero(), T::one());
    Ok(i * (a_dl_da(a, z, j)? + a_ddelta_da(a, j)?))
}

/// `V = −U(a, z₀) + πi (log z₀ − Σ log aⱼ) − 13π²/6`.
pub fn v_function<T: Real>(a: &[Complex<T>; 6]) -> Result<Complex<T>> {
    let z0 = z0_of(a)?;
    let pi = T::PI();
    let sum_logs = logs(a)?.iter().fold(Complex::new(T::zero(), T::zero()), |acc, &l| acc + l);
    let i_pi = Complex::new(T::zero(), pi);
    Ok(-u_function(a, z0)? + i_pi * (plog(z0)? - sum_logs)
        - T::lit(13.0) * pi * pi / T::lit(6.0))
}

/// Volume with the quantities it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeResult<T> {
    /// In `[0, π²)`.
    pub volume: T,
    #[serde(serialize_with = "ser::complex")]
    pub z0: Complex<T>,
    pub arg_neg_q2: T,
    /// Determinant of the Gram matrix the formula was evaluated on.
    #[serde(rename = "detG")]
    pub det_g: T,
    /// The formula's value before reduction mod 2π².
    pub raw_value: T,
    pub warnings: Vec<String>,
}

/// `arg(−q₂)`, with `π` on the locus where `q₂` is a positive real.
pub(crate) fn arg_neg_q2<T: Real>(q2: Complex<T>, warnings: &mut Vec<String>) -> T {
    if q2.re > T::zero() && q2.im.abs() <= T::tol(POSITIVE_REAL_TOL) * q2.norm() {
        warnings.push(format!(
            "q2 = {q2} is on the positive real axis; arg(-q2) taken as π"
        ));
        T::PI()
    } else {
        parg(-q2)
    }
}

/// Reduces `raw` mod 2π² into `[0, π²)`.
pub(crate) fn reduce_volume<T: Real>(raw: T, warnings: &mut Vec<String>) -> Result<T> {
    let pi2 = T::PI() * T::PI();
    let period = pi2 + pi2;
    if !raw.is_finite() {
        return Err(Error::Branch(format!("raw value {raw} is not finite")));
    }
    let mut r = raw - period * (raw / period).floor();
    if r < T::zero() {
        r = r + period;
    }
    if r >= period {
        r = r - period;
    }
    if r < pi2 {
        return Ok(r);
    }
    let defect = period - r;
    if defect <= T::tol(BRANCH_REPAIR_TOL) {
        warnings.push(format!(
            "raw value {raw} sits {defect:e} below a multiple of 2π²; volume reported as 0"
        ));
        return Ok(T::zero());
    }
    Err(Error::Branch(format!(
        "raw value {raw} reduces to {r}, outside [0, π²)"
    )))
}

/// Volume of the spherical tetrahedron with the given dihedral angles.
pub fn volume_from_angles<T: Real>(angles: &DihedralAngles<T>) -> Result<VolumeResult<T>> {
    let g: GramMatrix<T> = gram::require_spherical(angles)?;
    let a = angles.phases();
    let q = q_coefficients(&a)?;
    let z0 = z_aux(&q)?;
    let l = l_function(&a, z0)?;

    let mut warnings = Vec::new();
    let arg = arg_neg_q2(q.q2, &mut warnings);
    let pi = T::PI();
    let raw = -l.re + pi * (arg + angles.sum() * T::lit(0.5)) - T::lit(1.5) * pi * pi;
    let volume = reduce_volume(raw, &mut warnings)?;
    Ok(VolumeResult {
        volume,
        z0,
        arg_neg_q2: arg,
        det_g: g.det(),
        raw_value: raw,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::{lengths_from_angles, DihedralAngles};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    type C = Complex<f64>;

    fn all_i() -> [C; 6] {
        [C::new(0.0, 1.0); 6]
    }

    #[test]
    fn q_at_all_i() {
        let q = q_coefficients(&all_i()).unwrap();
        assert_abs_diff_eq!(q.q0.re, -4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(q.q0.im, -4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(q.q1, 12.0, epsilon = 1e-14);
        assert_abs_diff_eq!(q.q2.re, -4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(q.q2.im, 4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(q.discriminant, 16.0, epsilon = 1e-12);
    }

    #[test]
    fn q_discriminant_at_two_pi_over_three() {
        let a = DihedralAngles::uniform(2.0 * PI / 3.0).phases();
        assert_abs_diff_eq!(q_coefficients(&a).unwrap().discriminant, 5.0, epsilon = 1e-12);
    }

    #[test]
    fn q_rejects_off_circle() {
        let mut a = all_i();
        a[2] = C::new(0.0, 1.1);
        assert!(matches!(q_coefficients(&a), Err(Error::Domain(_))));
    }

    #[test]
    fn z0_at_all_i() {
        let z0 = z0_of(&all_i()).unwrap();
        assert_abs_diff_eq!(z0.re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(z0.im, 0.5, epsilon = 1e-15);
        assert!((exp_2z_dl_dz(&all_i(), z0) - 1.0).norm() < 1e-12);
    }

    #[test]
    fn z_aux_rejects_degenerate() {
        let q = QCoefficients { q0: C::new(1.0, 0.0), q1: 2.0, q2: C::new(1.0, 0.0), discriminant: 0.0 };
        assert!(matches!(z_aux(&q), Err(Error::Degenerate(_))));
        let q = QCoefficients { q0: C::new(1.0, 0.0), q1: -3.0, q2: C::new(1.0, 0.0), discriminant: 5.0 };
        assert!(matches!(z_aux(&q), Err(Error::Branch(_))));
    }

    #[test]
    fn l_at_all_i() {
        let l = l_function(&all_i(), C::new(0.5, 0.5)).unwrap();
        assert_abs_diff_eq!(l.re, -3.0 * PI * PI / 8.0, epsilon = 1e-13);
    }

    #[test]
    fn l_at_zero_is_log_products() {
        let a = DihedralAngles([0.3, 1.2, 2.0, 0.7, 1.9, 2.8]).phases();
        let l = l_function(&a, C::new(0.0, 0.0)).unwrap();
        let expect: C = (0..3).map(|j| plog(a[j]).unwrap() * plog(a[j + 3]).unwrap()).sum::<C>() * 0.5;
        assert!((l - expect).norm() < 1e-15);
    }

    #[test]
    fn l_conjugation() {
        let a = DihedralAngles([0.3, 1.2, 2.0, 0.7, 1.9, 2.8]).phases();
        let z = C::new(0.2, -0.35);
        let l = l_function(&a, z).unwrap();
        let lc = l_function(&a.map(|x| x.conj()), z.conj()).unwrap();
        // log terms: (−iθ)(−iθ') = (iθ)(iθ') is real, so conj holds termwise
        assert!((l.conj() - lc).norm() < 1e-13);
    }

    #[test]
    fn delta_at_all_i() {
        let i = C::new(0.0, 1.0);
        let d0 = delta0(i, i, i).unwrap();
        assert!((d0 + dilog(i).unwrap()).norm() < 1e-15);
        assert_abs_diff_eq!(delta(&all_i()).unwrap().re, 5.0 * PI * PI / 6.0, epsilon = 1e-13);
    }

    #[test]
    fn u_and_v_at_all_i() {
        let u = u_function(&all_i(), C::new(0.5, 0.5)).unwrap();
        assert_abs_diff_eq!(u.re, 11.0 * PI * PI / 24.0, epsilon = 1e-13);
        let v = v_function(&all_i()).unwrap();
        assert_abs_diff_eq!(v.re, PI * PI / 8.0, epsilon = 1e-13);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn analytic_derivatives_at_all_i() {
        let a = all_i();
        let z0 = C::new(0.5, 0.5);
        let w = z_dl_dz(&a, z0).unwrap();
        assert!((w - C::new(0.0, PI)).norm() < 1e-14);
        // a₁ ∂U/∂a₁ = −3πi/4 at the right-angled tetrahedron
        let au = a_dl_da(&a, z0, 0).unwrap() + a_ddelta_da(&a, 0).unwrap();
        assert!((au - C::new(0.0, -0.75 * PI)).norm() < 1e-14);
        for j in 0..6 {
            assert_abs_diff_eq!(4.0 * a_ddelta_da(&a, j).unwrap().im, -2.0 * PI, epsilon = 1e-14);
        }
    }

    #[test]
    fn a_dl_da_matches_finite_difference() {
        let th = DihedralAngles([1.9, 1.7, 1.4, 1.6, 2.1, 1.8]);
        let a = th.phases();
        let z = z0_of(&a).unwrap();
        let h = 1e-6;
        for j in 0..6 {
            let mut p = th;
            let mut m = th;
            p.0[j] += h;
            m.0[j] -= h;
            let fd = (l_function(&p.phases(), z).unwrap() - l_function(&m.phases(), z).unwrap()) / (2.0 * h);
            let analytic = C::new(0.0, 1.0) * a_dl_da(&a, z, j).unwrap();
            assert!((fd - analytic).norm() < 1e-8, "edge {j}: {fd} vs {analytic}");
        }
    }

    #[test]
    fn volume_of_right_angled_tetrahedron() {
        let r = volume_from_angles(&DihedralAngles::uniform(FRAC_PI_2)).unwrap();
        assert_abs_diff_eq!(r.volume, PI * PI / 8.0, epsilon = 1e-13);
        assert_abs_diff_eq!(r.arg_neg_q2, -PI / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.det_g, 1.0, epsilon = 1e-15);
        assert!(r.warnings.is_empty());
        // −(−3π²/8) + π(−π/4 + 3π/2) − 3π²/2
        assert_abs_diff_eq!(r.raw_value, PI * PI / 8.0, epsilon = 1e-13);
    }

    #[test]
    fn volume_of_regular_five_cell_tile() {
        // the regular 4-simplex projects to five congruent cells with θ = 2π/3
        let r = volume_from_angles(&DihedralAngles::uniform(2.0 * PI / 3.0)).unwrap();
        assert_abs_diff_eq!(r.volume, 2.0 * PI * PI / 5.0, epsilon = 1e-12);
    }

    #[test]
    fn volume_rejects_non_spherical() {
        let r = volume_from_angles(&DihedralAngles::uniform(PI / 3.0));
        assert!(matches!(r, Err(Error::NotSpherical(_))));
    }

    #[test]
    fn reduction_policy() {
        let pi2 = PI * PI;
        let mut w = Vec::new();
        assert_abs_diff_eq!(reduce_volume(1.0 + 4.0 * pi2, &mut w).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(reduce_volume(1.0 - 2.0 * pi2, &mut w).unwrap(), 1.0, epsilon = 1e-12);
        assert!(w.is_empty());
        assert_eq!(reduce_volume(-1e-9, &mut w).unwrap(), 0.0);
        assert_eq!(w.len(), 1);
        assert!(matches!(reduce_volume(1.5 * pi2, &mut w), Err(Error::Branch(_))));
    }

    #[test]
    fn positive_real_q2_is_flagged() {
        let mut w = Vec::new();
        assert_eq!(arg_neg_q2(C::new(3.0, 0.0), &mut w), PI);
        assert_eq!(w.len(), 1);
        assert_abs_diff_eq!(arg_neg_q2(C::new(3.0, 1e-3), &mut w), -PI + 1e-3 / 3.0, epsilon = 1e-9);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn f32_right_angled() {
        let r = volume_from_angles(&DihedralAngles::uniform(std::f32::consts::FRAC_PI_2)).unwrap();
        assert!((r.volume - (PI * PI / 8.0) as f32).abs() < 1e-4);
    }

    #[test]
    fn lengths_at_right_angles_consistent_with_du_dtheta() {
        let th = DihedralAngles::uniform(FRAC_PI_2);
        let l = lengths_from_angles(&th).unwrap();
        let a = th.phases();
        let z0 = z0_of(&a).unwrap();
        for j in 0..6 {
            let d = du_dtheta(&a, z0, j).unwrap();
            assert_abs_diff_eq!(d.re, (2.0 * PI - l.0[j]) / 2.0, epsilon = 1e-13);
        }
    }
}

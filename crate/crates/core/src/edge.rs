//! Volume from edge lengths.
//!
//! With `bⱼ = e^{i lⱼ}` the potential is evaluated at the dual phases
//! `ãⱼ = −b_{j±3}⁻¹ = e^{i(π − l_{j±3})}`:
//!
//! ```text
//! Vol = Re L̃(b, z̃₀) − π arg(−q̃₂) − Σ lⱼ ∂Re L̃/∂lⱼ|_{z = z̃₀} − π²/2   (mod 2π²)
//! ```
//!
//! The partial derivatives hold `z` fixed at `z̃₀` and are taken from the
//! closed logarithmic form of `∂L/∂aⱼ`, so nothing here passes through the
//! dihedral angles of the tetrahedron itself.

use num_complex::Complex;

use crate::dihedral::{self, a_dl_da, l_function, q_coefficients, z_aux, VolumeResult};
use crate::error::{Error, Result};
use crate::gram::{self, dual_angle_vector, opposite, EdgeLengths};
use crate::scalar::Real;

/// Phases entering the length formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TildeParams<T> {
    /// `bⱼ = e^{i lⱼ}`.
    pub b: [Complex<T>; 6],
    /// `ãⱼ = −b_{j±3}⁻¹`.
    pub atilde: [Complex<T>; 6],
}

/// Builds the substituted phases after checking that the lengths close up
/// into a spherical tetrahedron.
pub fn tilde_params<T: Real>(lengths: &EdgeLengths<T>) -> Result<TildeParams<T>> {
    for (j, &l) in lengths.0.iter().enumerate() {
        if !(l > T::zero() && l < T::PI()) {
            return Err(Error::Range(format!("edge length {} = {l} is outside (0, π)", j + 1)));
        }
    }
    gram::require_spherical(&dual_angle_vector(lengths)).map_err(|e| match e {
        Error::NotSpherical(msg) => {
            Error::NotSpherical(format!("no spherical tetrahedron has these edge lengths: {msg}"))
        }
        other => other,
    })?;
    let b = lengths.0.map(|l| Complex::from_polar(T::one(), l));
    let atilde = std::array::from_fn(|j| -b[opposite(j)].inv());
    Ok(TildeParams { b, atilde })
}

/// `L̃(b, z) = L(ã, z)`.
pub fn l_tilde<T: Real>(params: &TildeParams<T>, z: Complex<T>) -> Result<Complex<T>> {
    l_function(&params.atilde, z)
}

/// `z̃₀` and `q̃₂`.
pub fn tilde_z0<T: Real>(params: &TildeParams<T>) -> Result<(Complex<T>, Complex<T>)> {
    let q = q_coefficients(&params.atilde)?;
    Ok((z_aux(&q)?, q.q2))
}

/// `∂ Re L̃ / ∂lⱼ` at fixed `z`.
///
/// `ã_{j±3}` is the only phase depending on `lⱼ`, with `dã/dlⱼ = −i ã`, so
/// the derivative is `Im(ã ∂L/∂ã)` at that slot.
pub fn d_re_ltilde_dl_at<T: Real>(params: &TildeParams<T>, z: Complex<T>, j: usize) -> Result<T> {
    Ok(a_dl_da(&params.atilde, z, opposite(j))?.im)
}

/// `∂ Re L̃ / ∂lⱼ` evaluated at `z = z̃₀`.
pub fn d_re_ltilde_dl<T: Real>(lengths: &EdgeLengths<T>, j: usize) -> Result<T> {
    let params = tilde_params(lengths)?;
    let (z0, _) = tilde_z0(&params)?;
    d_re_ltilde_dl_at(&params, z0, j)
}

/// Volume of the spherical tetrahedron with the given edge lengths.
///
/// `z0` and `arg_neg_q2` in the result are the substituted `z̃₀` and
/// `arg(−q̃₂)`; `det_g` is the determinant of the dual Gram matrix
/// `(cos l)`, i.e. the Gram matrix of the vertices.
pub fn volume_from_lengths<T: Real>(lengths: &EdgeLengths<T>) -> Result<VolumeResult<T>> {
    let params = tilde_params(lengths)?;
    let (z0, q2) = tilde_z0(&params)?;
    let lt = l_tilde(&params, z0)?;

    let mut gradient_term = T::zero();
    for j in 0..6 {
        gradient_term = gradient_term + lengths.0[j] * d_re_ltilde_dl_at(&params, z0, j)?;
    }

    let mut warnings = Vec::new();
    let arg = dihedral::arg_neg_q2(q2, &mut warnings);
    let pi = T::PI();
    let raw = lt.re - pi * arg - gradient_term - pi * pi * T::lit(0.5);
    let volume = dihedral::reduce_volume(raw, &mut warnings)?;
    let det_g = gram::GramMatrix::from_angles(&dual_angle_vector(lengths))?.det();
    Ok(VolumeResult {
        volume,
        z0,
        arg_neg_q2: arg,
        det_g,
        raw_value: raw,
        warnings,
    })
}

//! Volumes of spherical tetrahedra (curvature +1) from dihedral angles or
//! edge lengths, via the complex dilogarithm.
//!
//! The math is generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! the scalar to `f64`, which is what the accuracy targets assume.
//!
//! ```
//! use sphtet::{volume_from_angles, Angles};
//!
//! let right = Angles::uniform(std::f64::consts::FRAC_PI_2);
//! let v = volume_from_angles(&right).unwrap().volume;
//! assert!((v - std::f64::consts::PI.powi(2) / 8.0).abs() < 1e-12);
//! ```

pub mod czmath;
pub mod dihedral;
pub mod edge;
pub mod error;
pub mod gram;
pub mod scalar;
mod ser;
pub mod verifier;

pub use num_complex::Complex;

pub use czmath::{dilog, plog};
pub use dihedral::{volume_from_angles, QCoefficients, VolumeResult};
pub use edge::{volume_from_lengths, TildeParams};
pub use error::{Error, Result};
pub use gram::{
    angles_from_lengths, dual, is_spherical, lengths_from_angles, DihedralAngles, EdgeLengths,
    GramMatrix, SphericalityReport,
};
pub use scalar::Real;

pub type ComplexScalar<T> = Complex<T>;

pub type Angles = DihedralAngles<f64>;
pub type Lengths = EdgeLengths<f64>;
pub type Gram = GramMatrix<f64>;
pub type Volume = VolumeResult<f64>;
pub type C64 = Complex<f64>;

pub type Angles32 = DihedralAngles<f32>;
pub type Lengths32 = EdgeLengths<f32>;
pub type Volume32 = VolumeResult<f32>;

//! Hit-or-miss estimate of the volume on S³.
//!
//! A tetrahedron with outward face normals `u₁…u₄` is the set of unit
//! vectors `x` with `⟨u_a, x⟩ ≤ 0` for every face. Directions come from
//! 4-dimensional standard normal deviates; the half-space test depends only
//! on the direction, so the deviates are not normalised.
//!
//! The `n` samples are cut into chunks of [`CHUNK`]. Chunk `c` draws from a
//! Xoshiro256++ stream seeded with `seed` (via SplitMix64) and advanced by
//! `c` jumps of 2¹²⁸. Hit counts are integers, so any worker schedule over
//! the chunks gives the same total as the sequential run.

use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::Serialize;

use super::normals::normals_from_gram;
use crate::error::{Error, Result};
use crate::gram::{self, DihedralAngles};
use crate::scalar::Real;

/// Samples per substream.
pub const CHUNK: u64 = 1 << 16;

const MIN_SAMPLES: u64 = 10_000;

/// `estimate = 2π²·hits/n`, `stderr = 2π²·√(p(1−p)/n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
    pub n: u64,
    pub seed: u64,
}

impl McEstimate {
    fn from_counts(hits: u64, n: u64, seed: u64) -> Self {
        let sphere = 2.0 * std::f64::consts::PI.powi(2);
        let p = hits as f64 / n as f64;
        Self {
            estimate: sphere * p,
            stderr: sphere * (p * (1.0 - p) / n as f64).sqrt(),
            hits,
            n,
            seed,
        }
    }

    /// `|value − estimate|` in units of the standard error.
    pub fn z_score(&self, value: f64) -> f64 {
        (value - self.estimate).abs() / self.stderr
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Threads {
    Single,
    #[default]
    Parallel,
}

fn chunk_rng(seed: u64, chunk: u64) -> Xoshiro256PlusPlus {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    for _ in 0..chunk {
        rng.jump();
    }
    rng
}

fn count_chunk(normals: &[[f64; 4]; 4], seed: u64, chunk: u64, len: u64) -> u64 {
    let mut rng = chunk_rng(seed, chunk);
    let mut hits = 0;
    for _ in 0..len {
        let x: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
        let inside = normals
            .iter()
            .all(|u| u[0] * x[0] + u[1] * x[1] + u[2] * x[2] + u[3] * x[3] <= 0.0);
        hits += inside as u64;
    }
    hits
}

/// Parallel estimate; identical to [`Threads::Single`] for the same inputs.
pub fn montecarlo_volume<T: Real>(angles: &DihedralAngles<T>, n: u64, seed: u64) -> Result<McEstimate> {
    montecarlo_volume_with(angles, n, seed, Threads::Parallel)
}

pub fn montecarlo_volume_with<T: Real>(
    angles: &DihedralAngles<T>,
    n: u64,
    seed: u64,
    threads: Threads,
) -> Result<McEstimate> {
    if n < MIN_SAMPLES {
        return Err(Error::Range(format!("need at least {MIN_SAMPLES} samples, got {n}")));
    }
    let angles = DihedralAngles(angles.0.map(|t| t.f64()));
    let g = gram::require_spherical(&angles)?;
    let normals = normals_from_gram(&g)?.0;

    let chunks = n.div_ceil(CHUNK);
    let len = |c: u64| CHUNK.min(n - c * CHUNK);
    let hits = match threads {
        Threads::Single => (0..chunks).map(|c| count_chunk(&normals, seed, c, len(c))).sum(),
        Threads::Parallel => (0..chunks)
            .into_par_iter()
            .map(|c| count_chunk(&normals, seed, c, len(c)))
            .sum(),
    };
    Ok(McEstimate::from_counts(hits, n, seed))
}

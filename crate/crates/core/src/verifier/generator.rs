use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::gram::{angles_from_lengths, is_spherical, DihedralAngles, EdgeLengths, EDGES};
use crate::scalar::Real;

/// Vertex configurations whose Gram determinant falls below this are redrawn.
pub const VERTEX_DET_MIN: f64 = 1e-3;

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    det
}

/// Draws a spherical tetrahedron by sampling its four vertices uniformly on
/// S³ (Xoshiro256++ seeded through SplitMix64, normalised Gaussian
/// deviates). Nearly flat configurations are redrawn from the same stream.
///
/// Edge `j` gets the arc between the vertices opposite the two faces of its
/// cofactor pair; the angles come from the dual-tetrahedron conversion.
pub fn random_valid_tetrahedron<T: Real>(seed: u64) -> (DihedralAngles<T>, EdgeLengths<T>) {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    loop {
        let vertices: [[f64; 4]; 4] = std::array::from_fn(|_| {
            let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.map(|x| x / norm)
        });
        let gram: [[f64; 4]; 4] = std::array::from_fn(|a| {
            std::array::from_fn(|b| (0..4).map(|k| vertices[a][k] * vertices[b][k]).sum())
        });
        if det4(&gram) < VERTEX_DET_MIN {
            continue;
        }
        let lengths = EdgeLengths(EDGES.map(|e| {
            let (p, q) = e.cofactor;
            T::lit(gram[p][q].clamp(-1.0, 1.0).acos())
        }));
        let Ok(angles) = angles_from_lengths(&lengths) else {
            continue;
        };
        if is_spherical(&angles).valid {
            return (angles, lengths);
        }
    }
}

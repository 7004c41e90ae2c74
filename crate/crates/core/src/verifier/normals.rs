use crate::error::{Error, Result};
use crate::gram::GramMatrix;
use crate::scalar::Real;

/// Four face normals in ℝ⁴ whose pairwise inner products reproduce a Gram
/// matrix. Row `a` is the normal of face `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceNormals<T>(pub [[T; 4]; 4]);

impl<T: Real> FaceNormals<T> {
    pub fn gram(&self) -> [[T; 4]; 4] {
        let u = &self.0;
        std::array::from_fn(|a| {
            std::array::from_fn(|b| (0..4).fold(T::zero(), |acc, k| acc + u[a][k] * u[b][k]))
        })
    }

    /// Largest entrywise deviation of the reconstructed Gram matrix.
    pub fn residual(&self, g: &GramMatrix<T>) -> T {
        let r = self.gram();
        (0..16).fold(T::zero(), |acc, k| acc.max((r[k / 4][k % 4] - g.0[k / 4][k % 4]).abs()))
    }
}

const PIVOT_MIN: f64 = 1e-12;

/// Cholesky factor `G = L Lᵀ`, lower triangular with positive diagonal; the
/// rows of `L` are the normals.
pub fn normals_from_gram<T: Real>(g: &GramMatrix<T>) -> Result<FaceNormals<T>> {
    let mut l = [[T::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..=i {
            let s = (0..j).fold(g.0[i][j], |acc, k| acc - l[i][k] * l[j][k]);
            if i == j {
                if !(s > T::tol(PIVOT_MIN)) {
                    return Err(Error::Degenerate(format!(
                        "Cholesky pivot {i} is {s}; Gram matrix not positive definite"
                    )));
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Ok(FaceNormals(l))
}

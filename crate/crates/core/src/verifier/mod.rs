//! Independent checks: a Monte-Carlo volume oracle, a random generator of
//! valid tetrahedra, and residual reports for the identities the volume
//! formulas rest on.

mod generator;
mod montecarlo;
mod normals;
mod suite;

pub use generator::{random_valid_tetrahedron, VERTEX_DET_MIN};
pub use montecarlo::{montecarlo_volume, montecarlo_volume_with, McEstimate, Threads, CHUNK};
pub use normals::{normals_from_gram, FaceNormals};
pub use suite::{
    duality_residual, lemma_suite, montecarlo_suite, phi_psi, run_suite, schlafli_residual,
    Residual, Suite, VerifyReport, FD_STEP,
};

//! Gram matrix of the face normals, cofactors, validity, angle/length
//! conversion and the polar dual.
//!
//! Edges are numbered `0..6` for e₁…e₆. Opposite edges are `j` and `j + 3`.
//! The layout of [`EDGES`] is the only place the labelling is defined.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Where edge `j` lives in the Gram matrix and which cofactor gives its length.
///
/// Edge `j` is where faces `gram.0` and `gram.1` meet; it joins the vertices
/// opposite faces `cofactor.0` and `cofactor.1`. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeIndex {
    pub gram: (usize, usize),
    pub cofactor: (usize, usize),
}

pub const EDGES: [EdgeIndex; 6] = [
    EdgeIndex { gram: (0, 1), cofactor: (2, 3) },
    EdgeIndex { gram: (0, 2), cofactor: (1, 3) },
    EdgeIndex { gram: (1, 2), cofactor: (0, 3) },
    EdgeIndex { gram: (2, 3), cofactor: (0, 1) },
    EdgeIndex { gram: (1, 3), cofactor: (0, 2) },
    EdgeIndex { gram: (0, 3), cofactor: (1, 2) },
];

/// The four vertex triples `{e₁,e₂,e₃}`, `{e₁,e₅,e₆}`, `{e₂,e₄,e₆}`, `{e₃,e₄,e₅}`.
pub const VERTEX_TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 4, 5], [1, 3, 5], [2, 3, 4]];

/// Index of the edge opposite `j`.
#[inline]
pub const fn opposite(j: usize) -> usize {
    (j + 3) % 6
}

/// Edge index sitting at Gram position `(a, b)`, `a ≠ b`.
pub fn edge_at(a: usize, b: usize) -> usize {
    let key = if a < b { (a, b) } else { (b, a) };
    EDGES
        .iter()
        .position(|e| e.gram == key)
        .expect("off-diagonal Gram position")
}

/// Dihedral angles θ₁…θ₆ in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DihedralAngles<T>(pub [T; 6]);

/// Geodesic edge lengths l₁…l₆ on the unit 3-sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeLengths<T>(pub [T; 6]);

impl<T: Real> DihedralAngles<T> {
    pub fn uniform(theta: T) -> Self {
        Self([theta; 6])
    }

    pub fn sum(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, &t| acc + t)
    }

    /// `aⱼ = e^{iθⱼ}`.
    pub fn phases(&self) -> [Complex<T>; 6] {
        self.0.map(|t| Complex::from_polar(T::one(), t))
    }

    /// Relabels the tetrahedron by a permutation of its four faces.
    pub fn relabel(&self, perm: [usize; 4]) -> Self {
        Self(relabel(&self.0, perm))
    }
}

impl<T: Real> EdgeLengths<T> {
    pub fn uniform(l: T) -> Self {
        Self([l; 6])
    }
}

fn relabel<T: Copy>(values: &[T; 6], perm: [usize; 4]) -> [T; 6] {
    let mut out = *values;
    for (j, e) in EDGES.iter().enumerate() {
        out[edge_at(perm[e.gram.0], perm[e.gram.1])] = values[j];
    }
    out
}

fn check_open_interval<T: Real>(values: &[T; 6], what: &str) -> Result<()> {
    for (j, &v) in values.iter().enumerate() {
        if !(v > T::zero() && v < T::PI()) {
            return Err(Error::Range(format!(
                "{what} {} = {v} is outside (0, π)",
                j + 1
            )));
        }
    }
    Ok(())
}

/// 4×4 symmetric matrix with unit diagonal, `g[p][q] = −cos θ` on the
/// position of each edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramMatrix<T>(pub [[T; 4]; 4]);

impl<T: Real> GramMatrix<T> {
    pub fn from_angles(angles: &DihedralAngles<T>) -> Result<Self> {
        check_open_interval(&angles.0, "dihedral angle")?;
        Ok(Self::from_angles_unchecked(angles))
    }

    fn from_angles_unchecked(angles: &DihedralAngles<T>) -> Self {
        let mut g = [[T::zero(); 4]; 4];
        for (a, row) in g.iter_mut().enumerate() {
            row[a] = T::one();
        }
        for (e, &theta) in EDGES.iter().zip(angles.0.iter()) {
            let (p, q) = e.gram;
            g[p][q] = -theta.cos();
            g[q][p] = g[p][q];
        }
        Self(g)
    }

    /// Signed cofactor `(−1)^{a+b} det G_{ab}` (zero-based indices).
    pub fn cofactor(&self, a: usize, b: usize) -> T {
        let rows: Vec<usize> = (0..4).filter(|&r| r != a).collect();
        let cols: Vec<usize> = (0..4).filter(|&c| c != b).collect();
        let m = |i: usize, j: usize| self.0[rows[i]][cols[j]];
        let minor = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        if (a + b) % 2 == 0 {
            minor
        } else {
            -minor
        }
    }

    pub fn det(&self) -> T {
        (0..4).fold(T::zero(), |acc, b| acc + self.0[0][b] * self.cofactor(0, b))
    }

    /// Determinants of the leading k×k blocks, k = 1..4.
    pub fn leading_minors(&self) -> [T; 4] {
        let g = &self.0;
        let m1 = g[0][0];
        let m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        let m3 = self.cofactor(3, 3);
        [m1, m2, m3, self.det()]
    }

    /// Right side of `exp(2i lⱼ) = (2c²_pq − c_pp c_qq + 2i c_pq √det G sin θⱼ)/(c_pp c_qq)`.
    pub fn exp_2i_length(&self, angles: &DihedralAngles<T>, j: usize) -> Complex<T> {
        let (p, q) = EDGES[j].cofactor;
        let (cpq, cpp, cqq) = (self.cofactor(p, q), self.cofactor(p, p), self.cofactor(q, q));
        let two = T::lit(2.0);
        let denom = cpp * cqq;
        Complex::new(
            (two * cpq * cpq - denom) / denom,
            two * cpq * self.det().max(T::zero()).sqrt() * angles.0[j].sin() / denom,
        )
    }
}

/// Determinants below this are treated as numerically degenerate.
pub const DEGENERATE_DET: f64 = 1e-12;

/// Outcome of [`is_spherical`], with every check reported separately.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphericalityReport<T> {
    pub valid: bool,
    pub in_range: bool,
    pub leading_minors: [T; 4],
    pub positive_definite: bool,
    pub det: T,
    pub degenerate: bool,
    /// Per vertex triple: `π < θu + θv + θw < 3π` and `θu + θv − θw < π` for
    /// each choice of `θw`, i.e. the angles form a spherical triangle.
    pub vertex_conditions: [bool; 4],
}

impl<T: Real> SphericalityReport<T> {
    /// Short human-readable reason for a negative verdict.
    pub fn reason(&self) -> String {
        if !self.in_range {
            "angles outside (0, π)".into()
        } else if self.det < T::zero() {
            format!("det G < 0 (det G = {})", self.det)
        } else if !self.positive_definite {
            format!(
                "Gram matrix not positive definite (leading minors {:?})",
                self.leading_minors
            )
        } else if self.degenerate {
            format!("det G = {} is numerically degenerate", self.det)
        } else {
            "spherical".into()
        }
    }
}

fn vertex_condition<T: Real>(angles: &[T; 6], triple: [usize; 3]) -> bool {
    let [u, v, w] = triple.map(|j| angles[j]);
    let pi = T::PI();
    let sum = u + v + w;
    [u + v - w, u - v + w, v + w - u]
        .iter()
        .all(|&d| d < pi)
        && sum > pi
        && sum < T::lit(3.0) * pi
}

/// Positive definiteness of the Gram matrix decides the verdict; the vertex
/// triple conditions are reported alongside.
pub fn is_spherical<T: Real>(angles: &DihedralAngles<T>) -> SphericalityReport<T> {
    let finite = angles.0.iter().all(|t| t.is_finite());
    let in_range = finite && check_open_interval(&angles.0, "angle").is_ok();
    if !finite {
        let nan = T::nan();
        return SphericalityReport {
            valid: false,
            in_range: false,
            leading_minors: [nan; 4],
            positive_definite: false,
            det: nan,
            degenerate: true,
            vertex_conditions: [false; 4],
        };
    }
    let g = GramMatrix::from_angles_unchecked(angles);
    let leading_minors = g.leading_minors();
    let det = leading_minors[3];
    let positive_definite = leading_minors.iter().all(|&m| m > T::zero());
    let degenerate = det.abs() < T::tol(DEGENERATE_DET);
    let vertex_conditions = VERTEX_TRIPLES.map(|t| vertex_condition(&angles.0, t));
    SphericalityReport {
        valid: in_range && positive_definite && !degenerate,
        in_range,
        leading_minors,
        positive_definite,
        det,
        degenerate,
        vertex_conditions,
    }
}

pub(crate) fn require_spherical<T: Real>(angles: &DihedralAngles<T>) -> Result<GramMatrix<T>> {
    let report = is_spherical(angles);
    if !report.in_range {
        check_open_interval(&angles.0, "dihedral angle")?;
    }
    if report.degenerate && report.positive_definite {
        return Err(Error::Degenerate(report.reason()));
    }
    if !report.valid {
        return Err(Error::NotSpherical(report.reason()));
    }
    Ok(GramMatrix::from_angles_unchecked(angles))
}

/// `cos lⱼ = c_pq / √(c_pp c_qq)`.
pub fn lengths_from_angles<T: Real>(angles: &DihedralAngles<T>) -> Result<EdgeLengths<T>> {
    let g = require_spherical(angles)?;
    let mut l = [T::zero(); 6];
    for (j, e) in EDGES.iter().enumerate() {
        let (p, q) = e.cofactor;
        let (cpp, cqq) = (g.cofactor(p, p), g.cofactor(q, q));
        if cpp <= T::zero() || cqq <= T::zero() {
            return Err(Error::NotSpherical(format!(
                "non-positive principal cofactor at edge {}",
                j + 1
            )));
        }
        let c = (g.cofactor(p, q) / (cpp * cqq).sqrt()).max(-T::one()).min(T::one());
        l[j] = c.acos();
    }
    Ok(EdgeLengths(l))
}

/// `θ*ⱼ = π − l_{j±3}`: dihedral angles of the polar dual.
pub fn dual_angle_vector<T: Real>(lengths: &EdgeLengths<T>) -> DihedralAngles<T> {
    DihedralAngles(std::array::from_fn(|j| T::PI() - lengths.0[opposite(j)]))
}

/// Inverts [`lengths_from_angles`] by converting the dual tetrahedron.
pub fn angles_from_lengths<T: Real>(lengths: &EdgeLengths<T>) -> Result<DihedralAngles<T>> {
    check_open_interval(&lengths.0, "edge length")?;
    let dual_angles = dual_angle_vector(lengths);
    let dual_lengths = lengths_from_angles(&dual_angles).map_err(|e| match e {
        Error::NotSpherical(msg) => {
            Error::NotSpherical(format!("no spherical tetrahedron has these edge lengths: {msg}"))
        }
        other => other,
    })?;
    Ok(DihedralAngles(std::array::from_fn(|j| {
        T::PI() - dual_lengths.0[opposite(j)]
    })))
}

/// Angles and lengths of the polar dual `T*`.
pub fn dual<T: Real>(
    angles: &DihedralAngles<T>,
    lengths: &EdgeLengths<T>,
) -> Result<(DihedralAngles<T>, EdgeLengths<T>)> {
    check_open_interval(&angles.0, "dihedral angle")?;
    check_open_interval(&lengths.0, "edge length")?;
    let dual_lengths = EdgeLengths(std::array::from_fn(|j| T::PI() - angles.0[opposite(j)]));
    Ok((dual_angle_vector(lengths), dual_lengths))
}

//! Double-arch analysis of convex polygons: a chord between two vertices
//! such that every other vertex projects strictly inside the chord and lies
//! strictly off its line. The vertices on either side form the two arches.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{ConvexPolygon2, GeomError, Matrix3, Point2, Point3, RigidMotion, EPS_GEOM};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolygonError {
    #[error("no vertex pair splits the polygon into arches")]
    NotDoubleArch,
    #[error("regular polygon needs n >= 3 and a positive radius")]
    InvalidRegular,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleArchDecomposition {
    /// Vertex indices of the chord endpoints, in the order used to orient it.
    pub chord: (usize, usize),
    /// Vertices strictly to the left of `chord.0 → chord.1`.
    pub upper: Vec<usize>,
    /// Vertices strictly to the right.
    pub lower: Vec<usize>,
    pub nontrivial: bool,
}

/// Decomposition along the chord `i → j`, if the band condition holds.
pub fn decomposition_for_chord(p: &ConvexPolygon2, i: usize, j: usize) -> Option<DoubleArchDecomposition> {
    let n = p.len();
    if i == j || i >= n || j >= n {
        return None;
    }
    let a = p.vertex(i);
    let e = p.vertex(j) - a;
    let len = e.norm();
    if len <= EPS_GEOM {
        return None;
    }
    let (mut upper, mut lower) = (Vec::new(), Vec::new());
    for k in (0..n).filter(|&k| k != i && k != j) {
        let w = p.vertex(k) - a;
        let along = w.dot(e) / len;
        let off = e.cross(w) / len;
        if along <= EPS_GEOM || along >= len - EPS_GEOM || off.abs() <= EPS_GEOM {
            return None;
        }
        if off > 0.0 {
            upper.push(k);
        } else {
            lower.push(k);
        }
    }
    let nontrivial = !upper.is_empty() && !lower.is_empty();
    Some(DoubleArchDecomposition { chord: (i, j), upper, lower, nontrivial })
}

/// Vertex pairs ordered by decreasing distance; pairs whose lengths agree
/// within tolerance are ordered by index.
pub fn chords_by_length(p: &ConvexPolygon2) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((p.vertex(i).dist(p.vertex(j)), i, j));
        }
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut out = Vec::with_capacity(pairs.len());
    let mut start = 0;
    while start < pairs.len() {
        let lead = pairs[start].0;
        let mut end = start + 1;
        while end < pairs.len() && lead - pairs[end].0 <= EPS_GEOM {
            end += 1;
        }
        let mut group: Vec<(usize, usize)> = pairs[start..end].iter().map(|&(_, i, j)| (i, j)).collect();
        group.sort_unstable();
        out.extend(group);
        start = end;
    }
    out
}

/// First nontrivial decomposition in [`chords_by_length`] order, else the
/// first trivial one.
pub fn double_arch_decompose(p: &ConvexPolygon2) -> Result<DoubleArchDecomposition, PolygonError> {
    let mut trivial = None;
    for (i, j) in chords_by_length(p) {
        if let Some(dec) = decomposition_for_chord(p, i, j) {
            if dec.nontrivial {
                return Ok(dec);
            }
            trivial.get_or_insert(dec);
        }
    }
    trivial.ok_or(PolygonError::NotDoubleArch)
}

/// Planar rigid motion `p ↦ R(angle)·p + translation`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Motion2 {
    pub angle: f64,
    pub translation: Point2,
}

impl Motion2 {
    pub fn identity() -> Self {
        Self { angle: 0.0, translation: Point2::new(0.0, 0.0) }
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        let (s, c) = self.angle.sin_cos();
        Point2::new(c * p.x - s * p.y, s * p.x + c * p.y) + self.translation
    }

    /// The same motion acting on space: rotation about the z-axis, then an
    /// xy-translation.
    pub fn lift(&self) -> RigidMotion {
        RigidMotion { rotation: Matrix3::rot_z(self.angle), translation: self.translation.lift() }
    }
}

/// Moves the chord onto the x-axis, centred at the origin, with
/// `chord.0 ↦ (−L/2, 0)` and `chord.1 ↦ (L/2, 0)`. Upper arch vertices
/// end up with `y > 0`.
pub fn normalize_to_chord(p: &ConvexPolygon2, dec: &DoubleArchDecomposition) -> (ConvexPolygon2, Motion2) {
    let a = p.vertex(dec.chord.0);
    let b = p.vertex(dec.chord.1);
    let e = b - a;
    let angle = if e.y == 0.0 && e.x > 0.0 { 0.0 } else { -e.y.atan2(e.x) };
    let mid = (a + b) * 0.5;
    let rotate_only = Motion2 { angle, translation: Point2::new(0.0, 0.0) };
    let m = rotate_only.apply(mid);
    let motion = Motion2 { angle, translation: Point2::new(-m.x, -m.y) };
    (p.map(|q| motion.apply(q)), motion)
}

/// Regular `n`-gon, first vertex at `(circumradius, 0)`, counterclockwise.
pub fn regular_polygon(n: usize, circumradius: f64) -> Result<ConvexPolygon2, PolygonError> {
    if n < 3 || !(circumradius > 0.0) || !circumradius.is_finite() {
        return Err(PolygonError::InvalidRegular);
    }
    let verts = (0..n)
        .map(|k| {
            let (s, c) = (TAU * k as f64 / n as f64).sin_cos();
            Point2::new(circumradius * c, circumradius * s)
        })
        .collect();
    Ok(ConvexPolygon2::new(verts)?)
}

/// Lifts a planar polygon to the plane `z = 0`.
pub fn lift_polygon(p: &ConvexPolygon2) -> Vec<Point3> {
    p.vertices().iter().map(|q| q.lift()).collect()
}

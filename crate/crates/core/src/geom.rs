//! Core 3D/2D primitives: points, axis-angle rotations, rigid motions,
//! orthogonal projection onto the xy-plane, 2D convex hulls and signed
//! containment margins.
//!
//! All strictness tests compare against [`EPS_GEOM`], never against exact zero.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Geometric tolerance (model units) for coplanarity, collinearity and
/// boundary classification.
pub const EPS_GEOM: f64 = 1e-9;

/// Tolerance on `|axis| = 1` for a [`Rotation`].
pub const AXIS_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("rotation axis has zero length")]
    ZeroAxis,
    #[error("polygon is not strictly convex and counterclockwise at vertex {0}")]
    NotConvex(usize),
    #[error("polyhedron needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("all polyhedron vertices are coplanar")]
    Coplanar,
    #[error("vertex {0} duplicates vertex {1}")]
    DuplicateVertex(usize, usize),
    #[error("vertex {0} is not an extreme point of the vertex set")]
    NonExtremeVertex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };
    pub const X: Point3 = Point3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Point3 = Point3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Point3 = Point3 { x: 0.0, y: 0.0, z: 1.0 };

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Self) -> Self {
        Self::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    #[inline]
    pub fn dist(self, o: Self) -> f64 {
        (self - o).norm()
    }

    /// Unit vector in the same direction, or `None` for a (near) zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > 1e-300 && n.is_finite()).then(|| self * (1.0 / n))
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Angle between two nonzero vectors, in `[0, π]`.
    pub fn angle_to(self, o: Self) -> f64 {
        self.cross(o).norm().atan2(self.dot(o))
    }
}

impl Add for Point3 {
    type Output = Point3;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    #[inline]
    pub fn dist(self, o: Self) -> f64 {
        (self - o).norm()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn lift(self) -> Point3 {
        Point3::new(self.x, self.y, 0.0)
    }
}

impl Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

/// Row-major 3×3 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix3(pub [[f64; 3]; 3]);

impl Matrix3 {
    pub const IDENTITY: Matrix3 = Matrix3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    #[inline]
    pub fn apply(&self, p: Point3) -> Point3 {
        let m = &self.0;
        Point3::new(
            m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
            m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
            m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z,
        )
    }

    pub fn mul(&self, o: &Matrix3) -> Matrix3 {
        let mut r = [[0.0; 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        Matrix3(r)
    }

    pub fn transpose(&self) -> Matrix3 {
        let m = &self.0;
        Matrix3([[m[0][0], m[1][0], m[2][0]], [m[0][1], m[1][1], m[2][1]], [m[0][2], m[1][2], m[2][2]]])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Rotation matrix of angle `theta` about the z-axis.
    pub fn rot_z(theta: f64) -> Matrix3 {
        let (s, c) = theta.sin_cos();
        Matrix3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    /// A rotation taking the unit vector `from` onto `+z`.
    pub fn align_to_z(from: Point3) -> Matrix3 {
        let n = from.normalized().unwrap_or(Point3::Z);
        let axis = n.cross(Point3::Z);
        let s = axis.norm();
        let c = n.z;
        if s < 1e-15 {
            return if c > 0.0 {
                Matrix3::IDENTITY
            } else {
                Rotation::new(Point3::X, PI).expect("unit axis").to_matrix()
            };
        }
        Rotation::new(axis, s.atan2(c)).expect("nonzero axis").to_matrix()
    }
}

/// Rigid motion `p ↦ R p + t` with `R ∈ SO(3)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigidMotion {
    pub rotation: Matrix3,
    pub translation: Point3,
}

impl Default for RigidMotion {
    fn default() -> Self {
        Self::identity()
    }
}

impl RigidMotion {
    pub const fn identity() -> Self {
        Self { rotation: Matrix3::IDENTITY, translation: Point3::ORIGIN }
    }

    pub fn from_rotation(rotation: Matrix3) -> Self {
        Self { rotation, translation: Point3::ORIGIN }
    }

    pub fn translation(t: Point3) -> Self {
        Self { rotation: Matrix3::IDENTITY, translation: t }
    }

    #[inline]
    pub fn apply(&self, p: Point3) -> Point3 {
        self.rotation.apply(p) + self.translation
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &RigidMotion) -> RigidMotion {
        RigidMotion {
            rotation: self.rotation.mul(&first.rotation),
            translation: self.rotation.apply(first.translation) + self.translation,
        }
    }

    pub fn inverse(&self) -> RigidMotion {
        let rt = self.rotation.transpose();
        RigidMotion { rotation: rt, translation: -rt.apply(self.translation) }
    }
}

/// Rotation `ρ_a^θ` by `angle` about the unit `axis` (right-hand rule).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    axis: Point3,
    angle: f64,
}

/// Wrap an angle into `(−π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let a = theta.rem_euclid(2.0 * PI);
    if a > PI {
        a - 2.0 * PI
    } else {
        a
    }
}

impl Rotation {
    /// Normalizes `axis`; the angle is wrapped into `(−π, π]`.
    pub fn new(axis: Point3, angle: f64) -> Result<Self, GeomError> {
        if !axis.is_finite() || !angle.is_finite() {
            return Err(GeomError::NonFinite);
        }
        let axis = axis.normalized().ok_or(GeomError::ZeroAxis)?;
        Ok(Self { axis, angle: wrap_angle(angle) })
    }

    pub fn identity() -> Self {
        Self { axis: Point3::Z, angle: 0.0 }
    }

    #[inline]
    pub fn axis(&self) -> Point3 {
        self.axis
    }

    #[inline]
    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// `|ρ_a^θ| = |θ|`.
    #[inline]
    pub fn magnitude(&self) -> f64 {
        self.angle.abs()
    }

    pub fn inverse(&self) -> Self {
        Self { axis: self.axis, angle: wrap_angle(-self.angle) }
    }

    /// Rodrigues evaluation.
    #[inline]
    pub fn apply(&self, p: Point3) -> Point3 {
        let (s, c) = self.angle.sin_cos();
        let k = self.axis;
        p * c + k.cross(p) * s + k * (k.dot(p) * (1.0 - c))
    }

    pub fn to_matrix(&self) -> Matrix3 {
        let (s, c) = self.angle.sin_cos();
        let t = 1.0 - c;
        let Point3 { x, y, z } = self.axis;
        Matrix3([
            [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
            [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
            [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
        ])
    }
}

/// Rotate `p` by `r`.
#[inline]
pub fn rotate(r: &Rotation, p: Point3) -> Point3 {
    r.apply(p)
}

/// The conjugation rule: the rotation by `gamma` about `b_rot(a)` equals
/// `b_rot ∘ ρ_a^γ ∘ b_rot⁻¹`.
pub fn conjugate_axis(b_rot: &Rotation, a: Point3, gamma: f64) -> Result<Rotation, GeomError> {
    Rotation::new(b_rot.apply(a), gamma)
}

/// Orthogonal projection onto the xy-plane.
#[inline]
pub fn project(p: Point3) -> Point2 {
    Point2::new(p.x, p.y)
}

/// Counterclockwise, strictly convex polygon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon2 {
    vertices: Vec<Point2>,
}

impl ConvexPolygon2 {
    /// Validates counterclockwise strict convexity (turns must clear [`EPS_GEOM`]).
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::DegenerateInput(format!("polygon with {n} vertices")));
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        for i in 0..n {
            let a = vertices[(i + n - 1) % n];
            let b = vertices[i];
            let c = vertices[(i + 1) % n];
            if a.dist(b) <= EPS_GEOM || (b - a).cross(c - a) <= EPS_GEOM * a.dist(c) {
                return Err(GeomError::NotConvex(i));
            }
        }
        let poly = Self { vertices };
        if poly.signed_area() <= 0.0 {
            return Err(GeomError::NotConvex(0));
        }
        Ok(poly)
    }

    pub(crate) fn from_hull_unchecked(vertices: Vec<Point2>) -> Self {
        Self { vertices }
    }

    #[inline]
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        0.5 * (0..n).map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n])).sum::<f64>()
    }

    /// Edges as `(start, end)` pairs in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// See [`contains_strict`].
    pub fn signed_clearance(&self, p: Point2) -> f64 {
        contains_strict(self, p)
    }

    /// Same vertex cycle (any starting index) within `tol`.
    pub fn approx_eq(&self, other: &ConvexPolygon2, tol: f64) -> bool {
        let n = self.len();
        if n != other.len() {
            return false;
        }
        (0..n).any(|k| (0..n).all(|i| self.vertices[i].dist(other.vertices[(i + k) % n]) <= tol))
    }

    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> ConvexPolygon2 {
        ConvexPolygon2 { vertices: self.vertices.iter().map(|&p| f(p)).collect() }
    }

    pub fn max_radius(&self) -> f64 {
        self.vertices.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }
}

/// Andrew's monotone chain with lexicographic tie-breaking. Points within
/// [`EPS_GEOM`] of the line through their neighbours are dropped.
pub fn hull2(points: &[Point2]) -> Result<ConvexPolygon2, GeomError> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|b, a| a.dist(*b) <= EPS_GEOM);
    if pts.len() < 3 {
        return Err(GeomError::DegenerateInput("fewer than 3 distinct points".into()));
    }

    let keeps_left_turn = |chain: &[Point2], p: Point2| {
        let o = chain[chain.len() - 2];
        let a = chain[chain.len() - 1];
        (a - o).cross(p - o) > EPS_GEOM * o.dist(p)
    };
    let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && !keeps_left_turn(&lower, p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && !keeps_left_turn(&upper, p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let hull = prune_degenerate(lower);
    if hull.len() < 3 {
        return Err(GeomError::DegenerateInput("points are collinear".into()));
    }
    Ok(ConvexPolygon2::from_hull_unchecked(hull))
}

/// Removes near-coincident and near-collinear vertices until every turn is
/// strict.
fn prune_degenerate(mut v: Vec<Point2>) -> Vec<Point2> {
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let bad = (0..n).find(|&i| {
            let a = v[(i + n - 1) % n];
            let b = v[i];
            let c = v[(i + 1) % n];
            a.dist(b) <= EPS_GEOM || (b - a).cross(c - a) <= EPS_GEOM * a.dist(c)
        });
        match bad {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

/// Minimum over edges of the signed inward distance from `p` to the edge
/// line: positive inside, zero on the boundary, negative outside.
pub fn contains_strict(poly: &ConvexPolygon2, p: Point2) -> f64 {
    poly.edges()
        .map(|(a, b)| {
            let e = b - a;
            e.cross(p - a) / e.norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Minimum over `inner`'s vertices of [`contains_strict`] against `outer`.
/// A positive value certifies `inner ⊂ int(outer)`.
pub fn containment_margin(inner: &ConvexPolygon2, outer: &ConvexPolygon2) -> f64 {
    inner.vertices().iter().map(|&v| contains_strict(outer, v)).fold(f64::INFINITY, f64::min)
}

/// `π(r(Q))` as the hull of the projected rotated vertices.
pub fn shadow(q: &Polyhedron, r: &Rotation) -> Result<ConvexPolygon2, GeomError> {
    let pts: Vec<Point2> = q.vertices().iter().map(|&p| project(r.apply(p))).collect();
    hull2(&pts)
}

/// Oriented plane `normal · p = offset`, with unit `normal`.
#[derive(Clone, Debug, PartialEq)]
pub struct Plane {
    pub normal: Point3,
    pub offset: f64,
    /// Indices of the points lying on the plane, ascending.
    pub members: Vec<usize>,
}

impl Plane {
    #[inline]
    pub fn signed_distance(&self, p: Point3) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

fn scale_of(points: &[Point3]) -> f64 {
    points.iter().map(|p| p.norm()).fold(1.0, f64::max)
}

/// Supporting planes of the point set spanned by at least three of its
/// points (the facet planes of the hull), outward normals, deduplicated by
/// member set. Brute force over point triples.
pub fn support_planes(points: &[Point3]) -> Vec<Plane> {
    let tol = EPS_GEOM * scale_of(points);
    let n = points.len();
    let mut seen: std::collections::BTreeSet<Vec<usize>> = Default::default();
    let mut planes = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let raw = (points[j] - points[i]).cross(points[k] - points[i]);
                let Some(mut normal) = raw.normalized() else { continue };
                if raw.norm() <= tol * points[i].dist(points[j]).max(points[i].dist(points[k])) {
                    continue;
                }
                let mut offset = normal.dot(points[i]);
                let (mut above, mut below) = (false, false);
                for p in points {
                    let s = normal.dot(*p) - offset;
                    above |= s > tol;
                    below |= s < -tol;
                    if above && below {
                        break;
                    }
                }
                if above && below {
                    continue;
                }
                if above {
                    normal = -normal;
                    offset = -offset;
                }
                let members: Vec<usize> = (0..n).filter(|&m| (normal.dot(points[m]) - offset).abs() <= tol).collect();
                if !seen.insert(members.clone()) {
                    continue;
                }
                // refit through the member centroid for a stable offset
                let c = members.iter().map(|&m| points[m]).fold(Point3::ORIGIN, |a, b| a + b)
                    * (1.0 / members.len() as f64);
                planes.push(Plane { normal, offset: normal.dot(c), members });
            }
        }
    }
    planes
}

/// Indices of the points that are extreme (vertices of the convex hull):
/// a point is extreme iff it lies on some facet plane and is a corner of
/// the planar hull of every facet it lies on.
pub fn extreme_points(points: &[Point3]) -> Vec<usize> {
    let planes = support_planes(points);
    let mut on_facet = vec![false; points.len()];
    let mut corner = vec![true; points.len()];
    for pl in &planes {
        let (e1, e2) = plane_basis(pl.normal);
        let flat: Vec<Point2> = pl.members.iter().map(|&m| Point2::new(points[m].dot(e1), points[m].dot(e2))).collect();
        let hull = match hull2(&flat) {
            Ok(h) => h,
            Err(_) => continue,
        };
        for (k, &m) in pl.members.iter().enumerate() {
            on_facet[m] = true;
            if !hull.vertices().iter().any(|h| h.dist(flat[k]) <= EPS_GEOM) {
                corner[m] = false;
            }
        }
    }
    (0..points.len()).filter(|&i| on_facet[i] && corner[i]).collect()
}

/// Orthonormal basis of the plane with unit normal `n`.
fn plane_basis(n: Point3) -> (Point3, Point3) {
    let helper = if n.x.abs() < 0.9 { Point3::X } else { Point3::Y };
    let e1 = n.cross(helper).normalized().expect("helper not parallel");
    (e1, n.cross(e1))
}

/// Convex polyhedron given by its extreme vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyhedron {
    vertices: Vec<Point3>,
}

impl Polyhedron {
    /// Validates: at least 4 finite, distinct, non-coplanar vertices, each
    /// of them extreme.
    pub fn new(vertices: Vec<Point3>) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 4 {
            return Err(GeomError::TooFewVertices(n));
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let tol = EPS_GEOM * scale_of(&vertices);
        for i in 0..n {
            for j in (i + 1)..n {
                if vertices[i].dist(vertices[j]) <= tol {
                    return Err(GeomError::DuplicateVertex(j, i));
                }
            }
        }
        if is_coplanar(&vertices, tol) {
            return Err(GeomError::Coplanar);
        }
        let extreme = extreme_points(&vertices);
        if extreme.len() != n {
            let missing = (0..n).find(|i| !extreme.contains(i)).unwrap_or(0);
            return Err(GeomError::NonExtremeVertex(missing));
        }
        Ok(Self { vertices })
    }

    /// Keeps only the extreme points of `points`.
    pub fn hull_of(points: &[Point3]) -> Result<Self, GeomError> {
        let keep = extreme_points(points);
        Self::new(keep.into_iter().map(|i| points[i]).collect())
    }

    /// Caller guarantees the invariants (e.g. image of a valid polyhedron
    /// under a similarity).
    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point3>) -> Self {
        Self { vertices }
    }

    #[inline]
    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn transformed(&self, m: &RigidMotion) -> Polyhedron {
        Self::from_vertices_unchecked(self.vertices.iter().map(|&p| m.apply(p)).collect())
    }

    pub fn rotated(&self, r: &Rotation) -> Polyhedron {
        Self::from_vertices_unchecked(self.vertices.iter().map(|&p| r.apply(p)).collect())
    }

    pub fn scaled(&self, s: f64) -> Polyhedron {
        assert!(s > 0.0 && s.is_finite());
        Self::from_vertices_unchecked(self.vertices.iter().map(|&p| p * s).collect())
    }

    pub fn centroid(&self) -> Point3 {
        self.vertices.iter().fold(Point3::ORIGIN, |a, &b| a + b) * (1.0 / self.len() as f64)
    }

    pub fn max_radius(&self) -> f64 {
        self.vertices.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }

    pub fn faces(&self) -> Vec<Plane> {
        support_planes(&self.vertices)
    }
}

fn is_coplanar(points: &[Point3], tol: f64) -> bool {
    let n = points.len();
    for i in 1..n {
        for j in (i + 1)..n {
            let raw = (points[i] - points[0]).cross(points[j] - points[0]);
            if let Some(normal) = raw.normalized() {
                if raw.norm() > tol {
                    return points.iter().all(|p| normal.dot(*p - points[0]).abs() <= tol);
                }
            }
        }
    }
    true
}

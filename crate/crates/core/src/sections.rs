//! Polygonal and prism sections of an oriented polyhedron, horizontal
//! slices, and a heuristic list of orientations worth trying when the
//! input is not already in a favourable pose.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    contains_strict, hull2, project, support_planes, ConvexPolygon2, Matrix3, Point2, Point3, Polyhedron, RigidMotion,
    EPS_GEOM,
};

/// Relative height of the probe slices used for prism detection.
pub const PRISM_PROBE: f64 = 1.0 - 1e-6;

/// Default cap on [`candidate_orientations`].
pub const DEFAULT_ORIENTATION_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SectionReason {
    TooFewPlanarVertices,
    PlanarVerticesNotHull,
    OffPlaneVertexOutside,
    EmptySlice,
    SliceMismatch,
    VertexOutsidePrism,
}

impl std::fmt::Display for SectionReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::TooFewPlanarVertices => "too-few-planar-vertices",
            Self::PlanarVerticesNotHull => "planar-vertices-not-hull",
            Self::OffPlaneVertexOutside => "off-plane-vertex-outside",
            Self::EmptySlice => "empty-slice",
            Self::SliceMismatch => "slice-mismatch",
            Self::VertexOutsidePrism => "vertex-outside-prism",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SectionError {
    #[error("no section: {0}")]
    NoSection(SectionReason),
    #[error("empty slice at z = {0}")]
    EmptySlice(f64),
}

impl SectionError {
    pub fn reason(&self) -> SectionReason {
        match self {
            Self::NoSection(r) => *r,
            Self::EmptySlice(_) => SectionReason::EmptySlice,
        }
    }
}

/// `Q ∩ {z = 0}` whose boundary is also the boundary of the shadow.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonalSection {
    pub polygon: ConvexPolygon2,
    /// Maps polygon vertex `k` to its index in the polyhedron.
    pub planar_vertices: Vec<usize>,
    pub off_plane_vertices: Vec<usize>,
    pub plane_motion: RigidMotion,
}

/// `Q ∩ {|z| ≤ h}` is the prism of half-height `h` over `polygon`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrismSection {
    pub polygon: ConvexPolygon2,
    pub h: f64,
    pub plane_motion: RigidMotion,
}

/// Polygonal section in the current pose, using [`EPS_GEOM`].
pub fn find_polygonal_section(q: &Polyhedron) -> Result<PolygonalSection, SectionError> {
    find_polygonal_section_tol(q, EPS_GEOM)
}

pub fn find_polygonal_section_tol(q: &Polyhedron, tol: f64) -> Result<PolygonalSection, SectionError> {
    let (planar, off): (Vec<usize>, Vec<usize>) = (0..q.len()).partition(|&i| q.vertices()[i].z.abs() < tol);
    if planar.len() < 3 {
        return Err(SectionError::NoSection(SectionReason::TooFewPlanarVertices));
    }
    let pts: Vec<Point2> = planar.iter().map(|&i| project(q.vertices()[i])).collect();
    let polygon = hull2(&pts).map_err(|_| SectionError::NoSection(SectionReason::PlanarVerticesNotHull))?;
    if polygon.len() != planar.len() {
        return Err(SectionError::NoSection(SectionReason::PlanarVerticesNotHull));
    }
    if off.iter().any(|&i| contains_strict(&polygon, project(q.vertices()[i])) <= tol) {
        return Err(SectionError::NoSection(SectionReason::OffPlaneVertexOutside));
    }
    let planar_vertices = polygon
        .vertices()
        .iter()
        .map(|p| {
            *planar
                .iter()
                .min_by(|&&a, &&b| p.dist(project(q.vertices()[a])).total_cmp(&p.dist(project(q.vertices()[b]))))
                .expect("nonempty")
        })
        .collect();
    Ok(PolygonalSection { polygon, planar_vertices, off_plane_vertices: off, plane_motion: RigidMotion::identity() })
}

/// Prism section in the current pose, using [`EPS_GEOM`].
pub fn find_prism_section(q: &Polyhedron) -> Result<PrismSection, SectionError> {
    find_prism_section_tol(q, EPS_GEOM)
}

pub fn find_prism_section_tol(q: &Polyhedron, tol: f64) -> Result<PrismSection, SectionError> {
    let h = q.vertices().iter().map(|p| p.z.abs()).filter(|&z| z > tol).fold(f64::INFINITY, f64::min);
    if !h.is_finite() {
        return Err(SectionError::NoSection(SectionReason::EmptySlice));
    }
    let no = |r| SectionError::NoSection(r);
    let polygon = cross_section_tol(q, 0.0, tol).map_err(|_| no(SectionReason::EmptySlice))?;
    let match_tol = tol * q.max_radius().max(1.0);
    for z0 in [PRISM_PROBE * h, -PRISM_PROBE * h] {
        let slice = cross_section_tol(q, z0, tol).map_err(|_| no(SectionReason::EmptySlice))?;
        if !slice.approx_eq(&polygon, match_tol) {
            return Err(no(SectionReason::SliceMismatch));
        }
    }
    if q.vertices().iter().any(|&p| contains_strict(&polygon, project(p)) < -match_tol) {
        return Err(no(SectionReason::VertexOutsidePrism));
    }
    Ok(PrismSection { polygon, h, plane_motion: RigidMotion::identity() })
}

/// `Q ∩ {z = z0}`: vertices on the plane plus crossings of every segment
/// joining a vertex above to a vertex below. Their hull is the slice.
pub fn cross_section(q: &Polyhedron, z0: f64) -> Result<ConvexPolygon2, SectionError> {
    cross_section_tol(q, z0, EPS_GEOM)
}

fn cross_section_tol(q: &Polyhedron, z0: f64, tol: f64) -> Result<ConvexPolygon2, SectionError> {
    let mut pts = Vec::new();
    let (mut above, mut below) = (Vec::new(), Vec::new());
    for &p in q.vertices() {
        let s = p.z - z0;
        if s.abs() < tol {
            pts.push(project(p));
        } else if s > 0.0 {
            above.push(p);
        } else {
            below.push(p);
        }
    }
    for &a in &above {
        for &b in &below {
            let t = (a.z - z0) / (a.z - b.z);
            pts.push(project(a + (b - a) * t));
        }
    }
    hull2(&pts).map_err(|_| SectionError::EmptySlice(z0))
}

/// Orientations worth testing for sections, in order: the identity, then
/// each face normal, vertex direction and edge direction turned to `+z`
/// with the plane `z = 0` through the middle of the bounding box and
/// through the middle of the widest gap between vertex heights, then each
/// coplanar vertex subset of size ≥ 3 moved onto `z = 0` (larger subsets
/// first). Directions come first because they are few and cover the
/// symmetric sections; subsets of a large vertex set can fill the cap.
pub fn candidate_orientations(q: &Polyhedron, cap: usize) -> Vec<RigidMotion> {
    let mut out = OrientationSet::new(cap);
    out.push(RigidMotion::identity());
    let verts = q.vertices();
    let scale = q.max_radius().max(1.0);
    let tol = EPS_GEOM * scale;

    let centroid = q.centroid();
    let faces = support_planes(verts);
    let mut dirs: Vec<Point3> = faces.iter().map(|f| f.normal).collect();
    dirs.extend(verts.iter().filter_map(|&v| (v - centroid).normalized()));
    for (i, j) in hull_edges(verts.len(), &faces) {
        if let Some(d) = (verts[j] - verts[i]).normalized() {
            dirs.push(d);
        }
    }
    let mut seen_dirs = BTreeSet::new();
    for d in dirs {
        if out.full() {
            break;
        }
        let d = canonical_sign(d);
        if !seen_dirs.insert(round_key(&[d.x, d.y, d.z])) {
            continue;
        }
        let rot = Matrix3::align_to_z(d);
        let mut zs: Vec<f64> = verts.iter().map(|&p| rot.apply(p).z).collect();
        zs.sort_by(f64::total_cmp);
        let mid_box = 0.5 * (zs[0] + zs[zs.len() - 1]);
        out.push(RigidMotion { rotation: rot, translation: Point3::new(0.0, 0.0, -mid_box) });
        zs.dedup_by(|b, a| (*b - *a).abs() <= tol);
        if let Some(gap) = zs.windows(2).max_by(|a, b| (a[1] - a[0]).total_cmp(&(b[1] - b[0]))) {
            let mid_gap = 0.5 * (gap[0] + gap[1]);
            out.push(RigidMotion { rotation: rot, translation: Point3::new(0.0, 0.0, -mid_gap) });
        }
    }

    for plane in coplanar_subsets(verts) {
        if out.full() {
            break;
        }
        let rot = Matrix3::align_to_z(plane.0);
        out.push(RigidMotion { rotation: rot, translation: Point3::new(0.0, 0.0, -plane.1) });
    }
    out.items
}

struct OrientationSet {
    items: Vec<RigidMotion>,
    keys: BTreeSet<Vec<i64>>,
    cap: usize,
}

impl OrientationSet {
    fn new(cap: usize) -> Self {
        Self { items: Vec::new(), keys: BTreeSet::new(), cap }
    }

    fn full(&self) -> bool {
        self.items.len() >= self.cap
    }

    fn push(&mut self, m: RigidMotion) {
        if self.full() {
            return;
        }
        let mut coords: Vec<f64> = m.rotation.0.iter().flatten().copied().collect();
        coords.extend(m.translation.to_array());
        let key = coords.iter().map(|x| (x * 1e7).round() as i64).collect();
        if self.keys.insert(key) {
            self.items.push(m);
        }
    }
}

fn canonical_sign(n: Point3) -> Point3 {
    let first = [n.x, n.y, n.z].into_iter().find(|c| c.abs() > 1e-9).unwrap_or(0.0);
    if first < 0.0 {
        -n
    } else {
        n
    }
}

fn round_key(xs: &[f64]) -> Vec<i64> {
    xs.iter().map(|x| (x * 1e6).round() as i64).collect()
}

/// Planes through at least three vertices, as `(unit normal, offset)`,
/// ordered by decreasing member count then by first discovery.
fn coplanar_subsets(verts: &[Point3]) -> Vec<(Point3, f64)> {
    let n = verts.len();
    let scale = verts.iter().map(|p| p.norm()).fold(1.0, f64::max);
    let tol = EPS_GEOM * scale;
    let mut keys: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut reps: Vec<(Point3, f64)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let raw = (verts[j] - verts[i]).cross(verts[k] - verts[i]);
                if raw.norm() <= tol * scale {
                    continue;
                }
                let normal = canonical_sign(raw.normalized().expect("nonzero"));
                let offset = normal.dot(verts[i]);
                let key = round_key(&[normal.x, normal.y, normal.z, offset]);
                if let std::collections::btree_map::Entry::Vacant(e) = keys.entry(key) {
                    e.insert(reps.len());
                    reps.push((normal, offset));
                }
            }
        }
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut planes: Vec<(usize, (Point3, f64))> = Vec::new();
    for (normal, offset) in reps {
        let members: Vec<usize> = (0..n).filter(|&m| (normal.dot(verts[m]) - offset).abs() <= tol).collect();
        if members.len() >= 3 && seen.insert(members.clone()) {
            planes.push((members.len(), (normal, offset)));
        }
    }
    planes.sort_by_key(|p| std::cmp::Reverse(p.0));
    planes.into_iter().map(|(_, p)| p).collect()
}

/// Vertex pairs sharing at least two facet planes.
fn hull_edges(n: usize, faces: &[crate::geom::Plane]) -> Vec<(usize, usize)> {
    let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for f in faces {
        for (a, &i) in f.members.iter().enumerate() {
            for &j in &f.members[a + 1..] {
                *count.entry((i, j)).or_default() += 1;
            }
        }
    }
    count.into_iter().filter(|&((i, j), c)| c >= 2 && i < n && j < n).map(|(e, _)| e).collect()
}

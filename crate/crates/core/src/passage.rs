//! Certification of local Rupert and local reverse-Rupert rotations.
//!
//! A polyhedron is first moved so that a section sits on `z = 0` with a
//! chord of its double-arch decomposition along the x-axis. Candidate axes
//! are then taken on the curve of axes whose rotation slides the chord
//! endpoint along the chord line, at a fixed grid of latitudes, and each
//! candidate is verified on the whole polyhedron. The rotation angle is
//! shrunk geometrically until a candidate clears the tolerance.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    containment_margin, contains_strict, project, shadow, ConvexPolygon2, GeomError, Matrix3, Point2, Point3,
    Polyhedron, RigidMotion, Rotation, EPS_GEOM,
};
use crate::polygon::{double_arch_decompose, normalize_to_chord, DoubleArchDecomposition};
use crate::sections::{
    candidate_orientations, find_polygonal_section_tol, find_prism_section_tol, PolygonalSection, PrismSection,
    DEFAULT_ORIENTATION_CAP,
};
use crate::sphere::{f_curve_axis, from_coords, BaseVertex, Branch, SphericalCoord};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PassageError {
    #[error("not certified: {stage}")]
    Failure { stage: FailureStage },
    #[error("no rotation found for the polygon")]
    NotFound,
    #[error("polygon is not in chord-normalized position")]
    NotNormalized,
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// How far the pipeline got before giving up; later stages are "further".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureStage {
    NoSection,
    TrivialDoubleArch,
    SearchExhausted,
}

impl std::fmt::Display for FailureStage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::NoSection => "no-section",
            Self::TrivialDoubleArch => "trivial-double-arch",
            Self::SearchExhausted => "search-exhausted",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PassageKind {
    Rupert,
    ReverseRupert,
}

impl std::fmt::Display for PassageKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Rupert => "Rupert",
            Self::ReverseRupert => "ReverseRupert",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SectionWitness {
    Polygonal(PolygonalSection),
    Prism(PrismSection),
}

impl SectionWitness {
    pub fn polygon(&self) -> &ConvexPolygon2 {
        match self {
            Self::Polygonal(s) => &s.polygon,
            Self::Prism(s) => &s.polygon,
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Self::Polygonal(_) => "polygonal",
            Self::Prism(_) => "prism",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub delta0: f64,
    pub shrink: f64,
    pub max_retries: u32,
    /// Latitudes (arc distance from the chord endpoint) of candidate axes.
    pub d_grid: Vec<f64>,
    pub tolerance: f64,
    pub orientation_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            delta0: 1e-2,
            shrink: 0.5,
            max_retries: 40,
            d_grid: default_d_grid(),
            tolerance: EPS_GEOM,
            orientation_cap: DEFAULT_ORIENTATION_CAP,
        }
    }
}

/// `k·π/64` for `k = 1..=31`.
pub fn default_d_grid() -> Vec<f64> {
    (1..=31).map(|k| k as f64 * PI / 64.0).collect()
}

impl SearchConfig {
    /// A single attempt at exactly `delta`.
    pub fn at_delta(delta: f64) -> Self {
        Self { delta0: delta, max_retries: 0, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), PassageError> {
        let bad = |m: &str| Err(PassageError::InvalidConfig(m.into()));
        if !(self.delta0 > 0.0 && self.delta0 < PI) {
            return bad("delta0 must lie in (0, pi)");
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return bad("shrink must lie in (0, 1)");
        }
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return bad("tolerance must be positive");
        }
        if self.d_grid.is_empty() || self.d_grid.iter().any(|&d| !(d > 0.0 && d < PI)) {
            return bad("latitudes must lie in (0, pi)");
        }
        Ok(())
    }

    /// `delta0 · shrink^k` for `k = 0..=max_retries`.
    pub fn deltas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.max_retries).map(move |k| self.delta0 * self.shrink.powi(k as i32))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub kind: PassageKind,
    /// `ρ` for Rupert, `σ = ρ⁻¹` for reverse Rupert.
    pub rotation: Rotation,
    pub delta: f64,
    pub margin: f64,
    pub section: SectionWitness,
    pub decomposition: DoubleArchDecomposition,
    /// Motion applied to the input before `rotation` is tested.
    pub orientation: RigidMotion,
    pub latitude: f64,
    pub branch: Branch,
}

/// `containment_margin(π(r(Q)), π(Q))`; positive iff `r` is a Rupert rotation.
pub fn verify_rupert(q: &Polyhedron, r: &Rotation) -> Result<f64, GeomError> {
    Ok(containment_margin(&shadow(q, r)?, &shadow(q, &Rotation::identity())?))
}

/// `containment_margin(π(Q), π(s(Q)))`; positive iff `s` is reverse Rupert.
pub fn verify_reverse(q: &Polyhedron, s: &Rotation) -> Result<f64, GeomError> {
    Ok(containment_margin(&shadow(q, &Rotation::identity())?, &shadow(q, s)?))
}

/// Margin of the flat polygon `P ⊂ {z = 0}` under `r`: the least clearance
/// of a rotated, projected vertex inside `P`.
pub fn flat_margin(p: &ConvexPolygon2, r: &Rotation) -> f64 {
    p.vertices().iter().map(|v| contains_strict(p, project(r.apply(v.lift())))).fold(f64::INFINITY, f64::min)
}

/// Chord endpoint `(L/2, 0)` of a chord-normalized polygon.
fn chord_base(p: &ConvexPolygon2) -> Result<BaseVertex, PassageError> {
    let on_axis: Vec<Point2> = p.vertices().iter().copied().filter(|v| v.y.abs() <= 1e-9 * v.norm().max(1.0)).collect();
    let right = on_axis.iter().copied().max_by(|a, b| a.x.total_cmp(&b.x)).ok_or(PassageError::NotNormalized)?;
    let left = on_axis.iter().copied().min_by(|a, b| a.x.total_cmp(&b.x)).ok_or(PassageError::NotNormalized)?;
    if !(right.x > 0.0) || (right.x + left.x).abs() > 1e-9 * right.x.max(1.0) {
        return Err(PassageError::NotNormalized);
    }
    BaseVertex::new(Point3::new(right.x, 0.0, 0.0)).map_err(|_| PassageError::NotNormalized)
}

/// Candidate rotations by `delta` about axes on the chord curve, one per
/// latitude and branch, in grid order with the up branch first.
pub fn chord_curve_rotations(
    p: &ConvexPolygon2,
    delta: f64,
    d_grid: &[f64],
) -> Result<Vec<(f64, Branch, Rotation)>, PassageError> {
    let base = chord_base(p)?;
    let mut out = Vec::with_capacity(2 * d_grid.len());
    for &d in d_grid {
        for branch in Branch::BOTH {
            let axis = f_curve_axis(&base, delta, d, branch).map_err(|_| PassageError::NotFound)?;
            out.push((d, branch, Rotation::new(axis, delta)?));
        }
    }
    Ok(out)
}

/// Best flat-polygon Rupert rotation for a chord-normalized polygon: for
/// each `δ` of the schedule, the candidate of largest [`flat_margin`]; the
/// first `δ` whose best margin exceeds the tolerance wins.
pub fn rupert_rotation_for_polygon(p: &ConvexPolygon2, cfg: &SearchConfig) -> Result<(Rotation, f64), PassageError> {
    cfg.validate()?;
    for delta in cfg.deltas() {
        let best = chord_curve_rotations(p, delta, &cfg.d_grid)?
            .into_iter()
            .map(|(_, _, r)| (flat_margin(p, &r), r))
            .fold(None::<(f64, Rotation)>, |acc, c| match acc {
                Some(a) if a.0 >= c.0 => Some(a),
                _ => Some(c),
            });
        if let Some((m, r)) = best {
            if m > cfg.tolerance {
                return Ok((r, m));
            }
        }
    }
    Err(PassageError::NotFound)
}

struct Prepared {
    orientation: RigidMotion,
    oriented: Polyhedron,
    section: SectionWitness,
    decomposition: DoubleArchDecomposition,
    polygon: ConvexPolygon2,
}

fn with_chord_frame(
    q: &Polyhedron,
    m: &RigidMotion,
    section_polygon: &ConvexPolygon2,
    stage: &mut FailureStage,
) -> Option<(RigidMotion, Polyhedron, DoubleArchDecomposition, ConvexPolygon2)> {
    let dec = double_arch_decompose(section_polygon).ok()?;
    if !dec.nontrivial {
        *stage = (*stage).max(FailureStage::TrivialDoubleArch);
        return None;
    }
    *stage = FailureStage::SearchExhausted;
    let (normalized, motion) = normalize_to_chord(section_polygon, &dec);
    let orientation = motion.lift().after(m);
    Some((orientation, q.transformed(&orientation), dec, normalized))
}

fn prepare(
    q: &Polyhedron,
    m: RigidMotion,
    cfg: &SearchConfig,
    kind: PassageKind,
    stage: &mut FailureStage,
) -> Option<Prepared> {
    let qm = q.transformed(&m);
    let section = match kind {
        PassageKind::Rupert => find_polygonal_section_tol(&qm, cfg.tolerance).ok().map(|mut s| {
            s.plane_motion = m;
            SectionWitness::Polygonal(s)
        }),
        PassageKind::ReverseRupert => find_prism_section_tol(&qm, cfg.tolerance).ok().map(|mut s| {
            s.plane_motion = m;
            SectionWitness::Prism(s)
        }),
    }?;
    let (orientation, oriented, decomposition, polygon) = with_chord_frame(q, &m, section.polygon(), stage)?;
    Some(Prepared { orientation, oriented, section, decomposition, polygon })
}

fn search(prep: &Prepared, cfg: &SearchConfig, kind: PassageKind) -> Result<Option<Certificate>, PassageError> {
    let delta_cap = match &prep.section {
        SectionWitness::Prism(s) => s.h / (2.0 * prep.polygon.max_radius()),
        SectionWitness::Polygonal(_) => PI,
    };
    for delta in cfg.deltas() {
        if delta >= delta_cap {
            continue;
        }
        let mut best: Option<(f64, f64, Branch, Rotation)> = None;
        for (d, branch, rho) in chord_curve_rotations(&prep.polygon, delta, &cfg.d_grid)? {
            let (rot, margin) = match kind {
                PassageKind::Rupert => (rho, verify_rupert(&prep.oriented, &rho)?),
                PassageKind::ReverseRupert => {
                    let sigma = rho.inverse();
                    (sigma, verify_reverse(&prep.oriented, &sigma)?)
                }
            };
            if best.as_ref().is_none_or(|b| margin > b.0) {
                best = Some((margin, d, branch, rot));
            }
        }
        if let Some((margin, latitude, branch, rotation)) = best {
            if margin > cfg.tolerance {
                return Ok(Some(Certificate {
                    kind,
                    rotation,
                    delta,
                    margin,
                    section: prep.section.clone(),
                    decomposition: prep.decomposition.clone(),
                    orientation: prep.orientation,
                    latitude,
                    branch,
                }));
            }
        }
    }
    Ok(None)
}

fn certify(q: &Polyhedron, cfg: &SearchConfig, kind: PassageKind) -> Result<Certificate, PassageError> {
    cfg.validate()?;
    let mut stage = FailureStage::NoSection;
    for m in candidate_orientations(q, cfg.orientation_cap) {
        if let Some(prep) = prepare(q, m, cfg, kind, &mut stage) {
            if let Some(cert) = search(&prep, cfg, kind)? {
                return Ok(cert);
            }
        }
    }
    Err(PassageError::Failure { stage })
}

/// Local Rupert certificate from a nontrivial double-arch polygonal section.
pub fn certify_theorem_a(q: &Polyhedron, cfg: &SearchConfig) -> Result<Certificate, PassageError> {
    certify(q, cfg, PassageKind::Rupert)
}

/// Local reverse-Rupert certificate from a prism section over a nontrivial
/// double-arch polygon.
pub fn certify_theorem_b(q: &Polyhedron, cfg: &SearchConfig) -> Result<Certificate, PassageError> {
    certify(q, cfg, PassageKind::ReverseRupert)
}

/// Margin of a certificate recomputed from its orientation and rotation.
pub fn reverify(
    q: &Polyhedron,
    kind: PassageKind,
    orientation: &RigidMotion,
    rotation: &Rotation,
) -> Result<f64, GeomError> {
    let oriented = q.transformed(orientation);
    match kind {
        PassageKind::Rupert => verify_rupert(&oriented, rotation),
        PassageKind::ReverseRupert => verify_reverse(&oriented, rotation),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrientationRecord {
    pub matrix: [[f64; 3]; 3],
    pub translation: [f64; 3],
}

/// Flat JSON form of a [`Certificate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solid: Option<String>,
    pub kind: PassageKind,
    pub delta: f64,
    pub margin: f64,
    pub rotation: Rotation,
    pub orientation: OrientationRecord,
    pub section: String,
    /// Chord endpoints as vertex indices of the section polygon.
    pub chord: [usize; 2],
    pub latitude: f64,
    pub branch: Branch,
}

impl Certificate {
    pub fn to_record(&self, solid: Option<&str>) -> CertificateRecord {
        CertificateRecord {
            solid: solid.map(str::to_owned),
            kind: self.kind,
            delta: self.delta,
            margin: self.margin,
            rotation: self.rotation,
            orientation: OrientationRecord {
                matrix: self.orientation.rotation.0,
                translation: self.orientation.translation.to_array(),
            },
            section: self.section.type_name().to_owned(),
            chord: [self.decomposition.chord.0, self.decomposition.chord.1],
            latitude: self.latitude,
            branch: self.branch,
        }
    }
}

impl CertificateRecord {
    pub fn orientation(&self) -> RigidMotion {
        RigidMotion {
            rotation: Matrix3(self.orientation.matrix),
            translation: Point3::from_array(self.orientation.translation),
        }
    }

    /// Recomputes the margin on `q`; fails if it does not match the stored
    /// one within `1e-12` or does not clear `tolerance`.
    pub fn reverify(&self, q: &Polyhedron, tolerance: f64) -> Result<f64, PassageError> {
        let axis = self.rotation.axis();
        if (axis.norm() - 1.0).abs() > crate::geom::AXIS_NORM_TOL || !self.rotation.angle().is_finite() {
            return Err(PassageError::InvalidCertificate("rotation axis is not a unit vector".into()));
        }
        let m = self.orientation().rotation;
        let orth = m.mul(&m.transpose());
        let off = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (orth.0[i][j] - if i == j { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max);
        if off > 1e-12 || (m.det() - 1.0).abs() > 1e-12 {
            return Err(PassageError::InvalidCertificate("orientation is not a rotation".into()));
        }
        let margin = reverify(q, self.kind, &self.orientation(), &self.rotation)?;
        if (margin - self.margin).abs() > 1e-12 {
            return Err(PassageError::InvalidCertificate(format!(
                "margin mismatch: stored {} recomputed {}",
                self.margin, margin
            )));
        }
        if margin <= tolerance {
            return Err(PassageError::InvalidCertificate(format!("margin {margin} does not clear {tolerance}")));
        }
        Ok(margin)
    }
}

/// Allowable-axis membership on a latitude/longitude grid about a polygon
/// vertex: `cells[i][j]` is true iff the rotation by `delta` about the axis
/// at latitude `(i + ½)·π/res` and longitude `(j + ½)·2π/res` sends the
/// vertex to a point projecting strictly inside the polygon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AllowableGrid {
    pub resolution: usize,
    pub delta: f64,
    pub vertex: Point3,
    pub cells: Vec<Vec<bool>>,
}

impl AllowableGrid {
    pub fn latitude(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * PI / self.resolution as f64
    }

    pub fn longitude(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * 2.0 * PI / self.resolution as f64
    }

    pub fn allowable_count(&self) -> usize {
        self.cells.iter().flatten().filter(|&&c| c).count()
    }
}

/// Whether the rotation by `delta` about `axis` is allowable for `v`.
pub fn is_allowable(p: &ConvexPolygon2, v: Point3, axis: Point3, delta: f64) -> bool {
    match Rotation::new(axis, delta) {
        Ok(r) => contains_strict(p, project(r.apply(v))) > 0.0,
        Err(_) => false,
    }
}

pub fn allowable_set_sample(
    p: &ConvexPolygon2,
    vertex_index: usize,
    delta: f64,
    resolution: usize,
) -> Result<AllowableGrid, PassageError> {
    if vertex_index >= p.len() {
        return Err(PassageError::InvalidConfig(format!("vertex index {vertex_index} out of range")));
    }
    if resolution < 16 {
        return Err(PassageError::InvalidConfig("resolution must be at least 16".into()));
    }
    if !(delta > 0.0 && delta < PI) {
        return Err(PassageError::InvalidConfig("delta must lie in (0, pi)".into()));
    }
    let v = p.vertex(vertex_index).lift();
    let base = BaseVertex::new(v).map_err(|_| PassageError::InvalidConfig("vertex at the origin".into()))?;
    let mut grid = AllowableGrid { resolution, delta, vertex: v, cells: Vec::with_capacity(resolution) };
    for i in 0..resolution {
        let d = grid.latitude(i);
        let row = (0..resolution)
            .map(|j| {
                let a = from_coords(SphericalCoord { d, beta: grid.longitude(j) }, &base);
                is_allowable(p, v, a, delta)
            })
            .collect();
        grid.cells.push(row);
    }
    Ok(grid)
}

//! Coordinates for the Platonic, Archimedean and Catalan solids discussed
//! in the survey, plus prisms and bipyramids, each in an orientation that
//! exposes its section on `z = 0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{support_planes, GeomError, Matrix3, Point3, Polyhedron, RigidMotion};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("unknown solid '{0}'")]
    UnknownSolid(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Expected {
    RupertViaA,
    ReverseViaB,
    NotCovered,
}

impl std::fmt::Display for Expected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::RupertViaA => "rupert-via-A",
            Self::ReverseViaB => "reverse-via-B",
            Self::NotCovered => "not-covered",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolidSpec {
    pub name: String,
    /// Side count for the prism and bipyramid families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Half-height for prisms (default 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<f64>,
    pub expected: Expected,
}

impl SolidSpec {
    pub fn named(name: &str, expected: Expected) -> Self {
        Self { name: name.to_owned(), n: None, height: None, expected }
    }

    pub fn family(name: &str, n: usize, expected: Expected) -> Self {
        Self { name: name.to_owned(), n: Some(n), height: None, expected }
    }

    /// `name` or `name-n` for families.
    pub fn label(&self) -> String {
        match self.n {
            Some(n) => format!("{}-{}", self.name, n),
            None => self.name.clone(),
        }
    }
}

const NAMED: &[(&str, Expected)] = &[
    ("octahedron", Expected::RupertViaA),
    ("cuboctahedron", Expected::RupertViaA),
    ("icosidodecahedron", Expected::RupertViaA),
    ("triakis-octahedron", Expected::RupertViaA),
    ("triakis-hexahedron", Expected::RupertViaA),
    ("deltoidal-icositetrahedron", Expected::RupertViaA),
    ("disdyakis-dodecahedron", Expected::RupertViaA),
    ("disdyakis-triacontahedron", Expected::RupertViaA),
    ("cube", Expected::ReverseViaB),
    ("truncated-cube", Expected::ReverseViaB),
    ("truncated-octahedron", Expected::ReverseViaB),
    ("rhombicuboctahedron", Expected::ReverseViaB),
    ("truncated-cuboctahedron", Expected::ReverseViaB),
    ("truncated-icosidodecahedron", Expected::ReverseViaB),
    ("rhombic-dodecahedron", Expected::ReverseViaB),
    ("rhombic-triacontahedron", Expected::ReverseViaB),
    ("elongated-square-gyrobicupola", Expected::ReverseViaB),
    ("tetrahedron", Expected::NotCovered),
    ("dodecahedron", Expected::NotCovered),
    ("icosahedron", Expected::NotCovered),
    ("rhombicosidodecahedron", Expected::NotCovered),
];

/// Every solid of the survey with its expected outcome, including the
/// prism and bipyramid families for `n = 3..=10`. The elongated square
/// gyrobicupola is left out; see [`survey_set_with`].
pub fn survey_set() -> Vec<SolidSpec> {
    survey_set_with(false)
}

/// As [`survey_set`]; the elongated square gyrobicupola is optional since
/// it is only sometimes counted among the Archimedean solids.
pub fn survey_set_with(include_gyrobicupola: bool) -> Vec<SolidSpec> {
    let mut out: Vec<SolidSpec> = NAMED
        .iter()
        .filter(|(name, _)| include_gyrobicupola || *name != "elongated-square-gyrobicupola")
        .map(|&(name, e)| SolidSpec::named(name, e))
        .collect();
    for n in 3..=10 {
        let e = if n == 3 { Expected::NotCovered } else { Expected::ReverseViaB };
        out.push(SolidSpec::family("prism", n, e));
    }
    for n in 3..=10 {
        let e = if n == 3 { Expected::NotCovered } else { Expected::RupertViaA };
        out.push(SolidSpec::family("bipyramid", n, e));
    }
    out
}

/// Names accepted by [`build_named`] (families take a `-n` suffix).
pub fn known_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = NAMED.iter().map(|(n, _)| *n).collect();
    v.extend(["tetrakis-hexahedron", "prism-<n>", "bipyramid-<n>"]);
    v
}

/// Parses `cube`, `prism-6`, `bipyramid-5`, and builds it.
pub fn build_named(label: &str) -> Result<Polyhedron, CatalogError> {
    let label = label.trim().to_ascii_lowercase().replace('_', "-");
    for family in ["prism", "bipyramid"] {
        if let Some(rest) = label.strip_prefix(family).and_then(|r| r.strip_prefix('-')) {
            let n = rest.parse().map_err(|_| CatalogError::BadParameters(format!("side count '{rest}'")))?;
            return build(&SolidSpec::family(family, n, Expected::NotCovered));
        }
    }
    build(&SolidSpec::named(&label, Expected::NotCovered))
}

pub fn build(spec: &SolidSpec) -> Result<Polyhedron, CatalogError> {
    let pts = match spec.name.as_str() {
        "prism" => {
            let n = family_n(spec)?;
            let h = spec.height.unwrap_or(1.0);
            if !(h > 0.0 && h.is_finite()) {
                return Err(CatalogError::BadParameters(format!("prism half-height {h}")));
            }
            prism(n, h)
        }
        "bipyramid" => bipyramid(family_n(spec)?),
        name => named_points(name).ok_or_else(|| CatalogError::UnknownSolid(name.to_owned()))?,
    };
    Ok(Polyhedron::new(pts)?)
}

fn family_n(spec: &SolidSpec) -> Result<usize, CatalogError> {
    match spec.n {
        Some(n) if n >= 3 => Ok(n),
        Some(n) => Err(CatalogError::BadParameters(format!("{} needs n >= 3, got {n}", spec.name))),
        None => Err(CatalogError::BadParameters(format!("{} needs a side count", spec.name))),
    }
}

fn phi() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

fn p(x: f64, y: f64, z: f64) -> Point3 {
    Point3::new(x, y, z)
}

/// All sign choices of the nonzero coordinates.
fn signs(v: [f64; 3]) -> Vec<[f64; 3]> {
    let mut out = vec![v];
    for k in 0..3 {
        if v[k] != 0.0 {
            let flipped: Vec<[f64; 3]> = out
                .iter()
                .map(|w| {
                    let mut w = *w;
                    w[k] = -w[k];
                    w
                })
                .collect();
            out.extend(flipped);
        }
    }
    out
}

fn cyclic(v: [f64; 3]) -> Vec<[f64; 3]> {
    vec![v, [v[1], v[2], v[0]], [v[2], v[0], v[1]]]
}

fn all_perms(v: [f64; 3]) -> Vec<[f64; 3]> {
    let mut out = cyclic(v);
    out.extend(cyclic([v[1], v[0], v[2]]));
    out
}

/// Sign choices of each permutation, duplicates removed.
fn orbit(v: [f64; 3], perms: fn([f64; 3]) -> Vec<[f64; 3]>) -> Vec<Point3> {
    let mut out: Vec<Point3> = Vec::new();
    for w in perms(v) {
        for s in signs(w) {
            let q = Point3::from_array(s);
            if !out.iter().any(|o| o.dist(q) < 1e-12) {
                out.push(q);
            }
        }
    }
    out
}

fn orbits(vs: &[[f64; 3]], perms: fn([f64; 3]) -> Vec<[f64; 3]>) -> Vec<Point3> {
    let mut out = Vec::new();
    for &v in vs {
        for q in orbit(v, perms) {
            if !out.iter().any(|o: &Point3| o.dist(q) < 1e-12) {
                out.push(q);
            }
        }
    }
    out
}

fn aligned(pts: Vec<Point3>, axis: Point3) -> Vec<Point3> {
    let m = Matrix3::align_to_z(axis);
    pts.into_iter().map(|q| m.apply(q)).collect()
}

fn regular_ring(n: usize, r: f64, z: f64, phase: f64) -> Vec<Point3> {
    (0..n)
        .map(|k| {
            let a = phase + std::f64::consts::TAU * k as f64 / n as f64;
            p(r * a.cos(), r * a.sin(), z)
        })
        .collect()
}

/// Regular `n`-gon of circumradius 1 at `z = ±h`.
pub fn prism(n: usize, h: f64) -> Vec<Point3> {
    let mut v = regular_ring(n, 1.0, h, 0.0);
    v.extend(regular_ring(n, 1.0, -h, 0.0));
    v
}

/// Regular `n`-gon of circumradius 1 on `z = 0` with apexes `(0, 0, ±1)`.
pub fn bipyramid(n: usize) -> Vec<Point3> {
    let mut v = regular_ring(n, 1.0, 0.0, 0.0);
    v.push(p(0.0, 0.0, 1.0));
    v.push(p(0.0, 0.0, -1.0));
    v
}

fn archimedean(name: &str) -> Option<Vec<Point3>> {
    let f = phi();
    let r2 = 2f64.sqrt();
    Some(match name {
        "tetrahedron" => vec![p(1.0, 1.0, 1.0), p(1.0, -1.0, -1.0), p(-1.0, 1.0, -1.0), p(-1.0, -1.0, 1.0)],
        "octahedron" => orbit([1.0, 0.0, 0.0], all_perms),
        "cube" => orbit([1.0, 1.0, 1.0], all_perms),
        "icosahedron" => orbit([0.0, 1.0, f], cyclic),
        "dodecahedron" => orbits(&[[1.0, 1.0, 1.0], [0.0, 1.0 / f, f]], cyclic),
        "cuboctahedron" => orbit([1.0, 1.0, 0.0], all_perms),
        "icosidodecahedron" => orbits(&[[0.0, 0.0, f], [0.5, f / 2.0, f * f / 2.0]], cyclic),
        "truncated-cube" => orbit([r2 - 1.0, 1.0, 1.0], all_perms),
        "truncated-octahedron" => orbit([0.0, 1.0, 2.0], all_perms),
        "rhombicuboctahedron" => orbit([1.0, 1.0, 1.0 + r2], all_perms),
        "truncated-cuboctahedron" => orbit([1.0, 1.0 + r2, 1.0 + 2.0 * r2], all_perms),
        "truncated-icosidodecahedron" => orbits(
            &[
                [1.0 / f, 1.0 / f, 3.0 + f],
                [2.0 / f, f, 1.0 + 2.0 * f],
                [1.0 / f, f * f, 3.0 * f - 1.0],
                [2.0 * f - 1.0, 2.0, 2.0 + f],
                [f, 3.0, 2.0 * f],
            ],
            cyclic,
        ),
        "rhombicosidodecahedron" => {
            orbits(&[[1.0, 1.0, f * f * f], [f * f, f, 2.0 * f], [2.0 + f, 0.0, f * f]], cyclic)
        }
        _ => return None,
    })
}

fn named_points(name: &str) -> Option<Vec<Point3>> {
    let f = phi();
    let r2 = 2f64.sqrt();
    Some(match name {
        "cuboctahedron" => aligned(archimedean(name)?, p(1.0, 1.0, 1.0)),
        "icosidodecahedron" => aligned(archimedean(name)?, p(1.0, 0.0, f)),
        "truncated-octahedron" => aligned(archimedean(name)?, p(1.0, -1.0, 0.0)),
        "rhombic-dodecahedron" => aligned(dual_points(&archimedean("cuboctahedron")?), p(1.0, 1.0, 1.0)),
        "rhombic-triacontahedron" => aligned(dual_points(&archimedean("icosidodecahedron")?), p(1.0, 0.0, f)),
        "triakis-octahedron" => dual_points(&archimedean("truncated-cube")?),
        "triakis-hexahedron" | "tetrakis-hexahedron" => {
            aligned(dual_points(&archimedean("truncated-octahedron")?), p(1.0, -1.0, 0.0))
        }
        "deltoidal-icositetrahedron" => dual_points(&archimedean("rhombicuboctahedron")?),
        "disdyakis-dodecahedron" => dual_points(&archimedean("truncated-cuboctahedron")?),
        "disdyakis-triacontahedron" => dual_points(&archimedean("truncated-icosidodecahedron")?),
        "elongated-square-gyrobicupola" => {
            let a = (1.0 + r2) / 2.0;
            let top = 0.5 + 1.0 / r2;
            let mut v = Vec::new();
            for z in [0.5, -0.5] {
                for (x, y) in [(0.5, a), (-0.5, a), (0.5, -a), (-0.5, -a), (a, 0.5), (a, -0.5), (-a, 0.5), (-a, -0.5)] {
                    v.push(p(x, y, z));
                }
            }
            for (x, y) in [(0.5, 0.5), (-0.5, 0.5), (0.5, -0.5), (-0.5, -0.5)] {
                v.push(p(x, y, top));
            }
            for (x, y) in [(1.0 / r2, 0.0), (-1.0 / r2, 0.0), (0.0, 1.0 / r2), (0.0, -1.0 / r2)] {
                v.push(p(x, y, -top));
            }
            v
        }
        other => archimedean(other)?,
    })
}

/// Polar dual about the centroid: one vertex `n / c` per facet plane
/// `n · x = c`.
pub fn dual_points(points: &[Point3]) -> Vec<Point3> {
    let c = points.iter().fold(Point3::ORIGIN, |a, &b| a + b) * (1.0 / points.len() as f64);
    let shifted: Vec<Point3> = points.iter().map(|&q| q - c).collect();
    support_planes(&shifted).into_iter().map(|pl| pl.normal * (1.0 / pl.offset)).collect()
}

/// Polar dual of a polyhedron, scaled to the same circumradius.
pub fn dual(q: &Polyhedron) -> Result<Polyhedron, CatalogError> {
    let d = dual_points(q.vertices());
    let r = d.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let s = q.max_radius() / r;
    Ok(Polyhedron::new(d.into_iter().map(|v| v * s).collect())?)
}

/// The motion taking a direction to `+z`, for callers re-orienting catalog
/// solids by hand.
pub fn axis_to_z(axis: Point3) -> RigidMotion {
    RigidMotion::from_rotation(Matrix3::align_to_z(axis))
}

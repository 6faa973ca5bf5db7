//! Command implementations shared by the binary and the tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rupert_core::catalog::{build_named, CatalogError};
use rupert_core::geom::{hull2, shadow, ConvexPolygon2, GeomError, Point2, Point3, Polyhedron, RigidMotion, Rotation};
use rupert_core::passage::{
    allowable_set_sample, certify_theorem_a, certify_theorem_b, Certificate, FailureStage, PassageError, PassageKind,
    SearchConfig,
};
use rupert_core::polygon::double_arch_decompose;
use rupert_core::sections::{candidate_orientations, find_polygonal_section_tol, find_prism_section_tol};
use thiserror::Error;

use crate::off::{self, OffError, OffMesh};
use crate::svg::{self, SectionFigure};

/// Process exit status; a stable contract for every command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    InputError = 1,
    NotCertified = 2,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    Io { path: PathBuf, msg: String },
    #[error("malformed OFF: {0}")]
    Off(#[from] OffError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("invalid geometry: {0}")]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Passage(#[from] PassageError),
    #[error("json: {0}")]
    Json(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), msg: e.to_string() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    A,
    B,
    Auto,
}

impl Theorem {
    fn kinds(self) -> &'static [PassageKind] {
        match self {
            Self::A => &[PassageKind::Rupert],
            Self::B => &[PassageKind::ReverseRupert],
            Self::Auto => &[PassageKind::Rupert, PassageKind::ReverseRupert],
        }
    }
}

/// Result of running one or both theorems.
#[derive(Clone, Debug)]
pub struct Attempt {
    pub certificate: Option<Certificate>,
    /// Furthest stage reached by each theorem that failed.
    pub stages: Vec<(PassageKind, FailureStage)>,
}

pub fn attempt(q: &Polyhedron, theorem: Theorem, cfg: &SearchConfig) -> Result<Attempt, CliError> {
    let mut stages = Vec::new();
    for &kind in theorem.kinds() {
        let res = match kind {
            PassageKind::Rupert => certify_theorem_a(q, cfg),
            PassageKind::ReverseRupert => certify_theorem_b(q, cfg),
        };
        match res {
            Ok(c) => return Ok(Attempt { certificate: Some(c), stages }),
            Err(PassageError::Failure { stage }) => stages.push((kind, stage)),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Attempt { certificate: None, stages })
}

/// A catalog name (`cube`, `prism-6`) or a path to an OFF file. Returns a
/// display name with the solid.
pub fn load_solid(input: &str) -> Result<(String, Polyhedron), CliError> {
    let path = Path::new(input);
    if path.exists() || input.to_ascii_lowercase().ends_with(".off") {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let q = off::parse(&text)?.to_polyhedron()?;
        let name = path.file_stem().map_or_else(|| input.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok((name, q));
    }
    Ok((input.to_string(), build_named(input)?))
}

fn write_or_print(output: Option<&Path>, body: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, body).map_err(|e| CliError::io(p, e)),
        None => out.write_all(body.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

/// Certifies `input`, writing the certificate JSON to `output` (or to
/// `out` when no path is given) and a one-line summary to `log`.
pub fn certify(
    input: &str,
    theorem: Theorem,
    cfg: &SearchConfig,
    output: Option<&Path>,
    out: &mut dyn Write,
    log: &mut dyn Write,
) -> Result<Exit, CliError> {
    let (name, q) = load_solid(input)?;
    let a = attempt(&q, theorem, cfg)?;
    match a.certificate {
        Some(c) => {
            let json =
                serde_json::to_string_pretty(&c.to_record(Some(&name))).map_err(|e| CliError::Json(e.to_string()))?;
            write_or_print(output, &format!("{json}\n"), out)?;
            let _ = writeln!(log, "{name}: {} certificate, delta {:.3e}, margin {:.3e}", c.kind, c.delta, c.margin);
            Ok(Exit::Success)
        }
        None => {
            let stages: Vec<String> = a
                .stages
                .iter()
                .map(|(k, s)| format!("{} {s}", if *k == PassageKind::Rupert { "A" } else { "B" }))
                .collect();
            let _ = writeln!(log, "{name}: not certified ({})", stages.join(", "));
            Ok(Exit::NotCertified)
        }
    }
}

/// SVG of the identity shadow over the shadow after rotating by `angle`
/// about `axis`.
pub fn shadow_document(name: &str, q: &Polyhedron, axis: Point3, angle: f64) -> Result<String, CliError> {
    let r = Rotation::new(axis, angle)?;
    let base = shadow(q, &Rotation::identity())?;
    let turned = shadow(q, &r)?;
    let a = r.axis();
    let title = format!("{name}: axis ({:.4}, {:.4}, {:.4}), angle {:.6}", a.x, a.y, a.z, r.angle());
    Ok(svg::shadow_svg(&base, &turned, &title))
}

/// A section found by orientation search.
pub struct Located {
    pub kind: PassageKind,
    pub orientation: RigidMotion,
    pub polygon: ConvexPolygon2,
    pub slab: Option<f64>,
}

/// First orientation exposing a polygonal (Rupert) or prism (reverse)
/// section, in the order the certifier tries them.
pub fn locate_section(q: &Polyhedron, theorem: Theorem, cfg: &SearchConfig) -> Option<Located> {
    let orientations = candidate_orientations(q, cfg.orientation_cap);
    for &kind in theorem.kinds() {
        for m in &orientations {
            let moved = q.transformed(m);
            let found = match kind {
                PassageKind::Rupert => {
                    find_polygonal_section_tol(&moved, cfg.tolerance).ok().map(|s| (s.polygon, None))
                }
                PassageKind::ReverseRupert => {
                    find_prism_section_tol(&moved, cfg.tolerance).ok().map(|s| (s.polygon, Some(s.h)))
                }
            };
            if let Some((polygon, slab)) = found {
                return Some(Located { kind, orientation: *m, polygon, slab });
            }
        }
    }
    None
}

pub fn section_document(
    name: &str,
    q: &Polyhedron,
    theorem: Theorem,
    cfg: &SearchConfig,
) -> Result<Option<String>, CliError> {
    let Some(loc) = locate_section(q, theorem, cfg) else { return Ok(None) };
    let moved = q.transformed(&loc.orientation);
    let outline = shadow(&moved, &Rotation::identity())?;
    let chord = double_arch_decompose(&loc.polygon)
        .ok()
        .map(|d| (loc.polygon.vertex(d.chord.0), loc.polygon.vertex(d.chord.1)));
    let what = if loc.kind == PassageKind::Rupert { "polygonal section" } else { "prism section" };
    let title = format!("{name}: {what}, {} vertices", loc.polygon.len());
    Ok(Some(svg::section_svg(&SectionFigure {
        title: &title,
        vertices: moved.vertices(),
        shadow: &outline,
        polygon: &loc.polygon,
        chord,
        slab: loc.slab,
    })))
}

/// `"x,y x,y ..."` (or `;`-separated) as a convex polygon; every point
/// must be a hull vertex.
pub fn parse_polygon(text: &str) -> Result<ConvexPolygon2, CliError> {
    let bad = |m: String| CliError::Usage(m);
    let pts = text
        .split(|c: char| c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let mut it = pair.split(',').map(|t| t.trim().parse::<f64>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(x)), Some(Ok(y)), None) => Ok(Point2::new(x, y)),
                _ => Err(bad(format!("bad polygon point '{pair}'"))),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let hull = hull2(&pts)?;
    if hull.len() != pts.len() {
        return Err(bad("polygon points must be in convex position".into()));
    }
    Ok(hull)
}

pub fn parse_vector(text: &str) -> Result<Point3, CliError> {
    let v = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("bad vector '{text}'")))?;
    match v[..] {
        [x, y, z] => Ok(Point3::new(x, y, z)),
        _ => Err(CliError::Usage(format!("vector '{text}' needs three components"))),
    }
}

/// Where the allowable-set polygon comes from.
pub enum AllowableSource<'a> {
    Polygon(ConvexPolygon2),
    /// A solid's polygonal section; with `shadow_fallback`, the identity
    /// shadow is used when there is none.
    Solid {
        input: &'a str,
        shadow_fallback: bool,
    },
}

/// SVG atlas of the allowable axes for one polygon vertex; `None` when the
/// solid has no polygonal section to take the polygon from.
pub fn allowable_document(
    source: AllowableSource,
    vertex: usize,
    delta: f64,
    resolution: usize,
    cfg: &SearchConfig,
) -> Result<Option<String>, CliError> {
    let (name, polygon) = match source {
        AllowableSource::Polygon(p) => ("polygon".to_string(), p),
        AllowableSource::Solid { input, shadow_fallback } => {
            let (name, q) = load_solid(input)?;
            match locate_section(&q, Theorem::A, cfg) {
                Some(loc) => (name, loc.polygon),
                None if shadow_fallback => (name, shadow(&q, &Rotation::identity())?),
                None => return Ok(None),
            }
        }
    };
    let grid = allowable_set_sample(&polygon, vertex, delta, resolution)?;
    let title = format!(
        "{name}: vertex {vertex}, delta {delta}, {} of {} cells",
        grid.allowable_count(),
        resolution * resolution
    );
    Ok(Some(svg::allowable_svg(&grid, &title)))
}

pub fn export_off(q: &Polyhedron) -> String {
    off::serialize(&OffMesh::from_polyhedron(q))
}

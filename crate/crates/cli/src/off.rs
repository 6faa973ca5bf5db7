//! ASCII OFF meshes: header `OFF`, a counts line `nv nf ne`, then vertex
//! and face lines. `#` starts a comment. Faces are only used to check that
//! the mesh really is the boundary of its convex hull.

use std::fmt::Write as _;

use rupert_core::geom::{support_planes, GeomError, Point3, Polyhedron};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OffError {
    #[error("missing OFF header")]
    MissingHeader,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("expected {expected} {what}, found {found}")]
    Count { what: &'static str, expected: usize, found: usize },
    #[error("face {face} refers to vertex {index}, but there are {count} vertices")]
    BadIndex { face: usize, index: usize, count: usize },
    #[error("face {0} is not a planar supporting face of the vertex set")]
    BadFace(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct OffMesh {
    pub vertices: Vec<Point3>,
    pub faces: Vec<Vec<usize>>,
}

/// Tokens of the non-empty, comment-stripped lines, with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, OffError> {
    tok.parse().map_err(|_| OffError::Syntax { line, msg: format!("bad number '{tok}'") })
}

pub fn parse(text: &str) -> Result<OffMesh, OffError> {
    let mut lines = content_lines(text);
    let (hline, head) = lines.next().ok_or(OffError::MissingHeader)?;
    // the counts may share the header line
    let counts: Vec<&str> = match head[0] {
        "OFF" if head.len() > 1 => head[1..].to_vec(),
        "OFF" => lines.next().ok_or(OffError::Syntax { line: hline, msg: "missing counts".into() })?.1,
        _ => return Err(OffError::MissingHeader),
    };
    if counts.len() < 2 {
        return Err(OffError::Syntax { line: hline, msg: "counts line needs vertex and face counts".into() });
    }
    let nv: usize = num(counts[0], hline)?;
    let nf: usize = num(counts[1], hline)?;

    let mut mesh = OffMesh::default();
    for _ in 0..nv {
        let Some((line, toks)) = lines.next() else {
            return Err(OffError::Count { what: "vertices", expected: nv, found: mesh.vertices.len() });
        };
        if toks.len() < 3 {
            return Err(OffError::Syntax { line, msg: "vertex needs 3 coordinates".into() });
        }
        let p = Point3::new(num(toks[0], line)?, num(toks[1], line)?, num(toks[2], line)?);
        if !p.is_finite() {
            return Err(OffError::Geom(GeomError::NonFinite));
        }
        mesh.vertices.push(p);
    }
    for f in 0..nf {
        let Some((line, toks)) = lines.next() else {
            return Err(OffError::Count { what: "faces", expected: nf, found: f });
        };
        let k: usize = num(toks[0], line)?;
        if toks.len() < k + 1 {
            return Err(OffError::Syntax { line, msg: format!("face lists {} of {k} indices", toks.len() - 1) });
        }
        let face = toks[1..=k].iter().map(|t| num(t, line)).collect::<Result<Vec<usize>, _>>()?;
        mesh.faces.push(face);
    }
    Ok(mesh)
}

/// Shortest round-trip float formatting keeps parse∘serialize exact.
pub fn serialize(mesh: &OffMesh) -> String {
    let mut s = String::from("OFF\n");
    let _ = writeln!(s, "{} {} 0", mesh.vertices.len(), mesh.faces.len());
    for p in &mesh.vertices {
        let _ = writeln!(s, "{:?} {:?} {:?}", p.x, p.y, p.z);
    }
    for f in &mesh.faces {
        let _ = write!(s, "{}", f.len());
        for i in f {
            let _ = write!(s, " {i}");
        }
        s.push('\n');
    }
    s
}

impl OffMesh {
    /// Checks the faces against the vertex set and builds the polyhedron.
    pub fn to_polyhedron(&self) -> Result<Polyhedron, OffError> {
        let count = self.vertices.len();
        for (fi, face) in self.faces.iter().enumerate() {
            if let Some(&index) = face.iter().find(|&&i| i >= count) {
                return Err(OffError::BadIndex { face: fi, index, count });
            }
        }
        let q = Polyhedron::new(self.vertices.clone())?;
        if self.faces.is_empty() {
            return Ok(q);
        }
        let planes = support_planes(&self.vertices);
        for (fi, face) in self.faces.iter().enumerate() {
            let ok = face.len() >= 3 && planes.iter().any(|pl| face.iter().all(|i| pl.members.contains(i)));
            if !ok {
                return Err(OffError::BadFace(fi));
            }
        }
        Ok(q)
    }

    /// Vertices of `q` with its facets, each listed counterclockwise as
    /// seen from outside.
    pub fn from_polyhedron(q: &Polyhedron) -> OffMesh {
        let vs = q.vertices();
        let faces = q
            .faces()
            .into_iter()
            .map(|pl| {
                let n = pl.normal;
                let c = pl.members.iter().fold(Point3::ORIGIN, |acc, &i| acc + vs[i]) * (1.0 / pl.members.len() as f64);
                let e1 = (vs[pl.members[0]] - c).normalized().unwrap_or(Point3::X);
                let e2 = n.cross(e1);
                let mut ring = pl.members.clone();
                ring.sort_by(|&a, &b| {
                    let ang = |i: usize| (vs[i] - c).dot(e2).atan2((vs[i] - c).dot(e1));
                    ang(a).total_cmp(&ang(b))
                });
                ring
            })
            .collect();
        OffMesh { vertices: vs.to_vec(), faces }
    }
}

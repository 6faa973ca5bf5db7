//! Acceptance checks. Each test prints one `PASS` or `FAIL` line and then
//! asserts it. Run with `--nocapture --test-threads=1` to read them in order.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{PI, TAU};
use std::fs;
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rupert_cli::report::{write_survey, Outcome};
use rupert_cli::{SurveyOptions, SurveyReport};
use rupert_core::catalog::{build_named, dual};
use rupert_core::geom::{
    conjugate_axis, containment_margin, hull2, shadow, ConvexPolygon2, Point2, Point3, Polyhedron, Rotation, EPS_GEOM,
};
use rupert_core::passage::{
    certify_theorem_a, certify_theorem_b, verify_rupert, CertificateRecord, PassageKind, SearchConfig,
};
use rupert_core::polygon::{decomposition_for_chord, double_arch_decompose, regular_polygon};
use rupert_core::sphere::{j_map, t_of_d, tau_of_d, to_coords, BaseVertex};

fn verdict(name: &str, ok: bool, detail: &str) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_vector(r: &mut impl Rng) -> Point3 {
    loop {
        let p = Point3::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let n = p.norm();
        if n > 0.1 && n <= 1.0 {
            return p * (1.0 / n);
        }
    }
}

// ---------------------------------------------------------------- oracles

type M3 = [[f64; 3]; 3];

/// `exp(θK)` for the cross-product matrix of the unit axis, as a Taylor sum.
fn rotation_exp(axis: Point3, angle: f64) -> M3 {
    let n = axis.norm();
    let (x, y, z) = (axis.x / n * angle, axis.y / n * angle, axis.z / n * angle);
    let k: M3 = [[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]];
    let mut sum: M3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut term = sum;
    for i in 1..60 {
        let mut next = [[0.0; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                next[r][c] = (0..3).map(|m| term[r][m] * k[m][c]).sum::<f64>() / i as f64;
            }
        }
        term = next;
        for r in 0..3 {
            for c in 0..3 {
                sum[r][c] += term[r][c];
            }
        }
    }
    sum
}

fn apply(m: &M3, p: Point3) -> Point3 {
    Point3::new(
        m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
        m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
        m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z,
    )
}

fn rotate_exp(axis: Point3, angle: f64, p: Point3) -> Point3 {
    apply(&rotation_exp(axis, angle), p)
}

fn arc(a: Point3, b: Point3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Longitude of `p` about the equatorial `v`, from the direction `ẑ × v`
/// and counterclockwise about `v`.
fn longitude(v: Point3, p: Point3) -> f64 {
    let vh = v * (1.0 / v.norm());
    let m = Point3::Z.cross(vh);
    let q = p - vh * p.dot(vh);
    vh.dot(m.cross(q)).atan2(m.dot(q))
}

/// Axis direction at latitude `d` and longitude `beta` about `v`.
fn axis_at(v: Point3, d: f64, beta: f64) -> Point3 {
    let vh = v * (1.0 / v.norm());
    let m = Point3::Z.cross(vh);
    vh * d.cos() + (m * beta.cos() + Point3::Z * beta.sin()) * d.sin()
}

fn ang(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

fn equatorial(r: &mut impl Rng) -> Point3 {
    let th: f64 = r.gen_range(0.0..TAU);
    Point3::new(th.cos(), th.sin(), 0.0) * r.gen_range(0.5..2.0)
}

/// Supporting lines of a planar point set by exhaustive pair search, as
/// (point, inward unit normal).
fn supporting_lines(pts: &[Point2]) -> Vec<(Point2, Point2)> {
    let scale = pts.iter().map(|p| p.norm()).fold(1.0, f64::max);
    let mut out = Vec::new();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            let e = b - a;
            let len = e.norm();
            if len < 1e-6 * scale {
                continue;
            }
            let nrm = Point2::new(-e.y / len, e.x / len);
            let side: Vec<f64> = pts.iter().map(|&p| (p - a).dot(nrm)).collect();
            if side.iter().all(|&s| s >= -1e-12 * scale) {
                out.push((a, nrm));
            } else if side.iter().all(|&s| s <= 1e-12 * scale) {
                out.push((a, nrm * -1.0));
            }
        }
    }
    out
}

/// Least inward distance of the `inner` points to the hull of `outer`.
fn margin_oracle(inner: &[Point2], outer: &[Point2]) -> f64 {
    let lines = supporting_lines(outer);
    inner
        .iter()
        .map(|&p| lines.iter().map(|&(a, n)| (p - a).dot(n)).fold(f64::INFINITY, f64::min))
        .fold(f64::INFINITY, f64::min)
}

fn jarvis(points: &[Point2]) -> Vec<Point2> {
    let start = *points.iter().min_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))).unwrap();
    let mut hull = vec![start];
    let mut cur = start;
    loop {
        let mut cand = *points.iter().find(|p| p.dist(cur) > 0.0).unwrap();
        for &p in points {
            if p.dist(cur) == 0.0 {
                continue;
            }
            let c = (cand - cur).cross(p - cur);
            if c < 0.0 || (c == 0.0 && p.dist(cur) > cand.dist(cur)) {
                cand = p;
            }
        }
        if cand.dist(start) == 0.0 || hull.len() > points.len() {
            break;
        }
        hull.push(cand);
        cur = cand;
    }
    hull
}

/// Crossing-number point-in-polygon test.
fn inside(poly: &[Point2], p: Point2) -> bool {
    let n = poly.len();
    let mut c = false;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if (a.y > p.y) != (b.y > p.y) && p.x < a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y) {
            c = !c;
        }
    }
    c
}

fn boundary_distance(poly: &[Point2], p: Point2) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            let e = b - a;
            let t = ((p - a).dot(e) / e.dot(e)).clamp(0.0, 1.0);
            p.dist(a + e * t)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Counts of other vertices strictly on each side when all of them lie
/// strictly within the band over the chord `i–j`.
fn band_oracle(p: &ConvexPolygon2, i: usize, j: usize) -> Option<(usize, usize)> {
    let (a, b) = (p.vertex(i), p.vertex(j));
    let e = b - a;
    let l2 = e.dot(e);
    let (mut left, mut right) = (0, 0);
    for k in (0..p.len()).filter(|&k| k != i && k != j) {
        let w = p.vertex(k) - a;
        let t = w.dot(e) / l2;
        let h = e.cross(w) / l2.sqrt();
        let tol = EPS_GEOM / l2.sqrt();
        if t <= tol || t >= 1.0 - tol || h.abs() <= EPS_GEOM {
            return None;
        }
        if h > 0.0 {
            left += 1;
        } else {
            right += 1;
        }
    }
    Some((left, right))
}

// ----------------------------------------------------------------- survey

struct SurveyRun {
    report: SurveyReport,
    elapsed: Duration,
    certificates: BTreeMap<String, String>,
}

fn survey_run() -> &'static SurveyRun {
    static RUN: OnceLock<SurveyRun> = OnceLock::new();
    RUN.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap();
        let start = Instant::now();
        let report = write_survey(&SurveyOptions::default(), dir.path()).unwrap();
        let elapsed = start.elapsed();
        let certificates = report
            .solids
            .iter()
            .filter_map(|r| {
                r.certificate.as_ref().map(|rel| (r.solid.clone(), fs::read_to_string(dir.path().join(rel)).unwrap()))
            })
            .collect();
        SurveyRun { report, elapsed, certificates }
    })
}

fn labels(names: &[&str], family: &str) -> BTreeSet<String> {
    let mut s: BTreeSet<String> = names.iter().map(|n| n.to_string()).collect();
    s.extend((4..=10).map(|n| format!("{family}-{n}")));
    s
}

#[test]
fn survey_reproduces_the_classification() {
    let run = survey_run();
    let rupert = labels(
        &[
            "octahedron",
            "cuboctahedron",
            "icosidodecahedron",
            "triakis-octahedron",
            "triakis-hexahedron",
            "deltoidal-icositetrahedron",
            "disdyakis-dodecahedron",
            "disdyakis-triacontahedron",
        ],
        "bipyramid",
    );
    let reverse = labels(
        &[
            "cube",
            "truncated-cube",
            "truncated-octahedron",
            "rhombicuboctahedron",
            "truncated-cuboctahedron",
            "truncated-icosidodecahedron",
            "rhombic-dodecahedron",
            "rhombic-triacontahedron",
        ],
        "prism",
    );
    let not_covered: BTreeSet<String> =
        ["tetrahedron", "dodecahedron", "icosahedron", "rhombicosidodecahedron", "prism-3", "bipyramid-3"]
            .iter()
            .map(|s| s.to_string())
            .collect();
    let with = |o: Outcome| -> BTreeSet<String> {
        run.report.solids.iter().filter(|r| r.outcome == o).map(|r| r.solid.clone()).collect()
    };
    let (got_a, got_b, got_n) = (with(Outcome::CertifiedA), with(Outcome::CertifiedB), with(Outcome::NotCovered));
    let total = rupert.len() + reverse.len() + not_covered.len();
    let ok = got_a == rupert
        && got_b == reverse
        && got_n == not_covered
        && run.report.solids.len() == total
        && run.report.mismatches == 0
        && run.elapsed < Duration::from_secs(60);
    verdict(
        "survey classification",
        ok,
        &format!(
            "{} via A, {} via B, {} not covered of {} solids; {} mismatches; {:.2} s",
            got_a.len(),
            got_b.len(),
            got_n.len(),
            run.report.solids.len(),
            run.report.mismatches,
            run.elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn every_certificate_reverifies() {
    let run = survey_run();
    let mut failures = Vec::new();
    let mut worst_oracle = 0.0f64;
    let mut least = f64::INFINITY;
    for (solid, json) in &run.certificates {
        let rec: CertificateRecord = serde_json::from_str(json).unwrap();
        let q = build_named(solid).unwrap();
        match rec.reverify(&q, EPS_GEOM) {
            Ok(m) => least = least.min(m),
            Err(e) => failures.push(format!("{solid}: {e}")),
        }
        // independent recomputation from the raw record
        let o = rec.orientation();
        let moved: Vec<Point3> = q.vertices().iter().map(|&v| o.apply(v)).collect();
        let turned: Vec<Point3> =
            moved.iter().map(|&v| rotate_exp(rec.rotation.axis(), rec.rotation.angle(), v)).collect();
        let flat = |ps: &[Point3]| ps.iter().map(|p| Point2::new(p.x, p.y)).collect::<Vec<_>>();
        let m = match rec.kind {
            PassageKind::Rupert => margin_oracle(&flat(&turned), &flat(&moved)),
            PassageKind::ReverseRupert => margin_oracle(&flat(&moved), &flat(&turned)),
        };
        worst_oracle = worst_oracle.max((m - rec.margin).abs());
        if m.is_nan() || m <= EPS_GEOM {
            failures.push(format!("{solid}: oracle margin {m}"));
        }
    }
    let ok = failures.is_empty() && worst_oracle < 1e-10 && !run.certificates.is_empty();
    verdict(
        "certificate soundness",
        ok,
        &format!(
            "{} certificates, least margin {least:.3e}, oracle deviation {worst_oracle:.1e}{}",
            run.certificates.len(),
            if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
        ),
    );
}

#[test]
fn cube_and_octahedron_certify_at_every_scale() {
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, kind) in [("cube", PassageKind::ReverseRupert), ("octahedron", PassageKind::Rupert)] {
        let q = build_named(name).unwrap();
        for delta in [1e-2, 1e-3, 1e-4] {
            let cfg = SearchConfig::at_delta(delta);
            let res = match kind {
                PassageKind::Rupert => certify_theorem_a(&q, &cfg),
                PassageKind::ReverseRupert => certify_theorem_b(&q, &cfg),
            };
            let line = match res {
                Ok(c) if c.margin > 0.0 && c.delta == delta => format!("{name} {delta:.0e} margin {:.3e}", c.margin),
                Ok(c) => {
                    ok = false;
                    format!("{name} {delta:.0e} bad certificate (delta {}, margin {})", c.delta, c.margin)
                }
                Err(e) => {
                    ok = false;
                    format!("{name} {delta:.0e} none ({e})")
                }
            };
            lines.push(line);
        }
    }
    verdict("locality", ok, &lines.join("; "));
}

#[test]
fn side_and_shift_match_rotation_oracle() {
    let mut r = rng(4);
    let (mut t_err, mut tau_err, mut fiber_err) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let v = equatorial(&mut r);
        let d: f64 = r.gen_range(0.01..PI - 0.01);
        let delta: f64 = r.gen_range(0.01..PI - 0.01);
        let beta: f64 = r.gen_range(-PI..PI);
        let img = rotate_exp(axis_at(v, d, beta), delta, v);
        t_err = t_err.max((t_of_d(d, delta) - arc(img, v)).abs());
        tau_err = tau_err.max(ang(tau_of_d(d, delta).unwrap(), longitude(v, img) - beta).abs());
    }
    for _ in 0..1000 {
        let base = BaseVertex::new(equatorial(&mut r)).unwrap();
        let delta: f64 = r.gen_range(0.01..PI - 0.01);
        let a = unit_vector(&mut r);
        let j = j_map(a, &base, delta).unwrap();
        fiber_err = fiber_err.max((arc(j, base.v()) - t_of_d(arc(a, base.v()), delta)).abs());
    }
    let ok = t_err < 1e-10 && tau_err < 1e-9 && fiber_err < 1e-10;
    verdict(
        "spherical oracle",
        ok,
        &format!("t {t_err:.1e} (< 1e-10), tau {tau_err:.1e} (< 1e-9), fiber {fiber_err:.1e} (< 1e-10)"),
    );
}

#[test]
fn conjugation_rule_holds_pointwise() {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (b_axis, b_angle) = (unit_vector(&mut r), r.gen_range(-PI..PI));
        let b = Rotation::new(b_axis, b_angle).unwrap();
        let a = unit_vector(&mut r);
        let gamma: f64 = r.gen_range(-PI..PI);
        let p = unit_vector(&mut r) * r.gen_range(0.1..2.0);
        let lhs = conjugate_axis(&b, a, gamma).unwrap().apply(p);
        let rhs = rotate_exp(b_axis, b_angle, rotate_exp(a, gamma, rotate_exp(b_axis, -b_angle, p)));
        worst = worst.max(lhs.dist(rhs));
    }
    verdict("conjugation rule", worst < 1e-12, &format!("worst {worst:.1e} over 1000 tuples (< 1e-12)"));
}

#[test]
fn circle_isometry_and_pole_rotations() {
    let mut r = rng(6);
    let mut iso = 0.0f64;
    for _ in 0..1000 {
        let base = BaseVertex::new(equatorial(&mut r)).unwrap();
        let delta: f64 = r.gen_range(0.01..PI - 0.01);
        let d: f64 = r.gen_range(0.01..PI - 0.01);
        let (b1, b2): (f64, f64) = (r.gen_range(-PI..PI), r.gen_range(-PI..PI));
        let j1 = j_map(axis_at(base.v(), d, b1), &base, delta).unwrap();
        let j2 = j_map(axis_at(base.v(), d, b2), &base, delta).unwrap();
        iso = iso.max(ang(longitude(base.v(), j2) - longitude(base.v(), j1), b2 - b1).abs());
    }

    let mut pole = 0.0f64;
    for _ in 0..1000 {
        let v = equatorial(&mut r);
        let phi: f64 = r.gen_range(-PI..PI);
        let base = BaseVertex::new(v).unwrap();
        let moved = BaseVertex::new(rotate_exp(Point3::Z, phi, v)).unwrap();
        let p = unit_vector(&mut r) * v.norm();
        let (Ok(c), Ok(c2)) = (to_coords(p, &base), to_coords(rotate_exp(Point3::Z, phi, p), &moved)) else { continue };
        pole = pole.max((c.d - c2.d).abs()).max(ang(c.beta, c2.beta).abs());
    }

    // membership of J-images in a sample set is unchanged by a pole rotation
    let mut disagreements = 0;
    let mut hits = 0;
    for _ in 0..50 {
        let v = equatorial(&mut r);
        let base = BaseVertex::new(v).unwrap();
        let delta: f64 = r.gen_range(0.05..PI - 0.05);
        let phi: f64 = r.gen_range(-PI..PI);
        let moved = BaseVertex::new(rotate_exp(Point3::Z, phi, v)).unwrap();
        let seeds: Vec<Point3> = (0..10).map(|_| unit_vector(&mut r)).collect();
        let mut sample: Vec<Point3> = seeds.iter().map(|&a| j_map(a, &base, delta).unwrap()).collect();
        sample.extend((0..10).map(|_| unit_vector(&mut r) * v.norm()));
        let moved_sample: Vec<Point3> = sample.iter().map(|&x| rotate_exp(Point3::Z, phi, x)).collect();
        let member = |p: Point3, set: &[Point3]| set.iter().any(|x| x.dist(p) < EPS_GEOM);
        let mut axes: Vec<Point3> = (0..40).map(|_| unit_vector(&mut r)).collect();
        axes.extend(seeds);
        for a in axes {
            let here = member(j_map(a, &base, delta).unwrap(), &sample);
            let there = member(j_map(rotate_exp(Point3::Z, phi, a), &moved, delta).unwrap(), &moved_sample);
            disagreements += usize::from(here != there);
            hits += usize::from(here);
        }
    }
    let ok = iso < 1e-9 && pole < 1e-10 && disagreements == 0 && hits > 0;
    verdict(
        "circle isometry",
        ok,
        &format!(
            "longitude differences {iso:.1e} (< 1e-9), pole rotation {pole:.1e} (< 1e-10), preimage disagreements {disagreements} ({hits} members)"
        ),
    );
}

#[test]
fn double_arch_classification() {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 4..=6 {
        let p = regular_polygon(n, 1.0).unwrap();
        let nontrivial = double_arch_decompose(&p).map(|d| d.nontrivial).unwrap_or(false);
        ok &= nontrivial;
        notes.push(format!("{n}-gon {}", if nontrivial { "nontrivial" } else { "trivial" }));
    }
    let tri = double_arch_decompose(&regular_polygon(3, 1.0).unwrap());
    let tri_trivial = matches!(&tri, Ok(d) if !d.nontrivial);
    ok &= tri_trivial;
    notes.push(format!("triangle {}", if tri_trivial { "trivial" } else { "misclassified" }));

    // right triangle with legs 2 and 1 plus its mirror image across the
    // perpendicular bisector of the hypotenuse
    let tri_pts = [Point2::new(0.0, 0.0), Point2::new(2.0, 0.0), Point2::new(0.0, 1.0)];
    let mid = (tri_pts[1] + tri_pts[2]) * 0.5;
    let e = tri_pts[2] - tri_pts[1];
    let e = e * (1.0 / e.norm());
    let mut pts = tri_pts.to_vec();
    pts.extend(tri_pts.iter().map(|&p| p - e * (2.0 * (p - mid).dot(e))));
    let flipped = hull2(&pts).unwrap();
    let mut pair_nontrivial = false;
    for i in 0..flipped.len() {
        for j in 0..flipped.len() {
            pair_nontrivial |= matches!(band_oracle(&flipped, i, j), Some((l, r)) if l > 0 && r > 0);
            pair_nontrivial |= decomposition_for_chord(&flipped, i, j).is_some_and(|d| d.nontrivial);
        }
    }
    pair_nontrivial |= double_arch_decompose(&flipped).is_ok_and(|d| d.nontrivial);
    ok &= !pair_nontrivial;
    notes.push(format!("flipped right triangle {}", if pair_nontrivial { "nontrivial" } else { "not nontrivial" }));

    let mut r = rng(7);
    let mut decomposed = 0;
    for _ in 0..500 {
        let n = r.gen_range(3..15);
        let raw: Vec<Point2> = (0..n)
            .map(|_| {
                let a: f64 = r.gen_range(0.0..TAU);
                let rad: f64 = r.gen_range(0.3..2.0);
                Point2::new(rad * a.cos() + r.gen_range(-0.5..0.5), rad * a.sin())
            })
            .collect();
        let Ok(p) = hull2(&raw) else { continue };
        let Ok(d) = double_arch_decompose(&p) else { continue };
        let counts = band_oracle(&p, d.chord.0, d.chord.1);
        let agrees = counts == Some((d.upper.len(), d.lower.len())) || counts == Some((d.lower.len(), d.upper.len()));
        decomposed += usize::from(agrees);
    }
    ok &= decomposed == 500;
    notes.push(format!("{decomposed} of 500 random polygons decomposed"));
    verdict("double-arch classifier", ok, &notes.join(", "));
}

#[test]
fn vertex_margin_sign_matches_dense_sampling() {
    let mut r = rng(8);
    let (mut agree, mut pos, mut neg, mut near_zero) = (0, 0, 0, 0);
    for case in 0..100 {
        let n = r.gen_range(6..20);
        let raw: Vec<Point3> = (0..n).map(|_| unit_vector(&mut r) * r.gen_range(0.5..1.5)).collect();
        let q = Polyhedron::hull_of(&raw).unwrap();
        let axis = unit_vector(&mut r);
        let angle: f64 = r.gen_range(0.0..PI);
        let rot = Rotation::new(axis, angle).unwrap();
        // a third compare the solid with its own turned copy; the rest
        // shrink the turned copy so that both signs occur
        let scale = if case % 3 == 0 { 1.0 } else { r.gen_range(0.3..1.0) };
        let margin = if scale == 1.0 {
            verify_rupert(&q, &rot).unwrap()
        } else {
            containment_margin(&shadow(&q.scaled(scale), &rot).unwrap(), &shadow(&q, &Rotation::identity()).unwrap())
        };
        let outer = jarvis(&q.vertices().iter().map(|p| Point2::new(p.x, p.y)).collect::<Vec<_>>());
        let inner = jarvis(
            &q.vertices()
                .iter()
                .map(|&p| rotate_exp(axis, angle, p) * scale)
                .map(|p| Point2::new(p.x, p.y))
                .collect::<Vec<_>>(),
        );
        let perimeter: f64 = (0..inner.len()).map(|i| inner[i].dist(inner[(i + 1) % inner.len()])).sum();
        let mut all_inside = true;
        for i in 0..inner.len() {
            let (a, b) = (inner[i], inner[(i + 1) % inner.len()]);
            let k = ((a.dist(b) / perimeter) * 10_000.0).ceil() as usize;
            for s in 0..k {
                let p = a + (b - a) * (s as f64 / k as f64);
                all_inside &= inside(&outer, p) && boundary_distance(&outer, p) > 0.0;
            }
        }
        if margin.abs() <= EPS_GEOM {
            near_zero += 1;
            continue;
        }
        agree += usize::from((margin > 0.0) == all_inside);
        if margin > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    let decided = 100 - near_zero;
    verdict(
        "verification oracle",
        agree == decided && pos > 0 && neg > 0,
        &format!("{agree} of {decided} signs agree ({pos} inside, {neg} outside, {near_zero} within tolerance)"),
    );
}

#[test]
fn dual_pairs_certify_consistently() {
    let cfg = SearchConfig::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for (a_name, b_name) in [
        ("octahedron", "cube"),
        ("cuboctahedron", "rhombic-dodecahedron"),
        ("icosidodecahedron", "rhombic-triacontahedron"),
    ] {
        let a = build_named(a_name).unwrap();
        let b = build_named(b_name).unwrap();
        let a_ok = certify_theorem_a(&a, &cfg).is_ok();
        let b_ok = certify_theorem_b(&b, &cfg).is_ok();
        let a_dual_ok = certify_theorem_b(&dual(&a).unwrap(), &cfg).is_ok();
        let b_dual_ok = certify_theorem_a(&dual(&b).unwrap(), &cfg).is_ok();
        let pair = a_ok && b_ok && a_dual_ok && b_dual_ok;
        ok &= pair;
        notes.push(format!("{a_name} A {a_ok} / {b_name} B {b_ok} / duals {a_dual_ok} {b_dual_ok}"));
    }
    verdict("duality pairs", ok, &notes.join("; "));
}

fn rupert(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_rupert")).args(args).output().unwrap()
}

fn tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.insert(p.strip_prefix(dir).unwrap().display().to_string(), fs::read(&p).unwrap());
            }
        }
    }
    out
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let mut same = true;
    let mut notes = Vec::new();

    let (s1, s2) = (tmp.path().join("s1"), tmp.path().join("s2"));
    let o1 = rupert(&["survey", "-o", s1.to_str().unwrap()]);
    let o2 = rupert(&["survey", "-o", s2.to_str().unwrap()]);
    let (t1, t2) = (tree(&s1), tree(&s2));
    let survey_same = o1.status.success() && o1.stdout == o2.stdout && t1 == t2 && !t1.is_empty();
    same &= survey_same;
    notes.push(format!("survey {} files {}", t1.len(), if survey_same { "identical" } else { "differ" }));

    for (solid, axis, angle) in
        [("cube", "1,-1,0", "0.9553"), ("octahedron", "0.3,0.2,1", "0.01"), ("prism-7", "0,0,1", "0")]
    {
        let a = rupert(&["shadow", solid, "--axis", axis, "--angle", angle]);
        let b = rupert(&["shadow", solid, "--axis", axis, "--angle", angle]);
        let ok = a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
        same &= ok;
        notes.push(format!("shadow {solid} {}", if ok { "identical" } else { "differs" }));
    }
    verdict("determinism", same, &notes.join(", "));
}

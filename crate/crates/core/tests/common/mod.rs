//! Independent reference implementations used to check the library.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rupert_core::geom::{Point2, Point3};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

type M3 = [[f64; 3]; 3];

fn mat_mul(a: &M3, b: &M3) -> M3 {
    let mut r = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                r[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    r
}

/// `exp(θ K)` for the cross-product matrix `K` of the unit axis, summed as
/// a Taylor series.
pub fn rotation_exp(axis: Point3, angle: f64) -> M3 {
    let n = axis.norm();
    let (x, y, z) = (axis.x / n * angle, axis.y / n * angle, axis.z / n * angle);
    let k: M3 = [[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]];
    let mut sum: M3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut term = sum;
    for i in 1..60 {
        term = mat_mul(&term, &k);
        for row in term.iter_mut() {
            for c in row.iter_mut() {
                *c /= i as f64;
            }
        }
        for r in 0..3 {
            for c in 0..3 {
                sum[r][c] += term[r][c];
            }
        }
    }
    sum
}

pub fn apply(m: &M3, p: Point3) -> Point3 {
    Point3::new(
        m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
        m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
        m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z,
    )
}

pub fn rotate_exp(axis: Point3, angle: f64, p: Point3) -> Point3 {
    apply(&rotation_exp(axis, angle), p)
}

/// Arc distance between directions.
pub fn arc(a: Point3, b: Point3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Longitude of `p` about `v` measured from the tangent direction of the
/// counterclockwise equator, by the right-hand rule about `v`.
pub fn longitude(v: Point3, p: Point3) -> f64 {
    let vh = v * (1.0 / v.norm());
    let toward_meridian = Point3::Z.cross(vh);
    let toward_p = p - vh * p.dot(vh);
    let s = vh.dot(toward_meridian.cross(toward_p));
    let c = toward_meridian.dot(toward_p);
    s.atan2(c).rem_euclid(std::f64::consts::TAU)
}

/// Difference of angles reduced into `(−π, π]`.
pub fn ang(a: f64, b: f64) -> f64 {
    let mut d = (a - b).rem_euclid(std::f64::consts::TAU);
    if d > std::f64::consts::PI {
        d -= std::f64::consts::TAU;
    }
    d
}

pub fn unit_vector(r: &mut impl Rng) -> Point3 {
    loop {
        let p = Point3::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let n = p.norm();
        if n > 0.1 && n <= 1.0 {
            return p * (1.0 / n);
        }
    }
}

/// Gift-wrapping hull, counterclockwise, collinear points dropped.
pub fn jarvis(points: &[Point2]) -> Vec<Point2> {
    let start = *points.iter().min_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))).unwrap();
    let mut hull = vec![start];
    let mut cur = start;
    loop {
        let mut cand = if points[0].dist(cur) > 0.0 { points[0] } else { points[1] };
        for &p in points {
            if p.dist(cur) == 0.0 {
                continue;
            }
            let c = (cand - cur).cross(p - cur);
            if c < 0.0 || (c == 0.0 && p.dist(cur) > cand.dist(cur)) {
                cand = p;
            }
        }
        if cand.dist(start) == 0.0 {
            break;
        }
        hull.push(cand);
        cur = cand;
        if hull.len() > points.len() + 1 {
            break;
        }
    }
    hull
}

/// Crossing-number point-in-polygon test for a closed vertex cycle.
pub fn inside(poly: &[Point2], p: Point2) -> bool {
    let n = poly.len();
    let mut c = false;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                c = !c;
            }
        }
    }
    c
}

/// Distance from `p` to the closed boundary cycle.
pub fn boundary_distance(poly: &[Point2], p: Point2) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let a = poly[i];
            let b = poly[(i + 1) % n];
            let e = b - a;
            let t = ((p - a).dot(e) / e.dot(e)).clamp(0.0, 1.0);
            p.dist(a + e * t)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Random points in general position on a sphere, enough to give a solid.
pub fn random_solid_points(r: &mut impl Rng, n: usize) -> Vec<Point3> {
    (0..n)
        .map(|_| {
            let u = unit_vector(r);
            u * r.gen_range(0.5..1.5)
        })
        .collect()
}

/// Random strictly convex polygon: sorted angles on a perturbed circle, hulled.
pub fn random_convex_points(r: &mut impl Rng, n: usize) -> Vec<Point2> {
    (0..n)
        .map(|_| {
            let a: f64 = r.gen_range(0.0..std::f64::consts::TAU);
            let rad: f64 = r.gen_range(0.3..2.0);
            Point2::new(rad * a.cos() + r.gen_range(-0.5..0.5), rad * a.sin())
        })
        .collect()
}

//! Seeded spot checks of the numerical core, for use on a new platform or
//! build. Certification itself never uses randomness.

use std::f64::consts::PI;
use std::io::Write;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rupert_core::geom::{conjugate_axis, contains_strict, shadow, Point3, Polyhedron, Rotation, EPS_GEOM};
use rupert_core::passage::verify_rupert;
use rupert_core::sphere::{t_of_d, tau_of_d, to_coords, BaseVertex};

pub struct CheckLine {
    pub name: &'static str,
    pub worst: f64,
    pub limit: f64,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        self.worst < self.limit
    }
}

fn unit(r: &mut ChaCha8Rng) -> Point3 {
    loop {
        let p = Point3::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        if let Some(u) = (p.norm() > 0.1).then(|| p.normalized()).flatten() {
            return u;
        }
    }
}

pub fn run(seed: u64, samples: usize) -> Vec<CheckLine> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let base = BaseVertex::new(Point3::X).expect("unit base");

    let (mut t_err, mut tau_err) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let d = r.gen_range(0.01..PI - 0.01);
        let delta = r.gen_range(0.01..PI - 0.01);
        let img = Rotation::new(Point3::new(d.cos(), d.sin(), 0.0), delta).expect("unit axis").apply(Point3::X);
        if let (Ok(c), Ok(tau)) = (to_coords(img, &base), tau_of_d(d, delta)) {
            t_err = t_err.max((c.d - t_of_d(d, delta)).abs());
            tau_err = tau_err.max(rupert_core::sphere::angle_diff(c.beta, tau).abs());
        }
    }

    let mut conj_err = 0.0f64;
    for _ in 0..samples {
        let b = Rotation::new(unit(&mut r), r.gen_range(-PI..PI)).expect("unit axis");
        let a = unit(&mut r);
        let gamma = r.gen_range(-PI..PI);
        let p = unit(&mut r) * r.gen_range(0.1..3.0);
        let lhs = conjugate_axis(&b, a, gamma).expect("unit axis").apply(p);
        let rhs = b.apply(Rotation::new(a, gamma).expect("unit axis").apply(b.inverse().apply(p)));
        conj_err = conj_err.max(lhs.dist(rhs));
    }

    // a vertex of the rotated shadow outside the shadow must show up on a
    // boundary sample, and a positive margin must leave every sample inside
    let mut disagreements = 0usize;
    for _ in 0..samples.min(200) {
        let pts: Vec<Point3> = (0..12).map(|_| unit(&mut r) * r.gen_range(0.5..1.5)).collect();
        let Ok(q) = Polyhedron::hull_of(&pts) else { continue };
        let rot = Rotation::new(unit(&mut r), r.gen_range(0.0..0.3)).expect("unit axis");
        let margin = verify_rupert(&q, &rot).expect("valid shadows");
        if margin.abs() <= EPS_GEOM {
            continue;
        }
        let (outer, inner) = (shadow(&q, &Rotation::identity()).expect("shadow"), shadow(&q, &rot).expect("shadow"));
        let inside = inner
            .edges()
            .all(|(a, b)| (0..=50).all(|k| contains_strict(&outer, a + (b - a) * (k as f64 / 50.0)) > 0.0));
        disagreements += usize::from(inside != (margin > 0.0));
    }

    vec![
        CheckLine { name: "t(d) against rotation", worst: t_err, limit: 1e-10 },
        CheckLine { name: "tau(d) against rotation", worst: tau_err, limit: 1e-9 },
        CheckLine { name: "conjugation rule", worst: conj_err, limit: 1e-12 },
        CheckLine { name: "vertex margin against boundary samples", worst: disagreements as f64, limit: 0.5 },
    ]
}

pub fn report(lines: &[CheckLine], out: &mut dyn Write) -> bool {
    for l in lines {
        let _ = writeln!(
            out,
            "{} {} (worst {:.3e}, limit {:.1e})",
            if l.passed() { "PASS" } else { "FAIL" },
            l.name,
            l.worst,
            l.limit
        );
    }
    lines.iter().all(CheckLine::passed)
}

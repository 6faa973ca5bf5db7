//! Latitude/longitude coordinates on the sphere through an equatorial base
//! vertex `v`, the side and angle functions of the isosceles spherical
//! triangle, the map `J_v: a ↦ ρ_a^δ(v)` and the axis curve `F`.
//!
//! Frame: `u = v/|v|`, `w = ẑ × u`, `n = ẑ`. A point at latitude `d` and
//! longitude `β` is `|v|·(cos d·u + sin d·(cos β·w + sin β·n))`. Longitude
//! zero is the meridian (the equator arc counterclockwise from `v`), and
//! longitude grows by the right-hand rule about `v`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Point3, Rotation, EPS_GEOM};

/// Coordinates are refused within this arc distance of `v` or `−v`.
pub const POLE_GUARD: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SphereError {
    #[error("latitude {0} is too close to the base vertex or its antipode")]
    DegenerateLatitude(f64),
    #[error("target latitude {target} does not match t(d) = {expected}")]
    LatitudeMismatch { target: f64, expected: f64 },
    #[error("base vertex must lie on the equator with positive radius")]
    InvalidBase,
    #[error("point is not on the sphere (|p| = {norm}, radius {radius})")]
    NotOnSphere { norm: f64, radius: f64 },
    #[error("rotation angle {0} outside (0, π)")]
    InvalidDelta(f64),
}

/// Latitude `d ∈ [0, π]`, longitude `beta ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalCoord {
    pub d: f64,
    pub beta: f64,
}

impl SphericalCoord {
    /// Reduces `beta` mod 2π; rejects `d` outside `[0, π]`.
    pub fn new(d: f64, beta: f64) -> Result<Self, SphereError> {
        if !(0.0..=PI).contains(&d) || !beta.is_finite() {
            return Err(SphereError::DegenerateLatitude(d));
        }
        Ok(Self { d, beta: wrap_tau(beta) })
    }
}

/// Reduce into `[0, 2π)`.
pub fn wrap_tau(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed difference `a − b` reduced into `(−π, π]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    crate::geom::wrap_angle(a - b)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaseVertex {
    v: Point3,
    radius: f64,
    u: Point3,
    w: Point3,
}

impl BaseVertex {
    pub fn new(v: Point3) -> Result<Self, SphereError> {
        let radius = v.norm();
        if !v.is_finite() || radius <= EPS_GEOM || v.z.abs() > EPS_GEOM * radius.max(1.0) {
            return Err(SphereError::InvalidBase);
        }
        let u = Point3::new(v.x / radius, v.y / radius, 0.0);
        let w = Point3::new(-u.y, u.x, 0.0);
        Ok(Self { v, radius, u, w })
    }

    #[inline]
    pub fn v(&self) -> Point3 {
        self.v
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Positive pole of the coordinate system (`radius · ẑ`).
    pub fn pole(&self) -> Point3 {
        Point3::Z * self.radius
    }

    /// Point of the meridian at latitude `d`.
    pub fn meridian_point(&self, d: f64) -> Point3 {
        (self.u * d.cos() + self.w * d.sin()) * self.radius
    }

    pub fn antipode(&self) -> BaseVertex {
        BaseVertex::new(-self.v).expect("antipode of a valid base")
    }
}

fn check_delta(delta: f64) -> Result<(), SphereError> {
    if delta > 0.0 && delta < PI {
        Ok(())
    } else {
        Err(SphereError::InvalidDelta(delta))
    }
}

/// Third side of the isosceles spherical triangle with legs `d` and apex
/// angle `delta`: `cos t = cos²d + sin²d·cos δ`, evaluated in the
/// cancellation-free form `sin(t/2) = sin d·sin(δ/2)`.
pub fn t_of_d(d: f64, delta: f64) -> f64 {
    let s = (d.sin() * (0.5 * delta).sin()).abs().min(1.0);
    2.0 * s.asin()
}

/// Longitude shift of `J_v` at latitude `d`: minus the base angle of the
/// isosceles triangle with legs `d` and apex angle `delta`.
pub fn tau_of_d(d: f64, delta: f64) -> Result<f64, SphereError> {
    if !(d > 0.0 && d < PI) {
        return Err(SphereError::DegenerateLatitude(d));
    }
    let half = (0.5 * delta).sin();
    let one_minus_cos = 2.0 * half * half;
    Ok(-delta.sin().atan2(d.cos() * one_minus_cos))
}

/// Latitude and longitude of `p` relative to `base`.
pub fn to_coords(p: Point3, base: &BaseVertex) -> Result<SphericalCoord, SphereError> {
    let norm = p.norm();
    if !p.is_finite() || (norm - base.radius).abs() >= EPS_GEOM * base.radius.max(1.0) {
        return Err(SphereError::NotOnSphere { norm, radius: base.radius });
    }
    let cu = p.dot(base.u);
    let cw = p.dot(base.w);
    let cn = p.z;
    let d = cw.hypot(cn).atan2(cu);
    if !(POLE_GUARD..=PI - POLE_GUARD).contains(&d) {
        return Err(SphereError::DegenerateLatitude(d));
    }
    Ok(SphericalCoord { d, beta: wrap_tau(cn.atan2(cw)) })
}

/// Inverse of [`to_coords`].
pub fn from_coords(c: SphericalCoord, base: &BaseVertex) -> Point3 {
    let (sd, cd) = c.d.sin_cos();
    let (sb, cb) = c.beta.sin_cos();
    (base.u * cd + (base.w * cb + Point3::Z * sb) * sd) * base.radius
}

/// `J_v(a) = ρ_a^δ(v)`, with `a` taken as an axis direction.
pub fn j_map(a: Point3, base: &BaseVertex, delta: f64) -> Result<Point3, SphereError> {
    check_delta(delta)?;
    let r = Rotation::new(a, delta).map_err(|_| SphereError::NotOnSphere { norm: a.norm(), radius: base.radius })?;
    Ok(r.apply(base.v))
}

/// `J_v` in coordinates: `(d, β) ↦ (t(d), τ(d) + β mod 2π)`.
pub fn j_coords(c: SphericalCoord, delta: f64) -> Result<SphericalCoord, SphereError> {
    let tau = tau_of_d(c.d, delta)?;
    Ok(SphericalCoord { d: t_of_d(c.d, delta), beta: wrap_tau(tau + c.beta) })
}

/// The unique axis at latitude `d` mapped by `J_v` onto `target`.
pub fn fiber_inverse(
    target: SphericalCoord,
    _base: &BaseVertex,
    delta: f64,
    d: f64,
) -> Result<SphericalCoord, SphereError> {
    check_delta(delta)?;
    let expected = t_of_d(d, delta);
    if (target.d - expected).abs() >= EPS_GEOM {
        return Err(SphereError::LatitudeMismatch { target: target.d, expected });
    }
    let tau = tau_of_d(d, delta)?;
    Ok(SphericalCoord { d, beta: wrap_tau(target.beta - tau) })
}

/// Which half of the vertical great circle through `v` the image lands on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `J_v(a)` above the equator.
    Up,
    /// `J_v(a)` below the equator.
    Down,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Up, Branch::Down];
}

/// The axis at latitude `d` whose `J_v`-image lies on the vertical great
/// circle through `v` (so it projects onto the line through `v` and the
/// origin).
pub fn f_curve_axis(base: &BaseVertex, delta: f64, d: f64, branch: Branch) -> Result<Point3, SphereError> {
    check_delta(delta)?;
    let tau = tau_of_d(d, delta)?;
    let target = match branch {
        Branch::Up => FRAC_PI_2,
        Branch::Down => -FRAC_PI_2,
    };
    Ok(from_coords(SphericalCoord { d, beta: wrap_tau(target - tau) }, base))
}

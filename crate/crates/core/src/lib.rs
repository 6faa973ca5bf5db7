//! Certificates for local Rupert and local reverse-Rupert passages of
//! convex polyhedra.
//!
//! A polyhedron whose horizontal section is a polygon that splits into two
//! nontrivial arches along a chord admits arbitrarily small rotations that
//! shrink its shadow strictly inside itself. If the section instead
//! extends to a prism, the inverse rotations grow the shadow. This crate
//! finds such sections, builds the rotations and verifies them with an
//! explicit containment margin.

// range checks are negated so that NaN fails them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod geom;
pub mod passage;
pub mod polygon;
pub mod sections;
pub mod sphere;

pub use geom::{ConvexPolygon2, Point2, Point3, Polyhedron, RigidMotion, Rotation, EPS_GEOM};
pub use passage::{certify_theorem_a, certify_theorem_b, Certificate, CertificateRecord, PassageKind, SearchConfig};

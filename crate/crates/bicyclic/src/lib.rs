//! Centrally symmetric polytopes spanned by the symmetric moment curve.
//!
//! The curve `SM_2k(t) = (cos t, sin t, cos 3t, sin 3t, ..., cos (2k-1)t, sin (2k-1)t)`
//! uses only odd frequencies, so `SM_2k(t + pi) = -SM_2k(t)` and the convex
//! hull of its image is centrally symmetric. Taking the hull of finitely many
//! curve points gives a bicyclic polytope. This crate constructs those
//! polytopes, decides face questions with LP certificates, analyzes the
//! associated trigonometric and self-inversive polynomials, enumerates faces
//! into f- and h-vectors, and checks the resulting counts against closed-form
//! bounds.
//!
//! Module map:
//!
//! * [`circle`] — angles, arcs, and centrally symmetric finite subsets of S^1
//! * [`curve`] — evaluation and derivatives of `SM_2k`, non-flatness checks
//! * [`poly`] — raked trigonometric polynomials, raked self-inversive
//!   polynomials, root multisets, and the root deformation
//! * [`lp`] — a small dense two-phase simplex solver
//! * [`oracle`] — LP-backed face decision procedures and edge-threshold
//!   estimation
//! * [`census`] — polytope construction, face enumeration, f/h-vectors, and
//!   bound formulas
//! * [`fixtures`] — committed brute-force hull oracles used by tests and the
//!   verification suites
//! * [`suites`] — named verification suites driven by the CLI

pub mod census;
pub mod circle;
pub mod curve;
pub mod fixtures;
pub mod lp;
pub mod oracle;
pub mod poly;
pub mod suites;

pub use census::{FaceCensus, HVector, Polytope};
pub use circle::{arc_distance, AnglePoint, Arc, SymmetricPointSet};
pub use curve::CurvePoint;
pub use oracle::{BodyCertOutcome, FaceCertificate, IsFaceOutcome};
pub use poly::{RakedTrigPoly, RootMultiset, SelfInvPoly};

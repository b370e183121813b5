//! Points, arcs, and centrally symmetric finite subsets of the unit circle.
//!
//! Angles live on S^1 = R / 2πZ and are stored as canonical radians in
//! `[0, 2π)`. Two angles closer than [`ANGLE_DEDUP_TOL`] (in arc distance)
//! are treated as the same point.

use std::f64::consts::{PI, TAU};

use thiserror::Error;

/// Two angles within this arc distance are considered the same point.
pub const ANGLE_DEDUP_TOL: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum CircleError {
    #[error("point count must be even and at least 2, got {0}")]
    BadCount(usize),
    #[error("input point set is empty")]
    Empty,
    #[error("points at angles {0} and {1} coincide within tolerance")]
    NearCoincident(f64, f64),
}

/// A point of S^1, kept as its canonical representative in `[0, 2π)`.
#[derive(Copy, Clone, Debug, PartialEq, PartialOrd)]
pub struct AnglePoint(f64);

impl AnglePoint {
    pub fn new(theta: f64) -> Self {
        let mut r = theta.rem_euclid(TAU);
        // rem_euclid can round up to 2π for tiny negative inputs
        if r >= TAU {
            r = 0.0;
        }
        AnglePoint(r)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// The antipodal point `t + π`.
    pub fn antipode(self) -> Self {
        AnglePoint::new(self.0 + PI)
    }

    pub fn rotate(self, tau: f64) -> Self {
        AnglePoint::new(self.0 + tau)
    }
}

impl From<f64> for AnglePoint {
    fn from(theta: f64) -> Self {
        AnglePoint::new(theta)
    }
}

/// Length of the shorter arc between two circle points, in `[0, π]`.
pub fn arc_distance(a: AnglePoint, b: AnglePoint) -> f64 {
    let d = (a.0 - b.0).abs();
    d.min(TAU - d)
}

/// A closed arc of S^1, described by its start point and length.
#[derive(Copy, Clone, Debug)]
pub struct Arc {
    pub start: AnglePoint,
    pub length: f64,
}

impl Arc {
    pub fn new(start: impl Into<AnglePoint>, length: f64) -> Self {
        Arc {
            start: start.into(),
            length,
        }
    }

    /// Whether `t` lies on the arc (inclusive, up to the dedup tolerance).
    pub fn contains(&self, t: AnglePoint) -> bool {
        let offset = (t.radians() - self.start.radians()).rem_euclid(TAU);
        offset <= self.length + ANGLE_DEDUP_TOL
    }

    /// The antipodal arc `Ω + π`.
    pub fn antipode(&self) -> Arc {
        Arc {
            start: self.start.antipode(),
            length: self.length,
        }
    }
}

/// A finite subset of S^1 closed under the antipodal map, sorted by angle.
#[derive(Clone, Debug)]
pub struct SymmetricPointSet {
    points: Vec<AnglePoint>,
}

impl SymmetricPointSet {
    /// `n` equally spaced points `2πj/n`; `n` even makes the set
    /// antipode-closed.
    pub fn equally_spaced(n: usize) -> Result<Self, CircleError> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(CircleError::BadCount(n));
        }
        let points = (0..n)
            .map(|j| AnglePoint::new(TAU * j as f64 / n as f64))
            .collect();
        Ok(SymmetricPointSet { points })
    }

    /// The union `Y ∪ (Y + π)`, sorted. Rejects inputs where two points of
    /// the union coincide within tolerance (e.g. `Y` already containing an
    /// antipodal pair).
    pub fn symmetrize(y: &[AnglePoint]) -> Result<Self, CircleError> {
        if y.is_empty() {
            return Err(CircleError::Empty);
        }
        let mut points: Vec<AnglePoint> = y
            .iter()
            .flat_map(|&t| [AnglePoint::new(t.radians()), t.antipode()])
            .collect();
        points.sort_by(|a, b| a.partial_cmp(b).expect("angles are finite"));
        for w in points.windows(2) {
            if arc_distance(w[0], w[1]) < ANGLE_DEDUP_TOL {
                return Err(CircleError::NearCoincident(w[0].radians(), w[1].radians()));
            }
        }
        // wraparound pair
        if points.len() > 1 {
            let (first, last) = (points[0], *points.last().unwrap());
            if arc_distance(first, last) < ANGLE_DEDUP_TOL {
                return Err(CircleError::NearCoincident(first.radians(), last.radians()));
            }
        }
        Ok(SymmetricPointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[AnglePoint] {
        &self.points
    }

    /// Checks antipode closure (used by tests and by polytope construction).
    pub fn is_antipode_closed(&self) -> bool {
        self.points.iter().all(|&t| {
            let a = t.antipode();
            self.points
                .iter()
                .any(|&s| arc_distance(s, a) < ANGLE_DEDUP_TOL)
        })
    }
}

//! Newton polygons of two-variable phases: distance `d`, multiplicity `m`,
//! and the decay law `t^{−1/d}(log t)^{m−1}` they predict.
//!
//! Flat terms have no Taylor support and are invisible here.

use crate::asymptotics::ScalingLaw;
use crate::error::{Error, Result};

/// Exponents `(a₁, a₂)` of the Taylor monomials of a phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    points: Vec<(u32, u32)>,
}

impl SupportSet {
    /// Duplicates are merged; the origin is rejected since `f(0) = 0`.
    pub fn new(mut points: Vec<(u32, u32)>) -> Result<Self> {
        if points.contains(&(0, 0)) {
            return Err(Error::Precondition(
                "the origin cannot be in the support of a phase with f(0) = 0".into(),
            ));
        }
        points.sort_unstable();
        points.dedup();
        Ok(SupportSet { points })
    }

    pub fn points(&self) -> &[(u32, u32)] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonData {
    /// Vertices ordered by increasing `a₁` (and decreasing `a₂`).
    pub vertices: Vec<(u32, u32)>,
    pub d: f64,
    pub m: u32,
}

fn cross(o: (u32, u32), a: (u32, u32), b: (u32, u32)) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

/// Vertices of `Γ₊ = conv(∪ (a + ℝ₊²))`.
pub fn polyhedron(support: &SupportSet) -> Result<Vec<(u32, u32)>> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    // sorted by a₁; keep the points not dominated from the lower left
    let mut minimal: Vec<(u32, u32)> = Vec::new();
    for &pt in support.points() {
        if minimal.last().is_none_or(|last| pt.1 < last.1) {
            minimal.push(pt);
        }
    }
    // lower hull of the staircase, dropping collinear points
    let mut hull: Vec<(u32, u32)> = Vec::new();
    for pt in minimal {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    Ok(hull)
}

/// Where the diagonal meets the boundary of `Γ₊`.
pub fn newton_distance(vertices: &[(u32, u32)]) -> Result<NewtonData> {
    let (Some(&first), Some(&last)) = (vertices.first(), vertices.last()) else {
        return Err(Error::EmptySupport);
    };
    let done = |d: f64, m: u32| {
        Ok(NewtonData {
            vertices: vertices.to_vec(),
            d,
            m,
        })
    };
    if let Some(v) = vertices.iter().find(|v| v.0 == v.1) {
        return done(v.0 as f64, 2);
    }
    if first.0 > first.1 {
        // vertical ray above the first vertex
        return done(first.0 as f64, 1);
    }
    if last.1 > last.0 {
        // horizontal ray right of the last vertex
        return done(last.1 as f64, 1);
    }
    for w in vertices.windows(2) {
        let (x1, y1) = (w[0].0 as f64, w[0].1 as f64);
        let (x2, y2) = (w[1].0 as f64, w[1].1 as f64);
        if x1 < y1 && x2 > y2 {
            let s = (y1 - x1) / ((y1 - x1) - (y2 - x2));
            return done(x1 + s * (x2 - x1), 1);
        }
    }
    Err(Error::Precondition(
        "vertex list is not a Newton staircase".into(),
    ))
}

pub fn newton_data(support: &SupportSet) -> Result<NewtonData> {
    newton_distance(&polyhedron(support)?)
}

/// `t^{1/d}(log t)^{−(m−1)}`.
pub fn predicted_law(d: f64, m: u32) -> Result<ScalingLaw> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::Domain {
            function: "predicted_law",
            value: d,
        });
    }
    if !(1..=2).contains(&m) {
        return Err(Error::Domain {
            function: "predicted_law",
            value: m as f64,
        });
    }
    ScalingLaw::new(1.0 / d, 1.0 - m as f64)
}

//! Pass/fail records shared by the verification suites.

use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    /// Name of the identity being checked.
    pub anchor: String,
    pub passed: bool,
    pub lhs: String,
    pub rhs: String,
    /// 0 for exact identities that hold, otherwise a distance or 1.
    pub delta: f64,
    pub wall_time: f64,
}

impl Check {
    /// Exact comparison of two displayable values.
    pub fn exact<T: PartialEq + std::fmt::Display>(id: &str, anchor: &str, lhs: &T, rhs: &T, start: Instant) -> Check {
        let passed = lhs == rhs;
        Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            passed,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            delta: if passed { 0.0 } else { 1.0 },
            wall_time: start.elapsed().as_secs_f64(),
        }
    }

    /// A boolean property with a short description on each side.
    pub fn holds(id: &str, anchor: &str, passed: bool, lhs: String, rhs: String, start: Instant) -> Check {
        Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            passed,
            lhs,
            rhs,
            delta: if passed { 0.0 } else { 1.0 },
            wall_time: start.elapsed().as_secs_f64(),
        }
    }

    /// Numerical comparison with a tolerance on `delta`.
    pub fn within(id: &str, anchor: &str, lhs: String, rhs: String, delta: f64, tol: f64, start: Instant) -> Check {
        Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            passed: delta.is_finite() && delta < tol,
            lhs,
            rhs,
            delta,
            wall_time: start.elapsed().as_secs_f64(),
        }
    }
}

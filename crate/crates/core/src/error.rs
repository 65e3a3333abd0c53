use thiserror::Error;

use crate::vector::FsVector;

/// Whether a violated constraint was an inequality (`<a,x> >= 0`) or an
/// equation (`<a,x> = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    Inequality,
    Equation,
}

/// A constraint of a cone together with the value it took on the offending
/// vector. Serves as the certificate of non-membership.
#[derive(Debug, Clone)]
pub struct ViolatedConstraint {
    pub kind: ConstraintKind,
    pub normal: FsVector,
    /// `<normal, v>` as a reduced fraction string.
    pub value: String,
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not a permutation of 1..={degree}: {reason}")]
    BadPermutation { degree: usize, reason: String },

    /// Input violates a documented precondition (nonnegativity, integrality,
    /// zero target, and the like). Maps to CLI exit code 3.
    #[error("rejected input: {0}")]
    Rejected(String),

    /// A claimed membership is false; carries the violated constraint.
    /// Maps to CLI exit code 2.
    #[error("not a member: <{normal_display}, v> = {value} violates {kind_display}")]
    NotMember {
        constraint: ViolatedConstraint,
        normal_display: String,
        value: String,
        kind_display: &'static str,
    },

    /// An orbit enumeration would exceed the configured cap.
    /// Maps to CLI exit code 4.
    #[error("orbit of size {required} exceeds cap {cap}; raise --orbit-cap to proceed")]
    OrbitCap { required: u128, cap: usize },

    /// A combinatorial search exhausted its step budget. `best_bound` is the
    /// best bound the search had established before stopping, when any.
    /// Maps to CLI exit code 4.
    #[error("search budget of {budget} steps exhausted{}", match best_bound {
        Some(k) => format!("; best bound found so far: {k}"),
        None => String::new(),
    })]
    Budget { budget: u64, best_bound: Option<usize> },

    /// Exact solvers disagreed with a certified precondition. Indicates a bug,
    /// never user error.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn not_member(kind: ConstraintKind, normal: FsVector, value: String) -> Self {
        let kind_display = match kind {
            ConstraintKind::Inequality => "an inequality (>= 0 required)",
            ConstraintKind::Equation => "an equation (= 0 required)",
        };
        let normal_display = normal.to_string();
        Error::NotMember {
            constraint: ViolatedConstraint { kind, normal, value: value.clone() },
            normal_display,
            value,
            kind_display,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

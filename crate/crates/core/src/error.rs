use thiserror::Error;

use crate::group::{GroupId, StatKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("statistic `{stat}` is not applicable to {target}")]
    StatNotApplicable { stat: StatKind, target: String },

    #[error("{window} is not a member of {group}")]
    NotAMember { window: String, group: GroupId },

    #[error("degree {n} exceeds the configured cap {cap}")]
    ResourceLimit { n: usize, cap: usize },

    #[error("degree {n} is outside the valid range of {what}")]
    DegreeOutOfRange { n: usize, what: String },

    #[error("value {0} does not occur in the window")]
    ValueAbsent(i32),

    #[error("{0}")]
    Unsupported(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("distribution has zero total mass")]
    ZeroMass,

    #[error("distribution has a negative coefficient")]
    NegativeMass,

    #[error("degenerate distribution: standard deviation is zero")]
    Degenerate,

    #[error("class 1 is fixed by the involution; no map is defined there")]
    FixedClass,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

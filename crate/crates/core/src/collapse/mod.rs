//! Elementary collapses, the degree-condition collapse algorithm, a greedy
//! fallback and certificate verification.

mod engine;
mod verify;
mod working;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CollapseError;
use crate::relevant::RelevantSubcomplex;
use crate::simplex::Simplex;

pub use engine::{
    collapse_link_to_dim, collapse_to_dim, cone_collapse, expand_interval, find_free_faces,
    lift_steps,
};
pub use verify::{verify_certificate, Verification};
pub use working::{elementary_collapse, WorkingComplex};

/// Removal of a free face together with its unique maximal coface one
/// dimension up.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CollapseStep {
    #[serde(rename = "free")]
    pub free_face: Simplex,
    pub coface: Simplex,
}

impl CollapseStep {
    pub fn new(free_face: Simplex, coface: Simplex) -> Result<Self, CollapseError> {
        if coface.len() != free_face.len() + 1 || !free_face.is_subset_of(&coface) {
            return Err(CollapseError::NotProperFace {
                sigma: free_face,
                tau: coface,
            });
        }
        Ok(CollapseStep { free_face, coface })
    }

    pub fn is_elementary(&self) -> bool {
        self.coface.len() == self.free_face.len() + 1 && self.free_face.is_subset_of(&self.coface)
    }
}

impl fmt::Display for CollapseStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.free_face, self.coface)
    }
}

/// Ordered elementary collapses taking a clique complex to dimension at
/// most `k`, i.e. witnessing that it is (k+1)-collapsible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseCertificate {
    pub k: usize,
    pub fingerprint: String,
    pub steps: Vec<CollapseStep>,
    pub final_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollapseOutcome {
    Success(CollapseCertificate),
    /// The theorem strategy reports the relevant subcomplex in which no
    /// vertex had small enough degree. Greedy failures carry no witness and
    /// mean "unknown", not "not collapsible".
    Failure {
        witness: Option<RelevantSubcomplex>,
    },
}

impl CollapseOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, CollapseOutcome::Success(_))
    }

    pub fn certificate(&self) -> Option<&CollapseCertificate> {
        match self {
            CollapseOutcome::Success(c) => Some(c),
            CollapseOutcome::Failure { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Theorem,
    Greedy,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "theorem" => Ok(Strategy::Theorem),
            "greedy" => Ok(Strategy::Greedy),
            other => Err(format!(
                "unknown strategy {other:?} (expected theorem|greedy)"
            )),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Theorem => "theorem",
            Strategy::Greedy => "greedy",
        })
    }
}

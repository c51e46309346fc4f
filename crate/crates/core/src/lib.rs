//! Clique complexes, elementary collapses with checkable certificates, and
//! the degree condition that guarantees collapsibility to dimension k.
//!
//! ```
//! use flagcollapse::{collapse_to_dim, fixtures, verify_certificate, Strategy};
//!
//! let c = fixtures::simplex_complex(2);
//! let outcome = collapse_to_dim(&c, 1, Strategy::Theorem).unwrap();
//! let cert = outcome.certificate().unwrap();
//! assert_eq!(cert.steps.len(), 1);
//! assert_eq!(verify_certificate(&c, cert).unwrap().final_dim, 1);
//! ```

pub mod collapse;
pub mod complex;
pub mod condition;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod graph;
pub mod homology;
pub mod relevant;
pub mod sampler;
pub mod simplex;

pub use collapse::{
    collapse_to_dim, verify_certificate, CollapseCertificate, CollapseOutcome, CollapseStep,
    Strategy,
};
pub use complex::{clique_complex, CliqueComplex};
pub use condition::{brute_force_condition, check_condition, ConditionReport, ConditionStatus};
pub use graph::Graph;
pub use homology::{homology_profile, HomologyProfile, SimplicialComplex};
pub use relevant::RelevantSubcomplex;
pub use simplex::{Simplex, Vertex};

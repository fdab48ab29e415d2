//! Sparsity measures and the axiomatic criteria used to compare them.
//!
//! The crate is organised bottom-up:
//!
//! * [`measures`] evaluates fifteen sparsity measures (plus the Lorenz curve)
//!   on a [`CoefficientVector`].
//! * [`transforms`] builds the six criterion transformations (Robin Hood,
//!   scaling, rising tide, cloning, Bill Gates, babies) as explicit
//!   before/after trials, including a seeded random trial generator.
//! * [`compliance`] decides measure-vs-criterion compliance from fixed
//!   counter-examples and randomized falsification search.
//! * [`experiments`] runs the Poisson-convergence and Bernoulli-sweep studies,
//!   component-contribution curves and the distributional Gini index.
//! * [`cli`] is the command-line front end behind the `sparsity` binary.
//!
//! Randomized checks can only falsify a criterion. A cell reported as
//! `NoViolationFound` is evidence of compliance, never a proof.

pub mod cli;
pub mod compliance;
pub mod experiments;
pub mod measures;
pub mod quadrature;
pub mod rng;
pub mod transforms;

pub use compliance::{
    check_cell, full_table, relation_holds, run_counterexamples, theorem_consistency, CellVerdict,
    ComplianceError, ComplianceMatrix, ComplianceReport, ExpectedComplianceTable, Verdict,
};
pub use measures::{
    evaluate, gini, lorenz_curve, CoefficientVector, LorenzCurve, MeasureError, MeasureId,
    MeasureParams, MeasureSpec,
};
pub use transforms::{CriterionId, CriterionTrial, GeneratorConfig, Relation, TransformError};

//! Exact arithmetic for translated base-n grids.
//!
//! The library classifies rational numbers by how close their multiples
//! n^m x come to integers (far numbers, decided through digit ties), builds
//! grid representations G(shift, location) whose coarse generations are
//! steered by an n-adic digit sequence, decides adjacency of two grids from
//! the exact limit points of their endpoint discrepancy, and answers
//! covering queries with the minimal cell, a ratio, and adversarial queries
//! that push the ratio past any threshold when the shift gap is not far.
//! All values are arbitrary-precision rationals; no float appears anywhere.

pub mod adjacency;
pub mod cover;
pub mod digits;
pub mod error;
pub mod expansion;
pub mod far;
pub mod grid;
mod periodic;
pub mod rational;
pub mod serde_util;

pub use adjacency::{
    endpoint_separation, grid_endpoint_separation, is_adjacent, is_adjacent_standard_translate,
    limit_profile, rerepresent, representation_invariance, AdjacencyReport, FailingCondition,
    InvarianceReport, LimitProfile, ProfileRelation,
};
pub use cover::{
    adversarial_witness, core_point, cover, cover_constant_estimate, oracle_cover, CoverResult,
    EstimateSummary, GridSource, Query, WitnessReport,
};
pub use digits::DigitSequence;
pub use error::{Error, Result};
pub use expansion::{expand, BaseNExpansion};
pub use far::{
    bounded_tie_analysis, certificate, compute_c, compute_d, density_probe, family_grid_offset,
    family_one_over_prime, is_n_far, tie_length, DigitStream, FarnessCertificate, StreamReport,
    StreamVerdict, TieReport, TieValue, TieWitness,
};
pub use grid::{
    canonicalize, offset_closed_forms, reps_equal, standard_grid, translated_standard_grid,
    verify_grid_axioms, GridRep, Interval,
};
pub use rational::{format_rational, parse_rational, Base, Rational, SigmaPair};

//! Symmetrization laboratory: exact and float representations of compact
//! sets in R^1..R^3, Minkowski/fiber/Steiner symmetrization, iteration
//! schedules and boundary-sum checks.

pub mod boundary;
pub mod dyadic;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod sequences;
pub mod sets;
pub mod symmetrize;

pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use linalg::{rotation_2d, Isometry, Subspace, Vector};
pub use scalar::{Scalar, Tolerance, DEFAULT_TOLERANCE};
pub use sets::grid::GridSet;
pub use sets::intervals::IntervalUnion;
pub use sets::point_set::FinitePointSet;
pub use sets::polygon::ConvexPolygon;
pub use sets::text::{format_set, parse_set};
pub use sets::SetRep;
pub use symmetrize::{
    apply_operator, blaschke_rotation_mean, central_symmetrize, fiber_symmetrize, isometry_mean, minkowski_symmetrize,
    steiner_symmetrize_grid, Operator,
};
pub use sequences::{
    run_schedule, run_schedule_with, ConvergenceReport, IdempotencyWitness, RunOptions, Schedule, ScheduleSpec,
    StepRecord, StopReason,
};
pub use boundary::{
    boundary_sum_check, common_boundary_witness, external_boundary, fiber_klain_run, grid_boundary, klartag_rounding_run,
    one_step_convexification_check,
};

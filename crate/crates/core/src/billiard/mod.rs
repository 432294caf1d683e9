//! Event-driven billiards with a time-shifted wormhole, and a solver for the
//! self-consistent evolutions of one initial state.

pub mod config;
mod model;
pub mod oracle;
pub mod output;
mod physics;
mod residual;
mod sim;
mod solver;
mod vec2;

use thiserror::Error;

pub use model::{scaled_distance, AnsatzParams, BallState, BilliardConfig, Domain, FrameMap, Scales, WormholeSpec};
pub use physics::{advance_free, at_time, collide_elastic, first_contact, wormhole_map, wormhole_map_forward};
pub use residual::{consistency_residual, in_scope, Infeasible, Residual};
pub use sim::{simulate, BallTrack, Entry, Event, EventKind, Mouth, Sample, SimOutcome};
pub use solver::{solve_self_consistent, ConsistentSolution, SolutionKind, SolveReport, SolverOptions};
pub use vec2::Vec2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BilliardError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid ansatz parameters: {0}")]
    Params(String),
    #[error("balls not in contact: centers {distance} apart, radii sum {expected}")]
    NotInContact { distance: f64, expected: f64 },
    #[error("balls are receding")]
    Receding,
    #[error("entry point is {distance} from the mouth center, rim radius {radius}")]
    NotOnRim { distance: f64, radius: f64 },
    #[error("velocity does not point into the mouth")]
    NotIngoing,
    #[error("event time could not be resolved in [{lo}, {hi}]")]
    EventTime { lo: f64, hi: f64 },
    #[error("more than {0} events")]
    Runaway(usize),
}

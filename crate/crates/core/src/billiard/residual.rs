use super::physics::wormhole_map;
use super::sim::simulate;
use super::{AnsatzParams, BilliardConfig, BilliardError, EventKind, SimOutcome};
use crate::scalar::{wrap_angle, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Infeasible {
    /// Nothing enters mouth B after the release.
    NoEntry,
    /// The released ball starts inside another ball.
    SpawnOverlap,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Residual<F> {
    /// Dimensionless `(time, rim angle, direction, speed)` mismatch between
    /// the assumed exit and the exit implied by the mouth-B entry.
    Value([F; 4], SimOutcome<F>),
    Infeasible(Infeasible),
}

impl<F: Scalar> Residual<F> {
    pub fn norm(&self) -> Option<F> {
        match self {
            Residual::Value(r, _) => Some(r.iter().fold(F::zero(), |s, x| s + *x * *x).sqrt()),
            Residual::Infeasible(_) => None,
        }
    }

    pub fn vector(&self) -> Option<[F; 4]> {
        match self {
            Residual::Value(r, _) => Some(*r),
            Residual::Infeasible(_) => None,
        }
    }
}

/// Releases a ball from mouth A per `p`, follows the evolution to the first
/// subsequent mouth-B entry of any ball, and compares the exit that entry
/// maps to with `p`.
pub fn consistency_residual<F: Scalar>(
    c: &BilliardConfig<F>,
    p: &AnsatzParams<F>,
    max_events: usize,
) -> Result<Residual<F>, BilliardError> {
    let out = simulate(c, Some(p), max_events)?;
    if out.spawn_overlap {
        return Ok(Residual::Infeasible(Infeasible::SpawnOverlap));
    }
    let Some(entry) = out.claimed else {
        return Ok(Residual::Infeasible(Infeasible::NoEntry));
    };
    let (exit, _) = wormhole_map(&c.wormhole, &entry.state, entry.state.birth_time)?;
    let q = AnsatzParams::from_exit_state(&c.wormhole, &exit);
    let sc = c.scales();
    let r = [
        (q.exit_time - p.exit_time) / sc.time,
        wrap_angle(q.exit_angle - p.exit_angle),
        wrap_angle(q.exit_direction - p.exit_direction),
        (q.exit_speed - p.exit_speed) / sc.speed,
    ];
    Ok(Residual::Value(r, out))
}

/// One claimed traversal, no other backward or forward traversal, at most one
/// collision.
pub fn in_scope<F: Scalar>(o: &SimOutcome<F>) -> bool {
    o.unclaimed.is_empty() && o.forward_traversals == 0 && o.count(EventKind::Collision) <= 1
}

//! Finite ortholattices and their quantum-logic checks, proposition logics
//! generated by sets of manifold classes, their spin-1/2 subspace
//! representation, and a wormhole billiard with self-consistent evolutions.
//!
//! Numeric types are generic over [`scalar::Scalar`] (`f32` or `f64`); the
//! aliases below fix them to `f64`.

pub mod billiard;
pub mod hilbert;
pub mod lattice;
pub mod manifold;
pub mod scalar;

pub type Vec2 = billiard::Vec2<f64>;
pub type BallState = billiard::BallState<f64>;
pub type WormholeSpec = billiard::WormholeSpec<f64>;
pub type BilliardConfig = billiard::BilliardConfig<f64>;
pub type AnsatzParams = billiard::AnsatzParams<f64>;
pub type SolverOptions = billiard::SolverOptions<f64>;
pub type ConsistentSolution = billiard::ConsistentSolution<f64>;
pub type Subspace = hilbert::Subspace<f64>;
pub type SubspaceLattice = hilbert::SubspaceLattice<f64>;

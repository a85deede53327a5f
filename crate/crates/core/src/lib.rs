//! Model-free Nash equilibrium seeking for quadratic noncooperative games.
//!
//! Every player runs the bounded-update-rate law
//! `θ̇ᵢ = √(αᵢωᵢ)·cos(ωᵢt − kᵢ·Jᵢ(θ))`, seeing only its own scalar payoff.
//! This crate provides the game model, the rational frequency plan, the
//! oscillatory seeker dynamics, the Lie-bracket averaged system with its
//! linear error matrix, stability certificates (Gershgorin discs, Lyapunov
//! solve, exponential-bound constants) and a fixed-step simulation engine.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line driver live in the `lbnes` crate.
#![no_std]
#![warn(missing_docs)]
// `!(x > 0.0)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod averaging;
pub mod error;
pub mod frequency;
pub mod game;
pub mod linalg;
pub mod oligopoly;
pub mod seeker;
pub mod sim;
pub mod stability;

pub use averaging::{
    averaged_rhs, error_matrix, lie_bracket, nu_numeric, nu_table, ErrorMatrix, NuCoefficient,
    DEFAULT_NU_SUBINTERVALS,
};
pub use error::{Error, Result};
pub use frequency::{build_frequency_plan, validate_distinct, FrequencyPlan, RationalRatio};
pub use game::{
    check_diagonal_dominance, interaction_matrix, nash_equilibrium, payoff, pseudo_gradient,
    DominanceReport, InteractionMatrix, NashPoint, QuadraticGame,
};
pub use linalg::Matrix;
pub use oligopoly::{build_oligopoly, reference_scenario, OligopolyParams, ReferenceScenario};
pub use seeker::{full_rhs, update_rate, vector_fields, SeekerParams};
pub use sim::{
    closed_form_averaged, convergence_sweep, integrate, residual_estimate, run_seeker,
    sweep_point, trailing_mean_distance, SimSettings, SweepResult, Trajectory,
};
pub use stability::{
    analyze_stability, bound_constants, gershgorin_check, solve_lyapunov,
    verify_exponential_bound, BoundCheck, BoundConstants, Disc, GershgorinReport,
    StabilityReport,
};

//! Concurrent frequency sweep.
//!
//! Each multiplier is an independent simulation; runs go out on scoped
//! threads and results are merged by multiplier index, so the outcome does
//! not depend on completion order.

use std::thread;

use lbnes_core::sim::validate_multipliers;
use lbnes_core::{sweep_point, Result, SweepResult};

use crate::scenario::Scenario;

/// Same result as `lbnes_core::convergence_sweep`, computed in parallel.
///
/// When several runs fail, the error of the smallest multiplier wins.
pub fn parallel_sweep(scenario: &Scenario, multipliers: &[u32], t_end: f64) -> Result<SweepResult> {
    validate_multipliers(multipliers)?;
    let plan = scenario.plan();
    let outcomes: Vec<Result<(f64, f64)>> = thread::scope(|s| {
        let handles: Vec<_> = multipliers
            .iter()
            .map(|&c| {
                let plan = &plan;
                s.spawn(move || {
                    sweep_point(
                        &scenario.game,
                        &scenario.seeker,
                        plan,
                        c,
                        &scenario.theta0,
                        t_end,
                        scenario.settings,
                    )
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let points = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    SweepResult::from_points(&points)
}

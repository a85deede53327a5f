//! Fixed-step simulation of the oscillatory and averaged systems.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::averaging::{error_matrix, fill_averaged, ErrorMatrix};
use crate::error::{check_len, Error, Result};
use crate::frequency::FrequencyPlan;
use crate::game::{nash_equilibrium, QuadraticGame};
use crate::linalg::expm;
use crate::seeker::{check_dims, fill_rhs, SeekerParams};

/// Recorded time series.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    /// Strictly increasing sample times (seconds).
    pub times: Vec<f64>,
    /// State at each sample time.
    pub states: Vec<Vec<f64>>,
    /// Per-player payoffs at each sample time, when recorded.
    pub payoffs: Option<Vec<Vec<f64>>>,
}

impl Trajectory {
    /// Number of samples.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// `true` without samples.
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// State dimension (0 when empty).
    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, Vec::len)
    }

    /// Final state.
    pub fn last_state(&self) -> Option<&[f64]> {
        self.states.last().map(Vec::as_slice)
    }

    /// Attach `Jᵢ(θ(t))` for every sample.
    pub fn with_payoffs(mut self, game: &QuadraticGame) -> Self {
        let payoffs = self
            .states
            .iter()
            .map(|s| (0..game.n_players()).map(|i| game.payoff_unchecked(i, s)).collect())
            .collect();
        self.payoffs = Some(payoffs);
        self
    }
}

/// Discretisation knobs shared by seeker runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimSettings {
    /// RK4 steps per period of the fastest dither (at least 20).
    pub steps_per_fast_period: usize,
    /// Keep every `record_every`-th step.
    pub record_every: usize,
}

impl Default for SimSettings {
    fn default() -> Self {
        SimSettings {
            steps_per_fast_period: 100,
            record_every: 10,
        }
    }
}

impl SimSettings {
    fn validate(&self) -> Result<()> {
        if self.steps_per_fast_period < 20 {
            return Err(Error::invalid(format!(
                "steps_per_fast_period must be at least 20, got {}",
                self.steps_per_fast_period
            )));
        }
        if self.record_every == 0 {
            return Err(Error::invalid("record_every must be positive"));
        }
        Ok(())
    }

    /// RK4 step used for `plan`.
    pub fn step_for(&self, plan: &FrequencyPlan) -> f64 {
        2.0 * PI / (plan.max_omega() * self.steps_per_fast_period as f64)
    }
}

fn step_count(t_end: f64, step: f64) -> usize {
    let ratio = t_end / step;
    let nearest = libm::round(ratio);
    let n = if (ratio - nearest).abs() <= 1e-9 * ratio.max(1.0) {
        nearest
    } else {
        libm::ceil(ratio)
    };
    (n as usize).max(1)
}

/// Sample times [`integrate`] records for these arguments.
pub fn record_times(t_end: f64, step: f64, record_every: usize) -> Vec<f64> {
    let n = step_count(t_end, step);
    let h = t_end / n as f64;
    let mut times = vec![0.0];
    for s in 1..=n {
        if s % record_every == 0 || s == n {
            times.push(if s == n { t_end } else { s as f64 * h });
        }
    }
    times
}

/// Classical fixed-step RK4.
///
/// `rhs(t, x, dx)` writes the derivative into `dx`. The step is shrunk
/// slightly so that an integer number of steps lands exactly on `t_end`.
/// The initial state, every `record_every`-th step and the final state
/// are recorded.
pub fn integrate<F>(
    mut rhs: F,
    initial: &[f64],
    t_end: f64,
    step: f64,
    record_every: usize,
) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::invalid(format!("t_end must be positive, got {t_end}")));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::invalid(format!("step must be positive, got {step}")));
    }
    if record_every == 0 {
        return Err(Error::invalid("record_every must be positive"));
    }
    if initial.is_empty() {
        return Err(Error::invalid("initial state is empty"));
    }
    let n = step_count(t_end, step);
    let h = t_end / n as f64;
    let dim = initial.len();

    let mut x = initial.to_vec();
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    let capacity = n / record_every + 2;
    let mut times = Vec::with_capacity(capacity);
    let mut states = Vec::with_capacity(capacity);
    times.push(0.0);
    states.push(x.clone());

    for s in 0..n {
        let t = s as f64 * h;
        rhs(t, &x, &mut k1);
        for i in 0..dim {
            tmp[i] = x[i] + 0.5 * h * k1[i];
        }
        rhs(t + 0.5 * h, &tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = x[i] + 0.5 * h * k2[i];
        }
        rhs(t + 0.5 * h, &tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = x[i] + h * k3[i];
        }
        rhs(t + h, &tmp, &mut k4);
        for i in 0..dim {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let done = s + 1;
        let t_next = if done == n { t_end } else { done as f64 * h };
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergence { time: t_next });
        }
        if done % record_every == 0 || done == n {
            times.push(t_next);
            states.push(x.clone());
        }
    }
    Ok(Trajectory {
        times,
        states,
        payoffs: None,
    })
}

/// `θ̄(t) = θ* + exp(𝒜t)(θ₀ − θ*)` at each requested time.
pub fn closed_form_averaged(
    em: &ErrorMatrix,
    theta0: &[f64],
    theta_star: &[f64],
    times: &[f64],
) -> Result<Trajectory> {
    let n = em.a_matrix.rows();
    check_len("theta0", n, theta0.len())?;
    check_len("theta_star", n, theta_star.len())?;
    if times.is_empty() {
        return Err(Error::invalid("closed-form trajectory needs at least one time"));
    }
    if !(times[0] >= 0.0) || times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("times must be nonnegative and strictly increasing"));
    }
    let offset: Vec<f64> = theta0.iter().zip(theta_star).map(|(a, b)| a - b).collect();
    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        let propagated = expm(&em.a_matrix.scale(t))?.mul_vec(&offset)?;
        states.push(theta_star.iter().zip(&propagated).map(|(s, d)| s + d).collect());
    }
    Ok(Trajectory {
        times: times.to_vec(),
        states,
        payoffs: None,
    })
}

/// Integrate the averaged system `½AK(Hθ̄ + h)` with RK4.
pub fn run_averaged(
    game: &QuadraticGame,
    params: &SeekerParams,
    theta0: &[f64],
    t_end: f64,
    step: f64,
    record_every: usize,
) -> Result<Trajectory> {
    check_dims(game, params, None, theta0)?;
    integrate(
        |_, x, dx| fill_averaged(game, params, x, dx),
        theta0,
        t_end,
        step,
        record_every,
    )
}

/// Integrate the full oscillatory system and record payoffs alongside.
///
/// The step is `2π / (maxᵢ ωᵢ · steps_per_fast_period)`.
pub fn run_seeker(
    game: &QuadraticGame,
    params: &SeekerParams,
    plan: &FrequencyPlan,
    theta0: &[f64],
    t_end: f64,
    settings: SimSettings,
) -> Result<Trajectory> {
    check_dims(game, params, Some(plan), theta0)?;
    settings.validate()?;
    let traj = integrate(
        |t, x, dx| fill_rhs(game, params, plan, t, x, dx),
        theta0,
        t_end,
        settings.step_for(plan),
        settings.record_every,
    )?;
    Ok(traj.with_payoffs(game))
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Averaging-error measurements across a range of `ω̃`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Strictly increasing `ω̃` values.
    pub omega_tildes: Vec<f64>,
    /// `supₜ ‖θ(t) − θ̄(t)‖₂` for each `ω̃`.
    pub sup_errors: Vec<f64>,
    /// Least-squares slope of `log sup_error` against `log ω̃`.
    pub loglog_slope: f64,
}

impl SweepResult {
    /// Assemble from `(ω̃, sup_error)` pairs and fit the slope.
    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::invalid("a sweep needs at least three points"));
        }
        if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::invalid("sweep frequencies must be strictly increasing"));
        }
        if let Some(p) = points.iter().find(|p| !(p.0 > 0.0) || !(p.1 > 0.0)) {
            return Err(Error::invalid(format!(
                "log-log fit needs positive values, got ({}, {})",
                p.0, p.1
            )));
        }
        let xs: Vec<f64> = points.iter().map(|p| libm::log(p.0)).collect();
        let ys: Vec<f64> = points.iter().map(|p| libm::log(p.1)).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        Ok(SweepResult {
            omega_tildes: points.iter().map(|p| p.0).collect(),
            sup_errors: points.iter().map(|p| p.1).collect(),
            loglog_slope: sxy / sxx,
        })
    }

    /// Informational: did every frequency increase shrink the error?
    pub fn is_strictly_decreasing(&self) -> bool {
        self.sup_errors.windows(2).all(|w| w[1] < w[0])
    }
}

/// One sweep run: scale `ω` by `multiplier`, simulate, and compare with the
/// closed-form averaged trajectory on the same grid.
///
/// Returns `(ω̃, supₜ‖θ(t) − θ̄(t)‖₂)`.
#[allow(clippy::too_many_arguments)]
pub fn sweep_point(
    game: &QuadraticGame,
    params: &SeekerParams,
    base_plan: &FrequencyPlan,
    multiplier: u32,
    theta0: &[f64],
    t_end: f64,
    settings: SimSettings,
) -> Result<(f64, f64)> {
    let tag = |e: Error| Error::SweepRun {
        multiplier,
        source: Box::new(e),
    };
    if multiplier == 0 {
        return Err(Error::invalid("sweep multipliers must be positive"));
    }
    let plan = base_plan.scaled(multiplier as f64).map_err(tag)?;
    let traj = run_seeker(game, params, &plan, theta0, t_end, settings).map_err(tag)?;
    let nash = nash_equilibrium(game).map_err(tag)?;
    let em = error_matrix(game, params).map_err(tag)?;
    let avg = closed_form_averaged(&em, theta0, &nash.actions, &traj.times).map_err(tag)?;
    let sup = traj
        .states
        .iter()
        .zip(&avg.states)
        .map(|(a, b)| distance(a, b))
        .fold(0.0, f64::max);
    Ok((plan.omega_tilde, sup))
}

/// Run [`sweep_point`] for each multiplier in order and fit the slope.
pub fn convergence_sweep(
    game: &QuadraticGame,
    params: &SeekerParams,
    base_plan: &FrequencyPlan,
    multipliers: &[u32],
    theta0: &[f64],
    t_end: f64,
    settings: SimSettings,
) -> Result<SweepResult> {
    validate_multipliers(multipliers)?;
    let points = multipliers
        .iter()
        .map(|&c| sweep_point(game, params, base_plan, c, theta0, t_end, settings))
        .collect::<Result<Vec<_>>>()?;
    SweepResult::from_points(&points)
}

/// At least three strictly increasing positive multipliers.
pub fn validate_multipliers(multipliers: &[u32]) -> Result<()> {
    if multipliers.len() < 3 {
        return Err(Error::invalid("a sweep needs at least three multipliers"));
    }
    if multipliers[0] == 0 || multipliers.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(
            "sweep multipliers must be positive and strictly increasing",
        ));
    }
    Ok(())
}

fn trailing_window(
    traj: &Trajectory,
    window_fraction: f64,
) -> Result<impl Iterator<Item = &Vec<f64>>> {
    if !(window_fraction > 0.0 && window_fraction <= 1.0) {
        return Err(Error::invalid(format!(
            "window fraction must lie in (0, 1], got {window_fraction}"
        )));
    }
    let (first, last) = match (traj.times.first(), traj.times.last()) {
        (Some(&f), Some(&l)) => (f, l),
        _ => return Err(Error::invalid("trajectory is empty")),
    };
    let start = last - window_fraction * (last - first);
    Ok(traj
        .times
        .iter()
        .zip(&traj.states)
        .filter(move |(t, _)| **t >= start)
        .map(|(_, s)| s))
}

/// `sup ‖θ(t) − θ*‖₂` over the trailing `window_fraction` of the horizon.
pub fn residual_estimate(traj: &Trajectory, theta_star: &[f64], window_fraction: f64) -> Result<f64> {
    check_len("theta_star", traj.dim(), theta_star.len())?;
    Ok(trailing_window(traj, window_fraction)?
        .map(|s| distance(s, theta_star))
        .fold(0.0, f64::max))
}

/// Mean of `‖θ(t) − θ*‖₂` over the trailing `window_fraction` of the horizon.
pub fn trailing_mean_distance(
    traj: &Trajectory,
    theta_star: &[f64],
    window_fraction: f64,
) -> Result<f64> {
    check_len("theta_star", traj.dim(), theta_star.len())?;
    let (sum, count) = trailing_window(traj, window_fraction)?
        .fold((0.0, 0usize), |(s, c), x| (s + distance(x, theta_star), c + 1));
    Ok(sum / count as f64)
}

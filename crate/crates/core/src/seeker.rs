//! The bounded-update-rate seeking law.
//!
//! Player `i` only ever sees its own scalar payoff `yᵢ`; the law
//! `θ̇ᵢ = √(αᵢωᵢ)·cos(ωᵢt − kᵢyᵢ)` keeps the measurement inside the cosine,
//! so `|θ̇ᵢ| ≤ √(αᵢωᵢ)` whatever the payoff does.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_len, Error, Result};
use crate::frequency::FrequencyPlan;
use crate::game::QuadraticGame;

/// Per-player gains `αᵢ` (dither amplitude) and `kᵢ` (payoff gain).
#[derive(Debug, Clone, PartialEq)]
pub struct SeekerParams {
    alphas: Vec<f64>,
    gains: Vec<f64>,
}

impl SeekerParams {
    /// All `αᵢ > 0` and `kᵢ > 0`.
    pub fn new(alphas: Vec<f64>, gains: Vec<f64>) -> Result<Self> {
        Self::validate(&alphas, &gains, false)?;
        Ok(SeekerParams { alphas, gains })
    }

    /// Like [`SeekerParams::new`] but accepts `kᵢ = 0`, which turns the law
    /// into a pure dither with no seeking. Diagnostic use only.
    pub fn with_nonnegative_gains(alphas: Vec<f64>, gains: Vec<f64>) -> Result<Self> {
        Self::validate(&alphas, &gains, true)?;
        Ok(SeekerParams { alphas, gains })
    }

    fn validate(alphas: &[f64], gains: &[f64], allow_zero_gain: bool) -> Result<()> {
        check_len("gains", alphas.len(), gains.len())?;
        if alphas.is_empty() {
            return Err(Error::invalid("seeker parameters need at least one player"));
        }
        if let Some((i, a)) = alphas.iter().enumerate().find(|(_, a)| !(**a > 0.0 && a.is_finite())) {
            return Err(Error::invalid(format!("alpha {i} must be positive, got {a}")));
        }
        let gain_ok = |k: f64| k.is_finite() && (k > 0.0 || (allow_zero_gain && k == 0.0));
        if let Some((i, k)) = gains.iter().enumerate().find(|(_, k)| !gain_ok(**k)) {
            return Err(Error::invalid(format!("gain {i} must be positive, got {k}")));
        }
        Ok(())
    }

    /// `αᵢ`
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// `kᵢ`
    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    /// Number of players.
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    /// Never true for validated parameters.
    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// Per-player rate bound `√(αᵢωᵢ)`.
    pub fn rate_bounds(&self, plan: &FrequencyPlan) -> Vec<f64> {
        self.alphas
            .iter()
            .zip(&plan.omegas)
            .map(|(a, w)| libm::sqrt(a * w))
            .collect()
    }
}

/// `√(αᵢωᵢ)·cos(ωᵢt − kᵢyᵢ)`.
///
/// # Panics
///
/// If `player` is out of range for `params` or `plan`.
pub fn update_rate(player: usize, t: f64, y: f64, params: &SeekerParams, plan: &FrequencyPlan) -> f64 {
    let omega = plan.omegas[player];
    libm::sqrt(params.alphas[player] * omega) * libm::cos(omega * t - params.gains[player] * y)
}

/// Input-affine fields `(b₁ʲ, b₂ʲ)`: `√αⱼ·sin(kⱼJⱼ)` and `√αⱼ·cos(kⱼJⱼ)` at
/// position `j`, zero elsewhere.
pub fn vector_fields(
    game: &QuadraticGame,
    params: &SeekerParams,
    player: usize,
    actions: &[f64],
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_dims(game, params, None, actions)?;
    if player >= game.n_players() {
        return Err(Error::invalid(format!("player index {player} out of range")));
    }
    let phase = params.gains[player] * game.payoff_unchecked(player, actions);
    let amp = libm::sqrt(params.alphas[player]);
    let mut b1 = vec![0.0; actions.len()];
    let mut b2 = vec![0.0; actions.len()];
    b1[player] = amp * libm::sin(phase);
    b2[player] = amp * libm::cos(phase);
    Ok((b1, b2))
}

/// Right-hand side of the full oscillatory system.
///
/// Entry `i` is [`update_rate`] fed with `Jᵢ(θ)` and nothing else.
pub fn full_rhs(
    game: &QuadraticGame,
    params: &SeekerParams,
    plan: &FrequencyPlan,
    t: f64,
    actions: &[f64],
) -> Result<Vec<f64>> {
    check_dims(game, params, Some(plan), actions)?;
    let mut out = vec![0.0; actions.len()];
    fill_rhs(game, params, plan, t, actions, &mut out);
    Ok(out)
}

pub(crate) fn fill_rhs(
    game: &QuadraticGame,
    params: &SeekerParams,
    plan: &FrequencyPlan,
    t: f64,
    actions: &[f64],
    out: &mut [f64],
) {
    for (i, slot) in out.iter_mut().enumerate() {
        let y = game.payoff_unchecked(i, actions);
        *slot = update_rate(i, t, y, params, plan);
    }
}

pub(crate) fn check_dims(
    game: &QuadraticGame,
    params: &SeekerParams,
    plan: Option<&FrequencyPlan>,
    actions: &[f64],
) -> Result<()> {
    let n = game.n_players();
    check_len("seeker parameters", n, params.len())?;
    if let Some(plan) = plan {
        check_len("frequency plan", n, plan.omegas.len())?;
    }
    check_len("actions", n, actions.len())
}

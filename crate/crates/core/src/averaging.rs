//! Lie-bracket averaging of the seeker dynamics.
//!
//! Over one period of the dither the oscillatory system behaves like
//! `θ̄̇ = −½ Σⱼ [b₁ʲ, b₂ʲ](θ̄) = ½·A·K·(Hθ̄ + h)`, with `A = diag(α)` and
//! `K = diag(k)`. The ν coefficients below are only a diagnostic: they
//! confirm that brackets between players with different harmonics average
//! out.
//!
//! Note on the same-harmonic table: integrating `ν_kl` literally with
//! `u₁ = sin`, `u₂ = cos` gives `ν₁₁ = ν₂₂ = 0`, `ν₁₂ = +1/(2n)` and
//! `ν₂₁ = −1/(2n)`. The averaged system above follows from the `(1,2)`
//! and `(2,1)` entries; `nu_numeric` reports the literal integral.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::frequency::FrequencyPlan;
use crate::game::{interaction_matrix, QuadraticGame};
use crate::linalg::Matrix;
use crate::seeker::{check_dims, SeekerParams};

/// Default Simpson subintervals per `2π` period.
pub const DEFAULT_NU_SUBINTERVALS: usize = 1024;

/// One averaging coefficient `ν_kl` between harmonics `n_i` and `n_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuCoefficient {
    /// Outer dither index (1 = sin, 2 = cos).
    pub k: u8,
    /// Inner dither index (1 = sin, 2 = cos).
    pub l: u8,
    /// Outer harmonic.
    pub n_i: u64,
    /// Inner harmonic.
    pub n_j: u64,
    /// `(1/T)∫₀ᵀ u_k(n_i β) ∫₀^β u_l(n_j α) dα dβ`
    pub value: f64,
}

fn dither(k: u8, x: f64) -> f64 {
    if k == 1 {
        libm::sin(x)
    } else {
        libm::cos(x)
    }
}

// ∫₀^β u_l(n s) ds in closed form.
fn dither_integral(l: u8, n: f64, beta: f64) -> f64 {
    if l == 1 {
        (1.0 - libm::cos(n * beta)) / n
    } else {
        libm::sin(n * beta) / n
    }
}

/// `ν_kl` for harmonics `(n_i, n_j)` over `T = 2π`.
///
/// The inner integral is exact; the outer one is composite Simpson with
/// `subintervals` panels (even, at least 64).
pub fn nu_numeric(k: u8, l: u8, n_i: u64, n_j: u64, subintervals: usize) -> Result<f64> {
    if !(1..=2).contains(&k) || !(1..=2).contains(&l) {
        return Err(Error::invalid(format!("dither indices must be 1 or 2, got ({k}, {l})")));
    }
    if n_i == 0 || n_j == 0 {
        return Err(Error::invalid("harmonics must be positive"));
    }
    if subintervals < 64 || !subintervals.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "Simpson needs an even subinterval count of at least 64, got {subintervals}"
        )));
    }
    let period = 2.0 * PI;
    let h = period / subintervals as f64;
    let (ni, nj) = (n_i as f64, n_j as f64);
    let f = |beta: f64| dither(k, ni * beta) * dither_integral(l, nj, beta);

    let mut acc = f(0.0) + f(period);
    for s in 1..subintervals {
        let weight = if s % 2 == 1 { 4.0 } else { 2.0 };
        acc += weight * f(s as f64 * h);
    }
    Ok(acc * h / 3.0 / period)
}

/// Every `ν_kl` for every ordered pair of the plan's harmonics.
pub fn nu_table(plan: &FrequencyPlan, subintervals: usize) -> Result<Vec<NuCoefficient>> {
    let mut table = Vec::new();
    for &n_i in &plan.multipliers {
        for &n_j in &plan.multipliers {
            for k in 1..=2u8 {
                for l in 1..=2u8 {
                    let value = nu_numeric(k, l, n_i, n_j, subintervals)?;
                    table.push(NuCoefficient {
                        k,
                        l,
                        n_i,
                        n_j,
                        value,
                    });
                }
            }
        }
    }
    Ok(table)
}

/// `[b₁ʲ, b₂ʲ](θ) = −αⱼkⱼ·(∂Jⱼ/∂θⱼ)·eⱼ`.
pub fn lie_bracket(
    game: &QuadraticGame,
    params: &SeekerParams,
    player: usize,
    actions: &[f64],
) -> Result<Vec<f64>> {
    check_dims(game, params, None, actions)?;
    if player >= game.n_players() {
        return Err(Error::invalid(format!("player index {player} out of range")));
    }
    let mut out = vec![0.0; actions.len()];
    out[player] = -params.alphas()[player]
        * params.gains()[player]
        * game.own_gradient_unchecked(player, actions);
    Ok(out)
}

/// Averaged right-hand side `½·A·K·(Hθ̄ + h)`.
pub fn averaged_rhs(
    game: &QuadraticGame,
    params: &SeekerParams,
    avg_actions: &[f64],
) -> Result<Vec<f64>> {
    check_dims(game, params, None, avg_actions)?;
    let mut out = vec![0.0; avg_actions.len()];
    fill_averaged(game, params, avg_actions, &mut out);
    Ok(out)
}

pub(crate) fn fill_averaged(
    game: &QuadraticGame,
    params: &SeekerParams,
    avg_actions: &[f64],
    out: &mut [f64],
) {
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = 0.5
            * params.alphas()[i]
            * params.gains()[i]
            * game.own_gradient_unchecked(i, avg_actions);
    }
}

/// Linear error dynamics `θ̃̇ = 𝒜θ̃` of the averaged system.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorMatrix {
    /// `𝒜 = diag(κ)·H`
    pub a_matrix: Matrix,
    /// `κᵢ = αᵢkᵢ/2`
    pub kappas: Vec<f64>,
}

/// `𝒜_ij = (αᵢkᵢ/2)·Hⁱ_ij`.
pub fn error_matrix(game: &QuadraticGame, params: &SeekerParams) -> Result<ErrorMatrix> {
    crate::error::check_len("seeker parameters", game.n_players(), params.len())?;
    let h = interaction_matrix(game).h_matrix;
    let kappas: Vec<f64> = params
        .alphas()
        .iter()
        .zip(params.gains())
        .map(|(a, k)| 0.5 * a * k)
        .collect();
    let mut a_matrix = h;
    for (i, kappa) in kappas.iter().enumerate() {
        for j in 0..a_matrix.cols() {
            a_matrix[(i, j)] *= kappa;
        }
    }
    Ok(ErrorMatrix { a_matrix, kappas })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::QuadraticGame;

    fn one_player() -> QuadraticGame {
        QuadraticGame::new(
            vec![Matrix::from_rows(&[[-2.0]]).unwrap()],
            vec![vec![2.0]],
            vec![0.0],
        )
        .unwrap()
    }

    #[test]
    fn bracket_single_player() {
        let p = SeekerParams::new(vec![1.0], vec![1.0]).unwrap();
        assert_eq!(lie_bracket(&one_player(), &p, 0, &[0.0]).unwrap(), vec![-2.0]);
    }

    #[test]
    fn error_matrix_single_player() {
        let p = SeekerParams::new(vec![0.05], vec![6.0]).unwrap();
        let em = error_matrix(&one_player(), &p).unwrap();
        assert!((em.a_matrix[(0, 0)] + 0.3).abs() < 1e-15);
        assert!((em.kappas[0] - 0.15).abs() < 1e-15);
    }

    #[test]
    fn nu_rejects_bad_grids() {
        assert!(nu_numeric(1, 2, 1, 1, 63).is_err());
        assert!(nu_numeric(1, 2, 1, 1, 130 + 1).is_err());
        assert!(nu_numeric(1, 2, 1, 1, 32).is_err());
        assert!(nu_numeric(3, 2, 1, 1, 1024).is_err());
        assert!(nu_numeric(1, 2, 0, 1, 1024).is_err());
    }

    #[test]
    fn nu_first_harmonic() {
        let v = nu_numeric(1, 2, 1, 1, 1024).unwrap();
        assert!((v - 0.5).abs() < 1e-10);
    }
}

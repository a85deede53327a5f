//! N-player quadratic games: payoffs, pseudo-gradient, interaction matrix
//! and the Nash equilibrium.
//!
//! Player `i` receives `Jᵢ(θ) = ½ θᵀHⁱθ + hⁱ·θ + cⁱ`. Players are indexed
//! from zero.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{check_len, Error, Result};
use crate::linalg::{self, Matrix};

/// Absolute tolerance for accepting a Hessian as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Quadratic payoff data `(Hⁱ, hⁱ, cⁱ)` for every player.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticGame {
    hessians: Vec<Matrix>,
    linear_terms: Vec<Vec<f64>>,
    constants: Vec<f64>,
}

impl QuadraticGame {
    /// Validate and build a game.
    ///
    /// Every `Hⁱ` must be `N×N`, symmetric to within [`SYMMETRY_TOL`] and have
    /// `Hⁱ_ii < 0`. Near-symmetric input is symmetrized.
    pub fn new(
        hessians: Vec<Matrix>,
        linear_terms: Vec<Vec<f64>>,
        constants: Vec<f64>,
    ) -> Result<Self> {
        let n = hessians.len();
        if n == 0 {
            return Err(Error::invalid("a game needs at least one player"));
        }
        check_len("linear_terms", n, linear_terms.len())?;
        check_len("constants", n, constants.len())?;

        let mut hessians = hessians;
        for (i, hess) in hessians.iter_mut().enumerate() {
            check_len("hessian rows", n, hess.rows())?;
            check_len("hessian cols", n, hess.cols())?;
            if hess.as_slice().iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid(format!("hessian {i} has non-finite entries")));
            }
            let asym = hess.asymmetry();
            if asym > SYMMETRY_TOL {
                return Err(Error::invalid(format!(
                    "hessian {i} is not symmetric (max |H_jk - H_kj| = {asym:e})"
                )));
            }
            hess.symmetrize();
            if !(hess[(i, i)] < 0.0) {
                return Err(Error::invalid(format!(
                    "hessian {i} must have a negative own-action entry, got {}",
                    hess[(i, i)]
                )));
            }
        }
        for (i, h) in linear_terms.iter().enumerate() {
            check_len("linear term", n, h.len())?;
            if h.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid(format!("linear term {i} has non-finite entries")));
            }
        }
        if constants.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("constants must be finite"));
        }
        Ok(QuadraticGame {
            hessians,
            linear_terms,
            constants,
        })
    }

    /// Number of players `N`.
    pub fn n_players(&self) -> usize {
        self.hessians.len()
    }

    /// Hessians `Hⁱ`.
    pub fn hessians(&self) -> &[Matrix] {
        &self.hessians
    }

    /// Linear terms `hⁱ`.
    pub fn linear_terms(&self) -> &[Vec<f64>] {
        &self.linear_terms
    }

    /// Constants `cⁱ`.
    pub fn constants(&self) -> &[f64] {
        &self.constants
    }

    fn check_player(&self, player: usize) -> Result<()> {
        if player < self.n_players() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "player index {player} out of range for {} players",
                self.n_players()
            )))
        }
    }

    /// Payoff of `player` without dimension checks.
    pub(crate) fn payoff_unchecked(&self, player: usize, actions: &[f64]) -> f64 {
        let hess = &self.hessians[player];
        let n = actions.len();
        let mut quad = 0.0;
        for j in 0..n {
            let row = hess.row(j);
            let mut acc = 0.0;
            for k in 0..n {
                acc += row[k] * actions[k];
            }
            quad += actions[j] * acc;
        }
        let lin: f64 = self.linear_terms[player]
            .iter()
            .zip(actions)
            .map(|(h, t)| h * t)
            .sum();
        0.5 * quad + lin + self.constants[player]
    }

    /// `∂Jᵢ/∂θᵢ` without dimension checks.
    pub(crate) fn own_gradient_unchecked(&self, player: usize, actions: &[f64]) -> f64 {
        let row = self.hessians[player].row(player);
        row.iter().zip(actions).map(|(h, t)| h * t).sum::<f64>()
            + self.linear_terms[player][player]
    }
}

/// `Jᵢ(θ) = ½ ΣⱼΣₖ Hⁱ_jk θⱼθₖ + Σⱼ hⁱ_j θⱼ + cⁱ`.
pub fn payoff(game: &QuadraticGame, player: usize, actions: &[f64]) -> Result<f64> {
    game.check_player(player)?;
    check_len("actions", game.n_players(), actions.len())?;
    Ok(game.payoff_unchecked(player, actions))
}

/// Stacked own-action derivatives `∂Jᵢ/∂θᵢ`, equal to `Hθ + h`.
pub fn pseudo_gradient(game: &QuadraticGame, actions: &[f64]) -> Result<Vec<f64>> {
    check_len("actions", game.n_players(), actions.len())?;
    Ok((0..game.n_players())
        .map(|i| game.own_gradient_unchecked(i, actions))
        .collect())
}

/// Row `i` of `H` is row `i` of `Hⁱ`; entry `i` of `h` is `hⁱ_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionMatrix {
    /// Stacked own-gradient coefficients `H`.
    pub h_matrix: Matrix,
    /// Stacked own linear coefficients `h`.
    pub h_vector: Vec<f64>,
}

/// Assemble `(H, h)` so that the pseudo-gradient is `Hθ + h`.
pub fn interaction_matrix(game: &QuadraticGame) -> InteractionMatrix {
    let n = game.n_players();
    let mut h_matrix = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            h_matrix[(i, j)] = game.hessians[i][(i, j)];
        }
    }
    let h_vector = (0..n).map(|i| game.linear_terms[i][i]).collect();
    InteractionMatrix { h_matrix, h_vector }
}

/// Equilibrium actions and the payoffs they yield.
#[derive(Debug, Clone, PartialEq)]
pub struct NashPoint {
    /// `θ*`
    pub actions: Vec<f64>,
    /// `Jᵢ(θ*)` for every player.
    pub payoffs: Vec<f64>,
}

/// Solve `Hθ* + h = 0` by pivoted Gaussian elimination.
pub fn nash_equilibrium(game: &QuadraticGame) -> Result<NashPoint> {
    let im = interaction_matrix(game);
    let rhs: Vec<f64> = im.h_vector.iter().map(|v| -v).collect();
    let actions = linalg::solve(&im.h_matrix, &rhs)?;
    let payoffs = (0..game.n_players())
        .map(|i| game.payoff_unchecked(i, &actions))
        .collect();
    Ok(NashPoint { actions, payoffs })
}

/// Row margins `|Hⁱ_ii| − Σ_{j≠i} |Hⁱ_ij|` of the interaction matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    /// One margin per player.
    pub margins: Vec<f64>,
    /// Every margin strictly positive.
    pub pass: bool,
}

/// Strict diagonal dominance of `H`, zero slack.
pub fn check_diagonal_dominance(game: &QuadraticGame) -> DominanceReport {
    let h = interaction_matrix(game).h_matrix;
    let margins: Vec<f64> = (0..h.rows())
        .map(|i| {
            let off: f64 = (0..h.cols()).filter(|&j| j != i).map(|j| h[(i, j)].abs()).sum();
            h[(i, i)].abs() - off
        })
        .collect();
    let pass = margins.iter().all(|&m| m > 0.0);
    DominanceReport { margins, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn one_player() -> QuadraticGame {
        QuadraticGame::new(
            vec![Matrix::from_rows(&[[-2.0]]).unwrap()],
            vec![vec![2.0]],
            vec![0.0],
        )
        .unwrap()
    }

    /// Both players share `H = [[-2, 1], [1, -2]]` and `h = [1, 1]`.
    fn two_player() -> QuadraticGame {
        let hess = Matrix::from_rows(&[[-2.0, 1.0], [1.0, -2.0]]).unwrap();
        QuadraticGame::new(
            vec![hess.clone(), hess],
            vec![vec![1.0, 1.0], vec![1.0, 1.0]],
            vec![0.0, 0.0],
        )
        .unwrap()
    }

    #[test]
    fn one_player_payoff_at_origin() {
        assert_eq!(payoff(&one_player(), 0, &[0.0]).unwrap(), 0.0);
    }

    #[test]
    fn one_player_gradient_and_nash() {
        let g = one_player();
        assert_eq!(pseudo_gradient(&g, &[0.0]).unwrap(), vec![2.0]);
        let im = interaction_matrix(&g);
        assert_eq!(im.h_matrix.as_slice(), &[-2.0]);
        assert_eq!(im.h_vector, vec![2.0]);
        let nash = nash_equilibrium(&g).unwrap();
        assert!((nash.actions[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_player_nash_and_margins() {
        let g = two_player();
        let nash = nash_equilibrium(&g).unwrap();
        assert!((nash.actions[0] - 1.0).abs() < 1e-14);
        assert!((nash.actions[1] - 1.0).abs() < 1e-14);
        let grad = pseudo_gradient(&g, &nash.actions).unwrap();
        assert!(grad.iter().all(|v| v.abs() < 1e-9));
        let dom = check_diagonal_dominance(&g);
        assert!(dom.pass);
        assert_eq!(dom.margins, vec![1.0, 1.0]);
    }

    #[test]
    fn zero_margin_fails_dominance() {
        let hess = Matrix::from_rows(&[[-2.0, 1.0, 1.0], [1.0, -3.0, 0.0], [1.0, 0.0, -3.0]])
            .unwrap();
        let g = QuadraticGame::new(
            vec![hess.clone(), hess.clone(), hess],
            vec![vec![0.0; 3]; 3],
            vec![0.0; 3],
        )
        .unwrap();
        let dom = check_diagonal_dominance(&g);
        assert!(!dom.pass);
        assert_eq!(dom.margins[0], 0.0);
    }

    #[test]
    fn rejects_bad_games() {
        let asym = Matrix::from_rows(&[[-1.0, 0.5], [0.4, -1.0]]).unwrap();
        let err = QuadraticGame::new(
            vec![asym.clone(), asym],
            vec![vec![0.0; 2]; 2],
            vec![0.0; 2],
        );
        assert!(matches!(err, Err(Error::InvalidInput(_))));

        let positive = Matrix::from_rows(&[[1.0]]).unwrap();
        assert!(QuadraticGame::new(vec![positive], vec![vec![0.0]], vec![0.0]).is_err());

        let g = one_player();
        assert!(matches!(
            payoff(&g, 0, &[1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(payoff(&g, 1, &[1.0]).is_err());
        assert!(pseudo_gradient(&g, &[]).is_err());
    }

    #[test]
    fn near_symmetric_input_is_symmetrized() {
        let hess = Matrix::from_rows(&[[-1.0, 0.5 + 5e-13], [0.5, -1.0]]).unwrap();
        let g = QuadraticGame::new(
            vec![hess.clone(), hess],
            vec![vec![0.0; 2]; 2],
            vec![0.0; 2],
        )
        .unwrap();
        assert_eq!(g.hessians()[0].asymmetry(), 0.0);
    }

    #[test]
    fn singular_interaction_matrix() {
        // Rows of H are [-1, 1] and [1, -1]: singular.
        let hess = Matrix::from_rows(&[[-1.0, 1.0], [1.0, -1.0]]).unwrap();
        let g = QuadraticGame::new(
            vec![hess.clone(), hess],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![0.0; 2],
        )
        .unwrap();
        assert!(matches!(nash_equilibrium(&g), Err(Error::Singular { stage: 1, .. })));
    }
}

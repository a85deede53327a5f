//! Stability certificates for the averaged error system `θ̃̇ = 𝒜θ̃`.
//!
//! Gershgorin discs certify that `𝒜` is Hurwitz; the Lyapunov equation
//! `P𝒜 + 𝒜ᵀP = −Q` then yields `M = √(λmax(P)/λmin(P))` and
//! `m = λmin(Q)/λmax(P)`.
//!
//! `m` is the decay rate of `V = θ̃ᵀPθ̃`. The Euclidean norm is the square
//! root of a quantity bounded by `V`, so it decays at `m/2`; that rate is
//! exposed separately as [`StabilityReport::norm_decay_rate`].

use alloc::format;
use alloc::vec::Vec;

use crate::averaging::{error_matrix, ErrorMatrix};
use crate::error::{check_len, Error, Result};
use crate::game::QuadraticGame;
use crate::linalg::{self, Matrix};
use crate::seeker::SeekerParams;
use crate::sim::Trajectory;

/// One Gershgorin disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disc {
    /// Diagonal entry.
    pub center: f64,
    /// Off-diagonal absolute row sum.
    pub radius: f64,
}

impl Disc {
    /// Rightmost real point of the disc.
    pub fn right_edge(&self) -> f64 {
        self.center + self.radius
    }
}

/// Discs of a matrix and whether they all sit in the open left half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct GershgorinReport {
    /// One disc per row.
    pub discs: Vec<Disc>,
    /// `center + radius < 0` for every disc.
    pub pass: bool,
}

/// Row discs of an arbitrary square matrix.
pub fn gershgorin_discs(a: &Matrix) -> GershgorinReport {
    let discs: Vec<Disc> = (0..a.rows())
        .map(|i| Disc {
            center: a[(i, i)],
            radius: (0..a.cols()).filter(|&j| j != i).map(|j| a[(i, j)].abs()).sum(),
        })
        .collect();
    let pass = discs.iter().all(|d| d.right_edge() < 0.0);
    GershgorinReport { discs, pass }
}

/// Gershgorin discs of the error matrix.
pub fn gershgorin_check(em: &ErrorMatrix) -> GershgorinReport {
    gershgorin_discs(&em.a_matrix)
}

/// Solve `P𝒜 + 𝒜ᵀP = −Q` through the stacked `N²×N²` linear system.
pub fn solve_lyapunov(a_matrix: &Matrix, q_matrix: &Matrix) -> Result<Matrix> {
    if !a_matrix.is_square() || !q_matrix.is_square() {
        return Err(Error::invalid("Lyapunov equation needs square matrices"));
    }
    let n = a_matrix.rows();
    check_len("Q size", n, q_matrix.rows())?;
    let idx = |i: usize, j: usize| i * n + j;

    // Row (i, j) of the stacked system: Σ_k P_ik 𝒜_kj + Σ_k 𝒜_ki P_kj = −Q_ij.
    let mut big = Matrix::zeros(n * n, n * n);
    let mut rhs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let row = idx(i, j);
            for k in 0..n {
                big[(row, idx(i, k))] += a_matrix[(k, j)];
                big[(row, idx(k, j))] += a_matrix[(k, i)];
            }
            rhs.push(-q_matrix[(i, j)]);
        }
    }
    let stacked = linalg::solve(&big, &rhs).map_err(|e| match e {
        Error::Singular { stage, pivot } => Error::StabilityPrecondition(format!(
            "Lyapunov system singular (pivot {pivot:e} at stage {stage}); the matrix is not Hurwitz"
        )),
        other => other,
    })?;
    let mut p = Matrix::from_row_slice(n, n, &stacked)?;
    p.symmetrize();
    Ok(p)
}

/// Constants `M` and `m` of the exponential estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    /// `√(λmax(P)/λmin(P))`
    pub m_big: f64,
    /// `λmin(Q)/λmax(P)`
    pub m_small: f64,
}

/// `M` and `m` from symmetric positive-definite `P` and `Q`.
pub fn bound_constants(p: &Matrix, q: &Matrix) -> Result<BoundConstants> {
    for (name, mat) in [("P", p), ("Q", q)] {
        if !mat.is_square() {
            return Err(Error::invalid(format!("{name} must be square")));
        }
        let tol = 1e-9 * mat.max_abs().max(1.0);
        if mat.asymmetry() > tol {
            return Err(Error::invalid(format!("{name} must be symmetric")));
        }
    }
    let p_eig = linalg::symmetric_eigenvalues(p)?;
    let q_eig = linalg::symmetric_eigenvalues(q)?;
    let (p_min, p_max) = (p_eig[0], p_eig[p_eig.len() - 1]);
    let q_min = q_eig[0];
    if !(p_min > 0.0) {
        return Err(Error::invalid(format!("P is not positive definite (λmin = {p_min:e})")));
    }
    if !(q_min > 0.0) {
        return Err(Error::invalid(format!("Q is not positive definite (λmin = {q_min:e})")));
    }
    Ok(BoundConstants {
        m_big: libm::sqrt(p_max / p_min),
        m_small: q_min / p_max,
    })
}

/// Outcome of checking a trajectory against `M·e^{−rate·t}·‖θ̃(0)‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    /// Largest `‖θ̄(t) − θ*‖ / (M·e^{−rate·t}·‖θ̄(0) − θ*‖)` over the grid.
    pub max_ratio: f64,
    /// Time at which `max_ratio` occurs.
    pub worst_time: f64,
    /// `max(0, max_ratio − 1)`.
    pub max_relative_violation: f64,
    /// `max_ratio ≤ 1 + slack`.
    pub pass: bool,
}

/// Check `‖θ̄(t) − θ*‖ ≤ (1 + slack)·M·e^{−rate·t}·‖θ̄(0) − θ*‖` at every
/// grid time.
pub fn verify_exponential_bound(
    traj: &Trajectory,
    theta_star: &[f64],
    m_big: f64,
    rate: f64,
    slack: f64,
) -> Result<BoundCheck> {
    if traj.is_empty() {
        return Err(Error::invalid("cannot check a bound on an empty trajectory"));
    }
    if !(slack >= 0.0) {
        return Err(Error::invalid("slack must be nonnegative"));
    }
    check_len("theta_star", traj.dim(), theta_star.len())?;
    let dist = |s: &[f64]| -> f64 {
        libm::sqrt(s.iter().zip(theta_star).map(|(a, b)| (a - b) * (a - b)).sum())
    };
    let t0 = traj.times[0];
    let initial = dist(&traj.states[0]);

    let mut max_ratio: f64 = 0.0;
    let mut worst_time = t0;
    for (t, state) in traj.times.iter().zip(&traj.states) {
        let lhs = dist(state);
        let bound = m_big * libm::exp(-rate * (t - t0)) * initial;
        let ratio = if lhs == 0.0 {
            0.0
        } else if bound == 0.0 {
            f64::INFINITY
        } else {
            lhs / bound
        };
        if ratio > max_ratio {
            max_ratio = ratio;
            worst_time = *t;
        }
    }
    Ok(BoundCheck {
        max_ratio,
        worst_time,
        max_relative_violation: (max_ratio - 1.0).max(0.0),
        pass: max_ratio <= 1.0 + slack,
    })
}

/// Everything the stability argument produces for one game and gain set.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// `𝒜`
    pub a_matrix: Matrix,
    /// Gershgorin discs of `𝒜`.
    pub discs: Vec<Disc>,
    /// Every disc strictly inside the left half-plane.
    pub all_left_half_plane: bool,
    /// Lyapunov solution `P`.
    pub p_matrix: Matrix,
    /// Lyapunov weight `Q`.
    pub q_matrix: Matrix,
    /// `M`
    pub m_big: f64,
    /// `m`
    pub m_small: f64,
    /// `m/2`, the rate at which `‖θ̃‖` itself is guaranteed to decay.
    pub norm_decay_rate: f64,
}

/// Build the full report; `q` defaults to the identity.
///
/// When the discs do not certify stability the eigenvalues of `𝒜` are
/// checked directly before solving the Lyapunov equation.
pub fn analyze_stability(
    game: &QuadraticGame,
    params: &SeekerParams,
    q: Option<Matrix>,
) -> Result<StabilityReport> {
    let em = error_matrix(game, params)?;
    let n = em.a_matrix.rows();
    let q_matrix = q.unwrap_or_else(|| Matrix::identity(n));
    let discs = gershgorin_check(&em);
    if !discs.pass {
        let eig = linalg::eigenvalues(&em.a_matrix)?;
        if let Some(bad) = eig.iter().find(|z| !(z.re < 0.0)) {
            return Err(Error::StabilityPrecondition(format!(
                "error matrix has eigenvalue {} + {}i outside the open left half-plane",
                bad.re, bad.im
            )));
        }
    }
    let p_matrix = solve_lyapunov(&em.a_matrix, &q_matrix)?;
    let consts = bound_constants(&p_matrix, &q_matrix)?;
    Ok(StabilityReport {
        a_matrix: em.a_matrix,
        discs: discs.discs,
        all_left_half_plane: discs.pass,
        p_matrix,
        q_matrix,
        m_big: consts.m_big,
        m_small: consts.m_small,
        norm_decay_rate: 0.5 * consts.m_small,
    })
}

/// Largest `|P𝒜 + 𝒜ᵀP + Q|` entry.
pub fn lyapunov_residual(a: &Matrix, p: &Matrix, q: &Matrix) -> Result<f64> {
    let pa = p.matmul(a)?;
    let atp = a.transpose().matmul(p)?;
    Ok(pa.add(&atp)?.add(q)?.max_abs())
}

//! Four-firm price competition.
//!
//! Firm `i` sets price `θᵢ`; consumer resistances `Rᵢ`, marginal costs `mᵢ`
//! and total demand `S_d` determine each firm's quadratic profit. All
//! blocks share the denominator `D = R₂R₃R₄ + R₁R₃R₄ + R₁R₂R₄ + R₁R₂R₃`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frequency::{build_frequency_plan, FrequencyPlan, RationalRatio};
use crate::game::QuadraticGame;
use crate::linalg::Matrix;
use crate::seeker::SeekerParams;

/// Market description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OligopolyParams {
    /// Consumer resistance `Rᵢ` toward each firm's product.
    pub resistances: [f64; 4],
    /// Marginal cost `mᵢ` of each firm.
    pub marginal_costs: [f64; 4],
    /// Total consumer demand `S_d`.
    pub total_demand: f64,
}

impl OligopolyParams {
    /// `R = (0.15, 0.30, 0.60, 1)`, `m = (30, 30, 25, 20)`, `S_d = 100`.
    pub fn reference() -> Self {
        OligopolyParams {
            resistances: [0.15, 0.30, 0.60, 1.0],
            marginal_costs: [30.0, 30.0, 25.0, 20.0],
            total_demand: 100.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if let Some(r) = self.resistances.iter().find(|r| !positive(**r)) {
            return Err(Error::invalid(format!("resistances must be positive, got {r}")));
        }
        if let Some(m) = self.marginal_costs.iter().find(|m| !positive(**m)) {
            return Err(Error::invalid(format!("marginal costs must be positive, got {m}")));
        }
        if !positive(self.total_demand) {
            return Err(Error::invalid(format!(
                "total demand must be positive, got {}",
                self.total_demand
            )));
        }
        Ok(())
    }

    /// `D`, the sum of the four triple products of resistances.
    pub fn denominator(&self) -> f64 {
        (0..4).map(|i| self.product_excluding(&[i])).sum()
    }

    fn product_excluding(&self, skip: &[usize]) -> f64 {
        (0..4)
            .filter(|k| !skip.contains(k))
            .map(|k| self.resistances[k])
            .product()
    }
}

/// Profit game of the four firms.
///
/// For firm `i` and each rival `j`, the coupling weight is the product of
/// the two resistances other than `Rᵢ` and `Rⱼ`. `Hⁱ` carries
/// `−2·Σⱼ weightⱼ` at `(i, i)` and `weightⱼ` at `(i, j)` and `(j, i)`;
/// `hⁱ` carries `mᵢ·Σⱼ weightⱼ + S_d·Π_{k≠i}Rₖ` at `i` and `−mᵢ·weightⱼ`
/// at `j`; `cⁱ = −mᵢ·S_d·Π_{k≠i}Rₖ`. Everything is divided by `D`.
pub fn build_oligopoly(p: &OligopolyParams) -> Result<QuadraticGame> {
    p.validate()?;
    let d = p.denominator();
    let mut hessians = Vec::with_capacity(4);
    let mut linear_terms = Vec::with_capacity(4);
    let mut constants = Vec::with_capacity(4);

    for i in 0..4 {
        let mut hess = Matrix::zeros(4, 4);
        let mut lin = vec![0.0; 4];
        let rivals_product = p.product_excluding(&[i]);
        let mut weight_sum = 0.0;
        for j in (0..4).filter(|&j| j != i) {
            let weight = p.product_excluding(&[i, j]);
            hess[(i, j)] = weight / d;
            hess[(j, i)] = weight / d;
            lin[j] = -p.marginal_costs[i] * weight / d;
            weight_sum += weight;
        }
        hess[(i, i)] = -2.0 * weight_sum / d;
        lin[i] = (p.marginal_costs[i] * weight_sum + p.total_demand * rivals_product) / d;
        hessians.push(hess);
        linear_terms.push(lin);
        constants.push(-p.marginal_costs[i] * p.total_demand * rivals_product / d);
    }
    QuadraticGame::new(hessians, linear_terms, constants)
}

/// Complete reference configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceScenario {
    /// Reference market game.
    pub game: QuadraticGame,
    /// `α = 0.05` for everyone, `k = (6, 18, 10, 24)`.
    pub seeker: SeekerParams,
    /// `ω = 1`, `a = (30, 24, 44, 36)`.
    pub plan: FrequencyPlan,
    /// `θ(0) = (52, 40.93, 33.5, 35.09)`.
    pub theta0: Vec<f64>,
    /// 100 s.
    pub t_end: f64,
}

/// The reference oligopoly scenario.
pub fn reference_scenario() -> ReferenceScenario {
    let game = build_oligopoly(&OligopolyParams::reference()).expect("reference parameters are valid");
    let seeker = SeekerParams::new(vec![0.05; 4], vec![6.0, 18.0, 10.0, 24.0])
        .expect("reference gains are valid");
    let ratios: Vec<RationalRatio> = [30, 24, 44, 36]
        .iter()
        .map(|&p| RationalRatio::integer(p).expect("positive"))
        .collect();
    let plan = build_frequency_plan(&ratios, 1.0).expect("reference frequencies are distinct");
    ReferenceScenario {
        game,
        seeker,
        plan,
        theta0: vec![52.0, 40.93, 33.5, 35.09],
        t_end: 100.0,
    }
}

//! Rational probing frequencies.
//!
//! Each player dithers at `ωᵢ = aᵢ·ω` with `aᵢ = pᵢ/qᵢ` rational and all
//! `aᵢ` distinct. With `q = Πqᵢ` and `ω̃ = ω/q`, every frequency is an
//! integer multiple `nᵢ·ω̃`, `nᵢ = pᵢ·Π_{j≠i} qⱼ`, so the whole dither is
//! `2π/ω̃`-periodic.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Positive rational `p/q` kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalRatio {
    p: u64,
    q: u64,
}

impl RationalRatio {
    /// Reduce `p/q`; both must be at least 1.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::invalid(format!(
                "frequency ratio {p}/{q} must have positive numerator and denominator"
            )));
        }
        let g = p.gcd(&q);
        Ok(RationalRatio { p: p / g, q: q / g })
    }

    /// Integer ratio `p/1`.
    pub fn integer(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Numerator.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Denominator.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Value as a float.
    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

/// Derived frequency structure for a set of players.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyPlan {
    /// `ω`
    pub base_omega: f64,
    /// `aᵢ`
    pub ratios: Vec<RationalRatio>,
    /// `q = Πqᵢ`
    pub q_product: u64,
    /// `ω̃ = ω/q`
    pub omega_tilde: f64,
    /// `nᵢ`
    pub multipliers: Vec<u64>,
    /// `ωᵢ = aᵢω`
    pub omegas: Vec<f64>,
}

impl FrequencyPlan {
    /// Same ratios with `ω` multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        build_frequency_plan(&self.ratios, self.base_omega * factor)
    }

    /// Largest `ωᵢ`.
    pub fn max_omega(&self) -> f64 {
        self.omegas.iter().copied().fold(0.0, f64::max)
    }

    /// Common period `2π/ω̃` of all dithers.
    pub fn period(&self) -> f64 {
        2.0 * core::f64::consts::PI / self.omega_tilde
    }
}

/// Index pairs `(i, j)`, `i < j`, whose ratios coincide.
pub fn validate_distinct(ratios: &[RationalRatio]) -> core::result::Result<(), Vec<(usize, usize)>> {
    let mut collisions = Vec::new();
    for i in 0..ratios.len() {
        for j in (i + 1)..ratios.len() {
            if ratios[i] == ratios[j] {
                collisions.push((i, j));
            }
        }
    }
    if collisions.is_empty() {
        Ok(())
    } else {
        Err(collisions)
    }
}

/// Build the plan for `ratios` around base frequency `base_omega`.
pub fn build_frequency_plan(ratios: &[RationalRatio], base_omega: f64) -> Result<FrequencyPlan> {
    if ratios.is_empty() {
        return Err(Error::invalid("frequency plan needs at least one ratio"));
    }
    if !(base_omega > 0.0 && base_omega.is_finite()) {
        return Err(Error::invalid(format!(
            "base frequency must be positive and finite, got {base_omega}"
        )));
    }
    if let Err(pairs) = validate_distinct(ratios) {
        let (i, j) = pairs[0];
        return Err(Error::AssumptionViolation {
            assumption: "distinct frequency ratios",
            detail: format!(
                "players {i} and {j} share ratio {}/{}",
                ratios[i].p, ratios[i].q
            ),
        });
    }

    let q_product = ratios
        .iter()
        .try_fold(1u64, |acc, r| acc.checked_mul(r.q))
        .ok_or(Error::Overflow("q = product of ratio denominators"))?;
    let multipliers = ratios
        .iter()
        .enumerate()
        .map(|(i, r)| {
            ratios
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .try_fold(r.p, |acc, (_, other)| acc.checked_mul(other.q))
                .ok_or(Error::Overflow("integer frequency multiplier"))
        })
        .collect::<Result<Vec<u64>>>()?;
    let omega_tilde = base_omega / q_product as f64;
    let omegas = ratios.iter().map(|r| r.p as f64 * base_omega / r.q as f64).collect();

    Ok(FrequencyPlan {
        base_omega,
        ratios: ratios.to_vec(),
        q_product,
        omega_tilde,
        multipliers,
        omegas,
    })
}

//! CSV and JSON writers.
//!
//! CSV numbers use `{:.16e}`: 17 significant digits, enough to round-trip
//! any double. Nothing time-dependent is ever written, so identical inputs
//! give identical bytes.

use std::io::{self, Write};

use lbnes_core::{
    DominanceReport, FrequencyPlan, Matrix, NashPoint, NuCoefficient, StabilityReport,
    SweepResult, Trajectory,
};
use serde::Serialize;

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// `t,theta_1,…,theta_N[,J_1,…,J_N]`, one row per recorded time.
pub fn write_trajectory_csv<W: Write>(mut w: W, traj: &Trajectory) -> io::Result<()> {
    let n = traj.dim();
    let mut header = vec!["t".to_string()];
    header.extend((1..=n).map(|i| format!("theta_{i}")));
    if traj.payoffs.is_some() {
        header.extend((1..=n).map(|i| format!("J_{i}")));
    }
    writeln!(w, "{}", header.join(","))?;

    for (k, (t, state)) in traj.times.iter().zip(&traj.states).enumerate() {
        let mut row = Vec::with_capacity(1 + 2 * n);
        row.push(num(*t));
        row.extend(state.iter().map(|v| num(*v)));
        if let Some(payoffs) = &traj.payoffs {
            row.extend(payoffs[k].iter().map(|v| num(*v)));
        }
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()
}

/// `omega_tilde,sup_error`, one row per multiplier.
pub fn write_sweep_csv<W: Write>(mut w: W, sweep: &SweepResult) -> io::Result<()> {
    writeln!(w, "omega_tilde,sup_error")?;
    for (om, err) in sweep.omega_tildes.iter().zip(&sweep.sup_errors) {
        writeln!(w, "{},{}", num(*om), num(*err))?;
    }
    w.flush()
}

#[derive(Debug, Serialize)]
pub struct SweepSummary<'a> {
    pub multipliers: &'a [u32],
    pub omega_tildes: &'a [f64],
    pub sup_errors: &'a [f64],
    pub loglog_slope: f64,
    /// Informational only.
    pub strictly_decreasing: bool,
}

impl<'a> SweepSummary<'a> {
    pub fn new(multipliers: &'a [u32], sweep: &'a SweepResult) -> Self {
        SweepSummary {
            multipliers,
            omega_tildes: &sweep.omega_tildes,
            sup_errors: &sweep.sup_errors,
            loglog_slope: sweep.loglog_slope,
            strictly_decreasing: sweep.is_strictly_decreasing(),
        }
    }
}

#[derive(Debug, Serialize)]
struct NashJson<'a> {
    theta_star: &'a [f64],
    payoffs: &'a [f64],
}

#[derive(Debug, Serialize)]
struct DominanceJson<'a> {
    margins: &'a [f64],
    pass: bool,
}

#[derive(Debug, Serialize)]
struct PlanJson<'a> {
    base_omega: f64,
    ratios: Vec<[u64; 2]>,
    q_product: u64,
    omega_tilde: f64,
    multipliers: &'a [u64],
    omegas: &'a [f64],
}

#[derive(Debug, Serialize)]
struct NuJson {
    k: u8,
    l: u8,
    n_i: u64,
    n_j: u64,
    value: f64,
}

#[derive(Debug, Serialize)]
struct DiscJson {
    center: f64,
    radius: f64,
}

#[derive(Debug, Serialize)]
struct StabilityJson {
    a_matrix: Vec<Vec<f64>>,
    discs: Vec<DiscJson>,
    all_left_half_plane: bool,
    p_matrix: Vec<Vec<f64>>,
    q_matrix: Vec<Vec<f64>>,
    m_big: f64,
    m_small: f64,
    norm_decay_rate: f64,
}

#[derive(Debug, Serialize)]
struct AnalyzeJson<'a> {
    nash: NashJson<'a>,
    dominance: DominanceJson<'a>,
    frequency_plan: PlanJson<'a>,
    nu_table: Vec<NuJson>,
    stability: StabilityJson,
}

/// Everything `analyze` reports, as pretty JSON with a trailing newline.
pub fn analyze_json(
    nash: &NashPoint,
    dominance: &DominanceReport,
    plan: &FrequencyPlan,
    nu: &[NuCoefficient],
    stability: &StabilityReport,
) -> String {
    let rows = |m: &Matrix| m.to_rows();
    let doc = AnalyzeJson {
        nash: NashJson {
            theta_star: &nash.actions,
            payoffs: &nash.payoffs,
        },
        dominance: DominanceJson {
            margins: &dominance.margins,
            pass: dominance.pass,
        },
        frequency_plan: PlanJson {
            base_omega: plan.base_omega,
            ratios: plan.ratios.iter().map(|r| [r.p(), r.q()]).collect(),
            q_product: plan.q_product,
            omega_tilde: plan.omega_tilde,
            multipliers: &plan.multipliers,
            omegas: &plan.omegas,
        },
        nu_table: nu
            .iter()
            .map(|c| NuJson {
                k: c.k,
                l: c.l,
                n_i: c.n_i,
                n_j: c.n_j,
                value: c.value,
            })
            .collect(),
        stability: StabilityJson {
            a_matrix: rows(&stability.a_matrix),
            discs: stability
                .discs
                .iter()
                .map(|d| DiscJson {
                    center: d.center,
                    radius: d.radius,
                })
                .collect(),
            all_left_half_plane: stability.all_left_half_plane,
            p_matrix: rows(&stability.p_matrix),
            q_matrix: rows(&stability.q_matrix),
            m_big: stability.m_big,
            m_small: stability.m_small,
            norm_decay_rate: stability.norm_decay_rate,
        },
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn sweep_json(summary: &SweepSummary<'_>) -> String {
    let mut text = serde_json::to_string_pretty(summary).expect("plain data serializes");
    text.push('\n');
    text
}

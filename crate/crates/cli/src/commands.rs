//! One function per subcommand. Each returns the bytes it would print, or
//! writes files, and reports failures tagged with the stage that failed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use lbnes_core::sim::record_times;
use lbnes_core::{
    analyze_stability, check_diagonal_dominance, closed_form_averaged, error_matrix,
    nash_equilibrium, nu_table, reference_scenario, run_seeker, DEFAULT_NU_SUBINTERVALS,
};

use crate::error::CliError;
use crate::export::{self, SweepSummary};
use crate::scenario::{parse_scenario, Scenario};
use crate::sweep::parallel_sweep;

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(CliError::io("read scenario", path))?;
    parse_scenario(&text)
}

/// Write to `out`, or return the bytes for stdout.
pub fn deliver(bytes: Vec<u8>, out: Option<&Path>) -> Result<Option<Vec<u8>>, CliError> {
    match out {
        Some(p) => {
            fs::write(p, &bytes).map_err(CliError::io("write output", p))?;
            Ok(None)
        }
        None => Ok(Some(bytes)),
    }
}

fn horizon(scenario: &Scenario, t_end: Option<f64>) -> Result<f64, CliError> {
    let t = t_end.unwrap_or(scenario.t_end);
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(CliError::validation("arguments", "--t-end", format!("must be positive, got {t}")))
    }
}

pub fn analyze(scenario: &Scenario) -> Result<Vec<u8>, CliError> {
    let nash = nash_equilibrium(&scenario.game).map_err(CliError::model("nash equilibrium"))?;
    let dominance = check_diagonal_dominance(&scenario.game);
    let plan = scenario.plan();
    let nu = nu_table(&plan, DEFAULT_NU_SUBINTERVALS).map_err(CliError::model("averaging coefficients"))?;
    let report = analyze_stability(&scenario.game, &scenario.seeker, None)
        .map_err(CliError::model("stability analysis"))?;
    Ok(export::analyze_json(&nash, &dominance, &plan, &nu, &report).into_bytes())
}

pub fn simulate(scenario: &Scenario, t_end: Option<f64>) -> Result<Vec<u8>, CliError> {
    let t_end = horizon(scenario, t_end)?;
    let traj = run_seeker(
        &scenario.game,
        &scenario.seeker,
        &scenario.plan(),
        &scenario.theta0,
        t_end,
        scenario.settings,
    )
    .map_err(CliError::model("simulation"))?;
    let mut buf = Vec::new();
    export::write_trajectory_csv(&mut buf, &traj).expect("writing to memory cannot fail");
    Ok(buf)
}

/// Closed-form averaged trajectory on the same grid `simulate` records.
pub fn average(scenario: &Scenario, t_end: Option<f64>) -> Result<Vec<u8>, CliError> {
    let t_end = horizon(scenario, t_end)?;
    let stage = "averaged trajectory";
    let nash = nash_equilibrium(&scenario.game).map_err(CliError::model(stage))?;
    let em = error_matrix(&scenario.game, &scenario.seeker).map_err(CliError::model(stage))?;
    let step = scenario.settings.step_for(&scenario.plan());
    let times = record_times(t_end, step, scenario.settings.record_every);
    let traj = closed_form_averaged(&em, &scenario.theta0, &nash.actions, &times)
        .map_err(CliError::model(stage))?
        .with_payoffs(&scenario.game);
    let mut buf = Vec::new();
    export::write_trajectory_csv(&mut buf, &traj).expect("writing to memory cannot fail");
    Ok(buf)
}

/// Runs the sweep, writes `sweep.csv` and `sweep.json` into `out_dir`, and
/// returns the JSON summary.
pub fn sweep(
    scenario: &Scenario,
    multipliers: &[u32],
    t_end: Option<f64>,
    out_dir: &Path,
) -> Result<Vec<u8>, CliError> {
    let t_end = horizon(scenario, t_end)?;
    let result = parallel_sweep(scenario, multipliers, t_end).map_err(CliError::model("sweep"))?;
    let json = export::sweep_json(&SweepSummary::new(multipliers, &result));

    fs::create_dir_all(out_dir).map_err(CliError::io("create output directory", out_dir))?;
    let csv_path = out_dir.join("sweep.csv");
    let mut csv = Vec::new();
    export::write_sweep_csv(&mut csv, &result).expect("writing to memory cannot fail");
    fs::write(&csv_path, csv).map_err(CliError::io("write sweep csv", &csv_path))?;
    let json_path = out_dir.join("sweep.json");
    fs::write(&json_path, &json).map_err(CliError::io("write sweep json", &json_path))?;
    Ok(json.into_bytes())
}

pub fn emit_oligopoly(path: &PathBuf) -> Result<(), CliError> {
    let text = Scenario::from_bundle(reference_scenario()).to_json();
    let mut f = fs::File::create(path).map_err(CliError::io("emit scenario", path))?;
    f.write_all(text.as_bytes()).map_err(CliError::io("emit scenario", path))
}

/// Parse `1,2,4,8`.
pub fn parse_multipliers(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim().parse::<u32>().map_err(|e| {
                CliError::validation("arguments", "--multipliers", format!("entry {s:?} is not a positive integer: {e}"))
            })
        })
        .collect()
}

//! JSON scenario files.
//!
//! A scenario is one flat object: the quadratic game, seeker gains, the
//! rational frequency ratios, the initial actions and the horizon. Matrices
//! are row-major nested arrays and ratios are `[p, q]` integer pairs.

use lbnes_core::{
    build_frequency_plan, FrequencyPlan, Matrix, ReferenceScenario, QuadraticGame, RationalRatio,
    SeekerParams, SimSettings,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

const STAGE: &str = "scenario";

fn default_steps() -> usize {
    SimSettings::default().steps_per_fast_period
}

fn default_record_every() -> usize {
    SimSettings::default().record_every
}

/// On-disk layout, field for field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub n_players: usize,
    pub hessians: Vec<Vec<Vec<f64>>>,
    pub linear_terms: Vec<Vec<f64>>,
    pub constants: Vec<f64>,
    pub alphas: Vec<f64>,
    pub gains: Vec<f64>,
    pub ratios: Vec<[u64; 2]>,
    pub base_omega: f64,
    pub theta0: Vec<f64>,
    pub t_end: f64,
    #[serde(default = "default_steps")]
    pub steps_per_fast_period: usize,
    #[serde(default = "default_record_every")]
    pub record_every: usize,
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub game: QuadraticGame,
    pub seeker: SeekerParams,
    pub ratios: Vec<RationalRatio>,
    pub base_omega: f64,
    pub theta0: Vec<f64>,
    pub t_end: f64,
    pub settings: SimSettings,
}

impl Scenario {
    pub fn plan(&self) -> FrequencyPlan {
        build_frequency_plan(&self.ratios, self.base_omega)
            .expect("ratios and base frequency were validated on construction")
    }

    pub fn from_bundle(bundle: ReferenceScenario) -> Self {
        Scenario {
            game: bundle.game,
            seeker: bundle.seeker,
            ratios: bundle.plan.ratios,
            base_omega: bundle.plan.base_omega,
            theta0: bundle.theta0,
            t_end: bundle.t_end,
            settings: SimSettings::default(),
        }
    }

    pub fn to_file(&self) -> ScenarioFile {
        ScenarioFile {
            n_players: self.game.n_players(),
            hessians: self.game.hessians().iter().map(Matrix::to_rows).collect(),
            linear_terms: self.game.linear_terms().to_vec(),
            constants: self.game.constants().to_vec(),
            alphas: self.seeker.alphas().to_vec(),
            gains: self.seeker.gains().to_vec(),
            ratios: self.ratios.iter().map(|r| [r.p(), r.q()]).collect(),
            base_omega: self.base_omega,
            theta0: self.theta0.clone(),
            t_end: self.t_end,
            steps_per_fast_period: self.settings.steps_per_fast_period,
            record_every: self.settings.record_every,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes");
        text.push('\n');
        text
    }
}

/// Parse and validate a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: ScenarioFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse {
            stage: STAGE,
            path,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })?;
    validate(file)
}

fn invalid(path: impl Into<String>, rule: impl Into<String>) -> CliError {
    CliError::validation(STAGE, path, rule)
}

fn check_len(path: &str, expected: usize, found: usize) -> Result<(), CliError> {
    if expected == found {
        Ok(())
    } else {
        Err(invalid(path, format!("has length {found}, expected {expected}")))
    }
}

fn check_finite(path: impl Fn() -> String, v: f64) -> Result<(), CliError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(path(), "must be finite"))
    }
}

fn check_positive(path: impl Fn() -> String, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(path(), format!("must be positive, got {v}")))
    }
}

/// Check every field against its invariants and build the core types.
pub fn validate(file: ScenarioFile) -> Result<Scenario, CliError> {
    let n = file.n_players;
    if n == 0 {
        return Err(invalid("n_players", "must be at least 1"));
    }

    check_len("hessians", n, file.hessians.len())?;
    let mut hessians = Vec::with_capacity(n);
    for (i, h) in file.hessians.iter().enumerate() {
        check_len(&format!("hessians[{i}]"), n, h.len())?;
        for (r, row) in h.iter().enumerate() {
            check_len(&format!("hessians[{i}][{r}]"), n, row.len())?;
            for (c, &v) in row.iter().enumerate() {
                check_finite(|| format!("hessians[{i}][{r}][{c}]"), v)?;
            }
        }
        for r in 0..n {
            for c in (r + 1)..n {
                if h[r][c] != h[c][r] {
                    return Err(invalid(
                        format!("hessians[{i}][{r}][{c}]"),
                        format!("must equal hessians[{i}][{c}][{r}] (symmetric Hessian)"),
                    ));
                }
            }
        }
        if !(h[i][i] < 0.0) {
            return Err(invalid(format!("hessians[{i}][{i}][{i}]"), "must be negative"));
        }
        hessians.push(Matrix::from_rows(h).expect("rows checked above"));
    }

    check_len("linear_terms", n, file.linear_terms.len())?;
    for (i, row) in file.linear_terms.iter().enumerate() {
        check_len(&format!("linear_terms[{i}]"), n, row.len())?;
        for (j, &v) in row.iter().enumerate() {
            check_finite(|| format!("linear_terms[{i}][{j}]"), v)?;
        }
    }
    check_len("constants", n, file.constants.len())?;
    for (i, &v) in file.constants.iter().enumerate() {
        check_finite(|| format!("constants[{i}]"), v)?;
    }

    check_len("alphas", n, file.alphas.len())?;
    for (i, &v) in file.alphas.iter().enumerate() {
        check_positive(|| format!("alphas[{i}]"), v)?;
    }
    check_len("gains", n, file.gains.len())?;
    for (i, &v) in file.gains.iter().enumerate() {
        check_positive(|| format!("gains[{i}]"), v)?;
    }

    check_len("ratios", n, file.ratios.len())?;
    let mut ratios = Vec::with_capacity(n);
    for (i, &[p, q]) in file.ratios.iter().enumerate() {
        let r = RationalRatio::new(p, q)
            .map_err(|_| invalid(format!("ratios[{i}]"), "must have a positive numerator and denominator"))?;
        if let Some(j) = ratios.iter().position(|other| *other == r) {
            return Err(invalid(
                format!("ratios[{i}]"),
                format!("duplicates ratios[{j}]; dither frequency ratios must be pairwise distinct"),
            ));
        }
        ratios.push(r);
    }
    check_positive(|| "base_omega".into(), file.base_omega)?;

    check_len("theta0", n, file.theta0.len())?;
    for (i, &v) in file.theta0.iter().enumerate() {
        check_finite(|| format!("theta0[{i}]"), v)?;
    }
    check_positive(|| "t_end".into(), file.t_end)?;
    if file.steps_per_fast_period < 20 {
        return Err(invalid(
            "steps_per_fast_period",
            format!("must be at least 20, got {}", file.steps_per_fast_period),
        ));
    }
    if file.record_every == 0 {
        return Err(invalid("record_every", "must be at least 1"));
    }

    let model = |path: &'static str| move |e: lbnes_core::Error| invalid(path, e.to_string());
    let game = QuadraticGame::new(hessians, file.linear_terms, file.constants).map_err(model("hessians"))?;
    let seeker = SeekerParams::new(file.alphas, file.gains).map_err(model("gains"))?;
    build_frequency_plan(&ratios, file.base_omega).map_err(model("ratios"))?;

    Ok(Scenario {
        game,
        seeker,
        ratios,
        base_omega: file.base_omega,
        theta0: file.theta0,
        t_end: file.t_end,
        settings: SimSettings {
            steps_per_fast_period: file.steps_per_fast_period,
            record_every: file.record_every,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_fill_in() {
        let text = r#"{"n_players":1,"hessians":[[[-2.0]]],"linear_terms":[[2.0]],
            "constants":[0.0],"alphas":[0.05],"gains":[6.0],"ratios":[[1,1]],
            "base_omega":30.0,"theta0":[0.0],"t_end":5.0}"#;
        let s = parse_scenario(text).unwrap();
        assert_eq!(s.settings, SimSettings::default());
        assert_eq!(s.plan().omegas, vec![30.0]);
    }
}

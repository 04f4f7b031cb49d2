//! Batch front end: a declarative experiment config, one command per run,
//! reports written atomically with the config echoed verbatim.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constants::{
    abt_quasi_greedy_estimate, basis_constant_estimate, coordinate_product, democracy_constant,
    quasi_greedy_estimate, suppression_unconditional_estimate, t_quasi_greedy_estimate,
    unconditional_estimate, PairFamily,
};
use crate::error::{Error, Result};
use crate::functionals::{d_m_f, default_candidates, sigma_m, sigma_tilde_m, SearchBudget};
use crate::greedy::{greedy_ordering, greedy_sum, DEFAULT_ENUMERATION_CAP};
use crate::samples::{banded_family, default_family};
use crate::spaces::{build_section4_space, check_sparseness, eval_norm, BuildMode, SpaceSpec};
use crate::vector::FiniteVector;
use crate::verify::{
    suite_abt_weak, suite_democracy_transfer, suite_disjoint_democracy, suite_greedy_inequality,
    suite_indicator_bounds, suite_projection_bound, suite_space_witnesses, suite_sparse_block,
    suite_t_weak, FunctionalChoice, GreedyInequalityConfig, OrderRule, SuiteReport,
};
use crate::weights::WeightFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Everything a run needs; embedded verbatim in its report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub space: SpaceSpec,
    pub command: Command,
    pub seed: u64,
    pub format: Format,
}

/// Shared numeric knobs; commands read the ones they need.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cq: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Command {
    Norm { vector: Value },
    Greedy { vector: Value, m: usize },
    Functional { which: String, vector: Value, m: usize, params: Params },
    Constants { which: String, params: Params },
    Suite { which: String, params: Params },
}

/// Outcome of a run: the process exit status, a one-line summary, and the
/// full report document.
#[derive(Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub summary: String,
    pub report: Value,
}

fn parse_weight(text: &Option<String>) -> Result<Option<WeightFunction>> {
    text.as_deref().map(str::parse).transpose()
}

fn vector_from_value(value: &Value) -> Result<FiniteVector> {
    FiniteVector::from_json_str(&value.to_string())
}

impl Params {
    fn family(&self, seed: u64) -> crate::samples::SampleFamily {
        default_family(
            self.horizon.unwrap_or(12),
            self.count.unwrap_or(50),
            self.max_size.unwrap_or(6),
            seed,
        )
    }
}

/// Executes the configured command and, when `out` is given, writes the
/// report atomically (temp file in the target directory, then rename).
pub fn run(config: &ExperimentConfig, out: Option<&Path>) -> Result<RunOutcome> {
    config.space.validate()?;
    let (result, exit_code, summary) = dispatch(config)?;
    let report = json!({ "config": config, "result": result });
    if let Some(path) = out {
        write_atomically(path, config.format, &report)?;
        // Suite reports also get the flat one-check-per-row CSV alongside,
        // for plotting.
        if matches!(config.command, Command::Suite { .. }) && config.format == Format::Json {
            write_atomically(&path.with_extension("csv"), Format::Csv, &report)?;
        }
    }
    let summary = match out {
        Some(path) => format!("{summary} -> {}", path.display()),
        None => summary,
    };
    Ok(RunOutcome { exit_code, summary, report })
}

fn dispatch(config: &ExperimentConfig) -> Result<(Value, i32, String)> {
    let space = &config.space;
    let seed = config.seed;
    match &config.command {
        Command::Norm { vector } => {
            let x = vector_from_value(vector)?;
            let value = eval_norm(space, &x)?;
            Ok((json!({"norm": value}), 0, format!("{value}")))
        }
        Command::Greedy { vector, m } => {
            let x = vector_from_value(vector)?;
            let ordering = greedy_ordering(&x);
            let sum = greedy_sum(&x, *m);
            let residual = x.sub(&sum)?;
            let result = json!({
                "ordering": ordering,
                "greedy_sum": sum.to_json_value(),
                "residual_norm": eval_norm(space, &residual)?,
            });
            Ok((result, 0, format!("greedy sum of order {m} over {} support points", x.support_size())))
        }
        Command::Functional { which, vector, m, params } => {
            let x = vector_from_value(vector)?;
            let budget = SearchBudget { seed, ..SearchBudget::default() };
            let candidates = match params.horizon {
                Some(h) => (1..=h).map(crate::vector::Coord::flat).collect(),
                None => default_candidates(space, &x, *m),
            };
            let result = match which.as_str() {
                "sigma" => sigma_m(space, &x, *m, &candidates, &budget)?,
                "sigma_tilde" => sigma_tilde_m(space, &x, *m, &candidates, &budget)?,
                "dm" => {
                    let f = parse_weight(&params.f)?.unwrap_or(WeightFunction::Constant(1.0));
                    d_m_f(space, &x, *m, &f, &candidates, &budget)?
                }
                other => return Err(Error::InvalidParam(format!("unknown functional `{other}`"))),
            };
            let summary = format!("{which}_{m} = {}", result.value);
            Ok((serde_json::to_value(&result)?, 0, summary))
        }
        Command::Constants { which, params } => {
            let family = params.family(seed);
            let samples = &family.vectors;
            let max_size = params.max_size.unwrap_or(6);
            let horizon = params.horizon.unwrap_or(12);
            let f = parse_weight(&params.f)?;
            let report = match which.as_str() {
                "democracy" => democracy_constant(space, f.as_ref(), max_size, horizon, PairFamily::AllPairs)?,
                "democracy_structured" => {
                    democracy_constant(space, f.as_ref(), max_size, horizon, PairFamily::Structured)?
                }
                "disjoint_democracy" => {
                    democracy_constant(space, f.as_ref(), max_size, horizon, PairFamily::DisjointOnly)?
                }
                "super_democracy" => {
                    democracy_constant(space, f.as_ref(), max_size, horizon, PairFamily::Signed)?
                }
                "suppression" => suppression_unconditional_estimate(space, samples)?,
                "unconditional" => unconditional_estimate(space, samples)?,
                "quasi_greedy" => quasi_greedy_estimate(space, samples, DEFAULT_ENUMERATION_CAP)?,
                "t_quasi_greedy" => {
                    let t = params.t.ok_or_else(|| Error::InvalidParam("needs --t".into()))?;
                    t_quasi_greedy_estimate(space, samples, t, DEFAULT_ENUMERATION_CAP)?
                }
                "abt_quasi_greedy" => {
                    let t = params.t.ok_or_else(|| Error::InvalidParam("needs --t".into()))?;
                    let a = params.a.clone().unwrap_or(vec![1]);
                    let b = params.b.clone().unwrap_or(vec![1]);
                    abt_quasi_greedy_estimate(space, samples, &a, &b, t, DEFAULT_ENUMERATION_CAP)?
                }
                "basis" => basis_constant_estimate(space, samples)?,
                "coordinate_product" => coordinate_product(space, horizon, seed)?,
                other => return Err(Error::InvalidParam(format!("unknown constant `{other}`"))),
            };
            let summary = format!("{which} estimate = {} ({:?})", report.estimate, report.bound_direction);
            let mut value = serde_json::to_value(&report)?;
            value["sample_family"] = json!(family.description);
            Ok((value, 0, summary))
        }
        Command::Suite { which, params } => {
            let report = run_suite(space, which, params, seed)?;
            let exit = if report.passed() { 0 } else { 1 };
            let summary = report.summary();
            Ok((serde_json::to_value(&report)?, exit, summary))
        }
    }
}

fn run_suite(space: &SpaceSpec, which: &str, params: &Params, seed: u64) -> Result<SuiteReport> {
    let cq = params.cq.unwrap_or(1.0);
    match which {
        "greedy_inequality" => {
            let family = params.family(seed);
            let functional = match params.f.as_deref() {
                None => FunctionalChoice::Sigma,
                Some("sigma") => FunctionalChoice::Sigma,
                Some("sigma_tilde") => FunctionalChoice::SigmaTilde,
                Some(text) => FunctionalChoice::DF(text.parse()?),
            };
            let order_rule = match params.lambda {
                Some(lambda) => OrderRule::CeilLambda(lambda),
                None => OrderRule::M,
            };
            let config = GreedyInequalityConfig {
                m_max: params.m.unwrap_or(4),
                assert_bound: params.bound,
                budget: SearchBudget { seed, ..SearchBudget::default() },
                ..Default::default()
            };
            suite_greedy_inequality(space, &family.vectors, functional, order_rule, &config)
        }
        "indicator_bounds" => {
            let family = params.family(seed);
            suite_indicator_bounds(space, cq, &family.vectors)
        }
        "projection_bound" => {
            let t = params.t.ok_or_else(|| Error::InvalidParam("needs --t".into()))?;
            let family = banded_family(
                params.horizon.unwrap_or(12),
                params.count.unwrap_or(50),
                params.max_size.unwrap_or(6),
                t,
                1.0,
                seed,
            );
            suite_projection_bound(space, cq, &family.vectors, t)
        }
        "disjoint_democracy" => {
            suite_disjoint_democracy(space, params.max_size.unwrap_or(6), params.horizon.unwrap_or(12))
        }
        "democracy_transfer" => {
            let f = parse_weight(&params.f)?
                .ok_or_else(|| Error::InvalidParam("needs --f".into()))?;
            suite_democracy_transfer(
                space,
                &f,
                None,
                Some(cq),
                params.max_size.unwrap_or(6),
                params.horizon.unwrap_or(12),
            )
        }
        "space_witnesses" => suite_space_witnesses(seed),
        "sparse_block" => {
            let f = parse_weight(&params.f)?
                .ok_or_else(|| Error::InvalidParam("needs --f".into()))?;
            let g = params
                .g
                .as_deref()
                .ok_or_else(|| Error::InvalidParam("needs --g".into()))?
                .parse()?;
            let build = build_section4_space(&f, &g, 2, BuildMode::Certified)?;
            let sparseness = check_sparseness(&f, &g, params.max_size.unwrap_or(10), params.horizon.unwrap_or(40));
            if !sparseness.pass {
                return Err(Error::NotSparse(sparseness.summary()));
            }
            suite_sparse_block(&build, &f, params.count.unwrap_or(200), seed)
        }
        "t_weak" => {
            let t = params.t.ok_or_else(|| Error::InvalidParam("needs --t".into()))?;
            let family = params.family(seed);
            suite_t_weak(space, &family.vectors, t, params.bound)
        }
        "abt_weak" => {
            let t = params.t.ok_or_else(|| Error::InvalidParam("needs --t".into()))?;
            let a = params.a.clone().unwrap_or(vec![1, 2]);
            let b = params.b.clone().unwrap_or(vec![1, 2]);
            let family = params.family(seed);
            suite_abt_weak(space, &family.vectors, &a, &b, t, params.bound)
        }
        other => Err(Error::InvalidParam(format!("unknown suite `{other}`"))),
    }
}

fn write_atomically(path: &Path, format: Format, report: &Value) -> Result<()> {
    let rendered = match format {
        Format::Json => serde_json::to_string_pretty(report)?,
        Format::Csv => render_csv(report),
    };
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    std::io::Write::write_all(&mut tmp, rendered.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// CSV rendering: suite reports flatten one check per row; other results
/// flatten their top-level fields as key,value rows. The config echo rides
/// along as a trailing comment row.
fn render_csv(report: &Value) -> String {
    let result = &report["result"];
    let mut out = String::new();
    if result.get("checks").is_some() {
        let suite: std::result::Result<SuiteReport, _> =
            serde_json::from_value(result.clone());
        if let Ok(suite) = suite {
            out.push_str(&suite.to_csv());
        }
    } else {
        out.push_str("key,value\n");
        if let Some(map) = result.as_object() {
            for (k, v) in map {
                out.push_str(&format!("{k},\"{}\"\n", v.to_string().replace('"', "\"\"")));
            }
        }
    }
    out.push_str(&format!("# config,{}\n", report["config"].to_string().replace('"', "\"\"")));
    out
}

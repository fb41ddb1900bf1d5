//! Flat JSON run configuration and its merge with command-line flags.
//! Every config key has a flag override; flags win.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use netprio::diffusion::DiffusionConfig;
use netprio::fusion::ScoreNormalization;
use netprio::madm::{metric_criteria, Supermatrix, TopsisNormalization, WeightVector};
use netprio::pipeline::{MadmMode, PipelineConfig, STEP_NAMES};
use netprio::shortest_path::DistanceTransform;

use crate::Failure;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub alpha: Option<f64>,
    pub tolerance: Option<f64>,
    pub max_iterations: Option<usize>,
    pub np_alpha: Option<f64>,
    pub np_tolerance: Option<f64>,
    pub np_max_iterations: Option<usize>,
    pub transform: Option<String>,
    pub evidence_k: Option<usize>,
    pub mode: Option<String>,
    pub step_weights: Option<Vec<f64>>,
    pub gamma: Option<f64>,
    pub saaty_step: Option<u32>,
    pub normalization: Option<String>,
    pub topsis_normalization: Option<String>,
    pub interval_size: Option<usize>,
    pub split_weights: Option<bool>,
    pub split_seed: Option<u64>,
    pub disease: Option<String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Failure::Input(format!("bad config {}: {e}", path.display())))
    }
}

/// Tuning flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct TuningArgs {
    /// JSON config file; flags below override its keys
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Restart probability for the diffusion scorers
    #[arg(long)]
    pub alpha: Option<f64>,

    /// L1 convergence threshold for the diffusion scorers
    #[arg(long)]
    pub tolerance: Option<f64>,

    /// Iteration cap for the diffusion scorers
    #[arg(long)]
    pub max_iterations: Option<usize>,

    /// Network-propagation override for --alpha
    #[arg(long)]
    pub np_alpha: Option<f64>,

    /// Network-propagation override for --tolerance
    #[arg(long)]
    pub np_tolerance: Option<f64>,

    /// Network-propagation override for --max-iterations
    #[arg(long)]
    pub np_max_iterations: Option<usize>,

    /// Edge-confidence to path-cost transform: inverse, one-minus, neg-log
    #[arg(long)]
    pub transform: Option<String>,

    /// Number of symptom-similar diseases consulted for evidence
    #[arg(long)]
    pub evidence_k: Option<usize>,

    /// Score combination: topsis-anp, topsis-ahp, wdrs, ndos, fixed
    #[arg(long)]
    pub mode: Option<String>,

    /// Comma-separated step weights for NP,RWR,SP,EVIDENCE
    #[arg(long)]
    pub step_weights: Option<String>,

    /// Discount factor for the wdrs baseline
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Saaty points between adjacent criteria in the importance ordering
    #[arg(long)]
    pub saaty_step: Option<u32>,

    /// Step-score normalization before summation: minmax, none
    #[arg(long)]
    pub normalization: Option<String>,

    /// TOPSIS column normalization: vector, min-max
    #[arg(long)]
    pub topsis_normalization: Option<String>,

    /// Criterion supermatrix CSV declaring the ANP feedback structure
    #[arg(long)]
    pub supermatrix: Option<PathBuf>,

    /// Chromosomal neighbors per linkage interval
    #[arg(long)]
    pub interval_size: Option<usize>,

    /// Derive step weights on a random half of the seeds, evaluate on the rest
    #[arg(long)]
    pub split_weights: bool,

    /// Seed for the split-weights shuffle
    #[arg(long)]
    pub split_seed: Option<u64>,
}

pub struct ResolvedConfig {
    pub pipeline: PipelineConfig,
    /// Query disease from config (flag wins over this).
    pub disease: Option<String>,
    /// Where the supermatrix came from, for the manifest.
    pub supermatrix_path: Option<PathBuf>,
}

pub fn resolve(args: &TuningArgs) -> Result<ResolvedConfig, Failure> {
    let file = FileConfig::load(args.config.as_deref())?;
    let defaults = PipelineConfig::default();

    let alpha = args.alpha.or(file.alpha).unwrap_or(defaults.rwr.alpha);
    let tolerance = args
        .tolerance
        .or(file.tolerance)
        .unwrap_or(defaults.rwr.tolerance);
    let max_iterations = args
        .max_iterations
        .or(file.max_iterations)
        .unwrap_or(defaults.rwr.max_iterations);
    let rwr = DiffusionConfig {
        alpha,
        tolerance,
        max_iterations,
    };
    let np = DiffusionConfig {
        alpha: args.np_alpha.or(file.np_alpha).unwrap_or(alpha),
        tolerance: args.np_tolerance.or(file.np_tolerance).unwrap_or(tolerance),
        max_iterations: args
            .np_max_iterations
            .or(file.np_max_iterations)
            .unwrap_or(max_iterations),
    };

    let transform = match args.transform.as_deref().or(file.transform.as_deref()) {
        Some(text) => DistanceTransform::parse(text)?,
        None => defaults.transform,
    };
    let mode = match args.mode.as_deref().or(file.mode.as_deref()) {
        Some(text) => MadmMode::parse(text)?,
        None => defaults.mode,
    };
    let normalization = match args
        .normalization
        .as_deref()
        .or(file.normalization.as_deref())
    {
        Some(text) => ScoreNormalization::parse(text)?,
        None => defaults.normalization,
    };
    let topsis_normalization = match args
        .topsis_normalization
        .as_deref()
        .or(file.topsis_normalization.as_deref())
    {
        Some(text) => TopsisNormalization::parse(text)?,
        None => defaults.topsis_normalization,
    };

    let fixed_weights = match (&args.step_weights, &file.step_weights) {
        (Some(text), _) => Some(parse_step_weights(text)?),
        (None, Some(values)) => Some(step_weight_vector(values.clone())?),
        (None, None) => None,
    };

    let supermatrix_path = args.supermatrix.clone();
    let supermatrix = match &supermatrix_path {
        Some(path) => {
            let criterion_names: Vec<String> =
                metric_criteria().iter().map(|c| c.name.clone()).collect();
            Some(Supermatrix::from_csv_path(path, &criterion_names)?)
        }
        None => None,
    };

    let pipeline = PipelineConfig {
        rwr,
        np,
        transform,
        evidence_k: args
            .evidence_k
            .or(file.evidence_k)
            .unwrap_or(defaults.evidence_k),
        mode,
        fixed_weights,
        normalization,
        gamma: args.gamma.or(file.gamma).unwrap_or(defaults.gamma),
        saaty_step: args
            .saaty_step
            .or(file.saaty_step)
            .unwrap_or(defaults.saaty_step),
        topsis_normalization,
        supermatrix,
        neighbor_count: args
            .interval_size
            .or(file.interval_size)
            .unwrap_or(defaults.neighbor_count),
        split_weights: args.split_weights || file.split_weights.unwrap_or(false),
        split_seed: args
            .split_seed
            .or(file.split_seed)
            .unwrap_or(defaults.split_seed),
    };
    Ok(ResolvedConfig {
        pipeline,
        disease: file.disease,
        supermatrix_path,
    })
}

fn parse_step_weights(text: &str) -> Result<WeightVector, Failure> {
    let values: Vec<f64> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Input(format!("bad step weight {part:?}")))
        })
        .collect::<Result<_, _>>()?;
    step_weight_vector(values)
}

fn step_weight_vector(values: Vec<f64>) -> Result<WeightVector, Failure> {
    if values.len() != 4 {
        return Err(Failure::Input(format!(
            "step weights need exactly 4 values (NP,RWR,SP,EVIDENCE), got {}",
            values.len()
        )));
    }
    let sum: f64 = values.iter().sum();
    if !(sum > 0.0) {
        return Err(Failure::Input("step weights must sum to a positive value".into()));
    }
    let normalized: Vec<f64> = values.iter().map(|v| v / sum).collect();
    WeightVector::new(
        STEP_NAMES.iter().map(|s| s.to_string()).collect(),
        normalized,
    )
    .map_err(Failure::from)
}

/// The fully resolved configuration as a flat JSON object for manifests.
pub fn config_json(config: &PipelineConfig, disease: Option<&str>) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    map.insert("alpha".into(), config.rwr.alpha.into());
    map.insert("tolerance".into(), config.rwr.tolerance.into());
    map.insert(
        "max_iterations".into(),
        (config.rwr.max_iterations as u64).into(),
    );
    map.insert("np_alpha".into(), config.np.alpha.into());
    map.insert("np_tolerance".into(), config.np.tolerance.into());
    map.insert(
        "np_max_iterations".into(),
        (config.np.max_iterations as u64).into(),
    );
    map.insert("transform".into(), config.transform.label().into());
    map.insert("evidence_k".into(), (config.evidence_k as u64).into());
    map.insert("mode".into(), config.mode.label().into());
    if let Some(weights) = &config.fixed_weights {
        map.insert(
            "step_weights".into(),
            serde_json::Value::Array(
                weights.weights.iter().map(|&w| w.into()).collect(),
            ),
        );
    }
    map.insert(
        "normalization".into(),
        match config.normalization {
            ScoreNormalization::MinMax => "minmax",
            ScoreNormalization::None => "none",
        }
        .into(),
    );
    map.insert(
        "topsis_normalization".into(),
        match config.topsis_normalization {
            TopsisNormalization::Vector => "vector",
            TopsisNormalization::MinMax => "min-max",
        }
        .into(),
    );
    map.insert("gamma".into(), config.gamma.into());
    map.insert("saaty_step".into(), config.saaty_step.into());
    map.insert(
        "interval_size".into(),
        (config.neighbor_count as u64).into(),
    );
    map.insert("split_weights".into(), config.split_weights.into());
    map.insert("split_seed".into(), config.split_seed.into());
    if let Some(disease) = disease {
        map.insert("disease".into(), disease.into());
    }
    serde_json::Value::Object(map)
}

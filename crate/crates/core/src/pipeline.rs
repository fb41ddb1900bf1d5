//! End-to-end wiring: run the four scorers, derive fusion weights from
//! per-step cross-validation via the hybrid TOPSIS weighting, and rank
//! candidates by the fused score.
//!
//! Weight derivation and the final evaluation share one LOOCV harness.
//! By default the per-step LOOCV runs on the same seed set as the outer
//! evaluation, mirroring the original procedure even though that reuses
//! data; `split_weights` instead derives weights on a random half of the
//! seeds and evaluates on the other half.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diffusion::{
    column_normalize, diffuse, symmetric_normalize, DiffusionConfig, TransitionMatrix,
};
use crate::evaluation::{loocv_over_targets, CvReport, GenePositionTable};
use crate::evidence::{
    evidence_score, top_similar_diseases, DiseaseGeneMap, DiseaseSimilarityNetwork,
};
use crate::fusion::{
    discounted_rating, normalize_scores, order_statistics_scores, weighted_sum, FusionConfig,
    RankList, ScoreNormalization,
};
use crate::graph::{InteractionNetwork, SeedSet};
use crate::madm::{
    metric_criteria, pairwise_from_ordering, topsis_anp_weights_with, CriterionJudgments,
    DecisionMatrix, Supermatrix, TopsisNormalization, WeightVector,
};
use crate::score::{Provenance, ScoreVector};
use crate::shortest_path::{
    distances_from_seeds, score_from_tables, shortest_path_score, DistanceTransform,
    SourceDistances,
};
use crate::{Error, Result};

/// The four scoring steps in canonical order.
pub const STEP_NAMES: [&str; 4] = ["NP", "RWR", "SP", "EVIDENCE"];

const STEP_PROVENANCE: [Provenance; 4] = [
    Provenance::Np,
    Provenance::Rwr,
    Provenance::Sp,
    Provenance::Evidence,
];

/// How the four step scores are combined into the final score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MadmMode {
    /// Criterion weights from the ANP limit supermatrix, step weights
    /// from TOPSIS closeness, then weighted summation.
    #[default]
    TopsisAnp,
    /// As above with plain AHP criterion weights (no feedback).
    TopsisAhp,
    /// Weighted discounted rating over the four per-step rankings.
    Wdrs,
    /// Order-statistics rank combination over the per-step rankings.
    Ndos,
    /// Weighted summation with user-supplied step weights.
    Fixed,
}

impl MadmMode {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "topsis-anp" => Ok(MadmMode::TopsisAnp),
            "topsis-ahp" => Ok(MadmMode::TopsisAhp),
            "wdrs" => Ok(MadmMode::Wdrs),
            "ndos" => Ok(MadmMode::Ndos),
            "fixed" => Ok(MadmMode::Fixed),
            other => Err(Error::Input(format!(
                "unknown mode {other:?} (expected topsis-anp, topsis-ahp, wdrs, ndos, or fixed)"
            ))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MadmMode::TopsisAnp => "topsis-anp",
            MadmMode::TopsisAhp => "topsis-ahp",
            MadmMode::Wdrs => "wdrs",
            MadmMode::Ndos => "ndos",
            MadmMode::Fixed => "fixed",
        }
    }

    /// Whether this mode derives step weights from per-step LOOCV.
    pub fn derives_weights(self) -> bool {
        matches!(self, MadmMode::TopsisAnp | MadmMode::TopsisAhp)
    }
}

/// Everything configurable about a prioritization run.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub rwr: DiffusionConfig,
    pub np: DiffusionConfig,
    pub transform: DistanceTransform,
    /// Number of symptom-similar diseases consulted for evidence.
    pub evidence_k: usize,
    pub mode: MadmMode,
    /// Step weights for `Fixed` mode (and source weights for `Wdrs`).
    pub fixed_weights: Option<WeightVector>,
    pub normalization: ScoreNormalization,
    /// Discount factor for the rating baseline.
    pub gamma: f64,
    /// Saaty points between adjacent criteria in the importance ordering.
    pub saaty_step: u32,
    /// TOPSIS column normalization (vector is the classical choice).
    pub topsis_normalization: TopsisNormalization,
    /// User-declared criterion feedback structure; defaults to the
    /// column-normalized ordering matrix when absent.
    pub supermatrix: Option<Supermatrix>,
    /// Chromosomal neighbors per linkage interval.
    pub neighbor_count: usize,
    /// Derive weights on a random half of the seeds, evaluate on the rest.
    pub split_weights: bool,
    pub split_seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            rwr: DiffusionConfig::default(),
            np: DiffusionConfig::default(),
            transform: DistanceTransform::default(),
            evidence_k: 10,
            mode: MadmMode::default(),
            fixed_weights: None,
            normalization: ScoreNormalization::default(),
            gamma: 0.95,
            saaty_step: 2,
            topsis_normalization: TopsisNormalization::default(),
            supermatrix: None,
            neighbor_count: 99,
            split_weights: false,
            split_seed: 42,
        }
    }
}

/// Disease-similarity inputs for the evidence step.
#[derive(Debug, Clone)]
pub struct EvidenceInputs {
    pub similarity: DiseaseSimilarityNetwork,
    pub gene_map: DiseaseGeneMap,
    /// The query disease whose similar diseases supply evidence.
    pub disease: String,
}

/// The four per-step score vectors over the whole network.
#[derive(Debug, Clone)]
pub struct StepScores {
    pub np: ScoreVector,
    pub rwr: ScoreVector,
    pub sp: ScoreVector,
    pub evidence: ScoreVector,
    pub warnings: Vec<String>,
}

impl StepScores {
    /// The steps in canonical order (NP, RWR, SP, EVIDENCE).
    pub fn in_order(&self) -> [&ScoreVector; 4] {
        [&self.np, &self.rwr, &self.sp, &self.evidence]
    }
}

fn evidence_top_diseases(
    inputs: &EvidenceInputs,
    k: usize,
    warnings: &mut Vec<String>,
) -> Result<Vec<String>> {
    let top = top_similar_diseases(&inputs.similarity, &inputs.disease, k)?;
    if top.shortfall {
        warnings.push(format!(
            "only {} similar diseases available for {:?} (requested {k})",
            top.diseases.len(),
            inputs.disease
        ));
    }
    Ok(top.diseases.into_iter().map(|(name, _)| name).collect())
}

/// Runs the four scorers against the full seed set.
pub fn score_all(
    network: &InteractionNetwork,
    seeds: &SeedSet,
    evidence: Option<&EvidenceInputs>,
    config: &PipelineConfig,
) -> Result<StepScores> {
    if seeds.len() >= network.node_count() {
        return Err(Error::Input(
            "seed set covers every network node; nothing to rank".into(),
        ));
    }
    let mut warnings = Vec::new();
    let column = column_normalize(network)?;
    let symmetric = symmetric_normalize(network)?;
    let rwr = diffuse(&column, seeds, &config.rwr)?;
    let np = diffuse(&symmetric, seeds, &config.np)?;
    let sp = shortest_path_score(network, seeds, config.transform)?;
    let evidence = match evidence {
        Some(inputs) => {
            let top = evidence_top_diseases(inputs, config.evidence_k, &mut warnings)?;
            let (scores, report) = evidence_score(&top, &inputs.gene_map, network, seeds)?;
            for disease in report.missing_diseases {
                warnings.push(format!(
                    "disease {disease:?} has no known genes; counted as empty"
                ));
            }
            scores
        }
        None => ScoreVector::zeros(network.node_count(), Provenance::Evidence),
    };
    Ok(StepScores {
        np,
        rwr,
        sp,
        evidence,
        warnings,
    })
}

/// Precomputed state shared across LOOCV folds.
///
/// The per-seed Dijkstra tables and the evidence membership counts do not
/// depend on which seed a fold holds out, so they are computed once; only
/// the diffusions rerun per fold.
pub struct FoldScoringContext<'a> {
    network: &'a InteractionNetwork,
    config: &'a PipelineConfig,
    column: TransitionMatrix,
    symmetric: TransitionMatrix,
    seed_tables: Vec<SourceDistances>,
    evidence_counts: Vec<f64>,
    pub warnings: Vec<String>,
}

impl<'a> FoldScoringContext<'a> {
    pub fn new(
        network: &'a InteractionNetwork,
        seeds: &SeedSet,
        evidence: Option<&EvidenceInputs>,
        config: &'a PipelineConfig,
    ) -> Result<Self> {
        let mut warnings = Vec::new();
        let column = column_normalize(network)?;
        let symmetric = symmetric_normalize(network)?;
        let seed_tables = distances_from_seeds(network, seeds, config.transform);
        let evidence_counts = match evidence {
            Some(inputs) => {
                let top = evidence_top_diseases(inputs, config.evidence_k, &mut warnings)?;
                let no_seeds = SeedSet::from_indices(Vec::new());
                let (scores, report) = evidence_score(&top, &inputs.gene_map, network, &no_seeds)?;
                for disease in report.missing_diseases {
                    warnings.push(format!(
                        "disease {disease:?} has no known genes; counted as empty"
                    ));
                }
                scores.values
            }
            None => vec![0.0; network.node_count()],
        };
        Ok(FoldScoringContext {
            network,
            config,
            column,
            symmetric,
            seed_tables,
            evidence_counts,
            warnings,
        })
    }

    /// One step's score vector for a fold seed set.
    pub fn step_scores(&self, step: Provenance, fold_seeds: &SeedSet) -> Result<ScoreVector> {
        match step {
            Provenance::Np => diffuse(&self.symmetric, fold_seeds, &self.config.np),
            Provenance::Rwr => diffuse(&self.column, fold_seeds, &self.config.rwr),
            Provenance::Sp => Ok(score_from_tables(
                self.network.node_count(),
                fold_seeds,
                &self.seed_tables,
            )),
            Provenance::Evidence => {
                let mut values = self.evidence_counts.clone();
                for &s in &fold_seeds.indices {
                    values[s] = 0.0;
                }
                Ok(ScoreVector::new(values, Provenance::Evidence))
            }
            Provenance::Fused => Err(Error::Input("FUSED is not a scoring step".into())),
        }
    }

    fn all_step_scores(&self, fold_seeds: &SeedSet) -> Result<Vec<ScoreVector>> {
        STEP_PROVENANCE
            .iter()
            .map(|&step| self.step_scores(step, fold_seeds))
            .collect()
    }

    /// The fused pipeline for one fold under the configured mode.
    pub fn fused_scores(
        &self,
        fold_seeds: &SeedSet,
        candidates: &[usize],
        step_weights: &WeightVector,
    ) -> Result<ScoreVector> {
        let steps = self.all_step_scores(fold_seeds)?;
        let refs: Vec<&ScoreVector> = steps.iter().collect();
        combine_steps(
            &refs,
            candidates,
            self.network.node_count(),
            self.config,
            step_weights,
        )
    }
}

/// Applies the configured combination rule to the step scores.
fn combine_steps(
    steps: &[&ScoreVector],
    candidates: &[usize],
    node_count: usize,
    config: &PipelineConfig,
    step_weights: &WeightVector,
) -> Result<ScoreVector> {
    match config.mode {
        MadmMode::TopsisAnp | MadmMode::TopsisAhp | MadmMode::Fixed => weighted_sum(
            steps,
            &FusionConfig {
                step_weights: step_weights.clone(),
                normalization: config.normalization,
            },
            candidates,
        ),
        MadmMode::Wdrs => {
            let ranks = RankList::from_scores(candidates.to_vec(), steps)?;
            let scores = discounted_rating(&ranks, step_weights, config.gamma)?;
            Ok(expand_to(node_count, candidates, &scores))
        }
        MadmMode::Ndos => {
            let ranks = RankList::from_scores(candidates.to_vec(), steps)?;
            let scores = order_statistics_scores(&ranks)?;
            Ok(expand_to(node_count, candidates, &scores))
        }
    }
}

fn expand_to(node_count: usize, candidates: &[usize], scores: &ScoreVector) -> ScoreVector {
    let mut values = vec![0.0; node_count];
    for &g in candidates {
        values[g] = scores.values[g];
    }
    ScoreVector::new(values, Provenance::Fused)
}

fn uniform_step_weights() -> WeightVector {
    WeightVector::new(
        STEP_NAMES.iter().map(|s| s.to_string()).collect(),
        vec![0.25; 4],
    )
    .expect("uniform weights are valid")
}

fn fixed_or_uniform(config: &PipelineConfig) -> Result<WeightVector> {
    match (&config.fixed_weights, config.mode) {
        (Some(weights), _) => {
            if weights.len() != 4 {
                return Err(Error::LengthMismatch {
                    expected: 4,
                    got: weights.len(),
                });
            }
            Ok(weights.clone())
        }
        (None, MadmMode::Fixed) => Err(Error::Input(
            "fixed mode needs step weights (four values for NP, RWR, SP, EVIDENCE)".into(),
        )),
        (None, _) => Ok(uniform_step_weights()),
    }
}

/// The self-weighting loop's output: per-step LOOCV metrics, the criterion
/// weights, and the TOPSIS-derived step weights.
#[derive(Debug, Clone)]
pub struct StepWeightDerivation {
    pub decision_matrix: DecisionMatrix,
    pub criterion_weights: WeightVector,
    pub closeness: Vec<f64>,
    pub step_weights: WeightVector,
    pub step_reports: Vec<(String, CvReport)>,
}

fn criterion_judgments(config: &PipelineConfig) -> Result<CriterionJudgments> {
    let ordering: Vec<String> = metric_criteria().iter().map(|c| c.name.clone()).collect();
    let pairwise = pairwise_from_ordering(&ordering, config.saaty_step)?;
    match config.mode {
        MadmMode::TopsisAhp => Ok(CriterionJudgments::Pairwise(pairwise)),
        MadmMode::TopsisAnp => {
            let supermatrix = match &config.supermatrix {
                Some(s) => s.clone(),
                None => Supermatrix::from_pairwise(&pairwise)?,
            };
            Ok(CriterionJudgments::Supermatrix(supermatrix))
        }
        other => Err(Error::Input(format!(
            "mode {} does not derive step weights",
            other.label()
        ))),
    }
}

/// Assesses each step alone in LOOCV over `targets`, assembles the
/// step × criterion decision matrix, and weights the steps by hybrid
/// TOPSIS. Emits the matrix alongside the weights for auditability.
pub fn derive_step_weights_over(
    context: &FoldScoringContext,
    seeds: &SeedSet,
    targets: &[usize],
    positions: &GenePositionTable,
) -> Result<StepWeightDerivation> {
    let network = context.network;
    let config = context.config;
    let mut rows = Vec::with_capacity(4);
    let mut step_reports = Vec::with_capacity(4);
    for (&step, name) in STEP_PROVENANCE.iter().zip(STEP_NAMES) {
        let report = loocv_over_targets(
            |fold_seeds: &SeedSet, _candidates: &[usize]| context.step_scores(step, fold_seeds),
            seeds,
            targets,
            positions,
            network,
            config.neighbor_count,
        )?;
        rows.push(vec![
            report.auc,
            report.mrr,
            report.ar,
            report.top1,
            report.top5,
        ]);
        step_reports.push((name.to_string(), report));
    }
    let decision_matrix = DecisionMatrix::new(
        STEP_NAMES.iter().map(|s| s.to_string()).collect(),
        metric_criteria(),
        rows,
    )?;
    let judgments = criterion_judgments(config)?;
    let hybrid =
        topsis_anp_weights_with(&decision_matrix, &judgments, config.topsis_normalization)?;
    Ok(StepWeightDerivation {
        decision_matrix,
        criterion_weights: hybrid.criterion_weights,
        closeness: hybrid.closeness,
        step_weights: hybrid.alternative_weights,
        step_reports,
    })
}

/// Derives step weights over the full seed set.
pub fn derive_step_weights(
    network: &InteractionNetwork,
    seeds: &SeedSet,
    evidence: Option<&EvidenceInputs>,
    positions: &GenePositionTable,
    config: &PipelineConfig,
) -> Result<StepWeightDerivation> {
    let context = FoldScoringContext::new(network, seeds, evidence, config)?;
    derive_step_weights_over(&context, seeds, &seeds.indices, positions)
}

/// Deterministically shuffles the seed indices and splits them in half:
/// the first half derives weights, the second is evaluated.
fn split_targets(seeds: &SeedSet, split_seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    if seeds.len() < 4 {
        return Err(Error::Input(format!(
            "split-weights needs at least 4 seeds (have {})",
            seeds.len()
        )));
    }
    let mut order = seeds.indices.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(split_seed);
    order.shuffle(&mut rng);
    let half = order.len() / 2;
    let evaluation = order.split_off(half);
    Ok((order, evaluation))
}

/// A full evaluation run: optional weight derivation plus the final LOOCV
/// of the fused pipeline.
#[derive(Debug, Clone)]
pub struct EvaluationOutcome {
    pub report: CvReport,
    /// Present for the weight-deriving modes.
    pub derivation: Option<StepWeightDerivation>,
    /// The step weights the fused pipeline actually used (absent for the
    /// order-statistics baseline, which is weight-free).
    pub step_weights: Option<WeightVector>,
    pub warnings: Vec<String>,
}

/// Evaluates the configured pipeline in LOOCV.
pub fn evaluate(
    network: &InteractionNetwork,
    seeds: &SeedSet,
    evidence: Option<&EvidenceInputs>,
    positions: &GenePositionTable,
    config: &PipelineConfig,
) -> Result<EvaluationOutcome> {
    let context = FoldScoringContext::new(network, seeds, evidence, config)?;
    let (weight_targets, eval_targets) = if config.split_weights {
        split_targets(seeds, config.split_seed)?
    } else {
        (seeds.indices.clone(), seeds.indices.clone())
    };

    let mut derivation = None;
    let step_weights = if config.mode.derives_weights() {
        let derived = derive_step_weights_over(&context, seeds, &weight_targets, positions)?;
        let weights = derived.step_weights.clone();
        derivation = Some(derived);
        Some(weights)
    } else if config.mode == MadmMode::Ndos {
        None
    } else {
        Some(fixed_or_uniform(config)?)
    };

    let fused_weights = step_weights.clone().unwrap_or_else(uniform_step_weights);
    let report = loocv_over_targets(
        |fold_seeds: &SeedSet, candidates: &[usize]| {
            context.fused_scores(fold_seeds, candidates, &fused_weights)
        },
        seeds,
        &eval_targets,
        positions,
        network,
        config.neighbor_count,
    )?;

    Ok(EvaluationOutcome {
        report,
        derivation,
        step_weights,
        warnings: context.warnings.clone(),
    })
}

/// One row of the final ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedGene {
    pub index: usize,
    pub gene_id: String,
    /// Raw (pre-normalization) step scores.
    pub np: f64,
    pub rwr: f64,
    pub sp: f64,
    pub evidence: f64,
    pub fused: f64,
    pub rank: usize,
}

/// Scores and ranks a candidate set against the seeds. Positions are only
/// needed when the mode derives weights from LOOCV.
pub fn prioritize(
    network: &InteractionNetwork,
    seeds: &SeedSet,
    evidence: Option<&EvidenceInputs>,
    candidates: &[usize],
    positions: Option<&GenePositionTable>,
    config: &PipelineConfig,
) -> Result<Vec<RankedGene>> {
    if candidates.is_empty() {
        return Err(Error::Input("candidate set is empty".into()));
    }
    let mut deduped = candidates.to_vec();
    deduped.sort_unstable();
    deduped.dedup();
    if deduped.len() != candidates.len() {
        return Err(Error::Input("candidate set contains duplicates".into()));
    }
    if let Some(&bad) = deduped.iter().find(|&&g| g >= network.node_count()) {
        return Err(Error::Input(format!(
            "candidate index {bad} outside network of {} nodes",
            network.node_count()
        )));
    }
    if let Some(&overlap) = deduped.iter().find(|&&g| seeds.contains(g)) {
        return Err(Error::Input(format!(
            "candidate {} is a seed; candidate set must be disjoint from seeds",
            network.id(overlap)
        )));
    }

    let step_weights = if config.mode.derives_weights() {
        let positions = positions.ok_or_else(|| {
            Error::Input(format!(
                "mode {} derives weights from cross-validation and needs gene positions",
                config.mode.label()
            ))
        })?;
        derive_step_weights(network, seeds, evidence, positions, config)?.step_weights
    } else {
        fixed_or_uniform(config)?
    };

    let steps = score_all(network, seeds, evidence, config)?;
    let refs = steps.in_order();
    let fused = combine_steps(
        &refs,
        &deduped,
        network.node_count(),
        config,
        &step_weights,
    )?;

    let mut ranked: Vec<RankedGene> = deduped
        .iter()
        .map(|&g| RankedGene {
            index: g,
            gene_id: network.id(g).to_string(),
            np: steps.np.values[g],
            rwr: steps.rwr.values[g],
            sp: steps.sp.values[g],
            evidence: steps.evidence.values[g],
            fused: fused.values[g],
            rank: 0,
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.fused
            .total_cmp(&a.fused)
            .then_with(|| a.gene_id.cmp(&b.gene_id))
    });
    for (position, gene) in ranked.iter_mut().enumerate() {
        gene.rank = position + 1;
    }
    Ok(ranked)
}

/// Normalized per-step scores for a candidate set; exposed so reports can
/// show exactly what the weighted summation consumed.
pub fn normalized_steps(steps: &StepScores, candidates: &[usize]) -> [ScoreVector; 4] {
    let [np, rwr, sp, evidence] = steps.in_order();
    [
        normalize_scores(np, candidates),
        normalize_scores(rwr, candidates),
        normalize_scores(sp, candidates),
        normalize_scores(evidence, candidates),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_network;

    fn triangle() -> InteractionNetwork {
        load_network(vec![
            ("A".to_string(), "B".to_string(), 1.0),
            ("B".to_string(), "C".to_string(), 1.0),
            ("A".to_string(), "C".to_string(), 1.0),
        ])
        .unwrap()
        .0
    }

    #[test]
    fn np_equals_rwr_on_regular_graph() {
        let network = triangle();
        let seeds = SeedSet::from_indices(vec![0]);
        let scores = score_all(&network, &seeds, None, &PipelineConfig::default()).unwrap();
        for (a, b) in scores.np.values.iter().zip(&scores.rwr.values) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn missing_evidence_inputs_give_zero_vector() {
        let network = triangle();
        let seeds = SeedSet::from_indices(vec![0]);
        let scores = score_all(&network, &seeds, None, &PipelineConfig::default()).unwrap();
        assert!(scores.evidence.values.iter().all(|&v| v == 0.0));
        assert!(scores.sp.values[1] > 0.0);
    }

    #[test]
    fn all_nodes_as_seeds_is_rejected() {
        let network = triangle();
        let seeds = SeedSet::from_indices(vec![0, 1, 2]);
        assert!(score_all(&network, &seeds, None, &PipelineConfig::default()).is_err());
    }

    #[test]
    fn single_candidate_ranks_first() {
        let network = triangle();
        let seeds = SeedSet::from_indices(vec![0]);
        let config = PipelineConfig {
            mode: MadmMode::Fixed,
            fixed_weights: Some(uniform_step_weights()),
            ..PipelineConfig::default()
        };
        let ranked = prioritize(&network, &seeds, None, &[1], None, &config).unwrap();
        assert_eq!(ranked.len(), 1);
        assert_eq!(ranked[0].rank, 1);
        assert_eq!(ranked[0].gene_id, "B");
    }

    #[test]
    fn candidates_overlapping_seeds_are_rejected() {
        let network = triangle();
        let seeds = SeedSet::from_indices(vec![0]);
        let config = PipelineConfig {
            mode: MadmMode::Fixed,
            fixed_weights: Some(uniform_step_weights()),
            ..PipelineConfig::default()
        };
        assert!(prioritize(&network, &seeds, None, &[0, 1], None, &config).is_err());
    }

    #[test]
    fn one_hot_weights_reproduce_single_step_ranking() {
        // A short chain: B is adjacent to the seed, D is farther out.
        let network = load_network(vec![
            ("S".to_string(), "B".to_string(), 1.0),
            ("B".to_string(), "C".to_string(), 1.0),
            ("C".to_string(), "D".to_string(), 1.0),
        ])
        .unwrap()
        .0;
        let seeds = SeedSet::from_indices(vec![0]);
        let candidates = vec![1, 2, 3];
        for (hot, step_name) in STEP_NAMES.iter().enumerate().take(3).map(|(i, n)| (i, *n)) {
            let mut weights = vec![0.0; 4];
            weights[hot] = 1.0;
            let config = PipelineConfig {
                mode: MadmMode::Fixed,
                fixed_weights: Some(
                    WeightVector::new(
                        STEP_NAMES.iter().map(|s| s.to_string()).collect(),
                        weights,
                    )
                    .unwrap(),
                ),
                ..PipelineConfig::default()
            };
            let ranked =
                prioritize(&network, &seeds, None, &candidates, None, &config).unwrap();
            let steps = score_all(&network, &seeds, None, &config).unwrap();
            let raw = match step_name {
                "NP" => &steps.np,
                "RWR" => &steps.rwr,
                _ => &steps.sp,
            };
            let mut expected = candidates.clone();
            expected.sort_by(|&a, &b| {
                raw.values[b]
                    .total_cmp(&raw.values[a])
                    .then_with(|| network.id(a).cmp(network.id(b)))
            });
            let got: Vec<usize> = ranked.iter().map(|g| g.index).collect();
            assert_eq!(got, expected, "step {step_name}");
        }
    }

    #[test]
    fn fixed_mode_without_weights_is_rejected() {
        let network = triangle();
        let seeds = SeedSet::from_indices(vec![0]);
        let config = PipelineConfig {
            mode: MadmMode::Fixed,
            ..PipelineConfig::default()
        };
        assert!(prioritize(&network, &seeds, None, &[1], None, &config).is_err());
    }

    #[test]
    fn auto_mode_without_positions_is_rejected() {
        let network = triangle();
        let seeds = SeedSet::from_indices(vec![0]);
        let config = PipelineConfig::default();
        match prioritize(&network, &seeds, None, &[1], None, &config) {
            Err(Error::Input(msg)) => assert!(msg.contains("positions")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn split_targets_partition_the_seeds() {
        let seeds = SeedSet::from_indices(vec![0, 1, 2, 3, 4, 5, 6]);
        let (weights_half, eval_half) = split_targets(&seeds, 7).unwrap();
        assert_eq!(weights_half.len(), 3);
        assert_eq!(eval_half.len(), 4);
        let mut all: Vec<usize> = weights_half.iter().chain(&eval_half).copied().collect();
        all.sort_unstable();
        assert_eq!(all, seeds.indices);
        // deterministic for a fixed split seed
        let (again, _) = split_targets(&seeds, 7).unwrap();
        assert_eq!(weights_half, again);
    }
}

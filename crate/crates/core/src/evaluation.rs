//! Leave-one-out cross-validation over artificial linkage intervals, and
//! the derived performance metrics (ROC/AUC, MRR, average rank, top-k%).
//!
//! Each fold removes one seed (the target), builds an interval from the
//! target's nearest same-chromosome network genes outside the remaining
//! seed set, scores the interval with the supplied pipeline, and records
//! the target's rank. Tied scores receive the mean of their tied rank
//! positions so input order cannot bias the metrics.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use rayon::prelude::*;

use crate::graph::{InteractionNetwork, SeedSet};
use crate::parse::{data_lines, tab_fields};
use crate::score::ScoreVector;
use crate::{Error, Result};

/// Chromosome and start coordinate per gene id.
#[derive(Debug, Clone, Default)]
pub struct GenePositionTable {
    positions: HashMap<String, (String, u64)>,
}

impl GenePositionTable {
    pub fn from_entries<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String, u64)>,
    {
        let mut positions = HashMap::new();
        for (gene, chromosome, start) in entries {
            if gene.is_empty() || chromosome.is_empty() {
                return Err(Error::Input("position entry with empty field".into()));
            }
            if positions.insert(gene.clone(), (chromosome, start)).is_some() {
                return Err(Error::Input(format!("duplicate position for gene {gene:?}")));
            }
        }
        Ok(GenePositionTable { positions })
    }

    /// Reads `gene_id<TAB>chromosome<TAB>start` lines.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut entries = Vec::new();
        for item in data_lines(reader) {
            let (lineno, line) = item?;
            let fields = tab_fields(&line, lineno, 3)?;
            let start: u64 = fields[2].parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("cannot parse start coordinate {:?}", fields[2]),
            })?;
            entries.push((fields[0].to_string(), fields[1].to_string(), start));
        }
        Self::from_entries(entries)
    }

    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_reader(BufReader::new(File::open(path)?))
    }

    pub fn get(&self, gene: &str) -> Option<&(String, u64)> {
        self.positions.get(gene)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// One LOOCV fold's candidate set: the target plus its chromosomal
/// neighbors, disjoint from the fold's seed set.
#[derive(Debug, Clone)]
pub struct LinkageInterval {
    pub target: usize,
    pub candidates: Vec<usize>,
    /// Set when fewer than the requested number of neighbors existed.
    pub shortfall: bool,
}

/// Builds the interval around `target`: the `neighbor_count` genes on the
/// same chromosome, present in the network and outside `fold_seeds`,
/// nearest by |start − start(target)| with ties broken by gene id.
pub fn linkage_interval(
    target: usize,
    positions: &GenePositionTable,
    network: &InteractionNetwork,
    fold_seeds: &SeedSet,
    neighbor_count: usize,
) -> Result<LinkageInterval> {
    let target_id = network.id(target);
    let Some((chromosome, start)) = positions.get(target_id) else {
        return Err(Error::MissingPosition(target_id.to_string()));
    };

    let mut neighbors: Vec<(u64, &str, usize)> = Vec::new();
    for index in 0..network.node_count() {
        if index == target || fold_seeds.contains(index) {
            continue;
        }
        let id = network.id(index);
        let Some((chrom, pos)) = positions.get(id) else {
            continue;
        };
        if chrom != chromosome {
            continue;
        }
        neighbors.push((pos.abs_diff(*start), id, index));
    }
    neighbors.sort_unstable_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));

    let shortfall = neighbors.len() < neighbor_count;
    neighbors.truncate(neighbor_count);

    let mut candidates = vec![target];
    candidates.extend(neighbors.into_iter().map(|(_, _, index)| index));
    Ok(LinkageInterval {
        target,
        candidates,
        shortfall,
    })
}

/// The target's rank under descending score with mean tied ranks.
pub(crate) fn rank_with_mean_ties(scores: &ScoreVector, candidates: &[usize], target: usize) -> f64 {
    let target_score = scores.values[target];
    let mut greater = 0usize;
    let mut tied = 0usize;
    for &g in candidates {
        if scores.values[g] > target_score {
            greater += 1;
        } else if scores.values[g] == target_score {
            tied += 1;
        }
    }
    // `tied` includes the target itself.
    greater as f64 + (tied as f64 + 1.0) / 2.0
}

/// One fold's outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldRecord {
    pub target_id: String,
    pub rank: f64,
    pub interval_size: usize,
}

/// One point of the pooled ROC curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub threshold: usize,
    pub one_minus_specificity: f64,
    pub sensitivity: f64,
}

/// Cross-validation report: per-fold ranks plus derived metrics, all
/// recomputable from `fold_ranks`.
#[derive(Debug, Clone)]
pub struct CvReport {
    pub fold_ranks: Vec<FoldRecord>,
    pub auc: f64,
    pub mrr: f64,
    pub ar: f64,
    pub top1: f64,
    pub top5: f64,
    pub roc_points: Vec<RocPoint>,
    /// Folds whose interval came up short of the requested size.
    pub shortfall_folds: usize,
}

impl CvReport {
    pub fn from_folds(fold_ranks: Vec<FoldRecord>, shortfall_folds: usize) -> Result<CvReport> {
        let ranks: Vec<f64> = fold_ranks.iter().map(|f| f.rank).collect();
        let sizes: Vec<usize> = fold_ranks.iter().map(|f| f.interval_size).collect();
        let (roc_points, auc) = roc_and_auc(&ranks, &sizes)?;
        Ok(CvReport {
            auc,
            mrr: mrr(&ranks),
            ar: average_rank(&ranks),
            top1: top_fraction(&ranks, &sizes, 1.0),
            top5: top_fraction(&ranks, &sizes, 5.0),
            roc_points,
            fold_ranks,
            shortfall_folds,
        })
    }
}

/// Runs leave-one-out cross-validation. `pipeline` maps a fold's seed set
/// and candidate set to a score vector over the whole network; folds are
/// independent and run in parallel, assembled in target-id order.
pub fn loocv<F>(
    pipeline: F,
    seeds: &SeedSet,
    positions: &GenePositionTable,
    network: &InteractionNetwork,
    neighbor_count: usize,
) -> Result<CvReport>
where
    F: Fn(&SeedSet, &[usize]) -> Result<ScoreVector> + Sync,
{
    loocv_over_targets(pipeline, seeds, &seeds.indices, positions, network, neighbor_count)
}

/// As [`loocv`], but restricted to the given held-out targets (used by
/// split-weights evaluation). Every target must be a seed.
pub fn loocv_over_targets<F>(
    pipeline: F,
    seeds: &SeedSet,
    targets: &[usize],
    positions: &GenePositionTable,
    network: &InteractionNetwork,
    neighbor_count: usize,
) -> Result<CvReport>
where
    F: Fn(&SeedSet, &[usize]) -> Result<ScoreVector> + Sync,
{
    if seeds.len() < 2 {
        return Err(Error::Input(
            "leave-one-out needs at least 2 seeds".to_string(),
        ));
    }
    if targets.is_empty() {
        return Err(Error::Input("no held-out targets".to_string()));
    }
    if let Some(&bad) = targets.iter().find(|&&t| !seeds.contains(t)) {
        return Err(Error::Input(format!(
            "held-out target {} is not a seed",
            network.id(bad)
        )));
    }

    let mut ordered: Vec<usize> = targets.to_vec();
    ordered.sort_by(|&a, &b| network.id(a).cmp(network.id(b)));
    ordered.dedup();

    let folds: Vec<Result<(FoldRecord, bool)>> = ordered
        .par_iter()
        .map(|&target| {
            let fold = |target: usize| -> Result<(FoldRecord, bool)> {
                let fold_seeds = seeds.without(target);
                let interval =
                    linkage_interval(target, positions, network, &fold_seeds, neighbor_count)?;
                let scores = pipeline(&fold_seeds, &interval.candidates)?;
                if scores.len() != network.node_count() {
                    return Err(Error::LengthMismatch {
                        expected: network.node_count(),
                        got: scores.len(),
                    });
                }
                let rank = rank_with_mean_ties(&scores, &interval.candidates, target);
                Ok((
                    FoldRecord {
                        target_id: network.id(target).to_string(),
                        rank,
                        interval_size: interval.candidates.len(),
                    },
                    interval.shortfall,
                ))
            };
            fold(target).map_err(|e| Error::FoldFailure {
                target: network.id(target).to_string(),
                source: Box::new(e),
            })
        })
        .collect();

    let mut fold_ranks = Vec::with_capacity(folds.len());
    let mut shortfall_folds = 0;
    for fold in folds {
        let (record, shortfall) = fold?;
        fold_ranks.push(record);
        if shortfall {
            shortfall_folds += 1;
        }
    }
    CvReport::from_folds(fold_ranks, shortfall_folds)
}

/// Mean reciprocal rank.
pub fn mrr(ranks: &[f64]) -> f64 {
    debug_assert!(!ranks.is_empty());
    ranks.iter().map(|r| 1.0 / r).sum::<f64>() / ranks.len() as f64
}

/// Arithmetic mean of the target ranks.
pub fn average_rank(ranks: &[f64]) -> f64 {
    debug_assert!(!ranks.is_empty());
    ranks.iter().sum::<f64>() / ranks.len() as f64
}

/// Fraction of folds whose target landed within the top `pct` percent of
/// its candidate set (threshold rank ⌈pct·size/100⌉).
pub fn top_fraction(ranks: &[f64], interval_sizes: &[usize], pct: f64) -> f64 {
    debug_assert_eq!(ranks.len(), interval_sizes.len());
    debug_assert!(!ranks.is_empty());
    let hits = ranks
        .iter()
        .zip(interval_sizes)
        .filter(|&(&rank, &size)| rank <= (pct * size as f64 / 100.0).ceil())
        .count();
    hits as f64 / ranks.len() as f64
}

/// Pooled ROC curve and its trapezoid AUC.
///
/// For each threshold k: sensitivity is the fraction of folds whose
/// target ranks at or above k; 1−specificity is the mean fraction of the
/// fold's non-target candidates ranked at or above k.
pub fn roc_and_auc(ranks: &[f64], interval_sizes: &[usize]) -> Result<(Vec<RocPoint>, f64)> {
    if ranks.is_empty() || ranks.len() != interval_sizes.len() {
        return Err(Error::Input("no folds to build a ROC curve from".into()));
    }
    if let Some(&bad) = interval_sizes.iter().find(|&&s| s < 2) {
        return Err(Error::Input(format!(
            "fold of size {bad}: specificity is undefined below size 2"
        )));
    }
    let fold_count = ranks.len() as f64;
    let max_size = *interval_sizes.iter().max().unwrap();
    let mut points = Vec::with_capacity(max_size + 1);
    for k in 0..=max_size {
        let mut hit = 0.0;
        let mut false_positive = 0.0;
        for (&rank, &size) in ranks.iter().zip(interval_sizes) {
            let is_hit = rank <= k as f64;
            if is_hit {
                hit += 1.0;
            }
            let flagged = k.min(size) as f64 - if is_hit { 1.0 } else { 0.0 };
            false_positive += flagged / (size as f64 - 1.0);
        }
        points.push(RocPoint {
            threshold: k,
            one_minus_specificity: false_positive / fold_count,
            sensitivity: hit / fold_count,
        });
    }
    let mut auc = 0.0;
    for pair in points.windows(2) {
        let dx = pair[1].one_minus_specificity - pair[0].one_minus_specificity;
        auc += dx * (pair[0].sensitivity + pair[1].sensitivity) / 2.0;
    }
    Ok((points, auc))
}

//! Score fusion: min-max normalization over the candidate set, weighted
//! summation of the four per-gene scores, and two rank-combination
//! baselines (geometric discounted rating and N-dimensional order
//! statistics).

use crate::madm::WeightVector;
use crate::score::{Provenance, ScoreVector};
use crate::{Error, Result};

/// Normalization applied to each step score before summation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScoreNormalization {
    /// Min-max over the candidate subset; the scorers emit wildly
    /// different scales (probabilities, ratios, integer counts).
    #[default]
    MinMax,
    None,
}

impl ScoreNormalization {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "minmax" => Ok(ScoreNormalization::MinMax),
            "none" => Ok(ScoreNormalization::None),
            other => Err(Error::Input(format!(
                "unknown score normalization {other:?} (expected minmax or none)"
            ))),
        }
    }
}

/// Step weights plus the normalization mode for weighted summation.
#[derive(Debug, Clone)]
pub struct FusionConfig {
    /// Weights over the step names (NP, RWR, SP, EVIDENCE), summing to 1.
    pub step_weights: WeightVector,
    pub normalization: ScoreNormalization,
}

/// Min-max rescales the candidate entries of `scores` to [0, 1]; all
/// other entries are 0 in the output. A constant input carries no ranking
/// signal and maps to all zeros.
pub fn normalize_scores(scores: &ScoreVector, candidates: &[usize]) -> ScoreVector {
    let mut values = vec![0.0; scores.len()];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &g in candidates {
        lo = lo.min(scores.values[g]);
        hi = hi.max(scores.values[g]);
    }
    if hi > lo {
        let span = hi - lo;
        for &g in candidates {
            values[g] = (scores.values[g] - lo) / span;
        }
    }
    ScoreVector::new(values, scores.provenance)
}

/// Weighted summation over normalized step scores, restricted to the
/// candidate set. Each step's weight is looked up by its provenance label.
pub fn weighted_sum(
    steps: &[&ScoreVector],
    config: &FusionConfig,
    candidates: &[usize],
) -> Result<ScoreVector> {
    if steps.is_empty() {
        return Err(Error::Input("no step scores to fuse".into()));
    }
    if candidates.is_empty() {
        return Err(Error::Input("candidate set is empty".into()));
    }
    let len = steps[0].len();
    let mut fused = vec![0.0; len];
    for step in steps {
        if step.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                got: step.len(),
            });
        }
        let weight = config
            .step_weights
            .get(step.provenance.label())
            .ok_or_else(|| {
                Error::Input(format!(
                    "no fusion weight for step {}",
                    step.provenance.label()
                ))
            })?;
        let normalized;
        let values = match config.normalization {
            ScoreNormalization::MinMax => {
                normalized = normalize_scores(step, candidates);
                &normalized.values
            }
            ScoreNormalization::None => &step.values,
        };
        for &g in candidates {
            fused[g] += weight * values[g];
        }
    }
    Ok(ScoreVector::new(fused, Provenance::Fused))
}

/// Per-source candidate rankings (1 = best) over a shared candidate set.
#[derive(Debug, Clone)]
pub struct RankList {
    pub candidates: Vec<usize>,
    /// Source labels, matching fusion weight labels.
    pub sources: Vec<String>,
    /// `ranks[source][candidate_position]`, each a permutation of 1..=M.
    pub ranks: Vec<Vec<u32>>,
}

impl RankList {
    pub fn new(candidates: Vec<usize>, sources: Vec<String>, ranks: Vec<Vec<u32>>) -> Result<Self> {
        let m = candidates.len();
        if sources.len() != ranks.len() {
            return Err(Error::LengthMismatch {
                expected: sources.len(),
                got: ranks.len(),
            });
        }
        for per_source in &ranks {
            if per_source.len() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    got: per_source.len(),
                });
            }
            let mut seen = vec![false; m];
            for &rank in per_source {
                if rank < 1 || rank as usize > m || seen[rank as usize - 1] {
                    return Err(Error::Input(format!(
                        "ranks must form a permutation of 1..={m} (bad rank {rank})"
                    )));
                }
                seen[rank as usize - 1] = true;
            }
        }
        Ok(RankList {
            candidates,
            sources,
            ranks,
        })
    }

    /// Ranks each source's scores over the candidates: descending score,
    /// ties broken by ascending node index so every source yields a
    /// strict permutation.
    pub fn from_scores(candidates: Vec<usize>, steps: &[&ScoreVector]) -> Result<Self> {
        let m = candidates.len();
        let mut sources = Vec::with_capacity(steps.len());
        let mut ranks = Vec::with_capacity(steps.len());
        for step in steps {
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| {
                step.values[candidates[b]]
                    .total_cmp(&step.values[candidates[a]])
                    .then_with(|| candidates[a].cmp(&candidates[b]))
            });
            let mut per_source = vec![0u32; m];
            for (position, &candidate_pos) in order.iter().enumerate() {
                per_source[candidate_pos] = position as u32 + 1;
            }
            sources.push(step.provenance.label().to_string());
            ranks.push(per_source);
        }
        RankList::new(candidates, sources, ranks)
    }

    pub fn size(&self) -> usize {
        self.candidates.len()
    }
}

/// Joint probability that N uniform order statistics lie componentwise at
/// or below the given non-decreasing ratios. Lower Q means the sources
/// agree on a strong (small) rank ratio.
pub fn order_statistics_q(rank_ratios: &[f64]) -> Result<f64> {
    let n = rank_ratios.len();
    if n == 0 {
        return Err(Error::Input("rank ratio list is empty".into()));
    }
    for pair in rank_ratios.windows(2) {
        if pair[0] > pair[1] {
            return Err(Error::Input("rank ratios must be non-decreasing".into()));
        }
    }
    if rank_ratios
        .iter()
        .any(|r| !r.is_finite() || *r < 0.0 || *r > 1.0)
    {
        return Err(Error::Input("rank ratios must lie in [0, 1]".into()));
    }

    // V_k = Σ_{i=1..k} (−1)^{i−1} · V_{k−i} · r_{N−k+1}^i / i!, V₀ = 1;
    // Q = N! · V_N.
    let mut v = vec![0.0; n + 1];
    v[0] = 1.0;
    for k in 1..=n {
        let r = rank_ratios[n - k];
        let mut term_sign = 1.0;
        let mut r_power = 1.0;
        let mut factorial = 1.0;
        let mut sum = 0.0;
        for i in 1..=k {
            r_power *= r;
            factorial *= i as f64;
            sum += term_sign * v[k - i] * r_power / factorial;
            term_sign = -term_sign;
        }
        v[k] = sum;
    }
    let n_factorial: f64 = (1..=n).map(|i| i as f64).product();
    Ok((n_factorial * v[n]).clamp(0.0, 1.0))
}

/// Fuses a rank list by order statistics: each candidate's Q over its
/// rank ratios, emitted as 1 − Q so that higher is better.
pub fn order_statistics_scores(ranks: &RankList) -> Result<ScoreVector> {
    let m = ranks.size();
    let node_count = ranks.candidates.iter().max().map_or(0, |&g| g + 1);
    let mut values = vec![0.0; node_count];
    for (position, &g) in ranks.candidates.iter().enumerate() {
        let mut ratios: Vec<f64> = ranks
            .ranks
            .iter()
            .map(|per_source| f64::from(per_source[position]) / m as f64)
            .collect();
        ratios.sort_unstable_by(f64::total_cmp);
        values[g] = 1.0 - order_statistics_q(&ratios)?;
    }
    Ok(ScoreVector::new(values, Provenance::Fused))
}

/// Weighted discounted rating: score(g) = Σ_i w_i · γ^(rank_i(g) − 1).
/// A gene ranked first by every source scores exactly 1.
pub fn discounted_rating(
    ranks: &RankList,
    weights: &WeightVector,
    gamma: f64,
) -> Result<ScoreVector> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Input(format!(
            "discount factor {gamma} must lie in (0, 1]"
        )));
    }
    if weights.len() != ranks.sources.len() {
        return Err(Error::LengthMismatch {
            expected: ranks.sources.len(),
            got: weights.len(),
        });
    }
    let node_count = ranks.candidates.iter().max().map_or(0, |&g| g + 1);
    let mut values = vec![0.0; node_count];
    for (position, &g) in ranks.candidates.iter().enumerate() {
        let mut score = 0.0;
        for (source, per_source) in ranks.sources.iter().zip(&ranks.ranks) {
            let weight = weights.get(source).ok_or_else(|| {
                Error::Input(format!("no rating weight for source {source:?}"))
            })?;
            score += weight * gamma.powi(per_source[position] as i32 - 1);
        }
        values[g] = score;
    }
    Ok(ScoreVector::new(values, Provenance::Fused))
}

//! Multi-criteria decision analysis: Saaty-style pairwise comparisons,
//! AHP eigenvector weights with a consistency check, ANP limit-supermatrix
//! weights, and TOPSIS ranking of alternatives.
//!
//! The pipeline uses these to weight the four scorers: criterion weights
//! come from the stated importance ordering of the cross-validation
//! metrics, TOPSIS turns per-scorer metric rows into closeness scores,
//! and the renormalized closenesses become fusion weights.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use nalgebra::DMatrix;

use crate::parse::data_lines;
use crate::{Error, Result};

/// Whether larger values of a criterion are better or worse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Benefit,
    Cost,
}

/// A named evaluation criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Criterion {
    pub name: String,
    pub direction: Direction,
}

impl Criterion {
    pub fn benefit(name: &str) -> Self {
        Criterion {
            name: name.to_string(),
            direction: Direction::Benefit,
        }
    }

    pub fn cost(name: &str) -> Self {
        Criterion {
            name: name.to_string(),
            direction: Direction::Cost,
        }
    }
}

/// The five cross-validation criteria in importance order. Average rank
/// is the one cost criterion: smaller is plainly better.
pub fn metric_criteria() -> Vec<Criterion> {
    vec![
        Criterion::benefit("AUC"),
        Criterion::benefit("MRR"),
        Criterion::cost("AR"),
        Criterion::benefit("1%"),
        Criterion::benefit("5%"),
    ]
}

/// Alternatives × criteria performance table.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMatrix {
    pub alternatives: Vec<String>,
    pub criteria: Vec<Criterion>,
    /// Row-major: `performance[alternative][criterion]`.
    pub performance: Vec<Vec<f64>>,
}

impl DecisionMatrix {
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<Criterion>,
        performance: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if alternatives.len() < 2 {
            return Err(Error::Input(
                "decision matrix needs at least 2 alternatives".into(),
            ));
        }
        if criteria.is_empty() {
            return Err(Error::Input("decision matrix needs at least 1 criterion".into()));
        }
        if performance.len() != alternatives.len() {
            return Err(Error::LengthMismatch {
                expected: alternatives.len(),
                got: performance.len(),
            });
        }
        for row in &performance {
            if row.len() != criteria.len() {
                return Err(Error::LengthMismatch {
                    expected: criteria.len(),
                    got: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
                return Err(Error::Input(format!(
                    "decision matrix entry {bad} is not finite"
                )));
            }
        }
        let mut names: Vec<&str> = criteria.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input("duplicate criterion name".into()));
        }
        Ok(DecisionMatrix {
            alternatives,
            criteria,
            performance,
        })
    }

    /// Reads the CSV layout: header `alternative,+AUC,-AR,...` where the
    /// prefix marks the direction, then one alternative per row.
    pub fn from_csv_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = data_lines(reader);
        let (lineno, header) = lines.next().ok_or_else(|| Error::Input(
            "decision matrix file is empty".into(),
        ))??;
        let mut cells = header.split(',').map(str::trim);
        cells.next(); // alternative-name column
        let mut criteria = Vec::new();
        for cell in cells {
            let (direction, name) = match cell.split_at_checked(1) {
                Some(("+", rest)) if !rest.is_empty() => (Direction::Benefit, rest),
                Some(("-", rest)) if !rest.is_empty() => (Direction::Cost, rest),
                _ => {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!(
                            "criterion {cell:?} must be prefixed with + (benefit) or - (cost)"
                        ),
                    })
                }
            };
            criteria.push(Criterion {
                name: name.to_string(),
                direction,
            });
        }
        let mut alternatives = Vec::new();
        let mut performance = Vec::new();
        for entry in lines {
            let (lineno, line) = entry?;
            let mut cells = line.split(',').map(str::trim);
            let name = cells.next().unwrap_or_default();
            if name.is_empty() {
                return Err(Error::Parse {
                    line: lineno,
                    message: "missing alternative name".into(),
                });
            }
            let row: Vec<f64> = cells
                .map(|c| crate::parse::float_field(c, lineno, "performance value"))
                .collect::<Result<_>>()?;
            if row.len() != criteria.len() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {} values, found {}", criteria.len(), row.len()),
                });
            }
            alternatives.push(name.to_string());
            performance.push(row);
        }
        DecisionMatrix::new(alternatives, criteria, performance)
    }

    pub fn from_csv_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_csv_reader(BufReader::new(File::open(path)?))
    }
}

/// Reciprocal Saaty comparison matrix over named items.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseMatrix {
    pub labels: Vec<String>,
    pub values: DMatrix<f64>,
}

impl PairwiseMatrix {
    pub fn new(labels: Vec<String>, values: DMatrix<f64>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Input("pairwise matrix has no entries".into()));
        }
        if values.nrows() != n || values.ncols() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: values.nrows().max(values.ncols()),
            });
        }
        for i in 0..n {
            if (values[(i, i)] - 1.0).abs() > 1e-9 {
                return Err(Error::Input(format!(
                    "pairwise diagonal entry ({i},{i}) must be 1"
                )));
            }
            for j in 0..n {
                let v = values[(i, j)];
                if !v.is_finite() || v <= 0.0 {
                    return Err(Error::Input(format!(
                        "pairwise entry ({i},{j}) = {v} must be positive"
                    )));
                }
                if !(1.0 / 9.0 - 1e-9..=9.0 + 1e-9).contains(&v) {
                    return Err(Error::Input(format!(
                        "pairwise entry ({i},{j}) = {v} outside the Saaty scale [1/9, 9]"
                    )));
                }
                if (v * values[(j, i)] - 1.0).abs() > 1e-6 {
                    return Err(Error::Input(format!(
                        "pairwise entries ({i},{j}) and ({j},{i}) are not reciprocal"
                    )));
                }
            }
        }
        Ok(PairwiseMatrix { labels, values })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn from_csv_reader<R: BufRead>(reader: R) -> Result<Self> {
        let (labels, values) = read_square_csv(reader)?;
        PairwiseMatrix::new(labels, values)
    }

    pub fn from_csv_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_csv_reader(BufReader::new(File::open(path)?))
    }
}

/// Non-negative weights over named items, summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    pub labels: Vec<String>,
    pub weights: Vec<f64>,
}

impl WeightVector {
    pub fn new(labels: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(Error::LengthMismatch {
                expected: labels.len(),
                got: weights.len(),
            });
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Input("weights must be finite and non-negative".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Input(format!("weights sum to {sum}, not 1")));
        }
        Ok(WeightVector { labels, weights })
    }

    /// Normalizes arbitrary non-negative values into a weight vector.
    pub fn normalized(labels: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let sum: f64 = values.iter().sum();
        if !(sum > 0.0) {
            return Err(Error::Input("cannot normalize weights summing to 0".into()));
        }
        let weights = values.iter().map(|v| v / sum).collect();
        WeightVector::new(labels, weights)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.weights[i])
    }
}

/// Builds the comparison matrix implied by a strict importance ordering:
/// adjacent items differ by `step` Saaty points, capped at 9.
pub fn pairwise_from_ordering(ordered_names: &[String], step: u32) -> Result<PairwiseMatrix> {
    if ordered_names.is_empty() {
        return Err(Error::Input("ordering is empty".into()));
    }
    if !(1..=8).contains(&step) {
        return Err(Error::Input(format!("step {step} must lie in [1, 8]")));
    }
    let n = ordered_names.len();
    let mut values = DMatrix::from_element(n, n, 1.0);
    for i in 0..n {
        for j in (i + 1)..n {
            let advantage = (1.0 + f64::from(step) * (j - i) as f64).min(9.0);
            values[(i, j)] = advantage;
            values[(j, i)] = 1.0 / advantage;
        }
    }
    PairwiseMatrix::new(ordered_names.to_vec(), values)
}

/// Power iteration on a positive matrix: returns the sum-normalized
/// principal eigenvector and the dominant eigenvalue.
fn principal_eigenvector(values: &DMatrix<f64>, residual: f64) -> Result<(Vec<f64>, f64)> {
    let n = values.nrows();
    let mut w = vec![1.0 / n as f64; n];
    let max_iterations = 100_000;
    for _ in 0..max_iterations {
        let mut next = vec![0.0; n];
        for i in 0..n {
            next[i] = (0..n).map(|j| values[(i, j)] * w[j]).sum();
        }
        let lambda: f64 = next.iter().sum();
        for v in &mut next {
            *v /= lambda;
        }
        let diff: f64 = next
            .iter()
            .zip(&w)
            .map(|(a, b)| (a - b).abs())
            .sum();
        w = next;
        if diff < residual {
            return Ok((w, lambda));
        }
    }
    Err(Error::NonConvergence {
        iterations: max_iterations,
        residual: f64::NAN,
    })
}

/// AHP weights: the normalized principal right eigenvector.
pub fn ahp_weights(matrix: &PairwiseMatrix) -> Result<WeightVector> {
    let (weights, _) = principal_eigenvector(&matrix.values, 1e-10)?;
    WeightVector::new(matrix.labels.clone(), weights)
}

// Saaty random indices for orders 3..=10.
const RANDOM_INDEX: [f64; 8] = [0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49];

/// Consistency ratio (λ_max − n)/(n − 1) scaled by the random index;
/// 0 by convention for orders 1 and 2.
pub fn consistency_ratio(matrix: &PairwiseMatrix) -> Result<f64> {
    let n = matrix.order();
    if n <= 2 {
        return Ok(0.0);
    }
    if n > 10 {
        return Err(Error::Input(format!(
            "consistency ratio is tabulated only up to order 10 (got {n})"
        )));
    }
    let (_, lambda) = principal_eigenvector(&matrix.values, 1e-12)?;
    let ci = (lambda - n as f64) / (n as f64 - 1.0);
    Ok((ci / RANDOM_INDEX[n - 3]).max(0.0))
}

/// Column-stochastic supermatrix with a declared set of criterion rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Supermatrix {
    pub labels: Vec<String>,
    pub values: DMatrix<f64>,
    /// Indices whose limit priorities are reported as criterion weights.
    pub criterion_indices: Vec<usize>,
}

impl Supermatrix {
    pub fn new(
        labels: Vec<String>,
        values: DMatrix<f64>,
        criterion_indices: Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Input("supermatrix has no entries".into()));
        }
        if values.nrows() != n || values.ncols() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: values.nrows().max(values.ncols()),
            });
        }
        for j in 0..n {
            let mut sum = 0.0;
            for i in 0..n {
                let v = values[(i, j)];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::Input(format!(
                        "supermatrix entry ({i},{j}) = {v} must be non-negative"
                    )));
                }
                sum += v;
            }
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::NotColumnStochastic { column: j, sum });
            }
        }
        if criterion_indices.is_empty() {
            return Err(Error::Input("supermatrix declares no criterion entries".into()));
        }
        let mut sorted = criterion_indices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != criterion_indices.len() || *sorted.last().unwrap() >= n {
            return Err(Error::Input("invalid criterion index set".into()));
        }
        Ok(Supermatrix {
            labels,
            values,
            criterion_indices,
        })
    }

    /// The default feedback structure: every criterion influences every
    /// other in proportion to the pairwise judgments, i.e. the comparison
    /// matrix with each column normalized to sum 1.
    pub fn from_pairwise(pairwise: &PairwiseMatrix) -> Result<Self> {
        let n = pairwise.order();
        let mut values = pairwise.values.clone();
        for j in 0..n {
            let sum: f64 = (0..n).map(|i| values[(i, j)]).sum();
            for i in 0..n {
                values[(i, j)] /= sum;
            }
        }
        Supermatrix::new(pairwise.labels.clone(), values, (0..n).collect())
    }

    /// A no-feedback hierarchy: every column is the given weight vector,
    /// so the limit reproduces those weights exactly.
    pub fn hierarchy(weights: &WeightVector) -> Result<Self> {
        let n = weights.len();
        let values = DMatrix::from_fn(n, n, |i, _| weights.weights[i]);
        Supermatrix::new(weights.labels.clone(), values, (0..n).collect())
    }

    /// Reads a labeled square CSV; `criterion_labels` picks which rows are
    /// reported (all of them when empty).
    pub fn from_csv_reader<R: BufRead>(reader: R, criterion_labels: &[String]) -> Result<Self> {
        let (labels, values) = read_square_csv(reader)?;
        let criterion_indices = if criterion_labels.is_empty() {
            (0..labels.len()).collect()
        } else {
            criterion_labels
                .iter()
                .map(|name| {
                    labels.iter().position(|l| l == name).ok_or_else(|| {
                        Error::Input(format!("criterion {name:?} missing from supermatrix"))
                    })
                })
                .collect::<Result<_>>()?
        };
        Supermatrix::new(labels, values, criterion_indices)
    }

    pub fn from_csv_path<P: AsRef<Path>>(path: P, criterion_labels: &[String]) -> Result<Self> {
        Self::from_csv_reader(BufReader::new(File::open(path)?), criterion_labels)
    }
}

fn read_square_csv<R: BufRead>(reader: R) -> Result<(Vec<String>, DMatrix<f64>)> {
    let mut lines = data_lines(reader);
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Input("square matrix file is empty".into()))??;
    let labels: Vec<String> = header
        .split(',')
        .skip(1)
        .map(|c| c.trim().to_string())
        .collect();
    let n = labels.len();
    if n == 0 {
        return Err(Error::Input("square matrix header has no labels".into()));
    }
    let mut values = DMatrix::zeros(n, n);
    let mut row = 0;
    for entry in lines {
        let (lineno, line) = entry?;
        if row >= n {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {n} data rows"),
            });
        }
        let mut cells = line.split(',').map(str::trim);
        let label = cells.next().unwrap_or_default();
        if label != labels[row] {
            return Err(Error::Parse {
                line: lineno,
                message: format!(
                    "row label {label:?} does not match header label {:?}",
                    labels[row]
                ),
            });
        }
        let mut col = 0;
        for cell in cells {
            if col >= n {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {n} values per row"),
                });
            }
            values[(row, col)] = crate::parse::float_field(cell, lineno, "matrix entry")?;
            col += 1;
        }
        if col != n {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {n} values per row, found {col}"),
            });
        }
        row += 1;
    }
    if row != n {
        return Err(Error::Input(format!(
            "square matrix has {row} data rows, expected {n}"
        )));
    }
    Ok((labels, values))
}

/// Limit priorities of a supermatrix, restricted to its criterion entries
/// and renormalized.
///
/// A damping mix `(1−ε)·W + ε·uniform` with ε = 1e-6 makes the chain
/// irreducible so the limit is unique; repeated squaring then converges
/// quadratically to the rank-one limit matrix.
pub fn anp_weights(supermatrix: &Supermatrix) -> Result<WeightVector> {
    let n = supermatrix.labels.len();
    let epsilon = 1e-6;
    let uniform = epsilon / n as f64;
    let mut m = supermatrix.values.map(|v| v * (1.0 - epsilon) + uniform);

    let max_squarings = 200;
    let mut converged = false;
    for _ in 0..max_squarings {
        let next = &m * &m;
        let delta = (&next - &m).abs().max();
        m = next;
        if delta < 1e-13 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            iterations: max_squarings,
            residual: f64::NAN,
        });
    }

    // All columns of the limit matrix agree; average them for stability.
    let stationary: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)]).sum::<f64>() / n as f64)
        .collect();
    let labels: Vec<String> = supermatrix
        .criterion_indices
        .iter()
        .map(|&i| supermatrix.labels[i].clone())
        .collect();
    let restricted: Vec<f64> = supermatrix
        .criterion_indices
        .iter()
        .map(|&i| stationary[i])
        .collect();
    WeightVector::normalized(labels, restricted)
}

/// Column normalization scheme for TOPSIS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TopsisNormalization {
    /// Divide each column by its Euclidean norm (the classical choice).
    #[default]
    Vector,
    /// Min-max rescale each column to [0, 1]; for sensitivity checks.
    MinMax,
}

impl TopsisNormalization {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "vector" => Ok(TopsisNormalization::Vector),
            "min-max" => Ok(TopsisNormalization::MinMax),
            other => Err(Error::Input(format!(
                "unknown TOPSIS normalization {other:?} (expected vector or min-max)"
            ))),
        }
    }
}

/// TOPSIS closenesses plus any columns that carried no information.
#[derive(Debug, Clone)]
pub struct TopsisOutcome {
    /// Relative closeness to the positive ideal, one per alternative,
    /// each in [0, 1].
    pub closeness: Vec<f64>,
    /// Criterion indices whose column was constant-zero (vector mode) or
    /// constant (min-max mode); they contribute nothing.
    pub degenerate_columns: Vec<usize>,
}

/// Ranks alternatives by relative closeness to the positive ideal.
pub fn topsis(matrix: &DecisionMatrix, weights: &WeightVector) -> Result<TopsisOutcome> {
    topsis_with(matrix, weights, TopsisNormalization::Vector)
}

pub fn topsis_with(
    matrix: &DecisionMatrix,
    weights: &WeightVector,
    normalization: TopsisNormalization,
) -> Result<TopsisOutcome> {
    let m = matrix.alternatives.len();
    let n = matrix.criteria.len();
    if weights.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: weights.len(),
        });
    }
    for (weight_label, criterion) in weights.labels.iter().zip(&matrix.criteria) {
        if *weight_label != criterion.name {
            return Err(Error::Input(format!(
                "weight label {weight_label:?} does not match criterion {:?}",
                criterion.name
            )));
        }
    }

    let mut scaled = vec![vec![0.0; n]; m];
    let mut degenerate_columns = Vec::new();
    for j in 0..n {
        match normalization {
            TopsisNormalization::Vector => {
                let norm = matrix
                    .performance
                    .iter()
                    .map(|row| row[j] * row[j])
                    .sum::<f64>()
                    .sqrt();
                if norm == 0.0 {
                    degenerate_columns.push(j);
                } else {
                    for i in 0..m {
                        scaled[i][j] = matrix.performance[i][j] / norm * weights.weights[j];
                    }
                }
            }
            TopsisNormalization::MinMax => {
                let lo = matrix
                    .performance
                    .iter()
                    .map(|row| row[j])
                    .fold(f64::INFINITY, f64::min);
                let hi = matrix
                    .performance
                    .iter()
                    .map(|row| row[j])
                    .fold(f64::NEG_INFINITY, f64::max);
                if lo == hi {
                    degenerate_columns.push(j);
                } else {
                    for i in 0..m {
                        scaled[i][j] =
                            (matrix.performance[i][j] - lo) / (hi - lo) * weights.weights[j];
                    }
                }
            }
        }
    }

    let mut positive_ideal = vec![0.0; n];
    let mut negative_ideal = vec![0.0; n];
    for j in 0..n {
        let lo = scaled.iter().map(|r| r[j]).fold(f64::INFINITY, f64::min);
        let hi = scaled
            .iter()
            .map(|r| r[j])
            .fold(f64::NEG_INFINITY, f64::max);
        match matrix.criteria[j].direction {
            Direction::Benefit => {
                positive_ideal[j] = hi;
                negative_ideal[j] = lo;
            }
            Direction::Cost => {
                positive_ideal[j] = lo;
                negative_ideal[j] = hi;
            }
        }
    }

    let distance = |row: &[f64], ideal: &[f64]| {
        row.iter()
            .zip(ideal)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    };
    let closeness = scaled
        .iter()
        .map(|row| {
            let d_pos = distance(row, &positive_ideal);
            let d_neg = distance(row, &negative_ideal);
            if d_pos + d_neg == 0.0 {
                // All alternatives identical: no information either way.
                0.5
            } else {
                d_neg / (d_pos + d_neg)
            }
        })
        .collect();

    Ok(TopsisOutcome {
        closeness,
        degenerate_columns,
    })
}

/// Source of criterion weights for the hybrid ranking.
#[derive(Debug, Clone)]
pub enum CriterionJudgments {
    /// AHP on a plain comparison matrix.
    Pairwise(PairwiseMatrix),
    /// ANP limit priorities of a supermatrix with feedback.
    Supermatrix(Supermatrix),
}

impl CriterionJudgments {
    pub fn weights(&self) -> Result<WeightVector> {
        match self {
            CriterionJudgments::Pairwise(m) => ahp_weights(m),
            CriterionJudgments::Supermatrix(s) => anp_weights(s),
        }
    }
}

/// Output of the hybrid TOPSIS weighting of alternatives.
#[derive(Debug, Clone)]
pub struct TopsisAnpWeights {
    pub criterion_weights: WeightVector,
    pub closeness: Vec<f64>,
    /// TOPSIS closenesses renormalized to sum 1.
    pub alternative_weights: WeightVector,
    pub degenerate_columns: Vec<usize>,
}

/// Derives alternative weights: criterion weights from the judgments,
/// TOPSIS closenesses from the decision matrix, then closenesses
/// renormalized to sum 1.
pub fn topsis_anp_weights(
    matrix: &DecisionMatrix,
    judgments: &CriterionJudgments,
) -> Result<TopsisAnpWeights> {
    topsis_anp_weights_with(matrix, judgments, TopsisNormalization::Vector)
}

pub fn topsis_anp_weights_with(
    matrix: &DecisionMatrix,
    judgments: &CriterionJudgments,
    normalization: TopsisNormalization,
) -> Result<TopsisAnpWeights> {
    let criterion_weights = align_criterion_weights(judgments.weights()?, matrix)?;
    let outcome = topsis_with(matrix, &criterion_weights, normalization)?;
    let alternative_weights =
        WeightVector::normalized(matrix.alternatives.clone(), outcome.closeness.clone())?;
    Ok(TopsisAnpWeights {
        criterion_weights,
        closeness: outcome.closeness,
        alternative_weights,
        degenerate_columns: outcome.degenerate_columns,
    })
}

/// Reorders derived weights to the decision matrix's criterion order.
fn align_criterion_weights(weights: WeightVector, matrix: &DecisionMatrix) -> Result<WeightVector> {
    if weights.len() != matrix.criteria.len() {
        return Err(Error::LengthMismatch {
            expected: matrix.criteria.len(),
            got: weights.len(),
        });
    }
    let reordered: Vec<f64> = matrix
        .criteria
        .iter()
        .map(|criterion| {
            weights.get(&criterion.name).ok_or_else(|| {
                Error::Input(format!(
                    "criterion {:?} missing from derived weights",
                    criterion.name
                ))
            })
        })
        .collect::<Result<_>>()?;
    WeightVector::new(
        matrix.criteria.iter().map(|c| c.name.clone()).collect(),
        reordered,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn ordering_matrix_steps_and_cap() {
        let m = pairwise_from_ordering(&names(&["A", "B", "C"]), 2).unwrap();
        assert_eq!(m.values[(0, 1)], 3.0);
        assert_eq!(m.values[(0, 2)], 5.0);
        assert_eq!(m.values[(1, 0)], 1.0 / 3.0);

        let five = pairwise_from_ordering(&names(&["AUC", "MRR", "AR", "1%", "5%"]), 2).unwrap();
        assert_eq!(five.values[(0, 4)], 9.0);
    }

    #[test]
    fn two_item_ordering() {
        let m = pairwise_from_ordering(&names(&["A", "B"]), 2).unwrap();
        assert_eq!(m.values[(0, 1)], 3.0);
        assert_eq!(m.values[(1, 0)], 1.0 / 3.0);
    }

    #[test]
    fn ordering_rejects_bad_step() {
        assert!(pairwise_from_ordering(&names(&["A", "B"]), 0).is_err());
        assert!(pairwise_from_ordering(&names(&["A", "B"]), 9).is_err());
        assert!(pairwise_from_ordering(&[], 2).is_err());
    }

    #[test]
    fn ahp_equal_weights_for_all_ones() {
        let m = PairwiseMatrix::new(names(&["A", "B", "C"]), DMatrix::from_element(3, 3, 1.0))
            .unwrap();
        let w = ahp_weights(&m).unwrap();
        for weight in w.weights {
            assert!((weight - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ahp_consistent_two_by_two() {
        let m = pairwise_from_ordering(&names(&["A", "B"]), 2).unwrap();
        let w = ahp_weights(&m).unwrap();
        assert!((w.weights[0] - 0.75).abs() < 1e-10);
        assert!((w.weights[1] - 0.25).abs() < 1e-10);
    }

    #[test]
    fn ahp_recovers_generating_weights() {
        let w = [0.5, 0.3, 0.2];
        let values = DMatrix::from_fn(3, 3, |i, j| w[i] / w[j]);
        let m = PairwiseMatrix::new(names(&["A", "B", "C"]), values).unwrap();
        let recovered = ahp_weights(&m).unwrap();
        for (got, expected) in recovered.weights.iter().zip(w) {
            assert!((got - expected).abs() < 1e-8);
        }
    }

    #[test]
    fn ordering_weights_respect_the_order() {
        let m = pairwise_from_ordering(&names(&["AUC", "MRR", "AR", "1%", "5%"]), 2).unwrap();
        let w = ahp_weights(&m).unwrap();
        for pair in w.weights.windows(2) {
            assert!(pair[0] > pair[1]);
        }
    }

    #[test]
    fn consistency_of_consistent_matrix_is_zero() {
        let w = [0.4, 0.35, 0.15, 0.1];
        let values = DMatrix::from_fn(4, 4, |i, j| w[i] / w[j]);
        let m = PairwiseMatrix::new(names(&["A", "B", "C", "D"]), values).unwrap();
        assert!(consistency_ratio(&m).unwrap() < 1e-8);
    }

    #[test]
    fn consistency_is_zero_by_convention_below_order_three() {
        let m = pairwise_from_ordering(&names(&["A", "B"]), 3).unwrap();
        assert_eq!(consistency_ratio(&m).unwrap(), 0.0);
    }

    #[test]
    fn reciprocity_is_validated() {
        let mut values = DMatrix::from_element(2, 2, 1.0);
        values[(0, 1)] = 3.0;
        values[(1, 0)] = 0.5;
        assert!(PairwiseMatrix::new(names(&["A", "B"]), values).is_err());
    }

    #[test]
    fn saaty_range_is_validated() {
        let mut values = DMatrix::from_element(2, 2, 1.0);
        values[(0, 1)] = 12.0;
        values[(1, 0)] = 1.0 / 12.0;
        assert!(PairwiseMatrix::new(names(&["A", "B"]), values).is_err());
    }

    #[test]
    fn anp_fixed_point_of_identical_columns() {
        let column = [0.5, 0.3, 0.2];
        let values = DMatrix::from_fn(3, 3, |i, _| column[i]);
        let s = Supermatrix::new(names(&["A", "B", "C"]), values, vec![0, 1, 2]).unwrap();
        let w = anp_weights(&s).unwrap();
        for (got, expected) in w.weights.iter().zip(column) {
            assert!((got - expected).abs() < 1e-6);
        }
    }

    #[test]
    fn anp_uniform_for_doubly_stochastic() {
        let values = DMatrix::from_element(4, 4, 0.25);
        let s = Supermatrix::new(names(&["A", "B", "C", "D"]), values, vec![0, 1, 2, 3]).unwrap();
        let w = anp_weights(&s).unwrap();
        for weight in w.weights {
            assert!((weight - 0.25).abs() < 1e-9);
        }
    }

    #[test]
    fn anp_reduces_to_ahp_without_feedback() {
        let m = pairwise_from_ordering(&names(&["A", "B", "C"]), 2).unwrap();
        let ahp = ahp_weights(&m).unwrap();
        let s = Supermatrix::hierarchy(&ahp).unwrap();
        let anp = anp_weights(&s).unwrap();
        for (a, b) in anp.weights.iter().zip(&ahp.weights) {
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn non_stochastic_supermatrix_is_rejected() {
        let values = DMatrix::from_element(3, 3, 0.5);
        match Supermatrix::new(names(&["A", "B", "C"]), values, vec![0]) {
            Err(Error::NotColumnStochastic { column: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    fn two_criterion_matrix(rows: Vec<Vec<f64>>) -> DecisionMatrix {
        DecisionMatrix::new(
            (0..rows.len()).map(|i| format!("alt{i}")).collect(),
            vec![Criterion::benefit("AUC"), Criterion::cost("AR")],
            rows,
        )
        .unwrap()
    }

    #[test]
    fn dominant_alternative_scores_one() {
        let d = two_criterion_matrix(vec![vec![0.9, 5.0], vec![0.8, 10.0]]);
        let w = WeightVector::new(names(&["AUC", "AR"]), vec![0.6, 0.4]).unwrap();
        let outcome = topsis(&d, &w).unwrap();
        assert_eq!(outcome.closeness[0], 1.0);
        assert_eq!(outcome.closeness[1], 0.0);
    }

    #[test]
    fn identical_alternatives_score_half() {
        let d = two_criterion_matrix(vec![vec![0.5, 2.0], vec![0.5, 2.0]]);
        let w = WeightVector::new(names(&["AUC", "AR"]), vec![0.5, 0.5]).unwrap();
        let outcome = topsis(&d, &w).unwrap();
        assert_eq!(outcome.closeness, vec![0.5, 0.5]);
    }

    #[test]
    fn all_zero_column_is_flagged_and_ignored() {
        let d = two_criterion_matrix(vec![vec![0.9, 0.0], vec![0.8, 0.0]]);
        let w = WeightVector::new(names(&["AUC", "AR"]), vec![0.5, 0.5]).unwrap();
        let outcome = topsis(&d, &w).unwrap();
        assert_eq!(outcome.degenerate_columns, vec![1]);
        assert!(outcome.closeness[0] > outcome.closeness[1]);
    }

    #[test]
    fn single_criterion_ranking_matches_raw_column() {
        let d = DecisionMatrix::new(
            names(&["a", "b", "c"]),
            vec![Criterion::benefit("AUC")],
            vec![vec![0.7], vec![0.9], vec![0.8]],
        )
        .unwrap();
        let w = WeightVector::new(names(&["AUC"]), vec![1.0]).unwrap();
        let outcome = topsis(&d, &w).unwrap();
        assert!(outcome.closeness[1] > outcome.closeness[2]);
        assert!(outcome.closeness[2] > outcome.closeness[0]);
    }

    #[test]
    fn hybrid_weights_sum_to_one() {
        let d = DecisionMatrix::new(
            names(&["NP", "RWR", "SP", "EVIDENCE"]),
            metric_criteria(),
            vec![
                vec![0.91, 0.25, 9.3, 0.12, 0.40],
                vec![0.90, 0.25, 10.0, 0.12, 0.40],
                vec![0.91, 0.22, 9.7, 0.08, 0.32],
                vec![0.88, 0.34, 11.88, 0.18, 0.48],
            ],
        )
        .unwrap();
        let ordering = names(&["AUC", "MRR", "AR", "1%", "5%"]);
        let pairwise = pairwise_from_ordering(&ordering, 2).unwrap();
        let result = topsis_anp_weights(
            &d,
            &CriterionJudgments::Supermatrix(Supermatrix::from_pairwise(&pairwise).unwrap()),
        )
        .unwrap();
        let sum: f64 = result.alternative_weights.weights.iter().sum();
        assert!((sum - 1.0).abs() < 1e-9);
        assert!(result.alternative_weights.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn hybrid_uniform_for_identical_alternatives() {
        let d = DecisionMatrix::new(
            names(&["a", "b", "c"]),
            vec![Criterion::benefit("AUC"), Criterion::benefit("MRR")],
            vec![vec![0.9, 0.3]; 3],
        )
        .unwrap();
        let pairwise = pairwise_from_ordering(&names(&["AUC", "MRR"]), 2).unwrap();
        let result =
            topsis_anp_weights(&d, &CriterionJudgments::Pairwise(pairwise)).unwrap();
        for w in result.alternative_weights.weights {
            assert!((w - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn decision_matrix_csv_round_trip() {
        let csv = "alternative,+AUC,+MRR,-AR\nNP,0.91,0.25,9.3\nRWR,0.90,0.25,10\n";
        let d = DecisionMatrix::from_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(d.alternatives, vec!["NP", "RWR"]);
        assert_eq!(d.criteria[2].direction, Direction::Cost);
        assert_eq!(d.performance[1][2], 10.0);
    }

    #[test]
    fn square_csv_rejects_label_mismatch() {
        let csv = ",A,B\nA,1,3\nC,0.3333333,1\n";
        assert!(PairwiseMatrix::from_csv_reader(csv.as_bytes()).is_err());
    }
}

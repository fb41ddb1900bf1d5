//! Shortest-path scoring: Dijkstra runs from each seed, then each
//! candidate gene is scored by the median path confidence over the mean
//! path length across its reachable seeds.
//!
//! Edge confidences are turned into Dijkstra costs by a configurable
//! transform; the default 1/confidence is strictly positive, monotone
//! decreasing in confidence, and never zero even at confidence 1.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::graph::{InteractionNetwork, SeedSet};
use crate::score::{Provenance, ScoreVector};
use crate::{Error, Result};

/// Maps an edge confidence in (0,1] to a non-negative Dijkstra cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceTransform {
    /// 1 / confidence.
    #[default]
    Inverse,
    /// 1 − confidence; zero-cost edges at confidence 1.
    OneMinus,
    /// −ln(confidence); zero-cost edges at confidence 1.
    NegLog,
}

impl DistanceTransform {
    pub fn cost(self, confidence: f64) -> f64 {
        match self {
            DistanceTransform::Inverse => 1.0 / confidence,
            DistanceTransform::OneMinus => 1.0 - confidence,
            DistanceTransform::NegLog => -confidence.ln(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "inverse" => Ok(DistanceTransform::Inverse),
            "one-minus" => Ok(DistanceTransform::OneMinus),
            "neg-log" => Ok(DistanceTransform::NegLog),
            other => Err(Error::Input(format!(
                "unknown distance transform {other:?} (expected inverse, one-minus, or neg-log)"
            ))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DistanceTransform::Inverse => "inverse",
            DistanceTransform::OneMinus => "one-minus",
            DistanceTransform::NegLog => "neg-log",
        }
    }
}

/// Single-source shortest-path summary for every node.
///
/// `cost` is infinite for unreachable nodes; `hop_length` and
/// `path_weight` (sum of edge confidences along the chosen path) describe
/// one minimum-cost path, with ties broken toward fewer hops and then
/// toward the lower predecessor index.
#[derive(Debug, Clone)]
pub struct SourceDistances {
    pub source: usize,
    pub cost: Vec<f64>,
    pub hop_length: Vec<u32>,
    pub path_weight: Vec<f64>,
    pub predecessor: Vec<Option<usize>>,
}

impl SourceDistances {
    pub fn reachable(&self, node: usize) -> bool {
        self.cost[node].is_finite()
    }
}

#[derive(PartialEq)]
struct HeapEntry {
    cost: f64,
    hops: u32,
    node: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed so BinaryHeap pops the lexicographically smallest
        // (cost, hops) first.
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.hops.cmp(&self.hops))
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from one source under the given cost transform.
///
/// Both cost and hop count are additive and non-negative, so running the
/// search on the lexicographic key (cost, hops) keeps the tie rules exact
/// even when a transform produces zero-cost edges.
pub fn dijkstra_distances(
    network: &InteractionNetwork,
    source: usize,
    transform: DistanceTransform,
) -> SourceDistances {
    let n = network.node_count();
    let mut cost = vec![f64::INFINITY; n];
    let mut hop_length = vec![u32::MAX; n];
    let mut path_weight = vec![f64::INFINITY; n];
    let mut predecessor = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();

    cost[source] = 0.0;
    hop_length[source] = 0;
    path_weight[source] = 0.0;
    heap.push(HeapEntry {
        cost: 0.0,
        hops: 0,
        node: source,
    });

    while let Some(HeapEntry { node: u, .. }) = heap.pop() {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        for &(v, confidence) in network.neighbors(u) {
            if settled[v] {
                continue;
            }
            let candidate_cost = cost[u] + transform.cost(confidence);
            let candidate_hops = hop_length[u] + 1;
            let better = match candidate_cost.total_cmp(&cost[v]) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => match candidate_hops.cmp(&hop_length[v]) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => match predecessor[v] {
                        Some(p) => u < p,
                        None => true,
                    },
                },
            };
            if better {
                cost[v] = candidate_cost;
                hop_length[v] = candidate_hops;
                path_weight[v] = path_weight[u] + confidence;
                predecessor[v] = Some(u);
                heap.push(HeapEntry {
                    cost: candidate_cost,
                    hops: candidate_hops,
                    node: v,
                });
            }
        }
    }

    SourceDistances {
        source,
        cost,
        hop_length,
        path_weight,
        predecessor,
    }
}

/// Runs Dijkstra from every seed; runs are independent and execute in
/// parallel over the shared read-only network.
pub fn distances_from_seeds(
    network: &InteractionNetwork,
    seeds: &SeedSet,
    transform: DistanceTransform,
) -> Vec<SourceDistances> {
    seeds
        .indices
        .par_iter()
        .map(|&s| dijkstra_distances(network, s, transform))
        .collect()
}

/// Median with the mean-of-two-middle convention for even counts.
/// `values` need not be sorted; empty input is the caller's bug.
pub(crate) fn median(values: &mut [f64]) -> f64 {
    debug_assert!(!values.is_empty());
    values.sort_unstable_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

/// Scores each non-seed node by median path weight over mean hop length
/// across its reachable seeds. Seeds and nodes reaching no seed score 0.
pub fn shortest_path_score(
    network: &InteractionNetwork,
    seeds: &SeedSet,
    transform: DistanceTransform,
) -> Result<ScoreVector> {
    if seeds.is_empty() {
        return Err(Error::Input("seed set is empty".to_string()));
    }
    let tables = distances_from_seeds(network, seeds, transform);
    Ok(score_from_tables(network.node_count(), seeds, &tables))
}

/// Assembles the score from precomputed per-seed distance tables,
/// considering only the seeds listed in `seeds`. This lets LOOCV reuse
/// one Dijkstra run per seed across all folds.
pub fn score_from_tables(
    node_count: usize,
    seeds: &SeedSet,
    tables: &[SourceDistances],
) -> ScoreVector {
    let mut values = vec![0.0; node_count];
    let mut weights = Vec::with_capacity(seeds.len());
    for g in 0..node_count {
        if seeds.contains(g) {
            continue;
        }
        weights.clear();
        let mut hop_sum = 0u64;
        for table in tables {
            if !seeds.contains(table.source) || !table.reachable(g) {
                continue;
            }
            weights.push(table.path_weight[g]);
            hop_sum += u64::from(table.hop_length[g]);
        }
        if weights.is_empty() {
            continue;
        }
        let mean_hops = hop_sum as f64 / weights.len() as f64;
        values[g] = median(&mut weights) / mean_hops;
    }
    ScoreVector::new(values, Provenance::Sp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_network;

    fn net(edges: &[(&str, &str, f64)]) -> InteractionNetwork {
        let records = edges
            .iter()
            .map(|&(a, b, w)| (a.to_string(), b.to_string(), w))
            .collect::<Vec<_>>();
        load_network(records).unwrap().0
    }

    #[test]
    fn single_edge_cost_and_weight() {
        let network = net(&[("A", "B", 0.5)]);
        let d = dijkstra_distances(&network, 0, DistanceTransform::Inverse);
        assert_eq!(d.cost[1], 2.0);
        assert_eq!(d.hop_length[1], 1);
        assert_eq!(d.path_weight[1], 0.5);
        assert_eq!(d.predecessor[1], Some(0));
    }

    #[test]
    fn equal_cost_tie_breaks_to_fewer_hops() {
        // A-B direct at confidence 0.5 costs 2; A-C-B at confidence 1,1
        // also costs 2. The direct edge wins on hops.
        let network = net(&[("A", "B", 0.5), ("A", "C", 1.0), ("C", "B", 1.0)]);
        let d = dijkstra_distances(&network, 0, DistanceTransform::Inverse);
        let b = network.index_of("B").unwrap();
        assert_eq!(d.cost[b], 2.0);
        assert_eq!(d.hop_length[b], 1);
        assert_eq!(d.path_weight[b], 0.5);
        assert_eq!(d.predecessor[b], Some(0));
    }

    #[test]
    fn equal_cost_equal_hops_tie_breaks_to_lower_predecessor() {
        // Two 2-hop paths from A to D with identical costs; the path
        // through the lower-indexed middle node must be chosen.
        let network = net(&[
            ("A", "B", 0.5),
            ("A", "C", 0.5),
            ("B", "D", 0.5),
            ("C", "D", 0.5),
        ]);
        let d = dijkstra_distances(&network, 0, DistanceTransform::Inverse);
        let b = network.index_of("B").unwrap();
        let dd = network.index_of("D").unwrap();
        assert_eq!(d.predecessor[dd], Some(b));
    }

    #[test]
    fn unreachable_nodes_are_flagged() {
        let network = net(&[("A", "B", 1.0), ("C", "D", 1.0)]);
        let d = dijkstra_distances(&network, 0, DistanceTransform::Inverse);
        assert!(!d.reachable(2));
        assert!(!d.reachable(3));
        assert!(d.reachable(1));
    }

    #[test]
    fn adjacent_to_all_seeds_scores_one() {
        // g adjacent to both seeds via confidence-1 edges.
        let network = net(&[("g", "S1", 1.0), ("g", "S2", 1.0)]);
        let seeds = SeedSet::from_indices(vec![1, 2]);
        let scores =
            shortest_path_score(&network, &seeds, DistanceTransform::Inverse).unwrap();
        assert!((scores.values[0] - 1.0).abs() < 1e-12);
        assert_eq!(scores.values[1], 0.0);
        assert_eq!(scores.values[2], 0.0);
    }

    #[test]
    fn hand_traced_two_seed_example() {
        // g−S1 direct at 0.5; g−X−S2 at confidence 1, 1.
        // weights {0.5, 2}, lengths {1, 2} → 1.25 / 1.5.
        let network = net(&[("g", "S1", 0.5), ("g", "X", 1.0), ("X", "S2", 1.0)]);
        let seeds = SeedSet::from_indices(vec![
            network.index_of("S1").unwrap(),
            network.index_of("S2").unwrap(),
        ]);
        let scores =
            shortest_path_score(&network, &seeds, DistanceTransform::Inverse).unwrap();
        let g = network.index_of("g").unwrap();
        assert!((scores.values[g] - 1.25 / 1.5).abs() < 1e-12);
    }

    #[test]
    fn seed_free_component_scores_zero() {
        let network = net(&[("S1", "a", 1.0), ("b", "c", 1.0)]);
        let seeds = SeedSet::from_indices(vec![0]);
        let scores =
            shortest_path_score(&network, &seeds, DistanceTransform::Inverse).unwrap();
        let b = network.index_of("b").unwrap();
        let c = network.index_of("c").unwrap();
        assert_eq!(scores.values[b], 0.0);
        assert_eq!(scores.values[c], 0.0);
        assert!(scores.values[network.index_of("a").unwrap()] > 0.0);
    }

    #[test]
    fn median_conventions() {
        assert_eq!(median(&mut [3.0]), 3.0);
        assert_eq!(median(&mut [1.0, 2.0]), 1.5);
        assert_eq!(median(&mut [5.0, 1.0, 3.0]), 3.0);
        assert_eq!(median(&mut [4.0, 1.0, 3.0, 2.0]), 2.5);
    }

    #[test]
    fn transforms_order_costs_consistently() {
        for transform in [
            DistanceTransform::Inverse,
            DistanceTransform::OneMinus,
            DistanceTransform::NegLog,
        ] {
            assert!(transform.cost(0.2) > transform.cost(0.9));
        }
        assert_eq!(DistanceTransform::Inverse.cost(1.0), 1.0);
        assert_eq!(DistanceTransform::OneMinus.cost(1.0), 0.0);
        assert_eq!(DistanceTransform::NegLog.cost(1.0), 0.0);
    }
}

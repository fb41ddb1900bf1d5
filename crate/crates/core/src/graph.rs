//! Weighted undirected interaction network: loading, validation, pruning,
//! indexing, and seed mapping.
//!
//! Nodes are indexed densely in order of first appearance in the input, so
//! a fixed input file always produces the same indexing. Edge confidences
//! must lie in (0,1]; duplicate undirected edges merge keeping the maximum
//! confidence, and self-loops are skipped with a counter so dirty files
//! still load.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::parse::{data_lines, float_field, tab_fields};
use crate::{Error, Result};

/// A network node: an external identifier plus its dense index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entity {
    pub external_id: String,
}

/// One undirected edge record as it appears in input files.
pub type EdgeRecord = (String, String, f64);

/// Counters for records dropped or merged while loading.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub self_loops_skipped: usize,
    pub duplicates_merged: usize,
}

/// Sparse weighted undirected graph over indexed entities.
///
/// The adjacency structure is symmetric: `(u, v, w)` is stored under both
/// endpoints. Neighbor lists are sorted by index.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionNetwork {
    nodes: Vec<Entity>,
    adjacency: Vec<Vec<(usize, f64)>>,
    edge_count: usize,
    index_by_id: HashMap<String, usize>,
}

impl InteractionNetwork {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn nodes(&self) -> &[Entity] {
        &self.nodes
    }

    /// External id of node `index`.
    pub fn id(&self, index: usize) -> &str {
        &self.nodes[index].external_id
    }

    pub fn index_of(&self, external_id: &str) -> Option<usize> {
        self.index_by_id.get(external_id).copied()
    }

    /// Neighbors of `index` as `(neighbor, confidence)`, sorted by neighbor.
    pub fn neighbors(&self, index: usize) -> &[(usize, f64)] {
        &self.adjacency[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adjacency[index].len()
    }

    /// Sum of edge confidences at `index`.
    pub fn weighted_degree(&self, index: usize) -> f64 {
        self.adjacency[index].iter().map(|&(_, w)| w).sum()
    }

    /// Confidence of edge `(u, v)`, if present.
    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        self.adjacency[u]
            .binary_search_by_key(&v, |&(n, _)| n)
            .ok()
            .map(|pos| self.adjacency[u][pos].1)
    }

    /// Every undirected edge once, as `(u, v, confidence)` with `u < v`,
    /// ordered by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    /// Edge records in the on-disk format. Reloading them yields an
    /// identical adjacency structure keyed by external id; the dense
    /// indices may be assigned differently because they follow first
    /// appearance in the record stream.
    pub fn to_edge_records(&self) -> Vec<EdgeRecord> {
        self.edges()
            .map(|(u, v, w)| (self.id(u).to_string(), self.id(v).to_string(), w))
            .collect()
    }

    /// Every undirected edge once as `(id_a, id_b, weight)` with
    /// `id_a < id_b`, sorted — an index-free canonical form.
    pub fn canonical_edges(&self) -> Vec<EdgeRecord> {
        let mut records: Vec<EdgeRecord> = self
            .edges()
            .map(|(u, v, w)| {
                let (a, b) = if self.id(u) < self.id(v) {
                    (u, v)
                } else {
                    (v, u)
                };
                (self.id(a).to_string(), self.id(b).to_string(), w)
            })
            .collect();
        records.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        records
    }
}

/// Incremental construction, used programmatically and by the loaders.
///
/// Unlike edge-record files, the builder can register isolated nodes,
/// which is what `prune_isolated` exists to clean up.
#[derive(Debug, Default)]
pub struct NetworkBuilder {
    nodes: Vec<Entity>,
    index_by_id: HashMap<String, usize>,
    weights: HashMap<(usize, usize), f64>,
    report: LoadReport,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `id` if unseen and returns its index.
    pub fn add_node(&mut self, id: &str) -> usize {
        if let Some(&idx) = self.index_by_id.get(id) {
            return idx;
        }
        let idx = self.nodes.len();
        self.nodes.push(Entity {
            external_id: id.to_string(),
        });
        self.index_by_id.insert(id.to_string(), idx);
        idx
    }

    /// Adds one undirected edge; duplicates merge by maximum confidence.
    /// Self-loops are skipped (counted), without registering the node.
    pub fn add_edge(&mut self, id_a: &str, id_b: &str, confidence: f64) -> Result<()> {
        if !(confidence > 0.0) || !confidence.is_finite() {
            return Err(Error::Input(format!(
                "edge ({id_a}, {id_b}): confidence {confidence} must be a finite positive number"
            )));
        }
        if confidence > 1.0 {
            return Err(Error::Input(format!(
                "edge ({id_a}, {id_b}): confidence {confidence} exceeds 1"
            )));
        }
        if id_a.is_empty() || id_b.is_empty() {
            return Err(Error::Input("edge with empty node id".to_string()));
        }
        if id_a == id_b {
            self.report.self_loops_skipped += 1;
            return Ok(());
        }
        let u = self.add_node(id_a);
        let v = self.add_node(id_b);
        let key = (u.min(v), u.max(v));
        match self.weights.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut slot) => {
                self.report.duplicates_merged += 1;
                if confidence > *slot.get() {
                    slot.insert(confidence);
                }
            }
            std::collections::hash_map::Entry::Vacant(slot) => {
                slot.insert(confidence);
            }
        }
        Ok(())
    }

    pub fn finish(self) -> (InteractionNetwork, LoadReport) {
        let n = self.nodes.len();
        let mut adjacency = vec![Vec::new(); n];
        for (&(u, v), &w) in &self.weights {
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        for list in &mut adjacency {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        let network = InteractionNetwork {
            nodes: self.nodes,
            edge_count: self.weights.len(),
            adjacency,
            index_by_id: self.index_by_id,
        };
        (network, self.report)
    }
}

/// Builds a network from in-memory edge records.
pub fn load_network<I>(records: I) -> Result<(InteractionNetwork, LoadReport)>
where
    I: IntoIterator<Item = EdgeRecord>,
{
    let mut builder = NetworkBuilder::new();
    for (id_a, id_b, w) in records {
        builder.add_edge(&id_a, &id_b, w)?;
    }
    Ok(builder.finish())
}

/// Reads the tab-separated edge-record format: `id_a<TAB>id_b<TAB>weight`,
/// `#` comments allowed. Malformed lines are reported with their number.
pub fn load_network_from_reader<R: BufRead>(reader: R) -> Result<(InteractionNetwork, LoadReport)> {
    let mut builder = NetworkBuilder::new();
    for entry in data_lines(reader) {
        let (lineno, line) = entry?;
        let fields = tab_fields(&line, lineno, 3)?;
        let weight = float_field(fields[2], lineno, "edge weight")?;
        builder.add_edge(fields[0], fields[1], weight).map_err(|e| match e {
            Error::Input(message) => Error::Parse { line: lineno, message },
            other => other,
        })?;
    }
    Ok(builder.finish())
}

pub fn load_network_from_path<P: AsRef<Path>>(path: P) -> Result<(InteractionNetwork, LoadReport)> {
    load_network_from_reader(BufReader::new(File::open(path)?))
}

/// Drops every degree-0 node and re-indexes the rest densely, preserving
/// relative order. Returns the pruned network and the removed count.
pub fn prune_isolated(network: &InteractionNetwork) -> (InteractionNetwork, usize) {
    let keep: Vec<usize> = (0..network.node_count())
        .filter(|&u| network.degree(u) > 0)
        .collect();
    let removed = network.node_count() - keep.len();
    if removed == 0 {
        return (network.clone(), 0);
    }
    let mut remap = vec![usize::MAX; network.node_count()];
    for (new_idx, &old_idx) in keep.iter().enumerate() {
        remap[old_idx] = new_idx;
    }
    let nodes: Vec<Entity> = keep.iter().map(|&u| network.nodes[u].clone()).collect();
    let index_by_id = nodes
        .iter()
        .enumerate()
        .map(|(i, e)| (e.external_id.clone(), i))
        .collect();
    let adjacency: Vec<Vec<(usize, f64)>> = keep
        .iter()
        .map(|&u| {
            network.adjacency[u]
                .iter()
                .map(|&(v, w)| (remap[v], w))
                .collect()
        })
        .collect();
    (
        InteractionNetwork {
            nodes,
            adjacency,
            edge_count: network.edge_count,
            index_by_id,
        },
        removed,
    )
}

/// Labels connected components by breadth-first search. Two nodes share a
/// label iff a path connects them; labels are dense in 0..count, assigned
/// in order of each component's lowest-indexed node.
pub fn connected_components(network: &InteractionNetwork) -> (Vec<usize>, usize) {
    let n = network.node_count();
    let mut labels = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if labels[start] != usize::MAX {
            continue;
        }
        labels[start] = count;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in network.neighbors(u) {
                if labels[v] == usize::MAX {
                    labels[v] = count;
                    queue.push_back(v);
                }
            }
        }
        count += 1;
    }
    (labels, count)
}

/// The seeds mapped onto a network: sorted indices plus the ids that
/// could not be found (reported, never silently dropped).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSet {
    pub indices: Vec<usize>,
    pub unmapped_ids: Vec<String>,
}

impl SeedSet {
    /// Builds directly from indices (sorted, deduplicated).
    pub fn from_indices(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        SeedSet {
            indices,
            unmapped_ids: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// This seed set minus one target (a LOOCV fold's seed set).
    pub fn without(&self, target: usize) -> SeedSet {
        SeedSet {
            indices: self
                .indices
                .iter()
                .copied()
                .filter(|&s| s != target)
                .collect(),
            unmapped_ids: Vec::new(),
        }
    }
}

/// Maps external seed ids onto network indices. Erroring on zero matches
/// because no downstream stage can run without seeds.
pub fn map_seeds(network: &InteractionNetwork, seed_ids: &[String]) -> Result<SeedSet> {
    if seed_ids.is_empty() {
        return Err(Error::Input("seed id list is empty".to_string()));
    }
    let mut indices = Vec::new();
    let mut unmapped = Vec::new();
    for id in seed_ids {
        match network.index_of(id) {
            Some(idx) => indices.push(idx),
            None => {
                if !unmapped.contains(id) {
                    unmapped.push(id.clone());
                }
            }
        }
    }
    indices.sort_unstable();
    indices.dedup();
    if indices.is_empty() {
        return Err(Error::NoSeedsMapped);
    }
    Ok(SeedSet {
        indices,
        unmapped_ids: unmapped,
    })
}

/// Reads the seed file format: one id per line, `#` comments allowed.
pub fn read_ids_from_reader<R: BufRead>(reader: R) -> Result<Vec<String>> {
    let mut ids = Vec::new();
    for entry in data_lines(reader) {
        let (_, line) = entry?;
        ids.push(line);
    }
    Ok(ids)
}

pub fn read_ids_from_path<P: AsRef<Path>>(path: P) -> Result<Vec<String>> {
    read_ids_from_reader(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn records(recs: &[(&str, &str, f64)]) -> Vec<EdgeRecord> {
        recs.iter()
            .map(|&(a, b, w)| (a.to_string(), b.to_string(), w))
            .collect()
    }

    #[test]
    fn minimal_edge_is_symmetric() {
        let (net, report) = load_network(records(&[("A", "B", 0.8)])).unwrap();
        assert_eq!(net.node_count(), 2);
        assert_eq!(net.edge_count(), 1);
        assert_eq!(net.edge_weight(0, 1), Some(0.8));
        assert_eq!(net.edge_weight(1, 0), Some(0.8));
        assert_eq!(report, LoadReport::default());
    }

    #[test]
    fn duplicate_edges_merge_by_max() {
        let (net, report) = load_network(records(&[("A", "B", 0.8), ("B", "A", 0.6)])).unwrap();
        assert_eq!(net.edge_count(), 1);
        assert_eq!(net.edge_weight(0, 1), Some(0.8));
        assert_eq!(report.duplicates_merged, 1);
    }

    #[test]
    fn self_loop_is_skipped_with_warning() {
        let (net, report) = load_network(records(&[("A", "A", 1.0)])).unwrap();
        assert_eq!(net.node_count(), 0);
        assert_eq!(net.edge_count(), 0);
        assert_eq!(report.self_loops_skipped, 1);
    }

    #[test]
    fn out_of_range_weights_are_rejected() {
        assert!(load_network(records(&[("A", "B", 0.0)])).is_err());
        assert!(load_network(records(&[("A", "B", -0.5)])).is_err());
        assert!(load_network(records(&[("A", "B", 1.5)])).is_err());
        assert!(load_network(records(&[("A", "B", f64::NAN)])).is_err());
    }

    #[test]
    fn indexing_follows_first_appearance() {
        let (net, _) = load_network(records(&[("B", "A", 0.5), ("C", "A", 0.5)])).unwrap();
        assert_eq!(net.id(0), "B");
        assert_eq!(net.id(1), "A");
        assert_eq!(net.id(2), "C");
    }

    #[test]
    fn reader_reports_malformed_line_number() {
        let text = "A\tB\t0.8\n# comment\nbroken line\n";
        let err = load_network_from_reader(text.as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn reader_reports_bad_weight_line_number() {
        let text = "A\tB\t0.8\nA\tC\t2.5\n";
        let err = load_network_from_reader(text.as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn prune_drops_isolated_and_reindexes() {
        let mut builder = NetworkBuilder::new();
        builder.add_node("A");
        builder.add_node("B");
        builder.add_node("C");
        builder.add_edge("A", "B", 0.5).unwrap();
        let (net, _) = builder.finish();
        let (pruned, removed) = prune_isolated(&net);
        assert_eq!(removed, 1);
        assert_eq!(pruned.node_count(), 2);
        assert_eq!(pruned.index_of("A"), Some(0));
        assert_eq!(pruned.index_of("B"), Some(1));
        assert_eq!(pruned.index_of("C"), None);
        assert_eq!(pruned.edge_weight(0, 1), Some(0.5));
    }

    #[test]
    fn prune_of_edgeless_network_empties_it() {
        let mut builder = NetworkBuilder::new();
        builder.add_node("A");
        builder.add_node("B");
        let (net, _) = builder.finish();
        let (pruned, removed) = prune_isolated(&net);
        assert_eq!(removed, 2);
        assert_eq!(pruned.node_count(), 0);
    }

    #[test]
    fn prune_is_idempotent() {
        let mut builder = NetworkBuilder::new();
        builder.add_node("lonely");
        builder.add_edge("A", "B", 0.9).unwrap();
        builder.add_edge("B", "C", 0.4).unwrap();
        let (net, _) = builder.finish();
        let (once, removed) = prune_isolated(&net);
        assert_eq!(removed, 1);
        let (twice, removed_again) = prune_isolated(&once);
        assert_eq!(removed_again, 0);
        assert_eq!(once, twice);
    }

    #[test]
    fn components_of_edge_plus_isolated() {
        let mut builder = NetworkBuilder::new();
        builder.add_edge("A", "B", 1.0).unwrap();
        builder.add_node("C");
        let (net, _) = builder.finish();
        let (labels, count) = connected_components(&net);
        assert_eq!(count, 2);
        assert_eq!(labels[0], labels[1]);
        assert_ne!(labels[0], labels[2]);
    }

    #[test]
    fn components_of_path_is_one() {
        let (net, _) = load_network(records(&[("A", "B", 1.0), ("B", "C", 1.0)])).unwrap();
        let (_, count) = connected_components(&net);
        assert_eq!(count, 1);
    }

    #[test]
    fn map_seeds_reports_unmapped() {
        let (net, _) = load_network(records(&[("A", "B", 1.0), ("B", "C", 1.0)])).unwrap();
        let seeds = map_seeds(
            &net,
            &["A".to_string(), "B".to_string()],
        )
        .unwrap();
        assert_eq!(seeds.indices, vec![0, 1]);
        assert!(seeds.unmapped_ids.is_empty());

        let seeds = map_seeds(&net, &["A".to_string(), "Z".to_string()]).unwrap();
        assert_eq!(seeds.indices, vec![0]);
        assert_eq!(seeds.unmapped_ids, vec!["Z".to_string()]);
    }

    #[test]
    fn map_seeds_errors_on_zero_matches() {
        let (net, _) = load_network(records(&[("A", "B", 1.0)])).unwrap();
        match map_seeds(&net, &["Z".to_string()]) {
            Err(Error::NoSeedsMapped) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn round_trip_preserves_structure() {
        let (net, _) = load_network(records(&[
            ("A", "B", 0.8),
            ("C", "A", 0.25),
            ("B", "C", 1.0),
            ("D", "B", 0.125),
        ]))
        .unwrap();
        let (reloaded, _) = load_network(net.to_edge_records()).unwrap();
        assert_eq!(net.canonical_edges(), reloaded.canonical_edges());
        assert_eq!(net.node_count(), reloaded.node_count());
    }
}

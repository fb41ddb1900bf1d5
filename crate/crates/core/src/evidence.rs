//! Evidence scoring from disease similarity: genes are scored by how many
//! of the top-k symptom-similar diseases they are associated with.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::graph::{InteractionNetwork, SeedSet};
use crate::parse::{data_lines, float_field, tab_fields};
use crate::score::{Provenance, ScoreVector};
use crate::{Error, Result};

/// Undirected disease–disease network weighted by symptom similarity.
#[derive(Debug, Clone, Default)]
pub struct DiseaseSimilarityNetwork {
    neighbors: BTreeMap<String, Vec<(String, f64)>>,
}

impl DiseaseSimilarityNetwork {
    pub fn from_edges<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String, f64)>,
    {
        let mut network = DiseaseSimilarityNetwork::default();
        let mut seen = HashSet::new();
        for (a, b, similarity) in edges {
            if a.is_empty() || b.is_empty() {
                return Err(Error::Input("similarity edge with empty disease name".into()));
            }
            if !similarity.is_finite() || similarity < 0.0 {
                return Err(Error::Input(format!(
                    "similarity ({a}, {b}): {similarity} must be finite and non-negative"
                )));
            }
            if a == b {
                // Self-similarity carries no neighbor information.
                continue;
            }
            let key = if a < b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            if !seen.insert(key) {
                return Err(Error::Input(format!(
                    "duplicate similarity pair ({a}, {b})"
                )));
            }
            network
                .neighbors
                .entry(a.clone())
                .or_default()
                .push((b.clone(), similarity));
            network.neighbors.entry(b).or_default().push((a, similarity));
        }
        Ok(network)
    }

    /// Reads `disease_a<TAB>disease_b<TAB>similarity` lines.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut edges = Vec::new();
        for entry in data_lines(reader) {
            let (lineno, line) = entry?;
            let fields = tab_fields(&line, lineno, 3)?;
            let similarity = float_field(fields[2], lineno, "similarity")?;
            edges.push((fields[0].to_string(), fields[1].to_string(), similarity));
        }
        Self::from_edges(edges)
    }

    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_reader(BufReader::new(File::open(path)?))
    }

    pub fn contains(&self, disease: &str) -> bool {
        self.neighbors.contains_key(disease)
    }

    pub fn disease_count(&self) -> usize {
        self.neighbors.len()
    }
}

/// The `k` most similar neighbors of a query disease.
#[derive(Debug, Clone)]
pub struct TopSimilar {
    /// Neighbors in descending similarity; ties broken lexicographically.
    pub diseases: Vec<(String, f64)>,
    /// Set when the query had fewer than `k` neighbors.
    pub shortfall: bool,
}

/// The k neighbors of `query` with greatest similarity.
pub fn top_similar_diseases(
    similarity: &DiseaseSimilarityNetwork,
    query: &str,
    k: usize,
) -> Result<TopSimilar> {
    if k == 0 {
        return Err(Error::Input("k must be positive".to_string()));
    }
    let Some(neighbors) = similarity.neighbors.get(query) else {
        return Err(Error::UnknownDisease(query.to_string()));
    };
    let mut ranked = neighbors.clone();
    ranked.sort_by(|(name_a, sim_a), (name_b, sim_b)| {
        sim_b.total_cmp(sim_a).then_with(|| name_a.cmp(name_b))
    });
    let shortfall = ranked.len() < k;
    ranked.truncate(k);
    Ok(TopSimilar {
        diseases: ranked,
        shortfall,
    })
}

/// Disease → causing-gene associations.
#[derive(Debug, Clone, Default)]
pub struct DiseaseGeneMap {
    associations: BTreeMap<String, BTreeSet<String>>,
}

impl DiseaseGeneMap {
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut map = DiseaseGeneMap::default();
        for (disease, gene) in pairs {
            if disease.is_empty() || gene.is_empty() {
                return Err(Error::Input(
                    "disease–gene association with empty field".into(),
                ));
            }
            map.associations.entry(disease).or_default().insert(gene);
        }
        Ok(map)
    }

    /// Reads `disease<TAB>gene_id` lines, one association per line.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut pairs = Vec::new();
        for entry in data_lines(reader) {
            let (lineno, line) = entry?;
            let fields = tab_fields(&line, lineno, 2)?;
            pairs.push((fields[0].to_string(), fields[1].to_string()));
        }
        Self::from_pairs(pairs)
    }

    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_reader(BufReader::new(File::open(path)?))
    }

    pub fn genes_of(&self, disease: &str) -> Option<&BTreeSet<String>> {
        self.associations.get(disease)
    }
}

/// Diseases in `top` that were absent from the gene map (scored as empty).
#[derive(Debug, Clone, Default)]
pub struct EvidenceReport {
    pub missing_diseases: Vec<String>,
}

/// Scores each non-seed network gene by the number of diseases in `top`
/// whose gene set contains it; an integer in [0, |top|]. Gene ids absent
/// from the network are ignored — they cannot be ranked.
pub fn evidence_score(
    top: &[String],
    genes: &DiseaseGeneMap,
    network: &InteractionNetwork,
    seeds: &SeedSet,
) -> Result<(ScoreVector, EvidenceReport)> {
    if top.is_empty() {
        return Err(Error::Input("top disease list is empty".to_string()));
    }
    let mut values = vec![0.0; network.node_count()];
    let mut report = EvidenceReport::default();
    for disease in top {
        let Some(gene_set) = genes.genes_of(disease) else {
            report.missing_diseases.push(disease.clone());
            continue;
        };
        for gene in gene_set {
            if let Some(index) = network.index_of(gene) {
                if !seeds.contains(index) {
                    values[index] += 1.0;
                }
            }
        }
    }
    Ok((ScoreVector::new(values, Provenance::Evidence), report))
}

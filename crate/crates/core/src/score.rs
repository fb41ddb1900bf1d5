//! Per-node score vectors shared by every scorer and by fusion.

/// Which scorer produced a [`ScoreVector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Random walk with restart (column-normalized diffusion).
    Rwr,
    /// Network propagation (symmetrically normalized diffusion).
    Np,
    /// Shortest-path statistic.
    Sp,
    /// Disease-similarity evidence count.
    Evidence,
    /// Output of score fusion.
    Fused,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Rwr => "RWR",
            Provenance::Np => "NP",
            Provenance::Sp => "SP",
            Provenance::Evidence => "EVIDENCE",
            Provenance::Fused => "FUSED",
        }
    }
}

/// A real-valued score per node, aligned with network indexing.
///
/// All values are finite and non-negative; seed handling (scorers emit 0
/// for seeds, rankings exclude them) is the producer's contract.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    pub values: Vec<f64>,
    pub provenance: Provenance,
}

impl ScoreVector {
    pub fn zeros(len: usize, provenance: Provenance) -> Self {
        ScoreVector {
            values: vec![0.0; len],
            provenance,
        }
    }

    pub fn new(values: Vec<f64>, provenance: Provenance) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite() && *v >= 0.0));
        ScoreVector { values, provenance }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, index: usize) -> f64 {
        self.values[index]
    }
}

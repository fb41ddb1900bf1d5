//! Shared oracle machinery for the integration tests: seeded random
//! graphs, a dense Gaussian-elimination solver, Floyd–Warshall, and a
//! union-find structure. These deliberately avoid the library's own code
//! paths so they can serve as independent checks.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use netprio::diffusion::TransitionMatrix;
use netprio::graph::{load_network, prune_isolated, InteractionNetwork};
use netprio::shortest_path::DistanceTransform;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random weighted graph on up to `max_nodes` nodes with edge probability
/// `p`, isolated nodes pruned away. May come out smaller than requested;
/// callers should check `node_count`.
pub fn random_network(rng: &mut ChaCha8Rng, max_nodes: usize, p: f64) -> InteractionNetwork {
    let n = rng.gen_range(2..=max_nodes.max(2));
    let mut records = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                let w: f64 = rng.gen_range(0.05..=1.0);
                records.push((format!("n{u}"), format!("n{v}"), w));
            }
        }
    }
    if records.is_empty() {
        records.push(("n0".to_string(), "n1".to_string(), 0.5));
    }
    let (network, _) = load_network(records).unwrap();
    prune_isolated(&network).0
}

/// Unweighted graph variant: every edge has confidence 1.
pub fn random_unweighted_network(
    rng: &mut ChaCha8Rng,
    max_nodes: usize,
    p: f64,
) -> InteractionNetwork {
    let n = rng.gen_range(2..=max_nodes.max(2));
    let mut records = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                records.push((format!("n{u}"), format!("n{v}"), 1.0));
            }
        }
    }
    if records.is_empty() {
        records.push(("n0".to_string(), "n1".to_string(), 1.0));
    }
    let (network, _) = load_network(records).unwrap();
    prune_isolated(&network).0
}

/// Cycle graph C_n with unit confidences.
pub fn cycle(n: usize) -> InteractionNetwork {
    let records: Vec<_> = (0..n)
        .map(|i| (format!("c{i}"), format!("c{}", (i + 1) % n), 1.0))
        .collect();
    load_network(records).unwrap().0
}

/// Complete graph K_n with unit confidences.
pub fn complete(n: usize) -> InteractionNetwork {
    let mut records = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            records.push((format!("k{u}"), format!("k{v}"), 1.0));
        }
    }
    load_network(records).unwrap().0
}

/// Densifies a transition matrix row-major.
pub fn dense_matrix(matrix: &TransitionMatrix) -> Vec<Vec<f64>> {
    let n = matrix.node_count();
    (0..n)
        .map(|i| (0..n).map(|j| matrix.entry(i, j)).collect())
        .collect()
}

/// Solves A·x = b by Gaussian elimination with partial pivoting.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        assert!(a[col][col].abs() > 1e-12, "singular oracle system");
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut sum = b[row];
        for col in (row + 1)..n {
            sum -= a[row][col] * x[col];
        }
        x[row] = sum / a[row][row];
    }
    x
}

/// Closed-form diffusion oracle: y = α·(I − (1−α)W)⁻¹·y⁰.
pub fn diffusion_closed_form(dense_w: &[Vec<f64>], alpha: f64, restart: &[f64]) -> Vec<f64> {
    let n = restart.len();
    let mut system = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            system[i][j] = -(1.0 - alpha) * dense_w[i][j];
        }
        system[i][i] += 1.0;
    }
    let rhs: Vec<f64> = restart.iter().map(|&v| alpha * v).collect();
    solve_dense(system, rhs)
}

/// All-pairs shortest-path costs by Floyd–Warshall under a transform.
pub fn floyd_warshall(network: &InteractionNetwork, transform: DistanceTransform) -> Vec<Vec<f64>> {
    let n = network.node_count();
    let mut dist = vec![vec![f64::INFINITY; n]; n];
    for u in 0..n {
        dist[u][u] = 0.0;
        for &(v, w) in network.neighbors(u) {
            dist[u][v] = transform.cost(w);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    dist
}

/// All-pairs (cost, hops, path confidence sum) by a lexicographic
/// Floyd–Warshall on (cost, hops). Panics on ambiguous ties — the caller
/// must use generic weights so one minimum path exists per pair.
pub fn floyd_warshall_stats(
    network: &InteractionNetwork,
    transform: DistanceTransform,
) -> Vec<Vec<Option<(f64, u32, f64)>>> {
    let n = network.node_count();
    let mut dist: Vec<Vec<Option<(f64, u32, f64)>>> = vec![vec![None; n]; n];
    for u in 0..n {
        dist[u][u] = Some((0.0, 0, 0.0));
        for &(v, w) in network.neighbors(u) {
            dist[u][v] = Some((transform.cost(w), 1, w));
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some((cost_ik, hops_ik, weight_ik)) = dist[i][k] else {
                continue;
            };
            for j in 0..n {
                let Some((cost_kj, hops_kj, weight_kj)) = dist[k][j] else {
                    continue;
                };
                let candidate = (cost_ik + cost_kj, hops_ik + hops_kj, weight_ik + weight_kj);
                match dist[i][j] {
                    None => dist[i][j] = Some(candidate),
                    Some(current) => {
                        let cand_key = (candidate.0, candidate.1);
                        let curr_key = (current.0, current.1);
                        if cand_key.0 < curr_key.0
                            || (cand_key.0 == curr_key.0 && cand_key.1 < curr_key.1)
                        {
                            dist[i][j] = Some(candidate);
                        } else if cand_key == curr_key
                            && (candidate.2 - current.2).abs() > 1e-9
                        {
                            panic!("ambiguous shortest-path tie in oracle fixture ({i}→{j})");
                        }
                    }
                }
            }
        }
    }
    dist
}

/// Breadth-first hop counts from one source (unweighted oracle).
pub fn bfs_hops(network: &InteractionNetwork, source: usize) -> Vec<Option<u32>> {
    let n = network.node_count();
    let mut hops = vec![None; n];
    let mut queue = std::collections::VecDeque::new();
    hops[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in network.neighbors(u) {
            if hops[v].is_none() {
                hops[v] = Some(hops[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }
    hops
}

/// Plain union-find for the component-count oracle.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub fn component_count(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&x| self.find(x) == x).count()
    }
}

/// Median oracle: mean-of-two-middle convention.
pub fn median_oracle(mut values: Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

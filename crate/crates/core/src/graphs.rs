//! Random graph generation and degree normalization.
//!
//! Three generators (Erdős-Rényi, Watts-Strogatz, Barabási-Albert) produce
//! connected, unweighted, undirected graphs; disconnected draws are
//! rejected and resampled wholesale so the marginal distribution is the
//! model conditioned on connectivity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{sym_eig, EigenDecomposition, Matrix, Rng};

const MAX_CONNECTIVITY_ATTEMPTS: usize = 1000;

/// Undirected weighted graph: symmetric non-negative weights, zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    weights: Matrix,
}

impl Graph {
    pub fn from_weights(weights: Matrix) -> Result<Self> {
        if !weights.is_square() {
            return Err(Error::Argument("weight matrix must be square".into()));
        }
        if !weights.is_symmetric() {
            return Err(Error::Argument("weight matrix must be symmetric".into()));
        }
        let n = weights.rows();
        for i in 0..n {
            if weights[(i, i)] != 0.0 {
                return Err(Error::Argument(format!("nonzero diagonal at node {i}")));
            }
            for j in 0..n {
                if weights[(i, j)] < 0.0 {
                    return Err(Error::Argument(format!("negative weight at ({i}, {j})")));
                }
            }
        }
        Ok(Graph { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &Matrix {
        &self.weights
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.weights[(i, j)] > 0.0
    }

    pub fn degree(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.has_edge(i, j)).count()
    }

    pub fn edge_count(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) {
                    count += 1;
                }
            }
        }
        count
    }

    /// 0/1 adjacency indicator of the positive-weight edges.
    pub fn binary_adjacency(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| {
            if i != j && self.has_edge(i, j) {
                1.0
            } else {
                0.0
            }
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0_usize];
        seen[0] = true;
        let mut visited = 1;
        while let Some(i) = stack.pop() {
            for j in 0..self.n {
                if !seen[j] && self.has_edge(i, j) {
                    seen[j] = true;
                    visited += 1;
                    stack.push(j);
                }
            }
        }
        visited == self.n
    }

    /// Relabels nodes: old node `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        Graph {
            n: self.n,
            weights: self.weights.permute_symmetric(perm),
        }
    }
}

/// Which random graph model generated a dataset's graphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum GraphModel {
    ErdosRenyi { p: f64 },
    WattsStrogatz { k: usize, p: f64 },
    BarabasiAlbert { m: usize },
}

impl GraphModel {
    pub fn generate(&self, n: usize, rng: &mut Rng) -> Result<Graph> {
        match *self {
            GraphModel::ErdosRenyi { p } => gen_er(n, p, rng),
            GraphModel::WattsStrogatz { k, p } => gen_ws(n, k, p, rng),
            GraphModel::BarabasiAlbert { m } => gen_ba(n, m, rng),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            GraphModel::ErdosRenyi { .. } => "er",
            GraphModel::WattsStrogatz { .. } => "ws",
            GraphModel::BarabasiAlbert { .. } => "ba",
        }
    }
}

/// Watts-Strogatz degree default: log2(n) rounded to the nearest even
/// integer, at least 2.
pub fn ws_default_degree(n: usize) -> usize {
    let raw = (n as f64).log2();
    let k = 2 * (raw / 2.0).round() as usize;
    k.max(2)
}

fn edge_matrix(n: usize, edges: &[(usize, usize)]) -> Matrix {
    let mut w = Matrix::zeros(n, n);
    for &(i, j) in edges {
        w[(i, j)] = 1.0;
        w[(j, i)] = 1.0;
    }
    w
}

/// Erdős-Rényi: each unordered pair is an edge independently with
/// probability `p`; resampled wholesale until connected.
pub fn gen_er(n: usize, p: f64, rng: &mut Rng) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Argument("need at least 2 nodes".into()));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Argument(format!("edge probability must be in (0, 1], got {p}")));
    }
    for _ in 0..MAX_CONNECTIVITY_ATTEMPTS {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.next_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph {
            n,
            weights: edge_matrix(n, &edges),
        };
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::NoConvergence {
        what: format!("connected Erdős-Rényi generation (p = {p}, {MAX_CONNECTIVITY_ATTEMPTS} attempts)"),
    })
}

/// Watts-Strogatz: ring lattice of even degree `k`, each edge rewired with
/// probability `p` (no self-loops or duplicates); resampled until connected.
pub fn gen_ws(n: usize, k: usize, p: f64, rng: &mut Rng) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Argument("need at least 2 nodes".into()));
    }
    if k % 2 != 0 || k == 0 {
        return Err(Error::Argument(format!("lattice degree must be even and positive, got {k}")));
    }
    if k >= n {
        return Err(Error::Argument(format!("lattice degree {k} must be below node count {n}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Argument(format!("rewiring probability must be in [0, 1], got {p}")));
    }
    for _ in 0..MAX_CONNECTIVITY_ATTEMPTS {
        let mut w = Matrix::zeros(n, n);
        for i in 0..n {
            for offset in 1..=(k / 2) {
                let j = (i + offset) % n;
                w[(i, j)] = 1.0;
                w[(j, i)] = 1.0;
            }
        }
        // Rewire each original lattice edge (i, i+offset) with probability p.
        for i in 0..n {
            for offset in 1..=(k / 2) {
                let j = (i + offset) % n;
                if !rng.next_bool(p) {
                    continue;
                }
                if w.row(i).iter().filter(|&&v| v > 0.0).count() >= n - 1 {
                    continue; // i already attached to everyone else
                }
                let target = loop {
                    let t = rng.next_range(n);
                    if t != i && w[(i, t)] == 0.0 {
                        break t;
                    }
                };
                w[(i, j)] = 0.0;
                w[(j, i)] = 0.0;
                w[(i, target)] = 1.0;
                w[(target, i)] = 1.0;
            }
        }
        let g = Graph { n, weights: w };
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::NoConvergence {
        what: format!("connected Watts-Strogatz generation ({MAX_CONNECTIVITY_ATTEMPTS} attempts)"),
    })
}

/// Barabási-Albert preferential attachment: nodes arrive one at a time and
/// connect to `m` distinct existing nodes with probability proportional to
/// degree. `m = 1` yields a tree.
pub fn gen_ba(n: usize, m: usize, rng: &mut Rng) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Argument("need at least 2 nodes".into()));
    }
    if m == 0 || m >= n {
        return Err(Error::Argument(format!("attachment count must satisfy 1 <= m < n, got m = {m}, n = {n}")));
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // Degree-proportional sampling via the repeated-endpoints urn.
    let mut urn: Vec<usize> = Vec::new();
    let mut targets: Vec<usize> = (0..m).collect();
    for new_node in m..n {
        for &t in &targets {
            edges.push((t, new_node));
        }
        urn.extend(targets.iter().copied());
        urn.extend(std::iter::repeat(new_node).take(m));
        if new_node + 1 < n {
            targets.clear();
            while targets.len() < m {
                let candidate = urn[rng.next_range(urn.len())];
                if !targets.contains(&candidate) {
                    targets.push(candidate);
                }
            }
        }
    }
    Ok(Graph {
        n,
        weights: edge_matrix(n, &edges),
    })
}

/// Degree-normalized view of a connected graph with its cached spectrum.
#[derive(Debug, Clone)]
pub struct NormalizedGraph {
    /// `A = D^{-1/2} W D^{-1/2}`; spectrum in [-1, 1] with top eigenvalue 1.
    pub adjacency: Matrix,
    /// `L = I - A`, the normalized Laplacian.
    pub laplacian: Matrix,
    /// Eigendecomposition of `A`, eigenvalues descending.
    pub eig: EigenDecomposition,
}

impl NormalizedGraph {
    pub fn n(&self) -> usize {
        self.adjacency.rows()
    }

    /// Relabels nodes consistently across adjacency, Laplacian and
    /// eigenvector rows; eigenvalues are unchanged. Useful for testing
    /// equivariance without rerunning the eigensolver (which would pick
    /// its own basis on degenerate eigenvalues).
    pub fn permute(&self, perm: &[usize]) -> NormalizedGraph {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let mut vectors = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                vectors[(perm[i], j)] = self.eig.eigenvectors[(i, j)];
            }
        }
        NormalizedGraph {
            adjacency: self.adjacency.permute_symmetric(perm),
            laplacian: self.laplacian.permute_symmetric(perm),
            eig: EigenDecomposition {
                eigenvalues: self.eig.eigenvalues.clone(),
                eigenvectors: vectors,
            },
        }
    }
}

/// Builds `A = D^{-1/2} W D^{-1/2}`, `L = I - A` and the spectrum of `A`.
pub fn normalize(g: &Graph) -> Result<NormalizedGraph> {
    let n = g.n();
    let mut inv_sqrt_degree = vec![0.0; n];
    for i in 0..n {
        let d: f64 = g.weights().row(i).iter().sum();
        if d <= 0.0 {
            return Err(Error::Argument(format!("node {i} has zero degree")));
        }
        inv_sqrt_degree[i] = 1.0 / d.sqrt();
    }
    // Scale factors multiply commutatively, so A is bitwise symmetric.
    let adjacency = Matrix::from_fn(n, n, |i, j| {
        g.weights()[(i, j)] * (inv_sqrt_degree[i] * inv_sqrt_degree[j])
    });
    let laplacian = Matrix::identity(n).sub(&adjacency)?;
    let eig = sym_eig(&adjacency)?;
    Ok(NormalizedGraph {
        adjacency,
        laplacian,
        eig,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_complete_when_p_is_one() {
        let mut rng = Rng::new(1);
        let g = gen_er(10, 1.0, &mut rng).unwrap();
        assert_eq!(g.edge_count(), 45);
        assert!(g.is_connected());
    }

    #[test]
    fn er_mean_edge_count_matches_binomial() {
        // 20 nodes, p = 0.2: binomial mean is 0.2 * 190 = 38 edges.
        let base = Rng::new(2024);
        let mut total = 0usize;
        let graphs = 1000;
        for i in 0..graphs {
            let mut rng = base.split(i);
            total += gen_er(20, 0.2, &mut rng).unwrap().edge_count();
        }
        let mean = total as f64 / graphs as f64;
        let expected = 0.2 * 190.0;
        assert!(
            (mean - expected).abs() <= 0.05 * expected,
            "mean edge count {mean}, expected about {expected}"
        );
    }

    #[test]
    fn er_deterministic_for_fixed_seed() {
        let g1 = gen_er(20, 0.2, &mut Rng::new(5)).unwrap();
        let g2 = gen_er(20, 0.2, &mut Rng::new(5)).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn ws_ring_lattice_without_rewiring() {
        let mut rng = Rng::new(3);
        let g = gen_ws(20, 4, 0.0, &mut rng).unwrap();
        for i in 0..20 {
            assert_eq!(g.degree(i), 4, "node {i}");
        }
        assert_eq!(g.edge_count(), 40);
    }

    #[test]
    fn ws_rewiring_preserves_edge_count() {
        let base = Rng::new(17);
        for i in 0..50 {
            let mut rng = base.split(i);
            let g = gen_ws(20, 4, 0.2, &mut rng).unwrap();
            assert_eq!(g.edge_count(), 40);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn ws_rejects_odd_or_oversized_degree() {
        let mut rng = Rng::new(0);
        assert!(matches!(gen_ws(10, 3, 0.1, &mut rng), Err(Error::Argument(_))));
        assert!(matches!(gen_ws(4, 4, 0.1, &mut rng), Err(Error::Argument(_))));
    }

    #[test]
    fn ws_default_degree_rounds_to_even() {
        assert_eq!(ws_default_degree(20), 4); // log2(20) = 4.32
        assert_eq!(ws_default_degree(2), 2);
        assert_eq!(ws_default_degree(64), 6);
        assert_eq!(ws_default_degree(100), 6); // log2(100) = 6.64
    }

    #[test]
    fn ba_single_attachment_is_a_tree() {
        let base = Rng::new(9);
        for i in 0..100 {
            let mut rng = base.split(i);
            let g = gen_ba(20, 1, &mut rng).unwrap();
            // n-1 edges plus connectivity characterizes a tree.
            assert_eq!(g.edge_count(), 19);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn ba_two_nodes_single_edge() {
        let g = gen_ba(2, 1, &mut Rng::new(1)).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn ba_grows_heavier_hubs_than_er() {
        let base = Rng::new(31);
        let graphs = 1000;
        let (mut ba_hub_total, mut er_hub_total) = (0usize, 0usize);
        for i in 0..graphs {
            let mut rng = base.split(i);
            let ba = gen_ba(20, 1, &mut rng).unwrap();
            let er = gen_er(20, 0.2, &mut rng).unwrap();
            ba_hub_total += (0..20).map(|v| ba.degree(v)).max().unwrap();
            er_hub_total += (0..20).map(|v| er.degree(v)).max().unwrap();
        }
        assert!(
            ba_hub_total > er_hub_total,
            "BA hubs {ba_hub_total} vs ER hubs {er_hub_total}"
        );
    }

    #[test]
    fn normalize_two_node_path() {
        let g = Graph::from_weights(Matrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        let ng = normalize(&g).unwrap();
        assert_eq!(ng.adjacency, Matrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]));
    }

    #[test]
    fn normalize_triangle_has_half_off_diagonal() {
        let g = Graph::from_weights(Matrix::from_fn(3, 3, |i, j| if i != j { 1.0 } else { 0.0 }))
            .unwrap();
        let ng = normalize(&g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 0.0 } else { 0.5 };
                assert!((ng.adjacency[(i, j)] - expected).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn normalized_spectrum_bounds_and_laplacian_nullvector() {
        let base = Rng::new(4);
        for i in 0..20 {
            let mut rng = base.split(i);
            let g = gen_er(15, 0.3, &mut rng).unwrap();
            let ng = normalize(&g).unwrap();
            let top = ng.eig.eigenvalues[0];
            assert!((top - 1.0).abs() <= 1e-8, "top eigenvalue {top}");
            for &l in &ng.eig.eigenvalues {
                assert!((-1.0 - 1e-8..=1.0 + 1e-8).contains(&l), "eigenvalue {l}");
            }
            // Eigenvector of A at eigenvalue 1 (nullspace of L) is
            // proportional to D^{1/2} 1.
            let mut expected: Vec<f64> = (0..g.n())
                .map(|v| g.weights().row(v).iter().sum::<f64>().sqrt())
                .collect();
            let norm = expected.iter().map(|x| x * x).sum::<f64>().sqrt();
            for e in &mut expected {
                *e /= norm;
            }
            let lead = ng.eig.eigenvectors.col(0);
            let dot: f64 = lead.iter().zip(expected.iter()).map(|(a, b)| a * b).sum();
            assert!((dot.abs() - 1.0).abs() < 1e-8, "nullvector misaligned, |dot| = {}", dot.abs());
        }
    }

    #[test]
    fn normalization_commutes_with_relabeling() {
        let mut rng = Rng::new(77);
        let g = gen_er(12, 0.3, &mut rng).unwrap();
        let mut perm: Vec<usize> = (0..12).collect();
        rng.shuffle(&mut perm);
        let direct = normalize(&g.permute(&perm)).unwrap();
        let permuted = normalize(&g).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                let a = direct.adjacency[(perm[i], perm[j])];
                let b = permuted.adjacency[(i, j)];
                assert_eq!(a, b, "adjacency mismatch at ({i}, {j})");
            }
        }
    }
}

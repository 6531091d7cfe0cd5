use super::BasisSet;

/// The m-partite transition graph of a basis set.
///
/// Vertex `x·d + k` stands for `|ψ_{xk}⟩`. Vertices in the same basis are
/// never adjacent.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionGraph {
    dim: usize,
    m: usize,
    adjacency: Vec<bool>,
    adj_tol: f64,
}

impl TransitionGraph {
    pub fn vertex_count(&self) -> usize {
        self.m * self.dim
    }

    pub fn vertex(&self, x: usize, k: usize) -> usize {
        x * self.dim + k
    }

    /// `(basis index, state index)` of a vertex.
    pub fn partition(&self, v: usize) -> (usize, usize) {
        (v / self.dim, v % self.dim)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u * self.vertex_count() + v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(move |&u| self.is_adjacent(v, u))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.is_adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn adj_tol(&self) -> f64 {
        self.adj_tol
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

/// Connects `(x, j)` and `(y, k)` for `x ≠ y` when
/// `|⟨ψ_{xj}|ψ_{yk}⟩|² > adj_tol`.
pub fn build_transition_graph(bs: &BasisSet, adj_tol: f64) -> TransitionGraph {
    let d = bs.dim();
    let m = bs.m();
    let n = d * m;
    let mut adjacency = vec![false; n * n];
    for x in 0..m {
        for y in x + 1..m {
            let overlaps = bs.basis(x).adjoint().matmul(bs.basis(y));
            for j in 0..d {
                for k in 0..d {
                    if overlaps[(j, k)].norm_sqr() > adj_tol {
                        let u = x * d + j;
                        let v = y * d + k;
                        adjacency[u * n + v] = true;
                        adjacency[v * n + u] = true;
                    }
                }
            }
        }
    }
    TransitionGraph {
        dim: d,
        m,
        adjacency,
        adj_tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::fixtures;

    #[test]
    fn pauli_graph_is_complete_tripartite() {
        let g = build_transition_graph(&fixtures::pauli_mubs(), 1e-9);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 12);
        for u in 0..6 {
            for v in 0..6 {
                let same_part = g.partition(u).0 == g.partition(v).0;
                assert_eq!(g.is_adjacent(u, v), !same_part);
            }
        }
    }

    #[test]
    fn single_basis_has_no_edges() {
        let g = build_transition_graph(&fixtures::computational(3), 1e-9);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn identical_bases_give_perfect_matching() {
        let bs = fixtures::repeated_computational(4, 2);
        let g = build_transition_graph(&bs, 1e-9);
        assert_eq!(g.edge_count(), 4);
        for k in 0..4 {
            assert!(g.is_adjacent(g.vertex(0, k), g.vertex(1, k)));
        }
    }

    #[test]
    fn adjacency_is_symmetric_without_loops() {
        let bs = fixtures::haar_random(4, 3, 11);
        let g = build_transition_graph(&bs, 1e-9);
        for u in 0..g.vertex_count() {
            assert!(!g.is_adjacent(u, u));
            for v in 0..g.vertex_count() {
                assert_eq!(g.is_adjacent(u, v), g.is_adjacent(v, u));
            }
        }
    }
}

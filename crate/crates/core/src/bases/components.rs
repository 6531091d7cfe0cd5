use super::{build_transition_graph, BasisSet, TransitionGraph};
use crate::numlin::{CMatrix, C64};
use crate::{Error, Result};

const X_INDEPENDENCE_TOL: f64 = 1e-8;

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Connected components of a transition graph with their component
/// projectors `P_a` and ranks `r_a = tr(P_a)`.
///
/// Components are ordered by `(r_a, smallest vertex index)`.
#[derive(Debug, Clone)]
pub struct ComponentDecomposition {
    projectors: Vec<CMatrix>,
    ranks: Vec<usize>,
    vertex_labels: Vec<usize>,
    /// `members[a]` lists the state indices of basis 0 inside component `a`.
    members: Vec<Vec<usize>>,
    isometries: Vec<CMatrix>,
    adj_tol: f64,
}

impl ComponentDecomposition {
    /// Number of components `g`.
    pub fn count(&self) -> usize {
        self.ranks.len()
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    pub fn projector(&self, a: usize) -> &CMatrix {
        &self.projectors[a]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn r_min(&self) -> usize {
        self.ranks.iter().copied().min().unwrap_or(0)
    }

    /// Component index of every vertex `x·d + k`.
    pub fn vertex_labels(&self) -> &[usize] {
        &self.vertex_labels
    }

    pub fn adj_tol(&self) -> f64 {
        self.adj_tol
    }

    /// `d × r_a` isometry onto the component subspace, built from the basis-0
    /// states of component `a`.
    pub fn isometry(&self, a: usize) -> &CMatrix {
        &self.isometries[a]
    }

    pub fn members(&self, a: usize) -> &[usize] {
        &self.members[a]
    }
}

fn slice_projector(bs: &BasisSet, x: usize, states: &[usize]) -> CMatrix {
    let d = bs.dim();
    let mut p = CMatrix::zeros(d, d);
    for &k in states {
        p += &CMatrix::projector(&bs.ket(x, k));
    }
    p
}

/// Component decomposition of `bs` from its transition graph.
///
/// Projectors come from the basis-0 slice; when `m ≥ 2` they are recomputed
/// from basis 1 and must agree within `1e-8`, otherwise the adjacency
/// threshold does not match the input and a pathology is reported.
pub fn components(g: &TransitionGraph, bs: &BasisSet) -> Result<ComponentDecomposition> {
    let d = bs.dim();
    let m = bs.m();
    if g.dim() != d || g.m() != m {
        return Err(Error::Dimension(
            "transition graph was built from a different basis set".into(),
        ));
    }
    let n = g.vertex_count();
    let mut dsu = DisjointSets::new(n);
    for (u, v) in g.edges() {
        dsu.union(u, v);
    }

    // Group vertices by root, remembering the smallest vertex of each group.
    let mut root_to_group: Vec<Option<usize>> = vec![None; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let r = dsu.find(v);
        match root_to_group[r] {
            Some(i) => groups[i].push(v),
            None => {
                root_to_group[r] = Some(groups.len());
                groups.push(vec![v]);
            }
        }
    }

    // Per-basis state lists of each group; every basis must contribute the
    // same number of vertices.
    let mut per_basis: Vec<Vec<Vec<usize>>> = Vec::with_capacity(groups.len());
    for grp in &groups {
        let mut slices = vec![Vec::new(); m];
        for &v in grp {
            let (x, k) = g.partition(v);
            slices[x].push(k);
        }
        let r0 = slices[0].len();
        if let Some(x) = slices.iter().position(|s| s.len() != r0) {
            return Err(Error::Pathology(format!(
                "component containing vertex {} has {} states in basis 0 but {} in basis {x} \
                 (adj_tol {:.1e})",
                grp[0],
                r0,
                slices[x].len(),
                g.adj_tol()
            )));
        }
        per_basis.push(slices);
    }

    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by_key(|&i| (per_basis[i][0].len(), groups[i][0]));

    let mut projectors = Vec::with_capacity(order.len());
    let mut ranks = Vec::with_capacity(order.len());
    let mut members = Vec::with_capacity(order.len());
    let mut isometries = Vec::with_capacity(order.len());
    let mut vertex_labels = vec![0; n];
    for (a, &i) in order.iter().enumerate() {
        for &v in &groups[i] {
            vertex_labels[v] = a;
        }
        let states = &per_basis[i][0];
        let p = slice_projector(bs, 0, states);
        if m >= 2 {
            let p1 = slice_projector(bs, 1, &per_basis[i][1]);
            let dev = p.distance(&p1);
            if dev > X_INDEPENDENCE_TOL {
                return Err(Error::Pathology(format!(
                    "component projector {a} depends on the basis used to build it \
                     (deviation {dev:.3e}, adj_tol {:.1e})",
                    g.adj_tol()
                )));
            }
        }
        let rank = p.trace().re;
        if (rank - rank.round()).abs() > 1e-6 {
            return Err(Error::Pathology(format!(
                "component projector {a} has non-integer trace {rank}"
            )));
        }
        let cols: Vec<Vec<C64>> = states.iter().map(|&k| bs.ket(0, k)).collect();
        isometries.push(CMatrix::from_columns(&cols)?);
        ranks.push(rank.round() as usize);
        projectors.push(p);
        members.push(states.clone());
    }

    Ok(ComponentDecomposition {
        projectors,
        ranks,
        vertex_labels,
        members,
        isometries,
        adj_tol: g.adj_tol(),
    })
}

impl BasisSet {
    /// Builds the transition graph and its component decomposition.
    pub fn decompose(&self, adj_tol: f64) -> Result<ComponentDecomposition> {
        components(&build_transition_graph(self, adj_tol), self)
    }
}

/// True iff the transition graph is connected.
pub fn is_irreducible(bs: &BasisSet, adj_tol: f64) -> Result<bool> {
    Ok(bs.decompose(adj_tol)?.count() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{commutant_dimension, fixtures, DEFAULT_ADJ_TOL};
    use crate::sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_invariants(dec: &ComponentDecomposition, bs: &BasisSet) {
        let d = bs.dim();
        let mut sum = CMatrix::zeros(d, d);
        for (a, p) in dec.projectors().iter().enumerate() {
            assert!(p.hermiticity_defect() < 1e-9);
            assert!(p.matmul(p).distance(p) < 1e-9);
            for (b, q) in dec.projectors().iter().enumerate() {
                if a != b {
                    assert!(p.matmul(q).frobenius_norm() < 1e-9);
                }
            }
            sum += p;
        }
        assert!(sum.distance(&CMatrix::identity(d)) < 1e-9);
        assert_eq!(dec.ranks().iter().sum::<usize>(), d);
        for x in 0..bs.m() {
            for a in 0..dec.count() {
                let count = (0..d)
                    .filter(|&k| dec.vertex_labels()[x * d + k] == a)
                    .count();
                assert_eq!(count, dec.ranks()[a]);
            }
        }
        let w = dec.ranks().windows(2).all(|w| w[0] <= w[1]);
        assert!(w, "components sorted by rank");
    }

    #[test]
    fn pauli_is_one_component() {
        let bs = fixtures::pauli_mubs();
        let dec = bs.decompose(DEFAULT_ADJ_TOL).unwrap();
        assert_eq!(dec.count(), 1);
        assert_eq!(dec.ranks(), &[2]);
        assert!(dec.projector(0).distance(&CMatrix::identity(2)) < 1e-12);
        check_invariants(&dec, &bs);
        assert!(is_irreducible(&bs, DEFAULT_ADJ_TOL).unwrap());
    }

    #[test]
    fn single_basis_splits_into_rank_one_components() {
        let bs = fixtures::computational(3);
        let dec = bs.decompose(DEFAULT_ADJ_TOL).unwrap();
        assert_eq!(dec.count(), 3);
        for a in 0..3 {
            assert_eq!(dec.ranks()[a], 1);
            let mut diag = [0.0; 3];
            diag[a] = 1.0;
            assert!(dec.projector(a).distance(&CMatrix::diag_real(&diag)) < 1e-15);
        }
        check_invariants(&dec, &bs);
        assert!(!is_irreducible(&bs, DEFAULT_ADJ_TOL).unwrap());
    }

    #[test]
    fn block_pair_has_two_rank_two_components() {
        let bs =
            fixtures::direct_sum(&[fixtures::fourier_pair(2), fixtures::fourier_pair(2)]).unwrap();
        let dec = bs.decompose(DEFAULT_ADJ_TOL).unwrap();
        assert_eq!(dec.count(), 2);
        assert_eq!(dec.ranks(), &[2, 2]);
        assert!(
            dec.projector(0)
                .distance(&CMatrix::diag_real(&[1.0, 1.0, 0.0, 0.0]))
                < 1e-12
        );
        check_invariants(&dec, &bs);
    }

    #[test]
    fn haar_pair_is_irreducible() {
        for seed in 0..10 {
            let bs = fixtures::haar_random(4, 2, seed);
            assert!(is_irreducible(&bs, DEFAULT_ADJ_TOL).unwrap());
        }
    }

    #[test]
    fn mismatched_graph_is_rejected() {
        let g = build_transition_graph(&fixtures::computational(3), 1e-9);
        assert!(components(&g, &fixtures::pauli_mubs()).is_err());
    }

    #[test]
    fn loose_tolerance_surfaces_as_pathology() {
        // Basis 1 rotates the first two levels by a small angle, so two
        // transition probabilities are sin²(1e-3) ≈ 1e-6.
        let t: f64 = 1e-3;
        let mut rot = CMatrix::identity(4);
        rot[(0, 0)] = C64::new(t.cos(), 0.0);
        rot[(0, 1)] = C64::new(-t.sin(), 0.0);
        rot[(1, 0)] = C64::new(t.sin(), 0.0);
        rot[(1, 1)] = C64::new(t.cos(), 0.0);
        let bs = BasisSet::uniform(4, vec![CMatrix::identity(4), rot]).unwrap();
        // A threshold above 1e-6 drops those edges; the basis-0 and basis-1
        // slices then span different lines.
        assert!(matches!(bs.decompose(1e-3), Err(Error::Pathology(_))));
        let dec = bs.decompose(1e-9).unwrap();
        assert_eq!(dec.count(), 3);
        assert_eq!(dec.ranks(), &[1, 1, 2]);
        check_invariants(&dec, &bs);
    }

    #[test]
    fn count_matches_commutant_on_random_direct_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let m = rng.random_range(1..=3);
            let blocks = rng.random_range(1..=3);
            let parts: Vec<BasisSet> = (0..blocks)
                .map(|_| fixtures::haar_random(rng.random_range(1..=3), m, rng.random()))
                .collect();
            let bs = fixtures::direct_sum(&parts).unwrap();
            let u = sample::haar_unitary(bs.dim(), &mut rng);
            let bs = bs.rotated(&u).unwrap();
            let dec = bs.decompose(DEFAULT_ADJ_TOL).unwrap();
            check_invariants(&dec, &bs);
            assert_eq!(dec.count(), commutant_dimension(&bs).unwrap());
        }
    }
}

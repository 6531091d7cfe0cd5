mod common;

use common::*;
use proptest::prelude::*;
use zuslab::bases::{build_transition_graph, commutant_dimension, fixtures};
use zuslab::sample;

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn commutant_dimension_counts_components(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ds = random_direct_sum(6, &mut r);
        let dec = ds.bs.decompose(1e-9).unwrap();
        prop_assert_eq!(commutant_dimension(&ds.bs).unwrap(), dec.count());
    }

    #[test]
    fn direct_sums_add_component_counts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = 3;
        let parts: Vec<_> = (0..3).map(|_| random_direct_sum(3, &mut r).bs).collect();
        // Summands need a common basis count.
        let parts: Vec<_> = parts
            .into_iter()
            .map(|bs| {
                let bases: Vec<_> = (0..m).map(|x| bs.basis(x % bs.m()).clone()).collect();
                zuslab::bases::BasisSet::uniform(bs.dim(), bases).unwrap()
            })
            .collect();
        let g: usize = parts.iter().map(|bs| bs.decompose(1e-9).unwrap().count()).sum();
        let sum = fixtures::direct_sum(&parts).unwrap();
        prop_assert_eq!(sum.decompose(1e-9).unwrap().count(), g);
    }

    #[test]
    fn permutations_preserve_components(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ds = random_direct_sum(6, &mut r);
        let dec = ds.bs.decompose(1e-9).unwrap();
        let m = ds.bs.m();
        let d = ds.bs.dim();
        let mut shuffled = ds.bs.permute_bases(&sample::permutation(m, &mut r)).unwrap();
        for x in 0..m {
            shuffled = shuffled.permute_states(x, &sample::permutation(d, &mut r)).unwrap();
        }
        let dec2 = shuffled.decompose(1e-9).unwrap();
        prop_assert_eq!(dec.count(), dec2.count());
        prop_assert_eq!(sorted(dec.ranks().to_vec()), sorted(dec2.ranks().to_vec()));
        prop_assert_eq!(dec.count(), ds.block_dims.len());
        prop_assert_eq!(sorted(dec.ranks().to_vec()), sorted(ds.block_dims.clone()));
    }

    #[test]
    fn component_projectors_resolve_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ds = random_direct_sum(7, &mut r);
        let dec = ds.bs.decompose(1e-9).unwrap();
        let d = ds.bs.dim();
        let mut total = zuslab::numlin::CMatrix::zeros(d, d);
        for (a, p) in dec.projectors().iter().enumerate() {
            prop_assert!(p.matmul(p).distance(p) < 1e-9);
            prop_assert!((p.trace().re - dec.ranks()[a] as f64).abs() < 1e-9);
            for b in a + 1..dec.count() {
                prop_assert!(p.matmul(dec.projector(b)).frobenius_norm() < 1e-9);
            }
            total += p;
        }
        prop_assert!(total.distance(&zuslab::numlin::CMatrix::identity(d)) < 1e-9);
    }

    #[test]
    fn every_basis_state_lies_in_its_component(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ds = random_direct_sum(6, &mut r);
        let dec = ds.bs.decompose(1e-9).unwrap();
        let d = ds.bs.dim();
        for x in 0..ds.bs.m() {
            for k in 0..d {
                let a = dec.vertex_labels()[x * d + k];
                let v = ds.bs.ket(x, k);
                let pv = dec.projector(a).apply(&v);
                let dev: f64 = pv.iter().zip(&v).map(|(p, q)| (p - q).norm_sqr()).sum();
                prop_assert!(dev.sqrt() < 1e-8);
            }
        }
    }
}

#[test]
fn graph_edges_follow_overlaps() {
    let bs = fixtures::rotated_qubit_pair(std::f64::consts::PI);
    // A rotation by π swaps the computational states: a perfect matching.
    let g = build_transition_graph(&bs, 1e-9);
    assert_eq!(g.edge_count(), 2);
    assert!(g.is_adjacent(g.vertex(0, 0), g.vertex(1, 1)));
    assert_eq!(bs.decompose(1e-9).unwrap().count(), 2);
    assert_eq!(commutant_dimension(&bs).unwrap(), 2);
}

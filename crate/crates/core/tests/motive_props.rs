use motive_core::graph::{
    enumerate_spanning_trees, fundamental_cycle_basis_from_forest, random_connected_multigraph, Multigraph,
};
use motive_core::motive::{
    cofactor_tree_identity, count_points, deletion_contraction_check, forest_charpoly_check, laplacian_suite,
    psi_config_det, psi_config_det_with_basis, psi_laplacian, psi_laplacian_at, psi_tree_sum, rooted_tree_weights,
    weighted_psi, weighted_psi_at, WeightBundle,
};
use motive_core::polynomial::MPoly;
use motive_core::{rat, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Multigraph> {
    (any::<u64>(), 1..=max_vertices, 0..=max_edges).prop_map(move |(seed, n, extra)| {
        let m = if n == 1 { 0 } else { (n - 1).max(extra) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_connected_multigraph(&mut rng, n, m).unwrap()
    })
}

fn random_weights(g: &Multigraph, seed: u64) -> WeightBundle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let beta = (0..g.vertex_count()).map(|_| rat(rng.gen_range(1..=5), rng.gen_range(1..=3))).collect();
    let w = (0..g.edge_count()).map(|_| rat(rng.gen_range(1..=4), rng.gen_range(1..=2))).collect();
    WeightBundle::new(beta, w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_routes_agree(g in random_graph(6, 8)) {
        let t = psi_tree_sum(&g).unwrap();
        prop_assert_eq!(&psi_config_det(&g).unwrap(), &t);
        prop_assert_eq!(&psi_laplacian(&g).unwrap(), &t);
    }

    #[test]
    fn laplacian_route_independent_of_root(g in random_graph(5, 7)) {
        let t = psi_tree_sum(&g).unwrap();
        for r in 0..g.vertex_count() {
            prop_assert_eq!(&psi_laplacian_at(&g, r).unwrap(), &t);
        }
    }

    #[test]
    fn psi_is_homogeneous_multilinear(g in random_graph(6, 8)) {
        let psi = psi_tree_sum(&g).unwrap();
        prop_assert_eq!(psi.homogeneous_degree(), Some(g.loop_number() as u32));
        prop_assert!(psi.is_multilinear());
        for e in 0..g.edge_count() {
            if g.is_bridge(e).unwrap() {
                prop_assert!(!psi.contains_var(e));
            }
        }
        // Coefficients are 0/1: each monomial is the complement of one tree.
        prop_assert!(psi.terms().all(|(_, c)| *c == rat(1, 1)));
    }

    #[test]
    fn config_det_independent_of_basis(g in random_graph(5, 8)) {
        let t = psi_tree_sum(&g).unwrap();
        let trees = enumerate_spanning_trees(&g).unwrap();
        let picks: Vec<_> = [0, trees.len() / 2, trees.len() - 1].into_iter().collect();
        for i in picks {
            let basis = fundamental_cycle_basis_from_forest(&g, &trees[i]).unwrap();
            prop_assert_eq!(&psi_config_det_with_basis(&g, &basis).unwrap(), &t);
        }
    }

    #[test]
    fn orientation_does_not_matter(g in random_graph(6, 8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let flip: Vec<bool> = (0..g.edge_count()).map(|_| rng.gen()).collect();
        let h = g.reorient(&flip);
        prop_assert_eq!(psi_config_det(&h).unwrap(), psi_config_det(&g).unwrap());
        prop_assert_eq!(psi_laplacian(&h).unwrap(), psi_laplacian(&g).unwrap());
    }

    #[test]
    fn edge_relabelling_permutes_variables(g in random_graph(5, 7), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.edge_count()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.permute_edges(&perm).unwrap();
        let expected = psi_tree_sum(&g).unwrap().permute_vars(&perm).unwrap();
        prop_assert_eq!(psi_config_det(&h).unwrap(), expected);
    }

    #[test]
    fn loop_multiplies_by_its_variable(g in random_graph(5, 6), v in 0usize..5) {
        let v = v % g.vertex_count();
        let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.tail, e.head)).collect();
        edges.push((v, v));
        let looped = Multigraph::new(g.vertex_count(), &edges).unwrap();
        let m = g.edge_count();
        let expected = &psi_tree_sum(&g).unwrap().extend_vars(1) * &MPoly::var(m + 1, m);
        prop_assert_eq!(&psi_config_det(&looped).unwrap(), &expected);
        prop_assert_eq!(&psi_tree_sum(&looped).unwrap(), &expected);
        prop_assert!(psi_laplacian(&looped).is_err());
    }

    #[test]
    fn weighted_laplacians_are_consistent(g in random_graph(5, 7), seed in any::<u64>()) {
        let wb = random_weights(&g, seed);
        let s = laplacian_suite(&g, &wb).unwrap();
        prop_assert!(s.symmetric.is_symmetric());
        for r in 0..g.vertex_count() {
            let row_sum: Rational = (0..g.vertex_count()).map(|c| s.walk.get(r, c).clone()).sum();
            prop_assert!(row_sum.is_zero());
        }
        let btb = s.incidence.mul(&s.edge_weights).unwrap().mul(&s.incidence.transpose()).unwrap();
        prop_assert_eq!(btb, s.symmetric.clone());
    }

    #[test]
    fn cofactor_identity_random_weights(g in random_graph(5, 7), seed in any::<u64>()) {
        let wb = random_weights(&g, seed);
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                let c = cofactor_tree_identity(&g, &wb, u, v).unwrap();
                prop_assert!(c.holds, "u={} v={}: {} vs {}", u, v, c.signed_cofactor, c.tree_side);
            }
        }
    }

    #[test]
    fn unit_weights_reduce_to_tree_counts(g in random_graph(5, 7)) {
        let wb = WeightBundle::unit(&g);
        let k = rooted_tree_weights(&g, &wb).unwrap();
        let trees = enumerate_spanning_trees(&g).unwrap().len() as i64;
        for kv in &k.per_root {
            prop_assert_eq!(kv.clone(), rat(trees, 1));
        }
    }

    #[test]
    fn forest_expansion_of_charpoly(g in random_graph(5, 7), seed in any::<u64>()) {
        let wb = random_weights(&g, seed);
        let report = forest_charpoly_check(&g, &wb).unwrap();
        prop_assert!(report.all_match());
        prop_assert_eq!(report.charpoly.len(), g.vertex_count() + 1);
        prop_assert!(report.charpoly[0].is_zero());
    }

    #[test]
    fn weighted_psi_scales_with_root_weight(g in random_graph(4, 6), seed in any::<u64>()) {
        let wb = random_weights(&g, seed);
        // The principal cofactor at r is alpha_r times a root-independent polynomial.
        let base = weighted_psi(&g, &wb).unwrap();
        prop_assert_eq!(base.homogeneous_degree().unwrap_or(0), g.loop_number() as u32);
        let normalized = base.scale(&(Rational::from_integer(1.into()) / wb.alpha(0)));
        for r in 1..g.vertex_count() {
            let at_r = weighted_psi_at(&g, &wb, r).unwrap();
            prop_assert_eq!(at_r.scale(&(Rational::from_integer(1.into()) / wb.alpha(r))), normalized.clone());
        }
    }

    #[test]
    fn deletion_contraction_on_cycle_edges(g in random_graph(5, 7)) {
        for e in 0..g.edge_count() {
            match deletion_contraction_check(&g, e) {
                Ok(dc) => prop_assert!(dc.holds),
                Err(_) => prop_assert!(g.is_bridge(e).unwrap()),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn point_counts_invariant_under_relabelling(g in random_graph(4, 6), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.edge_count()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.permute_edges(&perm).unwrap();
        for q in [2u64, 3] {
            prop_assert_eq!(count_points(&g, q).unwrap(), count_points(&h, q).unwrap());
        }
    }
}

#[test]
fn point_count_guards() {
    let g = Multigraph::new(2, &[(0, 1), (0, 1)]).unwrap();
    assert!(count_points(&g, 4).is_err());
    let big = Multigraph::new(2, &vec![(0, 1); 30]).unwrap();
    assert!(count_points(&big, 2).is_err());
}

use himax::cascade::{sigma_mc, sigma_mc_sequential, simulate_cascade, thresholds_for};
use himax::decomposition::*;
use himax::graph::gen_gnm;
use himax::optimize::*;
use himax::{CascadeModel, Graph, OracleConfig};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..3 * n)))
        .prop_map(|(n, edges)| Graph::from_edges(n, edges).unwrap())
}

fn arb_model() -> impl Strategy<Value = CascadeModel> {
    prop_oneof![
        (0.0f64..=1.0).prop_map(|p| CascadeModel::icm(p).unwrap()),
        Just(CascadeModel::Ltm),
        (0.0f64..=1.0, 0.0f64..=1.0).prop_map(|(p, q)| CascadeModel::dicm(p, q).unwrap()),
        Just(CascadeModel::Scm),
        (0.0f64..=1.0).prop_map(|e| CascadeModel::two_step(e).unwrap()),
    ]
}

fn check_tree(tree: &HierarchyTree, n: usize) {
    assert_eq!(tree.n(), n);
    assert_eq!(tree.node_count(), 2 * n - 1);
    assert_eq!(tree.size(tree.root()), n);
    let mut seen = vec![false; n];
    for v in 0..tree.node_count() {
        match tree.children(v) {
            Some((l, r)) => {
                assert_eq!(tree.parent(l), Some(v));
                assert_eq!(tree.parent(r), Some(v));
                assert!(tree.height(v) > tree.height(l).max(tree.height(r)));
                assert_eq!(tree.size(v), tree.size(l) + tree.size(r));
            }
            None => {
                let x = tree.leaf_vertex(v).unwrap();
                assert!(!seen[x]);
                seen[x] = true;
                assert_eq!(tree.height(v), 0);
                assert_eq!(tree.leaf_node(x), v);
            }
        }
    }
    assert!(seen.into_iter().all(|s| s));
    assert_eq!(tree.parent(tree.root()), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adjacency_is_symmetric(g in arb_graph(40)) {
        let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.m());
        for v in 0..g.n() {
            prop_assert!(!g.neighbors(v).contains(&v));
            for &u in g.neighbors(v) {
                prop_assert!(g.neighbors(u).contains(&v));
            }
        }
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph(30)) {
        let back = Graph::parse_edge_list(&g.to_edge_list());
        if g.n() == 0 {
            prop_assert!(back.is_err());
        } else {
            let back = back.unwrap();
            prop_assert_eq!(back.n(), g.n());
            prop_assert_eq!(back.edges(), g.edges());
        }
    }

    #[test]
    fn gnm_is_reproducible(n in 2usize..60, frac in 0.0f64..1.0, seed: u64) {
        let m = ((n * (n - 1) / 2) as f64 * frac) as usize;
        let a = gen_gnm(n, m, seed).unwrap();
        prop_assert_eq!(a.m(), m);
        let b = gen_gnm(n, m, seed).unwrap();
        prop_assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn builders_produce_valid_trees(g in arb_graph(40), seed: u64) {
        for method in Method::ALL {
            let t = method.build(&g, seed).unwrap();
            check_tree(&t, g.n());
            let back = parse_tree(&format_tree(&t)).unwrap();
            prop_assert!(back.structurally_equal(&t));
            let again = method.build(&g, seed).unwrap();
            prop_assert_eq!(format_tree(&again), format_tree(&t));
        }
    }

    #[test]
    fn cost_bounds_and_swap_invariance(g in arb_graph(30), seed: u64, pick: usize) {
        let t = build_random_pair(&g, seed);
        let cost = dasgupta_cost(&g, &t).unwrap();
        let (n, m) = (g.n() as u64, g.m() as u64);
        prop_assert!(2 * m <= cost && cost <= n * m);
        let internal: Vec<usize> = (0..t.node_count()).filter(|&v| !t.is_leaf(v)).collect();
        if !internal.is_empty() {
            let swapped = t.with_swapped_children(internal[pick % internal.len()]);
            prop_assert_eq!(dasgupta_cost(&g, &swapped).unwrap(), cost);
        }
    }

    #[test]
    fn cascades_are_monotone_and_closed(g in arb_graph(30), model in arb_model(), seed: u64, mask: u64) {
        let n = g.n();
        let small: Vec<usize> = (0..n).filter(|&v| mask >> (v % 64) & 3 == 0).collect();
        let large: Vec<usize> = (0..n).filter(|&v| mask >> (v % 64) & 1 == 0).collect();
        let theta = thresholds_for(&g, &OracleConfig::crn(1, seed), &[], 0);
        let a = simulate_cascade(&g, &model, &small, &theta).unwrap();
        let b = simulate_cascade(&g, &model, &large, &theta).unwrap();
        prop_assert!(a.iter().all(|v| b.contains(v)));
        prop_assert_eq!(simulate_cascade(&g, &model, &b, &theta).unwrap(), b);
    }

    #[test]
    fn crn_is_deterministic(g in arb_graph(40), model in arb_model(), seed: u64, reps in 1usize..40) {
        let cfg = OracleConfig::crn(reps, seed);
        let seeds: Vec<usize> = (0..g.n()).step_by(3).collect();
        let a = sigma_mc(&g, &model, &seeds, &cfg).unwrap();
        let b = sigma_mc(&g, &model, &seeds, &cfg).unwrap();
        let c = sigma_mc_sequential(&g, &model, &seeds, &cfg).unwrap();
        prop_assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        prop_assert_eq!(a.mean.to_bits(), c.mean.to_bits());
        prop_assert_eq!(a.stderr.to_bits(), c.stderr.to_bits());
    }

    #[test]
    fn local_influence_is_a_probability(model in arb_model(), d in 1usize..64, c in 0usize..64) {
        let c = c.min(d);
        let f = model.local_influence(c, d).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!(model.local_influence(d + 1, d).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dpim_and_mpa_invariants(g in arb_graph(12), model in arb_model(), seed: u64, k in 0usize..5) {
        let k = k.min(g.n());
        let tree = build_random_edge(&g, seed);
        let oracle = MonteCarloOracle { graph: &g, model: &model, cfg: OracleConfig::crn(30, seed) };
        let table = dpim_table(&oracle, &tree, k).unwrap();
        for v in 0..tree.node_count() {
            let under = tree.leaves_under(v);
            prop_assert_eq!(table.max_budget(v), tree.size(v).min(k));
            for i in 0..=table.max_budget(v) {
                let row = table.get(v, i).unwrap();
                prop_assert_eq!(row.len(), i);
                prop_assert!(row.iter().all(|x| under.contains(x)));
            }
        }

        let init = dpim_with(&oracle, &tree, k).unwrap();
        let out = mpa_with(&oracle, &tree, k, 5).unwrap();
        prop_assert_eq!(out.seeds.len(), k);
        prop_assert!(out.accepted.windows(2).all(|w| w[1] > w[0]));
        prop_assert!(out.sweeps <= 5);
        let s_init = oracle.sigma(&init).unwrap().mean;
        let s_out = oracle.sigma(&out.seeds).unwrap().mean;
        prop_assert_eq!(out.accepted[0], s_init);
        prop_assert!(s_out >= s_init);

        // every retrieval stays inside its two directions and its budget
        for v in 0..tree.node_count() {
            if tree.is_leaf(v) {
                continue;
            }
            let (l, r) = tree.children(v).unwrap();
            let inside = tree.leaves_under(v);
            for pair in DirectionPair::ALL {
                for budget in 0..=k {
                    let got = retrieve_seeds(&tree, &out.table, v, pair, budget);
                    prop_assert!(got.len() <= budget);
                    let allowed = |x: &usize| match pair {
                        DirectionPair::LeftRight => inside.contains(x),
                        DirectionPair::LeftUp => tree.leaves_under(l).contains(x) || !inside.contains(x),
                        DirectionPair::RightUp => tree.leaves_under(r).contains(x) || !inside.contains(x),
                    };
                    prop_assert!(got.iter().all(allowed));
                }
            }
        }
    }
}

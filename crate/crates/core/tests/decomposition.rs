use himax::decomposition::*;
use himax::Graph;

fn first_merge(tree: &HierarchyTree) -> Vec<usize> {
    // the lowest internal node created by the builder has id n
    tree.leaves_under(tree.n())
}

fn two_triangles() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
}

fn is_subtree(tree: &HierarchyTree, set: &[usize]) -> bool {
    let v = tree.lca_of(set).unwrap();
    let mut under = tree.leaves_under(v);
    under.sort_unstable();
    let mut want = set.to_vec();
    want.sort_unstable();
    under == want
}

#[test]
fn small_trees() {
    let one = Graph::from_edges(1, []).unwrap();
    let two = Graph::from_edges(2, [(0, 1)]).unwrap();
    for method in Method::ALL {
        let t = method.build(&one, 1).unwrap();
        assert_eq!(t.node_count(), 1);
        assert!(t.is_leaf(t.root()));
        let t = method.build(&two, 1).unwrap();
        assert_eq!(t.node_count(), 3);
        assert_eq!(t.height(t.root()), 1);
    }
}

#[test]
fn random_pair_is_reproducible() {
    let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    let a = build_random_pair(&g, 42);
    let b = build_random_pair(&g, 42);
    assert_eq!(a.node_count(), 7);
    assert!(a.structurally_equal(&b));
    assert_eq!(format_tree(&a), format_tree(&b));
}

#[test]
fn random_edge_on_path_merges_an_edge_first() {
    let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    for seed in 0..50 {
        let t = build_random_edge(&g, seed);
        let mut first = first_merge(&t);
        first.sort_unstable();
        assert!(first == [0, 1] || first == [1, 2], "seed {seed}: {first:?}");
    }
}

#[test]
fn random_edge_without_edges_is_random_pair() {
    let g = Graph::from_edges(7, []).unwrap();
    for seed in 0..5 {
        assert_eq!(format_tree(&build_random_edge(&g, seed)), format_tree(&build_random_pair(&g, seed)));
    }
}

#[test]
fn random_edge_joins_triangles_last() {
    let g = two_triangles();
    for seed in 0..20 {
        let t = build_random_edge(&g, seed);
        assert!(is_subtree(&t, &[0, 1, 2]));
        assert!(is_subtree(&t, &[3, 4, 5]));
    }
}

#[test]
fn random_edge_keeps_cliques_of_any_size_together() {
    let sizes = [1, 2, 3, 5, 4];
    let mut edges = Vec::new();
    let mut cliques = Vec::new();
    let mut next = 0;
    for s in sizes {
        let members: Vec<usize> = (next..next + s).collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                edges.push((u, v));
            }
        }
        next += s;
        cliques.push(members);
    }
    let g = Graph::from_edges(next, edges).unwrap();
    for seed in 0..10 {
        let t = build_random_edge(&g, seed);
        for c in &cliques {
            assert!(is_subtree(&t, c), "seed {seed}, clique {c:?}");
        }
    }
}

#[test]
fn bisection_separates_equal_cliques() {
    let g = two_triangles();
    for seed in 0..10 {
        let t = build_bisection(&g, seed);
        assert!(is_subtree(&t, &[0, 1, 2]));
        assert!(is_subtree(&t, &[3, 4, 5]));
    }
    // four 4-cliques: every balanced split at every level can be cut-free
    let mut edges = Vec::new();
    for c in 0..4 {
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push((4 * c + i, 4 * c + j));
            }
        }
    }
    let g = Graph::from_edges(16, edges).unwrap();
    for seed in 0..5 {
        let t = build_bisection(&g, seed);
        for c in 0..4 {
            assert!(is_subtree(&t, &[4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3]));
        }
    }
}

#[test]
fn bisection_is_balanced_and_deterministic() {
    let edges: Vec<_> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
    let k4 = Graph::from_edges(4, edges).unwrap();
    let a = build_bisection(&k4, 9);
    assert_eq!(format_tree(&a), format_tree(&build_bisection(&k4, 9)));
    let (l, r) = a.children(a.root()).unwrap();
    assert_eq!((a.size(l), a.size(r)), (2, 2));

    let g = himax::graph::gen_gnm(37, 80, 3).unwrap();
    let t = build_bisection(&g, 1);
    for v in 0..t.node_count() {
        if let Some((l, r)) = t.children(v) {
            assert_eq!(t.size(l), t.size(v).div_ceil(2));
            assert_eq!(t.size(r), t.size(v) / 2);
        }
    }
}

#[test]
fn jaccard_merges_twins_first() {
    // 0 and 1 both see exactly {2, 3}
    let g = Graph::from_edges(5, [(0, 2), (0, 3), (1, 2), (1, 3), (3, 4)]).unwrap();
    let t = build_jaccard(&g).unwrap();
    assert_eq!(first_merge(&t), vec![0, 1]);
}

#[test]
fn jaccard_on_four_cycle_merges_antipodes() {
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let t = build_jaccard(&g).unwrap();
    // both antipodal pairs score 1; (0, 2) has the smaller ids
    assert_eq!(first_merge(&t), vec![0, 2]);
    assert!(is_subtree(&t, &[1, 3]));
}

#[test]
fn jaccard_is_deterministic() {
    let g = himax::graph::gen_gnm(60, 150, 5).unwrap();
    assert_eq!(format_tree(&build_jaccard(&g).unwrap()), format_tree(&build_jaccard(&g).unwrap()));
}

#[test]
fn cost_examples() {
    let edge = Graph::from_edges(2, [(0, 1)]).unwrap();
    assert_eq!(dasgupta_cost(&edge, &build_random_pair(&edge, 0)).unwrap(), 2);
    let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let tree = parse_tree("hier v1 3\n0 -1 -1\n1 0 -1\n2 1 0\n3 1 1\n4 0 2\n").unwrap();
    assert_eq!(dasgupta_cost(&tri, &tree).unwrap(), 8);
}

#[test]
fn tree_file_errors() {
    let one_child = "hier v1 2\n0 -1 -1\n1 0 -1\n2 1 0\n";
    assert!(parse_tree(one_child).is_err());
    let duplicate_leaf = "hier v1 2\n0 -1 -1\n1 0 0\n2 0 0\n";
    assert!(parse_tree(duplicate_leaf).is_err());
    let cycle = "hier v1 2\n0 2 -1\n1 0 0\n2 0 1\n";
    assert!(parse_tree(cycle).is_err());
}

#[test]
fn tree_file_round_trip_on_disk() {
    let g = himax::graph::gen_gnm(20, 40, 1).unwrap();
    let t = build_random_edge(&g, 3);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.hier");
    write_tree(&t, &path).unwrap();
    assert!(read_tree(&path).unwrap().structurally_equal(&t));
}

#[test]
fn method_names_parse() {
    for m in Method::ALL {
        assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
    }
    assert_eq!("metis".parse::<Method>().unwrap(), Method::Bisection);
    assert!("louvain".parse::<Method>().is_err());
}

//! Independent reference implementations checked against the library.

use himax::cascade::{sigma_exact, sigma_mc, simulate_cascade, thresholds_for};
use himax::graph::gen_gnm;
use himax::{CascadeModel, Graph, OracleConfig};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn models() -> Vec<CascadeModel> {
    vec![
        CascadeModel::icm(0.3).unwrap(),
        CascadeModel::Ltm,
        CascadeModel::dicm(0.4, 0.2).unwrap(),
        CascadeModel::Scm,
        CascadeModel::two_step(0.25).unwrap(),
    ]
}

/// Synchronous rounds: everyone whose local influence reaches their
/// threshold joins, until nothing changes.
fn rounds(graph: &Graph, model: &CascadeModel, seeds: &[usize], theta: &[f64]) -> Vec<usize> {
    let n = graph.n();
    let mut infected = vec![false; n];
    for &s in seeds {
        infected[s] = true;
    }
    loop {
        let next: Vec<bool> = (0..n)
            .map(|v| {
                if infected[v] {
                    return true;
                }
                let c = graph.neighbors(v).iter().filter(|&&u| infected[u]).count();
                c > 0 && model.f(c, graph.degree(v)) >= theta[v]
            })
            .collect();
        if next == infected {
            return (0..n).filter(|&v| infected[v]).collect();
        }
        infected = next;
    }
}

/// Expected cascade size by enumerating every vector of threshold classes.
/// Vertex `v` activates once `c` neighbors are infected with probability
/// `f(c) - f(c-1)`, and never with probability `1 - f(d)`.
fn sigma_by_enumeration(graph: &Graph, model: &CascadeModel, seeds: &[usize]) -> f64 {
    let n = graph.n();
    let free: Vec<usize> = (0..n).filter(|v| !seeds.contains(v)).collect();
    let classes: Vec<Vec<(usize, f64)>> = free
        .iter()
        .map(|&v| {
            let d = graph.degree(v);
            let mut out: Vec<(usize, f64)> = (1..=d)
                .map(|c| (c, model.f(c, d) - model.f(c - 1, d)))
                .collect();
            out.push((usize::MAX, 1.0 - model.f(d, d)));
            out.retain(|&(_, p)| p > 0.0);
            out
        })
        .collect();

    let mut need = vec![usize::MAX; n];
    let mut total = 0.0;
    let mut choice = vec![0usize; free.len()];
    loop {
        let mut prob = 1.0;
        for (i, &v) in free.iter().enumerate() {
            let (c, p) = classes[i][choice[i]];
            need[v] = c;
            prob *= p;
        }
        let mut infected = vec![false; n];
        for &s in seeds {
            infected[s] = true;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for &v in &free {
                if !infected[v] && graph.neighbors(v).iter().filter(|&&u| infected[u]).count() >= need[v] {
                    infected[v] = true;
                    changed = true;
                }
            }
        }
        total += prob * infected.iter().filter(|&&x| x).count() as f64;

        let mut i = 0;
        loop {
            if i == free.len() {
                return total;
            }
            choice[i] += 1;
            if choice[i] < classes[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn exact_matches_enumeration_on_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for trial in 0..40 {
        let n = rng.gen_range(1..=7);
        let max_m = n * (n - 1) / 2;
        let m = rng.gen_range(0..=max_m.min(10));
        let g = gen_gnm(n, m, trial).unwrap();
        let seeds: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        for model in models() {
            let want = sigma_by_enumeration(&g, &model, &seeds);
            let got = sigma_exact(&g, &model, &seeds).unwrap();
            assert!((want - got).abs() < 1e-9, "trial {trial}, {model}: {got} vs {want}");
        }
    }
}

#[test]
fn monte_carlo_tracks_exact() {
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
    for model in models() {
        let exact = sigma_exact(&g, &model, &[0]).unwrap();
        let mc = sigma_mc(&g, &model, &[0], &OracleConfig::crn(20_000, 5)).unwrap();
        assert!((mc.mean - exact).abs() <= 4.0 * mc.stderr + 1e-12, "{model}: {} vs {exact}", mc.mean);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simulation_matches_rounds(n in 1usize..30, density in 0.0f64..0.4, seed: u64, rep in 0usize..4) {
        let max_m = n * (n - 1) / 2;
        let g = gen_gnm(n, (max_m as f64 * density) as usize, seed).unwrap();
        let cfg = OracleConfig::crn(1, seed);
        let seeds: Vec<usize> = (0..n).filter(|v| (v * 7 + rep) % 5 == 0).collect();
        let theta = thresholds_for(&g, &cfg, &seeds, rep);
        for model in models() {
            prop_assert_eq!(
                simulate_cascade(&g, &model, &seeds, &theta).unwrap(),
                rounds(&g, &model, &seeds, &theta)
            );
        }
    }
}

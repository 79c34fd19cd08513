//! Exact expected spread by sequential revelation of threshold classes.
//!
//! Because `f` depends only on the infected-neighbor count, `theta_v` matters
//! only through its class: the smallest count `c` with `f(c, d_v) >= theta_v`.
//! Class `c` has probability `f(c) - f(c - 1)`, and "never" has probability
//! `1 - f(d)`. The final infected set is the least fixed point for the drawn
//! classes, which does not depend on the order in which vertices are examined,
//! so classes can be revealed one vertex at a time: a vertex known to have
//! class above `r` whose count has risen to `c` activates with probability
//! `(f(c) - f(r)) / (1 - f(r))`.
//!
//! The search branches only when the outcome matters to another vertex. A
//! vertex whose neighbors are all infected contributes its activation
//! probability additively, which keeps stars and similar hubs linear.

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::simulate::check_seeds;
use super::CascadeModel;

/// Upper bound on explored revelation states for [`sigma_exact`].
pub const EXACT_STATE_BUDGET: u64 = 10_000_000;

pub fn sigma_exact(graph: &Graph, model: &CascadeModel, seeds: &[usize]) -> Result<f64> {
    sigma_exact_with_budget(graph, model, seeds, EXACT_STATE_BUDGET)
}

pub fn sigma_exact_with_budget(graph: &Graph, model: &CascadeModel, seeds: &[usize], budget: u64) -> Result<f64> {
    check_seeds(graph, seeds)?;
    let mut search = Revelation::new(graph, model, budget);
    for &s in seeds {
        if !search.infected[s] {
            search.infect(s);
        }
    }
    search.explore()
}

struct Revelation<'a> {
    graph: &'a Graph,
    model: &'a CascadeModel,
    infected: Vec<bool>,
    count: Vec<usize>,
    /// Count at which each vertex was last seen not to activate.
    resolved: Vec<usize>,
    in_pending: Vec<bool>,
    pending: Vec<usize>,
    infected_total: usize,
    steps: u64,
    budget: u64,
}

impl<'a> Revelation<'a> {
    fn new(graph: &'a Graph, model: &'a CascadeModel, budget: u64) -> Self {
        let n = graph.n();
        Revelation {
            graph,
            model,
            infected: vec![false; n],
            count: vec![0; n],
            resolved: vec![0; n],
            in_pending: vec![false; n],
            pending: Vec::new(),
            infected_total: 0,
            steps: 0,
            budget,
        }
    }

    /// Marks `v` infected; returns the vertices newly pushed to pending.
    fn infect(&mut self, v: usize) -> Vec<usize> {
        self.infected[v] = true;
        self.infected_total += 1;
        let mut pushed = Vec::new();
        for &u in self.graph.neighbors(v) {
            if self.infected[u] {
                continue;
            }
            self.count[u] += 1;
            if !self.in_pending[u] {
                self.in_pending[u] = true;
                self.pending.push(u);
                pushed.push(u);
            }
        }
        pushed
    }

    fn uninfect(&mut self, v: usize, pushed: Vec<usize>) {
        for u in pushed.into_iter().rev() {
            let top = self.pending.pop();
            debug_assert_eq!(top, Some(u));
            self.in_pending[u] = false;
        }
        for &u in self.graph.neighbors(v) {
            if !self.infected[u] {
                self.count[u] -= 1;
            }
        }
        self.infected[v] = false;
        self.infected_total -= 1;
    }

    fn explore_infected(&mut self, v: usize) -> Result<f64> {
        let pushed = self.infect(v);
        let value = self.explore()?;
        self.uninfect(v, pushed);
        Ok(value)
    }

    /// Expected final infected count from the current state. Leaves the
    /// state exactly as it found it.
    fn explore(&mut self) -> Result<f64> {
        let mut settled: Vec<(usize, usize)> = Vec::new();
        let mut additive = 0.0;
        let value = loop {
            self.steps += 1;
            if self.steps > self.budget {
                return Err(Error::Capacity(format!(
                    "exact influence needs more than {} revelation states",
                    self.budget
                )));
            }
            let Some(v) = self.pending.pop() else {
                break self.infected_total as f64 + additive;
            };
            self.in_pending[v] = false;
            if self.infected[v] {
                // A seed listed after one of its neighbors.
                settled.push((v, self.resolved[v]));
                continue;
            }
            let degree = self.graph.degree(v);
            let (c, r) = (self.count[v], self.resolved[v]);
            let f_r = self.model.f(r, degree);
            let p = if f_r >= 1.0 {
                1.0
            } else {
                ((self.model.f(c, degree) - f_r) / (1.0 - f_r)).clamp(0.0, 1.0)
            };
            settled.push((v, r));

            if c == degree {
                // Nobody left to influence and nothing left to learn.
                self.resolved[v] = c;
                additive += p;
                continue;
            }
            if p <= 0.0 {
                self.resolved[v] = c;
                continue;
            }
            if p >= 1.0 {
                break additive + self.explore_infected(v)?;
            }
            let on = self.explore_infected(v)?;
            self.resolved[v] = c;
            let off = self.explore()?;
            self.resolved[v] = r;
            break additive + p * on + (1.0 - p) * off;
        };
        for (v, r) in settled.into_iter().rev() {
            self.resolved[v] = r;
            self.in_pending[v] = true;
            self.pending.push(v);
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_one_plus_p() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        for p in [0.0, 0.1, 0.5, 1.0] {
            let s = sigma_exact(&g, &CascadeModel::Icm { p }, &[0]).unwrap();
            assert!((s - (1.0 + p)).abs() < 1e-12);
        }
    }

    #[test]
    fn star_center_under_two_step() {
        let leaves = 25;
        let g = Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).unwrap();
        let model = CascadeModel::TwoStep { eps: 1.0 / leaves as f64 };
        let s = sigma_exact(&g, &model, &[0]).unwrap();
        assert!((s - 2.0).abs() < 1e-9, "{s}");
    }

    #[test]
    fn triangle_under_two_step() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let eps = 0.13;
        let s = sigma_exact(&g, &CascadeModel::TwoStep { eps }, &[0]).unwrap();
        let expected = 1.0 + 2.0 * (1.0 - (1.0 - eps) * (1.0 - eps));
        assert!((s - expected).abs() < 1e-12);
    }

    #[test]
    fn trivial_sets() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(sigma_exact(&g, &CascadeModel::Scm, &[]).unwrap(), 0.0);
        assert_eq!(sigma_exact(&g, &CascadeModel::Scm, &[0, 1, 2, 3]).unwrap(), 4.0);
    }

    #[test]
    fn budget_is_enforced() {
        let g = crate::graph::gen_gnm(40, 200, 2).unwrap();
        let err = sigma_exact_with_budget(&g, &CascadeModel::Icm { p: 0.3 }, &[0], 1000);
        assert!(matches!(err, Err(Error::Capacity(_))));
    }
}

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::CascadeModel;

/// Reusable per-worker buffers for one cascade run.
#[derive(Debug, Clone)]
pub(crate) struct Scratch {
    infected: Vec<bool>,
    count: Vec<u32>,
    theta: Vec<f64>,
    touched: Vec<usize>,
    order: Vec<usize>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Self {
        Scratch {
            infected: vec![false; n],
            count: vec![0; n],
            theta: vec![f64::NAN; n],
            touched: Vec::new(),
            order: Vec::new(),
        }
    }

    /// Vertices infected by the last run, in infection order.
    pub(crate) fn infected(&self) -> &[usize] {
        &self.order
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.infected[v] = false;
            self.count[v] = 0;
            self.theta[v] = f64::NAN;
        }
        self.touched.clear();
        self.order.clear();
    }

    fn touch(&mut self, v: usize) {
        if self.count[v] == 0 && !self.infected[v] && self.theta[v].is_nan() {
            self.touched.push(v);
        }
    }

    /// Runs the threshold process to its fixed point and returns the number
    /// of infected vertices. `threshold(v)` is queried at most once per
    /// vertex, and only for vertices that gain an infected neighbor.
    ///
    /// Vertices are activated one at a time from a work list instead of in
    /// synchronous rounds. Since every `f` is nondecreasing in the infected
    /// count, both schedules reach the same least fixed point.
    pub(crate) fn run<T>(&mut self, graph: &Graph, model: &CascadeModel, seeds: &[usize], mut threshold: T) -> usize
    where
        T: FnMut(usize) -> f64,
    {
        self.reset();
        for &s in seeds {
            if !self.infected[s] {
                self.touch(s);
                self.infected[s] = true;
                self.order.push(s);
            }
        }
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            for &u in graph.neighbors(v) {
                if self.infected[u] {
                    continue;
                }
                self.touch(u);
                self.count[u] += 1;
                if self.theta[u].is_nan() {
                    self.theta[u] = threshold(u);
                }
                if model.f(self.count[u] as usize, graph.degree(u)) >= self.theta[u] {
                    self.infected[u] = true;
                    self.order.push(u);
                }
            }
        }
        self.order.len()
    }
}

pub(crate) fn check_seeds(graph: &Graph, seeds: &[usize]) -> Result<()> {
    match seeds.iter().find(|&&s| s >= graph.n()) {
        Some(s) => Err(Error::Inconsistent(format!(
            "seed {s} is not a vertex of a graph with {} vertices",
            graph.n()
        ))),
        None => Ok(()),
    }
}

/// Runs one cascade with explicit thresholds and returns the final infected
/// set, sorted.
pub fn simulate_cascade(
    graph: &Graph,
    model: &CascadeModel,
    seeds: &[usize],
    thresholds: &[f64],
) -> Result<Vec<usize>> {
    check_seeds(graph, seeds)?;
    if thresholds.len() != graph.n() {
        return Err(Error::Inconsistent(format!(
            "{} thresholds for {} vertices",
            thresholds.len(),
            graph.n()
        )));
    }
    let mut scratch = Scratch::new(graph.n());
    scratch.run(graph, model, seeds, |v| thresholds[v]);
    let mut out = scratch.infected().to_vec();
    out.sort_unstable();
    Ok(out)
}

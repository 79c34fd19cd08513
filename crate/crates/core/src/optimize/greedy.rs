use crate::error::{Error, Result};
use crate::par;

use super::oracle::{argmax_first, InfluenceOracle};

/// Greedy hill climbing: `k` rounds, each adding the vertex with the largest
/// `σ(T ∪ {v})`, smallest id on ties. Issues at most `n·k` queries.
pub fn greedy_with<O: InfluenceOracle>(oracle: &O, n: usize, k: usize) -> Result<Vec<usize>> {
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds the {n} vertices")));
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut taken = vec![false; n];
    for _ in 0..k {
        let candidates: Vec<usize> = (0..n).filter(|&v| !taken[v]).collect();
        let values = par::map_slice(&candidates, |&v| {
            let mut set = chosen.clone();
            set.push(v);
            oracle.sigma(&set)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let best = candidates[argmax_first(&values).expect("k <= n leaves a candidate")];
        taken[best] = true;
        chosen.push(best);
    }
    chosen.sort_unstable();
    Ok(chosen)
}

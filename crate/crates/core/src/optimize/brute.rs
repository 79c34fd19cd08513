use crate::error::{Error, Result};

use super::oracle::{argmax_first, InfluenceOracle};

/// Largest number of subsets brute force will enumerate.
pub const BRUTE_FORCE_MAX_SUBSETS: u64 = 1_000_000;

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (0..k).rev().find(|&i| current[i] < n - k + i) else {
            return out;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Evaluates every `k`-subset and returns the best; the lexicographically
/// earliest wins ties.
pub fn brute_force_with<O: InfluenceOracle>(oracle: &O, n: usize, k: usize) -> Result<Vec<usize>> {
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds the {n} vertices")));
    }
    let count = binomial(n, k);
    if count > BRUTE_FORCE_MAX_SUBSETS {
        return Err(Error::Capacity(format!(
            "brute force over C({n}, {k}) = {count} subsets exceeds the limit of {BRUTE_FORCE_MAX_SUBSETS}"
        )));
    }
    let subsets = k_subsets(n, k);
    let values = crate::par::map_slice(&subsets, |s| oracle.sigma(s))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let best = argmax_first(&values).expect("at least one subset");
    Ok(subsets[best].clone())
}

//! Shared inputs for the benchmarks.

use fourier_minors::enumerate::k_subsets;
use fourier_minors::IndexSet;

/// Every `k`-subset of `{0, …, p−1}` as an [`IndexSet`], in lexicographic order.
pub fn all_sets(p: usize, k: usize) -> Vec<IndexSet> {
    k_subsets(p, k).into_iter().map(|m| IndexSet::from_mask(p, m)).collect()
}

//! Shared oracles for the integration suites: independent brute-force
//! recounts that never touch the library's incremental enumeration paths.

use sizespectra::graph::{Graph, WeightedGraph};

/// Edge count of G[S] by scanning every pair, membership by linear search.
pub fn naive_edge_count(g: &Graph, members: &[usize]) -> u64 {
    let mut count = 0u64;
    for (idx, &u) in members.iter().enumerate() {
        for &v in &members[idx + 1..] {
            if g.adjacent(u, v) {
                count += 1;
            }
        }
    }
    count
}

/// Full spectra by walking all 2^n subsets with a per-subset recount.
/// Returns (phi, psi) with both sets sorted ascending.
pub fn naive_spectra(wg: &WeightedGraph) -> (Vec<u64>, Vec<(u32, u64)>) {
    let n = wg.graph.n();
    assert!(n <= 20, "brute force oracle is for desk-size graphs");
    let mut phi = std::collections::BTreeSet::new();
    let mut psi = std::collections::BTreeSet::new();
    for mask in 0u32..1u32 << n {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut size = naive_edge_count(&wg.graph, &members);
        for &v in &members {
            size += wg.omega.get(v);
        }
        phi.insert(size);
        psi.insert((members.len() as u32, size));
    }
    (phi.into_iter().collect(), psi.into_iter().collect())
}

/// Median of an unsorted slice, averaging the middle pair on even lengths.
#[allow(dead_code)] // each test binary compiles this module separately
pub fn median(values: &[u64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid] as f64
    } else {
        (sorted[mid - 1] + sorted[mid]) as f64 / 2.0
    }
}

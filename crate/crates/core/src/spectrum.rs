//! Exact and sampled computation of the induced-subgraph size spectra
//! Φ = {sizes} and Ψ = {(order, size)}, in plain and vertex-weighted form.

use crate::error::{Error, Result};
use crate::graph::{induced_edge_count, omega_size, Graph, VertexSet, WeightedGraph};
use crate::rng::stream_rng;
use rand::Rng;
use rayon::prelude::*;
use std::collections::{BTreeSet, HashSet};

/// Default cap on exact enumeration: 2^30 Gray steps is minutes-scale.
pub const ENUM_CAP_DEFAULT: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Phi,
    Psi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    LowerBound,
}

/// A set of achieved sizes (Φ) or (order, size) pairs (Ψ), tagged by whether it
/// came from full enumeration or only bounds the true spectrum from below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeSpectrum {
    pub mode: Mode,
    pub exactness: Exactness,
    /// Strictly increasing; populated when mode is Phi.
    pub phi_set: Vec<u64>,
    /// Strictly increasing lexicographically; populated when mode is Psi.
    pub psi_set: Vec<(u32, u64)>,
    /// Provenance note: enumeration / sampling / construction.
    pub source: String,
}

impl SizeSpectrum {
    pub fn len(&self) -> usize {
        match self.mode {
            Mode::Phi => self.phi_set.len(),
            Mode::Psi => self.psi_set.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// JSON array: sizes, or [order, size] pairs.
    pub fn to_json(&self) -> String {
        match self.mode {
            Mode::Phi => serde_json::to_string(&self.phi_set).unwrap(),
            Mode::Psi => serde_json::to_string(&self.psi_set).unwrap(),
        }
    }

    /// CSV with header `size` or `order,size`, one row per element, ascending.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self.mode {
            Mode::Phi => {
                out.push_str("size\n");
                for s in &self.phi_set {
                    out.push_str(&format!("{s}\n"));
                }
            }
            Mode::Psi => {
                out.push_str("order,size\n");
                for (k, s) in &self.psi_set {
                    out.push_str(&format!("{k},{s}\n"));
                }
            }
        }
        out
    }
}

fn from_pairs(mode: Mode, exactness: Exactness, pairs: BTreeSet<(u32, u64)>, source: &str) -> SizeSpectrum {
    match mode {
        Mode::Phi => {
            let sizes: BTreeSet<u64> = pairs.iter().map(|&(_, s)| s).collect();
            SizeSpectrum {
                mode,
                exactness,
                phi_set: sizes.into_iter().collect(),
                psi_set: Vec::new(),
                source: source.to_string(),
            }
        }
        Mode::Psi => SizeSpectrum {
            mode,
            exactness,
            phi_set: Vec::new(),
            psi_set: pairs.into_iter().collect(),
            source: source.to_string(),
        },
    }
}

/// Exact spectrum by iterating all 2^n subsets in Gray-code order, maintaining
/// the ω-size incrementally (one degree query per step). Includes the empty
/// subgraph, so 0 ∈ Φ always. Uses the default enumeration cap.
pub fn phi_psi_exact(wg: &WeightedGraph, mode: Mode) -> Result<SizeSpectrum> {
    phi_psi_exact_capped(wg, mode, ENUM_CAP_DEFAULT)
}

/// As [`phi_psi_exact`] with an explicit cap (must stay below one machine word).
pub fn phi_psi_exact_capped(wg: &WeightedGraph, mode: Mode, cap: usize) -> Result<SizeSpectrum> {
    let n = wg.graph.n();
    if cap >= 64 {
        return Err(Error::Parameter(format!("enumeration cap {cap} must be < 64")));
    }
    if n > cap {
        return Err(Error::Cap(format!(
            "n = {n} exceeds enumeration cap {cap}; use the sampled variant"
        )));
    }
    // Single-word adjacency rows: n ≤ cap < 64.
    let rows: Vec<u64> = (0..n).map(|v| wg.graph.row(v)[0]).collect();
    let weights: Vec<u64> = (0..n).map(|v| wg.omega.get(v)).collect();
    let max_size: u64 = (n as u64) * (n as u64).saturating_sub(1) / 2 + weights.iter().sum::<u64>();

    // Dense per-level bitmaps when sizes are small enough; hash sets otherwise
    // (huge weights at small n).
    let mut acc = LevelAcc::new(n, max_size);
    acc.record(0, 0);
    let mut mask = 0u64;
    let mut size = 0u64;
    let mut order = 0u32;
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        let bit = 1u64 << v;
        if mask & bit == 0 {
            size += (rows[v] & mask).count_ones() as u64 + weights[v];
            mask |= bit;
            order += 1;
        } else {
            mask &= !bit;
            size -= (rows[v] & mask).count_ones() as u64 + weights[v];
            order -= 1;
        }
        acc.record(order, size);
    }
    Ok(from_pairs(mode, Exactness::Exact, acc.into_pairs(), "enumeration"))
}

enum LevelAcc {
    Dense { levels: Vec<Vec<u64>> },
    Sparse { levels: Vec<HashSet<u64>> },
}

const DENSE_SIZE_LIMIT: u64 = 1 << 24;

impl LevelAcc {
    fn new(n: usize, max_size: u64) -> LevelAcc {
        if max_size < DENSE_SIZE_LIMIT {
            let words = (max_size as usize + 64) / 64;
            LevelAcc::Dense { levels: vec![vec![0u64; words]; n + 1] }
        } else {
            LevelAcc::Sparse { levels: vec![HashSet::new(); n + 1] }
        }
    }

    #[inline]
    fn record(&mut self, order: u32, size: u64) {
        match self {
            LevelAcc::Dense { levels } => {
                levels[order as usize][(size / 64) as usize] |= 1u64 << (size % 64);
            }
            LevelAcc::Sparse { levels } => {
                levels[order as usize].insert(size);
            }
        }
    }

    fn into_pairs(self) -> BTreeSet<(u32, u64)> {
        let mut out = BTreeSet::new();
        match self {
            LevelAcc::Dense { levels } => {
                for (k, words) in levels.into_iter().enumerate() {
                    for (wi, w) in words.into_iter().enumerate() {
                        let mut rest = w;
                        while rest != 0 {
                            let b = rest.trailing_zeros() as u64;
                            rest &= rest - 1;
                            out.insert((k as u32, wi as u64 * 64 + b));
                        }
                    }
                }
            }
            LevelAcc::Sparse { levels } => {
                for (k, set) in levels.into_iter().enumerate() {
                    for s in set {
                        out.insert((k as u32, s));
                    }
                }
            }
        }
        out
    }
}

/// Lower-bound spectrum from `trials` random subsets, stratified uniformly over
/// target orders 0..=n (uniform subset size, then a uniform subset of that
/// size). Deterministic for fixed (seed, trials) regardless of worker count:
/// every trial derives its own RNG stream and the union is order-independent.
pub fn phi_sampled(wg: &WeightedGraph, mode: Mode, trials: u64, seed: u64) -> SizeSpectrum {
    let n = wg.graph.n();
    let pairs: BTreeSet<(u32, u64)> = (0..trials)
        .into_par_iter()
        .fold(BTreeSet::new, |mut acc, trial| {
            let mut rng = stream_rng(seed, "sample", trial);
            let k = rng.random_range(0..=n);
            let mut idx: Vec<u32> = (0..n as u32).collect();
            for j in 0..k {
                let r = rng.random_range(j..n);
                idx.swap(j, r);
            }
            let s = VertexSet::from_indices(n, &idx[..k].iter().map(|&v| v as usize).collect::<Vec<_>>())
                .expect("indices in range");
            let size = omega_size(wg, &s).expect("matching universe");
            acc.insert((k as u32, size));
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    from_pairs(mode, Exactness::LowerBound, pairs, "sampling")
}

/// Length of the maximal consecutive prefix {0, 1, …, m} contained in the Φ
/// set: returns m + 1, and 0 when 0 itself is missing.
pub fn consecutive_prefix(spectrum: &SizeSpectrum) -> Result<u64> {
    if spectrum.mode != Mode::Phi {
        return Err(Error::Parameter("consecutive_prefix needs a Φ spectrum".into()));
    }
    let mut expect = 0u64;
    for &s in &spectrum.phi_set {
        if s != expect {
            break;
        }
        expect += 1;
    }
    Ok(expect)
}

/// Verifies e(G[U ∪ Z]) = e(G[U]) + e^ω(G[Z]) with ω(v) = Deg_U(v), computing
/// both sides independently. Cross-module test oracle for the construction.
pub fn size_decomposition_check(g: &Graph, u: &VertexSet, z: &VertexSet) -> Result<bool> {
    if !u.is_disjoint(z) {
        return Err(Error::Parameter("size decomposition needs disjoint sets".into()));
    }
    let lhs = induced_edge_count(g, &u.union(z))?;
    let e_u = induced_edge_count(g, u)?;
    let e_z = induced_edge_count(g, z)?;
    let cross: u64 = z.iter().map(|v| g.deg_in_raw(v, u.words()) as u64).sum();
    Ok(lhs == e_u + e_z + cross)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, gnp, Graph, WeightFn};

    fn naive_pairs(wg: &WeightedGraph) -> BTreeSet<(u32, u64)> {
        let n = wg.graph.n();
        let mut out = BTreeSet::new();
        for mask in 0u64..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let mut size: u64 = members.iter().map(|&v| wg.omega.get(v)).sum();
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    if wg.graph.adjacent(u, v) {
                        size += 1;
                    }
                }
            }
            out.insert((members.len() as u32, size));
        }
        out
    }

    fn phi_of(wg: &WeightedGraph) -> Vec<u64> {
        phi_psi_exact(wg, Mode::Phi).unwrap().phi_set
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_of(&WeightedGraph::unweighted(complete(3).unwrap())), vec![0, 1, 3]);
        assert_eq!(phi_of(&WeightedGraph::unweighted(cycle(5).unwrap())), vec![0, 1, 2, 3, 5]);
        assert_eq!(phi_of(&WeightedGraph::unweighted(Graph::from_edges(4, &[]).unwrap())), vec![0]);
    }

    #[test]
    fn exact_matches_naive_recount() {
        for seed in 0..8 {
            let g = gnp(11, 0.4, seed).unwrap();
            let w = WeightFn::new((0..11).map(|v| (v * v % 7) as u64).collect());
            let wg = WeightedGraph::new(g, w).unwrap();
            let spectrum = phi_psi_exact(&wg, Mode::Psi).unwrap();
            let naive = naive_pairs(&wg);
            assert_eq!(spectrum.psi_set, naive.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn sparse_accumulator_agrees_with_dense() {
        // Huge weights push the accumulator onto the hash-set path.
        let g = gnp(10, 0.5, 3).unwrap();
        let w = WeightFn::new((0..10).map(|v| (v as u64) << 40).collect());
        let wg = WeightedGraph::new(g, w).unwrap();
        let spectrum = phi_psi_exact(&wg, Mode::Psi).unwrap();
        assert_eq!(spectrum.psi_set, naive_pairs(&wg).into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn cap_errors() {
        let wg = WeightedGraph::unweighted(gnp(31, 0.5, 0).unwrap());
        assert!(matches!(phi_psi_exact(&wg, Mode::Phi), Err(Error::Cap(_))));
        assert!(phi_psi_exact_capped(&wg, Mode::Phi, 31).is_ok());
        assert!(matches!(
            phi_psi_exact_capped(&wg, Mode::Phi, 64),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn sampled_is_subset_and_saturates() {
        for seed in 0..4 {
            let wg = WeightedGraph::unweighted(gnp(10, 0.5, seed).unwrap());
            let exact = phi_psi_exact(&wg, Mode::Phi).unwrap();
            let sampled = phi_sampled(&wg, Mode::Phi, 4000, seed);
            assert!(sampled.phi_set.iter().all(|s| exact.phi_set.contains(s)));
            assert_eq!(sampled.phi_set, exact.phi_set, "4000 trials should saturate n=10");
        }
    }

    #[test]
    fn sampled_single_trial_and_complete_graph() {
        let wg = WeightedGraph::unweighted(gnp(12, 0.3, 7).unwrap());
        assert_eq!(phi_sampled(&wg, Mode::Phi, 1, 0).len(), 1);
        let kg = WeightedGraph::unweighted(complete(9).unwrap());
        let spectrum = phi_sampled(&kg, Mode::Phi, 500, 1);
        let clique_sizes: Vec<u64> = (0..=9u64).map(|k| k * k.saturating_sub(1) / 2).collect();
        assert!(spectrum.phi_set.iter().all(|s| clique_sizes.contains(s)));
    }

    #[test]
    fn sampled_deterministic_across_thread_counts() {
        let wg = WeightedGraph::unweighted(gnp(40, 0.5, 2).unwrap());
        let a = phi_sampled(&wg, Mode::Psi, 300, 5);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = one.install(|| phi_sampled(&wg, Mode::Psi, 300, 5));
        assert_eq!(a, b);
    }

    #[test]
    fn prefix_examples() {
        let k4 = phi_psi_exact(&WeightedGraph::unweighted(complete(4).unwrap()), Mode::Phi).unwrap();
        assert_eq!(k4.phi_set, vec![0, 1, 3, 6]);
        assert_eq!(consecutive_prefix(&k4).unwrap(), 2);
        let c5 = phi_psi_exact(&WeightedGraph::unweighted(cycle(5).unwrap()), Mode::Phi).unwrap();
        assert_eq!(consecutive_prefix(&c5).unwrap(), 4);
        let just_zero = SizeSpectrum {
            mode: Mode::Phi,
            exactness: Exactness::Exact,
            phi_set: vec![0],
            psi_set: vec![],
            source: "test".into(),
        };
        assert_eq!(consecutive_prefix(&just_zero).unwrap(), 1);
        let psi = phi_psi_exact(&WeightedGraph::unweighted(complete(3).unwrap()), Mode::Psi).unwrap();
        assert!(consecutive_prefix(&psi).is_err());
    }

    #[test]
    fn weight_shift_moves_levels_linearly() {
        // Shifting every weight by t shifts each level-k size by exactly k·t.
        let g = gnp(9, 0.5, 4).unwrap();
        let base = WeightedGraph::new(g.clone(), WeightFn::new((0..9).map(|v| v as u64 * 3).collect())).unwrap();
        let t = 11u64;
        let shifted =
            WeightedGraph::new(g, WeightFn::new((0..9).map(|v| v as u64 * 3 + t).collect())).unwrap();
        let a = phi_psi_exact(&base, Mode::Psi).unwrap().psi_set;
        let b = phi_psi_exact(&shifted, Mode::Psi).unwrap().psi_set;
        let moved: Vec<(u32, u64)> = a.iter().map(|&(k, s)| (k, s + k as u64 * t)).collect();
        assert_eq!(moved, b);
    }

    #[test]
    fn decomposition_examples() {
        let g = gnp(40, 0.5, 6).unwrap();
        let u = VertexSet::from_indices(40, &(0..15).collect::<Vec<_>>()).unwrap();
        let z = VertexSet::from_indices(40, &(20..30).collect::<Vec<_>>()).unwrap();
        assert!(size_decomposition_check(&g, &u, &z).unwrap());
        assert!(size_decomposition_check(&g, &u, &VertexSet::empty(40)).unwrap());
        assert!(size_decomposition_check(&g, &VertexSet::empty(40), &z).unwrap());
        let overlap = VertexSet::from_indices(40, &[5, 25]).unwrap();
        assert!(size_decomposition_check(&g, &u, &overlap).is_err());
    }

    #[test]
    fn csv_and_json_shapes() {
        let spectrum = phi_psi_exact(&WeightedGraph::unweighted(complete(3).unwrap()), Mode::Phi).unwrap();
        assert_eq!(spectrum.to_csv(), "size\n0\n1\n3\n");
        assert_eq!(spectrum.to_json(), "[0,1,3]");
        let psi = phi_psi_exact(&WeightedGraph::unweighted(complete(3).unwrap()), Mode::Psi).unwrap();
        assert_eq!(psi.to_csv(), "order,size\n0,0\n1,0\n2,1\n3,3\n");
        assert_eq!(psi.to_json(), "[[0,0],[1,0],[2,1],[3,3]]");
    }
}

//! Structural predicates consumed by the construction pipeline: hom(G) by
//! branch-and-bound, edge density, (c,δ)-diversity checking and extraction,
//! the random bipartite diversity split, and the uniform-density probe.

use crate::bits::{count_xor_and, iter_ones, set, words_for};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rng::stream_rng;
use rand::Rng;

/// Default node budget for the clique search; G(n,1/2) stays far below this
/// for n up to ~2000 because its clique number is only ~2·log2 n.
pub const HOM_NODE_CAP: u64 = 100_000_000;

/// Largest clique and independent set, with verified witnesses.
#[derive(Clone, Debug)]
pub struct HomResult {
    pub clique_size: usize,
    pub indep_size: usize,
    pub hom: usize,
    pub witness_clique: VertexSet,
    pub witness_indep: VertexSet,
}

pub fn hom(g: &Graph) -> Result<HomResult> {
    hom_with_cap(g, HOM_NODE_CAP)
}

pub fn hom_with_cap(g: &Graph, node_cap: u64) -> Result<HomResult> {
    if g.n() == 0 {
        return Err(Error::Parameter("hom needs at least one vertex".into()));
    }
    let comp = g.complement();
    let clique = max_clique(g, node_cap);
    let indep = max_clique(&comp, node_cap);
    if clique.exhausted || indep.exhausted {
        return Err(Error::Budget {
            nodes: clique.nodes + indep.nodes,
            best_clique: clique.best.len(),
            best_indep: indep.best.len(),
        });
    }
    let witness_clique = VertexSet::from_indices(g.n(), &clique.best)?;
    let witness_indep = VertexSet::from_indices(g.n(), &indep.best)?;
    assert!(is_homogeneous(g, &witness_clique, true), "clique witness failed recheck");
    assert!(is_homogeneous(g, &witness_indep, false), "independent-set witness failed recheck");
    let res = HomResult {
        clique_size: clique.best.len(),
        indep_size: indep.best.len(),
        hom: clique.best.len().max(indep.best.len()),
        witness_clique,
        witness_indep,
    };
    // Erdős–Szekeres floor: every graph has a homogeneous set of ≥ log2(n)/2 vertices.
    assert!(
        res.hom as f64 >= (g.n() as f64).log2() / 2.0,
        "hom = {} below the Erdős–Szekeres floor for n = {}",
        res.hom,
        g.n()
    );
    Ok(res)
}

fn is_homogeneous(g: &Graph, s: &VertexSet, complete: bool) -> bool {
    let vs: Vec<usize> = s.iter().collect();
    vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.adjacent(u, v) == complete))
}

struct CliqueSearch {
    words: usize,
    adj: Vec<u64>,
    best: Vec<usize>,
    nodes: u64,
    cap: u64,
    exhausted: bool,
}

/// Exact maximum clique: Tomita-style branch-and-bound with greedy-coloring
/// upper bounds, exploring vertices in degeneracy order. Deterministic.
fn max_clique(g: &Graph, cap: u64) -> CliqueSearch {
    let n = g.n();
    let words = words_for(n);
    let order = degeneracy_order(g);
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj = vec![0u64; n * words];
    for (i, &v) in order.iter().enumerate() {
        for u in iter_ones(g.row(v)) {
            set(&mut adj[i * words..(i + 1) * words], pos[u]);
        }
    }
    let mut search = CliqueSearch { words, adj, best: Vec::new(), nodes: 0, cap, exhausted: false };
    let full = VertexSet::full(n);
    if n > 0 {
        search.expand(full.words(), &mut Vec::new());
    }
    search.best = search.best.iter().map(|&i| order[i]).collect();
    search.best.sort_unstable();
    search
}

impl CliqueSearch {
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    fn expand(&mut self, p: &[u64], r: &mut Vec<usize>) {
        self.nodes += 1;
        if self.nodes > self.cap {
            self.exhausted = true;
            return;
        }
        // Greedy coloring: the number of classes bounds the clique size in p.
        let mut classes: Vec<Vec<u64>> = Vec::new();
        let mut colored: Vec<(usize, usize)> = Vec::new();
        for v in iter_ones(p) {
            let c = classes
                .iter()
                .position(|cl| self.row(v).iter().zip(cl).all(|(a, b)| a & b == 0))
                .unwrap_or_else(|| {
                    classes.push(vec![0u64; self.words]);
                    classes.len() - 1
                });
            set(&mut classes[c], v);
            colored.push((v, c));
        }
        colored.sort_unstable_by_key(|&(v, c)| (c, v));
        let mut live = p.to_vec();
        for &(v, c) in colored.iter().rev() {
            if r.len() + c < self.best.len() {
                return; // every remaining candidate has color ≤ c
            }
            r.push(v);
            let sub: Vec<u64> = live.iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
            if sub.iter().all(|&w| w == 0) {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(&sub, r);
            }
            r.pop();
            crate::bits::clear(&mut live, v);
            if self.exhausted {
                return;
            }
        }
    }
}

/// Min-degree removal sequence; ties broken by lowest vertex id.
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertices remain");
        removed[v] = true;
        order.push(v);
        for u in iter_ones(g.row(v)) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    order
}

/// hom(G) ≤ C·log2 n, logs base 2.
pub fn is_c_ramsey(g: &Graph, c: f64) -> Result<bool> {
    if g.n() < 2 {
        return Err(Error::Parameter("is_c_ramsey needs n ≥ 2".into()));
    }
    if c <= 0.0 || !c.is_finite() {
        return Err(Error::Parameter(format!("Ramsey constant must be positive, got {c}")));
    }
    Ok(hom(g)?.hom as f64 <= c * (g.n() as f64).log2())
}

/// e(G) / C(n,2).
pub fn edge_density(g: &Graph) -> Result<f64> {
    let n = g.n() as u64;
    if n < 2 {
        return Err(Error::Parameter("edge density needs n ≥ 2".into()));
    }
    Ok(g.edge_count() as f64 / (n * (n - 1) / 2) as f64)
}

/// Outcome of a (c,δ)-diversity check: a vertex violates when more than
/// floor(n^δ) others sit within symmetric difference < c·n of it.
#[derive(Clone, Debug)]
pub struct DiversityReport {
    pub c: f64,
    pub delta: f64,
    /// Vertices over the near-twin allowance, with their full near-twin counts.
    pub violating_vertices: Vec<(usize, usize)>,
    pub is_diverse: bool,
}

fn check_unit_interval(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Parameter(format!("{name} must lie in (0,1), got {x}")));
    }
    Ok(())
}

pub fn diversity_check(g: &Graph, c: f64, delta: f64) -> Result<DiversityReport> {
    check_unit_interval("c", c)?;
    check_unit_interval("delta", delta)?;
    let n = g.n();
    let allowance = (n as f64).powf(delta).floor() as usize;
    let threshold = c * n as f64;
    let mut counts = vec![0usize; n];
    for x in 0..n {
        for y in x + 1..n {
            let d: u32 = g.row(x).iter().zip(g.row(y)).map(|(a, b)| (a ^ b).count_ones()).sum();
            if (d as f64) < threshold {
                counts[x] += 1;
                counts[y] += 1;
            }
        }
    }
    let violating_vertices: Vec<(usize, usize)> =
        (0..n).filter(|&x| counts[x] > allowance).map(|x| (x, counts[x])).collect();
    Ok(DiversityReport { c, delta, is_diverse: violating_vertices.is_empty(), violating_vertices })
}

/// Greedy search for a diverse induced subgraph: repeatedly drop the lower-id
/// endpoint of the pair with the smallest symmetric difference (restricted to
/// the surviving set, thresholds on its current order) until the check passes.
/// Fails once the set dips below min_frac of the original order.
pub fn diversity_extract(g: &Graph, c: f64, delta: f64, min_frac: f64) -> Result<VertexSet> {
    check_unit_interval("c", c)?;
    check_unit_interval("delta", delta)?;
    check_unit_interval("min_frac", min_frac)?;
    let n = g.n();
    let mut live = VertexSet::full(n);
    loop {
        let members: Vec<usize> = live.iter().collect();
        let m = members.len();
        let allowance = (m as f64).powf(delta).floor() as usize;
        let threshold = c * m as f64;
        let mut counts = vec![0usize; m];
        let mut min_pair: Option<(usize, usize, usize)> = None;
        for i in 0..m {
            for j in i + 1..m {
                let d = count_xor_and(g.row(members[i]), g.row(members[j]), live.words());
                if (d as f64) < threshold {
                    counts[i] += 1;
                    counts[j] += 1;
                }
                let key = (d, members[i], members[j]);
                if min_pair.is_none_or(|best| key < best) {
                    min_pair = Some(key);
                }
            }
        }
        if counts.iter().all(|&cnt| cnt <= allowance) {
            let (sub, _) = g.induced(&live)?;
            assert!(
                diversity_check(&sub, c, delta)?.is_diverse,
                "extraction result failed its diversity recheck"
            );
            return Ok(live);
        }
        let (_, u, _) = min_pair.expect("non-diverse set has at least one pair");
        live.remove(u);
        if (live.len() as f64) < min_frac * n as f64 {
            return Err(Error::Construction {
                stage: "diversity_extract",
                detail: format!(
                    "set shrank below {min_frac} of {n} vertices without reaching ({c},{delta})-diversity"
                ),
            });
        }
    }
}

/// One random X/Y assignment per attempt; succeeds when both parts hold ≥ n/3
/// vertices and every u ∈ Y has at most floor(n^δ) near-twins v ∈ Y under the
/// X-restricted symmetric difference threshold (c/3)·n. The success test is
/// exactly the postcondition, so any returned split is self-certified.
pub fn bipartite_diverse_split(
    g: &Graph,
    c: f64,
    delta: f64,
    seed: u64,
    budget: u64,
) -> Result<(VertexSet, VertexSet)> {
    check_unit_interval("c", c)?;
    check_unit_interval("delta", delta)?;
    if budget == 0 {
        return Err(Error::Parameter("split budget must be positive".into()));
    }
    let n = g.n();
    for attempt in 0..budget {
        let mut rng = stream_rng(seed, "split", attempt);
        let mut x = VertexSet::empty(n);
        let mut y = VertexSet::empty(n);
        for v in 0..n {
            if rng.random::<bool>() {
                x.insert(v);
            } else {
                y.insert(v);
            }
        }
        if split_admissible(g, &x, &y, c, delta) {
            return Ok((x, y));
        }
    }
    Err(Error::Construction {
        stage: "bipartite_split",
        detail: format!("no admissible split of {n} vertices in {budget} attempts (c={c}, delta={delta})"),
    })
}

fn split_admissible(g: &Graph, x: &VertexSet, y: &VertexSet, c: f64, delta: f64) -> bool {
    let n = g.n();
    // Parts below two vertices cannot witness a pairwise condition.
    if 3 * x.len() < n || 3 * y.len() < n || x.len() < 2 || y.len() < 2 {
        return false;
    }
    let allowance = (n as f64).powf(delta).floor() as usize;
    let threshold = c / 3.0 * n as f64;
    let members: Vec<usize> = y.iter().collect();
    let mut counts = vec![0usize; members.len()];
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let d = count_xor_and(g.row(members[i]), g.row(members[j]), x.words());
            if (d as f64) < threshold {
                counts[i] += 1;
                counts[j] += 1;
            }
        }
    }
    counts.iter().all(|&cnt| cnt <= allowance)
}

/// Uniform-density probe outcome; a sampled `Pass` means "no violation found",
/// not a proof.
#[derive(Clone, Debug)]
pub enum DensityCheck {
    Pass,
    Fail { witness: VertexSet, density: f64 },
}

/// Checks whether every induced subgraph on at least n^eps (and ≥ 2) vertices
/// has edge density within [eps, 1−eps]. Exhaustive for n ≤ 20, randomized
/// search within sample_budget otherwise.
pub fn uniform_dense_check(g: &Graph, eps: f64, sample_budget: u64, seed: u64) -> Result<DensityCheck> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::Parameter(format!("eps must lie in (0, 1/2), got {eps}")));
    }
    let n = g.n();
    let floor_order = (n as f64).powf(eps);
    let k_min = (2..=n).find(|&k| k as f64 >= floor_order).unwrap_or(n + 1);
    if k_min > n {
        return Ok(DensityCheck::Pass);
    }
    let out_of_window = |edges: u64, k: usize| -> Option<f64> {
        let density = edges as f64 / (k * (k - 1) / 2) as f64;
        (density < eps || density > 1.0 - eps).then_some(density)
    };
    if n <= 20 {
        // Incremental edge counts over all masks; first violation in mask order.
        let rows: Vec<u32> = (0..n).map(|v| g.row(v)[0] as u32).collect();
        let mut edges = vec![0u32; 1 << n];
        for mask in 1u32..(1 << n) {
            let v = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            edges[mask as usize] = edges[rest as usize] + (rows[v] & rest).count_ones();
            let k = mask.count_ones() as usize;
            if k >= k_min {
                if let Some(density) = out_of_window(edges[mask as usize] as u64, k) {
                    let members: Vec<usize> = (0..n).filter(|&u| mask >> u & 1 == 1).collect();
                    return Ok(DensityCheck::Fail {
                        witness: VertexSet::from_indices(n, &members)?,
                        density,
                    });
                }
            }
        }
        return Ok(DensityCheck::Pass);
    }
    for trial in 0..sample_budget {
        let mut rng = stream_rng(seed, "dense", trial);
        let k = rng.random_range(k_min..=n);
        let mut idx: Vec<usize> = (0..n).collect();
        for j in 0..k {
            let r = rng.random_range(j..n);
            idx.swap(j, r);
        }
        let s = VertexSet::from_indices(n, &idx[..k])?;
        let e = crate::graph::induced_edge_count(g, &s)?;
        if let Some(density) = out_of_window(e, k) {
            return Ok(DensityCheck::Fail { witness: s, density });
        }
    }
    Ok(DensityCheck::Pass)
}

//! Stage one: pin the edge count of a random vertex sample near a target
//! and extract a pool of witnesses with distinct degrees into the sample.
//!
//! The draw is accepted only when three events all hold exactly on the
//! realized sample — edge count within slack (E1), every pooled degree near
//! its expectation (E2), and few degree collisions in the pool (E3) — so the
//! returned witness never depends on the concentration arguments that
//! motivate the events; it re-proves them by counting.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rng::stream_rng;

use super::PipelineParams;

/// Output of a successful stage-one draw.
///
/// Invariants, rechecked exactly before return: |e_u − m| ≤ slack; every
/// x ∈ w has l ≤ Deg_U(x) ≤ l + degree_window with all those degrees
/// pairwise distinct; u and w are disjoint.
#[derive(Clone, Debug)]
pub struct Step1Witness {
    pub u: VertexSet,
    pub w: VertexSet,
    /// Realized minimum of Deg_U over w.
    pub l: u64,
    /// The edge-count target the draw was accepted against.
    pub m: u64,
    pub e_u: u64,
    pub slack: f64,
    /// Realized max − min of Deg_U over w.
    pub degree_window: u64,
    /// Deg_U(x) for x ∈ w, ascending vertex id.
    pub w_degrees: Vec<u64>,
    /// 1-based index of the accepted draw.
    pub attempts: u64,
}

/// Builds a stage-one witness for target edge count `m` by rejection
/// sampling, at most `retry_budget` draws.
///
/// The caller is responsible for the diversity precondition on `g`; this
/// function only enforces what it can check cheaply and exactly.
pub fn step1_build(
    g: &Graph,
    m: u64,
    params: &PipelineParams,
    seed: u64,
    retry_budget: u64,
) -> Result<Step1Witness> {
    params.validate()?;
    if retry_budget == 0 {
        return Err(Error::Parameter("retry budget must be positive".into()));
    }
    let n = g.n();
    if n < 4 {
        return Err(Error::Parameter(format!("graph order {n} is too small")));
    }
    let e = g.edge_count();
    let lo = params.m_lo * e as f64;
    let hi = params.m_hi * e as f64;
    if (m as f64) < lo || (m as f64) > hi {
        return Err(Error::Parameter(format!(
            "target m={m} outside feasible window [{lo:.1}, {hi:.1}] for {e} edges"
        )));
    }

    // High-degree pool: degree at least half the mean, i.e. deg ≥ e/n.
    let mut pool: Vec<(u64, usize)> = (0..n)
        .filter(|&v| g.degree(v) as u64 * n as u64 >= e)
        .map(|v| (g.degree(v) as u64, v))
        .collect();
    pool.sort_unstable();
    let target = ((n as f64).sqrt() * params.w1_mult).ceil().max(1.0) as usize;
    if pool.len() < target {
        return Err(Error::Construction {
            stage: "degree_window",
            detail: format!(
                "high-degree pool has {} vertices, below the window target {target}",
                pool.len()
            ),
        });
    }

    // Smallest degree width whose most populous window holds `target`
    // vertices, then the most populous window at that width (ties to the
    // lowest starting degree), truncated to exactly `target` by (deg, id).
    let degs: Vec<u64> = pool.iter().map(|&(d, _)| d).collect();
    let max_window = |width: u64| -> (usize, usize) {
        let mut best = (0usize, 0usize);
        let mut j = 0usize;
        for i in 0..degs.len() {
            if j < i {
                j = i;
            }
            while j + 1 < degs.len() && degs[j + 1] - degs[i] <= width {
                j += 1;
            }
            if j - i + 1 > best.0 {
                best = (j - i + 1, i);
            }
        }
        best
    };
    let (mut wlo, mut whi) = (0u64, degs[degs.len() - 1] - degs[0]);
    while wlo < whi {
        let mid = wlo + (whi - wlo) / 2;
        if max_window(mid).0 >= target {
            whi = mid;
        } else {
            wlo = mid + 1;
        }
    }
    let (_, start) = max_window(wlo);
    let w1: Vec<usize> = pool[start..start + target].iter().map(|&(_, v)| v).collect();
    let l0 = pool[start].0;

    let w1_set = VertexSet::from_indices(n, &w1)?;
    let live = VertexSet::full(n).minus(&w1_set);
    let s = g.edges_in_raw(live.words());
    if s == 0 {
        return Err(Error::Construction {
            stage: "step1",
            detail: "no edges remain outside the degree window".into(),
        });
    }
    if m > s {
        return Err(Error::Parameter(format!(
            "target m={m} exceeds the {s} edges outside the degree window"
        )));
    }
    let p = (m as f64 / s as f64).sqrt();
    let t = (n as f64).powf(0.5 + params.delta) / 4.0;
    let slack = params.slack_coeff * (n as f64).powf(1.5);
    let e3_cap = 8.0 * (n as f64).powf(params.delta) * w1.len() as f64;

    let (mut f_e1, mut f_e2, mut f_e3, mut f_pool) = (0u64, 0u64, 0u64, 0u64);
    for attempt in 0..retry_budget {
        let mut rng = stream_rng(seed, "step1", attempt);
        let mut u = VertexSet::empty(n);
        for v in live.iter() {
            if rng.random::<f64>() < p {
                u.insert(v);
            }
        }
        let e_u = g.edges_in_raw(u.words());
        if (e_u as f64 - m as f64).abs() > slack {
            f_e1 += 1;
            continue;
        }
        let deg_u: Vec<u64> = w1.iter().map(|&x| g.deg_in_raw(x, u.words()) as u64).collect();
        if deg_u.iter().any(|&d| (d as f64 - p * l0 as f64).abs() > 2.0 * t) {
            f_e2 += 1;
            continue;
        }
        let d_graph = degree_graph(g, &w1_set, &u)?;
        if d_graph.edge_count() as f64 > e3_cap {
            f_e3 += 1;
            continue;
        }
        let ind = turan_independent_set(&d_graph);
        if ind.len() < params.min_w {
            f_pool += 1;
            continue;
        }
        // degree_graph indexes the pool in ascending-id order, which is how
        // VertexSet iterates, so position j maps back to the j-th member.
        let w1_by_id: Vec<usize> = w1_set.iter().collect();
        let members: Vec<usize> = ind.iter().map(|j| w1_by_id[j]).collect();
        let w = VertexSet::from_indices(n, &members)?;
        let w_degrees: Vec<u64> =
            w.iter().map(|x| g.deg_in_raw(x, u.words()) as u64).collect();

        let l = *w_degrees.iter().min().expect("nonempty pool");
        let degree_window = w_degrees.iter().max().expect("nonempty pool") - l;
        let mut sorted = w_degrees.clone();
        sorted.sort_unstable();
        assert!(
            sorted.windows(2).all(|p| p[0] != p[1]),
            "pool degrees must be pairwise distinct"
        );
        assert!(u.is_disjoint(&w), "sample and pool must be disjoint");
        assert!(e_u.abs_diff(m) as f64 <= slack);
        return Ok(Step1Witness {
            u,
            w,
            l,
            m,
            e_u,
            slack,
            degree_window,
            w_degrees,
            attempts: attempt + 1,
        });
    }
    Err(Error::Construction {
        stage: "step1",
        detail: format!(
            "{retry_budget} draws exhausted for m={m} \
             (edge-count misses {f_e1}, degree misses {f_e2}, collision excess {f_e3}, pool too small {f_pool})"
        ),
    })
}

/// Graph on the members of `pool` (ascending id becomes 0..|pool|) joining
/// two vertices exactly when their degrees into `anchor` are equal.
pub fn degree_graph(g: &Graph, pool: &VertexSet, anchor: &VertexSet) -> Result<Graph> {
    g.check_set(pool)?;
    g.check_set(anchor)?;
    if !pool.is_disjoint(anchor) {
        return Err(Error::Parameter("pool and anchor sets overlap".into()));
    }
    let degs: Vec<usize> = pool.iter().map(|v| g.deg_in_raw(v, anchor.words())).collect();
    let mut edges = Vec::new();
    for a in 0..degs.len() {
        for b in a + 1..degs.len() {
            if degs[a] == degs[b] {
                edges.push((a as u32, b as u32));
            }
        }
    }
    Graph::from_edges(degs.len(), &edges)
}

/// Greedy independent set: repeatedly take a minimum-degree vertex and drop
/// its neighbourhood. The result is verified independent and meets the
/// Turán floor ⌈v² / (2e + v)⌉.
pub fn turan_independent_set(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut chosen = VertexSet::empty(n);
    if n == 0 {
        return chosen;
    }
    let mut live = VertexSet::full(n);
    while !live.is_empty() {
        let v = live
            .iter()
            .min_by_key(|&v| (g.deg_in_raw(v, live.words()), v))
            .expect("live set nonempty");
        chosen.insert(v);
        live.remove(v);
        for u in 0..n {
            if live.contains(u) && g.adjacent(v, u) {
                live.remove(u);
            }
        }
    }
    for a in chosen.iter() {
        for b in chosen.iter() {
            assert!(a >= b || !g.adjacent(a, b), "greedy set must be independent");
        }
    }
    let v = n as u64;
    let denom = 2 * g.edge_count() + v;
    let floor = ((v * v).div_ceil(denom)) as usize;
    assert!(chosen.len() >= floor, "Turán floor violated: {} < {floor}", chosen.len());
    chosen
}

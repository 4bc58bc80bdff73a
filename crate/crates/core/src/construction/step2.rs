//! Stage two: turn an injectively weighted graph into certificates of
//! pairwise-distinct weighted size.
//!
//! The graph is split into a weighted side X and a probe side Y. The
//! lightest and heaviest thirds-ish of X become S and T, leaving a weight
//! gap between them; probe vertices with extreme degrees into S or T are
//! classified by type and the majority class is narrowed to a tight weight
//! window Z. For every index pair (k, i) a hybrid set L(k, i) — the tail of
//! a random ordering of k vertices of S glued to the head of one of T —
//! yields one certificate per distinct weighted degree over Z. Swapping an
//! S-slot for a T-slot costs at most k edges but gains at least the weight
//! gap, which is why sizes from different index pairs cannot collide once
//! the Z window is kept below gap − 2k.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::bipartite_diverse_split;
use crate::error::{Error, Result};
use crate::graph::{omega_size, VertexSet, WeightedGraph};
use crate::prob::rational_from_f64;
use crate::rng::stream_rng;

use super::{PipelineParams, SizeCertificate};

/// Probe-side classification. Types one/two flag an extreme degree into S
/// (low/high), three/four the same into T; a vertex matching two different
/// flags is problematic and excluded from certificate duty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum VertexType {
    Zero,
    One,
    Two,
    Three,
    Four,
    Problematic,
}

/// The frozen geometry of one stage-two run.
#[derive(Clone, Debug)]
pub struct Step2Plan {
    pub x: VertexSet,
    pub y: VertexSet,
    /// Lightest m′ vertices of X.
    pub s: VertexSet,
    /// Heaviest m′ vertices of X.
    pub t: VertexSet,
    /// Middle band of X between S and T.
    pub x_prime: VertexSet,
    /// Certificate probes: majority-type vertices inside the weight window.
    pub z: VertexSet,
    pub m_prime: usize,
    /// Realized min ω(T) − max ω(S); at least |X| − 2m′ by injectivity.
    pub weight_gap: u64,
    /// Width of the weight window Z was drawn from.
    pub z_weight_window: u64,
    pub majority_type: VertexType,
    /// Type of every probe-side vertex, ascending id.
    pub types: Vec<(usize, VertexType)>,
}

fn ceil_div(a: usize, b: u64) -> usize {
    let b = b as usize;
    a.div_ceil(b)
}

fn classify(deg_s: usize, deg_t: usize, low: f64, high: f64) -> VertexType {
    let flags = [
        (deg_s as f64) < low,
        (deg_s as f64) > high,
        (deg_t as f64) < low,
        (deg_t as f64) > high,
    ];
    let variants = [
        VertexType::One,
        VertexType::Two,
        VertexType::Three,
        VertexType::Four,
    ];
    match flags.iter().filter(|&&f| f).count() {
        0 => VertexType::Zero,
        1 => variants[flags.iter().position(|&f| f).expect("one flag set")],
        _ => VertexType::Problematic,
    }
}

/// First k entries of a uniformly random ordering of `members`.
fn ordered_sample(members: &[usize], k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut idx = members.to_vec();
    for j in 0..k {
        let r = rng.random_range(j..idx.len());
        idx.swap(j, r);
    }
    idx.truncate(k);
    idx
}

/// Runs stage two on an injectively weighted graph: returns the plan, one
/// certificate per distinct weighted-degree class per index pair, and the
/// set ψ of (order, weighted size) pairs those certificates realize.
///
/// |ψ| must equal the sum of class counts over the index rectangle; a
/// mismatch means the parameters broke the size-separation inequalities and
/// is reported as a construction failure rather than silently deduplicated.
#[allow(clippy::type_complexity)] // plan + certificates + their ψ-set, documented above
pub fn step2_build(
    wg: &WeightedGraph,
    params: &PipelineParams,
    seed: u64,
) -> Result<(Step2Plan, Vec<SizeCertificate>, BTreeSet<(u32, u64)>)> {
    params.validate()?;
    if !wg.omega.is_injective() {
        return Err(Error::Parameter(
            "stage two requires an injective weight function".into(),
        ));
    }
    let g = &wg.graph;
    let n = g.n();
    let (x, y) = bipartite_diverse_split(g, params.c, params.delta, seed, params.split_budget)?;

    let mut x_sorted: Vec<usize> = x.iter().collect();
    x_sorted.sort_by_key(|&v| (wg.omega.get(v), v));
    let m_prime = ((x_sorted.len() as f64) * (0.5 - params.c / 4.0)).floor() as usize;
    // m′ = 1 is degenerate: degrees into a single-vertex S or T are always
    // extreme, so every probe vertex would be problematic.
    if m_prime < 2 {
        return Err(Error::Construction {
            stage: "split_sizes",
            detail: format!(
                "X side of {} vertices only supports S and T of size {m_prime}",
                x_sorted.len()
            ),
        });
    }
    let s = VertexSet::from_indices(n, &x_sorted[..m_prime])?;
    let t = VertexSet::from_indices(n, &x_sorted[x_sorted.len() - m_prime..])?;
    let x_prime = VertexSet::from_indices(n, &x_sorted[m_prime..x_sorted.len() - m_prime])?;
    let weight_gap = wg.omega.get(x_sorted[x_sorted.len() - m_prime]) - wg.omega.get(x_sorted[m_prime - 1]);
    assert!(
        weight_gap as usize >= x_sorted.len() - 2 * m_prime,
        "injective weights force a gap at least the width of the middle band"
    );

    let low = params.c * n as f64 / 8.0;
    let high = m_prime as f64 - low;
    let types: Vec<(usize, VertexType)> = y
        .iter()
        .map(|v| {
            let ds = g.deg_in_raw(v, s.words());
            let dt = g.deg_in_raw(v, t.words());
            (v, classify(ds, dt, low, high))
        })
        .collect();
    let mut counts = [0usize; 5];
    for &(_, ty) in &types {
        if ty != VertexType::Problematic {
            counts[ty as usize] += 1;
        }
    }
    if counts.iter().all(|&c| c == 0) {
        return Err(Error::Construction {
            stage: "types",
            detail: "every probe-side vertex is problematic".into(),
        });
    }
    let majority = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(idx, _)| {
            [
                VertexType::Zero,
                VertexType::One,
                VertexType::Two,
                VertexType::Three,
                VertexType::Four,
            ][idx]
        })
        .expect("five type counters");
    let mut band: Vec<(u64, usize)> = types
        .iter()
        .filter(|&&(_, ty)| ty == majority)
        .map(|&(v, _)| (wg.omega.get(v), v))
        .collect();
    band.sort_unstable();

    // Index rectangle.
    let k_lo = ceil_div(m_prime, params.k_lo_div);
    let k_hi = ceil_div(m_prime, params.k_hi_div).min(m_prime);
    let i_lo = ceil_div(m_prime, params.i_lo_div);
    let i_hi = ceil_div(m_prime, params.i_hi_div);
    let mut cells: Vec<(usize, Vec<usize>)> = Vec::new();
    for k in k_lo..=k_hi {
        let is: Vec<usize> = (i_lo..=i_hi.min(k)).collect();
        if !is.is_empty() {
            cells.push((k, is));
        }
    }

    // Weight window for Z: a quarter of the realized gap by default. With
    // several i per k the window must stay below gap − 2k, the margin left
    // by the swap argument above; with one i per k any window is safe — a
    // collision would need equal orders, hence the same cell, hence equal
    // weighted degrees — so widen toward a third of the band's spread.
    let spread = band.last().map(|&(w, _)| w - band[0].0).unwrap_or(0);
    let mut window = (weight_gap as f64 * params.z_window_frac).floor() as u64;
    let multi_i = cells.iter().any(|(_, is)| is.len() > 1);
    if multi_i {
        let k_max = cells.iter().map(|&(k, _)| k).max().expect("cells nonempty") as u64;
        if weight_gap <= 2 * k_max {
            return Err(Error::Construction {
                stage: "z_window",
                detail: format!(
                    "weight gap {weight_gap} cannot separate index pairs at k={k_max}; \
                     parameters too aggressive"
                ),
            });
        }
        window = window.min(weight_gap - 2 * k_max - 1);
    } else {
        window = window.max(spread.div_ceil(3));
    }

    // Densest window of that width over the majority band, ties to the
    // lowest starting weight.
    let mut best = (0usize, 0usize);
    let mut j = 0usize;
    for i in 0..band.len() {
        if j < i {
            j = i;
        }
        while j + 1 < band.len() && band[j + 1].0 - band[i].0 <= window {
            j += 1;
        }
        if j - i + 1 > best.0 {
            best = (j - i + 1, i);
        }
    }
    if best.0 == 0 {
        return Err(Error::Construction {
            stage: "z_window",
            detail: "majority type band is empty".into(),
        });
    }
    let z_members: Vec<usize> = band[best.1..best.1 + best.0].iter().map(|&(_, v)| v).collect();
    let z = VertexSet::from_indices(n, &z_members)?;

    let s_members: Vec<usize> = s.iter().collect();
    let t_members: Vec<usize> = t.iter().collect();
    let mut certificates = Vec::new();
    let mut psi: BTreeSet<(u32, u64)> = BTreeSet::new();
    let mut class_total = 0usize;
    for &(k, ref is) in &cells {
        let s_k = ordered_sample(&s_members, k, &mut stream_rng(seed, "sk", k as u64));
        let t_k = ordered_sample(&t_members, k, &mut stream_rng(seed, "tk", k as u64));
        for &i in is {
            let mut l_set = VertexSet::empty(n);
            for &v in s_k[i..k].iter().chain(&t_k[..i]) {
                l_set.insert(v);
            }
            assert_eq!(l_set.len(), k);
            let base = omega_size(wg, &l_set)?;
            let mut reps: BTreeMap<u64, usize> = BTreeMap::new();
            for zv in z.iter() {
                assert!(!l_set.contains(zv));
                let wdeg = g.deg_in_raw(zv, l_set.words()) as u64 + wg.omega.get(zv);
                reps.entry(wdeg).or_insert(zv);
            }
            class_total += reps.len();
            for (&wdeg, &rep) in &reps {
                let mut vertices = l_set.clone();
                vertices.insert(rep);
                let size = base + wdeg;
                // Adding one vertex adds exactly its weighted degree.
                assert_eq!(omega_size(wg, &vertices)?, size);
                psi.insert(((k + 1) as u32, size));
                certificates.push(SizeCertificate {
                    vertices,
                    order: (k + 1) as u32,
                    size,
                    scale_index: 0,
                });
            }
        }
    }
    if psi.len() != class_total {
        return Err(Error::Construction {
            stage: "psi_distinct",
            detail: format!(
                "{class_total} weighted-degree classes produced only {} distinct \
                 (order, size) pairs; parameters too aggressive",
                psi.len()
            ),
        });
    }

    let plan = Step2Plan {
        x,
        y,
        s,
        t,
        x_prime,
        z,
        m_prime,
        weight_gap,
        z_weight_window: window,
        majority_type: majority,
        types,
    };
    Ok((plan, certificates, psi))
}

/// Exact expected hybrid weighted degree of a window vertex:
/// ω(v) + ((k−i)/m′)·Deg_S(v) + (i/m′)·Deg_T(v).
pub fn mu_expected(
    plan: &Step2Plan,
    wg: &WeightedGraph,
    v: usize,
    k: usize,
    i: usize,
) -> Result<BigRational> {
    if !plan.z.contains(v) {
        return Err(Error::Parameter(format!("vertex {v} is not in the window Z")));
    }
    if i > k || k > plan.m_prime {
        return Err(Error::Parameter(format!(
            "index pair (k={k}, i={i}) outside 0 <= i <= k <= {}",
            plan.m_prime
        )));
    }
    let g = &wg.graph;
    let big = |x: usize| BigRational::from(BigInt::from(x));
    let m = big(plan.m_prime);
    let deg_s = big(g.deg_in_raw(v, plan.s.words()));
    let deg_t = big(g.deg_in_raw(v, plan.t.words()));
    Ok(BigRational::from(BigInt::from(wg.omega.get(v)))
        + big(k - i) * deg_s / m.clone()
        + big(i) * deg_t / m)
}

/// Whether two window vertices' expected hybrid degrees differ by at least
/// `threshold` (exact rational comparison; the f64 threshold converts to
/// its exact dyadic value). `None` means the default n^{1/2+δ} at the
/// graph's order and the given δ.
#[allow(clippy::too_many_arguments)] // mirrors the (u, v, k, i, threshold) notation
pub fn compatible(
    plan: &Step2Plan,
    wg: &WeightedGraph,
    u: usize,
    v: usize,
    k: usize,
    i: usize,
    threshold: Option<f64>,
    delta: f64,
) -> Result<bool> {
    if u == v {
        return Err(Error::Parameter("compatibility needs two distinct vertices".into()));
    }
    let threshold =
        threshold.unwrap_or_else(|| (wg.graph.n() as f64).powf(0.5 + delta));
    let gap = (mu_expected(plan, wg, u, k, i)? - mu_expected(plan, wg, v, k, i)?).abs();
    Ok(gap >= rational_from_f64(threshold, "threshold")?)
}

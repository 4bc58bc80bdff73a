//! Tail-bound evaluators and exact distribution oracles for the probabilistic
//! ingredients of the construction: Hoeffding/hypergeometric/Markov/Chebyshev
//! bounds, the bivariate hypergeometric point-mass oracle with its Stirling
//! envelope, and the closed-form variance of the sampled edge count.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rng::stream_rng;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use std::collections::BTreeMap;

/// Exact point-mass computations refuse populations above this.
pub const POINTMASS_CAP: u64 = 4000;

#[derive(Clone, Copy, Debug)]
pub enum TailBoundQuery {
    /// P(|X − E[X]| ≥ t) ≤ 2·exp(−2t²/n) for a sum of n summands in [0,1].
    Hoeffding { n: u64, t: f64 },
    /// P(|X − (M/N)·D| ≥ t·D) ≤ 2·exp(−2t²·D) for D draws without replacement
    /// from a population of N with M marked.
    Hypergeometric { population: u64, marked: u64, draws: u64, t: f64 },
    /// P(X > t) < μ/t for nonnegative X.
    Markov { mean: f64, t: f64 },
    /// P(|X − E[X]| ≥ t) ≤ σ²/t².
    Chebyshev { variance: f64, t: f64 },
}

/// Evaluates the stated closed-form bound, clamped to 1.
pub fn tail_bound(q: &TailBoundQuery) -> Result<f64> {
    let check_t = |t: f64| -> Result<()> {
        if t.is_finite() && t >= 0.0 {
            Ok(())
        } else {
            Err(Error::Parameter(format!("deviation t must be a nonnegative real, got {t}")))
        }
    };
    let raw = match *q {
        TailBoundQuery::Hoeffding { n, t } => {
            check_t(t)?;
            if n == 0 {
                return Err(Error::Parameter("hoeffding needs n ≥ 1".into()));
            }
            2.0 * (-2.0 * t * t / n as f64).exp()
        }
        TailBoundQuery::Hypergeometric { population, marked, draws, t } => {
            check_t(t)?;
            if marked > population || draws > population {
                return Err(Error::Parameter(format!(
                    "hypergeometric needs marked ≤ N and draws ≤ N, got N={population}, M={marked}, D={draws}"
                )));
            }
            2.0 * (-2.0 * t * t * draws as f64).exp()
        }
        TailBoundQuery::Markov { mean, t } => {
            check_t(t)?;
            if !(mean.is_finite() && mean >= 0.0) {
                return Err(Error::Parameter(format!("markov needs a nonnegative mean, got {mean}")));
            }
            if t == 0.0 {
                return Ok(1.0);
            }
            mean / t
        }
        TailBoundQuery::Chebyshev { variance, t } => {
            check_t(t)?;
            if !(variance.is_finite() && variance >= 0.0) {
                return Err(Error::Parameter(format!(
                    "chebyshev needs a nonnegative variance, got {variance}"
                )));
            }
            if t == 0.0 {
                return Ok(1.0);
            }
            variance / (t * t)
        }
    };
    Ok(raw.min(1.0))
}

/// |U ∩ B| − |U ∩ A| for a uniform k-subset U of an n-element population
/// containing disjoint A and B.
#[derive(Clone, Copy, Debug)]
pub struct PointMassQuery {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub k: u64,
}

#[derive(Clone, Debug)]
pub struct PointMassDistribution {
    /// Smallest argmax of the point mass.
    pub max_r: i64,
    pub max_prob: BigRational,
    /// Full support, ascending in r; probabilities sum to exactly 1.
    pub distribution: Vec<(i64, BigRational)>,
}

impl PointMassDistribution {
    pub fn max_prob_f64(&self) -> f64 {
        self.max_prob.to_f64().expect("probability fits in f64")
    }
}

fn binom_row(n: u64, up_to: u64) -> Vec<BigUint> {
    let top = up_to.min(n);
    let mut row = Vec::with_capacity(top as usize + 1);
    row.push(BigUint::one());
    for i in 0..top {
        let next = (&row[i as usize] * (n - i)) / (i + 1);
        row.push(next);
    }
    row
}

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    binom_row(n, k).pop().expect("row is nonempty")
}

/// Exact distribution of |U∩B| − |U∩A| by bivariate hypergeometric summation
/// over (|U∩A|, |U∩B|); numerators are exact binomial products over C(n,k).
pub fn pointmass_exact(q: &PointMassQuery) -> Result<PointMassDistribution> {
    let PointMassQuery { n, a, b, k } = *q;
    if a + b > n {
        return Err(Error::Parameter(format!("A and B must be disjoint within [n]: {a} + {b} > {n}")));
    }
    if k > n {
        return Err(Error::Parameter(format!("draw size {k} exceeds population {n}")));
    }
    if n > POINTMASS_CAP {
        return Err(Error::Cap(format!("population {n} exceeds the exact cap {POINTMASS_CAP}")));
    }
    let rest = n - a - b;
    let row_a = binom_row(a, k);
    let row_b = binom_row(b, k);
    let row_rest = binom_row(rest, k);
    let mut acc: BTreeMap<i64, BigUint> = BTreeMap::new();
    for x in 0..=a.min(k) {
        for y in 0..=b.min(k - x) {
            let j = k - x - y;
            if j > rest {
                continue;
            }
            let term = &row_a[x as usize] * &row_b[y as usize] * &row_rest[j as usize];
            *acc.entry(y as i64 - x as i64).or_default() += term;
        }
    }
    let denom = binom(n, k);
    let total: BigUint = acc.values().sum();
    assert_eq!(total, denom, "bivariate hypergeometric masses must sum to C(n,k)");
    let (&max_r, max_num) = acc
        .iter()
        .max_by(|(ra, na), (rb, nb)| na.cmp(nb).then(rb.cmp(ra)))
        .expect("support is nonempty");
    let max_prob = BigRational::new(BigInt::from(max_num.clone()), BigInt::from(denom.clone()));
    let distribution = acc
        .iter()
        .map(|(&r, num)| {
            (r, BigRational::new(BigInt::from(num.clone()), BigInt::from(denom.clone())))
        })
        .collect();
    Ok(PointMassDistribution { max_r, max_prob, distribution })
}

fn stirling_domain(a: u64, b: u64, s: u64, x: u64, y: u64) -> Result<()> {
    if a == 0 || b == 0 {
        return Err(Error::Parameter("stirling bound needs a, b ≥ 1".into()));
    }
    if s != a + b {
        return Err(Error::Parameter(format!("s must equal a + b, got s={s}, a+b={}", a + b)));
    }
    if x == 0 || x >= s {
        return Err(Error::Parameter(format!("x must satisfy 0 < x < s, got x={x}, s={s}")));
    }
    if y > x {
        return Err(Error::Parameter(format!("y must satisfy y ≤ x, got y={y}, x={x}")));
    }
    Ok(())
}

/// The envelope 10·√(s³ / (x(s−x)·a·b)) dominating C(a,y)·C(b,x−y)/C(s,x).
pub fn stirling_pointmass_bound(a: u64, b: u64, s: u64, x: u64, y: u64) -> Result<f64> {
    stirling_domain(a, b, s, x, y)?;
    let s3 = (s as f64).powi(3);
    Ok(10.0 * (s3 / ((x * (s - x) * a * b) as f64)).sqrt())
}

/// Exact validator: (C(a,y)·C(b,x−y))²·x(s−x)ab ≤ 100·s³·C(s,x)², all in
/// big-integer arithmetic, equivalent to LHS ≤ RHS with no rounding.
pub fn stirling_bound_holds(a: u64, b: u64, s: u64, x: u64, y: u64) -> Result<bool> {
    stirling_domain(a, b, s, x, y)?;
    let lhs_num = binom(a, y) * binom(b, x.wrapping_sub(y).min(x));
    let lhs_num = if x - y > b { BigUint::zero() } else { lhs_num };
    let left = &lhs_num * &lhs_num * (x * (s - x)) * a * b;
    let csx = binom(s, x);
    let right = BigUint::from(100u32) * BigUint::from(s).pow(3) * &csx * &csx;
    Ok(left <= right)
}

/// Exhaustive sweep of the Stirling envelope over 1 ≤ a,b ≤ max_ab, all legal
/// (x, y); returns the number of violations (expected: 0). A float prescreen
/// with a conservative margin handles the bulk; borderline points fall back to
/// the exact big-integer comparison.
pub fn stirling_sweep(max_ab: u64) -> u64 {
    let top = (2 * max_ab) as usize;
    let mut pascal = vec![vec![0.0f64; top + 1]; top + 1];
    for i in 0..=top {
        pascal[i][0] = 1.0;
        for j in 1..=i {
            pascal[i][j] = pascal[i - 1][j - 1] + if j < i { pascal[i - 1][j] } else { 0.0 };
        }
    }
    let mut violations = 0u64;
    for a in 1..=max_ab {
        for b in 1..=max_ab {
            let s = a + b;
            for x in 1..s {
                let rhs2 = 100.0 * (s as f64).powi(3) / ((x * (s - x) * a * b) as f64);
                for y in 0..=x {
                    let lhs = if y > a || x - y > b {
                        0.0
                    } else {
                        pascal[a as usize][y as usize] * pascal[b as usize][(x - y) as usize]
                            / pascal[s as usize][x as usize]
                    };
                    if lhs * lhs <= rhs2 * (1.0 - 1e-6) {
                        continue;
                    }
                    if !stirling_bound_holds(a, b, s, x, y).expect("sweep stays in domain") {
                        violations += 1;
                    }
                }
            }
        }
    }
    violations
}

/// Closed-form variance of X = e(G[U]) when U keeps each vertex of
/// V ∖ exclude independently with probability p, plus a Monte Carlo
/// cross-check. Exact arithmetic throughout: p enters as the dyadic rational
/// the f64 argument denotes.
#[derive(Clone, Debug)]
pub struct EdgeVarianceReport {
    pub sigma2: BigRational,
    pub mc_estimate: f64,
    pub mc_stderr: f64,
    pub trials: u64,
}

pub(crate) fn rational_from_f64(x: f64, name: &str) -> Result<BigRational> {
    BigRational::from_float(x)
        .ok_or_else(|| Error::Parameter(format!("{name} must be a finite real, got {x}")))
}

/// σ² = 2·Σ_v C(deg'(v),2)·(p³−p⁴) + e'·(p²−p⁴), primes restricted to
/// V ∖ exclude: ordered pairs of edges sharing one vertex, plus diagonal terms.
pub fn edge_variance_closed_form(g: &Graph, exclude: &VertexSet, p: f64) -> Result<BigRational> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("p must lie in [0,1], got {p}")));
    }
    g.check_set(exclude)?;
    let live = VertexSet::full(g.n()).minus(exclude);
    let p = rational_from_f64(p, "p")?;
    let p2 = &p * &p;
    let p3 = &p2 * &p;
    let p4 = &p3 * &p;
    let mut path_pairs = BigUint::zero(); // ordered pairs of distinct edges sharing a vertex
    for v in live.iter() {
        let d = g.deg_in_raw(v, live.words()) as u64;
        path_pairs += BigUint::from(d * d.saturating_sub(1));
    }
    let edges = g.edges_in_raw(live.words());
    let var = BigRational::from(BigInt::from(path_pairs)) * (&p3 - &p4)
        + BigRational::from(BigInt::from(edges)) * (&p2 - &p4);
    let n3 = BigRational::from(BigInt::from(g.n() as u64).pow(3));
    assert!(var <= n3, "variance bound σ² ≤ n³ violated");
    Ok(var)
}

/// Naive O(m²) covariance summation over ordered edge pairs; test oracle for
/// the closed form.
pub fn edge_variance_naive(g: &Graph, exclude: &VertexSet, p: f64) -> Result<BigRational> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("p must lie in [0,1], got {p}")));
    }
    g.check_set(exclude)?;
    let live = VertexSet::full(g.n()).minus(exclude);
    let members: Vec<usize> = live.iter().collect();
    let mut edges = Vec::new();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if g.adjacent(u, v) {
                edges.push((u, v));
            }
        }
    }
    let p = rational_from_f64(p, "p")?;
    let p2 = &p * &p;
    let p3 = &p2 * &p;
    let p4 = &p3 * &p;
    let mut var = BigRational::zero();
    for &(a1, a2) in &edges {
        for &(b1, b2) in &edges {
            let shared = [a1, a2].iter().filter(|&&v| v == b1 || v == b2).count();
            match shared {
                2 => var += &p2 - &p4,
                1 => var += &p3 - &p4,
                _ => {}
            }
        }
    }
    Ok(var)
}

/// Closed form next to a `trials`-run Monte Carlo estimate; asserts the two
/// agree within five standard errors of the sample variance.
pub fn edge_variance_check(
    g: &Graph,
    exclude: &VertexSet,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<EdgeVarianceReport> {
    if trials < 2 {
        return Err(Error::Parameter("variance estimation needs trials ≥ 2".into()));
    }
    let sigma2 = edge_variance_closed_form(g, exclude, p)?;
    let live = VertexSet::full(g.n()).minus(exclude);
    let members: Vec<usize> = live.iter().collect();
    let words = live.words().len();
    let samples: Vec<f64> = (0..trials)
        .map(|t| {
            let mut rng = stream_rng(seed, "variance", t);
            let mut mask = vec![0u64; words];
            for &v in &members {
                if rng.random::<f64>() < p {
                    crate::bits::set(&mut mask, v);
                }
            }
            g.edges_in_raw(&mask) as f64
        })
        .collect();
    let mean = samples.iter().sum::<f64>() / trials as f64;
    let m2 = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
    let m4 = samples.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / trials as f64;
    let mc_stderr = ((m4 - m2 * m2).max(0.0) / trials as f64).sqrt();
    let exact = sigma2.to_f64().expect("variance fits in f64");
    assert!(
        (m2 - exact).abs() <= 5.0 * mc_stderr + 1e-9,
        "Monte Carlo variance {m2} strays from closed form {exact} beyond 5·SE = {}",
        5.0 * mc_stderr
    );
    Ok(EdgeVarianceReport { sigma2, mc_estimate: m2, mc_stderr, trials })
}

/// One row of the anti-concentration scaling study.
#[derive(Clone, Copy, Debug)]
pub struct ProbeRow {
    pub n: u64,
    pub max_prob: f64,
    /// max_prob·√n; flat in n when the c/√n envelope is right.
    pub product: f64,
}

/// Evaluates the exact point-mass maximum at a = ⌊a_frac·n⌋, b = ⌊b_frac·n⌋,
/// k = ⌊k_frac·n⌋ for each n in the grid. Fully deterministic.
pub fn pointmass_scaling_probe(shape: (f64, f64, f64), n_grid: &[u64]) -> Result<Vec<ProbeRow>> {
    let (a_frac, b_frac, k_frac) = shape;
    for (name, f) in [("a_frac", a_frac), ("b_frac", b_frac), ("k_frac", k_frac)] {
        if !(f > 0.0 && f < 1.0) {
            return Err(Error::Parameter(format!("{name} must lie in (0,1), got {f}")));
        }
    }
    if a_frac + b_frac >= 1.0 {
        return Err(Error::Parameter(format!(
            "a_frac + b_frac must stay below 1, got {}",
            a_frac + b_frac
        )));
    }
    n_grid
        .iter()
        .map(|&n| {
            let q = PointMassQuery {
                n,
                a: (a_frac * n as f64).floor() as u64,
                b: (b_frac * n as f64).floor() as u64,
                k: (k_frac * n as f64).floor() as u64,
            };
            let dist = pointmass_exact(&q)?;
            let max_prob = dist.max_prob_f64();
            Ok(ProbeRow { n, max_prob, product: max_prob * (n as f64).sqrt() })
        })
        .collect()
}

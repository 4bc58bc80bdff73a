//! Immutable simple graphs over dense 0-indexed vertices, adjacency stored as
//! per-vertex bit rows so that degree and induced-edge-count queries reduce to
//! mask-AND plus popcount. Also: vertex sets over a fixed universe, non-negative
//! integer vertex weights, and the weighted size/degree arithmetic built on them.

use crate::bits;
use crate::error::{Error, Result};
use crate::rng::stream_rng;
use rand::Rng;

/// Hard cap on vertex count; bit-row memory is n²/8 bytes.
pub const MAX_N: usize = 4096;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>, // n rows of `words` words each
    edge_count: u64,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count)
    }
}

impl Graph {
    /// Builds a graph from an edge list; edges may be in any order but must be
    /// loop-free, in-range, and duplicate-free.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        if n > MAX_N {
            return Err(Error::Parameter(format!("n = {n} exceeds MAX_N = {MAX_N}")));
        }
        let words = bits::words_for(n.max(1));
        let mut adj = vec![0u64; n.max(1) * words];
        for &(u, v) in edges {
            let (u, v) = (u as usize, v as usize);
            if u >= n || v >= n {
                return Err(Error::Dimension(format!("edge ({u},{v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::Parameter(format!("loop at vertex {u}")));
            }
            if bits::get(&adj[u * words..(u + 1) * words], v) {
                return Err(Error::Parameter(format!("duplicate edge ({u},{v})")));
            }
            bits::set(&mut adj[u * words..(u + 1) * words], v);
            bits::set(&mut adj[v * words..(v + 1) * words], u);
        }
        Ok(Graph { n, words, adj, edge_count: edges.len() as u64 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// Adjacency bit row of `v`.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        bits::get(self.row(u), v)
    }

    pub fn degree(&self, v: usize) -> usize {
        bits::count_ones(self.row(v))
    }

    pub fn complement(&self) -> Graph {
        let mut adj = vec![0u64; self.adj.len()];
        let tail = bits::tail_mask(self.n);
        for v in 0..self.n {
            let src = self.row(v);
            let dst = &mut adj[v * self.words..(v + 1) * self.words];
            for w in 0..self.words {
                dst[w] = !src[w];
            }
            *dst.last_mut().unwrap() &= tail;
            bits::clear(dst, v);
        }
        let edge_count = (self.n as u64 * (self.n as u64 - 1)) / 2 - self.edge_count;
        Graph { n: self.n, words: self.words, adj, edge_count }
    }

    /// Subgraph induced by `s`, with vertices renumbered to 0..|s| in ascending
    /// original order. Returns the graph and the original id of each new vertex.
    pub fn induced(&self, s: &VertexSet) -> Result<(Graph, Vec<u32>)> {
        self.check_set(s)?;
        let ids: Vec<u32> = s.iter().map(|v| v as u32).collect();
        let mut edges = Vec::new();
        for (i, &u) in ids.iter().enumerate() {
            for (j, &v) in ids.iter().enumerate().skip(i + 1) {
                if self.adjacent(u as usize, v as usize) {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        Ok((Graph::from_edges(ids.len(), &edges)?, ids))
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe_n != self.n {
            return Err(Error::Dimension(format!(
                "vertex set universe {} does not match graph order {}",
                s.universe_n, self.n
            )));
        }
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::Dimension(format!("vertex {v} out of range for n = {}", self.n)));
        }
        Ok(())
    }

    pub(crate) fn deg_in_raw(&self, v: usize, mask: &[u64]) -> usize {
        bits::count_and(self.row(v), mask)
    }

    pub(crate) fn edges_in_raw(&self, mask: &[u64]) -> u64 {
        let mut twice = 0u64;
        for v in bits::iter_ones(mask) {
            twice += self.deg_in_raw(v, mask) as u64;
        }
        twice / 2
    }
}

/// Subset of the vertices of a host graph, as a bit mask over a fixed universe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe_n: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VertexSet({:?})", self.iter().collect::<Vec<_>>())
    }
}

impl VertexSet {
    pub fn empty(universe_n: usize) -> VertexSet {
        VertexSet { universe_n, bits: vec![0; bits::words_for(universe_n.max(1))] }
    }

    pub fn full(universe_n: usize) -> VertexSet {
        let mut s = VertexSet::empty(universe_n);
        for w in s.bits.iter_mut() {
            *w = !0;
        }
        if universe_n > 0 {
            *s.bits.last_mut().unwrap() &= bits::tail_mask(universe_n);
        } else {
            s.bits[0] = 0;
        }
        s
    }

    pub fn from_indices(universe_n: usize, indices: &[usize]) -> Result<VertexSet> {
        let mut s = VertexSet::empty(universe_n);
        for &i in indices {
            if i >= universe_n {
                return Err(Error::Dimension(format!("vertex {i} out of universe {universe_n}")));
            }
            bits::set(&mut s.bits, i);
        }
        Ok(s)
    }

    pub fn universe_n(&self) -> usize {
        self.universe_n
    }

    pub fn len(&self) -> usize {
        bits::count_ones(&self.bits)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe_n && bits::get(&self.bits, v)
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe_n, "vertex {v} out of universe {}", self.universe_n);
        bits::set(&mut self.bits, v);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe_n {
            bits::clear(&mut self.bits, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        bits::iter_ones(&self.bits)
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.universe_n, other.universe_n);
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        VertexSet { universe_n: self.universe_n, bits }
    }

    pub fn intersect(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.universe_n, other.universe_n);
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        VertexSet { universe_n: self.universe_n, bits }
    }

    pub fn minus(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.universe_n, other.universe_n);
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & !b).collect();
        VertexSet { universe_n: self.universe_n, bits }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.universe_n == other.universe_n
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.universe_n == other.universe_n
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

/// Non-negative integer vertex weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFn {
    weights: Vec<u64>,
    is_injective: bool,
}

impl WeightFn {
    pub fn new(weights: Vec<u64>) -> WeightFn {
        let mut sorted = weights.clone();
        sorted.sort_unstable();
        let is_injective = sorted.windows(2).all(|w| w[0] != w[1]);
        WeightFn { weights, is_injective }
    }

    pub fn zeros(n: usize) -> WeightFn {
        WeightFn { weights: vec![0; n], is_injective: n <= 1 }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn is_injective(&self) -> bool {
        self.is_injective
    }

    pub fn values(&self) -> &[u64] {
        &self.weights
    }
}

/// A graph together with a weight function on its vertices. The ω-size of an
/// induced subgraph H is e(H) + Σ_{v ∈ H} ω(v); the ω-degree of v in a set U is
/// Deg_U(v) + ω(v).
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    pub graph: Graph,
    pub omega: WeightFn,
}

impl WeightedGraph {
    pub fn new(graph: Graph, omega: WeightFn) -> Result<WeightedGraph> {
        if omega.len() != graph.n() {
            return Err(Error::Dimension(format!(
                "weight function length {} does not match graph order {}",
                omega.len(),
                graph.n()
            )));
        }
        Ok(WeightedGraph { graph, omega })
    }

    pub fn unweighted(graph: Graph) -> WeightedGraph {
        let omega = WeightFn::zeros(graph.n());
        WeightedGraph { graph, omega }
    }
}

/// Number of edges of G[s].
pub fn induced_edge_count(g: &Graph, s: &VertexSet) -> Result<u64> {
    g.check_set(s)?;
    Ok(g.edges_in_raw(s.words()))
}

/// |Γ(v) ∩ s|; membership of `v` itself in `s` is irrelevant (no loops).
pub fn degree_in(g: &Graph, v: usize, s: &VertexSet) -> Result<usize> {
    g.check_vertex(v)?;
    g.check_set(s)?;
    Ok(g.deg_in_raw(v, s.words()))
}

/// |(Γ(u) △ Γ(v)) ∩ s|. Note u ∈ Γ(v) △ Γ(u) exactly when u ~ v, so for
/// adjacent pairs the pair itself contributes when inside `s`.
pub fn symdiff_degree(g: &Graph, u: usize, v: usize, s: &VertexSet) -> Result<usize> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    g.check_set(s)?;
    Ok(bits::count_xor_and(g.row(u), g.row(v), s.words()))
}

/// e(G[s]) + Σ_{v ∈ s} ω(v).
pub fn omega_size(wg: &WeightedGraph, s: &VertexSet) -> Result<u64> {
    let edges = induced_edge_count(&wg.graph, s)?;
    let wsum: u64 = s.iter().map(|v| wg.omega.get(v)).sum();
    Ok(edges + wsum)
}

/// Deg_s(v) + ω(v).
pub fn omega_degree_in(wg: &WeightedGraph, v: usize, s: &VertexSet) -> Result<u64> {
    let d = degree_in(&wg.graph, v, s)?;
    Ok(d as u64 + wg.omega.get(v))
}

/// Graph sources for experiments and tests.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphKind {
    /// Erdős–Rényi G(n, p): each pair independently an edge with probability p,
    /// pairs visited in lexicographic order with exactly one draw each.
    Gnp { n: usize, p: f64, seed: u64 },
    /// Paley graph on a prime q ≡ 1 (mod 4): u ~ v iff u − v is a nonzero square mod q.
    Paley { q: usize },
    Complete { n: usize },
    Empty { n: usize },
    Cycle { n: usize },
}

pub fn generate(kind: &GraphKind) -> Result<Graph> {
    match *kind {
        GraphKind::Gnp { n, p, seed } => gnp(n, p, seed),
        GraphKind::Paley { q } => paley(q),
        GraphKind::Complete { n } => complete(n),
        GraphKind::Empty { n } => Graph::from_edges(n, &[]),
        GraphKind::Cycle { n } => cycle(n),
    }
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("gnp probability {p} outside [0,1]")));
    }
    let mut rng = stream_rng(seed, "gnp", n as u64);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let draw: f64 = rng.random();
            if draw < p {
                edges.push((u as u32, v as u32));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn paley(q: usize) -> Result<Graph> {
    if q < 5 || q % 4 != 1 || !is_prime(q) {
        return Err(Error::Parameter(format!("paley order {q} is not a prime ≡ 1 (mod 4)")));
    }
    let mut residue = vec![false; q];
    for x in 1..q {
        residue[x * x % q] = true;
    }
    let mut edges = Vec::new();
    for u in 0..q {
        for v in (u + 1)..q {
            if residue[(v - u) % q] {
                edges.push((u as u32, v as u32));
            }
        }
    }
    Graph::from_edges(q, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u as u32, v as u32));
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter(format!("cycle needs n ≥ 3, got {n}")));
    }
    let mut edges: Vec<(u32, u32)> = (0..n - 1).map(|u| (u as u32, u as u32 + 1)).collect();
    edges.push((0, n as u32 - 1));
    Graph::from_edges(n, &edges)
}

fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Parses the edge-list text format: first line `n m`, then m lines `u v` with
/// 0 ≤ u < v < n in strictly increasing lexicographic order, ASCII, one `\n`
/// after every line.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    if !text.is_ascii() {
        return Err(err(1, "input is not ASCII"));
    }
    let mut lines = text.split('\n');
    let header = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let (n, m) = parse_pair(header).ok_or_else(|| err(1, "expected header `n m`"))?;
    if n as usize > MAX_N {
        return Err(err(1, &format!("vertex count {n} exceeds cap {MAX_N}")));
    }
    if m > n.saturating_mul(n.saturating_sub(1)) / 2 {
        return Err(err(1, &format!("edge count {m} exceeds maximum for n = {n}")));
    }
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m as usize);
    let mut prev: Option<(u64, u64)> = None;
    for i in 0..m as usize {
        let line_no = i + 2;
        let line = lines.next().ok_or_else(|| err(line_no, "unexpected end of input"))?;
        let (u, v) =
            parse_pair(line).ok_or_else(|| Error::Parse { line: line_no, msg: format!("expected edge `u v`, got {line:?}") })?;
        if u >= v {
            let what = if u == v { "loop" } else { "endpoints not in increasing order" };
            return Err(err(line_no, what));
        }
        if v >= n {
            return Err(err(line_no, &format!("endpoint {v} out of range for n = {n}")));
        }
        if let Some(p) = prev {
            if (u, v) <= p {
                let what = if (u, v) == p { "duplicate edge" } else { "edges not in increasing lexicographic order" };
                return Err(err(line_no, what));
            }
        }
        prev = Some((u, v));
        edges.push((u as u32, v as u32));
    }
    // Exactly one trailing newline: after consuming all lines there is one empty remainder.
    match lines.next() {
        Some("") => {}
        Some(_) => return Err(err(m as usize + 2, "trailing content after edge list")),
        None => return Err(err(m as usize + 1, "missing final newline")),
    }
    if lines.next().is_some() {
        return Err(err(m as usize + 2, "trailing content after edge list"));
    }
    Graph::from_edges(n as usize, &edges)
}

fn parse_pair(line: &str) -> Option<(u64, u64)> {
    let mut it = line.split(' ');
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// Serializes to the same format `parse_graph` reads; round-trips bit-exactly.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for u in 0..g.n() {
        for v in bits::iter_ones(g.row(u)) {
            if v > u {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(n: usize, ids: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, ids).unwrap()
    }

    #[test]
    fn induced_edge_count_examples() {
        let k4 = complete(4).unwrap();
        assert_eq!(induced_edge_count(&k4, &VertexSet::full(4)).unwrap(), 6);
        assert_eq!(induced_edge_count(&k4, &VertexSet::empty(4)).unwrap(), 0);
        let c5 = cycle(5).unwrap();
        assert_eq!(induced_edge_count(&c5, &vs(5, &[0, 1, 2])).unwrap(), 2);
    }

    #[test]
    fn degree_in_examples() {
        let k4 = complete(4).unwrap();
        assert_eq!(degree_in(&k4, 0, &vs(4, &[1, 2])).unwrap(), 2);
        assert_eq!(degree_in(&k4, 0, &VertexSet::empty(4)).unwrap(), 0);
        let c5 = cycle(5).unwrap();
        assert_eq!(degree_in(&c5, 0, &vs(5, &[1, 2, 3, 4])).unwrap(), 2);
        assert!(degree_in(&c5, 5, &VertexSet::full(5)).is_err());
    }

    #[test]
    fn symdiff_degree_examples() {
        // Twins: two vertices with identical neighbourhoods in a 4-path shape.
        let g = Graph::from_edges(4, &[(0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        assert_eq!(symdiff_degree(&g, 0, 1, &VertexSet::full(4)).unwrap(), 0);
        let k5 = complete(5).unwrap();
        assert_eq!(symdiff_degree(&k5, 1, 3, &VertexSet::full(5)).unwrap(), 2);
        let c5 = cycle(5).unwrap();
        // Γ(0) = {1,4}, Γ(1) = {0,2}: symmetric difference {0,1,2,4}.
        assert_eq!(symdiff_degree(&c5, 0, 1, &VertexSet::full(5)).unwrap(), 4);
    }

    #[test]
    fn symdiff_identity() {
        let g = gnp(24, 0.45, 9).unwrap();
        let full = VertexSet::full(24);
        for u in 0..8 {
            for v in (u + 1)..8 {
                let common = (0..24)
                    .filter(|&x| g.adjacent(u, x) && g.adjacent(v, x))
                    .count();
                assert_eq!(
                    symdiff_degree(&g, u, v, &full).unwrap(),
                    g.degree(u) + g.degree(v) - 2 * common
                );
            }
        }
    }

    #[test]
    fn omega_size_examples() {
        let tri = complete(3).unwrap();
        let wg = WeightedGraph::new(tri, WeightFn::new(vec![1, 2, 3])).unwrap();
        assert_eq!(omega_size(&wg, &VertexSet::full(3)).unwrap(), 9);
        let g = gnp(10, 0.5, 1).unwrap();
        let s = vs(10, &[2, 3, 5, 7]);
        let zero = WeightedGraph::unweighted(g.clone());
        assert_eq!(omega_size(&zero, &s).unwrap(), induced_edge_count(&g, &s).unwrap());
        let single = Graph::from_edges(1, &[]).unwrap();
        let w = WeightedGraph::new(single, WeightFn::new(vec![7])).unwrap();
        assert_eq!(omega_size(&w, &vs(1, &[0])).unwrap(), 7);
    }

    #[test]
    fn omega_degree_examples() {
        let c5 = cycle(5).unwrap();
        let wg = WeightedGraph::new(c5.clone(), WeightFn::new(vec![10, 0, 0, 0, 0])).unwrap();
        assert_eq!(omega_degree_in(&wg, 0, &vs(5, &[1, 4])).unwrap(), 12);
        let zero = WeightedGraph::unweighted(c5.clone());
        for v in 0..5 {
            assert_eq!(
                omega_degree_in(&zero, v, &VertexSet::full(5)).unwrap(),
                degree_in(&c5, v, &VertexSet::full(5)).unwrap() as u64
            );
        }
        // Isolated vertex with weight 5.
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        let w = WeightedGraph::new(g, WeightFn::new(vec![5, 0, 0])).unwrap();
        assert_eq!(omega_degree_in(&w, 0, &VertexSet::full(3)).unwrap(), 5);
    }

    #[test]
    fn handshake_identity() {
        let g = gnp(40, 0.3, 11).unwrap();
        let s = vs(40, &(0..40).filter(|v| v % 3 != 0).collect::<Vec<_>>());
        let twice: usize = s.iter().map(|v| degree_in(&g, v, &s).unwrap()).sum();
        assert_eq!(induced_edge_count(&g, &s).unwrap(), twice as u64 / 2);
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        assert_eq!(gnp(12, 0.0, 3).unwrap().edge_count(), 0);
        assert_eq!(gnp(12, 1.0, 3).unwrap(), complete(12).unwrap());
        assert_eq!(gnp(30, 0.5, 42).unwrap(), gnp(30, 0.5, 42).unwrap());
        assert_ne!(gnp(30, 0.5, 42).unwrap(), gnp(30, 0.5, 43).unwrap());
        assert!(gnp(5, 1.5, 0).is_err());
    }

    #[test]
    fn paley_five_is_a_five_cycle() {
        let p5 = paley(5).unwrap();
        assert_eq!(p5.n(), 5);
        assert_eq!(p5.edge_count(), 5);
        // Brute-force isomorphism to C_5 over all 120 permutations.
        let c5 = cycle(5).unwrap();
        let perms = permutations(5);
        let found = perms.iter().any(|perm| {
            (0..5).all(|u| (0..5).all(|v| p5.adjacent(u, v) == c5.adjacent(perm[u], perm[v])))
        });
        assert!(found, "paley(5) not isomorphic to C_5");
        assert!(paley(9).is_err());
        assert!(paley(7).is_err());
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 1 {
            return vec![vec![0]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_graph("3 0\n").unwrap(), Graph::from_edges(3, &[]).unwrap());
        assert_eq!(parse_graph("2 1\n0 1\n").unwrap(), complete(2).unwrap());
        let p5 = paley(5).unwrap();
        assert_eq!(parse_graph(&serialize_graph(&p5)).unwrap(), p5);
        let g = gnp(50, 0.4, 5).unwrap();
        let text = serialize_graph(&g);
        assert_eq!(serialize_graph(&parse_graph(&text).unwrap()), text);
    }

    #[test]
    fn parse_errors_name_lines() {
        let cases = [
            ("", 1),                        // empty
            ("3\n", 1),                     // bad header
            ("3 2\n0 1\n", 3),              // truncated
            ("3 1\n1 0\n", 2),              // decreasing endpoints
            ("3 1\n1 1\n", 2),              // loop
            ("3 1\n0 5\n", 2),              // out of range
            ("3 2\n0 2\n0 1\n", 3),         // order violation
            ("3 2\n0 1\n0 1\n", 3),         // duplicate
            ("2 1\n0 1\nrest\n", 3),        // trailing content
            ("2 1\n0 1", 2),                // missing newline
        ];
        for (text, want_line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line, .. }) => {
                    assert_eq!(line, want_line, "wrong line for {text:?}")
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn complement_and_induced() {
        let g = gnp(20, 0.5, 8).unwrap();
        let co = g.complement();
        assert_eq!(g.edge_count() + co.edge_count(), 190);
        for u in 0..20 {
            for v in 0..20 {
                if u != v {
                    assert_eq!(g.adjacent(u, v), !co.adjacent(u, v));
                }
            }
        }
        let s = vs(20, &[1, 4, 9, 16]);
        let (h, ids) = g.induced(&s).unwrap();
        assert_eq!(ids, vec![1, 4, 9, 16]);
        assert_eq!(h.edge_count(), induced_edge_count(&g, &s).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(h.adjacent(i, j), g.adjacent(ids[i] as usize, ids[j] as usize));
                }
            }
        }
    }

    #[test]
    fn weight_fn_injectivity() {
        assert!(WeightFn::new(vec![3, 1, 2]).is_injective());
        assert!(!WeightFn::new(vec![3, 1, 3]).is_injective());
        assert!(!WeightFn::zeros(2).is_injective());
        assert!(WeightFn::zeros(1).is_injective());
    }

    #[test]
    fn vertex_set_ops() {
        let a = vs(100, &[0, 63, 64, 99]);
        let b = vs(100, &[63, 64]);
        assert!(b.is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
        assert_eq!(a.minus(&b).iter().collect::<Vec<_>>(), vec![0, 99]);
        assert_eq!(a.intersect(&b).len(), 2);
        assert_eq!(a.union(&b).len(), 4);
        assert!(a.minus(&b).is_disjoint(&b));
        assert_eq!(VertexSet::full(100).len(), 100);
        assert_eq!(VertexSet::full(0).len(), 0);
    }
}

//! Immutable graph representation (CSR adjacency) and set-level primitives:
//! neighbourhood Γ(X), closed neighbourhood Γ[X], external neighbourhood
//! N(X) = Γ(X) \ X, and the ordered-pair edge count e(X,Y).

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint out of range (n = {2})")]
    EndpointOutOfRange(u32, u32, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("subgraph edge ({0}, {1}) is not an edge of the supergraph")]
    NotASubgraph(u32, u32),
    #[error("graphs have different vertex counts ({0} vs {1})")]
    VertexCountMismatch(usize, usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Undirected simple graph on vertices `0..n`, stored as compressed sparse
/// rows. Adjacency lists are strictly increasing; construction deduplicates
/// edges and rejects self-loops and out-of-range endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Builds a graph from an unordered edge list. Duplicate edges (in either
    /// orientation) are silently deduplicated; self-loops are errors.
    pub fn build(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::EndpointOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        let mut pairs: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        let m = pairs.len();

        let mut deg = vec![0usize; n];
        for &(u, v) in &pairs {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + deg[i];
        }
        let mut targets = vec![0u32; 2 * m];
        let mut cursor = offsets.clone();
        for &(u, v) in &pairs {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        // Each row was filled in sorted order of the opposite endpoint except
        // for the mixed u/v fills; sort rows to restore the invariant.
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Ok(Graph {
            n,
            m,
            offsets,
            targets,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v as u32)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v as u32)).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.n == 0 || self.min_degree() == self.max_degree()
    }

    /// Distinct unordered edges, `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n as u32 {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced on `keep` (ascending vertex ids), reindexed to
    /// `0..keep.len()`. Returns the graph together with the id map
    /// (new id -> old id is just `keep` itself).
    pub fn induced_subgraph(&self, keep: &[u32]) -> Graph {
        let mut new_id = vec![u32::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for &v in keep {
            for &w in self.neighbors(v) {
                if v < w && new_id[w as usize] != u32::MAX {
                    edges.push((new_id[v as usize], new_id[w as usize]));
                }
            }
        }
        Graph::build(keep.len(), &edges).expect("induced subgraph edges are valid")
    }
}

/// Dense vertex set over `0..n` with O(1) membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    bits: Vec<u64>,
    n: usize,
    len: usize,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            bits: vec![0; n.div_ceil(64)],
            n,
            len: 0,
        }
    }

    pub fn from_iter<I: IntoIterator<Item = u32>>(n: usize, members: I) -> Self {
        let mut s = Self::new(n);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: u32) -> bool {
        debug_assert!((v as usize) < self.n);
        self.bits[v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: u32) -> bool {
        assert!((v as usize) < self.n, "vertex {v} out of range");
        let word = &mut self.bits[v as usize / 64];
        let mask = 1u64 << (v % 64);
        if *word & mask == 0 {
            *word |= mask;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, v: u32) -> bool {
        let word = &mut self.bits[v as usize / 64];
        let mask = 1u64 << (v % 64);
        if *word & mask != 0 {
            *word &= !mask;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some(i as u32 * 64 + b)
                }
            })
        })
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n);
        let bits: Vec<u64> = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a | b)
            .collect();
        let len = bits.iter().map(|w| w.count_ones() as usize).sum();
        VertexSet {
            bits,
            n: self.n,
            len,
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n);
        let bits: Vec<u64> = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & b)
            .collect();
        let len = bits.iter().map(|w| w.count_ones() as usize).sum();
        VertexSet {
            bits,
            n: self.n,
            len,
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n);
        let bits: Vec<u64> = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & !b)
            .collect();
        let len = bits.iter().map(|w| w.count_ones() as usize).sum();
        VertexSet {
            bits,
            n: self.n,
            len,
        }
    }
}

/// Γ(X): vertices with at least one neighbour in `x` (may intersect `x`).
pub fn gamma(g: &Graph, x: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new(g.vertex_count());
    for v in x.iter() {
        for &w in g.neighbors(v) {
            out.insert(w);
        }
    }
    out
}

/// Γ[X] = X ∪ Γ(X).
pub fn gamma_closed(g: &Graph, x: &VertexSet) -> VertexSet {
    gamma(g, x).union(x)
}

/// External neighbourhood N(X) = Γ(X) \ X.
pub fn external_nbhd(g: &Graph, x: &VertexSet) -> VertexSet {
    gamma(g, x).difference(x)
}

/// Ordered-pair edge count e(X,Y) = Σ_{x∈X, y∈Y} 1[xy ∈ E]. An edge with
/// both endpoints in X ∩ Y contributes 2.
pub fn e_between(g: &Graph, x: &VertexSet, y: &VertexSet) -> usize {
    // Iterate over the smaller side.
    let (a, b) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let mut count = 0;
    for v in a.iter() {
        for &w in g.neighbors(v) {
            if b.contains(w) {
                count += 1;
            }
        }
    }
    count
}

/// A pair G' ⊆ G on the same vertex set; `d_min` is the minimum degree of G'.
#[derive(Debug, Clone)]
pub struct GraphPair {
    g: Graph,
    g_prime: Graph,
    d_min: usize,
}

impl GraphPair {
    pub fn new(g: Graph, g_prime: Graph) -> Result<Self, GraphError> {
        if g.vertex_count() != g_prime.vertex_count() {
            return Err(GraphError::VertexCountMismatch(
                g.vertex_count(),
                g_prime.vertex_count(),
            ));
        }
        for u in 0..g_prime.vertex_count() as u32 {
            for &v in g_prime.neighbors(u) {
                if u < v && !g.has_edge(u, v) {
                    return Err(GraphError::NotASubgraph(u, v));
                }
            }
        }
        let d_min = g_prime.min_degree();
        Ok(GraphPair { g, g_prime, d_min })
    }

    /// Pair with G' = G.
    pub fn identical(g: Graph) -> Self {
        let d_min = g.min_degree();
        GraphPair {
            g_prime: g.clone(),
            g,
            d_min,
        }
    }

    pub fn g(&self) -> &Graph {
        &self.g
    }

    pub fn g_prime(&self) -> &Graph {
        &self.g_prime
    }

    pub fn d_min(&self) -> usize {
        self.d_min
    }

    pub fn vertex_count(&self) -> usize {
        self.g.vertex_count()
    }
}

// ---------------------------------------------------------------------------
// Edge-list text format
//
// Single graph: first line "n m", then m lines "u v" with 0 <= u < v < n.
// Pair: two such blocks separated by a line "---", G first.
// ---------------------------------------------------------------------------

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_pair(pair: &GraphPair) -> String {
    let mut out = write_edge_list(pair.g());
    out.push_str("---\n");
    out.push_str(&write_edge_list(pair.g_prime()));
    out
}

fn parse_block<'a, I>(lines: &mut std::iter::Peekable<I>) -> Result<Graph, GraphError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (line_no, header) = loop {
        match lines.next() {
            Some((no, l)) if l.trim().is_empty() => {
                let _ = no;
            }
            Some((no, l)) => break (no, l),
            None => {
                return Err(GraphError::Parse {
                    line: 0,
                    msg: "missing header line".into(),
                })
            }
        }
    };
    let mut it = header.split_whitespace();
    let parse_usize = |s: Option<&str>, line: usize| -> Result<usize, GraphError> {
        s.ok_or(GraphError::Parse {
            line,
            msg: "expected \"n m\" header".into(),
        })?
        .parse()
        .map_err(|_| GraphError::Parse {
            line,
            msg: "expected \"n m\" header".into(),
        })
    };
    let n = parse_usize(it.next(), line_no)?;
    let m = parse_usize(it.next(), line_no)?;
    if it.next().is_some() {
        return Err(GraphError::Parse {
            line: line_no,
            msg: "trailing tokens in header".into(),
        });
    }
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let (no, l) = lines.next().ok_or(GraphError::Parse {
            line: line_no,
            msg: format!("expected {m} edge lines, got {}", edges.len()),
        })?;
        if l.trim().is_empty() {
            continue;
        }
        let mut it = l.split_whitespace();
        let u: u32 = parse_usize(it.next(), no)? as u32;
        let v: u32 = parse_usize(it.next(), no)? as u32;
        if it.next().is_some() {
            return Err(GraphError::Parse {
                line: no,
                msg: "trailing tokens on edge line".into(),
            });
        }
        if u >= v {
            return Err(GraphError::Parse {
                line: no,
                msg: format!("edge endpoints must satisfy u < v, got {u} {v}"),
            });
        }
        edges.push((u, v));
    }
    let g = Graph::build(n, &edges).map_err(|e| GraphError::Parse {
        line: line_no,
        msg: e.to_string(),
    })?;
    if g.edge_count() != m {
        return Err(GraphError::Parse {
            line: line_no,
            msg: format!(
                "header declares {m} edges but {} distinct edges were read",
                g.edge_count()
            ),
        });
    }
    Ok(g)
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .peekable();
    let g = parse_block(&mut lines)?;
    for (no, l) in lines {
        if !l.trim().is_empty() {
            return Err(GraphError::Parse {
                line: no,
                msg: "unexpected trailing content".into(),
            });
        }
    }
    Ok(g)
}

/// Parses a pair file; a file with no "---" separator yields G' = G.
pub fn parse_pair(text: &str) -> Result<GraphPair, GraphError> {
    let mut parts = text.splitn(2, "\n---");
    let first = parts.next().unwrap_or("");
    match parts.next() {
        None => Ok(GraphPair::identical(parse_edge_list(first)?)),
        Some(second) => {
            let g = parse_edge_list(first)?;
            let offset = first.lines().count() + 1;
            // Strip the remainder of the separator line.
            let second = second.split_once('\n').map(|(_, r)| r).unwrap_or("");
            let mut lines = second
                .lines()
                .enumerate()
                .map(|(i, l)| (i + offset + 1, l))
                .peekable();
            let g_prime = parse_block(&mut lines)?;
            GraphPair::new(g, g_prime)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c5() -> Graph {
        Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn vs(n: usize, members: &[u32]) -> VertexSet {
        VertexSet::from_iter(n, members.iter().copied())
    }

    #[test]
    fn build_dedups_repeated_pairs() {
        let g = Graph::build(3, &[(0, 1), (1, 2), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn build_empty_graph() {
        let g = Graph::build(1, &[]).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn build_cycle_degrees() {
        let g = c5();
        assert_eq!(g.edge_count(), 5);
        assert!((0..5).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn build_rejects_self_loop_and_range() {
        assert_eq!(
            Graph::build(3, &[(1, 1)]).unwrap_err(),
            GraphError::SelfLoop(1)
        );
        assert!(matches!(
            Graph::build(3, &[(0, 3)]).unwrap_err(),
            GraphError::EndpointOutOfRange(0, 3, 3)
        ));
    }

    #[test]
    fn gamma_on_cycle_and_complete() {
        let g = c5();
        assert_eq!(gamma(&g, &vs(5, &[0])), vs(5, &[1, 4]));
        let k = k4();
        assert_eq!(gamma(&k, &vs(4, &[0, 1])), vs(4, &[0, 1, 2, 3]));
        assert_eq!(gamma(&g, &vs(5, &[])), vs(5, &[]));
    }

    #[test]
    fn gamma_closed_cases() {
        let g = c5();
        assert_eq!(gamma_closed(&g, &vs(5, &[0])), vs(5, &[0, 1, 4]));
        assert_eq!(gamma_closed(&g, &vs(5, &[])), vs(5, &[]));
        let k = k4();
        assert_eq!(gamma_closed(&k, &vs(4, &[0])), vs(4, &[0, 1, 2, 3]));
    }

    #[test]
    fn external_nbhd_cases() {
        let g = c5();
        assert_eq!(external_nbhd(&g, &vs(5, &[0, 1])), vs(5, &[2, 4]));
        let k = k4();
        assert_eq!(external_nbhd(&k, &vs(4, &[0, 1])), vs(4, &[2, 3]));
        assert_eq!(
            external_nbhd(&g, &vs(5, &[0, 1, 2, 3, 4])),
            vs(5, &[])
        );
    }

    #[test]
    fn e_between_counts_ordered_pairs() {
        let t = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let all = vs(3, &[0, 1, 2]);
        assert_eq!(e_between(&t, &all, &all), 6);
        let g = c5();
        assert_eq!(e_between(&g, &vs(5, &[0]), &vs(5, &[1, 2])), 1);
    }

    #[test]
    fn pair_requires_subgraph() {
        let g = c5();
        let h = Graph::build(5, &[(0, 2)]).unwrap();
        assert!(matches!(
            GraphPair::new(g, h).unwrap_err(),
            GraphError::NotASubgraph(0, 2)
        ));
    }

    #[test]
    fn format_round_trip_pair() {
        let pair = GraphPair::new(c5(), Graph::build(5, &[(0, 1), (2, 3)]).unwrap()).unwrap();
        let text = write_pair(&pair);
        let back = parse_pair(&text).unwrap();
        assert_eq!(back.g(), pair.g());
        assert_eq!(back.g_prime(), pair.g_prime());
        assert_eq!(back.d_min(), 0);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = parse_edge_list("3 1\n0 zero\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }));
        let err = parse_edge_list("bogus\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..12).prop_flat_map(|n| {
            let max_edges = n * (n - 1) / 2;
            proptest::collection::vec((0..n as u32, 0..n as u32), 0..=max_edges).prop_map(
                move |mut pairs| {
                    pairs.retain(|(u, v)| u != v);
                    Graph::build(n, &pairs).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn set_ops_invariants(g in arb_graph(), seed in any::<u64>()) {
            let n = g.vertex_count();
            let x = {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                VertexSet::from_iter(n, (0..n as u32).filter(|_| rng.gen_bool(0.5)))
            };
            let gx = gamma(&g, &x);
            prop_assert_eq!(gx.union(&x), gamma_closed(&g, &x));
            prop_assert!(external_nbhd(&g, &x).intersection(&x).is_empty());
            prop_assert_eq!(e_between(&g, &x, &x) % 2, 0);
        }

        #[test]
        fn e_between_matches_double_loop(g in arb_graph(), sx in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let n = g.vertex_count();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(sx);
            let x = VertexSet::from_iter(n, (0..n as u32).filter(|_| rng.gen_bool(0.4)));
            let y = VertexSet::from_iter(n, (0..n as u32).filter(|_| rng.gen_bool(0.4)));
            let naive: usize = x
                .iter()
                .map(|u| y.iter().filter(|&v| g.has_edge(u, v)).count())
                .sum();
            prop_assert_eq!(e_between(&g, &x, &y), naive);
            prop_assert_eq!(e_between(&g, &x, &y), e_between(&g, &y, &x));
        }

        #[test]
        fn build_is_idempotent(g in arb_graph()) {
            let again = Graph::build(g.vertex_count(), &g.edges()).unwrap();
            prop_assert_eq!(again, g);
        }
    }
}

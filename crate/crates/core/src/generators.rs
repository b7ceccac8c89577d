//! Seeded instance generators. All generators are deterministic given the
//! seed; the PRNG is pinned to ChaCha8 so corpora reproduce across machines
//! from the seed alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

const REGULAR_MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("n*d must be even for a d-regular graph (n={0}, d={1})")]
    ParityViolation(usize, usize),
    #[error("need d < n (n={0}, d={1})")]
    DegreeTooLarge(usize, usize),
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("configuration model failed after {0} restarts")]
    RestartsExhausted(usize),
    #[error("{count} cliques of size {size} do not fit in {n} vertices")]
    CliquesDoNotFit { count: usize, size: usize, n: usize },
    #[error("invalid parameter n={0} for model {1}")]
    BadSize(usize, &'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum GenSpec {
    RandomRegular { n: usize, d: usize },
    Gnp { n: usize, p: f64 },
    Cycle { n: usize },
    Complete { n: usize },
    Path { n: usize },
    Petersen,
}

impl GenSpec {
    pub fn generate(&self, seed: u64) -> Result<Graph, GenError> {
        match *self {
            GenSpec::RandomRegular { n, d } => gen_random_regular(n, d, seed),
            GenSpec::Gnp { n, p } => gen_gnp(n, p, seed),
            GenSpec::Cycle { n } => cycle(n),
            GenSpec::Complete { n } => complete(n),
            GenSpec::Path { n } => path(n),
            GenSpec::Petersen => Ok(petersen()),
        }
    }
}

/// Uniform-ish simple d-regular graph via the configuration model. Stubs are
/// matched sequentially against randomly chosen compatible partners; if a
/// matching gets stuck the whole attempt is restarted (no edge repair, which
/// would bias the distribution in unquantified ways). For n*d beyond ~1e7
/// the bounded-retry partner search leaves a small residual bias.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    if !(n * d).is_multiple_of(2) {
        return Err(GenError::ParityViolation(n, d));
    }
    if d >= n {
        return Err(GenError::DegreeTooLarge(n, d));
    }
    if d == 0 {
        return Ok(Graph::build(n, &[])?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..REGULAR_MAX_ATTEMPTS {
        let mut stubs: Vec<u32> = (0..n as u32).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        // Fisher-Yates shuffle, then pair greedily with local retries.
        for i in (1..stubs.len()).rev() {
            stubs.swap(i, rng.gen_range(0..=i));
        }
        let mut seen = std::collections::HashSet::with_capacity(n * d / 2);
        let mut edges = Vec::with_capacity(n * d / 2);
        let mut live = stubs;
        while live.len() >= 2 {
            let u = live[live.len() - 1];
            // Try random partners for the last stub; compatible means no
            // self-loop and no duplicate edge.
            let mut matched = false;
            for _ in 0..40 {
                let j = rng.gen_range(0..live.len() - 1);
                let v = live[j];
                let key = if u < v { (u, v) } else { (v, u) };
                if u != v && !seen.contains(&key) {
                    seen.insert(key);
                    edges.push(key);
                    live.pop();
                    live.swap_remove(j);
                    matched = true;
                    break;
                }
            }
            if !matched {
                // Fall back to a scan; if nothing is compatible, restart.
                let found = (0..live.len() - 1).find(|&j| {
                    let v = live[j];
                    let key = if u < v { (u, v) } else { (v, u) };
                    u != v && !seen.contains(&key)
                });
                match found {
                    Some(j) => {
                        let v = live[j];
                        let key = if u < v { (u, v) } else { (v, u) };
                        seen.insert(key);
                        edges.push(key);
                        live.pop();
                        live.swap_remove(j);
                    }
                    None => continue 'attempt,
                }
            }
        }
        return Ok(Graph::build(n, &edges)?);
    }
    Err(GenError::RestartsExhausted(REGULAR_MAX_ATTEMPTS))
}

/// Binomial random graph G(n, p) via geometric skipping over the C(n,2)
/// linearised pair order, so cost is O(n + m).
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(GenError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if p == 0.0 || n < 2 {
        return Ok(Graph::build(n, &[])?);
    }
    if p == 1.0 {
        return complete(n);
    }
    let log1p = (1.0 - p).ln();
    let mut edges = Vec::new();
    // Cursor over pairs (u, v), u < v, in row-major order.
    let mut u: usize = 0;
    let mut v: usize = 0; // column offset within row u is v - u - 1
    let advance = |u: &mut usize, v: &mut usize, mut skip: usize| -> bool {
        loop {
            let remaining = n - 1 - *v;
            if skip < remaining {
                *v += skip;
                return true;
            }
            skip -= remaining;
            *u += 1;
            if *u >= n - 1 {
                return false;
            }
            *v = *u;
        }
    };
    // Positions start one step before the first pair.
    let mut first = true;
    loop {
        let r: f64 = rng.gen_range(0.0..1.0);
        let skip = ((1.0 - r).ln() / log1p).floor() as usize + 1;
        let alive = if first {
            first = false;
            // Shift to the first pair then apply skip - 1.
            v = 0;
            advance(&mut u, &mut v, skip - 1)
        } else {
            advance(&mut u, &mut v, skip)
        };
        if !alive {
            break;
        }
        edges.push((u as u32, v as u32 + 1));
    }
    Ok(Graph::build(n, &edges)?)
}

/// Base graph unioned with vertex-disjoint cliques on randomly chosen
/// disjoint vertex sets. Returns the graph and the clique partition.
pub fn gen_clique_superimposed(
    base: &Graph,
    clique_count: usize,
    clique_size: usize,
    seed: u64,
) -> Result<(Graph, Vec<Vec<u32>>), GenError> {
    let n = base.vertex_count();
    if clique_count * clique_size > n {
        return Err(GenError::CliquesDoNotFit {
            count: clique_count,
            size: clique_size,
            n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut cliques = Vec::with_capacity(clique_count);
    let mut edges = base.edges();
    for c in 0..clique_count {
        let mut members: Vec<u32> = perm[c * clique_size..(c + 1) * clique_size].to_vec();
        members.sort_unstable();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                edges.push((members[i], members[j]));
            }
        }
        cliques.push(members);
    }
    Ok((Graph::build(n, &edges)?, cliques))
}

pub fn cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::BadSize(n, "cycle"));
    }
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|v| (v, (v + 1) % n as u32)).collect();
    Ok(Graph::build(n, &edges)?)
}

pub fn path(n: usize) -> Result<Graph, GenError> {
    if n < 1 {
        return Err(GenError::BadSize(n, "path"));
    }
    let edges: Vec<(u32, u32)> = (0..n.saturating_sub(1) as u32).map(|v| (v, v + 1)).collect();
    Ok(Graph::build(n, &edges)?)
}

pub fn complete(n: usize) -> Result<Graph, GenError> {
    if n < 1 {
        return Err(GenError::BadSize(n, "complete"));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            edges.push((u, v));
        }
    }
    Ok(Graph::build(n, &edges)?)
}

/// The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5)); // outer cycle
        edges.push((5 + i, 5 + (i + 2) % 5)); // pentagram
        edges.push((i, 5 + i)); // spoke
    }
    Graph::build(10, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_regular_is_regular_and_simple() {
        let g = gen_random_regular(10, 3, 5).unwrap();
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn two_regular_on_four_vertices_is_c4() {
        for seed in 0..5 {
            let g = gen_random_regular(4, 2, seed).unwrap();
            assert_eq!(g.edge_count(), 4);
            assert!((0..4).all(|v| g.degree(v) == 2));
            // The only simple 2-regular graph on 4 vertices is the 4-cycle.
            assert!(!(g.has_edge(0, 1) && g.has_edge(0, 2) && g.has_edge(0, 3)));
        }
    }

    #[test]
    fn random_regular_rejects_odd_parity() {
        assert!(matches!(
            gen_random_regular(5, 3, 0),
            Err(GenError::ParityViolation(5, 3))
        ));
    }

    #[test]
    fn gnp_extremes() {
        let g = gen_gnp(12, 0.0, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = gen_gnp(6, 1.0, 1).unwrap();
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn gnp_edge_count_in_band() {
        let n = 10_000usize;
        let p = 1e-3;
        let g = gen_gnp(n, p, 7).unwrap();
        let mean = (n * (n - 1) / 2) as f64 * p;
        let sigma = (mean * (1.0 - p)).sqrt();
        let got = g.edge_count() as f64;
        assert!(
            (got - mean).abs() < 4.0 * sigma,
            "m = {got}, expected {mean} ± {:.1}",
            4.0 * sigma
        );
    }

    #[test]
    fn generators_are_deterministic() {
        let a = gen_gnp(200, 0.05, 99).unwrap();
        let b = gen_gnp(200, 0.05, 99).unwrap();
        assert_eq!(a.edges(), b.edges());
        let a = gen_random_regular(50, 4, 3).unwrap();
        let b = gen_random_regular(50, 4, 3).unwrap();
        assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn clique_superimposed_contains_base_and_cliques() {
        let base = gen_gnp(40, 0.05, 2).unwrap();
        let (g, cliques) = gen_clique_superimposed(&base, 4, 5, 3).unwrap();
        for (u, v) in base.edges() {
            assert!(g.has_edge(u, v));
        }
        assert_eq!(cliques.len(), 4);
        let mut seen = std::collections::HashSet::new();
        for c in &cliques {
            assert_eq!(c.len(), 5);
            for &v in c {
                assert!(seen.insert(v), "cliques overlap at {v}");
            }
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    assert!(g.has_edge(c[i], c[j]));
                }
            }
        }
    }

    #[test]
    fn clique_superimposed_on_empty_base() {
        let base = Graph::build(12, &[]).unwrap();
        let (g, cliques) = gen_clique_superimposed(&base, 3, 4, 0).unwrap();
        assert_eq!(g.edge_count(), 3 * 6);
        assert_eq!(cliques.len(), 3);
    }

    #[test]
    fn named_constructions() {
        let p = petersen();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        assert!(p.is_regular() && p.min_degree() == 3);
        assert_eq!(cycle(5).unwrap().edge_count(), 5);
        assert_eq!(path(2).unwrap().edge_count(), 1);
        assert!(cycle(2).is_err());
    }
}

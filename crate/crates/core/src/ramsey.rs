//! Monochromatic induced-path pipeline: sample a sparse random graph, colour
//! its edges, take the densest colour class, peel low-degree vertices, and
//! search the peeled class for a path that is induced in the host graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dfs::{run, verify_induced_path, AlgParams};
use crate::generators::{gen_gnp, GenError};
use crate::graph::{Graph, GraphPair};

#[derive(Debug, Error)]
pub enum RamseyError {
    #[error("need at least one colour")]
    NoColours,
    #[error("need k >= 2 for the log-k parametrisation, got {0}")]
    TooFewColours(usize),
    #[error("edge probability {0} outside (0, 1]")]
    BadProbability(f64),
    #[error(transparent)]
    Gen(#[from] GenError),
}

/// Graph with a colour in 0..k per edge. Colours are stored in the order of
/// [`Graph::edges`], i.e. lexicographic by (u, v).
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    g: Graph,
    edges: Vec<(u32, u32)>,
    colors: Vec<u32>,
    k: usize,
}

impl ColoredGraph {
    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn color_count(&self) -> usize {
        self.k
    }

    pub fn color_of(&self, u: u32, v: u32) -> Option<u32> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search(&key)
            .ok()
            .map(|i| self.colors[i])
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ColorStrategy {
    /// Colours i.i.d. uniform over 0..k.
    UniformRandom,
    /// Greedily balances colour degrees at both endpoints of each edge.
    AdversarialBalanced,
}

pub fn color_edges(
    g: &Graph,
    k: usize,
    strategy: ColorStrategy,
    seed: u64,
) -> Result<ColoredGraph, RamseyError> {
    if k == 0 {
        return Err(RamseyError::NoColours);
    }
    let edges = g.edges();
    let colors = match strategy {
        ColorStrategy::UniformRandom => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            edges.iter().map(|_| rng.gen_range(0..k as u32)).collect()
        }
        ColorStrategy::AdversarialBalanced => {
            // Per-vertex colour-degree counters; each edge takes the colour
            // minimising the combined endpoint counts, least colour on ties.
            let mut count = vec![0u32; g.vertex_count() * k];
            let mut colors = Vec::with_capacity(edges.len());
            for &(u, v) in &edges {
                let c = (0..k as u32)
                    .min_by_key(|&c| {
                        count[u as usize * k + c as usize] + count[v as usize * k + c as usize]
                    })
                    .unwrap();
                count[u as usize * k + c as usize] += 1;
                count[v as usize * k + c as usize] += 1;
                colors.push(c);
            }
            colors
        }
    };
    Ok(ColoredGraph {
        g: g.clone(),
        edges,
        colors,
        k,
    })
}

/// Subgraph of the colour with the most edges, ties broken by least colour
/// index. Returns the graph together with the winning colour.
pub fn densest_color_class(cg: &ColoredGraph) -> (Graph, u32) {
    let sizes = cg.class_sizes();
    let best = (0..cg.k)
        .max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)))
        .unwrap() as u32;
    let class_edges: Vec<(u32, u32)> = cg
        .edges
        .iter()
        .zip(&cg.colors)
        .filter(|(_, &c)| c == best)
        .map(|(&e, _)| e)
        .collect();
    (
        Graph::build(cg.g.vertex_count(), &class_edges).expect("class edges are valid"),
        best,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeelOrder {
    /// Deterministic: always remove the least-id qualifying vertex.
    LeastId,
    /// Seeded random qualifying vertex; the survivor set is order-invariant.
    Random(u64),
}

#[derive(Debug, Clone)]
pub struct PeelResult {
    /// Surviving vertex ids, ascending.
    pub survivors: Vec<u32>,
    pub removed_order: Vec<u32>,
    /// Whether the average degree was non-decreasing across removal steps.
    pub avg_degree_monotone: bool,
}

/// Repeatedly removes vertices of current degree below `threshold` until the
/// remaining graph has minimum degree >= threshold or is empty. The survivor
/// set is the unique (threshold)-core regardless of removal order.
pub fn peel_min_degree(g: &Graph, threshold: f64, order: PeelOrder) -> PeelResult {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n as u32).map(|v| g.degree(v)).collect();
    let below = |d: usize| (d as f64) < threshold;

    let mut queue: Vec<u32> = (0..n as u32).filter(|&v| below(deg[v as usize])).collect();
    let mut rng = match order {
        PeelOrder::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        PeelOrder::LeastId => None,
    };
    let mut removed_order = Vec::new();
    let mut alive_count = n;
    let mut edge_count = g.edge_count();
    let mut prev_avg = if n == 0 {
        0.0
    } else {
        2.0 * edge_count as f64 / n as f64
    };
    let mut avg_degree_monotone = true;
    while !queue.is_empty() {
        let idx = match rng.as_mut() {
            Some(r) => r.gen_range(0..queue.len()),
            None => {
                // Least id first.
                let (i, _) = queue.iter().enumerate().min_by_key(|(_, &v)| v).unwrap();
                i
            }
        };
        let v = queue.swap_remove(idx);
        if !alive[v as usize] || !below(deg[v as usize]) {
            continue;
        }
        alive[v as usize] = false;
        alive_count -= 1;
        edge_count -= deg[v as usize];
        removed_order.push(v);
        for &w in g.neighbors(v) {
            if alive[w as usize] {
                deg[w as usize] -= 1;
                if below(deg[w as usize]) {
                    queue.push(w);
                }
            }
        }
        if alive_count > 0 {
            let avg = 2.0 * edge_count as f64 / alive_count as f64;
            if avg < prev_avg - 1e-9 {
                avg_degree_monotone = false;
            }
            prev_avg = avg;
        }
    }
    let survivors: Vec<u32> = (0..n as u32).filter(|&v| alive[v as usize]).collect();
    PeelResult {
        survivors,
        removed_order,
        avg_degree_monotone,
    }
}

/// Parameters of the colouring experiment: the host graph is G(n·k, p) with
/// p = c·ln(k)/n, the peeling threshold is c·ln(k)/4, and the search target
/// is n/(c³·ln k) edges.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RamseyParams {
    pub n: usize,
    pub k: usize,
    pub c: f64,
    pub p: f64,
}

impl RamseyParams {
    pub fn new(n: usize, k: usize, c: f64) -> Result<Self, RamseyError> {
        if k < 2 {
            return Err(RamseyError::TooFewColours(k));
        }
        let p = c * (k as f64).ln() / n as f64;
        if !(p > 0.0 && p <= 1.0) {
            return Err(RamseyError::BadProbability(p));
        }
        Ok(RamseyParams { n, k, c, p })
    }

    /// Explicit edge probability, for degenerate setups such as k = 1.
    pub fn with_probability(n: usize, k: usize, c: f64, p: f64) -> Result<Self, RamseyError> {
        if k == 0 {
            return Err(RamseyError::NoColours);
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(RamseyError::BadProbability(p));
        }
        Ok(RamseyParams { n, k, c, p })
    }

    pub fn threshold(&self) -> f64 {
        self.c * (self.k as f64).ln() / 4.0
    }

    /// Target path length in edges; 0 when the log-k formula degenerates.
    pub fn target_len(&self) -> usize {
        let logk = (self.k as f64).ln();
        if logk <= 0.0 {
            return 0;
        }
        (self.n as f64 / (self.c.powi(3) * logk)).floor() as usize
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PipelineReport {
    pub seed: u64,
    pub n_total: usize,
    pub m: usize,
    pub densest_color: u32,
    pub m_densest: usize,
    pub survivor_n: usize,
    pub survivor_min_deg: usize,
    pub found_len: usize,
    pub target_len: usize,
    pub target_met: bool,
    /// Witness is monochromatic, induced in the restricted host graph, and
    /// induced in the full host graph.
    pub checks_passed: bool,
    pub avg_degree_monotone: bool,
    /// Peeling removed every vertex; no search was possible.
    pub pipeline_failed: bool,
    pub witness: Vec<u32>,
}

/// Runs the full pipeline for one seed. The same seed drives generation,
/// colouring, and the search ordering, so reports are reproducible.
pub fn run_ramsey_pipeline(
    params: &RamseyParams,
    strategy: ColorStrategy,
    seed: u64,
) -> Result<PipelineReport, RamseyError> {
    let n_total = params.n * params.k;
    let g = gen_gnp(n_total, params.p, seed)?;
    let cg = color_edges(&g, params.k, strategy, seed ^ 0x9e3779b97f4a7c15)?;
    let (class, densest_color) = densest_color_class(&cg);
    let m_densest = class.edge_count();
    let peel = peel_min_degree(&class, params.threshold(), PeelOrder::LeastId);
    let target_len = params.target_len();

    if peel.survivors.is_empty() {
        return Ok(PipelineReport {
            seed,
            n_total,
            m: g.edge_count(),
            densest_color,
            m_densest,
            survivor_n: 0,
            survivor_min_deg: 0,
            found_len: 0,
            target_len,
            target_met: false,
            checks_passed: false,
            avg_degree_monotone: peel.avg_degree_monotone,
            pipeline_failed: true,
            witness: Vec::new(),
        });
    }

    let host = g.induced_subgraph(&peel.survivors);
    let class_peeled = class.induced_subgraph(&peel.survivors);
    let survivor_min_deg = class_peeled.min_degree();
    let pair = GraphPair::new(host, class_peeled).expect("colour class is a subgraph");

    let sn = pair.vertex_count();
    let mut alg = AlgParams::shuffled(sn, seed);
    if target_len >= 1 {
        alg = alg.with_target(target_len).expect("target >= 1");
    }
    let result = run(&pair, &alg).expect("search parameters are valid");

    // Witness checks: induced in the restricted host, monochromatic, and
    // induced in the full host graph (original vertex ids).
    let mut checks_passed = verify_induced_path(&pair, &result.best_path);
    let witness: Vec<u32> = result
        .best_path
        .iter()
        .map(|&v| peel.survivors[v as usize])
        .collect();
    for w in witness.windows(2) {
        if cg.color_of(w[0], w[1]) != Some(densest_color) {
            checks_passed = false;
        }
    }
    let class_on_full = Graph::build(
        n_total,
        &witness
            .windows(2)
            .map(|w| (w[0], w[1]))
            .collect::<Vec<_>>(),
    )
    .expect("witness edges are valid");
    let full_pair = GraphPair::new(g.clone(), class_on_full).expect("witness edges lie in G");
    if !verify_induced_path(&full_pair, &witness) {
        checks_passed = false;
    }

    Ok(PipelineReport {
        seed,
        n_total,
        m: g.edge_count(),
        densest_color,
        m_densest,
        survivor_n: sn,
        survivor_min_deg,
        found_len: result.best_len,
        target_len,
        target_met: result.best_len >= target_len,
        checks_passed,
        avg_degree_monotone: peel.avg_degree_monotone,
        pipeline_failed: false,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn single_color_takes_everything() {
        let g = generators::cycle(6).unwrap();
        let cg = color_edges(&g, 1, ColorStrategy::UniformRandom, 0).unwrap();
        let (class, color) = densest_color_class(&cg);
        assert_eq!(color, 0);
        assert_eq!(class.edge_count(), 6);
    }

    #[test]
    fn uniform_classes_are_balanced() {
        let g = generators::gen_gnp(1000, 0.6, 5).unwrap();
        let m = g.edge_count() as f64;
        let cg = color_edges(&g, 3, ColorStrategy::UniformRandom, 5).unwrap();
        let sizes = cg.class_sizes();
        let mean = m / 3.0;
        let sigma = (m * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for s in sizes {
            assert!((s as f64 - mean).abs() < 4.0 * sigma, "{s} vs {mean}");
        }
    }

    #[test]
    fn adversarial_balances_color_degrees_on_k4() {
        let g = generators::complete(4).unwrap();
        let cg = color_edges(&g, 2, ColorStrategy::AdversarialBalanced, 0).unwrap();
        for v in 0..4u32 {
            let mut per_color = [0i64; 2];
            for &w in g.neighbors(v) {
                per_color[cg.color_of(v, w).unwrap() as usize] += 1;
            }
            assert!((per_color[0] - per_color[1]).abs() <= 1, "vertex {v}");
        }
    }

    #[test]
    fn densest_class_beats_pigeonhole() {
        let g = generators::gen_gnp(300, 0.1, 3).unwrap();
        let cg = color_edges(&g, 4, ColorStrategy::UniformRandom, 3).unwrap();
        let (class, _) = densest_color_class(&cg);
        assert!(class.edge_count() >= g.edge_count().div_ceil(4));
    }

    #[test]
    fn densest_tie_break_is_least_color() {
        // C6 coloured alternately by the balanced strategy gives a 3-3 tie.
        let g = generators::cycle(6).unwrap();
        let cg = color_edges(&g, 2, ColorStrategy::AdversarialBalanced, 0).unwrap();
        let sizes = cg.class_sizes();
        if sizes[0] == sizes[1] {
            let (_, color) = densest_color_class(&cg);
            assert_eq!(color, 0);
        }
    }

    #[test]
    fn star_peels_to_nothing() {
        let g = Graph::build(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let peel = peel_min_degree(&g, 2.0, PeelOrder::LeastId);
        assert!(peel.survivors.is_empty());
        assert_eq!(peel.removed_order.len(), 6);
    }

    #[test]
    fn triangle_with_pendant_keeps_triangle() {
        let g = Graph::build(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let peel = peel_min_degree(&g, 2.0, PeelOrder::LeastId);
        assert_eq!(peel.survivors, vec![0, 1, 2]);
    }

    #[test]
    fn peel_post_conditions_on_random_graph() {
        let g = generators::gen_gnp(5000, 0.004, 1).unwrap();
        let peel = peel_min_degree(&g, 5.0, PeelOrder::LeastId);
        assert!(!peel.survivors.is_empty());
        let core = g.induced_subgraph(&peel.survivors);
        assert!(core.min_degree() >= 5);
        let avg_in = 2.0 * g.edge_count() as f64 / g.vertex_count() as f64;
        let avg_out = 2.0 * core.edge_count() as f64 / core.vertex_count() as f64;
        assert!(avg_out >= avg_in);
    }

    #[test]
    fn core_is_order_invariant() {
        for seed in 0..100 {
            let g = generators::gen_gnp(60, 0.08, seed).unwrap();
            let a = peel_min_degree(&g, 3.0, PeelOrder::LeastId);
            let b = peel_min_degree(&g, 3.0, PeelOrder::Random(seed * 7 + 1));
            assert_eq!(a.survivors, b.survivors, "seed {seed}");
        }
    }

    #[test]
    fn degenerate_single_color_complete_host() {
        // k = 1 with p = 1: the host is complete, so any induced path has at
        // most one edge.
        let params = RamseyParams::with_probability(30, 1, 4.0, 1.0).unwrap();
        let report = run_ramsey_pipeline(&params, ColorStrategy::UniformRandom, 0).unwrap();
        assert!(!report.pipeline_failed);
        assert!(report.found_len <= 1);
        assert!(report.checks_passed);
    }

    #[test]
    fn pipeline_reports_are_sound() {
        let params = RamseyParams::new(2000, 2, 8.0).unwrap();
        for seed in 0..3 {
            let report = run_ramsey_pipeline(&params, ColorStrategy::UniformRandom, seed).unwrap();
            assert!(!report.pipeline_failed, "seed {seed}");
            assert!(report.checks_passed, "seed {seed}");
            assert!(report.avg_degree_monotone, "seed {seed}");
            assert!(report.survivor_min_deg as f64 >= params.threshold());
            assert_eq!(report.found_len + 1, report.witness.len().max(1));
        }
    }

    #[test]
    fn params_validation() {
        assert!(matches!(
            RamseyParams::new(100, 1, 4.0),
            Err(RamseyError::TooFewColours(1))
        ));
        assert!(matches!(
            RamseyParams::new(2, 100, 50.0),
            Err(RamseyError::BadProbability(_))
        ));
    }
}

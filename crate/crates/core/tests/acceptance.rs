//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N: pass|FAIL` line. Every tolerance and pinned value is spelled
//! out in the assertions below.

use std::time::Instant;

use ipath::certify::certify_spectral;
use ipath::dfs::{run, run_with_invariant_checks, verify_induced_path, AlgParams};
use ipath::generators::{self, gen_clique_superimposed, gen_gnp, gen_random_regular};
use ipath::graph::{Graph, GraphPair, VertexSet};
use ipath::oracle::{check_conditions_exact, longest_induced_path_exact, OracleError};
use ipath::ramsey::{
    peel_min_degree, run_ramsey_pipeline, ColorStrategy, PeelOrder, RamseyParams,
};
use ipath::spectral::{alon_boppana_check, compute_lambda, mixing_check};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Edges of `g` among `keep`, left on the original vertex set, so the result
/// is a strict subgraph of `g` with the removed vertices isolated.
fn restrict_edges(g: &Graph, keep: &[u32]) -> Graph {
    let mut member = vec![false; g.vertex_count()];
    for &v in keep {
        member[v as usize] = true;
    }
    let edges: Vec<(u32, u32)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| member[u as usize] && member[v as usize])
        .collect();
    Graph::build(g.vertex_count(), &edges).unwrap()
}

/// Seeded instance mix used by the invariant suite.
fn corpus_pair(seed: u64) -> GraphPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(20..=200);
    let g = match seed % 3 {
        0 => gen_gnp(n, rng.gen_range(0.02..0.2), seed).unwrap(),
        1 => {
            let d = rng.gen_range(3..=8);
            let n = if n * d % 2 == 1 { n + 1 } else { n };
            gen_random_regular(n, d, seed).unwrap()
        }
        _ => {
            let base = gen_gnp(n, 0.05, seed).unwrap();
            let size = rng.gen_range(3..=6);
            let count = (n / size).min(rng.gen_range(2..=8));
            gen_clique_superimposed(&base, count, size, seed).unwrap().0
        }
    };
    if seed.is_multiple_of(2) {
        GraphPair::identical(g)
    } else {
        // G' strictly below G: keep only the edges of a low-degree core.
        let threshold = rng.gen_range(2.0..4.0);
        let peel = peel_min_degree(&g, threshold, PeelOrder::LeastId);
        let g_prime = restrict_edges(&g, &peel.survivors);
        GraphPair::new(g, g_prime).unwrap()
    }
}

#[test]
fn criterion_1_invariant_suite() {
    let start = Instant::now();
    for seed in 0..1000u64 {
        let pair = corpus_pair(seed);
        let n = pair.vertex_count();
        let params = AlgParams::shuffled(n, seed.wrapping_mul(31).wrapping_add(7));
        let result = run_with_invariant_checks(&pair, &params)
            .unwrap_or_else(|e| panic!("criterion 1: FAIL seed {seed}: {e}"));
        assert!(result.rounds <= 2 * n, "criterion 1: FAIL round bound, seed {seed}");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "criterion 1: FAIL runtime {elapsed:?} >= 60 s"
    );
    println!("criterion 1: pass (1000 checked runs, zero violations, {elapsed:?})");
}

#[test]
fn criterion_2_oracle_consistency() {
    for seed in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xace);
        let n = rng.gen_range(6..=16);
        let g = gen_gnp(n, rng.gen_range(0.1..0.5), seed).unwrap();
        let pair = GraphPair::identical(g);
        let result = run(&pair, &AlgParams::shuffled(n, seed)).unwrap();
        let (exact, witness) = longest_induced_path_exact(pair.g(), 24).unwrap();
        assert!(
            result.best_len <= exact,
            "criterion 2: FAIL search beat the oracle on seed {seed}"
        );
        assert!(verify_induced_path(&pair, &result.best_path));
        assert!(verify_induced_path(&pair, &witness));
    }
    // Pinned oracle values (edge counts), frozen from this oracle's output.
    for n in [2usize, 5, 9] {
        let g = generators::complete(n).unwrap();
        assert_eq!(longest_induced_path_exact(&g, 24).unwrap().0, 1);
    }
    assert_eq!(
        longest_induced_path_exact(&generators::cycle(5).unwrap(), 24).unwrap().0,
        3
    );
    assert_eq!(
        longest_induced_path_exact(&generators::petersen(), 24).unwrap().0,
        4
    );
    println!("criterion 2: pass (300 instances; pinned K_n=1, C5=3, Petersen=4)");
}

#[test]
fn criterion_3_certified_instances_end_to_end() {
    // Randomized search for tiny pairs whose exact condition check certifies
    // some (l, s1, s2). On every certified instance the search must reach
    // length l. The harness is exhaustive over the feasible parameter grid;
    // note the averaging bound e_max >= (l+s1+s2)*s1*d/n forces
    // l+s1+s2 < n/4 <= 3.5 on these sizes, so no instance can qualify.
    let mut certified = 0usize;
    let mut examined = 0usize;
    for seed in 0..400u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7e3);
        let n = rng.gen_range(6..=14);
        let g = gen_gnp(n, rng.gen_range(0.1..0.7), seed).unwrap();
        let pair = GraphPair::identical(g);
        for l in 1..=3usize {
            for s1 in 1..=3usize {
                for s2 in 1..=3usize {
                    if s1 + s2 >= n {
                        continue;
                    }
                    examined += 1;
                    let report = match check_conditions_exact(&pair, l, s1, s2) {
                        Ok(r) => r,
                        Err(OracleError::GuardExceeded { .. })
                        | Err(OracleError::BadParams(..)) => continue,
                        Err(e) => panic!("criterion 3: FAIL harness error: {e}"),
                    };
                    if report.both_hold() {
                        certified += 1;
                        let result = run(&pair, &AlgParams::identity(n)).unwrap();
                        assert!(
                            result.best_len >= l,
                            "criterion 3: FAIL certified instance not solved (seed {seed})"
                        );
                    }
                }
            }
        }
    }
    assert!(
        certified >= 25,
        "criterion 3: FAIL only {certified} certified instances found across \
         {examined} parameter checks (an averaging argument over the worst Y \
         shows the conditions are unsatisfiable for any pair with n <= 14 and \
         positive minimum degree, so no corpus of 25 can exist at this size)"
    );
    println!("criterion 3: pass ({certified} certified instances)");
}

#[test]
fn criterion_4_certificate_arithmetic() {
    let d = 1u64 << 36;
    let lambda = (d as f64).powf(0.75) / 200.0;
    let cert = certify_spectral(1usize << 44, d as usize, lambda);
    assert!(cert.overall, "criterion 4: FAIL target-regime certificate");

    let petersen = certify_spectral(10, 3, 2.0f64);
    assert!(!petersen.overall, "criterion 4: FAIL Petersen certificate");

    // Monotonicity over the spectrally feasible range: decreasing lambda
    // never flips overall from true to false.
    let n = 1usize << 40;
    let d = 1usize << 30;
    let lo = ((d as f64) * ((n - d) as f64) / ((n - 1) as f64)).sqrt();
    let hi = (d as f64).powf(0.75) / 100.0;
    let verdicts: Vec<bool> = (0..100)
        .map(|i| certify_spectral(n, d, lo + (hi - lo) * i as f64 / 99.0).overall)
        .collect();
    for w in verdicts.windows(2) {
        assert!(
            !(w[1] && !w[0]),
            "criterion 4: FAIL monotonicity violated in the lambda sweep"
        );
    }
    assert!(verdicts[0], "criterion 4: FAIL sweep floor should certify");
    println!("criterion 4: pass (regime true, Petersen false, 100-point sweep monotone)");
}

#[test]
fn criterion_5_spectral_validation() {
    let report = compute_lambda::<f64>(&generators::petersen()).unwrap();
    assert!(
        (report.lambda - 2.0).abs() <= 1e-8,
        "criterion 5: FAIL Petersen lambda = {}",
        report.lambda
    );

    // 500 generated regular graphs all satisfy the eigenvalue floor.
    let mut checked = 0usize;
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e5);
        let g = match seed % 5 {
            0 => generators::cycle(rng.gen_range(3..=90)).unwrap(),
            1 => generators::complete(rng.gen_range(3..=20)).unwrap(),
            _ => {
                let d = rng.gen_range(3..=9);
                let mut n = rng.gen_range(12..=90);
                if n * d % 2 == 1 {
                    n += 1;
                }
                gen_random_regular(n, d, seed).unwrap()
            }
        };
        let rep = compute_lambda::<f64>(&g).unwrap();
        assert!(
            alon_boppana_check(rep.n, rep.d, rep.lambda),
            "criterion 5: FAIL eigenvalue floor on seed {seed} ({rep:?})"
        );
        checked += 1;
    }
    assert_eq!(checked, 500);

    // Mixing inequality on 500 random set pairs for each of 20 graphs.
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x317);
        let d = rng.gen_range(3..=8);
        let mut n = rng.gen_range(30..=120);
        if n * d % 2 == 1 {
            n += 1;
        }
        let g = gen_random_regular(n, d, seed).unwrap();
        let lambda = compute_lambda::<f64>(&g).unwrap().lambda;
        for _ in 0..500 {
            let a = VertexSet::from_iter(n, (0..n as u32).filter(|_| rng.gen_bool(0.3)));
            let b = VertexSet::from_iter(n, (0..n as u32).filter(|_| rng.gen_bool(0.3)));
            let (lhs, rhs, pass) = mixing_check(&g, lambda, &a, &b);
            assert!(
                pass,
                "criterion 5: FAIL mixing bound on seed {seed}: {lhs} > {rhs}"
            );
        }
    }
    println!("criterion 5: pass (Petersen lambda, 500 floor checks, 20x500 mixing checks)");
}

#[test]
fn criterion_6_tightness_construction() {
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc11);
        let size = rng.gen_range(3..=6);
        let count = rng.gen_range(3..=10);
        let n = size * count;
        let base = gen_gnp(n, rng.gen_range(0.0..0.1), seed).unwrap();
        let (g, cliques) = gen_clique_superimposed(&base, count, size, seed).unwrap();
        let pair = GraphPair::identical(g);
        let result = run(&pair, &AlgParams::shuffled(n, seed)).unwrap();
        assert!(verify_induced_path(&pair, &result.best_path));

        let mut clique_of = vec![usize::MAX; n];
        for (i, c) in cliques.iter().enumerate() {
            for &v in c {
                clique_of[v as usize] = i;
            }
        }
        let mut per_clique = vec![0usize; count];
        for &v in &result.best_path {
            per_clique[clique_of[v as usize]] += 1;
        }
        assert!(
            per_clique.iter().all(|&c| c <= 2),
            "criterion 6: FAIL witness uses >2 vertices of one clique (seed {seed})"
        );
        assert!(
            result.best_len < 2 * count,
            "criterion 6: FAIL length bound (seed {seed})"
        );
    }
    println!("criterion 6: pass (50 fully covered instances, <=2 vertices per clique)");
}

#[test]
fn criterion_7_expander_behaviour_report() {
    let start = Instant::now();
    let n = 50_000usize;
    let mut lines = Vec::new();
    for &d in &[10usize, 20] {
        for seed in 0..10u64 {
            let g = gen_random_regular(n, d, seed).unwrap();
            let pair = GraphPair::identical(g);
            let result = run(&pair, &AlgParams::shuffled(n, seed)).unwrap();
            let target = n as f64 / (32.0 * d as f64);
            let ratio = result.best_len as f64 / target;
            let flag = if ratio < 1.0 { "  [below target]" } else { "" };
            lines.push(format!(
                "  d={d} seed={seed}: best={} target={target:.0} ratio={ratio:.2}{flag}",
                result.best_len
            ));
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 120,
        "criterion 7: FAIL runtime {elapsed:?} >= 2 min"
    );
    println!("criterion 7: pass (report only, {elapsed:?})");
    for line in lines {
        println!("{line}");
    }
}

#[test]
fn criterion_8_linear_work() {
    let mut ratios = Vec::new();
    let mut per_edge = Vec::new();
    for e in 14..=20u32 {
        let n = 1usize << e;
        let g = gen_random_regular(n, 10, 81).unwrap();
        let pair = GraphPair::identical(g);
        let start = Instant::now();
        let result = run(&pair, &AlgParams::identity(n)).unwrap();
        let nanos = start.elapsed().as_nanos();
        let budget_unit = (pair.g().edge_count() + pair.g_prime().edge_count() + n) as f64;
        let ratio = result.work as f64 / budget_unit;
        assert!(
            ratio <= 8.0,
            "criterion 8: FAIL work ratio {ratio:.2} > 8 at n = {n}"
        );
        ratios.push(ratio);
        per_edge.push(nanos as f64 / pair.g().edge_count() as f64);
    }
    let spread = ratios.iter().cloned().fold(f64::MIN, f64::max)
        / ratios.iter().cloned().fold(f64::MAX, f64::min);
    assert!(
        spread <= 2.5,
        "criterion 8: FAIL work-ratio spread {spread:.2} > 2.5 across sizes"
    );
    let time_spread = per_edge.iter().cloned().fold(f64::MIN, f64::max)
        / per_edge.iter().cloned().fold(f64::MAX, f64::min);
    println!(
        "criterion 8: pass (work ratios {:.2?}, spread {spread:.2}; ns/edge spread {time_spread:.2}, reported only)",
        ratios
    );
}

#[test]
fn criterion_9_coloring_pipeline() {
    let n = 20_000usize;
    let mut met = 0usize;
    let mut total = 0usize;
    for &k in &[2usize, 3] {
        for &c in &[6.0f64, 8.0, 12.0] {
            let params = RamseyParams::new(n, k, c).unwrap();
            for seed in 0..20u64 {
                let strategy = if seed % 2 == 0 {
                    ColorStrategy::UniformRandom
                } else {
                    ColorStrategy::AdversarialBalanced
                };
                let report = run_ramsey_pipeline(&params, strategy, seed).unwrap();
                assert!(
                    !report.pipeline_failed,
                    "criterion 9: FAIL empty survivor set (k={k} c={c} seed={seed})"
                );
                assert!(
                    report.checks_passed,
                    "criterion 9: FAIL witness checks (k={k} c={c} seed={seed})"
                );
                assert!(
                    report.survivor_min_deg as f64 >= params.threshold(),
                    "criterion 9: FAIL survivor degree (k={k} c={c} seed={seed})"
                );
                assert!(
                    report.avg_degree_monotone,
                    "criterion 9: FAIL average degree decreased (k={k} c={c} seed={seed})"
                );
                total += 1;
                if report.target_met {
                    met += 1;
                }
            }
        }
    }
    println!(
        "criterion 9: pass ({total} runs clean; target attainment {met}/{total}, recorded not asserted)"
    );
}

//! Modified depth-first search over a pair G' ⊆ G.
//!
//! The search maintains a partition of the vertices into four classes:
//! `T` (untouched), `P` (the current path, kept as a stack), and two discard
//! classes `S1` and `S2`. At every round the path is a path in G' that is
//! induced in G. Each round performs exactly one action:
//!
//! * `StartNewPath` — P is empty; the next σ-vertex still in T is pushed.
//! * `PopToS2` — at least half of the top vertex's G'-neighbours lie in
//!   N_G(P−v); the top is discarded to S2.
//! * `PopToS1` — more than half of its G'-neighbours lie in P ∪ S1 ∪ S2;
//!   the top is discarded to S1.
//! * `Push` — otherwise the σ-least vertex of
//!   N_{G'}(v) \ (S1 ∪ S2 ∪ P ∪ N_G(P−v)) is pushed; this set is nonempty
//!   whenever both pop conditions fail (their counts total at most
//!   d_{G'}(v) − 1).
//!
//! Thresholds are integer-exact: the S2 test is `2*n1 >= deg`, the S1 test
//! `2*n2 > deg`. The strict S1 test keeps a path predecessor (which always
//! sits in P) from discarding every degree-2 vertex on arrival, while the
//! non-strict S2 test sends isolated vertices straight to S2; both readings
//! are sound for the analysis, which only needs "at least d/2" after a
//! discard.
//! Total adjacency work is counted and stays within a fixed constant times
//! e(G) + e(G') + n.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::GraphPair;

const NO_ANCHOR: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RunError {
    #[error("sigma is not a permutation of 0..{0}")]
    BadSigma(usize),
    #[error("target length must be at least 1")]
    BadTarget,
    #[error(
        "internal consistency failure at round {round}: step-4 candidate set \
         empty for vertex {vertex} although both pop conditions fail"
    )]
    EmptyCandidateSet { round: usize, vertex: u32 },
    #[error("observation ({observation}) violated at round {round}: {detail}")]
    InvariantViolation {
        observation: char,
        round: usize,
        detail: String,
    },
}

/// Search parameters: the vertex ordering σ, an optional target path length
/// (edge count) to stop at, and optional diagnostic abort caps on |S1|, |S2|.
#[derive(Debug, Clone)]
pub struct AlgParams {
    sigma: Vec<u32>,
    pub target_len: Option<usize>,
    pub s1_cap: Option<usize>,
    pub s2_cap: Option<usize>,
}

impl AlgParams {
    pub fn new(sigma: Vec<u32>, n: usize) -> Result<Self, RunError> {
        let mut seen = vec![false; n];
        if sigma.len() != n {
            return Err(RunError::BadSigma(n));
        }
        for &v in &sigma {
            if v as usize >= n || seen[v as usize] {
                return Err(RunError::BadSigma(n));
            }
            seen[v as usize] = true;
        }
        Ok(AlgParams {
            sigma,
            target_len: None,
            s1_cap: None,
            s2_cap: None,
        })
    }

    /// Identity ordering.
    pub fn identity(n: usize) -> Self {
        AlgParams {
            sigma: (0..n as u32).collect(),
            target_len: None,
            s1_cap: None,
            s2_cap: None,
        }
    }

    /// Seeded uniform shuffle of the identity ordering.
    pub fn shuffled(n: usize, seed: u64) -> Self {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut sigma: Vec<u32> = (0..n as u32).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        sigma.shuffle(&mut rng);
        AlgParams {
            sigma,
            target_len: None,
            s1_cap: None,
            s2_cap: None,
        }
    }

    pub fn with_target(mut self, target: usize) -> Result<Self, RunError> {
        if target == 0 {
            return Err(RunError::BadTarget);
        }
        self.target_len = Some(target);
        Ok(self)
    }

    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Action {
    StartNewPath,
    PopToS2,
    PopToS1,
    Push,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundEvent {
    pub round: usize,
    pub action: Action,
    pub vertex: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum StopReason {
    TargetReached,
    Exhausted,
    CapHit,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunResult {
    pub best_path: Vec<u32>,
    /// Edge count of `best_path`.
    pub best_len: usize,
    pub rounds: usize,
    pub stop_reason: StopReason,
    pub trace: Option<Vec<RoundEvent>>,
    /// (|S1|, |S2|) at termination.
    pub final_sizes: (usize, usize),
    /// Total adjacency-entry touches, including the σ-cursor scan.
    pub work: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    T,
    P,
    S1,
    S2,
}

struct SearchState<'a> {
    pair: &'a GraphPair,
    label: Vec<Label>,
    stack: Vec<u32>,
    anchor: Vec<u32>,
    /// |N_{G'}(v) ∩ N_G(P−v)| frozen at the moment v was pushed.
    n1: Vec<u32>,
    /// Running count of v's G'-neighbours in P ∪ S1 ∪ S2.
    n2: Vec<u32>,
    /// Step-4 candidates, built once per pushed vertex, consumed lazily.
    cand: Vec<Option<(Vec<u32>, usize)>>,
    sigma_pos: Vec<u32>,
    push_round: Vec<usize>,
    s1_size: usize,
    s2_size: usize,
    work: u64,
}

impl<'a> SearchState<'a> {
    fn new(pair: &'a GraphPair, params: &AlgParams) -> Self {
        let n = pair.vertex_count();
        let mut sigma_pos = vec![0u32; n];
        for (i, &v) in params.sigma.iter().enumerate() {
            sigma_pos[v as usize] = i as u32;
        }
        SearchState {
            pair,
            label: vec![Label::T; n],
            stack: Vec::new(),
            anchor: vec![NO_ANCHOR; n],
            n1: vec![0; n],
            n2: vec![0; n],
            cand: vec![None; n],
            sigma_pos,
            push_round: vec![0; n],
            s1_size: 0,
            s2_size: 0,
            work: 0,
        }
    }

    fn push(&mut self, v: u32, round: usize) {
        self.label[v as usize] = Label::P;
        self.stack.push(v);
        self.push_round[v as usize] = round;
        // Anchor maintenance: v becomes the path neighbour of record for any
        // G-neighbour that had none.
        for &w in self.pair.g().neighbors(v) {
            self.work += 1;
            if self.anchor[w as usize] == NO_ANCHOR {
                self.anchor[w as usize] = v;
            }
        }
        // v enters P ∪ S1 ∪ S2 (exactly once): bump neighbours' n2.
        for &w in self.pair.g_prime().neighbors(v) {
            self.work += 1;
            self.n2[w as usize] += 1;
        }
        // Freeze n1: G'-neighbours inside N_G(P−v) = Γ_G(P−v) \ (P−v).
        // A vertex w lies there iff it is not on the path and its anchor is a
        // path vertex other than v (the anchor is the bottom-most G-neighbour
        // on the path, so anchor == v means no neighbour in P−v).
        let mut n1 = 0u32;
        for &w in self.pair.g_prime().neighbors(v) {
            self.work += 1;
            let a = self.anchor[w as usize];
            if self.label[w as usize] != Label::P && a != NO_ANCHOR && a != v {
                n1 += 1;
            }
        }
        self.n1[v as usize] = n1;
    }

    fn pop(&mut self, v: u32, to: Label) {
        debug_assert_eq!(self.stack.last(), Some(&v));
        self.stack.pop();
        self.label[v as usize] = to;
        match to {
            Label::S1 => self.s1_size += 1,
            Label::S2 => self.s2_size += 1,
            _ => unreachable!(),
        }
        for &w in self.pair.g().neighbors(v) {
            self.work += 1;
            if self.anchor[w as usize] == v {
                self.anchor[w as usize] = NO_ANCHOR;
            }
        }
        self.cand[v as usize] = None;
    }

    /// σ-least vertex of N_{G'}(v) \ (S1 ∪ S2 ∪ P ∪ N_G(P−v)), or None.
    fn next_candidate(&mut self, v: u32) -> Option<u32> {
        if self.cand[v as usize].is_none() {
            let mut list: Vec<u32> = Vec::new();
            for &w in self.pair.g_prime().neighbors(v) {
                self.work += 1;
                if self.is_candidate(w, v) {
                    list.push(w);
                }
            }
            list.sort_unstable_by_key(|&w| self.sigma_pos[w as usize]);
            self.cand[v as usize] = Some((list, 0));
        }
        let (list, cursor) = self.cand[v as usize].as_ref().unwrap();
        let mut cursor = *cursor;
        let mut found = None;
        while cursor < list.len() {
            self.work += 1;
            let w = list[cursor];
            if self.is_candidate(w, v) {
                found = Some(w);
                break;
            }
            // Invalidation is permanent at the rounds where v is on top
            // (the path below v never changes while v is on the stack).
            cursor += 1;
        }
        self.cand[v as usize].as_mut().unwrap().1 = cursor;
        found
    }

    fn is_candidate(&self, w: u32, v: u32) -> bool {
        let a = self.anchor[w as usize];
        self.label[w as usize] == Label::T && (a == NO_ANCHOR || a == v)
    }

    fn deg_prime(&self, v: u32) -> u32 {
        self.pair.g_prime().degree(v) as u32
    }
}

/// Per-round observer used by the invariant-checked mode.
trait Observer {
    fn after_round(&mut self, state: &SearchState, event: RoundEvent) -> Result<(), RunError>;
    fn on_stop(&mut self, state: &SearchState, reason: StopReason) -> Result<(), RunError>;
}

struct NoopObserver;

impl Observer for NoopObserver {
    fn after_round(&mut self, _: &SearchState, _: RoundEvent) -> Result<(), RunError> {
        Ok(())
    }
    fn on_stop(&mut self, _: &SearchState, _: StopReason) -> Result<(), RunError> {
        Ok(())
    }
}

/// Runs the search. Deterministic: identical (pair, params) give identical
/// results including the trace.
pub fn run(pair: &GraphPair, params: &AlgParams) -> Result<RunResult, RunError> {
    run_observed(pair, params, false, &mut NoopObserver)
}

/// Like [`run`] but records the per-round event trace.
pub fn run_traced(pair: &GraphPair, params: &AlgParams) -> Result<RunResult, RunError> {
    run_observed(pair, params, true, &mut NoopObserver)
}

fn run_observed(
    pair: &GraphPair,
    params: &AlgParams,
    record_trace: bool,
    observer: &mut dyn Observer,
) -> Result<RunResult, RunError> {
    let n = pair.vertex_count();
    if params.sigma.len() != n {
        return Err(RunError::BadSigma(n));
    }
    let mut state = SearchState::new(pair, params);
    let mut trace: Option<Vec<RoundEvent>> = record_trace.then(Vec::new);
    let mut best_path: Vec<u32> = Vec::new();
    let mut best_len: usize = 0;
    let mut rounds: usize = 0;
    let mut cursor: usize = 0; // monotone σ-cursor for step 1

    let snapshot = |state: &SearchState, best_path: &mut Vec<u32>, best_len: &mut usize| {
        let len = state.stack.len().saturating_sub(1);
        if len > *best_len || (best_path.is_empty() && !state.stack.is_empty()) {
            *best_len = len;
            best_path.clear();
            best_path.extend_from_slice(&state.stack);
        }
    };

    let stop_reason: StopReason = loop {
        if state.s1_size + state.s2_size == n {
            break StopReason::Exhausted;
        }
        rounds += 1;
        debug_assert!(rounds <= 2 * n, "round bound exceeded");

        let event = if let Some(&v) = state.stack.last() {
            if 2 * state.n1[v as usize] >= state.deg_prime(v) {
                snapshot(&state, &mut best_path, &mut best_len);
                state.pop(v, Label::S2);
                RoundEvent {
                    round: rounds,
                    action: Action::PopToS2,
                    vertex: v,
                }
            } else if 2 * state.n2[v as usize] > state.deg_prime(v) {
                snapshot(&state, &mut best_path, &mut best_len);
                state.pop(v, Label::S1);
                RoundEvent {
                    round: rounds,
                    action: Action::PopToS1,
                    vertex: v,
                }
            } else {
                let u = state
                    .next_candidate(v)
                    .ok_or(RunError::EmptyCandidateSet {
                        round: rounds,
                        vertex: v,
                    })?;
                state.push(u, rounds);
                RoundEvent {
                    round: rounds,
                    action: Action::Push,
                    vertex: u,
                }
            }
        } else {
            // Step 1: next σ-vertex still labelled T. The cursor only moves
            // forward; vertices that left T are skipped.
            while state.label[params.sigma[cursor] as usize] != Label::T {
                state.work += 1;
                cursor += 1;
            }
            state.work += 1;
            let v = params.sigma[cursor];
            state.push(v, rounds);
            RoundEvent {
                round: rounds,
                action: Action::StartNewPath,
                vertex: v,
            }
        };
        if let Some(t) = trace.as_mut() {
            t.push(event);
        }
        observer.after_round(&state, event)?;

        if let Some(target) = params.target_len {
            if state.stack.len().saturating_sub(1) >= target {
                snapshot(&state, &mut best_path, &mut best_len);
                break StopReason::TargetReached;
            }
        }
        let s1_hit = params.s1_cap.is_some_and(|c| state.s1_size >= c);
        let s2_hit = params.s2_cap.is_some_and(|c| state.s2_size >= c);
        if s1_hit || s2_hit {
            snapshot(&state, &mut best_path, &mut best_len);
            break StopReason::CapHit;
        }
    };
    snapshot(&state, &mut best_path, &mut best_len);
    observer.on_stop(&state, stop_reason)?;

    Ok(RunResult {
        best_path,
        best_len,
        rounds,
        stop_reason,
        trace,
        final_sizes: (state.s1_size, state.s2_size),
        work: state.work,
    })
}

/// True iff `path` has distinct in-range vertices, consecutive vertices are
/// adjacent in G', and non-consecutive vertices are non-adjacent in G.
/// Malformed input yields `false`; the empty path and single vertices are
/// vacuously induced paths.
pub fn verify_induced_path(pair: &GraphPair, path: &[u32]) -> bool {
    let n = pair.vertex_count();
    if path.iter().any(|&v| v as usize >= n) {
        return false;
    }
    let mut on_path = vec![false; n];
    for &v in path {
        if on_path[v as usize] {
            return false;
        }
        on_path[v as usize] = true;
    }
    for w in path.windows(2) {
        if !pair.g_prime().has_edge(w[0], w[1]) {
            return false;
        }
    }
    if path.len() < 2 {
        return true;
    }
    // Consecutive pairs are G-edges (G' ⊆ G). Inducedness in G holds iff no
    // further G-edge joins two path vertices, i.e. the total count of
    // path-internal adjacencies is exactly 2 * (|path| - 1).
    let internal: usize = path
        .iter()
        .map(|&v| {
            pair.g()
                .neighbors(v)
                .iter()
                .filter(|&&w| on_path[w as usize])
                .count()
        })
        .sum();
    internal == 2 * (path.len() - 1)
}

// ---------------------------------------------------------------------------
// Invariant-checked mode
// ---------------------------------------------------------------------------

struct CheckingObserver<'a> {
    pair: &'a GraphPair,
    prev_label: Vec<Label>,
    prev_discarded: usize,
    push_round_seen: Vec<Option<usize>>,
    max_rounds: usize,
}

impl<'a> CheckingObserver<'a> {
    fn new(pair: &'a GraphPair) -> Self {
        let n = pair.vertex_count();
        CheckingObserver {
            pair,
            prev_label: vec![Label::T; n],
            prev_discarded: 0,
            push_round_seen: vec![None; n],
            max_rounds: 2 * n,
        }
    }

    fn violation(obs: char, round: usize, detail: String) -> RunError {
        RunError::InvariantViolation {
            observation: obs,
            round,
            detail,
        }
    }
}

impl Observer for CheckingObserver<'_> {
    fn after_round(&mut self, state: &SearchState, event: RoundEvent) -> Result<(), RunError> {
        let round = event.round;
        if round > self.max_rounds {
            return Err(Self::violation(
                'F',
                round,
                format!("more than 2n = {} rounds executed", self.max_rounds),
            ));
        }
        // (A) the stack is a path in G' induced in G.
        if !verify_induced_path(self.pair, &state.stack) {
            return Err(Self::violation(
                'A',
                round,
                format!("stack {:?} is not an induced path", state.stack),
            ));
        }
        // (B) labels only move T -> P -> S1|S2.
        for (v, (&prev, &cur)) in self.prev_label.iter().zip(&state.label).enumerate() {
            let ok = match (prev, cur) {
                (a, b) if a == b => true,
                (Label::T, Label::P) => true,
                (Label::P, Label::S1) | (Label::P, Label::S2) => true,
                _ => false,
            };
            if !ok {
                return Err(Self::violation(
                    'B',
                    round,
                    format!("vertex {v} moved {prev:?} -> {cur:?}"),
                ));
            }
        }
        // (D) at most one vertex entered S1 ∪ S2 this round.
        let discarded = state.s1_size + state.s2_size;
        if discarded > self.prev_discarded + 1 {
            return Err(Self::violation(
                'D',
                round,
                format!(
                    "|S1 ∪ S2| grew from {} to {}",
                    self.prev_discarded, discarded
                ),
            ));
        }
        // (E) an S2 discard happens in the round immediately after the push.
        match event.action {
            Action::StartNewPath | Action::Push => {
                self.push_round_seen[event.vertex as usize] = Some(round);
            }
            Action::PopToS2 => {
                let pushed = self.push_round_seen[event.vertex as usize]
                    .expect("popped vertex was pushed");
                if round != pushed + 1 {
                    return Err(Self::violation(
                        'E',
                        round,
                        format!(
                            "vertex {} moved to S2 in round {round} but was pushed in round {pushed}",
                            event.vertex
                        ),
                    ));
                }
            }
            Action::PopToS1 => {}
        }
        // Anchor correctness, by full rescan: anchor(v) must be the
        // bottom-most G-neighbour of v on the stack, or none.
        let n = self.pair.vertex_count();
        let mut stack_pos = vec![usize::MAX; n];
        for (i, &v) in state.stack.iter().enumerate() {
            stack_pos[v as usize] = i;
        }
        for v in 0..n as u32 {
            let expected = self
                .pair
                .g()
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| stack_pos[w as usize] != usize::MAX)
                .min_by_key(|&w| stack_pos[w as usize]);
            let actual = state.anchor[v as usize];
            let actual = (actual != NO_ANCHOR).then_some(actual);
            if expected != actual {
                return Err(Self::violation(
                    'x',
                    round,
                    format!("anchor of {v} is {actual:?}, expected {expected:?}"),
                ));
            }
        }
        // n2 correctness, by full rescan.
        for v in 0..n as u32 {
            let expected = self
                .pair
                .g_prime()
                .neighbors(v)
                .iter()
                .filter(|&&w| state.label[w as usize] != Label::T)
                .count() as u32;
            if state.n2[v as usize] != expected {
                return Err(Self::violation(
                    'n',
                    round,
                    format!(
                        "n2({v}) = {} but {expected} G'-neighbours are in P ∪ S1 ∪ S2",
                        state.n2[v as usize]
                    ),
                ));
            }
        }
        self.prev_label.copy_from_slice(&state.label);
        self.prev_discarded = discarded;
        Ok(())
    }

    fn on_stop(&mut self, state: &SearchState, reason: StopReason) -> Result<(), RunError> {
        if reason == StopReason::Exhausted
            && state.s1_size + state.s2_size != self.pair.vertex_count()
        {
            return Err(Self::violation(
                'C',
                0,
                format!(
                    "terminated Exhausted with |S1| + |S2| = {} of {}",
                    state.s1_size + state.s2_size,
                    self.pair.vertex_count()
                ),
            ));
        }
        Ok(())
    }
}

/// Identical result to [`run`], but every round is checked against the
/// partition invariants; any violation is a fatal diagnostic naming the
/// observation and round. Intended for test-scale graphs (adds O(n + m)
/// work per round).
pub fn run_with_invariant_checks(
    pair: &GraphPair,
    params: &AlgParams,
) -> Result<RunResult, RunError> {
    let mut checker = CheckingObserver::new(pair);
    run_observed(pair, params, true, &mut checker)
}

// ---------------------------------------------------------------------------
// JSON run report (stable external format)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub n: usize,
    pub m_g: usize,
    pub m_g_prime: usize,
    pub d_min: usize,
    pub sigma_seed: Option<u64>,
    pub target_len: Option<usize>,
    pub best_len: usize,
    pub best_path: Vec<u32>,
    pub rounds: usize,
    pub stop_reason: StopReason,
    pub s1_size: usize,
    pub s2_size: usize,
    pub work_counter: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<RoundEvent>>,
}

impl RunReport {
    pub fn new(pair: &GraphPair, result: &RunResult, sigma_seed: Option<u64>) -> Self {
        RunReport {
            n: pair.vertex_count(),
            m_g: pair.g().edge_count(),
            m_g_prime: pair.g_prime().edge_count(),
            d_min: pair.d_min(),
            sigma_seed,
            target_len: None,
            best_len: result.best_len,
            best_path: result.best_path.clone(),
            rounds: result.rounds,
            stop_reason: result.stop_reason,
            s1_size: result.final_sizes.0,
            s2_size: result.final_sizes.1,
            work_counter: result.work,
            trace: result.trace.clone(),
        }
    }
}

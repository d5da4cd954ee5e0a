//! Rotation-and-booster search for a Hamilton cycle in one color class.
//!
//! A round tries to lengthen the current path through star-edge rotations
//! and extensions. When the rotation closure is exhausted, boosters are
//! scanned in arrival order, each at most once over the whole run, looking
//! for one that joins two endpoints of a rotated path. A closed cycle that
//! misses vertices is reopened through a star edge leaving it.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::process::{Edge, Vertex};

use super::graph::ColorClassGraph;
use super::path::PathState;
use super::rotation::{search, Extension, RotationTree, SearchLimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Close cycles with boosters only, never with star edges.
    pub strict_boosters: bool,
    pub seed: u64,
    /// Cap on second-endpoint searches once boosters run out (non-strict only).
    pub max_secondary_searches: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            strict_boosters: false,
            seed: 0,
            max_secondary_searches: 256,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    /// Fewer than three vertices.
    TooSmall,
    /// No booster (or star closure) closed the final path.
    BoostersExhausted,
    /// A cycle formed with no star edge leaving it.
    Disconnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    HamiltonCycle,
    Failure(FailureReason),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineStats {
    pub rounds: u64,
    pub initial_path_len: usize,
    pub final_path_len: usize,
    pub extensions: u64,
    pub star_closures: u64,
    pub boosters_examined: u64,
    pub boosters_used: u64,
    pub searches: u64,
    pub posa_checks: u64,
    pub posa_violations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleResult {
    pub outcome: Outcome,
    /// Vertex order of the cycle; the closing edge joins last and first.
    pub cycle: Option<Vec<Vertex>>,
    pub stats: EngineStats,
}

impl CycleResult {
    pub fn is_success(&self) -> bool {
        self.outcome == Outcome::HamiltonCycle
    }
}

/// Mutable state of one run: the current path, the booster cursor and the
/// boosters that have been applied.
#[derive(Debug, Clone)]
pub struct RotationState {
    path: PathState,
    cursor: usize,
    applied: HashSet<Edge>,
    strict: bool,
    stats: EngineStats,
}

/// What a booster scan produced.
#[derive(Debug, Clone)]
pub enum BoosterStep {
    /// A path whose two endpoints are joined by an available edge.
    Cycle(PathState),
    /// A star-only extension found while rotating from another endpoint.
    Longer(PathState),
    Exhausted,
}

enum Closed {
    Hamilton(Vec<Vertex>),
    Longer(PathState),
    Stuck,
}

impl RotationState {
    /// Starts from a greedy maximal star path grown at both ends from a
    /// random vertex.
    pub fn new(g: &ColorClassGraph, cfg: &EngineConfig) -> RotationState {
        let n = g.n();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut path = PathState::empty(n);
        if n > 0 {
            path.push(rng.gen_range(0..n as Vertex));
            for _ in 0..2 {
                while let Some(&w) = g
                    .neighbors(path.last().unwrap())
                    .iter()
                    .find(|&&w| !path.contains(w))
                {
                    path.push(w);
                }
                path.reverse();
            }
        }
        let stats = EngineStats {
            initial_path_len: path.len(),
            final_path_len: path.len(),
            ..EngineStats::default()
        };
        RotationState {
            path,
            cursor: 0,
            applied: HashSet::new(),
            strict: cfg.strict_boosters,
            stats,
        }
    }

    pub fn path(&self) -> &PathState {
        &self.path
    }

    /// Index of the next booster to examine.
    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn applied_boosters(&self) -> &HashSet<Edge> {
        &self.applied
    }

    pub fn stats(&self) -> &EngineStats {
        &self.stats
    }

    fn limits(&self) -> SearchLimits {
        SearchLimits {
            stop_at_extension: true,
            stop_at_closure: !self.strict,
        }
    }

    fn record_posa(&mut self, g: &ColorClassGraph, tree: &RotationTree) {
        if let Some(holds) = tree.posa_bound_holds(g) {
            self.stats.posa_checks += 1;
            if !holds {
                self.stats.posa_violations += 1;
            }
            debug_assert!(holds, "Pósa bound violated");
        }
    }

    fn edge_available(&self, g: &ColorClassGraph, a: Vertex, b: Vertex) -> bool {
        g.has_star_edge(a, b) || Edge::new(a, b).is_some_and(|e| self.applied.contains(&e))
    }

    fn close(&mut self, g: &ColorClassGraph, cycle: PathState) -> Closed {
        let n = g.n();
        if cycle.len() == n {
            return Closed::Hamilton(cycle.vertices().to_vec());
        }
        let mut members = cycle.vertices().to_vec();
        members.sort_unstable();
        for x in members {
            if let Some(&w) = g.neighbors(x).iter().find(|&&w| !cycle.contains(w)) {
                let seq = cycle.vertices();
                let i = cycle.position(x).unwrap();
                let mut opened = PathState::empty(n);
                opened.push(w);
                for &v in seq[i..].iter().chain(&seq[..i]) {
                    opened.push(v);
                }
                return Closed::Longer(opened);
            }
        }
        Closed::Stuck
    }
}

fn extend(mut path: PathState, ext: Extension) -> PathState {
    match ext {
        Extension::AtFixed { outside } => {
            path.reverse();
            path.push(outside);
        }
        Extension::AtEndpoint { outside, .. } => path.push(outside),
    }
    path
}

/// Lengthens the path realizing the tree's recorded extension, if any.
pub fn extend_path(tree: &RotationTree) -> Option<PathState> {
    let ext = tree.extension()?;
    let path = match ext {
        Extension::AtFixed { .. } => tree.base().clone(),
        Extension::AtEndpoint { endpoint, .. } => tree.path_to(endpoint)?,
    };
    Some(extend(path, ext))
}

/// Scans boosters from the cursor for one joining `x` and some `y` in
/// `END(x)`, with `x` ranging over the fixed endpoint and `END(fixed)`.
pub fn try_boosters(g: &ColorClassGraph, st: &mut RotationState, tree: &RotationTree) -> BoosterStep {
    let a = tree.fixed();
    let limits = st.limits();
    let mut cache: HashMap<Vertex, RotationTree> = HashMap::new();
    while st.cursor < g.boosters().len() {
        let f = g.boosters()[st.cursor];
        st.cursor += 1;
        st.stats.boosters_examined += 1;
        for (x, y) in [(f.u(), f.v()), (f.v(), f.u())] {
            if !(x == a || tree.contains(x)) || !tree.base().contains(y) {
                continue;
            }
            if x != a && !cache.contains_key(&x) {
                let mut px = tree.path_to(x).expect("x in END");
                px.reverse();
                let (tx, stopped) = search(g, px, limits);
                st.stats.searches += 1;
                if let Some(ext) = tx.extension() {
                    return BoosterStep::Longer(extend(stopped.expect("stopped at extension"), ext));
                }
                if tx.closure().is_some() && !st.strict {
                    return BoosterStep::Cycle(stopped.expect("stopped at closure"));
                }
                st.record_posa(g, &tx);
                cache.insert(x, tx);
            }
            let tx = if x == a { tree } else { &cache[&x] };
            if tx.contains(y) {
                st.applied.insert(f);
                st.stats.boosters_used += 1;
                return BoosterStep::Cycle(tx.path_to(y).expect("y in END(x)"));
            }
        }
    }
    BoosterStep::Exhausted
}

// Star closures through a second fixed endpoint, used once boosters are gone.
fn secondary_closure(g: &ColorClassGraph, st: &mut RotationState, tree: &RotationTree, cap: usize) -> BoosterStep {
    let limits = SearchLimits {
        stop_at_extension: true,
        stop_at_closure: true,
    };
    for &b in tree.endpoints().iter().take(cap) {
        let mut pb = tree.path_to(b).expect("b in END");
        pb.reverse();
        let (tb, stopped) = search(g, pb, limits);
        st.stats.searches += 1;
        if let Some(ext) = tb.extension() {
            return BoosterStep::Longer(extend(stopped.expect("stopped at extension"), ext));
        }
        if tb.closure().is_some() {
            return BoosterStep::Cycle(stopped.expect("stopped at closure"));
        }
        st.record_posa(g, &tb);
    }
    BoosterStep::Exhausted
}

/// Runs rounds until a Hamilton cycle is closed or no progress is possible.
pub fn find_hamilton_cycle(g: &ColorClassGraph, cfg: &EngineConfig) -> CycleResult {
    let n = g.n();
    if n < 3 {
        return CycleResult {
            outcome: Outcome::Failure(FailureReason::TooSmall),
            cycle: None,
            stats: EngineStats::default(),
        };
    }
    let mut st = RotationState::new(g, cfg);
    loop {
        st.stats.rounds += 1;
        debug_assert!(st.path.is_valid_in(g, |a, b| st.edge_available(g, a, b)));
        let before = st.path.len();
        let (tree, stopped) = search(g, st.path.clone(), st.limits());
        st.stats.searches += 1;

        let step = if let Some(ext) = tree.extension() {
            BoosterStep::Longer(extend(stopped.expect("stopped at extension"), ext))
        } else if tree.closure().is_some() && !st.strict {
            st.stats.star_closures += 1;
            BoosterStep::Cycle(stopped.expect("stopped at closure"))
        } else {
            st.record_posa(g, &tree);
            match try_boosters(g, &mut st, &tree) {
                BoosterStep::Exhausted if !st.strict => {
                    secondary_closure(g, &mut st, &tree, cfg.max_secondary_searches)
                }
                other => other,
            }
        };

        let next = match step {
            BoosterStep::Longer(p) => {
                st.stats.extensions += 1;
                p
            }
            BoosterStep::Cycle(c) => match st.close(g, c) {
                Closed::Hamilton(cycle) => {
                    let ok = verify_hamilton_cycle(n, &cycle, |a, b| st.edge_available(g, a, b));
                    assert!(ok, "engine produced an invalid Hamilton cycle");
                    st.stats.final_path_len = n;
                    return CycleResult {
                        outcome: Outcome::HamiltonCycle,
                        cycle: Some(cycle),
                        stats: st.stats,
                    };
                }
                Closed::Longer(p) => p,
                Closed::Stuck => return failure(st, FailureReason::Disconnected),
            },
            BoosterStep::Exhausted => return failure(st, FailureReason::BoostersExhausted),
        };
        debug_assert!(next.len() > before);
        st.path = next;
        st.stats.final_path_len = st.path.len();
    }
}

fn failure(st: RotationState, reason: FailureReason) -> CycleResult {
    CycleResult {
        outcome: Outcome::Failure(reason),
        cycle: None,
        stats: st.stats,
    }
}

/// True when `cycle` lists all `n` vertices once and every consecutive pair,
/// closing pair included, satisfies `has_edge`.
pub fn verify_hamilton_cycle<F>(n: usize, cycle: &[Vertex], has_edge: F) -> bool
where
    F: Fn(Vertex, Vertex) -> bool,
{
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v as usize >= n || seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    (0..n).all(|i| has_edge(cycle[i], cycle[(i + 1) % n]))
}

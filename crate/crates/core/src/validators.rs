//! Post-hoc checks of the structural properties the coloring and the cycle
//! construction rely on. Every check is a pure function of a snapshot.
//!
//! Asymptotic thresholds are evaluated verbatim. When one collapses below 1
//! (or a bound turns negative) at the given `n`, the check is skipped, never
//! passed. Failures carry a witness that has been re-checked against the
//! graph.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{ColoringState, MergedColoring, Rule};
use crate::posa::ColorClassGraph;
use crate::process::{Edge, Vertex};
use crate::thresholds;

/// Offending structure attached to a failed check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: String,
    pub vertices: Vec<Vertex>,
    pub detail: String,
}

impl Witness {
    fn new(kind: &str, vertices: Vec<Vertex>, detail: impl Into<String>) -> Witness {
        Witness {
            kind: kind.to_string(),
            vertices,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail { witness: Witness },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn pass() -> CheckResult {
        CheckResult {
            verdict: Verdict::Pass,
            note: None,
        }
    }

    pub fn fail(witness: Witness) -> CheckResult {
        CheckResult {
            verdict: Verdict::Fail { witness },
            note: None,
        }
    }

    pub fn skipped(reason: impl Into<String>) -> CheckResult {
        CheckResult {
            verdict: Verdict::Skipped {
                reason: reason.into(),
            },
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> CheckResult {
        self.note = Some(note.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        matches!(self.verdict, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self.verdict, Verdict::Fail { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.verdict, Verdict::Skipped { .. })
    }
}

/// Named check results, serialized as a JSON object keyed by check name.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ValidatorReport {
    pub checks: BTreeMap<String, CheckResult>,
}

impl ValidatorReport {
    pub fn insert(&mut self, name: &str, result: CheckResult) {
        self.checks.insert(name.to_string(), result);
    }

    pub fn extend(&mut self, other: ValidatorReport) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.get(name)
    }
}

fn single(name: &str, result: CheckResult) -> ValidatorReport {
    let mut r = ValidatorReport::default();
    r.insert(name, result);
    r
}

fn confirmed(witness: Witness, holds: bool) -> CheckResult {
    assert!(holds, "witness failed re-verification: {witness:?}");
    CheckResult::fail(witness)
}

/// The process graph `G_t` at some time `t`.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: u64,
    adjacency: Vec<Vec<Vertex>>,
}

impl Snapshot {
    pub fn from_edges(n: usize, edges: &[Edge]) -> Snapshot {
        Snapshot::from_adjacency(edges.len() as u64, adjacency_from(n, edges))
    }

    pub fn from_adjacency(t: u64, mut adjacency: Vec<Vec<Vertex>>) -> Snapshot {
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Snapshot { t, adjacency }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v as usize]
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adjacency[a as usize].binary_search(&b).is_ok()
    }
}

fn adjacency_from(n: usize, edges: &[Edge]) -> Vec<Vec<Vertex>> {
    let mut adjacency = vec![Vec::new(); n];
    for e in edges {
        adjacency[e.u() as usize].push(e.v());
        adjacency[e.v() as usize].push(e.u());
    }
    adjacency
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmallClassification {
    /// Real-valued bound; `v` is small iff `d(v) < bound`.
    pub bound: f64,
    pub is_small: Vec<bool>,
    pub small: Vec<Vertex>,
    /// The bound is below 1, so the classification carries no information.
    pub vacuous: bool,
}

impl SmallClassification {
    pub fn is_large(&self, v: Vertex) -> bool {
        !self.is_small[v as usize]
    }
}

/// `SMALL = {v : d(v) < ln n / denominator}`, `denominator = 100 q` by default.
pub fn classify_small(g: &Snapshot, denominator: f64) -> SmallClassification {
    let bound = thresholds::small_bound(g.n(), denominator);
    let vacuous = bound < 1.0;
    let is_small: Vec<bool> = (0..g.n() as Vertex)
        .map(|v| !vacuous && (g.degree(v) as f64) < bound)
        .collect();
    let small = (0..g.n() as Vertex).filter(|&v| is_small[v as usize]).collect();
    SmallClassification {
        bound,
        is_small,
        small,
        vacuous,
    }
}

/// Forbidden small structures: a path of length at most 5 between two small
/// vertices (a single edge included), a 3- or 4-cycle through a small vertex,
/// and, independent of `SMALL`, two distinct triangles sharing a vertex.
pub fn find_small_structures(g: &Snapshot, small: &SmallClassification) -> ValidatorReport {
    let mut report = ValidatorReport::default();
    let near = if small.vacuous {
        CheckResult::skipped(format!("vacuous threshold: ln n / (100 q) = {:.4} < 1", small.bound))
    } else {
        small_near_structures(g, small)
    };
    report.insert("small_structures", near);
    report.insert("triangle_pairs", triangle_pairs(g));
    report
}

fn small_near_structures(g: &Snapshot, small: &SmallClassification) -> CheckResult {
    let n = g.n();
    for &s in &small.small {
        // shortest path to another small vertex within distance 5
        let mut parent = vec![u32::MAX; n];
        let mut dist = vec![u8::MAX; n];
        dist[s as usize] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if dist[x as usize] == 5 {
                continue;
            }
            for &y in g.neighbors(x) {
                if dist[y as usize] != u8::MAX {
                    continue;
                }
                dist[y as usize] = dist[x as usize] + 1;
                parent[y as usize] = x;
                if small.is_small[y as usize] {
                    let mut path = vec![y];
                    let mut cur = y;
                    while cur != s {
                        cur = parent[cur as usize];
                        path.push(cur);
                    }
                    let ok = path.windows(2).all(|w| g.has_edge(w[0], w[1]))
                        && path.len() <= 6
                        && small.is_small[path[0] as usize]
                        && small.is_small[*path.last().unwrap() as usize];
                    let len = path.len() - 1;
                    return confirmed(Witness::new("small-path", path, format!("length {len}")), ok);
                }
                queue.push_back(y);
            }
        }
        // short cycles through s
        let nb = g.neighbors(s);
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if g.has_edge(u, w) {
                    let ok = g.has_edge(s, u) && g.has_edge(s, w);
                    return confirmed(Witness::new("small-c3", vec![s, u, w], "triangle"), ok);
                }
                if let Some(&x) = g.neighbors(u).iter().find(|&&x| x != s && g.has_edge(x, w)) {
                    let ok = g.has_edge(s, u) && g.has_edge(u, x) && g.has_edge(x, w) && g.has_edge(w, s);
                    return confirmed(Witness::new("small-c4", vec![s, u, x, w], "4-cycle"), ok);
                }
            }
        }
    }
    CheckResult::pass()
}

fn triangle_pairs(g: &Snapshot) -> CheckResult {
    let mut tri = Vec::new();
    for v in 0..g.n() as Vertex {
        tri.clear();
        let nb = g.neighbors(v);
        'outer: for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if g.has_edge(u, w) {
                    tri.push((u, w));
                    if tri.len() == 2 {
                        break 'outer;
                    }
                }
            }
        }
        if tri.len() == 2 {
            let (a, b) = (tri[0], tri[1]);
            let ok = [a, b].iter().all(|&(x, y)| g.has_edge(v, x) && g.has_edge(v, y) && g.has_edge(x, y));
            return confirmed(
                Witness::new("triangle-pair", vec![v, a.0, a.1, b.0, b.1], "two triangles through the first vertex"),
                ok && a != b,
            );
        }
    }
    CheckResult::pass()
}

/// For each `k` in `[q - 1, ln n / denominator]`, fewer than `nu_k` vertices
/// have degree exactly `k`.
pub fn degree_tail_check(g: &Snapshot, q: u32, omega: f64, denominator: f64) -> ValidatorReport {
    let upper = thresholds::small_bound(g.n(), denominator);
    let lo = q.saturating_sub(1);
    if upper < lo as f64 {
        return single(
            "degree_tail",
            CheckResult::skipped(format!("vacuous range: [{lo}, {upper:.4}] is empty")),
        );
    }
    let hi = upper.floor() as u32;
    let mut counts = vec![0u64; hi as usize + 1];
    for v in 0..g.n() as Vertex {
        let d = g.degree(v);
        if d <= hi as usize {
            counts[d] += 1;
        }
    }
    for k in lo..=hi {
        let nu = thresholds::nu_k(g.n(), q, k, omega);
        let count = counts[k as usize];
        if count as f64 >= nu {
            let vertices: Vec<Vertex> = (0..g.n() as Vertex).filter(|&v| g.degree(v) == k as usize).collect();
            let ok = vertices.len() as u64 == count;
            return single(
                "degree_tail",
                confirmed(Witness::new("degree-count", vertices, format!("{count} vertices of degree {k}, nu_k = {nu:.3}")), ok),
            );
        }
    }
    single("degree_tail", CheckResult::pass())
}

/// `max d(v) < 20 ln n`.
pub fn max_degree_check(g: &Snapshot) -> ValidatorReport {
    let bound = 20.0 * (g.n() as f64).ln();
    let result = match (0..g.n() as Vertex).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))) {
        Some(v) if g.degree(v) as f64 >= bound => {
            let d = g.degree(v);
            confirmed(Witness::new("vertex", vec![v], format!("degree {d} >= {bound:.2}")), g.neighbors(v).len() == d)
        }
        _ => CheckResult::pass(),
    };
    single("max_degree", result)
}

/// `|C_v| = theta_v` with `theta_v = max(0, q - d(v))`: vertices of degree at
/// least `q` miss no color, degree `q - 1` misses exactly one, and lower
/// degrees have pairwise distinct colors.
pub fn color_list_check(degrees: &[u32], need_masks: &[u32], q: u32) -> ValidatorReport {
    for (v, (&d, &mask)) in degrees.iter().zip(need_masks).enumerate() {
        let theta = q.saturating_sub(d);
        let missing = mask.count_ones();
        if missing != theta {
            return single(
                "color_lists",
                confirmed(
                    Witness::new("vertex", vec![v as Vertex], format!("degree {d}, {missing} colors missing, theta {theta}")),
                    need_masks[v].count_ones() != q.saturating_sub(degrees[v]),
                ),
            );
        }
    }
    single("color_lists", CheckResult::pass())
}

/// Per-vertex, per-internal-color degree counting every edge except those
/// colored by the both-full rule, from the coloring history.
pub fn non_booster_rule_degrees(coloring: &ColoringState) -> Vec<u32> {
    let q = coloring.q() as usize;
    let mut d = vec![0u32; coloring.n() * q];
    for rec in coloring.history() {
        if rec.rule == Rule::BothFull {
            continue;
        }
        let (a, b) = rec.edge.endpoints();
        d[a as usize * q + rec.color.index()] += 1;
        d[b as usize * q + rec.color.index()] += 1;
    }
    d
}

/// Tier 1: every merged star graph has minimum degree at least 2.
/// Tier 2: large vertices have at least `d_full` edges of every internal color
/// outside the both-full rule.
pub fn star_degree_check(
    coloring: &ColoringState,
    classes: &[ColorClassGraph],
    small: &SmallClassification,
) -> ValidatorReport {
    let mut report = ValidatorReport::default();
    let mut tier1 = CheckResult::pass();
    'classes: for (c, g) in classes.iter().enumerate() {
        for v in 0..g.n() as Vertex {
            let d = g.star_degree(v);
            if d < 2 {
                tier1 = confirmed(
                    Witness::new("vertex", vec![v], format!("merged color {c} star degree {d}")),
                    g.neighbors(v).len() < 2,
                );
                break 'classes;
            }
        }
    }
    report.insert("star_degree", tier1);

    let q = coloring.q() as usize;
    let d_full = coloring.d_full();
    let degrees = non_booster_rule_degrees(coloring);
    let mut tier2 = CheckResult::pass();
    'vertices: for v in 0..coloring.n() as Vertex {
        if !small.is_large(v) {
            continue;
        }
        for c in 0..q {
            let d = degrees[v as usize * q + c];
            if d < d_full {
                tier2 = confirmed(
                    Witness::new("vertex", vec![v], format!("internal color {c} degree {d} < {d_full}")),
                    non_booster_rule_degrees(coloring)[v as usize * q + c] < d_full,
                );
                break 'vertices;
            }
        }
    }
    report.insert("color_star_degree", tier2);
    report
}

/// Membership of the full set at time `t`, recomputed from the history.
pub fn full_at(coloring: &ColoringState, t: u64) -> Vec<bool> {
    let q = coloring.q() as usize;
    let mut d = vec![0u32; coloring.n() * q];
    for rec in coloring.history().iter().take_while(|r| r.t <= t) {
        let (a, b) = rec.edge.endpoints();
        d[a as usize * q + rec.color.index()] += 1;
        d[b as usize * q + rec.color.index()] += 1;
    }
    d.chunks_exact(q)
        .map(|row| row.iter().all(|&x| x >= coloring.d_full()))
        .collect()
}

/// `|Full'| >= n - 203 q n / (eps ln n)` and `|Full| >= n - n^exponent`.
pub fn full_size_check(coloring: &ColoringState, exponent: f64) -> ValidatorReport {
    let n = coloring.n();
    let mut report = ValidatorReport::default();
    let prime_bound = thresholds::full_prime_bound(n, coloring.q(), coloring.epsilon());
    let prime = full_at(coloring, coloring.t_eps() / 2);
    let prime_size = prime.iter().filter(|&&x| x).count();
    let prime_result = if prime_bound <= 0.0 {
        CheckResult::skipped(format!("vacuous bound: {prime_bound:.1} <= 0"))
    } else if (prime_size as f64) < prime_bound {
        let outside: Vec<Vertex> = (0..n as Vertex).filter(|&v| !prime[v as usize]).collect();
        let ok = n - outside.len() == prime_size;
        confirmed(Witness::new("complement", outside, format!("|Full'| = {prime_size} < {prime_bound:.1}")), ok)
    } else {
        CheckResult::pass()
    };
    report.insert("full_prime_size", prime_result.with_note(format!("size {prime_size}")));

    let full_result = match coloring.full() {
        None => CheckResult::skipped("Full not frozen"),
        Some(full) => {
            let bound = n as f64 - (n as f64).powf(exponent);
            if (full.len() as f64) < bound {
                let outside: Vec<Vertex> = (0..n as Vertex).filter(|&v| !full.contains(v)).collect();
                let ok = n - outside.len() == full.len();
                confirmed(Witness::new("complement", outside, format!("|Full| = {} < {bound:.1}", full.len())), ok)
            } else {
                CheckResult::pass()
            }
            .with_note(format!("size {}", full.len()))
        }
    };
    report.insert("full_size", full_result);
    report
}

/// Star and booster pools of every merged color hold at least
/// `m_+ = n ln n / (8 q)` edges.
pub fn pool_size_check(merged: &MergedColoring, n: usize) -> ValidatorReport {
    let m_plus = thresholds::m_plus(n, 2 * merged.sigma);
    let sizes: Vec<String> = merged
        .classes
        .iter()
        .map(|c| format!("{}:{}/{}", c.color, c.star.len(), c.boosters.len()))
        .collect();
    let note = format!("m_+ = {m_plus:.1}; star/boosters {}", sizes.join(" "));
    for class in &merged.classes {
        for (pool, len) in [("star", class.star.len()), ("boosters", class.boosters.len())] {
            if (len as f64) < m_plus {
                let w = Witness::new("pool", Vec::new(), format!("merged color {} {pool} pool has {len} edges", class.color));
                return single("pool_size", confirmed(w, (len as f64) < m_plus).with_note(note));
            }
        }
    }
    single("pool_size", CheckResult::pass().with_note(note))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionParams {
    pub alpha: f64,
    pub samples: usize,
    pub seed: u64,
}

fn outer_neighbors(g: &ColorClassGraph, set: &[Vertex], inside: &mut [bool]) -> Vec<Vertex> {
    for &v in set {
        inside[v as usize] = true;
    }
    let mut out = Vec::new();
    let mut seen = vec![];
    for &v in set {
        for &w in g.neighbors(v) {
            if !inside[w as usize] && !seen.contains(&w) {
                seen.push(w);
                out.push(w);
            }
        }
    }
    for &v in set {
        inside[v as usize] = false;
    }
    out
}

fn inner_edges(g: &ColorClassGraph, set: &[Vertex]) -> usize {
    let mut count = 0;
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            if g.has_star_edge(a, b) {
                count += 1;
            }
        }
    }
    count
}

/// Sampled small-set expansion `|N*(S)| >= 2|S|` for `|S| <= max(1, alpha n)`
/// and edge density `e(R) <= 2|R|` on sampled sets with `|R| <= n / (ln n)^3`.
///
/// Sampled sets: every singleton; all pairs of minimum-degree vertices; random
/// sets of sizes on a doubling grid; and sets grown greedily from low-degree
/// vertices, always adding the boundary vertex that keeps `|N*(S)|` smallest.
pub fn expansion_sampler(g: &ColorClassGraph, params: ExpansionParams) -> ValidatorReport {
    let n = g.n();
    let cap = ((params.alpha * n as f64).floor() as usize).clamp(1, n);
    let density_cap = (n as f64 / (n as f64).ln().powi(3)).floor() as usize;
    let mut inside = vec![false; n];
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut tested = 0usize;

    let mut check = |set: &[Vertex], inside: &mut [bool]| -> Option<CheckResult> {
        tested += 1;
        let nb = outer_neighbors(g, set, inside);
        if nb.len() < 2 * set.len() {
            let ok = outer_neighbors(g, set, inside).len() == nb.len();
            let w = Witness::new("expansion", set.to_vec(), format!("|N*(S)| = {} < 2|S| = {}", nb.len(), 2 * set.len()));
            return Some(confirmed(w, ok));
        }
        if set.len() <= density_cap {
            let e = inner_edges(g, set);
            if e > 2 * set.len() {
                let w = Witness::new("density", set.to_vec(), format!("{e} edges inside {} vertices", set.len()));
                return Some(confirmed(w, inner_edges(g, set) == e));
            }
        }
        None
    };

    for v in 0..n as Vertex {
        if let Some(fail) = check(&[v], &mut inside) {
            return single("expansion", fail);
        }
    }
    if cap >= 2 {
        let min_deg = g.min_star_degree();
        let lows: Vec<Vertex> = (0..n as Vertex).filter(|&v| g.star_degree(v) == min_deg).take(256).collect();
        for (i, &a) in lows.iter().enumerate() {
            for &b in &lows[i + 1..] {
                if let Some(fail) = check(&[a, b], &mut inside) {
                    return single("expansion", fail);
                }
            }
        }
        let mut sizes = Vec::new();
        let mut s = 2;
        while s <= cap {
            sizes.push(s);
            s *= 2;
        }
        if sizes.last() != Some(&cap) {
            sizes.push(cap);
        }
        for i in 0..params.samples {
            let size = sizes[i % sizes.len()];
            let set: Vec<Vertex> = sample(&mut rng, n, size).iter().map(|v| v as Vertex).collect();
            if let Some(fail) = check(&set, &mut inside) {
                return single("expansion", fail);
            }
        }
        let mut order: Vec<Vertex> = (0..n as Vertex).collect();
        order.sort_by_key(|&v| (g.star_degree(v), v));
        let starts = order.len().min(params.samples.clamp(1, 64));
        for &start in &order[..starts] {
            let mut set = vec![start];
            while set.len() < cap {
                let boundary = outer_neighbors(g, &set, &mut inside);
                let best = boundary.iter().copied().min_by_key(|&u| {
                    set.push(u);
                    let size = outer_neighbors(g, &set, &mut inside).len();
                    set.pop();
                    (size, u)
                });
                match best {
                    Some(u) => set.push(u),
                    None => break,
                }
                if let Some(fail) = check(&set, &mut inside) {
                    return single("expansion", fail);
                }
            }
        }
    } else {
        let _ = rng.gen::<u64>();
    }
    single(
        "expansion",
        CheckResult::pass().with_note(format!("{tested} sets, size cap {cap}")),
    )
}

/// The star graph is connected.
pub fn connectivity_check(g: &ColorClassGraph) -> ValidatorReport {
    single("connectivity", connectivity_result(g, None))
}

fn connectivity_result(g: &ColorClassGraph, color: Option<usize>) -> CheckResult {
    let n = g.n();
    let mut comp = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    for s in 0..n as Vertex {
        if comp[s as usize] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        comp[s as usize] = id;
        let mut stack = vec![s];
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            for &y in g.neighbors(x) {
                if comp[y as usize] == u32::MAX {
                    comp[y as usize] = id;
                    stack.push(y);
                }
            }
        }
        sizes.push(size);
    }
    if sizes.len() <= 1 {
        return CheckResult::pass();
    }
    // report the smallest component
    let id = (0..sizes.len()).min_by_key(|&i| (sizes[i], i)).unwrap() as u32;
    let members: Vec<Vertex> = (0..n as Vertex).filter(|&v| comp[v as usize] == id).collect();
    let closed = members
        .iter()
        .all(|&v| g.neighbors(v).iter().all(|&w| comp[w as usize] == id));
    let label = color.map(|c| format!("merged color {c}: ")).unwrap_or_default();
    confirmed(
        Witness::new("component", members, format!("{label}{} components", sizes.len())),
        closed && members_len_ok(&sizes, id),
    )
}

fn members_len_ok(sizes: &[usize], id: u32) -> bool {
    sizes[id as usize] > 0 && sizes.len() > 1
}

/// Connectivity of every merged star graph.
pub fn connectivity_all(classes: &[ColorClassGraph]) -> ValidatorReport {
    for (c, g) in classes.iter().enumerate() {
        let r = connectivity_result(g, Some(c));
        if !r.is_pass() {
            return single("connectivity", r);
        }
    }
    single("connectivity", CheckResult::pass())
}

/// Growth after `t_eps`: (a) no vertex outside `Full` gains at least
/// `eps ln n / 200` edges after `t_eps` with at most `eps ln n / 400` of them
/// to `Full`; (b) no large vertex gains fewer than `eps ln n / 200`.
pub fn post_teps_degree_check(
    coloring: &ColoringState,
    edges: &[Edge],
    snapshot_t: u64,
    small: &SmallClassification,
) -> ValidatorReport {
    let n = coloring.n();
    let ln = (n as f64).ln();
    let eps = coloring.epsilon();
    let (grow, to_full) = (eps * ln / 200.0, eps * ln / 400.0);
    let mut report = ValidatorReport::default();
    let t_eps = coloring.t_eps();
    let full = match coloring.full() {
        Some(f) if grow >= 1.0 && snapshot_t > t_eps => f,
        Some(_) if snapshot_t <= t_eps => {
            report.insert("post_teps_full_edges", CheckResult::skipped("snapshot precedes t_eps"));
            report.insert("post_teps_large_growth", CheckResult::skipped("snapshot precedes t_eps"));
            return report;
        }
        None => {
            report.insert("post_teps_full_edges", CheckResult::skipped("Full not frozen"));
            report.insert("post_teps_large_growth", CheckResult::skipped("Full not frozen"));
            return report;
        }
        Some(_) => {
            let reason = format!("vacuous threshold: eps ln n / 200 = {grow:.4} < 1");
            report.insert("post_teps_full_edges", CheckResult::skipped(reason.clone()));
            report.insert("post_teps_large_growth", CheckResult::skipped(reason));
            return report;
        }
    };
    let late = &edges[t_eps as usize..snapshot_t as usize];
    let mut gained = vec![0u32; n];
    let mut gained_full = vec![0u32; n];
    for e in late {
        let (a, b) = e.endpoints();
        gained[a as usize] += 1;
        gained[b as usize] += 1;
        if full.contains(b) {
            gained_full[a as usize] += 1;
        }
        if full.contains(a) {
            gained_full[b as usize] += 1;
        }
    }
    let a_result = (0..n as Vertex)
        .find(|&v| !full.contains(v) && gained[v as usize] as f64 >= grow && gained_full[v as usize] as f64 <= to_full)
        .map(|v| {
            let w = Witness::new(
                "vertex",
                vec![v],
                format!("{} late edges, {} to Full", gained[v as usize], gained_full[v as usize]),
            );
            confirmed(w, !full.contains(v))
        })
        .unwrap_or_else(CheckResult::pass);
    let b_result = (0..n as Vertex)
        .find(|&v| small.is_large(v) && (gained[v as usize] as f64) < grow)
        .map(|v| {
            let w = Witness::new("vertex", vec![v], format!("{} late edges", gained[v as usize]));
            confirmed(w, small.is_large(v))
        })
        .unwrap_or_else(CheckResult::pass);
    report.insert("post_teps_full_edges", a_result);
    report.insert("post_teps_large_growth", b_result);
    report
}

/// Smallest `n` at which the hitting-time window is asserted.
pub const WINDOW_MIN_N: usize = 10_000;

/// `m <= tau <= m + 2 omega n`.
pub fn hitting_window_check(tau: u64, n: usize, q: u32, omega: f64) -> ValidatorReport {
    let (lo, hi) = (thresholds::m_edges(n, q, omega), thresholds::m_upper(n, q, omega));
    let note = format!("window [{lo}, {hi}], tau {tau}");
    let result = if n < WINDOW_MIN_N {
        CheckResult::skipped(format!("n < {WINDOW_MIN_N}"))
    } else if tau < lo || tau > hi {
        confirmed(Witness::new("tau", Vec::new(), note.clone()), tau < lo || tau > hi)
    } else {
        CheckResult::pass()
    };
    single("hitting_window", result.with_note(note))
}

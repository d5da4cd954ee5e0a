use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coloring::{ColoredEdge, ColoringState, MergedColoring, Pool};
use crate::error::{Error, Result};
use crate::posa::{find_hamilton_cycle, ColorClassGraph, EngineConfig, EngineStats, FailureReason, Outcome};
use crate::process::{hitting_time, Edge, EdgeStream, ProcessState, Vertex};
use crate::thresholds;
use crate::validators::{self, ExpansionParams, Snapshot, ValidatorReport};

use super::config::{TrialConfig, ValidationLevel};
use super::seeds::TrialSeeds;

const NEED_SPOT_CHECK_EVERY: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColorReport {
    pub color: usize,
    pub success: bool,
    pub rounds: u64,
    pub boosters_used: u64,
    pub boosters_available: usize,
    pub star_edges: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureReason>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checksum: Option<String>,
    pub stats: EngineStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub coloring: f64,
    pub engine: f64,
    pub validators: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: u64,
    pub seed: u64,
    pub n: usize,
    pub sigma: u32,
    pub epsilon: f64,
    pub tau: u64,
    pub tau_normalized: f64,
    pub full_success: bool,
    pub colors: Vec<ColorReport>,
    pub full_size: usize,
    pub t_eps: u64,
    pub eps_too_large: bool,
    /// Online invariants checked while the trial ran, by name.
    pub invariants: BTreeMap<String, bool>,
    pub validators: ValidatorReport,
    pub seeds: TrialSeeds,
    pub timings_ms: Option<Timings>,
}

impl TrialReport {
    pub fn invariants_hold(&self) -> bool {
        self.invariants.values().all(|&ok| ok)
    }
}

/// Raw data of a trial, kept only on request.
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub edges: Vec<Edge>,
    pub history: Vec<ColoredEdge>,
    pub cycles: Vec<(usize, Vec<Vertex>)>,
}

#[derive(Debug, Clone)]
pub struct TrialOutput {
    pub report: TrialReport,
    pub artifacts: Option<Artifacts>,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Position-independent fingerprint of a cycle: FNV-1a over the vertex order
/// started at vertex 0 and walked towards its smaller neighbor.
pub fn cycle_checksum(cycle: &[Vertex]) -> String {
    let n = cycle.len();
    let start = cycle.iter().position(|&v| v == 0).unwrap_or(0);
    let forward = cycle[(start + 1) % n] < cycle[(start + n - 1) % n];
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for i in 0..n {
        let idx = if forward { (start + i) % n } else { (start + n - i) % n };
        for b in cycle[idx].to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("{h:016x}")
}

struct Colored {
    edges: Vec<Edge>,
    coloring: ColoringState,
    tau: u64,
    snapshot_t: u64,
    snapshot_needs: Vec<u32>,
    invariants: BTreeMap<String, bool>,
}

/// Streams edges, colors them online and stops at the min-degree-`q` hitting
/// time, checking the online invariants as it goes.
fn stream_and_color(cfg: &TrialConfig, seeds: &TrialSeeds, omega: f64) -> Result<Colored> {
    let n = cfg.n;
    let q = cfg.q();
    let checking = cfg.validate != ValidationLevel::Off;
    let mut stream = EdgeStream::new(n, seeds.process, cfg.stream_mode())?;
    let mut process = ProcessState::new(n, q);
    let mut coloring = ColoringState::new(n, cfg.sigma, cfg.epsilon, seeds.coloring)?;
    if let Some(d) = cfg.d_full {
        coloring = coloring.with_d_full(d)?;
    }
    let t_eps = coloring.t_eps();
    let m = thresholds::m_edges(n, q, omega);
    let mut edges = Vec::new();
    let mut snapshot_needs = None;
    let (mut need_monotone, mut plus_in_full, mut need_lists) = (true, true, true);

    if t_eps == 0 {
        coloring.freeze_full()?;
    }
    let tau = loop {
        let e = stream.next().ok_or(Error::ExhaustedStream {
            emitted: stream.emitted(),
            k: q,
        })?;
        process.apply_edge(e)?;
        edges.push(e);
        let t = edges.len() as u64;
        let before = coloring.total_need();
        let (_, pool) = coloring.color_edge(e, t)?;
        need_monotone &= coloring.total_need() <= before;
        if pool == Pool::Plus {
            let full = coloring.full().expect("plus edges only after the freeze");
            plus_in_full &= full.contains(e.u()) && full.contains(e.v());
        }
        if checking && t % NEED_SPOT_CHECK_EVERY == 0 {
            need_lists &= coloring.check_need_lists().is_none();
        }
        if t == t_eps {
            coloring.freeze_full()?;
        }
        if t == m {
            snapshot_needs = Some(coloring.need_masks().to_vec());
        }
        if process.min_degree_reached() {
            break t;
        }
    };
    if coloring.full().is_none() {
        coloring.freeze_full_early()?;
    }
    if checking {
        need_lists &= coloring.check_need_lists().is_none();
    }
    let mut invariants = BTreeMap::new();
    invariants.insert("need_monotone".to_string(), need_monotone);
    invariants.insert("plus_endpoints_full".to_string(), plus_in_full);
    if checking {
        invariants.insert("need_lists".to_string(), need_lists);
        let recomputed = hitting_time(n, edges.iter().copied(), q)?;
        invariants.insert("hitting_time_minimal".to_string(), recomputed == tau);
    }
    let snapshot_t = m.min(tau);
    Ok(Colored {
        snapshot_needs: snapshot_needs.unwrap_or_else(|| coloring.need_masks().to_vec()),
        edges,
        coloring,
        tau,
        snapshot_t,
        invariants,
    })
}

/// Checks that the pools partition the edge set, internal and merged.
fn partition_holds(colored: &Colored, merged: &MergedColoring) -> bool {
    let c = &colored.coloring;
    let internal: usize = (0..c.q() as u8)
        .map(|i| {
            let id = crate::coloring::ColorId(i);
            c.star_pool(id).len() + c.plus_pool(id).len()
        })
        .sum();
    let mut seen = HashSet::with_capacity(colored.edges.len());
    let distinct = merged
        .classes
        .iter()
        .flat_map(|k| k.star.iter().chain(&k.boosters))
        .all(|&e| seen.insert(e));
    let raw: HashSet<Edge> = colored.edges.iter().copied().collect();
    internal == colored.edges.len()
        && merged.total_edges() == colored.edges.len()
        && distinct
        && seen == raw
}

/// Re-verifies a cycle against the raw edge set of its class.
fn cycle_in_class(n: usize, cycle: &[Vertex], class_edges: &HashSet<Edge>) -> bool {
    crate::posa::verify_hamilton_cycle(n, cycle, |a, b| {
        Edge::new(a, b).is_some_and(|e| class_edges.contains(&e))
    })
}

fn cycle_edges(cycle: &[Vertex]) -> impl Iterator<Item = Edge> + '_ {
    (0..cycle.len()).map(move |i| Edge::of(cycle[i], cycle[(i + 1) % cycle.len()]))
}

pub fn run_trial(cfg: &TrialConfig, trial: u64) -> Result<TrialOutput> {
    cfg.validate()?;
    let n = cfg.n;
    let q = cfg.q();
    let seeds = TrialSeeds::derive(cfg.seed, trial, cfg.sigma);
    let omega = cfg.omega.unwrap_or_else(|| thresholds::default_omega(n));

    let start = Instant::now();
    let mut colored = stream_and_color(cfg, &seeds, omega)?;
    let merged = colored.coloring.merge_colors();
    let partition = partition_holds(&colored, &merged);
    colored.invariants.insert("pool_partition".to_string(), partition);
    let coloring_ms = ms(start);

    let start = Instant::now();
    let mut graphs = Vec::with_capacity(merged.classes.len());
    let mut colors = Vec::with_capacity(merged.classes.len());
    let mut cycles = Vec::new();
    let mut used_edges: HashSet<Edge> = HashSet::new();
    let mut disjoint = true;
    for (class, &engine_seed) in merged.classes.iter().zip(&seeds.engine) {
        let g = ColorClassGraph::new(n, &class.star, &class.boosters)?;
        let engine_cfg = EngineConfig {
            strict_boosters: cfg.strict_boosters,
            seed: engine_seed,
            max_secondary_searches: cfg.max_secondary_searches,
        };
        let result = find_hamilton_cycle(&g, &engine_cfg);
        let mut success = false;
        let mut checksum = None;
        if let Some(cycle) = &result.cycle {
            let class_edges: HashSet<Edge> = class.star.iter().chain(&class.boosters).copied().collect();
            let verified = cycle_in_class(n, cycle, &class_edges);
            for e in cycle_edges(cycle) {
                disjoint &= used_edges.insert(e);
            }
            success = verified && result.outcome == Outcome::HamiltonCycle;
            checksum = Some(cycle_checksum(cycle));
            cycles.push((class.color, cycle.clone()));
        }
        colors.push(ColorReport {
            color: class.color,
            success,
            rounds: result.stats.rounds,
            boosters_used: result.stats.boosters_used,
            boosters_available: class.boosters.len(),
            star_edges: class.star.len(),
            failure: match result.outcome {
                Outcome::Failure(reason) => Some(reason),
                Outcome::HamiltonCycle => None,
            },
            checksum,
            stats: result.stats,
        });
        graphs.push(g);
    }
    colored.invariants.insert("cycles_edge_disjoint".to_string(), disjoint);
    if !disjoint {
        for c in &mut colors {
            c.success = false;
        }
    }
    let engine_ms = ms(start);

    let start = Instant::now();
    let validators = match cfg.validate {
        ValidationLevel::Off => ValidatorReport::default(),
        level => run_validators(cfg, &colored, &merged, &graphs, &seeds, omega, level),
    };
    let validators_ms = ms(start);

    let c = &colored.coloring;
    let report = TrialReport {
        trial,
        seed: seeds.trial,
        n,
        sigma: cfg.sigma,
        epsilon: cfg.epsilon,
        tau: colored.tau,
        tau_normalized: colored.tau as f64 / thresholds::tau_scale(n, q),
        full_success: colors.iter().all(|c| c.success),
        colors,
        full_size: c.full().map_or(0, |f| f.len()),
        t_eps: c.t_eps(),
        eps_too_large: c.eps_too_large(),
        invariants: colored.invariants.clone(),
        validators,
        seeds,
        timings_ms: cfg.timings.then_some(Timings {
            coloring: coloring_ms,
            engine: engine_ms,
            validators: validators_ms,
        }),
    };
    let artifacts = cfg.keep_artifacts.then(|| Artifacts {
        edges: colored.edges.clone(),
        history: colored.coloring.history().to_vec(),
        cycles,
    });
    Ok(TrialOutput { report, artifacts })
}

fn run_validators(
    cfg: &TrialConfig,
    colored: &Colored,
    merged: &MergedColoring,
    graphs: &[ColorClassGraph],
    seeds: &TrialSeeds,
    omega: f64,
    level: ValidationLevel,
) -> ValidatorReport {
    let n = cfg.n;
    let q = cfg.q();
    let coloring = &colored.coloring;
    let snapshot = Snapshot::from_edges(n, &colored.edges[..colored.snapshot_t as usize]);
    let denominator = cfg.small_denominator.unwrap_or(100.0 * q as f64);
    let small = validators::classify_small(&snapshot, denominator);

    let mut report = ValidatorReport::default();
    report.extend(validators::star_degree_check(coloring, graphs, &small));
    report.extend(validators::connectivity_all(graphs));
    if level == ValidationLevel::Fast {
        return report;
    }
    report.extend(validators::find_small_structures(&snapshot, &small));
    report.extend(validators::degree_tail_check(&snapshot, q, omega, denominator));
    report.extend(validators::max_degree_check(&snapshot));
    let degrees: Vec<u32> = (0..n as Vertex).map(|v| snapshot.degree(v) as u32).collect();
    report.extend(validators::color_list_check(&degrees, &colored.snapshot_needs, q));
    report.extend(validators::full_size_check(coloring, cfg.delta_exponent));
    report.extend(validators::pool_size_check(merged, n));
    report.extend(validators::post_teps_degree_check(coloring, &colored.edges, colored.snapshot_t, &small));
    report.extend(validators::hitting_window_check(colored.tau, n, q, omega));

    let alpha = cfg.expansion_alpha.unwrap_or_else(|| thresholds::expansion_alpha(q));
    let mut expansion = None;
    let mut notes = Vec::new();
    for (c, g) in graphs.iter().enumerate() {
        let params = ExpansionParams {
            alpha,
            samples: cfg.expansion_samples,
            seed: seeds.validators.wrapping_add(c as u64),
        };
        let mut r = validators::expansion_sampler(g, params).checks.remove("expansion").unwrap();
        if let Some(note) = r.note.take() {
            notes.push(format!("color {c}: {note}"));
        }
        if !r.is_pass() {
            expansion = Some(r.with_note(format!("merged color {c}")));
            break;
        }
    }
    report.insert(
        "expansion",
        expansion.unwrap_or_else(|| validators::CheckResult::pass().with_note(notes.join("; "))),
    );
    report
}

//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exact criteria (1, 2, 3, 7) decide the exit status. Calibrated Monte Carlo
//! criteria (4, 5, 6) are evaluated at the pinned tolerances and reported.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use hamcol::coloring::Pool;
use hamcol::harness::{run_experiment, run_trial, ExperimentConfig, TrialConfig, TrialOutput, TrialSeeds, ValidationLevel};
use hamcol::posa::{brute_force_hamilton, find_hamilton_cycle, ColorClassGraph, EngineConfig, PathState};
use hamcol::process::{hitting_time, Edge, EdgeStream, StreamMode, Vertex};
use hamcol::thresholds;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MASTER_SEED: u64 = 0;

struct Line {
    id: u32,
    pass: bool,
    exact: bool,
}

fn report(id: u32, exact: bool, pass: bool, detail: String) -> Line {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id}: {verdict} | {detail}");
    Line { id, pass, exact }
}

fn trial_cfg(n: usize, sigma: u32, validate: ValidationLevel) -> TrialConfig {
    TrialConfig {
        n,
        sigma,
        seed: MASTER_SEED,
        validate,
        ..TrialConfig::default()
    }
}

/// Independent re-check of one trial from its raw artifacts.
fn soundness_errors(cfg: &TrialConfig, out: &TrialOutput) -> Vec<String> {
    let mut errs = Vec::new();
    let r = &out.report;
    let a = out.artifacts.as_ref().expect("artifacts");
    let (n, q, sigma) = (cfg.n, cfg.q() as usize, cfg.sigma as usize);

    // hitting-time minimality
    match hitting_time(n, a.edges.iter().copied(), q as u32) {
        Ok(tau) if tau == r.tau && tau as usize == a.edges.len() => {}
        other => errs.push(format!("tau {} vs recomputed {other:?}", r.tau)),
    }

    // Full at the freeze time, plus endpoints in Full
    let mut deg = vec![0u32; n * q];
    let freeze_t = if r.tau > r.t_eps { r.t_eps } else { r.tau - 1 };
    let d_full = cfg.d_full.unwrap_or_else(|| thresholds::d_full(n, q as u32, cfg.epsilon));
    let mut full: Option<Vec<bool>> = None;
    let freeze = |deg: &[u32]| -> Vec<bool> { deg.chunks_exact(q).map(|row| row.iter().all(|&d| d >= d_full)).collect() };
    if freeze_t == 0 {
        full = Some(freeze(&deg));
    }
    for rec in &a.history {
        let c = rec.color.index();
        for x in [rec.edge.u(), rec.edge.v()] {
            deg[x as usize * q + c] += 1;
        }
        if rec.pool == Pool::Plus {
            let ok = full.as_ref().is_some_and(|f| f[rec.edge.u() as usize] && f[rec.edge.v() as usize]);
            if !ok {
                errs.push(format!("plus edge {} with an endpoint outside Full", rec.edge));
            }
        }
        if rec.t == freeze_t {
            full = Some(freeze(&deg));
        }
    }

    // pool partition
    let colored: HashSet<Edge> = a.history.iter().map(|h| h.edge).collect();
    let raw: HashSet<Edge> = a.edges.iter().copied().collect();
    if colored != raw || a.history.len() != a.edges.len() {
        errs.push("colored edges do not partition the process edges".into());
    }

    // cycles: Hamiltonian, monochromatic, pairwise edge-disjoint
    let mut class_of = std::collections::HashMap::with_capacity(a.history.len());
    for h in &a.history {
        class_of.insert(h.edge, h.color.index() % sigma);
    }
    let mut used = HashSet::new();
    for (color, cycle) in &a.cycles {
        let distinct: BTreeSet<Vertex> = cycle.iter().copied().collect();
        if cycle.len() != n || distinct.len() != n || distinct.iter().next_back() != Some(&(n as Vertex - 1)) {
            errs.push(format!("color {color}: cycle is not a vertex permutation"));
        }
        for i in 0..cycle.len() {
            let e = Edge::of(cycle[i], cycle[(i + 1) % cycle.len()]);
            if class_of.get(&e) != Some(color) {
                errs.push(format!("color {color}: edge {e} not in the class"));
            }
            if !used.insert(e) {
                errs.push(format!("edge {e} shared by two cycles"));
            }
        }
    }
    for c in &r.colors {
        let has_cycle = a.cycles.iter().any(|(k, _)| *k == c.color);
        if c.success != has_cycle {
            errs.push(format!("color {}: success flag disagrees with the cycle", c.color));
        }
    }
    if !r.invariants_hold() {
        errs.push(format!("online invariants {:?}", r.invariants));
    }
    errs
}

fn criterion_1() -> (Line, u64) {
    let plan = [(256, 2, 20), (256, 3, 20), (1024, 2, 20), (1024, 3, 20), (4096, 2, 10), (4096, 3, 10)];
    let (mut trials, mut cycles, mut posa_violations) = (0, 0, 0);
    let mut errors = Vec::new();
    for (n, sigma, count) in plan {
        let mut cfg = trial_cfg(n, sigma, ValidationLevel::Fast);
        cfg.keep_artifacts = true;
        for i in 0..count {
            let out = run_trial(&cfg, i).expect("trial");
            trials += 1;
            cycles += out.artifacts.as_ref().unwrap().cycles.len();
            posa_violations += out.report.colors.iter().map(|c| c.stats.posa_violations).sum::<u64>();
            for e in soundness_errors(&cfg, &out) {
                errors.push(format!("n={n} sigma={sigma} trial {i}: {e}"));
            }
        }
    }
    let detail = format!(
        "{trials} trials, {cycles} cycles re-verified, {} violations{}",
        errors.len(),
        errors.first().map(|e| format!(" (first: {e})")).unwrap_or_default()
    );
    (report(1, true, errors.is_empty() && trials == 100, detail), posa_violations)
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<Edge> {
    let mut edges = Vec::new();
    for a in 0..n as Vertex {
        for b in a + 1..n as Vertex {
            if rng.gen_bool(p) {
                edges.push(Edge::of(a, b));
            }
        }
    }
    edges
}

fn adjacency(n: usize, edges: &[Edge]) -> Vec<Vec<Vertex>> {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.u() as usize].push(e.v());
        adj[e.v() as usize].push(e.u());
    }
    adj
}

fn criterion_2() -> (Line, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED);
    let (mut instances, mut unsound, mut eligible, mut solved, mut violations) = (0, 0, 0, 0, 0);
    while instances < 500 {
        let n = rng.gen_range(5..=12);
        let p = rng.gen_range(0.25..0.6);
        let edges = random_graph(&mut rng, n, p);
        let adj = adjacency(n, &edges);
        if adj.iter().any(|l| l.len() < 2) {
            continue;
        }
        instances += 1;
        let g = ColorClassGraph::star_only(n, &edges).unwrap();
        let result = find_hamilton_cycle(&g, &EngineConfig { seed: instances, ..EngineConfig::default() });
        violations += result.stats.posa_violations;
        let oracle = brute_force_hamilton(&adj).unwrap();
        if result.is_success() && oracle.is_none() {
            unsound += 1;
        }
        if oracle.is_some() && g.is_star_connected() {
            eligible += 1;
            solved += result.is_success() as u32;
        }
    }
    let mut petersen = Vec::new();
    for i in 0..5u32 {
        petersen.extend([Edge::of(i, (i + 1) % 5), Edge::of(i, i + 5), Edge::of(5 + i, 5 + (i + 2) % 5)]);
    }
    let pg = ColorClassGraph::star_only(10, &petersen).unwrap();
    let petersen_engine = find_hamilton_cycle(&pg, &EngineConfig::default());
    let petersen_oracle = brute_force_hamilton(&adjacency(10, &petersen)).unwrap();
    violations += petersen_engine.stats.posa_violations;
    let rate = solved as f64 / eligible as f64;
    let pass = unsound == 0 && rate >= 0.95 && !petersen_engine.is_success() && petersen_oracle.is_none();
    let detail = format!(
        "{instances} graphs: {unsound} unconfirmed successes; solved {solved}/{eligible} = {rate:.3} (need >= 0.95); \
         Petersen engine success {}, oracle cycle {}",
        petersen_engine.is_success(),
        petersen_oracle.is_some()
    );
    (report(2, true, pass, detail), violations)
}

fn criterion_3(other_violations: u64, other_checks: &str) -> Line {
    let example = [(1, 2), (2, 3), (3, 4), (4, 5), (2, 5)].map(|(a, b)| Edge::of(a, b));
    let g = ColorClassGraph::star_only(6, &example).unwrap();
    let mut p = PathState::from_vertices(6, &[1, 2, 3, 4, 5]).unwrap();
    let example_ok = p.rotate(&g, 1).is_ok() && p.vertices() == [1, 2, 5, 4, 3];

    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED);
    let mut applications = 0;
    let mut involution_ok = true;
    while applications < 1000 {
        let n = rng.gen_range(6..40);
        let edges = random_graph(&mut rng, n, 0.3);
        let g = ColorClassGraph::star_only(n, &edges).unwrap();
        // greedy path from a random start
        let mut path = PathState::empty(n);
        path.push(rng.gen_range(0..n as Vertex));
        while let Some(&w) = g.neighbors(path.last().unwrap()).iter().find(|&&w| !path.contains(w)) {
            path.push(w);
        }
        let k = path.len();
        if k < 4 {
            continue;
        }
        let last = path.last().unwrap();
        let pivots: Vec<usize> = (1..=k - 3).filter(|&j| g.has_star_edge(path.vertices()[j], last)).collect();
        if pivots.is_empty() {
            continue;
        }
        let j = pivots[rng.gen_range(0..pivots.len())];
        let before = path.clone();
        involution_ok &= path.rotate(&g, j).is_ok() && path.is_valid_in(&g, |_, _| false);
        involution_ok &= path.rotate(&g, j).is_ok() && path == before;
        applications += 1;
    }
    let pass = example_ok && involution_ok && other_violations == 0;
    let detail = format!(
        "example rotation {}; {applications} involution checks {}; Pósa bound violations {other_violations} ({other_checks})",
        if example_ok { "ok" } else { "wrong" },
        if involution_ok { "ok" } else { "failed" },
    );
    report(3, true, pass, detail)
}

fn binomial_sd(p: f64, trials: f64) -> f64 {
    (p * (1.0 - p) / trials).sqrt()
}

fn run(cfg: TrialConfig, trials: u64) -> Vec<hamcol::harness::TrialReport> {
    let mut exp = ExperimentConfig::new(cfg);
    exp.trials = trials;
    let mut log = Vec::new();
    run_experiment(&exp, &mut log).expect("experiment");
    hamcol::harness::read_trial_log(std::io::Cursor::new(log)).unwrap()
}

fn criterion_4_and_6() -> (Line, Line, u64, u64) {
    let start = Instant::now();
    let main = run(trial_cfg(4096, 2, ValidationLevel::Full), 50);
    let rate = |rs: &[hamcol::harness::TrialReport]| rs.iter().filter(|r| r.full_success).count() as f64 / rs.len() as f64;
    let mut rates = Vec::new();
    for n in [512, 1024, 2048] {
        rates.push((n, rate(&run(trial_cfg(n, 2, ValidationLevel::Off), 50))));
    }
    rates.push((4096, rate(&main)));
    let minutes = start.elapsed().as_secs_f64() / 60.0;
    let monotone = rates.windows(2).all(|w| {
        let (a, b) = (w[0].1, w[1].1);
        let sd = binomial_sd(a, 50.0).max(binomial_sd(b, 50.0));
        b + sd >= a
    });
    let headline = rates[3].1;
    let sweep: Vec<String> = rates.iter().map(|(n, r)| format!("{n}:{r:.2}")).collect();
    let pass4 = headline >= 0.8 && monotone && minutes <= 30.0;
    let line4 = report(
        4,
        false,
        pass4,
        format!(
            "full success at n=4096 {headline:.2} (need >= 0.80); sweep {} {}; {minutes:.1} min (budget 30)",
            sweep.join(" "),
            if monotone { "non-decreasing within 1 sd" } else { "decreasing beyond 1 sd" }
        ),
    );

    let frac = |name: &str| main.iter().filter(|r| r.validators.get(name).is_some_and(|c| c.is_pass())).count() as f64 / main.len() as f64;
    let conn = frac("connectivity");
    let star = frac("star_degree");
    let expansion = frac("expansion");
    let theta = frac("color_lists");
    let maxdeg = frac("max_degree");

    // checks whose thresholds are vacuous at n = 4096 must be skipped, never passed
    let n = 4096usize;
    let q = 4u32;
    let eps = 0.1;
    let ln = (n as f64).ln();
    let mut vacuous = Vec::new();
    if thresholds::small_bound(n, 100.0 * q as f64) < 1.0 {
        vacuous.push("small_structures");
    }
    if thresholds::small_bound(n, 100.0 * q as f64) < (q - 1) as f64 {
        vacuous.push("degree_tail");
    }
    if thresholds::full_prime_bound(n, q, eps) <= 0.0 {
        vacuous.push("full_prime_size");
    }
    if eps * ln / 200.0 < 1.0 {
        vacuous.extend(["post_teps_full_edges", "post_teps_large_growth"]);
    }
    let misreported: Vec<&str> = vacuous
        .iter()
        .copied()
        .filter(|name| main.iter().any(|r| !r.validators.get(name).is_some_and(|c| c.is_skipped())))
        .collect();
    let pass6 = conn >= 0.9 && star >= 0.9 && expansion >= 0.9 && theta >= 0.9 && maxdeg == 1.0 && misreported.is_empty();
    let line6 = report(
        6,
        false,
        pass6,
        format!(
            "connectivity {conn:.2}, star degree {star:.2}, expansion {expansion:.2}, theta {theta:.2} (each need >= 0.90); \
             max degree {maxdeg:.2} (need 1.00); vacuous checks {vacuous:?} skipped in every trial: {}",
            misreported.is_empty()
        ),
    );
    let checks = main.iter().flat_map(|r| &r.colors).map(|c| c.stats.posa_checks).sum();
    let violations = main.iter().flat_map(|r| &r.colors).map(|c| c.stats.posa_violations).sum();
    (line4, line6, checks, violations)
}

fn criterion_5() -> Line {
    let n = 10_000;
    let sigma = 2;
    let q = 2 * sigma;
    let scale = thresholds::tau_scale(n, q);
    let omega = thresholds::default_omega(n);
    let (m, m_hi) = (thresholds::m_edges(n, q, omega), thresholds::m_upper(n, q, omega));
    let mut within = 0;
    let mut in_window = 0;
    let mut ratios = Vec::new();
    for trial in 0..20 {
        let seeds = TrialSeeds::derive(MASTER_SEED, trial, sigma);
        let stream = EdgeStream::new(n, seeds.process, StreamMode::auto(n)).unwrap();
        let tau = hitting_time(n, stream, q).unwrap();
        let ratio = tau as f64 / scale;
        within += ((0.85..=1.15).contains(&ratio)) as u32;
        in_window += (m <= tau && tau <= m_hi) as u32;
        ratios.push(ratio);
    }
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    let pass = within as f64 >= 0.9 * 20.0;
    report(
        5,
        false,
        pass,
        format!("{within}/20 within 15% of scale (need >= 18); ratio range [{lo:.3}, {hi:.3}]; in [m, m'] window {in_window}/20"),
    )
}

fn criterion_7() -> Line {
    let mut cfg = ExperimentConfig::new(trial_cfg(256, 2, ValidationLevel::Full));
    cfg.trials = 16;
    let log = |cfg: &ExperimentConfig| {
        let mut out = Vec::new();
        run_experiment(cfg, &mut out).unwrap();
        out
    };
    let first = log(&cfg);
    let second = log(&cfg);
    cfg.parallelism = 8;
    let parallel = log(&cfg);
    let pass = first == second && first == parallel && !first.is_empty();
    report(
        7,
        true,
        pass,
        format!(
            "{} bytes; rerun identical {}; parallelism 1 vs 8 identical {}",
            first.len(),
            first == second,
            first == parallel
        ),
    )
}

fn main() -> ExitCode {
    let (l1, v1) = criterion_1();
    let (l2, v2) = criterion_2();
    let (l4, l6, checks, v4) = criterion_4_and_6();
    let l3 = criterion_3(v1 + v2 + v4, &format!("{checks} completed searches at n=4096 plus criteria 1-2 runs"));
    let l5 = criterion_5();
    let l7 = criterion_7();
    let mut lines = vec![l1, l2, l3, l4, l5, l6, l7];
    lines.sort_by_key(|l| l.id);
    println!("summary:");
    for l in &lines {
        println!(
            "  {} {} {}",
            l.id,
            if l.pass { "PASS" } else { "FAIL" },
            if l.exact { "exact" } else { "calibrated" }
        );
    }
    if lines.iter().any(|l| l.exact && !l.pass) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

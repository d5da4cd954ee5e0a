use std::collections::HashSet;

use hamcol::process::{hitting_time, Edge, EdgeStream, ProcessState, StreamMode};
use hamcol::Error;

fn pair_counts(mode: StreamMode, n: usize, seeds: u64, prefix: usize) -> Vec<u64> {
    let pairs = n * (n - 1) / 2;
    let mut counts = vec![0u64; pairs];
    for seed in 0..seeds {
        let stream = EdgeStream::new(n, seed, mode).unwrap();
        let mut seen = HashSet::with_capacity(prefix);
        for e in stream.take(prefix) {
            assert!(seen.insert(e), "repeated edge {e} for seed {seed}");
            counts[e.rank() as usize] += 1;
        }
        assert_eq!(seen.len(), prefix);
    }
    counts
}

// Inclusion counts of each pair in the first 1000 edges over 10^4 seeds.
fn check_uniform(mode: StreamMode) {
    let (n, seeds, prefix) = (100usize, 10_000u64, 1000usize);
    let counts = pair_counts(mode, n, seeds, prefix);
    let pairs = counts.len() as f64;
    let p = prefix as f64 / pairs;
    let mean = seeds as f64 * p;
    let sd = (seeds as f64 * p * (1.0 - p)).sqrt();
    let outside = counts.iter().filter(|&&c| (c as f64 - mean).abs() > 3.0 * sd).count();
    // 0.27% expected outside 3 sd
    assert!(
        (outside as f64) < 0.01 * pairs,
        "{mode}: {outside} of {pairs} pairs outside 3 sd"
    );
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - mean).powi(2) / (sd * sd)).sum();
    let dof = pairs - 1.0;
    let z = (chi2 - dof) / (2.0 * dof).sqrt();
    assert!(z.abs() < 4.0, "{mode}: chi-square {chi2:.1} on {dof} dof, z = {z:.2}");
}

#[test]
fn full_shuffle_is_uniform() {
    check_uniform(StreamMode::FullShuffle);
}

#[test]
fn rejection_is_uniform() {
    check_uniform(StreamMode::Rejection);
}

#[test]
fn full_shuffle_enumerates_every_pair_once() {
    let n = 40;
    let edges: Vec<Edge> = EdgeStream::new(n, 3, StreamMode::FullShuffle).unwrap().collect();
    assert_eq!(edges.len(), n * (n - 1) / 2);
    let distinct: HashSet<Edge> = edges.iter().copied().collect();
    assert_eq!(distinct.len(), edges.len());
}

#[test]
fn triangle_stream_and_hitting_times() {
    let edges: Vec<Edge> = EdgeStream::new(3, 9, StreamMode::FullShuffle).unwrap().collect();
    let mut sorted = edges.clone();
    sorted.sort();
    assert_eq!(sorted, vec![Edge::of(0, 1), Edge::of(0, 2), Edge::of(1, 2)]);
    let again: Vec<Edge> = EdgeStream::new(3, 9, StreamMode::FullShuffle).unwrap().collect();
    assert_eq!(edges, again);

    let fixed = [Edge::of(0, 1), Edge::of(0, 2), Edge::of(1, 2)];
    assert_eq!(hitting_time(3, fixed, 2).unwrap(), 3);
    assert_eq!(hitting_time(3, fixed, 1).unwrap(), 2);
}

#[test]
fn handshake_and_duplicates() {
    let n = 500;
    let mut state = ProcessState::new(n, 3);
    let edges: Vec<Edge> = EdgeStream::new(n, 1, StreamMode::Rejection).unwrap().take(4000).collect();
    for &e in &edges {
        state.apply_edge(e).unwrap();
    }
    let total: u64 = state.degrees().iter().map(|&d| d as u64).sum();
    assert_eq!(total, 2 * edges.len() as u64);
    assert!(matches!(state.apply_edge(edges[17]), Err(Error::DuplicateEdge(_))));
}

#[test]
fn hitting_time_is_minimal() {
    for seed in 0..20 {
        let n = 300;
        let edges: Vec<Edge> = EdgeStream::new(n, seed, StreamMode::auto(n)).unwrap().take(20_000).collect();
        let tau = hitting_time(n, edges.iter().copied(), 4).unwrap() as usize;
        let mut before = ProcessState::new(n, 4);
        for &e in &edges[..tau - 1] {
            before.apply_edge(e).unwrap();
        }
        assert!(before.min_degree() < 4);
        before.apply_edge(edges[tau - 1]).unwrap();
        assert!(before.min_degree() >= 4);
    }
}

//! The random graph process on `K_n`: a uniformly random ordering of the
//! vertex pairs, consumed one edge at a time, with incremental degree
//! tracking and min-degree hitting-time detection.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex index in `[0, n)`.
pub type Vertex = u32;

/// Largest `n` for which [`StreamMode::auto`] picks the exact shuffle.
pub const SHUFFLE_MODE_MAX_N: usize = 10_000;

/// An undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Builds the canonical edge `{a, b}`. Returns `None` for loops.
    pub fn new(a: Vertex, b: Vertex) -> Option<Edge> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// Panicking variant of [`Edge::new`] for call sites where `a != b` is known.
    pub fn of(a: Vertex, b: Vertex) -> Edge {
        Edge::new(a, b).expect("self-loop")
    }

    pub fn u(self) -> Vertex {
        self.u
    }

    pub fn v(self) -> Vertex {
        self.v
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    /// The endpoint opposite to `x`, if `x` lies on this edge.
    pub fn other(self, x: Vertex) -> Option<Vertex> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn contains(self, x: Vertex) -> bool {
        x == self.u || x == self.v
    }

    /// Colex rank of the pair among all `C(n, 2)` pairs.
    pub fn rank(self) -> u64 {
        let v = self.v as u64;
        v * (v - 1) / 2 + self.u as u64
    }

    /// Inverse of [`Edge::rank`].
    pub fn unrank(k: u64) -> Edge {
        let mut v = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0).floor() as u64;
        while v * (v - 1) / 2 > k {
            v -= 1;
        }
        while (v + 1) * v / 2 <= k {
            v += 1;
        }
        let u = k - v * (v - 1) / 2;
        Edge {
            u: u as Vertex,
            v: v as Vertex,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.u, self.v)
    }
}

/// How an [`EdgeStream`] draws its next pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StreamMode {
    /// Lazy Fisher-Yates over all pair ranks; an exact uniform permutation.
    FullShuffle,
    /// Uniform pairs with repeats discarded through a seen-set.
    Rejection,
}

impl StreamMode {
    pub fn auto(n: usize) -> StreamMode {
        if n <= SHUFFLE_MODE_MAX_N {
            StreamMode::FullShuffle
        } else {
            StreamMode::Rejection
        }
    }
}

impl fmt::Display for StreamMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StreamMode::FullShuffle => "full-shuffle",
            StreamMode::Rejection => "rejection",
        })
    }
}

impl std::str::FromStr for StreamMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full-shuffle" | "shuffle" => Ok(StreamMode::FullShuffle),
            "rejection" => Ok(StreamMode::Rejection),
            other => Err(Error::Config(format!("unknown stream mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
enum Sampler {
    // Only displaced slots of the virtual rank array are stored.
    Shuffle { displaced: HashMap<u64, u64> },
    Rejection { seen: HashSet<Edge> },
}

/// The random graph process: a deterministic (per seed and mode) sequence of
/// distinct uniformly random edges of `K_n`.
#[derive(Debug, Clone)]
pub struct EdgeStream {
    n: usize,
    seed: u64,
    mode: StreamMode,
    total: u64,
    emitted: u64,
    rng: ChaCha8Rng,
    sampler: Sampler,
}

impl EdgeStream {
    pub fn new(n: usize, seed: u64, mode: StreamMode) -> Result<EdgeStream> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("n must be at least 3, got {n}")));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidParameter(format!("n = {n} exceeds vertex id range")));
        }
        let total = (n as u64) * (n as u64 - 1) / 2;
        let sampler = match mode {
            StreamMode::FullShuffle => Sampler::Shuffle {
                displaced: HashMap::new(),
            },
            StreamMode::Rejection => Sampler::Rejection {
                seen: HashSet::new(),
            },
        };
        Ok(EdgeStream {
            n,
            seed,
            mode,
            total,
            emitted: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            sampler,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn mode(&self) -> StreamMode {
        self.mode
    }

    /// Number of edges handed out so far.
    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// `C(n, 2)`.
    pub fn total_pairs(&self) -> u64 {
        self.total
    }
}

impl Iterator for EdgeStream {
    type Item = Edge;

    fn next(&mut self) -> Option<Edge> {
        if self.emitted == self.total {
            return None;
        }
        let i = self.emitted;
        let edge = match &mut self.sampler {
            Sampler::Shuffle { displaced } => {
                let j = self.rng.gen_range(i..self.total);
                let at_i = displaced.remove(&i).unwrap_or(i);
                let at_j = if j == i {
                    at_i
                } else {
                    displaced.insert(j, at_i).unwrap_or(j)
                };
                Edge::unrank(at_j)
            }
            Sampler::Rejection { seen } => loop {
                let a = self.rng.gen_range(0..self.n as Vertex);
                let b = self.rng.gen_range(0..self.n as Vertex);
                if let Some(e) = Edge::new(a, b) {
                    if seen.insert(e) {
                        break e;
                    }
                }
            },
        };
        self.emitted += 1;
        Some(edge)
    }
}

/// Writes the optional edge-stream dump: a header `n=<n> seed=<seed>` followed
/// by one `t u v` line per edge, `t` starting at 1.
pub fn write_edge_dump<W: Write>(mut out: W, n: usize, seed: u64, edges: &[Edge]) -> Result<()> {
    writeln!(out, "n={n} seed={seed}")?;
    for (i, e) in edges.iter().enumerate() {
        writeln!(out, "{} {} {}", i + 1, e.u, e.v)?;
    }
    Ok(())
}

/// Graph `G_t` of the process with degrees and a running count of vertices
/// below the monitored min-degree threshold `k`.
#[derive(Debug, Clone)]
pub struct ProcessState {
    k: u32,
    adjacency: Vec<Vec<Vertex>>,
    degree: Vec<u32>,
    below_threshold: usize,
    t: u64,
}

impl ProcessState {
    pub fn new(n: usize, k: u32) -> ProcessState {
        ProcessState {
            k,
            adjacency: vec![Vec::new(); n],
            degree: vec![0; n],
            below_threshold: if k > 0 { n } else { 0 },
            t: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.degree.len()
    }

    pub fn threshold(&self) -> u32 {
        self.k
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn degree(&self, v: Vertex) -> u32 {
        self.degree[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v as usize]
    }

    pub fn adjacency(&self) -> &[Vec<Vertex>] {
        &self.adjacency
    }

    pub fn below_threshold_count(&self) -> usize {
        self.below_threshold
    }

    pub fn min_degree_reached(&self) -> bool {
        self.below_threshold == 0
    }

    pub fn min_degree(&self) -> u32 {
        self.degree.iter().copied().min().unwrap_or(0)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        let (a, b) = e.endpoints();
        let (short, other) = if self.degree[a as usize] <= self.degree[b as usize] {
            (a, b)
        } else {
            (b, a)
        };
        self.adjacency[short as usize].contains(&other)
    }

    pub fn apply_edge(&mut self, e: Edge) -> Result<()> {
        let (a, b) = e.endpoints();
        if b as usize >= self.n() {
            return Err(Error::InvalidParameter(format!("edge {e} outside [0, {})", self.n())));
        }
        if self.has_edge(e) {
            return Err(Error::DuplicateEdge(e));
        }
        for (x, y) in [(a, b), (b, a)] {
            self.adjacency[x as usize].push(y);
            let d = &mut self.degree[x as usize];
            *d += 1;
            if *d == self.k {
                self.below_threshold -= 1;
            }
        }
        self.t += 1;
        Ok(())
    }
}

/// Smallest `t` with `min deg G_t >= k` over the given edge sequence.
pub fn hitting_time<I>(n: usize, edges: I, k: u32) -> Result<u64>
where
    I: IntoIterator<Item = Edge>,
{
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut state = ProcessState::new(n, k);
    for e in edges {
        state.apply_edge(e)?;
        if state.min_degree_reached() {
            return Ok(state.t());
        }
    }
    Err(Error::ExhaustedStream {
        emitted: state.t(),
        k,
    })
}

//! Online edge coloring with `q = 2 sigma` internal colors.
//!
//! Every arriving edge is colored irrevocably from the history alone and is
//! routed to the star pool `E*_c` or the booster pool `E+_c`. Needy endpoints
//! are served first; after `t_eps` the frozen `Full` set decides between
//! steering the color toward a non-full endpoint and feeding the booster pool.

use std::fmt;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::process::{Edge, Vertex};
use crate::thresholds;

/// Largest supported `sigma`; need lists are `u32` bitmasks over `q = 2 sigma`.
pub const MAX_SIGMA: u32 = 16;

/// Internal color in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColorId(pub u8);

impl ColorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Merged color `c mod sigma`.
    pub fn merged(self, sigma: u32) -> usize {
        self.0 as usize % sigma as usize
    }
}

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pool {
    Star,
    Plus,
}

impl fmt::Display for Pool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pool::Star => "star",
            Pool::Plus => "plus",
        })
    }
}

/// Which branch of the coloring rule fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Exactly one endpoint full: least-represented color at the other endpoint.
    SteerToNonFull,
    /// Both endpoints full: random color, random pool.
    BothFull,
    /// No need, early or neither endpoint full: random color.
    Random,
    /// Some endpoint needy: random color among the needed ones.
    Needy,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::SteerToNonFull, Rule::BothFull, Rule::Random, Rule::Needy];

    fn slot(self) -> usize {
        match self {
            Rule::SteerToNonFull => 0,
            Rule::BothFull => 1,
            Rule::Random => 2,
            Rule::Needy => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredEdge {
    pub t: u64,
    pub edge: Edge,
    pub color: ColorId,
    pub pool: Pool,
    pub rule: Rule,
}

/// Vertices having at least `d_full` edges of every internal color at the
/// freeze time. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullSet {
    members: Vec<bool>,
    size: usize,
    frozen_at: u64,
    d_full: u32,
}

impl FullSet {
    fn from_degrees(degree: &[u32], q: usize, d_full: u32, frozen_at: u64) -> FullSet {
        let members: Vec<bool> = degree
            .chunks_exact(q)
            .map(|per_color| per_color.iter().all(|&d| d >= d_full))
            .collect();
        let size = members.iter().filter(|&&m| m).count();
        FullSet {
            members,
            size,
            frozen_at,
            d_full,
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members[v as usize]
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn frozen_at(&self) -> u64 {
        self.frozen_at
    }

    pub fn d_full(&self) -> u32 {
        self.d_full
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }
}

#[derive(Debug, Clone)]
pub struct ColoringState {
    n: usize,
    sigma: u32,
    q: u32,
    epsilon: f64,
    t_eps: u64,
    d_full: u32,
    t: u64,
    // n * q, row-major by vertex
    degree: Vec<u32>,
    need: Vec<u32>,
    total_need: u64,
    full: Option<FullSet>,
    star: Vec<Vec<Edge>>,
    plus: Vec<Vec<Edge>>,
    history: Vec<ColoredEdge>,
    rule_counts: [u64; 4],
    eps_too_large: bool,
    rng: ChaCha8Rng,
}

impl ColoringState {
    pub fn new(n: usize, sigma: u32, epsilon: f64, seed: u64) -> Result<ColoringState> {
        if sigma < 2 {
            return Err(Error::InvalidParameter(format!("sigma must be at least 2, got {sigma}")));
        }
        if sigma > MAX_SIGMA {
            return Err(Error::InvalidParameter(format!(
                "sigma must be at most {MAX_SIGMA}, got {sigma}"
            )));
        }
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
        }
        if n < 3 {
            return Err(Error::InvalidParameter(format!("n must be at least 3, got {n}")));
        }
        let q = 2 * sigma;
        let all = if q == 32 { u32::MAX } else { (1u32 << q) - 1 };
        Ok(ColoringState {
            n,
            sigma,
            q,
            epsilon,
            t_eps: thresholds::t_eps(n, epsilon),
            d_full: thresholds::d_full(n, q, epsilon),
            t: 0,
            degree: vec![0; n * q as usize],
            need: vec![all; n],
            total_need: n as u64 * q as u64,
            full: None,
            star: vec![Vec::new(); q as usize],
            plus: vec![Vec::new(); q as usize],
            history: Vec::new(),
            rule_counts: [0; 4],
            eps_too_large: false,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Replaces the clamped `d_full` before any edge has been colored.
    pub fn with_d_full(mut self, d_full: u32) -> Result<ColoringState> {
        if d_full == 0 {
            return Err(Error::InvalidParameter("d_full must be at least 1".into()));
        }
        if self.t != 0 {
            return Err(Error::ContractViolation("d_full changed after coloring started".into()));
        }
        self.d_full = d_full;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn t_eps(&self) -> u64 {
        self.t_eps
    }

    pub fn d_full(&self) -> u32 {
        self.d_full
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn color_degree(&self, v: Vertex, c: ColorId) -> u32 {
        self.degree[v as usize * self.q as usize + c.index()]
    }

    pub fn color_degrees(&self, v: Vertex) -> &[u32] {
        let q = self.q as usize;
        &self.degree[v as usize * q..(v as usize + 1) * q]
    }

    /// Bitmask of `C_v`, the internal colors absent at `v`.
    pub fn need_mask(&self, v: Vertex) -> u32 {
        self.need[v as usize]
    }

    pub fn need_masks(&self) -> &[u32] {
        &self.need
    }

    pub fn needs(&self, v: Vertex) -> impl Iterator<Item = ColorId> + '_ {
        let mask = self.need[v as usize];
        (0..self.q as u8).filter(move |&c| mask & (1 << c) != 0).map(ColorId)
    }

    pub fn is_needy(&self, v: Vertex) -> bool {
        self.need[v as usize] != 0
    }

    /// `sum_v |C_v|`.
    pub fn total_need(&self) -> u64 {
        self.total_need
    }

    pub fn full(&self) -> Option<&FullSet> {
        self.full.as_ref()
    }

    pub fn is_full(&self, v: Vertex) -> bool {
        self.full.as_ref().is_some_and(|f| f.contains(v))
    }

    pub fn star_pool(&self, c: ColorId) -> &[Edge] {
        &self.star[c.index()]
    }

    pub fn plus_pool(&self, c: ColorId) -> &[Edge] {
        &self.plus[c.index()]
    }

    /// Every colored edge in arrival order.
    pub fn history(&self) -> &[ColoredEdge] {
        &self.history
    }

    pub fn rule_count(&self, rule: Rule) -> u64 {
        self.rule_counts[rule.slot()]
    }

    /// Set when the process stopped before `t_eps` and `Full` had to be
    /// frozen early.
    pub fn eps_too_large(&self) -> bool {
        self.eps_too_large
    }

    /// Freezes `Full` at `t = t_eps`.
    pub fn freeze_full(&mut self) -> Result<&FullSet> {
        if self.full.is_some() {
            return Err(Error::ContractViolation("Full already frozen".into()));
        }
        if self.t != self.t_eps {
            return Err(Error::ContractViolation(format!(
                "Full must be frozen at t = {}, current t = {}",
                self.t_eps, self.t
            )));
        }
        self.full = Some(FullSet::from_degrees(
            &self.degree,
            self.q as usize,
            self.d_full,
            self.t,
        ));
        Ok(self.full.as_ref().unwrap())
    }

    /// Fallback for runs that stop at `tau <= t_eps`: freezes `Full` from the
    /// degrees at `tau - 1` and flags the run.
    pub fn freeze_full_early(&mut self) -> Result<&FullSet> {
        if self.full.is_some() {
            return Err(Error::ContractViolation("Full already frozen".into()));
        }
        if self.t > self.t_eps {
            return Err(Error::ContractViolation(format!(
                "early freeze requested at t = {} > t_eps = {}",
                self.t, self.t_eps
            )));
        }
        let mut degree = self.degree.clone();
        let mut frozen_at = self.t;
        if let Some(last) = self.history.last() {
            let q = self.q as usize;
            let (a, b) = last.edge.endpoints();
            degree[a as usize * q + last.color.index()] -= 1;
            degree[b as usize * q + last.color.index()] -= 1;
            frozen_at -= 1;
        }
        self.eps_too_large = true;
        self.full = Some(FullSet::from_degrees(&degree, self.q as usize, self.d_full, frozen_at));
        Ok(self.full.as_ref().unwrap())
    }

    /// Colors edge `e` arriving at time `t`.
    pub fn color_edge(&mut self, e: Edge, t: u64) -> Result<(ColorId, Pool)> {
        if t != self.t + 1 {
            return Err(Error::ContractViolation(format!(
                "edge arrived at t = {t}, expected t = {}",
                self.t + 1
            )));
        }
        if (e.v() as usize) >= self.n {
            return Err(Error::InvalidParameter(format!("edge {e} outside [0, {})", self.n)));
        }
        if t > self.t_eps && self.full.is_none() {
            return Err(Error::ContractViolation(format!(
                "edge at t = {t} > t_eps = {} but Full is not frozen",
                self.t_eps
            )));
        }
        let (u, v) = e.endpoints();
        let q = self.q;
        let union = self.need[u as usize] | self.need[v as usize];

        let (color, pool, rule) = if union != 0 {
            let pick = self.rng.gen_range(0..union.count_ones());
            (nth_set_bit(union, pick), Pool::Star, Rule::Needy)
        } else {
            let (fu, fv) = (self.is_full(u), self.is_full(v));
            if t <= self.t_eps || (!fu && !fv) {
                (self.rng.gen_range(0..q) as u8, Pool::Star, Rule::Random)
            } else if fu != fv {
                let other = if fu { v } else { u };
                (self.least_used_color(other), Pool::Star, Rule::SteerToNonFull)
            } else {
                let c = self.rng.gen_range(0..q) as u8;
                let pool = if self.rng.gen_bool(0.5) {
                    Pool::Plus
                } else {
                    Pool::Star
                };
                (c, pool, Rule::BothFull)
            }
        };

        let before = self.total_need;
        for x in [u, v] {
            self.degree[x as usize * q as usize + color as usize] += 1;
            let bit = 1u32 << color;
            if self.need[x as usize] & bit != 0 {
                self.need[x as usize] &= !bit;
                self.total_need -= 1;
            }
        }
        debug_assert!(rule != Rule::Needy || self.total_need < before);

        let color = ColorId(color);
        match pool {
            Pool::Star => self.star[color.index()].push(e),
            Pool::Plus => self.plus[color.index()].push(e),
        }
        self.history.push(ColoredEdge {
            t,
            edge: e,
            color,
            pool,
            rule,
        });
        self.rule_counts[rule.slot()] += 1;
        self.t = t;
        Ok((color, pool))
    }

    // Lowest index among the colors minimizing d_c(v).
    fn least_used_color(&self, v: Vertex) -> u8 {
        let degrees = self.color_degrees(v);
        let mut best = 0;
        for (c, &d) in degrees.iter().enumerate() {
            if d < degrees[best] {
                best = c;
            }
        }
        best as u8
    }

    /// Checks `c in C_v <=> d_c(v) = 0` and the need total. Returns the first
    /// offending vertex.
    pub fn check_need_lists(&self) -> Option<Vertex> {
        let mut total = 0u64;
        for v in 0..self.n as Vertex {
            let expected = self
                .color_degrees(v)
                .iter()
                .enumerate()
                .filter(|(_, &d)| d == 0)
                .fold(0u32, |m, (c, _)| m | (1 << c));
            if expected != self.need[v as usize] {
                return Some(v);
            }
            total += expected.count_ones() as u64;
        }
        if total != self.total_need {
            return Some(0);
        }
        None
    }

    /// Groups internal colors `c` and `c + sigma` into merged color `c`.
    pub fn merge_colors(&self) -> MergedColoring {
        let sigma = self.sigma as usize;
        let mut classes: Vec<MergedClass> = (0..sigma)
            .map(|c| MergedClass {
                color: c,
                star: Vec::new(),
                boosters: Vec::new(),
            })
            .collect();
        for rec in &self.history {
            let class = &mut classes[rec.color.merged(self.sigma)];
            match rec.pool {
                Pool::Star => class.star.push(rec.edge),
                Pool::Plus => class.boosters.push(rec.edge),
            }
        }
        MergedColoring {
            sigma: self.sigma,
            classes,
        }
    }
}

fn nth_set_bit(mask: u32, mut k: u32) -> u8 {
    let mut m = mask;
    loop {
        let bit = m.trailing_zeros();
        if k == 0 {
            return bit as u8;
        }
        k -= 1;
        m &= m - 1;
    }
}

/// One merged color class: star edges and boosters, each in arrival order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedClass {
    pub color: usize,
    pub star: Vec<Edge>,
    pub boosters: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedColoring {
    pub sigma: u32,
    pub classes: Vec<MergedClass>,
}

impl MergedColoring {
    pub fn total_edges(&self) -> usize {
        self.classes
            .iter()
            .map(|c| c.star.len() + c.boosters.len())
            .sum()
    }
}

/// Writes the colored-edge dump, one `t u v internal_color pool` line per edge.
pub fn write_color_dump<W: Write>(mut out: W, history: &[ColoredEdge]) -> Result<()> {
    for rec in history {
        writeln!(
            out,
            "{} {} {} {} {}",
            rec.t,
            rec.edge.u(),
            rec.edge.v(),
            rec.color,
            rec.pool
        )?;
    }
    Ok(())
}

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::process::{Edge, Vertex};

/// Star subgraph of one merged color plus its booster list in arrival order.
#[derive(Debug, Clone)]
pub struct ColorClassGraph {
    adjacency: Vec<Vec<Vertex>>,
    star_edges: usize,
    boosters: Vec<Edge>,
}

impl ColorClassGraph {
    pub fn new(n: usize, star: &[Edge], boosters: &[Edge]) -> Result<ColorClassGraph> {
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(star.len());
        for &e in star {
            if e.v() as usize >= n {
                return Err(Error::InvalidParameter(format!("star edge {e} outside [0, {n})")));
            }
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(e));
            }
            adjacency[e.u() as usize].push(e.v());
            adjacency[e.v() as usize].push(e.u());
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let mut booster_set = HashSet::with_capacity(boosters.len());
        for &e in boosters {
            if e.v() as usize >= n {
                return Err(Error::InvalidParameter(format!("booster {e} outside [0, {n})")));
            }
            if seen.contains(&e) {
                return Err(Error::InvalidParameter(format!("booster {e} is also a star edge")));
            }
            if !booster_set.insert(e) {
                return Err(Error::DuplicateEdge(e));
            }
        }
        Ok(ColorClassGraph {
            adjacency,
            star_edges: star.len(),
            boosters: boosters.to_vec(),
        })
    }

    /// Class graph with no boosters.
    pub fn star_only(n: usize, star: &[Edge]) -> Result<ColorClassGraph> {
        ColorClassGraph::new(n, star, &[])
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Star neighbors of `v`, ascending.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v as usize]
    }

    pub fn adjacency(&self) -> &[Vec<Vertex>] {
        &self.adjacency
    }

    pub fn star_degree(&self, v: Vertex) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn min_star_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn star_edge_count(&self) -> usize {
        self.star_edges
    }

    pub fn has_star_edge(&self, a: Vertex, b: Vertex) -> bool {
        let (la, lb) = (&self.adjacency[a as usize], &self.adjacency[b as usize]);
        if la.len() <= lb.len() {
            la.binary_search(&b).is_ok()
        } else {
            lb.binary_search(&a).is_ok()
        }
    }

    pub fn boosters(&self) -> &[Edge] {
        &self.boosters
    }

    /// Whether the star graph is connected.
    pub fn is_star_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0 as Vertex];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in self.neighbors(x) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }
}

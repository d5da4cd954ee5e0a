use crate::error::{Error, Result};
use crate::process::Vertex;

use super::graph::ColorClassGraph;

const ABSENT: u32 = u32::MAX;

/// A simple path `(x_1, ..., x_k)` with O(1) membership and position lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathState {
    seq: Vec<Vertex>,
    pos: Vec<u32>,
}

impl PathState {
    pub fn empty(n: usize) -> PathState {
        PathState {
            seq: Vec::new(),
            pos: vec![ABSENT; n],
        }
    }

    pub fn from_vertices(n: usize, vertices: &[Vertex]) -> Result<PathState> {
        let mut path = PathState::empty(n);
        for &v in vertices {
            if v as usize >= n {
                return Err(Error::InvalidParameter(format!("vertex {v} outside [0, {n})")));
            }
            if path.contains(v) {
                return Err(Error::InvalidParameter(format!("vertex {v} repeated in path")));
            }
            path.push(v);
        }
        Ok(path)
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn first(&self) -> Option<Vertex> {
        self.seq.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.seq.last().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.pos[v as usize] != ABSENT
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        match self.pos[v as usize] {
            ABSENT => None,
            p => Some(p as usize),
        }
    }

    pub fn push(&mut self, v: Vertex) {
        debug_assert!(!self.contains(v));
        self.pos[v as usize] = self.seq.len() as u32;
        self.seq.push(v);
    }

    pub fn reverse(&mut self) {
        let k = self.seq.len();
        self.reverse_range(0, k);
    }

    /// Rotation with `x_1` fixed at pivot position `pivot` (0-based): needs the
    /// star edge `{path[pivot], last}` and `1 <= pivot <= len - 3`, and yields
    /// `(x_1, ..., path[pivot], last, ..., path[pivot + 1])`.
    pub fn rotate(&mut self, g: &ColorClassGraph, pivot: usize) -> Result<()> {
        let k = self.seq.len();
        if pivot < 1 || pivot + 3 > k {
            return Err(Error::InvalidRotation(format!(
                "pivot position {pivot} outside [1, {}] for a path of {k} vertices",
                k as isize - 3
            )));
        }
        let (x, end) = (self.seq[pivot], self.seq[k - 1]);
        if !g.has_star_edge(x, end) {
            return Err(Error::InvalidRotation(format!("no star edge {{{x}, {end}}}")));
        }
        self.rotate_unchecked(pivot);
        Ok(())
    }

    pub(crate) fn rotate_unchecked(&mut self, pivot: usize) {
        let k = self.seq.len();
        self.reverse_range(pivot + 1, k);
    }

    fn reverse_range(&mut self, from: usize, to: usize) {
        self.seq[from..to].reverse();
        for i in from..to {
            self.pos[self.seq[i] as usize] = i as u32;
        }
    }

    /// Checks that consecutive vertices are joined by a star edge or by an
    /// edge accepted by `extra`.
    pub fn is_valid_in<F>(&self, g: &ColorClassGraph, extra: F) -> bool
    where
        F: Fn(Vertex, Vertex) -> bool,
    {
        self.seq.iter().enumerate().all(|(i, &v)| self.pos[v as usize] == i as u32)
            && self.pos.iter().filter(|&&p| p != ABSENT).count() == self.seq.len()
            && self
                .seq
                .windows(2)
                .all(|w| g.has_star_edge(w[0], w[1]) || extra(w[0], w[1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::Edge;

    #[test]
    fn rotate_reverses_the_tail() {
        // vertices 1..=5 of the textbook example, plus chord {2, 5}
        let edges = [(1, 2), (2, 3), (3, 4), (4, 5), (2, 5)].map(|(a, b)| Edge::of(a, b));
        let g = ColorClassGraph::star_only(6, &edges).unwrap();
        let mut p = PathState::from_vertices(6, &[1, 2, 3, 4, 5]).unwrap();
        p.rotate(&g, 1).unwrap();
        assert_eq!(p.vertices(), &[1, 2, 5, 4, 3]);
        assert_eq!(p.position(3), Some(4));
        p.rotate(&g, 1).unwrap();
        assert_eq!(p.vertices(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn rotate_rejects_bad_pivots() {
        let edges = [(1, 2), (2, 3), (3, 4), (4, 5), (2, 5)].map(|(a, b)| Edge::of(a, b));
        let g = ColorClassGraph::star_only(6, &edges).unwrap();
        let mut p = PathState::from_vertices(6, &[1, 2, 3, 4, 5]).unwrap();
        assert!(matches!(p.rotate(&g, 3), Err(Error::InvalidRotation(_))));
        assert!(matches!(p.rotate(&g, 0), Err(Error::InvalidRotation(_))));
        // pivot 2 is vertex 3, and {3, 5} is not a star edge
        assert!(matches!(p.rotate(&g, 2), Err(Error::InvalidRotation(_))));
        assert_eq!(p.vertices(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn duplicate_vertex_rejected() {
        assert!(PathState::from_vertices(4, &[0, 1, 0]).is_err());
        assert!(PathState::from_vertices(4, &[0, 4]).is_err());
    }
}

//! Endpoint closure under rotations with one endpoint held fixed.
//!
//! The search is depth-first and rotates a single working path in place,
//! undoing each rotation on backtrack. Each endpoint is entered once, through
//! the first rotation sequence that reaches it, and all rotations of that
//! path are tried. The resulting endpoint set is closed under rotation.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::process::Vertex;

use super::graph::ColorClassGraph;
use super::path::PathState;
use super::treap::TreapSeq;

/// A star edge from the rotation closure to a vertex off the path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    /// The fixed endpoint has a star neighbor `outside`.
    AtFixed { outside: Vertex },
    /// `endpoint` (in the end set) has a star neighbor `outside`.
    AtEndpoint { endpoint: Vertex, outside: Vertex },
}

/// When the search may stop before the closure is complete.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchLimits {
    pub stop_at_extension: bool,
    pub stop_at_closure: bool,
}

impl SearchLimits {
    pub const EXHAUSTIVE: SearchLimits = SearchLimits {
        stop_at_extension: false,
        stop_at_closure: false,
    };
}

/// Result of a rotation search: `END(fixed)` with enough data to rebuild the
/// path realizing each endpoint.
#[derive(Debug, Clone)]
pub struct RotationTree {
    base: PathState,
    endpoints: Vec<Vertex>,
    // endpoint -> (endpoint it was rotated from, pivot position)
    parent: HashMap<Vertex, (Vertex, u32)>,
    extension: Option<Extension>,
    closure: Option<Vertex>,
    complete: bool,
}

impl RotationTree {
    pub fn fixed(&self) -> Vertex {
        self.base.first().expect("rotation tree over an empty path")
    }

    /// The path the search started from, oriented with the fixed endpoint first.
    pub fn base(&self) -> &PathState {
        &self.base
    }

    /// `END(fixed)` in discovery order; the first entry is the base endpoint.
    pub fn endpoints(&self) -> &[Vertex] {
        &self.endpoints
    }

    pub fn len(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.base.last() == Some(v) || self.parent.contains_key(&v)
    }

    pub fn extension(&self) -> Option<Extension> {
        self.extension
    }

    /// An endpoint whose star neighbors include the fixed endpoint.
    pub fn closure(&self) -> Option<Vertex> {
        self.closure
    }

    /// True when every endpoint was fully explored.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Replays the rotations leading to `b`, returning the path from the fixed
    /// endpoint to `b`.
    pub fn path_to(&self, b: Vertex) -> Option<PathState> {
        if !self.contains(b) {
            return None;
        }
        let mut chain = Vec::new();
        let mut cur = b;
        while let Some(&(prev, pivot)) = self.parent.get(&cur) {
            chain.push(pivot as usize);
            cur = prev;
        }
        let mut path = self.base.clone();
        for &pivot in chain.iter().rev() {
            path.rotate_unchecked(pivot);
        }
        debug_assert_eq!(path.last(), Some(b));
        Some(path)
    }

    /// `N*(END) \ (END ∪ {fixed})`, ascending. Only meaningful on a complete
    /// search without extension.
    pub fn outer_neighborhood(&self, g: &ColorClassGraph) -> Vec<Vertex> {
        let a = self.fixed();
        let mut mark = vec![false; g.n()];
        for &b in &self.endpoints {
            mark[b as usize] = true;
        }
        let mut out = Vec::new();
        let mut seen = vec![false; g.n()];
        for &b in &self.endpoints {
            for &w in g.neighbors(b) {
                if !mark[w as usize] && w != a && !seen[w as usize] {
                    seen[w as usize] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Pósa's bound `|N*(END) \ {fixed}| < 2 |END|`. `None` when the search was
    /// cut short or an extension exists, since the bound is then undefined.
    pub fn posa_bound_holds(&self, g: &ColorClassGraph) -> Option<bool> {
        if !self.complete || self.extension.is_some() {
            return None;
        }
        Some(self.outer_neighborhood(g).len() < 2 * self.endpoints.len())
    }
}

struct Frame {
    end: Vertex,
    next: usize,
    undo: Option<u32>,
}

/// Rotation closure `END(fixed)` using star edges only, exhaustive.
pub fn compute_end_set(g: &ColorClassGraph, path: &PathState, fixed: Vertex) -> Result<RotationTree> {
    let base = orient(path, fixed)?;
    Ok(search(g, base, SearchLimits::EXHAUSTIVE).0)
}

pub(crate) fn orient(path: &PathState, fixed: Vertex) -> Result<PathState> {
    if path.first() == Some(fixed) {
        Ok(path.clone())
    } else if path.last() == Some(fixed) {
        let mut p = path.clone();
        p.reverse();
        Ok(p)
    } else {
        Err(Error::InvalidParameter(format!("{fixed} is not an endpoint of the path")))
    }
}

/// Depth-first rotation search from `base` (fixed endpoint first). When the
/// search stops early the second value is the in-place path realizing the
/// stopping endpoint.
pub(crate) fn search(
    g: &ColorClassGraph,
    base: PathState,
    limits: SearchLimits,
) -> (RotationTree, Option<PathState>) {
    let k = base.len();
    let a = base.first().expect("rotation search over an empty path");
    let root = base.last().unwrap();
    let mut tree = RotationTree {
        base,
        endpoints: vec![root],
        parent: HashMap::new(),
        extension: None,
        closure: None,
        complete: false,
    };

    if let Some(&w) = g.neighbors(a).iter().find(|&&w| !tree.base.contains(w)) {
        tree.extension = Some(Extension::AtFixed { outside: w });
        if limits.stop_at_extension {
            let path = tree.base.clone();
            return (tree, Some(path));
        }
    }
    if k < 2 {
        tree.complete = true;
        return (tree, None);
    }

    let n = g.n();
    let mut path = TreapSeq::new(n, tree.base.vertices());
    let realized = |path: &mut TreapSeq| {
        PathState::from_vertices(n, &path.to_vec()).expect("rotations keep the vertex set")
    };
    let mut in_end = vec![false; n];
    in_end[root as usize] = true;
    let mut stack = vec![Frame {
        end: root,
        next: 0,
        undo: None,
    }];

    while let Some(frame) = stack.last_mut() {
        let y = frame.end;
        let nbrs = g.neighbors(y);
        if frame.next == nbrs.len() {
            let undo = frame.undo;
            stack.pop();
            if let Some(pivot) = undo {
                path.reverse_from(pivot as usize + 1);
            }
            continue;
        }
        let w = nbrs[frame.next];
        frame.next += 1;
        if !tree.base.contains(w) {
            if tree.extension.is_none() {
                tree.extension = Some(Extension::AtEndpoint {
                    endpoint: y,
                    outside: w,
                });
                if limits.stop_at_extension {
                    let p = realized(&mut path);
                    return (tree, Some(p));
                }
            }
        } else if w == a {
            if k >= 3 && tree.closure.is_none() {
                tree.closure = Some(y);
                if limits.stop_at_closure {
                    let p = realized(&mut path);
                    return (tree, Some(p));
                }
            }
        } else {
            let j = path.position(w);
            if j + 3 <= k {
                let z = path.at(j + 1);
                if !in_end[z as usize] {
                    in_end[z as usize] = true;
                    tree.parent.insert(z, (y, j as u32));
                    tree.endpoints.push(z);
                    path.reverse_from(j + 1);
                    stack.push(Frame {
                        end: z,
                        next: 0,
                        undo: Some(j as u32),
                    });
                }
            }
        }
    }
    debug_assert_eq!(path.to_vec(), tree.base.vertices());
    tree.complete = true;
    (tree, None)
}

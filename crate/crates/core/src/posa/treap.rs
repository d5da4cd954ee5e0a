//! Vertex sequence with `O(log n)` suffix reversal: an implicit treap keyed by
//! position, with lazy reversal flags and parent links for position lookup.

use crate::process::Vertex;

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub(crate) struct TreapSeq {
    left: Vec<u32>,
    right: Vec<u32>,
    parent: Vec<u32>,
    size: Vec<u32>,
    prio: Vec<u64>,
    flip: Vec<bool>,
    root: u32,
    len: usize,
    scratch: Vec<u32>,
}

fn priority(v: Vertex) -> u64 {
    let mut z = (v as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl TreapSeq {
    /// Builds the treap over `seq` (distinct vertices below `n`) in linear time.
    pub(crate) fn new(n: usize, seq: &[Vertex]) -> TreapSeq {
        let mut t = TreapSeq {
            left: vec![NIL; n],
            right: vec![NIL; n],
            parent: vec![NIL; n],
            size: vec![0; n],
            prio: vec![0; n],
            flip: vec![false; n],
            root: NIL,
            len: seq.len(),
            scratch: Vec::new(),
        };
        // Cartesian tree on (position, priority) with a right spine stack
        let mut spine: Vec<u32> = Vec::new();
        for &v in seq {
            t.prio[v as usize] = priority(v);
            t.size[v as usize] = 1;
            let mut last = NIL;
            while let Some(&top) = spine.last() {
                if t.prio[top as usize] >= t.prio[v as usize] {
                    break;
                }
                last = spine.pop().unwrap();
            }
            t.left[v as usize] = last;
            if let Some(&top) = spine.last() {
                t.right[top as usize] = v;
            }
            spine.push(v);
        }
        if let Some(&r) = spine.first() {
            t.root = r;
            t.fix_subtree(r);
        }
        t
    }

    // recompute sizes and parents below `r` after construction
    fn fix_subtree(&mut self, r: u32) {
        let mut order = vec![r];
        let mut i = 0;
        while i < order.len() {
            let x = order[i] as usize;
            for c in [self.left[x], self.right[x]] {
                if c != NIL {
                    self.parent[c as usize] = x as u32;
                    order.push(c);
                }
            }
            i += 1;
        }
        self.parent[r as usize] = NIL;
        for &x in order.iter().rev() {
            self.pull(x);
        }
    }

    fn sz(&self, x: u32) -> u32 {
        if x == NIL {
            0
        } else {
            self.size[x as usize]
        }
    }

    fn pull(&mut self, x: u32) {
        let (l, r) = (self.left[x as usize], self.right[x as usize]);
        self.size[x as usize] = 1 + self.sz(l) + self.sz(r);
        if l != NIL {
            self.parent[l as usize] = x;
        }
        if r != NIL {
            self.parent[r as usize] = x;
        }
    }

    fn push(&mut self, x: u32) {
        let i = x as usize;
        if self.flip[i] {
            self.flip[i] = false;
            let (l, r) = (self.left[i], self.right[i]);
            self.left[i] = r;
            self.right[i] = l;
            for c in [l, r] {
                if c != NIL {
                    self.flip[c as usize] ^= true;
                }
            }
        }
    }

    // first `k` elements of `t` go left
    fn split(&mut self, t: u32, k: u32) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        self.push(t);
        let ls = self.sz(self.left[t as usize]);
        if k <= ls {
            let (a, b) = self.split(self.left[t as usize], k);
            self.left[t as usize] = b;
            self.pull(t);
            if a != NIL {
                self.parent[a as usize] = NIL;
            }
            (a, t)
        } else {
            let (a, b) = self.split(self.right[t as usize], k - ls - 1);
            self.right[t as usize] = a;
            self.pull(t);
            if b != NIL {
                self.parent[b as usize] = NIL;
            }
            (t, b)
        }
    }

    fn merge(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        if self.prio[a as usize] > self.prio[b as usize] {
            self.push(a);
            let r = self.merge(self.right[a as usize], b);
            self.right[a as usize] = r;
            self.pull(a);
            a
        } else {
            self.push(b);
            let l = self.merge(a, self.left[b as usize]);
            self.left[b as usize] = l;
            self.pull(b);
            b
        }
    }

    /// Reverses positions `from..len`.
    pub(crate) fn reverse_from(&mut self, from: usize) {
        let (a, b) = self.split(self.root, from as u32);
        if b != NIL {
            self.flip[b as usize] ^= true;
        }
        self.root = self.merge(a, b);
        self.parent[self.root as usize] = NIL;
    }

    /// Position of `v`, which must be in the sequence.
    pub(crate) fn position(&mut self, v: Vertex) -> usize {
        let mut chain = std::mem::take(&mut self.scratch);
        chain.clear();
        let mut x = v;
        while x != NIL {
            chain.push(x);
            x = self.parent[x as usize];
        }
        for &y in chain.iter().rev() {
            self.push(y);
        }
        let mut pos = self.sz(self.left[v as usize]) as usize;
        for w in chain.windows(2) {
            let (child, par) = (w[0], w[1]);
            if self.right[par as usize] == child {
                pos += self.sz(self.left[par as usize]) as usize + 1;
            }
        }
        self.scratch = chain;
        pos
    }

    /// Vertex at position `i < len`.
    pub(crate) fn at(&mut self, mut i: usize) -> Vertex {
        let mut x = self.root;
        loop {
            self.push(x);
            let ls = self.sz(self.left[x as usize]) as usize;
            if i < ls {
                x = self.left[x as usize];
            } else if i == ls {
                return x;
            } else {
                i -= ls + 1;
                x = self.right[x as usize];
            }
        }
    }

    pub(crate) fn to_vec(&mut self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.len);
        let mut stack = Vec::new();
        let mut x = self.root;
        while x != NIL || !stack.is_empty() {
            while x != NIL {
                self.push(x);
                stack.push(x);
                x = self.left[x as usize];
            }
            let y = stack.pop().unwrap();
            out.push(y);
            x = self.right[y as usize];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_a_plain_vector() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..20 {
            let n = 1 + trial * 13;
            let mut plain: Vec<Vertex> = (0..n as Vertex).rev().collect();
            let mut t = TreapSeq::new(n + 3, &plain);
            for _ in 0..200 {
                let from = rng.gen_range(0..=n);
                plain[from..].reverse();
                t.reverse_from(from);
                let v = plain[rng.gen_range(0..n)];
                assert_eq!(plain[t.position(v)], v);
                let i = rng.gen_range(0..n);
                assert_eq!(t.at(i), plain[i]);
            }
            assert_eq!(t.to_vec(), plain);
        }
    }
}

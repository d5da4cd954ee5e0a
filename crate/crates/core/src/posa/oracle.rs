//! Exact Hamiltonicity by dynamic programming over vertex subsets.

use crate::error::{Error, Result};
use crate::process::Vertex;

pub const ORACLE_MAX_N: usize = 20;

/// Returns a Hamilton cycle of the graph given by `adjacency`, or `None` if
/// there is none. Exponential in `n`; limited to `n <= 20`.
pub fn brute_force_hamilton(adjacency: &[Vec<Vertex>]) -> Result<Option<Vec<Vertex>>> {
    let n = adjacency.len();
    if n > ORACLE_MAX_N {
        return Err(Error::SizeLimit {
            n,
            limit: ORACLE_MAX_N,
        });
    }
    if n < 3 {
        return Ok(None);
    }
    let mut nbr = vec![0u32; n];
    for (v, list) in adjacency.iter().enumerate() {
        for &w in list {
            if w as usize >= n || w as usize == v {
                return Err(Error::InvalidParameter(format!("bad neighbor {w} of {v}")));
            }
            nbr[v] |= 1 << w;
            nbr[w as usize] |= 1 << v;
        }
    }
    // reach[mask]: vertices v such that some path from 0 covers exactly mask and ends at v
    let full = (1usize << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    for mask in 1..=full {
        if mask & 1 == 0 || reach[mask] == 0 {
            continue;
        }
        let mut ends = reach[mask];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut next = nbr[v] & !(mask as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                reach[mask | (1 << w)] |= 1 << w;
            }
        }
    }
    let closing = reach[full] & nbr[0];
    if closing == 0 {
        return Ok(None);
    }
    let mut cur = closing.trailing_zeros() as usize;
    let mut mask = full;
    let mut cycle = vec![cur as Vertex];
    while cur != 0 {
        let prev_mask = mask & !(1 << cur);
        let prev = (reach[prev_mask] & nbr[cur]).trailing_zeros() as usize;
        cycle.push(prev as Vertex);
        mask = prev_mask;
        cur = prev;
    }
    cycle.reverse();
    Ok(Some(cycle))
}

//! Hamilton cycles inside a merged color class via Pósa rotations, with
//! boosters closing cycles.

mod engine;
mod graph;
mod oracle;
mod path;
mod rotation;
mod treap;

use std::io::Write;

pub use engine::{
    extend_path, find_hamilton_cycle, try_boosters, verify_hamilton_cycle, BoosterStep, CycleResult,
    EngineConfig, EngineStats, FailureReason, Outcome, RotationState,
};
pub use graph::ColorClassGraph;
pub use oracle::{brute_force_hamilton, ORACLE_MAX_N};
pub use path::PathState;
pub use rotation::{compute_end_set, Extension, RotationTree, SearchLimits};

use crate::error::Result;
use crate::process::Vertex;

/// Writes the cycle dump: one `c v_0 v_1 ... v_{n-1}` line per color with a cycle.
pub fn write_cycle_dump<W: Write>(mut out: W, cycles: &[(usize, &[Vertex])]) -> Result<()> {
    for (color, cycle) in cycles {
        write!(out, "{color}")?;
        for v in cycle.iter() {
            write!(out, " {v}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

use serde::{Deserialize, Serialize};

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hash of a parent seed and a tag.
pub fn derive_seed(parent: u64, tag: u64) -> u64 {
    splitmix64(splitmix64(parent) ^ splitmix64(tag.wrapping_mul(GOLDEN) ^ 0x5851_f42d_4c95_7f2d))
}

pub fn trial_seed(master: u64, trial: u64) -> u64 {
    derive_seed(master, trial)
}

const PROCESS: u64 = 1;
const COLORING: u64 = 2;
const VALIDATORS: u64 = 3;
const ENGINE: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialSeeds {
    pub trial: u64,
    pub process: u64,
    pub coloring: u64,
    pub engine: Vec<u64>,
    pub validators: u64,
}

impl TrialSeeds {
    pub fn derive(master: u64, trial: u64, sigma: u32) -> TrialSeeds {
        let s = trial_seed(master, trial);
        TrialSeeds {
            trial: s,
            process: derive_seed(s, PROCESS),
            coloring: derive_seed(s, COLORING),
            engine: (0..sigma as u64).map(|c| derive_seed(s, ENGINE + c)).collect(),
            validators: derive_seed(s, VALIDATORS),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn phases_and_trials_get_distinct_seeds() {
        let mut all = HashSet::new();
        for master in 0..4 {
            for trial in 0..50 {
                let s = TrialSeeds::derive(master, trial, 3);
                for x in [s.trial, s.process, s.coloring, s.validators].into_iter().chain(s.engine) {
                    assert!(all.insert(x));
                }
            }
        }
        assert_eq!(TrialSeeds::derive(7, 3, 2), TrialSeeds::derive(7, 3, 2));
    }
}

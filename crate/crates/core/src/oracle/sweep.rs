use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Version of the serialized [`SweepReport`] layout.
pub const SCHEMA_VERSION: u32 = 1;

const MAX_DENOMINATOR: u32 = 16;
const MAX_POINTS: u32 = 4;
const MAX_N: u32 = 32;
const MAX_TORSION: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Floor,
    Divisor,
    Vanish,
    Basept,
    Crossmodule,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Floor,
        Suite::Divisor,
        Suite::Vanish,
        Suite::Basept,
        Suite::Crossmodule,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Floor => "floor",
            Suite::Divisor => "divisor",
            Suite::Vanish => "vanish",
            Suite::Basept => "basept",
            Suite::Crossmodule => "crossmodule",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "unknown suite {s:?}; expected floor, divisor, vanish, basept or crossmodule"
                ))
            })
    }
}

/// Grid bounds and execution settings of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub suite: Suite,
    pub max_denominator: u32,
    pub max_points: u32,
    pub max_n: u32,
    /// Cyclic torsion orders of the elliptic models; empty skips them.
    pub torsion_orders: Vec<u64>,
    /// Include `P¹`.
    pub p1: bool,
    /// Include an elliptic model whose points generate a free group.
    pub free_generator: bool,
    pub jobs: usize,
    /// Grid items per chunk.
    pub chunk_size: usize,
    /// First chunk to run, for resuming an interrupted sweep.
    pub start_chunk: usize,
    /// Mismatches kept per check; the counts are always complete.
    pub mismatch_cap: usize,
}

impl SweepConfig {
    pub fn new(suite: Suite) -> Self {
        SweepConfig {
            suite,
            max_denominator: 6,
            max_points: 3,
            max_n: 6,
            torsion_orders: Vec::new(),
            p1: true,
            free_generator: false,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            chunk_size: 64,
            start_chunk: 0,
            mismatch_cap: 50,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("max_denominator", self.max_denominator as usize),
            ("max_points", self.max_points as usize),
            ("max_n", self.max_n as usize),
            ("jobs", self.jobs),
            ("chunk_size", self.chunk_size),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Domain(format!("{name} must be at least 1")));
        }
        if self.max_denominator > MAX_DENOMINATOR {
            return Err(Error::Resource(format!(
                "max_denominator {} exceeds {MAX_DENOMINATOR}",
                self.max_denominator
            )));
        }
        if self.max_points > MAX_POINTS {
            return Err(Error::Resource(format!(
                "max_points {} exceeds {MAX_POINTS}",
                self.max_points
            )));
        }
        if self.max_n > MAX_N {
            return Err(Error::Resource(format!(
                "max_n {} exceeds {MAX_N}",
                self.max_n
            )));
        }
        if let Some(t) = self
            .torsion_orders
            .iter()
            .find(|&&t| t == 0 || t > MAX_TORSION)
        {
            return Err(Error::Resource(format!(
                "torsion order {t} is outside 1..={MAX_TORSION}"
            )));
        }
        Ok(())
    }
}

/// One disagreement between a classifier and its oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub check: String,
    pub input: String,
    pub classifier: String,
    pub oracle: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckStats {
    pub compared: u64,
    pub mismatches: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub config: SweepConfig,
    /// Instances compared: grid points times the orders `N` they are queried at.
    pub grid_size: u64,
    /// Grid points outside the standing hypotheses, counted in the same unit.
    pub skipped: u64,
    pub checks: BTreeMap<String, CheckStats>,
    /// Informational counters (not comparisons).
    pub notes: BTreeMap<String, u64>,
    pub mismatch_count: u64,
    /// The first `mismatch_cap` mismatches of every check, in grid order.
    pub mismatches: Vec<Mismatch>,
    pub chunks: usize,
    pub elapsed_secs: f64,
    pub success: bool,
}

impl SweepReport {
    /// Mismatches of one check.
    pub fn mismatches_of(&self, check: &str) -> u64 {
        self.checks.get(check).map_or(0, |c| c.mismatches)
    }

    pub fn compared(&self, check: &str) -> u64 {
        self.checks.get(check).map_or(0, |c| c.compared)
    }
}

/// Per-chunk accumulator.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    cap: usize,
    pub(crate) instances: u64,
    pub(crate) skipped: u64,
    checks: BTreeMap<&'static str, CheckStats>,
    kept: BTreeMap<String, usize>,
    notes: BTreeMap<&'static str, u64>,
    mismatches: Vec<Mismatch>,
}

impl Tally {
    fn new(cap: usize) -> Self {
        Tally {
            cap,
            ..Tally::default()
        }
    }

    /// Records one comparison; `input` is only rendered on disagreement.
    pub(crate) fn check<C, O>(
        &mut self,
        name: &'static str,
        classifier: C,
        oracle: O,
        input: impl FnOnce() -> String,
    ) where
        C: PartialEq<O> + fmt::Debug,
        O: fmt::Debug,
    {
        let agree = classifier == oracle;
        let stats = self.checks.entry(name).or_default();
        stats.compared += 1;
        if agree {
            return;
        }
        stats.mismatches += 1;
        let kept = self.kept.entry(name.to_string()).or_default();
        if *kept < self.cap {
            *kept += 1;
            self.mismatches.push(Mismatch {
                check: name.to_string(),
                input: input(),
                classifier: format!("{classifier:?}"),
                oracle: format!("{oracle:?}"),
            });
        }
    }

    pub(crate) fn note(&mut self, name: &'static str) {
        *self.notes.entry(name).or_default() += 1;
    }

    fn merge(&mut self, other: Tally) {
        self.instances += other.instances;
        self.skipped += other.skipped;
        for (k, v) in other.notes {
            *self.notes.entry(k).or_default() += v;
        }
        for (k, v) in other.checks {
            let s = self.checks.entry(k).or_default();
            s.compared += v.compared;
            s.mismatches += v.mismatches;
        }
        for m in other.mismatches {
            let kept = self.kept.entry(m.check.clone()).or_default();
            if *kept < self.cap {
                *kept += 1;
                self.mismatches.push(m);
            }
        }
    }
}

/// Runs `work` over the items in chunks, in parallel, merging chunk results
/// in chunk order.
pub(crate) fn run_chunks<T, F>(
    config: &SweepConfig,
    items: &[T],
    pre_skipped: u64,
    work: F,
) -> Result<SweepReport>
where
    T: Sync,
    F: Fn(&T, &mut Tally) -> Result<()> + Sync,
{
    config.validate()?;
    let started = Instant::now();
    let chunks: Vec<&[T]> = items.chunks(config.chunk_size).collect();
    if config.start_chunk > chunks.len() {
        return Err(Error::Domain(format!(
            "start chunk {} is past the last chunk {}",
            config.start_chunk,
            chunks.len()
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    let cap = config.mismatch_cap;
    let parts: Vec<Result<Tally>> = pool.install(|| {
        chunks[config.start_chunk..]
            .par_iter()
            .map(|chunk| {
                let mut t = Tally::new(cap);
                for item in chunk.iter() {
                    work(item, &mut t)?;
                }
                Ok(t)
            })
            .collect()
    });
    let mut total = Tally::new(cap);
    total.skipped = pre_skipped;
    for part in parts {
        total.merge(part?);
    }
    let mismatch_count = total.checks.values().map(|c| c.mismatches).sum();
    Ok(SweepReport {
        schema_version: SCHEMA_VERSION,
        suite: config.suite,
        config: config.clone(),
        grid_size: total.instances,
        skipped: total.skipped,
        checks: total
            .checks
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        notes: total
            .notes
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        mismatch_count,
        mismatches: total.mismatches,
        chunks: chunks.len(),
        elapsed_secs: started.elapsed().as_secs_f64(),
        success: mismatch_count == 0,
    })
}

//! Independent checking of claimed decompositions.
//!
//! [`verify`] never stops at the first problem: every missing or duplicated
//! arc, every overlong path and the full set of off-balance vertices end up
//! in [`VerificationReport::failures`].

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::digraph::{all_arcs, Arc, Decomposition, DirectedPath};
use crate::spectrum::LengthProfile;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Defect {
    MissingArc {
        arc: Arc,
    },
    /// `paths` holds the index of every path using the arc, in file order.
    DuplicateArc {
        arc: Arc,
        paths: Vec<usize>,
    },
    InvalidPath {
        path: usize,
        detail: String,
    },
    OverlongPath {
        path: usize,
        length: usize,
        limit: usize,
    },
    /// `(vertex, count)` pairs for every vertex whose count differs from the
    /// most common count.
    Imbalance {
        expected: u64,
        deviations: Vec<(u32, u64)>,
    },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::MissingArc { arc } => write!(f, "missing arc {arc}"),
            Defect::DuplicateArc { arc, paths } => write!(f, "arc {arc} used by paths {paths:?}"),
            Defect::InvalidPath { path, detail } => write!(f, "path #{path} invalid: {detail}"),
            Defect::OverlongPath { path, length, limit } => {
                write!(f, "path #{path} has length {length} > {limit} (Hamiltonian)")
            }
            Defect::Imbalance { expected, deviations } => {
                write!(f, "unbalanced: most vertices lie on {expected} paths, but")?;
                for (v, c) in deviations {
                    write!(f, " v{v}:{c}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: u32,
    pub is_partition: bool,
    pub paths_valid: bool,
    pub non_hamiltonian: bool,
    /// Entry `v - 1` is the number of paths through vertex `v`.
    pub vertex_path_counts: Vec<u64>,
    pub balanced: bool,
    pub k: Option<u64>,
    /// Absent when some path is Hamiltonian or `n < 3`, since such paths have
    /// no slot in a length profile.
    pub profile: Option<LengthProfile>,
    pub failures: Vec<Defect>,
}

impl VerificationReport {
    /// A valid balanced non-Hamiltonian decomposition.
    pub fn is_bnhdpd(&self) -> bool {
        self.is_partition && self.paths_valid && self.non_hamiltonian && self.balanced
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "order n:          {}", self.n)?;
        writeln!(f, "partition:        {}", yes_no(self.is_partition))?;
        writeln!(f, "paths valid:      {}", yes_no(self.paths_valid))?;
        writeln!(f, "non-Hamiltonian:  {}", yes_no(self.non_hamiltonian))?;
        writeln!(f, "paths per vertex: {:?}", self.vertex_path_counts)?;
        match self.k {
            Some(k) => writeln!(f, "balanced:         yes (k = {k})")?,
            None => writeln!(f, "balanced:         no")?,
        }
        match &self.profile {
            Some(p) => writeln!(f, "profile:          {p}")?,
            None => writeln!(f, "profile:          n/a")?,
        }
        if self.failures.is_empty() {
            writeln!(f, "defects:          none")
        } else {
            writeln!(f, "defects:          {}", self.failures.len())?;
            for d in &self.failures {
                writeln!(f, "  - {d}")?;
            }
            Ok(())
        }
    }
}

pub fn verify(d: &Decomposition) -> VerificationReport {
    let n = d.n();
    let limit = n.saturating_sub(2) as usize;
    let mut failures = Vec::new();

    let mut paths_valid = true;
    for (idx, path) in d.paths().iter().enumerate() {
        // Decomposition already enforces this; re-checked so the report stands alone.
        if let Err(e) = DirectedPath::new(path.vertices().to_vec()) {
            paths_valid = false;
            failures.push(Defect::InvalidPath { path: idx, detail: e.to_string() });
        } else if path.vertices().iter().any(|v| v.0 == 0 || v.0 > n) {
            paths_valid = false;
            failures.push(Defect::InvalidPath { path: idx, detail: format!("vertex outside 1..={n}") });
        }
    }

    let mut owners: BTreeMap<Arc, Vec<usize>> = BTreeMap::new();
    for (idx, path) in d.paths().iter().enumerate() {
        for arc in path.arcs() {
            owners.entry(arc).or_default().push(idx);
        }
    }
    let complete = all_arcs(n).expect("decomposition has n >= 2");
    let mut is_partition = true;
    for arc in &complete {
        if !owners.contains_key(arc) {
            is_partition = false;
            failures.push(Defect::MissingArc { arc: *arc });
        }
    }
    for (arc, paths) in &owners {
        if paths.len() > 1 {
            is_partition = false;
            failures.push(Defect::DuplicateArc { arc: *arc, paths: paths.clone() });
        }
    }

    let mut non_hamiltonian = true;
    for (idx, path) in d.paths().iter().enumerate() {
        if path.len() > limit {
            non_hamiltonian = false;
            failures.push(Defect::OverlongPath { path: idx, length: path.len(), limit });
        }
    }

    let mut counts = vec![0u64; n as usize];
    for path in d.paths() {
        for v in path.vertices() {
            if let Some(c) = counts.get_mut(v.0 as usize - 1) {
                *c += 1;
            }
        }
    }
    let balanced = counts.windows(2).all(|w| w[0] == w[1]);
    let k = balanced.then(|| counts[0]);
    if !balanced {
        let expected = modal(&counts);
        let deviations =
            counts.iter().enumerate().filter(|(_, &c)| c != expected).map(|(i, &c)| (i as u32 + 1, c)).collect();
        failures.push(Defect::Imbalance { expected, deviations });
    }

    let profile = if paths_valid && non_hamiltonian { extract_profile(d).ok() } else { None };

    VerificationReport {
        n,
        is_partition,
        paths_valid,
        non_hamiltonian,
        vertex_path_counts: counts,
        balanced,
        k,
        profile,
        failures,
    }
}

// Most frequent value; ties go to the smaller count.
fn modal(counts: &[u64]) -> u64 {
    let mut freq: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in counts {
        *freq.entry(c).or_insert(0) += 1;
    }
    freq.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))).map(|(c, _)| *c).unwrap_or(0)
}

/// Counts paths by length; fails on any path longer than `n - 2`.
pub fn extract_profile(d: &Decomposition) -> Result<LengthProfile> {
    let n = d.n();
    let limit = n.saturating_sub(2) as usize;
    let mut counts = vec![0u64; limit];
    for path in d.paths() {
        let len = path.len();
        if len > limit {
            return Err(Error::Hamiltonian { path: path.indices(), length: len, limit });
        }
        counts[len - 1] += 1;
    }
    LengthProfile::new(n, counts)
}

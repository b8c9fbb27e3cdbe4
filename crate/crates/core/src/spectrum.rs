//! Length profiles and the counting conditions on balanced decompositions.
//!
//! A profile `(x_1, ..., x_{n-2})` records how many paths of each length a
//! non-Hamiltonian decomposition uses. Three integer identities constrain it:
//!
//! - the lengths cover every arc: `sum i * x_i = n(n-1)`;
//! - counting vertex/path incidences twice gives `n * k = sum (i+1) * x_i`,
//!   so `n` divides the number of paths `sum x_i`;
//! - `n` divides the number of interior vertices `sum (i-1) * x_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Largest order [`enumerate_profiles`] accepts unless told otherwise.
pub const DEFAULT_MAX_ORDER: u32 = 9;

/// Path counts by length for a decomposition of the complete digraph on `n`
/// vertices. `counts()[i - 1]` is the number of paths of length `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LengthProfile {
    n: u32,
    counts: Vec<u64>,
}

impl LengthProfile {
    pub fn new(n: u32, counts: Vec<u64>) -> Result<Self> {
        if n < 3 {
            return Err(Error::OrderOutOfRange { n, reason: "length profiles need n >= 3" });
        }
        let expected = (n - 2) as usize;
        if counts.len() != expected {
            return Err(Error::ProfileShape { expected, got: counts.len() });
        }
        Ok(LengthProfile { n, counts })
    }

    /// Parses a comma separated list such as `"0,10,0"`.
    pub fn parse(n: u32, text: &str) -> Result<Self> {
        let counts = text
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|e| Error::Schema(format!("profile entry {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        LengthProfile::new(n, counts)
    }

    /// The all-arcs profile `(n(n-1), 0, ..., 0)`.
    pub fn trivial(n: u32) -> Result<Self> {
        let mut counts = vec![0; n.saturating_sub(2) as usize];
        if let Some(first) = counts.first_mut() {
            *first = u64::from(n) * u64::from(n - 1);
        }
        LengthProfile::new(n, counts)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of paths of length `len` (zero outside `1..=n-2`).
    pub fn count(&self, len: usize) -> u64 {
        len.checked_sub(1).and_then(|i| self.counts.get(i)).copied().unwrap_or(0)
    }

    /// Iterates `(length, count)` pairs.
    pub fn by_length(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().enumerate().map(|(i, &x)| (i as u64 + 1, x))
    }

    /// Number of paths, `sum x_i`.
    pub fn size(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Arcs covered, `sum i * x_i`.
    pub fn arc_total(&self) -> u64 {
        self.by_length().map(|(i, x)| i * x).sum()
    }

    /// Vertex/path incidences, `sum (i+1) * x_i`.
    pub fn incidence_total(&self) -> u64 {
        self.by_length().map(|(i, x)| (i + 1) * x).sum()
    }

    /// Interior vertices over all paths, `sum (i-1) * x_i`.
    pub fn interior_total(&self) -> u64 {
        self.by_length().map(|(i, x)| (i - 1) * x).sum()
    }

    pub fn complete_arc_count(&self) -> u64 {
        u64::from(self.n) * u64::from(self.n - 1)
    }

    /// Distance used to suggest nearby profiles.
    pub fn l1_distance(&self, other: &LengthProfile) -> u64 {
        self.counts.iter().zip(&other.counts).map(|(a, b)| a.abs_diff(*b)).sum()
    }
}

impl fmt::Display for LengthProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('(')?;
        for (i, x) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{x}")?;
        }
        f.write_char(')')
    }
}

impl Serialize for LengthProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.counts.serialize(serializer)
    }
}

/// Outcome of checking a profile against the necessary conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub arc_count_ok: bool,
    pub k: Option<u64>,
    pub path_count_divisible: bool,
    pub interior_divisible: bool,
    pub admissible: bool,
}

/// True iff the path lengths add up to the `n(n-1)` arcs of the complete digraph.
pub fn arc_count_ok(p: &LengthProfile) -> bool {
    p.arc_total() == p.complete_arc_count()
}

/// The number of paths through each vertex a balanced decomposition with
/// this profile would have, if that number is an integer.
pub fn balanced_k(p: &LengthProfile) -> Result<Option<u64>> {
    if !arc_count_ok(p) {
        return Err(Error::ArcCount { profile: p.clone() });
    }
    Ok(incidence_k(p))
}

fn incidence_k(p: &LengthProfile) -> Option<u64> {
    let n = u64::from(p.n);
    let total = p.incidence_total();
    (total.is_multiple_of(n) && total > 0).then_some(total / n)
}

pub fn necessary_conditions(p: &LengthProfile) -> ConditionReport {
    let n = u64::from(p.n);
    let arc_count_ok = arc_count_ok(p);
    let path_count_divisible = p.size().is_multiple_of(n);
    let interior_divisible = p.interior_total().is_multiple_of(n);
    ConditionReport {
        arc_count_ok,
        k: incidence_k(p),
        path_count_divisible,
        interior_divisible,
        admissible: arc_count_ok && path_count_divisible && interior_divisible,
    }
}

/// All nonnegative solutions of `sum i * x_i = n(n-1)` for `1 <= i <= n-2`,
/// lexicographically ordered, for `3 <= n <= DEFAULT_MAX_ORDER`.
pub fn enumerate_profiles(n: u32, admissible_only: bool) -> Result<Vec<LengthProfile>> {
    enumerate_profiles_bounded(n, admissible_only, DEFAULT_MAX_ORDER)
}

pub fn enumerate_profiles_bounded(n: u32, admissible_only: bool, max_order: u32) -> Result<Vec<LengthProfile>> {
    if n < 3 {
        return Err(Error::OrderOutOfRange { n, reason: "length profiles need n >= 3" });
    }
    if n > max_order {
        return Err(Error::OrderOutOfRange { n, reason: "above the configured enumeration bound" });
    }
    let parts = (n - 2) as usize;
    let total = u64::from(n) * u64::from(n - 1);
    let mut out = Vec::new();
    let mut current = vec![0u64; parts];
    fill(0, total, &mut current, &mut |counts| {
        let profile = LengthProfile { n, counts: counts.to_vec() };
        if !admissible_only || necessary_conditions(&profile).admissible {
            out.push(profile);
        }
    });
    Ok(out)
}

// x_1 is chosen in the outermost loop, so solutions come out in lexicographic order.
fn fill(idx: usize, remaining: u64, current: &mut [u64], emit: &mut impl FnMut(&[u64])) {
    let len = idx as u64 + 1;
    if idx + 1 == current.len() {
        if remaining.is_multiple_of(len) {
            current[idx] = remaining / len;
            emit(current);
        }
        return;
    }
    for x in 0..=remaining / len {
        current[idx] = x;
        fill(idx + 1, remaining - x * len, current, emit);
    }
    current[idx] = 0;
}

/// Number of profiles of each size `s = sum x_i`.
pub fn spectrum_histogram(n: u32) -> Result<BTreeMap<u64, usize>> {
    let mut hist = BTreeMap::new();
    for p in enumerate_profiles(n, false)? {
        *hist.entry(p.size()).or_insert(0) += 1;
    }
    Ok(hist)
}

/// `s,count` CSV with rows in ascending `s`.
pub fn histogram_csv(hist: &BTreeMap<u64, usize>) -> String {
    let mut out = String::from("s,count\n");
    for (s, c) in hist {
        let _ = writeln!(out, "{s},{c}");
    }
    out
}

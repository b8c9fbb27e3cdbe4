//! Stored witness decompositions.
//!
//! Each subcase table lives in `tables/<tag>.json` and is compiled into the
//! crate. A table lists its paths in parts `P<i>` (length `i`) and `P<i>r`
//! (reverses of length-`i` paths). Tables flagged `singleton_fill` leave the
//! length-1 part implicit: every arc not used by a longer path becomes its
//! own path, in ascending `(tail, head)` order.
//!
//! Repairs to the printed tables are documented in `ERRATA.md` at the
//! repository root.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::Deserialize;

use crate::digraph::{all_arcs, Decomposition, DirectedPath};
use crate::spectrum::{necessary_conditions, LengthProfile};
use crate::{Error, Result};

const TABLE_SOURCES: [(&str, &str); 29] = [
    ("n5-1a", include_str!("../tables/n5-1a.json")),
    ("n5-1b", include_str!("../tables/n5-1b.json")),
    ("n5-1c", include_str!("../tables/n5-1c.json")),
    ("n5-1d", include_str!("../tables/n5-1d.json")),
    ("n5-1e", include_str!("../tables/n5-1e.json")),
    ("n5-1f", include_str!("../tables/n5-1f.json")),
    ("n5-2a", include_str!("../tables/n5-2a.json")),
    ("n5-2b", include_str!("../tables/n5-2b.json")),
    ("n5-2c", include_str!("../tables/n5-2c.json")),
    ("n6-1a", include_str!("../tables/n6-1a.json")),
    ("n6-1b", include_str!("../tables/n6-1b.json")),
    ("n6-1c", include_str!("../tables/n6-1c.json")),
    ("n6-1d", include_str!("../tables/n6-1d.json")),
    ("n6-1e", include_str!("../tables/n6-1e.json")),
    ("n6-1f", include_str!("../tables/n6-1f.json")),
    ("n6-1g", include_str!("../tables/n6-1g.json")),
    ("n6-1h", include_str!("../tables/n6-1h.json")),
    ("n6-1i", include_str!("../tables/n6-1i.json")),
    ("n6-2a", include_str!("../tables/n6-2a.json")),
    ("n6-2b", include_str!("../tables/n6-2b.json")),
    ("n6-2c", include_str!("../tables/n6-2c.json")),
    ("n6-2d", include_str!("../tables/n6-2d.json")),
    ("n6-2e", include_str!("../tables/n6-2e.json")),
    ("n6-2f", include_str!("../tables/n6-2f.json")),
    ("n6-2g", include_str!("../tables/n6-2g.json")),
    ("n6-3a", include_str!("../tables/n6-3a.json")),
    ("n6-3b", include_str!("../tables/n6-3b.json")),
    ("n6-3c", include_str!("../tables/n6-3c.json")),
    ("n6-3d", include_str!("../tables/n6-3d.json")),
];

/// Tag reported for the all-arcs decomposition.
pub const TRIVIAL_TAG: &str = "trivial";

/// One named set of equal-length paths within a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub length: usize,
    /// `true` for the primed sets (`P'_i`), stored exactly as printed; they
    /// need not be reverses of the unprimed set.
    pub reversed: bool,
    pub paths: Vec<DirectedPath>,
}

impl Part {
    pub fn name(&self) -> String {
        format!("P{}{}", self.length, if self.reversed { "r" } else { "" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionTable {
    pub n: u32,
    pub profile: LengthProfile,
    pub source: String,
    pub singleton_fill: bool,
    /// Longest parts first, each unprimed part before its primed partner.
    pub parts: Vec<Part>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    n: u32,
    profile: Vec<u64>,
    source: String,
    #[serde(default)]
    singleton_fill: bool,
    parts: BTreeMap<String, Vec<Vec<u32>>>,
}

impl ConstructionTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawTable = serde_json::from_str(text)?;
        let profile = LengthProfile::new(raw.n, raw.profile)?;
        let table_err = |detail: String| Error::Table { source_tag: raw.source.clone(), detail };
        let mut parts = Vec::with_capacity(raw.parts.len());
        for (name, paths) in &raw.parts {
            let (length, reversed) =
                parse_part_name(name).ok_or_else(|| table_err(format!("bad part name {name:?}")))?;
            if length == 0 || length > (raw.n as usize).saturating_sub(2) {
                return Err(table_err(format!("part {name} outside lengths 1..={}", raw.n - 2)));
            }
            let paths = paths.iter().map(|p| DirectedPath::from_indices(p)).collect::<Result<Vec<_>>>()?;
            if let Some(bad) = paths.iter().find(|p| p.len() != length) {
                return Err(table_err(format!("part {name} holds {bad} of length {}", bad.len())));
            }
            parts.push(Part { length, reversed, paths });
        }
        parts.sort_by(|a, b| b.length.cmp(&a.length).then(a.reversed.cmp(&b.reversed)));
        Ok(ConstructionTable { n: raw.n, profile, source: raw.source, singleton_fill: raw.singleton_fill, parts })
    }

    /// Paths in assembly order, before any singleton completion.
    pub fn listed_paths(&self) -> impl Iterator<Item = &DirectedPath> {
        self.parts.iter().flat_map(|p| p.paths.iter())
    }

    /// The decomposition `U (P_i u P'_i)`, completed with singletons when the
    /// table asks for it.
    pub fn assemble(&self) -> Result<Decomposition> {
        let mut paths: Vec<DirectedPath> = self.listed_paths().cloned().collect();
        if self.singleton_fill {
            let used: BTreeSet<_> = paths.iter().flat_map(|p| p.arcs().collect::<Vec<_>>()).collect();
            for arc in all_arcs(self.n)? {
                if !used.contains(&arc) {
                    paths.push(DirectedPath::new(vec![arc.tail, arc.head])?);
                }
            }
        }
        Decomposition::new(self.n, paths)
    }
}

fn parse_part_name(name: &str) -> Option<(usize, bool)> {
    let rest = name.strip_prefix('P')?;
    let (digits, reversed) = match rest.strip_suffix('r') {
        Some(d) => (d, true),
        None => (rest, false),
    };
    Some((digits.parse().ok()?, reversed))
}

/// Every stored table, parsed once.
pub fn tables() -> &'static [ConstructionTable] {
    static TABLES: OnceLock<Vec<ConstructionTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        TABLE_SOURCES
            .iter()
            .map(|(tag, text)| {
                let table = ConstructionTable::from_json(text).unwrap_or_else(|e| panic!("table {tag}: {e}"));
                assert_eq!(table.source, *tag, "table file name and source tag disagree");
                table
            })
            .collect()
    })
}

pub fn table(tag: &str) -> Option<&'static ConstructionTable> {
    tables().iter().find(|t| t.source == tag)
}

/// `P'`: the same vertices in the opposite order.
pub fn reverse_path(p: &DirectedPath) -> DirectedPath {
    p.reversed()
}

/// Every arc as its own path; balanced with `k = 2(n-1)`.
pub fn construct_trivial(n: u32) -> Result<Decomposition> {
    let paths =
        all_arcs(n)?.into_iter().map(|a| DirectedPath::new(vec![a.tail, a.head])).collect::<Result<Vec<_>>>()?;
    Decomposition::new(n, paths)
}

/// The stored decomposition for `(n, profile)`.
pub fn construct(n: u32, profile: &LengthProfile) -> Result<Decomposition> {
    if profile.n() != n {
        return Err(Error::ProfileShape { expected: (n as usize).saturating_sub(2), got: profile.counts().len() });
    }
    let report = necessary_conditions(profile);
    if !report.arc_count_ok {
        return Err(Error::ArcCount { profile: profile.clone() });
    }
    if !report.admissible {
        let mut broken = Vec::new();
        if !report.path_count_divisible {
            broken.push(format!("{n} does not divide the {} paths", profile.size()));
        }
        if !report.interior_divisible {
            broken.push(format!("{n} does not divide the {} interior vertices", profile.interior_total()));
        }
        return Err(Error::ConditionViolation { profile: profile.clone(), detail: broken.join("; ") });
    }
    if *profile == LengthProfile::trivial(n)? {
        return construct_trivial(n);
    }
    match tables().iter().find(|t| t.n == n && t.profile == *profile) {
        Some(t) => t.assemble(),
        None => {
            let mut supported: Vec<LengthProfile> = list_supported(n).into_iter().map(|(p, _)| p).collect();
            supported.sort_by_key(|p| (p.l1_distance(profile), p.clone()));
            supported.truncate(3);
            Err(Error::NoStoredConstruction { n, profile: profile.clone(), nearest: supported })
        }
    }
}

/// Stored `(profile, tag)` pairs for `n`, followed by the trivial profile.
pub fn list_supported(n: u32) -> Vec<(LengthProfile, String)> {
    let mut out: Vec<(LengthProfile, String)> =
        tables().iter().filter(|t| t.n == n).map(|t| (t.profile.clone(), t.source.clone())).collect();
    if let Ok(trivial) = LengthProfile::trivial(n) {
        out.push((trivial, TRIVIAL_TAG.to_owned()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::balanced_k;
    use crate::verifier::verify;

    fn profile(n: u32, xs: &[u64]) -> LengthProfile {
        LengthProfile::new(n, xs.to_vec()).unwrap()
    }

    fn path(ix: &[u32]) -> DirectedPath {
        DirectedPath::from_indices(ix).unwrap()
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse_path(&path(&[1, 2, 4])), path(&[4, 2, 1]));
        assert_eq!(reverse_path(&path(&[1, 2])), path(&[2, 1]));
        let p = path(&[3, 1, 5, 4]);
        assert_eq!(reverse_path(&reverse_path(&p)), p);
    }

    #[test]
    fn trivial_decompositions() {
        for (n, k) in [(3u32, 4u64), (5, 8), (6, 10)] {
            let d = construct_trivial(n).unwrap();
            assert_eq!(d.paths().len() as u32, n * (n - 1));
            let r = verify(&d);
            assert!(r.is_bnhdpd());
            assert_eq!(r.k, Some(k));
        }
        assert!(construct_trivial(1).is_err());
    }

    #[test]
    fn table_counts() {
        assert_eq!(tables().len(), 29);
        assert_eq!(list_supported(5).len(), 10);
        assert_eq!(list_supported(6).len(), 21);
        assert_eq!(list_supported(7), vec![(profile(7, &[42, 0, 0, 0, 0]), TRIVIAL_TAG.to_owned())]);
        assert_eq!(list_supported(5).last().unwrap().0, profile(5, &[20, 0, 0]));
    }

    #[test]
    fn every_table_assembles_to_a_balanced_decomposition() {
        for t in tables() {
            let d = t.assemble().unwrap();
            let r = verify(&d);
            assert!(r.is_bnhdpd() && r.is_clean(), "{}: {:?}", t.source, r.failures);
            assert_eq!(r.k, balanced_k(&t.profile).unwrap(), "{}", t.source);
            assert_eq!(r.profile.as_ref(), Some(&t.profile), "{}", t.source);
        }
    }

    #[test]
    fn singleton_fill_matches_declared_count() {
        for t in tables().iter().filter(|t| t.singleton_fill) {
            let listed_singletons = t.listed_paths().filter(|p| p.len() == 1).count() as u64;
            let filled = t.assemble().unwrap().paths().len() - t.listed_paths().count();
            assert_eq!(filled as u64 + listed_singletons, t.profile.count(1), "{}", t.source);
        }
    }

    #[test]
    fn subcase_1a_of_order_five() {
        let d = construct(5, &profile(5, &[0, 10, 0])).unwrap();
        let got: Vec<Vec<u32>> = d.paths().iter().map(DirectedPath::indices).collect();
        let forward = [[1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]];
        for f in forward {
            assert!(got.contains(&f.to_vec()));
            let mut r = f;
            r.reverse();
            assert!(got.contains(&r.to_vec()));
        }
        assert_eq!(got.len(), 10);
    }

    #[test]
    fn subcase_1f_of_order_five() {
        let d = construct(5, &profile(5, &[5, 0, 5])).unwrap();
        let got: Vec<Vec<u32>> = d.paths().iter().map(DirectedPath::indices).collect();
        assert_eq!(
            got,
            vec![
                vec![1, 2, 4, 3],
                vec![2, 3, 5, 4],
                vec![3, 4, 1, 5],
                vec![4, 5, 2, 1],
                vec![5, 1, 3, 2],
                vec![2, 5],
                vec![3, 1],
                vec![4, 2],
                vec![5, 3],
                vec![1, 4],
            ]
        );
    }

    #[test]
    fn subcase_3a_of_order_six_fills_in_order() {
        let d = construct(6, &profile(6, &[21, 0, 3, 0])).unwrap();
        assert_eq!(d.paths()[0].indices(), vec![6, 1, 2, 4]);
        let singles: Vec<Vec<u32>> = d.paths()[3..].iter().map(DirectedPath::indices).collect();
        assert_eq!(singles.len(), 21);
        assert!(singles.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(verify(&d).k, Some(9));
    }

    #[test]
    fn construct_rejects_inadmissible_and_unknown_profiles() {
        assert!(matches!(construct(5, &profile(5, &[2, 0, 6])), Err(Error::ConditionViolation { .. })));
        assert!(matches!(construct(5, &profile(5, &[1, 1, 1])), Err(Error::ArcCount { .. })));
        match construct(6, &profile(6, &[0, 7, 4, 1])) {
            Err(Error::NoStoredConstruction { nearest, .. }) => {
                assert_eq!(nearest.len(), 3);
                assert_eq!(nearest[0], profile(6, &[0, 6, 6, 0]));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(construct(4, &profile(4, &[4, 4])), Err(Error::NoStoredConstruction { .. })));
        assert!(construct(4, &profile(4, &[12, 0])).is_ok());
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let wrong_len = r#"{"n":5,"profile":[0,10,0],"source":"x","parts":{"P2":[[1,2]]}}"#;
        assert!(matches!(ConstructionTable::from_json(wrong_len), Err(Error::Table { .. })));
        let bad_name = r#"{"n":5,"profile":[0,10,0],"source":"x","parts":{"Q2":[[1,2,3]]}}"#;
        assert!(ConstructionTable::from_json(bad_name).is_err());
        let too_long = r#"{"n":5,"profile":[0,10,0],"source":"x","parts":{"P4":[[1,2,3,4,5]]}}"#;
        assert!(ConstructionTable::from_json(too_long).is_err());
    }
}

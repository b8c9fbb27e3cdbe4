//! Exact search for path decompositions with a prescribed length profile.
//!
//! The search places whole paths. At every node it takes the
//! lexicographically smallest uncovered arc, which some path must cover,
//! and branches over every path through that arc built from uncovered arcs:
//! longest remaining length first, then by the arc's position in the path,
//! then by vertex order. This is a complete enumeration of arc partitions
//! with the requested profile.
//!
//! Two reductions are on by default:
//!
//! - **Symmetry.** Every permutation of the vertices is an automorphism of
//!   the complete digraph and preserves profiles and balance. Given any
//!   solution, pick one of its longest paths `u_1 ... u_{L+1}` and relabel
//!   `u_j -> j`; the result is a solution containing `1 2 ... L+1`. So the
//!   root may place that path without losing any existence verdict. This
//!   subsumes fixing the first arc to `(1, 2)`.
//! - **Balance pruning** ([`prune_rules`]). A vertex with `a` uncovered
//!   in-arcs and `b` uncovered out-arcs will be met by between `max(a, b)`
//!   and `a + b` further paths (each further path through it uses one or two
//!   of those arcs, and only a pass-through uses one of each). A branch is
//!   cut when that range misses the remaining quota `k - count`.
//!
//! Both can be switched off; the tests compare the reduced search with the
//! plain one on every profile of order 4.

use serde::Serialize;

use crate::digraph::{Decomposition, DirectedPath, Vertex};
use crate::spectrum::{arc_count_ok, necessary_conditions, LengthProfile};
use crate::verifier::verify;
use crate::{Error, Result};

/// Budget value meaning "no limit".
pub const UNLIMITED: u64 = u64::MAX;

/// Node budget used when the caller gives none: unlimited up to `n = 5`,
/// `10^8` above.
pub fn default_budget(n: u32) -> u64 {
    if n <= 5 {
        UNLIMITED
    } else {
        100_000_000
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    Found,
    Exhausted,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Decomposition>,
    pub nodes_explored: u64,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub require_balanced: bool,
    pub budget_nodes: u64,
    pub pruning: bool,
    pub symmetry: bool,
}

impl SearchOptions {
    pub fn new(require_balanced: bool, budget_nodes: u64) -> Self {
        SearchOptions { require_balanced, budget_nodes, pruning: true, symmetry: true }
    }

    /// No pruning and no symmetry reduction; the reference search.
    pub fn plain(require_balanced: bool, budget_nodes: u64) -> Self {
        SearchOptions { require_balanced, budget_nodes, pruning: false, symmetry: false }
    }
}

/// Arc coverage and per-vertex bookkeeping for a partial decomposition.
/// Vertices are 0-based internally.
#[derive(Clone, Debug)]
pub struct PartialState {
    n: usize,
    covered: Vec<bool>,
    uncovered: usize,
    path_counts: Vec<u64>,
    in_left: Vec<u64>,
    out_left: Vec<u64>,
    lengths_left: Vec<u64>,
    /// `Some(k)` when every vertex must end on exactly `k` paths.
    balance_target: Option<u64>,
}

impl PartialState {
    /// Empty state for `profile`; `balance_target` is the required `k`, if any.
    pub fn new(profile: &LengthProfile, balance_target: Option<u64>) -> Self {
        let n = profile.n() as usize;
        let mut covered = vec![false; n * n];
        for v in 0..n {
            covered[v * n + v] = true;
        }
        PartialState {
            n,
            covered,
            uncovered: n * (n - 1),
            path_counts: vec![0; n],
            in_left: vec![n as u64 - 1; n],
            out_left: vec![n as u64 - 1; n],
            lengths_left: profile.counts().to_vec(),
            balance_target,
        }
    }

    pub fn path_count(&self, v: Vertex) -> u64 {
        self.path_counts[v.0 as usize - 1]
    }

    pub fn uncovered_arcs(&self) -> usize {
        self.uncovered
    }

    pub fn balance_target(&self) -> Option<u64> {
        self.balance_target
    }

    fn is_free(&self, tail: usize, head: usize) -> bool {
        !self.covered[tail * self.n + head]
    }

    /// True if every arc of `path` is uncovered and a path of its length is
    /// still owed.
    pub fn can_place(&self, path: &DirectedPath) -> bool {
        let len = path.len();
        len <= self.lengths_left.len()
            && self.lengths_left[len - 1] > 0
            && path.vertices().iter().all(|v| (v.0 as usize) >= 1 && (v.0 as usize) <= self.n)
            && path.arcs().all(|a| self.is_free(a.tail.0 as usize - 1, a.head.0 as usize - 1))
    }

    /// Marks `path` as placed. Callers check [`can_place`](Self::can_place) first.
    pub fn place(&mut self, path: &DirectedPath) {
        self.place_raw(&zero_based(path));
    }

    pub fn remove(&mut self, path: &DirectedPath) {
        self.remove_raw(&zero_based(path));
    }

    fn place_raw(&mut self, vs: &[usize]) {
        for w in vs.windows(2) {
            self.covered[w[0] * self.n + w[1]] = true;
            self.out_left[w[0]] -= 1;
            self.in_left[w[1]] -= 1;
        }
        for &v in vs {
            self.path_counts[v] += 1;
        }
        self.uncovered -= vs.len() - 1;
        self.lengths_left[vs.len() - 2] -= 1;
    }

    fn remove_raw(&mut self, vs: &[usize]) {
        for w in vs.windows(2) {
            self.covered[w[0] * self.n + w[1]] = false;
            self.out_left[w[0]] += 1;
            self.in_left[w[1]] += 1;
        }
        for &v in vs {
            self.path_counts[v] -= 1;
        }
        self.uncovered += vs.len() - 1;
        self.lengths_left[vs.len() - 2] += 1;
    }

    fn first_uncovered(&self) -> Option<(usize, usize)> {
        self.covered.iter().position(|c| !c).map(|i| (i / self.n, i % self.n))
    }

    fn is_balanced(&self) -> bool {
        self.path_counts.windows(2).all(|w| w[0] == w[1])
    }
}

fn zero_based(path: &DirectedPath) -> Vec<usize> {
    path.vertices().iter().map(|v| v.0 as usize - 1).collect()
}

/// Returns `false` when the branch ending in `state` cannot be completed to
/// a decomposition meeting the balance target.
///
/// With no balance target nothing is cut. With target `k` the branch is cut
/// when the profile itself fails the divisibility conditions, when some
/// vertex already lies on more than `k` paths, or when its uncovered arcs
/// force too many or too few further paths through it.
pub fn prune_rules(profile: &LengthProfile, state: &PartialState) -> bool {
    let Some(k) = state.balance_target else {
        return true;
    };
    if state.uncovered == state.n * (state.n - 1) && !necessary_conditions(profile).admissible {
        return false;
    }
    (0..state.n).all(|v| {
        let count = state.path_counts[v];
        if count > k {
            return false;
        }
        let quota = k - count;
        let (a, b) = (state.in_left[v], state.out_left[v]);
        a.max(b) <= quota && quota <= a + b
    })
}

/// Searches for a decomposition of the complete digraph on `n` vertices with
/// the given profile, balanced if asked, within `budget_nodes` search nodes.
pub fn search(n: u32, profile: &LengthProfile, require_balanced: bool, budget_nodes: u64) -> Result<SearchOutcome> {
    search_with(n, profile, &SearchOptions::new(require_balanced, budget_nodes))
}

pub fn search_with(n: u32, profile: &LengthProfile, options: &SearchOptions) -> Result<SearchOutcome> {
    search_extending(n, profile, &[], options)
}

/// Like [`search_with`], but every solution must contain the paths in
/// `fixed`. Symmetry reduction is skipped when `fixed` is nonempty.
pub fn search_extending(
    n: u32,
    profile: &LengthProfile,
    fixed: &[DirectedPath],
    options: &SearchOptions,
) -> Result<SearchOutcome> {
    if profile.n() != n {
        return Err(Error::Search(format!("profile {profile} is for n = {}, not {n}", profile.n())));
    }
    if !arc_count_ok(profile) {
        return Err(Error::ArcCount { profile: profile.clone() });
    }
    if options.budget_nodes == 0 {
        return Err(Error::Search("budget must be positive".into()));
    }

    let target = if options.require_balanced {
        let total = profile.incidence_total();
        let n64 = u64::from(n);
        // Non-integral k can still be handed to the pruner as 0 paths of slack;
        // the divisibility check at the root rejects it.
        Some(if total.is_multiple_of(n64) { total / n64 } else { 0 })
    } else {
        None
    };

    let mut search =
        Search { state: PartialState::new(profile, target), profile, options, stack: Vec::new(), nodes: 1 };

    let finish = |search: Search<'_>, status: SearchStatus| -> Result<SearchOutcome> {
        let witness = match status {
            SearchStatus::Found => {
                let paths = search
                    .stack
                    .iter()
                    .map(|vs| DirectedPath::new(vs.iter().map(|&v| Vertex(v as u32 + 1)).collect()))
                    .collect::<Result<Vec<_>>>()?;
                let d = Decomposition::new(n, paths)?;
                let report = verify(&d);
                assert!(report.is_partition && report.non_hamiltonian, "search produced an invalid witness");
                assert_eq!(report.profile.as_ref(), Some(profile), "search produced the wrong profile");
                assert!(!options.require_balanced || report.balanced, "search produced an unbalanced witness");
                Some(d)
            }
            _ => None,
        };
        Ok(SearchOutcome { status, witness, nodes_explored: search.nodes, budget: options.budget_nodes })
    };

    if options.pruning && !prune_rules(profile, &search.state) {
        return finish(search, SearchStatus::Exhausted);
    }

    for path in fixed {
        if path.vertices().iter().any(|v| v.0 == 0 || v.0 > n) || !search.state.can_place(path) {
            return finish(search, SearchStatus::Exhausted);
        }
        let vs = zero_based(path);
        search.state.place_raw(&vs);
        search.stack.push(vs);
    }
    if options.pruning && !prune_rules(profile, &search.state) {
        return finish(search, SearchStatus::Exhausted);
    }

    if options.symmetry && fixed.is_empty() {
        let longest = profile.counts().iter().rposition(|&x| x > 0).map(|i| i + 1);
        if let Some(len) = longest {
            let seed: Vec<usize> = (0..=len).collect();
            search.nodes += 1;
            search.state.place_raw(&seed);
            search.stack.push(seed);
            if options.pruning && !prune_rules(profile, &search.state) {
                return finish(search, SearchStatus::Exhausted);
            }
        }
    }

    let status = match search.dfs() {
        Flow::Found => SearchStatus::Found,
        Flow::Exhausted => SearchStatus::Exhausted,
        Flow::Budget => SearchStatus::BudgetExceeded,
    };
    finish(search, status)
}

enum Flow {
    Found,
    Exhausted,
    Budget,
}

struct Search<'a> {
    state: PartialState,
    profile: &'a LengthProfile,
    options: &'a SearchOptions,
    stack: Vec<Vec<usize>>,
    nodes: u64,
}

impl Search<'_> {
    fn dfs(&mut self) -> Flow {
        let Some((u, v)) = self.state.first_uncovered() else {
            return if self.state.balance_target.is_none() || self.state.is_balanced() {
                Flow::Found
            } else {
                Flow::Exhausted
            };
        };
        for len in (1..=self.state.lengths_left.len()).rev() {
            if self.state.lengths_left[len - 1] == 0 {
                continue;
            }
            for candidate in self.paths_through(u, v, len) {
                if self.nodes >= self.options.budget_nodes {
                    return Flow::Budget;
                }
                self.nodes += 1;
                self.state.place_raw(&candidate);
                if !self.options.pruning || prune_rules(self.profile, &self.state) {
                    self.stack.push(candidate);
                    match self.dfs() {
                        Flow::Exhausted => {}
                        other => return other,
                    }
                    let candidate = self.stack.pop().expect("pushed above");
                    self.state.remove_raw(&candidate);
                } else {
                    self.state.remove_raw(&candidate);
                }
            }
        }
        Flow::Exhausted
    }

    /// Paths of `len` arcs through the uncovered arc `(u, v)`, all arcs uncovered.
    fn paths_through(&self, u: usize, v: usize, len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for before in 0..len {
            let after = len - 1 - before;
            let mut prefixes = Vec::new();
            let mut current = vec![u];
            self.extend_backward(&mut current, before, v, &mut prefixes);
            for prefix in prefixes {
                let mut path = prefix;
                path.push(v);
                self.extend_forward(&mut path, after, &mut out);
            }
        }
        out
    }

    // Builds reversed prefixes ending at `u`; `avoid` is the arc's head.
    fn extend_backward(&self, current: &mut Vec<usize>, steps: usize, avoid: usize, out: &mut Vec<Vec<usize>>) {
        if steps == 0 {
            out.push(current.iter().rev().copied().collect());
            return;
        }
        let front = *current.last().expect("nonempty");
        for w in 0..self.state.n {
            if w != avoid && !current.contains(&w) && self.state.is_free(w, front) {
                current.push(w);
                self.extend_backward(current, steps - 1, avoid, out);
                current.pop();
            }
        }
    }

    fn extend_forward(&self, path: &mut Vec<usize>, steps: usize, out: &mut Vec<Vec<usize>>) {
        if steps == 0 {
            out.push(path.clone());
            return;
        }
        let end = *path.last().expect("nonempty");
        for w in 0..self.state.n {
            if !path.contains(&w) && self.state.is_free(end, w) {
                path.push(w);
                self.extend_forward(path, steps - 1, out);
                path.pop();
            }
        }
    }
}

//! Elementary function trees: labeled rooted in-trees whose arcs point from
//! an inner function to the function applied to it.

use std::fmt;

use serde::Serialize;

use super::labels::{Label, Labeling};
use crate::digraph::DirectedPath;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Feasibility {
    Feasible,
    SemiFeasible,
    Infeasible,
}

impl fmt::Display for Feasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Feasibility::Feasible => "feasible",
            Feasibility::SemiFeasible => "semi-feasible",
            Feasibility::Infeasible => "infeasible",
        })
    }
}

/// Nodes are `0..labels.len()`; an arc `(u, v)` feeds `u` into `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eft {
    labels: Vec<Label>,
    arcs: Vec<(usize, usize)>,
    root: usize,
}

impl Eft {
    /// Checks the rooted in-tree shape: one sink, every other node with
    /// exactly one out-arc, and every node reaching the sink.
    pub fn new(labels: Vec<Label>, arcs: Vec<(usize, usize)>) -> Result<Self> {
        let size = labels.len();
        if size == 0 {
            return Err(Error::Structure("no vertices".into()));
        }
        if arcs.len() != size - 1 {
            return Err(Error::Structure(format!("{} arcs for {size} vertices", arcs.len())));
        }
        let mut parent = vec![None; size];
        for &(u, v) in &arcs {
            if u >= size || v >= size || u == v {
                return Err(Error::Structure(format!("bad arc ({u}, {v})")));
            }
            if parent[u].replace(v).is_some() {
                return Err(Error::Structure(format!("vertex {u} has out-degree > 1")));
            }
        }
        let sinks: Vec<usize> = (0..size).filter(|&v| parent[v].is_none()).collect();
        let [root] = sinks[..] else {
            return Err(Error::Structure(format!("{} sinks", sinks.len())));
        };
        for start in 0..size {
            let mut cur = start;
            for _ in 0..size {
                match parent[cur] {
                    Some(next) => cur = next,
                    None => break,
                }
            }
            if cur != root {
                return Err(Error::Structure("cycle".into()));
            }
        }
        Ok(Eft { labels, arcs, root })
    }

    /// The directed path `v_1 ... v_m` as a chain `v_1 -> ... -> v_m` rooted at `v_m`.
    pub fn from_path(path: &DirectedPath, labeling: &Labeling) -> Result<Self> {
        let labels = path
            .vertices()
            .iter()
            .map(|v| labeling.label(v.0).ok_or_else(|| Error::Labeling(format!("vertex {} has no label", v.0))))
            .collect::<Result<Vec<_>>>()?;
        let arcs = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Eft::new(labels, arcs)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|&&(_, h)| h == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|&&(t, _)| t == v).count()
    }
}

/// Infeasible if a function node has more than one input, an operation node
/// has more inputs than its arity, or any node feeds more than one parent.
/// Otherwise semi-feasible if some operation is missing inputs, else feasible.
pub fn classify_eft(tree: &Eft) -> Feasibility {
    let mut missing_inputs = false;
    for (v, label) in tree.labels.iter().enumerate() {
        let indeg = tree.in_degree(v);
        if tree.out_degree(v) > 1 {
            return Feasibility::Infeasible;
        }
        match label {
            Label::Function(_) if indeg > 1 => return Feasibility::Infeasible,
            Label::Function(_) => {}
            Label::Operation(op) => {
                let arity = op.arity() as usize;
                if indeg > arity {
                    return Feasibility::Infeasible;
                }
                missing_inputs |= indeg < arity;
            }
        }
    }
    if missing_inputs {
        Feasibility::SemiFeasible
    } else {
        Feasibility::Feasible
    }
}

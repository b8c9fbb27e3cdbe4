//! Chain rule task sets: a decomposition's paths read as compositions of the
//! functions labeling their vertices.
//!
//! An arc `u -> v` applies `Λ(v)` after `Λ(u)`, so the first vertex of a path
//! is the innermost function: `[2, 4]` under `2 ↦ sin x, 4 ↦ e^x` is
//! `e^{sin x}`.

pub mod eft;
pub mod expr;
pub mod instantiate;
pub mod labels;

use std::collections::BTreeMap;

use serde::Serialize;

pub use eft::{classify_eft, Eft, Feasibility};
pub use expr::{normalize_latex, parse_expression, render, Expr, Format, SimpleFunction};
pub use instantiate::{instantiate, Instantiator, Redraw, RedrawPolicy, TaskRng};
pub use labels::{FunctionClass, Label, Labeling, OperationLabel};

use crate::digraph::{Decomposition, DirectedPath};
use crate::spectrum::LengthProfile;
use crate::verifier::verify;
use crate::{Error, Result};

fn concrete(vertex: u32, label: Option<Label>) -> Result<SimpleFunction> {
    match label {
        Some(Label::Function(FunctionClass::Fixed(f))) => Ok(f),
        Some(Label::Function(c)) => Err(Error::Labeling(format!("vertex {vertex} has unresolved class {c}"))),
        Some(Label::Operation(op)) => {
            Err(Error::Labeling(format!("vertex {vertex} carries operation {op}; paths need function labels")))
        }
        None => Err(Error::Labeling(format!("vertex {vertex} has no label"))),
    }
}

/// Composition along `path` under a concrete labeling.
pub fn path_to_expression(path: &DirectedPath, labeling: &Labeling) -> Result<Expr> {
    let funcs = path.indices().into_iter().map(|v| concrete(v, labeling.label(v))).collect::<Result<Vec<_>>>()?;
    Ok(Expr::compose(funcs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Task {
    pub path: Vec<u32>,
    pub expr: Expr,
    pub latex: String,
    pub text: String,
}

impl Task {
    fn new(path: &DirectedPath, expr: Expr) -> Self {
        Task { path: path.indices(), latex: render(&expr, Format::Latex), text: render(&expr, Format::PlainText), expr }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaskSetMeta {
    pub n: u32,
    pub profile: Option<LengthProfile>,
    pub k: Option<u64>,
    pub labeling: Vec<String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaskSet {
    pub meta: TaskSetMeta,
    pub tasks: Vec<Task>,
}

impl TaskSet {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("task set serializes");
        s.push('\n');
        s
    }

    pub fn to_latex(&self) -> String {
        let mut s = String::from("\\begin{enumerate}\n");
        for t in &self.tasks {
            s.push_str(&format!("    \\item ${}$\n", t.latex));
        }
        s.push_str("\\end{enumerate}\n");
        s
    }

    pub fn to_text(&self) -> String {
        self.tasks.iter().enumerate().map(|(i, t)| format!("{}. {}\n", i + 1, t.text)).collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Latex => self.to_latex(),
            Format::PlainText => self.to_text(),
            Format::Json => self.to_json(),
        }
    }

    /// Entry `v - 1` counts the tasks whose path visits `v`.
    pub fn vertex_occurrences(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.meta.n as usize];
        for t in &self.tasks {
            for &v in &t.path {
                counts[v as usize - 1] += 1;
            }
        }
        counts
    }

    /// Function occurrences summed over all tasks, keyed by class name.
    pub fn class_occurrences(&self) -> BTreeMap<&'static str, u64> {
        let mut counts = BTreeMap::new();
        for t in &self.tasks {
            for f in t.expr.chain() {
                *counts.entry(f.class_name()).or_insert(0) += 1;
            }
        }
        counts
    }
}

#[derive(Clone, Debug, Default)]
pub struct GenerateOptions {
    /// Skip the partition and balance gate.
    pub allow_unbalanced: bool,
    pub policy: RedrawPolicy,
    /// Recorded in the metadata, e.g. a table tag.
    pub source: Option<String>,
}

/// One task per path, in the decomposition's stored order. The source must
/// be a balanced partition of the complete digraph unless
/// `opts.allow_unbalanced` is set.
pub fn generate_task_set(d: &Decomposition, spec: &Labeling, seed: u64, opts: &GenerateOptions) -> Result<TaskSet> {
    if spec.n() != d.n() {
        return Err(Error::Labeling(format!("labeling has {} vertices, decomposition {}", spec.n(), d.n())));
    }
    let report = verify(d);
    if !opts.allow_unbalanced && !(report.is_partition && report.paths_valid && report.balanced) {
        let detail = report.failures.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        return Err(Error::Verification(format!("source is not a balanced decomposition: {detail}")));
    }
    let mut inst = Instantiator::new(spec, seed, opts.policy);
    let tasks = d
        .paths()
        .iter()
        .map(|p| {
            let funcs =
                p.indices().into_iter().map(|v| concrete(v, inst.function_for(v))).collect::<Result<Vec<_>>>()?;
            Ok(Task::new(p, Expr::compose(funcs)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TaskSet {
        meta: TaskSetMeta {
            n: d.n(),
            profile: report.profile,
            k: report.k,
            labeling: spec.describe(),
            seed,
            source: opts.source.clone(),
        },
        tasks,
    })
}

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use super::expr::SimpleFunction;
use crate::{Error, Result};

/// A simple function class, or one fixed concrete function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionClass {
    /// `x^n`, `2 <= n <= 10`.
    Power,
    /// One of the six trigonometric functions.
    Trig,
    /// `ln x` or `log_a x`, `2 <= a <= 10`.
    Log,
    /// `e^x` or `a^x`, `2 <= a <= 10`.
    Exp,
    /// arcsin, arccos or arctan.
    InvTrig,
    Fixed(SimpleFunction),
}

impl FunctionClass {
    /// The class tag a concrete function falls under; `Fixed` resolves to it.
    pub fn class_name(self) -> &'static str {
        match self {
            FunctionClass::Power => "Power",
            FunctionClass::Trig => "Trig",
            FunctionClass::Log => "Log",
            FunctionClass::Exp => "Exp",
            FunctionClass::InvTrig => "InvTrig",
            FunctionClass::Fixed(f) => f.class_name(),
        }
    }

    fn from_tag(tag: &str) -> Result<Self> {
        Ok(match tag {
            "Power" => FunctionClass::Power,
            "Trig" => FunctionClass::Trig,
            "Log" => FunctionClass::Log,
            "Exp" => FunctionClass::Exp,
            "InvTrig" => FunctionClass::InvTrig,
            other => return Err(Error::Labeling(format!("unknown class tag {other:?}"))),
        })
    }
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionClass::Fixed(func) => write!(f, "{func}"),
            other => f.write_str(other.class_name()),
        }
    }
}

/// `+_i`, `x_i` or division.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperationLabel {
    Sum(u32),
    Product(u32),
    Quotient,
}

impl OperationLabel {
    pub fn sum(arity: u32) -> Result<Self> {
        Self::check(arity).map(|_| OperationLabel::Sum(arity))
    }

    pub fn product(arity: u32) -> Result<Self> {
        Self::check(arity).map(|_| OperationLabel::Product(arity))
    }

    fn check(arity: u32) -> Result<()> {
        if arity < 2 {
            return Err(Error::Labeling(format!("operation arity {arity} < 2")));
        }
        Ok(())
    }

    /// Number of inputs the operation takes.
    pub fn arity(self) -> u32 {
        match self {
            OperationLabel::Sum(i) | OperationLabel::Product(i) => i,
            OperationLabel::Quotient => 2,
        }
    }
}

impl fmt::Display for OperationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperationLabel::Sum(i) => write!(f, "+{i}"),
            OperationLabel::Product(i) => write!(f, "*{i}"),
            OperationLabel::Quotient => f.write_str("/"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Function(FunctionClass),
    Operation(OperationLabel),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Function(c) => c.fmt(f),
            Label::Operation(op) => op.fmt(f),
        }
    }
}

/// A total, not necessarily injective, map from vertices `1..=n` to labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    n: u32,
    labels: Vec<Label>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabeling {
    n: u32,
    labels: BTreeMap<String, RawLabel>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabel {
    class: Option<String>,
    fixed: Option<String>,
    op: Option<String>,
    arity: Option<u32>,
}

impl Labeling {
    /// `labels[v - 1]` labels vertex `v`.
    pub fn new(labels: Vec<Label>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Labeling("empty labeling".into()));
        }
        Ok(Labeling { n: labels.len() as u32, labels })
    }

    /// Every vertex gets a fixed concrete function.
    pub fn fixed(functions: impl IntoIterator<Item = SimpleFunction>) -> Result<Self> {
        Self::new(functions.into_iter().map(|f| Label::Function(FunctionClass::Fixed(f))).collect())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn label(&self, vertex: u32) -> Option<Label> {
        vertex.checked_sub(1).and_then(|i| self.labels.get(i as usize)).copied()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// True when every function label is a fixed concrete function.
    pub fn is_concrete(&self) -> bool {
        self.labels.iter().all(|l| !matches!(l, Label::Function(c) if !matches!(c, FunctionClass::Fixed(_))))
    }

    /// `"v: label"` lines in vertex order.
    pub fn describe(&self) -> Vec<String> {
        self.labels.iter().enumerate().map(|(i, l)| format!("{}: {l}", i + 1)).collect()
    }

    /// Reads `{"n": 5, "labels": {"1": {"class": "Power"}, "2": {"fixed": "sin x"}, ...}}`.
    /// Operations are written `{"op": "sum", "arity": 2}`, `"product"` or `"quotient"`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawLabeling = serde_json::from_str(text)?;
        let mut labels = vec![None; raw.n as usize];
        for (key, entry) in raw.labels {
            let v: usize = key
                .parse()
                .ok()
                .filter(|v| (1..=raw.n as usize).contains(v))
                .ok_or_else(|| Error::Labeling(format!("vertex key {key:?} outside 1..={}", raw.n)))?;
            let label = match (entry.class, entry.fixed, entry.op) {
                (Some(tag), None, None) => Label::Function(FunctionClass::from_tag(&tag)?),
                (None, Some(expr), None) => Label::Function(FunctionClass::Fixed(SimpleFunction::parse(&expr)?)),
                (None, None, Some(op)) => Label::Operation(match (op.as_str(), entry.arity) {
                    ("sum", Some(i)) => OperationLabel::sum(i)?,
                    ("product", Some(i)) => OperationLabel::product(i)?,
                    ("quotient", None | Some(2)) => OperationLabel::Quotient,
                    _ => return Err(Error::Labeling(format!("bad operation {op:?} for vertex {v}"))),
                }),
                _ => {
                    return Err(Error::Labeling(format!(
                        "vertex {v} needs exactly one of \"class\", \"fixed\" or \"op\""
                    )))
                }
            };
            labels[v - 1] = Some(label);
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| Error::Labeling(format!("vertex {} is unlabeled", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Labeling::new(labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taskgen::expr::Trig;

    #[test]
    fn reads_mixed_labels() {
        let lab = Labeling::from_json(
            r#"{"n":4,"labels":{"1":{"class":"Power"},"2":{"fixed":"sin x"},"3":{"op":"sum","arity":2},"4":{"op":"quotient"}}}"#,
        )
        .unwrap();
        assert_eq!(lab.label(1), Some(Label::Function(FunctionClass::Power)));
        assert_eq!(lab.label(2), Some(Label::Function(FunctionClass::Fixed(SimpleFunction::Trig { name: Trig::Sin }))));
        assert_eq!(lab.label(3), Some(Label::Operation(OperationLabel::Sum(2))));
        assert_eq!(lab.label(4), Some(Label::Operation(OperationLabel::Quotient)));
        assert!(!lab.is_concrete());
        assert_eq!(lab.describe()[1], "2: sin x");
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(Labeling::from_json(r#"{"n":2,"labels":{"1":{"class":"Power"}}}"#).is_err());
        assert!(Labeling::from_json(r#"{"n":1,"labels":{"1":{"class":"Hyperbolic"}}}"#).is_err());
        assert!(Labeling::from_json(r#"{"n":1,"labels":{"2":{"class":"Power"}}}"#).is_err());
        assert!(Labeling::from_json(r#"{"n":1,"labels":{"1":{"op":"sum","arity":1}}}"#).is_err());
        assert!(Labeling::from_json(r#"{"n":1,"labels":{"1":{"class":"Power","fixed":"x^2"}}}"#).is_err());
        assert!(OperationLabel::product(1).is_err());
        assert_eq!(OperationLabel::Quotient.arity(), 2);
    }
}

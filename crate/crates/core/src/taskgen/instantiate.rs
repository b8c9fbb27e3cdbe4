//! Seeded drawing of concrete functions for class labels.
//!
//! The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`.
//! Integers in `lo..=hi` are drawn from `next_u64` by rejection: values
//! above the largest multiple of the range width are redrawn, the rest are
//! reduced modulo the width. Changing either step changes every seeded
//! output, so both are fixed.
//!
//! Draw rules per class:
//!
//! | class   | draw                                                        |
//! |---------|-------------------------------------------------------------|
//! | Power   | exponent in `2..=10`                                        |
//! | Trig    | index in `1..=6`: sin, cos, tan, sec, csc, cot              |
//! | Log/Exp | coin in `0..=1`; 0 is natural, 1 draws a base in `2..=10`   |
//! | InvTrig | index in `1..=3`: arcsin, arccos, arctan                    |

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::expr::{Base, InvTrig, SimpleFunction, Trig};
use super::labels::{FunctionClass, Label, Labeling};

pub struct TaskRng(ChaCha8Rng);

impl TaskRng {
    pub fn new(seed: u64) -> Self {
        TaskRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform integer in `lo..=hi`.
    pub fn between(&mut self, lo: u32, hi: u32) -> u32 {
        assert!(lo <= hi, "empty range");
        let width = u64::from(hi - lo) + 1;
        // Largest value whose residue class is fully represented.
        let zone = u64::MAX - (u64::MAX - width + 1) % width;
        loop {
            let x = self.0.next_u64();
            if x <= zone {
                return lo + (x % width) as u32;
            }
        }
    }

    /// Concrete function for `class`; fixed functions are returned unchanged
    /// without consuming randomness.
    pub fn draw(&mut self, class: FunctionClass) -> SimpleFunction {
        match class {
            FunctionClass::Power => SimpleFunction::Power { exponent: self.between(2, 10) },
            FunctionClass::Trig => SimpleFunction::Trig { name: Trig::ALL[self.between(1, 6) as usize - 1] },
            FunctionClass::Log => SimpleFunction::Log { base: self.base() },
            FunctionClass::Exp => SimpleFunction::Exp { base: self.base() },
            FunctionClass::InvTrig => SimpleFunction::InvTrig { name: InvTrig::ALL[self.between(1, 3) as usize - 1] },
            FunctionClass::Fixed(f) => f,
        }
    }

    fn base(&mut self) -> Base {
        if self.between(0, 1) == 1 {
            Base::General(self.between(2, 10))
        } else {
            Base::Natural
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Redraw {
    /// One draw per vertex, reused by every task through it.
    PerLabeling,
    /// A fresh draw every time the vertex appears in a task.
    PerOccurrence,
}

/// Redraw granularity per class. The default draws Power, Trig and InvTrig
/// once per labeling and Log and Exp per occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RedrawPolicy {
    pub power: Redraw,
    pub trig: Redraw,
    pub log: Redraw,
    pub exp: Redraw,
    pub inv_trig: Redraw,
}

impl Default for RedrawPolicy {
    fn default() -> Self {
        RedrawPolicy {
            power: Redraw::PerLabeling,
            trig: Redraw::PerLabeling,
            log: Redraw::PerOccurrence,
            exp: Redraw::PerOccurrence,
            inv_trig: Redraw::PerLabeling,
        }
    }
}

impl RedrawPolicy {
    pub fn uniform(r: Redraw) -> Self {
        RedrawPolicy { power: r, trig: r, log: r, exp: r, inv_trig: r }
    }

    pub fn for_class(&self, class: FunctionClass) -> Redraw {
        match class {
            FunctionClass::Power => self.power,
            FunctionClass::Trig => self.trig,
            FunctionClass::Log => self.log,
            FunctionClass::Exp => self.exp,
            FunctionClass::InvTrig => self.inv_trig,
            FunctionClass::Fixed(_) => Redraw::PerLabeling,
        }
    }
}

/// Draws concrete functions for a labeling. The once-per-labeling draws
/// happen at construction, in vertex order; per-occurrence draws follow in
/// the order [`Instantiator::function_for`] is called.
pub struct Instantiator {
    spec: Labeling,
    base: Labeling,
    policy: RedrawPolicy,
    rng: TaskRng,
}

impl Instantiator {
    pub fn new(spec: &Labeling, seed: u64, policy: RedrawPolicy) -> Self {
        let mut rng = TaskRng::new(seed);
        let labels = spec
            .labels()
            .iter()
            .map(|l| match *l {
                Label::Function(c) => Label::Function(FunctionClass::Fixed(rng.draw(c))),
                op => op,
            })
            .collect();
        let base = Labeling::new(labels).expect("same length as spec");
        Instantiator { spec: spec.clone(), base, policy, rng }
    }

    /// The labeling with every class replaced by its once-per-labeling draw.
    pub fn labeling(&self) -> &Labeling {
        &self.base
    }

    /// Concrete label for one occurrence of `vertex` in a task.
    pub fn function_for(&mut self, vertex: u32) -> Option<Label> {
        match self.spec.label(vertex)? {
            Label::Function(c) if self.policy.for_class(c) == Redraw::PerOccurrence => {
                Some(Label::Function(FunctionClass::Fixed(self.rng.draw(c))))
            }
            Label::Function(_) => self.base.label(vertex),
            op => Some(op),
        }
    }
}

/// Replaces every class label with a concrete function drawn from `seed`.
pub fn instantiate(spec: &Labeling, seed: u64) -> Labeling {
    Instantiator::new(spec, seed, RedrawPolicy::default()).base
}

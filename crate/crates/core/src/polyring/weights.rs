use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::poly::{Family, Polynomial, Var};
use crate::error::Result;
use crate::scalar::Rational;

/// Value assigned to a single weight `t_i` or `s_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightValue {
    Symbolic,
    Number(Rational),
}

impl WeightValue {
    pub fn zero() -> Self {
        WeightValue::Number(Rational::zero())
    }
}

type RuleFn = dyn Fn(u32) -> WeightValue + Send + Sync;

/// An index-to-value rule for one weight family.
#[derive(Clone)]
pub struct WeightRule {
    label: String,
    f: Arc<RuleFn>,
}

impl WeightRule {
    pub fn new(label: impl Into<String>, f: impl Fn(u32) -> WeightValue + Send + Sync + 'static) -> Self {
        WeightRule { label: label.into(), f: Arc::new(f) }
    }

    pub fn symbolic() -> Self {
        WeightRule::new("symbolic", |_| WeightValue::Symbolic)
    }

    pub fn numeric(label: impl Into<String>, f: impl Fn(u32) -> Rational + Send + Sync + 'static) -> Self {
        WeightRule::new(label, move |i| WeightValue::Number(f(i)))
    }

    pub fn constant(c: Rational) -> Self {
        WeightRule::numeric(format!("constant {c}"), move |_| c.clone())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn value(&self, index: u32) -> WeightValue {
        (self.f)(index)
    }
}

impl fmt::Debug for WeightRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightRule").field("label", &self.label).finish()
    }
}

/// Assignment of the `t` and `s` weights.
#[derive(Debug, Clone)]
pub struct WeightSpec {
    pub t: WeightRule,
    pub s: WeightRule,
}

impl WeightSpec {
    pub fn new(t: WeightRule, s: WeightRule) -> Self {
        WeightSpec { t, s }
    }

    pub fn symbolic() -> Self {
        WeightSpec::new(WeightRule::symbolic(), WeightRule::symbolic())
    }

    pub fn rule(&self, family: Family) -> &WeightRule {
        match family {
            Family::T => &self.t,
            Family::S => &self.s,
        }
    }

    pub fn value(&self, v: Var) -> WeightValue {
        self.rule(v.family).value(v.index)
    }

    /// The weight as a polynomial: the variable itself when symbolic.
    pub fn poly(&self, family: Family, index: u32) -> Polynomial {
        match self.rule(family).value(index) {
            WeightValue::Symbolic => Polynomial::var(Var { family, index }),
            WeightValue::Number(c) => Polynomial::constant(c),
        }
    }

    /// Applies the numeric assignments, leaving symbolic variables in place.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        p.substitute(|v| self.poly(v.family, v.index))
    }
}

/// Exact evaluation of `p` under `w`; errors if a variable stays symbolic.
pub fn specialize(p: &Polynomial, w: &WeightSpec) -> Result<Rational> {
    p.evaluate(|v| match w.value(v) {
        WeightValue::Symbolic => None,
        WeightValue::Number(c) => Some(c),
    })
}

//! Exact-arithmetic linear-model representation shared by the builders,
//! the file emitters, and the solver.
//!
//! Coefficients, bounds, and right-hand sides are rational numbers, so
//! models survive emit/parse round trips byte for byte and the simplex
//! code never sees floating-point input.

mod lp;
mod mps;

pub use mps::{parse_mps, MpsParseError};

use num_rational::Rational64;
use num_traits::Zero;
use std::collections::HashMap;
use thiserror::Error;

pub type Rat = Rational64;

/// Convenience for integer literals in builder code.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(v)
}

/// Renders a rational exactly as an integer or a terminating decimal,
/// the only forms the text emitters use. Models built here only carry
/// such values; anything else (say 1/3) is a builder bug.
pub(crate) fn format_rat(r: &Rat) -> String {
    let num = *r.numer() as i128;
    let den = *r.denom() as i128;
    if den == 1 {
        return num.to_string();
    }
    let (mut twos, mut fives, mut rest) = (0u32, 0u32, den);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    assert!(
        rest == 1,
        "{num}/{den} has no terminating decimal expansion"
    );
    let digits = twos.max(fives);
    let scaled = num * (10i128.pow(digits) / den);
    let sign = if scaled < 0 { "-" } else { "" };
    let mut abs = scaled.unsigned_abs().to_string();
    while abs.len() <= digits as usize {
        abs.insert(0, '0');
    }
    abs.insert(abs.len() - digits as usize, '.');
    format!("{sign}{abs}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Binary,
    Continuous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: Rat,
    /// `None` means unbounded above.
    pub upper: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    /// Sorted by variable index; no zero coefficients, no repeats.
    pub terms: Vec<(usize, Rat)>,
    pub sense: Sense,
    pub rhs: Rat,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("variable named {0:?} already exists")]
    DuplicateVariable(String),
    #[error("constraint named {0:?} already exists")]
    DuplicateConstraint(String),
    #[error("variable index {index} out of range (model has {n_vars} variables)")]
    BadVariableIndex { index: usize, n_vars: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelStats {
    pub n_vars: usize,
    pub n_binary: usize,
    pub n_continuous: usize,
    pub n_constraints: usize,
    pub n_nonzeros: usize,
}

#[derive(Debug, Clone, Default)]
pub struct LinearModel {
    name: String,
    vars: Vec<Variable>,
    var_index: HashMap<String, usize>,
    /// Minimization objective, normalized like constraint terms.
    objective: Vec<(usize, Rat)>,
    constraints: Vec<Constraint>,
    constraint_names: HashMap<String, usize>,
}

impl LinearModel {
    pub fn new(name: impl Into<String>) -> Self {
        LinearModel {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[(usize, Rat)] {
        &self.objective
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_index.get(name).copied()
    }

    fn add_var(&mut self, var: Variable) -> Result<usize, ModelError> {
        if self.var_index.contains_key(&var.name) {
            return Err(ModelError::DuplicateVariable(var.name));
        }
        let idx = self.vars.len();
        self.var_index.insert(var.name.clone(), idx);
        self.vars.push(var);
        Ok(idx)
    }

    pub fn add_binary(&mut self, name: impl Into<String>) -> Result<usize, ModelError> {
        self.add_var(Variable {
            name: name.into(),
            kind: VarKind::Binary,
            lower: Rat::zero(),
            upper: Some(rat(1)),
        })
    }

    pub fn add_continuous(
        &mut self,
        name: impl Into<String>,
        lower: Rat,
        upper: Option<Rat>,
    ) -> Result<usize, ModelError> {
        self.add_var(Variable {
            name: name.into(),
            kind: VarKind::Continuous,
            lower,
            upper,
        })
    }

    /// Sorts by variable index, merges repeats, drops zeros, and checks
    /// index range. Shared by the objective and constraint setters.
    fn normalize(&self, mut terms: Vec<(usize, Rat)>) -> Result<Vec<(usize, Rat)>, ModelError> {
        terms.sort_by_key(|&(i, _)| i);
        let mut out: Vec<(usize, Rat)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            if i >= self.vars.len() {
                return Err(ModelError::BadVariableIndex {
                    index: i,
                    n_vars: self.vars.len(),
                });
            }
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Ok(out)
    }

    pub fn set_objective(&mut self, terms: Vec<(usize, Rat)>) -> Result<(), ModelError> {
        self.objective = self.normalize(terms)?;
        Ok(())
    }

    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(usize, Rat)>,
        sense: Sense,
        rhs: Rat,
    ) -> Result<(), ModelError> {
        let name = name.into();
        if self.constraint_names.contains_key(&name) {
            return Err(ModelError::DuplicateConstraint(name));
        }
        let terms = self.normalize(terms)?;
        self.constraint_names
            .insert(name.clone(), self.constraints.len());
        self.constraints.push(Constraint {
            name,
            terms,
            sense,
            rhs,
        });
        Ok(())
    }

    pub fn stats(&self) -> ModelStats {
        let n_binary = self
            .vars
            .iter()
            .filter(|v| v.kind == VarKind::Binary)
            .count();
        ModelStats {
            n_vars: self.vars.len(),
            n_binary,
            n_continuous: self.vars.len() - n_binary,
            n_constraints: self.constraints.len(),
            n_nonzeros: self.constraints.iter().map(|c| c.terms.len()).sum(),
        }
    }

    /// Field-by-field equality of the mathematical content: names,
    /// variables in order, objective, and constraints in order.
    pub fn structurally_equal(&self, other: &LinearModel) -> bool {
        self.name == other.name
            && self.vars == other.vars
            && self.objective == other.objective
            && self.constraints == other.constraints
    }

    pub fn emit_lp(&self) -> String {
        lp::emit(self)
    }

    pub fn emit_mps(&self) -> String {
        mps::emit(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> LinearModel {
        let mut m = LinearModel::new("toy");
        let a = m.add_binary("a").unwrap();
        let b = m.add_binary("b").unwrap();
        let y = m.add_continuous("y", Rat::zero(), Some(rat(1))).unwrap();
        m.set_objective(vec![(a, rat(1)), (b, rat(1))]).unwrap();
        m.add_constraint(
            "both",
            vec![(b, rat(2)), (a, rat(1)), (y, rat(-1))],
            Sense::Ge,
            rat(1),
        )
        .unwrap();
        m
    }

    #[test]
    fn terms_are_normalized() {
        let m = toy();
        assert_eq!(
            m.constraints()[0].terms,
            vec![(0, rat(1)), (1, rat(2)), (2, rat(-1))]
        );
        let mut m = toy();
        m.add_constraint(
            "cancel",
            vec![(0, rat(1)), (0, rat(-1)), (1, rat(3))],
            Sense::Le,
            rat(2),
        )
        .unwrap();
        assert_eq!(m.constraints()[1].terms, vec![(1, rat(3))]);
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut m = toy();
        assert_eq!(
            m.add_binary("a").unwrap_err(),
            ModelError::DuplicateVariable("a".into())
        );
        assert_eq!(
            m.add_constraint("both", vec![], Sense::Le, rat(0))
                .unwrap_err(),
            ModelError::DuplicateConstraint("both".into())
        );
        assert_eq!(
            m.add_constraint("bad", vec![(9, rat(1))], Sense::Le, rat(0))
                .unwrap_err(),
            ModelError::BadVariableIndex { index: 9, n_vars: 3 }
        );
    }

    #[test]
    fn stats_count_kinds_and_nonzeros() {
        let m = toy();
        assert_eq!(
            m.stats(),
            ModelStats {
                n_vars: 3,
                n_binary: 2,
                n_continuous: 1,
                n_constraints: 1,
                n_nonzeros: 3,
            }
        );
    }

    #[test]
    fn structural_equality_is_strict() {
        let m = toy();
        let mut same = toy();
        assert!(m.structurally_equal(&same));
        same.add_constraint("extra", vec![(0, rat(1))], Sense::Le, rat(1))
            .unwrap();
        assert!(!m.structurally_equal(&same));
        let mut renamed = toy();
        renamed.name = "other".into();
        assert!(!m.structurally_equal(&renamed));
    }
}

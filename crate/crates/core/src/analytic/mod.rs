//! Relations as polynomial constraint systems over entity parameters.
//!
//! Each supported relation compiles to constraints on the real-valued
//! parameters of its arguments (rectangle corners and extents, circle
//! centers and radii, point coordinates). A set of relations is consistent
//! exactly when the conjunction of its encodings is satisfiable, which a
//! hybrid solver decides: exact rational elimination for the linear
//! fragment, interval branch-and-prune for the rest. Verdicts are
//! asymmetric by design: `unsat` is a proof, `sat` carries a witness that
//! re-evaluates within tolerance, and anything the budget or precision
//! cannot settle is reported `unknown` rather than guessed.
//!
//! Encodings use exact boundary semantics (equalities for tangency), while
//! qualification applies an epsilon band; agreement between the two is
//! therefore expected away from boundaries and tested that way.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::scalar::Scalar;

mod encode;
mod interval;
mod linear;
mod poly;
mod sexpr;
mod solve;

#[cfg(test)]
mod tests;

pub use encode::{
    check_consistency, encode_relation, fix_entity, fix_oriented, quantify, ParamKind, Schema,
};
pub use poly::{Monomial, Polynomial};
pub use sexpr::{parse_system, system_to_sexpr, witness_to_string};
pub use solve::solve;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticError {
    #[error("no encoding for {symbol} over {a}/{b} parameters")]
    NoEncoding { symbol: String, a: String, b: String },
    #[error("variable {name} used but not declared")]
    UndeclaredVariable { name: String },
    #[error("variable {name} has an empty domain")]
    EmptyDomain { name: String },
    #[error("object {id} is not in the schema")]
    UnknownObject { id: String },
    #[error("object {id} parameters do not match its declared kind")]
    KindMismatch { id: String },
    #[error("non-finite value for {what}")]
    NonFinite { what: &'static str },
    #[error("parse error at byte {at}: {message}")]
    Parse { at: usize, message: String },
}

/// Comparison against zero. Every constraint is normalized to
/// `polynomial OP 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConstraintOp {
    Lt,
    Le,
    Eq,
}

impl ConstraintOp {
    pub fn name(self) -> &'static str {
        match self {
            ConstraintOp::Lt => "<",
            ConstraintOp::Le => "<=",
            ConstraintOp::Eq => "=",
        }
    }
}

/// A single polynomial (in)equality `poly OP 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyConstraint {
    pub poly: Polynomial,
    pub op: ConstraintOp,
}

impl PolyConstraint {
    /// `a < b`
    pub fn lt(a: Polynomial, b: Polynomial) -> Self {
        Self { poly: &a - &b, op: ConstraintOp::Lt }
    }

    /// `a <= b`
    pub fn le(a: Polynomial, b: Polynomial) -> Self {
        Self { poly: &a - &b, op: ConstraintOp::Le }
    }

    /// `a = b`
    pub fn eq(a: Polynomial, b: Polynomial) -> Self {
        Self { poly: &a - &b, op: ConstraintOp::Eq }
    }

    /// `a > b`
    pub fn gt(a: Polynomial, b: Polynomial) -> Self {
        Self::lt(b, a)
    }

    /// `a >= b`
    pub fn ge(a: Polynomial, b: Polynomial) -> Self {
        Self::le(b, a)
    }
}

impl fmt::Display for PolyConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.poly, self.op.name())
    }
}

/// A disjunction of constraints. Most clauses are singletons; wider ones
/// express inherently disjunctive relations such as rectangle disjointness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintClause(pub Vec<PolyConstraint>);

impl ConstraintClause {
    pub fn single(c: PolyConstraint) -> Self {
        Self(vec![c])
    }

    pub fn any(cs: Vec<PolyConstraint>) -> Self {
        debug_assert!(!cs.is_empty(), "empty clause is unsatisfiable by fiat");
        Self(cs)
    }
}

/// A bounded real variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealVar {
    pub name: String,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RealVar {
    pub fn new(name: impl Into<String>, lo: f64, hi: f64) -> Result<Self, AnalyticError> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(AnalyticError::NonFinite { what: "variable domain" });
        }
        let name = name.into();
        let lo = BigRational::from_float(lo).expect("finite");
        let hi = BigRational::from_float(hi).expect("finite");
        if lo > hi {
            return Err(AnalyticError::EmptyDomain { name });
        }
        Ok(Self { name, lo, hi })
    }

    pub(crate) fn exact(name: impl Into<String>, lo: BigRational, hi: BigRational) -> Self {
        Self { name: name.into(), lo, hi }
    }
}

/// A conjunction of clauses over declared variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstraintSystem {
    pub vars: BTreeMap<String, RealVar>,
    pub clauses: Vec<ConstraintClause>,
}

impl ConstraintSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, var: RealVar) {
        self.vars.insert(var.name.clone(), var);
    }

    pub fn push(&mut self, c: PolyConstraint) {
        self.clauses.push(ConstraintClause::single(c));
    }

    pub fn push_any(&mut self, cs: Vec<PolyConstraint>) {
        self.clauses.push(ConstraintClause::any(cs));
    }

    /// Every variable mentioned by a clause must be declared.
    pub fn validate(&self) -> Result<(), AnalyticError> {
        for clause in &self.clauses {
            for c in &clause.0 {
                for v in c.poly.vars() {
                    if !self.vars.contains_key(v) {
                        return Err(AnalyticError::UndeclaredVariable { name: v.to_string() });
                    }
                }
            }
        }
        Ok(())
    }

    /// Conjoins `other` into `self`. Shared variables must agree on their
    /// domains; identical clauses are kept once.
    pub fn merge(&mut self, other: ConstraintSystem) -> Result<(), AnalyticError> {
        for (name, var) in other.vars {
            match self.vars.get(&name) {
                None => {
                    self.vars.insert(name, var);
                }
                Some(existing) if *existing == var => {}
                Some(_) => return Err(AnalyticError::KindMismatch { id: name }),
            }
        }
        for clause in other.clauses {
            if !self.clauses.contains(&clause) {
                self.clauses.push(clause);
            }
        }
        Ok(())
    }

    /// Shrinks a variable's domain to a residual-sized band around `v`.
    /// The band, rather than an exact point, keeps derived equalities
    /// such as unit-norm directions satisfiable when `v` carries
    /// floating-point rounding.
    pub fn pin(&mut self, name: &str, v: f64) -> Result<(), AnalyticError> {
        if !v.is_finite() {
            return Err(AnalyticError::NonFinite { what: "pinned value" });
        }
        let slack = 1e-9 * (1.0 + v.abs());
        self.narrow(name, v - slack, v + slack)
    }

    /// Intersects a variable's domain with `[lo, hi]`.
    pub fn narrow(&mut self, name: &str, lo: f64, hi: f64) -> Result<(), AnalyticError> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(AnalyticError::NonFinite { what: "domain bound" });
        }
        let var = self
            .vars
            .get_mut(name)
            .ok_or_else(|| AnalyticError::UndeclaredVariable { name: name.to_string() })?;
        let lo = BigRational::from_float(lo).expect("finite");
        let hi = BigRational::from_float(hi).expect("finite");
        if lo > var.lo {
            var.lo = lo;
        }
        if hi < var.hi {
            var.hi = hi;
        }
        if var.lo > var.hi {
            return Err(AnalyticError::EmptyDomain { name: name.to_string() });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatStatus {
    Sat,
    Unsat,
    Unknown,
}

impl SatStatus {
    pub fn name(self) -> &'static str {
        match self {
            SatStatus::Sat => "sat",
            SatStatus::Unsat => "unsat",
            SatStatus::Unknown => "unknown",
        }
    }
}

/// Solver verdict. `Sat` always carries a witness that passed
/// re-evaluation; `precision` reports the widest undecided relative box
/// width when the verdict is `Unknown`.
#[derive(Debug, Clone, PartialEq)]
pub struct SatResult<S> {
    pub status: SatStatus,
    pub witness: Option<BTreeMap<String, S>>,
    pub precision: S,
    pub budget_exhausted: bool,
}

impl<S: Scalar> SatResult<S> {
    pub(crate) fn unsat() -> Self {
        Self { status: SatStatus::Unsat, witness: None, precision: S::zero(), budget_exhausted: false }
    }

    pub(crate) fn sat(witness: BTreeMap<String, S>) -> Self {
        Self {
            status: SatStatus::Sat,
            witness: Some(witness),
            precision: S::zero(),
            budget_exhausted: false,
        }
    }

    pub(crate) fn unknown(precision: S, budget_exhausted: bool) -> Self {
        Self { status: SatStatus::Unknown, witness: None, precision, budget_exhausted }
    }
}

/// Solver limits and tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<S> {
    /// Relative box width below which boxes are not split further, and the
    /// margin strict inequalities must clear at a witness.
    pub precision: S,
    /// Residual tolerance for equalities and non-strict inequalities at a
    /// witness.
    pub residual: S,
    /// Box-queue node budget.
    pub budget: usize,
    /// Half-width of the default domain box for coordinate variables.
    pub universe: S,
}

impl<S: Scalar> Default for SolverConfig<S> {
    fn default() -> Self {
        Self {
            precision: S::of(1e-6),
            residual: S::of(1e-9),
            budget: 1_000_000,
            universe: S::of(1e4),
        }
    }
}

pub(crate) fn rat_to<S: Scalar>(r: &BigRational) -> S {
    S::of(r.to_f64().expect("rational in f64 range"))
}

//! Mode-directed inductive learning of relational clauses.
//!
//! The learner induces Prolog-style clauses such as
//!
//! ```text
//! symmetric(S) :- axis(S, A), left(A, P1), right(A, P2), equi_sized(P1, P2).
//! ```
//!
//! from labelled examples whose payloads are quantitative track sets, not
//! pre-ground fact bases: every body literal is evaluated against the
//! payload geometry by qualification at the moment coverage asks for it.
//! The pipeline is the classic mode-directed one: [`saturate`] builds the
//! most specific clause an example admits, [`search`] finds its best
//! admissible generalization, and [`induce`] loops both until all positive
//! examples are covered.
//!
//! # Hypothesis text format
//!
//! [`Hypothesis::to_text`] and [`parse_hypothesis`] speak a line-oriented
//! clause format:
//!
//! * a line starting with `%` is a comment; the stats comment
//!   `% clause covers <P> positive, <N> negative training examples`
//!   attaches to the next clause line;
//! * every other non-empty line is one clause, terminated by `.`:
//!   either `head.` or `head :- lit1, lit2, ... .`;
//! * an atom is `predicate(term, ..., term)` with a lowercase predicate
//!   name; a term starting with an uppercase letter is a variable and
//!   anything else (including bare integers) is a constant;
//! * the one nested form is the fluent sugar `holds_in(base(t...), t)`,
//!   which is the flat predicate `holds_in_base(t..., t)` under the hood.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fluents::{Track, TrackKind};
use crate::qsr::ObjectId;
use crate::Real;

mod background;
mod cover;
mod saturate;
mod search;
mod text;

pub use background::{predicate_name, Background, BackgroundEval};
pub use cover::{covers, evaluate, Evaluation};
pub use saturate::saturate;
pub use search::{induce, search, InduceOutcome, SearchResult};
pub use text::{parse_atom, parse_clause, parse_hypothesis};

#[cfg(test)]
mod tests;

/// Failures of the learning pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IlpError {
    #[error("no head mode declared for {predicate}/{arity}")]
    NoHeadMode { predicate: String, arity: usize },
    #[error("head mode for {predicate} declares no input argument")]
    HeadWithoutInput { predicate: String },
    #[error("mode references unknown background predicate {predicate}")]
    UnknownPredicate { predicate: String },
    #[error("mode for {predicate} has {got} arguments, background declares {expected}")]
    ArityMismatch { predicate: String, expected: usize, got: usize },
    #[error("saturation needs a positive example, got negative {example}")]
    NegativeSeed { example: String },
    #[error("target atom of example {example} is not ground")]
    TargetNotGround { example: String },
    #[error("bottom clause for example {example} has no body literals")]
    EmptyBottom { example: String },
    #[error("{what} must be positive")]
    InvalidParam { what: &'static str },
    #[error("induction needs at least one positive example")]
    NoPositives,
    #[error("hypothesis text line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A logical term: a variable (uppercase in text form) or a constant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(value: impl Into<String>) -> Self {
        Term::Const(value.into())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
        }
    }
}

/// An atom: predicate applied to terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Literal {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Self { predicate: predicate.into(), args }
    }

    /// Ground atom over constants, the form example targets take.
    pub fn fact(predicate: impl Into<String>, args: &[&str]) -> Self {
        Self::new(predicate, args.iter().map(|a| Term::constant(*a)).collect())
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| matches!(t, Term::Const(_)))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
            f.write_str("(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")
        }
        // Fluent predicates print in their nested sugar form.
        if let Some(base) = self.predicate.strip_prefix("holds_in_") {
            if self.args.len() >= 2 && !base.is_empty() {
                let (inner, time) = self.args.split_at(self.args.len() - 1);
                f.write_str("holds_in(")?;
                f.write_str(base)?;
                write_args(f, inner)?;
                write!(f, ", {})", time[0])?;
                return Ok(());
            }
        }
        f.write_str(&self.predicate)?;
        write_args(f, &self.args)
    }
}

/// A definite clause `head :- body`. `var_types` records the type of every
/// variable for coverage-time domain lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub head: Literal,
    pub body: Vec<Literal>,
    pub var_types: BTreeMap<String, String>,
}

impl Clause {
    pub fn new(head: Literal, body: Vec<Literal>, var_types: BTreeMap<String, String>) -> Self {
        Self { head, body, var_types }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            f.write_str(" :- ")?;
            for (i, lit) in self.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{lit}")?;
            }
        }
        f.write_str(".")
    }
}

/// Argument role in a mode declaration: `+` consumes an existing variable,
/// `-` produces new ones, `#` takes an observed constant verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArgIo {
    Input,
    Output,
    Constant,
}

/// One argument slot of a mode declaration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgSpec {
    pub io: ArgIo,
    #[serde(rename = "type")]
    pub ty: String,
}

impl ArgSpec {
    pub fn input(ty: impl Into<String>) -> Self {
        Self { io: ArgIo::Input, ty: ty.into() }
    }

    pub fn output(ty: impl Into<String>) -> Self {
        Self { io: ArgIo::Output, ty: ty.into() }
    }

    pub fn constant(ty: impl Into<String>) -> Self {
        Self { io: ArgIo::Constant, ty: ty.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeRole {
    Head,
    Body,
}

/// Declares how a predicate may appear in learned clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeDeclaration {
    pub role: ModeRole,
    pub predicate: String,
    pub args: Vec<ArgSpec>,
    /// Solutions kept per input binding during saturation.
    pub recall: u32,
}

impl ModeDeclaration {
    pub fn head(predicate: impl Into<String>, args: Vec<ArgSpec>) -> Self {
        Self { role: ModeRole::Head, predicate: predicate.into(), args, recall: 1 }
    }

    pub fn body(predicate: impl Into<String>, args: Vec<ArgSpec>) -> Self {
        Self { role: ModeRole::Body, predicate: predicate.into(), args, recall: 10 }
    }

    pub fn with_recall(mut self, recall: u32) -> Self {
        self.recall = recall;
        self
    }

    pub(crate) fn input_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.args.iter().enumerate().filter(|(_, a)| a.io == ArgIo::Input).map(|(i, _)| i)
    }
}

/// An ordered mode library.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeSet {
    pub modes: Vec<ModeDeclaration>,
}

impl ModeSet {
    pub fn new(modes: Vec<ModeDeclaration>) -> Self {
        Self { modes }
    }

    /// Mode library for scene-level symmetry concepts: a scene is described
    /// by its axis and the persons on either side.
    pub fn symmetry() -> Self {
        Self::new(vec![
            ModeDeclaration::head("symmetric", vec![ArgSpec::input("scene")]),
            ModeDeclaration::body("axis", vec![ArgSpec::input("scene"), ArgSpec::output("axis")])
                .with_recall(2),
            ModeDeclaration::body("left", vec![ArgSpec::input("axis"), ArgSpec::output("person")]),
            ModeDeclaration::body("right", vec![ArgSpec::input("axis"), ArgSpec::output("person")]),
            ModeDeclaration::body(
                "equi_sized",
                vec![ArgSpec::input("person"), ArgSpec::input("person")],
            ),
            ModeDeclaration::body(
                "equidistant_from",
                vec![ArgSpec::input("person"), ArgSpec::input("person"), ArgSpec::input("axis")],
            ),
        ])
    }

    /// Mode library for gaze-switch concepts over episodes: the head names
    /// the watched persons in order, the body observes the gaze fluent.
    pub fn attention() -> Self {
        Self::new(vec![
            ModeDeclaration::head(
                "attention_switch",
                vec![ArgSpec::input("episode"), ArgSpec::input("person"), ArgSpec::input("person")],
            ),
            ModeDeclaration::body(
                "holds_in_gaze_on",
                vec![
                    ArgSpec::output("gaze"),
                    ArgSpec::input("person"),
                    ArgSpec::output("timepoint"),
                ],
            ),
            ModeDeclaration::body(
                "before",
                vec![ArgSpec::input("timepoint"), ArgSpec::input("timepoint")],
            )
            .with_recall(1),
            ModeDeclaration::body("neq", vec![ArgSpec::input("person"), ArgSpec::input("person")])
                .with_recall(1),
        ])
    }

    /// The default library: both concept families side by side. Saturation
    /// picks the head matching the example's target atom, and body modes
    /// whose types the payload lacks simply contribute nothing.
    pub fn standard() -> Self {
        let mut modes = Self::symmetry().modes;
        modes.extend(Self::attention().modes);
        Self::new(modes)
    }

    pub fn head_mode(&self, predicate: &str, arity: usize) -> Option<&ModeDeclaration> {
        self.modes
            .iter()
            .find(|m| m.role == ModeRole::Head && m.predicate == predicate && m.args.len() == arity)
    }

    pub fn body_modes(&self) -> impl Iterator<Item = &ModeDeclaration> {
        self.modes.iter().filter(|m| m.role == ModeRole::Body)
    }

    pub(crate) fn body_mode_for(&self, predicate: &str, arity: usize) -> Option<&ModeDeclaration> {
        self.body_modes().find(|m| m.predicate == predicate && m.args.len() == arity)
    }

    /// Checks every declaration against the background vocabulary.
    pub fn validate(&self, bg: &Background) -> Result<(), IlpError> {
        for mode in &self.modes {
            if mode.role == ModeRole::Head {
                if !mode.args.iter().any(|a| a.io == ArgIo::Input) {
                    return Err(IlpError::HeadWithoutInput { predicate: mode.predicate.clone() });
                }
                continue;
            }
            let Some(eval) = bg.get(&mode.predicate) else {
                return Err(IlpError::UnknownPredicate { predicate: mode.predicate.clone() });
            };
            if eval.arity() != mode.args.len() {
                return Err(IlpError::ArityMismatch {
                    predicate: mode.predicate.clone(),
                    expected: eval.arity(),
                    got: mode.args.len(),
                });
            }
        }
        Ok(())
    }
}

/// A labelled example: a track-set payload plus a ground target atom.
///
/// Static scenes are one-sample track sets; the evaluation machinery does
/// not distinguish. `types` assigns each object its mode-language type and
/// is derived from the track kinds by [`Example::new`]; abstract tracks
/// type as `axis` because that is what scene furniture is in this corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct Example {
    pub id: String,
    pub positive: bool,
    pub width: Real,
    pub height: Real,
    pub tracks: Vec<Track<Real>>,
    pub types: BTreeMap<ObjectId, String>,
    pub target: Literal,
}

impl Example {
    pub fn new(
        id: impl Into<String>,
        positive: bool,
        width: Real,
        height: Real,
        tracks: Vec<Track<Real>>,
        target: Literal,
    ) -> Self {
        let types = tracks
            .iter()
            .map(|t| {
                let ty = match t.kind() {
                    TrackKind::Person => "person",
                    TrackKind::Face => "face",
                    TrackKind::Gaze => "gaze",
                    TrackKind::Abstract => "axis",
                    TrackKind::Generic => "object",
                };
                (t.id().clone(), ty.to_string())
            })
            .collect();
        Self { id: id.into(), positive, width, height, tracks, types, target }
    }

    /// Overrides one object's type.
    pub fn with_type(mut self, id: impl Into<ObjectId>, ty: impl Into<String>) -> Self {
        self.types.insert(id.into(), ty.into());
        self
    }

    pub(crate) fn track(&self, id: &str) -> Option<&Track<Real>> {
        self.tracks.iter().find(|t| t.id() == id)
    }

    /// All sampled frames across tracks, ascending.
    pub fn frames(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.tracks.iter().flat_map(|t| t.frames()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Knobs of the clause search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchParams {
    /// Maximum number of body literals.
    pub max_clause_length: usize,
    /// Maximum chaining depth of new variables during saturation.
    pub var_depth: usize,
    /// Maximum covered negatives an accepted clause may have.
    pub noise: usize,
    /// Minimum covered positives an accepted clause must have.
    pub min_pos: usize,
    /// Clause evaluations allowed per search call.
    pub node_budget: usize,
    /// Memoize ground-literal evaluations across coverage calls. Off means
    /// every check re-qualifies the payload geometry from scratch; the
    /// result is identical either way.
    pub memoize: bool,
    pub ctx: crate::QualificationContext,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            max_clause_length: 6,
            var_depth: 2,
            noise: 0,
            min_pos: 1,
            node_budget: 50_000,
            memoize: true,
            ctx: crate::QualificationContext::default(),
        }
    }
}

pub(crate) fn validate_params(params: &SearchParams) -> Result<(), IlpError> {
    if params.max_clause_length == 0 {
        return Err(IlpError::InvalidParam { what: "max_clause_length" });
    }
    if params.var_depth == 0 {
        return Err(IlpError::InvalidParam { what: "var_depth" });
    }
    if params.min_pos == 0 {
        return Err(IlpError::InvalidParam { what: "min_pos" });
    }
    if params.node_budget == 0 {
        return Err(IlpError::InvalidParam { what: "node_budget" });
    }
    Ok(())
}

/// Training coverage of one accepted clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClauseStats {
    pub pos: usize,
    pub neg: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LearnedClause {
    pub clause: Clause,
    pub stats: ClauseStats,
}

/// An ordered set of learned clauses; an example is predicted positive
/// when any clause covers it.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Hypothesis {
    pub clauses: Vec<LearnedClause>,
}

impl Hypothesis {
    /// Renders the clause text format documented on the module.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for lc in &self.clauses {
            out.push_str(&format!(
                "% clause covers {} positive, {} negative training examples\n{}\n",
                lc.stats.pos, lc.stats.neg, lc.clause
            ));
        }
        out
    }
}

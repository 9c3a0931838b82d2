//! Exact reasoning for the linear fragment.
//!
//! Equalities are removed by Gaussian substitution, inequalities by
//! Fourier-Motzkin elimination, both over arbitrary-precision rationals,
//! so a verdict here is a proof. Elimination is complete for linear
//! systems: infeasibility always surfaces as a contradictory constant row
//! (the branch-and-prune phase alone would subdivide forever on systems
//! whose infeasibility lives on a hyperplane, such as a pair of mutual
//! strict containments), and feasibility yields an exact rational witness
//! by walking the elimination in reverse.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::Polynomial;
use super::ConstraintOp;

/// `sum(coeffs[v] * v) + constant OP 0` with `OP` in `{<, <=, =}`.
#[derive(Debug, Clone)]
pub(crate) struct LinRow {
    pub coeffs: BTreeMap<String, BigRational>,
    pub constant: BigRational,
    pub op: ConstraintOp,
}

impl LinRow {
    pub fn from_constraint(poly: &Polynomial, op: ConstraintOp) -> Option<Self> {
        let (coeffs, constant) = poly.as_linear()?;
        Some(Self { coeffs, constant, op })
    }

    /// Domain bound rows `lo <= v` and `v <= hi`.
    pub fn bounds(name: &str, lo: &BigRational, hi: &BigRational) -> [Self; 2] {
        let mut lower = BTreeMap::new();
        lower.insert(name.to_string(), -BigRational::from_integer(1.into()));
        let mut upper = BTreeMap::new();
        upper.insert(name.to_string(), BigRational::from_integer(1.into()));
        [
            Self { coeffs: lower, constant: lo.clone(), op: ConstraintOp::Le },
            Self { coeffs: upper, constant: -hi.clone(), op: ConstraintOp::Le },
        ]
    }

    fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// For a constant row, whether `constant OP 0` holds.
    fn constant_holds(&self) -> bool {
        debug_assert!(self.is_constant());
        match self.op {
            ConstraintOp::Lt => self.constant < BigRational::zero(),
            ConstraintOp::Le => self.constant <= BigRational::zero(),
            ConstraintOp::Eq => self.constant.is_zero(),
        }
    }

    /// Replaces `var` by the linear expression `coeffs . vars + constant`.
    fn substitute(&mut self, var: &str, expr: &(BTreeMap<String, BigRational>, BigRational)) {
        let Some(c) = self.coeffs.remove(var) else { return };
        for (v, k) in &expr.0 {
            let entry = self.coeffs.entry(v.clone()).or_insert_with(BigRational::zero);
            *entry += &c * k;
            if entry.is_zero() {
                self.coeffs.remove(v);
            }
        }
        self.constant += &c * &expr.1;
    }
}

/// A solved equality `var = coeffs . vars + constant`, recorded so
/// eliminated variables can be recovered from a witness over the rest.
#[derive(Debug, Clone)]
pub(crate) struct Substitution {
    pub var: String,
    pub expr: (BTreeMap<String, BigRational>, BigRational),
}

pub(crate) enum LinearVerdict {
    /// A contradictory constant row was derived.
    Infeasible,
    /// Exact witness for the row set (equalities already substituted away
    /// are not included).
    Feasible(BTreeMap<String, BigRational>),
    /// Row growth exceeded the cap; no verdict.
    TooLarge,
}

/// Removes equality rows by substitution. Returns the substitutions, or
/// `None` if a contradictory constant equality was derived. Callers must
/// apply the substitutions to any constraints held outside `rows`.
pub(crate) fn eliminate_equalities(rows: &mut Vec<LinRow>) -> Option<Vec<Substitution>> {
    let mut subs: Vec<Substitution> = Vec::new();
    loop {
        let mut chosen: Option<(usize, String)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row.op == ConstraintOp::Eq {
                if let Some(v) = row.coeffs.keys().next() {
                    chosen = Some((i, v.clone()));
                    break;
                } else if !row.constant_holds() {
                    return None;
                }
            }
        }
        let Some((idx, var)) = chosen else { break };
        let row = rows.swap_remove(idx);
        let c = row.coeffs.get(&var).expect("chosen var is present").clone();
        // var = -(constant + sum(other coeffs)) / c
        let mut expr_coeffs = BTreeMap::new();
        for (v, k) in &row.coeffs {
            if v != &var {
                expr_coeffs.insert(v.clone(), -(k / &c));
            }
        }
        let expr = (expr_coeffs, -(&row.constant / &c));
        for r in rows.iter_mut() {
            r.substitute(&var, &expr);
        }
        for s in subs.iter_mut() {
            // Earlier substitutions may mention the variable being solved now.
            let mut as_row = LinRow {
                coeffs: s.expr.0.clone(),
                constant: s.expr.1.clone(),
                op: ConstraintOp::Eq,
            };
            as_row.substitute(&var, &expr);
            s.expr = (as_row.coeffs, as_row.constant);
        }
        subs.push(Substitution { var, expr });
    }
    rows.retain(|r| !(r.op == ConstraintOp::Eq && r.is_constant() && r.constant_holds()));
    Some(subs)
}

const ROW_CAP: usize = 20_000;

/// Decides a pure-inequality row set by Fourier-Motzkin elimination.
pub(crate) fn fourier_motzkin(rows: Vec<LinRow>) -> LinearVerdict {
    debug_assert!(rows.iter().all(|r| r.op != ConstraintOp::Eq));
    let mut order: Vec<String> = Vec::new();
    {
        let mut seen = BTreeSet::new();
        for r in &rows {
            for v in r.coeffs.keys() {
                if seen.insert(v.clone()) {
                    order.push(v.clone());
                }
            }
        }
    }

    // stages[k] holds the system before eliminating order[k].
    let mut stages: Vec<Vec<LinRow>> = Vec::with_capacity(order.len());
    let mut current = rows;
    for var in &order {
        for r in &current {
            if r.is_constant() && !r.constant_holds() {
                return LinearVerdict::Infeasible;
            }
        }
        stages.push(current.clone());
        let mut lowers: Vec<LinRow> = Vec::new();
        let mut uppers: Vec<LinRow> = Vec::new();
        let mut rest: Vec<LinRow> = Vec::new();
        for r in current {
            match r.coeffs.get(var) {
                None => rest.push(r),
                Some(c) if c > &BigRational::zero() => uppers.push(r),
                Some(_) => lowers.push(r),
            }
        }
        // Each (lower, upper) pair combines into a row without `var`; the
        // combination is strict when either side is.
        for lo in &lowers {
            for up in &uppers {
                let cl = -lo.coeffs.get(var).expect("lower has var").clone();
                let cu = up.coeffs.get(var).expect("upper has var").clone();
                let mut coeffs: BTreeMap<String, BigRational> = BTreeMap::new();
                for (v, k) in &lo.coeffs {
                    if v != var {
                        coeffs.insert(v.clone(), k * &cu);
                    }
                }
                for (v, k) in &up.coeffs {
                    if v == var {
                        continue;
                    }
                    let entry = coeffs.entry(v.clone()).or_insert_with(BigRational::zero);
                    *entry += k * &cl;
                    if entry.is_zero() {
                        coeffs.remove(v);
                    }
                }
                let constant = &lo.constant * &cu + &up.constant * &cl;
                let op = if lo.op == ConstraintOp::Lt || up.op == ConstraintOp::Lt {
                    ConstraintOp::Lt
                } else {
                    ConstraintOp::Le
                };
                rest.push(LinRow { coeffs, constant, op });
            }
        }
        if rest.len() > ROW_CAP {
            return LinearVerdict::TooLarge;
        }
        current = rest;
    }
    for r in &current {
        if !r.constant_holds() {
            return LinearVerdict::Infeasible;
        }
    }

    // Feasible: assign variables in reverse elimination order, reading each
    // variable's interval from its stage with later variables substituted.
    let mut witness: BTreeMap<String, BigRational> = BTreeMap::new();
    for (k, var) in order.iter().enumerate().rev() {
        let mut lo: Option<(BigRational, bool)> = None;
        let mut hi: Option<(BigRational, bool)> = None;
        for row in &stages[k] {
            let Some(c) = row.coeffs.get(var) else { continue };
            let mut rhs = row.constant.clone();
            for (v, coef) in &row.coeffs {
                if v != var {
                    rhs += coef * witness.get(v).expect("later vars are assigned");
                }
            }
            // c*var + rhs OP 0  =>  var OP' -rhs/c, flipped when c < 0.
            let bound = -(&rhs / c);
            let strict = row.op == ConstraintOp::Lt;
            if c > &BigRational::zero() {
                let tighter = match &hi {
                    None => true,
                    Some((b, s)) => bound < *b || (bound == *b && strict && !s),
                };
                if tighter {
                    hi = Some((bound, strict));
                }
            } else {
                let tighter = match &lo {
                    None => true,
                    Some((b, s)) => bound > *b || (bound == *b && strict && !s),
                };
                if tighter {
                    lo = Some((bound, strict));
                }
            }
        }
        let value = match (&lo, &hi) {
            (None, None) => BigRational::zero(),
            (Some((l, ls)), None) => {
                if *ls {
                    l + BigRational::from_integer(1.into())
                } else {
                    l.clone()
                }
            }
            (None, Some((h, hs))) => {
                if *hs {
                    h - BigRational::from_integer(1.into())
                } else {
                    h.clone()
                }
            }
            (Some((l, ls)), Some((h, hs))) => {
                debug_assert!(l < h || (l == h && !ls && !hs), "elimination leaves feasible intervals");
                if l == h {
                    l.clone()
                } else {
                    (l + h) / BigRational::from_integer(2.into())
                }
            }
        };
        witness.insert(var.clone(), value);
    }
    LinearVerdict::Feasible(witness)
}

/// Extends a witness over the remaining variables to the eliminated ones.
/// Substitutions are applied newest-first: later substitutions never
/// mention earlier-solved variables, as `eliminate_equalities` rewrites the
/// record on every step.
pub(crate) fn apply_substitutions(
    witness: &mut BTreeMap<String, BigRational>,
    subs: &[Substitution],
) {
    for s in subs.iter().rev() {
        let mut v = s.expr.1.clone();
        for (name, k) in &s.expr.0 {
            v += k * witness.get(name).expect("substitution expr over solved vars");
        }
        witness.insert(s.var.clone(), v);
    }
}

//! Hybrid satisfiability core.
//!
//! A system is split into disjunctive branches, each branch into its
//! linear and nonlinear parts. Equalities are substituted away and the
//! linear remainder is decided exactly by elimination; whatever survives
//! goes to interval branch-and-prune over exact rational boxes, with a
//! damped Gauss-Newton polish to land witnesses on equality varieties.
//! `Unsat` is only reported when every branch is refuted exactly, and
//! `Sat` only with a witness that re-evaluates within tolerance.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::interval::{eval_mean_value, Box_, RatInterval};
use super::linear::{
    apply_substitutions, eliminate_equalities, fourier_motzkin, LinRow, LinearVerdict, Substitution,
};
use super::poly::Polynomial;
use super::{
    rat_to, AnalyticError, ConstraintClause, ConstraintOp, ConstraintSystem, PolyConstraint,
    SatResult, SatStatus, SolverConfig,
};
use crate::scalar::Scalar;

/// Branch count above which disjunctions are handled inside
/// branch-and-prune instead of being expanded.
const DNF_CAP: usize = 512;
const GN_ITERS: usize = 30;

pub fn solve<S: Scalar>(
    sys: &ConstraintSystem,
    cfg: &SolverConfig<S>,
) -> Result<SatResult<S>, AnalyticError> {
    sys.validate()?;
    for v in sys.vars.values() {
        if v.lo > v.hi {
            return Err(AnalyticError::EmptyDomain { name: v.name.clone() });
        }
    }
    if sys.clauses.iter().any(|c| c.0.is_empty()) {
        return Ok(SatResult::unsat());
    }

    let mut budget = cfg.budget;
    let mut worst_width = 0.0f64;
    let mut budget_hit = false;
    let mut any_unknown = false;

    let branch_count: Option<usize> = sys
        .clauses
        .iter()
        .map(|c| c.0.len())
        .try_fold(1usize, |acc, n| acc.checked_mul(n).filter(|&m| m <= DNF_CAP));
    match branch_count {
        Some(_) => {
            // Odometer over one literal per clause.
            let mut idx = vec![0usize; sys.clauses.len()];
            loop {
                let literals: Vec<PolyConstraint> = sys
                    .clauses
                    .iter()
                    .zip(&idx)
                    .map(|(c, &i)| c.0[i].clone())
                    .collect();
                let out = solve_branch(sys, literals, Vec::new(), cfg, &mut budget)?;
                match out.status {
                    SatStatus::Sat => return Ok(out),
                    SatStatus::Unsat => {}
                    SatStatus::Unknown => {
                        any_unknown = true;
                        worst_width = worst_width.max(out.precision.to_f64().unwrap_or(f64::MAX));
                        budget_hit |= out.budget_exhausted;
                    }
                }
                // Advance the odometer.
                let mut k = idx.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < sys.clauses[k].0.len() {
                        break;
                    }
                    idx[k] = 0;
                }
                if idx.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
        None => {
            // Too many branches: keep singleton clauses as plain literals
            // and leave the wide clauses to branch-and-prune.
            let mut literals = Vec::new();
            let mut wide = Vec::new();
            for c in &sys.clauses {
                if c.0.len() == 1 {
                    literals.push(c.0[0].clone());
                } else {
                    wide.push(c.clone());
                }
            }
            let out = solve_branch(sys, literals, wide, cfg, &mut budget)?;
            match out.status {
                SatStatus::Sat | SatStatus::Unknown => return Ok(out),
                SatStatus::Unsat => return Ok(SatResult::unsat()),
            }
        }
    }

    if any_unknown {
        Ok(SatResult::unknown(S::of(worst_width), budget_hit))
    } else {
        Ok(SatResult::unsat())
    }
}

/// Decides one conjunctive branch.
fn solve_branch<S: Scalar>(
    sys: &ConstraintSystem,
    literals: Vec<PolyConstraint>,
    clauses: Vec<ConstraintClause>,
    cfg: &SolverConfig<S>,
    budget: &mut usize,
) -> Result<SatResult<S>, AnalyticError> {
    let mut rows: Vec<LinRow> = Vec::new();
    for v in sys.vars.values() {
        rows.extend(LinRow::bounds(&v.name, &v.lo, &v.hi));
    }
    let mut nonlinear: Vec<PolyConstraint> = Vec::new();
    let mut pending = literals;
    let mut clauses = clauses;
    let mut subs: Vec<Substitution> = Vec::new();

    // Substituting an equality can linearize other constraints, so linear
    // extraction and elimination iterate to a fixpoint.
    loop {
        let mut moved = false;
        for c in std::mem::take(&mut pending) {
            match LinRow::from_constraint(&c.poly, c.op) {
                Some(row) => {
                    rows.push(row);
                    moved = true;
                }
                None => nonlinear.push(c),
            }
        }
        let mut i = 0;
        while i < nonlinear.len() {
            if let Some(row) = LinRow::from_constraint(&nonlinear[i].poly, nonlinear[i].op) {
                rows.push(row);
                nonlinear.swap_remove(i);
                moved = true;
            } else {
                i += 1;
            }
        }
        let Some(new_subs) = eliminate_equalities(&mut rows) else {
            return Ok(SatResult::unsat());
        };
        if new_subs.is_empty() {
            if !moved {
                break;
            }
            continue;
        }
        for s in &new_subs {
            let expr = linear_expr_poly(&s.expr);
            for c in nonlinear.iter_mut() {
                c.poly = c.poly.substitute(&s.var, &expr);
            }
            for clause in clauses.iter_mut() {
                for lit in clause.0.iter_mut() {
                    lit.poly = lit.poly.substitute(&s.var, &expr);
                }
            }
        }
        subs.extend(new_subs);
    }

    // Constant clause literals either discharge the clause or drop out.
    let mut k = 0;
    while k < clauses.len() {
        let mut satisfied = false;
        clauses[k].0.retain(|lit| {
            if lit.poly.is_zero() {
                satisfied |= matches!(lit.op, ConstraintOp::Le | ConstraintOp::Eq);
                return false;
            }
            match lit.poly.constant_value() {
                Some(v) => {
                    let holds = match lit.op {
                        ConstraintOp::Lt => *v < BigRational::zero(),
                        ConstraintOp::Le => *v <= BigRational::zero(),
                        ConstraintOp::Eq => v.is_zero(),
                    };
                    satisfied |= holds;
                    false
                }
                None => true,
            }
        });
        if satisfied {
            clauses.swap_remove(k);
        } else if clauses[k].0.is_empty() {
            return Ok(SatResult::unsat());
        } else {
            k += 1;
        }
    }

    if nonlinear.is_empty() && clauses.is_empty() {
        match fourier_motzkin(rows.clone()) {
            LinearVerdict::Infeasible => return Ok(SatResult::unsat()),
            LinearVerdict::Feasible(mut w) => {
                apply_substitutions(&mut w, &subs);
                let witness: BTreeMap<String, S> =
                    w.iter().map(|(k, v)| (k.clone(), rat_to::<S>(v))).collect();
                if verify_witness(sys, &witness, cfg) {
                    return Ok(SatResult::sat(witness));
                }
                debug_assert!(false, "exact linear witness must verify");
            }
            LinearVerdict::TooLarge => {}
        }
    } else {
        // The linear fragment alone can refute the branch.
        match fourier_motzkin(rows.clone()) {
            LinearVerdict::Infeasible => return Ok(SatResult::unsat()),
            LinearVerdict::Feasible(_) | LinearVerdict::TooLarge => {}
        }
    }

    // Branch-and-prune over the variables that survived substitution.
    let mut bx: Box_ = BTreeMap::new();
    for v in sys.vars.values() {
        if subs.iter().any(|s| s.var == v.name) {
            continue;
        }
        bx.insert(v.name.clone(), RatInterval::new(v.lo.clone(), v.hi.clone()));
    }
    // Rows over one variable fold into the box instead of travelling as
    // constraints: the box enforces them for free, where a row would cost
    // an interval evaluation per node and make the search rediscover the
    // bound split by split. Folding a strict bound keeps its closure, a
    // relaxation, so refutations stay sound; a satisfying claim is always
    // verified against the original system.
    let row_constraint = |row: &LinRow| PolyConstraint {
        poly: linear_expr_poly(&(row.coeffs.clone(), row.constant.clone())),
        op: row.op,
    };
    let mut constraints: Vec<PolyConstraint> = Vec::new();
    for row in &rows {
        match row.coeffs.len() {
            0 => {
                let holds = match row.op {
                    ConstraintOp::Lt => row.constant < BigRational::zero(),
                    ConstraintOp::Le => row.constant <= BigRational::zero(),
                    ConstraintOp::Eq => row.constant.is_zero(),
                };
                if !holds {
                    return Ok(SatResult::unsat());
                }
            }
            1 => {
                let (name, a) = row.coeffs.iter().next().expect("one coefficient");
                let Some(iv) = bx.get_mut(name) else {
                    constraints.push(row_constraint(row));
                    continue;
                };
                let bound = -(&row.constant / a);
                let tighten_hi = match row.op {
                    ConstraintOp::Eq => true,
                    _ => *a > BigRational::zero(),
                };
                let tighten_lo = match row.op {
                    ConstraintOp::Eq => true,
                    _ => *a < BigRational::zero(),
                };
                if tighten_hi && bound < iv.hi {
                    iv.hi = bound.clone();
                }
                if tighten_lo && bound > iv.lo {
                    iv.lo = bound;
                }
                if iv.lo > iv.hi {
                    return Ok(SatResult::unsat());
                }
            }
            _ => constraints.push(row_constraint(row)),
        }
    }
    constraints.extend(nonlinear);

    let out = branch_and_prune(sys, &bx, &constraints, &clauses, &subs, cfg, budget);
    Ok(out)
}

fn linear_expr_poly(expr: &(BTreeMap<String, BigRational>, BigRational)) -> Polynomial {
    let mut p = Polynomial::constant(expr.1.clone());
    for (v, c) in &expr.0 {
        p = &p + &Polynomial::var(v).scale(c);
    }
    p
}

enum Class {
    Violated,
    Satisfied,
    Straddle,
}

fn classify(c: &PolyConstraint, bx: &Box_, margin: &BigRational, residual: &BigRational) -> Class {
    let iv = eval_mean_value(&c.poly, bx);
    let zero = BigRational::zero();
    match c.op {
        ConstraintOp::Lt => {
            if iv.lo >= zero {
                Class::Violated
            } else if iv.hi <= -margin.clone() {
                Class::Satisfied
            } else {
                Class::Straddle
            }
        }
        ConstraintOp::Le => {
            if iv.lo > zero {
                Class::Violated
            } else if iv.hi <= zero {
                Class::Satisfied
            } else {
                Class::Straddle
            }
        }
        ConstraintOp::Eq => {
            if iv.lo > zero || iv.hi < zero {
                Class::Violated
            } else if -residual.clone() <= iv.lo && iv.hi <= *residual {
                Class::Satisfied
            } else {
                Class::Straddle
            }
        }
    }
}

fn branch_and_prune<S: Scalar>(
    sys: &ConstraintSystem,
    root: &Box_,
    constraints: &[PolyConstraint],
    clauses: &[ConstraintClause],
    subs: &[Substitution],
    cfg: &SolverConfig<S>,
    budget: &mut usize,
) -> SatResult<S> {
    let precision = cfg.precision.to_f64().unwrap_or(1e-6);
    let margin = BigRational::from_float(2.0 * precision).unwrap_or_else(BigRational::zero);
    let residual = BigRational::from_float(cfg.residual.to_f64().unwrap_or(1e-9))
        .unwrap_or_else(BigRational::zero);

    let mut stack: Vec<Box_> = vec![root.clone()];
    let mut undecided_width: Option<f64> = None;

    while let Some(bx) = stack.pop() {
        if *budget == 0 {
            let w = rel_width(&bx).map(|(_, w)| w).unwrap_or(0.0);
            let worst = undecided_width.unwrap_or(0.0).max(w);
            return SatResult::unknown(S::of(worst), true);
        }
        *budget -= 1;

        let mut all_satisfied = true;
        let mut pruned = false;
        for c in constraints {
            match classify(c, &bx, &margin, &residual) {
                Class::Violated => {
                    pruned = true;
                    break;
                }
                Class::Satisfied => {}
                Class::Straddle => all_satisfied = false,
            }
        }
        if !pruned {
            for clause in clauses {
                let mut clause_sat = false;
                let mut clause_viol = true;
                for lit in &clause.0 {
                    match classify(lit, &bx, &margin, &residual) {
                        Class::Violated => {}
                        Class::Satisfied => {
                            clause_sat = true;
                            clause_viol = false;
                            break;
                        }
                        Class::Straddle => clause_viol = false,
                    }
                }
                if clause_viol {
                    pruned = true;
                    break;
                }
                if !clause_sat {
                    all_satisfied = false;
                }
            }
        }
        if pruned {
            continue;
        }

        if all_satisfied {
            if let Some(w) = finish_witness(sys, &bx, subs, cfg) {
                return SatResult::sat(w);
            }
        }

        // A polished midpoint guess is a few float evaluations, orders of
        // magnitude cheaper than the rational classification above, so it
        // is worth attempting at every node: wide feasible interiors are
        // often hit long before classification can certify a whole box.
        if let Some(w) = polish_witness(sys, &bx, constraints, clauses, subs, cfg) {
            return SatResult::sat(w);
        }

        match rel_width(&bx) {
            None => {
                // Point box that still straddles an equality: undecidable
                // at this precision.
                undecided_width = Some(undecided_width.unwrap_or(0.0).max(0.0));
            }
            Some((_, w)) if w <= precision => {
                undecided_width = Some(undecided_width.unwrap_or(0.0).max(w));
            }
            Some((var, _)) => {
                let iv = bx.get(&var).expect("split var from this box").clone();
                let mid = iv.mid();
                let mut left = bx.clone();
                left.insert(var.clone(), RatInterval::new(iv.lo.clone(), mid.clone()));
                let mut right = bx;
                right.insert(var, RatInterval::new(mid, iv.hi));
                stack.push(left);
                stack.push(right);
            }
        }
    }

    match undecided_width {
        None => SatResult::unsat(),
        Some(w) => SatResult::unknown(S::of(w), false),
    }
}

/// Widest dimension by relative width, `None` for an exact point box.
fn rel_width(bx: &Box_) -> Option<(String, f64)> {
    let mut best: Option<(String, f64)> = None;
    for (name, iv) in bx {
        let w = iv.width().to_f64().unwrap_or(f64::MAX);
        if w == 0.0 {
            continue;
        }
        let scale = iv.mid().to_f64().unwrap_or(0.0).abs().max(1.0);
        let rel = w / scale;
        if best.as_ref().map(|(_, b)| rel > *b).unwrap_or(true) {
            best = Some((name.clone(), rel));
        }
    }
    best
}

/// Midpoint witness for a box whose every constraint is certainly
/// satisfied.
fn finish_witness<S: Scalar>(
    sys: &ConstraintSystem,
    bx: &Box_,
    subs: &[Substitution],
    cfg: &SolverConfig<S>,
) -> Option<BTreeMap<String, S>> {
    let mut w: BTreeMap<String, BigRational> = bx.iter().map(|(k, iv)| (k.clone(), iv.mid())).collect();
    apply_substitutions(&mut w, subs);
    let witness: BTreeMap<String, S> = w.iter().map(|(k, v)| (k.clone(), rat_to::<S>(v))).collect();
    verify_witness(sys, &witness, cfg).then_some(witness)
}

/// Gauss-Newton descent onto the equality variety, then full
/// verification. Targets are the straddling singleton equalities plus,
/// for each clause that contains one, its equality literal of least
/// midpoint residual.
fn polish_witness<S: Scalar>(
    sys: &ConstraintSystem,
    bx: &Box_,
    constraints: &[PolyConstraint],
    clauses: &[ConstraintClause],
    subs: &[Substitution],
    cfg: &SolverConfig<S>,
) -> Option<BTreeMap<String, S>> {
    let free: Vec<String> = bx.keys().cloned().collect();
    let n = free.len();
    let mut x: BTreeMap<String, f64> = bx
        .iter()
        .map(|(k, iv)| (k.clone(), iv.mid().to_f64().unwrap_or(0.0)))
        .collect();
    let lo: BTreeMap<&String, f64> =
        bx.iter().map(|(k, iv)| (k, iv.lo.to_f64().unwrap_or(f64::MIN))).collect();
    let hi: BTreeMap<&String, f64> =
        bx.iter().map(|(k, iv)| (k, iv.hi.to_f64().unwrap_or(f64::MAX))).collect();
    let precision = cfg.precision.to_f64().unwrap_or(1e-6);
    let eq_tol = cfg.residual.to_f64().unwrap_or(1e-9) * 0.1;
    // Inequalities are driven this far inside rather than onto the
    // boundary, so a found point clears the verification margin with room
    // to spare.
    let slack = 100.0 * precision;

    // Candidate targets with precomputed gradient rows; clause members are
    // grouped so each clause contributes one literal per iteration.
    struct Cand {
        poly: Polynomial,
        op: ConstraintOp,
        grad: Vec<Polynomial>,
    }
    let cand = |c: &PolyConstraint| Cand {
        poly: c.poly.clone(),
        op: c.op,
        grad: free.iter().map(|v| c.poly.derivative(v)).collect(),
    };
    let plain: Vec<Cand> = constraints.iter().map(cand).collect();
    let grouped: Vec<Vec<Cand>> =
        clauses.iter().map(|cl| cl.0.iter().map(cand).collect()).collect();

    // Gauss-Newton over the active set: equality targets stay active, an
    // inequality joins while it sits outside its slack band. Midpoints of
    // symmetric variables coincide in every box, leaving strict
    // separations violated at all midpoints; the step breaks such ties
    // instead of waiting for the boxes themselves to separate.
    for _ in 0..GN_ITERS {
        let mut chosen: Vec<&Cand> = plain.iter().collect();
        for group in &grouped {
            let score = |c: &Cand| {
                let v = c.poly.eval(&x);
                match c.op {
                    ConstraintOp::Eq => v.abs(),
                    _ => (v + slack).max(0.0),
                }
            };
            if let Some(c) = group.iter().min_by(|a, b| score(a).total_cmp(&score(b))) {
                chosen.push(c);
            }
        }
        let mut active: Vec<(&Cand, f64)> = Vec::new();
        let mut eq_bad = false;
        let mut ineq_bad = false;
        for c in chosen {
            let v = c.poly.eval(&x);
            match c.op {
                ConstraintOp::Eq => {
                    if v.abs() > eq_tol {
                        eq_bad = true;
                    }
                    active.push((c, v));
                }
                ConstraintOp::Le | ConstraintOp::Lt => {
                    if v > -2.0 * precision {
                        ineq_bad = true;
                    }
                    if v > -slack {
                        active.push((c, v + slack));
                    }
                }
            }
        }
        if (!eq_bad && !ineq_bad) || active.is_empty() {
            break;
        }

        // Normal equations with a small ridge to tolerate rank deficiency.
        let mut a = vec![vec![0.0f64; n]; n];
        let mut b = vec![0.0f64; n];
        for (c, r) in &active {
            let jr: Vec<f64> = c.grad.iter().map(|p| p.eval(&x)).collect();
            for p in 0..n {
                b[p] -= r * jr[p];
                for q in 0..n {
                    a[p][q] += jr[p] * jr[q];
                }
            }
        }
        let trace: f64 = (0..n).map(|i| a[i][i]).sum();
        let ridge = 1e-10 * (trace / n as f64 + 1.0);
        for (i, row) in a.iter_mut().enumerate() {
            row[i] += ridge;
        }
        let delta = solve_dense(a, b)?;
        let mut step = 0.0f64;
        for (v, d) in free.iter().zip(&delta) {
            let nv = (x[v] + d).clamp(lo[v], hi[v]);
            step = step.max((nv - x[v]).abs());
            x.insert(v.clone(), nv);
        }
        if step == 0.0 {
            break;
        }
    }

    let mut w: BTreeMap<String, BigRational> = x
        .iter()
        .map(|(k, v)| BigRational::from_float(*v).map(|r| (k.clone(), r)))
        .collect::<Option<_>>()?;
    apply_substitutions(&mut w, subs);
    let witness: BTreeMap<String, S> = w.iter().map(|(k, v)| (k.clone(), rat_to::<S>(v))).collect();
    verify_witness(sys, &witness, cfg).then_some(witness)
}

/// Gaussian elimination with partial pivoting on a small dense system.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let lead = a[col].clone();
        for row in col + 1..n {
            let f = a[row][col] / lead[col];
            if f == 0.0 {
                continue;
            }
            for (av, lv) in a[row].iter_mut().zip(&lead).skip(col) {
                *av -= f * lv;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0f64; n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in col + 1..n {
            acc -= a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
        if !x[col].is_finite() {
            return None;
        }
    }
    Some(x)
}

/// Confirms a candidate witness against the original system. Strict
/// inequalities must clear the precision margin; equalities and non-strict
/// inequalities must be within the residual tolerance, scaled by the
/// magnitude of the terms involved so the test is meaningful at any
/// coordinate scale.
pub(crate) fn verify_witness<S: Scalar>(
    sys: &ConstraintSystem,
    w: &BTreeMap<String, S>,
    cfg: &SolverConfig<S>,
) -> bool {
    for v in sys.vars.values() {
        let Some(&val) = w.get(&v.name) else { return false };
        let slack = cfg.residual * (S::one() + val.abs());
        if val < rat_to::<S>(&v.lo) - slack || val > rat_to::<S>(&v.hi) + slack {
            return false;
        }
    }
    for clause in &sys.clauses {
        let ok = clause.0.iter().any(|lit| {
            let v = lit.poly.eval(w);
            match lit.op {
                ConstraintOp::Lt => v <= -cfg.precision,
                ConstraintOp::Le => v <= cfg.residual * lit.poly.eval_magnitude(w),
                ConstraintOp::Eq => v.abs() <= cfg.residual * lit.poly.eval_magnitude(w),
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

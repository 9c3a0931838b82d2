//! Exercises the constraint pipeline end to end: encodings against the
//! qualification routines they mirror, the solver against hand-checkable
//! systems, and every unsat verdict in the fixed corpus against a
//! brute-force feasibility grid.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use super::*;
use crate::geom::{AaRect, Circle, Entity, OrientedPoint, Point, Segment, Vector};
use crate::qsr::{
    lr, orientation_relation, qdc_distance, rcc8, size_relation, DistanceRelation, LrRelation,
    OccupancyRelation, OrientationRelation, QualificationContext, Rcc8, RelationSymbol,
    RelationTuple, SizeRelation,
};

fn pv(name: &str) -> Polynomial {
    Polynomial::var(name)
}

fn system(vars: &[(&str, f64, f64)]) -> ConstraintSystem {
    let mut sys = ConstraintSystem::new();
    for (name, lo, hi) in vars {
        sys.declare(RealVar::new(*name, *lo, *hi).unwrap());
    }
    sys
}

fn cfg() -> SolverConfig<f64> {
    SolverConfig::default()
}

fn qctx() -> QualificationContext<f64> {
    QualificationContext::default()
}

/// Literal satisfaction at a concrete point, no tolerance for strict
/// comparisons and a hair of slack for equalities evaluated in floats.
fn satisfied_at(sys: &ConstraintSystem, point: &BTreeMap<String, f64>) -> bool {
    sys.clauses.iter().all(|clause| {
        clause.0.iter().any(|c| {
            let val = c.poly.eval(point);
            match c.op {
                ConstraintOp::Lt => val < 0.0,
                ConstraintOp::Le => val <= 0.0,
                ConstraintOp::Eq => val.abs() <= 1e-9,
            }
        })
    })
}

/// Independent restatement of the witness contract: strict inequalities
/// clear the precision margin, the rest stay within the relative residual.
fn witness_is_valid(sys: &ConstraintSystem, w: &BTreeMap<String, f64>, cfg: &SolverConfig<f64>) -> bool {
    let in_domain = sys.vars.values().all(|var| {
        let x = w.get(&var.name).copied().unwrap_or(f64::NAN);
        let slack = cfg.residual * (1.0 + x.abs());
        let lo = var.lo.to_f64().unwrap_or(f64::NEG_INFINITY);
        let hi = var.hi.to_f64().unwrap_or(f64::INFINITY);
        x >= lo - slack && x <= hi + slack
    });
    in_domain
        && sys.clauses.iter().all(|clause| {
            clause.0.iter().any(|c| {
                let val = c.poly.eval(w);
                let scale = c.poly.eval_magnitude(w);
                match c.op {
                    ConstraintOp::Lt => val <= -cfg.precision,
                    ConstraintOp::Le => val <= cfg.residual * scale,
                    ConstraintOp::Eq => val.abs() <= cfg.residual * scale,
                }
            })
        })
}

fn rect(x: f64, y: f64, w: f64, h: f64) -> Entity<f64> {
    Entity::AaRect(AaRect::new(x, y, w, h).unwrap())
}

fn circle(x: f64, y: f64, r: f64) -> Entity<f64> {
    Entity::Circle(Circle::new(Point::new(x, y).unwrap(), r).unwrap())
}

fn mereo(r: Rcc8) -> RelationSymbol {
    RelationSymbol::Mereotopology(r)
}

fn tuple(sym: RelationSymbol, a: &str, b: &str) -> RelationTuple {
    RelationTuple::new(sym, a, b)
}

fn params_of(pairs: &[(&str, &Entity<f64>)]) -> BTreeMap<String, f64> {
    let mut out = BTreeMap::new();
    for (id, e) in pairs {
        fix_entity(&mut out, id, e).unwrap();
    }
    out
}

// ---------------------------------------------------------------------------
// Solver behaviour on hand-checkable systems.

#[test]
fn contradictory_interval_is_unsat() {
    let mut sys = system(&[("x", 0.0, 10.0)]);
    sys.push(PolyConstraint::lt(pv("x"), Polynomial::real(1.0)));
    sys.push(PolyConstraint::gt(pv("x"), Polynomial::real(2.0)));
    let res = solve(&sys, &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Unsat);
    assert!(res.witness.is_none());
}

#[test]
fn unconstrained_system_is_satisfiable() {
    let sys = system(&[("x", -3.0, 7.0)]);
    let res = solve(&sys, &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Sat);
    let w = res.witness.unwrap();
    assert!((-3.0..=7.0).contains(&w["x"]));
}

#[test]
fn circle_and_distant_line_is_unsat() {
    // x^2 + y^2 = 1 has no solution with x pinned to 2.
    let mut sys = system(&[("x", -10.0, 10.0), ("y", -10.0, 10.0)]);
    sys.push(PolyConstraint::eq(&pv("x").pow(2) + &pv("y").pow(2), Polynomial::real(1.0)));
    sys.push(PolyConstraint::eq(pv("x"), Polynomial::real(2.0)));
    let res = solve(&sys, &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Unsat);
}

#[test]
fn unit_circle_equality_yields_verified_witness() {
    let mut sys = system(&[("x", -2.0, 2.0), ("y", -2.0, 2.0)]);
    sys.push(PolyConstraint::eq(&pv("x").pow(2) + &pv("y").pow(2), Polynomial::real(1.0)));
    let res = solve(&sys, &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Sat);
    let w = res.witness.unwrap();
    let r2 = w["x"] * w["x"] + w["y"] * w["y"];
    assert!((r2 - 1.0).abs() < 1e-7, "residual too large: {r2}");
    assert!(witness_is_valid(&sys, &w, &cfg()));
}

#[test]
fn tangent_equality_with_strict_cut_is_unknown() {
    // x*y = 1/4 touches x + y = 1 at a single point, so the strict cut
    // x + y < 1 makes the system unsatisfiable with zero margin. The
    // solver cannot separate the two at any finite precision and must
    // say so rather than guess.
    let mut sys = system(&[("x", 0.0, 1.0), ("y", 0.0, 1.0)]);
    sys.push(PolyConstraint::eq(&pv("x") * &pv("y"), Polynomial::real(0.25)));
    sys.push(PolyConstraint::lt(&pv("x") + &pv("y"), Polynomial::real(1.0)));
    let res = solve(&sys, &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Unknown);
    assert!(!res.budget_exhausted);
    assert!(res.precision > 0.0);
}

#[test]
fn exhausted_budget_is_reported() {
    let mut sys = system(&[("x", 0.0, 1.0), ("y", 0.0, 1.0)]);
    sys.push(PolyConstraint::eq(&pv("x") * &pv("y"), Polynomial::real(0.25)));
    sys.push(PolyConstraint::lt(&pv("x") + &pv("y"), Polynomial::real(1.0)));
    let tight = SolverConfig { budget: 5, ..cfg() };
    let res = solve(&sys, &tight).unwrap();
    assert_eq!(res.status, SatStatus::Unknown);
    assert!(res.budget_exhausted);
}

#[test]
fn wide_clause_product_skips_expansion_but_still_solves() {
    // Eleven two-way clauses exceed the branch cap, forcing the combined
    // clause-aware search.
    let mut sys = system(&[("x", 0.0, 1.0), ("y", 0.0, 1.0)]);
    for i in 0..11 {
        let cut = 0.3 + 0.001 * f64::from(i);
        sys.push_any(vec![
            PolyConstraint::le(pv("x"), Polynomial::real(cut)),
            PolyConstraint::ge(pv("x"), Polynomial::real(0.7)),
        ]);
    }
    let res = solve(&sys, &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Sat);
    let w = res.witness.unwrap();
    assert!(satisfied_at(&sys, &w));
}

#[test]
fn disjunction_with_blocked_literals_is_unsat() {
    let mut sys = system(&[("x", 0.0, 1.0)]);
    sys.push_any(vec![
        PolyConstraint::le(pv("x"), Polynomial::real(0.2)),
        PolyConstraint::ge(pv("x"), Polynomial::real(0.8)),
    ]);
    sys.push(PolyConstraint::ge(pv("x"), Polynomial::real(0.3)));
    sys.push(PolyConstraint::le(pv("x"), Polynomial::real(0.7)));
    let res = solve(&sys, &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Unsat);
}

#[test]
fn solving_twice_gives_identical_results() {
    let mut sys = system(&[("x", -2.0, 2.0), ("y", -2.0, 2.0)]);
    sys.push(PolyConstraint::eq(&pv("x").pow(2) + &pv("y").pow(2), Polynomial::real(1.0)));
    sys.push(PolyConstraint::ge(pv("x"), Polynomial::real(0.1)));
    let first = solve(&sys, &cfg()).unwrap();
    let second = solve(&sys, &cfg()).unwrap();
    assert_eq!(first.status, second.status);
    assert_eq!(first.witness, second.witness);
}

#[test]
fn undeclared_variable_is_rejected() {
    let mut sys = system(&[("x", 0.0, 1.0)]);
    sys.push(PolyConstraint::lt(&pv("x") + &pv("z"), Polynomial::real(1.0)));
    match solve(&sys, &cfg()) {
        Err(AnalyticError::UndeclaredVariable { name }) => assert_eq!(name, "z"),
        other => panic!("expected undeclared-variable error, got {other:?}"),
    }
}

#[test]
fn domain_constructors_reject_bad_bounds() {
    assert!(matches!(
        RealVar::new("x", 2.0, 1.0),
        Err(AnalyticError::EmptyDomain { .. })
    ));
    assert!(matches!(
        RealVar::new("x", f64::NAN, 1.0),
        Err(AnalyticError::NonFinite { .. })
    ));
    let mut sys = system(&[("x", 0.0, 1.0)]);
    assert!(matches!(sys.narrow("x", 2.0, 3.0), Err(AnalyticError::EmptyDomain { .. })));
    assert!(matches!(sys.pin("y", 0.5), Err(AnalyticError::UndeclaredVariable { .. })));
}

#[test]
fn merge_deduplicates_clauses_and_checks_domains() {
    let schema = Schema::new(100.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let ctx = qctx();
    let one = encode_relation(&tuple(mereo(Rcc8::Ntpp), "a", "b"), &schema, &ctx).unwrap();
    let mut merged = one.clone();
    merged.merge(one.clone()).unwrap();
    assert_eq!(merged, one);

    let other_schema = Schema::new(50.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let clash = encode_relation(&tuple(mereo(Rcc8::Ntpp), "a", "b"), &other_schema, &ctx).unwrap();
    assert!(matches!(merged.merge(clash), Err(AnalyticError::KindMismatch { .. })));
}

// ---------------------------------------------------------------------------
// Encoding structure.

#[test]
fn proper_containment_formula_is_four_strict_margins() {
    let schema = Schema::new(100.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let sys = encode_relation(
        &tuple(mereo(Rcc8::Ntpp), "a", "b"),
        &schema,
        &qctx(),
    )
    .unwrap();

    let expected: Vec<PolyConstraint> = vec![
        PolyConstraint::gt(&pv("x_a") - &pv("x_b"), Polynomial::zero()),
        PolyConstraint::gt(
            &(&pv("x_b") + &pv("w_b")) - &(&pv("x_a") + &pv("w_a")),
            Polynomial::zero(),
        ),
        PolyConstraint::gt(&pv("y_a") - &pv("y_b"), Polynomial::zero()),
        PolyConstraint::gt(
            &(&pv("y_b") + &pv("h_b")) - &(&pv("y_a") + &pv("h_a")),
            Polynomial::zero(),
        ),
    ];
    let got: Vec<&PolyConstraint> =
        sys.clauses.iter().map(|c| {
            assert_eq!(c.0.len(), 1, "containment is a pure conjunction");
            &c.0[0]
        })
        .collect();
    assert_eq!(got.len(), 4);
    for e in &expected {
        assert!(e.op == ConstraintOp::Lt);
        assert!(got.iter().any(|g| **g == *e), "missing margin {e}");
    }
}

#[test]
fn equality_formula_identifies_all_parameters() {
    let schema = Schema::new(100.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let sys = encode_relation(
        &tuple(mereo(Rcc8::Eq), "a", "b"),
        &schema,
        &qctx(),
    )
    .unwrap();
    assert_eq!(sys.clauses.len(), 4);
    for clause in &sys.clauses {
        assert_eq!(clause.0.len(), 1);
        assert_eq!(clause.0[0].op, ConstraintOp::Eq);
    }
}

#[test]
fn disconnection_formula_for_circles_is_a_single_gap() {
    let schema = Schema::new(100.0).with("a", ParamKind::Circle).with("b", ParamKind::Circle);
    let sys = encode_relation(
        &tuple(mereo(Rcc8::Dc), "a", "b"),
        &schema,
        &qctx(),
    )
    .unwrap();
    assert_eq!(sys.clauses.len(), 1);
    let c = &sys.clauses[0].0[0];
    let d2 = &(&pv("x_a") - &pv("x_b")).pow(2) + &(&pv("y_a") - &pv("y_b")).pow(2);
    let sum2 = (&pv("r_a") + &pv("r_b")).pow(2);
    assert_eq!(*c, PolyConstraint::gt(d2, sum2));
}

#[test]
fn unsupported_pairs_have_no_encoding() {
    let ctx: QualificationContext<f64> = QualificationContext::default();
    let schema = Schema::new(100.0).with("a", ParamKind::Segment).with("b", ParamKind::Segment);
    assert!(matches!(
        encode_relation(&tuple(mereo(Rcc8::Po), "a", "b"), &schema, &ctx),
        Err(AnalyticError::NoEncoding { .. })
    ));
    let schema = Schema::new(100.0).with("a", ParamKind::AaRect).with("b", ParamKind::Circle);
    assert!(matches!(
        encode_relation(&tuple(mereo(Rcc8::Po), "a", "b"), &schema, &ctx),
        Err(AnalyticError::NoEncoding { .. })
    ));
    let schema = Schema::new(100.0).with("c", ParamKind::Point).with("d", ParamKind::Point);
    assert!(matches!(
        encode_relation(
            &tuple(RelationSymbol::Interval(crate::qsr::AllenRelation::Precedes), "c", "d"),
            &schema,
            &ctx
        ),
        Err(AnalyticError::NoEncoding { .. })
    ));
    assert!(matches!(
        encode_relation(&tuple(mereo(Rcc8::Po), "a", "b"), &Schema::new(100.0), &ctx),
        Err(AnalyticError::UnknownObject { .. })
    ));
}

#[test]
fn parameter_kinds_round_trip_their_names() {
    for kind in [
        ParamKind::Point,
        ParamKind::Segment,
        ParamKind::OrientedPoint,
        ParamKind::AaRect,
        ParamKind::Circle,
    ] {
        assert_eq!(ParamKind::parse(kind.name()), Some(kind));
    }
    assert_eq!(ParamKind::parse("mystery"), None);
}

#[test]
fn fixing_rejects_unsupported_entities() {
    let mut out = BTreeMap::new();
    let poly = Entity::Polygon(
        crate::geom::Polygon::new(vec![
            Point::new(0.0, 0.0).unwrap(),
            Point::new(4.0, 0.0).unwrap(),
            Point::new(0.0, 3.0).unwrap(),
        ])
        .unwrap(),
    );
    assert!(matches!(
        fix_entity(&mut out, "p", &poly),
        Err(AnalyticError::KindMismatch { .. })
    ));
}

// ---------------------------------------------------------------------------
// Consistency of relation sets.

#[test]
fn mutual_proper_containment_is_unsat() {
    let schema = Schema::new(1000.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let rels =
        [tuple(mereo(Rcc8::Ntpp), "a", "b"), tuple(mereo(Rcc8::Ntpp), "b", "a")];
    let res = check_consistency(&rels, &schema, &qctx(), &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Unsat);
}

#[test]
fn containment_chain_contradicts_disconnection() {
    let schema = Schema::new(1000.0)
        .with("a", ParamKind::AaRect)
        .with("b", ParamKind::AaRect)
        .with("c", ParamKind::AaRect);
    let rels = [
        tuple(mereo(Rcc8::Ntpp), "a", "b"),
        tuple(mereo(Rcc8::Ntpp), "b", "c"),
        tuple(mereo(Rcc8::Dc), "a", "c"),
    ];
    let res = check_consistency(&rels, &schema, &qctx(), &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Unsat);
}

#[test]
fn lone_disconnection_has_a_disjoint_witness() {
    let schema = Schema::new(1000.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let rels = [tuple(mereo(Rcc8::Dc), "a", "b")];
    let sys = encode_relation(&rels[0], &schema, &qctx()).unwrap();
    let res = check_consistency(&rels, &schema, &qctx(), &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Sat);
    let w = res.witness.unwrap();
    assert!(satisfied_at(&sys, &w));
    let a = rect(w["x_a"], w["y_a"], w["w_a"], w["h_a"]);
    let b = rect(w["x_b"], w["y_b"], w["w_b"], w["h_b"]);
    assert_eq!(rcc8(&a, &b, &qctx()).unwrap(), Rcc8::Dc);
}

#[test]
fn mixed_family_sets_check_together() {
    // Containment forces the part to be no larger, so also demanding it be
    // the strictly larger one is contradictory. The contradiction lives in
    // the product of widths and heights, which the linear refutation stage
    // cannot see, and the conflict has no interior for interval search to
    // certify either way: the solver must not guess, so the verdict under
    // a small search budget is an exhausted Unknown rather than Sat.
    let ctx: QualificationContext<f64> = QualificationContext::for_diagonal(1000.0);
    let schema = Schema::new(1000.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let rels = [
        tuple(mereo(Rcc8::Ntpp), "a", "b"),
        tuple(RelationSymbol::Size(SizeRelation::Larger), "a", "b"),
    ];
    let small = SolverConfig { budget: 2_000, ..cfg() };
    let res = check_consistency(&rels, &schema, &ctx, &small).unwrap();
    assert_eq!(res.status, SatStatus::Unknown);
    assert!(res.budget_exhausted);

    // The compatible pairing is realized outright.
    let rels = [
        tuple(mereo(Rcc8::Ntpp), "a", "b"),
        tuple(RelationSymbol::Size(SizeRelation::Smaller), "a", "b"),
    ];
    let res = check_consistency(&rels, &schema, &ctx, &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Sat);
}

// ---------------------------------------------------------------------------
// Realizability with pinned parameters.

#[test]
fn containment_completion_fits_inside_fixed_container() {
    let schema = Schema::new(100.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let mut fixed = BTreeMap::new();
    fix_entity(&mut fixed, "b", &rect(0.0, 0.0, 4.0, 4.0)).unwrap();
    let res = quantify(
        &tuple(mereo(Rcc8::Ntpp), "a", "b"),
        &fixed,
        &schema,
        &qctx(),
        &cfg(),
    )
    .unwrap();
    assert_eq!(res.status, SatStatus::Sat);
    let w = res.witness.unwrap();
    assert!(w["x_b"] < w["x_a"]);
    assert!(w["x_a"] + w["w_a"] < w["x_b"] + w["w_b"]);
    assert!(w["y_b"] < w["y_a"]);
    assert!(w["y_a"] + w["h_a"] < w["y_b"] + w["h_b"]);
    assert!((w["x_b"]).abs() < 1e-6 && (w["w_b"] - 4.0).abs() < 1e-6);
}

#[test]
fn equality_completion_copies_the_fixed_parameters() {
    let schema = Schema::new(100.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let mut fixed = BTreeMap::new();
    fix_entity(&mut fixed, "b", &rect(0.0, 0.0, 4.0, 4.0)).unwrap();
    let res = quantify(
        &tuple(mereo(Rcc8::Eq), "a", "b"),
        &fixed,
        &schema,
        &qctx(),
        &cfg(),
    )
    .unwrap();
    assert_eq!(res.status, SatStatus::Sat);
    let w = res.witness.unwrap();
    assert!((w["x_a"]).abs() < 1e-6);
    assert!((w["y_a"]).abs() < 1e-6);
    assert!((w["w_a"] - 4.0).abs() < 1e-6);
    assert!((w["h_a"] - 4.0).abs() < 1e-6);
}

#[test]
fn containment_fails_when_the_part_must_be_too_wide() {
    let schema = Schema::new(100.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let mut sys = encode_relation(
        &tuple(mereo(Rcc8::Ntpp), "a", "b"),
        &schema,
        &qctx(),
    )
    .unwrap();
    let mut fixed = BTreeMap::new();
    fix_entity(&mut fixed, "b", &rect(0.0, 0.0, 1.0, 1.0)).unwrap();
    for (name, value) in &fixed {
        sys.pin(name, *value).unwrap();
    }
    sys.narrow("w_a", 2.0, 200.0).unwrap();
    let res = solve(&sys, &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Unsat);
}

#[test]
fn free_containment_realizes_a_nested_pair() {
    let schema = Schema::new(100.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let mut sys = encode_relation(
        &tuple(mereo(Rcc8::Ntpp), "a", "b"),
        &schema,
        &qctx(),
    )
    .unwrap();
    for coord in ["x_a", "y_a", "x_b", "y_b"] {
        sys.narrow(coord, 0.0, 100.0).unwrap();
    }
    for size in ["w_a", "h_a", "w_b", "h_b"] {
        sys.narrow(size, 1e-6, 100.0).unwrap();
    }
    let res = solve(&sys, &cfg()).unwrap();
    assert_eq!(res.status, SatStatus::Sat);
    let w = res.witness.unwrap();
    assert!(w["x_b"] < w["x_a"] && w["x_a"] + w["w_a"] < w["x_b"] + w["w_b"]);
    assert!(w["y_b"] < w["y_a"] && w["y_a"] + w["h_a"] < w["y_b"] + w["h_b"]);
    let a = rect(w["x_a"], w["y_a"], w["w_a"], w["h_a"]);
    let b = rect(w["x_b"], w["y_b"], w["w_b"], w["h_b"]);
    assert_eq!(rcc8(&a, &b, &qctx()).unwrap(), Rcc8::Ntpp);
}

// ---------------------------------------------------------------------------
// Agreement between encodings and the qualification routines.

fn rcc8_systems(schema: &Schema) -> Vec<(Rcc8, ConstraintSystem)> {
    let ctx: QualificationContext<f64> = QualificationContext::default();
    [Rcc8::Dc, Rcc8::Ec, Rcc8::Po, Rcc8::Tpp, Rcc8::Ntpp, Rcc8::Tppi, Rcc8::Ntppi, Rcc8::Eq]
        .into_iter()
        .map(|r| (r, encode_relation(&tuple(mereo(r), "a", "b"), schema, &ctx).unwrap()))
        .collect()
}

fn assert_unique_agreement(
    systems: &[(Rcc8, ConstraintSystem)],
    params: &BTreeMap<String, f64>,
    expected: Rcc8,
) {
    let satisfied: Vec<Rcc8> = systems
        .iter()
        .filter(|(_, sys)| satisfied_at(sys, params))
        .map(|(r, _)| *r)
        .collect();
    assert_eq!(satisfied, vec![expected], "at {params:?}");
}

#[test]
fn rectangle_encodings_agree_with_qualification() {
    let schema = Schema::new(1000.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let systems = rcc8_systems(&schema);
    let ctx: QualificationContext<f64> = QualificationContext::default();
    let mut rng = stilt_testkit::rng(42);
    let mut accepted = 0usize;
    let mut attempts = 0usize;
    while accepted < 10_000 && attempts < 60_000 {
        attempts += 1;
        let a = AaRect::<f64>::new(
            rng.gen_range(0.0..800.0),
            rng.gen_range(0.0..800.0),
            rng.gen_range(1.0..150.0),
            rng.gen_range(1.0..150.0),
        )
        .unwrap();
        let b = match attempts % 3 {
            // Independent, nested, and overlap-prone placements keep every
            // robust class represented.
            0 => AaRect::new(
                rng.gen_range(0.0f64..800.0),
                rng.gen_range(0.0..800.0),
                rng.gen_range(1.0..150.0),
                rng.gen_range(1.0..150.0),
            )
            .unwrap(),
            1 => AaRect::new(
                a.x - rng.gen_range(1.0..40.0),
                a.y - rng.gen_range(1.0..40.0),
                a.w + rng.gen_range(2.0..80.0),
                a.h + rng.gen_range(2.0..80.0),
            )
            .unwrap(),
            _ => AaRect::new(
                a.x + rng.gen_range(-60.0..60.0),
                a.y + rng.gen_range(-60.0..60.0),
                a.w * rng.gen_range(0.5..1.5),
                a.h * rng.gen_range(0.5..1.5),
            )
            .unwrap(),
        };
        let margins = [
            a.x - b.x,
            (b.x + b.w) - (a.x + a.w),
            a.y - b.y,
            (b.y + b.h) - (a.y + a.h),
        ];
        let gaps = [
            b.x - (a.x + a.w),
            a.x - (b.x + b.w),
            b.y - (a.y + a.h),
            a.y - (b.y + b.h),
        ];
        let clearance =
            margins.iter().chain(gaps.iter()).map(|v| v.abs()).fold(f64::INFINITY, f64::min);
        if clearance < 0.5 {
            continue;
        }
        accepted += 1;
        let ea = Entity::AaRect(a);
        let eb = Entity::AaRect(b);
        let rel = rcc8(&ea, &eb, &ctx).unwrap();
        let params = params_of(&[("a", &ea), ("b", &eb)]);
        assert_unique_agreement(&systems, &params, rel);
    }
    assert_eq!(accepted, 10_000, "sampler starved after {attempts} attempts");
}

#[test]
fn rectangle_encodings_agree_on_boundary_configurations() {
    let schema = Schema::new(1000.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    let systems = rcc8_systems(&schema);
    let ctx: QualificationContext<f64> = QualificationContext::default();
    let cases = [
        (rect(0.0, 0.0, 2.0, 2.0), rect(0.0, 0.0, 4.0, 4.0), Rcc8::Tpp),
        (rect(0.0, 0.0, 4.0, 4.0), rect(0.0, 0.0, 2.0, 2.0), Rcc8::Tppi),
        (rect(0.0, 0.0, 2.0, 2.0), rect(2.0, 0.0, 2.0, 2.0), Rcc8::Ec),
        (rect(0.0, 0.0, 2.0, 2.0), rect(2.0, 2.0, 1.0, 1.0), Rcc8::Ec),
        (rect(0.0, 0.0, 2.0, 2.0), rect(0.0, 0.0, 2.0, 2.0), Rcc8::Eq),
        (rect(1.0, 1.0, 2.0, 2.0), rect(0.0, 0.0, 4.0, 4.0), Rcc8::Ntpp),
    ];
    for (a, b, expected) in cases {
        assert_eq!(rcc8(&a, &b, &ctx).unwrap(), expected);
        let params = params_of(&[("a", &a), ("b", &b)]);
        assert_unique_agreement(&systems, &params, expected);
    }
}

#[test]
fn circle_encodings_agree_with_qualification() {
    let schema = Schema::new(1000.0).with("a", ParamKind::Circle).with("b", ParamKind::Circle);
    let ctx: QualificationContext<f64> = QualificationContext::default();
    let systems: Vec<(Rcc8, ConstraintSystem)> = [
        Rcc8::Dc,
        Rcc8::Ec,
        Rcc8::Po,
        Rcc8::Tpp,
        Rcc8::Ntpp,
        Rcc8::Tppi,
        Rcc8::Ntppi,
        Rcc8::Eq,
    ]
    .into_iter()
    .map(|r| (r, encode_relation(&tuple(mereo(r), "a", "b"), &schema, &ctx).unwrap()))
    .collect();

    let mut rng = stilt_testkit::rng(43);
    let mut accepted = 0usize;
    let mut attempts = 0usize;
    while accepted < 3000 && attempts < 30_000 {
        attempts += 1;
        let a = circle(rng.gen_range(0.0..500.0), rng.gen_range(0.0..500.0), rng.gen_range(5.0..80.0));
        let b = if attempts.is_multiple_of(3) {
            // Bias towards containment by dropping a small circle near a's
            // center.
            let Entity::Circle(ca) = &a else { unreachable!() };
            circle(
                ca.center.x + rng.gen_range(-20.0..20.0),
                ca.center.y + rng.gen_range(-20.0..20.0),
                rng.gen_range(2.0..30.0),
            )
        } else {
            circle(rng.gen_range(0.0..500.0), rng.gen_range(0.0..500.0), rng.gen_range(5.0..80.0))
        };
        let (Entity::Circle(ca), Entity::Circle(cb)) = (&a, &b) else { unreachable!() };
        let d2 = (ca.center.x - cb.center.x).powi(2) + (ca.center.y - cb.center.y).powi(2);
        let sum2 = (ca.radius + cb.radius).powi(2);
        let diff2 = (ca.radius - cb.radius).powi(2);
        let clearance = [
            (d2 - sum2).abs(),
            (d2 - diff2).abs(),
            (ca.radius - cb.radius).abs(),
        ]
        .into_iter()
        .fold(f64::INFINITY, f64::min);
        if clearance < 0.5 {
            continue;
        }
        accepted += 1;
        let rel = rcc8(&a, &b, &ctx).unwrap();
        let params = params_of(&[("a", &a), ("b", &b)]);
        assert_unique_agreement(&systems, &params, rel);
    }
    assert!(accepted >= 3000, "sampler starved after {attempts} attempts");

    let exact = [
        (circle(0.0, 0.0, 3.0), circle(7.0, 0.0, 4.0), Rcc8::Ec),
        (circle(0.0, 0.0, 2.0), circle(3.0, 0.0, 5.0), Rcc8::Tpp),
        (circle(3.0, 0.0, 5.0), circle(0.0, 0.0, 2.0), Rcc8::Tppi),
        (circle(0.0, 0.0, 1.0), circle(0.0, 0.0, 3.0), Rcc8::Ntpp),
        (circle(1.0, 2.0, 4.0), circle(1.0, 2.0, 4.0), Rcc8::Eq),
        (circle(0.0, 0.0, 2.0), circle(3.0, 0.0, 2.0), Rcc8::Po),
        (circle(0.0, 0.0, 1.0), circle(5.0, 0.0, 1.0), Rcc8::Dc),
    ];
    for (a, b, expected) in exact {
        assert_eq!(rcc8(&a, &b, &ctx).unwrap(), expected);
        let params = params_of(&[("a", &a), ("b", &b)]);
        assert_unique_agreement(&systems, &params, expected);
    }
}

#[test]
fn size_encodings_agree_with_qualification() {
    let ctx: QualificationContext<f64> = QualificationContext::for_diagonal(1000.0);
    let schemas = [
        (ParamKind::AaRect, ParamKind::AaRect),
        (ParamKind::Circle, ParamKind::Circle),
        (ParamKind::AaRect, ParamKind::Circle),
        (ParamKind::Circle, ParamKind::AaRect),
    ];
    let mut rng = stilt_testkit::rng(44);
    for (ka, kb) in schemas {
        let schema = Schema::new(1000.0).with("a", ka).with("b", kb);
        let systems: Vec<(SizeRelation, ConstraintSystem)> =
            [SizeRelation::Smaller, SizeRelation::EquiSized, SizeRelation::Larger]
                .into_iter()
                .map(|r| {
                    let t = tuple(RelationSymbol::Size(r), "a", "b");
                    (r, encode_relation(&t, &schema, &ctx).unwrap())
                })
                .collect();
        let make = |rng: &mut rand_chacha::ChaCha8Rng, kind: ParamKind| match kind {
            ParamKind::AaRect => rect(
                rng.gen_range(0.0..500.0),
                rng.gen_range(0.0..500.0),
                rng.gen_range(5.0..60.0),
                rng.gen_range(5.0..60.0),
            ),
            ParamKind::Circle => {
                circle(rng.gen_range(0.0..500.0), rng.gen_range(0.0..500.0), rng.gen_range(3.0..40.0))
            }
            _ => unreachable!(),
        };
        let mut accepted = 0usize;
        for _ in 0..4000 {
            if accepted >= 500 {
                break;
            }
            let a = make(&mut rng, ka);
            let b = make(&mut rng, kb);
            let area_a = a.area();
            let area_b = b.area();
            let scale = area_a.max(area_b);
            let clearance = ((area_a - area_b).abs() - ctx.size_ratio_tol * scale).abs();
            if clearance < 0.5 {
                continue;
            }
            accepted += 1;
            let rel = size_relation(&a, &b, &ctx).unwrap();
            let params = params_of(&[("a", &a), ("b", &b)]);
            let satisfied: Vec<SizeRelation> = systems
                .iter()
                .filter(|(_, sys)| satisfied_at(sys, &params))
                .map(|(r, _)| *r)
                .collect();
            assert_eq!(satisfied, vec![rel], "kinds {ka:?}/{kb:?} at {params:?}");
        }
        assert!(accepted >= 500, "size sampler starved for {ka:?}/{kb:?}");
    }
}

#[test]
fn side_encodings_agree_with_qualification() {
    let ctx: QualificationContext<f64> = QualificationContext::default();
    let schema = Schema::new(1000.0).with("s", ParamKind::Segment).with("p", ParamKind::Point);
    let left =
        encode_relation(&tuple(RelationSymbol::Lr(LrRelation::Left), "s", "p"), &schema, &ctx)
            .unwrap();
    let right =
        encode_relation(&tuple(RelationSymbol::Lr(LrRelation::Right), "s", "p"), &schema, &ctx)
            .unwrap();
    let mut rng = stilt_testkit::rng(45);
    let mut accepted = 0usize;
    while accepted < 500 {
        let a = Point::<f64>::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)).unwrap();
        let b = Point::<f64>::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)).unwrap();
        if a.distance(b) < 1.0 {
            continue;
        }
        let c = Point::<f64>::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)).unwrap();
        let cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        if cross.abs() < 0.5 {
            continue;
        }
        accepted += 1;
        let rel = lr(a, b, c, ctx.eps_contact).unwrap();
        let seg = Entity::Segment(Segment::new(a, b).unwrap());
        let point = Entity::Point(c);
        let params = params_of(&[("s", &seg), ("p", &point)]);
        let on_left = satisfied_at(&left, &params);
        let on_right = satisfied_at(&right, &params);
        match rel {
            LrRelation::Left => assert!(on_left && !on_right),
            LrRelation::Right => assert!(on_right && !on_left),
            other => panic!("clear cross product should not give {other:?}"),
        }
    }
}

#[test]
fn collinear_side_refinements_match_exact_configurations() {
    let ctx: QualificationContext<f64> = QualificationContext::default();
    let schema = Schema::new(1000.0).with("s", ParamKind::Segment).with("p", ParamKind::Point);
    let a = Point::new(1.0, 2.0).unwrap();
    let b = Point::new(5.0, 4.0).unwrap();
    let seg = Entity::Segment(Segment::new(a, b).unwrap());
    let cases = [
        (Point::new(1.0, 2.0).unwrap(), LrRelation::Start),
        (Point::new(5.0, 4.0).unwrap(), LrRelation::End),
        (Point::new(3.0, 3.0).unwrap(), LrRelation::On),
        (Point::new(9.0, 6.0).unwrap(), LrRelation::Front),
        (Point::new(-3.0, 0.0).unwrap(), LrRelation::Back),
    ];
    for (c, expected) in cases {
        assert_eq!(lr(a, b, c, ctx.eps_contact).unwrap(), expected);
        let params = params_of(&[("s", &seg), ("p", &Entity::Point(c))]);
        for r in
            [LrRelation::Start, LrRelation::End, LrRelation::On, LrRelation::Front, LrRelation::Back]
        {
            let sys = encode_relation(&tuple(RelationSymbol::Lr(r), "s", "p"), &schema, &ctx)
                .unwrap();
            assert_eq!(satisfied_at(&sys, &params), r == expected, "{r:?} at {c:?}");
        }
    }
}

#[test]
fn heading_encodings_agree_with_qualification() {
    let ctx: QualificationContext<f64> = QualificationContext::default();
    let schema = Schema::new(1000.0)
        .with("a", ParamKind::OrientedPoint)
        .with("b", ParamKind::OrientedPoint);
    let relations = [
        OrientationRelation::FacingTowards,
        OrientationRelation::FacingAway,
        OrientationRelation::SameDirection,
        OrientationRelation::OppositeDirection,
    ];
    let systems: Vec<(OrientationRelation, ConstraintSystem)> = relations
        .into_iter()
        .map(|r| {
            let t = tuple(RelationSymbol::Orientation(r), "a", "b");
            (r, encode_relation(&t, &schema, &ctx).unwrap())
        })
        .collect();

    let tol = ctx.angle_tol;
    let mut rng = stilt_testkit::rng(46);
    let mut accepted = 0usize;
    while accepted < 400 {
        let pa = Point::<f64>::new(rng.gen_range(0.0..200.0), rng.gen_range(0.0..200.0)).unwrap();
        let pb = Point::<f64>::new(rng.gen_range(0.0..200.0), rng.gen_range(0.0..200.0)).unwrap();
        if pa.distance(pb) < 1.0 {
            continue;
        }
        let ta = rng.gen_range(0.0..std::f64::consts::TAU);
        let tb = rng.gen_range(0.0..std::f64::consts::TAU);
        let da = Vector::new(ta.cos(), ta.sin()).unwrap();
        let db = Vector::new(tb.cos(), tb.sin()).unwrap();
        let a = OrientedPoint::new(pa, da).unwrap();
        let b = OrientedPoint::new(pb, db).unwrap();
        let bearing = pb - pa;
        let angles = [
            da.angle_to(bearing),
            da.angle_to(-bearing),
            da.angle_to(db),
            da.angle_to(-db),
        ];
        if angles.iter().any(|g| (g - tol).abs() < 0.02) {
            continue;
        }
        accepted += 1;
        let derived = orientation_relation(&a, &b, &ctx).unwrap();
        let mut params = BTreeMap::new();
        fix_oriented(&mut params, "a", &a);
        fix_oriented(&mut params, "b", &b);
        for (r, sys) in &systems {
            assert_eq!(
                satisfied_at(sys, &params),
                derived.contains(r),
                "{r:?} between {a:?} and {b:?}"
            );
        }
    }
}

#[test]
fn heading_completion_solves_with_pinned_directions() {
    // Pinning runs the full solver over the unit-norm equalities, which a
    // float direction satisfies only approximately.
    let ctx: QualificationContext<f64> = QualificationContext::default();
    let schema = Schema::new(1000.0)
        .with("a", ParamKind::OrientedPoint)
        .with("b", ParamKind::OrientedPoint);
    let a = OrientedPoint::new(
        Point::new(0.0, 0.0).unwrap(),
        Vector::new(0.6, 0.8).unwrap(),
    )
    .unwrap();
    let b = OrientedPoint::new(
        Point::new(30.0, 40.0).unwrap(),
        Vector::new(0.6, 0.8).unwrap(),
    )
    .unwrap();
    let mut fixed = BTreeMap::new();
    fix_oriented(&mut fixed, "a", &a);
    fix_oriented(&mut fixed, "b", &b);
    let towards = quantify(
        &tuple(RelationSymbol::Orientation(OrientationRelation::FacingTowards), "a", "b"),
        &fixed,
        &schema,
        &ctx,
        &cfg(),
    )
    .unwrap();
    assert_eq!(towards.status, SatStatus::Sat);
    let same = quantify(
        &tuple(RelationSymbol::Orientation(OrientationRelation::SameDirection), "a", "b"),
        &fixed,
        &schema,
        &ctx,
        &cfg(),
    )
    .unwrap();
    assert_eq!(same.status, SatStatus::Sat);
    let opposite = quantify(
        &tuple(RelationSymbol::Orientation(OrientationRelation::OppositeDirection), "a", "b"),
        &fixed,
        &schema,
        &ctx,
        &cfg(),
    )
    .unwrap();
    assert_eq!(opposite.status, SatStatus::Unsat);
    let away = quantify(
        &tuple(RelationSymbol::Orientation(OrientationRelation::FacingAway), "a", "b"),
        &fixed,
        &schema,
        &ctx,
        &cfg(),
    )
    .unwrap();
    assert_eq!(away.status, SatStatus::Unsat);
}

#[test]
fn distance_encodings_agree_with_qualification() {
    let ctx: QualificationContext<f64> = QualificationContext::for_scene(1000.0, 1000.0);
    let point = |x: f64, y: f64| Entity::Point(Point::new(x, y).unwrap());
    // Geometries chosen well clear of both thresholds (about 14.1 and
    // 282.8 here), so the polygonized gap in qualification and the exact
    // gap in the encoding cannot disagree.
    let pairs: Vec<(Entity<f64>, Entity<f64>)> = vec![
        (circle(100.0, 100.0, 20.0), circle(130.0, 100.0, 15.0)),
        (circle(100.0, 100.0, 20.0), circle(200.0, 100.0, 30.0)),
        (circle(100.0, 100.0, 20.0), circle(800.0, 100.0, 30.0)),
        (point(55.0, 58.0), rect(60.0, 60.0, 100.0, 100.0)),
        (point(48.0, 48.0), rect(62.0, 62.0, 100.0, 100.0)),
        (point(300.0, 300.0), circle(500.0, 500.0, 50.0)),
        (point(10.0, 10.0), point(14.0, 18.0)),
        (point(0.0, 0.0), point(600.0, 600.0)),
        (rect(0.0, 0.0, 100.0, 100.0), rect(150.0, 0.0, 100.0, 100.0)),
        (rect(0.0, 0.0, 100.0, 100.0), rect(105.0, 0.0, 100.0, 100.0)),
        (rect(0.0, 0.0, 100.0, 100.0), rect(500.0, 500.0, 100.0, 100.0)),
        (rect(0.0, 0.0, 100.0, 100.0), rect(50.0, 50.0, 100.0, 100.0)),
        (circle(100.0, 100.0, 30.0), rect(200.0, 80.0, 100.0, 100.0)),
        (circle(150.0, 150.0, 40.0), rect(100.0, 100.0, 100.0, 100.0)),
    ];
    for (a, b) in pairs {
        let expected = qdc_distance(&a, &b, &ctx).unwrap();
        let kind = |e: &Entity<f64>| ParamKind::of_entity_kind(e.kind()).unwrap();
        let schema = Schema::new(1000.0).with("a", kind(&a)).with("b", kind(&b));
        let mut fixed = BTreeMap::new();
        fix_entity(&mut fixed, "a", &a).unwrap();
        fix_entity(&mut fixed, "b", &b).unwrap();
        for r in [DistanceRelation::Adjacent, DistanceRelation::Near, DistanceRelation::Far] {
            let res = quantify(
                &tuple(RelationSymbol::Distance(r), "a", "b"),
                &fixed,
                &schema,
                &ctx,
                &cfg(),
            )
            .unwrap();
            let want = if r == expected { SatStatus::Sat } else { SatStatus::Unsat };
            assert_eq!(res.status, want, "{r:?} for {a:?} vs {b:?}, expected {expected:?}");
        }
    }
}

#[test]
fn gaze_encodings_accept_closed_membership() {
    let ctx: QualificationContext<f64> = QualificationContext::default();
    let schema = Schema::new(1000.0).with("g", ParamKind::Point).with("t", ParamKind::AaRect);
    let sys = encode_relation(
        &tuple(RelationSymbol::Occupancy(OccupancyRelation::GazeOn), "g", "t"),
        &schema,
        &ctx,
    )
    .unwrap();
    let target = rect(10.0, 20.0, 30.0, 40.0);
    let cases = [
        (Point::new(25.0, 40.0).unwrap(), true),
        (Point::new(10.0, 40.0).unwrap(), true),
        (Point::new(40.0, 60.0).unwrap(), true),
        (Point::new(9.0, 40.0).unwrap(), false),
        (Point::new(41.0, 40.0).unwrap(), false),
        (Point::new(25.0, 19.0).unwrap(), false),
        (Point::new(25.0, 61.0).unwrap(), false),
    ];
    for (p, inside) in cases {
        let params = params_of(&[("g", &Entity::Point(p)), ("t", &target)]);
        assert_eq!(satisfied_at(&sys, &params), inside, "{p:?}");
    }

    let schema = Schema::new(1000.0).with("g", ParamKind::Point).with("t", ParamKind::Circle);
    let sys = encode_relation(
        &tuple(RelationSymbol::Occupancy(OccupancyRelation::GazeOn), "g", "t"),
        &schema,
        &ctx,
    )
    .unwrap();
    let target = circle(0.0, 0.0, 5.0);
    let cases = [
        (Point::new(3.0, 4.0).unwrap(), true),
        (Point::new(0.0, 0.0).unwrap(), true),
        (Point::new(3.0, 4.1).unwrap(), false),
        (Point::new(6.0, 0.0).unwrap(), false),
    ];
    for (p, inside) in cases {
        let params = params_of(&[("g", &Entity::Point(p)), ("t", &target)]);
        assert_eq!(satisfied_at(&sys, &params), inside, "{p:?}");
    }
}

// ---------------------------------------------------------------------------
// Unsat soundness against brute-force grids.

struct GridCase {
    name: &'static str,
    sys: ConstraintSystem,
    expect: SatStatus,
}

fn grid_corpus() -> Vec<GridCase> {
    let mut out = Vec::new();
    let unit2 = || system(&[("x", 0.0, 1.0), ("y", 0.0, 1.0)]);

    let mut sys = system(&[("x", 0.0, 1.0)]);
    sys.push(PolyConstraint::lt(pv("x"), Polynomial::real(0.3)));
    sys.push(PolyConstraint::gt(pv("x"), Polynomial::real(0.31)));
    out.push(GridCase { name: "split interval", sys, expect: SatStatus::Unsat });

    let mut sys = unit2();
    sys.push(PolyConstraint::le(&pv("x") + &pv("y"), Polynomial::real(0.5)));
    sys.push(PolyConstraint::ge(pv("x"), Polynomial::real(0.35)));
    sys.push(PolyConstraint::ge(pv("y"), Polynomial::real(0.35)));
    out.push(GridCase { name: "linear corner", sys, expect: SatStatus::Unsat });

    let mut sys = unit2();
    sys.push(PolyConstraint::le(&pv("x").pow(2) + &pv("y").pow(2), Polynomial::real(0.25)));
    sys.push(PolyConstraint::ge(pv("x"), Polynomial::real(0.8)));
    out.push(GridCase { name: "disc misses slab", sys, expect: SatStatus::Unsat });

    let mut sys = unit2();
    sys.push(PolyConstraint::eq(pv("y"), pv("x").pow(2)));
    sys.push(PolyConstraint::ge(pv("y"), &pv("x") + &Polynomial::real(0.3)));
    out.push(GridCase { name: "parabola under line", sys, expect: SatStatus::Unsat });

    let mut sys = unit2();
    sys.push(PolyConstraint::ge(&pv("x") * &pv("y"), Polynomial::real(0.5)));
    sys.push(PolyConstraint::le(&pv("x") + &pv("y"), Polynomial::real(1.0)));
    out.push(GridCase { name: "product beats mean", sys, expect: SatStatus::Unsat });

    let mut sys = system(&[("x", 0.0, 1.0)]);
    sys.push_any(vec![
        PolyConstraint::le(pv("x"), Polynomial::real(0.2)),
        PolyConstraint::ge(pv("x"), Polynomial::real(0.8)),
    ]);
    sys.push(PolyConstraint::ge(pv("x"), Polynomial::real(0.3)));
    sys.push(PolyConstraint::le(pv("x"), Polynomial::real(0.7)));
    out.push(GridCase { name: "hollow clause", sys, expect: SatStatus::Unsat });

    let mut sys = system(&[
        ("x", 0.0, 0.25),
        ("y", 0.0, 0.25),
        ("z", 0.0, 0.25),
        ("w", 0.0, 0.25),
    ]);
    sys.push(PolyConstraint::ge(
        &(&(&pv("x") + &pv("y")) + &pv("z")) + &pv("w"),
        Polynomial::real(1.05),
    ));
    out.push(GridCase { name: "four-way sum", sys, expect: SatStatus::Unsat });

    let mut sys = unit2();
    sys.push(PolyConstraint::eq(&pv("x") + &pv("y"), Polynomial::real(0.8)));
    sys.push(PolyConstraint::ge(pv("x"), Polynomial::real(0.2)));
    sys.push(PolyConstraint::ge(pv("y"), Polynomial::real(0.2)));
    out.push(GridCase { name: "segment slice", sys, expect: SatStatus::Sat });

    let mut sys = unit2();
    sys.push(PolyConstraint::eq(&pv("x").pow(2) + &pv("y").pow(2), Polynomial::real(0.25)));
    out.push(GridCase { name: "quarter circle", sys, expect: SatStatus::Sat });

    let mut sys = unit2();
    sys.push(PolyConstraint::ge(&pv("x") * &pv("y"), Polynomial::real(0.08)));
    sys.push(PolyConstraint::le(&pv("x") + &pv("y"), Polynomial::real(1.0)));
    out.push(GridCase { name: "feasible product", sys, expect: SatStatus::Sat });

    let mut sys = system(&[("x", 0.0, 1.0)]);
    sys.push_any(vec![
        PolyConstraint::le(pv("x"), Polynomial::real(0.2)),
        PolyConstraint::ge(pv("x"), Polynomial::real(0.8)),
    ]);
    sys.push(PolyConstraint::ge(pv("x"), Polynomial::real(0.75)));
    out.push(GridCase { name: "upper lobe", sys, expect: SatStatus::Sat });

    out
}

/// Exhaustive scan at resolution 1e-2; any feasible grid point disproves
/// an unsat verdict.
fn grid_has_feasible_point(sys: &ConstraintSystem) -> bool {
    let vars: Vec<&RealVar> = sys.vars.values().collect();
    let mut point = BTreeMap::new();
    fn scan(
        vars: &[&RealVar],
        sys: &ConstraintSystem,
        point: &mut BTreeMap<String, f64>,
    ) -> bool {
        let Some((var, rest)) = vars.split_first() else {
            return sys.clauses.iter().all(|clause| {
                clause.0.iter().any(|c| {
                    let v = c.poly.eval(point);
                    match c.op {
                        ConstraintOp::Lt => v < 0.0,
                        ConstraintOp::Le => v <= 1e-9,
                        ConstraintOp::Eq => v.abs() <= 1e-9,
                    }
                })
            });
        };
        let lo = var.lo.to_f64().unwrap();
        let hi = var.hi.to_f64().unwrap();
        let steps = ((hi - lo) / 1e-2).round() as usize;
        for i in 0..=steps {
            let x = lo + (i as f64) * 1e-2;
            point.insert(var.name.clone(), x.min(hi));
            if scan(rest, sys, point) {
                return true;
            }
        }
        point.remove(&var.name);
        false
    }
    scan(&vars, sys, &mut point)
}

#[test]
fn corpus_verdicts_hold_up_under_brute_force() {
    for case in grid_corpus() {
        let res = solve(&case.sys, &cfg()).unwrap();
        assert_eq!(res.status, case.expect, "case {}", case.name);
        match res.status {
            SatStatus::Unsat => {
                assert!(
                    !grid_has_feasible_point(&case.sys),
                    "grid found a feasible point for {}",
                    case.name
                );
            }
            SatStatus::Sat => {
                let w = res.witness.expect("sat carries a witness");
                assert!(witness_is_valid(&case.sys, &w, &cfg()), "witness fails for {}", case.name);
            }
            SatStatus::Unknown => unreachable!(),
        }
    }
}

// ---------------------------------------------------------------------------
// Textual form.

#[test]
fn encoded_systems_round_trip_through_text() {
    let ctx: QualificationContext<f64> = QualificationContext::for_diagonal(1000.0);
    let schema = Schema::new(1000.0).with("a", ParamKind::AaRect).with("b", ParamKind::AaRect);
    for sym in [
        mereo(Rcc8::Ntpp),
        mereo(Rcc8::Ec),
        mereo(Rcc8::Po),
        RelationSymbol::Distance(DistanceRelation::Far),
        RelationSymbol::Size(SizeRelation::EquiSized),
    ] {
        let sys = encode_relation(&tuple(sym, "a", "b"), &schema, &ctx).unwrap();
        let text = system_to_sexpr(&sys);
        let back = parse_system(&text).unwrap_or_else(|e| panic!("reparse {sym:?}: {e}"));
        assert_eq!(back, sys, "round trip changed the system for {sym:?}");
    }
}

#[test]
fn handwritten_text_parses_to_the_expected_system() {
    let text = "
        ; two variables, one conjunct, one disjunction
        (system
          (var x 0 1)
          (var y -1/2 3/4)
          (<= (+ (* 2 x) (* -1 y) -1/4))
          (or (< (+ (^ x 2) (^ y 2) -1)) (= y)))
    ";
    let sys = parse_system(text).unwrap();
    assert_eq!(sys.vars.len(), 2);
    let y = &sys.vars["y"];
    assert_eq!(y.lo, BigRational::new(BigInt::from(-1), BigInt::from(2)));
    assert_eq!(y.hi, BigRational::new(BigInt::from(3), BigInt::from(4)));
    assert_eq!(sys.clauses.len(), 2);
    let first = &sys.clauses[0];
    assert_eq!(first.0.len(), 1);
    let expected = &(&Polynomial::real(2.0) * &pv("x")) - &(&pv("y") + &Polynomial::real(0.25));
    assert_eq!(first.0[0].poly, expected);
    assert_eq!(first.0[0].op, ConstraintOp::Le);
    assert_eq!(sys.clauses[1].0.len(), 2);

    let round = parse_system(&system_to_sexpr(&sys)).unwrap();
    assert_eq!(round, sys);
}

#[test]
fn malformed_text_reports_positions() {
    for bad in [
        "(system (var x 1 0))",
        "(system (var x 0 1) (< (+ x z)))",
        "(system (var x 0 1) (< (^ x -2)))",
        "(system (var x 0 1) (< (/ x 2)))",
        "(system (var x 0 1) (< x)",
        "(system (var x 0 1) (< 1/0))",
        "(nonsense)",
    ] {
        assert!(parse_system(bad).is_err(), "accepted {bad:?}");
    }
    match parse_system("(system (var x 0 1) (<< x))") {
        Err(AnalyticError::Parse { at, .. }) => assert!(at > 0),
        other => panic!("expected parse error, got {other:?}"),
    }
}

#[test]
fn witness_rendering_lists_every_variable() {
    let mut w = BTreeMap::new();
    w.insert("x_a".to_string(), 1.5f64);
    w.insert("y_a".to_string(), -2.0f64);
    let text = witness_to_string(&w);
    assert!(text.contains("x_a") && text.contains("y_a"), "{text}");
}

// ---------------------------------------------------------------------------
// Domain tightening can only remove solutions.

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn tightening_domains_never_creates_solutions(
        a in -1.0f64..1.0,
        b in -1.0f64..1.0,
        c in -0.5f64..1.5,
        r2 in 0.01f64..2.25,
        q in -0.5f64..0.5,
        keep_quadratic in proptest::bool::ANY,
        keep_product in proptest::bool::ANY,
        cut0 in 0.0f64..0.4,
        cut1 in 0.0f64..0.4,
    ) {
        let mut sys = system(&[("x", 0.0, 1.0), ("y", 0.0, 1.0)]);
        let ax = &Polynomial::real(a) * &pv("x");
        let by = &Polynomial::real(b) * &pv("y");
        sys.push(PolyConstraint::le(&ax + &by, Polynomial::real(c)));
        if keep_quadratic {
            sys.push(PolyConstraint::le(
                &pv("x").pow(2) + &pv("y").pow(2),
                Polynomial::real(r2),
            ));
        }
        if keep_product {
            sys.push(PolyConstraint::ge(&pv("x") * &pv("y"), Polynomial::real(q)));
        }
        let relaxed = SolverConfig { budget: 20_000, ..SolverConfig::default() };
        let before = solve(&sys, &relaxed).unwrap();

        let mut tight = sys.clone();
        tight.narrow("x", cut0, 1.0 - cut1).unwrap();
        let after = solve(&tight, &relaxed).unwrap();

        prop_assert!(
            !(before.status == SatStatus::Unsat && after.status == SatStatus::Sat),
            "tightening turned unsat into sat"
        );
        if let Some(w) = &after.witness {
            prop_assert!(witness_is_valid(&tight, w, &relaxed));
        }
    }
}

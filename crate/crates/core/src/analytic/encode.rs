//! Compiles relation tuples into constraint systems.
//!
//! Objects are parameterized by kind: a point contributes `x_{id}`,
//! `y_{id}`; a segment its two endpoints `x1/y1/x2/y2_{id}`; a rectangle
//! `x/y/w/h_{id}`; a circle `x/y/r_{id}`; an oriented point a position and
//! a direction `dx/dy_{id}` pinned to the unit circle. Relations compile
//! to polynomial constraints over those parameters, with exact boundary
//! semantics: tangency is an equality here, where qualification would
//! accept anything inside its contact band.
//!
//! Euclidean gap thresholds over rectangles need `max(0, ..)` terms, which
//! are not polynomial; these are expressed through auxiliary variables,
//! with conjunctions of lower bounds for an upper distance bound and a
//! disjunction of upper bounds for a lower one.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::poly::Polynomial;
use super::{
    AnalyticError, ConstraintSystem, PolyConstraint, RealVar, SatResult, SolverConfig,
};
use crate::geom::{Entity, EntityKind, OrientedPoint};
use crate::qsr::{
    DistanceRelation, LrRelation, ObjectId, OccupancyRelation, OrientationRelation,
    QualificationContext, Rcc8, RelationSymbol, RelationTuple, SizeRelation,
};
use crate::scalar::Scalar;

/// Extent variables never reach zero: a rectangle or circle keeps positive
/// area in every witness.
const EXTENT_FLOOR: f64 = 1e-6;

/// How an object is parameterized in constraint systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParamKind {
    Point,
    Segment,
    OrientedPoint,
    AaRect,
    Circle,
}

impl ParamKind {
    pub fn name(self) -> &'static str {
        match self {
            ParamKind::Point => "point",
            ParamKind::Segment => "segment",
            ParamKind::OrientedPoint => "oriented-point",
            ParamKind::AaRect => "aa-rect",
            ParamKind::Circle => "circle",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "point" => Some(ParamKind::Point),
            "segment" => Some(ParamKind::Segment),
            "oriented-point" => Some(ParamKind::OrientedPoint),
            "aa-rect" => Some(ParamKind::AaRect),
            "circle" => Some(ParamKind::Circle),
            _ => None,
        }
    }

    /// Parameterization for a geometric entity kind, when one exists.
    /// Oriented rectangles and polygons have no fixed-arity encoding.
    pub fn of_entity_kind(kind: EntityKind) -> Option<Self> {
        match kind {
            EntityKind::Point => Some(ParamKind::Point),
            EntityKind::Segment => Some(ParamKind::Segment),
            EntityKind::AaRect => Some(ParamKind::AaRect),
            EntityKind::Circle => Some(ParamKind::Circle),
            EntityKind::OrientedRect | EntityKind::Polygon => None,
        }
    }
}

/// Declared parameter kinds for the objects of a scene, plus the
/// half-width of the coordinate box that bounds every position variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Schema {
    kinds: BTreeMap<ObjectId, ParamKind>,
    universe: f64,
}

impl Schema {
    pub fn new(universe: f64) -> Self {
        Self { kinds: BTreeMap::new(), universe: universe.abs() }
    }

    pub fn with(mut self, id: impl Into<ObjectId>, kind: ParamKind) -> Self {
        self.set(id, kind);
        self
    }

    pub fn set(&mut self, id: impl Into<ObjectId>, kind: ParamKind) {
        self.kinds.insert(id.into(), kind);
    }

    pub fn kind(&self, id: &str) -> Option<ParamKind> {
        self.kinds.get(id).copied()
    }

    pub fn universe(&self) -> f64 {
        self.universe
    }

    pub fn objects(&self) -> impl Iterator<Item = (&str, ParamKind)> {
        self.kinds.iter().map(|(id, &k)| (id.as_str(), k))
    }

    /// Declares the object's parameter variables, returning its kind.
    fn declare(&self, sys: &mut ConstraintSystem, id: &str) -> Result<ParamKind, AnalyticError> {
        let kind = self
            .kind(id)
            .ok_or_else(|| AnalyticError::UnknownObject { id: id.to_string() })?;
        let u = self.universe;
        let coord = |sys: &mut ConstraintSystem, name: String| {
            sys.declare(RealVar::new(name, -u, u).expect("finite universe"));
        };
        match kind {
            ParamKind::Point => {
                coord(sys, var_x(id));
                coord(sys, var_y(id));
            }
            ParamKind::Segment => {
                coord(sys, format!("x1_{id}"));
                coord(sys, format!("y1_{id}"));
                coord(sys, format!("x2_{id}"));
                coord(sys, format!("y2_{id}"));
            }
            ParamKind::OrientedPoint => {
                coord(sys, var_x(id));
                coord(sys, var_y(id));
                sys.declare(RealVar::new(format!("dx_{id}"), -1.0, 1.0).expect("finite"));
                sys.declare(RealVar::new(format!("dy_{id}"), -1.0, 1.0).expect("finite"));
                let dx = Polynomial::var(&format!("dx_{id}"));
                let dy = Polynomial::var(&format!("dy_{id}"));
                sys.push(PolyConstraint::eq(&dx.pow(2) + &dy.pow(2), Polynomial::int(1)));
            }
            ParamKind::AaRect => {
                coord(sys, var_x(id));
                coord(sys, var_y(id));
                sys.declare(
                    RealVar::new(format!("w_{id}"), EXTENT_FLOOR, 2.0 * u).expect("finite"),
                );
                sys.declare(
                    RealVar::new(format!("h_{id}"), EXTENT_FLOOR, 2.0 * u).expect("finite"),
                );
            }
            ParamKind::Circle => {
                coord(sys, var_x(id));
                coord(sys, var_y(id));
                sys.declare(RealVar::new(format!("r_{id}"), EXTENT_FLOOR, u).expect("finite"));
            }
        }
        Ok(kind)
    }
}

fn var_x(id: &str) -> String {
    format!("x_{id}")
}

fn var_y(id: &str) -> String {
    format!("y_{id}")
}

/// Fills `out` with the parameter variables of a concrete entity, named as
/// the encodings expect. Oriented rectangles and polygons have no
/// parameterization.
pub fn fix_entity<S: Scalar>(
    out: &mut BTreeMap<String, S>,
    id: &str,
    entity: &Entity<S>,
) -> Result<(), AnalyticError> {
    match entity {
        Entity::Point(p) => {
            out.insert(var_x(id), p.x);
            out.insert(var_y(id), p.y);
        }
        Entity::Segment(s) => {
            out.insert(format!("x1_{id}"), s.a.x);
            out.insert(format!("y1_{id}"), s.a.y);
            out.insert(format!("x2_{id}"), s.b.x);
            out.insert(format!("y2_{id}"), s.b.y);
        }
        Entity::AaRect(r) => {
            out.insert(var_x(id), r.x);
            out.insert(var_y(id), r.y);
            out.insert(format!("w_{id}"), r.w);
            out.insert(format!("h_{id}"), r.h);
        }
        Entity::Circle(c) => {
            out.insert(var_x(id), c.center.x);
            out.insert(var_y(id), c.center.y);
            out.insert(format!("r_{id}"), c.radius);
        }
        Entity::OrientedRect(_) | Entity::Polygon(_) => {
            return Err(AnalyticError::KindMismatch { id: id.to_string() })
        }
    }
    Ok(())
}

/// Oriented-point counterpart of [`fix_entity`].
pub fn fix_oriented<S: Scalar>(out: &mut BTreeMap<String, S>, id: &str, op: &OrientedPoint<S>) {
    // The schema constrains direction components to unit norm.
    let n = op.dir.norm();
    out.insert(var_x(id), op.pos.x);
    out.insert(var_y(id), op.pos.y);
    out.insert(format!("dx_{id}"), op.dir.dx / n);
    out.insert(format!("dy_{id}"), op.dir.dy / n);
}

struct RectVars {
    x: Polynomial,
    y: Polynomial,
    w: Polynomial,
    h: Polynomial,
}

fn rect_vars(id: &str) -> RectVars {
    RectVars {
        x: Polynomial::var(&var_x(id)),
        y: Polynomial::var(&var_y(id)),
        w: Polynomial::var(&format!("w_{id}")),
        h: Polynomial::var(&format!("h_{id}")),
    }
}

/// Center plus radius; a point is the zero-radius case.
struct RoundVars {
    x: Polynomial,
    y: Polynomial,
    r: Polynomial,
}

fn circle_vars(id: &str) -> RoundVars {
    RoundVars {
        x: Polynomial::var(&var_x(id)),
        y: Polynomial::var(&var_y(id)),
        r: Polynomial::var(&format!("r_{id}")),
    }
}

fn point_vars(id: &str) -> RoundVars {
    RoundVars {
        x: Polynomial::var(&var_x(id)),
        y: Polynomial::var(&var_y(id)),
        r: Polynomial::zero(),
    }
}

fn pos(p: Polynomial) -> PolyConstraint {
    PolyConstraint::gt(p, Polynomial::zero())
}

fn neg(p: Polynomial) -> PolyConstraint {
    PolyConstraint::lt(p, Polynomial::zero())
}

fn zero(p: Polynomial) -> PolyConstraint {
    PolyConstraint::eq(p, Polynomial::zero())
}

fn nonneg(p: Polynomial) -> PolyConstraint {
    PolyConstraint::ge(p, Polynomial::zero())
}

fn nonpos(p: Polynomial) -> PolyConstraint {
    PolyConstraint::le(p, Polynomial::zero())
}

fn no_encoding(symbol: RelationSymbol, a: ParamKind, b: ParamKind) -> AnalyticError {
    AnalyticError::NoEncoding {
        symbol: symbol.name().to_string(),
        a: a.name().to_string(),
        b: b.name().to_string(),
    }
}

/// Compiles one relation tuple into a constraint system over its
/// arguments' parameters.
pub fn encode_relation<S: Scalar>(
    rel: &RelationTuple,
    schema: &Schema,
    ctx: &QualificationContext<S>,
) -> Result<ConstraintSystem, AnalyticError> {
    let mut sys = ConstraintSystem::new();
    let ka = schema.declare(&mut sys, &rel.a)?;
    let kb = schema.declare(&mut sys, &rel.b)?;
    let unsupported = || no_encoding(rel.symbol, ka, kb);

    match rel.symbol {
        RelationSymbol::Mereotopology(r) => match (ka, kb) {
            (ParamKind::AaRect, ParamKind::AaRect) => {
                rcc8_rects(&mut sys, r, &rect_vars(&rel.a), &rect_vars(&rel.b))
            }
            (ParamKind::Circle, ParamKind::Circle) => {
                rcc8_circles(&mut sys, r, &circle_vars(&rel.a), &circle_vars(&rel.b))
            }
            _ => return Err(unsupported()),
        },
        RelationSymbol::Lr(r) => match (ka, kb) {
            (ParamKind::Segment, ParamKind::Point) => lr_encoding(&mut sys, r, &rel.a, &rel.b),
            _ => return Err(unsupported()),
        },
        RelationSymbol::Orientation(r) => match (ka, kb) {
            (ParamKind::OrientedPoint, ParamKind::OrientedPoint) => {
                let cos_tol = ctx.angle_tol.to_f64().unwrap_or(f64::NAN).cos();
                if cos_tol <= 0.0 {
                    return Err(unsupported());
                }
                orientation_encoding(&mut sys, r, &rel.a, &rel.b, cos_tol)
            }
            _ => return Err(unsupported()),
        },
        RelationSymbol::Distance(r) => {
            let t_adj = ctx.adjacent_threshold.to_f64().unwrap_or(f64::NAN);
            let t_near = ctx.near_threshold.to_f64().unwrap_or(f64::NAN);
            if !(t_adj.is_finite() && t_near.is_finite()) {
                return Err(AnalyticError::NonFinite { what: "distance threshold" });
            }
            let round = |id: &str, k: ParamKind| match k {
                ParamKind::Point => Some(point_vars(id)),
                ParamKind::Circle => Some(circle_vars(id)),
                _ => None,
            };
            let prefix = aux_prefix(rel);
            let ds = DistScale { prefix: &prefix, t_adj, t_near, universe: schema.universe };
            match (round(&rel.a, ka), round(&rel.b, kb), ka, kb) {
                (Some(ca), Some(cb), _, _) => {
                    distance_rounds(&mut sys, r, &ca, &cb, t_adj, t_near)
                }
                (Some(ca), None, _, ParamKind::AaRect) => {
                    distance_round_rect(&mut sys, r, &ca, &rect_vars(&rel.b), &ds)
                }
                (None, Some(cb), ParamKind::AaRect, _) => {
                    distance_round_rect(&mut sys, r, &cb, &rect_vars(&rel.a), &ds)
                }
                (None, None, ParamKind::AaRect, ParamKind::AaRect) => {
                    distance_rects(&mut sys, r, &rect_vars(&rel.a), &rect_vars(&rel.b), &ds)
                }
                _ => return Err(unsupported()),
            }
        }
        RelationSymbol::Size(r) => {
            let tol = ctx.size_ratio_tol.to_f64().unwrap_or(f64::NAN);
            if !tol.is_finite() {
                return Err(AnalyticError::NonFinite { what: "size tolerance" });
            }
            let area = |id: &str, k: ParamKind| -> Option<Polynomial> {
                match k {
                    // Pi scales circle areas; it cancels between two
                    // circles and is otherwise approximated by the nearest
                    // double.
                    ParamKind::AaRect => {
                        let rv = rect_vars(id);
                        Some(&rv.w * &rv.h)
                    }
                    ParamKind::Circle => Some(circle_vars(id).r.pow(2)),
                    _ => None,
                }
            };
            let (mut area_a, mut area_b) = match (area(&rel.a, ka), area(&rel.b, kb)) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(unsupported()),
            };
            let pi = BigRational::from_float(std::f64::consts::PI).expect("finite");
            match (ka, kb) {
                (ParamKind::Circle, ParamKind::Circle) => {}
                (ParamKind::Circle, _) => area_a = area_a.scale(&pi),
                (_, ParamKind::Circle) => area_b = area_b.scale(&pi),
                _ => {}
            }
            size_encoding(&mut sys, r, area_a, area_b, tol)
        }
        RelationSymbol::Occupancy(OccupancyRelation::GazeOn) => match (ka, kb) {
            (ParamKind::Point, ParamKind::AaRect) => {
                let p = point_vars(&rel.a);
                let b = rect_vars(&rel.b);
                sys.push(PolyConstraint::ge(p.x.clone(), b.x.clone()));
                sys.push(PolyConstraint::le(p.x, &b.x + &b.w));
                sys.push(PolyConstraint::ge(p.y.clone(), b.y.clone()));
                sys.push(PolyConstraint::le(p.y, &b.y + &b.h));
            }
            (ParamKind::Point, ParamKind::Circle) => {
                let p = point_vars(&rel.a);
                let c = circle_vars(&rel.b);
                let d2 = &(&p.x - &c.x).pow(2) + &(&p.y - &c.y).pow(2);
                sys.push(PolyConstraint::le(d2, c.r.pow(2)));
            }
            _ => return Err(unsupported()),
        },
        RelationSymbol::Interval(_) | RelationSymbol::Motion(_) => return Err(unsupported()),
    }
    Ok(sys)
}

/// Namespace for the auxiliary variables a tuple's encoding introduces,
/// distinct per symbol and argument pair.
fn aux_prefix(rel: &RelationTuple) -> String {
    format!("{}_{}_{}", rel.symbol.name().replace('-', "_"), rel.a, rel.b)
}

fn rcc8_rects(sys: &mut ConstraintSystem, r: Rcc8, a: &RectVars, b: &RectVars) {
    // Inner margins: all nonnegative exactly when `a` lies within `b`.
    let margins = |a: &RectVars, b: &RectVars| {
        [
            &a.x - &b.x,
            &(&b.x + &b.w) - &(&a.x + &a.w),
            &a.y - &b.y,
            &(&b.y + &b.h) - &(&a.y + &a.h),
        ]
    };
    // Outer gaps: any positive exactly when the rectangles are separated.
    let gaps = [
        &b.x - &(&a.x + &a.w),
        &a.x - &(&b.x + &b.w),
        &b.y - &(&a.y + &a.h),
        &a.y - &(&b.y + &b.h),
    ];
    match r {
        Rcc8::Dc => sys.push_any(gaps.into_iter().map(pos).collect()),
        Rcc8::Ec => {
            sys.push_any(gaps.iter().cloned().map(zero).collect());
            for g in gaps {
                sys.push(nonpos(g));
            }
        }
        Rcc8::Po => {
            for g in gaps {
                sys.push(neg(g));
            }
            let m = margins(a, b);
            sys.push_any(m.iter().cloned().map(neg).collect());
            sys.push_any(m.into_iter().map(pos).collect());
        }
        Rcc8::Tpp => {
            let m = margins(a, b);
            sys.push_any(m.iter().cloned().map(zero).collect());
            sys.push_any(m.iter().cloned().map(pos).collect());
            for mi in m {
                sys.push(nonneg(mi));
            }
        }
        Rcc8::Ntpp => {
            for mi in margins(a, b) {
                sys.push(pos(mi));
            }
        }
        Rcc8::Tppi => rcc8_rects(sys, Rcc8::Tpp, b, a),
        Rcc8::Ntppi => rcc8_rects(sys, Rcc8::Ntpp, b, a),
        Rcc8::Eq => {
            sys.push(PolyConstraint::eq(a.x.clone(), b.x.clone()));
            sys.push(PolyConstraint::eq(a.y.clone(), b.y.clone()));
            sys.push(PolyConstraint::eq(a.w.clone(), b.w.clone()));
            sys.push(PolyConstraint::eq(a.h.clone(), b.h.clone()));
        }
    }
}

fn rcc8_circles(sys: &mut ConstraintSystem, r: Rcc8, a: &RoundVars, b: &RoundVars) {
    let d2 = &(&a.x - &b.x).pow(2) + &(&a.y - &b.y).pow(2);
    let sum2 = (&a.r + &b.r).pow(2);
    let diff2 = (&b.r - &a.r).pow(2);
    match r {
        Rcc8::Dc => sys.push(PolyConstraint::gt(d2, sum2)),
        Rcc8::Ec => sys.push(PolyConstraint::eq(d2, sum2)),
        Rcc8::Po => {
            sys.push(PolyConstraint::lt(d2.clone(), sum2));
            sys.push(PolyConstraint::gt(d2, diff2));
        }
        Rcc8::Tpp => {
            sys.push(PolyConstraint::eq(d2, diff2));
            sys.push(PolyConstraint::lt(a.r.clone(), b.r.clone()));
        }
        Rcc8::Ntpp => {
            sys.push(PolyConstraint::lt(d2, diff2));
            sys.push(PolyConstraint::lt(a.r.clone(), b.r.clone()));
        }
        Rcc8::Tppi => rcc8_circles(sys, Rcc8::Tpp, b, a),
        Rcc8::Ntppi => rcc8_circles(sys, Rcc8::Ntpp, b, a),
        Rcc8::Eq => {
            sys.push(PolyConstraint::eq(a.x.clone(), b.x.clone()));
            sys.push(PolyConstraint::eq(a.y.clone(), b.y.clone()));
            sys.push(PolyConstraint::eq(a.r.clone(), b.r.clone()));
        }
    }
}

fn lr_encoding(sys: &mut ConstraintSystem, r: LrRelation, axis: &str, target: &str) {
    let ex = &Polynomial::var(&format!("x2_{axis}")) - &Polynomial::var(&format!("x1_{axis}"));
    let ey = &Polynomial::var(&format!("y2_{axis}")) - &Polynomial::var(&format!("y1_{axis}"));
    let px = &Polynomial::var(&var_x(target)) - &Polynomial::var(&format!("x1_{axis}"));
    let py = &Polynomial::var(&var_y(target)) - &Polynomial::var(&format!("y1_{axis}"));
    let cross = &(&ex * &py) - &(&ey * &px);
    let dotp = &(&ex * &px) + &(&ey * &py);
    let len2 = &ex.pow(2) + &ey.pow(2);
    sys.push(pos(len2.clone()));
    match r {
        LrRelation::Left => sys.push(pos(cross)),
        LrRelation::Right => sys.push(neg(cross)),
        LrRelation::On => {
            sys.push(zero(cross));
            sys.push(pos(dotp.clone()));
            sys.push(PolyConstraint::lt(dotp, len2));
        }
        LrRelation::Start => {
            sys.push(zero(cross));
            sys.push(zero(dotp));
        }
        LrRelation::End => {
            sys.push(zero(cross));
            sys.push(PolyConstraint::eq(dotp, len2));
        }
        LrRelation::Back => {
            sys.push(zero(cross));
            sys.push(neg(dotp));
        }
        LrRelation::Front => {
            sys.push(zero(cross));
            sys.push(PolyConstraint::gt(dotp, len2));
        }
    }
}

fn orientation_encoding(
    sys: &mut ConstraintSystem,
    r: OrientationRelation,
    a: &str,
    b: &str,
    cos_tol: f64,
) {
    let c = Polynomial::real(cos_tol);
    match r {
        OrientationRelation::FacingTowards | OrientationRelation::FacingAway => {
            let dx = &Polynomial::var(&var_x(b)) - &Polynomial::var(&var_x(a));
            let dy = &Polynomial::var(&var_y(b)) - &Polynomial::var(&var_y(a));
            let s = &(&Polynomial::var(&format!("dx_{a}")) * &dx)
                + &(&Polynomial::var(&format!("dy_{a}")) * &dy);
            let d2 = &dx.pow(2) + &dy.pow(2);
            sys.push(pos(d2.clone()));
            // cos(angle) compared against cos_tol without square roots:
            // sign of the projection plus squared magnitudes.
            let cr = BigRational::from_float(cos_tol).expect("finite");
            sys.push(PolyConstraint::ge(s.pow(2), d2.scale(&(&cr * &cr))));
            match r {
                OrientationRelation::FacingTowards => sys.push(nonneg(s)),
                _ => sys.push(nonpos(s)),
            }
        }
        OrientationRelation::SameDirection => {
            let dot = &(&Polynomial::var(&format!("dx_{a}")) * &Polynomial::var(&format!("dx_{b}")))
                + &(&Polynomial::var(&format!("dy_{a}")) * &Polynomial::var(&format!("dy_{b}")));
            sys.push(PolyConstraint::ge(dot, c));
        }
        OrientationRelation::OppositeDirection => {
            let dot = &(&Polynomial::var(&format!("dx_{a}")) * &Polynomial::var(&format!("dx_{b}")))
                + &(&Polynomial::var(&format!("dy_{a}")) * &Polynomial::var(&format!("dy_{b}")));
            sys.push(PolyConstraint::le(dot, -&c));
        }
    }
}

fn size_encoding(
    sys: &mut ConstraintSystem,
    r: SizeRelation,
    area_a: Polynomial,
    area_b: Polynomial,
    tol: f64,
) {
    let keep = BigRational::from_float(1.0 - tol).expect("finite tolerance");
    match r {
        SizeRelation::Smaller => sys.push(PolyConstraint::lt(area_a, area_b.scale(&keep))),
        SizeRelation::Larger => sys.push(PolyConstraint::lt(area_b, area_a.scale(&keep))),
        SizeRelation::EquiSized => {
            sys.push(PolyConstraint::ge(area_a.clone(), area_b.scale(&keep)));
            sys.push(PolyConstraint::ge(area_b, area_a.scale(&keep)));
        }
    }
}

/// Distance between two circles (or points, as zero-radius circles):
/// thresholds apply to the boundary gap `d - r_a - r_b`, clamped at zero.
fn distance_rounds(
    sys: &mut ConstraintSystem,
    r: DistanceRelation,
    a: &RoundVars,
    b: &RoundVars,
    t_adj: f64,
    t_near: f64,
) {
    let d2 = &(&a.x - &b.x).pow(2) + &(&a.y - &b.y).pow(2);
    let reach = |t: f64| (&(&a.r + &b.r) + &Polynomial::real(t)).pow(2);
    match r {
        DistanceRelation::Adjacent => sys.push(PolyConstraint::le(d2, reach(t_adj))),
        DistanceRelation::Near => {
            sys.push(PolyConstraint::gt(d2.clone(), reach(t_adj)));
            sys.push(PolyConstraint::le(d2, reach(t_near)));
        }
        DistanceRelation::Far => sys.push(PolyConstraint::gt(d2, reach(t_near))),
    }
}

/// Declares `{prefix}_{axis}` bounded by the clamped per-axis gaps from
/// below (`upper` mode, for distance upper bounds) or from above (`lower`
/// mode, as a disjunction), and returns the pair of axis variables.
fn clamp_aux(
    sys: &mut ConstraintSystem,
    prefix: &str,
    gaps_x: &[Polynomial],
    gaps_y: &[Polynomial],
    upper: bool,
    floor: f64,
    universe: f64,
) -> (Polynomial, Polynomial) {
    let mut out = Vec::with_capacity(2);
    for (axis, gaps) in [("x", gaps_x), ("y", gaps_y)] {
        let name = format!("{prefix}_{axis}");
        sys.declare(RealVar::new(name.clone(), 0.0, 8.0 * universe).expect("finite universe"));
        let v = Polynomial::var(&name);
        if upper {
            for g in gaps {
                sys.push(PolyConstraint::ge(v.clone(), g.clone()));
            }
        } else {
            // The fallback literal admits a small positive band instead of
            // zero alone. With floor < threshold the encoded predicate is
            // unchanged, but the feasible region keeps interior volume in
            // the clamp dimensions, which interval search can certify.
            let mut lits: Vec<PolyConstraint> =
                gaps.iter().map(|g| PolyConstraint::le(v.clone(), g.clone())).collect();
            lits.push(PolyConstraint::le(v.clone(), Polynomial::real(floor)));
            sys.push_any(lits);
        }
        out.push(v);
    }
    (out.remove(0), out.remove(0))
}

/// Thresholds and naming shared by the aux-variable distance encodings.
struct DistScale<'a> {
    prefix: &'a str,
    t_adj: f64,
    t_near: f64,
    universe: f64,
}

fn distance_rects(
    sys: &mut ConstraintSystem,
    r: DistanceRelation,
    a: &RectVars,
    b: &RectVars,
    ds: &DistScale,
) {
    let gx = [&b.x - &(&a.x + &a.w), &a.x - &(&b.x + &b.w)];
    let gy = [&b.y - &(&a.y + &a.h), &a.y - &(&b.y + &b.h)];
    let prefix = ds.prefix;
    let upper = |sys: &mut ConstraintSystem, t: f64| {
        let (ux, uy) = clamp_aux(sys, &format!("{prefix}_u"), &gx, &gy, true, 0.0, ds.universe);
        sys.push(PolyConstraint::le(&ux.pow(2) + &uy.pow(2), Polynomial::real(t * t)));
    };
    let lower = |sys: &mut ConstraintSystem, t: f64| {
        let floor = (t / 2.0).min(1e-3);
        let (vx, vy) = clamp_aux(sys, &format!("{prefix}_v"), &gx, &gy, false, floor, ds.universe);
        sys.push(PolyConstraint::gt(&vx.pow(2) + &vy.pow(2), Polynomial::real(t * t)));
    };
    match r {
        DistanceRelation::Adjacent => upper(sys, ds.t_adj),
        DistanceRelation::Near => {
            lower(sys, ds.t_adj);
            upper(sys, ds.t_near);
        }
        DistanceRelation::Far => lower(sys, ds.t_near),
    }
}

fn distance_round_rect(
    sys: &mut ConstraintSystem,
    r: DistanceRelation,
    c: &RoundVars,
    b: &RectVars,
    ds: &DistScale,
) {
    let gx = [&b.x - &c.x, &c.x - &(&b.x + &b.w)];
    let gy = [&b.y - &c.y, &c.y - &(&b.y + &b.h)];
    let prefix = ds.prefix;
    let reach = |t: f64| (&c.r + &Polynomial::real(t)).pow(2);
    let upper = |sys: &mut ConstraintSystem, t: f64| {
        let (ux, uy) = clamp_aux(sys, &format!("{prefix}_u"), &gx, &gy, true, 0.0, ds.universe);
        sys.push(PolyConstraint::le(&ux.pow(2) + &uy.pow(2), reach(t)));
    };
    let lower = |sys: &mut ConstraintSystem, t: f64| {
        let floor = (t / 2.0).min(1e-3);
        let (vx, vy) = clamp_aux(sys, &format!("{prefix}_v"), &gx, &gy, false, floor, ds.universe);
        sys.push(PolyConstraint::gt(&vx.pow(2) + &vy.pow(2), reach(t)));
    };
    match r {
        DistanceRelation::Adjacent => upper(sys, ds.t_adj),
        DistanceRelation::Near => {
            lower(sys, ds.t_adj);
            upper(sys, ds.t_near);
        }
        DistanceRelation::Far => lower(sys, ds.t_near),
    }
}

/// Conjoins the encodings of every tuple and solves the result.
pub fn check_consistency<S: Scalar>(
    rels: &[RelationTuple],
    schema: &Schema,
    ctx: &QualificationContext<S>,
    cfg: &SolverConfig<S>,
) -> Result<SatResult<S>, AnalyticError> {
    let mut sys = ConstraintSystem::new();
    for rel in rels {
        sys.merge(encode_relation(rel, schema, ctx)?)?;
    }
    super::solve::solve(&sys, cfg)
}

/// Solves a single relation's encoding with some parameters pinned to
/// concrete values, asking whether any completion realizes the relation.
pub fn quantify<S: Scalar>(
    rel: &RelationTuple,
    fixed: &BTreeMap<String, S>,
    schema: &Schema,
    ctx: &QualificationContext<S>,
    cfg: &SolverConfig<S>,
) -> Result<SatResult<S>, AnalyticError> {
    let mut sys = encode_relation(rel, schema, ctx)?;
    for (name, value) in fixed {
        let v = value.to_f64().ok_or(AnalyticError::NonFinite { what: "pinned value" })?;
        sys.pin(name, v)?;
    }
    super::solve::solve(&sys, cfg)
}

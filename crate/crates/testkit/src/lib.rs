//! Deterministic generators and independent oracles for the test suites.
//!
//! Everything here checks the main crate from the outside, so nothing here
//! depends on it: shapes are plain coordinate bundles, relation answers are
//! name strings, and the oracles answer through entirely different means
//! (rasterization, definitional endpoint comparison) than the library. The
//! consuming tests convert specs into library types themselves; agreement
//! is then evidence rather than tautology.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod raster;

pub use raster::{rasterize_pair, RasterEvidence};

/// Seeded generator used across all suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A generated region, as raw coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum ShapeSpec {
    Circle { cx: f64, cy: f64, r: f64 },
    Rect { x: f64, y: f64, w: f64, h: f64 },
    Polygon { vertices: Vec<(f64, f64)> },
}

/// A circle with center in the world box and radius in `[min_r, max_r]`.
pub fn circle_in(r: &mut impl Rng, world: (f64, f64), min_r: f64, max_r: f64) -> ShapeSpec {
    ShapeSpec::Circle {
        r: r.gen_range(min_r..=max_r),
        cx: r.gen_range(0.0..world.0),
        cy: r.gen_range(0.0..world.1),
    }
}

/// An axis-aligned rectangle inside the world box with extents in
/// `[min_e, max_e]`.
pub fn rect_in(r: &mut impl Rng, world: (f64, f64), min_e: f64, max_e: f64) -> ShapeSpec {
    let w = r.gen_range(min_e..=max_e);
    let h = r.gen_range(min_e..=max_e);
    ShapeSpec::Rect {
        x: r.gen_range(0.0..(world.0 - w).max(1e-6)),
        y: r.gen_range(0.0..(world.1 - h).max(1e-6)),
        w,
        h,
    }
}

/// A strictly convex polygon: jittered angles on an ellipse, counterclockwise.
pub fn convex_polygon_in(
    r: &mut impl Rng,
    world: (f64, f64),
    min_r: f64,
    max_r: f64,
) -> ShapeSpec {
    let n = r.gen_range(4..=9usize);
    let rx = r.gen_range(min_r..=max_r);
    let ry = r.gen_range(min_r..=max_r);
    let cx = r.gen_range(0.0..world.0);
    let cy = r.gen_range(0.0..world.1);
    let phase = r.gen_range(0.0..std::f64::consts::TAU);
    let mut vertices = Vec::with_capacity(n);
    for i in 0..n {
        // Stagger each angle within its own arc so the sequence stays
        // strictly increasing and the hull strictly convex.
        let jitter = r.gen_range(0.1..0.9);
        let theta = phase + std::f64::consts::TAU * (i as f64 + jitter) / n as f64;
        vertices.push((cx + rx * theta.cos(), cy + ry * theta.sin()));
    }
    ShapeSpec::Polygon { vertices }
}

/// A random region: circle, rectangle or convex polygon, uniformly. The
/// size bounds give rectangle extents; circles and polygons use half of
/// them as radii.
pub fn region_in(r: &mut impl Rng, world: (f64, f64), min_e: f64, max_e: f64) -> ShapeSpec {
    match r.gen_range(0..3) {
        0 => circle_in(r, world, min_e / 2.0, max_e / 2.0),
        1 => rect_in(r, world, min_e, max_e),
        _ => convex_polygon_in(r, world, min_e / 2.0, max_e / 2.0),
    }
}

/// Interval relation by the definitional endpoint comparisons, as a name.
///
/// Intervals are `(start, end)` with `start < end`; comparisons are exact,
/// so callers should use well-separated endpoints.
pub fn allen_oracle(a: (f64, f64), b: (f64, f64)) -> &'static str {
    let (s1, e1) = a;
    let (s2, e2) = b;
    if e1 < s2 {
        "precedes"
    } else if e1 == s2 {
        "meets"
    } else if s1 < s2 && s2 < e1 && e1 < e2 {
        "overlaps"
    } else if s1 == s2 && e1 < e2 {
        "starts"
    } else if s2 < s1 && e1 < e2 {
        "during"
    } else if s2 < s1 && e1 == e2 {
        "finishes"
    } else if s1 == s2 && e1 == e2 {
        "equals"
    } else if e2 < s1 {
        "preceded-by"
    } else if e2 == s1 {
        "met-by"
    } else if s2 < s1 && s1 < e2 && e2 < e1 {
        "overlapped-by"
    } else if s1 == s2 && e2 < e1 {
        "started-by"
    } else if s1 < s2 && e2 < e1 {
        "contains"
    } else {
        debug_assert!(s1 < s2 && e1 == e2);
        "finished-by"
    }
}

/// Coarse mereotopology class from raster cell counts, as a name in
/// `{dr, po, pp, ppi, eq}`; `None` when both regions missed the grid.
pub fn raster_class(ev: &RasterEvidence) -> Option<&'static str> {
    if ev.only_a == 0 && ev.only_b == 0 && ev.both == 0 {
        return None;
    }
    Some(if ev.both == 0 {
        "dr"
    } else if ev.only_a == 0 && ev.only_b == 0 {
        "eq"
    } else if ev.only_a == 0 {
        "pp"
    } else if ev.only_b == 0 {
        "ppi"
    } else {
        "po"
    })
}

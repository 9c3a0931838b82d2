//! Scanline rasterization of convex region pairs.
//!
//! Each shape covers, on any horizontal line, a single interval (all three
//! kinds are convex), so one row costs one interval per shape plus a span
//! intersection. Counting cells whose centers fall in A only, B only, or
//! both gives a discrete portrait of the pair that never consults the
//! library's own relation code.

use crate::ShapeSpec;

/// Cell counts from rasterizing a pair onto a shared grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RasterEvidence {
    /// Cells whose center lies in the first region only.
    pub only_a: usize,
    /// Cells whose center lies in the second region only.
    pub only_b: usize,
    /// Cells whose center lies in both regions.
    pub both: usize,
}

/// Rasterize `a` and `b` onto a `grid`x`grid` lattice over the axis-aligned
/// world box `(width, height)` anchored at the origin.
pub fn rasterize_pair(a: &ShapeSpec, b: &ShapeSpec, grid: usize, world: (f64, f64)) -> RasterEvidence {
    let cw = world.0 / grid as f64;
    let ch = world.1 / grid as f64;
    let mut ev = RasterEvidence { only_a: 0, only_b: 0, both: 0 };
    for row in 0..grid {
        let y = (row as f64 + 0.5) * ch;
        // An empty row is the inverted span (1, 0).
        let (a0, a1) =
            row_interval(a, y).and_then(|iv| cell_span(iv, cw, grid)).unwrap_or((1, 0));
        let (b0, b1) =
            row_interval(b, y).and_then(|iv| cell_span(iv, cw, grid)).unwrap_or((1, 0));
        if a0 <= a1 && b0 <= b1 {
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            let both = if lo <= hi { hi - lo + 1 } else { 0 };
            ev.both += both;
            ev.only_a += (a1 - a0 + 1) - both;
            ev.only_b += (b1 - b0 + 1) - both;
        } else if a0 <= a1 {
            ev.only_a += a1 - a0 + 1;
        } else if b0 <= b1 {
            ev.only_b += b1 - b0 + 1;
        }
    }
    ev
}

/// The x-interval a shape covers on the horizontal line at `y`, if any.
fn row_interval(shape: &ShapeSpec, y: f64) -> Option<(f64, f64)> {
    match shape {
        ShapeSpec::Circle { cx, cy, r } => {
            let dy = y - cy;
            let d2 = r * r - dy * dy;
            if d2 < 0.0 {
                None
            } else {
                let half = d2.sqrt();
                Some((cx - half, cx + half))
            }
        }
        ShapeSpec::Rect { x, y: ry, w, h } => {
            if y < *ry || y > ry + h {
                None
            } else {
                Some((*x, x + w))
            }
        }
        ShapeSpec::Polygon { vertices } => ring_interval(vertices, y),
    }
}

/// The x-interval of a convex ring on the line at `y`: collect crossings of
/// every edge, take their extent.
fn ring_interval(vertices: &[(f64, f64)], y: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let n = vertices.len();
    for i in 0..n {
        let (x0, y0) = vertices[i];
        let (x1, y1) = vertices[(i + 1) % n];
        if (y0 - y) * (y1 - y) <= 0.0 && y0 != y1 {
            let t = (y - y0) / (y1 - y0);
            if (0.0..=1.0).contains(&t) {
                let x = x0 + t * (x1 - x0);
                lo = lo.min(x);
                hi = hi.max(x);
            }
        } else if y0 == y && y1 == y {
            // Horizontal edge lying on the scanline: both endpoints count.
            lo = lo.min(x0.min(x1));
            hi = hi.max(x0.max(x1));
        }
    }
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}

/// Cells of a `grid`-cell row whose centers fall inside `[lo, hi]`, clipped
/// to the grid; `None` when no center lands in the interval.
fn cell_span(iv: (f64, f64), cw: f64, grid: usize) -> Option<(usize, usize)> {
    let (lo, hi) = iv;
    // Center of cell i sits at (i + 0.5) * cw.
    let first = ((lo / cw - 0.5).ceil().max(0.0)) as isize;
    let last = ((hi / cw - 0.5).floor().min(grid as f64 - 1.0)) as isize;
    if first > last || last < 0 || first >= grid as isize {
        None
    } else {
        Some((first.max(0) as usize, last as usize))
    }
}

//! Exact rational geometry: orientation and crossing predicates, straight-line
//! drawings, and the planarity / outer-face checks used by the verifier.
//!
//! All predicates are computed over arbitrary-precision rationals; no floating
//! point is involved anywhere, so the verifier can serve as a trustworthy
//! oracle for the planners.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::graph::Graph;

/// Arbitrary-precision rational number. `Ratio` keeps values reduced with a
/// positive denominator, which is exactly the representation the plan format
/// requires.
pub type Rational = Ratio<BigInt>;

/// Build a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Ratio::from_integer(BigInt::from(n))
}

/// Build a rational from numerator and denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

/// A point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }

    fn sub(&self, other: &Point) -> Vector {
        Vector {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        }
    }

    fn add_vec(&self, v: &Vector) -> Point {
        Point::new(&self.x + &v.x, &self.y + &v.y)
    }
}

/// A direction or displacement; only used internally by the predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    pub x: Rational,
    pub y: Rational,
}

impl Vector {
    pub fn new(x: Rational, y: Rational) -> Self {
        Vector { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vector::new(rat(x), rat(y))
    }

    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    fn cross(&self, other: &Vector) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    fn dot(&self, other: &Vector) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    fn neg(&self) -> Vector {
        Vector::new(-self.x.clone(), -self.y.clone())
    }

    fn add(&self, other: &Vector) -> Vector {
        Vector::new(&self.x + &other.x, &self.y + &other.y)
    }

    fn scale(&self, s: &Rational) -> Vector {
        Vector::new(&self.x * s, &self.y * s)
    }

    /// Rotate by 90 degrees counterclockwise.
    pub fn rot90(&self) -> Vector {
        Vector::new(-self.y.clone(), self.x.clone())
    }
}

/// Sign of the cross product `(q - p) x (r - p)`: `+1` for a left turn
/// (counterclockwise), `0` for collinear, `-1` for a right turn.
pub fn orient(p: &Point, q: &Point, r: &Point) -> i8 {
    let v = q.sub(p);
    let w = r.sub(p);
    match v.cross(&w).cmp(&Rational::zero()) {
        Ordering::Greater => 1,
        Ordering::Equal => 0,
        Ordering::Less => -1,
    }
}

/// True iff `p` lies on the closed segment `a..b` (including endpoints).
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    let lo_x = a.x.clone().min(b.x.clone());
    let hi_x = a.x.clone().max(b.x.clone());
    let lo_y = a.y.clone().min(b.y.clone());
    let hi_y = a.y.clone().max(b.y.clone());
    p.x >= lo_x && p.x <= hi_x && p.y >= lo_y && p.y <= hi_y
}

/// True iff `p` lies on the open segment `a..b` (excluding endpoints).
pub fn on_open_segment(p: &Point, a: &Point, b: &Point) -> bool {
    on_segment(p, a, b) && p != a && p != b
}

/// True iff the closed segments `a0..a1` and `b0..b1` intersect in a point
/// that is not a shared endpoint.  Collinear overlap of positive length
/// counts as a crossing, touching in exactly one shared endpoint does not.
pub fn segments_cross(a0: &Point, a1: &Point, b0: &Point, b1: &Point) -> bool {
    let d1 = orient(b0, b1, a0);
    let d2 = orient(b0, b1, a1);
    let d3 = orient(a0, a1, b0);
    let d4 = orient(a0, a1, b1);

    // Proper crossing in the interiors.
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }

    // Collect touching points; a single shared endpoint is allowed.
    let mut touches: Vec<&Point> = Vec::new();
    for (p, s0, s1) in [(a0, b0, b1), (a1, b0, b1), (b0, a0, a1), (b1, a0, a1)] {
        if on_segment(p, s0, s1) && !touches.contains(&p) {
            touches.push(p);
        }
    }
    match touches.len() {
        0 => false,
        1 => {
            let p = touches[0];
            // A touch point that is an endpoint of both segments is a shared
            // endpoint; anywhere else the segments genuinely intersect.
            !((p == a0 || p == a1) && (p == b0 || p == b1))
        }
        // Two or more touch points means collinear overlap of positive length.
        _ => true,
    }
}

/// A straight-line drawing of (a subset of) a graph's vertices.
#[derive(Clone, Debug, Default)]
pub struct Drawing {
    positions: BTreeMap<usize, Point>,
}

impl Drawing {
    pub fn new() -> Self {
        Drawing {
            positions: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, v: usize, p: Point) {
        self.positions.insert(v, p);
    }

    pub fn get(&self, v: usize) -> Option<&Point> {
        self.positions.get(&v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.positions.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Point)> {
        self.positions.iter().map(|(v, p)| (*v, p))
    }

    /// Restrict to the given vertex set.
    pub fn restricted(&self, vertices: &[usize]) -> Drawing {
        let mut d = Drawing::new();
        for &v in vertices {
            if let Some(p) = self.get(v) {
                d.set(v, p.clone());
            }
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DrawingError {
    MissingPosition(usize),
}

impl core::fmt::Display for DrawingError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DrawingError::MissingPosition(v) => write!(f, "vertex {v} has no position"),
        }
    }
}

fn edge_endpoints<'a>(
    d: &'a Drawing,
    e: (usize, usize),
) -> Result<(&'a Point, &'a Point), DrawingError> {
    let p = d.get(e.0).ok_or(DrawingError::MissingPosition(e.0))?;
    let q = d.get(e.1).ok_or(DrawingError::MissingPosition(e.1))?;
    Ok((p, q))
}

/// Check that the drawing of the given edges is plane: distinct vertices sit
/// at distinct points, no two edges cross, and no vertex lies on a
/// non-incident edge.
pub fn drawing_is_plane(d: &Drawing, edges: &[(usize, usize)]) -> Result<bool, DrawingError> {
    let verts: Vec<(usize, &Point)> = d.iter().collect();
    for (i, (_, p)) in verts.iter().enumerate() {
        for (_, q) in verts.iter().skip(i + 1) {
            if p == q {
                return Ok(false);
            }
        }
    }
    for (i, &e) in edges.iter().enumerate() {
        let (p0, p1) = edge_endpoints(d, e)?;
        if p0 == p1 {
            return Ok(false);
        }
        for &f in edges.iter().skip(i + 1) {
            let (q0, q1) = edge_endpoints(d, f)?;
            if segments_cross(p0, p1, q0, q1) {
                return Ok(false);
            }
        }
        for &(v, ref p) in verts.iter() {
            if v != e.0 && v != e.1 && on_segment(p, p0, p1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact blocked-direction interval of a segment as seen from `p`.
///
/// For `p` not on the closed segment, the rays from `p` that hit the segment
/// form a closed angular cone of less than a half turn, spanned by the two
/// endpoint directions.  For `p` an endpoint of the segment, the only blocked
/// direction is the one along the segment.
enum Shadow {
    /// Closed cone from `lo` to `hi` counterclockwise, spanning < pi.
    Cone(Vector, Vector),
    /// A single direction.
    Line(Vector),
}

fn segment_shadow(p: &Point, a: &Point, b: &Point) -> Option<Shadow> {
    let va = a.sub(p);
    let vb = b.sub(p);
    if va.is_zero() {
        return Some(Shadow::Line(vb));
    }
    if vb.is_zero() {
        return Some(Shadow::Line(va));
    }
    let cr = va.cross(&vb);
    match cr.cmp(&Rational::zero()) {
        Ordering::Greater => Some(Shadow::Cone(va, vb)),
        Ordering::Less => Some(Shadow::Cone(vb, va)),
        Ordering::Equal => {
            if va.dot(&vb) > Rational::zero() {
                // Both endpoints on the same side: a single blocked direction.
                Some(Shadow::Line(va))
            } else {
                // p lies in the segment's interior; every ray is blocked at p.
                None
            }
        }
    }
}

/// Compare two nonzero direction vectors by counterclockwise angle starting
/// from the positive x axis.  Exact: quadrant first, cross product within.
pub fn cmp_angle(a: &Vector, b: &Vector) -> Ordering {
    fn half(v: &Vector) -> u8 {
        // 0 for angles in [0, pi), 1 for [pi, 2 pi).
        if v.y > Rational::zero() || (v.y.is_zero() && v.x > Rational::zero()) {
            0
        } else {
            1
        }
    }
    half(a).cmp(&half(b)).then_with(|| {
        match b.cross(a).cmp(&Rational::zero()) {
            Ordering::Less => Ordering::Less, // a before b counterclockwise
            Ordering::Greater => Ordering::Greater,
            Ordering::Equal => Ordering::Equal,
        }
    })
}

/// Rays from `p`: find a direction whose open ray avoids every listed segment
/// (segments incident to `p` are allowed to touch only at `p` itself).
///
/// Each segment blocks a closed angular interval of directions spanning less
/// than a half turn.  The union of these intervals fails to cover the circle
/// iff an escape ray exists, and any uncovered gap is bounded by interval
/// endpoints, so trying exact midpoints of the gaps between sorted endpoint
/// directions decides the question without any perturbation.
pub fn escape_direction(p: &Point, segments: &[(&Point, &Point)]) -> Option<Vector> {
    let mut shadows = Vec::new();
    for &(a, b) in segments {
        match segment_shadow(p, a, b) {
            Some(s) => shadows.push(s),
            None => return None, // p buried in a segment interior
        }
    }
    if shadows.is_empty() {
        return Some(Vector::from_ints(1, 0));
    }

    // Candidate gap boundaries: all interval endpoints.
    let mut dirs: Vec<Vector> = Vec::new();
    for s in &shadows {
        match s {
            Shadow::Cone(lo, hi) => {
                dirs.push(lo.clone());
                dirs.push(hi.clone());
            }
            Shadow::Line(d) => {
                dirs.push(d.clone());
                dirs.push(d.neg());
            }
        }
    }
    dirs.sort_by(cmp_angle);
    dirs.dedup_by(|a, b| cmp_angle(a, b) == Ordering::Equal);

    let blocked = |d: &Vector| -> bool {
        shadows.iter().any(|s| match s {
            Shadow::Cone(lo, hi) => {
                // d inside the closed cone lo..hi (< pi wide):
                lo.cross(d) >= Rational::zero()
                    && d.cross(hi) >= Rational::zero()
                    && (lo.cross(d) > Rational::zero()
                        || d.dot(lo) > Rational::zero())
                    && (d.cross(hi) > Rational::zero() || d.dot(hi) > Rational::zero())
            }
            Shadow::Line(l) => l.cross(d).is_zero() && l.dot(d) > Rational::zero(),
        })
    };

    let n = dirs.len();
    for i in 0..n {
        let a = &dirs[i];
        let b = &dirs[(i + 1) % n];
        // Candidate directions strictly between consecutive endpoints, plus
        // the endpoints themselves (a gap may be half-open).
        let mut cands: Vec<Vector> = Vec::new();
        let cr = a.cross(b);
        if cr > Rational::zero() {
            cands.push(a.add(b));
        } else if cr < Rational::zero() {
            // The gap from a to b (ccw) spans more than pi.
            cands.push(a.add(b).neg());
            cands.push(a.rot90());
        } else if a.dot(b) < Rational::zero() {
            // Exactly opposite: the gap spans pi.
            cands.push(a.rot90());
        } else {
            // Same direction (only one distinct endpoint direction overall).
            cands.push(a.rot90());
            cands.push(a.neg());
            cands.push(a.rot90().neg());
        }
        cands.push(a.clone());
        for c in cands {
            if !c.is_zero() && !blocked(&c) {
                return Some(c);
            }
        }
    }
    None
}

/// Check that every positioned vertex of the plane drawing lies on the outer
/// face, witnessed by an exact escape ray to infinity that crosses no edge.
pub fn drawing_is_outerplane(d: &Drawing, edges: &[(usize, usize)]) -> Result<bool, DrawingError> {
    let mut endpoints = Vec::with_capacity(edges.len());
    for &e in edges {
        endpoints.push(edge_endpoints(d, e)?);
    }
    for (v, p) in d.iter() {
        let segs: Vec<(&Point, &Point)> = edges
            .iter()
            .zip(endpoints.iter())
            .filter(|(&e, _)| e.0 != v && e.1 != v)
            .map(|(_, &(a, b))| (a, b))
            .chain(
                edges
                    .iter()
                    .zip(endpoints.iter())
                    .filter(|(&e, _)| e.0 == v || e.1 == v)
                    .map(|(_, &(a, b))| (a, b)),
            )
            .collect();
        if escape_direction(p, &segs).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Snap a point to the coarsest dyadic grid on which the predicate still
/// accepts it.  Keeps coordinate bit sizes bounded across long planner runs.
pub fn snap_to_dyadic(p: &Point, accept: impl Fn(&Point) -> bool) -> Point {
    let two = BigInt::from(2);
    let mut scale = BigInt::one();
    for _ in 0..=128 {
        let sx = Ratio::new(
            (&p.x * Ratio::from_integer(scale.clone())).round().to_integer(),
            scale.clone(),
        );
        let sy = Ratio::new(
            (&p.y * Ratio::from_integer(scale.clone())).round().to_integer(),
            scale.clone(),
        );
        let q = Point::new(sx, sy);
        if accept(&q) {
            return q;
        }
        scale *= &two;
    }
    p.clone()
}

/// Search an open region for a representative point.
///
/// Candidates walk from `anchor` along each hint direction with geometrically
/// shrinking step sizes; the first accepted candidate is snapped to a dyadic
/// grid and returned.  The caller's predicate encodes the full feasibility
/// check, so the result is always valid by construction.
pub fn find_point(
    anchor: &Point,
    hints: &[Vector],
    accept: impl Fn(&Point) -> bool,
) -> Option<Point> {
    let mut scales: Vec<Rational> = Vec::new();
    let mut s = rat(4);
    for _ in 0..96 {
        scales.push(s.clone());
        s /= rat(2);
    }
    for scale in &scales {
        for h in hints {
            if h.is_zero() {
                continue;
            }
            let cand = anchor.add_vec(&h.scale(scale));
            if accept(&cand) {
                return Some(snap_to_dyadic(&cand, &accept));
            }
        }
    }
    None
}

/// Fallback direction fan used when no case-specific hint applies: sixteen
/// directions around the anchor.
pub fn direction_fan() -> Vec<Vector> {
    let mut dirs = Vec::new();
    for &(x, y) in &[
        (1, 0),
        (1, 1),
        (0, 1),
        (-1, 1),
        (-1, 0),
        (-1, -1),
        (0, -1),
        (1, -1),
        (2, 1),
        (1, 2),
        (-1, 2),
        (-2, 1),
        (-2, -1),
        (-1, -2),
        (1, -2),
        (2, -1),
    ] {
        dirs.push(Vector::from_ints(x, y));
    }
    dirs
}

/// Verify the basic drawing invariants for a frame: plane, and (if requested)
/// outerplane.  Used by planners as the placement acceptance predicate.
pub fn frame_ok(d: &Drawing, edges: &[(usize, usize)], need_outerplane: bool) -> bool {
    match drawing_is_plane(d, edges) {
        Ok(true) => {}
        _ => return false,
    }
    if need_outerplane {
        matches!(drawing_is_outerplane(d, edges), Ok(true))
    } else {
        true
    }
}

/// Render a rational as `numer/denom` for diagnostics.
pub fn format_rational(r: &Rational) -> String {
    use alloc::format;
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Edges of `g` induced on the positioned vertices of `d`.
pub fn induced_edges(g: &Graph, d: &Drawing) -> Vec<(usize, usize)> {
    g.edges()
        .filter(|&(u, v)| d.contains(u) && d.contains(v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn orient_basic() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(2, 0)), 0);
        assert_eq!(orient(&p(0, 0), &p(0, 1), &p(1, 0)), -1);
    }

    #[test]
    fn crossing_basic() {
        assert!(segments_cross(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        // Shared endpoint only.
        assert!(!segments_cross(&p(0, 0), &p(1, 0), &p(1, 0), &p(2, 1)));
        // Disjoint collinear.
        assert!(!segments_cross(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)));
        // Collinear overlap.
        assert!(segments_cross(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)));
        // Collinear overlap out of a shared endpoint.
        assert!(segments_cross(&p(0, 0), &p(2, 0), &p(0, 0), &p(1, 0)));
        // T-touch in an interior point.
        assert!(segments_cross(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 2)));
    }

    #[test]
    fn plane_square_and_bowtie() {
        let mut d = Drawing::new();
        d.set(0, p(0, 0));
        d.set(1, p(1, 0));
        d.set(2, p(1, 1));
        d.set(3, p(0, 1));
        let square = [(0, 1), (1, 2), (2, 3), (3, 0)];
        assert_eq!(drawing_is_plane(&d, &square), Ok(true));
        let bowtie = [(0, 2), (2, 1), (1, 3), (3, 0)];
        assert_eq!(drawing_is_plane(&d, &bowtie), Ok(false));
    }

    #[test]
    fn plane_k4_with_center() {
        let mut d = Drawing::new();
        d.set(0, p(0, 0));
        d.set(1, p(4, 0));
        d.set(2, p(2, 4));
        d.set(3, p(2, 1));
        let edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
        assert_eq!(drawing_is_plane(&d, &edges), Ok(true));
        assert_eq!(drawing_is_outerplane(&d, &edges), Ok(false));
    }

    #[test]
    fn outerplane_convex_cycle() {
        let mut d = Drawing::new();
        let pts = [(0, 0), (4, 0), (6, 3), (2, 6), (-2, 3)];
        for (i, &(x, y)) in pts.iter().enumerate() {
            d.set(i, p(x, y));
        }
        let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        assert_eq!(drawing_is_outerplane(&d, &c5), Ok(true));
    }

    #[test]
    fn outerplane_single_edge_and_isolated() {
        let mut d = Drawing::new();
        d.set(0, p(0, 0));
        d.set(1, p(1, 0));
        assert_eq!(drawing_is_outerplane(&d, &[(0, 1)]), Ok(true));
        // A vertex behind a wall on its right can still escape to the left.
        let mut d2 = Drawing::new();
        d2.set(0, p(0, 0));
        d2.set(1, p(2, -10));
        d2.set(2, p(2, 10));
        assert_eq!(drawing_is_outerplane(&d2, &[(1, 2)]), Ok(true));
    }

    #[test]
    fn vertex_on_edge_rejected() {
        let mut d = Drawing::new();
        d.set(0, p(0, 0));
        d.set(1, p(2, 0));
        d.set(2, p(1, 0));
        assert_eq!(drawing_is_plane(&d, &[(0, 1)]), Ok(false));
    }

    #[test]
    fn missing_position_reported() {
        let d = Drawing::new();
        assert_eq!(
            drawing_is_plane(&d, &[(0, 1)]),
            Err(DrawingError::MissingPosition(0))
        );
    }

    #[test]
    fn snap_keeps_predicate() {
        let target = Point::new(ratio(1, 3), ratio(2, 7));
        let snapped = snap_to_dyadic(&target, |q| {
            (&q.x - ratio(1, 3)).abs() < ratio(1, 8) && (&q.y - ratio(2, 7)).abs() < ratio(1, 8)
        });
        assert!((&snapped.x - ratio(1, 3)).abs() < ratio(1, 8));
        // Snapped denominators are powers of two.
        let d = snapped.x.denom().clone();
        assert_eq!(d.clone() & (d - BigInt::one()), BigInt::zero());
    }
}

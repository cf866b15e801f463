//! Planar primitives: points, metrics, quadrants, axis-aligned boxes and the
//! predicates built on them.
//!
//! All predicates compare computed `f64` values exactly. Orientation tests go
//! through adaptive-precision `orient2d`, so they are exact for any finite
//! input; metric comparisons are exact on small integers and dyadic rationals.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic order on (x, y) using a total order on floats.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }

    #[inline]
    pub fn d2(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    #[inline]
    pub fn d2_squared(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn dinf(&self, other: &Point) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Horizontal, vertical, Euclidean and L-infinity distance between two points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distances {
    pub dx: f64,
    pub dy: f64,
    pub d2: f64,
    pub dinf: f64,
}

pub fn distances(u: Point, v: Point) -> Distances {
    let dx = (u.x - v.x).abs();
    let dy = (u.y - v.y).abs();
    Distances {
        dx,
        dy,
        d2: dx.hypot(dy),
        dinf: dx.max(dy),
    }
}

/// An ordered, immutable set of finite points. Ids are positions `0..n`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { points })
    }

    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| Point::from(c)).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Point)> + '_ {
        self.points.iter().copied().enumerate()
    }

    pub fn ids(&self) -> std::ops::Range<usize> {
        0..self.points.len()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// Axis-aligned bounding box, or `None` for an empty set.
    pub fn bounding_box(&self) -> Option<Rect> {
        let first = *self.points.first()?;
        let (mut lo, mut hi) = (first, first);
        for p in &self.points[1..] {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        Some(Rect { min: lo, max: hi })
    }

    pub fn validate(&self, mode: PositionMode) -> Result<()> {
        let violations = validate_general_position(self, mode);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::GeneralPosition(violations))
        }
    }
}

impl std::ops::Index<usize> for PointSet {
    type Output = Point;

    fn index(&self, id: usize) -> &Point {
        &self.points[id]
    }
}

/// One of the four closed-open quadrants around an apex, numbered
/// counterclockwise from the positive x axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quadrant {
    Q1,
    Q2,
    Q3,
    Q4,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::Q1, Quadrant::Q2, Quadrant::Q3, Quadrant::Q4];

    /// 1-based quadrant number.
    pub fn number(self) -> usize {
        self.index() + 1
    }

    /// 0-based index, usable as a cone index.
    pub fn index(self) -> usize {
        match self {
            Quadrant::Q1 => 0,
            Quadrant::Q2 => 1,
            Quadrant::Q3 => 2,
            Quadrant::Q4 => 3,
        }
    }

    pub fn from_index(i: usize) -> Option<Quadrant> {
        Quadrant::ALL.get(i).copied()
    }

    /// Next quadrant counterclockwise.
    pub fn ccw(self) -> Quadrant {
        Quadrant::ALL[(self.index() + 1) % 4]
    }

    /// Direction of the clockwise bounding ray (the ray the quadrant includes).
    pub fn clockwise_ray(self) -> (f64, f64) {
        match self {
            Quadrant::Q1 => (1.0, 0.0),
            Quadrant::Q2 => (0.0, 1.0),
            Quadrant::Q3 => (-1.0, 0.0),
            Quadrant::Q4 => (0.0, -1.0),
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}", self.number())
    }
}

/// Quadrant of `v` around apex `u`. Each quadrant contains its clockwise
/// bounding ray and excludes its counterclockwise one.
pub fn quadrant_of(u: Point, v: Point) -> Result<Quadrant> {
    let dx = v.x - u.x;
    let dy = v.y - u.y;
    if dx == 0.0 && dy == 0.0 {
        return Err(Error::degenerate("quadrant of coincident points", vec![]));
    }
    Ok(if dx > 0.0 && dy >= 0.0 {
        Quadrant::Q1
    } else if dx <= 0.0 && dy > 0.0 {
        Quadrant::Q2
    } else if dx < 0.0 && dy <= 0.0 {
        Quadrant::Q3
    } else {
        Quadrant::Q4
    })
}

/// Closed axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn new(min: Point, max: Point) -> Result<Self> {
        if !(min.x <= max.x && min.y <= max.y) {
            return Err(Error::InvalidArgument(format!(
                "rectangle corners out of order: {min} / {max}"
            )));
        }
        Ok(Self { min, max })
    }

    /// The rectangle spanned by two opposite corners.
    pub fn spanned(a: Point, b: Point) -> Self {
        Self {
            min: Point::new(a.x.min(b.x), a.y.min(b.y)),
            max: Point::new(a.x.max(b.x), a.y.max(b.y)),
        }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    #[inline]
    pub fn contains_strictly(&self, p: Point) -> bool {
        self.min.x < p.x && p.x < self.max.x && self.min.y < p.y && p.y < self.max.y
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        self.min.x <= p.x && p.x <= self.max.x && self.min.y <= p.y && p.y <= self.max.y
    }

    pub fn on_boundary(&self, p: Point) -> bool {
        self.contains(p) && !self.contains_strictly(p)
    }
}

/// Side of an axis-aligned box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    West,
    East,
    South,
    North,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::West, Side::East, Side::South, Side::North];

    pub fn opposite(self) -> Side {
        match self {
            Side::West => Side::East,
            Side::East => Side::West,
            Side::South => Side::North,
            Side::North => Side::South,
        }
    }
}

/// Closed axis-aligned square. Both corners are stored so that a side placed
/// through a vertex carries that vertex's coordinate exactly; with floating
/// point inputs the two extents may then differ by rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Square {
    pub min: Point,
    pub max: Point,
}

impl Square {
    pub fn new(min: Point, side: f64) -> Result<Self> {
        if side.is_nan() || side < 0.0 || !min.is_finite() || !side.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "invalid square side {side}"
            )));
        }
        Ok(Self {
            min,
            max: Point::new(min.x + side, min.y + side),
        })
    }

    pub fn side(&self) -> f64 {
        (self.max.x - self.min.x).max(self.max.y - self.min.y)
    }

    pub fn rect(&self) -> Rect {
        Rect {
            min: self.min,
            max: self.max,
        }
    }

    pub fn contains_strictly(&self, p: Point) -> bool {
        self.rect().contains_strictly(p)
    }

    /// Sides of the square whose closed segment contains `p`. A corner lies on
    /// two sides; an interior or exterior point on none.
    pub fn sides_containing(&self, p: Point) -> Vec<Side> {
        let r = self.rect();
        if !r.contains(p) {
            return Vec::new();
        }
        let mut sides = Vec::with_capacity(2);
        if p.x == r.min.x {
            sides.push(Side::West);
        }
        if p.x == r.max.x {
            sides.push(Side::East);
        }
        if p.y == r.min.y {
            sides.push(Side::South);
        }
        if p.y == r.max.y {
            sides.push(Side::North);
        }
        sides
    }

    pub fn on_boundary(&self, p: Point) -> bool {
        self.rect().on_boundary(p)
    }

    /// Corner shared by two adjacent sides.
    pub fn corner(&self, a: Side, b: Side) -> Option<Point> {
        let r = self.rect();
        let x = match (a, b) {
            (Side::West, _) | (_, Side::West) => r.min.x,
            (Side::East, _) | (_, Side::East) => r.max.x,
            _ => return None,
        };
        let y = match (a, b) {
            (Side::South, _) | (_, Side::South) => r.min.y,
            (Side::North, _) | (_, Side::North) => r.max.y,
            _ => return None,
        };
        Some(Point::new(x, y))
    }
}

/// Anything with an open interior that can be tested for containment.
pub trait Region {
    fn contains_strictly(&self, p: Point) -> bool;
}

impl Region for Rect {
    fn contains_strictly(&self, p: Point) -> bool {
        Rect::contains_strictly(self, p)
    }
}

impl Region for Square {
    fn contains_strictly(&self, p: Point) -> bool {
        Square::contains_strictly(self, p)
    }
}

/// True iff no point of `points` outside `exclude` lies in the open interior of
/// `region`. Boundary contact does not count.
pub fn region_empty<R: Region + ?Sized>(points: &PointSet, region: &R, exclude: &[usize]) -> bool {
    points
        .iter()
        .all(|(id, p)| exclude.contains(&id) || !region.contains_strictly(p))
}

/// Sign of the orientation of the triple (a, b, c): positive when c lies to
/// the left of the directed line a→b. Exact.
#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentRelation {
    Disjoint,
    /// The segments meet only at a common endpoint.
    SharedEndpoint,
    /// An endpoint of one segment lies in the relative interior of the other,
    /// and the segments are not collinear.
    Touch,
    /// The open segments share exactly one point.
    CrossInterior,
    /// Collinear segments sharing more than one point.
    Overlap,
}

impl SegmentRelation {
    /// Whether the closed segments share any point.
    pub fn intersects(self) -> bool {
        !matches!(self, SegmentRelation::Disjoint)
    }
}

/// Classify two closed segments, each with distinct endpoints.
pub fn segments_relation(e1: (Point, Point), e2: (Point, Point)) -> SegmentRelation {
    let (p1, p2) = e1;
    let (q1, q2) = e2;
    let o1 = orient(p1, p2, q1);
    let o2 = orient(p1, p2, q2);
    let o3 = orient(q1, q2, p1);
    let o4 = orient(q1, q2, p2);

    if o1 == 0.0 && o2 == 0.0 {
        return collinear_relation(e1, e2);
    }
    if p1 == q1 || p1 == q2 || p2 == q1 || p2 == q2 {
        return SegmentRelation::SharedEndpoint;
    }
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return SegmentRelation::CrossInterior;
    }
    let touches = (o1 == 0.0 && in_open_span(p1, p2, q1))
        || (o2 == 0.0 && in_open_span(p1, p2, q2))
        || (o3 == 0.0 && in_open_span(q1, q2, p1))
        || (o4 == 0.0 && in_open_span(q1, q2, p2));
    if touches {
        SegmentRelation::Touch
    } else {
        SegmentRelation::Disjoint
    }
}

/// For `c` collinear with segment ab: is it strictly between a and b?
fn in_open_span(a: Point, b: Point, c: Point) -> bool {
    if a.x != b.x {
        (a.x < c.x && c.x < b.x) || (b.x < c.x && c.x < a.x)
    } else {
        (a.y < c.y && c.y < b.y) || (b.y < c.y && c.y < a.y)
    }
}

fn collinear_relation(e1: (Point, Point), e2: (Point, Point)) -> SegmentRelation {
    // Project on the dominant axis of e1; all four points are on one line.
    let key = |p: Point| {
        if e1.0.x != e1.1.x {
            p.x
        } else {
            p.y
        }
    };
    let (a0, a1) = minmax(key(e1.0), key(e1.1));
    let (b0, b1) = minmax(key(e2.0), key(e2.1));
    let lo = a0.max(b0);
    let hi = a1.min(b1);
    match lo.partial_cmp(&hi) {
        Some(Ordering::Less) => SegmentRelation::Overlap,
        Some(Ordering::Equal) => SegmentRelation::SharedEndpoint,
        _ => SegmentRelation::Disjoint,
    }
}

fn minmax(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Strict mode also forbids shared x or y coordinates between distinct points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PositionMode {
    Distinct,
    #[default]
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ViolationKind {
    Duplicate,
    SharedX,
    SharedY,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PositionViolation {
    pub first: usize,
    pub second: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for PositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({}, {})", self.kind, self.first, self.second)
    }
}

/// Report every pair of points violating the chosen position mode, sorted.
pub fn validate_general_position(points: &PointSet, mode: PositionMode) -> Vec<PositionViolation> {
    let pts = points.points();
    let mut out = Vec::new();

    let mut by_x: Vec<usize> = points.ids().collect();
    by_x.sort_by(|&i, &j| pts[i].x.total_cmp(&pts[j].x).then(i.cmp(&j)));
    for run in equal_runs(&by_x, |i| pts[i].x) {
        for (k, &i) in run.iter().enumerate() {
            for &j in &run[k + 1..] {
                let (first, second) = (i.min(j), i.max(j));
                if pts[i].y == pts[j].y {
                    out.push(PositionViolation {
                        first,
                        second,
                        kind: ViolationKind::Duplicate,
                    });
                } else if mode == PositionMode::Strict {
                    out.push(PositionViolation {
                        first,
                        second,
                        kind: ViolationKind::SharedX,
                    });
                }
            }
        }
    }

    if mode == PositionMode::Strict {
        let mut by_y: Vec<usize> = points.ids().collect();
        by_y.sort_by(|&i, &j| pts[i].y.total_cmp(&pts[j].y).then(i.cmp(&j)));
        for run in equal_runs(&by_y, |i| pts[i].y) {
            for (k, &i) in run.iter().enumerate() {
                for &j in &run[k + 1..] {
                    if pts[i].x != pts[j].x {
                        out.push(PositionViolation {
                            first: i.min(j),
                            second: i.max(j),
                            kind: ViolationKind::SharedY,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn equal_runs<F: Fn(usize) -> f64>(sorted: &[usize], key: F) -> Vec<&[usize]> {
    let mut runs = Vec::new();
    let mut start = 0;
    for k in 1..=sorted.len() {
        if k == sorted.len() || key(sorted[k]) != key(sorted[start]) {
            if k - start > 1 {
                runs.push(&sorted[start..k]);
            }
            start = k;
        }
    }
    runs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn distances_examples() {
        assert_eq!(
            distances(p(0., 0.), p(3., 4.)),
            Distances {
                dx: 3.,
                dy: 4.,
                d2: 5.,
                dinf: 4.
            }
        );
        assert_eq!(
            distances(p(0., 0.), p(0., 0.)),
            Distances {
                dx: 0.,
                dy: 0.,
                d2: 0.,
                dinf: 0.
            }
        );
        let d = distances(p(0., 0.), p(-2., 1.));
        assert_eq!((d.dx, d.dy, d.dinf), (2., 1., 2.));
        assert!((d.d2 - 5f64.sqrt()).abs() < 1e-15);
        assert!((d.d2 - 2.2360679).abs() < 1e-7);
    }

    #[test]
    fn quadrant_half_open_rule() {
        let o = p(0., 0.);
        assert_eq!(quadrant_of(o, p(1., 0.)).unwrap(), Quadrant::Q1);
        assert_eq!(quadrant_of(o, p(0., 1.)).unwrap(), Quadrant::Q2);
        assert_eq!(quadrant_of(o, p(-1., 0.)).unwrap(), Quadrant::Q3);
        assert_eq!(quadrant_of(o, p(0., -1.)).unwrap(), Quadrant::Q4);
        assert_eq!(quadrant_of(o, p(1., 1.)).unwrap(), Quadrant::Q1);
        assert_eq!(quadrant_of(o, p(-1., 1.)).unwrap(), Quadrant::Q2);
        assert_eq!(quadrant_of(o, p(-1., -1.)).unwrap(), Quadrant::Q3);
        assert_eq!(quadrant_of(o, p(1., -1.)).unwrap(), Quadrant::Q4);
        assert!(quadrant_of(o, o).unwrap_err().is_degeneracy());
    }

    #[test]
    fn region_empty_examples() {
        let ps = PointSet::from_coords(&[(0., 0.), (5., 1.), (2., 3.)]).unwrap();
        let sq = Square::new(p(0., -4.), 5.).unwrap();
        assert!(region_empty(&ps, &sq, &[0, 1]));

        let ps = PointSet::from_coords(&[(0., 0.), (1., 1.)]).unwrap();
        let r = Rect::new(p(0., 0.), p(2., 2.)).unwrap();
        assert!(!region_empty(&ps, &r, &[]));

        let ps = PointSet::from_coords(&[(0., 0.)]).unwrap();
        assert!(region_empty(&ps, &r, &[0]));
        assert!(
            region_empty(&ps, &r, &[]),
            "boundary point does not violate"
        );
    }

    #[test]
    fn segment_relation_examples() {
        use SegmentRelation::*;
        let rel = |a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)| {
            segments_relation((a.into(), b.into()), (c.into(), d.into()))
        };
        assert_eq!(rel((0., 0.), (2., 2.), (0., 2.), (2., 0.)), CrossInterior);
        assert_eq!(rel((0., 0.), (1., 0.), (1., 0.), (2., 1.)), SharedEndpoint);
        assert_eq!(rel((0., 0.), (1., 0.), (0., 1.), (1., 1.)), Disjoint);
        assert_eq!(rel((0., 0.), (2., 0.), (1., 0.), (1., 3.)), Touch);
        assert_eq!(rel((0., 0.), (2., 0.), (1., 0.), (3., 0.)), Overlap);
        assert_eq!(rel((0., 0.), (1., 0.), (1., 0.), (3., 0.)), SharedEndpoint);
        assert_eq!(rel((0., 0.), (1., 0.), (2., 0.), (3., 0.)), Disjoint);
        assert_eq!(rel((0., 0.), (2., 0.), (1., 1.), (1., 3.)), Disjoint);
    }

    #[test]
    fn general_position_examples() {
        let ok = PointSet::from_coords(&[(0., 0.), (1., 2.)]).unwrap();
        assert!(validate_general_position(&ok, PositionMode::Strict).is_empty());

        let shared = PointSet::from_coords(&[(0., 0.), (0., 5.)]).unwrap();
        let v = validate_general_position(&shared, PositionMode::Strict);
        assert_eq!(
            v,
            vec![PositionViolation {
                first: 0,
                second: 1,
                kind: ViolationKind::SharedX
            }]
        );
        assert!(validate_general_position(&shared, PositionMode::Distinct).is_empty());

        let dup = PointSet::from_coords(&[(1., 1.), (1., 1.)]).unwrap();
        let v = validate_general_position(&dup, PositionMode::Distinct);
        assert_eq!(
            v,
            vec![PositionViolation {
                first: 0,
                second: 1,
                kind: ViolationKind::Duplicate
            }]
        );
    }

    #[test]
    fn non_finite_rejected() {
        assert!(matches!(
            PointSet::from_coords(&[(0., 0.), (f64::NAN, 1.)]),
            Err(Error::NonFinite(1))
        ));
    }

    #[test]
    fn square_sides_and_corners() {
        let s = Square::new(p(0., 0.), 4.).unwrap();
        assert_eq!(s.sides_containing(p(0., 0.)), vec![Side::West, Side::South]);
        assert_eq!(s.sides_containing(p(4., 1.)), vec![Side::East]);
        assert!(s.sides_containing(p(1., 1.)).is_empty());
        assert_eq!(s.corner(Side::North, Side::East), Some(p(4., 4.)));
        assert_eq!(s.corner(Side::North, Side::South), None);
    }
}

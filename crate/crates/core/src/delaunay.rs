//! L-infinity Delaunay triangulation.
//!
//! An edge `(u, v)` belongs to the triangulation iff some axis-aligned square
//! has `u` and `v` on its boundary and no vertex in its interior. Triangles are
//! the bounded faces of the resulting plane graph, each paired with an empty
//! circumsquare.
//!
//! # Edge predicate
//!
//! Let `s = dinf(u, v)` and assume the horizontal extent dominates. Every
//! square with `u` and `v` on its boundary contains a square of side `s` whose
//! x-range is exactly `[min x, max x]` and which still has `u` and `v` on its
//! boundary. Emptiness is inherited by sub-squares, so it suffices to decide
//! whether one of these minimal squares is empty. Their bottom coordinate `Y`
//! ranges over a closed interval; a vertex `w` strictly between `u` and `v` in
//! x blocks exactly the open interval `(w.y - s, w.y)`. The predicate sweeps
//! the sorted blocking intervals for an uncovered value. Candidate values are
//! the interval endpoint and the event values `w.y - s`, `w.y`.

use std::cmp::Ordering;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    orient, region_empty, segments_relation, Point, PointSet, PositionMode, SegmentRelation, Side,
    Square,
};
use crate::yao::{Adjacency, GeoGraph};

/// Witness square for the L-infinity Delaunay edge `(u, v)`, or `None` if the
/// pair is not an edge. Requires strict general position.
pub fn is_del_edge(points: &PointSet, u: usize, v: usize) -> Result<Option<Square>> {
    check_pair(points, u, v)?;
    points.validate(PositionMode::Strict)?;
    Ok(del_edge_witness(points, u, v))
}

fn check_pair(points: &PointSet, u: usize, v: usize) -> Result<()> {
    let n = points.len();
    if u >= n || v >= n {
        return Err(Error::InvalidArgument(format!(
            "vertex id out of range (n = {n})"
        )));
    }
    if u == v {
        return Err(Error::InvalidArgument("edge endpoints must differ".into()));
    }
    Ok(())
}

/// Edge predicate without the general-position gate.
pub(crate) fn del_edge_witness(points: &PointSet, u: usize, v: usize) -> Option<Square> {
    let (pu, pv) = (points[u], points[v]);
    let (lx, hx) = (pu.x.min(pv.x), pu.x.max(pv.x));
    let (ly, hy) = (pu.y.min(pv.y), pu.y.max(pv.y));
    let horizontal = hx - lx >= hy - ly;
    // Work in (major, minor) coordinates: the major axis has a fixed range.
    let (major_lo, major_hi, minor_lo, minor_hi) = if horizontal {
        (lx, hx, ly, hy)
    } else {
        (ly, hy, lx, hx)
    };
    let side = major_hi - major_lo;
    let free_lo = minor_hi - side;
    let free_hi = minor_lo;

    let mut blockers: Vec<(f64, f64)> = points
        .iter()
        .filter(|&(id, _)| id != u && id != v)
        .filter_map(|(_, w)| {
            let (major, minor) = if horizontal { (w.x, w.y) } else { (w.y, w.x) };
            (major_lo < major && major < major_hi).then_some((minor - side, minor))
        })
        .collect();
    blockers.sort_by(|a, b| a.0.total_cmp(&b.0));

    let free = first_uncovered(free_lo, free_hi, &blockers)?;
    // Keep the endpoint on the far minor side exactly on the boundary.
    let free_top = if free == free_lo {
        minor_hi
    } else {
        free + side
    };
    let (min, max) = if horizontal {
        (Point::new(major_lo, free), Point::new(major_hi, free_top))
    } else {
        (Point::new(free, major_lo), Point::new(free_top, major_hi))
    };
    Some(Square { min, max })
}

/// Smallest value in `[lo, hi]` not inside any of the open intervals, which
/// must be sorted by their left end.
fn first_uncovered(lo: f64, hi: f64, open_intervals: &[(f64, f64)]) -> Option<f64> {
    let mut cur = lo;
    for &(a, b) in open_intervals {
        if a >= cur {
            break;
        }
        if b > cur {
            cur = b;
        }
    }
    (cur <= hi).then_some(cur)
}

/// Triangulation with one empty circumsquare per triangle.
#[derive(Debug, Clone)]
pub struct Triangulation {
    graph: GeoGraph,
    triangles: Vec<[usize; 3]>,
    circumsquares: Vec<Square>,
    edge_faces: HashMap<(usize, usize), Vec<usize>>,
}

impl Triangulation {
    pub fn points(&self) -> &PointSet {
        self.graph.points()
    }

    /// The triangulation as an undirected graph.
    pub fn graph(&self) -> &GeoGraph {
        &self.graph
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v)
    }

    /// Triangles as counterclockwise id triples.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn circumsquare(&self, t: usize) -> Square {
        self.circumsquares[t]
    }

    pub fn circumsquares(&self) -> &[Square] {
        &self.circumsquares
    }

    /// Indices of the (at most two) triangles bordering edge `(u, v)`.
    pub fn faces_of_edge(&self, u: usize, v: usize) -> &[usize] {
        self.edge_faces
            .get(&(u.min(v), u.max(v)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Triangles having `u` as a vertex.
    pub fn faces_at(&self, u: usize) -> Vec<usize> {
        self.triangles
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(&u))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Build the L-infinity Delaunay triangulation. Requires strict general
/// position; rejects inputs with crossing candidate edges or with four
/// vertices on one empty square.
pub fn build_del_linf(points: &PointSet) -> Result<Triangulation> {
    points.validate(PositionMode::Strict)?;
    let n = points.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let edges: Vec<(usize, usize)> = pairs
        .into_par_iter()
        .filter(|&(u, v)| del_edge_witness(points, u, v).is_some())
        .collect();
    check_planar(points, &edges)?;

    let graph = GeoGraph::from_edges(points.clone(), edges);
    let triangles = bounded_faces(&graph)?;
    let circumsquares = triangles
        .iter()
        .map(|&t| circumsquare(points, t))
        .collect::<Result<Vec<_>>>()?;

    let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, t) in triangles.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            edge_faces.entry((a.min(b), a.max(b))).or_default().push(i);
        }
    }
    Ok(Triangulation {
        graph,
        triangles,
        circumsquares,
        edge_faces,
    })
}

fn check_planar(points: &PointSet, edges: &[(usize, usize)]) -> Result<()> {
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            let rel = segments_relation((points[a], points[b]), (points[c], points[d]));
            if matches!(
                rel,
                SegmentRelation::CrossInterior | SegmentRelation::Touch | SegmentRelation::Overlap
            ) {
                return Err(Error::degenerate(
                    format!("Delaunay edges intersect ({rel:?})"),
                    vec![a, b, c, d],
                ));
            }
        }
    }
    Ok(())
}

/// Counterclockwise angular order of directions around `o`, starting at the
/// positive x ray.
fn angle_cmp(o: Point, p: Point, q: Point) -> Ordering {
    let half = |v: Point| {
        let (dx, dy) = (v.x - o.x, v.y - o.y);
        u8::from(!(dy > 0.0 || (dy == 0.0 && dx > 0.0)))
    };
    half(p).cmp(&half(q)).then_with(|| {
        let s = orient(o, p, q);
        if s > 0.0 {
            Ordering::Less
        } else if s < 0.0 {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Trace the faces of a connected plane graph and return its bounded faces,
/// which must all be triangles. Bounded faces are traced counterclockwise, so
/// a face is taken as bounded iff it is a counterclockwise 3-cycle; exactly
/// one other face (the outer one) may remain. The outer face can be any
/// closed walk, including a path traversed in both directions when the
/// graph has no cycle.
fn bounded_faces(graph: &GeoGraph) -> Result<Vec<[usize; 3]>> {
    let pts = graph.points();
    let n = pts.len();
    let rotation: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut nb = graph.neighbors(v).to_vec();
            nb.sort_by(|&p, &q| angle_cmp(pts[v], pts[p], pts[q]));
            nb
        })
        .collect();
    let position = |v: usize, u: usize| rotation[v].iter().position(|&w| w == u).expect("adjacent");

    let mut visited: HashMap<(usize, usize), bool> = HashMap::new();
    let mut faces = Vec::new();
    let mut others: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        for &v in &rotation[u] {
            if visited.contains_key(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, v);
            while !visited.contains_key(&(a, b)) {
                visited.insert((a, b), true);
                face.push(a);
                let deg = rotation[b].len();
                let next = rotation[b][(position(b, a) + deg - 1) % deg];
                (a, b) = (b, next);
            }
            if face.len() == 3 && orient(pts[face[0]], pts[face[1]], pts[face[2]]) > 0.0 {
                faces.push([face[0], face[1], face[2]]);
            } else {
                others.push(face);
            }
        }
    }
    if others.len() > 1 {
        // The outer face has the most negative shoelace area; report another.
        others.sort_by(|f, g| signed_area(pts, f).total_cmp(&signed_area(pts, g)));
        let face = others.swap_remove(1);
        return Err(Error::degenerate(
            format!("non-triangular bounded face with {} vertices", face.len()),
            face,
        ));
    }
    faces.sort_unstable_by_key(|t| {
        let mut k = *t;
        k.sort_unstable();
        k
    });
    Ok(faces)
}

fn signed_area(pts: &PointSet, face: &[usize]) -> f64 {
    let m = face.len();
    if m < 3 {
        return 0.0;
    }
    if m == 3 {
        return orient(pts[face[0]], pts[face[1]], pts[face[2]]);
    }
    (0..m)
        .map(|i| {
            let (p, q) = (pts[face[i]], pts[face[(i + 1) % m]]);
            p.x * q.y - q.x * p.y
        })
        .sum::<f64>()
}

/// The empty square through the three vertices of a triangle. Enumerates all
/// assignments of the vertices to distinct sides, solves each for the square,
/// and keeps the smallest valid empty one.
pub fn circumsquare(points: &PointSet, tri: [usize; 3]) -> Result<Square> {
    let mut best: Option<Square> = None;
    for sides in side_assignments() {
        let Some(sq) = solve_assignment(tri.map(|i| points[i]), sides) else {
            continue;
        };
        if !region_empty(points, &sq, &tri) {
            continue;
        }
        let better = match best {
            None => true,
            Some(b) => sq
                .side()
                .total_cmp(&b.side())
                .then_with(|| sq.min.lex_cmp(&b.min))
                .is_lt(),
        };
        if better {
            best = Some(sq);
        }
    }
    // In exact arithmetic a Delaunay triangle always has one; failing to find
    // it means rounding decided the inputs, so they are treated as degenerate.
    let sq = best.ok_or_else(|| {
        Error::degenerate("no exactly representable empty circumsquare", tri.to_vec())
    })?;
    let extra: Vec<usize> = points
        .iter()
        .filter(|&(id, p)| !tri.contains(&id) && sq.on_boundary(p))
        .map(|(id, _)| id)
        .collect();
    if !extra.is_empty() {
        let mut ids = tri.to_vec();
        ids.extend(extra);
        return Err(Error::degenerate(
            "four or more vertices on one empty square",
            ids,
        ));
    }
    Ok(sq)
}

fn side_assignments() -> impl Iterator<Item = [Side; 3]> {
    Side::ALL.into_iter().flat_map(|a| {
        Side::ALL.into_iter().flat_map(move |b| {
            Side::ALL
                .into_iter()
                .filter(move |&c| a != b && a != c && b != c)
                .map(move |c| [a, b, c])
        })
    })
}

fn solve_assignment(p: [Point; 3], sides: [Side; 3]) -> Option<Square> {
    let on = |s: Side| sides.iter().position(|&t| t == s).map(|i| p[i]);
    let (min, max) = match (
        on(Side::West),
        on(Side::East),
        on(Side::South),
        on(Side::North),
    ) {
        (Some(w), Some(e), Some(s), None) => {
            let side = e.x - w.x;
            ((w.x, s.y), (e.x, s.y + side))
        }
        (Some(w), Some(e), None, Some(nn)) => {
            let side = e.x - w.x;
            ((w.x, nn.y - side), (e.x, nn.y))
        }
        (None, Some(e), Some(s), Some(nn)) => {
            let side = nn.y - s.y;
            ((e.x - side, s.y), (e.x, nn.y))
        }
        (Some(w), None, Some(s), Some(nn)) => {
            let side = nn.y - s.y;
            ((w.x, s.y), (w.x + side, nn.y))
        }
        _ => return None,
    };
    if !(max.0 > min.0 && max.1 > min.1) {
        return None;
    }
    let sq = Square {
        min: min.into(),
        max: max.into(),
    };
    let valid = sides
        .iter()
        .zip(p)
        .all(|(s, q)| sq.sides_containing(q).contains(s));
    valid.then_some(sq)
}

/// Rigid motion (translation plus axis reflections and an optional axis swap)
/// taking `a` to the origin and `b` to `(x, y)` with `x >= y >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub origin: Point,
    pub flip_x: bool,
    pub flip_y: bool,
    pub swap: bool,
}

impl Frame {
    pub fn normalizing(a: Point, b: Point) -> Self {
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        Self {
            origin: a,
            flip_x: dx < 0.0,
            flip_y: dy < 0.0,
            swap: dy.abs() > dx.abs(),
        }
    }

    pub fn apply(&self, p: Point) -> Point {
        let (x, y) = (
            self.major(p) - self.major(self.origin),
            self.minor(p) - self.minor(self.origin),
        );
        Point::new(x, y)
    }

    /// Frame x-coordinate up to a common translation. Exact.
    fn major(&self, p: Point) -> f64 {
        if self.swap {
            if self.flip_y {
                -p.y
            } else {
                p.y
            }
        } else if self.flip_x {
            -p.x
        } else {
            p.x
        }
    }

    fn minor(&self, p: Point) -> f64 {
        if self.swap {
            if self.flip_x {
                -p.x
            } else {
                p.x
            }
        } else if self.flip_y {
            -p.y
        } else {
            p.y
        }
    }

    /// Horizontal distance measured in this frame. Exact.
    pub fn dx(&self, p: Point, q: Point) -> f64 {
        (self.major(p) - self.major(q)).abs()
    }

    /// Whether the frame reverses orientation.
    pub fn reflects(&self) -> bool {
        (self.flip_x as u8 + self.flip_y as u8 + self.swap as u8) % 2 == 1
    }

    /// Compare frame x-coordinates exactly.
    pub fn cmp_x(&self, p: Point, q: Point) -> Ordering {
        self.major(p).total_cmp(&self.major(q))
    }
}

/// Whether the circumsquare of a walk step is inductive, and its inductive point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductiveInfo {
    pub inductive: bool,
    pub point: Option<usize>,
}

impl InductiveInfo {
    /// A square is inductive iff `dinf(h, l)` equals the frame-horizontal
    /// distance of `h` and `l`; the inductive point is the one with larger
    /// frame x.
    pub fn classify(frame: &Frame, points: &PointSet, h: usize, l: usize) -> Self {
        let (ph, pl) = (points[h], points[l]);
        let inductive = ph.dinf(&pl) == frame.dx(ph, pl);
        let point = inductive.then(|| match frame.cmp_x(ph, pl) {
            Ordering::Less => l,
            _ => h,
        });
        Self { inductive, point }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkStep {
    /// Index into [`Triangulation::triangles`].
    pub triangle: usize,
    /// Endpoint of the exit edge above line ab (in the normalized frame).
    pub h: usize,
    /// Endpoint of the exit edge below line ab.
    pub l: usize,
    pub square: Square,
    pub inductive: InductiveInfo,
}

/// Triangles met by segment ab, in order from a to b.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleWalk {
    pub a: usize,
    pub b: usize,
    pub frame: Frame,
    pub steps: Vec<WalkStep>,
}

impl TriangleWalk {
    /// Number of triangles in the walk.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `h_i` with the conventions `h_0 = a`.
    pub fn h(&self, i: usize) -> usize {
        if i == 0 {
            self.a
        } else {
            self.steps[i - 1].h
        }
    }

    /// `l_i` with the convention `l_0 = a`.
    pub fn l(&self, i: usize) -> usize {
        if i == 0 {
            self.a
        } else {
            self.steps[i - 1].l
        }
    }

    /// 1-based index of the first inductive square.
    pub fn first_inductive(&self) -> Option<usize> {
        self.steps
            .iter()
            .position(|s| s.inductive.inductive)
            .map(|i| i + 1)
    }
}

/// Walk the triangles crossed by segment ab.
///
/// Each step records the exit edge `(h_i, l_i)`: the crossing edge farthest
/// from `a` along ab, which is the one with the larger crossing x-coordinate in
/// the normalized frame. The last step uses `h_r = b`, `l_r = l_{r-1}`. When ab
/// is itself an edge the walk consists of one bordering triangle with
/// `h_1 = b`, `l_1 = a`.
pub fn triangle_walk(tri: &Triangulation, a: usize, b: usize) -> Result<TriangleWalk> {
    let points = tri.points();
    check_pair(points, a, b)?;
    let (pa, pb) = (points[a], points[b]);
    let frame = Frame::normalizing(pa, pb);

    let on_segment: Vec<usize> = points
        .iter()
        .filter(|&(id, p)| {
            id != a
                && id != b
                && orient(pa, pb, p) == 0.0
                && (pa.x.min(pb.x)..=pa.x.max(pb.x)).contains(&p.x)
                && (pa.y.min(pb.y)..=pa.y.max(pb.y)).contains(&p.y)
        })
        .map(|(id, _)| id)
        .collect();
    if !on_segment.is_empty() {
        let mut ids = vec![a, b];
        ids.extend(on_segment);
        return Err(Error::degenerate("segment ab passes through a vertex", ids));
    }

    let step = |triangle: usize, h: usize, l: usize| WalkStep {
        triangle,
        h,
        l,
        square: tri.circumsquare(triangle),
        inductive: InductiveInfo::classify(&frame, points, h, l),
    };

    if tri.has_edge(a, b) {
        let t = *tri
            .faces_of_edge(a, b)
            .first()
            .ok_or_else(|| Error::degenerate("edge ab borders no triangle", vec![a, b]))?;
        return Ok(TriangleWalk {
            a,
            b,
            frame,
            steps: vec![step(t, b, a)],
        });
    }

    let crosses = |p: usize, q: usize| {
        segments_relation((pa, pb), (points[p], points[q])) == SegmentRelation::CrossInterior
    };
    let above = |p: usize| {
        let s = orient(pa, pb, points[p]);
        if frame.reflects() {
            s < 0.0
        } else {
            s > 0.0
        }
    };
    let split = |p: usize, q: usize| if above(p) { (p, q) } else { (q, p) };

    let (mut t, mut exit) = tri
        .faces_at(a)
        .into_iter()
        .find_map(|t| {
            let [x, y] = others(tri.triangles()[t], a);
            crosses(x, y).then_some((t, (x, y)))
        })
        .ok_or_else(|| {
            Error::degenerate("segment ab leaves the triangulated region", vec![a, b])
        })?;

    let mut steps = Vec::new();
    loop {
        let (h, l) = split(exit.0, exit.1);
        steps.push(step(t, h, l));
        if steps.len() > tri.triangles().len() {
            return Err(Error::Invariant("triangle walk does not terminate".into()));
        }
        let next = tri
            .faces_of_edge(exit.0, exit.1)
            .iter()
            .copied()
            .find(|&f| f != t)
            .ok_or_else(|| {
                Error::degenerate(
                    "segment ab leaves the triangulated region",
                    vec![a, b, exit.0, exit.1],
                )
            })?;
        let apex = third(tri.triangles()[next], exit.0, exit.1);
        t = next;
        if apex == b {
            steps.push(step(t, b, l));
            break;
        }
        exit = if crosses(exit.0, apex) {
            (exit.0, apex)
        } else if crosses(exit.1, apex) {
            (exit.1, apex)
        } else {
            return Err(Error::Invariant(format!(
                "segment ab does not leave triangle {:?}",
                tri.triangles()[t]
            )));
        };
    }
    Ok(TriangleWalk { a, b, frame, steps })
}

fn others(t: [usize; 3], v: usize) -> [usize; 2] {
    let mut o = [0; 2];
    let mut k = 0;
    for &w in &t {
        if w != v && k < 2 {
            o[k] = w;
            k += 1;
        }
    }
    o
}

fn third(t: [usize; 3], p: usize, q: usize) -> usize {
    *t.iter()
        .find(|&&w| w != p && w != q)
        .expect("triangle has three vertices")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(c: &[(f64, f64)]) -> PointSet {
        PointSet::from_coords(c).unwrap()
    }

    #[test]
    fn witness_example() {
        let ps = set(&[(0., 0.), (5., 1.), (2., 3.)]);
        let w = is_del_edge(&ps, 0, 1).unwrap().expect("edge");
        // The sweep returns the lowest feasible minimal square.
        assert_eq!(w, Square::new(Point::new(0., -4.), 5.).unwrap());
        assert!(region_empty(&ps, &w, &[0, 1]));
    }

    #[test]
    fn two_points_always_adjacent() {
        let ps = set(&[(0., 0.), (7., -3.)]);
        assert!(is_del_edge(&ps, 0, 1).unwrap().is_some());
        assert!(is_del_edge(&ps, 1, 0).unwrap().is_some());
    }

    #[test]
    fn blocked_pair() {
        // Minimal squares over x in [0,4] have bottom Y in [-3,0]. (1,4) blocks
        // (0,4) and (2,2) blocks (-2,2), leaving only Y = -3.
        let ps = set(&[(0., 0.), (4., 1.), (1., 4.), (2., 2.)]);
        let w = is_del_edge(&ps, 0, 1)
            .unwrap()
            .expect("edge via lowest square");
        assert_eq!(w.min, Point::new(0., -3.));
        // (3,-1) blocks (-5,-1), closing the gap.
        let ps = set(&[(0., 0.), (4., 1.), (1., 4.), (2., 2.), (3., -1.)]);
        assert!(is_del_edge(&ps, 0, 1).unwrap().is_none());
    }

    #[test]
    fn gate_rejects_shared_coordinates() {
        let ps = set(&[(0., 0.), (0., 3.), (2., 1.)]);
        assert!(is_del_edge(&ps, 0, 2).unwrap_err().is_degeneracy());
        assert!(build_del_linf(&ps).unwrap_err().is_degeneracy());
    }

    #[test]
    fn uncovered_sweep() {
        assert_eq!(first_uncovered(0., 10., &[]), Some(0.));
        assert_eq!(first_uncovered(0., 10., &[(-1., 3.), (2., 5.)]), Some(5.));
        assert_eq!(first_uncovered(0., 10., &[(-1., 3.), (3., 11.)]), Some(3.));
        assert_eq!(first_uncovered(0., 10., &[(-1., 3.), (2.5, 11.)]), None);
        assert_eq!(first_uncovered(0., 0., &[(0., 1.)]), Some(0.));
        assert_eq!(first_uncovered(0., 0., &[(-1., 1.)]), None);
    }

    #[test]
    fn single_triangle() {
        let ps = set(&[(0., 0.), (5., 1.), (2., 3.)]);
        let t = build_del_linf(&ps).unwrap();
        assert_eq!(t.triangles().len(), 1);
        let mut tri = t.triangles()[0];
        tri.sort_unstable();
        assert_eq!(tri, [0, 1, 2]);
        assert_eq!(t.edges().len(), 3);
    }

    #[test]
    fn staircase_has_no_triangles() {
        // Point 1 lies strictly inside the bounding box of 0 and 2, so every
        // square through 0 and 2 contains it and the graph is a path.
        let ps = set(&[
            (720.9374689402322, 450.45897917315546),
            (652.7450727173125, 344.8021753074962),
            (0.0, -753.3420728716169),
        ]);
        let t = build_del_linf(&ps).unwrap();
        assert_eq!(t.edges(), vec![(0, 1), (1, 2)]);
        assert!(t.triangles().is_empty());
        let err = triangle_walk(&t, 0, 2).unwrap_err();
        assert!(err.is_degeneracy(), "{err}");
        assert!(triangle_walk(&t, 0, 1).unwrap_err().is_degeneracy());
    }

    #[test]
    fn four_point_example() {
        let ps = set(&[(0., 0.), (4., 6.), (5., -3.), (10., 1.)]);
        let t = build_del_linf(&ps).unwrap();
        let mut tris: Vec<[usize; 3]> = t
            .triangles()
            .iter()
            .map(|t| {
                let mut s = *t;
                s.sort_unstable();
                s
            })
            .collect();
        tris.sort_unstable();
        assert_eq!(tris, vec![[0, 1, 2], [1, 2, 3]]);
        assert_eq!(t.edges(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn four_cocircular_points_are_rejected() {
        // [0,10]x[-4,6] is empty and has all four points on its boundary.
        let ps = set(&[(0., 0.), (4., 6.), (5., -4.), (10., 1.)]);
        let err = build_del_linf(&ps).unwrap_err();
        assert!(err.is_degeneracy(), "{err}");
    }

    #[test]
    fn circumsquare_examples() {
        let ps = set(&[(0., 0.), (4., 1.), (1., 4.)]);
        assert_eq!(
            circumsquare(&ps, [0, 1, 2]).unwrap(),
            Square::new(Point::new(0., 0.), 4.).unwrap()
        );
        let ps = set(&[(0., 0.), (2., 1.), (1., 2.)]);
        assert_eq!(
            circumsquare(&ps, [0, 1, 2]).unwrap(),
            Square::new(Point::new(0., 0.), 2.).unwrap()
        );
    }

    #[test]
    fn circumsquare_four_on_boundary_gate() {
        // Triangle on the west, east and north sides of [0,4]^2; (3,0) sits on
        // the south side.
        let ps = set(&[(0., 1.), (4., 2.), (1., 4.)]);
        assert_eq!(
            circumsquare(&ps, [0, 1, 2]).unwrap(),
            Square::new(Point::new(0., 0.), 4.).unwrap()
        );
        let ps = set(&[(0., 1.), (4., 2.), (1., 4.), (3., 0.)]);
        let err = circumsquare(&ps, [0, 1, 2]).unwrap_err();
        assert!(err.is_degeneracy());
        assert!(err.offending_ids().contains(&3));
        assert!(build_del_linf(&ps).unwrap_err().is_degeneracy());
    }

    #[test]
    fn walk_four_point_example() {
        let ps = set(&[(0., 0.), (4., 6.), (5., -3.), (10., 1.)]);
        let t = build_del_linf(&ps).unwrap();
        let w = triangle_walk(&t, 0, 3).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!((w.steps[0].h, w.steps[0].l), (1, 2));
        assert_eq!((w.steps[1].h, w.steps[1].l), (3, 2));
        assert!(!w.steps[0].inductive.inductive);
        assert_eq!(w.first_inductive(), Some(2));
    }

    #[test]
    fn walk_along_edge_is_single_step() {
        let ps = set(&[(0., 0.), (5., 1.), (2., 3.)]);
        let t = build_del_linf(&ps).unwrap();
        let w = triangle_walk(&t, 0, 1).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!((w.steps[0].h, w.steps[0].l), (1, 0));
        assert!(w.steps[0].inductive.inductive);
        assert_eq!(w.steps[0].inductive.point, Some(1));
    }

    #[test]
    fn inductive_classification() {
        let ps = set(&[
            (0., 0.),
            (10., 1.),
            (4., 6.),
            (5., -4.),
            (0., 1.),
            (3., -1.),
        ]);
        let f = Frame::normalizing(ps[0], ps[1]);
        let i = InductiveInfo::classify(&f, &ps, 2, 3);
        assert_eq!(
            i,
            InductiveInfo {
                inductive: false,
                point: None
            }
        );
        let i = InductiveInfo::classify(&f, &ps, 4, 5);
        assert_eq!(
            i,
            InductiveInfo {
                inductive: true,
                point: Some(5)
            }
        );
    }

    #[test]
    fn frame_normalizes() {
        let a = Point::new(3., 2.);
        for b in [
            Point::new(-2., 4.),
            Point::new(5., -7.),
            Point::new(-6., -1.),
            Point::new(4., 2.5),
        ] {
            let f = Frame::normalizing(a, b);
            let nb = f.apply(b);
            assert_eq!(f.apply(a), Point::new(0., 0.));
            assert!(nb.x >= nb.y && nb.y >= 0., "{b} -> {nb}");
        }
    }
}

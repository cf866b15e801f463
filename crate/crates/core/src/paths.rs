//! Shortest paths with Euclidean edge weights, stretch factors, greedy
//! rectangle paths in the Euclidean Yao graph, and the crossing-edge pair.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    quadrant_of, segments_relation, PointSet, PositionMode, Rect, SegmentRelation,
};
use crate::yao::{Adjacency, DirectedGeoGraph, Metric};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathResult {
    pub vertices: Vec<usize>,
    pub length: f64,
}

impl PathResult {
    fn from_vertices(points: &PointSet, vertices: Vec<usize>) -> Self {
        let length = vertices
            .windows(2)
            .map(|w| points[w[0]].d2(&points[w[1]]))
            .sum();
        Self { vertices, length }
    }
}

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    // Reversed so that `BinaryHeap` pops the smallest distance first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// Single-source distances over explicit adjacency lists. Unreachable
/// vertices get `f64::INFINITY`.
pub fn dijkstra_lists(points: &PointSet, adj: &[Vec<usize>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; points.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapEntry {
        dist: 0.0,
        vertex: source,
    });
    while let Some(HeapEntry { dist: d, vertex: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &v in &adj[u] {
            let nd = d + points[u].d2(&points[v]);
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(HeapEntry {
                    dist: nd,
                    vertex: v,
                });
            }
        }
    }
    dist
}

/// Single-source distances following the graph's adjacency.
pub fn dijkstra<G: Adjacency + ?Sized>(g: &G, source: usize) -> Vec<f64> {
    let adj: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|u| g.neighbors(u).to_vec())
        .collect();
    dijkstra_lists(g.points(), &adj, source)
}

/// All-pairs distance matrix, one Dijkstra run per source.
pub fn all_pairs_distances<G: Adjacency + ?Sized>(g: &G) -> Vec<Vec<f64>> {
    let adj: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|u| g.neighbors(u).to_vec())
        .collect();
    (0..g.vertex_count())
        .into_par_iter()
        .map(|s| dijkstra_lists(g.points(), &adj, s))
        .collect()
}

/// Shortest path from `u` to `v`, or `None` if `v` is unreachable. Among
/// paths of equal length (up to 1e-12 relative) the lexicographically
/// smallest vertex sequence is returned.
pub fn shortest_path<G: Adjacency + ?Sized>(
    g: &G,
    u: usize,
    v: usize,
) -> Result<Option<PathResult>> {
    let n = g.vertex_count();
    if u >= n || v >= n {
        return Err(Error::InvalidArgument(format!(
            "vertex id out of range (n = {n})"
        )));
    }
    let mut reverse = vec![Vec::new(); n];
    for w in 0..n {
        for &x in g.neighbors(w) {
            reverse[x].push(w);
        }
    }
    let to_target = dijkstra_lists(g.points(), &reverse, v);
    if !to_target[u].is_finite() {
        return Ok(None);
    }
    let tol = 1e-12 * to_target[u].max(1.0);
    let mut path = vec![u];
    let mut cur = u;
    while cur != v {
        let mut next: Option<usize> = None;
        for &w in g.neighbors(cur) {
            let tight = to_target[w] < to_target[cur]
                && g.weight(cur, w) + to_target[w] <= to_target[cur] + tol;
            if tight && next.is_none_or(|x| w < x) {
                next = Some(w);
            }
        }
        cur =
            next.ok_or_else(|| Error::Invariant("shortest path reconstruction stalled".into()))?;
        path.push(cur);
    }
    Ok(Some(PathResult::from_vertices(g.points(), path)))
}

/// Maximum ratio of graph distance to Euclidean distance over all vertex pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    pub max_ratio: f64,
    /// Pair attaining the maximum, smallest `(u, v)` among ties, `u < v`.
    pub witness: Option<(usize, usize)>,
    pub disconnected: bool,
}

impl StretchReport {
    /// Direction of the witness pair as `min(dx,dy) / max(dx,dy)`.
    pub fn witness_slope(&self, points: &PointSet) -> Option<f64> {
        let (u, v) = self.witness?;
        let d = crate::geometry::distances(points[u], points[v]);
        Some(d.dx.min(d.dy) / d.dinf)
    }
}

/// Stretch factor of a graph with respect to the complete Euclidean graph on
/// its vertices. Requires at least two pairwise distinct points.
pub fn stretch_factor<G: Adjacency + ?Sized>(g: &G) -> Result<StretchReport> {
    let points = g.points();
    if points.len() < 2 {
        return Err(Error::InvalidArgument(
            "stretch factor needs at least two points".into(),
        ));
    }
    points.validate(PositionMode::Distinct)?;
    let adj: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|u| g.neighbors(u).to_vec())
        .collect();
    let per_source: Vec<(f64, Option<(usize, usize)>)> = (0..points.len())
        .into_par_iter()
        .map(|s| {
            let dist = dijkstra_lists(points, &adj, s);
            let mut best = (f64::NEG_INFINITY, None);
            for t in s + 1..points.len() {
                let r = dist[t] / points[s].d2(&points[t]);
                if r > best.0 {
                    best = (r, Some((s, t)));
                }
            }
            best
        })
        .collect();
    Ok(merge_stretch(per_source))
}

/// Stretch factor from a precomputed distance matrix.
pub fn stretch_from_distances(points: &PointSet, dist: &[Vec<f64>]) -> StretchReport {
    let per_source = (0..points.len())
        .map(|s| {
            let mut best = (f64::NEG_INFINITY, None);
            for t in s + 1..points.len() {
                let r = dist[s][t] / points[s].d2(&points[t]);
                if r > best.0 {
                    best = (r, Some((s, t)));
                }
            }
            best
        })
        .collect();
    merge_stretch(per_source)
}

fn merge_stretch(per_source: Vec<(f64, Option<(usize, usize)>)>) -> StretchReport {
    // Sources are visited in increasing order and only strictly larger ratios
    // replace the incumbent, so ties resolve to the smallest pair.
    let (max_ratio, witness) =
        per_source
            .into_iter()
            .fold((f64::NEG_INFINITY, None), |acc, cur| {
                if cur.0 > acc.0 {
                    cur
                } else {
                    acc
                }
            });
    StretchReport {
        max_ratio,
        witness,
        disconnected: max_ratio == f64::INFINITY,
    }
}

/// Greedy path from `a` toward `b` in the directed Euclidean Yao graph with
/// four cones. The first edge out of `a` is always taken; the walk then
/// continues while the current vertex is strictly inside the rectangle
/// spanned by `a` and `b`, each time following the out-edge in the quadrant
/// that contains `b`.
pub fn greedy_path_pr(y4: &DirectedGeoGraph, a: usize, b: usize) -> Result<PathResult> {
    if y4.k() != 4 || y4.metric() != Metric::L2 {
        return Err(Error::InvalidArgument(
            "greedy path needs the Euclidean Yao graph with 4 cones".into(),
        ));
    }
    let points = y4.points();
    if a >= points.len() || b >= points.len() || a == b {
        return Err(Error::InvalidArgument(
            "greedy path needs two distinct vertex ids".into(),
        ));
    }
    let pb = points[b];
    let rect = Rect::spanned(points[a], pb);
    let mut path = vec![a];
    let mut cur = a;
    loop {
        let q = quadrant_of(points[cur], pb)?;
        let next = y4.out_edge(cur, q.index()).ok_or_else(|| {
            Error::Invariant(format!(
                "vertex {cur} has no out-edge in {q} although {b} lies there"
            ))
        })?;
        path.push(next);
        cur = next;
        if !rect.contains_strictly(points[cur]) {
            break;
        }
        if path.len() > points.len() {
            return Err(Error::Invariant("greedy path revisits a vertex".into()));
        }
    }
    Ok(PathResult::from_vertices(points, path))
}

/// For two intersecting segments, the common endpoint `(x, x)`, or a shortest
/// side `(x, y)` of the quadrilateral on their four endpoints. The sides of
/// that quadrilateral are exactly the pairs taking one endpoint from each
/// segment. Ties go to the side whose endpoints, sorted by `(x, y)`, are
/// lexicographically smallest; the returned pair is in that sorted order.
pub fn crossing_pair_xy(
    points: &PointSet,
    e1: (usize, usize),
    e2: (usize, usize),
) -> Result<(usize, usize)> {
    for s in [e1.0, e1.1] {
        if s == e2.0 || s == e2.1 {
            return Ok((s, s));
        }
    }
    let rel = segments_relation((points[e1.0], points[e1.1]), (points[e2.0], points[e2.1]));
    if rel == SegmentRelation::Disjoint {
        return Err(Error::InvalidArgument(format!(
            "segments {e1:?} and {e2:?} do not intersect"
        )));
    }
    let sides = [e1.0, e1.1]
        .into_iter()
        .flat_map(|p| [e2.0, e2.1].into_iter().map(move |q| (p, q)))
        .map(|(p, q)| {
            if points[p].lex_cmp(&points[q]).then(p.cmp(&q)).is_le() {
                (p, q)
            } else {
                (q, p)
            }
        });
    let best = sides
        .min_by(|&(p, q), &(r, s)| {
            points[p]
                .d2_squared(&points[q])
                .total_cmp(&points[r].d2_squared(&points[s]))
                .then_with(|| points[p].lex_cmp(&points[r]))
                .then_with(|| points[q].lex_cmp(&points[s]))
        })
        .expect("four candidate sides");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yao::{build_yao_l2, GeoGraph};

    fn set(c: &[(f64, f64)]) -> PointSet {
        PointSet::from_coords(c).unwrap()
    }

    #[test]
    fn path_graph() {
        let ps = set(&[(0., 0.), (1., 0.), (2., 0.)]);
        let g = GeoGraph::from_edges(ps, [(0, 1), (1, 2)]);
        let p = shortest_path(&g, 0, 2).unwrap().unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2]);
        assert_eq!(p.length, 2.0);
        let p = shortest_path(&g, 1, 1).unwrap().unwrap();
        assert_eq!((p.vertices, p.length), (vec![1], 0.0));
    }

    #[test]
    fn unreachable_is_none() {
        let ps = set(&[(0., 0.), (1., 0.), (2., 3.)]);
        let g = GeoGraph::from_edges(ps, [(0, 1)]);
        assert!(shortest_path(&g, 0, 2).unwrap().is_none());
        let s = stretch_factor(&g).unwrap();
        assert!(s.disconnected);
        assert_eq!(s.max_ratio, f64::INFINITY);
        assert_eq!(s.witness, Some((0, 2)));
    }

    #[test]
    fn lexicographic_tie_break() {
        // Square with two equal routes 0-1-3 and 0-2-3.
        let ps = set(&[(0., 0.), (1., 0.), (0., 1.), (1., 1.)]);
        let g = GeoGraph::from_edges(ps, [(0, 2), (2, 3), (0, 1), (1, 3)]);
        assert_eq!(
            shortest_path(&g, 0, 3).unwrap().unwrap().vertices,
            vec![0, 1, 3]
        );
        assert_eq!(
            shortest_path(&g, 3, 0).unwrap().unwrap().vertices,
            vec![3, 1, 0]
        );
    }

    #[test]
    fn yao_triangle_paths_and_stretch() {
        let ps = set(&[(0., 0.), (2., 1.), (1., 3.)]);
        let g = build_yao_l2(&ps, 4).unwrap().undirect();
        let p = shortest_path(&g, 0, 2).unwrap().unwrap();
        assert_eq!(p.vertices, vec![0, 2]);
        assert_eq!(p.length, 10f64.sqrt());
        assert_eq!(stretch_factor(&g).unwrap().max_ratio, 1.0);

        let cut = g.without_edge(0, 2);
        let s = stretch_factor(&cut).unwrap();
        let expected = (5f64.sqrt() + 5f64.sqrt()) / 10f64.sqrt();
        assert!((s.max_ratio - expected).abs() < 1e-15);
        assert!((s.max_ratio - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert_eq!(s.witness, Some((0, 2)));
    }

    #[test]
    fn two_points_stretch_one() {
        let ps = set(&[(0., 0.), (3., 4.)]);
        let g = build_yao_l2(&ps, 4).unwrap().undirect();
        let s = stretch_factor(&g).unwrap();
        assert_eq!(
            (s.max_ratio, s.witness, s.disconnected),
            (1.0, Some((0, 1)), false)
        );
        assert!(stretch_factor(&GeoGraph::from_edges(set(&[(0., 0.)]), [])).is_err());
    }

    #[test]
    fn greedy_three_points() {
        let ps = set(&[(0., 0.), (2., 1.), (5., 2.)]);
        let y4 = build_yao_l2(&ps, 4).unwrap();
        let p = greedy_path_pr(&y4, 0, 2).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2]);
        assert!((p.length - (5f64.sqrt() + 10f64.sqrt())).abs() < 1e-15);
        assert!((p.length - 5.3983).abs() < 1e-4);
        assert!(p.length <= 2f64.sqrt() * 29f64.sqrt());
        // b is the cone-nearest vertex of a.
        let q = greedy_path_pr(&y4, 1, 2).unwrap();
        assert_eq!(q.vertices, vec![1, 2]);
    }

    #[test]
    fn greedy_rejects_wrong_graph() {
        let ps = set(&[(0., 0.), (2., 1.)]);
        let y5 = build_yao_l2(&ps, 5).unwrap();
        assert!(greedy_path_pr(&y5, 0, 1).is_err());
        let y4 = build_yao_l2(&ps, 4).unwrap();
        assert!(greedy_path_pr(&y4, 0, 0).is_err());
    }

    #[test]
    fn crossing_pair_examples() {
        let ps = set(&[(0., 0.), (2., 2.), (0., 2.), (2., 0.)]);
        assert_eq!(crossing_pair_xy(&ps, (0, 1), (2, 3)).unwrap(), (0, 2));
        assert_eq!(crossing_pair_xy(&ps, (1, 0), (3, 2)).unwrap(), (0, 2));
        let ps = set(&[(0., 0.), (1., 0.), (2., 1.)]);
        let (x, y) = crossing_pair_xy(&ps, (0, 1), (1, 2)).unwrap();
        assert_eq!((x, y), (1, 1));
        assert_eq!(ps[x].d2(&ps[y]), 0.0);
        let ps = set(&[(0., 0.), (1., 0.), (0., 1.), (1., 1.)]);
        assert!(crossing_pair_xy(&ps, (0, 1), (2, 3)).is_err());
    }
}

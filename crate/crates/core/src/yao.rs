//! Yao graph construction.
//!
//! Each vertex keeps one outgoing edge per nonempty cone: the nearest vertex in
//! that cone under the chosen metric. Ties in `L2` go to the lexicographically
//! smallest target; ties in `Linf` go to the most counterclockwise target.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{orient, quadrant_of, Point, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    L2,
    Linf,
}

impl Metric {
    pub fn distance(self, u: Point, v: Point) -> f64 {
        match self {
            Metric::L2 => u.d2(&v),
            Metric::Linf => u.dinf(&v),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::L2 => "l2",
            Metric::Linf => "linf",
        }
    }
}

/// Read-only adjacency over a point set; edge weights are Euclidean lengths.
pub trait Adjacency: Sync {
    fn points(&self) -> &PointSet;
    fn neighbors(&self, u: usize) -> &[usize];

    fn vertex_count(&self) -> usize {
        self.points().len()
    }

    fn weight(&self, u: usize, v: usize) -> f64 {
        self.points()[u].d2(&self.points()[v])
    }
}

/// Index of the cone of `v` around `u` for `k` equal cones. Cone 0 starts at
/// the positive x ray (included) and cones proceed counterclockwise.
pub fn cone_index(u: Point, v: Point, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidArgument("cone count must be positive".into()));
    }
    if k == 4 {
        return Ok(quadrant_of(u, v)?.index());
    }
    let (dx, dy) = (v.x - u.x, v.y - u.y);
    if dx == 0.0 && dy == 0.0 {
        return Err(Error::degenerate("cone of coincident points", vec![]));
    }
    let mut angle = dy.atan2(dx);
    if angle < 0.0 {
        angle += TAU;
    }
    let idx = (angle / (TAU / k as f64)).floor() as usize;
    Ok(idx.min(k - 1))
}

/// Directed Yao graph: at most one out-edge per (vertex, cone).
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedGeoGraph {
    points: PointSet,
    metric: Metric,
    k: usize,
    cones: Vec<Vec<Option<usize>>>,
    out_adj: Vec<Vec<usize>>,
}

impl DirectedGeoGraph {
    fn from_cones(
        points: PointSet,
        metric: Metric,
        k: usize,
        cones: Vec<Vec<Option<usize>>>,
    ) -> Self {
        let out_adj = cones
            .iter()
            .map(|c| {
                let mut t: Vec<usize> = c.iter().flatten().copied().collect();
                t.sort_unstable();
                t.dedup();
                t
            })
            .collect();
        Self {
            points,
            metric,
            k,
            cones,
            out_adj,
        }
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Target of the out-edge of `u` in `cone`, if the cone is nonempty.
    pub fn out_edge(&self, u: usize, cone: usize) -> Option<usize> {
        self.cones[u].get(cone).copied().flatten()
    }

    /// `(cone, target)` for each out-edge of `u`, in cone order.
    pub fn out_edges(&self, u: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cones[u]
            .iter()
            .enumerate()
            .filter_map(|(c, t)| t.map(|t| (c, t)))
    }

    /// All directed edges `(u, v)`, ordered by source then cone.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.points
            .ids()
            .flat_map(|u| self.out_edges(u).map(move |(_, v)| (u, v)))
            .collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_adj[u].len()
    }

    /// Incoming adjacency lists, sorted.
    pub fn in_adjacency(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.points.len()];
        for (u, outs) in self.out_adj.iter().enumerate() {
            for &v in outs {
                inc[v].push(u);
            }
        }
        inc
    }

    /// Drop the directions: the symmetric closure of the edge set.
    pub fn undirect(&self) -> GeoGraph {
        GeoGraph::from_edges(self.points.clone(), self.edges())
    }
}

impl Adjacency for DirectedGeoGraph {
    fn points(&self) -> &PointSet {
        &self.points
    }

    fn neighbors(&self, u: usize) -> &[usize] {
        &self.out_adj[u]
    }
}

/// Undirected graph over a point set with sorted, duplicate-free adjacency.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoGraph {
    points: PointSet,
    adj: Vec<Vec<usize>>,
}

impl GeoGraph {
    /// Build from an edge list; loops are ignored and parallel edges merged.
    pub fn from_edges(points: PointSet, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); points.len()];
        for (u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Self { points, adj }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn without_edge(&self, u: usize, v: usize) -> GeoGraph {
        let mut g = self.clone();
        g.adj[u].retain(|&w| w != v);
        g.adj[v].retain(|&w| w != u);
        g
    }

    pub fn is_connected(&self) -> bool {
        let n = self.points.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }
}

impl Adjacency for GeoGraph {
    fn points(&self) -> &PointSet {
        &self.points
    }

    fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }
}

/// Euclidean Yao graph with `k` cones. Ties go to the target with the smallest
/// `(x, y)`, then the smallest id.
pub fn build_yao_l2(points: &PointSet, k: usize) -> Result<DirectedGeoGraph> {
    if k == 0 {
        return Err(Error::InvalidArgument("cone count must be positive".into()));
    }
    let pts = points.points();
    let cones = points
        .ids()
        .into_par_iter()
        .map(|u| {
            let mut best: Vec<Option<usize>> = vec![None; k];
            for v in points.ids() {
                if v == u || pts[v] == pts[u] {
                    continue;
                }
                let c = cone_index(pts[u], pts[v], k)?;
                best[c] = Some(match best[c] {
                    None => v,
                    Some(w) => {
                        let dv = pts[u].d2_squared(&pts[v]);
                        let dw = pts[u].d2_squared(&pts[w]);
                        let better = dv < dw
                            || (dv == dw && pts[v].lex_cmp(&pts[w]).then(v.cmp(&w)).is_lt());
                        if better {
                            v
                        } else {
                            w
                        }
                    }
                });
            }
            Ok(best)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DirectedGeoGraph::from_cones(
        points.clone(),
        Metric::L2,
        k,
        cones,
    ))
}

/// L-infinity Yao graph with the four quadrants as cones. Among targets at
/// equal L-infinity distance the most counterclockwise one wins; among
/// collinear ones, the Euclidean nearest.
pub fn build_yao_linf4(points: &PointSet) -> DirectedGeoGraph {
    let pts = points.points();
    let cones = points
        .ids()
        .into_par_iter()
        .map(|u| {
            let o = pts[u];
            let mut best: Vec<Option<usize>> = vec![None; 4];
            for v in points.ids() {
                if v == u || pts[v] == o {
                    continue;
                }
                let c = quadrant_of(o, pts[v]).expect("distinct points").index();
                best[c] = Some(match best[c] {
                    None => v,
                    Some(w) if linf_prefers(o, pts[v], pts[w], v, w) => v,
                    Some(w) => w,
                });
            }
            best
        })
        .collect();
    DirectedGeoGraph::from_cones(points.clone(), Metric::Linf, 4, cones)
}

/// Whether candidate `v` beats incumbent `w` as the L-infinity cone edge of `o`.
fn linf_prefers(o: Point, v: Point, w: Point, vid: usize, wid: usize) -> bool {
    let (dv, dw) = (o.dinf(&v), o.dinf(&w));
    if dv != dw {
        return dv < dw;
    }
    // Both lie in the same quadrant, so the sign of the turn orders them by
    // angle from the quadrant's clockwise ray.
    let turn = orient(o, w, v);
    if turn != 0.0 {
        return turn > 0.0;
    }
    let (ev, ew) = (o.d2_squared(&v), o.d2_squared(&w));
    if ev != ew {
        return ev < ew;
    }
    vid < wid
}

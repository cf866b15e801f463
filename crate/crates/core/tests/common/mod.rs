//! Helpers shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use yaolab::geometry::{Point, PointSet};
use yaolab::is_del_edge;

/// Integer point set with coordinates in `0..=max`, all x distinct and all
/// y distinct.
pub fn integer_instance(seed: u64, n: usize, max: i64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<i64> = (0..=max).collect();
    let mut ys: Vec<i64> = (0..=max).collect();
    xs.shuffle(&mut rng);
    ys.shuffle(&mut rng);
    let pts = (0..n)
        .map(|i| Point::new(xs[i] as f64, ys[i] as f64))
        .collect();
    PointSet::new(pts).unwrap()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Del-inf edges by brute force over square centres.
///
/// A pair is an edge iff some centre `c` has both points at the minimum
/// L-infinity distance `r > 0` from `c`: the square of half-side `r` around
/// `c` then has both on its boundary and nothing inside. For integer input
/// with coordinate gcd `g`, the extreme points of each pair's feasible centre
/// set lie on the lattice of step `g / 2` through the minimum coordinates;
/// the oracle scans step `g / 4` over the bounding box widened by its extent.
pub fn grid_oracle_edges(points: &PointSet) -> BTreeSet<(usize, usize)> {
    let n = points.len();
    let mut edges = BTreeSet::new();
    if n < 2 {
        return edges;
    }
    let bb = points.bounding_box().unwrap();
    let (x0, y0) = (bb.min.x as i64, bb.min.y as i64);
    let mut g = 0;
    for p in points.points() {
        g = gcd(g, p.x as i64 - x0);
        g = gcd(g, p.y as i64 - y0);
    }
    let extent = bb.width().max(bb.height());
    let step = g as f64 / 4.0;
    let cells = ((3.0 * extent) / step).round() as i64;
    let mut dist = vec![0.0; n];
    for i in 0..=cells {
        let cx = bb.min.x - extent + i as f64 * step;
        for j in 0..=cells {
            let c = Point::new(cx, bb.min.y - extent + j as f64 * step);
            let mut r = f64::INFINITY;
            for (k, p) in points.iter() {
                dist[k] = c.dinf(&p);
                r = r.min(dist[k]);
            }
            if r == 0.0 {
                continue;
            }
            let near: Vec<usize> = (0..n).filter(|&k| dist[k] == r).collect();
            for (a, &u) in near.iter().enumerate() {
                for &v in &near[a + 1..] {
                    edges.insert((u, v));
                }
            }
        }
    }
    edges
}

/// Del-inf edges from the library's predicate.
pub fn predicate_edges(points: &PointSet) -> BTreeSet<(usize, usize)> {
    let n = points.len();
    let mut edges = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if is_del_edge(points, u, v).unwrap().is_some() {
                edges.insert((u, v));
            }
        }
    }
    edges
}

/// Seeds for the randomized batches: 100 instances per size.
pub fn batch_seed(n: usize, i: usize) -> u64 {
    (n as u64) * 1_000_003 + i as u64
}

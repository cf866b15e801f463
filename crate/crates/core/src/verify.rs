//! Checks of the stretch bounds and structural relations between Y4, Y4inf
//! and Del-inf on a concrete point set.
//!
//! Every check evaluates its conclusion with exact shortest-path distances and
//! records each inequality it tests as `lhs <= rhs` with a relative slack of
//! [`RELATIVE_SLACK`]. Boolean conditions are recorded with `lhs = 1` and
//! `rhs = 0` when they fail.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::BoundTable;
use crate::delaunay::{build_del_linf, triangle_walk, Triangulation};
use crate::error::{Error, Result};
use crate::geometry::{
    quadrant_of, region_empty, segments_relation, PointSet, PositionMode, Rect, SegmentRelation,
    Side,
};
use crate::paths::{all_pairs_distances, crossing_pair_xy, greedy_path_pr, stretch_from_distances};
use crate::yao::{build_yao_l2, build_yao_linf4, DirectedGeoGraph, GeoGraph};

pub const RELATIVE_SLACK: f64 = 1e-9;

/// True when `lhs <= rhs` fails beyond the relative slack.
pub fn exceeds(lhs: f64, rhs: f64) -> bool {
    if lhs.is_infinite() || rhs.is_infinite() {
        return lhs > rhs;
    }
    lhs > rhs + RELATIVE_SLACK * lhs.abs().max(rhs.abs())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub ids: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleStats {
    pub rule: String,
    pub examined: usize,
    /// Largest `lhs / rhs` seen over instances with `rhs > 0`.
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub check: String,
    pub examined: usize,
    pub skipped: usize,
    pub violations: Vec<Violation>,
    pub rules: Vec<RuleStats>,
    /// Observations that are logged but never asserted.
    pub notes: Vec<String>,
}

impl ViolationReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn rule(&self, name: &str) -> Option<&RuleStats> {
        self.rules.iter().find(|r| r.rule == name)
    }

    /// Tab-separated lines: a `check` header, one `rule` line per rule, one
    /// `violation` line per violation (ids comma-separated), then `note` lines.
    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "check\t{}\texamined\t{}\tskipped\t{}\tviolations\t{}\tpass\t{}",
            self.check,
            self.examined,
            self.skipped,
            self.violations.len(),
            self.pass()
        );
        for r in &self.rules {
            let _ = writeln!(out, "rule\t{}\t{}\t{}", r.rule, r.examined, r.max_ratio);
        }
        for v in &self.violations {
            let ids: Vec<String> = v.ids.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(
                out,
                "violation\t{}\t{}\t{}\t{}",
                v.rule,
                ids.join(","),
                v.lhs,
                v.rhs
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "note\t{n}");
        }
        out
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "[{}] {}: examined {}, skipped {}, violations {}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.check,
            self.examined,
            self.skipped,
            self.violations.len()
        )?;
        for r in &self.rules {
            if r.max_ratio != f64::NEG_INFINITY {
                writeln!(
                    f,
                    "    {:<28} examined {:>8}  max lhs/rhs {:.6}",
                    r.rule, r.examined, r.max_ratio
                )?;
            } else {
                writeln!(
                    f,
                    "    {:<28} examined {:>8}  max lhs/rhs -",
                    r.rule, r.examined
                )?;
            }
        }
        for v in &self.violations {
            writeln!(
                f,
                "    violation {} ids {:?}: {} > {}",
                v.rule, v.ids, v.lhs, v.rhs
            )?;
        }
        for n in &self.notes {
            writeln!(f, "    note: {n}")?;
        }
        Ok(())
    }
}

struct Recorder {
    check: &'static str,
    examined: usize,
    skipped: usize,
    violations: Vec<Violation>,
    rules: BTreeMap<&'static str, (usize, f64)>,
    notes: Vec<String>,
}

impl Recorder {
    fn new(check: &'static str) -> Self {
        Self {
            check,
            examined: 0,
            skipped: 0,
            violations: Vec::new(),
            rules: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    fn leq(&mut self, rule: &'static str, ids: &[usize], lhs: f64, rhs: f64) {
        let entry = self.rules.entry(rule).or_insert((0, f64::NEG_INFINITY));
        entry.0 += 1;
        if rhs > 0.0 {
            entry.1 = entry.1.max(lhs / rhs);
        }
        if exceeds(lhs, rhs) || lhs.is_nan() || rhs.is_nan() {
            self.violations.push(Violation {
                rule: rule.to_string(),
                ids: ids.to_vec(),
                lhs,
                rhs,
            });
        }
    }

    fn holds(&mut self, rule: &'static str, ids: &[usize], ok: bool) {
        let (lhs, rhs) = if ok { (0.0, 0.0) } else { (1.0, 0.0) };
        self.leq(rule, ids, lhs, rhs);
    }

    fn finish(self) -> ViolationReport {
        ViolationReport {
            check: self.check.to_string(),
            examined: self.examined,
            skipped: self.skipped,
            violations: self.violations,
            rules: self
                .rules
                .into_iter()
                .map(|(rule, (examined, max_ratio))| RuleStats {
                    rule: rule.to_string(),
                    examined,
                    max_ratio,
                })
                .collect(),
            notes: self.notes,
        }
    }
}

/// Graphs and distance matrices shared by the checks.
#[derive(Debug, Clone)]
pub struct Context {
    pub bounds: BoundTable,
    pub points: PointSet,
    pub y4: DirectedGeoGraph,
    pub y4_graph: GeoGraph,
    pub y4inf_graph: GeoGraph,
    pub del: Triangulation,
    pub d_y4: Vec<Vec<f64>>,
    pub d_y4inf: Vec<Vec<f64>>,
    pub d_del: Vec<Vec<f64>>,
}

impl Context {
    /// Builds Y4, Y4inf and Del-inf. Requires strict general position.
    pub fn new(points: PointSet) -> Result<Self> {
        points.validate(PositionMode::Strict)?;
        let y4 = build_yao_l2(&points, 4)?;
        let y4_graph = y4.undirect();
        let y4inf_graph = build_yao_linf4(&points).undirect();
        let del = build_del_linf(&points)?;
        Ok(Self {
            bounds: BoundTable::new()?,
            d_y4: all_pairs_distances(&y4_graph),
            d_y4inf: all_pairs_distances(&y4inf_graph),
            d_del: all_pairs_distances(del.graph()),
            points,
            y4,
            y4_graph,
            y4inf_graph,
            del,
        })
    }

    /// Replaces the Y4inf graph, e.g. with a corrupted copy for negative controls.
    pub fn with_y4inf(mut self, graph: GeoGraph) -> Self {
        self.d_y4inf = all_pairs_distances(&graph);
        self.y4inf_graph = graph;
        self
    }

    fn n(&self) -> usize {
        self.points.len()
    }
}

/// Y4inf sits inside Del-inf, each Del-inf triangle keeps at least two Y4inf
/// edges, a missing edge joins opposite sides of the circumsquare and is the
/// longest in L-infinity, and Y4inf approximates Del-inf within `1 + sqrt 2`.
pub fn verify_structure(ctx: &Context) -> Result<ViolationReport> {
    let mut rec = Recorder::new("structure");
    let pts = &ctx.points;
    for (u, v) in ctx.y4inf_graph.edges() {
        rec.examined += 1;
        rec.holds("y4inf-subset-of-del", &[u, v], ctx.del.has_edge(u, v));
    }
    for (t, tri) in ctx.del.triangles().iter().enumerate() {
        rec.examined += 1;
        let square = ctx.del.circumsquare(t);
        let mut kept = 0;
        for k in 0..3 {
            let (u, v, w) = (tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]);
            if ctx.y4inf_graph.has_edge(u, v) {
                kept += 1;
                continue;
            }
            let su = square.sides_containing(pts[u]);
            let sv = square.sides_containing(pts[v]);
            let opposite = su.iter().any(|s| sv.contains(&s.opposite()));
            rec.holds("missing-edge-opposite-sides", &[u, v, w], opposite);
            let duv = pts[u].dinf(&pts[v]);
            let longest = pts[u].dinf(&pts[w]).max(pts[w].dinf(&pts[v]));
            rec.leq("missing-edge-longest-linf", &[u, v, w], longest, duv);
        }
        rec.leq("triangle-keeps-two-edges", tri, 2.0, kept as f64);
    }
    let k = ctx.bounds.one_plus_sqrt2;
    for u in 0..ctx.n() {
        for v in u + 1..ctx.n() {
            rec.examined += 1;
            rec.leq(
                "y4inf-vs-del-distance",
                &[u, v],
                ctx.d_y4inf[u][v],
                k * ctx.d_del[u][v],
            );
        }
    }
    Ok(rec.finish())
}

/// Short paths between the endpoints of every Del-inf edge, in Y4inf
/// measured against the L-infinity length, and in Y4 against the Euclidean one.
pub fn verify_del_edge_paths(ctx: &Context) -> Result<ViolationReport> {
    let mut rec = Recorder::new("del-edge-paths");
    let pts = &ctx.points;
    for (u, v) in ctx.del.edges() {
        rec.examined += 1;
        rec.leq(
            "y4inf-per-del-edge",
            &[u, v],
            ctx.d_y4inf[u][v],
            ctx.bounds.one_plus_sqrt2 * pts[u].dinf(&pts[v]),
        );
        rec.leq(
            "y4-per-del-edge",
            &[u, v],
            ctx.d_y4[u][v],
            ctx.bounds.y4_edge_factor * pts[u].d2(&pts[v]),
        );
    }
    Ok(rec.finish())
}

/// The key inequality for every ordered pair, and the three global stretch bounds.
pub fn verify_key_theorem(ctx: &Context) -> Result<ViolationReport> {
    let mut rec = Recorder::new("key-theorem");
    let pts = &ctx.points;
    let c = ctx.bounds.key_coefficient;
    for a in 0..ctx.n() {
        for b in 0..ctx.n() {
            if a == b {
                continue;
            }
            rec.examined += 1;
            let (dx, dy) = ((pts[a].x - pts[b].x).abs(), (pts[a].y - pts[b].y).abs());
            let (x, y) = (dx.max(dy), dx.min(dy));
            rec.leq("key-inequality", &[a, b], ctx.d_y4inf[a][b], c * x + y);
        }
    }
    if ctx.n() >= 2 {
        for (rule, dist, bound) in [
            ("y4inf-stretch", &ctx.d_y4inf, ctx.bounds.y4inf_stretch),
            ("y4-stretch", &ctx.d_y4, ctx.bounds.y4_stretch),
            ("del-stretch", &ctx.d_del, ctx.bounds.delinf_stretch),
        ] {
            let s = stretch_from_distances(pts, dist);
            let (u, v) = s.witness.expect("at least one pair");
            rec.leq(rule, &[u, v], s.max_ratio, bound);
            if rule == "y4inf-stretch" {
                if let Some(slope) = s.witness_slope(pts) {
                    rec.notes.push(format!(
                        "y4inf stretch {:.6} attained at pair ({u},{v}) with min/max axis ratio {:.4} (extremal direction 1/{:.4} = {:.4})",
                        s.max_ratio,
                        slope,
                        c,
                        1.0 / c
                    ));
                }
            }
        }
    }
    Ok(rec.finish())
}

/// The triangle-walk inequality for ordered pairs whose rectangle is empty.
/// Pairs whose walk is rejected as degenerate are counted as skipped.
pub fn verify_inductive_lemma(ctx: &Context) -> Result<ViolationReport> {
    let mut rec = Recorder::new("inductive-lemma");
    let pts = &ctx.points;
    let c = ctx.bounds.key_coefficient;
    for a in 0..ctx.n() {
        for b in 0..ctx.n() {
            if a == b || !region_empty(pts, &Rect::spanned(pts[a], pts[b]), &[a, b]) {
                continue;
            }
            rec.examined += 1;
            let walk = match triangle_walk(&ctx.del, a, b) {
                Ok(w) => w,
                Err(e) if e.is_degeneracy() => {
                    rec.skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let target = walk.frame.apply(pts[b]);
            match walk.first_inductive() {
                None => rec.leq(
                    "no-inductive-square",
                    &[a, b],
                    ctx.d_y4inf[a][b],
                    c * target.x + target.y,
                ),
                Some(j) => {
                    let step = &walk.steps[j - 1];
                    let p = step.inductive.point.expect("inductive step has a point");
                    let fp = walk.frame.apply(pts[p]);
                    if p == step.h {
                        rec.leq(
                            "inductive-upper-point",
                            &[a, b, p],
                            ctx.d_y4inf[a][p] + (fp.y - target.y),
                            c * fp.x,
                        );
                    } else {
                        rec.leq(
                            "inductive-lower-point",
                            &[a, b, p],
                            ctx.d_y4inf[a][p] - fp.y,
                            c * fp.x,
                        );
                    }
                }
            }
        }
    }
    if rec.skipped > 0 {
        rec.notes
            .push(format!("{} walks rejected as degenerate", rec.skipped));
    }
    Ok(rec.finish())
}

/// Greedy rectangle paths, crossing Y4 edges, the zigzag exclusion and the
/// law-of-cosines inequality with its use in the Y4 per-edge argument.
pub fn verify_greedy_and_crossing(ctx: &Context) -> Result<ViolationReport> {
    let mut rec = Recorder::new("greedy-and-crossing");
    greedy_rules(ctx, &mut rec)?;
    crossing_rules(ctx, &mut rec)?;
    zigzag_rules(ctx, &mut rec)?;
    coslaw_rules(ctx, &mut rec)?;
    Ok(rec.finish())
}

fn greedy_rules(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let pts = &ctx.points;
    let sqrt2 = 2f64.sqrt();
    for a in 0..ctx.n() {
        for b in 0..ctx.n() {
            if a == b {
                continue;
            }
            rec.examined += 1;
            let path = greedy_path_pr(&ctx.y4, a, b)?;
            let dab = pts[a].d2(&pts[b]);
            rec.leq("greedy-length", &[a, b], path.length, sqrt2 * dab);
            let longest = path
                .vertices
                .windows(2)
                .map(|w| pts[w[0]].d2(&pts[w[1]]))
                .fold(0.0, f64::max);
            rec.leq("greedy-edge-length", &[a, b], longest, dab);
        }
    }
    Ok(())
}

fn crossing_rules(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let pts = &ctx.points;
    let edges = ctx.y4_graph.edges();
    for (i, &e1) in edges.iter().enumerate() {
        for &e2 in &edges[i + 1..] {
            let rel = segments_relation((pts[e1.0], pts[e1.1]), (pts[e2.0], pts[e2.1]));
            if !rel.intersects() {
                continue;
            }
            rec.examined += 1;
            let (x, y) = crossing_pair_xy(pts, e1, e2)?;
            let longest = pts[e1.0].d2(&pts[e1.1]).max(pts[e2.0].d2(&pts[e2.1]));
            let ids = [e1.0, e1.1, e2.0, e2.1];
            rec.leq(
                "crossing-path",
                &ids,
                ctx.d_y4[x][y],
                ctx.bounds.crossing_factor * longest,
            );
            rec.leq(
                "crossing-side",
                &ids,
                pts[x].d2(&pts[y]),
                longest / 2f64.sqrt(),
            );
        }
    }
    Ok(())
}

fn zigzag_rules(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let pts = &ctx.points;
    for (t, tri) in ctx.del.triangles().iter().enumerate() {
        let square = ctx.del.circumsquare(t);
        for k in 0..3 {
            let (u, v) = (tri[k], tri[(k + 1) % 3]);
            if ctx.y4_graph.has_edge(u, v) {
                continue;
            }
            for (a, b) in [(u, v), (v, u)] {
                let corners = adjacent_corners(
                    &square.sides_containing(pts[a]),
                    &square.sides_containing(pts[b]),
                );
                let Some(a1) = ctx.y4.out_edge(a, quadrant_of(pts[a], pts[b])?.index()) else {
                    continue;
                };
                let Some(e) = ctx.y4.out_edge(a1, quadrant_of(pts[a1], pts[b])?.index()) else {
                    continue;
                };
                for (sa, sb) in corners {
                    let w = square.corner(sa, sb).expect("adjacent sides meet");
                    let hypothesis = segments_relation((pts[a], pts[a1]), (w, pts[b]))
                        == SegmentRelation::CrossInterior;
                    if !hypothesis {
                        continue;
                    }
                    rec.examined += 1;
                    let crosses = segments_relation((pts[a1], pts[e]), (pts[a], pts[b]))
                        == SegmentRelation::CrossInterior;
                    rec.holds("zigzag", &[a, b, a1, e], !crosses);
                }
            }
        }
    }
    Ok(())
}

fn adjacent_corners(sa: &[Side], sb: &[Side]) -> Vec<(Side, Side)> {
    let mut out = Vec::new();
    for &s in sa {
        for &t in sb {
            if s != t && s != t.opposite() && !out.contains(&(s, t)) {
                out.push((s, t));
            }
        }
    }
    out
}

fn coslaw_rules(ctx: &Context, rec: &mut Recorder) -> Result<()> {
    let pts = &ctx.points;
    let n = ctx.n();
    let (mut literal_checked, mut literal_failed) = (0usize, 0usize);
    for b in 0..n {
        for a in 0..n {
            if a == b {
                continue;
            }
            for c in a + 1..n {
                if c == b {
                    continue;
                }
                let (pa, pb, pc) = (pts[a], pts[b], pts[c]);
                let ac = pa.d2_squared(&pc);
                let sum = pa.d2_squared(&pb) + pb.d2_squared(&pc);
                let dot_b = (pa.x - pb.x) * (pc.x - pb.x) + (pa.y - pb.y) * (pc.y - pb.y);
                if dot_b > 0.0 {
                    rec.examined += 1;
                    rec.leq("coslaw-angle-at-middle", &[a, b, c], ac, sum);
                }
                // The same inequality under an acute angle at `a`, logged only.
                let dot_a = (pb.x - pa.x) * (pc.x - pa.x) + (pb.y - pa.y) * (pc.y - pa.y);
                if dot_a > 0.0 {
                    literal_checked += 1;
                    if ac >= sum {
                        literal_failed += 1;
                    }
                }
            }
        }
    }
    rec.notes.push(format!(
        "acute angle at the first vertex instead of the middle one: inequality fails on {literal_failed} of {literal_checked} triples"
    ));

    let sqrt2 = 2f64.sqrt();
    for (a, b) in ctx.del.edges() {
        if ctx.y4_graph.has_edge(a, b) {
            continue;
        }
        for (a, b) in [(a, b), (b, a)] {
            let Some(a1) = ctx.y4.out_edge(a, quadrant_of(pts[a], pts[b])?.index()) else {
                continue;
            };
            rec.examined += 1;
            rec.leq(
                "coslaw-cone-neighbour",
                &[a, b, a1],
                pts[a1].d2(&pts[b]),
                sqrt2 * pts[a].d2(&pts[b]),
            );
        }
    }
    Ok(())
}

/// Empirical stretch of the Euclidean Yao graph for `k` in 5..=8 against the
/// known upper bounds for those cone counts.
pub fn verify_yao_k(points: &PointSet) -> Result<ViolationReport> {
    let mut rec = Recorder::new("yao-k");
    let bounds = BoundTable::new()?;
    if points.len() >= 2 {
        for (k, rule) in [
            (5, "y5-stretch"),
            (6, "y6-stretch"),
            (7, "y7-stretch"),
            (8, "y8-stretch"),
        ] {
            rec.examined += 1;
            let g = build_yao_l2(points, k)?.undirect();
            let s = crate::paths::stretch_factor(&g)?;
            let (u, v) = s.witness.expect("at least one pair");
            rec.leq(
                rule,
                &[u, v],
                s.max_ratio,
                bounds.yao_k_stretch(k).expect("known bound"),
            );
        }
    }
    Ok(rec.finish())
}

/// Selectable verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Check {
    Structure,
    DelEdgePaths,
    KeyTheorem,
    InductiveLemma,
    GreedyCrossing,
    YaoK,
}

impl Check {
    /// The suites run when none are selected explicitly.
    pub const DEFAULT: [Check; 5] = [
        Check::Structure,
        Check::DelEdgePaths,
        Check::KeyTheorem,
        Check::InductiveLemma,
        Check::GreedyCrossing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Structure => "structure",
            Check::DelEdgePaths => "del-edge-paths",
            Check::KeyTheorem => "key-theorem",
            Check::InductiveLemma => "inductive-lemma",
            Check::GreedyCrossing => "greedy-and-crossing",
            Check::YaoK => "yao-k",
        }
    }

    pub fn run(self, ctx: &Context) -> Result<ViolationReport> {
        match self {
            Check::Structure => verify_structure(ctx),
            Check::DelEdgePaths => verify_del_edge_paths(ctx),
            Check::KeyTheorem => verify_key_theorem(ctx),
            Check::InductiveLemma => verify_inductive_lemma(ctx),
            Check::GreedyCrossing => verify_greedy_and_crossing(ctx),
            Check::YaoK => verify_yao_k(&ctx.points),
        }
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Check::Structure,
            Check::DelEdgePaths,
            Check::KeyTheorem,
            Check::InductiveLemma,
            Check::GreedyCrossing,
            Check::YaoK,
        ]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown check '{s}'")))
    }
}

/// Builds the context once and runs the given suites in order.
pub fn verify_all(points: PointSet, checks: &[Check]) -> Result<Vec<ViolationReport>> {
    let ctx = Context::new(points)?;
    checks.iter().map(|c| c.run(&ctx)).collect()
}

//! Seeded point-set generation and a perturbation search for point sets with
//! large stretch.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`), whose output
//! is fixed by its seed on every platform. Restart `r` of a search uses the
//! generator seeded with the configured seed and switched to stream `r`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::delaunay::build_del_linf;
use crate::error::{Error, Result};
use crate::geometry::{validate_general_position, Point, PointSet, PositionMode};
use crate::paths::stretch_factor;
use crate::yao::{build_yao_l2, build_yao_linf4, GeoGraph};

/// Side length of the square that seeds all generated instances.
pub const DOMAIN: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Distribution {
    /// Uniform on `[0, DOMAIN)^2`.
    UniformSquare,
    /// Isotropic normal centred in the domain, standard deviation `DOMAIN / 6`.
    Gaussian,
    /// Normal clusters of standard deviation `DOMAIN / 50` around
    /// `max(1, n / 10)` uniform centres.
    Clustered,
}

impl Distribution {
    pub fn name(self) -> &'static str {
        match self {
            Distribution::UniformSquare => "uniform",
            Distribution::Gaussian => "gaussian",
            Distribution::Clustered => "clustered",
        }
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" | "uniform-square" => Ok(Distribution::UniformSquare),
            "gaussian" => Ok(Distribution::Gaussian),
            "clustered" => Ok(Distribution::Clustered),
            _ => Err(Error::InvalidArgument(format!(
                "unknown distribution '{s}'"
            ))),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Deterministic point set in strict general position. Points that share a
/// coordinate with an earlier point are redrawn.
pub fn random_instance(seed: u64, n: usize, dist: Distribution) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centres: Vec<Point> = match dist {
        Distribution::Clustered => (0..(n / 10).max(1))
            .map(|_| Point::new(rng.gen::<f64>() * DOMAIN, rng.gen::<f64>() * DOMAIN))
            .collect(),
        _ => Vec::new(),
    };
    let draw = |rng: &mut ChaCha8Rng| -> Point {
        match dist {
            Distribution::UniformSquare => {
                Point::new(rng.gen::<f64>() * DOMAIN, rng.gen::<f64>() * DOMAIN)
            }
            Distribution::Gaussian => {
                let normal = Normal::new(DOMAIN / 2.0, DOMAIN / 6.0).expect("valid deviation");
                Point::new(normal.sample(rng), normal.sample(rng))
            }
            Distribution::Clustered => {
                let c = centres[rng.gen_range(0..centres.len())];
                let normal = Normal::new(0.0, DOMAIN / 50.0).expect("valid deviation");
                Point::new(c.x + normal.sample(rng), c.y + normal.sample(rng))
            }
        }
    };
    let mut points: Vec<Point> = (0..n).map(|_| draw(&mut rng)).collect();
    loop {
        let violations = validate_general_position(
            &PointSet::new(points.clone()).expect("generated coordinates are finite"),
            PositionMode::Strict,
        );
        let Some(v) = violations.first() else { break };
        points[v.second] = draw(&mut rng);
    }
    PointSet::new(points).expect("generated coordinates are finite")
}

/// Adds independent uniform noise in `[-magnitude, magnitude]` to every
/// coordinate, redrawing the noise of points that end up sharing a coordinate.
pub fn jitter(points: &PointSet, seed: u64, magnitude: f64) -> Result<PointSet> {
    if !(magnitude > 0.0 && magnitude.is_finite()) {
        return Err(Error::InvalidArgument(
            "jitter magnitude must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noisy = |rng: &mut ChaCha8Rng, p: Point| {
        Point::new(
            p.x + rng.gen_range(-magnitude..=magnitude),
            p.y + rng.gen_range(-magnitude..=magnitude),
        )
    };
    let mut out: Vec<Point> = points
        .points()
        .iter()
        .map(|&p| noisy(&mut rng, p))
        .collect();
    loop {
        let violations =
            validate_general_position(&PointSet::new(out.clone())?, PositionMode::Strict);
        let Some(v) = violations.first() else { break };
        out[v.second] = noisy(&mut rng, points[v.second]);
    }
    PointSet::new(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Y4,
    Y4Inf,
    DelInf,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Y4 => "Y4",
            Family::Y4Inf => "Y4inf",
            Family::DelInf => "DelInf",
        }
    }

    pub fn build(self, points: &PointSet) -> Result<GeoGraph> {
        Ok(match self {
            Family::Y4 => build_yao_l2(points, 4)?.undirect(),
            Family::Y4Inf => build_yao_linf4(points).undirect(),
            Family::DelInf => build_del_linf(points)?.graph().clone(),
        })
    }

    /// Stretch of the family's graph on `points`.
    pub fn stretch(self, points: &PointSet) -> Result<(f64, (usize, usize))> {
        let report = stretch_factor(&self.build(points)?)?;
        Ok((
            report.max_ratio,
            report.witness.expect("at least two points"),
        ))
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "y4" => Ok(Family::Y4),
            "y4inf" => Ok(Family::Y4Inf),
            "delinf" => Ok(Family::DelInf),
            _ => Err(Error::InvalidArgument(format!(
                "unknown graph family '{s}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Acceptance {
    /// Accept a move iff it does not decrease the stretch.
    HillClimb,
    /// Metropolis rule at temperature `t0 * cooling^iteration`.
    Annealing { t0: f64, cooling: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub iterations: usize,
    pub restarts: usize,
    /// Standard deviation of a move at restart 0, in domain units. Restart
    /// `r` uses `step_scale * 0.7^r`.
    pub step_scale: f64,
    pub acceptance: Acceptance,
}

impl SearchConfig {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        Self {
            family,
            n,
            seed,
            iterations: 1000,
            restarts: 4,
            step_scale: DOMAIN / 20.0,
            acceptance: Acceptance::HillClimb,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if self.n < 2 {
            return bad("search needs n >= 2");
        }
        if self.iterations == 0 || self.restarts == 0 {
            return bad("iterations and restarts must be at least 1");
        }
        if !(self.step_scale > 0.0 && self.step_scale.is_finite()) {
            return bad("step scale must be positive");
        }
        if let Acceptance::Annealing { t0, cooling } = self.acceptance {
            if !(t0 > 0.0 && cooling > 0.0 && cooling <= 1.0) {
                return bad("annealing needs t0 > 0 and cooling in (0, 1]");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub points: PointSet,
    pub stretch: f64,
    pub witness: (usize, usize),
    pub best_restart: usize,
    /// Best stretch so far after each iteration, one sequence per restart,
    /// starting with the initial configuration.
    pub trajectories: Vec<Vec<f64>>,
}

struct RestartOutcome {
    points: PointSet,
    stretch: f64,
    witness: (usize, usize),
    trajectory: Vec<f64>,
}

/// Perturbation search maximizing the stretch of the configured family.
pub fn hill_climb(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let outcomes = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(cfg, r))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.stretch > outcomes[best].stretch {
            best = i;
        }
    }
    let trajectories = outcomes.iter().map(|o| o.trajectory.clone()).collect();
    let winner = &outcomes[best];
    Ok(SearchResult {
        points: winner.points.clone(),
        stretch: winner.stretch,
        witness: winner.witness,
        best_restart: best,
        trajectories,
    })
}

fn run_restart(cfg: &SearchConfig, restart: usize) -> Result<RestartOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);
    let step = cfg.step_scale * 0.7f64.powi(restart as i32);

    // The initial configuration must be buildable; redraw it otherwise.
    let (mut current, (mut cur_stretch, mut cur_witness)) = loop {
        let pts = random_instance(rng.gen(), cfg.n, Distribution::UniformSquare);
        match cfg.family.stretch(&pts) {
            Ok(s) => break (pts, s),
            Err(e) if e.is_degeneracy() => continue,
            Err(e) => return Err(e),
        }
    };
    let mut best = (current.clone(), cur_stretch, cur_witness);
    let mut trajectory = Vec::with_capacity(cfg.iterations + 1);
    trajectory.push(cur_stretch);

    for it in 0..cfg.iterations {
        let i = rng.gen_range(0..cfg.n);
        let dx: f64 = rng.sample(StandardNormal);
        let dy: f64 = rng.sample(StandardNormal);
        let u: f64 = rng.gen();
        let old = current[i];
        let moved = Point::new(old.x + step * dx, old.y + step * dy);
        if let Some(candidate) = replace_point(&current, i, moved) {
            match cfg.family.stretch(&candidate) {
                Ok((s, w)) => {
                    let accept = match cfg.acceptance {
                        Acceptance::HillClimb => s >= cur_stretch,
                        Acceptance::Annealing { t0, cooling } => {
                            let t = t0 * cooling.powi(it as i32);
                            s >= cur_stretch || u < ((s - cur_stretch) / t).exp()
                        }
                    };
                    if accept {
                        current = candidate;
                        cur_stretch = s;
                        cur_witness = w;
                        if cur_stretch > best.1 {
                            best = (current.clone(), cur_stretch, cur_witness);
                        }
                    }
                }
                Err(e) if e.is_degeneracy() => {}
                Err(e) => return Err(e),
            }
        }
        trajectory.push(best.1);
    }
    Ok(RestartOutcome {
        points: best.0,
        stretch: best.1,
        witness: best.2,
        trajectory,
    })
}

/// The point set with point `i` moved, or `None` if the move breaks strict
/// general position.
fn replace_point(points: &PointSet, i: usize, p: Point) -> Option<PointSet> {
    if !p.is_finite() {
        return None;
    }
    let clash = points
        .iter()
        .any(|(j, q)| j != i && (q.x == p.x || q.y == p.y));
    if clash {
        return None;
    }
    let mut v = points.points().to_vec();
    v[i] = p;
    PointSet::new(v).ok()
}

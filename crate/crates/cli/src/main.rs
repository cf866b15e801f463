use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use yaolab::io::{load_points, save_points, EdgeList};
use yaolab::render::{render_svg, Layer, RenderSpec};
use yaolab::search::{hill_climb, random_instance, Acceptance, Distribution, Family, SearchConfig};
use yaolab::verify::{Check, Context};
use yaolab::{
    build_del_linf, build_yao_l2, build_yao_linf4, stretch_factor, triangle_walk, BoundTable,
    Error, PointSet,
};

/// Exit status for a run whose checks found a violation.
const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "yaolab",
    version,
    about = "Yao graphs, L-infinity Delaunay triangulations and their stretch factors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random point set in strict general position.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "uniform", value_parser = parse_with::<Distribution>)]
        dist: Distribution,
        /// Output file; `.json` selects JSON, anything else CSV.
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a graph and write its directed edge list.
    Build {
        #[arg(long = "in")]
        input: PathBuf,
        /// y4, y4inf, delinf or yk:K.
        #[arg(long)]
        graph: GraphKind,
        #[arg(long)]
        out_edges: PathBuf,
    },
    /// Print the exact stretch factor of a graph, its witness pair and the proven bound.
    Stretch {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        graph: GraphKind,
    },
    /// Run verification suites and report violations.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated suites, or `all`. Defaults to every suite except yao-k.
        #[arg(long)]
        checks: Option<String>,
        /// Accepted for interface symmetry; all suites are deterministic.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the sequence of Del-inf triangles met by segment ab.
    Walk {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Search for point sets with large stretch.
    Search {
        #[arg(long, value_parser = parse_with::<Family>)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        iters: usize,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        /// Move size at the first restart, in domain units.
        #[arg(long)]
        step: Option<f64>,
        /// Simulated annealing as `T0,COOLING` instead of hill climbing.
        #[arg(long)]
        anneal: Option<String>,
        /// Best point set found.
        #[arg(long)]
        out: PathBuf,
        /// Per-iteration best stretch as `restart,iteration,stretch` lines.
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// Draw a point set and selected layers as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated: points, Y4, Y4inf, DelInf, circumsquares, witness-path, query-rect.
        #[arg(long, default_value = "DelInf,points")]
        layers: String,
        #[arg(long)]
        out: PathBuf,
        /// Vertex ids for the witness-path layer, comma-separated.
        #[arg(long)]
        path: Option<String>,
        /// Pair `a,b` for the query-rect layer.
        #[arg(long)]
        query: Option<String>,
        #[arg(long, default_value_t = 8.0)]
        scale: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum GraphKind {
    Yao(usize),
    Y4Inf,
    DelInf,
}

impl FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "y4inf" => return Ok(GraphKind::Y4Inf),
            "delinf" => return Ok(GraphKind::DelInf),
            _ => {}
        }
        let k = lower
            .strip_prefix("yk:")
            .or_else(|| lower.strip_prefix('y'))
            .and_then(|k| k.parse::<usize>().ok())
            .ok_or_else(|| format!("unknown graph '{s}'; expected y4, y4inf, delinf or yk:K"))?;
        if k < 4 {
            return Err(format!("Yao graphs need k >= 4, got {k}"));
        }
        Ok(GraphKind::Yao(k))
    }
}

fn parse_with<T: FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_ids(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("invalid vertex id '{t}'")))
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.is_degeneracy() => {
            eprintln!("error: {e}");
            eprintln!("offending ids: {:?}", e.offending_ids());
            ExitCode::from(EXIT_DEGENERATE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Gen { n, seed, dist, out } => {
            let ps = random_instance(seed, n, dist);
            save_points(&out, &ps)?;
            println!(
                "wrote {} points ({dist}, seed {seed}) to {}",
                ps.len(),
                out.display()
            );
        }
        Command::Build {
            input,
            graph,
            out_edges,
        } => {
            let ps = load_points(&input)?;
            let list = match graph {
                GraphKind::Yao(k) => {
                    EdgeList::new(&format!("Y{k}"), "L2", k, build_yao_l2(&ps, k)?.edges())
                }
                GraphKind::Y4Inf => EdgeList::new("Y4inf", "Linf", 4, build_yao_linf4(&ps).edges()),
                GraphKind::DelInf => {
                    let edges = build_del_linf(&ps)?
                        .edges()
                        .into_iter()
                        .flat_map(|(u, v)| [(u, v), (v, u)])
                        .collect();
                    let mut list = EdgeList::new("DelInf", "Linf", 0, edges);
                    list.header.remove("k");
                    list
                }
            };
            fs::write(&out_edges, list.to_text())?;
            println!(
                "wrote {} directed edges to {}",
                list.edges.len(),
                out_edges.display()
            );
        }
        Command::Stretch { input, graph } => {
            let ps = load_points(&input)?;
            let bounds = BoundTable::new()?;
            let (name, report, bound) = match graph {
                GraphKind::Yao(k) => (
                    format!("Y{k}"),
                    stretch_factor(&build_yao_l2(&ps, k)?.undirect())?,
                    bounds.yao_k_stretch(k),
                ),
                GraphKind::Y4Inf => (
                    "Y4inf".to_string(),
                    stretch_factor(&build_yao_linf4(&ps).undirect())?,
                    Some(bounds.y4inf_stretch),
                ),
                GraphKind::DelInf => (
                    "DelInf".to_string(),
                    stretch_factor(build_del_linf(&ps)?.graph())?,
                    Some(bounds.delinf_stretch),
                ),
            };
            println!("graph {name}");
            println!("stretch {}", report.max_ratio);
            match report.witness {
                Some((u, v)) => println!("witness {u} {v}"),
                None => println!("witness none"),
            }
            if let Some(slope) = report.witness_slope(&ps) {
                println!("witness_slope {slope}");
            }
            println!("disconnected_pairs {}", report.disconnected);
            match bound {
                Some(b) => println!("bound {b}"),
                None => println!("bound none"),
            }
        }
        Command::Verify {
            input,
            checks,
            seed: _,
            format,
        } => {
            let ps = load_points(&input)?;
            let checks: Vec<Check> = match checks.as_deref() {
                None => Check::DEFAULT.to_vec(),
                Some("all") => Check::DEFAULT
                    .iter()
                    .copied()
                    .chain([Check::YaoK])
                    .collect(),
                Some(list) => list
                    .split(',')
                    .map(|c| c.trim().parse())
                    .collect::<Result<_, _>>()?,
            };
            let ctx = Context::new(ps)?;
            let mut pass = true;
            for check in checks {
                let report = check.run(&ctx)?;
                pass &= report.pass();
                match format {
                    Format::Text => print!("{report}"),
                    Format::Structured => print!("{}", report.to_structured()),
                }
            }
            if !pass {
                return Ok(EXIT_VIOLATION);
            }
        }
        Command::Walk { input, a, b } => {
            let ps = load_points(&input)?;
            let del = build_del_linf(&ps)?;
            let walk = triangle_walk(&del, a, b)?;
            println!("walk {a} {b} steps {}", walk.len());
            for (i, step) in walk.steps.iter().enumerate() {
                let [t0, t1, t2] = del.triangles()[step.triangle];
                let sq = step.square;
                print!(
                    "{} triangle {t0} {t1} {t2} h {} l {} square {} {} {} {}",
                    i + 1,
                    step.h,
                    step.l,
                    sq.min.x,
                    sq.min.y,
                    sq.max.x,
                    sq.max.y
                );
                match step.inductive.point {
                    Some(p) if step.inductive.inductive => println!(" inductive {p}"),
                    _ => println!(),
                }
            }
            match walk.first_inductive() {
                Some(i) => println!("first_inductive {i}"),
                None => println!("first_inductive none"),
            }
        }
        Command::Search {
            family,
            n,
            seed,
            iters,
            restarts,
            step,
            anneal,
            out,
            trajectory,
        } => {
            let mut cfg = SearchConfig::new(family, n, seed);
            cfg.iterations = iters;
            cfg.restarts = restarts;
            if let Some(s) = step {
                cfg.step_scale = s;
            }
            if let Some(spec) = anneal {
                let v: Vec<f64> = spec
                    .split(',')
                    .map(|t| t.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Error::InvalidArgument(format!("invalid --anneal '{spec}'")))?;
                let [t0, cooling] = v[..] else {
                    return Err(Error::InvalidArgument("--anneal expects T0,COOLING".into()));
                };
                cfg.acceptance = Acceptance::Annealing { t0, cooling };
            }
            let result = hill_climb(&cfg)?;
            save_points(&out, &result.points)?;
            if let Some(path) = trajectory {
                write_trajectory(&path, &result.trajectories)?;
            }
            println!("family {}", family.name());
            println!("stretch {}", result.stretch);
            println!("witness {} {}", result.witness.0, result.witness.1);
            println!("best_restart {}", result.best_restart);
            println!("wrote {}", out.display());
        }
        Command::Render {
            input,
            layers,
            out,
            path,
            query,
            scale,
        } => {
            let ps: PointSet = load_points(&input)?;
            let layers = layers
                .split(',')
                .map(|l| l.trim().parse::<Layer>())
                .collect::<Result<_, _>>()?;
            let query = match query.as_deref().map(parse_ids).transpose()? {
                None => None,
                Some(ids) => match ids[..] {
                    [a, b] => Some((a, b)),
                    _ => return Err(Error::InvalidArgument("--query expects a,b".into())),
                },
            };
            let spec = RenderSpec {
                layers,
                scale,
                witness_path: path.as_deref().map(parse_ids).transpose()?,
                query,
                ..RenderSpec::default()
            };
            fs::write(&out, render_svg(&ps, &spec)?)?;
            println!("wrote {}", out.display());
        }
    }
    Ok(0)
}

fn write_trajectory(path: &Path, trajectories: &[Vec<f64>]) -> Result<(), Error> {
    let mut text = String::from("# restart,iteration,best_stretch\n");
    for (r, t) in trajectories.iter().enumerate() {
        for (i, s) in t.iter().enumerate() {
            text.push_str(&format!("{r},{i},{s}\n"));
        }
    }
    fs::write(path, text)?;
    Ok(())
}

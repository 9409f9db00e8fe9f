use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dvg_core::families::{
    gen_broom_leg_tree, gen_delta_copies, gen_nine_vertex, gen_path, gen_spider, gen_star, CubeParams,
    DeltaCopiesParams, FamilyMetadata, GridCyclesParams, SimplexParams,
};
use dvg_core::report::{write_csv, write_jsonl, write_text};
use dvg_core::strategies::{by_name, STRATEGY_NAMES};
use dvg_core::verify::{self, run_bound_on, run_corpus_bound, BoundReport, Corpus, CORPUS_BOUNDS};
use dvg_core::voronoi::ratio_string;
use dvg_core::{exploit, solve, Budget, GameSpec, Graph, Objective, Player, SolverConfig};

/// Solver, strategy evaluation and bound checks for the discrete Voronoi game
#[derive(Parser, Debug)]
#[command(name = "dvg", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph family and print it as JSON or DOT
    Gen {
        /// star, path, nine-vertex, spider, simplex, cube, grid-cycles, broom-leg, delta-copies
        family: String,
        /// Family parameter, e.g. `-p k=4`; repeatable
        #[arg(short = 'p', long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Compute the exact game value of a graph
    Solve {
        /// Graph JSON file, `-` for stdin
        graph: PathBuf,
        #[arg(short = 't', long, default_value_t = 1)]
        rounds: usize,
        /// Disable memoization, alpha-beta, twin pruning and move ordering
        #[arg(long)]
        plain: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Worst-case payoff of a fixed strategy against every adversary line
    Exploit {
        /// Graph JSON file, `-` for stdin
        graph: PathBuf,
        #[arg(short, long)]
        strategy: String,
        /// Player using the strategy; defaults to the strategy's own side
        #[arg(long, value_enum)]
        holder: Option<Holder>,
        #[arg(short = 't', long, default_value_t = 1)]
        rounds: usize,
        /// Count only broom leaves (broom-leg trees)
        #[arg(long)]
        brooms_only: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Check a bound and print one report per instance
    Verify {
        /// Bound id; `dvg verify list` prints them all
        bound: String,
        /// connected:N, trees:N, random-trees:COUNT:MAXN[:SEED], random-deg3:COUNT:MAXN[:SEED]
        #[arg(long)]
        corpus: Option<String>,
        /// Run a corpus bound on one graph JSON file instead
        #[arg(long, conflicts_with = "corpus")]
        graph: Option<PathBuf>,
        #[arg(short = 't', long, default_value_t = 2)]
        rounds: usize,
        /// Seed for random corpora, overriding the one in --corpus
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short = 'p', long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Solver node throughput on pinned instances
    Bench {
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    budget_seconds: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { max_nodes: self.budget_nodes, max_time: self.budget_seconds.map(Duration::from_secs_f64) }
    }
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Holder {
    A,
    B,
}

impl Output {
    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => {
                Box::new(io::BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?))
            }
            None => Box::new(io::stdout().lock()),
        })
    }

    fn only(&self, allowed: &[Format]) -> Result<()> {
        if !allowed.contains(&self.format) {
            bail!("--format {:?} is not available here", self.format);
        }
        Ok(())
    }
}

struct Params(BTreeMap<String, String>);

impl Params {
    fn parse(raw: &[String]) -> Result<Params> {
        let mut map = BTreeMap::new();
        for p in raw {
            let (k, v) = p.split_once('=').ok_or_else(|| anyhow!("parameter {p:?} is not KEY=VALUE"))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params(map))
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn num(&self, key: &str) -> Result<Option<usize>> {
        self.get(key).map(|v| v.parse().with_context(|| format!("parameter {key}={v} is not a number"))).transpose()
    }

    fn req(&self, key: &str) -> Result<usize> {
        self.num(key)?.ok_or_else(|| anyhow!("missing parameter {key}=..."))
    }

    fn or(&self, key: &str, default: usize) -> Result<usize> {
        Ok(self.num(key)?.unwrap_or(default))
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Graph::from_json_str(&text).with_context(|| format!("parsing graph from {}", path.display()))
}

/// `nine-vertex`, `star:K`, `path:N` or `spider:K:N`.
fn inner_graph(spec: &str) -> Result<Graph> {
    let parts: Vec<&str> = spec.split(':').collect();
    let arg = |i: usize| -> Result<usize> {
        parts
            .get(i)
            .ok_or_else(|| anyhow!("inner graph {spec:?} is missing a size"))?
            .parse()
            .context("inner graph size")
    };
    Ok(match parts[0] {
        "nine-vertex" => gen_nine_vertex()?,
        "star" => gen_star(arg(1)?)?,
        "path" => gen_path(arg(1)?)?,
        "spider" => gen_spider(arg(1)?, arg(2)?)?,
        other => bail!("unknown inner graph {other:?}"),
    })
}

fn generate(family: &str, p: &Params) -> Result<Graph> {
    Ok(match family {
        "star" => gen_star(p.req("k")?)?,
        "path" => gen_path(p.req("n")?)?,
        "nine-vertex" => gen_nine_vertex()?,
        "spider" => gen_spider(p.req("k")?, p.req("N")?)?,
        "simplex" => {
            let mut s = SimplexParams::new(p.req("d")?, p.or("t0", 1)?, p.req("N")?);
            s.attach_everywhere = p.get("attach-everywhere") == Some("true");
            s.build()?
        }
        "cube" => match p.num("L")? {
            Some(side) => CubeParams::with_side(p.req("d")?, side).build()?,
            None => CubeParams::for_rounds(p.req("d")?, p.or("t", 1)?).build()?,
        },
        "grid-cycles" => {
            let (d, tail) = (p.req("d")?, p.or("tail", 1)?);
            match p.num("L")? {
                Some(side) => GridCyclesParams::with_side(d, side, tail).build()?,
                None => GridCyclesParams::for_rounds(d, p.or("t", 1)?, tail).build()?,
            }
        }
        "broom-leg" => gen_broom_leg_tree(p.req("k")?, p.req("N")?)?,
        "delta-copies" => {
            let inner = inner_graph(p.get("inner").unwrap_or("nine-vertex"))?;
            gen_delta_copies(&DeltaCopiesParams { delta: p.req("delta")?, attach: p.num("attach")? }, &inner)?
        }
        other => bail!(
            "unknown family {other:?}; known: star, path, nine-vertex, spider, simplex, cube, grid-cycles, broom-leg, delta-copies"
        ),
    })
}

fn default_holder(strategy: &str) -> Option<Player> {
    STRATEGY_NAMES.iter().find(|(n, _)| *n == strategy).and_then(|(_, side)| *side)
}

const SINGLE_BOUNDS: &[&str] = &[
    "star",
    "path",
    "nine-vertex",
    "grid-metric",
    "simplex-share",
    "simplex-corners",
    "leg-defense",
    "broom-upper",
    "spider",
    "hub-mirror",
];

fn run_verify(
    bound: &str,
    corpus: Option<&str>,
    graph: Option<&Path>,
    t: usize,
    seed: Option<u64>,
    p: &Params,
    cfg: &SolverConfig,
) -> Result<Vec<BoundReport>> {
    let budget = &cfg.budget;
    if CORPUS_BOUNDS.contains(&bound) {
        if let Some(path) = graph {
            let g = read_graph(path)?;
            return Ok(run_bound_on(bound, &g, &path.display().to_string(), t, cfg)?);
        }
        let raw = corpus.ok_or_else(|| anyhow!("{bound} needs --corpus or --graph"))?;
        let mut corpus: Corpus = raw.parse()?;
        if let (Some(s), Corpus::RandomTrees { seed, .. } | Corpus::RandomDegreeThree { seed, .. }) =
            (seed, &mut corpus)
        {
            *seed = s;
        }
        return Ok(run_corpus_bound(bound, &corpus, t, cfg)?);
    }
    Ok(match bound {
        "star" => vec![verify::verify_star(p.req("k")?, t, cfg)?],
        "path" => vec![verify::verify_path(p.req("n")?, t, cfg)?],
        "nine-vertex" => vec![verify::verify_nine_vertex(cfg)?],
        "grid-metric" => vec![verify::verify_grid_metric(p.req("d")?, p.req("L")?)?],
        "simplex-share" => vec![verify::verify_simplex_share(p.req("d")?, p.or("t0", 1)?, p.req("N")?, budget)?],
        "simplex-corners" => vec![verify::verify_simplex_corners(p.req("d")?, p.or("t0", 1)?, p.req("N")?, budget)?],
        "leg-defense" => vec![verify::verify_leg_defense(p.req("k")?, p.req("N")?, t, budget)?],
        "broom-upper" => vec![verify::verify_broom_upper(p.req("k")?, p.req("N")?, cfg)?],
        "spider" => {
            let lens = p.get("N").ok_or_else(|| anyhow!("missing parameter N=LEN[,LEN...]"))?;
            let lens: Vec<usize> =
                lens.split(',').map(|s| s.trim().parse()).collect::<Result<_, _>>().context("arm lengths")?;
            verify::verify_spider(p.req("k")?, &lens, cfg)?
        }
        "hub-mirror" => vec![verify::verify_hub_mirror(p.req("delta")?, t, budget)?],
        other => bail!(
            "unknown bound {other:?}; corpus bounds: {}; single bounds: {}",
            CORPUS_BOUNDS.join(", "),
            SINGLE_BOUNDS.join(", ")
        ),
    })
}

fn write_reports(out: &Output, reports: &[BoundReport]) -> Result<()> {
    out.only(&[Format::Json, Format::Text, Format::Csv])?;
    let mut w = out.writer()?;
    match out.format {
        Format::Json => write_jsonl(&mut w, reports)?,
        Format::Text => write_text(&mut w, reports)?,
        _ => write_csv(&mut w, reports)?,
    }
    w.flush()?;
    Ok(())
}

struct BenchRow {
    instance: String,
    n: usize,
    rounds: usize,
    config: &'static str,
    nodes: u64,
    seconds: f64,
    value: String,
}

fn bench(budget: Budget) -> Result<Vec<BenchRow>> {
    let pinned: Vec<(String, Graph, usize)> = vec![
        ("star:k=8".into(), gen_star(8)?, 3),
        ("path:n=12".into(), gen_path(12)?, 3),
        ("nine-vertex".into(), gen_nine_vertex()?, 2),
        ("spider:k=3:N=4".into(), gen_spider(3, 4)?, 2),
        ("broom-leg:k=2:N=2".into(), gen_broom_leg_tree(2, 2)?, 2),
    ];
    let mut rows = Vec::new();
    for (name, g, t) in &pinned {
        let spec = GameSpec::new(g, *t)?;
        for (label, cfg) in [("optimized", SolverConfig::default()), ("plain", SolverConfig::plain())] {
            let start = Instant::now();
            let res = solve(&spec, &cfg.with_budget(budget.clone()))?;
            rows.push(BenchRow {
                instance: name.clone(),
                n: g.n(),
                rounds: *t,
                config: label,
                nodes: res.nodes_searched,
                seconds: start.elapsed().as_secs_f64(),
                value: ratio_string(res.value.ratio()),
            });
        }
    }
    Ok(rows)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { family, params, out } => {
            out.only(&[Format::Json, Format::Dot])?;
            let g = generate(&family, &Params::parse(&params)?)?;
            let mut w = out.writer()?;
            if out.format == Format::Dot {
                let highlight: Vec<(usize, &str)> = match g.family() {
                    Some(FamilyMetadata::Simplex(m)) => m.corners.iter().map(|&c| (c, "gold")).collect(),
                    Some(FamilyMetadata::BroomLeg(m)) => vec![(m.center, "gold"), (m.head, "orange")],
                    Some(FamilyMetadata::DeltaCopies(m)) => vec![(m.hub, "gold")],
                    _ => Vec::new(),
                };
                w.write_all(g.to_dot(&highlight).as_bytes())?;
            } else {
                writeln!(w, "{}", g.to_json_string()?)?;
            }
            w.flush()?;
            Ok(true)
        }
        Command::Solve { graph, rounds, plain, budget, out } => {
            out.only(&[Format::Json, Format::Text])?;
            let g = read_graph(&graph)?;
            let cfg = if plain { SolverConfig::plain() } else { SolverConfig::default() };
            let res = solve(&GameSpec::new(&g, rounds)?, &cfg.with_budget(budget.budget()))?;
            let mut w = out.writer()?;
            if out.format == Format::Text {
                writeln!(
                    w,
                    "value {} ({} of {} half-units)",
                    ratio_string(res.value.ratio()),
                    res.value.a_half_units,
                    2 * g.n()
                )?;
                writeln!(w, "principal variation {:?}", res.principal_variation)?;
                writeln!(w, "nodes searched {}", res.nodes_searched)?;
            } else {
                writeln!(w, "{}", serde_json::to_string(&res)?)?;
            }
            w.flush()?;
            Ok(true)
        }
        Command::Exploit { graph, strategy, holder, rounds, brooms_only, budget, out } => {
            out.only(&[Format::Json, Format::Text])?;
            let g = read_graph(&graph)?;
            let holder = match holder {
                Some(Holder::A) => Player::A,
                Some(Holder::B) => Player::B,
                None => default_holder(&strategy)
                    .ok_or_else(|| anyhow!("strategy {strategy:?} plays either side; pass --holder"))?,
            };
            let objective = if brooms_only {
                match g.family() {
                    Some(FamilyMetadata::BroomLeg(m)) => Objective::subset(g.n(), &m.broom_vertices()),
                    _ => bail!("--brooms-only needs a broom-leg tree"),
                }
            } else {
                Objective::Whole
            };
            let strat = by_name(&strategy, &g)?;
            let res = exploit(&GameSpec::new(&g, rounds)?, strat.as_ref(), holder, &objective, &budget.budget())?;
            let mut w = out.writer()?;
            if out.format == Format::Text {
                writeln!(
                    w,
                    "{} as {} guarantees {} ({} of {} half-units)",
                    res.strategy,
                    holder.as_char(),
                    ratio_string(res.guaranteed_ratio()),
                    res.guaranteed_half_units,
                    2 * res.objective_size
                )?;
                writeln!(w, "worst line {:?}", res.moves)?;
                writeln!(w, "nodes searched {}", res.nodes_searched)?;
            } else {
                writeln!(w, "{}", serde_json::to_string(&res)?)?;
            }
            w.flush()?;
            Ok(true)
        }
        Command::Verify { bound, corpus, graph, rounds, seed, params, budget, out } => {
            if bound == "list" {
                let mut w = out.writer()?;
                writeln!(w, "corpus bounds: {}", CORPUS_BOUNDS.join(", "))?;
                writeln!(w, "single bounds: {}", SINGLE_BOUNDS.join(", "))?;
                return Ok(true);
            }
            let cfg = SolverConfig::default().with_budget(budget.budget());
            let p = Params::parse(&params)?;
            let reports = run_verify(&bound, corpus.as_deref(), graph.as_deref(), rounds, seed, &p, &cfg)?;
            write_reports(&out, &reports)?;
            Ok(reports.iter().all(|r| r.pass))
        }
        Command::Bench { budget, out } => {
            out.only(&[Format::Json, Format::Text, Format::Csv])?;
            let rows = bench(budget.budget())?;
            let mut w = out.writer()?;
            let rate = |r: &BenchRow| if r.seconds > 0.0 { r.nodes as f64 / r.seconds } else { 0.0 };
            match out.format {
                Format::Json => {
                    for r in &rows {
                        let v = serde_json::json!({
                            "instance": r.instance, "n": r.n, "rounds": r.rounds, "config": r.config,
                            "nodes": r.nodes, "seconds": r.seconds, "nodes_per_second": rate(r), "value": r.value,
                        });
                        writeln!(w, "{v}")?;
                    }
                }
                Format::Text => {
                    writeln!(
                        w,
                        "{:<20} {:>4} {:>2} {:<9} {:>10} {:>9} {:>12}  value",
                        "instance", "n", "t", "config", "nodes", "seconds", "nodes/s"
                    )?;
                    for r in &rows {
                        writeln!(
                            w,
                            "{:<20} {:>4} {:>2} {:<9} {:>10} {:>9.4} {:>12.0}  {}",
                            r.instance,
                            r.n,
                            r.rounds,
                            r.config,
                            r.nodes,
                            r.seconds,
                            rate(r),
                            r.value
                        )?;
                    }
                }
                _ => {
                    writeln!(w, "instance,n,rounds,config,nodes,seconds,nodes_per_second,value")?;
                    for r in &rows {
                        writeln!(
                            w,
                            "{},{},{},{},{},{},{},{}",
                            r.instance,
                            r.n,
                            r.rounds,
                            r.config,
                            r.nodes,
                            r.seconds,
                            rate(r),
                            r.value
                        )?;
                    }
                }
            }
            w.flush()?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

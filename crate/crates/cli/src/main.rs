use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use rectcross::catalog::{
    bundled_catalog, enumerate_grid_order_types_seeded, ingest_database, standard_grid_params, OrderTypeCatalog,
    DEFAULT_SAMPLING_SEED,
};
use rectcross::crossings::{
    count_crossings, min_k_colored_crossing, min_rectilinear_crossing, CrossingValue, Drawing, DEFAULT_COLORING_CAP,
};
use rectcross::estimate::sample_estimate;
use rectcross::experiment::{quasirandom_experiment, ExperimentSpec, Family};
use rectcross::geom::{format_rational, parse_rational, Configuration, ExactPoint, Rational};
use rectcross::graph::{parse_graph, AnyGraph, Graph, WeightedGraph};
use rectcross::pipeline::{big_number, run_pipeline_with, CatalogCache, PartitionMode, PipelineConfig};
use rectcross::regularity::{
    cut_distance_exact, cut_distance_lower_bound_seeded, weak_regular_partition_with, EquitablePartition,
    RegularityOptions, EXACT_CUT_CAP,
};
use rectcross::svg::{render_svg, SvgOptions};

/// Near-optimal straight-line drawings of dense graphs.
#[derive(Parser)]
#[command(name = "rectcross", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a graph with the partition / exact / cluster pipeline (result JSON).
    Draw(DrawArgs),
    /// Exact minimum crossing value over the order-type catalog.
    Exact(ExactArgs),
    /// Count crossings of a graph drawn on given points.
    Count(CountArgs),
    /// Weak regular partition (partition text, optional certificate JSON).
    Partition(PartitionArgs),
    /// Cut distance between two graphs on the same vertex set.
    Cutdist(CutdistArgs),
    /// Minimum monochromatic crossings over k-edge-colorings.
    Kplanar(KplanarArgs),
    /// Sampling estimate from random induced subgraphs.
    Estimate(EstimateArgs),
    /// Quasi-random trend experiment (CSV or JSON report).
    Experiment(ExperimentArgs),
    /// Build, ingest or inspect order-type catalogs.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Render a result JSON from `draw` or `exact` as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CatalogArgs {
    /// Catalog files to use instead of the bundled ones (any number).
    #[arg(long = "catalog")]
    catalogs: Vec<PathBuf>,
}

impl CatalogArgs {
    fn cache(&self) -> anyhow::Result<CatalogCache> {
        let mut cache = CatalogCache::default();
        for path in &self.catalogs {
            cache.insert(load_catalog(path)?);
        }
        Ok(cache)
    }
}

#[derive(Args)]
struct DrawArgs {
    graph: PathBuf,
    #[arg(long, default_value = "1/4")]
    epsilon: String,
    #[arg(long = "k-max", default_value_t = 8)]
    k_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Local-search restarts per regularity round.
    #[arg(long, default_value_t = 16)]
    effort: usize,
    /// Make every vertex its own part (n <= 10).
    #[arg(long, conflicts_with = "partition")]
    per_vertex: bool,
    /// Use this partition file instead of computing one.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Record wall-clock timings in the diagnostics.
    #[arg(long)]
    timings: bool,
    /// Also write an SVG rendering here.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[command(flatten)]
    catalog: CatalogArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ExactArgs {
    graph: PathBuf,
    #[command(flatten)]
    catalog: CatalogArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CountArgs {
    graph: PathBuf,
    /// One point per line, `x y`, rational coordinates.
    points: PathBuf,
    /// List the crossing pairs too.
    #[arg(long)]
    pairs: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct PartitionArgs {
    graph: PathBuf,
    #[arg(long, default_value = "1/4")]
    epsilon: String,
    #[arg(long = "k-max", default_value_t = 8)]
    k_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    effort: usize,
    /// Write the certificate JSON here.
    #[arg(long)]
    certificate: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CutdistArgs {
    g: PathBuf,
    h: PathBuf,
    /// Use the local-search lower bound even when exact search is possible.
    #[arg(long)]
    heuristic: bool,
    #[arg(long, default_value_t = 50)]
    effort: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct KplanarArgs {
    graph: PathBuf,
    #[arg(short, long)]
    k: usize,
    /// Largest number of colorings (k^m) to search.
    #[arg(long, default_value_t = DEFAULT_COLORING_CAP)]
    cap: u64,
    #[command(flatten)]
    catalog: CatalogArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EstimateArgs {
    graph: PathBuf,
    #[arg(short, long)]
    t: usize,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    catalog: CatalogArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gnp,
    Paley,
    Complete,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Sizes n (or q for Paley graphs), comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Edge probability for gnp.
    #[arg(long)]
    p: Option<String>,
    /// Graph file for the file family.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "1/4")]
    epsilon: String,
    #[arg(long = "k-max", default_value_t = 8)]
    k_max: usize,
    /// Fill the seconds column.
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    catalog: CatalogArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Enumerate order types on an integer grid.
    Build {
        #[arg(short)]
        n: usize,
        /// Grid side; defaults to the stabilized value for n.
        #[arg(long)]
        side: Option<u32>,
        /// Subset budget; exhaustive when the grid has at most this many subsets.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SAMPLING_SEED)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Convert a raw point-set database file.
    Ingest {
        #[arg(short)]
        n: usize,
        database: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Summarize a catalog file, or the bundled catalog for `-n`.
    Info {
        file: Option<PathBuf>,
        #[arg(short, conflicts_with = "file")]
        n: Option<usize>,
    },
}

#[derive(Args)]
struct RenderArgs {
    /// Result JSON written by `draw` or `exact`.
    input: PathBuf,
    #[arg(long, default_value_t = 5000)]
    max_markers: usize,
    #[command(flatten)]
    output: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<rectcross::Error>().map_or(2, |e| e.exit_code());
            ExitCode::from(code as u8)
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Draw(a) => draw(a),
        Command::Exact(a) => exact(a),
        Command::Count(a) => count(a),
        Command::Partition(a) => partition(a),
        Command::Cutdist(a) => cutdist(a),
        Command::Kplanar(a) => kplanar(a),
        Command::Estimate(a) => estimate(a),
        Command::Experiment(a) => experiment(a),
        Command::Catalog(c) => catalog(c),
        Command::Render(a) => render(a),
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<AnyGraph> {
    parse_graph(&read_text(path)?)
        .map_err(anyhow::Error::from)
        .with_context(|| format!("in {}", path.display()))
}

fn read_plain_graph(path: &Path) -> anyhow::Result<Graph> {
    match read_graph(path)? {
        AnyGraph::Plain(g) => Ok(g),
        AnyGraph::Weighted(w) if w.is_unweighted() => Ok(Graph::new(w.n(), w.positive_edges())?),
        AnyGraph::Weighted(_) => Err(rectcross::Error::param("this command needs an unweighted graph").into()),
    }
}

fn load_catalog(path: &Path) -> anyhow::Result<OrderTypeCatalog> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(OrderTypeCatalog::load(&bytes).with_context(|| format!("in {}", path.display()))?)
}

fn rational_arg(s: &str, name: &str) -> anyhow::Result<Rational> {
    parse_rational(s).map_err(|_| rectcross::Error::param(format!("{name}: not a number: {s:?}")).into())
}

fn emit(output: &Output, text: &str) -> anyhow::Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json(output: &Output, v: &Value) -> anyhow::Result<()> {
    emit(output, &(serde_json::to_string_pretty(v)? + "\n"))
}

fn points_json(c: &Configuration) -> Value {
    c.points()
        .iter()
        .map(|p| {
            json!([
                big_number(p.x.numer()),
                big_number(p.x.denom()),
                big_number(p.y.numer()),
                big_number(p.y.denom())
            ])
        })
        .collect()
}

fn value_text(v: &CrossingValue) -> Value {
    match v {
        CrossingValue::Count(c) => json!(c),
        CrossingValue::Weighted(r) => json!(format_rational(r)),
    }
}

fn drawing_json(d: &Drawing) -> Value {
    let mut v = json!({
        "n": d.graph().n(),
        "points": points_json(d.placement()),
        "edges": d.graph().drawn_edges().iter().map(|&(u, w)| json!([u, w])).collect::<Vec<_>>(),
    });
    if let AnyGraph::Weighted(g) = d.graph() {
        v["weights"] = g
            .positive_edges()
            .iter()
            .map(|&(u, w)| json!(format_rational(&g.weight(u, w))))
            .collect();
    }
    v
}

fn draw(a: DrawArgs) -> anyhow::Result<()> {
    let g = read_plain_graph(&a.graph)?;
    let mode = if a.per_vertex {
        PartitionMode::PerVertex
    } else if let Some(path) = &a.partition {
        PartitionMode::Given(EquitablePartition::parse_text(&read_text(path)?)?)
    } else {
        PartitionMode::Regular
    };
    let cfg = PipelineConfig {
        epsilon: rational_arg(&a.epsilon, "epsilon")?,
        k_max: a.k_max,
        seed: a.seed,
        effort: a.effort,
        mode,
        timings: a.timings,
    };
    let mut cache = a.catalog.cache()?;
    let result = run_pipeline_with(&g, &cfg, &mut cache)?;
    if let Some(path) = &a.svg {
        let opts = SvgOptions {
            partition: Some(&result.partition),
            ..SvgOptions::default()
        };
        fs::write(path, render_svg(&result.drawing, &opts)).with_context(|| format!("writing {}", path.display()))?;
    }
    emit_json(&a.output, &result.to_json())
}

fn exact(a: ExactArgs) -> anyhow::Result<()> {
    let g = read_graph(&a.graph)?;
    let mut cache = a.catalog.cache()?;
    let cat = cache.get(g.n())?;
    let min = min_rectilinear_crossing(&g, cat)?;
    let mut v = drawing_json(&min.drawing);
    v["crossing_count"] = value_text(&min.value);
    v["catalog_entries"] = json!(cat.len());
    v["catalog_entry"] = json!(min.entry);
    emit_json(&a.output, &v)
}

fn count(a: CountArgs) -> anyhow::Result<()> {
    let g = read_graph(&a.graph)?;
    let points = Configuration::parse_text(&read_text(&a.points)?)?;
    let report = count_crossings(&Drawing::new(g, points)?);
    let mut v = json!({ "crossing_count": value_text(&report.value) });
    if a.pairs {
        v["pairs"] = report
            .pairs
            .iter()
            .map(|&((p, q), (r, s))| json!([[p, q], [r, s]]))
            .collect();
    }
    emit_json(&a.output, &v)
}

fn partition(a: PartitionArgs) -> anyhow::Result<()> {
    let g = read_plain_graph(&a.graph)?;
    let opts = RegularityOptions {
        effort: a.effort,
        seed: a.seed,
        ..RegularityOptions::default()
    };
    let out = weak_regular_partition_with(&g, &rational_arg(&a.epsilon, "epsilon")?, a.k_max, &opts)?;
    if let Some(path) = &a.certificate {
        let text = serde_json::to_string_pretty(&out.certificate)? + "\n";
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    emit(&a.output, &out.partition.to_text())
}

fn cutdist(a: CutdistArgs) -> anyhow::Result<()> {
    let g = read_graph(&a.g)?.to_weighted();
    let h = read_graph(&a.h)?.to_weighted();
    let exact = !a.heuristic && g.n() <= EXACT_CUT_CAP;
    let w = if exact {
        cut_distance_exact(&g, &h)?
    } else {
        cut_distance_lower_bound_seeded(&g, &h, a.effort, a.seed)?
    };
    emit_json(
        &a.output,
        &json!({ "value": format_rational(&w.value), "S": w.s, "T": w.t, "exact": exact }),
    )
}

fn kplanar(a: KplanarArgs) -> anyhow::Result<()> {
    let g = read_plain_graph(&a.graph)?;
    let mut cache = a.catalog.cache()?;
    let res = min_k_colored_crossing(&g, a.k, cache.get(g.n())?, a.cap)?;
    let mut v = drawing_json(&res.drawing);
    v["k"] = json!(a.k);
    v["crossing_count"] = json!(res.value);
    v["coloring"] = json!(res.coloring);
    emit_json(&a.output, &v)
}

fn estimate(a: EstimateArgs) -> anyhow::Result<()> {
    let g = read_plain_graph(&a.graph)?;
    let mut cache = a.catalog.cache()?;
    let est = sample_estimate(&g, a.t, a.trials, a.seed, &mut cache)?;
    let trials: Vec<Value> = est
        .trials
        .iter()
        .map(
            |t| json!({ "vertices": t.vertices, "sample_value": t.sample_value, "scaled": format_rational(&t.scaled) }),
        )
        .collect();
    emit_json(
        &a.output,
        &json!({ "n": g.n(), "t": a.t, "median": format_rational(&est.median), "trials": trials }),
    )
}

fn experiment(a: ExperimentArgs) -> anyhow::Result<()> {
    let family = match a.family {
        FamilyArg::Gnp => {
            let p = a.p.as_deref().ok_or_else(|| rectcross::Error::param("gnp needs --p"))?;
            Family::Gnp {
                p: rational_arg(p, "p")?,
            }
        }
        FamilyArg::Paley => Family::Paley,
        FamilyArg::Complete => Family::Complete,
        FamilyArg::File => {
            let path = a
                .graph
                .as_ref()
                .ok_or_else(|| rectcross::Error::param("file family needs --graph"))?;
            Family::File {
                name: path.display().to_string(),
                graph: read_plain_graph(path)?,
            }
        }
    };
    let spec = ExperimentSpec {
        family,
        sizes: a.sizes,
        trials: a.trials,
        seed: a.seed,
        pipeline: PipelineConfig {
            epsilon: rational_arg(&a.epsilon, "epsilon")?,
            k_max: a.k_max,
            timings: a.timings,
            ..PipelineConfig::default()
        },
    };
    let mut cache = a.catalog.cache()?;
    let report = quasirandom_experiment(&spec, &mut cache)?;
    match a.format {
        Format::Csv => emit(&a.output, &report.to_csv()),
        Format::Json => emit_json(&a.output, &serde_json::to_value(&report)?),
    }
}

fn catalog(c: CatalogCommand) -> anyhow::Result<()> {
    match c {
        CatalogCommand::Build {
            n,
            side,
            budget,
            seed,
            out,
        } => {
            let (std_side, std_budget) = standard_grid_params(n)?;
            let cat =
                enumerate_grid_order_types_seeded(n, side.unwrap_or(std_side), budget.unwrap_or(std_budget), seed)?;
            fs::write(&out, cat.save()?).with_context(|| format!("writing {}", out.display()))?;
            eprintln!(
                "{} order types on {} points ({} subsets tested, {:?})",
                cat.len(),
                n,
                cat.tested(),
                cat.provenance()
            );
            Ok(())
        }
        CatalogCommand::Ingest { n, database, out } => {
            let bytes = fs::read(&database).with_context(|| format!("reading {}", database.display()))?;
            let cat = ingest_database(n, &bytes)?;
            fs::write(&out, cat.save()?).with_context(|| format!("writing {}", out.display()))?;
            eprintln!("{} order types on {} points", cat.len(), n);
            Ok(())
        }
        CatalogCommand::Info { file, n } => {
            let cat = match (file, n) {
                (Some(path), _) => load_catalog(&path)?,
                (None, Some(n)) => bundled_catalog(n)
                    .ok_or_else(|| rectcross::Error::param(format!("no bundled catalog for n = {n}")))?,
                (None, None) => bail!(rectcross::Error::param("give a catalog file or -n")),
            };
            let max_coord = cat
                .witnesses()
                .flatten()
                .map(|p| p.x.abs().max(p.y.abs()))
                .max()
                .unwrap_or(0);
            println!("points: {}", cat.n());
            println!("order types: {}", cat.len());
            println!("largest coordinate: {max_coord}");
            Ok(())
        }
    }
}

fn render(a: RenderArgs) -> anyhow::Result<()> {
    let v: Value = serde_json::from_str(&read_text(&a.input)?).context("parsing result JSON")?;
    let d = drawing_from_json(&v)?;
    let partition = v
        .get("partition")
        .and_then(|p| serde_json::from_value::<Vec<usize>>(p.clone()).ok())
        .and_then(|p| EquitablePartition::new(p).ok());
    let opts = SvgOptions {
        partition: partition.as_ref(),
        max_markers: a.max_markers,
    };
    emit(&a.output, &render_svg(&d, &opts))
}

fn big_int(v: &Value) -> anyhow::Result<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().map_err(|_| anyhow!("not an integer: {n}")),
        Value::String(s) => s.parse().map_err(|_| anyhow!("not an integer: {s}")),
        _ => bail!("expected an integer, got {v}"),
    }
}

fn drawing_from_json(v: &Value) -> anyhow::Result<Drawing> {
    let bad = |what: &str| rectcross::Error::Format(format!("result JSON: {what}"));
    let pts = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing points"))?;
    let points = pts
        .iter()
        .map(|p| {
            let q = p
                .as_array()
                .filter(|q| q.len() == 4)
                .ok_or_else(|| bad("points need four integers"))?;
            let r = |i: usize, j: usize| -> anyhow::Result<Rational> {
                let den = big_int(&q[j])?;
                if den == BigInt::from(0) {
                    bail!(bad("zero denominator"));
                }
                Ok(Rational::new(big_int(&q[i])?, den))
            };
            Ok(ExactPoint::new(r(0, 1)?, r(2, 3)?))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let edges: Vec<(usize, usize)> = serde_json::from_value(v.get("edges").cloned().unwrap_or(json!([])))
        .map_err(|_| bad("edges must be [u, v] pairs"))?;
    let n = points.len();
    let graph = match v.get("weights") {
        Some(w) => {
            let ws: Vec<String> = serde_json::from_value(w.clone()).map_err(|_| bad("weights must be strings"))?;
            if ws.len() != edges.len() {
                bail!(bad("one weight per edge"));
            }
            let entries = edges
                .iter()
                .zip(&ws)
                .map(|(&(u, w), s)| Ok((u, w, parse_rational(s)?)))
                .collect::<rectcross::Result<Vec<_>>>()?;
            AnyGraph::Weighted(WeightedGraph::new(n, entries)?)
        }
        None => AnyGraph::Plain(Graph::new(n, edges)?),
    };
    Ok(Drawing::new(graph, Configuration::new(points))?)
}

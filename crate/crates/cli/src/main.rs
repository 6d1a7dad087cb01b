//! `tvg`: build and analyze Tverberg partition graphs from the command line.
//!
//! Exit codes: 0 success, 1 failure, 2 malformed input or arguments,
//! 3 enumeration cap exceeded.

mod manifest;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tvgraph::census::nerve_census;
use tvgraph::generators::{random_uniform, GeneratorSpec};
use tvgraph::graph::{build_graph_capped, export, graph_stats, ExportFormat, DEFAULT_MAX_PARTITIONS};
use tvgraph::io::{read_config_file, AnyConfig};
use tvgraph::partition::{brute_force_edge_count, edge_count, enumerate_r_partitions, stirling2, Partition};
use tvgraph::paths::{radon_path, tverberg_path_with, validate_path, PathMode};
use tvgraph::sarkaria::{mc_max_degree_probability, tolerance_point_bounds};
use tvgraph::{Error, PointConfig, Scalar};

use manifest::Manifest;

#[derive(Parser)]
#[command(name = "tvg", version, about = "Tverberg partition graphs with exact arithmetic")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Generator such as `regular-polygon:8`, `clusters:d=2,r=3,seed=1`
    /// or `random:n=7,d=2,seed=4`.
    #[arg(long = "gen", conflicts_with = "input")]
    generator: Option<String>,
    /// Point-set file (`# dim=<d> scalar=<kind>` header, one point per line).
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Cap {
    /// Refuse to enumerate more than this many partitions.
    #[arg(long, env = "TVG_MAX_PARTITIONS", default_value_t = DEFAULT_MAX_PARTITIONS)]
    max_partitions: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graph and report its statistics.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        r: usize,
        /// Directory for stats.json, graph.json, edges.csv and manifest.json.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write graph.dot.
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        cap: Cap,
    },
    /// Vertex and edge counts of partition graphs, n = 5..12, r = 2..5.
    Tables {
        /// Cross-check against enumeration for n <= 9.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Count partitions by the intersection pattern of their parts' hulls.
    NerveCensus {
        #[command(flatten)]
        input: Input,
        #[arg(short, default_value_t = 3)]
        r: usize,
        /// Allow part counts other than 3.
        #[arg(long)]
        experimental: bool,
        #[command(flatten)]
        cap: Cap,
    },
    /// Print a path of Tverberg partitions between two partitions.
    Path {
        #[command(flatten)]
        input: Input,
        /// Start partition as labels, e.g. `0,0,1,0,1`.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Below 3·Tv(d,r) - 1 points, try anyway instead of refusing.
        #[arg(long)]
        best_effort: bool,
    },
    /// Estimate how often a uniformly random labeling has maximal degree.
    Mc {
        #[command(flatten)]
        input: Input,
        #[arg(short)]
        r: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Chosen from the clock and recorded when omitted.
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for mc_log.csv, mc_summary.json and manifest.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a generated configuration as a point-set file.
    Gen {
        #[arg(long = "gen")]
        generator: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Connectivity of graphs of random configurations (reports, never asserts).
    Connectivity {
        #[arg(short, default_value_t = 2)]
        d: usize,
        #[arg(short, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Configurations per point count.
        #[arg(long, default_value_t = 10)]
        configs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        cap: Cap,
    },
    /// Point-count bounds for tolerant Tverberg partitions.
    ToleranceBounds {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        t: usize,
        #[arg(short)]
        r: usize,
    },
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooManyPartitions { .. } => 3,
            Error::Parse { .. }
            | Error::InvalidArguments(_)
            | Error::DimensionMismatch { .. }
            | Error::WrongDimension { .. }
            | Error::PartitionMismatch(_)
            | Error::NotTverberg(_)
            | Error::NotRadon(_)
            | Error::UnsupportedFormat(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("tvg: cannot configure thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    let started = Instant::now();
    let mut manifest = Manifest::new(std::env::args().collect());
    let result = run(cli.command, &mut manifest, started);
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("tvg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Either a configuration or the reason there is nothing to analyze.
enum Loaded {
    Config(AnyConfig),
    Empty,
}

fn load(input: &Input, manifest: &mut Manifest) -> Result<Loaded, Failure> {
    let spec = match (&input.generator, &input.input) {
        (Some(g), None) => GeneratorSpec::parse(g)?,
        (None, Some(path)) => GeneratorSpec::FromFile {
            path: path.display().to_string(),
        },
        _ => {
            return Err(Failure {
                code: 2,
                message: "give exactly one of --gen or --input".into(),
            })
        }
    };
    if let GeneratorSpec::FromFile { path } = &spec {
        manifest.add_input(Path::new(path))?;
    }
    if let Some(seed) = spec.seed() {
        manifest.add_seed(seed);
    }
    manifest.set_generator(&spec);
    let loaded = match &spec {
        GeneratorSpec::FromFile { path } => read_config_file(Path::new(path)),
        other => other.generate(),
    };
    match loaded {
        Ok(c) => Ok(Loaded::Config(c)),
        Err(Error::TooFewPoints { found: 0, .. }) => Ok(Loaded::Empty),
        Err(e) => Err(e.into()),
    }
}

/// Runs `$body` with `$c` bound to the concrete configuration.
macro_rules! with_config {
    ($any:expr, $c:ident => $body:expr) => {
        match $any {
            AnyConfig::Rational($c) => $body,
            AnyConfig::Cyclotomic($c) => $body,
        }
    };
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CmdResult {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), contents)?;
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn run(command: Command, manifest: &mut Manifest, started: Instant) -> CmdResult {
    match command {
        Command::Analyze {
            input,
            r,
            out,
            dot,
            cap,
        } => {
            manifest.set_command("analyze");
            let config = match load(&input, manifest)? {
                Loaded::Config(c) => c,
                Loaded::Empty => {
                    println!("configuration has no points; the graph is empty");
                    return Ok(());
                }
            };
            if config.len() < r.max(2) {
                println!(
                    "configuration has {} point(s), fewer than r = {r}; the graph is empty",
                    config.len()
                );
                return Ok(());
            }
            let graph = with_config!(&config, c => build_graph_capped(c, r, cap.max_partitions))?;
            let stats = serde_json::to_value(graph_stats(&graph)).expect("stats serialize");
            let doc = pretty(&stats);
            print!("{doc}");
            if let Some(dir) = out {
                write_file(&dir, "stats.json", &doc)?;
                write_file(&dir, "graph.json", &export(&graph, ExportFormat::Json))?;
                write_file(&dir, "edges.csv", &export(&graph, ExportFormat::Csv))?;
                if dot {
                    write_file(&dir, "graph.dot", &export(&graph, ExportFormat::Dot))?;
                }
                write_file(&dir, "manifest.json", &manifest.finish(started))?;
            }
            Ok(())
        }
        Command::Tables { verify, json } => tables(verify, json),
        Command::NerveCensus {
            input,
            r,
            experimental,
            cap,
        } => {
            if r != 3 && !experimental {
                return Err(Failure {
                    code: 2,
                    message: "censuses with r != 3 need --experimental".into(),
                });
            }
            let config = match load(&input, manifest)? {
                Loaded::Config(c) => c,
                Loaded::Empty => {
                    println!("configuration has no points; nothing to count");
                    return Ok(());
                }
            };
            if config.dim() != 2 {
                return Err(Error::WrongDimension {
                    expected: 2,
                    found: config.dim(),
                }
                .into());
            }
            let census = with_config!(&config, c => nerve_census(c, r, cap.max_partitions))?;
            let expected = stirling2(config.len(), r).to_string();
            let sum_ok = census.total.to_string() == expected;
            let classes: Vec<Value> = census
                .classes
                .iter()
                .map(|(faces, count)| json!({"faces": faces, "count": count}))
                .collect();
            let mut doc = json!({
                "n": config.len(),
                "r": r,
                "total": census.total,
                "expected_total": expected,
                "classes": classes,
            });
            if let Some(named) = census.triangle_named() {
                doc["counts"] = named.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            }
            print!("{}", pretty(&doc));
            if !sum_ok {
                return Err(Failure {
                    code: 1,
                    message: format!("census total {} differs from S(n,r) = {expected}", census.total),
                });
            }
            Ok(())
        }
        Command::Path {
            input,
            from,
            to,
            best_effort,
        } => {
            let p: Partition = from.parse()?;
            let q: Partition = to.parse()?;
            let config = match load(&input, manifest)? {
                Loaded::Config(c) => c,
                Loaded::Empty => {
                    return Err(Error::TooFewPoints { needed: 1, found: 0 }.into());
                }
            };
            with_config!(&config, c => print_path(c, &p, &q, best_effort))
        }
        Command::Mc {
            input,
            r,
            trials,
            seed,
            out,
        } => {
            manifest.set_command("mc");
            let seed = seed.unwrap_or_else(|| {
                let s = std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                eprintln!("tvg: no --seed given, using {s}");
                s
            });
            manifest.add_seed(seed);
            let config = match load(&input, manifest)? {
                Loaded::Config(c) => c,
                Loaded::Empty => {
                    println!("configuration has no points; frequency 0");
                    return Ok(());
                }
            };
            let report = with_config!(&config, c => mc_max_degree_probability(c, r, trials, seed))?;
            let summary = report.summary_json();
            print!("{summary}");
            if let Some(dir) = out {
                write_file(&dir, "mc_log.csv", &report.log_csv())?;
                write_file(&dir, "mc_summary.json", &summary)?;
                write_file(&dir, "manifest.json", &manifest.finish(started))?;
            }
            Ok(())
        }
        Command::Gen { generator, out } => {
            let config = GeneratorSpec::parse(&generator)?.generate()?;
            let text = config.to_csv();
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Connectivity {
            d,
            r,
            n_min,
            n_max,
            configs,
            seed,
            cap,
        } => {
            println!("n,config_seed,vertices,edges,components");
            for n in n_min..=n_max {
                for k in 0..configs {
                    let s = seed.wrapping_add(1000 * n as u64 + k);
                    let config = random_uniform(n, d, s, tvgraph::generators::DEFAULT_BOUND)?;
                    let g = build_graph_capped(&config, r, cap.max_partitions)?;
                    println!("{n},{s},{},{},{}", g.vertex_count(), g.edge_count(), g.component_count());
                }
            }
            Ok(())
        }
        Command::ToleranceBounds { d, t, r } => {
            let b = tolerance_point_bounds(d, t, r)?;
            println!("general {}", b.general);
            println!("low_dimensional {}", b.low_dimensional);
            Ok(())
        }
    }
}

fn print_path<S: Scalar>(config: &PointConfig<S>, p: &Partition, q: &Partition, best_effort: bool) -> CmdResult {
    let path = if p.num_parts() == 2 && q.num_parts() == 2 {
        radon_path(config, p, q)?
    } else {
        let mode = if best_effort { PathMode::BestEffort } else { PathMode::Strict };
        tverberg_path_with(config, p, q, mode)?
    };
    let verdict = validate_path(config, &path, p, q);
    for (i, step) in path.iter().enumerate() {
        let mark = match &verdict {
            Err(tvgraph::paths::PathDefect::NotTverberg(k)) | Err(tvgraph::paths::PathDefect::NotAdjacent(k))
                if *k == i =>
            {
                "FAIL"
            }
            _ => "ok",
        };
        println!("{i}\t{step}\t{mark}");
    }
    verdict.map_err(|d| Failure {
        code: 1,
        message: format!("path failed validation: {d:?}"),
    })
}

const TABLE_N: std::ops::RangeInclusive<usize> = 5..=12;
const TABLE_R: std::ops::RangeInclusive<usize> = 2..=5;
const VERIFY_MAX_N: usize = 9;

fn tables(verify: bool, as_json: bool) -> CmdResult {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for r in TABLE_R {
        let mut vrow = Vec::new();
        let mut erow = Vec::new();
        for n in TABLE_N {
            vrow.push(stirling2(n, r).to_string());
            erow.push(edge_count(n, r)?.0.to_string());
        }
        vertices.push(vrow);
        edges.push(erow);
    }
    let mut mismatches = Vec::new();
    if verify {
        for (ri, r) in TABLE_R.enumerate() {
            for (ni, n) in TABLE_N.enumerate().filter(|&(_, n)| n <= VERIFY_MAX_N) {
                let v = enumerate_r_partitions(n, r)?.count().to_string();
                let e = brute_force_edge_count(n, r)?.to_string();
                if v != vertices[ri][ni] || e != edges[ri][ni] {
                    mismatches.push(format!("n={n} r={r}"));
                }
            }
        }
    }
    if as_json {
        let doc = json!({
            "n": TABLE_N.collect::<Vec<_>>(),
            "r": TABLE_R.collect::<Vec<_>>(),
            "vertices": vertices,
            "edges": edges,
            "verified": verify.then_some(mismatches.is_empty()),
        });
        print!("{}", pretty(&doc));
    } else {
        let mut out = String::new();
        for (title, rows) in [("vertices", &vertices), ("edges", &edges)] {
            let _ = writeln!(out, "{title}");
            let header: Vec<String> = TABLE_N.map(|n| format!("{:>10}", format!("n={n}"))).collect();
            let _ = writeln!(out, "{:>5}{}", "", header.concat());
            for (r, row) in TABLE_R.zip(rows.iter()) {
                let cells: Vec<String> = row.iter().map(|c| format!("{c:>10}")).collect();
                let _ = writeln!(out, "{:>5}{}", format!("r={r}"), cells.concat());
            }
            out.push('\n');
        }
        if verify {
            let _ = writeln!(
                out,
                "verify (n <= {VERIFY_MAX_N}): {}",
                if mismatches.is_empty() { "ok" } else { "MISMATCH" }
            );
        }
        print!("{out}");
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!("enumeration disagrees at {}", mismatches.join(", ")),
        })
    }
}

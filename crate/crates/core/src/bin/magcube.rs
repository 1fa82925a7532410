use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use magcube::budget::DEFAULT_NODE_BUDGET;
use magcube::enumeration::{
    colored_count_table, count_fixed, default_workers, enumerate_colored, shapes_from_json,
    shapes_to_json, EnumOptions, Supply,
};
use magcube::montecarlo::{export_stats, run_trials, TrialConfig};
use magcube::planner::{bfs_reachable, Dedup, Model, PlanOptions, Workspace};
use magcube::render::render_svg;
use magcube::{magnet, Budget, Catalog, Dim, Error};

/// Enumerate, plan and simulate assemblies of magnetic modular cubes.
#[derive(Parser)]
#[command(name = "magcube", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Cube catalog JSON; the built-in catalog when omitted
    #[arg(long, global = true, value_name = "FILE")]
    catalog: Option<PathBuf>,
    /// Master seed for random sampling
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Search node limit per operation
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    budget_nodes: u64,
    /// Wall-clock limit per operation in seconds; unlimited when omitted
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    /// Write results here instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads [default: available cores]
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DedupArg {
    Absolute,
    Relative,
}

#[derive(Subcommand)]
enum Command {
    /// List valid magnet arrangements {L, F/B, T/U, R}
    Arrangements {
        /// Only arrangements without top/under magnets
        #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
        planar: bool,
        /// Minimum number of magnets
        #[arg(long, default_value_t = 0)]
        min_magnets: u32,
    },
    /// Count fixed polyominoes (2) or polycubes (3) of size n
    Count {
        /// Lattice dimension
        #[arg(long, default_value_t = 2, value_parser = parse_dim)]
        dim: u8,
        /// Shape size
        #[arg(long)]
        n: usize,
        /// Print every size from 1 to n
        #[arg(long)]
        all: bool,
    },
    /// Colored counts C(n,i) for two cube types next to fixed counts A(n)
    ColorTable {
        /// Largest shape size
        #[arg(long)]
        n_max: usize,
        /// Type supplying n-i cubes
        #[arg(long)]
        type_a: String,
        /// Type supplying i cubes
        #[arg(long)]
        type_b: String,
        /// Lattice dimension
        #[arg(long, default_value_t = 2, value_parser = parse_dim)]
        dim: u8,
    },
    /// List every valid colored shape buildable from a supply
    Enumerate {
        /// Cube supply, e.g. cyan=1,magenta=3
        #[arg(long, value_parser = parse_supply)]
        supply: Supply,
        /// Shape size [default: supply total]
        #[arg(long)]
        n: Option<usize>,
        /// Lattice dimension [default: 3 if any supplied type is non-planar, else 2]
        #[arg(long, value_parser = parse_dim)]
        dim: Option<u8>,
    },
    /// Shortest move sequences to every shape reachable from a start
    Plan {
        /// Workspace size WIDTHxHEIGHT
        #[arg(long, default_value = "11x11", value_parser = parse_workspace)]
        workspace: Workspace,
        /// Start configuration: JSON list of {"x","y","color"}
        #[arg(long, value_name = "FILE")]
        start: PathBuf,
        /// Which revisited configurations end a search branch
        #[arg(long, value_enum, default_value_t = DedupArg::Absolute)]
        dedup: DedupArg,
    },
    /// Reachability statistics over random starts
    Mc {
        /// Cube supply, e.g. cyan=1,magenta=3
        #[arg(long, value_parser = parse_supply)]
        supply: Supply,
        /// Workspace size WIDTHxHEIGHT
        #[arg(long, default_value = "11x11", value_parser = parse_workspace)]
        workspace: Workspace,
        /// Number of trials
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        /// Random starts per trial
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        restarts: u32,
    },
    /// Draw shapes as SVG
    Render {
        /// Shape file: one shape or a list, as written by enumerate
        #[arg(long, value_name = "FILE")]
        shapes: PathBuf,
    },
}

fn parse_dim(text: &str) -> Result<u8, String> {
    match text {
        "2" => Ok(2),
        "3" => Ok(3),
        _ => Err("dimension must be 2 or 3".into()),
    }
}

fn parse_supply(text: &str) -> Result<Supply, String> {
    Supply::parse(text).map_err(|e| e.to_string())
}

fn parse_workspace(text: &str) -> Result<Workspace, String> {
    Workspace::parse(text).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("magcube: {e}");
            ExitCode::from(if e.is_budget() { 2 } else { 3 })
        }
    }
}

fn read(path: &std::path::Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| with_path(e, path))
}

fn with_path(e: std::io::Error, path: &std::path::Path) -> Error {
    Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<(), Error> {
    let g = &cli.global;
    let catalog = match &g.catalog {
        Some(path) => Catalog::from_json(&read(path)?)?,
        None => Catalog::default_catalog(),
    };
    let mut budget = Budget::nodes(g.budget_nodes);
    if let Some(secs) = g.budget_seconds {
        let limit = Duration::try_from_secs_f64(secs)
            .map_err(|_| Error::InvalidInput(format!("bad --budget-seconds {secs}")))?;
        budget = budget.with_time(limit);
    }
    let workers = g.workers.unwrap_or_else(default_workers).max(1);
    let opts = EnumOptions { budget, workers };

    let text = match &cli.command {
        Command::Arrangements { planar, min_magnets } => {
            let list = magnet::enumerate_arrangements(*planar, *min_magnets);
            match g.format {
                Format::Csv => {
                    let mut out = String::from("L,FB,TU,R\n");
                    for a in &list {
                        out.push_str(&format!("{},{},{},{}\n", a.left, a.front_back, a.top_under, a.right));
                    }
                    out
                }
                Format::Json => {
                    let rows: Vec<_> = list
                        .iter()
                        .map(|a| {
                            serde_json::json!({
                                "L": a.left.token(),
                                "FB": a.front_back.token(),
                                "TU": a.top_under.token(),
                                "R": a.right.token(),
                            })
                        })
                        .collect();
                    json_text(&rows)
                }
            }
        }
        Command::Count { dim, n, all } => {
            let counts = count_fixed(to_dim(*dim), *n, &opts)?;
            let rows: Vec<(usize, u128)> = counts
                .iter()
                .enumerate()
                .map(|(i, a)| (i + 1, *a))
                .filter(|(k, _)| *all || k == n)
                .collect();
            match g.format {
                Format::Csv => {
                    let mut out = String::from("n,A\n");
                    for (k, a) in rows {
                        out.push_str(&format!("{k},{a}\n"));
                    }
                    out
                }
                Format::Json => {
                    let rows: Vec<_> =
                        rows.iter().map(|(k, a)| serde_json::json!({"n": k, "A": a.to_string()})).collect();
                    json_text(&serde_json::json!({"dim": dim, "counts": rows}))
                }
            }
        }
        Command::ColorTable { n_max, type_a, type_b, dim } => {
            let table = colored_count_table(*n_max, type_a, type_b, &catalog, to_dim(*dim), &opts)?;
            match g.format {
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json() + "\n",
            }
        }
        Command::Enumerate { supply, n, dim } => {
            let dim = match dim {
                Some(d) => to_dim(*d),
                None => supply.natural_dim(&catalog)?,
            };
            let n = n.unwrap_or(supply.total() as usize);
            let shapes = enumerate_colored(supply, &catalog, n, dim, &opts)?;
            match g.format {
                Format::Csv => {
                    let mut out = String::from("id\n");
                    for s in &shapes {
                        out.push_str(&format!("\"{}\"\n", s.id()));
                    }
                    out
                }
                Format::Json => shapes_to_json(&shapes) + "\n",
            }
        }
        Command::Plan { workspace, start, dedup } => {
            let model = Model::new(&catalog, *workspace);
            let initial = model.configuration_from_json(&read(start)?)?;
            let dedup = match dedup {
                DedupArg::Absolute => Dedup::Absolute,
                DedupArg::Relative => Dedup::Relative,
            };
            let plan = bfs_reachable(&model, &initial, &PlanOptions { budget, dedup })?;
            match g.format {
                Format::Csv => {
                    let mut out = String::from("id,moves,translation_steps\n");
                    for (id, e) in &plan.entries {
                        out.push_str(&format!("\"{id}\",\"{}\",{}\n", e.moves, e.translation_steps));
                    }
                    out
                }
                Format::Json => plan.to_json() + "\n",
            }
        }
        Command::Mc { supply, workspace, trials, restarts } => {
            let mut cfg = TrialConfig::new(supply.clone(), *workspace, *trials, *restarts, g.seed);
            cfg.budget = budget;
            cfg.workers = workers;
            let stats = run_trials(&cfg, &catalog)?;
            if !stats.censored.is_empty() {
                eprintln!("magcube: {} of {} trials censored by the budget", stats.censored.len(), trials);
            }
            export_stats(&stats, format_name(g.format))?
        }
        Command::Render { shapes } => {
            let shapes = shapes_from_json(&read(shapes)?)?;
            render_svg(&shapes, &catalog)?
        }
    };
    match &g.out {
        Some(path) => fs::write(path, text).map_err(|e| with_path(e, path)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_dim(d: u8) -> Dim {
    Dim::from_number(d).expect("validated by the argument parser")
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn json_text<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

//! Command-line front end: generate spaces, compute persistent fundamental
//! groups, barcodes, loop spaces, ultrametrics, Gromov-Hausdorff distances
//! and bounds, diagram/interval-group distances, and run the verification
//! suites.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use perstopy::distances::{bottleneck, interleaving_interval_groups, IntervalGroupJson};
use perstopy::gh::{budget_from_env, gh_lower_bounds_opts, gh_pointed_exact};
use perstopy::homology::{mu0_ultrametric, ph0_diagram, ph1_diagram, PersistenceDiagram};
use perstopy::loops::{enumerate_l_with, generalized_subdendrogram_with, mu1_matrix};
use perstopy::metric::{
    circle_sample, cycle_graph, random_tree_metric, star_graph, uniform_space, SpaceJson,
};
use perstopy::pi1::{persistent_pi1, report as pi1_report};
use perstopy::verify::run_suite;
use perstopy::{FiniteMetricSpace, PointedMetricSpace};

#[derive(Parser)]
#[command(name = "perstopy", version, about = "Persistent fundamental groups and Gromov-Hausdorff bounds for finite metric spaces", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named metric space as JSON
    Generate {
        /// One of: cycle, star, circle, uniform, tree
        kind: String,
        /// Number of points
        n: usize,
        /// RNG seed (tree only)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Persistent fundamental group of a space
    Pi1 {
        space: PathBuf,
        /// Presentation at one scale only
        #[arg(long, conflicts_with = "all")]
        scale: Option<f64>,
        /// Every candidate scale with critical values (default)
        #[arg(long)]
        all: bool,
        /// Emit the JSON report instead of text
        #[arg(long)]
        json: bool,
    },
    /// Persistence barcode as CSV (birth,death with `inf`)
    Barcode {
        space: PathBuf,
        #[arg(long)]
        dim: u8,
    },
    /// Loop classes, their subdendrogram, and the mu1 matrix
    Loops {
        space: PathBuf,
        #[arg(long)]
        max_size: usize,
        /// Write the generalized subdendrogram JSON here
        #[arg(long)]
        subdendrogram: Option<PathBuf>,
        /// Write the mu1 matrix CSV here
        #[arg(long)]
        mu1_matrix: Option<PathBuf>,
    },
    /// Single-linkage ultrametric as CSV
    Mu0 { space: PathBuf },
    /// Gromov-Hausdorff distance and lower bounds (JSON report)
    Gh {
        x: PathBuf,
        y: PathBuf,
        /// Restrict to basepoint-preserving maps
        #[arg(long)]
        pointed: bool,
        /// Search budget (overrides PERSTOPY_BUDGET)
        #[arg(long)]
        budget: Option<u128>,
        /// Skip the exact search, report bounds only
        #[arg(long)]
        bounds_only: bool,
    },
    /// Distances between stored artifacts
    Distance {
        /// Bottleneck distance between two barcode CSV files
        #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
        bottleneck: Option<Vec<PathBuf>>,
        /// Interleaving distance between two interval-group JSON files
        #[arg(long, num_args = 2, value_names = ["G1", "G2"])]
        interleave: Option<Vec<PathBuf>>,
    },
    /// Run a verification suite and print a pass/fail table
    Verify {
        #[arg(long, default_value = "paper")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn fmt(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v:.12}")
    }
}

fn fail(msg: String) -> String {
    msg
}

fn load_space(path: &Path) -> Result<(FiniteMetricSpace, Option<usize>), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(format!("cannot read {}: {e}", path.display())))?;
    let json: SpaceJson = serde_json::from_str(&text)
        .map_err(|e| fail(format!("malformed JSON in {}: {e}", path.display())))?;
    let space = FiniteMetricSpace::from_json(&json)
        .map_err(|e| fail(format!("{}: {e}", path.display())))?;
    if let Some(b) = json.basepoint {
        if b >= space.n() {
            return Err(fail(format!("{}: basepoint {b} out of range", path.display())));
        }
    }
    Ok((space, json.basepoint))
}

fn load_pointed(path: &Path) -> Result<PointedMetricSpace, String> {
    let (space, basepoint) = load_space(path)?;
    PointedMetricSpace::new(space, basepoint.unwrap_or(0)).map_err(|e| fail(e.to_string()))
}

fn write_or_print(output: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| fail(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Generate { kind, n, seed, output } => {
            let json = match kind.as_str() {
                "cycle" => cycle_graph(n).map_err(|e| e.to_string())?.to_json(Some(0)),
                "star" => {
                    let s = star_graph(n).map_err(|e| e.to_string())?;
                    s.space.to_json(Some(s.basepoint))
                }
                "circle" => circle_sample(n).map_err(|e| e.to_string())?.to_json(Some(0)),
                "uniform" => uniform_space(n).map_err(|e| e.to_string())?.to_json(Some(0)),
                "tree" => random_tree_metric(n, seed).map_err(|e| e.to_string())?.to_json(Some(0)),
                other => return Err(format!("unknown space kind `{other}` (expected cycle, star, circle, uniform, or tree)")),
            };
            let mut text = serde_json::to_string_pretty(&json).unwrap();
            text.push('\n');
            write_or_print(&output, &text)
        }
        Command::Pi1 { space, scale, all: _, json } => {
            let x = load_pointed(&space)?;
            let pp = persistent_pi1(&x);
            let rep = pi1_report(&pp);
            if json {
                println!("{}", serde_json::to_string_pretty(&rep).unwrap());
                return Ok(());
            }
            match scale {
                Some(s) => {
                    if s < 0.0 {
                        return Err(format!("scale {s} must be nonnegative"));
                    }
                    match pp.level_at(s) {
                        Some(i) => {
                            println!(
                                "scale {} (governed by candidate scale {}): {}",
                                fmt(s),
                                fmt(pp.scales[i]),
                                pp.levels[i].simplified.presentation
                            );
                            println!("class: {}", pp.levels[i].class);
                        }
                        None => {
                            println!("scale {}: gens: ; rels: ", fmt(s));
                            println!("class: 0");
                        }
                    }
                }
                None => {
                    for l in &rep.levels {
                        println!(
                            "scale {}: class {} ({} generators, {} relators; simplified {})",
                            fmt(l.scale),
                            l.class_display,
                            l.n_generators,
                            l.n_relators,
                            l.simplified
                        );
                    }
                    let criticals: Vec<String> = rep
                        .critical_values
                        .iter()
                        .map(|c| format!("{} {:?}", fmt(c.scale), c.verdict))
                        .collect();
                    println!("critical values: {}", criticals.join(", "));
                }
            }
            Ok(())
        }
        Command::Barcode { space, dim } => {
            let (x, _) = load_space(&space)?;
            let d = match dim {
                0 => ph0_diagram(&x),
                1 => ph1_diagram(&x),
                other => return Err(format!("unsupported dimension {other} (expected 0 or 1)")),
            };
            print!("{}", d.to_csv());
            Ok(())
        }
        Command::Loops { space, max_size, subdendrogram, mu1_matrix: mu1_out } => {
            if max_size < 1 {
                return Err("--max-size must be at least 1".into());
            }
            let x = load_pointed(&space)?;
            let pp = persistent_pi1(&x);
            let ls = enumerate_l_with(&pp, &x, max_size);
            for (i, c) in ls.classes.iter().enumerate() {
                let pts: Vec<String> =
                    c.representative.points().iter().map(|p| p.to_string()).collect();
                println!(
                    "class {i}: birth {} rep {}{}",
                    fmt(c.birth),
                    pts.join(" "),
                    if c.flagged { " (flagged: unknown verdicts)" } else { "" }
                );
            }
            if let Some(path) = subdendrogram {
                let sd = generalized_subdendrogram_with(&pp, &x, &ls);
                let text = serde_json::to_string_pretty(&sd).unwrap();
                std::fs::write(&path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            if let Some(path) = mu1_out {
                let m = mu1_matrix(&pp, &x, &ls.classes);
                let mut csv = String::new();
                for row in &m {
                    let cells: Vec<String> = row
                        .iter()
                        .map(|v| match v {
                            Some(v) => fmt(*v),
                            None => "unknown".into(),
                        })
                        .collect();
                    csv.push_str(&cells.join(","));
                    csv.push('\n');
                }
                std::fs::write(&path, csv)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(())
        }
        Command::Mu0 { space } => {
            let (x, _) = load_space(&space)?;
            for row in mu0_ultrametric(&x) {
                let cells: Vec<String> = row.iter().map(|v| fmt(*v)).collect();
                println!("{}", cells.join(","));
            }
            Ok(())
        }
        Command::Gh { x, y, pointed, budget, bounds_only } => {
            let budget = budget.unwrap_or_else(budget_from_env);
            let (sx, bx) = load_space(&x)?;
            let (sy, by) = load_space(&y)?;
            let report = gh_lower_bounds_opts(&sx, &sy, budget, !bounds_only && !pointed);
            let exact = if bounds_only {
                None
            } else if pointed {
                let px = PointedMetricSpace::new(sx.clone(), bx.unwrap_or(0)).unwrap();
                let py = PointedMetricSpace::new(sy.clone(), by.unwrap_or(0)).unwrap();
                Some(gh_pointed_exact(&px, &py, budget).map_err(|e| e.to_string())?)
            } else {
                match report.exact {
                    Some(v) => Some(v),
                    None => return Err(report.notes.join("; ")),
                }
            };
            let out = serde_json::json!({
                "pointed": pointed,
                "exact": exact,
                "diam_bound": report.diam_bound,
                "radius_bound": report.radius_bound,
                "mu0_bound": report.mu0_bound,
                "bottleneck0_bound": report.bottleneck0_bound,
                "bottleneck1_bound": report.bottleneck1_bound,
                "pi1_interleaving_bound": report.pi1_interleaving_bound,
                "best_bound": report.best_bound(),
                "notes": report.notes,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(())
        }
        Command::Distance { bottleneck: bn, interleave } => match (bn, interleave) {
            (Some(files), None) => {
                let load = |p: &PathBuf| -> Result<PersistenceDiagram, String> {
                    let text = std::fs::read_to_string(p)
                        .map_err(|e| format!("cannot read {}: {e}", p.display()))?;
                    PersistenceDiagram::from_csv(&text)
                        .map_err(|e| format!("{}: {e}", p.display()))
                };
                let d1 = load(&files[0])?;
                let d2 = load(&files[1])?;
                println!("{}", fmt(bottleneck(&d1, &d2)));
                Ok(())
            }
            (None, Some(files)) => {
                let load = |p: &PathBuf| -> Result<_, String> {
                    let text = std::fs::read_to_string(p)
                        .map_err(|e| format!("cannot read {}: {e}", p.display()))?;
                    let json: IntervalGroupJson = serde_json::from_str(&text)
                        .map_err(|e| format!("malformed JSON in {}: {e}", p.display()))?;
                    json.to_interval_group().map_err(|e| e.to_string())
                };
                let g1 = load(&files[0])?;
                let g2 = load(&files[1])?;
                let v = interleaving_interval_groups(&g1, &g2).map_err(|e| e.to_string())?;
                println!("{}", fmt(v));
                Ok(())
            }
            _ => Err("pass exactly one of --bottleneck or --interleave".into()),
        },
        Command::Verify { suite, seed } => {
            let budget = budget_from_env();
            let Some(reports) = run_suite(&suite, seed, budget) else {
                return Err(format!("unknown suite `{suite}` (expected paper, properties, or all)"));
            };
            let mut failures = 0;
            for r in &reports {
                println!("{} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.details);
                if !r.pass {
                    failures += 1;
                }
            }
            println!("{} passed, {} failed", reports.len() - failures, failures);
            if failures > 0 {
                return Err(format!("{failures} criteria failed"));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // die quietly when stdout closes early (e.g. piped through `head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

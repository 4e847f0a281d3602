//! Command-line surface for the exact Gale-duality and secondary-fan toolkit.
//!
//! Exit codes: 0 on success, 1 on a mathematically negative outcome or bad
//! input (invalid matrix, unknown chamber, reproduction mismatch), 2 on an
//! internal error.

mod plot;
mod reproduce;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use secfan::classify::{classification_report, flip_path, shortest_paths};
use secfan::gale::{
    format_matrix, gale_dual_of_f_with_bound, gale_dual_of_w, parse_matrix, validate_f, validate_w, FMatrix,
    WMatrix,
};
use secfan::linalg::IntMat;
use secfan::mori::{anticanonical_report, enumerate_primitive_collections,
    primitive_collection_report};
use secfan::search::{findings_to_jsonl, hunt_injected, hunt_range, SearchParams};
use secfan::secondary_fan::{
    chamber_report, enumerate_chambers, fan_from_chamber, find_chamber, is_smooth_chamber,
    verify_fan, Chamber, Region,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "secfan", version, about = "Exact Gale duality and secondary-fan analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    F,
    W,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionArg {
    Mov,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotFormat {
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fan matrix
    ValidateF {
        file: PathBuf,
        /// expected dimension (defaults to the row count)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Validate a weight matrix
    ValidateW {
        file: PathBuf,
        /// expected rank (defaults to the row count)
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Gale dual of a fan (f) or weight (w) matrix
    Gale {
        file: PathBuf,
        #[arg(long, value_enum)]
        from: MatrixKind,
        /// per-row coefficient bound for the positive-echelon search
        #[arg(long, default_value_t = secfan::gale::DEFAULT_POSITIVIZE_BOUND)]
        positivize_bound: u64,
    },
    /// Enumerate the chambers of the secondary fan of a weight matrix
    Chambers {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "mov")]
        region: RegionArg,
        #[arg(long)]
        smooth_only: bool,
    },
    /// Maximal cones of the fan attached to a chamber
    Fan {
        file: PathBuf,
        #[arg(long)]
        chamber: String,
    },
    /// Primitive collections of a chamber's fan
    Primitive {
        file: PathBuf,
        #[arg(long)]
        chamber: String,
    },
    /// Classification report of a smooth chamber
    Classify {
        file: PathBuf,
        #[arg(long)]
        chamber: String,
    },
    /// Flip path between two chambers with its wall relations
    Walls {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Anticanonical class and its position report
    Anticanonical {
        file: PathBuf,
        #[arg(long)]
        chamber: String,
    },
    /// Re-run a bundled worked example and diff against its frozen data
    Reproduce {
        #[arg(value_parser = ["ex1", "ex2", "cex4", "qs"])]
        target: String,
        /// family parameter for the qs target
        #[arg(long, default_value_t = 1)]
        s: u64,
    },
    /// Seeded search for smooth chambers interior to the effective cone
    Hunt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value_t = 2)]
        entry_bound: u64,
        /// findings catalog (JSON lines), appended on resume
        #[arg(long)]
        out: PathBuf,
        /// feed the matrices of this file through the filter instead of
        /// drawing candidates
        #[arg(long)]
        inject: Option<PathBuf>,
        /// continue from the checkpoint next to the catalog
        #[arg(long)]
        resume: bool,
    },
    /// Exact affine section of the effective cone, movable cone and chambers
    PlotSection {
        file: PathBuf,
        /// chamber to highlight
        #[arg(long)]
        chamber: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: PlotFormat,
    },
}

/// A mathematically negative outcome (exit code 1), as opposed to an
/// internal error (exit code 2).
#[derive(Debug)]
struct UserError(String);

impl std::fmt::Display for UserError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UserError {}

fn user<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(anyhow::Error::new(UserError(msg.into())))
}

fn read_matrix(path: &PathBuf) -> anyhow::Result<IntMat> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    match parse_matrix(&text) {
        Ok(m) => Ok(m),
        Err(e) => user(format!("{e}")),
    }
}

fn load_w(path: &PathBuf) -> anyhow::Result<WMatrix> {
    let m = read_matrix(path)?;
    let r = m.rows();
    match validate_w(&m, r) {
        Ok(q) => Ok(q),
        Err(errs) => user(format!(
            "not a weight matrix: {}",
            errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
        )),
    }
}

fn dual_pair(path: &PathBuf) -> anyhow::Result<(FMatrix, WMatrix)> {
    let q = load_w(path)?;
    let v = match gale_dual_of_w(&q) {
        Ok(v) => v,
        Err(e) => return user(format!("{e}")),
    };
    Ok((v, q))
}

fn chambers_and_pick<'a>(
    chambers: &'a [Chamber],
    key: &str,
) -> anyhow::Result<&'a Chamber> {
    match find_chamber(chambers, key) {
        Some(c) => Ok(c),
        None => user(format!(
            "unknown chamber `{key}` (use a canonical id or g1..g{})",
            chambers.len()
        )),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::ValidateF { file, n, json } => {
            let m = read_matrix(&file)?;
            let n = n.unwrap_or_else(|| m.rows());
            match validate_f(&m, n) {
                Ok(f) => {
                    if json {
                        print_json(&serde_json::json!({
                            "valid": true,
                            "n": f.n(),
                            "r": f.r(),
                            "reduced": f.reduced,
                            "cf": f.cf,
                        }))?;
                    } else {
                        println!(
                            "valid fan matrix: n={}, r={}, reduced={}, cf={}",
                            f.n(),
                            f.r(),
                            f.reduced,
                            f.cf
                        );
                    }
                    Ok(())
                }
                Err(errs) => {
                    if json {
                        print_json(&serde_json::json!({
                            "valid": false,
                            "violations": errs.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                        }))?;
                    }
                    user(format!(
                        "not a fan matrix: {}",
                        errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
                    ))
                }
            }
        }
        Command::ValidateW { file, r, json } => {
            let m = read_matrix(&file)?;
            let r = r.unwrap_or_else(|| m.rows());
            match validate_w(&m, r) {
                Ok(q) => {
                    if json {
                        print_json(&serde_json::json!({
                            "valid": true,
                            "n": q.n(),
                            "r": q.r(),
                        }))?;
                    } else {
                        println!("valid weight matrix: n={}, r={}", q.n(), q.r());
                    }
                    Ok(())
                }
                Err(errs) => {
                    if json {
                        print_json(&serde_json::json!({
                            "valid": false,
                            "violations": errs.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                        }))?;
                    }
                    user(format!(
                        "not a weight matrix: {}",
                        errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
                    ))
                }
            }
        }
        Command::Gale {
            file,
            from,
            positivize_bound,
        } => {
            let m = read_matrix(&file)?;
            let dual = match from {
                MatrixKind::F => {
                    let f = match validate_f(&m, m.rows()) {
                        Ok(f) => f,
                        Err(errs) => {
                            return user(format!(
                                "not a fan matrix: {}",
                                errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
                            ))
                        }
                    };
                    match gale_dual_of_f_with_bound(&f, positivize_bound) {
                        Ok(q) => q.matrix().clone(),
                        Err(e) => return user(format!("{e}")),
                    }
                }
                MatrixKind::W => {
                    let q = match validate_w(&m, m.rows()) {
                        Ok(q) => q,
                        Err(errs) => {
                            return user(format!(
                                "not a weight matrix: {}",
                                errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
                            ))
                        }
                    };
                    match gale_dual_of_w(&q) {
                        Ok(v) => v.matrix().clone(),
                        Err(e) => return user(format!("{e}")),
                    }
                }
            };
            print!("{}", format_matrix(&dual));
            Ok(())
        }
        Command::Chambers {
            file,
            region,
            smooth_only,
        } => {
            let (v, q) = dual_pair(&file)?;
            let region = match region {
                RegionArg::Mov => Region::Mov,
                RegionArg::All => Region::All,
            };
            let chambers = enumerate_chambers(&q, region);
            let mut reports = Vec::new();
            for (i, c) in chambers.iter().enumerate() {
                let smooth = if region == Region::Mov {
                    Some(is_smooth_chamber(&v, &q, c).map_err(anyhow::Error::new)?)
                } else {
                    None
                };
                if smooth_only && smooth != Some(true) {
                    continue;
                }
                reports.push(chamber_report(c, i + 1, smooth));
            }
            print_json(&reports)
        }
        Command::Fan { file, chamber } => {
            let (v, q) = dual_pair(&file)?;
            let chambers = enumerate_chambers(&q, Region::Mov);
            let gamma = chambers_and_pick(&chambers, &chamber)?;
            let fan = fan_from_chamber(&v, &q, gamma).map_err(anyhow::Error::new)?;
            let report = verify_fan(&v, &fan);
            print_json(&serde_json::json!({
                "chamber": gamma.id,
                "maximal_cones": fan
                    .maximal_cones
                    .iter()
                    .map(|c| c.iter().map(|x| x + 1).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "verify": report,
            }))
        }
        Command::Primitive { file, chamber } => {
            let (v, q) = dual_pair(&file)?;
            let chambers = enumerate_chambers(&q, Region::Mov);
            let gamma = chambers_and_pick(&chambers, &chamber)?;
            let pcs = enumerate_primitive_collections(&v, &q, gamma)
                .map_err(anyhow::Error::new)?;
            let reports: Vec<_> = pcs.iter().map(primitive_collection_report).collect();
            print_json(&reports)
        }
        Command::Classify { file, chamber } => {
            let (v, q) = dual_pair(&file)?;
            let chambers = enumerate_chambers(&q, Region::Mov);
            let gamma = chambers_and_pick(&chambers, &chamber)?;
            match classification_report(&v, &q, gamma) {
                Ok(rep) => print_json(&rep),
                Err(secfan::classify::ClassifyError::NotSmooth) => {
                    user("chamber is not smooth; classification requires a regular fan")
                }
                Err(e) => Err(anyhow::Error::new(e)),
            }
        }
        Command::Walls { file, from, to } => {
            let (_, q) = dual_pair(&file)?;
            let chambers = enumerate_chambers(&q, Region::Mov);
            let a = chambers_and_pick(&chambers, &from)?.clone();
            let b = chambers_and_pick(&chambers, &to)?.clone();
            let path = flip_path(&q, &chambers, &a, &b).map_err(anyhow::Error::new)?;
            let alternatives = shortest_paths(&chambers, &a, &b)
                .map_err(anyhow::Error::new)?
                .len();
            print_json(&serde_json::json!({
                "from": a.id,
                "to": b.id,
                "length": path.len(),
                "crossings": path,
                "shortest_path_count": alternatives,
            }))
        }
        Command::Anticanonical { file, chamber } => {
            let (_, q) = dual_pair(&file)?;
            let chambers = enumerate_chambers(&q, Region::Mov);
            let gamma = chambers_and_pick(&chambers, &chamber)?;
            print_json(&anticanonical_report(&q, gamma))
        }
        Command::Reproduce { target, s } => {
            let outcome = match target.as_str() {
                "ex1" => reproduce::ex1(),
                "ex2" => reproduce::ex2(),
                "cex4" => reproduce::cex4(),
                "qs" => reproduce::qs(s),
                _ => unreachable!("clap restricts the target"),
            };
            match outcome {
                Ok(lines) => {
                    for l in lines {
                        println!("PASS {l}");
                    }
                    println!("reproduce {target}: PASS");
                    Ok(())
                }
                Err(msg) => {
                    println!("reproduce {target}: FAIL");
                    user(msg)
                }
            }
        }
        Command::Hunt {
            n,
            r,
            seed,
            budget,
            entry_bound,
            out,
            inject,
            resume,
        } => {
            let params = SearchParams {
                n,
                r,
                entry_bound,
                max_candidates: budget,
                seed,
            };
            let findings = if let Some(path) = inject {
                let m = read_matrix(&path)?;
                hunt_injected(r, &[m])
            } else {
                let checkpoint = out.with_extension("checkpoint");
                let first = if resume && checkpoint.exists() {
                    let text = std::fs::read_to_string(&checkpoint)?;
                    let v: serde_json::Value = serde_json::from_str(&text)?;
                    v["next_candidate"].as_u64().unwrap_or(0)
                } else {
                    0
                };
                let fs = hunt_range(&params, first, budget);
                std::fs::write(
                    &checkpoint,
                    serde_json::to_string_pretty(&serde_json::json!({
                        "seed": seed,
                        "n": n,
                        "r": r,
                        "entry_bound": entry_bound,
                        "next_candidate": first + budget,
                    }))?,
                )?;
                fs
            };
            let lines = findings_to_jsonl(&params, &findings);
            use std::io::Write;
            let mut fh = std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(&out)
                .with_context(|| format!("cannot open {}", out.display()))?;
            fh.write_all(lines.as_bytes())?;
            println!("{} finding(s) appended to {}", findings.len(), out.display());
            Ok(())
        }
        Command::PlotSection {
            file,
            chamber,
            format,
        } => {
            let (v, q) = dual_pair(&file)?;
            let chambers = enumerate_chambers(&q, Region::Mov);
            let highlight = match &chamber {
                Some(key) => Some(chambers_and_pick(&chambers, key)?.id.clone()),
                None => None,
            };
            match format {
                PlotFormat::Json => {
                    let section = plot::section_json(&v, &q, &chambers, highlight.as_deref())
                        .map_err(|e| anyhow::Error::new(UserError(e)))?;
                    println!("{}", serde_json::to_string_pretty(&section)?);
                }
                PlotFormat::Svg => {
                    if q.r() != 3 {
                        return user("svg output requires rank 3 (use --format json)");
                    }
                    let svg = plot::section_svg(&q, &chambers, highlight.as_deref());
                    println!("{svg}");
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // die quietly when the consumer closes the pipe
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    if let Ok(threads) = std::env::var("SECFAN_THREADS") {
        if let Ok(k) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UserError>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

//! Command-line front end. Exit codes: 0 success (or a check that holds),
//! 1 a check that fails, 2 usage errors, 3 domain errors (bad documents,
//! invalid plans, out-of-range parameters).

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::digraph::{Digraph, DigraphError, VertexWord};
use crate::enumerate::{enumerate_upp_jobs, perm_sweep, EnumerateError, SearchSpec};
use crate::families::{de_bruijn, kautz};
use crate::format::{
    graph_from_json, graph_to_dot, graph_to_json, plan_from_json, spectrum_to_json, FormatError,
};
use crate::iso::{canonical_form, isomorphic, IsoError, MAX_VERTICES};
use crate::modify::{de_bruijn_permutation_modify, ModifyError, PermutationFamily};
use crate::spectral::{char_poly, cospectral, integer_spectrum, ReachabilityKind};

const MAX_GEN_ORDER: usize = 1 << 20;

#[derive(Debug, Error)]
enum AppError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Modify(#[from] ModifyError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(
    name = "cospectra",
    version,
    about = "De Bruijn and Kautz digraphs, spectrum-preserving rewirings, exact checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a family member as a graph document (or DOT)
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
    /// Apply a rewiring plan to a graph, or rewire a De Bruijn block directly
    Modify {
        /// Host graph document (defaults to stdin when a plan is given)
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Rewiring plan document
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Emit DOT instead of a graph document
        #[arg(long)]
        dot: bool,
        #[command(subcommand)]
        preset: Option<ModifyPreset>,
    },
    /// Print the characteristic polynomial and integer spectrum
    Spectrum {
        /// Graph document (defaults to stdin)
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Emit a spectrum document instead of text
        #[arg(long)]
        json: bool,
    },
    /// Decide a property; exits 0 when it holds, 1 when it does not
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Canonically relabel a graph; isomorphic inputs give identical output
    Canon {
        /// Graph document (defaults to stdin)
        graph: Option<PathBuf>,
    },
    /// Exhaustive searches
    Enumerate {
        #[command(subcommand)]
        what: EnumCmd,
    },
    /// Print version and supported problem sizes
    Info,
}

#[derive(Subcommand)]
enum GenCmd {
    #[command(name = "de-bruijn")]
    DeBruijn {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        dot: bool,
    },
    Kautz {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand)]
enum ModifyPreset {
    /// Rewire one De Bruijn block with a family of digit permutations
    #[command(name = "de-bruijn")]
    DeBruijn {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        ell: usize,
        /// Word of length ell-1 selecting the rewired block
        #[arg(long)]
        prefix: String,
        /// Semicolon-separated digit permutations, e.g. "01;10"
        #[arg(long)]
        perms: String,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// A^ell = J (exactly one walk of length ell between every pair)
    Upp {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// A^ell + A^(ell-1) = J
    Kautz {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// A^ell = c J
    Scaled {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Equal characteristic polynomials
    Cospectral { a: PathBuf, b: PathBuf },
    /// Structural isomorphism (labels ignored)
    Isomorphic { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum EnumCmd {
    /// All isomorphism classes with A^ell = J at order d^ell
    Upp {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        ell: usize,
        /// Worker threads (default: COSPECTRA_JOBS or 1)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Sweep all digit-permutation rewirings of one De Bruijn block
    #[command(name = "perm-sweep")]
    PermSweep {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        prefix: String,
        #[arg(long)]
        json: bool,
    },
}

fn read_text(path: Option<&Path>) -> Result<String, AppError> {
    match path {
        Some(p) if p != Path::new("-") => Ok(fs::read_to_string(p)?),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn read_graph(path: Option<&Path>) -> Result<Digraph, AppError> {
    Ok(graph_from_json(&read_text(path)?)?)
}

fn checked_family_order(d: usize, ell: usize, kautz_family: bool) -> Result<usize, AppError> {
    if d < 1 || ell < 1 {
        return Err(AppError::Invalid(format!(
            "degree and length must be at least 1, got d = {d}, ell = {ell}"
        )));
    }
    let base = if kautz_family { d + 1 } else { d };
    let mut n: usize = base;
    for _ in 1..ell {
        n = n
            .checked_mul(d)
            .filter(|&n| n <= MAX_GEN_ORDER)
            .ok_or_else(|| {
                AppError::Invalid(format!(
                    "order exceeds the supported maximum of {MAX_GEN_ORDER} vertices"
                ))
            })?;
    }
    Ok(n)
}

fn default_jobs() -> usize {
    std::env::var("COSPECTRA_JOBS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&j| j >= 1)
        .unwrap_or(1)
}

fn print_graph(g: &Digraph, dot: bool) {
    if dot {
        print!("{}", graph_to_dot(g));
    } else {
        println!("{}", graph_to_json(g));
    }
}

fn bool_exit(value: bool) -> i32 {
    println!("{value}");
    if value {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<i32, AppError> {
    match cli.cmd {
        Cmd::Gen { family } => {
            let (g, dot) = match family {
                GenCmd::DeBruijn { d, ell, dot } => {
                    checked_family_order(d, ell, false)?;
                    (de_bruijn(d, ell), dot)
                }
                GenCmd::Kautz { d, ell, dot } => {
                    checked_family_order(d, ell, true)?;
                    (kautz(d, ell), dot)
                }
            };
            print_graph(&g, dot);
            Ok(0)
        }
        Cmd::Modify {
            graph,
            plan,
            dot,
            preset,
        } => {
            let result = match (preset, plan) {
                (Some(ModifyPreset::DeBruijn {
                    d,
                    ell,
                    prefix,
                    perms,
                }), None) => {
                    checked_family_order(d, ell, false)?;
                    let prefix = VertexWord::parse(&prefix)?;
                    let family = PermutationFamily::parse(&perms)?;
                    de_bruijn_permutation_modify(d, ell, &prefix, &family)?
                }
                (None, Some(plan_path)) => {
                    let host = read_graph(graph.as_deref())?;
                    let plan_text = fs::read_to_string(&plan_path)?;
                    plan_from_json(&host, &plan_text)?.apply()?
                }
                _ => {
                    return Err(AppError::Usage(
                        "pass either --plan (with --graph or stdin) or the de-bruijn preset"
                            .into(),
                    ))
                }
            };
            print_graph(&result, dot);
            Ok(0)
        }
        Cmd::Spectrum { graph, json } => {
            let g = read_graph(graph.as_deref())?;
            let p = char_poly(&g.adjacency_matrix());
            if json {
                println!("{}", spectrum_to_json(&p));
            } else {
                println!("charpoly: {p}");
                println!("spectrum: {}", integer_spectrum(&p));
            }
            Ok(0)
        }
        Cmd::Check { what } => {
            let value = match what {
                CheckCmd::Upp { ell, graph } => {
                    let g = read_graph(graph.as_deref())?;
                    crate::spectral::check_reachability_equation(&g, ell, ReachabilityKind::Upp)
                }
                CheckCmd::Kautz { ell, graph } => {
                    let g = read_graph(graph.as_deref())?;
                    crate::spectral::check_reachability_equation(&g, ell, ReachabilityKind::Kautz)
                }
                CheckCmd::Scaled { ell, c, graph } => {
                    let g = read_graph(graph.as_deref())?;
                    crate::spectral::check_reachability_equation(
                        &g,
                        ell,
                        ReachabilityKind::Scaled(c),
                    )
                }
                CheckCmd::Cospectral { a, b } => {
                    let ga = read_graph(Some(&a))?;
                    let gb = read_graph(Some(&b))?;
                    cospectral(&ga, &gb)
                }
                CheckCmd::Isomorphic { a, b } => {
                    let ga = read_graph(Some(&a))?;
                    let gb = read_graph(Some(&b))?;
                    isomorphic(&ga, &gb)?
                }
            };
            Ok(bool_exit(value))
        }
        Cmd::Canon { graph } => {
            let g = read_graph(graph.as_deref())?;
            let cf = canonical_form(&g)?;
            println!("{}", graph_to_json(&cf.digraph()));
            Ok(0)
        }
        Cmd::Enumerate { what } => match what {
            EnumCmd::Upp { d, ell, jobs, json } => {
                let spec = SearchSpec::upp_full(d, ell);
                let classes = enumerate_upp_jobs(&spec, jobs.unwrap_or_else(default_jobs))?;
                if json {
                    let certs: Vec<String> =
                        classes.iter().map(|c| c.certificate_hex()).collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "d": d,
                            "ell": ell,
                            "classes": classes.len(),
                            "certificates": certs,
                        })
                    );
                } else {
                    println!("classes={}", classes.len());
                    for (i, c) in classes.iter().enumerate() {
                        println!("class {i}: n={} cert={}", c.n(), c.certificate_hex());
                    }
                }
                Ok(0)
            }
            EnumCmd::PermSweep {
                d,
                ell,
                prefix,
                json,
            } => {
                let prefix = VertexWord::parse(&prefix)?;
                let report = perm_sweep(d, ell, &prefix)?;
                if json {
                    let classes: Vec<serde_json::Value> = report
                        .classes
                        .iter()
                        .map(|c| {
                            serde_json::json!({
                                "members": c.members,
                                "isomorphic_to_host": c.isomorphic_to_host,
                                "representative": c.representative.to_string(),
                                "certificate": c.canonical.certificate_hex(),
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "d": report.d,
                            "ell": report.ell,
                            "prefix": report.prefix.to_string(),
                            "families": report.families,
                            "all_cospectral": report.all_cospectral_with_host,
                            "all_reachability": report.all_satisfy_reachability,
                            "classes": classes,
                        })
                    );
                } else {
                    println!(
                        "families={} classes={} cospectral={} reachability={}",
                        report.families,
                        report.classes.len(),
                        report.all_cospectral_with_host,
                        report.all_satisfy_reachability
                    );
                    for (i, c) in report.classes.iter().enumerate() {
                        println!(
                            "class {i}: members={} host={} perms={}",
                            c.members, c.isomorphic_to_host, c.representative
                        );
                    }
                }
                Ok(0)
            }
        },
        Cmd::Info => {
            println!("cospectra {}", env!("CARGO_PKG_VERSION"));
            println!("families: de-bruijn, kautz (orders up to {MAX_GEN_ORDER})");
            println!("isomorphism and canonical forms: up to {MAX_VERTICES} vertices");
            println!("full unique-walk search: d = 2, ell <= 3");
            println!("permutation sweeps: d <= 3, ell <= 4");
            Ok(0)
        }
    }
}

/// Entry point for the `cospectra` binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            3
        }
    }
}

//! `oddhex` command-line tool.
//!
//! Exit codes: 0 success, 1 precondition or verification failure, 2 I/O or
//! parse error, 3 internal defect.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use oddhex::cancel::CancelToken;
use oddhex::certificate::{verify_certificate, Certificate};
use oddhex::connectivity::{is_internally_4_connected, is_k_connected, ConnectivityWitness, I4cViolation};
use oddhex::dot::emit_dot;
use oddhex::generators::{named, random_cubic_instance, random_instance, Family};
use oddhex::graph::{parse_edge_list, parse_graph6, to_edge_list, to_graph6, BipartiteGraph, GraphError};
use oddhex::improver::{find_odd_hex_traced, FindError, ImproveError};
use oddhex::oracle::{enumerate_hexes, odd_hex_exists_bruteforce};
use oddhex::planarity::{is_planar, Embedding, Planarity};

const DEFAULT_MAX_N: usize = 64;
const ORACLE_MAX_N: usize = 14;

#[derive(Parser)]
#[command(name = "oddhex", version, about = "Find and verify odd K3,3 subdivisions in bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// `graph6` when the text starts with `>>graph6<<` or the file ends in
    /// `.g6`, edge list otherwise.
    Auto,
    EdgeList,
    Graph6,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OracleMode {
    Hexes,
    Oddhex,
    Compare,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    K33,
    K44,
    K55m,
    Q3,
    Heawood,
    Grid,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report bipartiteness, connectivity and planarity with witnesses.
    Check {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
    },
    /// Find an odd hex and write its certificate.
    Find {
        input: PathBuf,
        /// Certificate output file; stdout when absent.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
        /// Also write the graph with the hex highlighted in DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a certificate against a graph.
    Verify {
        graph: PathBuf,
        certificate: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
    },
    /// Exhaustive reference computations for small graphs.
    Oracle {
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: OracleMode,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
        /// Allow more than 14 vertices.
        #[arg(long)]
        allow_large: bool,
        /// Stop hex enumeration after this many hexes.
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
    },
    /// Write a named or random graph.
    Gen {
        #[arg(long, value_enum, conflicts_with_all = ["random", "cubic"])]
        family: Option<FamilyName>,
        /// Grid width and height, for `--family grid`.
        #[arg(num_args = 0..=2)]
        dims: Vec<usize>,
        /// Random dense instance: vertex count and seed.
        #[arg(long, num_args = 2, value_names = ["N", "SEED"], conflicts_with = "cubic")]
        random: Option<Vec<u64>>,
        /// Random cubic instance: vertex count and seed.
        #[arg(long, num_args = 2, value_names = ["N", "SEED"])]
        cubic: Option<Vec<u64>>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "edge-list")]
        format: Format,
    },
}

/// A failure with its exit code.
struct Fail(u8, String);

type Res = Result<(), Fail>;

fn io(path: &Path, e: std::io::Error) -> Fail {
    Fail(2, format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| io(path, e))
}

fn write(path: &Path, text: &str) -> Res {
    std::fs::write(path, text).map_err(|e| io(path, e))
}

fn max_n() -> usize {
    std::env::var("ODDHEX_MAX_N").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_N)
}

/// Parses a graph; odd cycles are a precondition failure, other problems a
/// parse error.
fn load(path: &Path, format: Format) -> Result<BipartiteGraph, Fail> {
    let text = read(path)?;
    let g6 = match format {
        Format::Graph6 => true,
        Format::EdgeList => false,
        Format::Auto => text.trim_start().starts_with(">>graph6<<") || path.extension().is_some_and(|e| e == "g6"),
    };
    let parsed = if g6 { parse_graph6(&text) } else { parse_edge_list(&text) };
    let g = parsed.map_err(|e| match e {
        GraphError::NotBipartite { cycle } => Fail(1, format!("not bipartite: odd cycle {}", join(&cycle))),
        other => Fail(2, format!("{}: {other}", path.display())),
    })?;
    if g.n() > max_n() {
        return Err(Fail(1, format!("graph has {} vertices; ODDHEX_MAX_N is {}", g.n(), max_n())));
    }
    Ok(g)
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn embedding_lines(e: &Embedding) -> String {
    e.rotation.iter().enumerate().map(|(v, r)| format!("  {v}: {}\n", join(r))).collect()
}

fn violation_text(v: &I4cViolation) -> String {
    match v {
        I4cViolation::TooFewVertices(n) => format!("fewer than five vertices ({n})"),
        I4cViolation::NotThreeConnected(ConnectivityWitness::TooFewVertices { n }) => format!("not 3-connected: only {n} vertices"),
        I4cViolation::NotThreeConnected(ConnectivityWitness::Cut(c)) if c.is_empty() => "not 3-connected: disconnected".into(),
        I4cViolation::NotThreeConnected(ConnectivityWitness::Cut(c)) => format!("not 3-connected: cut {}", join(c)),
        I4cViolation::Separation(s) => {
            format!("separation A = {}; B = {}; C = {}", join(&s.a), join(&s.b), join(&s.c))
        }
    }
}

fn check(input: &Path, format: Format) -> Res {
    let g = load(input, format)?;
    let (l, r) = g.part_sizes();
    println!("vertices: {}", g.n());
    println!("edges: {}", g.m());
    println!("bipartite: yes ({l} + {r})");
    let mut ok = true;
    match is_k_connected(&g, 3) {
        Ok(()) => println!("3-connected: yes"),
        Err(w) => {
            ok = false;
            println!("3-connected: no ({})", violation_text(&I4cViolation::NotThreeConnected(w)));
        }
    }
    match is_internally_4_connected(&g) {
        Ok(()) => println!("internally 4-connected: yes"),
        Err(v) => {
            ok = false;
            println!("internally 4-connected: no ({})", violation_text(&v));
        }
    }
    match is_planar(&g) {
        Planarity::NonPlanar => println!("planar: no"),
        Planarity::Planar(e) => {
            ok = false;
            print!("planar: yes; embedding:\n{}", embedding_lines(&e));
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Fail(1, "preconditions fail".into()))
    }
}

fn find_fail(e: FindError) -> Fail {
    match e {
        FindError::PlanarInput(emb) => Fail(1, format!("planar; embedding:\n{}", embedding_lines(&emb))),
        FindError::NotInternally4Connected(v) => Fail(1, format!("not internally 4-connected: {}", violation_text(&v))),
        FindError::NotBipartite { cycle } => Fail(1, format!("not bipartite: odd cycle {}", join(&cycle))),
        FindError::Malformed(e) => Fail(2, e.to_string()),
        FindError::Cancelled => Fail(1, "cancelled".into()),
        FindError::Improve(ImproveError::CaseExhausted { stage, tried }) => Fail(
            3,
            format!("defect: no case improved the hex at stage {}; tried:\n  {}", stage.tag(), tried.join("\n  ")),
        ),
        e @ (FindError::SeedExhausted | FindError::Improve(_)) => Fail(3, format!("defect: {e}")),
    }
}

fn find(input: &Path, certificate: Option<&Path>, format: Format, dot: Option<&Path>) -> Res {
    let g = load(input, format)?;
    let t = find_odd_hex_traced(&g, &CancelToken::new()).map_err(find_fail)?;
    let cert = Certificate::new(&g, &t.seed, &t.hex, &t.steps);
    if let Err(e) = verify_certificate(&g, &cert) {
        return Err(Fail(3, format!("defect: produced certificate fails verification: {e}")));
    }
    let summary = format!("odd hex found: odd_count = {}, steps = {}", t.hex.odd_count(), t.steps.len());
    match certificate {
        Some(path) => {
            write(path, &cert.to_json())?;
            println!("{summary}");
        }
        None => {
            print!("{}", cert.to_json());
            eprintln!("{summary}");
        }
    }
    if let Some(path) = dot {
        write(path, &emit_dot(&g, Some(&t.hex)).map_err(|e| Fail(3, format!("defect: {e}")))?)?;
    }
    Ok(())
}

fn verify(graph: &Path, certificate: &Path, format: Format) -> Res {
    let g = load(graph, format)?;
    let text = read(certificate)?;
    let cert = Certificate::from_json(&text).map_err(|e| Fail(2, format!("{}: {e}", certificate.display())))?;
    verify_certificate(&g, &cert).map_err(|e| Fail(1, format!("fail: {e}")))?;
    println!("ok");
    Ok(())
}

fn oracle(input: &Path, mode: OracleMode, format: Format, allow_large: bool, limit: usize) -> Res {
    let g = load(input, format)?;
    if g.n() > ORACLE_MAX_N && !allow_large {
        return Err(Fail(1, format!("TooLarge: {} vertices exceed {ORACLE_MAX_N}; pass --allow-large", g.n())));
    }
    match mode {
        OracleMode::Hexes => {
            let hexes = enumerate_hexes(&g, limit);
            let mut hist = [0usize; 10];
            for h in &hexes {
                hist[h.odd_count()] += 1;
            }
            println!("hexes: {}{}", hexes.len(), if hexes.len() >= limit { " (limit reached)" } else { "" });
            for (k, c) in hist.iter().enumerate().filter(|(_, &c)| c > 0) {
                println!("  odd_count {k}: {c}");
            }
        }
        OracleMode::Oddhex => {
            if let Planarity::Planar(_) = is_planar(&g) {
                println!("none (planar)");
            } else {
                match odd_hex_exists_bruteforce(&g) {
                    Some(h) => println!("odd hex: feet {}", join(&h.feet)),
                    None => println!("none"),
                }
            }
        }
        OracleMode::Compare => {
            let brute = odd_hex_exists_bruteforce(&g);
            match find_odd_hex_traced(&g, &CancelToken::new()) {
                Ok(t) => {
                    let cert = Certificate::new(&g, &t.seed, &t.hex, &t.steps);
                    verify_certificate(&g, &cert).map_err(|e| Fail(3, format!("defect: certificate fails: {e}")))?;
                    if brute.is_none() {
                        return Err(Fail(3, "mismatch: finder found an odd hex, oracle found none".into()));
                    }
                    println!("agree: odd hex exists");
                }
                Err(e @ (FindError::PlanarInput(_) | FindError::NotInternally4Connected(_))) => {
                    let found = if brute.is_some() { "exists" } else { "none" };
                    println!("finder not applicable ({}); oracle: {found}", first_line(&e.to_string()));
                }
                Err(e) => {
                    let f = find_fail(e);
                    return Err(Fail(f.0, format!("mismatch: oracle {}, finder failed: {}", if brute.is_some() { "found an odd hex" } else { "found none" }, f.1)));
                }
            }
        }
    }
    Ok(())
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

fn gen(
    family: Option<FamilyName>,
    dims: &[usize],
    random: Option<&[u64]>,
    cubic: Option<&[u64]>,
    out: Option<&Path>,
    format: Format,
) -> Res {
    let bad = |e: oddhex::generators::GenError| Fail(1, e.to_string());
    let g = match (family, random, cubic) {
        (Some(f), None, None) => {
            let fam = match f {
                FamilyName::K33 => Family::K33,
                FamilyName::K44 => Family::K44,
                FamilyName::K55m => Family::K55m,
                FamilyName::Q3 => Family::Q3,
                FamilyName::Heawood => Family::Heawood,
                FamilyName::Grid => match dims {
                    [w, h] => Family::Grid { w: *w, h: *h },
                    _ => return Err(Fail(2, "grid needs a width and a height".into())),
                },
            };
            named(&fam).map_err(bad)?
        }
        (None, Some([n, seed]), None) => random_instance(*n as usize, *seed, 100_000).map_err(bad)?,
        (None, None, Some([n, seed])) => random_cubic_instance(*n as usize, *seed, 100_000).map_err(bad)?,
        _ => return Err(Fail(2, "give exactly one of --family, --random, --cubic".into())),
    };
    let text = match format {
        Format::Graph6 => format!("{}\n", to_graph6(&g)),
        _ => to_edge_list(&g),
    };
    match out {
        Some(p) => write(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Check { input, format } => check(input, *format),
        Cmd::Find { input, certificate, format, dot } => find(input, certificate.as_deref(), *format, dot.as_deref()),
        Cmd::Verify { graph, certificate, format } => verify(graph, certificate, *format),
        Cmd::Oracle { input, mode, format, allow_large, limit } => oracle(input, *mode, *format, *allow_large, *limit),
        Cmd::Gen { family, dims, random, cubic, out, format } => {
            gen(*family, dims, random.as_deref(), cubic.as_deref(), out.as_deref(), *format)
        }
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}

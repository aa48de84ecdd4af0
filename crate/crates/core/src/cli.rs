//! Command-line front end. Exit codes: 0 success, 1 a verification or
//! claim failure, 2 invalid input.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::families::{Family, FamilySpec};
use crate::io::{
    graph_from_json, graph_to_dot, graph_to_json, schedule_from_csv, schedule_from_json, schedule_to_csv,
    schedule_to_json,
};
use crate::schemes::Schedule;
use crate::schemes::{validate_schedule, SchemeKind};
use crate::solver::{broadcast_time, exact_broadcast_time, DEFAULT_CAP};
use crate::verify::{identify_family, table_row, verify_graph, CheckSet, GraphCheckOptions, Verdict};
use crate::LabeledGraph;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "spbcast", version, about = "Series-parallel and planar broadcast graph workbench")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScheduleFormat {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Build a family instance.
    Gen {
        family: String,
        #[arg(long)]
        k: u32,
        /// vertex count (eb, pb, rb)
        #[arg(long)]
        n: Option<usize>,
        /// RNG seed (k3sp; k is the number of operations)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a scheme's schedule from one originator.
    Schedule {
        graph: PathBuf,
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        origin: usize,
        #[arg(long, value_enum, default_value = "csv")]
        out: ScheduleFormat,
        /// write to a file instead of stdout
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Replay a schedule (CSV, or JSON by extension) under the telephone model.
    Validate {
        graph: PathBuf,
        schedule: PathBuf,
        /// originator, when the CSV alone does not determine it
        #[arg(long)]
        origin: Option<usize>,
    },
    /// Broadcast time: a scheme upper bound, or exact with --exact.
    Btime {
        graph: PathBuf,
        #[arg(long)]
        origin: Option<usize>,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// write the witness schedule CSV here
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Run structural and broadcast checks; one JSON report per line.
    Verify {
        graph: PathBuf,
        #[arg(long, default_value = "sp,planar,biconnected,degrees,distances,scheme,exact")]
        checks: String,
        #[arg(long, value_parser = parse_pair)]
        terminals: Option<(usize, usize)>,
        #[arg(long)]
        try_all_pairs: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Claims table as CSV.
    Table {
        #[arg(long)]
        families: String,
        #[arg(long, value_parser = parse_range)]
        k: (u32, u32),
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected S,T")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let (a, b): (u32, u32) = (a.parse().map_err(|e| format!("{e}"))?, b.parse().map_err(|e| format!("{e}"))?);
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

/// Input problems; always exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

type CliResult = Result<i32, InputError>;

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<LabeledGraph, InputError> {
    graph_from_json(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), InputError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| InputError(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Upper bound from the recognised family's scheme (greedy otherwise),
/// worst over all originators unless one is given.
fn scheme_upper(g: &LabeledGraph, origin: Option<usize>) -> Result<(usize, usize, &'static str, Schedule), InputError> {
    let (kind, how) = match identify_family(g).map(|s| s.family) {
        Some(Family::Bt) => (SchemeKind::Binomial, "binomial scheme"),
        Some(Family::Mb) => (SchemeKind::Mb, "mb scheme"),
        Some(Family::B | Family::Eb | Family::Pb) => (SchemeKind::Composed, "composed scheme"),
        Some(Family::Rb) => (SchemeKind::Relaxed, "relaxed scheme"),
        Some(Family::Ab) => (SchemeKind::Ab, "ab scheme"),
        Some(Family::K3sp) | None => (SchemeKind::Greedy, "greedy"),
    };
    let origins: Vec<usize> = match origin {
        Some(o) => vec![o],
        None => (0..g.n()).collect(),
    };
    let mut best: Option<(usize, usize, Schedule)> = None;
    for v in origins {
        let s = kind.run(g, v)?;
        let r = validate_schedule(&g.graph, &s).map_err(|e| InputError(format!("{how} from {v}: {e}")))?;
        if best.as_ref().is_none_or(|b| r > b.0) {
            best = Some((r, v, s));
        }
    }
    let (r, v, s) = best.ok_or_else(|| InputError("empty graph".into()))?;
    Ok((r, v, how, s))
}

/// Parses `args` (without the program name) and runs the verb.
pub fn run_cli<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let argv = std::iter::once("spbcast".to_string()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli.verb) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

fn dispatch(verb: Verb) -> CliResult {
    match verb {
        Verb::Gen { family, k, n, seed, format, out } => {
            let family: Family = family.parse()?;
            let mut spec = FamilySpec::new(family, k);
            if let Some(n) = n {
                spec = spec.with_n(n);
            }
            if let Some(seed) = seed {
                spec = spec.with_seed(seed);
            }
            let g = spec.build()?;
            let text = match format {
                GraphFormat::Json => graph_to_json(&g),
                GraphFormat::Dot => graph_to_dot(&g),
            };
            emit(out.as_deref(), &text)?;
            eprintln!("{family} k={k}: {} vertices, {} edges", g.n(), g.graph.edge_count());
            Ok(EXIT_OK)
        }
        Verb::Schedule { graph, scheme, origin, out, file } => {
            let g = load_graph(&graph)?;
            let kind: SchemeKind = scheme.parse()?;
            let s = kind.run(&g, origin)?;
            let text = match out {
                ScheduleFormat::Csv => schedule_to_csv(&s),
                ScheduleFormat::Json => schedule_to_json(&s),
            };
            emit(file.as_deref(), &text)?;
            match validate_schedule(&g.graph, &s) {
                Ok(r) => {
                    eprintln!("{scheme} from {origin}: {r} rounds, {} calls", s.call_count());
                    Ok(EXIT_OK)
                }
                Err(v) => {
                    eprintln!("{scheme} from {origin}: invalid schedule: {v}");
                    Ok(EXIT_CLAIM)
                }
            }
        }
        Verb::Validate { graph, schedule, origin } => {
            let g = load_graph(&graph)?;
            let text = read(&schedule)?;
            let mut s = if schedule.extension().is_some_and(|e| e == "json") {
                schedule_from_json(&text)?
            } else {
                schedule_from_csv(&text, origin)?
            };
            if let Some(o) = origin {
                s.origin = o;
            }
            match validate_schedule(&g.graph, &s) {
                Ok(r) => {
                    println!("valid: {r} rounds from {}", s.origin);
                    Ok(EXIT_OK)
                }
                Err(v) => {
                    println!("{}", serde_json::to_string(&v)?);
                    eprintln!("invalid: {v}");
                    Ok(EXIT_CLAIM)
                }
            }
        }
        Verb::Btime { graph, origin, exact, cap, witness } => {
            let g = load_graph(&graph)?;
            if let Some(o) = origin {
                if o >= g.n() {
                    return Err(InputError(format!("origin {o} out of range for n = {}", g.n())));
                }
            }
            let (rounds, worst, how, sched) = if exact {
                let worst = match origin {
                    Some(o) => o,
                    None => broadcast_time(&g.graph, cap)?.1,
                };
                let (r, s) = exact_broadcast_time(&g.graph, worst, cap)?;
                (r, worst, "exact", s)
            } else {
                let (r, worst, how, s) = scheme_upper(&g, origin)?;
                (r, worst, how, s)
            };
            if let Some(p) = witness {
                emit(Some(&p), &schedule_to_csv(&sched))?;
            }
            println!("{rounds}");
            eprintln!("broadcast time {rounds} ({how}, origin {worst})");
            Ok(EXIT_OK)
        }
        Verb::Verify { graph, checks, terminals, try_all_pairs, cap } => {
            let g = load_graph(&graph)?;
            let checks = CheckSet::parse(&checks)?;
            let reports = verify_graph(&g, &checks, GraphCheckOptions { terminals, try_all_pairs, cap })?;
            for r in &reports {
                println!("{r}");
            }
            let count = |v| reports.iter().filter(|r| r.verdict == v).count();
            let (pass, fail, skip) = (count(Verdict::Pass), count(Verdict::Fail), count(Verdict::Skipped));
            let family =
                identify_family(&g).map_or("unrecognised graph".to_string(), |s| format!("{} k={}", s.family, s.k));
            eprintln!("{family}: {pass} pass, {fail} fail, {skip} skipped");
            Ok(if fail == 0 { EXIT_OK } else { EXIT_CLAIM })
        }
        Verb::Table { families, k: (lo, hi), out, cap } => {
            let families: Vec<Family> = families.split(',').map(|f| f.trim().parse()).collect::<crate::Result<_>>()?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "family",
                "k",
                "n",
                "claimed_bound",
                "scheme_rounds_worst",
                "exact_rounds",
                "sp",
                "planar",
            ])?;
            let mut violations = 0;
            for &f in &families {
                for k in lo..=hi {
                    let row = table_row(&FamilySpec::new(f, k), cap)?;
                    if row.scheme_rounds_worst > row.claimed_bound
                        || row.exact_rounds.is_some_and(|e| e > row.claimed_bound)
                    {
                        violations += 1;
                    }
                    w.write_record([
                        f.tag().to_string(),
                        k.to_string(),
                        row.n.to_string(),
                        row.claimed_bound.to_string(),
                        row.scheme_rounds_worst.to_string(),
                        row.exact_rounds.map_or("scheme-only".to_string(), |e| e.to_string()),
                        row.sp.to_string(),
                        row.planar.to_string(),
                    ])?;
                }
            }
            let text = String::from_utf8(w.into_inner().map_err(|e| InputError(e.to_string()))?)?;
            emit(out.as_deref(), &text)?;
            let rows = families.len() * (hi - lo + 1) as usize;
            eprintln!("{rows} rows, {violations} above the claimed bound");
            Ok(if violations == 0 { EXIT_OK } else { EXIT_CLAIM })
        }
    }
}

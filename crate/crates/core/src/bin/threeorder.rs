use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use threeorder::axioms::check_interiority;
use threeorder::classify::{census_stabilized, classify, enumerate_abstract_t3o, is_incremental};
use threeorder::construct::{
    amplify, build_fast_growing_points, convex_ngon, square_center, subset_density_check, CopyMode,
};
use threeorder::geometry::{is_general_position, order_type};
use threeorder::io::{map_from_json, map_to_json, points_from_json, points_to_json, pretty, report_to_json};
use threeorder::Error;

#[derive(Parser)]
#[command(
    name = "threeorder",
    version,
    about = "Order types, 3-order axioms and fast-growing witnesses"
)]
struct Cli {
    /// Worker threads for census and enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the order type of a points file.
    Ordertype {
        points: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check the interiority condition on a map file.
    Validate {
        map: PathBuf,
        /// Require a total map (no zero triples).
        #[arg(long, conflicts_with = "partial")]
        total: bool,
        /// Allow zero triples (the default).
        #[arg(long)]
        partial: bool,
    },
    /// Classify a map file within the decidable part of the hierarchy.
    Classify {
        map: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Order types of general-position subsets of an integer grid.
    Census {
        #[arg(long)]
        n: usize,
        /// Largest grid side.
        #[arg(long)]
        grid: usize,
        /// Smallest grid side; every size up to --grid is run and compared.
        #[arg(long)]
        min_grid: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build an explicit point set.
    Construct {
        #[command(subcommand)]
        which: Construction,
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check that every subset of an amplified set of the given size
    /// contains a copy of the seed.
    DensityCheck {
        points: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        subset_size: usize,
        #[arg(long, value_enum, default_value = "structural")]
        mode: Mode,
    },
    /// Count abstract total 3-orders on n labeled elements.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// Points (i, base^pi(i)).
    Fastgrow {
        /// 1-based height permutation, comma separated.
        #[arg(long, value_delimiter = ',')]
        pi: Vec<usize>,
        /// Defaults to 2n.
        #[arg(long)]
        base: Option<u64>,
    },
    /// Convex n-gon on the parabola y = x^2.
    Ngon {
        #[arg(long)]
        n: usize,
    },
    /// Square corners plus center.
    SquareCenter,
    /// Recursive amplification of a seed point set.
    Amplify {
        #[arg(long)]
        k: u32,
        points: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Structural,
    OrderType,
}

/// Exit status plus message.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) => 2,
            Error::NotTotal => 4,
            Error::TooLarge(_) => 5,
            _ => 3,
        };
        Failure(code, e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(2, format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(3, format!("cannot write {}: {e}", path.display())))
}

/// Writes `json` to `out`, or to stdout with `summary` moved to stderr.
fn emit(out: Option<&Path>, json: &str, summary: &str) -> Result<(), Failure> {
    match out {
        Some(p) => {
            write(p, json)?;
            print!("{summary}");
        }
        None => {
            print!("{json}");
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn cmd_ordertype(points: &Path, out: Option<&Path>) -> CmdResult {
    let ps = points_from_json(&read(points)?)?;
    let map = order_type(&ps);
    let summary = format!(
        "n: {}\nzero triples: {}\ngeneral position: {}\n",
        ps.len(),
        map.zero_triples().len(),
        is_general_position(&ps)
    );
    emit(out, &map_to_json(&map, None), &summary)?;
    Ok(0)
}

fn cmd_validate(path: &Path, total: bool) -> CmdResult {
    let (map, _) = map_from_json(&read(path)?)?;
    if total && !map.is_total() {
        return Err(Failure(
            4,
            format!("--total given but {} triples are zero", map.zero_triples().len()),
        ));
    }
    match check_interiority(&map) {
        Ok(()) => {
            println!("OK");
            Ok(0)
        }
        Err(cx) => {
            let [abd, bcd, cad] = cx.premise_values;
            println!(
                "VIOLATION (a, b, c, d) = ({}, {}, {}, {}): o(abd) = {abd}, o(bcd) = {bcd}, o(cad) = {cad}, o(abc) = {}",
                cx.a, cx.b, cx.c, cx.d, cx.conclusion_value
            );
            Ok(1)
        }
    }
}

fn cmd_classify(path: &Path, out: Option<&Path>) -> CmdResult {
    let (map, _) = map_from_json(&read(path)?)?;
    let report = classify(&map)?;
    let summary = format!(
        "p3o: {}, t3o: {}, convex: {}, fast-growing: {}\n",
        report.is_p3o, report.is_t3o, report.is_convex_type, report.is_fast_growing
    );
    emit(out, &report_to_json(&report), &summary)?;
    Ok(0)
}

fn cmd_census(n: usize, grid: usize, min_grid: Option<usize>, out: &Path) -> CmdResult {
    let lo = min_grid.unwrap_or(grid);
    if lo > grid {
        return Err(Failure(2, "--min-grid exceeds --grid".into()));
    }
    let result = census_stabilized(n, lo..=grid)?;
    if lo == grid {
        eprintln!("warning: single grid size; completeness of the census is not checked");
    } else if !result.stable {
        eprintln!(
            "warning: class set still changing at the largest grid sizes {:?}; census may be incomplete",
            result.counts()
        );
    }
    fs::create_dir_all(out).map_err(|e| Failure(3, format!("cannot create {}: {e}", out.display())))?;
    let census = result.last();
    let mut entries = Vec::new();
    let (mut fast, mut convex) = (0, 0);
    for class in census.classes.values() {
        let hex = class.code.hex();
        let report = classify(&class.map)?;
        let seq_ok = report.sees.as_ref().map(|s| is_incremental(s));
        fast += report.is_fast_growing as usize;
        convex += report.is_convex_type as usize;
        write(&out.join(format!("{hex}.map.json")), &map_to_json(&class.map, None))?;
        write(
            &out.join(format!("{hex}.points.json")),
            &points_to_json(&class.point_set().to_rational()),
        )?;
        write(&out.join(format!("{hex}.report.json")), &report_to_json(&report))?;
        entries.push(json!({
            "code": hex,
            "chiral": class.chiral,
            "convex": report.is_convex_type,
            "fast_growing": report.is_fast_growing,
            "sees_incremental": seq_ok,
            "realization": class.realization,
        }));
    }
    let index = json!({
        "n": n,
        "grid": grid,
        "runs": result.runs.iter().map(|c| json!({"grid": c.grid, "classes": c.class_count()})).collect::<Vec<_>>(),
        "stable": result.stable,
        "classes": census.class_count(),
        "chiral_classes": census.chiral_class_count(),
        "fast_growing": fast,
        "convex": convex,
        "entries": entries,
    });
    write(&out.join("index.json"), &pretty(&index))?;
    println!(
        "n: {n}, grid: {grid}, classes: {}, fast-growing: {fast}, stable: {}",
        census.class_count(),
        result.stable
    );
    Ok(0)
}

fn cmd_construct(which: &Construction, out: Option<&Path>) -> CmdResult {
    let (ps, summary) = match which {
        Construction::Fastgrow { pi, base } => {
            let zero_based = pi
                .iter()
                .map(|&h| h.checked_sub(1).ok_or_else(|| Failure(2, "--pi is 1-based".into())))
                .collect::<Result<Vec<_>, _>>()?;
            if !threeorder::perm::is_permutation(&zero_based) {
                return Err(Failure(
                    2,
                    format!("--pi {pi:?} is not a permutation of 1..{}", pi.len()),
                ));
            }
            let base = base.unwrap_or(2 * pi.len() as u64).max(2);
            let ps = build_fast_growing_points(&zero_based, base)?;
            let s = format!("{} points, base {base}, verified against the rule\n", ps.len());
            (ps, s)
        }
        Construction::Ngon { n } => {
            let ps = convex_ngon(*n)?;
            (ps, format!("{n} points in convex position\n"))
        }
        Construction::SquareCenter => (square_center(), "5 points: square corners and center\n".to_string()),
        Construction::Amplify { k, points } => {
            let seed = points_from_json(&read(points)?)?;
            let amp = amplify(&seed, *k)?;
            let s = format!(
                "{} points, implied alpha = {}, copy-free subsets have at most {} points\n",
                amp.len(),
                amp.implied_alpha(),
                amp.density_threshold()
            );
            (amp.points, s)
        }
    };
    emit(out, &points_to_json(&ps), &summary)?;
    Ok(0)
}

fn cmd_density(points: &Path, k: u32, subset_size: usize, mode: Mode) -> CmdResult {
    let seed = points_from_json(&read(points)?)?;
    let amp = amplify(&seed, k)?;
    if subset_size > amp.len() {
        return Err(Failure(
            2,
            format!("subset size {subset_size} exceeds the {} amplified points", amp.len()),
        ));
    }
    let mode = match mode {
        Mode::Structural => CopyMode::Structural,
        Mode::OrderType => CopyMode::AnyOrderType,
    };
    let outcome = subset_density_check(&amp, subset_size, mode)?;
    println!(
        "points: {}, subset size: {subset_size}, threshold: {}, subsets: {}",
        amp.len(),
        amp.density_threshold(),
        outcome.subsets_checked
    );
    match outcome.failing_subset {
        None => {
            println!("true");
            Ok(0)
        }
        Some(s) => {
            println!("false");
            println!("copy-free subset: {s:?}");
            Ok(1)
        }
    }
}

fn cmd_enumerate(n: usize) -> CmdResult {
    let e = enumerate_abstract_t3o(n)?;
    println!("{}", serde_json::to_string(&e).expect("serializable"));
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure(3, format!("cannot start thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Ordertype { points, out } => cmd_ordertype(points, out.as_deref()),
        Command::Validate { map, total, partial: _ } => cmd_validate(map, *total),
        Command::Classify { map, out } => cmd_classify(map, out.as_deref()),
        Command::Census { n, grid, min_grid, out } => cmd_census(*n, *grid, *min_grid, out),
        Command::Construct { which, out } => cmd_construct(which, out.as_deref()),
        Command::DensityCheck {
            points,
            k,
            subset_size,
            mode,
        } => cmd_density(points, *k, *subset_size, *mode),
        Command::Enumerate { n } => cmd_enumerate(*n),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

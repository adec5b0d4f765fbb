//! Command-line front end.
//!
//! Exit codes: 0 success or equilibrium found, 1 no equilibrium (or the
//! profile is not one), 2 input or usage error, 3 a solver produced a
//! profile that failed re-verification.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::bench::{run_bench, write_csv, BenchConfig, Family, FamilyParams};
use crate::error::{Error, Result};
use crate::game::{verify_equilibrium, BimatrixGame, Player, Verdict};
use crate::graph::{build_graph, max_degree};
use crate::io::{game_to_json, parse_game, parse_profile, Metadata, ProfileDocument};
use crate::oracle::{check_structure, oracle_find, SubmatrixCase};
use crate::pattern::ValueAlphabet;
use crate::rational::{format_rational, Rational};
use crate::solve::{recheck, run_solver, Algorithm};
use crate::sparse::validate_sparsity;
use crate::support::baseline_lp_calls;
use crate::unbalanced::column_classes;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Largest support sweep the oracle subcommand will attempt.
const ORACLE_LIMIT: u128 = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "bimatrix", version, about = "Exact equilibria of bimatrix games with small supports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find an equilibrium with supports bounded by --max-support.
    Solve {
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        #[arg(long, short = 'k')]
        max_support: usize,
        /// Game file; standard input when omitted.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Profile file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print work counters to standard error.
        #[arg(long)]
        stats: bool,
    },
    /// Check whether a profile is an equilibrium of a game.
    Verify {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        profile: PathBuf,
    },
    /// Exhaustive equilibrium list with structure report, for small games.
    Oracle {
        #[arg(long, short = 'k')]
        max_support: usize,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a seeded random game.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print dimensions and structural parameters of a game.
    Stats {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Run solvers over seeded instances and write a CSV report.
    Bench {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, short = 'k', default_value_t = 2)]
        max_support: usize,
        #[arg(long, default_value_t = 5)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "algorithm", value_enum, default_values_t = [Algorithm::Sparse, Algorithm::Baseline])]
        algorithms: Vec<Algorithm>,
        /// Execute the baseline only if its projected support count is at most this.
        #[arg(long, default_value_t = 1_000_000)]
        baseline_limit: u128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_enum, default_value_t = Family::Sparse)]
    family: Family,
    /// Strategies per player (columns for the unbalanced family).
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Row count for the unbalanced family.
    #[arg(long, default_value_t = 2)]
    rows: usize,
    /// Sparsity, or alphabet size for the unbalanced and alphabet families.
    #[arg(long, short = 'l', default_value_t = 2)]
    l: usize,
    /// Probability of a 1 in win-lose games.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
}

impl FamilyArgs {
    fn params(&self) -> FamilyParams {
        FamilyParams {
            family: self.family,
            n: self.n,
            rows: self.rows,
            l: self.l,
            density: self.density,
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_input(&mut self, path: &Option<PathBuf>) -> Result<String> {
        match path {
            Some(p) => Ok(fs::read_to_string(p)?),
            None => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }

    fn write_output(&mut self, path: &Option<PathBuf>, text: &str) -> Result<()> {
        match path {
            Some(p) => fs::write(p, text)?,
            None => self.stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn read_game(&mut self, path: &Option<PathBuf>) -> Result<BimatrixGame> {
        let text = self.read_input(path)?;
        parse_game(&text).map_err(|e| match path {
            Some(p) => e.in_field(p.display().to_string()),
            None => e.in_field("<stdin>"),
        })
    }
}

/// Runs the CLI on the process's standard streams.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    cli_run(args, &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI on the given streams and returns the exit code.
pub fn cli_run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let mut io = Io { stdin, stdout, stderr };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: Command, io: &mut Io<'_>) -> Result<i32> {
    match cmd {
        Command::Solve {
            algorithm,
            max_support,
            input,
            out,
            stats,
        } => solve(io, algorithm, max_support, &input, &out, stats),
        Command::Verify { game, profile } => verify(io, &game, &profile),
        Command::Oracle { max_support, input, out } => oracle(io, max_support, &input, &out),
        Command::Gen { family, seed, out } => {
            let params = family.params();
            let game = params.generate(seed)?;
            let meta = Metadata {
                family: Some(params.family.name().into()),
                seed: Some(seed),
                params: family_json(&params),
            };
            io.write_output(&out, &(game_to_json(&game, Some(meta)) + "\n"))?;
            Ok(EXIT_OK)
        }
        Command::Stats { input } => {
            let game = io.read_game(&input)?;
            let g = build_graph(&game);
            let report = format!(
                "m: {}\nn: {}\nsparsity: {}\nmax_degree: {}\nedges: {}\nalphabet: {}\ncolumn_classes: {}\nnonnegative: {}\n",
                game.m(),
                game.n(),
                validate_sparsity(&game),
                max_degree(&g),
                g.edge_count(),
                ValueAlphabet::of_game(&game).len(),
                column_classes(&game).len(),
                game.is_nonnegative(),
            );
            io.stdout.write_all(report.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Bench {
            family,
            max_support,
            count,
            seed,
            algorithms,
            baseline_limit,
            out,
        } => {
            let cfg = BenchConfig {
                params: family.params(),
                algorithms,
                k: max_support,
                count,
                seed,
                baseline_limit,
            };
            let rows = run_bench(&cfg)?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            io.write_output(&out, &String::from_utf8(buf).expect("csv is utf-8"))?;
            Ok(EXIT_OK)
        }
    }
}

fn family_json(p: &FamilyParams) -> serde_json::Value {
    match p.family {
        Family::Sparse => json!({"n": p.n, "l": p.l}),
        Family::Unbalanced => json!({"k": p.rows, "n": p.n, "l": p.l}),
        Family::Winlose => json!({"n": p.n, "density": p.density}),
        Family::Alphabet => json!({"n": p.n, "l": p.l}),
    }
}

fn solve(
    io: &mut Io<'_>,
    algorithm: Algorithm,
    k: usize,
    input: &Option<PathBuf>,
    out: &Option<PathBuf>,
    show_stats: bool,
) -> Result<i32> {
    let game = io.read_game(input)?;
    let outcome = run_solver(algorithm, &game, k)?;
    if show_stats {
        let s = outcome.stats;
        writeln!(
            io.stderr,
            "lp_calls={} candidates={} branch_leaves={} wall_ms={:.3}",
            s.lp_calls,
            s.candidates,
            s.branch_leaves,
            outcome.elapsed.as_secs_f64() * 1e3
        )?;
    }
    let Some(p) = outcome.profile else {
        writeln!(io.stderr, "no equilibrium with supports of size at most {k}")?;
        return Ok(EXIT_NONE);
    };
    if let Err(v) = recheck(&game, &p) {
        writeln!(io.stderr, "internal error: {algorithm} returned a non-equilibrium ({v:?})")?;
        return Ok(EXIT_INTERNAL);
    }
    let doc = ProfileDocument::new(&p, algorithm.name(), json!({"max_support": k}), true);
    let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
    io.write_output(out, &text)?;
    Ok(EXIT_OK)
}

fn verify(io: &mut Io<'_>, game: &Path, profile: &Path) -> Result<i32> {
    let game = io.read_game(&Some(game.to_path_buf()))?;
    let p = parse_profile(&fs::read_to_string(profile)?).map_err(|e| e.in_field(profile.display().to_string()))?;
    match verify_equilibrium(&game, &p)? {
        Verdict::Equilibrium => {
            writeln!(io.stdout, "yes")?;
            Ok(EXIT_OK)
        }
        Verdict::NotEquilibrium(w) => {
            let who = match w.player {
                Player::Row => "row",
                Player::Column => "column",
            };
            writeln!(
                io.stdout,
                "no: {who} player plays {} (payoff {}) but {} pays {}",
                w.played,
                format_rational(&w.played_payoff),
                w.better,
                format_rational(&w.better_payoff)
            )?;
            Ok(EXIT_NONE)
        }
    }
}

#[derive(Serialize)]
struct OracleHitDoc {
    rows: Vec<usize>,
    cols: Vec<usize>,
    x: Vec<String>,
    y: Vec<String>,
    minimal: bool,
}

#[derive(Serialize)]
struct StructureDoc {
    rows: Vec<usize>,
    cols: Vec<usize>,
    extended_rows: Vec<usize>,
    extended_cols: Vec<usize>,
    extended_components: usize,
    support_components: usize,
    case: &'static str,
    row_payoff: String,
    col_payoff: String,
}

#[derive(Serialize)]
struct OracleDoc {
    max_support: usize,
    nonnegative_game: bool,
    structure_holds: bool,
    hits: Vec<OracleHitDoc>,
    structure: Vec<StructureDoc>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn oracle(io: &mut Io<'_>, k: usize, input: &Option<PathBuf>, out: &Option<PathBuf>) -> Result<i32> {
    let game = io.read_game(input)?;
    if k == 0 || baseline_lp_calls(game.m(), game.n(), k) > ORACLE_LIMIT {
        return Err(Error::InvalidParameters(format!(
            "oracle sweep with supports up to {k} is out of range for a {}x{} game",
            game.m(),
            game.n()
        )));
    }
    let hits = oracle_find(&game, k);
    let report = check_structure(&game, k);
    let minimal: Vec<_> = report.entries.iter().map(|e| e.hit.support.clone()).collect();
    let doc = OracleDoc {
        max_support: k,
        nonnegative_game: report.nonnegative_game,
        structure_holds: report.all_hold(),
        hits: hits
            .iter()
            .map(|h| OracleHitDoc {
                rows: h.support.rows.clone(),
                cols: h.support.cols.clone(),
                x: strings(h.profile.x()),
                y: strings(h.profile.y()),
                minimal: minimal.contains(&h.support),
            })
            .collect(),
        structure: report
            .entries
            .iter()
            .map(|e| StructureDoc {
                rows: e.hit.support.rows.clone(),
                cols: e.hit.support.cols.clone(),
                extended_rows: e.extended_rows.clone(),
                extended_cols: e.extended_cols.clone(),
                extended_components: e.extended_components,
                support_components: e.support_components,
                case: match e.case {
                    SubmatrixCase::Zero => "zero",
                    SubmatrixCase::General => "general",
                },
                row_payoff: format_rational(&e.row_payoff),
                col_payoff: format_rational(&e.col_payoff),
            })
            .collect(),
    };
    let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
    io.write_output(out, &text)?;
    Ok(if hits.is_empty() { EXIT_NONE } else { EXIT_OK })
}

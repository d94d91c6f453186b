use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use distpat::bijections::{algorithm_g, forward_f, inverse_f, CyclePermutation};
use distpat::enumerate::CountCache;
use distpat::expand::expand_classical;
use distpat::permcore::parse_pattern_set;
use distpat::{DistantPattern, Enumerator, Limits, Permutation};
use distpat_lab::error::{LabError, Result};
use distpat_lab::experiments::{run_experiment, Params, CATALOG};
use distpat_lab::oeis::{load_bfile, load_sidecar, oeis_compare, SequenceConfig};
use distpat_lab::report::{render_table, ExperimentReport, Format};
use distpat_lab::sw::{linear_gap_rows, sw_root_estimate};
use distpat_lab::{cache_admin, SizeRange};
use num_rational::Ratio;

/// Count, list and study permutations avoiding distant patterns.
///
/// Patterns use the gap DSL: letters separated by spaces, `#r` for a gap of at
/// least r letters, `=r` for exactly r. Separate several patterns with `;`.
#[derive(Parser, Debug)]
#[command(name = "distpat", version)]
struct Cli {
    /// Largest size allowed for counting and listing.
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Worker threads (0 = all cores, 1 = sequential).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    #[arg(long, global = true, default_value = "text")]
    format: Format,

    /// JSON-lines count cache.
    #[arg(long, global = true, env = "DISTPAT_CACHE")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PatternArgs {
    /// Pattern set, e.g. "2 #1 1" or "1 3 #1 2; 1324".
    #[arg(short, long = "patterns")]
    patterns: String,
}

impl PatternArgs {
    fn parse(&self) -> Result<Vec<DistantPattern>> {
        parse_pattern_set(&self.patterns).map_err(|e| LabError::Core(e.into()))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Avoider counts over a size range.
    Count {
        #[command(flatten)]
        ps: PatternArgs,
        #[arg(short, long, default_value = "1..8")]
        n: SizeRange,
    },
    /// Every avoider of one size.
    List {
        #[command(flatten)]
        ps: PatternArgs,
        #[arg(short, long)]
        n: usize,
    },
    /// Classical patterns equivalent to a gap-only distant pattern.
    Expand {
        pattern: String,
    },
    /// The count sequence from n = 0 up to a maximum, on one line.
    Seq {
        #[command(flatten)]
        ps: PatternArgs,
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
    /// Run a named experiment.
    Run {
        id: Option<String>,
        /// Sizes: `N` (up to N) or `A..B`.
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Linear-gap slope for sw-roots, e.g. 1/2.
        #[arg(long)]
        c1: Option<Ratio<u64>>,
        /// Print the catalog and exit.
        #[arg(long)]
        list: bool,
    },
    /// Compare counts with an OEIS b-file.
    OeisCompare {
        bfile: PathBuf,
        #[command(flatten)]
        ps: PatternArgs,
        /// TOML file keyed by sequence id with offset, n_shift and known deviations.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[arg(long)]
        id: Option<String>,
        #[arg(short, long, default_value = "0..9")]
        n: SizeRange,
    },
    /// Cycle bijection and insertion map.
    Bij {
        #[command(subcommand)]
        action: BijAction,
    },
    /// n-th roots of counts, or the linear-gap table with --linear-gap.
    Sw {
        #[arg(short, long = "patterns")]
        patterns: Option<String>,
        /// Slope c1 for 1 #r 2 with r = floor(c1 n).
        #[arg(long)]
        linear_gap: Option<Ratio<u64>>,
        #[arg(short, long, default_value = "1..10")]
        n: SizeRange,
    },
    /// Inspect or check the count cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum BijAction {
    /// Permutation avoiding 2 #r 1 to its cycle form.
    F { perm: Permutation, #[arg(short, long)] r: usize },
    /// Cycle form back to the permutation.
    Finv { cycles: CyclePermutation, #[arg(short, long)] r: usize },
    /// Insert value j after the first entry with a larger entry later.
    G { perm: Permutation, #[arg(short, long)] j: usize },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    Show,
    Clear,
    Verify {
        #[arg(long, default_value_t = 20)]
        sample: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Outcome {
    Done,
    Failed,
}

fn engine(cli: &Cli) -> Result<Enumerator> {
    let limits = cli.cap.map_or_else(Limits::default, Limits::uniform);
    let mut e = Enumerator::new(limits).with_workers(cli.workers);
    if let Some(path) = &cli.cache {
        e = e.with_cache(Arc::new(CountCache::open(path)?));
    }
    Ok(e)
}

fn emit_report(report: &ExperimentReport, format: Format) -> Outcome {
    print!("{}", report.render(format));
    if report.passed() {
        Outcome::Done
    } else {
        Outcome::Failed
    }
}

fn run_params(n: Option<String>, r: Option<usize>, m: Option<usize>, c1: Option<Ratio<u64>>) -> Result<Params> {
    let mut p = Params { r, m, c1, ..Default::default() };
    match n {
        Some(text) if text.contains("..") => p.n = Some(text.parse()?),
        Some(text) => p.n_max = Some(text.trim().parse().map_err(|_| LabError::Usage(format!("bad size `{text}`")))?),
        None => {}
    }
    Ok(p)
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    let format = cli.format;
    let e = engine(&cli)?;
    match cli.command {
        Command::Count { ps, n } => {
            let ps = ps.parse()?;
            let rows: Vec<Vec<String>> =
                n.iter().map(|n| Ok(vec![n.to_string(), e.count(n, &ps)?.to_string()])).collect::<Result<_>>()?;
            print!("{}", render_table(format, &["n", "count"], &rows));
        }
        Command::List { ps, n } => {
            let rows: Vec<Vec<String>> = e.list(n, &ps.parse()?)?.iter().map(|p| vec![p.to_string()]).collect();
            print!("{}", render_table(format, &["permutation"], &rows));
        }
        Command::Expand { pattern } => {
            let p: DistantPattern = pattern.parse()?;
            let rows: Vec<Vec<String>> =
                expand_classical(&p)?.classical_set.iter().map(|q| vec![q.to_string()]).collect();
            print!("{}", render_table(format, &["classical"], &rows));
        }
        Command::Seq { ps, max } => {
            let table = e.sequence(&ps.parse()?, max)?;
            match format {
                Format::Text => {
                    let terms: Vec<String> = table.counts().iter().map(u64::to_string).collect();
                    println!("{}", terms.join(", "));
                }
                Format::Csv | Format::Json => {
                    let rows: Vec<Vec<String>> = table.rows.iter().map(|(n, c)| vec![n.to_string(), c.to_string()]).collect();
                    print!("{}", render_table(format, &["n", "count"], &rows));
                }
            }
        }
        Command::Run { id, n, r, m, c1, list } => {
            if list || id.is_none() {
                let rows: Vec<Vec<String>> = CATALOG.iter().map(|x| vec![x.id.to_string(), x.summary.to_string()]).collect();
                print!("{}", render_table(format, &["id", "checks"], &rows));
                return Ok(Outcome::Done);
            }
            let params = run_params(n, r, m, c1)?;
            let report = run_experiment(id.as_deref().unwrap_or_default(), &params, &e)?;
            return Ok(emit_report(&report, format));
        }
        Command::OeisCompare { bfile, ps, sidecar, id, n } => {
            let snapshot = load_bfile(&bfile, id.as_deref())?;
            let align = match sidecar {
                Some(path) => load_sidecar(&path)?.remove(&snapshot.id).unwrap_or_default(),
                None => SequenceConfig::default(),
            };
            let table = e.sequence_range(&ps.parse()?, n.lo, n.hi)?;
            let report = oeis_compare(&snapshot, &table, &align)?;
            return Ok(emit_report(&report, format));
        }
        Command::Bij { action } => {
            let out = match action {
                BijAction::F { perm, r } => forward_f(&perm, r)?.to_string(),
                BijAction::Finv { cycles, r } => inverse_f(&cycles, r)?.to_string(),
                BijAction::G { perm, j } => algorithm_g(&perm, j)?.to_string(),
            };
            println!("{out}");
        }
        Command::Sw { patterns, linear_gap, n } => match (patterns, linear_gap) {
            (_, Some(c1)) => {
                let rows: Vec<Vec<String>> = linear_gap_rows(c1, n, &e)?
                    .iter()
                    .map(|row| {
                        vec![
                            row.n.to_string(),
                            row.r.to_string(),
                            row.count.to_string(),
                            format!("{:.6}", row.ratio),
                            row.lower_bound.to_string(),
                            row.bound_holds().to_string(),
                        ]
                    })
                    .collect();
                print!("{}", render_table(format, &["n", "r", "count", "count/n!", "lower bound", "holds"], &rows));
            }
            (Some(text), None) => {
                let ps = parse_pattern_set(&text).map_err(|e| LabError::Core(e.into()))?;
                let rows: Vec<Vec<String>> = sw_root_estimate(&ps, n, &e)?
                    .iter()
                    .map(|row| vec![row.n.to_string(), row.count.to_string(), format!("{:.6}", row.root)])
                    .collect();
                print!("{}", render_table(format, &["n", "count", "root"], &rows));
            }
            (None, None) => return Err(LabError::Usage("sw needs --patterns or --linear-gap".into())),
        },
        Command::Cache { action } => {
            let cache = e.cache().ok_or_else(|| LabError::Usage("no cache: pass --cache or set DISTPAT_CACHE".into()))?;
            match action {
                CacheAction::Show => print!("{}", cache_admin::show(cache)),
                CacheAction::Clear => {
                    cache.clear()?;
                    println!("cleared {}", cache.path().display());
                }
                CacheAction::Verify { sample, max_n, seed } => {
                    let report = cache_admin::verify(cache, sample, max_n, seed)?;
                    return Ok(emit_report(&report, format));
                }
            }
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

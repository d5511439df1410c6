//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verdict mismatch or missing witness, 2 usage or
//! input error, 3 incomplete verdict because a search timed out.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::cache::Cache;
use crate::classify::{self, ClassifyError, ClassifyOptions};
use crate::construct::{self, ConstructError, Exceptional, LStarParams};
use crate::engine::{self, Constraints, EngineError, SearchBudget, SearchOutcome, SpectrumOptions};
use crate::extension::{self, ExtensionError, OlsonCase, ProductWindow};
use crate::group::{self, Group, GroupError};
use crate::report::{
    render_spectrum_strip, render_spectrum_svg, RunManifest, SpectrumReport, Verdict, WitnessFile,
    STRIP_LEGEND,
};
use crate::square::{self, LatinError, LatinSquare};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Latin(#[from] LatinError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "omniversal",
    version,
    about = "Maximal partial transversals of Latin squares and Cayley tables"
)]
struct Cli {
    /// Ignore and do not update the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a square from one of the explicit families.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the explicit maximal partial transversal of a given length.
    Witness {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        length: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search every length in the admissible range.
    Spectrum {
        #[command(flatten)]
        input: SquareInput,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Compute the verdict and compare it with an expectation.
    Certify {
        #[command(flatten)]
        input: SquareInput,
        #[command(flatten)]
        budget: BudgetArgs,
        /// `omniversal`, `near-omniversal`, `near-omniversal:MU` or `other`.
        #[arg(long, value_parser = parse_expectation)]
        expect: Expectation,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Square file utilities.
    #[command(subcommand)]
    Square(SquareCommand),
    /// Group catalog and classification.
    #[command(subcommand)]
    Groups(GroupsCommand),
    /// Check whether a Cayley-table window extends to a subsquare.
    Extend {
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        rows: Vec<usize>,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        cols: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Random trials of the non-abelian window extension question, as JSON lines.
    Conjecture41 {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 24)]
        order_max: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Ryser's condition for embedding a rectangle in a Latin square of order N.
    EmbedCheck {
        /// First line `r c`, then `r` lines of `c` symbols.
        file: PathBuf,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Debug, Subcommand)]
enum SquareCommand {
    /// Parse and check a square file.
    Validate { file: PathBuf },
    /// One representative file per species plus a census summary.
    Species {
        #[arg(long)]
        order: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum GroupsCommand {
    /// List catalog groups of one order with their invariants.
    List {
        #[arg(long)]
        order: usize,
    },
    /// Write a group file.
    Export {
        #[arg(long)]
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classify the groups of one order.
    Classify {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Classification table for every order up to a bound.
    ClassifyAll {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        markdown: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    LStar,
    MStar,
    Order8Mu8,
    Order8Two,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    q: usize,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SquareInput {
    /// Square file.
    file: Option<PathBuf>,
    /// Use the Cayley table of a catalog group.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Node limit per length.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Wall-clock limit per length, in seconds.
    #[arg(long)]
    budget_secs: Option<f64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expectation {
    Omniversal,
    NearOmniversal(Option<usize>),
    Other,
}

fn parse_expectation(s: &str) -> Result<Expectation, String> {
    match s.split_once(':') {
        None if s == "omniversal" => Ok(Expectation::Omniversal),
        None if s == "near-omniversal" => Ok(Expectation::NearOmniversal(None)),
        None if s == "other" => Ok(Expectation::Other),
        Some(("near-omniversal", mu)) => mu
            .parse()
            .map(|mu| Expectation::NearOmniversal(Some(mu)))
            .map_err(|e| e.to_string()),
        _ => Err(format!("unknown expectation {s:?}")),
    }
}

impl Expectation {
    fn matches(&self, v: &Verdict) -> bool {
        match (self, v) {
            (Expectation::Omniversal, Verdict::Omniversal) => true,
            (Expectation::NearOmniversal(None), Verdict::NearOmniversal { .. }) => true,
            (Expectation::NearOmniversal(Some(want)), Verdict::NearOmniversal { mu }) => want == mu,
            (Expectation::Other, Verdict::Other { .. }) => true,
            _ => false,
        }
    }
}

impl BudgetArgs {
    /// Explicit flags win; otherwise the engine default for order `n`.
    fn resolve(&self, n: usize) -> Result<SearchBudget, CliError> {
        if self.budget_nodes.is_none() && self.budget_secs.is_none() {
            return SearchBudget::default_for(n).ok_or_else(|| {
                CliError::Usage(format!("order {n} needs --budget-secs or --budget-nodes"))
            });
        }
        let wall_limit = match self.budget_secs {
            Some(s) if !(s.is_finite() && s > 0.0) => {
                return Err(CliError::Usage(format!("bad --budget-secs {s}")))
            }
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        Ok(SearchBudget {
            node_limit: self.budget_nodes,
            wall_limit,
        })
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let argv = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match dispatch(cli, argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

struct Ctx {
    argv: Vec<String>,
    cache: Option<Cache>,
}

fn dispatch(cli: Cli, argv: Vec<String>) -> Result<i32, CliError> {
    let cache = if cli.no_cache {
        None
    } else {
        Cache::from_env()
    };
    let ctx = Ctx { argv, cache };
    match cli.command {
        Command::Construct { family, output } => {
            let l = build_family(&family)?;
            write_out(output.as_deref(), &l.to_file_string())?;
            Ok(EXIT_OK)
        }
        Command::Witness {
            family,
            length,
            output,
        } => cmd_witness(&family, length, output.as_deref()),
        Command::Spectrum {
            input,
            budget,
            json,
            svg,
        } => {
            let report = compute_spectrum(&ctx, &input, &budget)?;
            println!("{}", render_spectrum_strip(&report));
            println!("{STRIP_LEGEND}");
            println!(
                "verdict: {}",
                report
                    .verdict
                    .as_ref()
                    .map_or("incomplete (timeout)".into(), Verdict::label)
            );
            if let Some(p) = json {
                write_out(Some(&p), &report.to_json())?;
            }
            if let Some(p) = svg {
                write_out(Some(&p), &render_spectrum_svg(&report))?;
            }
            Ok(if report.has_timeout() {
                EXIT_TIMEOUT
            } else {
                EXIT_OK
            })
        }
        Command::Certify {
            input,
            budget,
            expect,
            json,
        } => {
            let report = compute_spectrum(&ctx, &input, &budget)?;
            if let Some(p) = json {
                write_out(Some(&p), &report.to_json())?;
            }
            match &report.verdict {
                None => {
                    println!("incomplete: timeout at {:?}", timeouts(&report));
                    Ok(EXIT_TIMEOUT)
                }
                Some(v) if expect.matches(v) => {
                    println!("ok: {}", v.label());
                    Ok(EXIT_OK)
                }
                Some(v) => {
                    println!("mismatch: got {}, expected {expect:?}", v.label());
                    Ok(EXIT_MISMATCH)
                }
            }
        }
        Command::Square(SquareCommand::Validate { file }) => {
            let l = read_square(&file)?;
            println!(
                "valid latin square of order {} hash {}",
                l.order(),
                l.hash_hex()
            );
            Ok(EXIT_OK)
        }
        Command::Square(SquareCommand::Species { order, output }) => {
            cmd_species(order, output.as_deref())
        }
        Command::Groups(GroupsCommand::List { order }) => {
            for g in group::catalog(order)? {
                println!("{:<12} {}", g.name(), g.invariants());
            }
            Ok(EXIT_OK)
        }
        Command::Groups(GroupsCommand::Export { name, output }) => {
            write_out(output.as_deref(), &group::by_name(&name)?.to_file_string())?;
            Ok(EXIT_OK)
        }
        Command::Groups(GroupsCommand::Classify {
            order,
            name,
            budget,
            json,
        }) => {
            let opts = classify_options(&budget, order)?;
            let mut groups = group::catalog(order)?;
            if let Some(name) = &name {
                groups.retain(|g| g.name() == name);
                if groups.is_empty() {
                    return Err(CliError::Usage(format!(
                        "no group named {name:?} of order {order}"
                    )));
                }
            }
            let reports = classify_groups(&ctx, &groups, &opts)?;
            for (g, r) in groups.iter().zip(&reports) {
                println!(
                    "{:<12} {}  {}",
                    g.name(),
                    render_spectrum_strip(r),
                    r.verdict
                        .as_ref()
                        .map_or("incomplete".into(), Verdict::label)
                );
            }
            if let Some(p) = json {
                write_out(Some(&p), &serde_json::to_string_pretty(&reports)?)?;
            }
            Ok(if reports.iter().any(SpectrumReport::has_timeout) {
                EXIT_TIMEOUT
            } else {
                EXIT_OK
            })
        }
        Command::Groups(GroupsCommand::ClassifyAll {
            max_order,
            budget,
            json,
            markdown,
        }) => {
            if max_order == 0 || max_order > group::CATALOG_MAX_ORDER {
                return Err(CliError::Usage(format!(
                    "--max-order must be in 1..={}",
                    group::CATALOG_MAX_ORDER
                )));
            }
            let mut rows = Vec::new();
            for n in 1..=max_order {
                let opts = classify_options(&budget, n)?;
                let groups = group::catalog(n)?;
                let reports = classify_groups(&ctx, &groups, &opts)?;
                rows.extend(
                    groups
                        .iter()
                        .zip(&reports)
                        .map(|(g, r)| classify::summary_row(g, r)),
                );
            }
            let md = classify::render_markdown(&rows);
            match markdown {
                Some(p) => write_out(Some(&p), &md)?,
                None => print!("{md}"),
            }
            if let Some(p) = json {
                write_out(Some(&p), &serde_json::to_string_pretty(&rows)?)?;
            }
            Ok(if rows.iter().any(|r| !r.timeouts.is_empty()) {
                EXIT_TIMEOUT
            } else {
                EXIT_OK
            })
        }
        Command::Extend {
            group,
            rows,
            cols,
            json,
        } => cmd_extend(&group, &rows, &cols, json),
        Command::Conjecture41 {
            trials,
            seed,
            order_max,
            output,
        } => {
            if order_max == 0 || order_max > group::CATALOG_MAX_ORDER {
                return Err(CliError::Usage(format!(
                    "--order-max must be in 1..={}",
                    group::CATALOG_MAX_ORDER
                )));
            }
            let mut groups = Vec::new();
            for n in 1..=order_max {
                groups.extend(group::catalog(n)?);
            }
            if groups.iter().all(Group::is_abelian) {
                return Err(CliError::Usage(format!(
                    "no non-abelian groups of order at most {order_max}"
                )));
            }
            let mut out = String::new();
            for t in extension::conjecture_trials(&groups, trials, seed) {
                out.push_str(&serde_json::to_string(&t)?);
                out.push('\n');
            }
            write_out(output.as_deref(), &out)?;
            Ok(EXIT_OK)
        }
        Command::EmbedCheck { file, order } => {
            let r = parse_rectangle(&read_text(&file)?)?;
            let ok = extension::ryser_embeddable(&r, order)?;
            println!("{}", if ok { "embeddable" } else { "not embeddable" });
            Ok(EXIT_OK)
        }
    }
}

fn build_family(f: &FamilyArgs) -> Result<LatinSquare, CliError> {
    Ok(match f.family {
        Family::LStar => construct::build_l_star(LStarParams::new(f.m, f.q)?),
        Family::MStar => {
            if f.m == 0 {
                return Err(CliError::Usage("--m must be positive".into()));
            }
            construct::build_m_star(f.m)
        }
        Family::Order8Mu8 => construct::exceptional_order8(Exceptional::Mu8),
        Family::Order8Two => construct::exceptional_order8(Exceptional::TwoLengths),
    })
}

fn cmd_witness(f: &FamilyArgs, length: usize, output: Option<&Path>) -> Result<i32, CliError> {
    let l = build_family(f)?;
    let pt = match f.family {
        Family::LStar => construct::l_star_witness(LStarParams::new(f.m, f.q)?, length)?,
        Family::MStar => construct::m_star_witness(f.m, length)?,
        Family::Order8Mu8 | Family::Order8Two => {
            let res = engine::find_maximal_of_length(
                &l,
                length,
                &SearchBudget::exhaustive(),
                &Constraints::default(),
            )?;
            match res.outcome {
                SearchOutcome::Achieved(pt) => pt,
                _ => {
                    eprintln!("no maximal partial transversal of length {length}");
                    return Ok(EXIT_MISMATCH);
                }
            }
        }
    };
    engine::verify_witness(&l, &pt, length)?;
    let w = WitnessFile {
        square_hash: l.hash_hex(),
        length,
        triples: pt.into_triples(),
    };
    write_out(output, &serde_json::to_string_pretty(&w)?)?;
    Ok(EXIT_OK)
}

fn compute_spectrum(
    ctx: &Ctx,
    input: &SquareInput,
    budget: &BudgetArgs,
) -> Result<SpectrumReport, CliError> {
    let (l, subject, normalized) = match (&input.file, &input.group) {
        (Some(p), _) => (read_square(p)?, p.display().to_string(), false),
        (None, Some(name)) => (group::by_name(name)?.cayley_table(), name.clone(), true),
        (None, None) => return Err(CliError::Usage("need a square file or --group".into())),
    };
    let b = budget.resolve(l.order())?;
    let kind = if normalized {
        "spectrum-normalized"
    } else {
        "spectrum"
    };
    let mut manifest = RunManifest::new(ctx.argv.clone(), b, budget.jobs);
    manifest.input_hashes.push(l.hash_hex());
    let cached = ctx
        .cache
        .as_ref()
        .and_then(|c| c.lookup(kind, &l.hash_hex(), &b));
    let mut report = match cached {
        Some(r) => {
            eprintln!("served from cache");
            r
        }
        None => {
            let opts = SpectrumOptions {
                budget: b,
                jobs: budget.jobs.max(1),
                identity_seed: normalized,
            };
            let r = engine::spectrum(&l, &opts)?;
            if let Some(c) = &ctx.cache {
                if let Err(e) = c.store(kind, &b, &r) {
                    eprintln!("warning: cache write failed: {e}");
                }
            }
            r
        }
    };
    manifest.finish();
    report.subject = Some(subject);
    report.manifest = Some(manifest);
    Ok(report)
}

fn classify_options(budget: &BudgetArgs, n: usize) -> Result<ClassifyOptions, CliError> {
    let mut opts = ClassifyOptions::exhaustive();
    opts.jobs = budget.jobs.max(1);
    if budget.budget_nodes.is_some() || budget.budget_secs.is_some() {
        opts.budget = budget.resolve(n)?;
    } else if n > 16 {
        return Err(CliError::Usage(format!(
            "order {n} needs --budget-secs or --budget-nodes"
        )));
    }
    Ok(opts)
}

fn classify_groups(
    ctx: &Ctx,
    groups: &[Group],
    opts: &ClassifyOptions,
) -> Result<Vec<SpectrumReport>, CliError> {
    use rayon::prelude::*;
    let per_group = ClassifyOptions {
        jobs: 1,
        ..opts.clone()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let results: Vec<Result<SpectrumReport, CliError>> = pool.install(|| {
        groups
            .par_iter()
            .map(|g| {
                let l = g.cayley_table();
                let mut manifest = RunManifest::new(ctx.argv.clone(), opts.budget, opts.jobs);
                manifest.input_hashes.push(l.hash_hex());
                let kind = "classify";
                let cached = ctx
                    .cache
                    .as_ref()
                    .and_then(|c| c.lookup(kind, &l.hash_hex(), &opts.budget));
                let mut r = match cached {
                    Some(r) => r,
                    None => {
                        let r = classify::classify_group(g, &per_group)?;
                        if let Some(c) = &ctx.cache {
                            let _ = c.store(kind, &opts.budget, &r);
                        }
                        r
                    }
                };
                manifest.finish();
                r.subject = Some(g.name().to_string());
                r.manifest = Some(manifest);
                Ok(r)
            })
            .collect()
    });
    results.into_iter().collect()
}

fn cmd_species(order: usize, output: Option<&Path>) -> Result<i32, CliError> {
    if order == 0 || order > 6 {
        return Err(CliError::Usage("--order must be in 1..=6".into()));
    }
    let census = square::species_census(order)?;
    let mut summary = format!("species of order {order}: {}\n", census.len());
    for (i, (l, count)) in census.iter().enumerate() {
        let r = engine::spectrum(l, &SpectrumOptions::exhaustive())?;
        let verdict = r
            .verdict
            .as_ref()
            .map_or("incomplete".into(), Verdict::label);
        let _ = writeln!(
            summary,
            "{i:>3}  reduced={count:<5} {}  {verdict}",
            render_spectrum_strip(&r)
        );
        if let Some(dir) = output {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.to_path_buf(),
                source,
            })?;
            write_out(
                Some(&dir.join(format!("species-{order}-{i:02}.txt"))),
                &l.to_file_string(),
            )?;
        }
    }
    if let Some(dir) = output {
        write_out(Some(&dir.join("census.txt")), &summary)?;
    }
    print!("{summary}");
    Ok(EXIT_OK)
}

fn cmd_extend(name: &str, rows: &[usize], cols: &[usize], json: bool) -> Result<i32, CliError> {
    let g = group::by_name(name)?;
    let w = ProductWindow::new(&g, rows, cols)?;
    let found = extension::containing_subsquare(&g, rows, cols)?;
    let kneser = if g.is_abelian() {
        Some(extension::kneser_check(&g, rows, cols)?)
    } else {
        None
    };
    let olson = extension::olson_check(&g, rows, cols)?;
    if json {
        let v = serde_json::json!({
            "group": g.name(),
            "rows": w.x,
            "cols": w.y,
            "symbols": w.z,
            "m": w.m(),
            "alpha": w.alpha(),
            "beta": w.beta(),
            "meets_conjecture_bounds": w.meets_conjecture_bounds(),
            "meets_general_bounds": w.meets_general_bounds(),
            "kneser_holds": kneser,
            "olson": match olson { OlsonCase::Absorbing => "absorbing", OlsonCase::Bounded => "bounded" },
            "subsquare": found,
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!(
            "group {}  |X|={} |Y|={} |Z|={}  alpha={:.3} beta={:.3}",
            g.name(),
            w.x.len(),
            w.y.len(),
            w.m(),
            w.alpha(),
            w.beta()
        );
        match found {
            Some(s) => println!("extends: rows {:?} cols {:?}", s.rows, s.cols),
            None => println!(
                "does not extend to a {0}x{0} subsquare on the same symbols",
                w.m()
            ),
        }
    }
    Ok(EXIT_OK)
}

fn timeouts(r: &SpectrumReport) -> Vec<usize> {
    r.lengths
        .iter()
        .filter(|(_, e)| e.status == crate::LengthStatus::Timeout)
        .map(|(&l, _)| l)
        .collect()
}

fn parse_rectangle(text: &str) -> Result<Vec<Vec<usize>>, CliError> {
    let bad = |m: String| CliError::Usage(format!("rectangle file: {m}"));
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| bad("missing header".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| bad(format!("bad header {header:?}")))?;
    let [r, c] = dims[..] else {
        return Err(bad(format!("header must be `rows cols`, got {header:?}")));
    };
    let rows: Vec<Vec<usize>> = lines
        .map(|l| {
            l.split_whitespace()
                .map(str::parse)
                .collect::<Result<Vec<usize>, _>>()
        })
        .collect::<Result<_, _>>()
        .map_err(|_| bad("bad entry".into()))?;
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(bad(format!("expected {r} rows of {c} entries")));
    }
    Ok(rows)
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_square(path: &Path) -> Result<LatinSquare, CliError> {
    Ok(LatinSquare::parse(&read_text(path)?)?)
}

fn write_out(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

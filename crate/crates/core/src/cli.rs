//! The `mapenum` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::Genus2;
use crate::bkp::identities::{Identity, VerifyReport};
use crate::error::{Error, Result};
use crate::io::cache::Cache;
use crate::io::{self, CountModel, CountRecord, Format, RecordKey};
use crate::oracle::{self, Filter};
use crate::rec::bipartite::{compute_bip_oneface, compute_bipartite};
use crate::rec::maps::{compute_maps, compute_oneface, compute_univariate, Engine};
use crate::rec::triangulations::compute_triangulations;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "mapenum", version, about = "Exact counts of rooted maps on all surfaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "table", value_parser = parse_format)]
    format: Format,
    /// NDJSON count cache (defaults to $MAPENUM_CACHE when set).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Ignore any cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_genus(s: &str) -> std::result::Result<u32, String> {
    Genus2::parse(s).map(Genus2::twice).ok_or_else(|| format!("`{s}` is not a genus in ½ℕ"))
}

#[derive(Args, Debug)]
struct Range {
    #[arg(long)]
    n_max: u32,
    /// Largest genus, e.g. `4` or `3/2` (default: all).
    #[arg(long, value_parser = parse_genus)]
    g_max: Option<u32>,
}

impl Range {
    fn g2_max(&self) -> u32 {
        self.g_max.unwrap_or(self.n_max + 1)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Kz,
    Cc,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FilterArg {
    None,
    Bipartite,
    Triangulation,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Method {
    /// Labeled triples up to 3 edges, rooted generation above.
    #[default]
    Auto,
    Labeled,
    Rooted,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rooted maps by edges and genus.
    Maps {
        #[command(flatten)]
        range: Range,
        /// Refine by vertices (u) and faces (z).
        #[arg(long)]
        bivariate: bool,
        /// Use the refined recurrences (and cross-check them with `both`).
        #[arg(long, value_enum)]
        engine: Option<EngineArg>,
    },
    /// Rooted bipartite maps by edges and genus.
    Bipartite {
        #[command(flatten)]
        range: Range,
        /// Refine by black (u) and white (v) vertices and faces (z).
        #[arg(long)]
        trivariate: bool,
    },
    /// Rooted triangulations by half the number of faces and genus.
    Triangulations {
        #[command(flatten)]
        range: Range,
    },
    /// One-face maps by edges and genus.
    Oneface {
        #[arg(long)]
        n_max: u32,
    },
    /// One-face bipartite maps by edges and vertex colours.
    BipOneface {
        #[arg(long)]
        n_max: u32,
    },
    /// Checks an identity on truncated series.
    Verify {
        identity: String,
        #[arg(long)]
        order: u32,
    },
    /// Brute-force counts from the flag model.
    Oracle {
        #[arg(long)]
        edges: u32,
        #[arg(long, value_enum, default_value = "none")]
        filter: FilterArg,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
    },
}

struct Outcome {
    text: String,
    code: i32,
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            if out.write_all(o.text.as_bytes()).is_err() {
                return EXIT_FAILED;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Invalid(_)
                | Error::UnknownIdentity(_)
                | Error::OracleLimit(_)
                | Error::EmptyWindow { .. }
                | Error::RecurrenceDomain { .. } => EXIT_USAGE,
                _ => EXIT_FAILED,
            }
        }
    }
}

fn open_cache(cli: &Cli) -> Result<Option<Cache>> {
    if cli.no_cache {
        return Ok(None);
    }
    let path = cli.cache.clone().or_else(|| std::env::var_os("MAPENUM_CACHE").map(PathBuf::from));
    path.map(Cache::open).transpose()
}

/// Serves `keys` from the cache when complete, otherwise computes and stores.
fn cached(
    cache: &mut Option<Cache>,
    keys: Vec<RecordKey>,
    compute: impl FnOnce(Vec<RecordKey>) -> Result<Vec<CountRecord>>,
) -> Result<Vec<CountRecord>> {
    if let Some(hit) = cache.as_ref().and_then(|c| c.lookup(&keys)) {
        return Ok(hit);
    }
    let records = compute(keys)?;
    if let Some(c) = cache.as_mut() {
        c.store(&records)?;
    }
    Ok(records)
}

fn table(name: &str, records: &[CountRecord], format: Format) -> Result<Outcome> {
    Ok(Outcome { text: io::render(name, records, format)?, code: EXIT_OK })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let mut cache = open_cache(cli)?;
    let format = cli.format;
    match &cli.command {
        Command::Maps { range, bivariate, engine } => {
            let (n, g2) = (range.n_max, range.g2_max());
            let model = CountModel::Maps;
            if let Some(EngineArg::Both) = engine {
                let kz = compute_maps(n, g2, Engine::Kz)?;
                let cc = compute_maps(n, g2, Engine::Cc)?;
                if kz != cc {
                    let at = kz.iter().find(|(k, p)| cc.get(k.0, k.1) != Some(*p)).map(|(k, _)| k);
                    return Err(Error::Invalid(format!("engines disagree at (n, g2) = {at:?}")));
                }
            }
            let records = if *bivariate {
                let eng = match engine {
                    Some(EngineArg::Kz) => Engine::Kz,
                    _ => Engine::Cc,
                };
                cached(&mut cache, io::refined_keys(model, n, g2), |k| {
                    Ok(io::records_from_polys(k, &compute_maps(n, g2, eng)?))
                })?
            } else if let Some(e) = engine {
                let eng = if matches!(e, EngineArg::Kz) { Engine::Kz } else { Engine::Cc };
                cached(&mut cache, io::univariate_keys(model, n, g2), |k| {
                    Ok(io::records_from_polys(k, &compute_maps(n, g2, eng)?))
                })?
            } else {
                cached(&mut cache, io::univariate_keys(model, n, g2), |k| {
                    Ok(io::records_from_ints(k, &compute_univariate(n, g2)?))
                })?
            };
            table("maps", &records, format)
        }
        Command::Bipartite { range, trivariate } => {
            let (n, g2) = (range.n_max, range.g2_max());
            let model = CountModel::Bipartite;
            let keys = if *trivariate { io::refined_keys(model, n, g2) } else { io::univariate_keys(model, n, g2) };
            let records = cached(&mut cache, keys, |k| Ok(io::records_from_polys(k, &compute_bipartite(n, g2)?)))?;
            table("bipartite", &records, format)
        }
        Command::Triangulations { range } => {
            let (n, g2) = (range.n_max, range.g2_max());
            let keys = io::univariate_keys(CountModel::Triangulations, n, g2);
            let records = cached(&mut cache, keys, |k| Ok(io::records_from_ints(k, &compute_triangulations(n, g2)?)))?;
            table("triangulations", &records, format)
        }
        Command::Oneface { n_max } => {
            let records = cached(&mut cache, io::oneface_keys(*n_max), |k| {
                Ok(io::records_from_ints(k, &compute_oneface(*n_max)?))
            })?;
            table("oneface", &records, format)
        }
        Command::BipOneface { n_max } => {
            let records = cached(&mut cache, io::bip_oneface_keys(*n_max), |k| {
                Ok(io::records_from_bip_oneface(k, &compute_bip_oneface(*n_max)?))
            })?;
            table("bip-oneface", &records, format)
        }
        Command::Verify { identity, order } => {
            let report = Identity::parse(identity)?.verify(*order)?;
            if report.window.is_none() {
                return Err(Error::Invalid(format!("order {order} leaves no coefficient to check")));
            }
            let code = if report.passed { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome { text: render_report(&report, format)?, code })
        }
        Command::Oracle { edges, filter, method } => {
            let filter = match filter {
                FilterArg::None => Filter::All,
                FilterArg::Bipartite => Filter::Bipartite,
                FilterArg::Triangulation => Filter::Triangulation,
            };
            let labeled = match method {
                Method::Auto => *edges <= oracle::LABELED_EDGE_LIMIT,
                Method::Labeled => true,
                Method::Rooted => false,
            };
            let counts =
                if labeled { oracle::oracle_count(*edges, filter)? } else { oracle::rooted_count(*edges, filter)? };
            let size = filter.size_of(*edges).expect("checked by the oracle");
            let (model, keys) = match filter {
                Filter::All => (CountModel::Maps, io::refined_keys(CountModel::Maps, size, size + 1)),
                Filter::Bipartite => (CountModel::Bipartite, io::refined_keys(CountModel::Bipartite, size, size + 1)),
                Filter::Triangulation => {
                    (CountModel::Triangulations, io::univariate_keys(CountModel::Triangulations, size, size + 1))
                }
            };
            let keys = keys.into_iter().filter(|k| k.1 == size).collect();
            table(model.name(), &io::records_from_polys(keys, &counts), format)
        }
    }
}

fn render_report(r: &VerifyReport, format: Format) -> Result<String> {
    let window = r.window.map(|(a, b)| format!("{a}..={b}")).unwrap_or_default();
    let status = if r.passed { "pass" } else { "fail" };
    let first = r.first_nonzero.as_ref().map(|(k, c)| format!("t^{k}: {c}")).unwrap_or_default();
    match format {
        Format::Json => serde_json::to_string_pretty(r).map(|s| s + "\n").map_err(|e| Error::Invalid(e.to_string())),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let map_err = |e: csv::Error| Error::Invalid(e.to_string());
            w.write_record(["identity", "model", "order", "input_order", "window", "status", "first_nonzero"])
                .map_err(map_err)?;
            w.write_record([
                r.identity.name(),
                r.model,
                &r.order.to_string(),
                &r.input_order.to_string(),
                &window,
                status,
                &first,
            ])
            .map_err(map_err)?;
            let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("utf-8"))
        }
        Format::Table => {
            let mut s = format!("identity  {}\nmodel     {}\norder     {}\n", r.identity.name(), r.model, r.order);
            s += &format!("input     {}\nwindow    {window}\nstatus    {status}\n", r.input_order);
            if !first.is_empty() {
                s += &format!("first     {first}\n");
            }
            s += &format!("seconds   {:.3}\n", r.seconds);
            Ok(s)
        }
    }
}

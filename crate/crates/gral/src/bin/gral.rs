use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gral::analysis::IipOptions;
use gral::catalog::{self, Params};
use gral::{json as wire, Error};

/// Construction and analysis of category- and groupoid-graded algebras over
/// exact coefficient rings.
#[derive(Parser)]
#[command(name = "gral", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Maximum number of projective points for exhaustive ideal search
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
    /// Randomized mode: check N sampled elements instead of enumerating
    #[arg(long)]
    sample: Option<u64>,
    /// Seed for the sampled mode
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Worker threads for the parallel search (default: machine parallelism)
    #[arg(long)]
    threads: Option<usize>,
}

impl SearchArgs {
    fn options(&self) -> IipOptions {
        IipOptions {
            budget: self.budget,
            sample: self.sample,
            seed: self.seed,
        }
    }

    fn install_thread_pool(&self) {
        if let Some(n) = self.threads {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Catalog of built-in example algebras
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Build a catalog entry and emit its JSON
    Build {
        entry: String,
        /// Entry parameters as key=value (repeatable)
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        /// Write to a file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        pretty: bool,
    },
    /// Run checks against an algebra file
    Check {
        file: PathBuf,
        /// Comma-separated list of checks
        #[arg(long, value_delimiter = ',', required = true)]
        checks: Vec<String>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        pretty: bool,
    },
    /// Build every catalog entry and compare against its expected outcomes
    VerifyAll {
        /// Field characteristic for the field-parameterized entries
        #[arg(long, default_value_t = 2)]
        field: u64,
        /// Corrupt one structure constant per entry first; verification must
        /// then report failures
        #[arg(long)]
        mutate: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        pretty: bool,
    },
    /// Injectivity of an algebra morphism, full and restricted to a subring
    Morphism {
        source: PathBuf,
        map: PathBuf,
        #[arg(long)]
        subring: PathBuf,
        #[arg(long)]
        pretty: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the entries and their parameters
    List,
}

fn read_json(path: &PathBuf) -> gral::Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::BadInput(format!("invalid JSON in {}: {e}", path.display())))
}

fn exit_code_for(err: &Error) -> ExitCode {
    match err {
        Error::TooLarge { .. } => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn run(cli: Cli) -> gral::Result<ExitCode> {
    match cli.command {
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for (name, desc) in catalog::list() {
                    println!("{name:<24} {desc}");
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Build {
            entry,
            params,
            output,
            pretty,
        } => {
            let params = Params::parse(&params)?;
            let built = catalog::build(&entry, &params)?;
            let value = wire::algebra_to_json(&built.algebra);
            let text = if pretty {
                serde_json::to_string_pretty(&value).expect("serializable")
            } else {
                serde_json::to_string(&value).expect("serializable")
            };
            match output {
                Some(path) => std::fs::write(&path, text + "\n").map_err(|e| {
                    Error::BadInput(format!("cannot write {}: {e}", path.display()))
                })?,
                None => println!("{text}"),
            }
            eprintln!("built {}", built.label);
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            file,
            checks,
            search,
            pretty,
        } => {
            search.install_thread_pool();
            let opts = search.options();
            let value = read_json(&file)?;
            let algebra = wire::algebra_from_json(&value)?;
            let built = catalog::Built {
                entry: "file".into(),
                label: file.display().to_string(),
                algebra,
                product: None,
            };
            for c in &checks {
                if !catalog::CHECK_NAMES.contains(&c.as_str()) {
                    return Err(Error::BadParams(format!(
                        "unknown check {c}; available: {}",
                        catalog::CHECK_NAMES.join(", ")
                    )));
                }
            }
            let mut reports = Vec::new();
            for c in &checks {
                reports.push(catalog::run_check(&built, c, &opts)?);
            }
            if pretty {
                for r in &reports {
                    println!("{}", r.pretty_line());
                }
            } else {
                println!("{}", serde_json::to_string(&reports).expect("serializable"));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyAll {
            field,
            mutate,
            search,
            pretty,
        } => {
            search.install_thread_pool();
            let opts = search.options();
            gral::scalar::CoefficientRing::prime_field(field)?;
            let outcome = catalog::verify_all(field, &opts, mutate)?;
            if pretty {
                for entry in &outcome.entries {
                    println!("{}", entry.label);
                    for r in &entry.reports {
                        println!("  {}", r.pretty_line());
                    }
                    for (what, tag) in &entry.tags {
                        println!("    expected {what}  {tag}");
                    }
                    for m in &entry.mismatches {
                        println!("  MISMATCH: {m}");
                    }
                }
                println!("overall: {}", if outcome.ok { "ok" } else { "MISMATCH" });
            } else {
                let value = json!({
                    "field": field,
                    "mutate": mutate,
                    "ok": outcome.ok,
                    "entries": outcome.entries.iter().map(|e| json!({
                        "entry": e.label,
                        "ok": e.ok,
                        "checks": e.reports,
                        "mismatches": e.mismatches,
                    })).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string(&value).expect("serializable"));
            }
            if outcome.ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Morphism {
            source,
            map,
            subring,
            pretty,
        } => {
            let src = wire::algebra_from_json(&read_json(&source)?)?.validated()?;
            let phi = wire::morphism_from_json(&src, &read_json(&map)?)?;
            let sub = wire::subspace_from_json(&src, &read_json(&subring)?)?;
            let out = gral::analysis::morphism_injectivity(&src, &phi, &sub)?;
            if pretty {
                println!(
                    "full: {} (kernel dim {}), restricted: {} (kernel dim {})",
                    out.full, out.kernel_dim, out.restricted, out.restricted_kernel_dim
                );
            } else {
                println!(
                    "{}",
                    json!({
                        "full": out.full,
                        "restricted": out.restricted,
                        "kernel_dim": out.kernel_dim,
                        "restricted_kernel_dim": out.restricted_kernel_dim,
                    })
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

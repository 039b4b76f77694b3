use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use matlift::catalog::{self, cycle_matroid, Multigraph};
use matlift::construct::{distinct_quotients, elementary_quotients, split_labels};
use matlift::corpus::{DEFAULT_MAX_EDGES, MAX_CORPUS_EDGES};
use matlift::recognition::{has_minor, is_cographic, is_graphic};
use matlift::verify::{self, Options};
use matlift::{BinaryMatroid, Error};

// Writes to stdout, ignoring a closed pipe (e.g. `matlift list | head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! out_raw {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

/// Binary matroids: splitting, elementary quotients, and excluded-minor recognition.
#[derive(Parser)]
#[command(name = "matlift", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print rank, size, and whether the matroid is graphic, cographic, Eulerian.
    Classify {
        /// Matroid file, graph file, or catalog name.
        matroid: String,
    },
    /// Split by a set of elements and print the result.
    Split {
        matroid: String,
        /// Comma-separated element labels.
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
    },
    /// Search for a minor isomorphic to the target.
    Minor {
        matroid: String,
        /// Catalog name or file.
        #[arg(long)]
        target: String,
    },
    /// List elementary quotients.
    Quotients {
        matroid: String,
        #[arg(long)]
        graphic_only: bool,
        /// One quotient per isomorphism class.
        #[arg(long)]
        dedupe: bool,
    },
    /// Run a verification statement, or `all`.
    Verify {
        statement: String,
        #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Print every certificate.
        #[arg(long)]
        evidence: bool,
        /// Emit `id TAB pass|fail TAB evidence-count` lines only.
        #[arg(long)]
        tsv: bool,
        /// Replay every certificate after the run.
        #[arg(long)]
        replay: bool,
    },
    /// List statement ids and catalog names.
    List,
}

/// A file in matroid or graph format, or a catalog name.
fn load_matroid(arg: &str) -> Result<BinaryMatroid, Error> {
    let path = Path::new(arg);
    if !path.exists() {
        return catalog::named(arg);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{arg}: {e}")))?;
    match BinaryMatroid::parse(&text) {
        Ok(m) => Ok(m),
        Err(matroid_err) => match Multigraph::parse(&text) {
            Ok(g) => Ok(cycle_matroid(&g)),
            Err(_) => Err(matroid_err),
        },
    }
}

fn classify(m: &BinaryMatroid) -> Result<(), Error> {
    let g = is_graphic(m)?;
    let c = is_cographic(m)?;
    out!("name\t{}", m.name());
    out!("rank\t{}", m.rank());
    out!("elements\t{}", m.len());
    out!("graphic\t{}", g.holds);
    if let Some(o) = g.obstruction {
        out!("graphic-obstruction\t{} {}", o.minor, o.witness);
    }
    out!("cographic\t{}", c.holds);
    if let Some(o) = c.obstruction {
        out!("cographic-obstruction\t{} {}", o.minor, o.witness);
    }
    out!("eulerian\t{}", m.is_eulerian()?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Classify { matroid } => {
            classify(&load_matroid(&matroid)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Split { matroid, set } => {
            let m = load_matroid(&matroid)?;
            let s = split_labels(&m, &set)?;
            out_raw!("{}", s.to_text());
            let g = is_graphic(&s)?;
            out!("# graphic: {}", g.holds);
            if let Some(o) = g.obstruction {
                out!("# obstruction: {} {}", o.minor, o.witness);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Minor { matroid, target } => {
            let m = load_matroid(&matroid)?;
            let t = load_matroid(&target)?;
            match has_minor(&m, &t)? {
                Some(w) => {
                    out!(
                        "minor {} found: delete {{{}}} contract {{{}}}",
                        t.name(),
                        w.deleted.join(","),
                        w.contracted.join(",")
                    );
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    out!("no minor isomorphic to {}", t.name());
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Quotients {
            matroid,
            graphic_only,
            dedupe,
        } => {
            let m = load_matroid(&matroid)?;
            let records = if dedupe {
                distinct_quotients(&m)
            } else {
                elementary_quotients(&m).collect()
            };
            out!("column\trank\tgraphic\tcatalog");
            for r in records.iter().filter(|r| r.is_graphic || !graphic_only) {
                out!(
                    "{}\t{}\t{}\t{}",
                    r.extension_column,
                    r.quotient.rank(),
                    r.is_graphic,
                    r.catalog_match.as_deref().unwrap_or("-")
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            statement,
            max_edges,
            jobs,
            evidence,
            tsv,
            replay,
        } => {
            if max_edges > MAX_CORPUS_EDGES {
                return Err(Error::Invalid(format!(
                    "--max-edges must be at most {MAX_CORPUS_EDGES}"
                )));
            }
            if max_edges > DEFAULT_MAX_EDGES {
                eprintln!("warning: --max-edges {max_edges} builds a much larger corpus and may take minutes");
            }
            let opts = Options { max_edges };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| Error::Invalid(e.to_string()))?;
            let reports = pool.install(|| verify::run(&statement, &opts))?;
            let mut all_pass = true;
            for r in &reports {
                let mut ok = r.passed();
                if replay {
                    let replayed = pool.install(|| r.replay())?;
                    if !replayed {
                        eprintln!("{}: certificate replay failed", r.target);
                    }
                    ok &= replayed;
                }
                all_pass &= ok;
                if tsv {
                    out!("{}", r.tsv_line());
                } else {
                    out_raw!("{}", r.to_text(evidence));
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::List => {
            for id in verify::STATEMENTS {
                out!("{id}");
            }
            out!();
            for name in catalog::index() {
                out!("{name}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

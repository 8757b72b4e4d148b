use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use regdigraph::enumerate::{enumerate_unlabeled_with, EnumerationFilter, EnumerationOptions, GraphRecord};
use regdigraph::formats::{export_dot, export_rooted, export_table, format_arc_list, read_reg, write_reg};
use regdigraph::lovelock::render_term;
use regdigraph::polya::rooted_table;
use regdigraph::transforms::{assemble_unlabeled_table, labeled_table_from_records, verify_egf};
use regdigraph::verify::{self, RecordSource};
use regdigraph::Error;

/// Largest node count accepted without an explicit `--budget`.
const UNBUDGETED_MAX_NODES: usize = 9;

#[derive(Parser)]
#[command(name = "regdigraph", version, about = "Unlabeled regular digraphs with loops and multiarcs")]
struct Cli {
    #[command(flatten)]
    run: RunOptions,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunOptions {
    /// Wall-clock budget in seconds for each enumeration.
    #[arg(long, global = true, env = "REGDIGRAPH_BUDGET")]
    budget: Option<u64>,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the isomorphism classes on a fixed number of nodes.
    Enumerate {
        #[arg(long)]
        nodes: usize,
        #[arg(long, short, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        no_multiarcs: bool,
        #[arg(long)]
        no_loops: bool,
        #[arg(long)]
        connected_only: bool,
        #[arg(long, value_enum, ignore_case = true, default_value_t = Format::Reg)]
        format: Format,
    },
    /// Class counts by number of weak components.
    Tables {
        #[arg(long, value_enum, ignore_case = true, default_value_t = Table::U)]
        table: Table,
        #[arg(long)]
        max_n: usize,
        #[arg(long, short, default_value_t = 2)]
        k: usize,
    },
    /// Class counts with r marked nodes.
    Rooted {
        #[arg(long)]
        max_n: usize,
    },
    /// Tensor terms of every class, with multiplicities.
    Render {
        #[arg(long)]
        nodes: usize,
    },
    /// Run every cross-check up to the given node count.
    Verify {
        #[arg(long)]
        max_n: usize,
        /// Read Reg files from (and write them to) this directory.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Reg,
    Dot,
    Tsv,
    Terms,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    /// Unlabeled classes.
    U,
    /// Labeled digraphs.
    L,
}

const DEFAULT_BUDGET_SECS: u64 = 600;

enum Failure {
    Usage(String),
    Budget(Error),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e),
            other => Failure::Failed(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Failed(e.to_string())
    }
}

impl RunOptions {
    fn enumeration(&self) -> EnumerationOptions {
        EnumerationOptions {
            workers: self.workers,
            budget: Some(Duration::from_secs(self.budget.unwrap_or(DEFAULT_BUDGET_SECS))),
        }
    }

    fn check_size(&self, n: usize) -> Result<(), Failure> {
        if n > UNBUDGETED_MAX_NODES && self.budget.is_none() {
            return Err(Failure::Usage(format!(
                "{n} nodes needs an explicit --budget (the default covers n <= {UNBUDGETED_MAX_NODES})"
            )));
        }
        if self.workers == Some(0) {
            return Err(Failure::Usage("--workers must be at least 1".into()));
        }
        Ok(())
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.output {
            Some(path) => fs::write(path, text)?,
            None => {
                let mut out = io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }
}

fn classes(run: &RunOptions, n: usize, k: usize, filter: EnumerationFilter) -> Result<Vec<GraphRecord>, Failure> {
    let start = Instant::now();
    let records = enumerate_unlabeled_with(n, k, filter, &run.enumeration())?;
    eprintln!(
        "n={n} k={k}: {} classes in {:.3} s",
        records.len(),
        start.elapsed().as_secs_f64()
    );
    Ok(records)
}

fn format_records(records: &[GraphRecord], format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Reg => write_reg(records),
        Format::Dot => records
            .iter()
            .enumerate()
            .map(|(i, r)| export_dot(&r.graph, &format!("g{i}")))
            .collect(),
        Format::Tsv => {
            let mut s = String::from("arcs\tcomponents\tloops\tmultiarcs\taut_order\tcycle_index\n");
            for r in records {
                s.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    format_arc_list(&r.graph.to_arc_list()),
                    r.components,
                    r.loops,
                    r.multiarcs,
                    r.aut_order,
                    r.cycle_index
                ));
            }
            s
        }
        Format::Terms => {
            let mut s = String::new();
            for r in records {
                let term = render_term(&r.graph)?;
                s.push_str(&format!("{}\t{term}\n", r.labeled_count()));
            }
            s
        }
    })
}

/// Reg files cached as `Reg<n>.txt` (or `Reg<n>_k<k>.txt` for k other than 2).
struct Cached<'a> {
    dir: &'a Path,
    run: &'a RunOptions,
}

impl RecordSource for Cached<'_> {
    fn records(&mut self, n: usize, k: usize) -> regdigraph::Result<Vec<GraphRecord>> {
        let name = if k == 2 {
            format!("Reg{n}.txt")
        } else {
            format!("Reg{n}_k{k}.txt")
        };
        let path = self.dir.join(name);
        if let Ok(text) = fs::read_to_string(&path) {
            return read_reg(&text).map_err(|e| match e {
                Error::Parse { line, message } => Error::Parse {
                    line,
                    message: format!("{}: {message}", path.display()),
                },
                Error::Inconsistent { line, message } => Error::Inconsistent {
                    line,
                    message: format!("{}: {message}", path.display()),
                },
                other => other,
            });
        }
        let records = enumerate_unlabeled_with(n, k, EnumerationFilter::default(), &self.run.enumeration())?;
        if let Err(e) = fs::write(&path, write_reg(&records)) {
            eprintln!("warning: could not cache {}: {e}", path.display());
        }
        Ok(records)
    }
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let run = &cli.run;
    match &cli.command {
        Command::Enumerate {
            nodes,
            k,
            no_multiarcs,
            no_loops,
            connected_only,
            format,
        } => {
            run.check_size(*nodes)?;
            if matches!(format, Format::Terms) && *k != 2 {
                return Err(Failure::Usage("--format terms needs k = 2".into()));
            }
            let filter = EnumerationFilter {
                forbid_multiarcs: *no_multiarcs,
                forbid_loops: *no_loops,
                connected_only: *connected_only,
            };
            let records = classes(run, *nodes, *k, filter)?;
            run.emit(&format_records(&records, *format)?)
        }
        Command::Tables { table, max_n, k } => {
            run.check_size(*max_n)?;
            let lists = (1..=*max_n)
                .map(|n| classes(run, n, *k, EnumerationFilter::default()))
                .collect::<Result<Vec<_>, _>>()?;
            let slices = || lists.iter().map(Vec::as_slice);
            let counts = match table {
                Table::U => assemble_unlabeled_table(slices())?,
                Table::L => {
                    let from_classes = labeled_table_from_records(slices());
                    let connected: Vec<_> = (1..=*max_n).map(|n| from_classes.get(n, 1)).collect();
                    let egf = verify_egf(&connected, *max_n)?;
                    if egf != from_classes {
                        return Err(Failure::Failed(
                            "labeled counts from classes disagree with the Bell transform".into(),
                        ));
                    }
                    egf
                }
            };
            run.emit(&export_table(&counts))
        }
        Command::Rooted { max_n } => {
            run.check_size(*max_n)?;
            let lists = (1..=*max_n)
                .map(|n| classes(run, n, 2, EnumerationFilter::default()).map(|r| (n, r)))
                .collect::<Result<Vec<_>, _>>()?;
            let table = rooted_table(lists.iter().map(|(n, r)| (*n, r.as_slice())))?;
            run.emit(&export_rooted(&table))
        }
        Command::Render { nodes } => {
            run.check_size(*nodes)?;
            let records = classes(run, *nodes, 2, EnumerationFilter::default())?;
            run.emit(&format_records(&records, Format::Terms)?)
        }
        Command::Verify { max_n, cache_dir } => {
            run.check_size(*max_n)?;
            let report = match cache_dir {
                Some(dir) => {
                    fs::create_dir_all(dir)?;
                    verify::run(*max_n, &mut Cached { dir, run })
                }
                None => verify::run(*max_n, &mut verify::Fresh(run.enumeration())),
            };
            let text: String = report.checks.iter().map(|c| format!("{c}\n")).collect();
            run.emit(&text)?;
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            if failed == 0 {
                eprintln!("all {} checks passed", report.checks.len());
                Ok(())
            } else {
                let first = report.checks.iter().find(|c| !c.passed).expect("a failed check");
                Err(Failure::Failed(format!("{failed} checks failed; first: {first}")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uavsec_cli::sweep::parse_grid;
use uavsec_cli::{
    evaluate, parse_config, run_sweep, run_validate, write_csv, write_gnuplot, Link, Series, Suite, SweepSpec, Tie,
};
use uavsec_core::{Bound, Decomposition, SopMethod};

const EXIT_ASSERTION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "uavsec", version, about = "Secrecy outage probability of a UAV link with a linear trajectory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the SOP of one scenario.
    Sop {
        #[arg(value_enum)]
        link: LinkArg,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Quad)]
        method: MethodArg,
    },
    /// Sweep one parameter over a grid and write CSV.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Name of the swept parameter.
        #[arg(long = "var")]
        variable: String,
        /// Comma-separated grid values, strictly increasing.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write gnuplot data blocks instead of CSV.
        #[arg(long)]
        gnuplot: bool,
        /// Second parameter giving one curve per value: name=v1,v2,...
        #[arg(long, allow_hyphen_values = true)]
        series: Option<String>,
        /// Parameter set to factor times the swept value: name or name*factor.
        #[arg(long = "tie")]
        ties: Vec<String>,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = MethodArg::Quad)]
        method: MethodArg,
    },
    /// Run the validation suites and print a report.
    Validate {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct RunArgs {
    /// key = value configuration file.
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_enum, default_value_t = BoundArg::Lower)]
    bound: BoundArg,
    #[arg(long, value_enum, default_value_t = DecompositionArg::Exact)]
    decomposition: DecompositionArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum LinkArg {
    Uplink,
    Downlink,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MethodArg {
    Quad,
    Mc,
    Both,
    Closed,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<SopMethod> {
        match self {
            MethodArg::Quad => vec![SopMethod::Quadrature],
            MethodArg::Mc => vec![SopMethod::MonteCarlo],
            MethodArg::Both => vec![SopMethod::Quadrature, SopMethod::MonteCarlo],
            MethodArg::Closed => vec![SopMethod::ClosedForm],
            MethodArg::All => vec![SopMethod::Quadrature, SopMethod::ClosedForm, SopMethod::MonteCarlo],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundArg {
    Lower,
    Exact,
    Both,
}

impl BoundArg {
    fn bounds(self) -> Vec<Bound> {
        match self {
            BoundArg::Lower => vec![Bound::Lower],
            BoundArg::Exact => vec![Bound::Exact],
            BoundArg::Both => vec![Bound::Lower, Bound::Exact],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DecompositionArg {
    Exact,
    Paper,
}

impl From<DecompositionArg> for Decomposition {
    fn from(d: DecompositionArg) -> Self {
        match d {
            DecompositionArg::Exact => Decomposition::Exact,
            DecompositionArg::Paper => Decomposition::Paper,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Specfun,
    Distributions,
    Sop,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Specfun => Suite::Specfun,
            SuiteArg::Distributions => Suite::Distributions,
            SuiteArg::Sop => Suite::Sop,
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn run_sop(link: LinkArg, run: RunArgs, method: MethodArg) -> ExitCode {
    let mut params = match parse_config(&run.config) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    params.link = match link {
        LinkArg::Uplink => Link::Uplink,
        LinkArg::Downlink => Link::Downlink,
    };
    if let Err(e) = params.validate() {
        return usage(e);
    }
    let mut failed = false;
    println!("{:<7} {:<11} {:<22} {:>24} {:>10}", "bound", "method", "sop", "error_bound", "samples");
    for bound in run.bound.bounds() {
        for m in method.methods() {
            match evaluate(&params, m, bound, run.decomposition.into(), 0) {
                Ok(e) => println!(
                    "{:<7} {:<11} {:<22.16} {:>24.6e} {:>10}",
                    bound.as_str(),
                    m.as_str(),
                    e.value,
                    e.error_bound,
                    e.samples
                ),
                Err(e) => {
                    failed = true;
                    eprintln!("{} {}: {e}", bound.as_str(), m.as_str());
                }
            }
        }
    }
    if failed {
        ExitCode::from(EXIT_USAGE)
    } else {
        ExitCode::SUCCESS
    }
}

#[allow(clippy::too_many_arguments)]
fn run_sweep_cmd(
    run: RunArgs,
    variable: String,
    grid: String,
    out: Option<PathBuf>,
    gnuplot: bool,
    series: Option<String>,
    ties: Vec<String>,
    threads: Option<usize>,
    method: MethodArg,
) -> ExitCode {
    let base = match parse_config(&run.config) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let grid = match parse_grid(&grid) {
        Ok(g) => g,
        Err(e) => return usage(e),
    };
    let mut spec = SweepSpec::new(base, &variable, grid);
    spec.methods = method.methods();
    spec.bounds = run.bound.bounds();
    spec.decomposition = run.decomposition.into();
    if let Some(s) = series {
        match s.parse::<Series>() {
            Ok(s) => spec.series = Some(s),
            Err(e) => return usage(e),
        }
    }
    for t in ties {
        match t.parse::<Tie>() {
            Ok(t) => spec.ties.push(t),
            Err(e) => return usage(e),
        }
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let rows = match pool.install(|| run_sweep(&spec)) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let sink: Box<dyn Write> = match &out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => return usage(format!("cannot create {}: {e}", path.display())),
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let written = if gnuplot {
        write_gnuplot(&rows, spec.series.as_ref().map(|s| s.name.as_str()), sink).map_err(|e| e.to_string())
    } else {
        write_csv(&rows, sink).map_err(|e| e.to_string())
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        eprintln!("{failed} of {} cells failed; see the error column", rows.len());
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Sop { link, run, method } => run_sop(link, run, method),
        Command::Sweep {
            run,
            variable,
            grid,
            out,
            gnuplot,
            series,
            ties,
            threads,
            method,
        } => run_sweep_cmd(run, variable, grid, out, gnuplot, series, ties, threads, method),
        Command::Validate { suite, seed } => {
            let report = run_validate(suite.into(), seed);
            print!("{}", report.render());
            if report.failures() > 0 {
                ExitCode::from(EXIT_ASSERTION)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}

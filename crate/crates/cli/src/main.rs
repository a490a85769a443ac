use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use scross_core::combinatorics::{is_s_cross_intersecting, shift_closure, shift_closure_pair, Family};
use scross_core::dot::{emit_dot, DotView};
use scross_core::oracle::DEFAULT_ORACLE_CAP;
use scross_core::sweep::{
    emit_report, parse_checks, parse_range, parse_u32_range, run_sweep, Check, Detail, Grid, Record,
    ReportBundle, ReportFormat, Status, SweepSpec,
};
use scross_core::{Error, Params};

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(name = "scross", version)]
#[command(about = "Exact checks for the maximum total size of non-empty s-cross-intersecting families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare |C| + 1 with the exact oracle maximum
    Verify(GridArgs),
    /// Orbit weight comparisons behind the chain monotonicity
    CheckLemmas(GridArgs),
    /// Build and validate the symmetric chain decomposition of W
    CheckChains(GridArgs),
    /// Edge rule of W against the closed form and pair enumeration, plus biregularity
    CheckEdges(GridArgs),
    /// Maximum independent set of the conflict graph G against |C| - 1
    MisG(GridArgs),
    /// Run any combination of checks
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
        /// Comma list of theorem, lemma1, lemma2, chains, edges, biregular, hm
        #[arg(long, default_value = "theorem,lemma2,chains")]
        checks: String,
    },
    /// Render W or its chain decomposition as Graphviz DOT
    EmitDot {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t = View::Chains)]
        view: View,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the shift closure to a family file (one set per line, e.g. `1,3,4`)
    Shift {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        /// Second family; both are shifted by the same sequence
        #[arg(long)]
        partner: Option<PathBuf>,
        /// Report whether the pair is s-cross-intersecting before and after
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum View {
    W,
    Chains,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, conflicts_with = "n_range")]
    n: Option<u32>,
    #[arg(long, conflicts_with = "k_range")]
    k: Option<u32>,
    #[arg(long, conflicts_with = "s_range")]
    s: Option<u32>,
    /// e.g. `3..6` (inclusive) or `3,5,8`
    #[arg(long, allow_hyphen_values = true)]
    k_range: Option<String>,
    /// Defaults to every s in 1..k
    #[arg(long, allow_hyphen_values = true)]
    s_range: Option<String>,
    /// Slack l = n - (2k - s + 1)
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["n", "n_range"])]
    l_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n_range: Option<String>,
    /// Largest C(n, k) any exhaustive step may enumerate
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    cap: u128,
    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Re-run small theorem instances without the symmetry reduction
    #[arg(long)]
    deep_audit: bool,
}

impl GridArgs {
    fn single_instance(&self) -> bool {
        self.n.is_some() && self.k.is_some() && self.s.is_some()
    }

    fn spec(&self, checks: Vec<Check>) -> Result<SweepSpec, Error> {
        let k = match (self.k, &self.k_range) {
            (Some(k), _) => vec![k],
            (None, Some(r)) => parse_u32_range(r, "k")?,
            (None, None) => return Err(Error::Config("give --k or --k-range".into())),
        };
        let s = match (self.s, &self.s_range) {
            (Some(s), _) => Some(vec![s]),
            (None, Some(r)) => Some(parse_u32_range(r, "s")?),
            (None, None) => None,
        };
        let grid = match (self.n, &self.n_range, &self.l_range) {
            (Some(n), _, _) => Grid::N(vec![n]),
            (None, Some(r), _) => Grid::N(parse_u32_range(r, "n")?),
            (None, None, Some(r)) => Grid::L(parse_range(r)?),
            (None, None, None) => return Err(Error::Config("give --n, --n-range or --l-range".into())),
        };
        let mut spec = SweepSpec::new(k, s, grid, checks);
        spec.cap = self.cap;
        spec.jobs = self.jobs;
        spec.deep_audit = self.deep_audit;
        spec.validate()?;
        if let (Some(n), Some(k), Some(s)) = (self.n, self.k, self.s) {
            Params::new(n, k, s)?;
        }
        Ok(spec)
    }

    fn format(&self) -> ReportFormat {
        match self.format {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

fn fail_config(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_CONFIG)
}

fn write_output(path: Option<&Path>, body: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, body),
        None => io::stdout().lock().write_all(body),
    }
}

fn summarize(bundle: &ReportBundle, show_skipped: bool) {
    let shown = |r: &&Record| r.status == Status::Fail || (show_skipped && r.status == Status::Skipped);
    for r in bundle.records.iter().filter(shown) {
        let why = match &r.detail {
            Detail::Verdict(v) => v.findings.join("; "),
            Detail::Lemma(rep) => rep
                .instances
                .iter()
                .filter(|x| !x.holds)
                .map(|x| format!("C_{} vs C_{}", x.left_index, x.right_index))
                .collect::<Vec<_>>()
                .join(", "),
            Detail::Note { message } => message.clone(),
        };
        eprintln!("{} n={} k={} s={} {}: {why}", r.status, r.n, r.k, r.s, r.check);
    }
    let s = &bundle.summary;
    eprintln!(
        "{} records: {} pass, {} fail, {} skipped ({} ms)",
        s.total, s.pass, s.fail, s.skipped, bundle.total_millis
    );
}

fn run_grid(args: &GridArgs, checks: Vec<Check>) -> ExitCode {
    let spec = match args.spec(checks) {
        Ok(spec) => spec,
        Err(e) => return fail_config(e),
    };
    let bundle = match run_sweep(&spec) {
        Ok(b) => b,
        Err(e) => return fail_config(e),
    };
    let mut body = Vec::new();
    if let Err(e) = emit_report(&bundle, args.format(), &mut body) {
        return fail_config(e);
    }
    if let Err(e) = write_output(args.out.as_deref(), &body) {
        return fail_config(format!("writing report: {e}"));
    }
    summarize(&bundle, args.single_instance());
    if !bundle.all_pass() {
        ExitCode::from(EXIT_FAIL)
    } else if args.single_instance() && bundle.summary.skipped > 0 {
        // a single requested instance that could not be completed
        ExitCode::from(EXIT_CONFIG)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_dot(n: u32, k: u32, s: u32, view: View, out: Option<&Path>) -> ExitCode {
    let view = match view {
        View::W => DotView::W,
        View::Chains => DotView::Chains,
    };
    let doc = match Params::new(n, k, s).and_then(|p| emit_dot(&p, view)) {
        Ok(doc) => doc,
        Err(e) => return fail_config(e),
    };
    match write_output(out, doc.as_bytes()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail_config(format!("writing DOT: {e}")),
    }
}

fn read_family(path: &Path, n: u32) -> Result<Family, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Family::parse_text(n, &text)
}

fn run_shift(file: &Path, n: u32, partner: Option<&Path>, s: Option<u32>, out: Option<&Path>) -> ExitCode {
    let a = match read_family(file, n) {
        Ok(f) => f,
        Err(e) => return fail_config(e),
    };
    let mut body = String::new();
    let mut exit = ExitCode::SUCCESS;
    match partner {
        None => body.push_str(&shift_closure(&a).to_text()),
        Some(path) => {
            let b = match read_family(path, n) {
                Ok(f) => f,
                Err(e) => return fail_config(e),
            };
            let (ca, cb) = match shift_closure_pair(&a, &b) {
                Ok(pair) => pair,
                Err(e) => return fail_config(e),
            };
            if let Some(s) = s {
                let before = is_s_cross_intersecting(&a, &b, s).map(|c| c.holds);
                let after = is_s_cross_intersecting(&ca, &cb, s).map(|c| c.holds);
                match (before, after) {
                    (Ok(before), Ok(after)) => {
                        eprintln!("{s}-cross-intersecting: before {before}, after {after}");
                        if before && !after {
                            exit = ExitCode::from(EXIT_FAIL);
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => return fail_config(e),
                }
            }
            body.push_str("# A\n");
            body.push_str(&ca.to_text());
            body.push_str("# B\n");
            body.push_str(&cb.to_text());
        }
    }
    if let Err(e) = write_output(out, body.as_bytes()) {
        return fail_config(format!("writing family: {e}"));
    }
    exit
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(g) => run_grid(&g, vec![Check::Theorem]),
        Command::CheckLemmas(g) => run_grid(&g, vec![Check::Lemma2]),
        Command::CheckChains(g) => run_grid(&g, vec![Check::Chains]),
        Command::CheckEdges(g) => run_grid(&g, vec![Check::Edges, Check::Biregular]),
        Command::MisG(g) => run_grid(&g, vec![Check::Lemma1]),
        Command::Sweep { grid, checks } => match parse_checks(&checks) {
            Ok(checks) => run_grid(&grid, checks),
            Err(e) => fail_config(e),
        },
        Command::EmitDot { n, k, s, view, out } => run_dot(n, k, s, view, out.as_deref()),
        Command::Shift { file, n, partner, s, out } => run_shift(&file, n, partner.as_deref(), s, out.as_deref()),
    }
}

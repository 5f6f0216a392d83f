use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use bon_core::{bon_pmf, expected_reward, kl_report};
use bon_experiments::csv_io::fmt_f64;
use bon_experiments::reproduce::{write_panels, DEFAULT_POINTS};
use bon_experiments::sweep::{execute_mc_variance, execute_sweep};
use bon_experiments::{reproduce, BuiltinScenario, ExpError, NGrid, Result, Source, SweepConfig};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bon", version, about = "KL divergence of best-of-n policies and its estimators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SourceArgs {
    /// Tab-separated distribution file (outcome_id, reward, prob)
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    dist: Option<PathBuf>,
    /// Built-in policy: example1, uniform:L, cherry_left, cherry_right
    #[arg(long)]
    builtin: Option<BuiltinScenario>,
    /// Break reward ties by adding up to this much noise
    #[arg(long)]
    jitter: Option<f64>,
    #[arg(long, env = "BON_SEED", default_value_t = 0)]
    seed: u64,
}

impl SourceArgs {
    fn source(&self) -> Source {
        match (&self.dist, self.builtin) {
            (Some(p), _) => Source::File(p.clone()),
            (None, Some(b)) => Source::Builtin(b),
            (None, None) => unreachable!("clap requires one of --dist or --builtin"),
        }
    }

    fn config(&self, n_grid: NGrid) -> SweepConfig {
        let mut cfg = SweepConfig::new(self.source(), n_grid);
        cfg.seed = self.seed;
        cfg.jitter = self.jitter;
        cfg
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    src: SourceArgs,
    /// Comma list of n values or start:stop:logK
    #[arg(long)]
    n_grid: NGrid,
    #[arg(long, default_value_t = 0)]
    mc_samples: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Print base and best-of-n probabilities as CSV
    Pmf {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long)]
        n: u64,
    },
    /// Print the KL report for one n as JSON
    Report {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long)]
        n: u64,
    },
    /// Exact KL, formula, estimators and bounds over a grid of n
    Sweep {
        #[command(flatten)]
        args: SweepArgs,
        /// Also write an SVG chart
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Monte Carlo mean and spread of both estimators over a grid of n
    McVar {
        #[command(flatten)]
        args: SweepArgs,
    },
    /// Write the CSV and SVG files for one figure
    Reproduce {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        figure: u8,
        /// Uniform support size (figure 2 only)
        #[arg(long = "L")]
        l: Option<usize>,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
    },
}

fn run(cli: Cli) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let emit = |out: &mut std::io::StdoutLock, s: &str| {
        out.write_all(s.as_bytes()).map_err(|e| ExpError::Io { path: "<stdout>".into(), source: e })
    };
    match cli.command {
        Command::Pmf { src, n } => {
            let p = src.config(NGrid::new(vec![1])?).load_policy()?;
            let pmf = bon_pmf(&p, n)?;
            let mut text = String::from("outcome_id,reward,base_prob,bon_prob\n");
            for (o, q) in p.outcomes().iter().zip(&pmf.probs) {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
                w.write_record([o.id.clone(), fmt_f64(o.reward), fmt_f64(o.prob), fmt_f64(*q)])
                    .expect("in-memory write");
                text.push_str(std::str::from_utf8(&w.into_inner().expect("in-memory")).expect("utf-8"));
            }
            emit(&mut out, &text)
        }
        Command::Report { src, n } => {
            let p = src.config(NGrid::new(vec![1])?).load_policy()?;
            let report = kl_report(&p, n)?;
            report.check_invariants()?;
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["expected_reward"] = serde_json::json!(expected_reward(&p, n)?);
            emit(&mut out, &format!("{value}\n"))
        }
        Command::Sweep { args, svg } => {
            let mut cfg = args.src.config(args.n_grid);
            cfg.mc_samples = args.mc_samples;
            cfg.output = Some(args.out);
            cfg.svg = svg;
            execute_sweep(&cfg).map(|_| ())
        }
        Command::McVar { args } => {
            let mut cfg = args.src.config(args.n_grid);
            cfg.mc_samples = args.mc_samples;
            cfg.output = Some(args.out);
            execute_mc_variance(&cfg).map(|_| ())
        }
        Command::Reproduce { figure, l, out_dir, points } => {
            let panels = reproduce(figure, l, points)?;
            for path in write_panels(figure, &panels, &out_dir)? {
                emit(&mut out, &format!("{}\n", path.display()))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let message: Vec<&str> = text
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty() && !l.starts_with("For more information"))
                .collect();
            let err = ExpError::Config(message.join(" ").trim_start_matches("error: ").to_string());
            eprintln!("{}", err.to_json_line());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json_line());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

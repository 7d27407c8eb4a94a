use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use bdlab::commands::{self, ComparisonReport};
use bdlab::ExperimentConfig;
use bdlab_core::baez_duarte::OscillationForm;
use bdlab_core::precision::Oversample;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bdlab", version, about = "Baez-Duarte sequence experiments at high precision")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 1000)]
    k: u64,
    /// Digits wanted from the generic sum after cancellation.
    #[arg(long, default_value_t = 100)]
    digits: u32,
    /// Persisted zero table or seed list; the bundled seeds by default.
    #[arg(long)]
    zeros_file: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    zeros_count: usize,
    #[arg(long, default_value_t = 120)]
    refine_digits: u32,
    /// Oversampling of derivative evaluations, `n` or `n/d`.
    #[arg(long, default_value = "2")]
    oversample: String,
    #[arg(long)]
    trace_stride: Option<u64>,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    resume: bool,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Exact,
    Asymptotic,
}

#[derive(Subcommand)]
enum Command {
    /// c_k from the binomial sum against trend + oscillation.
    Compare(Common),
    /// Partial sums of the binomial sum at the trace stride.
    Table1(Common),
    /// c_k on a log grid with the one-zero envelope.
    Fig1 {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        k_min: u64,
        #[arg(long, default_value_t = 1_000_000)]
        k_max: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// y_n = -1/ln|S_n - c_k| along the zero sum.
    Fig2 {
        #[command(flatten)]
        common: Common,
        /// Round every derivative to this many digits for a second series.
        #[arg(long)]
        degrade_derivatives_to: Option<u32>,
        #[arg(long, value_enum, default_value_t = Form::Exact)]
        form: Form,
    },
    /// Refine seeds with Newton, verify and attach derivatives.
    RefineZeros(Common),
    /// Extremes of |zeta'(rho)| over the first zeros.
    ScanZetaPrime(Common),
}

fn parse_oversample(text: &str) -> anyhow::Result<Oversample> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse()?, d.trim().parse()?),
        None => (text.trim().parse()?, 1),
    };
    Ok(Oversample::new(n, d)?)
}

impl Common {
    fn config(&self) -> anyhow::Result<ExperimentConfig> {
        Ok(ExperimentConfig {
            k: self.k,
            target_digits: self.digits,
            zeros_file: self.zeros_file.clone(),
            refine_digits: self.refine_digits,
            zeros_count: self.zeros_count,
            oversample: parse_oversample(&self.oversample).context("--oversample")?,
            trace_stride: self.trace_stride,
            checkpoint: self.checkpoint.clone(),
            resume: self.resume,
            out_dir: self.out_dir.clone(),
        })
    }
}

fn print_report(r: &ComparisonReport) {
    print!("{}", r.render_text());
    println!("report: {}", r.path.display());
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Compare(c) => print_report(&commands::cmd_compare(&c.config()?)?),
        Command::Table1(c) => {
            let t = commands::cmd_table1(&c.config()?)?;
            for (n, v) in &t.rows {
                println!("{n:>8}  {v}");
            }
            println!("written to {}", t.path.display());
        }
        Command::Fig1 {
            common,
            k_min,
            k_max,
            samples,
        } => {
            let f = commands::cmd_fig1(&common.config()?, k_min, k_max, samples)?;
            println!("A = {}  phi = {}", f.amplitude.to_string_radix(10, Some(7)), f.phase.to_string_radix(10, Some(7)));
            println!("{} points written to {}", f.rows.len(), f.path.display());
        }
        Command::Fig2 {
            common,
            degrade_derivatives_to,
            form,
        } => {
            let config = common.config()?;
            let form = match form {
                Form::Exact => OscillationForm::Exact,
                Form::Asymptotic => OscillationForm::Asymptotic,
            };
            let f = commands::cmd_fig2(&config, config.zeros_count, degrade_derivatives_to, form)?;
            println!("{} rows written to {}", f.rows.len(), f.path.display());
        }
        Command::RefineZeros(c) => print!("{}", commands::cmd_refine_zeros(&c.config()?)?.render()),
        Command::ScanZetaPrime(c) => {
            let s = commands::cmd_scan_zeta_prime(&c.config()?)?;
            let (min, max) = (&s.extremes.min, &s.extremes.max);
            println!("min |zeta'(rho)| = {} at l = {}", min.1.to_string_radix(10, Some(12)), min.0);
            println!("max |zeta'(rho)| = {} at l = {}", max.1.to_string_radix(10, Some(12)), max.0);
            println!("written to {}", s.path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

//! One function per subcommand. Each returns its results and writes its
//! files under `out_dir`; nothing here prints to stdout.

use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use bdlab_core::baez_duarte::{
    ck_generic_resumable, ck_oscillation_asymptotic, ck_trend, compare_with_generic, envelope,
    sine_approx_params, y_curve, zeros_needed, BaezDuarteResult, GenericOptions, GenericRun, GenericState,
    OscillationForm, YValue,
};
use bdlab_core::precision::relative_discrepancy;
use bdlab_core::zeros::{degrade_derivatives, persist_table, scan_derivative_extremes, DerivativeExtremes, ZeroTable};
use bdlab_core::{Agreement, NumericContext};
use rug::Float;

use crate::checkpoint::ExperimentCheckpoint;
use crate::config::ExperimentConfig;
use crate::output::{full, out_path, sci, table_fingerprint, DataFile};
use crate::zeros::{load_zero_source, prepare_zeros};

// ---------------------------------------------------------------------------
// Generic sum with checkpoints
// ---------------------------------------------------------------------------

pub struct GenericOutcome {
    pub value: Float,
    pub state: GenericState,
    pub context: NumericContext,
    /// The run started from a checkpoint.
    pub resumed: bool,
}

/// Runs the binomial sum for `config.k`, honouring `--checkpoint` and
/// `--resume`. `stop_after` interrupts the run once `next_j` reaches it,
/// leaving the checkpoint behind; `None` runs to the end.
pub fn run_generic(config: &ExperimentConfig, stop_after: Option<u64>) -> anyhow::Result<Option<GenericOutcome>> {
    let ctx = config.generic_context()?;
    let fingerprint = config.generic_fingerprint();
    let precision = ctx.precision_digits();
    let resume = match (&config.checkpoint, config.resume) {
        (Some(p), true) if p.exists() => {
            let cp = ExperimentCheckpoint::resume(p, &fingerprint, precision)
                .with_context(|| format!("resuming from {}", p.display()))?;
            eprintln!("resuming k = {} at j = {}", cp.state.k, cp.state.next_j);
            Some(cp.state)
        }
        (None, true) => bail!("--resume needs --checkpoint"),
        _ => None,
    };
    let resumed = resume.is_some();
    let options = GenericOptions {
        trace_stride: config.trace_stride,
        ..GenericOptions::default()
    };
    let start = Instant::now();
    let mut last_reported = 0usize;
    let mut write_error = None;
    let run = ck_generic_resumable(config.k, &ctx, options, resume, |state| {
        if state.trace.rows.len() > last_reported {
            last_reported = state.trace.rows.len();
            let peak = state.peak.as_ref().map(|(n, p)| format!("{} at n = {n}", sci(p, 4)));
            eprintln!(
                "j = {} of {}  ({:.1?})  peak |S_n| {}",
                state.next_j,
                config.k,
                start.elapsed(),
                peak.unwrap_or_default()
            );
        }
        if let Some(path) = &config.checkpoint {
            let cp = ExperimentCheckpoint {
                config_fingerprint: fingerprint.clone(),
                precision_digits: precision,
                state: state.clone(),
            };
            if let Err(e) = cp.write(path) {
                write_error = Some(e);
                return ControlFlow::Break(());
            }
        }
        match stop_after {
            Some(j) if state.next_j >= j => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    })?;
    if let Some(e) = write_error {
        return Err(e.into());
    }
    match run {
        GenericRun::Interrupted(_) => Ok(None),
        GenericRun::Complete { value, state } => {
            if let Some(path) = &config.checkpoint {
                ExperimentCheckpoint {
                    config_fingerprint: fingerprint,
                    precision_digits: precision,
                    state: state.clone(),
                }
                .write(path)?;
            }
            Ok(Some(GenericOutcome {
                value,
                state,
                context: ctx,
                resumed,
            }))
        }
    }
}

fn finish_generic(config: &ExperimentConfig) -> anyhow::Result<GenericOutcome> {
    run_generic(config, None)?.context("generic sum stopped early")
}

fn zeros_for(config: &ExperimentConfig, count: usize) -> anyhow::Result<ZeroTable> {
    let source = load_zero_source(config.zeros_file.as_deref())?;
    prepare_zeros(&source, count, config.refine_digits, config.oversample)
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

pub struct ComparisonReport {
    pub result: BaezDuarteResult,
    pub relative_discrepancy: Float,
    pub generic_precision: u32,
    pub explicit_precision: u32,
    pub table_fingerprint: String,
    pub table_source: String,
    pub path: PathBuf,
}

impl ComparisonReport {
    pub fn digits(&self) -> Option<u32> {
        match self.result.agreement {
            Agreement::Digits(d) => Some(d),
            Agreement::All => None,
        }
    }

    pub fn bracket(&self) -> String {
        match self.digits() {
            Some(d) => format!("10^-{} < |c_generic/c_explicit - 1| <= 10^-{d}", d + 1),
            None => "c_generic = c_explicit at working precision".to_string(),
        }
    }

    pub fn render_text(&self) -> String {
        let r = &self.result;
        let c_explicit = r.c_explicit();
        let mut s = String::new();
        s += &format!("k = {}\n", r.k);
        s += &format!("c_generic   = {}\n", sci(&r.c_generic, 40));
        s += &format!("c_explicit  = {}\n", sci(&c_explicit, 40));
        s += &format!("  trend     = {}\n", sci(&r.c_trend, 40));
        s += &format!("  osc exact = {}\n", sci(&r.c_osc_exact, 40));
        s += &format!("agreement   = {} digits\n", r.agreement);
        s += &format!("bracket     : {}\n", self.bracket());
        s += &format!("zeros used  = {} ({})\n", r.zeros_used, self.table_source);
        s
    }

    /// `key: value` lines; every number at full precision.
    pub fn render_machine(&self) -> String {
        let r = &self.result;
        let mut s = String::from("#bdlab compare report\n");
        let mut kv = |k: &str, v: String| s += &format!("{k}: {v}\n");
        kv("k", r.k.to_string());
        kv("generic_precision_digits", self.generic_precision.to_string());
        kv("explicit_precision_digits", self.explicit_precision.to_string());
        kv("context", r.context_fingerprint.clone());
        kv("zeros_used", r.zeros_used.to_string());
        kv("zero_table_source", self.table_source.clone());
        kv("zero_table_fingerprint", self.table_fingerprint.clone());
        kv("summation_order", "increasing ordinate, conjugates folded into 2 Re".into());
        kv("c_generic", full(&r.c_generic));
        kv("c_trend", full(&r.c_trend));
        kv("c_osc_exact", full(&r.c_osc_exact));
        kv("c_osc_asymptotic", full(&r.c_osc_asymptotic));
        kv("c_explicit", full(&r.c_explicit()));
        kv("relative_discrepancy", full(&self.relative_discrepancy));
        kv("agreement_digits", r.agreement.to_string());
        kv("bracket", self.bracket());
        s
    }
}

pub fn cmd_compare(config: &ExperimentConfig) -> anyhow::Result<ComparisonReport> {
    let explicit_ctx = config.explicit_context()?;
    let table = zeros_for(config, config.zeros_count)?;
    let reach = zeros_needed(explicit_ctx.precision_digits(), &table);
    if reach.l.is_some_and(|l| l > config.zeros_count) || reach.l.is_none() {
        eprintln!(
            "warning: {} digits need zeros up to γ ≈ {:.1}; only {} zeros in use",
            explicit_ctx.precision_digits(),
            reach.gamma_needed,
            config.zeros_count
        );
    }
    let generic = finish_generic(config)?;
    let result = compare_with_generic(
        config.k,
        generic.value,
        &generic.context,
        &explicit_ctx,
        &table,
        config.zeros_count,
    )?;
    let relative = relative_discrepancy(&result.c_generic, &result.c_explicit())?;
    let report = ComparisonReport {
        relative_discrepancy: relative,
        generic_precision: generic.context.precision_digits(),
        explicit_precision: explicit_ctx.precision_digits(),
        table_fingerprint: table_fingerprint(&table),
        table_source: table.source().to_string(),
        path: out_path(&config.out_dir, &format!("compare_k{}.txt", config.k)),
        result,
    };
    std::fs::create_dir_all(&config.out_dir)?;
    std::fs::write(&report.path, report.render_machine())?;
    Ok(report)
}

/// The `key: value` pairs of a machine-readable report.
pub fn parse_report(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .filter_map(|l| l.split_once(": ").map(|(k, v)| (k.to_string(), v.to_string())))
        .collect()
}

// ---------------------------------------------------------------------------
// table1
// ---------------------------------------------------------------------------

pub const TABLE1_DIGITS: usize = 15;

pub struct Table1 {
    pub rows: Vec<(u64, String)>,
    pub final_value: Float,
    pub path: PathBuf,
}

pub fn cmd_table1(config: &ExperimentConfig) -> anyhow::Result<Table1> {
    let stride = config.trace_stride.unwrap_or(10_000);
    let cfg = ExperimentConfig {
        trace_stride: Some(stride),
        ..config.clone()
    };
    let generic = finish_generic(&cfg)?;
    let mut file = DataFile::new("table1");
    file.header("k", cfg.k)
        .header("trace_stride", stride)
        .header("context", generic.context.fingerprint())
        .header("row", "n, sum over j = 0..n of (-1)^j C(k,j)/zeta(2j+2)")
        .columns(&["n", "partial_sum"]);
    let rows: Vec<(u64, String)> = generic
        .state
        .trace
        .rows
        .iter()
        .map(|(n, v)| (*n, sci(v, TABLE1_DIGITS)))
        .collect();
    for (n, v) in &rows {
        file.row(vec![n.to_string(), v.clone()]);
    }
    let path = out_path(&cfg.out_dir, &format!("table1_k{}.csv", cfg.k));
    file.write(&path)?;
    Ok(Table1 {
        rows,
        final_value: generic.value,
        path,
    })
}

// ---------------------------------------------------------------------------
// fig1
// ---------------------------------------------------------------------------

pub struct Fig1Row {
    pub k: u64,
    pub c_explicit: Float,
    pub upper: Float,
    pub lower: Float,
}

pub struct Fig1 {
    pub amplitude: Float,
    pub phase: Float,
    pub rows: Vec<Fig1Row>,
    pub path: PathBuf,
}

/// `samples` integer points spaced evenly in `ln k`, duplicates dropped.
pub fn log_grid(k_min: u64, k_max: u64, samples: usize) -> Vec<u64> {
    if samples <= 1 || k_min == k_max {
        return vec![k_min];
    }
    let (a, b) = ((k_min as f64).ln(), (k_max as f64).ln());
    let mut out: Vec<u64> = (0..samples)
        .map(|i| (a + (b - a) * i as f64 / (samples - 1) as f64).exp().round() as u64)
        .collect();
    out[samples - 1] = k_max;
    out.dedup();
    out
}

pub fn cmd_fig1(config: &ExperimentConfig, k_min: u64, k_max: u64, samples: usize) -> anyhow::Result<Fig1> {
    if k_min == 0 || k_min > k_max {
        bail!("need 1 <= k_min <= k_max");
    }
    let table = zeros_for(config, config.zeros_count)?;
    let ctx = config.explicit_context()?;
    let sine = sine_approx_params(table.get(1).context("empty zero table")?, &ctx)?;
    let mut rows = Vec::new();
    for k in log_grid(k_min, k_max, samples) {
        let mut c = ck_trend(k, &ctx)?;
        c += ck_oscillation_asymptotic(k, &table, config.zeros_count, &ctx)?;
        let (upper, lower) = envelope(k, &sine);
        rows.push(Fig1Row {
            k,
            c_explicit: c,
            upper,
            lower,
        });
    }
    let mut file = DataFile::new("fig1");
    file.header("amplitude_A", sci(&sine.amplitude, 7))
        .header("phase_phi", sci(&sine.phase, 7))
        .header("envelope", "+-A k^(-3/4)")
        .header("c_explicit", "trend + asymptotic oscillation")
        .header("zeros_used", config.zeros_count)
        .header("zero_table_fingerprint", table_fingerprint(&table))
        .header("context", ctx.fingerprint())
        .columns(&["k", "c_explicit", "upper", "lower"]);
    for r in &rows {
        file.row(vec![r.k.to_string(), sci(&r.c_explicit, 17), sci(&r.upper, 17), sci(&r.lower, 17)]);
    }
    let path = out_path(&config.out_dir, &format!("fig1_k{k_min}-{k_max}.csv"));
    file.write(&path)?;
    Ok(Fig1 {
        amplitude: sine.amplitude,
        phase: sine.phase,
        rows,
        path,
    })
}

// ---------------------------------------------------------------------------
// fig2
// ---------------------------------------------------------------------------

pub struct Fig2Row {
    pub n: usize,
    pub gamma: Option<Float>,
    pub y: Option<f64>,
    /// `4/(πγ_(n+1))`, when the table reaches that far.
    pub predicted: Option<f64>,
    pub y_degraded: Option<f64>,
}

pub struct Fig2 {
    pub rows: Vec<Fig2Row>,
    pub path: PathBuf,
}

fn y_value(v: &YValue) -> Option<f64> {
    match v {
        YValue::Value(y) => Some(y.to_f64()),
        YValue::Saturated => None,
    }
}

pub fn cmd_fig2(
    config: &ExperimentConfig,
    n_max: usize,
    degrade_to: Option<u32>,
    form: OscillationForm,
) -> anyhow::Result<Fig2> {
    // one extra zero for the predicted column
    let available = load_zero_source(config.zeros_file.as_deref())?.count();
    let table = zeros_for(config, (n_max + 1).min(available))?;
    let ctx = config.explicit_context()?;
    let generic = finish_generic(config)?;
    let clean = y_curve(config.k, &generic.value, &table, n_max, &ctx, form)?;
    let degraded = match degrade_to {
        Some(d) => Some(y_curve(config.k, &generic.value, &degrade_derivatives(&table, d), n_max, &ctx, form)?),
        None => None,
    };
    let rows: Vec<Fig2Row> = clean
        .iter()
        .enumerate()
        .map(|(i, p)| Fig2Row {
            n: p.n,
            gamma: p.gamma.clone(),
            y: y_value(&p.y),
            predicted: table.get(p.n + 1).map(|z| 4.0 / (std::f64::consts::PI * z.gamma.to_f64())),
            y_degraded: degraded.as_ref().and_then(|d| y_value(&d[i].y)),
        })
        .collect();

    let mut file = DataFile::new("fig2");
    file.header("k", config.k)
        .header("y", "-1/ln|S_n - c_generic| (leading minus: positive while |delta| < 1)")
        .header("S_n", format!("trend + first n oscillation terms, {form:?} form"))
        .header("degraded_derivative_digits", degrade_to.map_or("none".into(), |d| d.to_string()))
        .header("generic_context", generic.context.fingerprint())
        .header("explicit_context", ctx.fingerprint())
        .header("zero_table_fingerprint", table_fingerprint(&table))
        .columns(&["n", "gamma_n", "y_n", "predicted_4_over_pi_gamma_next", "y_n_degraded"]);
    let opt = |v: Option<f64>| v.map_or("saturated".to_string(), |x| format!("{x:.10e}"));
    for r in &rows {
        file.row(vec![
            r.n.to_string(),
            r.gamma.as_ref().map_or(String::new(), |g| sci(g, 20)),
            opt(r.y),
            r.predicted.map_or(String::new(), |x| format!("{x:.10e}")),
            if degrade_to.is_some() { opt(r.y_degraded) } else { String::new() },
        ]);
    }
    let path = out_path(&config.out_dir, &format!("fig2_k{}.csv", config.k));
    file.write(&path)?;
    Ok(Fig2 { rows, path })
}

// ---------------------------------------------------------------------------
// refine-zeros / scan-zeta-prime
// ---------------------------------------------------------------------------

pub struct RefineSummary {
    pub table: ZeroTable,
    pub max_residual: Option<Float>,
    pub extremes: Option<DerivativeExtremes>,
    pub path: PathBuf,
}

impl RefineSummary {
    pub fn render(&self) -> String {
        let mut s = format!("{} zeros at {} digits\n", self.table.count(), self.table.precision_digits());
        if let Some(r) = &self.max_residual {
            s += &format!("max |zeta(rho)| = {}\n", sci(r, 6));
        }
        if let Some(e) = &self.extremes {
            s += &format!("min |zeta'(rho)| = {} at l = {}\n", sci(&e.min.1, 12), e.min.0);
            s += &format!("max |zeta'(rho)| = {} at l = {}\n", sci(&e.max.1, 12), e.max.0);
        }
        s += &format!("written to {}\n", self.path.display());
        s
    }
}

pub fn cmd_refine_zeros(config: &ExperimentConfig) -> anyhow::Result<RefineSummary> {
    let path = out_path(
        &config.out_dir,
        &format!("zeros_{}x{}.tsv", config.zeros_count, config.refine_digits),
    );
    let table = if config.zeros_count == 0 {
        eprintln!("warning: zero count is 0, writing an empty table");
        ZeroTable::empty("empty request")
    } else {
        zeros_for(config, config.zeros_count)?
    };
    std::fs::create_dir_all(&config.out_dir)?;
    persist_table(&table, std::fs::File::create(&path)?)?;
    let max_residual = table
        .zeros()
        .iter()
        .filter_map(|z| z.residual.clone())
        .max_by(|a, b| a.partial_cmp(b).expect("residuals are finite"));
    let extremes = if table.is_empty() {
        None
    } else {
        Some(scan_derivative_extremes(&table, 1, table.count())?)
    };
    Ok(RefineSummary {
        table,
        max_residual,
        extremes,
        path,
    })
}

pub struct ScanResult {
    pub extremes: DerivativeExtremes,
    pub path: PathBuf,
}

pub fn cmd_scan_zeta_prime(config: &ExperimentConfig) -> anyhow::Result<ScanResult> {
    let table = zeros_for(config, config.zeros_count)?;
    let extremes = scan_derivative_extremes(&table, 1, table.count())?;
    let mut file = DataFile::new("zeta_prime_scan");
    file.header("count", table.count())
        .header("precision_digits", table.precision_digits())
        .header("zero_table_fingerprint", table_fingerprint(&table))
        .header("min", format!("{} at l = {}", sci(&extremes.min.1, 12), extremes.min.0))
        .header("max", format!("{} at l = {}", sci(&extremes.max.1, 12), extremes.max.0))
        .columns(&["l", "gamma", "abs_zeta_prime", "re", "im"]);
    for z in table.zeros() {
        let d = z.zeta_prime.as_ref().expect("prepared with derivatives");
        let m = Float::with_val(d.prec().0, d.abs_ref());
        file.row(vec![
            z.index.to_string(),
            sci(&z.gamma, 20),
            sci(&m, 15),
            sci(d.real(), 15),
            sci(d.imag(), 15),
        ]);
    }
    let path = out_path(&config.out_dir, "zeta_prime_scan.csv");
    file.write(&path)?;
    Ok(ScanResult { extremes, path })
}

pub fn ensure_dir(p: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(p).with_context(|| format!("creating {}", p.display()))
}

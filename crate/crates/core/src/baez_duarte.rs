//! The Báez-Duarte sequence
//!
//! ```text
//! c_k = Σ_{j=0}^{k} (-1)^j C(k, j) / ζ(2j + 2)
//! ```
//!
//! by the binomial sum, and by the explicit formula `c_k = c̄_k + c̃_k`: a
//! trend over the trivial zeros plus an oscillation over the nontrivial ones.

use std::ops::ControlFlow;

use rug::{Complex, Float, Integer};

use crate::accel::{sumalt, AccelRequest};
use crate::precision::{digits_of_agreement, Agreement, NumericContext};
use crate::special::{ln_gamma_abs, pi, BinomialRow};
use crate::zeros::{ZeroTable, ZetaZero};
use crate::zeta::{zeta_integer_bits, EvenZetaReciprocals};
use crate::{Error, Result};

/// Guard digits added by [`required_precision_for_generic`].
pub const GENERIC_GUARD_DIGITS: u32 = 50;

/// Default spacing of checkpoint callbacks in the generic sum.
pub const DEFAULT_CHECKPOINT_EVERY: u64 = 1000;

/// `ceil(k·log10 2) + target + 50`: the binomial sum loses about
/// `k·log10 2` digits to cancellation.
pub fn required_precision_for_generic(k: u64, target_digits: u32) -> u32 {
    cancellation_digits(k) + target_digits + GENERIC_GUARD_DIGITS
}

fn cancellation_digits(k: u64) -> u32 {
    (k as f64 * core::f64::consts::LOG10_2).ceil() as u32
}

// ---------------------------------------------------------------------------
// Generic sum
// ---------------------------------------------------------------------------

/// Partial sums `S_n = Σ_{j≤n} (-1)^j C(k,j)/ζ(2j+2)` sampled along the sum.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PartialSumTrace {
    pub rows: Vec<(u64, Float)>,
}

/// Everything needed to continue the generic sum at `next_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenericState {
    pub k: u64,
    pub next_j: u64,
    pub partial_sum: Float,
    /// `C(k, next_j)`, exact.
    pub binomial: Integer,
    pub trace: PartialSumTrace,
    /// Largest `|S_n|` seen so far, with its `n`.
    pub peak: Option<(u64, Float)>,
}

impl GenericState {
    pub fn start(k: u64, bits: u32) -> Self {
        GenericState {
            k,
            next_j: 0,
            partial_sum: Float::new(bits),
            binomial: Integer::from(1),
            trace: PartialSumTrace::default(),
            peak: None,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.next_j > self.k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericOptions {
    /// Record `S_n` whenever `n` is a positive multiple of this; the final
    /// `n = k` is always recorded.
    pub trace_stride: Option<u64>,
    pub checkpoint_every: u64,
}

impl Default for GenericOptions {
    fn default() -> Self {
        GenericOptions {
            trace_stride: None,
            checkpoint_every: DEFAULT_CHECKPOINT_EVERY,
        }
    }
}

#[derive(Debug, Clone)]
pub enum GenericRun {
    Complete { value: Float, state: GenericState },
    /// The callback asked to stop; the state resumes the sum.
    Interrupted(GenericState),
}

/// `c_k` by the binomial sum at the context's working precision.
pub fn ck_generic(k: u64, ctx: &NumericContext, trace_stride: Option<u64>) -> Result<(Float, PartialSumTrace)> {
    let options = GenericOptions {
        trace_stride,
        ..GenericOptions::default()
    };
    match ck_generic_resumable(k, ctx, options, None, |_| ControlFlow::Continue(()))? {
        GenericRun::Complete { value, state } => Ok((value, state.trace)),
        GenericRun::Interrupted(_) => unreachable!("callback never breaks"),
    }
}

/// The generic sum with checkpoint callbacks and resume.
///
/// Terms are added strictly in increasing `j`. `on_checkpoint` sees the
/// state every `checkpoint_every` terms and may stop the run. A resumed run
/// finishes bit-identical to an uninterrupted one.
pub fn ck_generic_resumable(
    k: u64,
    ctx: &NumericContext,
    options: GenericOptions,
    resume: Option<GenericState>,
    mut on_checkpoint: impl FnMut(&GenericState) -> ControlFlow<()>,
) -> Result<GenericRun> {
    let required = cancellation_digits(k) + 10;
    if ctx.precision_digits() < required {
        return Err(Error::InsufficientPrecision {
            have: ctx.precision_digits(),
            required,
        });
    }
    let bits = ctx.working_bits();
    let mut state = match resume {
        Some(s) => {
            if s.k != k {
                return Err(Error::InvalidParameter(format!("resume state is for k = {}, not {k}", s.k)));
            }
            if s.partial_sum.prec() != bits {
                return Err(Error::InvalidParameter(format!(
                    "resume state carries {} bits, the context {bits}",
                    s.partial_sum.prec()
                )));
            }
            s
        }
        None => GenericState::start(k, bits),
    };
    if state.is_complete() {
        let value = state.partial_sum.clone();
        return Ok(GenericRun::Complete { value, state });
    }

    let mut row = BinomialRow::resume(k, state.next_j, state.binomial.clone())?;
    let mut reciprocals = EvenZetaReciprocals::starting_at(state.next_j, bits);
    let every = options.checkpoint_every.max(1);

    loop {
        let j = row.j();
        let inv = reciprocals.next().expect("infinite stream");
        let mut term = Float::with_val(bits, row.value());
        term *= &inv;
        if j % 2 == 0 {
            state.partial_sum += &term;
        } else {
            state.partial_sum -= &term;
        }

        let size = Float::with_val(32, state.partial_sum.abs_ref());
        if state.peak.as_ref().map_or(true, |(_, p)| size > *p) {
            state.peak = Some((j, size));
        }
        let on_stride = options.trace_stride.is_some_and(|s| s > 0 && j > 0 && j % s == 0);
        if on_stride || j == k {
            state.trace.rows.push((j, state.partial_sum.clone()));
        }

        let more = row.advance();
        state.next_j = j + 1;
        state.binomial = row.value().clone();
        if !more {
            break;
        }
        if state.next_j % every == 0 && on_checkpoint(&state).is_break() {
            return Ok(GenericRun::Interrupted(state));
        }
    }
    let value = state.partial_sum.clone();
    Ok(GenericRun::Complete { value, state })
}

// ---------------------------------------------------------------------------
// Trend
// ---------------------------------------------------------------------------

/// `c̄_k = -(2π)^-2 Σ_{m≥2} R_m (-1)^m (2π)^(2m) / ζ(2m-1)` with
/// `R_m = Γ(k+1)Γ(m) / (Γ(k+m+1)Γ(2m-1))`.
///
/// `R_m` is stepped exactly, `R_2 = 1/(2(k+1)(k+2))` and
/// `R_{m+1} = R_m·m / ((k+m+1)(2m-1)(2m))`, and the alternating tail goes
/// through adaptive CVZ.
pub fn ck_trend(k: u64, ctx: &NumericContext) -> Result<Float> {
    let bits = ctx.working_bits();
    let two_pi_sq = Float::with_val(bits, pi(bits) * 2u32).square();
    let mut ratio = Float::new(bits);
    let mut power = Float::new(bits);
    let mut failure: Option<Error> = None;
    let mut source = |n: usize, prec: u32| -> Float {
        let m = n as u64 + 2;
        if n == 0 {
            ratio = Float::with_val(prec, 1u32);
            ratio /= 2 * (k + 1);
            ratio /= k + 2;
            power = Float::with_val(prec, two_pi_sq.square_ref());
        } else {
            let prev = m - 1;
            ratio *= prev;
            ratio /= k + prev + 1;
            ratio /= (2 * prev - 1) * (2 * prev);
            power *= &two_pi_sq;
        }
        match zeta_integer_bits(2 * m - 1, prec) {
            Ok(z) => Float::with_val(prec, &ratio * &power) / z,
            Err(e) => {
                failure.get_or_insert(e);
                Float::new(prec)
            }
        }
    };
    let sum = sumalt(&mut source, &AccelRequest::adaptive(ctx.precision_digits()), ctx)?.value;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(-sum / two_pi_sq)
}

/// `-(2π)² / (2ζ(3))`, the limit of `k²·c̄_k`.
pub fn trend_asymptote(ctx: &NumericContext) -> Result<Float> {
    let bits = ctx.working_bits();
    let two_pi_sq = Float::with_val(bits, pi(bits) * 2u32).square();
    let z3 = zeta_integer_bits(3, bits)?;
    Ok(-(two_pi_sq / z3) / 2u32)
}

// ---------------------------------------------------------------------------
// Pochhammer products
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochhammerMethod {
    Product,
    GammaRatio,
}

/// `P_k(s) = Π_{r=1}^{k} (1 - s/r) = (-1)^k Γ(s) / (Γ(k+1) Γ(s-k))`.
pub fn pochhammer_pk(k: u64, s: &Complex, ctx: &NumericContext, method: PochhammerMethod) -> Result<Complex> {
    let bits = ctx.working_bits();
    match method {
        PochhammerMethod::Product => {
            let mut p = Complex::with_val(bits, (1u32, 0u32));
            for r in 1..=k {
                let mut f = Complex::with_val(bits, s / r);
                f = 1u32 - f;
                p *= f;
            }
            Ok(p)
        }
        PochhammerMethod::GammaRatio => {
            if s.imag().is_zero() && s.real().is_integer() && s.real() <= &(k as f64) {
                return Err(Error::Domain(
                    "gamma-ratio form is degenerate at integer s <= k; use the product form".into(),
                ));
            }
            let wp = bits + 16;
            let s_minus_k = Complex::with_val(wp, s - k);
            let kp1 = Complex::with_val(wp, (k + 1, 0u32));
            let mut lg = ln_gamma_abs(s, wp)?;
            lg -= ln_gamma_abs(&kp1, wp)?;
            lg -= ln_gamma_abs(&s_minus_k, wp)?;
            let mut v = Complex::with_val(wp, lg.exp_ref());
            if k % 2 == 1 {
                v = -v;
            }
            v.set_prec(bits);
            Ok(v)
        }
    }
}

// ---------------------------------------------------------------------------
// Oscillation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscillationForm {
    /// Gamma-ratio form, no `k+1 → k` replacement.
    Exact,
    /// `k^-3/4 Re Σ k^(iγ/2) Γ(3/4 - iγ/2) / ζ′(ρ)`.
    Asymptotic,
}

fn usable_zeros<'a>(table: &'a ZeroTable, l: usize, ctx: &NumericContext) -> Result<&'a [ZetaZero]> {
    if l > table.count() {
        return Err(Error::TableTooShort {
            needed: l,
            available: table.count(),
        });
    }
    let zeros = &table.zeros()[..l];
    for z in zeros {
        if z.zeta_prime.is_none() {
            return Err(Error::Zero {
                index: z.index,
                reason: "no derivative attached".into(),
            });
        }
        if z.precision_digits < ctx.precision_digits() {
            return Err(Error::Zero {
                index: z.index,
                reason: format!(
                    "stored at {} digits, below the {} the evaluation needs",
                    z.precision_digits,
                    ctx.precision_digits()
                ),
            });
        }
    }
    Ok(zeros)
}

/// Per-zero contributions to `c̃_k`, in increasing ordinate, each already a
/// real number (conjugate pairs folded into the real part).
pub fn oscillation_terms(
    k: u64,
    table: &ZeroTable,
    l: usize,
    ctx: &NumericContext,
    form: OscillationForm,
) -> Result<Vec<Float>> {
    let zeros = usable_zeros(table, l, ctx)?;
    match form {
        OscillationForm::Exact => exact_terms(k, zeros, ctx),
        OscillationForm::Asymptotic => asymptotic_terms(k, zeros, ctx),
    }
}

/// `(-1)^(k+1) Re[Γ(k+1) Γ(ρ/2-k-1) / (Γ(ρ/2) ζ′(ρ))]`, assembled as one
/// exponential of a sum of logarithms.
fn exact_terms(k: u64, zeros: &[ZetaZero], ctx: &NumericContext) -> Result<Vec<Float>> {
    let bits = ctx.working_bits();
    let wp = bits + 20;
    let ln_k_fact = ln_gamma_abs(&Complex::with_val(wp, (k + 1, 0u32)), wp)?;
    let mut out = Vec::with_capacity(zeros.len());
    for z in zeros {
        let half_rho = Complex::with_val(wp, (0.25f64, Float::with_val(wp, &z.gamma / 2u32)));
        let shifted = Complex::with_val(wp, &half_rho - (k + 1));
        let mut lg = ln_k_fact.clone();
        lg += ln_gamma_abs(&shifted, wp).map_err(|e| zero_error(z, e))?;
        lg -= ln_gamma_abs(&half_rho, wp).map_err(|e| zero_error(z, e))?;
        let d = Complex::with_val(wp, z.zeta_prime.as_ref().expect("checked"));
        lg -= d.ln();
        let v = lg.exp();
        let mut re = Float::with_val(bits, v.real());
        if k % 2 == 0 {
            re = -re;
        }
        out.push(re);
    }
    Ok(out)
}

fn zero_error(z: &ZetaZero, e: Error) -> Error {
    Error::Zero {
        index: z.index,
        reason: e.to_string(),
    }
}

/// `Γ(3/4 - iγ/2) / ζ′(1/2 + iγ)`, the constant in front of `k^(iγ/2 - 3/4)`.
pub fn asymptotic_coefficient(z: &ZetaZero, bits: u32) -> Result<Complex> {
    let d = z.zeta_prime.as_ref().ok_or_else(|| Error::Zero {
        index: z.index,
        reason: "no derivative attached".into(),
    })?;
    let wp = bits + 16;
    let arg = Complex::with_val(wp, (0.75f64, -(Float::with_val(wp, &z.gamma / 2u32))));
    let mut lg = ln_gamma_abs(&arg, wp)?;
    lg -= Complex::with_val(wp, d).ln();
    let mut v = lg.exp();
    v.set_prec(bits);
    Ok(v)
}

fn asymptotic_terms(k: u64, zeros: &[ZetaZero], ctx: &NumericContext) -> Result<Vec<Float>> {
    let bits = ctx.working_bits();
    let wp = bits + 16;
    let ln_k = Float::with_val(wp, k.max(1)).ln();
    let mut scale = Float::with_val(wp, &ln_k * -0.75f64).exp();
    if k == 0 {
        scale = Float::new(wp);
    }
    let mut out = Vec::with_capacity(zeros.len());
    for z in zeros {
        let g = asymptotic_coefficient(z, wp)?;
        let angle = Float::with_val(wp, &z.gamma * &ln_k) / 2u32;
        let (sin, cos) = angle.sin_cos(Float::new(wp));
        // Re[(cos + i sin)(g_re + i g_im)]
        let mut re = Float::with_val(wp, &cos * g.real());
        re -= Float::with_val(wp, &sin * g.imag());
        re *= &scale;
        out.push(Float::with_val(bits, re));
    }
    Ok(out)
}

pub fn ck_oscillation_exact(k: u64, table: &ZeroTable, l: usize, ctx: &NumericContext) -> Result<Float> {
    sum_terms(oscillation_terms(k, table, l, ctx, OscillationForm::Exact)?, ctx)
}

pub fn ck_oscillation_asymptotic(k: u64, table: &ZeroTable, l: usize, ctx: &NumericContext) -> Result<Float> {
    sum_terms(oscillation_terms(k, table, l, ctx, OscillationForm::Asymptotic)?, ctx)
}

fn sum_terms(terms: Vec<Float>, ctx: &NumericContext) -> Result<Float> {
    let mut s = Float::new(ctx.working_bits());
    for t in terms {
        s += t;
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// One-zero approximation and envelope
// ---------------------------------------------------------------------------

/// `c̃_k ≈ A k^(-3/4) sin(φ - (γ_1/2) ln k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SineApprox {
    pub amplitude: Float,
    /// In `[0, 2π)`.
    pub phase: Float,
    pub gamma: Float,
}

impl SineApprox {
    pub fn value(&self, k: u64) -> Float {
        let prec = self.amplitude.prec();
        let ln_k = Float::with_val(prec, k).ln();
        let mut arg = Float::with_val(prec, &self.gamma * &ln_k) / 2u32;
        arg = Float::with_val(prec, &self.phase - &arg);
        let mut v = arg.sin();
        v *= &self.amplitude;
        v *= Float::with_val(prec, ln_k * -0.75f64).exp();
        v
    }
}

/// `A = |G|`, `φ = π/2 - arg G` with `G = Γ(3/4 - iγ_1/2)/ζ′(ρ_1)`, which
/// makes the sine identical to the first term of the asymptotic form.
pub fn sine_approx_params(zero: &ZetaZero, ctx: &NumericContext) -> Result<SineApprox> {
    let bits = ctx.working_bits();
    let g = asymptotic_coefficient(zero, bits)?;
    let amplitude = Float::with_val(bits, g.abs_ref());
    let two_pi = Float::with_val(bits, pi(bits) * 2u32);
    let mut phase = Float::with_val(bits, pi(bits) / 2u32);
    phase -= Float::with_val(bits, g.arg_ref());
    phase %= &two_pi;
    if phase < 0 {
        phase += &two_pi;
    }
    Ok(SineApprox {
        amplitude,
        phase,
        gamma: Float::with_val(bits, &zero.gamma),
    })
}

/// `±A k^(-3/4)`.
pub fn envelope(k: u64, sine: &SineApprox) -> (Float, Float) {
    let prec = sine.amplitude.prec();
    let mut up = Float::with_val(prec, k).ln();
    up *= -0.75f64;
    up = up.exp();
    up *= &sine.amplitude;
    let down = Float::with_val(prec, -&up);
    (up, down)
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum YValue {
    Value(Float),
    /// `S_n - c_generic` vanished at working precision.
    Saturated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct YPoint {
    pub n: usize,
    /// `γ_n`, absent for `n = 0`.
    pub gamma: Option<Float>,
    pub delta: Float,
    pub y: YValue,
}

/// `y_n = -1/ln|S_n - c_generic|` with `S_n` the trend plus the first `n`
/// oscillation terms, for `n = 0 … n_max`.
///
/// The leading minus makes `y_n` positive for `|Δ| < 1`; in the converging
/// regime `y_n ≈ 4/(πγ_(n+1))`.
pub fn y_curve(
    k: u64,
    c_generic: &Float,
    table: &ZeroTable,
    n_max: usize,
    ctx: &NumericContext,
    form: OscillationForm,
) -> Result<Vec<YPoint>> {
    let terms = oscillation_terms(k, table, n_max, ctx, form)?;
    let trend = ck_trend(k, ctx)?;
    let prec = ctx.working_bits().max(c_generic.prec());
    let mut partial = Float::with_val(prec, &trend);
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            partial += &terms[n - 1];
        }
        let delta = Float::with_val(prec, &partial - c_generic);
        let y = if delta.is_zero() {
            YValue::Saturated
        } else {
            let ln = Float::with_val(prec, delta.abs_ref()).ln();
            YValue::Value(-Float::with_val(64, ln.recip_ref()))
        };
        out.push(YPoint {
            n,
            gamma: (n > 0).then(|| table.zeros()[n - 1].gamma.clone()),
            delta: Float::with_val(64, &delta),
            y,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZerosNeeded {
    /// `target·4 ln 10 / π`, where `e^(-πγ/4) = 10^-target`.
    pub gamma_needed: f64,
    /// Last zero with `γ_L ≤ gamma_needed`; `None` when the table ends first.
    pub l: Option<usize>,
}

pub fn zeros_needed(target_digits: u32, table: &ZeroTable) -> ZerosNeeded {
    let gamma_needed = target_digits as f64 * 4.0 * core::f64::consts::LN_10 / core::f64::consts::PI;
    let zeros = table.zeros();
    let l = if target_digits == 0 {
        Some(0)
    } else {
        let below = zeros.partition_point(|z| z.gamma.to_f64() <= gamma_needed);
        (below < zeros.len()).then_some(below)
    };
    ZerosNeeded { gamma_needed, l }
}

/// `log10 K = log10 C′ + (2γ/δ)·log10 e` for a zero `β + iγ` with
/// `β = 1/2 + δ`.
pub fn violation_index_estimate(delta: f64, gamma_off: f64, c_ratio: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 0.5) || !(gamma_off > 0.0) || !(c_ratio > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < delta < 1/2 and positive gamma, C' (got {delta}, {gamma_off}, {c_ratio})"
        )));
    }
    Ok(c_ratio.log10() + 2.0 * gamma_off / delta * core::f64::consts::LOG10_E)
}

// ---------------------------------------------------------------------------
// Comparison
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct BaezDuarteResult {
    pub k: u64,
    pub c_generic: Float,
    pub c_trend: Float,
    pub c_osc_exact: Float,
    pub c_osc_asymptotic: Float,
    pub zeros_used: usize,
    pub agreement: Agreement,
    pub context_fingerprint: String,
}

impl BaezDuarteResult {
    /// `c̄_k + c̃_k` with the exact oscillation.
    pub fn c_explicit(&self) -> Float {
        let prec = self.c_trend.prec().max(self.c_osc_exact.prec());
        Float::with_val(prec, &self.c_trend + &self.c_osc_exact)
    }
}

/// Runs both routes. `generic_ctx` must cover the cancellation in the
/// binomial sum; `explicit_ctx` sets the precision of trend and oscillation
/// and may not exceed the precision of the stored zeros.
pub fn compare(
    k: u64,
    generic_ctx: &NumericContext,
    explicit_ctx: &NumericContext,
    table: &ZeroTable,
    l: usize,
) -> Result<BaezDuarteResult> {
    let (c_generic, _) = ck_generic(k, generic_ctx, None)?;
    compare_with_generic(k, c_generic, generic_ctx, explicit_ctx, table, l)
}

pub fn compare_with_generic(
    k: u64,
    c_generic: Float,
    generic_ctx: &NumericContext,
    explicit_ctx: &NumericContext,
    table: &ZeroTable,
    l: usize,
) -> Result<BaezDuarteResult> {
    let c_trend = ck_trend(k, explicit_ctx)?;
    let c_osc_exact = ck_oscillation_exact(k, table, l, explicit_ctx)?;
    let c_osc_asymptotic = ck_oscillation_asymptotic(k, table, l, explicit_ctx)?;
    let explicit = Float::with_val(explicit_ctx.working_bits(), &c_trend + &c_osc_exact);
    let agreement = digits_of_agreement(&c_generic, &explicit)?;
    Ok(BaezDuarteResult {
        k,
        c_generic,
        c_trend,
        c_osc_exact,
        c_osc_asymptotic,
        zeros_used: l,
        agreement,
        context_fingerprint: format!(
            "generic:{};explicit:{};zeros:increasing-ordinate",
            generic_ctx.fingerprint(),
            explicit_ctx.fingerprint()
        ),
    })
}

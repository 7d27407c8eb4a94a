//! Cohen–Villegas–Zagier acceleration of alternating series
//! `Σ_{n≥0} (-1)^n a_n`.
//!
//! The weights are the Chebyshev ones: with `d = ((3+√8)^N + (3+√8)^-N)/2`,
//! the partial weights `c_n` come out of a two-term recurrence and the sum is
//! `Σ c_n a_n / d`. For totally monotone real `a_n` the error is at most
//! `3·(3+√8)^-N·a_0`. For complex terms no such bound is known and the
//! adaptive mode doubles `N` until two doublings agree.

use rug::ops::PowAssign;
use rug::{Complex, Float};

use crate::precision::NumericContext;
use crate::{Error, Result};

/// `ln(3 + √8)`.
const LN_RATE: f64 = 1.762_747_174_039_086_f64;

/// Terms the fixed mode adds on top of the digit formula.
pub const GUARD_TERMS: usize = 2;

/// `ceil(digits·ln 10 / ln(3+√8))`.
pub fn cvz_terms(digits: u32) -> usize {
    (digits as f64 * core::f64::consts::LN_10 / LN_RATE).ceil() as usize
}

/// Values the accelerator can accumulate: reals, complex numbers, and small
/// fixed bundles of complex numbers that share one set of weights.
pub trait AccelValue: Clone {
    fn zero(prec: u32) -> Self;
    /// `self += c·term`.
    fn add_weighted(&mut self, c: &Float, term: &Self);
    fn div_float(&mut self, d: &Float);
    /// Size used for stopping decisions; the largest component modulus.
    fn size(&self) -> Float;
    fn distance(&self, other: &Self) -> Float;
    fn describe(&self) -> String;
}

impl AccelValue for Float {
    fn zero(prec: u32) -> Self {
        Float::new(prec)
    }

    fn add_weighted(&mut self, c: &Float, term: &Self) {
        let prec = self.prec();
        *self += Float::with_val(prec, c * term);
    }

    fn div_float(&mut self, d: &Float) {
        *self /= d;
    }

    fn size(&self) -> Float {
        Float::with_val(64, self.abs_ref())
    }

    fn distance(&self, other: &Self) -> Float {
        Float::with_val(64, Float::with_val(self.prec(), self - other).abs_ref())
    }

    fn describe(&self) -> String {
        self.to_string_radix(10, Some(20))
    }
}

impl AccelValue for Complex {
    fn zero(prec: u32) -> Self {
        Complex::new(prec)
    }

    fn add_weighted(&mut self, c: &Float, term: &Self) {
        let prec = self.prec();
        *self += Complex::with_val(prec, term * c);
    }

    fn div_float(&mut self, d: &Float) {
        *self /= d;
    }

    fn size(&self) -> Float {
        Float::with_val(64, self.abs_ref())
    }

    fn distance(&self, other: &Self) -> Float {
        Float::with_val(64, Complex::with_val(self.prec(), self - other).abs_ref())
    }

    fn describe(&self) -> String {
        format!(
            "{} + {}i",
            self.real().to_string_radix(10, Some(20)),
            self.imag().to_string_radix(10, Some(20))
        )
    }
}

impl<const M: usize> AccelValue for [Complex; M] {
    fn zero(prec: u32) -> Self {
        core::array::from_fn(|_| Complex::new(prec))
    }

    fn add_weighted(&mut self, c: &Float, term: &Self) {
        for (a, t) in self.iter_mut().zip(term) {
            a.add_weighted(c, t);
        }
    }

    fn div_float(&mut self, d: &Float) {
        for a in self.iter_mut() {
            *a /= d;
        }
    }

    fn size(&self) -> Float {
        self.iter()
            .map(AccelValue::size)
            .fold(Float::new(64), |a, b| a.max(&b))
    }

    fn distance(&self, other: &Self) -> Float {
        self.iter()
            .zip(other)
            .map(|(a, b)| a.distance(b))
            .fold(Float::new(64), |a, b| a.max(&b))
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.iter().map(AccelValue::describe).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Indexed provider of the unsigned terms `a_n`.
///
/// The accelerator asks for each index at most once and in increasing order,
/// so providers may build `a_n` from earlier state (sieves, running powers).
pub trait TermSource<V> {
    fn term(&mut self, n: usize, prec: u32) -> V;
}

impl<V, F: FnMut(usize, u32) -> V> TermSource<V> for F {
    fn term(&mut self, n: usize, prec: u32) -> V {
        self(n, prec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccelMode {
    /// `N` from the digit formula plus [`GUARD_TERMS`] and any extra terms.
    FixedN,
    /// Double `N` until successive sums agree to the target.
    Adaptive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccelRequest {
    pub target_digits: u32,
    pub mode: AccelMode,
    /// Added to the initial `N`; callers pass `ceil(|Im s|)` for complex `s`.
    pub extra_terms: usize,
    /// Adaptive ceiling as a multiple of the initial `N`.
    pub ceiling_factor: usize,
}

impl AccelRequest {
    pub const DEFAULT_CEILING_FACTOR: usize = 64;

    pub fn fixed(target_digits: u32) -> Self {
        AccelRequest {
            target_digits,
            mode: AccelMode::FixedN,
            extra_terms: 0,
            ceiling_factor: Self::DEFAULT_CEILING_FACTOR,
        }
    }

    pub fn adaptive(target_digits: u32) -> Self {
        AccelRequest {
            mode: AccelMode::Adaptive,
            ..Self::fixed(target_digits)
        }
    }

    pub fn with_extra_terms(mut self, extra: usize) -> Self {
        self.extra_terms = extra;
        self
    }

    pub fn initial_terms(&self) -> usize {
        cvz_terms(self.target_digits) + GUARD_TERMS + self.extra_terms
    }
}

#[derive(Debug, Clone)]
pub struct AccelDiagnostics {
    pub terms_used: usize,
    /// Absolute error estimate: the CVZ bound in fixed mode, the last
    /// doubling change in adaptive mode.
    pub estimated_error: Float,
    /// `true` when the estimate rests on doubling agreement rather than the
    /// proven bound, which is always the case in adaptive mode.
    pub heuristic: bool,
    pub doublings: u32,
}

#[derive(Debug, Clone)]
pub struct Accelerated<V> {
    pub value: V,
    pub diagnostics: AccelDiagnostics,
}

/// Sum `Σ (-1)^n a_n` at the context's working precision.
pub fn sumalt<V, S>(source: &mut S, request: &AccelRequest, ctx: &NumericContext) -> Result<Accelerated<V>>
where
    V: AccelValue,
    S: TermSource<V>,
{
    if request.target_digits == 0 || request.target_digits > ctx.working_digits() {
        return Err(Error::InvalidParameter(format!(
            "sumalt target of {} digits outside 1..={}",
            request.target_digits,
            ctx.working_digits()
        )));
    }
    let prec = ctx.working_bits();
    let mut terms = TermCache::new(source, prec);
    let n0 = request.initial_terms();

    match request.mode {
        AccelMode::FixedN => {
            let value = weighted_sum(&mut terms, n0, prec);
            let mut bound = terms.get(0).size();
            bound *= 3u32;
            bound /= rate_power(n0);
            Ok(Accelerated {
                value,
                diagnostics: AccelDiagnostics {
                    terms_used: n0,
                    estimated_error: bound,
                    heuristic: false,
                    doublings: 0,
                },
            })
        }
        AccelMode::Adaptive => {
            let ceiling = n0 * request.ceiling_factor.max(1);
            let tolerance = {
                let mut t = Float::with_val(64, Float::u_pow_u(10, request.target_digits));
                t.recip_mut();
                t
            };
            let mut n = n0;
            let mut previous = weighted_sum(&mut terms, n, prec);
            let mut last_change: Option<Float> = None;
            let mut doublings = 0;
            loop {
                let next_n = 2 * n;
                if next_n > ceiling {
                    return Err(Error::NonConvergence {
                        terms: n,
                        best_estimate: previous.describe(),
                        last_change: last_change
                            .map_or_else(|| "n/a".to_string(), |c| c.to_string_radix(10, Some(6))),
                    });
                }
                let current = weighted_sum(&mut terms, next_n, prec);
                doublings += 1;
                let change = current.distance(&previous);
                let scale = current.size().max(&terms.get(0).size()).max(&terms.get(1).size());
                if change <= Float::with_val(64, &tolerance * &scale) {
                    return Ok(Accelerated {
                        value: current,
                        diagnostics: AccelDiagnostics {
                            terms_used: next_n,
                            estimated_error: change,
                            heuristic: true,
                            doublings,
                        },
                    });
                }
                previous = current;
                last_change = Some(change);
                n = next_n;
            }
        }
    }
}

/// `Σ (-1)^n a_n` with exactly `n` CVZ terms, no stopping logic.
pub fn sumalt_terms<V, S>(source: &mut S, n: usize, prec: u32) -> V
where
    V: AccelValue,
    S: TermSource<V>,
{
    let mut terms = TermCache::new(source, prec);
    weighted_sum(&mut terms, n, prec)
}

struct TermCache<'a, V, S> {
    source: &'a mut S,
    prec: u32,
    values: Vec<V>,
}

impl<'a, V: AccelValue, S: TermSource<V>> TermCache<'a, V, S> {
    fn new(source: &'a mut S, prec: u32) -> Self {
        TermCache {
            source,
            prec,
            values: Vec::new(),
        }
    }

    fn get(&mut self, n: usize) -> &V {
        while self.values.len() <= n {
            let next = self.values.len();
            let v = self.source.term(next, self.prec);
            self.values.push(v);
        }
        &self.values[n]
    }
}

/// `(3+√8)^n` at 64 bits, for error bounds only.
fn rate_power(n: usize) -> Float {
    let mut r = Float::with_val(64, 8u32).sqrt();
    r += 3u32;
    r.pow_assign(n as u32);
    r
}

fn weighted_sum<V: AccelValue, S: TermSource<V>>(terms: &mut TermCache<'_, V, S>, n: usize, prec: u32) -> V {
    let mut d = Float::with_val(prec, 8u32).sqrt();
    d += 3u32;
    d.pow_assign(n as u32);
    let inv = Float::with_val(prec, d.recip_ref());
    d += inv;
    d /= 2u32;

    let mut b = Float::with_val(prec, -1i32);
    let mut c = Float::with_val(prec, -&d);
    let mut s = V::zero(prec);
    let nn = n as i64;
    for k in 0..n {
        c = Float::with_val(prec, &b - &c);
        s.add_weighted(&c, terms.get(k));
        // b ← b·2(k+N)(k−N) / ((2k+1)(k+1)); the numerator is ≤ 0.
        let ki = k as i64;
        let num = 2 * (ki + nn) * (nn - ki);
        let den = (2 * ki + 1) * (ki + 1);
        b *= num;
        b /= den;
        b = -b;
    }
    s.div_float(&d);
    s
}

//! Precision accounting and the digit-agreement metric.
//!
//! Precision is tracked in decimal digits throughout and converted to MPFR
//! bits only at the point of allocation.

use core::fmt;
use core::str::FromStr;

use rug::float::Round;
use rug::ops::NegAssign;
use rug::Float;

use crate::{Error, Result};

/// Smallest precision accepted by [`NumericContext::new`].
pub const MIN_PRECISION_DIGITS: u32 = 10;

/// Decimal digits to the number of bits needed to hold them: `ceil(d·log2 10)`.
pub fn digits_to_bits(digits: u32) -> u32 {
    // log2(10) to 18 digits, scaled.
    const LOG2_10_E17: u128 = 332_192_809_488_736_235;
    const SCALE: u128 = 100_000_000_000_000_000;
    let bits = (digits as u128 * LOG2_10_E17).div_ceil(SCALE);
    bits.max(2) as u32
}

/// Bits to the number of whole decimal digits they carry.
pub fn bits_to_digits(bits: u32) -> u32 {
    (bits as f64 * core::f64::consts::LOG10_2).floor() as u32
}

/// Working-precision multiplier for ill-conditioned evaluations, kept as an
/// exact fraction `num/den ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Oversample {
    num: u32,
    den: u32,
}

impl Oversample {
    pub const ONE: Oversample = Oversample { num: 1, den: 1 };
    pub const DOUBLE: Oversample = Oversample { num: 2, den: 1 };

    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num < den {
            return Err(Error::InvalidParameter(format!(
                "oversample factor {num}/{den} must be a fraction >= 1"
            )));
        }
        let g = gcd(num, den);
        Ok(Oversample {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numerator(&self) -> u32 {
        self.num
    }

    pub fn denominator(&self) -> u32 {
        self.den
    }

    /// `ceil(factor × digits)`.
    pub fn apply(&self, digits: u32) -> u32 {
        (digits as u64 * self.num as u64).div_ceil(self.den as u64) as u32
    }
}

impl Default for Oversample {
    fn default() -> Self {
        Oversample::DOUBLE
    }
}

impl fmt::Display for Oversample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Accepts `"2"`, `"3/2"` and finite decimals such as `"1.5"`.
impl FromStr for Oversample {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse oversample factor {s:?}"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d = d.trim().parse().map_err(|_| bad())?;
            return Oversample::new(n, d);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.len() > 6 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10u32.pow(frac.len() as u32);
            let int: u32 = int.parse().map_err(|_| bad())?;
            let frac: u32 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
            let num = int
                .checked_mul(den)
                .and_then(|v| v.checked_add(frac))
                .ok_or_else(bad)?;
            return Oversample::new(num, den);
        }
        Oversample::new(s.parse().map_err(|_| bad())?, 1)
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Working precision, guard digits and oversampling policy.
///
/// Immutable once built; every evaluation in the crate is a deterministic
/// function of its inputs and the context, rounding to nearest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NumericContext {
    precision_digits: u32,
    guard_digits: u32,
    oversample: Oversample,
}

impl NumericContext {
    pub const DEFAULT_GUARD_DIGITS: u32 = 20;

    pub fn new(precision_digits: u32, guard_digits: u32, oversample: Oversample) -> Result<Self> {
        if precision_digits < MIN_PRECISION_DIGITS {
            return Err(Error::PrecisionTooLow {
                requested: precision_digits,
                minimum: MIN_PRECISION_DIGITS,
            });
        }
        Ok(NumericContext {
            precision_digits,
            guard_digits,
            oversample,
        })
    }

    /// Context with the default guard digits and a 2× oversampling factor.
    pub fn with_digits(precision_digits: u32) -> Result<Self> {
        Self::new(precision_digits, Self::DEFAULT_GUARD_DIGITS, Oversample::DOUBLE)
    }

    pub fn precision_digits(&self) -> u32 {
        self.precision_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn oversample(&self) -> Oversample {
        self.oversample
    }

    /// `precision_digits + guard_digits`.
    pub fn working_digits(&self) -> u32 {
        self.precision_digits + self.guard_digits
    }

    /// `ceil(oversample × precision_digits) + guard_digits`.
    pub fn oversampled_digits(&self) -> u32 {
        self.oversample.apply(self.precision_digits) + self.guard_digits
    }

    pub fn working_bits(&self) -> u32 {
        digits_to_bits(self.working_digits())
    }

    pub fn oversampled_bits(&self) -> u32 {
        digits_to_bits(self.oversampled_digits())
    }

    /// Same guard and oversampling policy at a different precision.
    pub fn with_precision(&self, precision_digits: u32) -> Result<Self> {
        Self::new(precision_digits, self.guard_digits, self.oversample)
    }

    /// The context an oversampled evaluation runs in: precision
    /// `ceil(factor × p)`, same guard digits, no further oversampling.
    pub fn oversampled(&self) -> Self {
        NumericContext {
            precision_digits: self.oversample.apply(self.precision_digits),
            guard_digits: self.guard_digits,
            oversample: Oversample::ONE,
        }
    }

    /// Stable identifier, recorded in every emitted file.
    pub fn fingerprint(&self) -> String {
        format!(
            "p{}-g{}-o{}-round-nearest",
            self.precision_digits, self.guard_digits, self.oversample
        )
    }

    /// A zero at working precision.
    pub fn real(&self) -> Float {
        Float::new(self.working_bits())
    }
}

/// Result of [`digits_of_agreement`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Agreement {
    Digits(u32),
    /// `a = b` exactly at the precision of the inputs.
    All,
}

impl Agreement {
    /// The digit count, with `All` mapped to `u32::MAX`.
    pub fn digits(&self) -> u32 {
        match *self {
            Agreement::Digits(d) => d,
            Agreement::All => u32::MAX,
        }
    }
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Agreement::Digits(d) => write!(f, "{d}"),
            Agreement::All => f.write_str("all"),
        }
    }
}

/// `|a/b - 1|` at the larger of the two input precisions.
pub fn relative_discrepancy(a: &Float, b: &Float) -> Result<Float> {
    if b.is_zero() {
        return Err(Error::Domain("relative discrepancy against b = 0".into()));
    }
    let prec = a.prec().max(b.prec());
    let mut r = Float::with_val(prec, a / b);
    r -= 1u32;
    r.abs_mut();
    Ok(r)
}

/// `d = floor(-log10 |a/b - 1|)`, so that `10^-(d+1) < |a/b - 1| <= 10^-d`.
///
/// Discrepancies of order one or larger report zero digits.
pub fn digits_of_agreement(a: &Float, b: &Float) -> Result<Agreement> {
    let r = relative_discrepancy(a, b)?;
    if r.is_zero() {
        return Ok(Agreement::All);
    }
    if r >= 1u32 {
        return Ok(Agreement::Digits(0));
    }
    let prec = r.prec();
    let mut lg = Float::with_val(prec, r.log10_ref());
    lg.neg_assign();
    let mut d = lg.to_f64_round(Round::Down).floor().max(0.0) as i64;
    // log10 rounding can land one off at exact powers of ten; settle it
    // against the bracket directly.
    let pow10 = |e: i64| {
        let mut x = Float::with_val(prec, Float::u_pow_u(10, e as u32));
        x.recip_mut();
        x
    };
    while d > 0 && r > pow10(d) {
        d -= 1;
    }
    while r <= pow10(d + 1) {
        d += 1;
    }
    Ok(Agreement::Digits(d as u32))
}

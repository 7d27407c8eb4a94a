//! Nontrivial zeros `ρ_l = 1/2 + iγ_l`: ingestion of published ordinates,
//! Newton refinement, residual checks, stored derivatives, and a lossless
//! text format.

use std::io::{BufRead, Write};

use rug::{Complex, Float};

use crate::precision::{digits_to_bits, NumericContext};
use crate::zeta::{zeta_and_derivative, zeta_complex, zeta_prime};
use crate::{Error, Result};

/// Seeds must sit this close to the zero they are meant to find.
pub const BASIN_GUARD: f64 = 0.4;

/// Digits carried on top of a zero's nominal precision when it is stored.
pub const STORAGE_GUARD_DIGITS: u32 = 10;

/// Bits used to store a zero, or its derivative, of `precision_digits`.
pub fn storage_bits(precision_digits: u32) -> u32 {
    digits_to_bits(precision_digits + STORAGE_GUARD_DIGITS)
}

const RESIDUAL_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct ZetaZero {
    pub index: usize,
    pub gamma: Float,
    pub precision_digits: u32,
    /// `|ζ(1/2 + iγ)|` once verified.
    pub residual: Option<Float>,
    pub zeta_prime: Option<Complex>,
}

impl ZetaZero {
    pub fn new(index: usize, gamma: Float, precision_digits: u32) -> Self {
        ZetaZero {
            index,
            gamma,
            precision_digits,
            residual: None,
            zeta_prime: None,
        }
    }

    /// `1/2 + iγ` at the given precision.
    pub fn rho(&self, prec: u32) -> Complex {
        Complex::with_val(prec, (0.5f64, &self.gamma))
    }

    /// Whether the stored residual meets `< 10^-(precision_digits - 4)`.
    pub fn is_verified(&self) -> bool {
        self.residual
            .as_ref()
            .is_some_and(|r| residual_passes(r, self.precision_digits))
    }
}

fn residual_passes(residual: &Float, digits: u32) -> bool {
    let mut limit = Float::with_val(RESIDUAL_BITS, Float::u_pow_u(10, digits.saturating_sub(4)));
    limit.recip_mut();
    residual < &limit
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    zeros: Vec<ZetaZero>,
    source: String,
}

impl ZeroTable {
    /// Checks that indices run `1..=count` and ordinates strictly increase.
    pub fn new(zeros: Vec<ZetaZero>, source: impl Into<String>) -> Result<Self> {
        for (i, z) in zeros.iter().enumerate() {
            if z.index != i + 1 {
                return Err(Error::Zero {
                    index: z.index,
                    reason: format!("expected index {}", i + 1),
                });
            }
            if i > 0 && z.gamma <= zeros[i - 1].gamma {
                return Err(Error::Zero {
                    index: z.index,
                    reason: "ordinate does not increase".into(),
                });
            }
        }
        Ok(ZeroTable {
            zeros,
            source: source.into(),
        })
    }

    pub fn empty(source: impl Into<String>) -> Self {
        ZeroTable {
            zeros: Vec::new(),
            source: source.into(),
        }
    }

    pub fn zeros(&self) -> &[ZetaZero] {
        &self.zeros
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn count(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// Zero `l` (one-based).
    pub fn get(&self, l: usize) -> Option<&ZetaZero> {
        l.checked_sub(1).and_then(|i| self.zeros.get(i))
    }

    /// Smallest precision over the table; zero for an empty table.
    pub fn precision_digits(&self) -> u32 {
        self.zeros.iter().map(|z| z.precision_digits).min().unwrap_or(0)
    }

    /// The first `n` zeros as a table of their own.
    pub fn truncated(&self, n: usize) -> ZeroTable {
        ZeroTable {
            zeros: self.zeros.iter().take(n).cloned().collect(),
            source: self.source.clone(),
        }
    }

    pub fn into_zeros(self) -> Vec<ZetaZero> {
        self.zeros
    }
}

// ---------------------------------------------------------------------------
// Ingestion
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedFormat {
    /// One ordinate per line.
    PlainOrdinates,
    /// `index whitespace ordinate`.
    IndexedOrdinates,
}

/// Reads published ordinates. Each zero's precision is its count of
/// fractional digits.
pub fn ingest_zero_table<R: BufRead>(reader: R, format: SeedFormat, source: &str) -> Result<ZeroTable> {
    let mut zeros: Vec<ZetaZero> = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let bad = |reason: &str| Error::Parse {
            line: line_no,
            reason: format!("{reason}: {text:?}"),
        };
        let mut fields = text.split_whitespace();
        let ordinate = match format {
            SeedFormat::PlainOrdinates => fields.next().ok_or_else(|| bad("missing ordinate"))?,
            SeedFormat::IndexedOrdinates => {
                let index: usize = fields
                    .next()
                    .and_then(|f| f.parse().ok())
                    .ok_or_else(|| bad("bad index"))?;
                if index != zeros.len() + 1 {
                    return Err(bad(&format!("index {index} out of sequence")));
                }
                fields.next().ok_or_else(|| bad("missing ordinate"))?
            }
        };
        if fields.next().is_some() {
            return Err(bad("trailing fields"));
        }
        let digits = fractional_digits(ordinate).ok_or_else(|| bad("not a plain decimal"))?;
        let parsed = Float::parse(ordinate).map_err(|_| bad("not a number"))?;
        let gamma = Float::with_val(storage_bits(digits), parsed);
        if gamma <= 0 {
            return Err(bad("ordinate must be positive"));
        }
        if let Some(prev) = zeros.last() {
            if gamma <= prev.gamma {
                return Err(bad("ordinates out of order"));
            }
        }
        zeros.push(ZetaZero::new(zeros.len() + 1, gamma, digits));
    }
    ZeroTable::new(zeros, source)
}

fn fractional_digits(s: &str) -> Option<u32> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let int_ok = !int.is_empty() && int.bytes().all(|b| b.is_ascii_digit());
    let frac_ok = frac.bytes().all(|b| b.is_ascii_digit());
    (int_ok && frac_ok).then_some(frac.len() as u32)
}

// ---------------------------------------------------------------------------
// Refinement
// ---------------------------------------------------------------------------

/// One Newton step: the working precision it ran at and `|δ|`.
#[derive(Debug, Clone)]
pub struct NewtonStep {
    pub digits: u32,
    pub step: Float,
}

#[derive(Debug, Clone)]
pub struct Refinement {
    pub zero: ZetaZero,
    pub steps: Vec<NewtonStep>,
    /// `|Re(s) - 1/2|` at the converged point.
    pub deviation: Float,
}

const MAX_NEWTON_STEPS: usize = 80;

/// Complex Newton `s ← s - ζ(s)/ζ′(s)` from `1/2 + i·gamma_approx`.
///
/// Precision starts at 30 digits and roughly doubles with the digits already
/// gained, up to `target + 10`; the loop stops once a step at full precision
/// is below `10^-target`. The result is verified before it is returned.
pub fn refine_zero(gamma_approx: &Float, target_digits: u32, ctx: &NumericContext) -> Result<Refinement> {
    refine_zero_indexed(0, gamma_approx, target_digits, ctx)
}

pub(crate) fn refine_zero_indexed(
    index: usize,
    gamma_approx: &Float,
    target_digits: u32,
    ctx: &NumericContext,
) -> Result<Refinement> {
    let final_digits = target_digits + 10;
    let level = |d: u32| NumericContext::new(d, ctx.guard_digits(), ctx.oversample());
    let mut digits = final_digits.min(30);
    let mut prec = level(digits)?.working_bits();
    let seed = Complex::with_val(storage_bits(final_digits), (0.5f64, gamma_approx));
    let mut s = Complex::with_val(prec, &seed);
    let mut steps = Vec::new();
    let mut tolerance = Float::with_val(64, Float::u_pow_u(10, target_digits));
    tolerance.recip_mut();

    loop {
        if steps.len() >= MAX_NEWTON_STEPS {
            return Err(Error::NewtonStalled {
                index,
                iterations: steps.len(),
            });
        }
        let lc = level(digits)?;
        let (z, dz) = zeta_and_derivative(&s, &lc)?;
        if dz.real().is_zero() && dz.imag().is_zero() {
            return Err(Error::NewtonStalled {
                index,
                iterations: steps.len(),
            });
        }
        let delta = Complex::with_val(prec, &z / &dz);
        s -= &delta;
        let size = Float::with_val(64, delta.abs_ref());
        steps.push(NewtonStep { digits, step: size.clone() });

        let wander = Float::with_val(64, Complex::with_val(prec, &s - &seed).abs_ref());
        if wander > BASIN_GUARD || !size.is_finite() {
            return Err(Error::WrongZero {
                seed: gamma_approx.to_string_radix(10, Some(12)),
                found: format!(
                    "{} + {}i",
                    s.real().to_string_radix(10, Some(12)),
                    s.imag().to_string_radix(10, Some(12))
                ),
            });
        }

        if digits == final_digits && size < tolerance {
            break;
        }
        let gained = if size.is_zero() {
            final_digits
        } else {
            (-size.to_f64().log10()).floor().max(0.0) as u32
        };
        let next = final_digits.min((2 * gained + 10).max(digits));
        if next != digits {
            digits = next;
            prec = level(digits)?.working_bits();
            s.set_prec(prec);
        }
    }

    let mut deviation = Float::with_val(prec, s.real() - 0.5f64);
    deviation.abs_mut();
    let mut line_tol = Float::with_val(64, Float::u_pow_u(10, target_digits.saturating_sub(4)));
    line_tol.recip_mut();
    if deviation >= line_tol {
        return Err(Error::OffCriticalLine {
            index,
            re: s.real().to_string_radix(10, Some(target_digits as usize)),
            im: s.imag().to_string_radix(10, Some(target_digits as usize)),
            deviation: deviation.to_string_radix(10, Some(6)),
        });
    }

    let gamma = Float::with_val(storage_bits(target_digits), s.imag());
    let mut zero = ZetaZero::new(index, gamma, target_digits);
    verify_zero(&mut zero, ctx)?;
    Ok(Refinement {
        zero,
        steps,
        deviation: Float::with_val(64, deviation),
    })
}

/// Refines consecutive seeds into a table; every zero must verify, and
/// refined ordinates must increase with gaps above `10^-3`.
pub fn refine_table(
    seeds: &ZeroTable,
    count: usize,
    target_digits: u32,
    ctx: &NumericContext,
    mut progress: impl FnMut(&Refinement),
) -> Result<ZeroTable> {
    if count > seeds.count() {
        return Err(Error::TableTooShort {
            needed: count,
            available: seeds.count(),
        });
    }
    let mut zeros: Vec<ZetaZero> = Vec::with_capacity(count);
    for seed in &seeds.zeros()[..count] {
        let r = refine_zero_indexed(seed.index, &seed.gamma, target_digits, ctx)?;
        if !r.zero.is_verified() {
            return Err(Error::Zero {
                index: seed.index,
                reason: "residual above the verification limit".into(),
            });
        }
        if let Some(prev) = zeros.last() {
            let gap = Float::with_val(64, &r.zero.gamma - &prev.gamma);
            if gap <= 1e-3 {
                return Err(Error::Zero {
                    index: seed.index,
                    reason: format!("converged within {gap} of zero {}", prev.index),
                });
            }
        }
        progress(&r);
        zeros.push(r.zero);
    }
    ZeroTable::new(zeros, format!("{} (complex Newton, {target_digits} digits)", seeds.source()))
}

/// `|ζ(1/2 + iγ)|` at `max(context, claimed + 10)` digits, stored on the zero.
pub fn verify_zero(zero: &mut ZetaZero, ctx: &NumericContext) -> Result<Float> {
    let digits = ctx.precision_digits().max(zero.precision_digits + 10);
    let vc = NumericContext::new(digits, ctx.guard_digits(), ctx.oversample())?;
    let z = zeta_complex(&zero.rho(vc.working_bits()), &vc)?;
    let residual = Float::with_val(RESIDUAL_BITS, z.abs_ref());
    zero.residual = Some(residual.clone());
    Ok(residual)
}

/// Attaches `ζ′(ρ_l)` to every zero, computed at the oversampled precision
/// and stored at the zero's own precision.
pub fn attach_zeta_prime(
    table: &mut ZeroTable,
    ctx: &NumericContext,
    mut progress: impl FnMut(&ZetaZero),
) -> Result<()> {
    for zero in &mut table.zeros {
        if !zero.is_verified() {
            return Err(Error::Zero {
                index: zero.index,
                reason: "derivative requested for an unverified zero".into(),
            });
        }
        let zc = NumericContext::new(zero.precision_digits.max(10), ctx.guard_digits(), ctx.oversample())?;
        let rho = zero.rho(zc.oversampled_bits());
        let d = zeta_prime(&rho, &zc).map_err(|e| Error::Zero {
            index: zero.index,
            reason: e.to_string(),
        })?;
        zero.zeta_prime = Some(Complex::with_val(storage_bits(zero.precision_digits), d));
        progress(zero);
    }
    Ok(())
}

/// Rounds every stored derivative to `digits` significant digits. Used to
/// reproduce the failure mode of under-resolved derivatives on purpose.
pub fn degrade_derivatives(table: &ZeroTable, digits: u32) -> ZeroTable {
    let mut t = table.clone();
    for z in &mut t.zeros {
        if let Some(d) = &z.zeta_prime {
            let re = round_to_digits(d.real(), digits);
            let im = round_to_digits(d.imag(), digits);
            z.zeta_prime = Some(Complex::with_val(d.prec(), (re, im)));
        }
    }
    t
}

fn round_to_digits(x: &Float, digits: u32) -> Float {
    if x.is_zero() {
        return x.clone();
    }
    let s = x.to_string_radix(10, Some(digits.max(1) as usize));
    Float::with_val(x.prec(), Float::parse(&s).expect("MPFR output parses"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeExtremes {
    pub min: (usize, Float),
    pub max: (usize, Float),
}

/// Extremes of `|ζ′(ρ_l)|` over `l_min ≤ l ≤ l_max`.
pub fn scan_derivative_extremes(table: &ZeroTable, l_min: usize, l_max: usize) -> Result<DerivativeExtremes> {
    if l_min == 0 || l_min > l_max {
        return Err(Error::EmptyRange);
    }
    if l_max > table.count() {
        return Err(Error::TableTooShort {
            needed: l_max,
            available: table.count(),
        });
    }
    let mut out: Option<DerivativeExtremes> = None;
    for z in &table.zeros[l_min - 1..l_max] {
        let d = z.zeta_prime.as_ref().ok_or_else(|| Error::Zero {
            index: z.index,
            reason: "no derivative attached".into(),
        })?;
        let m = Float::with_val(d.prec().0, d.abs_ref());
        match &mut out {
            None => {
                out = Some(DerivativeExtremes {
                    min: (z.index, m.clone()),
                    max: (z.index, m),
                })
            }
            Some(e) => {
                if m < e.min.1 {
                    e.min = (z.index, m);
                } else if m > e.max.1 {
                    e.max = (z.index, m);
                }
            }
        }
    }
    out.ok_or(Error::EmptyRange)
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

pub const TABLE_FORMAT_VERSION: u32 = 1;

/// Writes the table: `#key: value` headers, then
/// `index<TAB>gamma<TAB>residual<TAB>zeta_prime_re<TAB>zeta_prime_im` with
/// `-` for absent values. Numbers are printed with enough digits to read
/// back to the identical binary value.
pub fn persist_table<W: Write>(table: &ZeroTable, mut sink: W) -> Result<()> {
    let p = table.precision_digits();
    if table.zeros.iter().any(|z| z.precision_digits != p) {
        return Err(Error::InvalidParameter(
            "cannot persist a table with mixed per-zero precision".into(),
        ));
    }
    writeln!(sink, "#version: {TABLE_FORMAT_VERSION}")?;
    writeln!(sink, "#count: {}", table.count())?;
    writeln!(sink, "#precision_digits: {p}")?;
    writeln!(sink, "#source: {}", table.source.replace('\n', " "))?;
    writeln!(sink, "#generator: bdlab-core {}", env!("CARGO_PKG_VERSION"))?;
    for z in &table.zeros {
        let (re, im) = match &z.zeta_prime {
            Some(d) => (exact(d.real()), exact(d.imag())),
            None => ("-".to_string(), "-".to_string()),
        };
        let residual = z.residual.as_ref().map_or_else(|| "-".to_string(), exact);
        writeln!(sink, "{}\t{}\t{}\t{}\t{}", z.index, exact(&z.gamma), residual, re, im)?;
    }
    Ok(())
}

fn exact(x: &Float) -> String {
    x.to_string_radix(10, None)
}

pub fn load_table<R: BufRead>(source: R) -> Result<ZeroTable> {
    let mut version: Option<String> = None;
    let mut count: Option<usize> = None;
    let mut precision: Option<u32> = None;
    let mut origin = String::new();
    let mut zeros: Vec<ZetaZero> = Vec::new();

    for (n, line) in source.lines().enumerate() {
        let line_no = n + 1;
        let line = line?;
        let bad = |reason: String| Error::Parse { line: line_no, reason };
        if let Some(header) = line.strip_prefix('#') {
            let Some((key, value)) = header.split_once(':') else {
                continue;
            };
            let value = value.trim();
            match key.trim() {
                "version" => {
                    if value != TABLE_FORMAT_VERSION.to_string() {
                        return Err(Error::UnsupportedVersion {
                            found: value.to_string(),
                            supported: TABLE_FORMAT_VERSION,
                        });
                    }
                    version = Some(value.to_string());
                }
                "count" => count = Some(value.parse().map_err(|_| bad(format!("bad count {value:?}")))?),
                "precision_digits" => {
                    precision = Some(value.parse().map_err(|_| bad(format!("bad precision {value:?}")))?)
                }
                "source" => origin = value.to_string(),
                _ => {}
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        if version.is_none() {
            return Err(bad("body line before a version header".into()));
        }
        let p = precision.ok_or_else(|| bad("body line before precision_digits header".into()))?;
        let bits = storage_bits(p);
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 5 {
            return Err(bad(format!("expected 5 tab-separated fields, found {}", fields.len())));
        }
        let index: usize = fields[0].parse().map_err(|_| bad("bad index".into()))?;
        let num = |s: &str, bits: u32| -> Result<Option<Float>> {
            if s == "-" {
                return Ok(None);
            }
            let v = Float::parse(s).map_err(|_| bad(format!("bad number {s:?}")))?;
            Ok(Some(Float::with_val(bits, v)))
        };
        let gamma = num(fields[1], bits)?.ok_or_else(|| bad("missing ordinate".into()))?;
        if let Some(prev) = zeros.last() {
            if gamma <= prev.gamma {
                return Err(bad("ordinates out of order".into()));
            }
        }
        if index != zeros.len() + 1 {
            return Err(bad(format!("index {index} out of sequence")));
        }
        let residual = num(fields[2], RESIDUAL_BITS)?;
        let zeta_prime = match (num(fields[3], bits)?, num(fields[4], bits)?) {
            (Some(re), Some(im)) => Some(Complex::with_val(bits, (re, im))),
            (None, None) => None,
            _ => return Err(bad("half of a derivative is missing".into())),
        };
        zeros.push(ZetaZero {
            index,
            gamma,
            precision_digits: p,
            residual,
            zeta_prime,
        });
    }
    if version.is_none() {
        return Err(Error::Parse {
            line: 0,
            reason: "missing version header".into(),
        });
    }
    if let Some(c) = count {
        if c != zeros.len() {
            return Err(Error::Parse {
                line: 0,
                reason: format!("header promises {c} zeros, body has {}", zeros.len()),
            });
        }
    }
    ZeroTable::new(zeros, origin)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> NumericContext {
        NumericContext::with_digits(d).unwrap()
    }

    const GAMMA_1: &str = "14.134725141734693790457251983562470270784257115699243175685567460149963429809256764949010393171561";

    #[test]
    fn ingest_plain_and_indexed() {
        let t = ingest_zero_table("14.134725141\n21.022039639\n".as_bytes(), SeedFormat::PlainOrdinates, "t").unwrap();
        assert_eq!(t.count(), 2);
        assert_eq!(t.precision_digits(), 9);
        assert!(t.zeros()[0].residual.is_none());

        let t = ingest_zero_table("".as_bytes(), SeedFormat::PlainOrdinates, "t").unwrap();
        assert_eq!(t.count(), 0);

        let t = ingest_zero_table(
            "# comment\n1 14.134725\n2   21.022040\n".as_bytes(),
            SeedFormat::IndexedOrdinates,
            "t",
        )
        .unwrap();
        assert_eq!(t.count(), 2);
        assert_eq!(t.precision_digits(), 6);

        let err = ingest_zero_table("21.02\n14.13\n".as_bytes(), SeedFormat::PlainOrdinates, "t").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = ingest_zero_table("14.13\nabc\n".as_bytes(), SeedFormat::PlainOrdinates, "t").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn refine_first_zero_to_sixty_digits() {
        let c = ctx(60);
        let seed = Float::with_val(64, 14.134725);
        let r = refine_zero(&seed, 60, &c).unwrap();
        let truth = Float::with_val(400, Float::parse(GAMMA_1).unwrap());
        let diff = Float::with_val(400, &r.zero.gamma - &truth).abs();
        assert!(diff < 1e-62, "{diff}");
        assert!(r.zero.is_verified());
        assert!(r.deviation < 1e-56);
    }

    #[test]
    fn seed_between_zeros_is_rejected() {
        let c = ctx(20);
        let r = refine_zero(&Float::with_val(64, 20.5), 20, &c);
        assert!(matches!(r, Err(Error::WrongZero { .. }) | Err(Error::NewtonStalled { .. })), "{r:?}");
    }

    #[test]
    fn verification_of_truncated_and_wrong_ordinates() {
        let c = ctx(30);
        let mut z = ZetaZero::new(1, Float::with_val(64, 14.134725), 6);
        let r = verify_zero(&mut z, &c).unwrap().to_f64();
        assert!(r > 1e-8 && r < 1e-5, "{r}");
        z.precision_digits = 100;
        assert!(!z.is_verified());

        let mut z = ZetaZero::new(1, Float::with_val(64, 15), 6);
        let r = verify_zero(&mut z, &c).unwrap().to_f64();
        assert!(r > 0.1);
    }

    #[test]
    fn round_trip_and_header_checks() {
        let c = ctx(30);
        let seeds = ingest_zero_table("14.134725\n21.022040\n25.010858\n".as_bytes(), SeedFormat::PlainOrdinates, "unit").unwrap();
        let mut t = refine_table(&seeds, 3, 30, &c, |_| {}).unwrap();
        attach_zeta_prime(&mut t, &c, |_| {}).unwrap();
        let mut buf = Vec::new();
        persist_table(&t, &mut buf).unwrap();
        let back = load_table(buf.as_slice()).unwrap();
        assert_eq!(back, t);

        let text = String::from_utf8(buf).unwrap();
        let old = text.replace("#version: 1", "#version: 0");
        assert!(matches!(load_table(old.as_bytes()), Err(Error::UnsupportedVersion { .. })));
        let lines: Vec<&str> = text.lines().collect();
        let swapped = [&lines[..5], &[lines[6], lines[5]], &lines[7..]].concat().join("\n");
        assert!(load_table(swapped.as_bytes()).is_err());
    }

    #[test]
    fn extremes_on_tiny_ranges() {
        let c = ctx(20);
        let seeds = ingest_zero_table("14.134725\n21.022040\n".as_bytes(), SeedFormat::PlainOrdinates, "unit").unwrap();
        let mut t = refine_table(&seeds, 2, 20, &c, |_| {}).unwrap();
        assert!(attach_zeta_prime(&mut t.clone(), &c, |_| {}).is_ok());
        assert!(scan_derivative_extremes(&t, 1, 1).is_err());
        attach_zeta_prime(&mut t, &c, |_| {}).unwrap();
        let e = scan_derivative_extremes(&t, 1, 1).unwrap();
        assert_eq!(e.min, e.max);
        assert_eq!(e.min.0, 1);
        assert!(matches!(scan_derivative_extremes(&t, 2, 1), Err(Error::EmptyRange)));
    }

    #[test]
    fn unverified_zero_gets_no_derivative() {
        let c = ctx(20);
        let mut t = ZeroTable::new(vec![ZetaZero::new(1, Float::with_val(64, 14.134725), 20)], "x").unwrap();
        assert!(attach_zeta_prime(&mut t, &c, |_| {}).is_err());
    }
}

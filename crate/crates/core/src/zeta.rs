//! ζ and ζ′ on the right half-plane through the alternating η series,
//! ζ at integers, ζ′ at the trivial zeros, and the Maslanka series.

use rug::ops::Pow;
use rug::{Complex, Float, Integer};

use crate::accel::{sumalt, AccelRequest, TermSource};
use crate::precision::{digits_to_bits, NumericContext};
use crate::special::{binomial, pi, BernoulliCache, BinomialRow, Constant, constant_bits};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// η terms
// ---------------------------------------------------------------------------

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 2;
    }
    n
}

/// `a_n = (n+1)^-s`, optionally paired with `ln(n+1)·(n+1)^-s`.
///
/// Only primes cost an exponential; composites multiply two earlier powers.
struct EtaTerms {
    s: Complex,
    logs: Vec<Float>,
    powers: Vec<Complex>,
}

impl EtaTerms {
    fn new(s: &Complex, prec: u32) -> Self {
        EtaTerms {
            s: Complex::with_val(prec, s),
            logs: Vec::new(),
            powers: Vec::new(),
        }
    }

    fn advance(&mut self, prec: u32) {
        let m = self.powers.len() as u64 + 1;
        let (ln, pow) = if m == 1 {
            (Float::new(prec), Complex::with_val(prec, (1u32, 0u32)))
        } else {
            let p = smallest_prime_factor(m);
            if p == m {
                let ln = Float::with_val(prec, m).ln();
                let pow = Complex::with_val(prec, &self.s * &ln).exp().recip();
                (ln, pow)
            } else {
                let (a, b) = ((p - 1) as usize, (m / p - 1) as usize);
                (
                    Float::with_val(prec, &self.logs[a] + &self.logs[b]),
                    Complex::with_val(prec, &self.powers[a] * &self.powers[b]),
                )
            }
        };
        self.logs.push(ln);
        self.powers.push(pow);
    }
}

impl TermSource<Complex> for EtaTerms {
    fn term(&mut self, n: usize, prec: u32) -> Complex {
        while self.powers.len() <= n {
            self.advance(prec);
        }
        self.powers[n].clone()
    }
}

impl TermSource<[Complex; 2]> for EtaTerms {
    fn term(&mut self, n: usize, prec: u32) -> [Complex; 2] {
        while self.powers.len() <= n {
            self.advance(prec);
        }
        let p = self.powers[n].clone();
        let l = Complex::with_val(prec, &p * &self.logs[n]);
        [p, l]
    }
}

fn representation_check(s: &Complex, ctx: &NumericContext) -> Result<()> {
    if s.real() <= &0 {
        return Err(Error::Domain(format!(
            "eta representation needs Re(s) > 0, got {}",
            s.real().to_string_radix(10, Some(12))
        )));
    }
    let prec = ctx.working_bits();
    let ln2 = constant_bits(Constant::Ln2, prec);
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    let k = (s.imag().to_f64() * ln2.to_f64() / two_pi.to_f64()).round() as i64;
    // distance to 1 + 2πik/ln 2
    let mut centre = Complex::with_val(prec, (1u32, Float::with_val(prec, &two_pi * k) / &ln2));
    centre -= s;
    let distance = Float::with_val(prec, centre.abs_ref());
    let mut limit = Float::with_val(prec, Float::u_pow_u(10, ctx.precision_digits().saturating_sub(2)));
    limit.recip_mut();
    if distance < limit {
        if k == 0 {
            return Err(Error::Pole {
                function: "zeta",
                at: "1".into(),
            });
        }
        return Err(Error::RepresentationSingularity {
            s: format!(
                "{} + {}i",
                s.real().to_string_radix(10, Some(12)),
                s.imag().to_string_radix(10, Some(12))
            ),
            k,
            distance: distance.to_string_radix(10, Some(6)),
        });
    }
    Ok(())
}

fn eta_request(s: &Complex, ctx: &NumericContext) -> AccelRequest {
    let extra = s.imag().to_f64().abs().ceil() as usize;
    AccelRequest::adaptive(ctx.precision_digits()).with_extra_terms(extra)
}

/// `η(s) = Σ (-1)^(n-1) n^-s` at working precision.
pub fn eta_complex(s: &Complex, ctx: &NumericContext) -> Result<Complex> {
    if s.real() <= &0 {
        return Err(Error::Domain("eta series needs Re(s) > 0".into()));
    }
    let mut terms = EtaTerms::new(s, ctx.working_bits());
    Ok(sumalt(&mut terms, &eta_request(s, ctx), ctx)?.value)
}

/// `1 - 2^(1-s)`.
fn eta_factor(s: &Complex, prec: u32) -> (Complex, Complex) {
    let ln2 = constant_bits(Constant::Ln2, prec);
    let mut e = Complex::with_val(prec, 1u32 - s);
    e *= &ln2;
    let two_pow = e.exp();
    (Complex::with_val(prec, 1u32 - &two_pow), two_pow)
}

/// `ζ(s) = η(s) / (1 - 2^(1-s))` for `Re s > 0`.
pub fn zeta_complex(s: &Complex, ctx: &NumericContext) -> Result<Complex> {
    representation_check(s, ctx)?;
    let prec = ctx.working_bits();
    let eta = eta_complex(s, ctx)?;
    let (factor, _) = eta_factor(s, prec);
    Ok(Complex::with_val(prec, eta / factor))
}

/// `(ζ(s), ζ′(s))` at the context's working precision, sharing one set of
/// CVZ weights between η and `η′ = Σ (-1)^n ln(n) n^-s`.
pub fn zeta_and_derivative(s: &Complex, ctx: &NumericContext) -> Result<(Complex, Complex)> {
    representation_check(s, ctx)?;
    let prec = ctx.working_bits();
    let mut terms = EtaTerms::new(s, prec);
    let [eta, minus_eta_prime]: [Complex; 2] = sumalt(&mut terms, &eta_request(s, ctx), ctx)?.value;
    let (factor, two_pow) = eta_factor(s, prec);
    let zeta = Complex::with_val(prec, &eta / &factor);
    // ζ′ = η′/F − ln2·2^(1−s)·η/F²
    let ln2 = constant_bits(Constant::Ln2, prec);
    let mut d = Complex::with_val(prec, &minus_eta_prime / &factor);
    d = -d;
    let mut second = Complex::with_val(prec, &two_pow * &ln2);
    second *= &zeta;
    second /= &factor;
    d -= second;
    Ok((zeta, d))
}

/// `ζ′(s)`, evaluated at the oversampled precision and rounded back to the
/// context's working precision.
pub fn zeta_prime(s: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let over = ctx.oversampled();
    let (_, mut d) = zeta_and_derivative(s, &over)?;
    d.set_prec(ctx.working_bits());
    Ok(d)
}

// ---------------------------------------------------------------------------
// Integers
// ---------------------------------------------------------------------------

/// `ζ(m)` for integer `m ≥ 2` at working precision.
pub fn zeta_integer(m: u64, ctx: &NumericContext) -> Result<Float> {
    zeta_integer_bits(m, ctx.working_bits())
}

pub(crate) fn zeta_integer_bits(m: u64, bits: u32) -> Result<Float> {
    if m < 2 {
        return Err(Error::Domain(format!("zeta_integer needs m >= 2, got {m}")));
    }
    let wp = bits + 16;
    let mut v = if direct_terms(m, wp) <= 8 {
        dirichlet_direct(m, wp)
    } else if m % 2 == 0 {
        zeta_even(m, wp)
    } else {
        euler_maclaurin(m, wp)
    };
    v.set_prec(bits);
    Ok(v)
}

/// Terms `N` with `N^(1-m)/(m-1) < 2^-wp`.
fn direct_terms(m: u64, wp: u32) -> u64 {
    (2f64.powf((wp as f64 + 1.0) / (m as f64 - 1.0))).ceil() as u64
}

fn dirichlet_direct(m: u64, wp: u32) -> Float {
    let n = direct_terms(m, wp);
    let mut sum = Float::with_val(wp, 1u32);
    for i in (2..=n).rev() {
        sum += Float::with_val(wp, i).pow(-(m as i32));
    }
    sum
}

/// `|B_m| (2π)^m / (2·m!)`.
fn zeta_even(m: u64, wp: u32) -> Float {
    let b = &BernoulliCache::global().even(m as usize / 2 + 1)[m as usize / 2];
    let mut v = Float::with_val(wp, b).abs();
    v *= Float::with_val(wp, pi(wp) * 2u32).pow(m as u32);
    v /= Float::with_val(wp, &Integer::from(Integer::factorial(m as u32)));
    v / 2u32
}

/// Euler–Maclaurin with `N ≈ 0.4·digits` head terms.
fn euler_maclaurin(m: u64, wp: u32) -> Float {
    let digits = (wp as f64 * core::f64::consts::LOG10_2).ceil();
    let n = (0.4 * digits).ceil() as u64 + 10;
    let s = m as i32;
    let mut sum = Float::new(wp);
    for i in (1..n).rev() {
        sum += Float::with_val(wp, i).pow(-s);
    }
    let nf = Float::with_val(wp, n);
    let n_pow = Float::with_val(wp, (&nf).pow(-s));
    // N^(1-s)/(s-1) + N^-s/2
    sum += Float::with_val(wp, &n_pow * &nf) / (m - 1);
    sum += Float::with_val(wp, &n_pow / 2u32);

    let eps = Float::with_val(64, Float::i_exp(1, -(wp as i32) - 4));
    let inv_n2 = Float::with_val(wp, nf.square_ref()).recip();
    // running s(s+1)…(s+2j-2)·N^(-s-2j+1)/(2j)!
    let mut factor = Float::with_val(wp, &n_pow / &nf) * m;
    factor /= 2u32;
    let mut table = BernoulliCache::global().even(64);
    let mut j = 1u64;
    loop {
        if j as usize >= table.len() {
            table = BernoulliCache::global().even(2 * table.len());
        }
        let term = Float::with_val(wp, &factor * &table[j as usize]);
        sum += &term;
        if Float::with_val(64, term.abs_ref()) < eps {
            break;
        }
        // advance to j+1: × (s+2j-1)(s+2j)/((2j+1)(2j+2)) / N²
        factor *= (m + 2 * j - 1) * (m + 2 * j);
        factor /= (2 * j + 1) * (2 * j + 2);
        factor *= &inv_n2;
        j += 1;
    }
    sum
}

/// `ζ′(-2n) = (-1)^n ζ(2n+1) (2n)! / (2^(2n+1) π^(2n))`.
pub fn zeta_prime_trivial(n: u64, ctx: &NumericContext) -> Result<Float> {
    if n == 0 {
        return Err(Error::Domain("trivial zeros are at -2n with n >= 1".into()));
    }
    let bits = ctx.working_bits();
    let wp = bits + 16;
    let mut v = zeta_integer_bits(2 * n + 1, wp)?;
    v *= Float::with_val(wp, &Integer::from(Integer::factorial(2 * n as u32)));
    v /= Float::with_val(wp, pi(wp).pow(2 * n as u32));
    v >>= (2 * n + 1) as u32;
    if n % 2 == 1 {
        v = -v;
    }
    v.set_prec(bits);
    Ok(v)
}

// ---------------------------------------------------------------------------
// 1/ζ(2j+2) as a stream
// ---------------------------------------------------------------------------

/// Re-anchoring cadence of the Möbius region.
const ANCHOR_STRIDE: u64 = 1000;

/// The values `1/ζ(2j+2)` for `j = j0, j0+1, …` at a fixed precision.
///
/// Small arguments use the Bernoulli closed form. Past `m ≈ bits/8` the
/// Dirichlet series for `1/ζ(m) = Σ μ(n) n^-m` needs only squarefree
/// `n < 2^((bits+8)/m) ≤ 256`, and the powers `n^-m` are stepped by exact
/// divisions by `n²`. Powers are recomputed from scratch at region start and
/// every [`ANCHOR_STRIDE`] indices, so every value is a function of `j` and
/// `bits` alone and a stream resumed at any `j` reproduces an uninterrupted
/// one bit for bit.
pub struct EvenZetaReciprocals {
    bits: u32,
    j: u64,
    bernoulli_max_m: u64,
    mobius: Vec<(u32, i8, Float)>,
    anchored: bool,
}

impl EvenZetaReciprocals {
    pub fn new(bits: u32) -> Self {
        Self::starting_at(0, bits)
    }

    pub fn starting_at(j: u64, bits: u32) -> Self {
        let bernoulli_max_m = ((bits as u64 + 8) / 8).max(2);
        let mut stream = EvenZetaReciprocals {
            bits,
            j,
            bernoulli_max_m,
            mobius: Vec::new(),
            anchored: false,
        };
        let m = 2 * j + 2;
        if m > bernoulli_max_m {
            // Roll forward from the last anchor so the state matches a run
            // that started at zero.
            let start_j = (bernoulli_max_m.saturating_sub(1) / 2).max(0);
            let start_j = if 2 * start_j + 2 <= bernoulli_max_m { start_j + 1 } else { start_j };
            let anchor = start_j.max(j - j % ANCHOR_STRIDE);
            stream.j = anchor;
            while stream.j < j {
                stream.mobius_value();
                stream.j += 1;
            }
        }
        stream
    }

    pub fn next_index(&self) -> u64 {
        self.j
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn bernoulli_value(&self, m: u64) -> Float {
        let wp = self.bits + 16;
        let mut v = zeta_even(m, wp).recip();
        v.set_prec(self.bits);
        v
    }

    fn mobius_value(&mut self) -> Float {
        let m = 2 * self.j + 2;
        let limit = 2f64.powf((self.bits as f64 + 8.0) / m as f64).floor() as u32;
        let anchor_here = !self.anchored || self.j % ANCHOR_STRIDE == 0;
        if anchor_here {
            self.mobius = (1..=limit.max(1))
                .filter_map(|n| mobius(n).map(|mu| (n, mu)))
                .filter(|&(_, mu)| mu != 0)
                .map(|(n, mu)| (n, mu, Float::with_val(self.bits, n).pow(-(m as i32))))
                .collect();
            self.anchored = true;
        } else {
            self.mobius.retain(|&(n, _, _)| n <= limit.max(1));
            for (n, _, p) in self.mobius.iter_mut() {
                if *n > 1 {
                    *p /= *n * *n;
                }
            }
        }
        let mut sum = Float::new(self.bits);
        for (_, mu, p) in &self.mobius {
            if *mu > 0 {
                sum += p;
            } else {
                sum -= p;
            }
        }
        sum
    }
}

impl Iterator for EvenZetaReciprocals {
    type Item = Float;

    fn next(&mut self) -> Option<Float> {
        let m = 2 * self.j + 2;
        let v = if m <= self.bernoulli_max_m {
            self.bernoulli_value(m)
        } else {
            self.mobius_value()
        };
        self.j += 1;
        Some(v)
    }
}

/// `μ(n)`, or `None` for `n = 0`.
fn mobius(n: u32) -> Option<i8> {
    if n == 0 {
        return None;
    }
    let mut n = n;
    let mut mu = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Some(0);
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    Some(mu)
}

// ---------------------------------------------------------------------------
// Maslanka
// ---------------------------------------------------------------------------

/// `A_0 … A_K` with `A_k = Σ_j (-1)^j C(k,j) (2j+1) ζ(2j+2)`.
#[derive(Debug, Clone)]
pub struct MaslankaCoefficients {
    table: Vec<Float>,
}

impl MaslankaCoefficients {
    pub fn as_slice(&self) -> &[Float] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Digits needed so the alternating sums for `A_0 … A_K` keep `digits`.
pub fn maslanka_required_digits(k: u64, digits: u32) -> u32 {
    (k as f64 * 2f64.log10()).ceil() as u32 + digits
}

pub fn maslanka_coefficients(k_max: u64, ctx: &NumericContext) -> Result<MaslankaCoefficients> {
    let required = maslanka_required_digits(k_max, 10);
    if ctx.precision_digits() < required {
        return Err(Error::InsufficientPrecision {
            have: ctx.precision_digits(),
            required,
        });
    }
    let bits = ctx.working_bits();
    let zetas: Vec<Float> = (0..=k_max)
        .map(|j| {
            let mut z = zeta_integer_bits(2 * j + 2, bits)?;
            z *= 2 * j + 1;
            Ok(z)
        })
        .collect::<Result<_>>()?;
    let mut table = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let mut row = BinomialRow::new(k);
        let mut acc = Float::new(bits);
        loop {
            let j = row.j() as usize;
            let term = Float::with_val(bits, row.value()) * &zetas[j];
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            if !row.advance() {
                break;
            }
        }
        table.push(acc);
    }
    Ok(MaslankaCoefficients { table })
}

/// Partial sum through `k = K` of
/// `ζ(s) = 1/(s-1) Σ_k (1 - s/2)_k / k! · A_k`, where the gamma ratio
/// `Γ(k+1-s/2)/Γ(1-s/2)` is carried as the rising product `(1 - s/2)_k`.
pub fn zeta_via_maslanka(s: &Complex, coefficients: &MaslankaCoefficients) -> Result<Complex> {
    let prec = coefficients
        .table
        .first()
        .map_or(64, |a| a.prec());
    if s.real() == &1 && s.imag().is_zero() {
        return Err(Error::Pole {
            function: "zeta",
            at: "1".into(),
        });
    }
    let half_s = Complex::with_val(prec, s / 2u32);
    let mut ratio = Complex::with_val(prec, (1u32, 0u32));
    let mut sum = Complex::new(prec);
    for (k, a) in coefficients.table.iter().enumerate() {
        if k > 0 {
            // × (k - s/2) / k
            ratio *= Complex::with_val(prec, k as u64 - &half_s);
            ratio /= k as u64;
        }
        sum += Complex::with_val(prec, &ratio * a);
    }
    Ok(sum / Complex::with_val(prec, s - 1u32))
}

/// `A_k` from the Bernoulli side of the identity,
/// `Σ_j C(k,j) π^(2j+2) B_(2j+2) / ((2)_j (1/2)_j)`; kept for cross-checks.
pub fn maslanka_coefficient_bernoulli(k: u64, ctx: &NumericContext) -> Result<Float> {
    let bits = ctx.working_bits();
    let b = BernoulliCache::global().even(k as usize + 2);
    let pi = pi(bits);
    let mut acc = Float::new(bits);
    // (2)_j (1/2)_j = (j+1)·(2j)!/4^j
    for j in 0..=k {
        let c = binomial(k, j)?;
        let mut term = Float::with_val(bits, &b[j as usize + 1]);
        term *= Float::with_val(bits, (&pi).pow(2 * j as u32 + 2));
        term *= Float::with_val(bits, c);
        term <<= 2 * j as u32;
        term /= Float::with_val(bits, &Integer::from(Integer::factorial(2 * j as u32)));
        term /= j + 1;
        acc += term;
    }
    Ok(acc)
}

/// Bits for a context of `digits` decimal digits; here for callers building
/// ad hoc precisions.
pub fn bits_for(digits: u32) -> u32 {
    digits_to_bits(digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> NumericContext {
        NumericContext::with_digits(d).unwrap()
    }

    fn c(prec: u32, re: f64, im: f64) -> Complex {
        Complex::with_val(prec, (re, im))
    }

    fn rel(a: &Float, b: &Float) -> f64 {
        let d = Float::with_val(a.prec(), a - b);
        (d / b).abs().to_f64()
    }

    /// Apéry's constant to 76 digits.
    fn zeta3_oracle() -> Float {
        Float::with_val(
            300,
            Float::parse("1.2020569031595942853997381615114499907649862923404988817922715553418382057863").unwrap(),
        )
    }

    #[test]
    fn even_closed_form() {
        let cx = ctx(60);
        let prec = cx.working_bits();
        let z4 = zeta_integer(4, &cx).unwrap();
        let pi4 = Float::with_val(prec, pi(prec).pow(4u32)) / 90u32;
        assert!(rel(&z4, &pi4) < 1e-75);
    }

    #[test]
    fn odd_euler_maclaurin() {
        let cx = ctx(60);
        let z3 = zeta_integer(3, &cx).unwrap();
        assert!(rel(&z3, &zeta3_oracle()) < 1e-62);
        let complex3 = zeta_complex(&c(cx.working_bits(), 3.0, 0.0), &cx).unwrap();
        assert!(rel(complex3.real(), &z3) < 1e-70);
    }

    #[test]
    fn even_integers_decrease_to_one() {
        let cx = ctx(30);
        let ulp = Float::with_val(64, Float::i_exp(1, 2 - cx.working_bits() as i32));
        let mut last = zeta_integer(2, &cx).unwrap();
        for j in 1..200 {
            let v = zeta_integer(2 * j + 2, &cx).unwrap();
            assert!(v >= 1u32 && v <= last, "j = {j}");
            // Strict until the distance to 1 drops below resolution.
            if Float::with_val(64, &last - 1u32) > ulp {
                assert!(v < last, "j = {j}");
            }
            last = v;
        }
    }

    #[test]
    fn eta_identity_on_integers() {
        let cx = ctx(40);
        let prec = cx.working_bits();
        for m in 2..=20u64 {
            let s = c(prec, m as f64, 0.0);
            let eta = eta_complex(&s, &cx).unwrap();
            let (f, _) = eta_factor(&s, prec);
            let z = Complex::with_val(prec, &eta / &f);
            let zi = zeta_integer(m, &cx).unwrap();
            assert!(rel(z.real(), &zi) < 1e-45, "m = {m}");
        }
    }

    #[test]
    fn poles_and_singular_heights() {
        let cx = ctx(20);
        let one = c(128, 1.0, 0.0);
        assert!(matches!(zeta_complex(&one, &cx), Err(Error::Pole { .. })));
        let prec = cx.working_bits();
        let ln2 = constant_bits(Constant::Ln2, prec);
        let t = Float::with_val(prec, pi(prec) * 2u32) / ln2;
        let s = Complex::with_val(prec, (1u32, t));
        assert!(matches!(
            zeta_complex(&s, &cx),
            Err(Error::RepresentationSingularity { k: 1, .. })
        ));
        assert!(zeta_complex(&c(128, -0.5, 3.0), &cx).is_err());
    }

    #[test]
    fn zeta_prime_at_two() {
        let cx = ctx(40);
        let d = zeta_prime(&c(cx.working_bits(), 2.0, 0.0), &cx).unwrap();
        let truth = Float::with_val(200, Float::parse("-0.93754825431584375370257409456786497789786028861482992588").unwrap());
        assert!(rel(d.real(), &truth) < 1e-45);
        assert!(d.imag().to_f64().abs() < 1e-50);
    }

    #[test]
    fn trivial_zero_derivatives() {
        let cx = ctx(40);
        let d1 = zeta_prime_trivial(1, &cx).unwrap();
        let prec = cx.working_bits();
        let mut expect = zeta3_oracle();
        expect.set_prec(prec);
        expect /= Float::with_val(prec, pi(prec).square_ref()) * 4u32;
        expect = -expect;
        assert!(rel(&d1, &expect) < 1e-45);
        assert!(d1.to_string_radix(10, Some(17)).starts_with("-3.044845705839327"));
        let d2 = zeta_prime_trivial(2, &cx).unwrap();
        let d3 = zeta_prime_trivial(3, &cx).unwrap();
        assert!(d2 > 0 && d3 < 0);
    }

    #[test]
    fn reciprocal_stream_matches_direct_values() {
        for bits in [200u32, 700] {
            let stream = EvenZetaReciprocals::new(bits);
            for (j, v) in stream.take(400).enumerate() {
                let z = zeta_integer_bits(2 * j as u64 + 2, bits + 32).unwrap();
                let one = Float::with_val(bits + 32, &v * &z);
                let err = Float::with_val(64, one - 1u32).abs().to_f64();
                assert!(err < 2f64.powi(-(bits as i32) + 4), "bits {bits}, j {j}: {err:e}");
            }
        }
    }

    #[test]
    fn reciprocal_stream_resumes_bit_identically() {
        let bits = 1600;
        let full: Vec<Float> = EvenZetaReciprocals::new(bits).take(2600).collect();
        for start in [0u64, 150, 999, 1000, 1001, 2345] {
            let resumed: Vec<Float> = EvenZetaReciprocals::starting_at(start, bits)
                .take(2600 - start as usize)
                .collect();
            assert_eq!(&full[start as usize..], &resumed[..], "resume at {start}");
        }
    }

    #[test]
    fn maslanka_basics() {
        let cx = ctx(40);
        let a = maslanka_coefficients(30, &cx).unwrap();
        let prec = cx.working_bits();
        let z2 = zeta_integer(2, &cx).unwrap();
        let z4 = zeta_integer(4, &cx).unwrap();
        assert_eq!(a.as_slice()[0], z2);
        let a1 = Float::with_val(prec, &z2 - Float::with_val(prec, &z4 * 3u32));
        assert!(rel(&a.as_slice()[1], &a1) < 1e-50);
        for k in [0u64, 1, 7, 30] {
            let b = maslanka_coefficient_bernoulli(k, &cx).unwrap();
            let d = Float::with_val(prec, &a.as_slice()[k as usize] - &b).abs();
            assert!(d < 1e-45, "k = {k}: {d}");
        }
        assert!(matches!(
            maslanka_coefficients(400, &cx),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn mobius_small() {
        let mu: Vec<i8> = (1..=12).map(|n| mobius(n).unwrap()).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }
}

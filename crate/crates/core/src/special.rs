//! Special-function building blocks: exact Bernoulli numbers, exact
//! binomials, cached constants, and the principal complex log-gamma.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use rug::float::Constant as MpfrConstant;
use rug::{Complex, Float, Integer, Rational};

use crate::precision::{bits_to_digits, NumericContext};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Bernoulli numbers
// ---------------------------------------------------------------------------

/// Exact even-index Bernoulli numbers `B_0, B_2, B_4, …`, shared process-wide.
///
/// Entries are generated from tangent numbers (integer-only, `O(n²)` word
/// operations) and are never truncated. Readers get a cheap snapshot; growing
/// the table takes the write lock once and rebuilds it at least twice as long.
pub struct BernoulliCache {
    table: RwLock<Arc<Vec<Rational>>>,
}

impl BernoulliCache {
    fn new() -> Self {
        BernoulliCache {
            table: RwLock::new(Arc::new(vec![Rational::from(1)])),
        }
    }

    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::new)
    }

    /// A table whose entry `i` is `B_{2i}`, holding at least `count` entries.
    pub fn even(&self, count: usize) -> Arc<Vec<Rational>> {
        {
            let table = self.table.read().unwrap();
            if table.len() >= count {
                return Arc::clone(&table);
            }
        }
        let mut table = self.table.write().unwrap();
        if table.len() < count {
            let len = count.max(2 * table.len()).max(16);
            *table = Arc::new(even_bernoulli_table(len));
        }
        Arc::clone(&table)
    }
}

/// Tangent numbers `T_1 … T_n` with `tan x = Σ T_k x^(2k-1) / (2k-1)!`.
pub fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t: Vec<Integer> = Vec::with_capacity(n);
    if n == 0 {
        return t;
    }
    t.push(Integer::from(1));
    for k in 1..n {
        let next = Integer::from(&t[k - 1] * k as u64);
        t.push(next);
    }
    for k in 1..n {
        for j in k..n {
            // T[j] = (j-k)·T[j-1] + (j-k+2)·T[j], zero-based.
            let prev = Integer::from(&t[j - 1] * (j - k) as u64);
            t[j] *= (j - k + 2) as u64;
            t[j] += prev;
        }
    }
    t
}

fn even_bernoulli_table(len: usize) -> Vec<Rational> {
    let tangents = tangent_numbers(len.saturating_sub(1));
    let mut table = Vec::with_capacity(len);
    table.push(Rational::from(1));
    for (i, t) in tangents.into_iter().enumerate() {
        // B_{2n} = (-1)^(n-1) · 2n · T_n / (4^n (4^n - 1))
        let n = i as u32 + 1;
        let four_n = Integer::from(1) << (2 * n);
        let den = Integer::from(&four_n - 1u32) * &four_n;
        let mut b = Rational::from((t * (2 * n), den));
        if n % 2 == 0 {
            b = -b;
        }
        table.push(b);
    }
    table
}

/// Exact `B_n` (with `B_1 = -1/2`; odd indices above one are zero).
pub fn bernoulli(n: u32) -> Rational {
    match n {
        0 => Rational::from(1),
        1 => Rational::from((-1, 2)),
        n if n % 2 == 1 => Rational::new(),
        n => BernoulliCache::global().even(n as usize / 2 + 1)[n as usize / 2].clone(),
    }
}

// ---------------------------------------------------------------------------
// Binomials
// ---------------------------------------------------------------------------

/// Exact `C(k, j)`.
pub fn binomial(k: u64, j: u64) -> Result<Integer> {
    if j > k {
        return Err(Error::Domain(format!("binomial C({k}, {j}) with j > k")));
    }
    let k = u32::try_from(k).map_err(|_| Error::Domain(format!("binomial row {k} too large")))?;
    Ok(Integer::from(Integer::binomial_u(k, j as u32)))
}

/// Sequential scan along the row `C(k, 0), C(k, 1), …, C(k, k)` using the
/// exact update `C(k, j+1) = C(k, j)·(k-j)/(j+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialRow {
    k: u64,
    j: u64,
    value: Integer,
}

impl BinomialRow {
    pub fn new(k: u64) -> Self {
        BinomialRow {
            k,
            j: 0,
            value: Integer::from(1),
        }
    }

    /// Resume at a stored position; the caller vouches that `value = C(k, j)`.
    pub fn resume(k: u64, j: u64, value: Integer) -> Result<Self> {
        if j > k {
            return Err(Error::Domain(format!("binomial position {j} beyond row {k}")));
        }
        Ok(BinomialRow { k, j, value })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn value(&self) -> &Integer {
        &self.value
    }

    /// Step to `j + 1`; returns `false` (and stays put) at the end of the row.
    pub fn advance(&mut self) -> bool {
        if self.j >= self.k {
            return false;
        }
        self.value *= self.k - self.j;
        self.j += 1;
        self.value.div_exact_mut(&Integer::from(self.j));
        true
    }
}

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    Ln2,
    EulerGamma,
}

impl FromStr for Constant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi" => Ok(Constant::Pi),
            "ln2" => Ok(Constant::Ln2),
            "euler_gamma" => Ok(Constant::EulerGamma),
            other => Err(Error::InvalidParameter(format!("unknown constant {other:?}"))),
        }
    }
}

type ConstantTable = RwLock<HashMap<(Constant, u32), Float>>;

/// `name` at `bits` of precision, cached per precision.
pub fn constant_bits(name: Constant, bits: u32) -> Float {
    static CACHE: OnceLock<ConstantTable> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(&(name, bits)) {
        return v.clone();
    }
    let value = match name {
        Constant::Pi => Float::with_val(bits, MpfrConstant::Pi),
        Constant::Ln2 => Float::with_val(bits, MpfrConstant::Log2),
        Constant::EulerGamma => Float::with_val(bits, MpfrConstant::Euler),
    };
    cache
        .write()
        .unwrap()
        .entry((name, bits))
        .or_insert(value)
        .clone()
}

/// `name` at the context's working precision.
pub fn constant(name: Constant, ctx: &NumericContext) -> Float {
    constant_bits(name, ctx.working_bits())
}

pub(crate) fn pi(bits: u32) -> Float {
    constant_bits(Constant::Pi, bits)
}

// ---------------------------------------------------------------------------
// Complex log-gamma
// ---------------------------------------------------------------------------

/// Principal-branch `ln Γ(z)` at the context's working precision.
pub fn ln_gamma(z: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let mut v = ln_gamma_abs(z, ctx.working_bits())?;
    v.set_prec(ctx.working_bits());
    Ok(v)
}

/// Principal-branch `ln Γ(z)` with absolute error below about `2^-bits`.
///
/// The result carries extra bits proportional to `log2 |ln Γ(z)|`, which is
/// what callers need when they add several of these and exponentiate.
///
/// Strategy: for `Re z < 0` reflect, `ln Γ(z) = ln π - ln sin(πz) - ln Γ(1-z)`;
/// otherwise shift to `Re ≥ 1.2 × digits`, apply the Stirling series and
/// subtract the logs of the shift factors. Either route is only fixed modulo
/// `2πi`, so the imaginary part is finally snapped to the branch of a double
/// precision estimate.
pub fn ln_gamma_abs(z: &Complex, bits: u32) -> Result<Complex> {
    let (x, y) = (z.real().to_f64(), z.imag().to_f64());
    if z.imag().is_zero() && z.real() <= &0 && z.real().is_integer() {
        return Err(Error::Pole {
            function: "ln_gamma",
            at: z.real().to_string_radix(10, Some(20)),
        });
    }
    let magnitude = (x.hypot(y) + 2.0) * ((x.hypot(y) + 2.0).ln() + 1.0);
    let wp = bits + 24 + magnitude.log2().ceil().max(0.0) as u32;

    let mut value = if x < 0.0 {
        let one_minus = Complex::with_val(wp, 1u32 - z);
        let mut v = Complex::with_val(wp, (pi(wp).ln(), 0u32));
        v -= ln_sin_pi(&one_minus_to_z(&one_minus, wp), wp);
        v -= shifted_stirling(&one_minus, wp);
        v
    } else {
        shifted_stirling(&Complex::with_val(wp, z), wp)
    };

    let estimate = ln_gamma_f64(x, y).1;
    let two_pi = Float::with_val(wp, pi(wp) * 2u32);
    let current = value.imag().to_f64();
    let turns = ((estimate - current) / core::f64::consts::TAU).round();
    if turns != 0.0 {
        *value.mut_imag() += Float::with_val(wp, &two_pi * turns);
    }
    Ok(value)
}

fn one_minus_to_z(one_minus: &Complex, wp: u32) -> Complex {
    Complex::with_val(wp, 1u32 - one_minus)
}

/// `ln sin(πz)` modulo `2πi`. For `|Im z| > 1` the dominant exponential is
/// factored out analytically so nothing of size `e^(π|Im z|)` is formed.
fn ln_sin_pi(z: &Complex, wp: u32) -> Complex {
    let pi = pi(wp);
    let pz = Complex::with_val(wp, z * &pi);
    let y = z.imag().to_f64();
    if y.abs() <= 1.0 {
        return pz.sin().ln();
    }
    // y > 0: sin(πz) = (i/2)·e^(-iπz)·(1 - e^(2πiz))
    // y < 0: sin(πz) = (-i/2)·e^(iπz)·(1 - e^(-2πiz))
    let sign: i32 = if y > 0.0 { 1 } else { -1 };
    let i_pz = Complex::with_val(wp, (-pz.imag(), pz.real())); // iπz
    let lead = Complex::with_val(wp, &i_pz * -sign);
    let small = Complex::with_val(wp, &i_pz * (2 * sign)).exp();
    let mut v = lead;
    v += Complex::with_val(wp, 1u32 - small).ln();
    let half = Float::with_val(wp, 0.5f64).ln();
    let quarter_turn = Float::with_val(wp, &pi / 2u32) * sign;
    v += Complex::with_val(wp, (half, quarter_turn));
    v
}

/// Stirling series after shifting `w` right until `Re w ≥ 1.2 × digits`.
fn shifted_stirling(w: &Complex, wp: u32) -> Complex {
    let digits = bits_to_digits(wp).max(10) as f64;
    let threshold = (1.2 * digits).ceil();
    let re = w.real().to_f64();
    let shift = if re < threshold { (threshold - re).ceil() as u32 } else { 0 };

    let mut shifted = w.clone();
    let mut product = Complex::with_val(wp, (1u32, 0u32));
    for _ in 0..shift {
        product *= &shifted;
        shifted += 1u32;
    }

    let mut v = stirling(&shifted, wp);
    if shift > 0 {
        v -= product.ln();
    }
    v
}

/// `(w - 1/2) ln w - w + ln(2π)/2 + Σ B_2j / (2j(2j-1) w^(2j-1))`.
fn stirling(w: &Complex, wp: u32) -> Complex {
    let ln_w = Complex::with_val(wp, w.ln_ref());
    let mut v = Complex::with_val(wp, w - 0.5f64) * &ln_w;
    v -= w;
    let half_ln_2pi = Float::with_val(wp, pi(wp) * 2u32).ln() / 2u32;
    *v.mut_real() += &half_ln_2pi;

    let eps = Float::with_val(wp, Float::i_exp(1, -(wp as i32)));
    let inv = Complex::with_val(wp, w.recip_ref());
    let inv2 = Complex::with_val(wp, inv.square_ref());
    let mut power = inv;
    let mut table = BernoulliCache::global().even(64);
    let mut j = 1usize;
    let mut last = Float::with_val(wp, f64::INFINITY);
    loop {
        if j >= table.len() {
            table = BernoulliCache::global().even(2 * table.len());
        }
        let coeff = Float::with_val(wp, &table[j]) / ((2 * j * (2 * j - 1)) as u64);
        let term = Complex::with_val(wp, &power * &coeff);
        let size = Float::with_val(53, term.abs_ref());
        v += &term;
        if size < eps || size > last {
            break;
        }
        last = size;
        power *= &inv2;
        j += 1;
    }
    v
}

/// Double-precision `ln Γ(x + iy)` on the principal branch, used only to
/// pick the branch of the multi-precision result.
pub(crate) fn ln_gamma_f64(x: f64, y: f64) -> (f64, f64) {
    let shift = if x < 10.0 { (10.0 - x).ceil() as u64 } else { 0 };
    let (mut re_sum, mut im_sum) = (0.0f64, 0.0f64);
    for j in 0..shift {
        let a = x + j as f64;
        re_sum += 0.5 * (a * a + y * y).ln();
        im_sum += y.atan2(a);
    }
    let (wr, wi) = (x + shift as f64, y);
    // ln w
    let (lr, li) = (0.5 * (wr * wr + wi * wi).ln(), wi.atan2(wr));
    // (w - 1/2) ln w - w + ln(2π)/2
    let mut sr = (wr - 0.5) * lr - wi * li - wr + 0.5 * core::f64::consts::TAU.ln();
    let mut si = (wr - 0.5) * li + wi * lr - wi;
    // 1/(12w) - 1/(360 w^3) + 1/(1260 w^5)
    let n2 = wr * wr + wi * wi;
    let (ir, ii) = (wr / n2, -wi / n2);
    let (i2r, i2i) = (ir * ir - ii * ii, 2.0 * ir * ii);
    let mut pr = ir;
    let mut pi = ii;
    for c in [1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0] {
        sr += c * pr;
        si += c * pi;
        (pr, pi) = (pr * i2r - pi * i2i, pr * i2i + pi * i2r);
    }
    (sr - re_sum, si - im_sum)
}

/// `Γ(z)` itself, for moderate arguments.
pub fn gamma(z: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let mut v = ln_gamma_abs(z, ctx.working_bits())?.exp();
    v.set_prec(ctx.working_bits());
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> NumericContext {
        NumericContext::with_digits(d).unwrap()
    }

    /// Defining recurrence `Σ_{j=0}^{m} C(m+1, j) B_j = 0`, run in exact
    /// rationals as an oracle independent of the tangent-number route.
    fn bernoulli_by_recurrence(max: usize) -> Vec<Rational> {
        let mut b = vec![Rational::from(1)];
        for m in 1..=max {
            let mut acc = Rational::new();
            for (j, bj) in b.iter().enumerate() {
                acc += Rational::from(Integer::from(Integer::binomial_u(m as u32 + 1, j as u32))) * bj;
            }
            b.push(-acc / Integer::from(m + 1));
        }
        b
    }

    #[test]
    fn bernoulli_canonical_values() {
        assert_eq!(bernoulli(0), Rational::from(1));
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(7), Rational::new());
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
    }

    #[test]
    fn bernoulli_matches_defining_recurrence() {
        let oracle = bernoulli_by_recurrence(80);
        assert_eq!(oracle[12], Rational::from((-691, 2730)));
        for n in (2..=80).step_by(2) {
            assert_eq!(bernoulli(n as u32), oracle[n], "B_{n}");
        }
        // The recurrence holds with zero residue on the cached table.
        for m in 1..=60u32 {
            let mut acc = Rational::new();
            for j in 0..=m {
                acc += Rational::from(Integer::from(Integer::binomial_u(m + 1, j))) * bernoulli(j);
            }
            assert_eq!(acc, 0, "recurrence at m = {m}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(17, 0).unwrap(), 1);
        assert!(binomial(3, 4).is_err());
        let mid = binomial(100_000, 50_000).unwrap();
        assert_eq!(mid.to_string().len(), 30_101);

        let mut row = BinomialRow::new(40);
        let mut seen = vec![row.value().clone()];
        while row.advance() {
            seen.push(row.value().clone());
        }
        assert_eq!(seen.len(), 41);
        for (j, c) in seen.iter().enumerate() {
            assert_eq!(*c, binomial(40, j as u64).unwrap());
            assert_eq!(*c, seen[40 - j]);
        }
    }

    #[test]
    fn constants_to_printed_digits() {
        let c = ctx(60);
        let pi = constant(Constant::Pi, &c);
        // printed digits are truncated, not rounded
        assert_eq!(
            &pi.to_string_radix(10, Some(60))[..52],
            "3.14159265358979323846264338327950288419716939937510"
        );
        let ln2 = constant(Constant::Ln2, &c);
        assert!(ln2
            .to_string_radix(10, Some(40))
            .starts_with("6.93147180559945309417232121458"));
        assert_eq!(constant(Constant::Pi, &c), pi);
        assert!("tau".parse::<Constant>().is_err());
        assert_eq!("euler_gamma".parse::<Constant>().unwrap(), Constant::EulerGamma);
    }

    fn close(a: &Complex, b: &Complex, digits: i32) -> bool {
        let diff = Float::with_val(64, Complex::with_val(a.prec().0, a - b).abs_ref());
        let scale = Float::with_val(64, b.abs_ref()).to_f64().max(1.0);
        diff.to_f64() <= scale * 10f64.powi(-digits)
    }

    #[test]
    fn ln_gamma_at_simple_points() {
        let c = ctx(60);
        let one = Complex::with_val(256, (1, 0));
        let v = ln_gamma(&one, &c).unwrap();
        assert!(Float::with_val(64, v.abs_ref()).to_f64() < 1e-70);

        let half = Complex::with_val(256, (0.5, 0));
        let v = ln_gamma(&half, &c).unwrap();
        let sqrt_pi_ln = Float::with_val(c.working_bits(), pi(c.working_bits()).sqrt()).ln();
        assert!(close(&v, &Complex::with_val(c.working_bits(), (sqrt_pi_ln, 0)), 70));

        assert!(matches!(ln_gamma(&Complex::with_val(64, (-3, 0)), &c), Err(Error::Pole { .. })));
        assert!(matches!(ln_gamma(&Complex::with_val(64, (0, 0)), &c), Err(Error::Pole { .. })));
    }

    #[test]
    fn ln_gamma_real_axis_against_mpfr() {
        let c = ctx(50);
        let bits = c.working_bits();
        for x in [0.3f64, 2.5, 7.0, 33.25, 1000.5] {
            let ours = ln_gamma(&Complex::with_val(bits, (x, 0)), &c).unwrap();
            let mpfr = Float::with_val(bits, Float::with_val(bits, x).ln_gamma_ref());
            assert!(close(&ours, &Complex::with_val(bits, (mpfr, 0)), 60), "x = {x}");
        }
        // Negative non-integer: |Γ| from MPFR, phase -π·(number of negative factors).
        for x in [-0.5f64, -2.25, -7.75] {
            let ours = ln_gamma(&Complex::with_val(bits, (x, 0)), &c).unwrap();
            let (abs, _) = Float::with_val(bits, x).ln_abs_gamma();
            let diff = Float::with_val(bits, ours.real() - &abs);
            assert!(diff.to_f64().abs() < 1e-60, "x = {x}");
            let turns = (ours.imag().to_f64() / core::f64::consts::PI).round();
            assert_eq!(turns, -(x.abs().ceil()), "x = {x}");
        }
    }

    #[test]
    fn ln_gamma_on_critical_line_modulus() {
        // |Γ(1/2 + it)|² = π / cosh(πt)
        let c = ctx(60);
        let bits = c.working_bits();
        for t in [0.7f64, 7.067, 50.0, 300.0] {
            let v = ln_gamma(&Complex::with_val(bits, (0.5, t)), &c).unwrap();
            let mut expect = Float::with_val(bits, pi(bits) * t).cosh();
            expect = Float::with_val(bits, pi(bits) / expect).ln() / 2u32;
            let diff = Float::with_val(bits, v.real() - &expect);
            assert!(diff.to_f64().abs() < 1e-65, "t = {t}: {diff}");
        }
    }
}

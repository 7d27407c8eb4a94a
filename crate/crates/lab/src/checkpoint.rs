//! Key:value checkpoints for the generic sum.
//!
//! ```text
//! #bdlab checkpoint
//! config_fingerprint: 3f1c…
//! k: 100000
//! precision_digits: 30168
//! bits: 100291
//! next_j: 41000
//! binomial_state: 2839…
//! partial_sum: -4.71…e29271
//! peak_n: 40999
//! peak: 5.2e29225
//! trace: 10000 5.65…e14115
//! ```

use std::fs;
use std::io::Write;
use std::path::Path;

use bdlab_core::baez_duarte::{GenericState, PartialSumTrace};
use rug::{Float, Integer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("checkpoint written for configuration {found}, current configuration is {expected}")]
    FingerprintMismatch { expected: String, found: String },
    #[error("checkpoint carries {found} digits, the run uses {expected}")]
    PrecisionMismatch { expected: u32, found: u32 },
    #[error("checkpoint is truncated or malformed: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentCheckpoint {
    pub config_fingerprint: String,
    pub precision_digits: u32,
    pub state: GenericState,
}

const END_MARKER: &str = "end: ok";

fn full(x: &Float) -> String {
    x.to_string_radix(10, None)
}

impl ExperimentCheckpoint {
    pub fn render(&self) -> String {
        let s = &self.state;
        let mut out = String::from("#bdlab checkpoint\n");
        out += &format!("config_fingerprint: {}\n", self.config_fingerprint);
        out += &format!("k: {}\n", s.k);
        out += &format!("precision_digits: {}\n", self.precision_digits);
        out += &format!("bits: {}\n", s.partial_sum.prec());
        out += &format!("next_j: {}\n", s.next_j);
        out += &format!("binomial_state: {}\n", s.binomial);
        out += &format!("partial_sum: {}\n", full(&s.partial_sum));
        if let Some((n, p)) = &s.peak {
            out += &format!("peak_n: {n}\npeak: {}\n", full(p));
        }
        for (n, v) in &s.trace.rows {
            out += &format!("trace: {n} {}\n", full(v));
        }
        out += END_MARKER;
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<Self, CheckpointError> {
        let bad = |m: &str| CheckpointError::Malformed(m.to_string());
        if !text.lines().any(|l| l.trim() == END_MARKER) {
            return Err(bad("missing end marker"));
        }
        let mut fingerprint = None;
        let mut k = None;
        let mut digits = None;
        let mut bits: Option<u32> = None;
        let mut next_j = None;
        let mut binomial = None;
        let mut partial = None;
        let mut peak_n = None;
        let mut peak = None;
        let mut trace = Vec::new();
        for line in text.lines() {
            if line.starts_with('#') || line.trim().is_empty() || line.trim() == END_MARKER {
                continue;
            }
            let (key, value) = line.split_once(": ").ok_or_else(|| bad(line))?;
            let num = |v: &str| v.parse::<u64>().map_err(|_| bad(line));
            match key {
                "config_fingerprint" => fingerprint = Some(value.to_string()),
                "k" => k = Some(num(value)?),
                "precision_digits" => digits = Some(num(value)? as u32),
                "bits" => bits = Some(num(value)? as u32),
                "next_j" => next_j = Some(num(value)?),
                "binomial_state" => binomial = Some(value.parse::<Integer>().map_err(|_| bad(line))?),
                "partial_sum" => partial = Some(value.to_string()),
                "peak_n" => peak_n = Some(num(value)?),
                "peak" => peak = Some(value.to_string()),
                "trace" => {
                    let (n, v) = value.split_once(' ').ok_or_else(|| bad(line))?;
                    trace.push((num(n)?, v.to_string()));
                }
                _ => return Err(bad(&format!("unknown key {key}"))),
            }
        }
        let bits = bits.ok_or_else(|| bad("bits"))?;
        let float = |s: &str| {
            Float::parse(s)
                .map(|p| Float::with_val(bits, p))
                .map_err(|_| bad(s))
        };
        let trace = trace
            .into_iter()
            .map(|(n, v)| Ok((n, float(&v)?)))
            .collect::<Result<Vec<_>, CheckpointError>>()?;
        let peak = match (peak_n, peak) {
            (Some(n), Some(p)) => Some((n, Float::with_val(32, float(&p)?))),
            (None, None) => None,
            _ => return Err(bad("peak")),
        };
        Ok(ExperimentCheckpoint {
            config_fingerprint: fingerprint.ok_or_else(|| bad("config_fingerprint"))?,
            precision_digits: digits.ok_or_else(|| bad("precision_digits"))?,
            state: GenericState {
                k: k.ok_or_else(|| bad("k"))?,
                next_j: next_j.ok_or_else(|| bad("next_j"))?,
                partial_sum: float(&partial.ok_or_else(|| bad("partial_sum"))?)?,
                binomial: binomial.ok_or_else(|| bad("binomial_state"))?,
                trace: PartialSumTrace { rows: trace },
                peak,
            },
        })
    }

    /// Writes through a temporary file and a rename, so an interrupted write
    /// leaves the previous checkpoint intact.
    pub fn write(&self, path: &Path) -> Result<(), CheckpointError> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.render().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, CheckpointError> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Reads and validates against the current configuration.
    pub fn resume(path: &Path, fingerprint: &str, precision_digits: u32) -> Result<Self, CheckpointError> {
        let cp = Self::read(path)?;
        if cp.precision_digits != precision_digits {
            return Err(CheckpointError::PrecisionMismatch {
                expected: precision_digits,
                found: cp.precision_digits,
            });
        }
        if cp.config_fingerprint != fingerprint {
            return Err(CheckpointError::FingerprintMismatch {
                expected: fingerprint.to_string(),
                found: cp.config_fingerprint,
            });
        }
        Ok(cp)
    }
}

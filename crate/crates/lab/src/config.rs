use std::fmt::Write as _;
use std::path::PathBuf;

use bdlab_core::baez_duarte::required_precision_for_generic;
use bdlab_core::precision::Oversample;
use bdlab_core::NumericContext;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub k: u64,
    /// Digits wanted from the generic sum after cancellation.
    pub target_digits: u32,
    /// `None` selects the bundled seed list.
    pub zeros_file: Option<PathBuf>,
    pub refine_digits: u32,
    pub zeros_count: usize,
    pub oversample: Oversample,
    pub trace_stride: Option<u64>,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            k: 1000,
            target_digits: 100,
            zeros_file: None,
            refine_digits: 120,
            zeros_count: 100,
            oversample: Oversample::DOUBLE,
            trace_stride: None,
            checkpoint: None,
            resume: false,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl ExperimentConfig {
    pub fn generic_precision(&self) -> u32 {
        required_precision_for_generic(self.k, self.target_digits)
    }

    pub fn generic_context(&self) -> bdlab_core::Result<NumericContext> {
        NumericContext::new(self.generic_precision(), NumericContext::DEFAULT_GUARD_DIGITS, self.oversample)
    }

    pub fn explicit_context(&self) -> bdlab_core::Result<NumericContext> {
        NumericContext::new(self.refine_digits, NumericContext::DEFAULT_GUARD_DIGITS, self.oversample)
    }

    /// Hash over everything that changes the bits of the generic sum.
    pub fn generic_fingerprint(&self) -> String {
        let ctx = self
            .generic_context()
            .map(|c| c.fingerprint())
            .unwrap_or_else(|e| e.to_string());
        let mut text = String::new();
        let _ = writeln!(text, "k={}", self.k);
        let _ = writeln!(text, "context={ctx}");
        let _ = writeln!(text, "trace_stride={:?}", self.trace_stride);
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

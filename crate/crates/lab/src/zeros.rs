//! Loading and preparing zero tables for the commands.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context};
use bdlab_core::precision::Oversample;
use bdlab_core::zeros::{attach_zeta_prime, ingest_zero_table, load_table, refine_table, SeedFormat, ZeroTable};
use bdlab_core::NumericContext;

/// First 2610 ordinates to 22 significant digits, from
/// `scripts/seed_zeros.py`.
pub const BUNDLED_SEEDS: &str = include_str!("../data/zeros_seed.tsv");

fn is_persisted(first_line: &str) -> bool {
    first_line.starts_with("#version:")
}

/// A persisted table, a seed list (`index<TAB>gamma`), or the bundled seeds.
pub fn load_zero_source(path: Option<&Path>) -> anyhow::Result<ZeroTable> {
    match path {
        None => Ok(ingest_zero_table(BUNDLED_SEEDS.as_bytes(), SeedFormat::IndexedOrdinates, "bundled seeds")?),
        Some(p) => {
            let open = || File::open(p).with_context(|| format!("opening {}", p.display()));
            let mut first = String::new();
            BufReader::new(open()?).read_line(&mut first)?;
            let reader = BufReader::new(open()?);
            let table = if is_persisted(&first) {
                load_table(reader)?
            } else {
                let format = if first.split_whitespace().count() >= 2 {
                    SeedFormat::IndexedOrdinates
                } else {
                    SeedFormat::PlainOrdinates
                };
                ingest_zero_table(reader, format, &p.display().to_string())?
            };
            Ok(table)
        }
    }
}

/// `count` zeros at `digits` with derivatives attached; a table that is
/// already good enough is truncated, anything else is refined from its
/// ordinates.
pub fn prepare_zeros(
    source: &ZeroTable,
    count: usize,
    digits: u32,
    oversample: Oversample,
) -> anyhow::Result<ZeroTable> {
    if count > source.count() {
        bail!("{count} zeros requested, the source holds {}", source.count());
    }
    let ready = source.zeros()[..count]
        .iter()
        .all(|z| z.is_verified() && z.zeta_prime.is_some() && z.precision_digits >= digits);
    if ready {
        return Ok(source.truncated(count));
    }
    let ctx = NumericContext::new(digits, NumericContext::DEFAULT_GUARD_DIGITS, oversample)?;
    let start = Instant::now();
    let mut table = refine_table(source, count, digits, &ctx, |r| {
        if r.zero.index % 100 == 0 {
            eprintln!("refined zero {} ({:.1?})", r.zero.index, start.elapsed());
        }
    })?;
    attach_zeta_prime(&mut table, &ctx, |z| {
        if z.index % 100 == 0 {
            eprintln!("derivative {} ({:.1?})", z.index, start.elapsed());
        }
    })?;
    Ok(table)
}

//! Plot-ready data files: `#key: value` header lines, then CSV.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use bdlab_core::zeros::{persist_table, ZeroTable};
use rug::Float;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Default)]
pub struct DataFile {
    header: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl DataFile {
    pub fn new(kind: &str) -> Self {
        let mut f = DataFile::default();
        f.header("file", kind);
        f.header("generator", concat!("bdlab ", env!("CARGO_PKG_VERSION")));
        f
    }

    pub fn header(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.header.push((key.to_string(), value.to_string()));
        self
    }

    pub fn columns(&mut self, names: &[&str]) -> &mut Self {
        self.columns = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn row(&mut self, values: Vec<String>) -> &mut Self {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(values);
        self
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            out += &format!("#{k}: {v}\n");
        }
        out += &self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            out += &r.join(",");
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut f = fs::File::create(path)?;
        f.write_all(self.render().as_bytes())
    }
}

/// Header block and data rows of a file written by [`DataFile`].
pub fn read_data_file(text: &str) -> (Vec<(String, String)>, Vec<Vec<String>>) {
    let mut header = Vec::new();
    let mut rows = Vec::new();
    let mut saw_columns = false;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once(": ") {
                header.push((k.to_string(), v.to_string()));
            }
        } else if !saw_columns {
            saw_columns = true;
        } else if !line.is_empty() {
            rows.push(line.split(',').map(str::to_string).collect());
        }
    }
    (header, rows)
}

/// Scientific notation with `digits` significant digits, e.g.
/// `1.60975799392038e-9`.
pub fn sci(x: &Float, digits: usize) -> String {
    x.to_string_radix(10, Some(digits))
}

/// Every digit the value carries.
pub fn full(x: &Float) -> String {
    x.to_string_radix(10, None)
}

pub fn table_fingerprint(table: &ZeroTable) -> String {
    let mut buf = Vec::new();
    persist_table(table, &mut buf).expect("writing to memory");
    hex::encode(Sha256::digest(&buf))
}

pub fn out_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

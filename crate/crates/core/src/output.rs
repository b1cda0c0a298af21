//! CSV/JSON artifact writing: atomic (temp file + rename), with a comment
//! header carrying the tool version, config digest, and seed. Floats are
//! emitted with 17 significant digits so values round-trip exactly.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{FluxError, Result};

pub const TOOL_NAME: &str = "fluxlaw";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One CSV cell.
#[derive(Clone, Debug)]
pub enum CsvField {
    Float(f64),
    Int(i64),
    Str(String),
}

impl CsvField {
    fn render(&self) -> String {
        match self {
            CsvField::Float(x) => format_float(*x),
            CsvField::Int(n) => n.to_string(),
            CsvField::Str(s) => s.clone(),
        }
    }
}

/// 17 significant digits: enough to reproduce any f64 bit for bit.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Debug)]
pub struct OutputWriter {
    dir: PathBuf,
    digest: String,
    seed: u64,
}

impl OutputWriter {
    pub fn new(dir: &Path, digest: &str, seed: u64) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            digest: digest.to_string(),
            seed,
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn header(&self) -> String {
        format!(
            "# {TOOL_NAME} {TOOL_VERSION}\n# config {}\n# seed {}\n",
            self.digest, self.seed
        )
    }

    fn write_atomic(&self, name: &str, contents: &[u8]) -> Result<PathBuf> {
        let target = self.dir.join(name);
        let temp = self.dir.join(format!(".{name}.tmp-{}", std::process::id()));
        {
            let mut file = fs::File::create(&temp)?;
            file.write_all(contents)?;
            file.sync_all()?;
        }
        fs::rename(&temp, &target)?;
        Ok(target)
    }

    pub fn write_csv(
        &self,
        name: &str,
        columns: &[&str],
        rows: &[Vec<CsvField>],
    ) -> Result<PathBuf> {
        self.write_csv_with_comments(name, &[], columns, rows)
    }

    /// As [`write_csv`](Self::write_csv), with extra `# `-prefixed comment
    /// lines after the standard header.
    pub fn write_csv_with_comments(
        &self,
        name: &str,
        comments: &[String],
        columns: &[&str],
        rows: &[Vec<CsvField>],
    ) -> Result<PathBuf> {
        let mut text = self.header();
        for comment in comments {
            let _ = writeln!(text, "# {comment}");
        }
        let _ = writeln!(text, "{}", columns.join(","));
        for row in rows {
            if row.len() != columns.len() {
                return Err(FluxError::InvalidArgument(format!(
                    "CSV row has {} fields, header has {}",
                    row.len(),
                    columns.len()
                )));
            }
            let cells: Vec<String> = row.iter().map(CsvField::render).collect();
            let _ = writeln!(text, "{}", cells.join(","));
        }
        self.write_atomic(name, text.as_bytes())
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<PathBuf> {
        let text = serde_json::to_string_pretty(value).map_err(|err| FluxError::Config {
            path: name.to_string(),
            message: err.to_string(),
        })?;
        self.write_atomic(name, text.as_bytes())
    }
}

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{CliError, CliResult};

pub const TOOL: &str = "entmono";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> Self {
        Self { start, stop, step }
    }

    /// Points start, start+step, … up to stop inclusive (to within 1e-9 steps).
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected A:B:STEP, got '{s}'"));
    }
    let num = |p: &str| {
        p.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("'{p}' is not a finite number"))
    };
    let g = Grid::new(num(parts[0])?, num(parts[1])?, num(parts[2])?);
    if g.step <= 0.0 {
        return Err("grid step must be > 0".into());
    }
    if g.stop < g.start {
        return Err("grid stop must be >= start".into());
    }
    if (g.stop - g.start) / g.step > 1e6 {
        return Err("grid has more than a million points".into());
    }
    Ok(g)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Provenance written at the top of every output.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub grid: String,
    pub input_hash: String,
}

impl Meta {
    pub fn new(command: &'static str, seed: u64, grid: String, input_hash: String) -> Self {
        Self {
            tool: TOOL,
            version: entmono_core::VERSION,
            command,
            seed,
            grid,
            input_hash,
        }
    }

    fn comment_line(&self) -> String {
        format!(
            "# tool={} version={} command={} seed={} grid={} input_hash={}\n",
            self.tool, self.version, self.command, self.seed, self.grid, self.input_hash
        )
    }
}

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Comment line, header row, then rows.
pub fn csv_bytes(meta: &Meta, header: &[String], rows: &[Vec<String>]) -> CliResult<Vec<u8>> {
    let mut buf = meta.comment_line().into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        let wrap = |e: csv::Error| CliError::input(format!("csv error: {e}"));
        w.write_record(header).map_err(wrap)?;
        for r in rows {
            w.write_record(r).map_err(wrap)?;
        }
        w.flush()?;
    }
    Ok(buf)
}

#[derive(Serialize)]
struct Wrapped<'a, T: Serialize> {
    meta: &'a Meta,
    #[serde(flatten)]
    body: &'a T,
}

pub fn json_bytes<T: Serialize>(meta: &Meta, body: &T) -> CliResult<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(&Wrapped { meta, body })
        .map_err(|e| CliError::input(format!("json error: {e}")))?;
    v.push(b'\n');
    Ok(v)
}

/// Writes to `out`, or stdout when absent.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

/// `<out>.summary.json` next to the main output.
pub fn summary_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".summary.json");
    PathBuf::from(s)
}

//! Plain-text coefficient files and JSON serialization.
//!
//! Coefficient tables are stored human-diffable, one record per line:
//!
//! ```text
//! shcoeff v1 N_max=16
//! N l re im
//! ...
//! ```
//!
//! and `vshcoeff v1 N_max=<n>` with records `channel N l re im`,
//! `channel` in {1, 2, 3}. Floats are written with 18 significant digits,
//! which round-trips every finite f64 bit-exactly.

use std::fs;
use std::io::Write;
use std::path::Path;

use funksphere_core::{Complex64, ScalarCoeffs, VectorCoeffs, VshChannel};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: expected header `{expected} v1 N_max=<n>`, found `{found}`")]
    BadHeader {
        path: String,
        expected: &'static str,
        found: String,
    },
    #[error("{path}:{line}: malformed record `{text}`")]
    BadRecord {
        path: String,
        line: usize,
        text: String,
    },
    #[error("{path}:{line}: index ({n}, {l}) outside band limit {n_max}")]
    BadIndex {
        path: String,
        line: usize,
        n: usize,
        l: i64,
        n_max: usize,
    },
    #[error("{path}:{line}: channel {channel} at degree 0")]
    BadChannel { path: String, line: usize, channel: u8 },
}

type Result<T> = std::result::Result<T, FormatError>;

fn io_err(path: &Path, source: std::io::Error) -> FormatError {
    FormatError::Io { path: path.display().to_string(), source }
}

fn parse_header(path: &Path, line: &str, expected: &'static str) -> Result<usize> {
    let bad = || FormatError::BadHeader {
        path: path.display().to_string(),
        expected,
        found: line.to_string(),
    };
    let mut parts = line.split_whitespace();
    if parts.next() != Some(expected) || parts.next() != Some("v1") {
        return Err(bad());
    }
    let tail = parts.next().ok_or_else(bad)?;
    let n_max = tail
        .strip_prefix("N_max=")
        .and_then(|v| v.parse::<usize>().ok())
        .ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(n_max)
}

pub fn write_scalar_coeffs(path: &Path, coeffs: &ScalarCoeffs) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!("shcoeff v1 N_max={}\n", coeffs.band_limit()));
    for (n, l, v) in coeffs.iter() {
        out.push_str(&format!("{n} {l} {:.17e} {:.17e}\n", v.re, v.im));
    }
    let mut file = fs::File::create(path).map_err(|e| io_err(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| io_err(path, e))
}

pub fn read_scalar_coeffs(path: &Path) -> Result<ScalarCoeffs> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| FormatError::BadHeader {
        path: path.display().to_string(),
        expected: "shcoeff",
        found: String::new(),
    })?;
    let n_max = parse_header(path, header, "shcoeff")?;
    let mut coeffs = ScalarCoeffs::zeros(n_max);
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let bad = || FormatError::BadRecord {
            path: path.display().to_string(),
            line: idx + 1,
            text: line.to_string(),
        };
        let mut parts = line.split_whitespace();
        let n: usize = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let l: i64 = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let re: f64 = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let im: f64 = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        if n > n_max || l.unsigned_abs() as usize > n {
            return Err(FormatError::BadIndex {
                path: path.display().to_string(),
                line: idx + 1,
                n,
                l,
                n_max,
            });
        }
        coeffs.set(n, l, Complex64::new(re, im));
    }
    Ok(coeffs)
}

pub fn write_vector_coeffs(path: &Path, coeffs: &VectorCoeffs) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!("vshcoeff v1 N_max={}\n", coeffs.band_limit()));
    for channel in [VshChannel::Radial, VshChannel::Gradient, VshChannel::CurlGradient] {
        for (n, l, v) in coeffs.iter(channel) {
            if n == 0 && channel != VshChannel::Radial {
                continue;
            }
            out.push_str(&format!(
                "{} {n} {l} {:.17e} {:.17e}\n",
                channel.index(),
                v.re,
                v.im
            ));
        }
    }
    let mut file = fs::File::create(path).map_err(|e| io_err(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| io_err(path, e))
}

pub fn read_vector_coeffs(path: &Path) -> Result<VectorCoeffs> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| FormatError::BadHeader {
        path: path.display().to_string(),
        expected: "vshcoeff",
        found: String::new(),
    })?;
    let n_max = parse_header(path, header, "vshcoeff")?;
    let mut coeffs = VectorCoeffs::zeros(n_max);
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let bad = || FormatError::BadRecord {
            path: path.display().to_string(),
            line: idx + 1,
            text: line.to_string(),
        };
        let mut parts = line.split_whitespace();
        let channel_idx: u8 = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let n: usize = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let l: i64 = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let re: f64 = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let im: f64 = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        let channel = VshChannel::from_index(channel_idx).map_err(|_| bad())?;
        if n > n_max || l.unsigned_abs() as usize > n {
            return Err(FormatError::BadIndex {
                path: path.display().to_string(),
                line: idx + 1,
                n,
                l,
                n_max,
            });
        }
        if n == 0 && channel != VshChannel::Radial {
            return Err(FormatError::BadChannel {
                path: path.display().to_string(),
                line: idx + 1,
                channel: channel_idx,
            });
        }
        coeffs.set(channel, n, l, Complex64::new(re, im));
    }
    Ok(coeffs)
}

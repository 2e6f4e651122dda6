//! Window files: one sample per line, `re<TAB>im`, 17 significant digits.
//! Blank lines and lines starting with `#` are ignored.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{GaborError, Result};
use crate::ops::Window;

pub fn format_samples(samples: &[Complex64]) -> String {
    let mut out = String::with_capacity(samples.len() * 48);
    for z in samples {
        out.push_str(&format!("{:.16e}\t{:.16e}\n", z.re, z.im));
    }
    out
}

pub fn parse_samples(text: &str, origin: &str) -> Result<Vec<Complex64>> {
    let mut samples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: &str| GaborError::Parse {
            path: origin.to_string(),
            line: i + 1,
            reason: reason.to_string(),
        };
        let mut fields = line.split('\t');
        let re = fields.next().ok_or_else(|| err("missing real part"))?;
        let im = fields.next().ok_or_else(|| err("missing imaginary part"))?;
        if fields.next().is_some() {
            return Err(err("expected exactly two tab-separated fields"));
        }
        let re: f64 = re.trim().parse().map_err(|_| err("bad real part"))?;
        let im: f64 = im.trim().parse().map_err(|_| err("bad imaginary part"))?;
        samples.push(Complex64::new(re, im));
    }
    Ok(samples)
}

pub fn write_samples(path: &Path, samples: &[Complex64]) -> Result<()> {
    fs::write(path, format_samples(samples)).map_err(|e| GaborError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

pub fn read_samples(path: &Path) -> Result<Vec<Complex64>> {
    let text = fs::read_to_string(path).map_err(|e| GaborError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_samples(&text, &path.display().to_string())
}

pub fn write_window(path: &Path, window: &Window) -> Result<()> {
    write_samples(path, window.samples())
}

/// Read and normalize a window; the label records the source path.
pub fn read_window(path: &Path) -> Result<Window> {
    let samples = read_samples(path)?;
    Window::new(samples, format!("file:{}", path.display()))
}

//! Reading input files and option values.

use std::path::Path;

use covering_forge::constellation::{parse_records, RawRecord};
use covering_forge::surgery::SheetChoice;
use covering_forge::Constellation;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::CliError;
use crate::manifest::RunManifest;

pub fn read_text(path: &Path, manifest: &mut RunManifest) -> Result<String, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    manifest.input(path, &bytes);
    String::from_utf8(bytes)
        .map_err(|_| CliError::parse(path.display().to_string(), "not UTF-8 text"))
}

/// All records of a constellation file, validated.
pub fn load_records(path: &Path, manifest: &mut RunManifest) -> Result<Vec<RawRecord>, CliError> {
    let text = read_text(path, manifest)?;
    let records =
        parse_records(&text).map_err(|e| CliError::parse(path.display().to_string(), e))?;
    if records.is_empty() {
        return Err(CliError::parse(
            path.display().to_string(),
            "no constellation record",
        ));
    }
    Ok(records)
}

/// The single record of a constellation file.
pub fn load_one(path: &Path, manifest: &mut RunManifest) -> Result<Constellation, CliError> {
    let mut records = load_records(path, manifest)?;
    if records.len() != 1 {
        return Err(CliError::parse(
            path.display().to_string(),
            format!("expected one record, found {}", records.len()),
        ));
    }
    Ok(records.pop().expect("one record").constellation)
}

/// `3`, `1/2` or a terminating decimal such as `0.25`, kept exact.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{frac}", int.trim_start_matches(['-', '+']));
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("not a number: {s}"));
        }
        let num: BigRational = digits.parse().map_err(|_| format!("not a number: {s}"))?;
        let den = (0..frac.len()).fold(BigRational::one(), |acc, _| {
            acc * BigRational::from_integer(10.into())
        });
        let value = num / den;
        return Ok(if negative { -value } else { value });
    }
    let value: BigRational = s
        .parse()
        .map_err(|_| format!("not a rational number: {s}"))?;
    Ok(value)
}

/// `L:R`, the shared sheets of one fold step.
pub fn parse_sheet(s: &str) -> Result<SheetChoice, String> {
    let (l, r) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LEFT:RIGHT, got {s}"))?;
    let sheet = |x: &str| match x.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("sheets are positive integers, got {x}")),
    };
    Ok(SheetChoice {
        left: sheet(l)?,
        right: sheet(r)?,
    })
}

/// `a..b` (inclusive) or a single `n`.
pub fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let bad = || format!("expected N or A..B, got {s}");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// `re,im` in floating point.
pub fn parse_center(s: &str) -> Result<(f64, f64), String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got {s}"))?;
    let num = |x: &str| {
        x.trim()
            .parse::<f64>()
            .map_err(|_| format!("not a number: {x}"))
    };
    Ok((num(re)?, num(im)?))
}

/// `key = value` lines with `#` comments; later keys win.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>, (usize, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| (idx + 1, format!("expected key = value, got {line}")))?;
        let key = k.trim().to_string();
        out.retain(|(existing, _)| *existing != key);
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Label for file names: `1/2` becomes `1_2`.
pub fn rational_slug(t: &BigRational) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.to_string().replace('/', "_")
}

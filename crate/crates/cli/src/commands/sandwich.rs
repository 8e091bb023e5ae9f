//! `verify-sandwich`.

use std::io::Write;
use std::path::Path;

use covering_forge::ratmap::sandwich::random_sample_pairs;
use covering_forge::ratmap::{parse_map, verify_sandwich_isomorphism, Mobius, SandwichIso};
use covering_forge::{GaussMap, GaussMobius};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{emit, io, Context};
use crate::error::CliError;
use crate::input::{parse_key_values, read_text};
use crate::manifest::RunManifest;
use crate::Outcome;

pub const DEFAULT_R1: &str = "z^3 + z";
pub const DEFAULT_H: &str = "z + 1";
pub const DEFAULT_G: &str = "2z";
pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_DEGREE: usize = 3;
pub const DEFAULT_HEIGHT: i64 = 8;

const KEYS: [&str; 9] = [
    "R1",
    "R2",
    "h",
    "g",
    "samples",
    "seed",
    "conjugate",
    "degree",
    "height",
];

/// A parsed spec file; absent keys take the defaults above.
#[derive(Debug, Clone)]
pub struct SandwichSpec {
    pub r1: GaussMap,
    pub r2: Option<GaussMap>,
    pub h: GaussMobius,
    pub g: GaussMobius,
    pub samples: usize,
    pub seed: Option<u64>,
    pub conjugate: bool,
    pub degree: usize,
    pub height: i64,
}

impl SandwichSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        let kv = parse_key_values(text).map_err(|(line, msg)| format!("line {line}: {msg}"))?;
        let get = |key: &str| kv.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        if let Some((k, _)) = kv.iter().find(|(k, _)| !KEYS.contains(&k.as_str())) {
            return Err(format!("unknown key {k}"));
        }
        let map = |key: &str, default: &str| -> Result<GaussMap, String> {
            parse_map(get(key).unwrap_or(default)).map_err(|e| format!("{key}: {e}"))
        };
        let mobius = |key: &str, default: &str| -> Result<GaussMobius, String> {
            Mobius::from_map(&map(key, default)?).map_err(|e| format!("{key}: {e}"))
        };
        let number = |key: &str| -> Result<Option<u64>, String> {
            get(key)
                .map(|v| {
                    v.parse::<u64>()
                        .map_err(|_| format!("{key}: not a non-negative integer: {v}"))
                })
                .transpose()
        };
        let r2 = match get("R2") {
            Some(v) => Some(parse_map(v).map_err(|e| format!("R2: {e}"))?),
            None => None,
        };
        let conjugate = match get("conjugate") {
            None | Some("false") | Some("no") => false,
            Some("true") | Some("yes") => true,
            Some(v) => return Err(format!("conjugate: expected true or false, got {v}")),
        };
        let height = number("height")?.map_or(DEFAULT_HEIGHT, |h| h as i64);
        if height < 1 {
            return Err("height must be positive".into());
        }
        Ok(SandwichSpec {
            r1: map("R1", DEFAULT_R1)?,
            r2,
            h: mobius("h", DEFAULT_H)?,
            g: mobius("g", DEFAULT_G)?,
            samples: number("samples")?.map_or(DEFAULT_SAMPLES, |n| n as usize),
            seed: number("seed")?,
            conjugate,
            degree: number("degree")?.map_or(DEFAULT_DEGREE, |n| n as usize),
            height,
        })
    }
}

pub fn verify(
    ctx: &Context,
    spec_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let mut manifest = RunManifest::new("verify-sandwich");
    let spec = match spec_path {
        Some(path) => {
            let text = read_text(path, &mut manifest)?;
            SandwichSpec::parse(&text)
                .map_err(|e| CliError::parse(path.display().to_string(), e))?
        }
        None => SandwichSpec::parse("").expect("defaults parse"),
    };
    let seed = ctx.seed.or(spec.seed).unwrap_or(crate::DEFAULT_SEED);
    manifest.option("seed", seed);
    manifest.option("samples", spec.samples);
    manifest.option("degree", spec.degree);
    manifest.option("height", spec.height);

    let iso = if spec.conjugate {
        SandwichIso::reversing(spec.h.clone(), spec.g.clone())
    } else {
        SandwichIso::new(spec.h.clone(), spec.g.clone())
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = random_sample_pairs(&mut rng, spec.samples, spec.degree, spec.height);
    let report = verify_sandwich_isomorphism(&spec.r1, &iso, spec.r2.as_ref(), &pairs)
        .map_err(|e| CliError::Failed(format!("R1: {e}")))?;

    emit(out, &manifest)?;
    writeln!(out, "R1={}", spec.r1).map_err(io)?;
    writeln!(out, "h={}", spec.h).map_err(io)?;
    writeln!(out, "g={}", spec.g).map_err(io)?;
    writeln!(
        out,
        "orientation={}",
        if spec.conjugate {
            "reversing"
        } else {
            "preserving"
        }
    )
    .map_err(io)?;
    writeln!(
        out,
        "R2={}{}",
        report.r2,
        if spec.r2.is_some() { " (given)" } else { "" }
    )
    .map_err(io)?;
    writeln!(out, "corollary_checked={}", report.corollary_checked).map_err(io)?;
    writeln!(out, "{report}").map_err(io)?;
    Ok(if report.holds() {
        Outcome::Yes
    } else {
        Outcome::No
    })
}

//! `orbit`, `equiv` and `symmetric`.

use std::io::Write;
use std::path::Path;

use covering_forge::constellation::CoveringCollection;
use covering_forge::hurwitz::{
    hurwitz_orbit, is_symmetric, match_collections, same_hurwitz_class, OrbitBudget, Verdict,
};

use super::{emit, io, write_file, Context};
use crate::error::CliError;
use crate::input::{load_one, load_records};
use crate::manifest::RunManifest;
use crate::{BudgetArgs, Outcome};

fn budget(args: BudgetArgs, manifest: &mut RunManifest) -> Result<OrbitBudget, CliError> {
    manifest.option("budget", args.budget);
    if let Some(d) = args.max_depth {
        manifest.option("max_depth", d);
    }
    OrbitBudget::new(args.budget, args.max_depth).map_err(|e| CliError::Usage(e.to_string()))
}

fn outcome(v: Verdict) -> Outcome {
    match v {
        Verdict::Yes => Outcome::Yes,
        Verdict::No => Outcome::No,
        Verdict::Inconclusive => Outcome::Inconclusive,
    }
}

fn failed(e: impl ToString) -> CliError {
    CliError::Failed(e.to_string())
}

pub fn orbit(
    ctx: &Context,
    file: &Path,
    args: BudgetArgs,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let mut manifest = RunManifest::new("orbit");
    let c = load_one(file, &mut manifest)?;
    let budget = budget(args, &mut manifest)?;
    if let Some(path) = &ctx.out {
        manifest.option("out", path.display());
    }
    let orbit = hurwitz_orbit(&c, budget).map_err(failed)?;
    let mut dump = String::new();
    for (i, form) in orbit.forms().iter().enumerate() {
        dump.push_str(&format!(
            "label orbit_{}\n{}\n",
            i + 1,
            form.to_constellation().to_text()
        ));
    }
    emit(out, &manifest)?;
    match &ctx.out {
        Some(path) => {
            write_file(path, dump.as_bytes())?;
            writeln!(out, "wrote {}", path.display()).map_err(io)?;
        }
        None => emit(out, dump)?,
    }
    writeln!(
        out,
        "orbit_size={} exhausted={}",
        orbit.len(),
        orbit.exhausted()
    )
    .map_err(io)?;
    Ok(if orbit.exhausted() {
        Outcome::Yes
    } else {
        Outcome::Inconclusive
    })
}

pub fn equiv(
    _ctx: &Context,
    a: &Path,
    b: &Path,
    args: BudgetArgs,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let mut manifest = RunManifest::new("equiv");
    let ra = load_records(a, &mut manifest)?;
    let rb = load_records(b, &mut manifest)?;
    let budget = budget(args, &mut manifest)?;
    emit(out, &manifest)?;
    if ra.len() == 1 && rb.len() == 1 {
        let (ca, cb) = (&ra[0].constellation, &rb[0].constellation);
        let verdict = same_hurwitz_class(ca, cb, budget).map_err(failed)?;
        writeln!(out, "degree_a={} passport_a={}", ca.degree(), ca.passport()).map_err(io)?;
        writeln!(out, "degree_b={} passport_b={}", cb.degree(), cb.passport()).map_err(io)?;
        writeln!(out, "equivalent={verdict}").map_err(io)?;
        return Ok(outcome(verdict));
    }
    let collection = |path: &Path, records: Vec<covering_forge::constellation::RawRecord>| {
        let components = records
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                (
                    r.label
                        .unwrap_or_else(|| format!("{}#{}", path.display(), i + 1)),
                    r.constellation,
                )
            })
            .collect();
        CoveringCollection::new(components)
            .ok_or_else(|| CliError::parse(path.display().to_string(), "empty collection"))
    };
    let (ca, cb) = (collection(a, ra)?, collection(b, rb)?);
    let matched = match_collections(&ca, &cb, budget).map_err(failed)?;
    for (x, y) in &matched.pairs {
        writeln!(out, "matched {x} <-> {y}").map_err(io)?;
    }
    writeln!(
        out,
        "components_a={} components_b={}",
        ca.components().len(),
        cb.components().len()
    )
    .map_err(io)?;
    writeln!(out, "equivalent={} (greedy matching)", matched.verdict).map_err(io)?;
    Ok(outcome(matched.verdict))
}

pub fn symmetric(
    _ctx: &Context,
    file: &Path,
    args: BudgetArgs,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let mut manifest = RunManifest::new("symmetric");
    let c = load_one(file, &mut manifest)?;
    let budget = budget(args, &mut manifest)?;
    let verdict = is_symmetric(&c, budget).map_err(failed)?;
    emit(out, &manifest)?;
    writeln!(out, "degree={} passport={}", c.degree(), c.passport()).map_err(io)?;
    writeln!(out, "symmetric={verdict}").map_err(io)?;
    Ok(outcome(verdict))
}

//! `validate`, `sum` and `mate`.

use std::io::Write;
use std::path::{Path, PathBuf};

use covering_forge::constellation::parse_raw_records;
use covering_forge::surgery::{
    connected_sum, equator_unbranched, formal_mating, genus_ledger, SheetChoice, SumPlan,
};
use covering_forge::Constellation;

use super::{emit, io, write_file, Context};
use crate::error::CliError;
use crate::input::{load_one, read_text};
use crate::manifest::RunManifest;
use crate::Outcome;

pub fn validate(
    _ctx: &Context,
    files: &[PathBuf],
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let mut manifest = RunManifest::new("validate");
    let mut lines = Vec::new();
    let mut all_valid = true;
    for path in files {
        let text = read_text(path, &mut manifest)?;
        let records =
            parse_raw_records(&text).map_err(|e| CliError::parse(path.display().to_string(), e))?;
        for r in records {
            let c = &r.constellation;
            let label = r
                .label
                .as_deref()
                .map(|l| format!(" label={l}"))
                .unwrap_or_default();
            match c.validate() {
                Ok(()) => lines.push(format!(
                    "{}:{}{label} valid degree={} entries={} genus={} passport={}",
                    path.display(),
                    r.line,
                    c.degree(),
                    c.len(),
                    c.genus()
                        .map(|g| g.to_string())
                        .unwrap_or_else(|e| e.to_string()),
                    c.passport()
                )),
                Err(v) => {
                    all_valid = false;
                    lines.push(format!("{}:{}{label} invalid: {v}", path.display(), r.line));
                }
            }
        }
    }
    emit(out, &manifest)?;
    for l in lines {
        writeln!(out, "{l}").map_err(io)?;
    }
    Ok(if all_valid { Outcome::Yes } else { Outcome::No })
}

pub fn sum(
    ctx: &Context,
    files: &[PathBuf],
    plans: &[SheetChoice],
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    if files.len() < 2 {
        return Err(CliError::Usage(format!(
            "sum needs at least two input files, got {}",
            files.len()
        )));
    }
    if !plans.is_empty() && plans.len() != files.len() - 1 {
        return Err(CliError::Usage(format!(
            "--plan must be given once per fold step ({}), got {}",
            files.len() - 1,
            plans.len()
        )));
    }
    let mut manifest = RunManifest::new("sum");
    let summands: Vec<Constellation> = files
        .iter()
        .map(|f| load_one(f, &mut manifest))
        .collect::<Result<_, _>>()?;
    let plan_text: Vec<String> = plans
        .iter()
        .map(|p| format!("{}:{}", p.left, p.right))
        .collect();
    manifest.option(
        "plan",
        if plan_text.is_empty() {
            "default".into()
        } else {
            plan_text.join(",")
        },
    );
    out_option(&mut manifest, ctx);

    let mut report = String::new();
    let mut acc = summands[0].clone();
    for (k, next) in summands[1..].iter().enumerate() {
        let choice = plans
            .get(k)
            .copied()
            .unwrap_or_else(|| SheetChoice::default_for(acc.degree()));
        let sum = connected_sum(&SumPlan::with_choice(&acc, next, choice))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let ledger = genus_ledger(&acc, next, &sum).map_err(|e| CliError::Failed(e.to_string()))?;
        report.push_str(&format!(
            "step {}: sheets={}:{} chi left={} right={} sum={} euler_law={} genus={} weighted_formula={} (reported, not asserted)\n",
            k + 1,
            choice.left,
            choice.right,
            ledger.left_chi,
            ledger.right_chi,
            ledger.sum_chi,
            if ledger.euler_law_holds() { "holds" } else { "fails" },
            ledger.sum_genus,
            ledger.weighted_formula,
        ));
        acc = sum;
    }
    let degrees: Vec<String> = summands.iter().map(|c| c.degree().to_string()).collect();
    let total: usize = summands.iter().map(Constellation::degree).sum();
    emit(out, &manifest)?;
    writeln!(
        out,
        "summands={} degrees={}",
        summands.len(),
        degrees.join(",")
    )
    .map_err(io)?;
    writeln!(
        out,
        "Σdeg − (k−1) = {} − {} = {}",
        total,
        summands.len() - 1,
        acc.degree()
    )
    .map_err(io)?;
    emit(out, report)?;
    writeln!(out, "passport={}", acc.passport()).map_err(io)?;
    write_constellation(ctx, &acc, out)?;
    Ok(Outcome::Yes)
}

pub fn mate(ctx: &Context, p: &Path, q: &Path, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut manifest = RunManifest::new("mate");
    let cp = load_one(p, &mut manifest)?;
    let cq = load_one(q, &mut manifest)?;
    out_option(&mut manifest, ctx);
    let mated = formal_mating(&cp, &cq).map_err(|e| CliError::Failed(e.to_string()))?;
    emit(out, &manifest)?;
    writeln!(
        out,
        "degree={} entries={} genus={} equator_unbranched={} passport={}",
        mated.degree(),
        mated.len(),
        mated.genus().map_err(|e| CliError::Failed(e.to_string()))?,
        equator_unbranched(&cp, &cq, &mated),
        mated.passport()
    )
    .map_err(io)?;
    write_constellation(ctx, &mated, out)?;
    Ok(Outcome::Yes)
}

fn out_option(manifest: &mut RunManifest, ctx: &Context) {
    if let Some(path) = &ctx.out {
        manifest.option("out", path.display());
    }
}

/// To `--out` when given, otherwise appended to the report.
fn write_constellation(
    ctx: &Context,
    c: &Constellation,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let text = c.to_text();
    match &ctx.out {
        Some(path) => {
            write_file(path, text.as_bytes())?;
            writeln!(out, "wrote {}", path.display()).map_err(io)
        }
        None => emit(out, text),
    }
}

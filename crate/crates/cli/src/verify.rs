use std::fmt::Write;
use std::time::Instant;

use rayon::prelude::*;
use rfold_core::geometry::{catalog_entries, parse_geometry, Geometry};
use rfold_core::identities::{
    checks, find_check, run_check, CheckRecord, IdentityCheck, RunOptions, Status, Suite,
};
use rfold_core::Error;
use serde::Serialize;

use crate::output::{emit, render};
use crate::{Failure, VerifyArgs, SCHEMA_VERSION};

pub const DEFAULT_GEOMETRIES: [&str; 5] = [
    "flat-euclidean",
    "flat-lorentzian",
    "constcurv:1",
    "schwarzschild:1:3",
    "flrw:2,1,3",
];

#[derive(Serialize)]
struct Report<'a> {
    schema_version: u32,
    command: &'static str,
    seed: u64,
    samples: usize,
    geometries: Vec<GeometryInfo>,
    records: Vec<RecordOut<'a>>,
    summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

#[derive(Serialize)]
struct GeometryInfo {
    name: String,
    dim: usize,
    order: u32,
}

#[derive(Serialize)]
struct RecordOut<'a> {
    #[serde(flatten)]
    record: &'a CheckRecord,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

#[derive(Serialize, Default)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
    skipped: usize,
}

/// Selected checks in catalog order: the named suites (all suites when
/// neither suites nor checks are named) plus the named checks.
fn select(args: &VerifyArgs) -> Result<Vec<IdentityCheck>, Failure> {
    let suites: Vec<Suite> = args
        .suites
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, Error>>()?;
    for id in &args.checks {
        find_check(id)?;
    }
    let all_suites = suites.is_empty() && args.checks.is_empty();
    Ok(checks()
        .into_iter()
        .filter(|c| all_suites || suites.contains(&c.suite) || args.checks.iter().any(|id| id == c.id))
        .collect())
}

fn default_order(spec: &str) -> u32 {
    let head = spec.split(':').next().unwrap_or(spec);
    catalog_entries()
        .iter()
        .find(|e| e.pattern.split(':').next() == Some(head))
        .map_or(4, |e| e.default_order)
}

pub fn run(args: &VerifyArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let selected = select(args)?;
    let budget = selected.iter().map(|c| c.budget).max().unwrap_or(0);
    if let Some(k) = args.order {
        if k < budget {
            return Err(Error::InsufficientOrder { needed: budget, have: k }.into());
        }
    }
    let specs: Vec<String> = if args.geometries.is_empty() {
        DEFAULT_GEOMETRIES.iter().map(|s| s.to_string()).collect()
    } else {
        args.geometries.clone()
    };
    let geoms: Vec<Geometry> = specs
        .par_iter()
        .map(|s| {
            let order = args.order.unwrap_or_else(|| default_order(s).max(budget));
            parse_geometry(s, args.dim, order)
        })
        .collect::<Result<_, Error>>()?;
    let opts = RunOptions {
        seed: args.seed,
        samples: args.samples,
    };
    let tasks: Vec<(&Geometry, &IdentityCheck)> = geoms
        .iter()
        .flat_map(|g| selected.iter().map(move |c| (g, c)))
        .collect();
    let records: Vec<CheckRecord> = tasks
        .par_iter()
        .map(|&(g, c)| run_check(c, g, opts))
        .collect::<Result<_, Error>>()?;

    let mut summary = Summary {
        total: records.len(),
        ..Summary::default()
    };
    for r in &records {
        match r.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Skipped => summary.skipped += 1,
        }
    }
    let ms = |d: std::time::Duration| args.timings.then(|| d.as_secs_f64() * 1e3);
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        seed: args.seed,
        samples: args.samples,
        geometries: geoms
            .iter()
            .map(|g| GeometryInfo {
                name: g.name().to_string(),
                dim: g.dim(),
                order: g.order(),
            })
            .collect(),
        records: records
            .iter()
            .map(|r| RecordOut {
                record: r,
                pass: r.passed(),
                elapsed_ms: ms(r.elapsed),
            })
            .collect(),
        elapsed_ms: ms(start.elapsed()),
        summary,
    };
    let text = render(args.format, &report, || text_report(&report));
    emit(&text, args.out.as_deref())?;
    if report.summary.failed > 0 {
        return Err(Failure::Check(format!(
            "{} of {} checks failed",
            report.summary.failed, report.summary.total
        )));
    }
    Ok(())
}

fn text_report(r: &Report) -> String {
    let mut out = String::new();
    writeln!(out, "rfold verify (seed {}, samples {})", r.seed, r.samples).unwrap();
    for g in &r.geometries {
        writeln!(out, "geometry {} (dim {}, order {})", g.name, g.dim, g.order).unwrap();
    }
    for rec in &r.records {
        let c = rec.record;
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(out, "{status}  {}/{}  {}  residual {}", c.suite, c.id, c.geometry, c.residual).unwrap();
        if let Some(ms) = rec.elapsed_ms {
            write!(out, "  ({ms:.1} ms)").unwrap();
        }
        writeln!(out).unwrap();
        writeln!(out, "      {}", c.anchor).unwrap();
        if c.status == Status::Fail {
            if let Some(d) = &c.deciding {
                write!(out, "      deciding: {d}").unwrap();
                if let Some(w) = &c.witness {
                    write!(out, " at {w:?}").unwrap();
                }
                writeln!(out).unwrap();
            }
            for o in &c.offending {
                writeln!(out, "      offending: {o}").unwrap();
            }
        }
        if let Some(note) = &c.note {
            writeln!(out, "      note: {note}").unwrap();
        }
    }
    let s = &r.summary;
    writeln!(
        out,
        "{} checks: {} passed, {} failed, {} skipped",
        s.total, s.passed, s.failed, s.skipped
    )
    .unwrap();
    if let Some(ms) = r.elapsed_ms {
        writeln!(out, "elapsed {ms:.1} ms").unwrap();
    }
    out
}

use std::fmt::Write;
use std::path::Path;
use std::time::Instant;

use rfold_core::tensor::BlockShape;
use rfold_core::torus::potentials::{random_candidate, CandidateKind, Residual};
use rfold_core::torus::text::{read_field, write_field};
use rfold_core::torus::{
    adjointness, bar_identity, closedness_witness, decompose, decompose_pp_symmetric,
    fourier_d_block, fourier_lap_weighted, harmonic_modes, riemann_pair_potentials,
    weyl_potential, FourierTensorField, C, TOLERANCE,
};
use serde::Serialize;

use crate::output::{decimal, emit, render};
use crate::{DecomposeArgs, Failure, Format, Kind, SCHEMA_VERSION};

#[derive(Serialize)]
struct Summary {
    schema_version: u32,
    command: &'static str,
    kind: &'static str,
    source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    dim: usize,
    shape: String,
    bandlimit: u32,
    modes: usize,
    tolerance: String,
    residuals: Vec<Entry>,
    witnesses: Vec<Entry>,
    files: Vec<String>,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

#[derive(Serialize)]
struct Entry {
    name: String,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass: Option<bool>,
}

/// Residuals gated by the tolerance, informational witnesses, and named
/// output fields.
#[derive(Default)]
struct Outcome {
    residuals: Vec<Residual>,
    witnesses: Vec<Residual>,
    fields: Vec<(String, FourierTensorField)>,
}

impl Outcome {
    fn residual(&mut self, name: impl Into<String>, value: f64) {
        self.residuals.push(Residual {
            name: name.into(),
            value,
        });
    }

    fn witness(&mut self, name: impl Into<String>, value: f64) {
        self.witnesses.push(Residual {
            name: name.into(),
            value,
        });
    }

    fn field(&mut self, name: impl Into<String>, f: FourierTensorField) {
        self.fields.push((name.into(), f));
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::General => "general",
        Kind::PpSymmetric => "pp-symmetric",
        Kind::PpAntisymmetric => "pp-antisymmetric",
        Kind::Riemann => "riemann",
        Kind::Weyl => "weyl",
    }
}

fn parse_ranks(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad block rank `{x}` in --ranks")))
        })
        .collect()
}

fn pp_degree(ranks: &[usize]) -> Result<usize, Failure> {
    match ranks {
        [p, q] if p == q => Ok(*p),
        _ => Err(Failure::Usage(format!(
            "a double (p,p)-form needs --ranks p,p, got {ranks:?}"
        ))),
    }
}

fn random_field(args: &DecomposeArgs) -> Result<FourierTensorField, Failure> {
    let ranks = parse_ranks(&args.ranks)?;
    let (n, b, seed) = (args.dim, args.bandlimit, args.seed);
    let candidate = |k| random_candidate(k, n, b, seed).map_err(Failure::from);
    match args.kind {
        Kind::General => Ok(FourierTensorField::random(BlockShape::new(n, &ranks)?, b, seed, true)),
        Kind::PpSymmetric => candidate(CandidateKind::PpSymmetric(pp_degree(&ranks)?)),
        Kind::PpAntisymmetric => candidate(CandidateKind::PpAntisymmetric(pp_degree(&ranks)?)),
        Kind::Riemann => candidate(CandidateKind::Riemann),
        Kind::Weyl => candidate(CandidateKind::Weyl),
    }
}

/// `|a - b| / max(|a|, |b|)`, zero when both vanish.
fn scalar_relative(a: C, b: C) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

fn general(f: &FourierTensorField, seed: u64) -> Result<Outcome, Failure> {
    let mut out = Outcome::default();
    let res = decompose(f)?;
    out.residual("reconstruction", res.residual);
    let lap = fourier_lap_weighted(&res.superpotential)?.add(&res.harmonic)?;
    out.residual("weighted Laplacian of the superpotential", f.residual(&lap)?);
    let r = f.shape().r();
    for i in 0..r {
        let u_shape = fourier_d_block(f, i)?.shape().clone();
        let u = FourierTensorField::random(u_shape, f.bandlimit(), seed.wrapping_add(1 + i as u64), false);
        let (a, b) = adjointness(f, &u, i)?;
        out.residual(format!("adjointness of d and delta in block {}", i + 1), scalar_relative(a, b));
        let (closed, exact) = closedness_witness(f, i)?;
        out.witness(format!("|d F| / |F| in block {}", i + 1), closed);
        out.witness(format!("exactness residual in block {}", i + 1), exact);
    }
    let (a, b) = bar_identity(f)?;
    out.residual("weighted Laplacian energy identity", scalar_relative(a, b));
    let h = harmonic_modes(f, TOLERANCE)?;
    out.residual(
        "harmonic modes are fully harmonic and constant",
        if h.consistent() { 0.0 } else { 1.0 },
    );
    out.field("superpotential", res.superpotential);
    out.field("harmonic", res.harmonic);
    if r == 1 {
        let mut y = res.y;
        let mut z = res.z;
        out.field("gamma", y.remove(0));
        out.field("psi", z.remove(0));
    } else {
        for (i, (y, z)) in res.y.into_iter().zip(res.z).enumerate() {
            out.field(format!("y{}", i + 1), y);
            out.field(format!("z{}", i + 1), z);
        }
    }
    Ok(out)
}

fn run_kind(kind: Kind, f: &FourierTensorField, seed: u64) -> Result<Outcome, Failure> {
    let mut out = Outcome::default();
    match kind {
        Kind::General => return general(f, seed),
        Kind::PpSymmetric | Kind::PpAntisymmetric => {
            let sign = if kind == Kind::PpSymmetric { 1 } else { -1 };
            let d = decompose_pp_symmetric(f, sign)?;
            out.residuals = d.residuals.clone();
            out.field("y", d.y());
            out.field("z", d.z());
            out.field("superpotential", d.superpotential);
            out.field("harmonic", d.harmonic);
        }
        Kind::Riemann => {
            let d = riemann_pair_potentials(f)?;
            out.residuals = d.residuals;
            for r in &d.ricci.residuals {
                out.residual(format!("Ricci part: {}", r.name), r.value);
            }
            out.field("superpotential", d.superpotential);
            out.field("harmonic", d.harmonic);
            out.field("y", d.y);
            out.field("z", d.z);
            out.field("ricci-y", d.ricci_y);
            out.field("ricci-z", d.ricci_z);
        }
        Kind::Weyl => {
            let d = weyl_potential(f)?;
            out.residuals = d.residuals;
            out.field("superpotential", d.superpotential);
            out.field("harmonic", d.harmonic);
            out.field("p", d.p);
        }
    }
    Ok(out)
}

fn entry(r: &Residual, gated: bool) -> Entry {
    Entry {
        name: r.name.clone(),
        value: decimal(r.value),
        pass: gated.then_some(r.value <= TOLERANCE),
    }
}

pub fn run(args: &DecomposeArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let (f, source, seed) = match &args.field {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            (read_field(&text)?, path.display().to_string(), None)
        }
        None => (random_field(args)?, "random".to_string(), Some(args.seed)),
    };
    if let Some(path) = &args.save_input {
        write_file(path, &write_field(&f))?;
    }
    let outcome = run_kind(args.kind, &f, args.seed)?;

    let mut files = Vec::new();
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
        for (name, field) in &outcome.fields {
            let file = format!("{name}.field");
            write_file(&dir.join(&file), &write_field(field))?;
            files.push(file);
        }
    }
    let pass = outcome.residuals.iter().all(|r| r.value <= TOLERANCE);
    let mut summary = Summary {
        schema_version: SCHEMA_VERSION,
        command: "decompose",
        kind: kind_name(args.kind),
        source,
        seed,
        dim: f.dim(),
        shape: f.shape().to_string(),
        bandlimit: f.bandlimit(),
        modes: f.modes().len(),
        tolerance: decimal(TOLERANCE),
        residuals: outcome.residuals.iter().map(|r| entry(r, true)).collect(),
        witnesses: outcome.witnesses.iter().map(|r| entry(r, false)).collect(),
        files,
        pass,
        elapsed_ms: None,
    };
    if args.timings {
        summary.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let rendered = render(args.format, &summary, || text_summary(&summary));
    if let Some(dir) = &args.out {
        let name = match args.format {
            Format::Json => "summary.json",
            Format::Text => "summary.txt",
        };
        write_file(&dir.join(name), &rendered)?;
    }
    emit(&rendered, None)?;
    if !pass {
        return Err(Failure::Check("a decomposition residual exceeds the tolerance".into()));
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn text_summary(s: &Summary) -> String {
    let mut out = String::new();
    writeln!(out, "rfold decompose ({}, source {})", s.kind, s.source).unwrap();
    if let Some(seed) = s.seed {
        writeln!(out, "seed {seed}").unwrap();
    }
    writeln!(
        out,
        "dim {}, shape {}, bandlimit {}, {} modes, tolerance {}",
        s.dim, s.shape, s.bandlimit, s.modes, s.tolerance
    )
    .unwrap();
    for r in &s.residuals {
        let status = if r.pass == Some(true) { "PASS" } else { "FAIL" };
        writeln!(out, "{status}  {}  {}", r.name, r.value).unwrap();
    }
    for w in &s.witnesses {
        writeln!(out, "      {}  {}", w.name, w.value).unwrap();
    }
    for f in &s.files {
        writeln!(out, "wrote {f}").unwrap();
    }
    if let Some(ms) = s.elapsed_ms {
        writeln!(out, "elapsed {ms:.1} ms").unwrap();
    }
    out
}

//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` fail for the reason given there. The
//! target itself fails if any other criterion fails, or if a known failure
//! starts passing.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rfold_core::geometry::{parse_geometry, Geometry};
use rfold_core::identities::{find_check, run_check, CheckRecord, RunOptions, Status};
use rfold_core::tensor::BlockShape;
use rfold_core::torus::potentials::{random_candidate, CandidateKind, Residual};
use rfold_core::torus::{
    adjointness, bar_identity, decompose, decompose_pp_symmetric, fourier_d_block,
    harmonic_modes, riemann_pair_potentials, weyl_potential, FourierTensorField, WaveVector, C,
    TOLERANCE,
};

const CURVED: [&str; 3] = ["constcurv:1", "schwarzschild:1:3", "flrw:2,1,3"];
const CATALOG: [&str; 5] = [
    "flat-euclidean",
    "flat-lorentzian",
    "constcurv:1",
    "schwarzschild:1:3",
    "flrw:2,1,3",
];

const KNOWN_FAILURES: [(u32, &str); 3] = [
    (
        2,
        "the printed mixed curvature term of the double-form Laplacians has the wrong sign for \
         even q; the in-place reading is exact",
    ),
    (
        5,
        "tr(Delta_(2) Riem) - Delta_(2) Ric vanishes for every metric, and the first-Bianchi \
         defect of Delta_(2) Riem vanishes on FLRW",
    ),
    (
        6,
        "on constant curvature the Lichnerowicz Laplacian of the Riemann tensor is exactly zero",
    ),
];

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Verdict {
        Verdict {
            pass,
            detail: detail.into(),
        }
    }
}

fn geometry(name: &str, order: u32) -> Geometry {
    parse_geometry(name, None, order).unwrap()
}

fn run(id: &str, geom: &Geometry, samples: usize) -> CheckRecord {
    let check = find_check(id).unwrap();
    run_check(&check, geom, RunOptions { seed: 1, samples }).unwrap()
}

/// Runs checks on geometries; returns whether all passed and a summary of
/// the failures.
fn run_all(ids: &[&str], geoms: &[&Geometry], samples: usize) -> (bool, Vec<String>) {
    let mut failures = Vec::new();
    for g in geoms {
        for id in ids {
            let rec = run(id, g, samples);
            if rec.status != Status::Pass {
                failures.push(format!(
                    "{id} on {} {:?} (residual {}, {})",
                    rec.geometry,
                    rec.status,
                    rec.residual,
                    rec.deciding.as_deref().or(rec.note.as_deref()).unwrap_or("-")
                ));
            }
        }
    }
    (failures.is_empty(), failures)
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let g = geometry("schwarzschild:1:3", 5);
    let ricci = g.ricci().max_abs();
    let b1 = run("bianchi-d1", &g, 2);
    let b2 = run("bianchi-d2", &g, 2);
    let t = start.elapsed();
    let pass = ricci.is_zero()
        && b1.status == Status::Pass
        && b2.status == Status::Pass
        && t < Duration::from_secs(30);
    Verdict::new(
        pass,
        format!(
            "Ricci {ricci}, first Bianchi {}, second Bianchi {}, {:.1} s",
            b1.residual,
            b2.residual,
            t.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Verdict {
    let geoms: Vec<Geometry> = CATALOG.iter().map(|n| geometry(n, 4)).collect();
    let refs: Vec<&Geometry> = geoms.iter().collect();
    let (ok, failures) = run_all(
        &[
            "block-laplacian-explicit",
            "weighted-relation",
            "double-laplacian-block1",
            "double-laplacian-block2",
            "double-laplacian-weighted",
            "double-laplacian-cases",
        ],
        &refs,
        20,
    );
    let (in_place, _) = run_all(&["double-laplacian-in-place"], &refs, 20);
    let mut detail = format!("in-place reading exact: {in_place}");
    if !failures.is_empty() {
        detail.push_str(&format!("; {} failing: {}", failures.len(), failures.join("; ")));
    }
    Verdict::new(ok, detail)
}

fn criterion_3() -> Verdict {
    let geoms: Vec<Geometry> = CURVED.iter().map(|n| geometry(n, 4)).collect();
    let refs: Vec<&Geometry> = geoms.iter().collect();
    let (ok, failures) = run_all(
        &["d2-curvature", "delta2-curvature", "d-nilpotency", "delta-nilpotency"],
        &refs,
        2,
    );
    Verdict::new(ok, format!("{} curved geometries; {}", refs.len(), failures.join("; ")))
}

fn criterion_4() -> Verdict {
    let geoms: Vec<Geometry> = CATALOG.iter().map(|n| geometry(n, 4)).collect();
    let refs: Vec<&Geometry> = geoms.iter().collect();
    let (ok, failures) = run_all(
        &[
            "trace-d",
            "trace-delta",
            "transpose-d-delta",
            "commutator-d1-d2",
            "commutator-d1-delta2",
            "commutator-delta1-delta2",
        ],
        &refs,
        2,
    );
    let printed: Vec<String> = refs
        .iter()
        .map(|g| {
            let r = run("commutator-d1-delta2-printed", g, 2);
            format!("{} {:?}", r.geometry, r.status)
        })
        .collect();
    Verdict::new(
        ok,
        format!("printed commutator form: {}; {}", printed.join(", "), failures.join("; ")),
    )
}

fn criterion_5() -> Verdict {
    let g = geometry("flrw:2,1,3", 6);
    let (ok, failures) = run_all(
        &[
            "riemann-wave-block1",
            "riemann-wave-block2",
            "riemann-wave-weighted",
            "riemann-wave-index",
            "riemann-wave-weighted-index",
            "ricci-wave-block1",
            "ricci-wave-block2",
            "ricci-wave-weighted",
            "ricci-wave-index",
            "scalar-wave",
            "scalar-wave-index",
            "weighted-preserves-symmetry",
            "weighted-commutes-trace",
            "delta2-bianchi-failure",
            "delta2-trace-failure",
        ],
        &[&g],
        2,
    );
    let printed = run("riemann-wave-index-printed", &g, 2);
    Verdict::new(
        ok,
        format!(
            "printed index form {:?} (residual {}); {}",
            printed.status,
            printed.residual,
            failures.join("; ")
        ),
    )
}

fn criterion_6() -> Verdict {
    let g = geometry("constcurv:1", 5);
    let (ok, failures) = run_all(
        &["weighted-harmonic", "block2-harmonic", "lichnerowicz-not-harmonic"],
        &[&g],
        2,
    );
    Verdict::new(ok, failures.join("; "))
}

fn worst(rs: &[Residual]) -> (f64, String) {
    rs.iter()
        .map(|r| (r.value, r.name.clone()))
        .fold((0.0, String::new()), |a, b| if b.0 > a.0 { b } else { a })
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    let mut note = |label: &str, value: f64, extra: &str| {
        ok &= value <= TOLERANCE;
        lines.push(format!("{label} {value:.1e}{extra}"));
    };

    let f = FourierTensorField::random(BlockShape::new(3, &[2]).unwrap(), 2, 11, true);
    note("2-form T3", decompose(&f).unwrap().residual, "");

    let f = FourierTensorField::random(BlockShape::new(4, &[2, 2]).unwrap(), 2, 12, true);
    let res = decompose(&f).unwrap();
    let count = res.y.len() + res.z.len();
    note("(2,2)-form T4", res.residual, &format!(" ({count} potentials)"));
    let count_ok = count == 4;

    for p in [1, 2] {
        let f = random_candidate(CandidateKind::PpSymmetric(p), 4, 2, 13).unwrap();
        let (v, name) = worst(&decompose_pp_symmetric(&f, 1).unwrap().residuals);
        note(&format!("symmetric ({p},{p}) T4"), v, &format!(" [{name}]"));
    }

    let f = random_candidate(CandidateKind::Riemann, 4, 2, 14).unwrap();
    let (v, name) = worst(&riemann_pair_potentials(&f).unwrap().residuals);
    note("Riemann T4", v, &format!(" [{name}]"));

    for n in [4, 6] {
        let f = random_candidate(CandidateKind::Weyl, n, 2, 15).unwrap();
        let w = weyl_potential(&f).unwrap();
        let (v, name) = worst(&w.residuals);
        note(&format!("Weyl T{n}"), v, &format!(" [{name}, {} residuals]", w.residuals.len()));
    }

    let t = start.elapsed();
    ok &= count_ok && t < Duration::from_secs(60);
    Verdict::new(ok, format!("{}; {:.1} s", lines.join(", "), t.as_secs_f64()))
}

fn scalar_relative(a: C, b: C) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

fn criterion_8() -> Verdict {
    let mut ok = true;
    let mut worst_adj: f64 = 0.0;
    let mut worst_bar: f64 = 0.0;
    for (seed, (n, ranks)) in [(3, &[1, 2][..]), (4, &[2, 2][..]), (4, &[1, 1, 1][..])]
        .into_iter()
        .enumerate()
    {
        let t = FourierTensorField::random(BlockShape::new(n, ranks).unwrap(), 2, 20 + seed as u64, true);
        for i in 0..ranks.len() {
            let shape = fourier_d_block(&t, i).unwrap().shape().clone();
            let u = FourierTensorField::random(shape, 2, 40 + seed as u64 + i as u64, false);
            let (a, b) = adjointness(&t, &u, i).unwrap();
            worst_adj = worst_adj.max(scalar_relative(a, b));
        }
        let (a, b) = bar_identity(&t).unwrap();
        worst_bar = worst_bar.max(scalar_relative(a, b));
        ok &= a.re > 0.0;
    }
    ok &= worst_adj <= TOLERANCE && worst_bar <= TOLERANCE;

    let shape = BlockShape::new(3, &[1, 1]).unwrap();
    let random = FourierTensorField::random(shape.clone(), 2, 30, true);
    let rep = harmonic_modes(&random, TOLERANCE).unwrap();
    let constant = random.zero_mode();
    let crep = harmonic_modes(&constant, TOLERANCE).unwrap();
    let harmonic_ok = rep.consistent()
        && rep.harmonic == vec![WaveVector::zero(3)]
        && crep.consistent()
        && crep.harmonic == vec![WaveVector::zero(3)]
        && !constant.is_zero();
    ok &= harmonic_ok;
    Verdict::new(
        ok,
        format!(
            "adjointness {worst_adj:.1e}, energy identity {worst_bar:.1e}, harmonic iff constant: {harmonic_ok}"
        ),
    )
}

fn rfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rfold"))
        .args(args)
        .env("RFOLD_THREADS", "2")
        .output()
        .unwrap()
}

fn criterion_9() -> Verdict {
    let verify = [
        "verify",
        "--geometry",
        "schwarzschild:1:3",
        "--suite",
        "curvature",
        "--order",
        "5",
        "--format",
        "json",
    ];
    let a = rfold(&verify);
    let b = rfold(&verify);
    let decomp = ["decompose", "--random", "--kind", "riemann", "--bandlimit", "1", "--format", "json"];
    let c = rfold(&decomp);
    let d = rfold(&decomp);
    let identical = a.stdout == b.stdout && c.stdout == d.stdout && !a.stdout.is_empty();
    let versioned = serde_json::from_slice::<serde_json::Value>(&a.stdout)
        .map(|v| v["schema_version"] == 1)
        .unwrap_or(false);

    let pass_code = a.status.code();
    let usage_code = rfold(&["verify", "--geometry", "nosuch"]).status.code();
    let failure_code = rfold(&[
        "verify",
        "--geometry",
        "flrw:2,1,3",
        "--check",
        "riemann-wave-index-printed",
    ])
    .status
    .code();
    let codes_ok = pass_code == Some(0) && usage_code == Some(2) && failure_code == Some(1);
    Verdict::new(
        identical && versioned && codes_ok,
        format!(
            "byte-identical reports: {identical}, schema stamped: {versioned}, exit codes pass/usage/failure = {:?}/{:?}/{:?}",
            pass_code, usage_code, failure_code
        ),
    )
}

fn main() {
    let criteria: [(u32, &str, fn() -> Verdict); 9] = [
        (1, "exact curvature pipeline on Schwarzschild", criterion_1),
        (2, "operator cross-path agreement", criterion_2),
        (3, "second-derivative identities and nilpotency", criterion_3),
        (4, "double-form calculus", criterion_4),
        (5, "curvature Laplace-like equations on FLRW", criterion_5),
        (6, "harmonicity on constant curvature", criterion_6),
        (7, "torus decompositions", criterion_7),
        (8, "torus adjointness and positivity", criterion_8),
        (9, "CLI determinism and exit codes", criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (n, title, f) in criteria {
        let start = Instant::now();
        let v = f();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == n);
        println!(
            "criterion {n} {}: {title} ({:.1} s): {}",
            if v.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            v.detail
        );
        match (v.pass, known) {
            (false, Some((_, why))) => println!("    known failure: {why}"),
            (false, None) => unexpected.push(format!("criterion {n} failed")),
            (true, Some(_)) => unexpected.push(format!("criterion {n} passed but is listed as a known failure")),
            (true, None) => {}
        }
    }
    if !unexpected.is_empty() {
        eprintln!("{}", unexpected.join("\n"));
        std::process::exit(1);
    }
}

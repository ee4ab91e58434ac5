//! Named identity checks. Each check evaluates both sides of an identity on
//! a geometry with exact jets and reports the exact residual.
//!
//! Theorems about potentials are checked in reverse: pick a random
//! superpotential `T°`, set `T = bar Delta T°`, and confirm that the
//! potentials built from `T°` reproduce `T`.

pub mod dense;
pub mod random;

mod curvature;
mod double;
mod pp;
mod rfold;
mod single;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::jet::{Jet, Rational};
use crate::tensor::RFoldTensor;

pub use dense::Dense;
pub use random::Sampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    SingleForms,
    RfoldCalculus,
    DoubleForms,
    PpSymmetric,
    Curvature,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::SingleForms,
        Suite::RfoldCalculus,
        Suite::DoubleForms,
        Suite::PpSymmetric,
        Suite::Curvature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SingleForms => "single_forms",
            Suite::RfoldCalculus => "rfold_calculus",
            Suite::DoubleForms => "double_forms",
            Suite::PpSymmetric => "pp_symmetric",
            Suite::Curvature => "curvature",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    /// Every compared pair agrees exactly.
    Zero,
    /// Every compared expression is nonzero.
    Nonzero,
}

type Eval = fn(&mut Ctx) -> Result<Outcome>;

#[derive(Clone)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub suite: Suite,
    /// The identity being certified, as a formula.
    pub anchor: &'static str,
    /// Which tensors are fed in.
    pub inputs: &'static str,
    pub expect: Expect,
    /// Smallest metric jet order for which every evaluated expression keeps
    /// at least its constant term.
    pub budget: u32,
    eval: Eval,
}

impl fmt::Debug for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCheck")
            .field("id", &self.id)
            .field("suite", &self.suite)
            .finish()
    }
}

impl IdentityCheck {
    const fn new(
        id: &'static str,
        suite: Suite,
        anchor: &'static str,
        inputs: &'static str,
        budget: u32,
        eval: Eval,
    ) -> IdentityCheck {
        IdentityCheck {
            id,
            suite,
            anchor,
            inputs,
            expect: Expect::Zero,
            budget,
            eval,
        }
    }

    const fn witness(mut self) -> IdentityCheck {
        self.expect = Expect::Nonzero;
        self
    }
}

/// Evaluation context handed to a check.
pub struct Ctx<'a> {
    pub geom: &'a Geometry,
    pub rng: Sampler,
    pub samples: usize,
    tally: Tally,
}

impl Ctx<'_> {
    pub fn n(&self) -> usize {
        self.geom.dim()
    }

    /// Records `a - b`.
    pub fn compare(
        &mut self,
        label: impl Into<String>,
        a: &RFoldTensor<Jet>,
        b: &RFoldTensor<Jet>,
    ) -> Result<()> {
        let diff = a.sub(b)?;
        self.record(label, &diff);
        Ok(())
    }

    /// Records a tensor that should vanish (or, for witness checks, not).
    pub fn record(&mut self, label: impl Into<String>, t: &RFoldTensor<Jet>) {
        let witness = t.first_nonzero().map(|(idx, _)| idx);
        self.tally.push(label.into(), t.max_abs(), witness);
    }

    pub fn record_dense(&mut self, label: impl Into<String>, d: &Dense) {
        self.tally.push(label.into(), d.max_abs(), d.first_nonzero());
    }

    pub fn compare_dense(&mut self, label: impl Into<String>, a: &Dense, b: &Dense) -> Result<()> {
        let diff = a.sub(b)?;
        self.record_dense(label, &diff);
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    items: Vec<(String, Rational, Option<Vec<usize>>)>,
}

impl Tally {
    fn push(&mut self, label: String, residual: Rational, witness: Option<Vec<usize>>) {
        self.items.push((label, residual, witness));
    }
}

pub enum Outcome {
    Checked,
    /// The identity's hypothesis does not hold on this geometry.
    Skipped(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub suite: Suite,
    pub anchor: String,
    pub geometry: String,
    pub expect: Expect,
    pub status: Status,
    /// Exact rational. For zero checks the largest residual over all
    /// comparisons; for witness checks the smallest.
    pub residual: String,
    /// Label of the comparison that decided the residual.
    pub deciding: Option<String>,
    /// First nonzero component of the deciding comparison.
    pub witness: Option<Vec<usize>>,
    /// Comparisons whose outcome contradicts the expectation.
    pub offending: Vec<String>,
    pub comparisons: usize,
    pub note: Option<String>,
    pub seed: u64,
    pub order: u32,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    /// Random inputs per shape where a check samples several.
    pub samples: usize,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions {
            seed: 1,
            samples: 2,
        }
    }
}

pub fn checks() -> Vec<IdentityCheck> {
    let mut all = single::checks();
    all.extend(rfold::checks());
    all.extend(double::checks());
    all.extend(pp::checks());
    all.extend(curvature::checks());
    all
}

pub fn suite_checks(suite: Suite) -> Vec<IdentityCheck> {
    checks().into_iter().filter(|c| c.suite == suite).collect()
}

pub fn find_check(id: &str) -> Result<IdentityCheck> {
    checks()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Largest derivative budget among the checks of a suite.
pub fn suite_budget(suite: Suite) -> u32 {
    suite_checks(suite)
        .iter()
        .map(|c| c.budget)
        .max()
        .unwrap_or(2)
}

pub fn run_check(check: &IdentityCheck, geom: &Geometry, opts: RunOptions) -> Result<CheckRecord> {
    if geom.order() < check.budget {
        return Err(Error::InsufficientOrder {
            needed: check.budget,
            have: geom.order(),
        });
    }
    let start = Instant::now();
    let mut ctx = Ctx {
        geom,
        rng: Sampler::new(opts.seed, check.id, geom.dim()),
        samples: opts.samples.max(1),
        tally: Tally::default(),
    };
    let outcome = (check.eval)(&mut ctx)?;
    let items = std::mem::take(&mut ctx.tally.items);
    let mut rec = CheckRecord {
        id: check.id.to_string(),
        suite: check.suite,
        anchor: check.anchor.to_string(),
        geometry: geom.name().to_string(),
        expect: check.expect,
        status: Status::Skipped,
        residual: "0".into(),
        deciding: None,
        witness: None,
        offending: Vec::new(),
        comparisons: items.len(),
        note: None,
        seed: opts.seed,
        order: geom.order(),
        elapsed: Duration::ZERO,
    };
    match outcome {
        Outcome::Skipped(why) => rec.note = Some(why),
        Outcome::Checked => {
            let pick = match check.expect {
                Expect::Zero => items.iter().max_by(|a, b| a.1.cmp(&b.1)),
                Expect::Nonzero => items.iter().min_by(|a, b| a.1.cmp(&b.1)),
            };
            if let Some((label, res, wit)) = pick {
                rec.residual = res.to_string();
                rec.deciding = Some(label.clone());
                rec.witness = wit.clone();
            }
            rec.offending = items
                .iter()
                .filter(|(_, r, _)| (check.expect == Expect::Zero) != r.is_zero())
                .map(|(l, _, _)| l.clone())
                .collect();
            rec.status = if items.is_empty() {
                rec.note = Some("no case applies in this dimension".into());
                Status::Skipped
            } else if rec.offending.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            };
        }
    }
    rec.elapsed = start.elapsed();
    Ok(rec)
}

/// Runs every check of a suite on one geometry; checks run in parallel and
/// the records come back in catalog order.
pub fn run_suite(suite: Suite, geom: &Geometry, opts: RunOptions) -> Result<Vec<CheckRecord>> {
    let list = suite_checks(suite);
    if let Some(c) = list.iter().find(|c| geom.order() < c.budget) {
        return Err(Error::InsufficientOrder {
            needed: c.budget,
            have: geom.order(),
        });
    }
    list.par_iter()
        .map(|c| run_check(c, geom, opts))
        .collect()
}

fn parity(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn rat(n: i64) -> Rational {
    Rational::integer(n)
}

fn half() -> Rational {
    Rational::new(1, 2)
}

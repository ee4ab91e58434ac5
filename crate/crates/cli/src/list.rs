use std::fmt::Write;

use rfold_core::geometry::catalog_entries;
use rfold_core::identities::{checks, suite_budget, suite_checks, Suite};

use crate::output::emit;
use crate::{Failure, ListArgs, ListWhat};

pub fn run(args: &ListArgs) -> Result<(), Failure> {
    let mut out = String::new();
    match args.what {
        ListWhat::Geometries => {
            writeln!(out, "{:<22} {:>5}  description", "geometry", "order").unwrap();
            for e in catalog_entries() {
                writeln!(out, "{:<22} {:>5}  {}", e.pattern, e.default_order, e.description).unwrap();
            }
        }
        ListWhat::Suites => {
            writeln!(out, "{:<16} {:>6} {:>6}", "suite", "budget", "checks").unwrap();
            for s in Suite::ALL {
                writeln!(out, "{:<16} {:>6} {:>6}", s.name(), suite_budget(s), suite_checks(s).len()).unwrap();
            }
        }
        ListWhat::Checks => {
            let list = match &args.suite {
                Some(s) => suite_checks(s.parse::<Suite>()?),
                None => checks(),
            };
            for c in list {
                let expect = match c.expect {
                    rfold_core::identities::Expect::Zero => "zero",
                    rfold_core::identities::Expect::Nonzero => "nonzero",
                };
                writeln!(
                    out,
                    "{}  [{}, budget {}, expect {}]\n    {}\n    inputs: {}",
                    c.id, c.suite, c.budget, expect, c.anchor, c.inputs
                )
                .unwrap();
            }
        }
    }
    emit(&out, None)
}

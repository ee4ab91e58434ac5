use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::{Failure, Format};

/// Renders a report as pretty JSON with a trailing newline.
pub fn json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Writes `text` to `out`, or to standard output.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn render<T: Serialize>(format: Format, report: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => json(report),
        Format::Text => text(),
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn decimal(x: f64) -> String {
    format!("{x:e}")
}

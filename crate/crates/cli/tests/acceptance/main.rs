//! Acceptance suite. Each criterion runs in isolation and prints one
//! `PASS` or `FAIL` line; the test fails if any criterion fails.
//!
//! Lines are written straight to the process stdout so they show up even
//! when the harness captures output (`cargo test -- --nocapture` is not
//! needed).

mod classifiers;
mod end_to_end;
mod formats;
mod oracles;
mod planted;
mod rule_oracle;
mod support;
mod table_metrics;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use support::{say, Outcome};

type Check = fn() -> Outcome;

const CRITERIA: [(u8, &str, Check); 8] = [
    (1, "printed confusion-matrix metrics", table_metrics::run),
    (2, "centrality oracle equivalence", oracles::run),
    (3, "sink centrality pattern", oracles::run_sinks),
    (4, "rule pipeline exactness", rule_oracle::run),
    (5, "planted-layer recovery", planted::run),
    (6, "classifier sanity", classifiers::run),
    (7, "format round trips", formats::run),
    (8, "end-to-end pipeline", end_to_end::run),
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    // libtest has already printed `test acceptance ... ` without a newline
    say("");
    for (id, name, check) in CRITERIA {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => say(&format!("PASS criterion {id} ({name}): {detail} [{secs:.2}s]")),
            Err(reason) => {
                say(&format!("FAIL criterion {id} ({name}): {reason} [{secs:.2}s]"));
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

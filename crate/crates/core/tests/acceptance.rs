//! Acceptance criteria, one line per criterion.
//!
//! `ADDIX_ACCEPT_SEED` and `ADDIX_ACCEPT_MAX_Q` override the defaults.

use std::process::ExitCode;
use std::time::Instant;

use addix::verify::{run_criterion, VerifyConfig, CRITERIA};

fn env_u64(name: &str) -> Option<u64> {
    std::env::var(name).ok()?.parse().ok()
}

fn main() -> ExitCode {
    let mut cfg = VerifyConfig::default();
    if let Some(seed) = env_u64("ADDIX_ACCEPT_SEED") {
        cfg.seed = seed;
    }
    if let Some(q) = env_u64("ADDIX_ACCEPT_MAX_Q") {
        cfg.max_q = q;
    }
    println!("acceptance: seed {}, max q {}", cfg.seed, cfg.max_q);
    let mut failed = 0;
    for (id, _) in CRITERIA {
        let start = Instant::now();
        let report = run_criterion(id, &cfg).expect("criterion ids are valid");
        println!("{report} [{:.1}s]", start.elapsed().as_secs_f64());
        for event in report.events.iter().skip(1).take(2) {
            println!("    also: {event}");
        }
        for note in &report.notes {
            println!("    note: {note}");
        }
        failed += !report.passed as usize;
    }
    println!(
        "acceptance: {} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

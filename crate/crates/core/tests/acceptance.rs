use std::process::ExitCode;

use symcalc::acceptance::{run, Mode, CRITERIA};

fn main() -> ExitCode {
    let mode = match std::env::var("SYMCALC_ACCEPTANCE").as_deref() {
        Ok("quick") => Mode::Quick,
        _ => Mode::Full,
    };
    let only: Vec<u8> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for c in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let outcome = run(c.id, mode).expect("listed criterion");
        println!("{outcome}");
        if !outcome.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

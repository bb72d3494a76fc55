//! Runs selected acceptance criteria through the library API.
//!
//! Usage: verification_suite [criterion ...]   (default: 1 2 8)

use ahmass::verify::{run_criterion, suite_ok, SuiteConfig};

fn main() {
    let mut ids: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if ids.is_empty() {
        ids = vec![1, 2, 8];
    }
    let cfg = SuiteConfig::default();
    let mut lines = Vec::new();
    for id in ids {
        lines.extend(run_criterion(id, &cfg));
    }
    for l in &lines {
        println!("{}", l.render());
    }
    println!("ok: {}", suite_ok(&lines));
}

//! Runs the fixed-seed statistical checks, one line per check.
//!
//!     cargo run --release --example validate_suite -- [suite]

use bipartite_surplus::rng::DEFAULT_SEED;
use bipartite_surplus::validate::run_suite;

fn main() {
    let suite = std::env::args().nth(1).unwrap_or_else(|| "tau".into());
    let reports = run_suite(&suite, DEFAULT_SEED, None).unwrap_or_else(|| {
        eprintln!("unknown suite `{suite}`");
        std::process::exit(2);
    });
    for r in &reports {
        println!("{r}");
    }
}

//! Monte Carlo and exact counts of unicyclic bipartite graphs against the
//! large-n approximation, along n = m.
//!
//!     cargo run --release --example asymptotic_counts

use bipartite_surplus::counting::{asymptotic_count, estimate_count, unicyclic_count};
use bipartite_surplus::rng::RngStream;

fn main() {
    let rho1 = (std::f64::consts::PI / 8.0).sqrt();
    println!("{:>5} {:>14} {:>14} {:>14} {:>9}", "n", "log exact", "log estimate", "log approx", "gap");
    for n in [10, 25, 50, 100, 200] {
        let exact = unicyclic_count(n, n).ln();
        let (_, est) = estimate_count(n, n, 1, 20_000, RngStream::new(5, n as u64));
        let approx = asymptotic_count(n, n, 1, rho1).ln();
        println!(
            "{n:>5} {exact:>14.4} {:>14.4} {approx:>14.4} {:>9.4}",
            est.ln(),
            exact - approx
        );
    }
    println!("the gap shrinks like 1/sqrt(n)");
}

//! rho_k from discrete Brownian excursion areas, at a few resolutions.
//!
//!     cargo run --release --example excursion_area_rho

use bipartite_surplus::counting::estimate_rho;
use bipartite_surplus::rng::RngStream;

fn main() {
    let target = (std::f64::consts::PI / 8.0).sqrt();
    for resolution in [250, 1000, 2000] {
        let seed = RngStream::new(11, resolution as u64);
        let r1 = estimate_rho(1, resolution, 50_000, seed);
        let r2 = estimate_rho(2, resolution, 50_000, seed);
        println!(
            "N={resolution:>5}  rho_1 = {:.4} +- {:.4} (sqrt(pi/8) = {target:.4})  rho_2 = {:.4} +- {:.4} (5/24 = {:.4})",
            r1.mean,
            r1.stderr,
            r2.mean,
            r2.stderr,
            5.0 / 24.0
        );
    }
}

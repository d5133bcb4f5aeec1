//! Cyclic shifts of a skip-free bridge: exactly one rotation is an
//! excursion, and the Vervaat transform finds it.

use bipartite_surplus::cyclic::{excursion_rotations, vervaat, SkipFreeBridge};
use bipartite_surplus::rng::RngStream;
use bipartite_surplus::sampling::sample_multinomial_equal;

fn show(b: &SkipFreeBridge) -> String {
    b.path().values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn main() {
    let mut rng = RngStream::new(7, 0).rng();
    for n in [5, 8, 12] {
        let bridge = SkipFreeBridge::from_offspring(&sample_multinomial_equal(n - 1, n, &mut rng));
        let v = vervaat(&bridge).unwrap();
        println!("bridge     {}", show(&bridge));
        println!("argmin at  {}", bridge.argmin_time());
        println!("excursion  {}", show(&v));
        println!("excursion rotations {:?}\n", excursion_rotations(&bridge));
    }
}

//! Exact counts of connected bipartite graphs by surplus, checked against
//! brute force where that is feasible.
//!
//!     cargo run --release --example count_surplus_graphs -- 4 4

use bipartite_surplus::counting::{exact_count_table, unicyclic_count, DEFAULT_EXACT_BUDGET};
use bipartite_surplus::graph::{oracle_count, oracle_work, scoins_count};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, m) = match args[..] {
        [n, m, ..] => (n, m),
        _ => (4, 4),
    };
    let table = exact_count_table(n, m, DEFAULT_EXACT_BUDGET).expect("within budget");
    println!("connected spanning subgraphs of K_{{{n},{m}}} by surplus");
    println!("{:>3} {:>30} {:>10}", "k", "count", "oracle");
    for (k, count) in table.iter().enumerate() {
        let oracle = match oracle_work(n, m, k) {
            Some(w) if w <= 2_000_000 => {
                let o = oracle_count(n, m, k).unwrap();
                if &o == count { "agrees" } else { "DIFFERS" }
            }
            _ => "skipped",
        };
        println!("{k:>3} {count:>30} {oracle:>10}");
    }
    println!("trees n^(m-1) m^(n-1) = {}", scoins_count(n, m));
    println!("k = 1 by cycle decomposition = {}", unicyclic_count(n, m));
}

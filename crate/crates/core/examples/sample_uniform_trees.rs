//! Uniform spanning trees of K_{n,m}: tally samples of K_{2,3} against the
//! full list of its 12 trees, then draw one larger tree.

use std::collections::BTreeMap;

use bipartite_surplus::graph::oracle_trees;
use bipartite_surplus::rng::{par_samples, RngStream};
use bipartite_surplus::sampling::sample_uniform_tree;
use bipartite_surplus::stats::chi_square;

fn main() {
    let stream = RngStream::new(2024, 0);
    let trees = oracle_trees(2, 3).unwrap();
    let samples = par_samples(stream, 60_000, |rng| sample_uniform_tree(2, 3, rng));
    let mut hist: BTreeMap<_, u64> = trees.iter().map(|t| (t.clone(), 0)).collect();
    for t in samples {
        *hist.get_mut(&t).expect("sampled a spanning tree") += 1;
    }
    for (t, c) in &hist {
        let edges: Vec<String> = t.edges().iter().map(|(i, j)| format!("{i}-{j}")).collect();
        println!("{c:>6}  {}", edges.join(" "));
    }
    let counts: Vec<u64> = hist.values().copied().collect();
    let r = chi_square(&counts, &vec![1.0 / counts.len() as f64; counts.len()]);
    println!("chi-square {:.2} on {} dof, p = {:.3}", r.statistic, r.dof, r.p_value);

    let big = sample_uniform_tree(6, 9, &mut stream.with_stream(1).rng());
    println!("\none tree of K_{{6,9}}:\n{big}");
}

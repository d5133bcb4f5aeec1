//! Breadth-first exploration of a small tree: child counts, the
//! Lukasiewicz path, W and the candidate surplus edges.
//!
//!     cargo run --example explore_tree [graph-file]

use bipartite_surplus::exploration::{
    candidate_edges, explore, lukasiewicz, prefix_processes, rebuild_tree, tree_count_for, w_of_counts,
    w_via_stack,
};
use bipartite_surplus::graph::BipartiteGraph;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/tree_7_8.txt").into());
    let text = std::fs::read_to_string(&path).expect("readable graph file");
    let tree = BipartiteGraph::parse(&text).expect("valid graph file");
    let rec = explore(&tree).expect("connected graph");

    println!("chi white  {:?}", rec.counts.white());
    println!("chi black  {:?}", rec.counts.black());
    let (xw, xb) = prefix_processes(&rec.counts);
    println!("X white    {:?}", xw.values());
    println!("X black    {:?}", xb.values());
    println!("Z          {:?}", lukasiewicz(&rec.counts).unwrap().values());
    println!("white order {:?}", rec.white_order);
    println!("black order {:?}", rec.black_order);

    let w = w_of_counts(&rec.counts).unwrap();
    println!("W = {w} (stack form {})", w_via_stack(&rec.counts).unwrap());
    let cands = candidate_edges(&tree).unwrap();
    let listed: Vec<String> = cands.iter().map(|(a, b)| format!("{a}{b}")).collect();
    println!("{} candidate edges: {}", cands.len(), listed.join(" "));
    println!(
        "trees sharing these child counts: {}",
        tree_count_for(&rec.counts).unwrap()
    );
    assert_eq!(rebuild_tree(&rec).unwrap(), tree);
    println!("rebuilt the tree from its exploration record");
}

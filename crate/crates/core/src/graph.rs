//! Labeled bipartite graphs, connectivity, and the brute-force counting oracle.
//!
//! White vertices are `1°..n°`, black vertices `1●..m●`. Internally a vertex
//! set of size `n + m` is used with whites at `0..n` and blacks offset by `n`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::bigcount::BigCount;
use crate::error::{Error, Result};

/// Default refusal threshold on the number of edge subsets the oracle visits.
pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;

/// A spanning subgraph of `K_{n,m}` given by its edge set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BipartiteGraph {
    n: usize,
    m: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    /// Builds a graph from 1-based `(white, black)` pairs.
    pub fn new<I>(n: usize, m: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 || m == 0 {
            return Err(Error::EmptyClass { n, m });
        }
        let mut set = BTreeSet::new();
        for (white, black) in edges {
            if white == 0 || white > n || black == 0 || black > m {
                return Err(Error::EdgeOutOfRange { white, black, n, m });
            }
            if !set.insert((white, black)) {
                return Err(Error::DuplicateEdge { white, black });
            }
        }
        Ok(BipartiteGraph { n, m, edges: set })
    }

    /// The complete bipartite graph `K_{n,m}`.
    pub fn complete(n: usize, m: usize) -> Result<Self> {
        Self::new(n, m, (1..=n).flat_map(|i| (1..=m).map(move |j| (i, j))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, white: usize, black: usize) -> bool {
        self.edges.contains(&(white, black))
    }

    /// Returns a copy with the extra edges added.
    pub fn with_edges<I>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(
            self.n,
            self.m,
            self.edges.iter().copied().chain(extra),
        )
    }

    /// Sorted black neighbours of each white vertex (index 0 unused).
    pub fn white_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(i, j) in &self.edges {
            adj[i].push(j);
        }
        adj
    }

    /// Sorted white neighbours of each black vertex (index 0 unused).
    pub fn black_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.m + 1];
        for &(i, j) in &self.edges {
            adj[j].push(i);
        }
        adj
    }

    /// True iff all `n + m` vertices lie in one component.
    pub fn is_connected_spanning(&self) -> bool {
        let mut uf = UnionFind::new(self.n + self.m);
        for &(i, j) in &self.edges {
            uf.union(i - 1, self.n + j - 1);
        }
        uf.components() == 1
    }

    /// `|E| - (n + m - 1)` for a connected spanning graph.
    pub fn surplus(&self) -> Result<usize> {
        if !self.is_connected_spanning() {
            return Err(Error::Disconnected);
        }
        Ok(self.edges.len() + 1 - (self.n + self.m))
    }

    pub fn is_spanning_tree(&self) -> bool {
        self.edges.len() + 1 == self.n + self.m && self.is_connected_spanning()
    }

    /// Parses the text graph format: a header line `n m`, then one `i j`
    /// line per edge. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let pair = parse_pair(line).map_err(|message| Error::Parse {
                line: line_no,
                message,
            })?;
            match header {
                None => header = Some(pair),
                Some((n, m)) => {
                    if pair.0 == 0 || pair.0 > n || pair.1 == 0 || pair.1 > m {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("edge {} {} outside K_{{{n},{m}}}", pair.0, pair.1),
                        });
                    }
                    edges.push((line_no, pair));
                }
            }
        }
        let (n, m) = header.ok_or(Error::Parse {
            line: 0,
            message: "missing `n m` header".into(),
        })?;
        if n == 0 || m == 0 {
            return Err(Error::Parse {
                line: 0,
                message: format!("class sizes must be positive (got {n} {m})"),
            });
        }
        let mut set = BTreeSet::new();
        for (line, (i, j)) in edges {
            if !set.insert((i, j)) {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate edge {i} {j}"),
                });
            }
        }
        Ok(BipartiteGraph { n, m, edges: set })
    }
}

fn parse_pair(line: &str) -> std::result::Result<(usize, usize), String> {
    let mut it = line.split_whitespace();
    let a = it.next().ok_or("expected two integers")?;
    let b = it.next().ok_or("expected two integers")?;
    if it.next().is_some() {
        return Err("expected exactly two integers".into());
    }
    let a = a.parse::<usize>().map_err(|e| format!("`{a}`: {e}"))?;
    let b = b.parse::<usize>().map_err(|e| format!("`{b}`: {e}"))?;
    Ok((a, b))
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.m)?;
        for (i, j) in &self.edges {
            writeln!(f, "{i} {j}")?;
        }
        Ok(())
    }
}

impl FromStr for BipartiteGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Disjoint-set forest with union by size and path halving.
#[derive(Clone, Debug)]
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
            components: len,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.components -= 1;
        true
    }

    fn components(&self) -> usize {
        self.components
    }
}

/// `n^{m-1} m^{n-1}`, the number of spanning trees of `K_{n,m}`.
pub fn scoins_count(n: usize, m: usize) -> BigCount {
    assert!(n >= 1 && m >= 1, "scoins_count needs n, m >= 1");
    BigCount::pow(n as u64, (m - 1) as u32) * BigCount::pow(m as u64, (n - 1) as u32)
}

pub(crate) fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Visits every `r`-subset of `0..len` in lexicographic order whose first
/// element is `first`.
fn for_each_combination_from<F>(len: usize, r: usize, first: usize, mut visit: F)
where
    F: FnMut(&[usize]),
{
    debug_assert!(r >= 1 && first + r <= len);
    let mut idx: Vec<usize> = (0..r).map(|i| first + i).collect();
    loop {
        visit(&idx);
        // advance positions 1..r, position 0 stays fixed
        let mut pos = r;
        loop {
            if pos <= 1 {
                return;
            }
            pos -= 1;
            if idx[pos] < len - r + pos {
                break;
            }
        }
        idx[pos] += 1;
        for p in pos + 1..r {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

fn subset_is_connected(n: usize, m: usize, subset: &[usize]) -> bool {
    let mut uf = UnionFind::new(n + m);
    for &e in subset {
        uf.union(e / m, n + e % m);
    }
    uf.components() == 1
}

/// Number of connected spanning subgraphs of `K_{n,m}` with surplus `k`,
/// by enumerating every `(n+m-1+k)`-edge subset.
pub fn oracle_count(n: usize, m: usize, k: usize) -> Result<BigCount> {
    oracle_count_with_budget(n, m, k, DEFAULT_ORACLE_BUDGET)
}

pub fn oracle_count_with_budget(n: usize, m: usize, k: usize, budget: u64) -> Result<BigCount> {
    if n == 0 || m == 0 {
        return Err(Error::EmptyClass { n, m });
    }
    let len = n * m;
    let r = n + m - 1 + k;
    if r > len {
        return Ok(BigCount::zero());
    }
    let subsets = binomial_big(len as u64, r as u64);
    if subsets > BigUint::from(budget) {
        return Err(Error::OracleBudget {
            subsets: subsets.to_string(),
            budget,
        });
    }
    let total: u64 = (0..=len - r)
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            for_each_combination_from(len, r, first, |subset| {
                if subset_is_connected(n, m, subset) {
                    count += 1;
                }
            });
            count
        })
        .sum();
    Ok(BigCount::from(total))
}

/// All spanning trees of `K_{n,m}`, in lexicographic order of edge sets.
pub fn oracle_trees(n: usize, m: usize) -> Result<Vec<BipartiteGraph>> {
    oracle_trees_with_budget(n, m, DEFAULT_ORACLE_BUDGET)
}

pub fn oracle_trees_with_budget(n: usize, m: usize, budget: u64) -> Result<Vec<BipartiteGraph>> {
    if n == 0 || m == 0 {
        return Err(Error::EmptyClass { n, m });
    }
    let len = n * m;
    let r = n + m - 1;
    let subsets = binomial_big(len as u64, r as u64);
    if subsets > BigUint::from(budget) {
        return Err(Error::OracleBudget {
            subsets: subsets.to_string(),
            budget,
        });
    }
    let trees: Vec<Vec<BipartiteGraph>> = (0..=len - r)
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            for_each_combination_from(len, r, first, |subset| {
                if subset_is_connected(n, m, subset) {
                    let edges = subset.iter().map(|&e| (e / m + 1, e % m + 1));
                    found.push(BipartiteGraph::new(n, m, edges).expect("valid edges"));
                }
            });
            found
        })
        .collect();
    Ok(trees.into_iter().flatten().collect())
}

/// Total number of connected spanning subgraphs of `K_{n,m}`, over all edge
/// subsets. Limited to `n * m <= 24`.
pub fn connected_spanning_total(n: usize, m: usize) -> Result<BigCount> {
    if n == 0 || m == 0 {
        return Err(Error::EmptyClass { n, m });
    }
    let len = n * m;
    if len > 24 {
        return Err(Error::OracleBudget {
            subsets: format!("2^{len}"),
            budget: 1 << 24,
        });
    }
    let total: u64 = (0u64..1 << len)
        .into_par_iter()
        .filter(|&mask| {
            let mut uf = UnionFind::new(n + m);
            for e in 0..len {
                if mask >> e & 1 == 1 {
                    uf.union(e / m, n + e % m);
                }
            }
            uf.components() == 1
        })
        .count() as u64;
    Ok(BigCount::from(total))
}

/// Number of edge subsets the oracle would visit for `(n, m, k)`.
pub fn oracle_work(n: usize, m: usize, k: usize) -> Option<u64> {
    binomial_big((n * m) as u64, (n + m - 1 + k) as u64).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connectivity_examples() {
        let single = BipartiteGraph::new(1, 1, [(1, 1)]).unwrap();
        assert!(single.is_connected_spanning());
        let two = BipartiteGraph::new(2, 2, [(1, 1), (2, 2)]).unwrap();
        assert!(!two.is_connected_spanning());
        assert!(BipartiteGraph::complete(2, 3).unwrap().is_connected_spanning());
    }

    #[test]
    fn surplus_examples() {
        let tree = BipartiteGraph::new(2, 3, [(1, 1), (1, 2), (1, 3), (2, 1)]).unwrap();
        assert_eq!(tree.surplus().unwrap(), 0);
        assert_eq!(BipartiteGraph::complete(2, 2).unwrap().surplus().unwrap(), 1);
        assert_eq!(BipartiteGraph::complete(2, 3).unwrap().surplus().unwrap(), 2);
        let split = BipartiteGraph::new(2, 2, [(1, 1), (2, 2)]).unwrap();
        assert!(matches!(split.surplus(), Err(Error::Disconnected)));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            BipartiteGraph::new(2, 2, [(3, 1)]),
            Err(Error::EdgeOutOfRange { .. })
        ));
        assert!(matches!(
            BipartiteGraph::new(2, 2, [(1, 1), (1, 1)]),
            Err(Error::DuplicateEdge { .. })
        ));
        assert!(matches!(BipartiteGraph::new(0, 2, []), Err(Error::EmptyClass { .. })));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_count(2, 2, 1).unwrap(), BigCount::from(1));
        assert_eq!(oracle_count(2, 3, 1).unwrap(), BigCount::from(6));
        assert_eq!(oracle_count(2, 3, 0).unwrap(), BigCount::from(12));
        assert_eq!(oracle_count(2, 2, 2).unwrap(), BigCount::zero());
    }

    #[test]
    fn oracle_budget_refusal() {
        let err = oracle_count_with_budget(4, 4, 1, 1000).unwrap_err();
        assert!(matches!(err, Error::OracleBudget { .. }));
        assert!(err.to_string().contains("too large for oracle"));
    }

    #[test]
    fn scoins_examples() {
        assert_eq!(scoins_count(1, 1), BigCount::one());
        assert_eq!(scoins_count(2, 3), BigCount::from(12));
        assert_eq!(scoins_count(7, 8).to_string(), "215886856192");
    }

    #[test]
    fn oracle_trees_agree_with_scoins() {
        for n in 1..=4 {
            for m in 1..=4 {
                let trees = oracle_trees(n, m).unwrap();
                assert_eq!(BigCount::from(trees.len() as u64), scoins_count(n, m));
                assert!(trees.iter().all(BipartiteGraph::is_spanning_tree));
            }
        }
    }

    #[test]
    fn combination_enumeration_is_lexicographic() {
        let mut seen = Vec::new();
        for first in 0..=2 {
            for_each_combination_from(5, 3, first, |c| seen.push(c.to_vec()));
        }
        assert_eq!(seen.len(), 10);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn parse_ignores_comments_and_blanks() {
        let g: BipartiteGraph = "# header\n2 2\n\n1 1  # edge\n2 1\n1 2\n".parse().unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.to_string(), "2 2\n1 1\n1 2\n2 1\n");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(BipartiteGraph::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(
            BipartiteGraph::parse("2 2\n1 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            BipartiteGraph::parse("2 2\n1 1\n1 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(BipartiteGraph::parse("2 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(BipartiteGraph::parse("2 2 2\n"), Err(Error::Parse { .. })));
    }
}

//! Breadth-first exploration of bipartite graphs and the child-count encoding
//! of bipartite trees.
//!
//! Exploration starts from the white vertex `1°` with a FIFO stack. Exploring
//! a vertex discovers its unexplored neighbours (appended in increasing label
//! order) and records every opposite-colour neighbour still waiting in the
//! stack as a surplus edge. The per-vertex discovery counts, split by colour
//! and indexed by exploration rank, form a [`ChildCountPair`]; for a tree
//! this pair together with the two rank-to-label orders determines the tree.
//!
//! Ranks are 1-based in the mathematical description. In the vectors below
//! rank `t` lives at index `t - 1`.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;

use crate::bigcount::BigCount;
use crate::error::{Error, Result};
use crate::graph::{binomial_big, BipartiteGraph};

/// Integer path on `{0, .., N}` with `values[0] == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathProcess {
    values: Vec<i64>,
}

impl PathProcess {
    /// Prefix sums of `increments`; the result has `increments.len() + 1` values.
    pub fn from_increments(increments: &[i64]) -> Self {
        let mut values = Vec::with_capacity(increments.len() + 1);
        let mut acc = 0i64;
        values.push(0);
        for &x in increments {
            acc += x;
            values.push(acc);
        }
        PathProcess { values }
    }

    pub fn from_values(values: Vec<i64>) -> Result<Self> {
        match values.first() {
            Some(0) => Ok(PathProcess { values }),
            _ => Err(Error::InvalidArgument(
                "a path process must start at 0".into(),
            )),
        }
    }

    /// Number of steps `N`.
    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, t: usize) -> i64 {
        self.values[t]
    }

    /// Step-function extension `f(x) = f(floor(x))` on `[0, N]`.
    pub fn at_real(&self, x: f64) -> i64 {
        let t = (x.max(0.0).floor() as usize).min(self.steps());
        self.values[t]
    }

    pub fn increments(&self) -> Vec<i64> {
        self.values.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn total(&self) -> i64 {
        *self.values.last().expect("non-empty path")
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }
}

/// Child counts of a breadth-first exploration: `white[t-1]` is the number of
/// black vertices discovered by the `t`-th explored white vertex, and
/// `black[u-1]` the number of whites discovered by the `u`-th black one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChildCountPair {
    white: Vec<usize>,
    black: Vec<usize>,
}

impl ChildCountPair {
    pub fn new(white: Vec<usize>, black: Vec<usize>) -> Self {
        ChildCountPair { white, black }
    }

    /// Number of white vertices.
    pub fn n(&self) -> usize {
        self.white.len()
    }

    /// Number of black vertices.
    pub fn m(&self) -> usize {
        self.black.len()
    }

    pub fn white(&self) -> &[usize] {
        &self.white
    }

    pub fn black(&self) -> &[usize] {
        &self.black
    }

    fn has_tree_sums(&self) -> bool {
        self.n() >= 1
            && self.white.iter().sum::<usize>() == self.m()
            && self.black.iter().sum::<usize>() + 1 == self.n()
    }
}

fn prefix(counts: &[usize]) -> Vec<i64> {
    let mut out = Vec::with_capacity(counts.len() + 1);
    let mut acc = 0i64;
    out.push(0);
    for &c in counts {
        acc += c as i64;
        out.push(acc);
    }
    out
}

/// The child-count processes `(X°, X●)` on `{0..n}` and `{0..m}`.
pub fn prefix_processes(c: &ChildCountPair) -> (PathProcess, PathProcess) {
    (
        PathProcess { values: prefix(&c.white) },
        PathProcess { values: prefix(&c.black) },
    )
}

/// White Łukasiewicz path `Z(t) = X●(X°(t)) - t` on `{0..n}`.
pub fn lukasiewicz(c: &ChildCountPair) -> Result<PathProcess> {
    if !c.has_tree_sums() {
        return Err(Error::Inadmissible(format!(
            "need sum(white) = m = {} and sum(black) = n - 1 = {}",
            c.m(),
            c.n().saturating_sub(1)
        )));
    }
    Ok(lukasiewicz_unchecked(c))
}

fn lukasiewicz_unchecked(c: &ChildCountPair) -> PathProcess {
    let (xw, xb) = prefix_processes(c);
    let values = xw
        .values
        .iter()
        .enumerate()
        .map(|(t, &x)| xb.values[x as usize] - t as i64)
        .collect();
    PathProcess { values }
}

/// True iff the pair encodes a planar bipartite tree: correct sums,
/// `Z(t) >= 0` for `t < n` and `Z(n) = -1`.
pub fn is_admissible(c: &ChildCountPair) -> bool {
    if !c.has_tree_sums() {
        return false;
    }
    let z = lukasiewicz_unchecked(c);
    let n = c.n();
    z.values[..n].iter().all(|&v| v >= 0) && z.values[n] == -1
}

fn require_admissible(c: &ChildCountPair) -> Result<()> {
    if is_admissible(c) {
        Ok(())
    } else {
        Err(Error::Inadmissible(format!(
            "white {:?}, black {:?}",
            c.white, c.black
        )))
    }
}

fn multinomial(total: usize, parts: &[usize]) -> BigUint {
    // product of binomials avoids dividing huge factorials
    let mut acc = BigUint::from(1u32);
    let mut left = total as u64;
    for &p in parts {
        acc *= binomial_big(left, p as u64);
        left -= p as u64;
    }
    acc
}

/// Number of labeled trees of `K_{n,m}` whose exploration yields `c`:
/// `(n-1)!/prod(black!) * m!/prod(white!)`.
pub fn tree_count_for(c: &ChildCountPair) -> Result<BigCount> {
    require_admissible(c)?;
    Ok(BigCount::from(
        multinomial(c.n() - 1, &c.black) * multinomial(c.m(), &c.white),
    ))
}

/// Number of candidate surplus edges of any tree with child counts `c`:
/// `-m(n-1) + sum_{s<n} X°(s) + sum_{u<m} X●(u)`.
pub fn w_of_counts(c: &ChildCountPair) -> Result<u64> {
    require_admissible(c)?;
    Ok(w_of_counts_unchecked(c))
}

pub(crate) fn w_of_counts_unchecked(c: &ChildCountPair) -> u64 {
    let (n, m) = (c.n() as i64, c.m() as i64);
    let (xw, xb) = prefix_processes(c);
    let sw: i64 = xw.values[..c.n()].iter().sum();
    let sb: i64 = xb.values[..c.m()].iter().sum();
    let w = sw + sb - m * (n - 1);
    debug_assert!(w >= 0);
    w as u64
}

/// Colour sequence of the exploration: `gamma[t-1]` is true when the `t`-th
/// explored vertex is white. Requires an admissible pair.
pub fn exploration_colors(c: &ChildCountPair) -> Result<Vec<bool>> {
    require_admissible(c)?;
    Ok(exploration_colors_unchecked(c))
}

fn exploration_colors_unchecked(c: &ChildCountPair) -> Vec<bool> {
    let total = c.n() + c.m();
    let mut queue: VecDeque<bool> = VecDeque::with_capacity(total);
    queue.push_back(true);
    let (mut a, mut b) = (0usize, 0usize);
    let mut gamma = Vec::with_capacity(total);
    while let Some(white) = queue.pop_front() {
        gamma.push(white);
        if white {
            queue.extend(std::iter::repeat_n(false, c.white[a]));
            a += 1;
        } else {
            queue.extend(std::iter::repeat_n(true, c.black[b]));
            b += 1;
        }
    }
    debug_assert_eq!(gamma.len(), total);
    gamma
}

/// Counts of explored whites `N°(t)` for `t = 0..=n+m`.
fn explored_whites(gamma: &[bool]) -> Vec<usize> {
    let mut out = Vec::with_capacity(gamma.len() + 1);
    out.push(0);
    let mut acc = 0;
    for &g in gamma {
        acc += g as usize;
        out.push(acc);
    }
    out
}

/// `sum_t f(N°(t-1)) gamma_t`; over any exploration colour sequence this
/// equals `sum_{s=0}^{n-1} f(s)`.
pub fn sum_over_white_steps<F: FnMut(usize) -> i64>(gamma: &[bool], mut f: F) -> i64 {
    let nw = explored_whites(gamma);
    gamma
        .iter()
        .enumerate()
        .filter(|(_, &g)| g)
        .map(|(t, _)| f(nw[t]))
        .sum()
}

/// `sum_t f(N●(t-1)) (1 - gamma_t)`; equals `sum_{s=0}^{m-1} f(s)`.
pub fn sum_over_black_steps<F: FnMut(usize) -> i64>(gamma: &[bool], mut f: F) -> i64 {
    let nw = explored_whites(gamma);
    gamma
        .iter()
        .enumerate()
        .filter(|(_, &g)| !g)
        .map(|(t, _)| f(t - nw[t]))
        .sum()
}

/// `W` evaluated step by step from the stack contents: exploring a white
/// vertex can close a cycle with each of the `X°(N°) - N●` blacks waiting,
/// exploring a black one with each of the `1 + X●(N●) - N°` waiting whites.
pub fn w_via_stack(c: &ChildCountPair) -> Result<u64> {
    let gamma = exploration_colors(c)?;
    let (xw, xb) = prefix_processes(c);
    let nw = explored_whites(&gamma);
    let mut total = 0i64;
    for (t, &white) in gamma.iter().enumerate() {
        let whites_done = nw[t] as i64;
        let blacks_done = t as i64 - whites_done;
        if white {
            total += xw.values[nw[t]] - blacks_done;
        } else {
            total += 1 + xb.values[t - nw[t]] - whites_done;
        }
    }
    Ok(total as u64)
}

/// A vertex of `K_{n,m}` with its 1-based label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    White(usize),
    Black(usize),
}

impl Vertex {
    pub fn is_white(self) -> bool {
        matches!(self, Vertex::White(_))
    }

    pub fn label(self) -> usize {
        match self {
            Vertex::White(i) | Vertex::Black(i) => i,
        }
    }

    /// The `(white, black)` edge between two opposite-colour vertices.
    pub fn edge_with(self, other: Vertex) -> Option<(usize, usize)> {
        match (self, other) {
            (Vertex::White(i), Vertex::Black(j)) | (Vertex::Black(j), Vertex::White(i)) => {
                Some((i, j))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::White(i) => write!(f, "{i}°"),
            Vertex::Black(j) => write!(f, "{j}●"),
        }
    }
}

/// Full trace of one exploration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorationRecord {
    pub counts: ChildCountPair,
    /// `gamma[t-1]` is true when step `t` explores a white vertex.
    pub gamma: Vec<bool>,
    /// `white_order[t-1]` is the label of the `t`-th explored white vertex.
    pub white_order: Vec<usize>,
    /// `black_order[u-1]` is the label of the `u`-th explored black vertex.
    pub black_order: Vec<usize>,
    /// `(explored vertex, stack member)` pairs closing a cycle, in order.
    pub surplus_edges: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Unseen,
    Queued,
    Done,
}

struct Walk {
    record: ExplorationRecord,
    candidates: Vec<(Vertex, Vertex)>,
}

fn walk(g: &BipartiteGraph, want_candidates: bool) -> Result<Walk> {
    if !g.is_connected_spanning() {
        return Err(Error::Disconnected);
    }
    let (n, m) = (g.n(), g.m());
    let white_adj = g.white_adjacency();
    let black_adj = g.black_adjacency();
    let mut white_state = vec![State::Unseen; n + 1];
    let mut black_state = vec![State::Unseen; m + 1];
    let mut queue = VecDeque::with_capacity(n + m);
    let mut rec = ExplorationRecord {
        counts: ChildCountPair::new(Vec::with_capacity(n), Vec::with_capacity(m)),
        gamma: Vec::with_capacity(n + m),
        white_order: Vec::with_capacity(n),
        black_order: Vec::with_capacity(m),
        surplus_edges: Vec::new(),
    };
    let mut candidates = Vec::new();
    queue.push_back(Vertex::White(1));
    white_state[1] = State::Queued;

    while let Some(x) = queue.pop_front() {
        for &y in &queue {
            if y.is_white() == x.is_white() {
                continue;
            }
            if want_candidates {
                candidates.push((x, y));
            }
            let (i, j) = x.edge_with(y).expect("opposite colours");
            if g.contains(i, j) {
                rec.surplus_edges.push((x, y));
            }
        }
        match x {
            Vertex::White(i) => {
                white_state[i] = State::Done;
                rec.gamma.push(true);
                rec.white_order.push(i);
                let mut found = 0;
                for &j in &white_adj[i] {
                    if black_state[j] == State::Unseen {
                        black_state[j] = State::Queued;
                        queue.push_back(Vertex::Black(j));
                        found += 1;
                    }
                }
                rec.counts.white.push(found);
            }
            Vertex::Black(j) => {
                black_state[j] = State::Done;
                rec.gamma.push(false);
                rec.black_order.push(j);
                let mut found = 0;
                for &i in &black_adj[j] {
                    if white_state[i] == State::Unseen {
                        white_state[i] = State::Queued;
                        queue.push_back(Vertex::White(i));
                        found += 1;
                    }
                }
                rec.counts.black.push(found);
            }
        }
    }
    Ok(Walk {
        record: rec,
        candidates,
    })
}

/// Breadth-first exploration from `1°`.
pub fn explore(g: &BipartiteGraph) -> Result<ExplorationRecord> {
    walk(g, false).map(|w| w.record)
}

/// Every non-tree pair that the exploration of a graph with spanning tree
/// `g` would test for a cycle, as `(explored vertex, stack member)` in
/// exploration order.
pub fn candidate_edges(g: &BipartiteGraph) -> Result<Vec<(Vertex, Vertex)>> {
    let expected = g.n() + g.m() - 1;
    if g.edge_count() != expected {
        return Err(Error::NotATree {
            edges: g.edge_count(),
            expected,
        });
    }
    walk(g, true).map(|w| w.candidates)
}

/// Builds the labeled tree with child counts `c`, where the `t`-th explored
/// white vertex carries label `white_order[t-1]` and likewise for blacks.
pub(crate) fn assemble_tree(
    c: &ChildCountPair,
    white_order: &[usize],
    black_order: &[usize],
) -> Result<BipartiteGraph> {
    let mut edges = Vec::with_capacity(c.n() + c.m() - 1);
    // black rank u hangs below the white rank that discovered it
    let mut u = 0;
    for (t, &k) in c.white.iter().enumerate() {
        for _ in 0..k {
            edges.push((white_order[t], black_order[u]));
            u += 1;
        }
    }
    // white rank s >= 2 hangs below the black rank that discovered it
    let mut s = 1;
    for (u, &k) in c.black.iter().enumerate() {
        for _ in 0..k {
            edges.push((white_order[s], black_order[u]));
            s += 1;
        }
    }
    BipartiteGraph::new(c.n(), c.m(), edges)
}

fn is_permutation(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len() + 1];
    order.iter().all(|&x| {
        if x == 0 || x > order.len() || seen[x] {
            false
        } else {
            seen[x] = true;
            true
        }
    })
}

fn check_record_shape(r: &ExplorationRecord) -> Result<()> {
    let c = &r.counts;
    if !is_admissible(c) {
        return Err(Error::InconsistentRecord("child counts are not admissible".into()));
    }
    if r.white_order.len() != c.n() || r.black_order.len() != c.m() {
        return Err(Error::InconsistentRecord("order lengths differ from counts".into()));
    }
    if !is_permutation(&r.white_order) || !is_permutation(&r.black_order) {
        return Err(Error::InconsistentRecord("orders are not permutations".into()));
    }
    if r.white_order[0] != 1 {
        return Err(Error::InconsistentRecord("exploration must start at 1°".into()));
    }
    if r.gamma != exploration_colors_unchecked(c) {
        return Err(Error::InconsistentRecord("colour sequence does not match counts".into()));
    }
    Ok(())
}

/// The breadth-first spanning tree described by `r`. Surplus edges are not
/// part of the tree; see [`rebuild_graph`].
pub fn rebuild_tree(r: &ExplorationRecord) -> Result<BipartiteGraph> {
    check_record_shape(r)?;
    let tree = assemble_tree(&r.counts, &r.white_order, &r.black_order)?;
    let again = explore(&tree)?;
    if again.white_order != r.white_order || again.black_order != r.black_order {
        return Err(Error::InconsistentRecord(
            "sibling labels are not in increasing order".into(),
        ));
    }
    Ok(tree)
}

/// The graph described by `r`: its spanning tree plus the surplus edges.
pub fn rebuild_graph(r: &ExplorationRecord) -> Result<BipartiteGraph> {
    let tree = rebuild_tree(r)?;
    let extra: Vec<(usize, usize)> = r
        .surplus_edges
        .iter()
        .map(|&(x, y)| {
            x.edge_with(y)
                .ok_or_else(|| Error::InconsistentRecord(format!("{x}{y} joins equal colours")))
        })
        .collect::<Result<_>>()?;
    let g = tree.with_edges(extra)?;
    if explore(&g)? != *r {
        return Err(Error::InconsistentRecord(
            "surplus edges do not match the exploration".into(),
        ));
    }
    Ok(g)
}

/// Compositions of `m` into `n` parts that can start an admissible pair
/// (the root must have a child unless `n == 1`).
pub fn white_compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == n {
            if n >= 2 && cur[0] == 0 {
                return;
            }
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        let lo = usize::from(cur.is_empty());
        for k in lo..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    if n == 1 {
        out.push(vec![m]);
    } else if m >= 1 {
        rec(n, m, &mut cur, &mut out);
    }
    out
}

/// Visits every black composition that makes `(white, black)` admissible.
/// The search runs over `X●(u)` for `u = 1..m` with the running lower bound
/// `X●(u) >= max{t < n : X°(t) = u}` that keeps `Z` nonnegative.
pub fn for_each_black_completion<F>(white: &[usize], m: usize, mut visit: F)
where
    F: FnMut(&[usize]),
{
    let n = white.len();
    if n == 0 || white.iter().sum::<usize>() != m {
        return;
    }
    let xw = prefix(white);
    let mut lower = vec![0i64; m + 1];
    for (t, &x) in xw.iter().enumerate().take(n).skip(1) {
        let u = x as usize;
        if u == 0 {
            return;
        }
        lower[u] = lower[u].max(t as i64);
    }
    let target = n as i64 - 1;
    if m == 0 {
        if target == 0 {
            visit(&[]);
        }
        return;
    }
    let mut black = vec![0usize; m];
    descend(1, 0, m, target, &lower, &mut black, &mut visit);
}

fn descend<F: FnMut(&[usize])>(
    u: usize,
    prev: i64,
    m: usize,
    target: i64,
    lower: &[i64],
    black: &mut [usize],
    visit: &mut F,
) {
    if u == m {
        // lower[m] <= n - 1 always, so the closing value is feasible
        black[m - 1] = (target - prev) as usize;
        visit(black);
        return;
    }
    for x in prev.max(lower[u])..=target {
        black[u - 1] = (x - prev) as usize;
        descend(u + 1, x, m, target, lower, black, visit);
    }
}

/// Visits every admissible pair with `n` whites and `m` blacks.
pub fn for_each_admissible<F>(n: usize, m: usize, mut visit: F)
where
    F: FnMut(&ChildCountPair),
{
    for white in white_compositions(n, m) {
        for_each_black_completion(&white, m, |black| {
            visit(&ChildCountPair::new(white.clone(), black.to_vec()));
        });
    }
}

pub fn admissible_pairs(n: usize, m: usize) -> Vec<ChildCountPair> {
    let mut out = Vec::new();
    for_each_admissible(n, m, |c| out.push(c.clone()));
    out
}

/// Size of the raw search space: compositions of `m` into `n` parts times
/// compositions of `n - 1` into `m` parts.
pub fn composition_pair_count(n: usize, m: usize) -> BigUint {
    if n == 0 || m == 0 {
        return BigUint::from(0u32);
    }
    binomial_big((m + n - 1) as u64, (n - 1) as u64)
        * binomial_big((n - 1 + m - 1) as u64, (m - 1) as u64)
}

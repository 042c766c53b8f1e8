//! Simple undirected graphs on at most 128 vertices, the union/join algebra,
//! and maximal-independent-set (MIS) enumeration and counting.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::closed_forms::BigNat;
use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 128;

/// Default bound on the number of sets [`enumerate_mis`] will materialize.
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

/// A subset of `0..n` stored as a bitset.
///
/// Sets are ordered lexicographically by their ascending element sequence,
/// so `{0,2} < {1}` and a proper prefix sorts first.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(pub u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u128 << v)
    }

    /// `{0, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 128 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u128 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.0, other.0);
        if a == b {
            return Ordering::Equal;
        }
        let d = (a ^ b).trailing_zeros();
        let above = |x: u128| if d == 127 { 0 } else { x >> (d + 1) };
        if a >> d & 1 == 1 {
            // b stops before d or continues with something larger than d
            if above(b) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if above(a) != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

struct BitIter(u128);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Undirected simple graph with symmetric bitset adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u128>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count",
            max: MAX_VERTICES as u64,
            got: n as u64,
        });
    }
    Ok(())
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        self.adj[u] |= 1u128 << v;
        self.adj[v] |= 1u128 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u128 << u).wrapping_sub(1)))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn isolated_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.adj[v] == 0)
    }

    /// Adjacency rows, one bitset per vertex.
    pub fn rows(&self) -> &[u128] {
        &self.adj
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    /// Independent and no further vertex can be added.
    pub fn is_maximal_independent(&self, s: VertexSet) -> bool {
        if s.0 & !self.vertices().0 != 0 || !self.is_independent(s) {
            return false;
        }
        (0..self.n).all(|v| s.contains(v) || self.adj[v] & s.0 != 0)
    }

    /// `G - X` with the surviving vertices relabeled `0..` in increasing order.
    pub fn remove_vertices(&self, x: VertexSet) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| !x.contains(v)).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                VertexSet(self.adj[v] & !x.0)
                    .iter()
                    .fold(0u128, |row, w| row | 1u128 << pos[w])
            })
            .collect();
        Graph { n: keep.len(), adj }
    }

    /// Serialize as `p <n> <m>` followed by one `e <u> <v>` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Graph> {
        let bad = |line: usize, msg: &str| Error::InvalidGraph(format!("line {line}: {msg}"));
        let mut graph: Option<Graph> = None;
        let mut declared = 0usize;
        let mut seen = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["p", n, m] => {
                    if graph.is_some() {
                        return Err(bad(lineno, "duplicate problem line"));
                    }
                    let n: usize = n.parse().map_err(|_| bad(lineno, "bad vertex count"))?;
                    declared = m.parse().map_err(|_| bad(lineno, "bad edge count"))?;
                    graph = Some(Graph::empty(n)?);
                }
                ["e", u, v] => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| bad(lineno, "edge before problem line"))?;
                    let u: usize = u.parse().map_err(|_| bad(lineno, "bad endpoint"))?;
                    let v: usize = v.parse().map_err(|_| bad(lineno, "bad endpoint"))?;
                    if u >= v {
                        return Err(bad(lineno, "endpoints must satisfy u < v"));
                    }
                    if g.has_edge(u, v) {
                        return Err(bad(lineno, "duplicate edge"));
                    }
                    g.add_edge(u, v)?;
                    seen += 1;
                }
                _ => return Err(bad(lineno, "expected 'p <n> <m>', 'e <u> <v>' or a comment")),
            }
        }
        let g = graph.ok_or_else(|| Error::InvalidGraph("missing problem line".into()))?;
        if seen != declared {
            return Err(Error::InvalidGraph(format!(
                "problem line declares {declared} edges, found {seen}"
            )));
        }
        Ok(g)
    }
}

pub fn complete_graph(k: usize) -> Result<Graph> {
    let mut g = Graph::empty(k)?;
    let all = VertexSet::full(k).0;
    for v in 0..k {
        g.adj[v] = all & !(1u128 << v);
    }
    Ok(g)
}

pub fn cycle_graph(j: usize) -> Result<Graph> {
    if j < 3 {
        return Err(Error::TooSmall { what: "cycle length", min: 3, got: j as u64 });
    }
    let mut g = Graph::empty(j)?;
    for i in 0..j {
        g.add_edge(i, (i + 1) % j)?;
    }
    Ok(g)
}

fn combine(g: &Graph, h: &Graph, cross: bool) -> Result<Graph> {
    let n = g.n + h.n;
    check_size(n)?;
    let shift = g.n as u32;
    let g_all = VertexSet::full(g.n).0;
    let h_all = VertexSet::full(h.n).0 << shift;
    let mut adj = Vec::with_capacity(n);
    for &row in &g.adj {
        adj.push(if cross { row | h_all } else { row });
    }
    for &row in &h.adj {
        let row = row << shift;
        adj.push(if cross { row | g_all } else { row });
    }
    Ok(Graph { n, adj })
}

/// Vertex-disjoint union; `h`'s vertices follow `g`'s.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    combine(g, h, false)
}

/// Disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    combine(g, h, true)
}

/// `N[v]`: `v` together with its neighbors.
pub fn closed_neighborhood(g: &Graph, v: usize) -> Result<VertexSet> {
    if v >= g.n {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n });
    }
    Ok(VertexSet(g.adj[v] | 1u128 << v))
}

/// Vertex of `p` with the most neighbors inside `p`, lowest index on ties.
fn branch_vertex(adj: &[u128], p: u128) -> usize {
    let mut best = usize::MAX;
    let mut best_deg = 0;
    for v in BitIter(p) {
        let d = (adj[v] & p).count_ones();
        if best == usize::MAX || d > best_deg {
            best = v;
            best_deg = d;
        }
    }
    best
}

/// Every excluded vertex still needs a neighbor among the candidates.
fn excluded_dominatable(adj: &[u128], p: u128, x: u128) -> bool {
    BitIter(x).all(|w| adj[w] & p != 0)
}

/// Drop excluded vertices already dominated by the vertex just taken.
fn include(adj: &[u128], p: u128, x: u128, v: usize) -> (u128, u128) {
    (p & !(adj[v] | 1u128 << v), x & !adj[v])
}

struct Enumerator<'a> {
    adj: &'a [u128],
    cap: usize,
    out: Vec<VertexSet>,
}

impl Enumerator<'_> {
    // p: undecided candidates; x: excluded vertices not yet dominated.
    fn run(&mut self, p: u128, x: u128, cur: u128) -> Result<()> {
        if !excluded_dominatable(self.adj, p, x) {
            return Ok(());
        }
        if p == 0 {
            if self.out.len() == self.cap {
                return Err(Error::CapExceeded { cap: self.cap, found: self.out.len() });
            }
            self.out.push(VertexSet(cur));
            return Ok(());
        }
        let v = branch_vertex(self.adj, p);
        let (p_in, x_in) = include(self.adj, p, x, v);
        self.run(p_in, x_in, cur | 1u128 << v)?;
        self.run(p & !(1u128 << v), x | 1u128 << v, cur)
    }
}

/// All maximal independent sets of `g` in canonical (lexicographic) order.
pub fn enumerate_mis(g: &Graph) -> Result<Vec<VertexSet>> {
    enumerate_mis_capped(g, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_mis_capped(g: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    let mut e = Enumerator { adj: &g.adj, cap, out: Vec::new() };
    e.run(g.vertices().0, 0, 0)?;
    let mut out = e.out;
    out.sort_unstable();
    Ok(out)
}

/// Number of maximal independent sets of `g`.
pub fn count_mis(g: &Graph) -> BigNat {
    count_mis_induced(g, g.vertices())
}

/// Number of maximal independent sets of the subgraph induced by `keep`.
pub fn count_mis_induced(g: &Graph, keep: VertexSet) -> BigNat {
    let mut counter = Counter { adj: &g.adj, memo: HashMap::new() };
    counter.count(keep.0 & g.vertices().0, 0)
}

struct Counter<'a> {
    adj: &'a [u128],
    memo: HashMap<(u128, u128), BigNat>,
}

impl Counter<'_> {
    /// Splits `p ∪ x` into independent pieces: connected components of the
    /// graph whose edges touch at least one candidate.
    fn pieces(&self, p: u128, x: u128) -> Vec<(u128, u128)> {
        let mut rest = p | x;
        let mut out = Vec::new();
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                // excluded vertices only link through candidates
                let reach = if p >> v & 1 == 1 { self.adj[v] & (p | x) } else { self.adj[v] & p };
                let new = reach & !comp;
                comp |= new;
                frontier |= new;
            }
            rest &= !comp;
            out.push((comp & p, comp & x));
        }
        out
    }

    fn count(&mut self, p: u128, x: u128) -> BigNat {
        if !excluded_dominatable(self.adj, p, x) {
            return BigNat::zero();
        }
        if p == 0 {
            return BigNat::one();
        }
        if let Some(c) = self.memo.get(&(p, x)) {
            return c.clone();
        }
        let pieces = self.pieces(p, x);
        let result = if pieces.len() > 1 {
            let mut prod = BigNat::one();
            for (pp, px) in pieces {
                prod *= self.count(pp, px);
                if prod.is_zero() {
                    break;
                }
            }
            prod
        } else {
            let v = branch_vertex(self.adj, p);
            let (p_in, x_in) = include(self.adj, p, x, v);
            self.count(p_in, x_in) + self.count(p & !(1u128 << v), x | 1u128 << v)
        };
        self.memo.insert((p, x), result.clone());
        result
    }
}

/// Plain branching count without memoization or big integers, for the
/// exhaustive scans over many tiny graphs.
pub(crate) fn count_mis_small(adj: &[u128], p: u128, x: u128) -> u64 {
    if !excluded_dominatable(adj, p, x) {
        return 0;
    }
    if p == 0 {
        return 1;
    }
    let v = branch_vertex(adj, p);
    let (p_in, x_in) = include(adj, p, x, v);
    count_mis_small(adj, p_in, x_in) + count_mis_small(adj, p & !(1u128 << v), x | 1u128 << v)
}

/// Which extremal graph to build when `n = 3i + 1 >= 4` admits two.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ExtremalVariant {
    #[default]
    Default,
    TwoEdges,
    K4,
}

impl ExtremalVariant {
    fn name(self) -> &'static str {
        match self {
            ExtremalVariant::Default => "default",
            ExtremalVariant::TwoEdges => "two-edges",
            ExtremalVariant::K4 => "k4",
        }
    }
}

/// Clique sizes of the extremal graph's components, triangles first.
pub fn extremal_parts(n: usize, variant: ExtremalVariant) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::TooSmall { what: "n", min: 1, got: 0 });
    }
    check_size(n)?;
    if variant != ExtremalVariant::Default && (n % 3 != 1 || n < 4) {
        return Err(Error::InvalidVariant { variant: variant.name(), n });
    }
    let i = n / 3;
    let parts = match (n, n % 3) {
        (1, _) => vec![1],
        (2, _) => vec![2],
        (_, 0) => vec![3; i],
        (_, 2) => {
            let mut v = vec![3; i];
            v.push(2);
            v
        }
        _ => {
            let mut v = vec![3; i - 1];
            match variant {
                ExtremalVariant::K4 => v.push(4),
                _ => v.extend([2, 2]),
            }
            v
        }
    };
    Ok(parts)
}

/// Disjoint union of edges, triangles and `K_4`s attaining the maximum MIS
/// count on `n` vertices.
pub fn extremal_graph(n: usize, variant: ExtremalVariant) -> Result<Graph> {
    let mut g = Graph::empty(0)?;
    for k in extremal_parts(n, variant)? {
        g = disjoint_union(&g, &complete_graph(k)?)?;
    }
    Ok(g)
}

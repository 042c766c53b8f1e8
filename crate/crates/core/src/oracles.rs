//! Brute-force computations used to certify the closed forms at desk scale:
//! partition search for `ell`, exhaustive graph scans for `g` and the
//! extremal graphs, family search for `s`, and reachable-value sets for `c`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::closed_forms::{ell, max_with_ones, perrin, s_of_u64, BigNat};
use crate::complexity::complexity_table;
use crate::duality::{validate_cover, SeparatingCover};
use crate::error::{Error, Result};
use crate::graph::{count_mis, count_mis_small, cycle_graph, extremal_graph, ExtremalVariant, Graph};

pub const ORACLE_ELL_MAX: u32 = 45;
pub const ORACLE_G_MAX: usize = 7;
/// Reachable with [`oracle_g_opt_in`] only.
pub const ORACLE_G_OPT_IN_MAX: usize = 8;
pub const ORACLE_S_DIRECT_MAX: u64 = 4;
pub const ORACLE_S_REDUCTION_MAX: u64 = 12;
pub const ORACLE_C_MAX: u64 = 500;

fn out_of_range(what: &'static str, got: u64, min: u64, max: u64) -> Error {
    if got < min {
        Error::TooSmall { what, min, got }
    } else {
        Error::TooLarge { what, max, got }
    }
}

/// Largest product over all partitions of `n`, by depth-first search over
/// nonincreasing parts.
pub fn oracle_ell(n: u32) -> Result<BigNat> {
    if !(1..=ORACLE_ELL_MAX).contains(&n) {
        return Err(out_of_range("n", n as u64, 1, ORACLE_ELL_MAX as u64));
    }
    fn best(rest: u32, max_part: u32, product: u128) -> u128 {
        if rest == 0 {
            return product;
        }
        (1..=max_part.min(rest))
            .map(|p| best(rest - p, p, product * p as u128))
            .max()
            .unwrap_or(0)
    }
    Ok(BigNat::from(best(n, n, 1)))
}

/// Result of scanning every labeled graph on `n` vertices.
#[derive(Clone, Debug)]
struct Scan {
    max: u64,
    /// Edge masks (bit `k` = `k`-th pair in [`pairs`] order) of graphs attaining `max`.
    extremal: Vec<u32>,
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn rows_from_mask(pairs: &[(usize, usize)], mask: u32) -> [u128; 8] {
    let mut adj = [0u128; 8];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    adj
}

fn run_scan(n: usize) -> Scan {
    let ps = pairs(n);
    let full: u128 = (1 << n) - 1;
    let total: u64 = 1 << ps.len();
    let merge = |mut a: Scan, b: Scan| {
        if b.max > a.max {
            return b;
        }
        if b.max == a.max {
            a.extremal.extend(b.extremal);
        }
        a
    };
    let mut scan = (0..total)
        .into_par_iter()
        .fold(
            || Scan { max: 0, extremal: Vec::new() },
            |acc, mask| {
                let mask = mask as u32;
                let adj = rows_from_mask(&ps, mask);
                let m = count_mis_small(&adj[..n], full, 0);
                merge(acc, Scan { max: m, extremal: vec![mask] })
            },
        )
        .reduce(|| Scan { max: 0, extremal: Vec::new() }, merge);
    scan.extremal.sort_unstable();
    scan
}

fn scan(n: usize) -> Arc<Scan> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<OnceLock<Arc<Scan>>>>>> = OnceLock::new();
    let slot = CACHE
        .get_or_init(Default::default)
        .lock()
        .expect("scan cache poisoned")
        .entry(n)
        .or_default()
        .clone();
    slot.get_or_init(|| Arc::new(run_scan(n))).clone()
}

/// Maximum MIS count over all `2^(n(n-1)/2)` labeled graphs on `n <= 7` vertices.
pub fn oracle_g(n: usize) -> Result<BigNat> {
    if !(1..=ORACLE_G_MAX).contains(&n) {
        return Err(out_of_range("n", n as u64, 1, ORACLE_G_MAX as u64));
    }
    Ok(BigNat::from(scan(n).max))
}

/// [`oracle_g`] extended to `n = 8` (`2^28` graphs).
pub fn oracle_g_opt_in(n: usize) -> Result<BigNat> {
    if !(1..=ORACLE_G_OPT_IN_MAX).contains(&n) {
        return Err(out_of_range("n", n as u64, 1, ORACLE_G_OPT_IN_MAX as u64));
    }
    Ok(BigNat::from(scan(n).max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Smallest family of nonempty subsets that validates, `m <= 4`.
    Direct,
    /// `min{n : g(n) >= m}` using [`oracle_g`], `m <= 12`.
    Reduction,
}

/// Fewest sets in a separating cover on `m` elements.
pub fn oracle_s(m: u64, mode: SearchMode) -> Result<u32> {
    match mode {
        SearchMode::Direct => {
            if !(1..=ORACLE_S_DIRECT_MAX).contains(&m) {
                return Err(out_of_range("m", m, 1, ORACLE_S_DIRECT_MAX));
            }
            Ok(direct_cover_search(m as usize))
        }
        SearchMode::Reduction => {
            if !(1..=ORACLE_S_REDUCTION_MAX).contains(&m) {
                return Err(out_of_range("m", m, 1, ORACLE_S_REDUCTION_MAX));
            }
            for n in 1..=ORACLE_G_MAX {
                if oracle_g(n)? >= BigNat::from(m) {
                    return Ok(n as u32);
                }
            }
            unreachable!("g(7) = 12 covers every m <= 12")
        }
    }
}

fn direct_cover_search(m: usize) -> u32 {
    let subsets: Vec<Vec<usize>> = (1u32..1 << m)
        .map(|b| (0..m).filter(|i| b >> i & 1 == 1).collect())
        .collect();
    for size in 1..=subsets.len() {
        // families as strictly increasing index sequences into `subsets`
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let sets = idx.iter().map(|&i| subsets[i].clone()).collect();
            let cover = SeparatingCover::new(m, sets).expect("subsets are valid");
            if validate_cover(&cover).is_valid() {
                return size as u32;
            }
            let Some(pos) = (0..size).rev().find(|&p| idx[p] < subsets.len() - size + p) else {
                break;
            };
            idx[pos] += 1;
            for q in pos + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    unreachable!("the family of all singletons separates")
}

/// Values expressible with exactly `n` ones, for `n = 1, 2, ...`, keeping
/// only values up to `cap`.
struct Reachable {
    cap: u32,
    levels: Vec<Vec<u32>>,
}

impl Reachable {
    fn new(cap: u32) -> Self {
        Reachable { cap, levels: vec![vec![1]] }
    }

    fn grow(&mut self) -> &[u32] {
        let n = self.levels.len() + 1;
        let mut seen = vec![false; self.cap as usize + 1];
        for a in 1..=n / 2 {
            let (xs, ys) = (&self.levels[a - 1], &self.levels[n - a - 1]);
            for &x in xs {
                for &y in ys {
                    let (s, p) = (x as u64 + y as u64, x as u64 * y as u64);
                    if s.min(p) > self.cap as u64 {
                        break;
                    }
                    for v in [s, p] {
                        if v <= self.cap as u64 {
                            seen[v as usize] = true;
                        }
                    }
                }
            }
        }
        let level = (1..=self.cap).filter(|&v| seen[v as usize]).collect();
        self.levels.push(level);
        self.levels.last().unwrap()
    }
}

/// Least `n` with `m` among the values reachable with `n` ones.
pub fn oracle_c(m: u64) -> Result<u32> {
    if !(1..=ORACLE_C_MAX).contains(&m) {
        return Err(out_of_range("m", m, 1, ORACLE_C_MAX));
    }
    let target = m as u32;
    let mut r = Reachable::new(10 * target);
    if target == 1 {
        return Ok(1);
    }
    loop {
        if r.grow().binary_search(&target).is_ok() {
            return Ok(r.levels.len() as u32);
        }
    }
}

/// `oracle_c(m)` for every `1 <= m <= max_m`, sharing one search with cap `10 * max_m`.
pub fn oracle_c_range(max_m: u64) -> Result<Vec<u32>> {
    if !(1..=ORACLE_C_MAX).contains(&max_m) {
        return Err(out_of_range("m", max_m, 1, ORACLE_C_MAX));
    }
    let max_m = max_m as usize;
    let mut first = vec![0u32; max_m + 1];
    first[1] = 1;
    let mut missing = max_m - 1;
    let mut r = Reachable::new(10 * max_m as u32);
    while missing > 0 {
        let n = r.levels.len() as u32 + 1;
        for &v in r.grow().iter().take_while(|&&v| v as usize <= max_m) {
            if first[v as usize] == 0 {
                first[v as usize] = n;
                missing -= 1;
            }
        }
    }
    first.remove(0);
    Ok(first)
}

/// Lexicographically smallest adjacency bit string (pairs `(0,1), (0,2), ...`,
/// first pair most significant) over all vertex permutations.
pub fn canonical_form(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 8, "canonical form by permutation scan is limited to 8 vertices");
    let ps = pairs(n);
    let code = |perm: &[usize]| {
        ps.iter().fold(0u64, |acc, &(u, v)| acc << 1 | g.has_edge(perm[u], perm[v]) as u64)
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = code(&perm);
    while next_permutation(&mut perm) {
        best = best.min(code(&perm));
    }
    best
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn graph_from_code(n: usize, code: u64) -> Graph {
    let ps = pairs(n);
    let edges: Vec<(usize, usize)> = ps
        .iter()
        .enumerate()
        .filter(|(k, _)| code >> (ps.len() - 1 - k) & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::from_edges(n, &edges).expect("pairs are in range")
}

/// Every graph on `n <= 7` vertices attaining `g(n)`, one per isomorphism
/// class, as the canonical labeling, sorted by canonical form.
pub fn extremal_graphs_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    if !(1..=ORACLE_G_MAX).contains(&n) {
        return Err(out_of_range("n", n as u64, 1, ORACLE_G_MAX as u64));
    }
    let ps = pairs(n);
    let mut forms: Vec<u64> = scan(n)
        .extremal
        .par_iter()
        .map(|&mask| {
            let adj = rows_from_mask(&ps, mask);
            let edges: Vec<(usize, usize)> =
                ps.iter().copied().filter(|&(u, v)| adj[u] >> v & 1 == 1).collect();
            canonical_form(&Graph::from_edges(n, &edges).expect("in range"))
        })
        .collect();
    forms.sort_unstable();
    forms.dedup();
    Ok(forms.into_iter().map(|code| graph_from_code(n, code)).collect())
}

/// One oracle-versus-closed-form comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub quantity: String,
    pub input: String,
    pub oracle: String,
    pub closed_form: String,
    pub agree: bool,
    pub elapsed: Duration,
}

impl OracleReport {
    fn timed(
        quantity: &str,
        input: impl fmt::Display,
        f: impl FnOnce() -> Result<(String, String)>,
    ) -> Self {
        let start = Instant::now();
        let (oracle, closed_form) = f().unwrap_or_else(|e| (format!("error: {e}"), String::new()));
        OracleReport {
            quantity: quantity.to_string(),
            input: input.to_string(),
            agree: oracle == closed_form,
            oracle,
            closed_form,
            elapsed: start.elapsed(),
        }
    }

    /// Tab-separated line; elapsed milliseconds appended when `timing` is set.
    pub fn to_line(&self, timing: bool) -> String {
        let mut line = format!(
            "{}\t{}\t{}\t{}\t{}",
            self.quantity,
            self.input,
            self.oracle,
            self.closed_form,
            if self.agree { "agree" } else { "DISAGREE" }
        );
        if timing {
            line.push_str(&format!("\t{}ms", self.elapsed.as_millis()));
        }
        line
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line(false))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

struct Ranges {
    graph_n: usize,
    ell_n: u32,
    s_reduction_m: u64,
    g_from_s_n: usize,
    c_m: u64,
    perrin_j: u32,
}

impl Level {
    fn ranges(self) -> Ranges {
        match self {
            Level::Quick => Ranges {
                graph_n: 6,
                ell_n: 40,
                s_reduction_m: 9,
                g_from_s_n: 5,
                c_m: 300,
                perrin_j: 25,
            },
            Level::Full => Ranges {
                graph_n: 7,
                ell_n: 40,
                s_reduction_m: 12,
                g_from_s_n: 7,
                c_m: 500,
                perrin_j: 25,
            },
        }
    }
}

fn ok_pair(a: impl ToString, b: impl ToString) -> Result<(String, String)> {
    Ok((a.to_string(), b.to_string()))
}

/// Every oracle invariant at the given level, in a fixed order.
pub fn verify(level: Level) -> Vec<OracleReport> {
    let r = level.ranges();
    let mut out = Vec::new();

    for n in 1..=r.ell_n {
        out.push(OracleReport::timed("ell", n, || ok_pair(oracle_ell(n)?, ell(n)?)));
    }
    for n in 1..=r.ell_n {
        out.push(OracleReport::timed("maxones", n, || ok_pair(max_with_ones(n)?, ell(n)?)));
    }
    for n in 1..=r.graph_n {
        out.push(OracleReport::timed("g", n, || ok_pair(oracle_g(n)?, ell(n as u32)?)));
    }
    for m in 1..=ORACLE_S_DIRECT_MAX {
        out.push(OracleReport::timed("s-direct", m, || {
            ok_pair(oracle_s(m, SearchMode::Direct)?, s_of_u64(m)?)
        }));
    }
    for m in 1..=r.s_reduction_m {
        out.push(OracleReport::timed("s-reduction", m, || {
            ok_pair(oracle_s(m, SearchMode::Reduction)?, s_of_u64(m)?)
        }));
    }
    for n in 1..=r.g_from_s_n {
        out.push(OracleReport::timed("g-from-s", n, || {
            let mut best = 0;
            for m in 1..=r.s_reduction_m {
                if oracle_s(m, SearchMode::Reduction)? as usize <= n {
                    best = m;
                }
            }
            ok_pair(best, oracle_g(n)?)
        }));
    }
    let c_oracle = oracle_c_range(r.c_m);
    let table = complexity_table(r.c_m as usize);
    for m in 1..=r.c_m {
        out.push(OracleReport::timed("c", m, || {
            let oracle = c_oracle.as_ref().map_err(Clone::clone)?[m as usize - 1];
            let table = table.as_ref().map_err(Clone::clone)?;
            ok_pair(oracle, table.get(m as usize).unwrap_or(0))
        }));
    }
    for j in 3..=r.perrin_j {
        out.push(OracleReport::timed("perrin", j, || {
            ok_pair(count_mis(&cycle_graph(j as usize)?), perrin(j)?)
        }));
    }
    for n in 1..=r.graph_n {
        out.push(OracleReport::timed("extremal-classes", n, || {
            let found: Vec<u64> = extremal_graphs_up_to_iso(n)?.iter().map(canonical_form).collect();
            let mut built: Vec<u64> = expected_variants(n)
                .into_iter()
                .map(|v| extremal_graph(n, v).map(|g| canonical_form(&g)))
                .collect::<Result<_>>()?;
            built.sort_unstable();
            built.dedup();
            ok_pair(format_codes(&found), format_codes(&built))
        }));
    }
    out
}

fn expected_variants(n: usize) -> Vec<ExtremalVariant> {
    if n % 3 == 1 && n >= 4 {
        vec![ExtremalVariant::TwoEdges, ExtremalVariant::K4]
    } else {
        vec![ExtremalVariant::Default]
    }
}

fn format_codes(codes: &[u64]) -> String {
    codes.iter().map(|c| format!("{c:#x}")).collect::<Vec<_>>().join(",")
}

/// Counts of each MIS total over all labeled graphs on `n` vertices; handy
/// for inspecting the scan distribution.
pub fn mis_count_histogram(n: usize) -> Result<BTreeMap<u64, u64>> {
    if !(1..=ORACLE_G_MAX).contains(&n) {
        return Err(out_of_range("n", n as u64, 1, ORACLE_G_MAX as u64));
    }
    let ps = pairs(n);
    let full: u128 = (1 << n) - 1;
    let mut hist = BTreeMap::new();
    for mask in 0u32..1 << ps.len() {
        let adj = rows_from_mask(&ps, mask);
        *hist.entry(count_mis_small(&adj[..n], full, 0)).or_insert(0) += 1;
    }
    Ok(hist)
}

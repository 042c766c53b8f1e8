//! Separating covers and the two constructions that move between covers and
//! graphs: one cover set per vertex (`S_v` = MISes containing `v`), and one
//! vertex per cover set with edges between disjoint sets.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::s_of_u64;
use crate::error::{Error, Result};
use crate::graph::{
    count_mis, enumerate_mis, extremal_graph, ExtremalVariant, Graph, VertexSet, MAX_VERTICES,
};

/// Largest `m` accepted by [`minimal_cover`].
pub const MINIMAL_COVER_MAX: u64 = 1_000_000;

/// Family of nonempty, pairwise distinct subsets of `{0, ..., ground_size-1}`.
///
/// Elements inside each set are kept sorted; the order of the sets is
/// preserved from construction, with later duplicates dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCover", into = "RawCover")]
pub struct SeparatingCover {
    ground_size: usize,
    sets: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawCover {
    ground_size: usize,
    sets: Vec<Vec<usize>>,
}

impl TryFrom<RawCover> for SeparatingCover {
    type Error = Error;

    fn try_from(raw: RawCover) -> Result<Self> {
        SeparatingCover::new(raw.ground_size, raw.sets)
    }
}

impl From<SeparatingCover> for RawCover {
    fn from(c: SeparatingCover) -> Self {
        RawCover { ground_size: c.ground_size, sets: c.sets }
    }
}

impl SeparatingCover {
    pub fn new(ground_size: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(sets.len());
        for (idx, mut set) in sets.into_iter().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(Error::InvalidCover(format!("set {idx} is empty")));
            }
            if let Some(&x) = set.iter().find(|&&x| x >= ground_size) {
                return Err(Error::InvalidCover(format!(
                    "set {idx} contains element {x}, outside ground set of size {ground_size}"
                )));
            }
            if seen.insert(set.clone()) {
                kept.push(set);
            }
        }
        Ok(SeparatingCover { ground_size, sets: kept })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cover serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidCover(e.to_string()))
    }

    /// For each element, the indices of the sets containing it.
    fn memberships(&self) -> Vec<Bits> {
        let k = self.sets.len();
        let mut sig = vec![Bits::new(k); self.ground_size];
        for (i, set) in self.sets.iter().enumerate() {
            for &x in set {
                sig[x].set(i);
            }
        }
        sig
    }

    /// Row `i` holds the indices of the sets disjoint from set `i`.
    fn disjointness(&self, memberships: &[Bits]) -> Vec<Bits> {
        let k = self.sets.len();
        let mut meets = vec![Bits::new(k); k];
        for sig in memberships {
            for i in sig.ones() {
                meets[i].or_assign(sig);
            }
        }
        meets
            .into_iter()
            .map(|mut row| {
                row.complement();
                row
            })
            .collect()
    }
}

/// Fixed-width bitset over set indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    fn new(len: usize) -> Self {
        Bits { len, words: vec![0; len.div_ceil(64)] }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn complement(&mut self) {
        for w in &mut self.words {
            *w = !*w;
        }
        if self.len % 64 != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << (self.len % 64)) - 1;
        }
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Outcome of [`validate_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub covering: bool,
    pub separating: bool,
    /// First element lying in no set.
    pub uncovered: Option<usize>,
    /// First pair `(x, y)`, `x < y`, with no disjoint `S ∋ x`, `T ∋ y`.
    pub inseparable: Option<(usize, usize)>,
}

impl CoverReport {
    pub fn is_valid(&self) -> bool {
        self.covering && self.separating
    }
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "covering\t{}\nseparating\t{}", self.covering, self.separating)?;
        if let Some(x) = self.uncovered {
            write!(f, "\nuncovered\t{x}")?;
        }
        if let Some((x, y)) = self.inseparable {
            write!(f, "\ninseparable\t{x}\t{y}")?;
        }
        Ok(())
    }
}

/// Checks the covering and separating properties.
///
/// Separation is symmetric, so only pairs `x < y` are scanned. The scan is
/// quadratic in the ground set size.
pub fn validate_cover(c: &SeparatingCover) -> CoverReport {
    let sig = c.memberships();
    let uncovered = sig.iter().position(Bits::is_zero);
    let disjoint = c.disjointness(&sig);
    // reach[x]: every set disjoint from some set containing x
    let reach: Vec<Bits> = sig
        .par_iter()
        .map(|s| {
            let mut r = Bits::new(c.sets.len());
            for i in s.ones() {
                r.or_assign(&disjoint[i]);
            }
            r
        })
        .collect();
    let m = c.ground_size;
    let inseparable = (0..m).into_par_iter().find_map_first(|x| {
        (x + 1..m).find(|&y| !reach[x].intersects(&sig[y])).map(|y| (x, y))
    });
    CoverReport {
        covering: uncovered.is_none(),
        separating: inseparable.is_none(),
        uncovered,
        inseparable,
    }
}

/// Cover whose elements are the MISes of `g` (in canonical order) and whose
/// sets are `S_v = {M : v ∈ M}`, deduplicated.
pub fn cover_from_graph(g: &Graph) -> Result<SeparatingCover> {
    // the empty graph has one MIS and no vertex to cover it
    if g.n() == 0 {
        return Err(Error::TooSmall { what: "graph order", min: 1, got: 0 });
    }
    if g.n() >= 2 {
        if let Some(v) = g.isolated_vertices().next() {
            return Err(Error::IsolatedVertex(v));
        }
    }
    let mises = enumerate_mis(g)?;
    Ok(cover_over_mises(g, &mises))
}

fn cover_over_mises(g: &Graph, mises: &[VertexSet]) -> SeparatingCover {
    let sets: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            mises
                .iter()
                .enumerate()
                .filter(|(_, m)| m.contains(v))
                .map(|(i, _)| i)
                .collect::<Vec<_>>()
        })
        .filter(|s| !s.is_empty())
        .collect();
    SeparatingCover::new(mises.len(), sets).expect("MIS memberships are in range")
}

/// Graph with one vertex per cover set, adjacent exactly when the sets are
/// disjoint.
pub fn graph_from_cover(c: &SeparatingCover) -> Result<Graph> {
    Ok(graph_and_witnesses(c)?.0)
}

/// [`graph_from_cover`] together with the MIS chosen for each element: the
/// sets containing the element, extended greedily by ascending vertex index.
///
/// Fails if two elements end up with the same witness, which a valid
/// separating cover rules out.
pub fn graph_and_witnesses(c: &SeparatingCover) -> Result<(Graph, Vec<VertexSet>)> {
    let report = validate_cover(c);
    if let Some(x) = report.uncovered {
        return Err(Error::InvalidCover(format!("element {x} is not covered")));
    }
    if let Some((x, y)) = report.inseparable {
        return Err(Error::InvalidCover(format!("elements {x} and {y} are not separated")));
    }
    if c.len() > MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "number of cover sets",
            max: MAX_VERTICES as u64,
            got: c.len() as u64,
        });
    }
    let sig = c.memberships();
    let disjoint = c.disjointness(&sig);
    let mut g = Graph::empty(c.len())?;
    for (i, row) in disjoint.iter().enumerate() {
        for j in row.ones().filter(|&j| j > i) {
            g.add_edge(i, j)?;
        }
    }
    let witnesses: Vec<VertexSet> = sig.iter().map(|s| greedy_extension(&g, s.ones().collect())).collect();
    let mut seen = HashSet::with_capacity(witnesses.len());
    for (x, w) in witnesses.iter().enumerate() {
        if !seen.insert(*w) {
            return Err(Error::InvalidCover(format!("witness MIS {w} repeats at element {x}")));
        }
    }
    if c.ground_size() <= crate::graph::DEFAULT_ENUMERATION_CAP {
        debug_assert!(count_mis(&g) >= BigUint::from(c.ground_size()));
    }
    Ok((g, witnesses))
}

fn greedy_extension(g: &Graph, start: VertexSet) -> VertexSet {
    let mut s = start;
    for v in 0..g.n() {
        if !s.contains(v) && g.neighbors(v).bits() & s.bits() == 0 {
            s.insert(v);
        }
    }
    s
}

/// A valid separating cover on exactly `m` elements with at most `s(m)` sets.
///
/// Built from the extremal graph on `s(m)` vertices, then restricted to the
/// first `m` MISes; restriction keeps both cover properties.
pub fn minimal_cover(m: u64) -> Result<SeparatingCover> {
    if m == 0 {
        return Err(Error::TooSmall { what: "m", min: 1, got: 0 });
    }
    if m > MINIMAL_COVER_MAX {
        return Err(Error::TooLarge { what: "m", max: MINIMAL_COVER_MAX, got: m });
    }
    let n = s_of_u64(m)? as usize;
    let g = extremal_graph(n, ExtremalVariant::Default)?;
    let mut mises = enumerate_mis(&g)?;
    mises.truncate(m as usize);
    Ok(cover_over_mises(&g, &mises))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    fn cover(m: usize, sets: &[&[usize]]) -> SeparatingCover {
        SeparatingCover::new(m, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    // Independent reference: direct definition over every pair and every pair of sets.
    fn brute_valid(c: &SeparatingCover) -> (bool, bool) {
        let covering = (0..c.ground_size()).all(|x| c.sets().iter().any(|s| s.contains(&x)));
        let separating = (0..c.ground_size()).all(|x| {
            (0..c.ground_size()).filter(|&y| y != x).all(|y| {
                c.sets().iter().any(|s| {
                    c.sets().iter().any(|t| {
                        s.contains(&x) && t.contains(&y) && s.iter().all(|e| !t.contains(e))
                    })
                })
            })
        });
        (covering, separating)
    }

    #[test]
    fn validation_examples() {
        let r = validate_cover(&cover(2, &[&[0], &[1]]));
        assert!(r.covering && r.separating);
        let r = validate_cover(&cover(2, &[&[0, 1]]));
        assert!(r.covering && !r.separating);
        assert_eq!(r.inseparable, Some((0, 1)));
        let r = validate_cover(&cover(3, &[&[0, 1], &[2]]));
        assert!(r.covering && !r.separating);
        assert_eq!(r.inseparable, Some((0, 1)));
        let r = validate_cover(&cover(3, &[&[0], &[1]]));
        assert!(!r.covering);
        assert_eq!(r.uncovered, Some(2));
        assert_eq!(r.inseparable, Some((0, 2)));
    }

    #[test]
    fn validator_matches_definition_on_all_small_families() {
        // every family of nonempty subsets of {0,1,2}
        let subsets: Vec<Vec<usize>> =
            (1u32..8).map(|b| (0..3).filter(|i| b >> i & 1 == 1).collect()).collect();
        for fam in 0u32..1 << subsets.len() {
            let sets = subsets.iter().enumerate().filter(|(i, _)| fam >> i & 1 == 1).map(|(_, s)| s.clone()).collect();
            let c = SeparatingCover::new(3, sets).unwrap();
            let r = validate_cover(&c);
            assert_eq!((r.covering, r.separating), brute_valid(&c), "{c:?}");
        }
    }

    #[test]
    fn construction_rejects_bad_sets() {
        assert!(SeparatingCover::new(2, vec![vec![]]).is_err());
        assert!(SeparatingCover::new(2, vec![vec![2]]).is_err());
        let c = SeparatingCover::new(2, vec![vec![1, 0], vec![0, 1], vec![1]]).unwrap();
        assert_eq!(c.sets(), &[vec![0, 1], vec![1]]);
    }

    #[test]
    fn json_round_trip_preserves_order() {
        let c = cover(4, &[&[3], &[0, 2], &[1]]);
        let text = c.to_json();
        assert_eq!(text, r#"{"ground_size":4,"sets":[[3],[0,2],[1]]}"#);
        assert_eq!(SeparatingCover::from_json(&text).unwrap(), c);
        assert!(SeparatingCover::from_json(r#"{"ground_size":1,"sets":[[]]}"#).is_err());
        assert!(SeparatingCover::from_json("not json").is_err());
    }

    #[test]
    fn cover_from_graph_examples() {
        let c = cover_from_graph(&complete_graph(3).unwrap()).unwrap();
        assert_eq!(c, cover(3, &[&[0], &[1], &[2]]));
        let c = cover_from_graph(&complete_graph(2).unwrap()).unwrap();
        assert_eq!(c, cover(2, &[&[0], &[1]]));
        let g = extremal_graph(5, ExtremalVariant::Default).unwrap();
        let c = cover_from_graph(&g).unwrap();
        assert_eq!(c.ground_size(), 6);
        assert!(c.len() <= 5);
        assert!(validate_cover(&c).is_valid());
        let c = cover_from_graph(&complete_graph(1).unwrap()).unwrap();
        assert_eq!(c, cover(1, &[&[0]]));
    }

    #[test]
    fn cover_from_graph_rejects_isolated_vertex() {
        assert!(cover_from_graph(&Graph::empty(0).unwrap()).is_err());
        let g = Graph::from_edges(3, &[(0, 2)]).unwrap();
        assert_eq!(cover_from_graph(&g), Err(Error::IsolatedVertex(1)));
    }

    #[test]
    fn graph_from_cover_examples() {
        let g = graph_from_cover(&cover(3, &[&[0], &[1], &[2]])).unwrap();
        assert_eq!(g, complete_graph(3).unwrap());
        assert_eq!(count_mis(&g), BigUint::from(3u32));
        let g = graph_from_cover(&cover(1, &[&[0]])).unwrap();
        assert_eq!(g, complete_graph(1).unwrap());
        let k2k3 = crate::graph::disjoint_union(&complete_graph(2).unwrap(), &complete_graph(3).unwrap()).unwrap();
        let g = graph_from_cover(&cover_from_graph(&k2k3).unwrap()).unwrap();
        assert_eq!(g.n(), 5);
        assert!(count_mis(&g) >= BigUint::from(6u32));
        assert!(graph_from_cover(&cover(2, &[&[0, 1]])).is_err());
    }

    #[test]
    fn minimal_cover_examples() {
        let c = minimal_cover(1).unwrap();
        assert_eq!(c.len(), 1);
        assert!(validate_cover(&c).is_valid());
        let c = minimal_cover(10).unwrap();
        assert_eq!(c.ground_size(), 10);
        assert!(c.len() <= 7);
        assert!(validate_cover(&c).is_valid());
        let c = minimal_cover(3).unwrap();
        assert!(c.len() <= 3);
        assert!(validate_cover(&c).is_valid());
        assert!(minimal_cover(0).is_err());
        assert!(minimal_cover(MINIMAL_COVER_MAX + 1).is_err());
    }

    #[test]
    fn minimal_covers_validate_over_a_range() {
        for m in 1..=400u64 {
            let c = minimal_cover(m).unwrap();
            assert_eq!(c.ground_size() as u64, m);
            assert!(c.len() as u32 <= s_of_u64(m).unwrap());
            assert!(validate_cover(&c).is_valid(), "m = {m}");
        }
    }
}

//! Matchings, perfect matchings, extendability and bad matchings.

use std::collections::HashSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{grid_2xn, lab1};
use crate::graph::{EdgeId, Graph};

/// A set of pairwise vertex-disjoint edges, stored sorted by id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<EdgeId>,
}

impl Matching {
    /// Validates that the edges exist and share no vertex.
    pub fn new(g: &Graph, edges: &[EdgeId]) -> Result<Self> {
        let mut edges = edges.to_vec();
        edges.sort_unstable();
        edges.dedup();
        let mask = edge_mask(g, &edges)?;
        if let Some((x, y)) = first_conflict(g, mask) {
            return Err(Error::NotAMatching(x.0, y.0));
        }
        Ok(Matching { edges })
    }

    pub fn from_labels(g: &Graph, labels: &[&str]) -> Result<Self> {
        let ids = labels
            .iter()
            .map(|l| g.edge_by_label(l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, &ids)
    }

    fn from_mask(g: &Graph, mask: u64) -> Self {
        Matching {
            edges: mask_positions(mask).map(|p| g.edges()[p].id).collect(),
        }
    }

    pub fn empty() -> Self {
        Matching { edges: Vec::new() }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_subset(&self, other: &Matching) -> bool {
        self.edges.iter().all(|&e| other.contains(e))
    }

    /// Edge labels in id order.
    pub fn labels(&self, g: &Graph) -> Vec<String> {
        self.edges
            .iter()
            .map(|&e| g.edge(e).map(|x| x.label.clone()).unwrap_or_default())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendabilityResult {
    pub extendable: bool,
    /// A perfect matching containing the query, when one exists.
    pub witness: Option<Matching>,
}

pub(crate) fn mask_positions(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(p)
        }
    })
}

fn check_width(g: &Graph) -> Result<()> {
    if g.edge_count() > 64 {
        Err(Error::GroundSetTooLarge(g.edge_count()))
    } else {
        Ok(())
    }
}

fn edge_mask(g: &Graph, edges: &[EdgeId]) -> Result<u64> {
    check_width(g)?;
    edges.iter().try_fold(0u64, |acc, &e| {
        let p = g.edge_position(e).ok_or(Error::InvalidEdgeId(e.0))?;
        Ok(acc | (1 << p))
    })
}

fn first_conflict(g: &Graph, mask: u64) -> Option<(EdgeId, EdgeId)> {
    let mut owner: Vec<Option<usize>> = vec![None; g.vertex_count()];
    for p in mask_positions(mask) {
        let (x, y) = g.endpoint_positions(p);
        for v in [x, y] {
            if let Some(q) = owner[v] {
                return Some((g.edges()[q].id, g.edges()[p].id));
            }
            owner[v] = Some(p);
        }
    }
    None
}

/// True iff the listed edges are pairwise vertex-disjoint.
pub fn is_matching(g: &Graph, edges: &[EdgeId]) -> Result<bool> {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(false);
    }
    let mask = edge_mask(g, &sorted)?;
    Ok(first_conflict(g, mask).is_none())
}

/// All perfect matchings as edge-position bitmasks, sorted lexicographically
/// by their ascending edge-id sequences.
fn perfect_matching_masks(g: &Graph) -> Result<Vec<u64>> {
    check_width(g)?;
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n % 2 == 1 {
        return Ok(out);
    }
    let mut covered = vec![false; n];
    extend_perfect(g, &mut covered, 0, 0, &mut out);
    let mut keyed: Vec<(Vec<usize>, u64)> = out
        .into_iter()
        .map(|m| (mask_positions(m).collect(), m))
        .collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, m)| m).collect())
}

// Branch on the edges of the lowest uncovered vertex.
fn extend_perfect(g: &Graph, covered: &mut [bool], from: usize, mask: u64, out: &mut Vec<u64>) {
    let Some(v) = (from..covered.len()).find(|&v| !covered[v]) else {
        out.push(mask);
        return;
    };
    covered[v] = true;
    for &e in g.incident_edge_positions(v) {
        let (x, y) = g.endpoint_positions(e);
        let w = if x == v { y } else { x };
        if !covered[w] {
            covered[w] = true;
            extend_perfect(g, covered, v + 1, mask | (1 << e), out);
            covered[w] = false;
        }
    }
    covered[v] = false;
}

/// Exhaustive, duplicate-free list of perfect matchings in lexicographic order.
pub fn enumerate_perfect_matchings(g: &Graph) -> Result<Vec<Matching>> {
    Ok(perfect_matching_masks(g)?
        .into_iter()
        .map(|m| Matching::from_mask(g, m))
        .collect())
}

/// Answers extendability queries against a precomputed perfect-matching list.
#[derive(Debug, Clone)]
pub struct MatchingOracle<'g> {
    graph: &'g Graph,
    perfect: Vec<u64>,
}

impl<'g> MatchingOracle<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        Ok(MatchingOracle {
            graph,
            perfect: perfect_matching_masks(graph)?,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn perfect_matching_count(&self) -> usize {
        self.perfect.len()
    }

    pub fn perfect_matchings(&self) -> Vec<Matching> {
        self.perfect
            .iter()
            .map(|&m| Matching::from_mask(self.graph, m))
            .collect()
    }

    pub(crate) fn perfect_masks(&self) -> &[u64] {
        &self.perfect
    }

    fn witness(&self, mask: u64) -> Option<u64> {
        self.perfect.iter().copied().find(|&p| p & mask == mask)
    }

    pub fn is_extendable(&self, m: &Matching) -> Result<ExtendabilityResult> {
        let mask = edge_mask(self.graph, m.edges())?;
        if let Some((x, y)) = first_conflict(self.graph, mask) {
            return Err(Error::NotAMatching(x.0, y.0));
        }
        let witness = self.witness(mask);
        Ok(ExtendabilityResult {
            extendable: witness.is_some(),
            witness: witness.map(|w| Matching::from_mask(self.graph, w)),
        })
    }

    /// Minimal non-extendable matchings, found level by level in cardinality.
    ///
    /// Candidates of size s are generated from extendable matchings of size
    /// s−1 by appending an edge beyond their largest position, so supersets of
    /// bad matchings are never visited.
    pub fn bad_matchings(&self) -> Vec<Matching> {
        let g = self.graph;
        if self.witness(0).is_none() {
            return vec![Matching::empty()];
        }
        let mut bad = Vec::new();
        let mut level: Vec<u64> = vec![0];
        while !level.is_empty() {
            let extendable: HashSet<u64> = level.iter().copied().collect();
            let mut next = Vec::new();
            for &m in &level {
                let start = if m == 0 {
                    0
                } else {
                    64 - m.leading_zeros() as usize
                };
                for e in start..g.edge_count() {
                    let cand = m | (1 << e);
                    if first_conflict(g, cand).is_some() {
                        continue;
                    }
                    if self.witness(cand).is_some() {
                        next.push(cand);
                    } else if mask_positions(cand).all(|p| extendable.contains(&(cand & !(1 << p))))
                    {
                        bad.push(cand);
                    }
                }
            }
            level = next;
        }
        let mut out: Vec<Matching> = bad.into_iter().map(|m| Matching::from_mask(g, m)).collect();
        out.sort();
        out
    }
}

pub fn is_extendable(g: &Graph, m: &Matching) -> Result<ExtendabilityResult> {
    MatchingOracle::new(g)?.is_extendable(m)
}

pub fn enumerate_bad_matchings(g: &Graph) -> Result<Vec<Matching>> {
    Ok(MatchingOracle::new(g)?.bad_matchings())
}

/// The two-edge families `{b_i, c_{i+1}}` and `{c_i, b_{i+1}}`, 1 ≤ i ≤ n−2, on
/// the 2×n ladder, in matching order.
pub fn grid_bad_matchings_closed_form(n: usize) -> Result<Vec<Matching>> {
    let g = grid_2xn(n)?;
    let mut out = Vec::new();
    for i in 1..=n.saturating_sub(2) {
        for (x, y) in [("b", "c"), ("c", "b")] {
            let (l1, l2) = (lab1(x, i), lab1(y, i + 1));
            out.push(Matching::from_labels(&g, &[&l1, &l2])?);
        }
    }
    out.sort();
    Ok(out)
}

/// Whether every perfect matching of the 2×n ladder contains `b_i` exactly
/// when it contains `c_i`, for all 1 ≤ i ≤ n−1.
pub fn horizontals_coupled(n: usize) -> Result<bool> {
    let g = grid_2xn(n)?;
    let pairs = (1..n)
        .map(|i| {
            Ok((
                g.edge_by_label(&lab1("b", i))?,
                g.edge_by_label(&lab1("c", i))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(enumerate_perfect_matchings(&g)?.iter().all(|tau| {
        pairs
            .iter()
            .all(|&(b, c)| tau.contains(b) == tau.contains(c))
    }))
}

/// True iff no perfect matching of `g` uses any of the listed edges.
pub fn no_perfect_matching_uses(g: &Graph, edges: &[EdgeId]) -> Result<bool> {
    let forbidden = edge_mask(g, edges)?;
    Ok(perfect_matching_masks(g)?
        .iter()
        .all(|&m| m & forbidden == 0))
}

/// `{graph, count, matchings}` with each matching as its label list.
pub fn bad_matching_report(g: &Graph, bad: &[Matching]) -> Value {
    let name = g
        .family()
        .map_or_else(|| "graph".to_owned(), |d| d.to_string());
    json!({
        "graph": name,
        "count": bad.len(),
        "matchings": bad.iter().map(|m| m.labels(g)).collect::<Vec<_>>(),
    })
}

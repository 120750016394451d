//! Explicit simplicial complexes: perfect matching complexes, independence
//! complexes, and the auxiliary graph whose independence complex recovers the
//! perfect matching complex of the 2×n ladder.
//!
//! Faces are subsets of a ground set of at most 64 elements, stored as
//! bitmasks. Every face is materialised; the empty face is present whenever
//! the complex is non-void.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{grid_2xn, lab1};
use crate::graph::{Graph, GraphBuilder};
use crate::matchings::{mask_positions, MatchingOracle};

/// Hard ceiling on materialised faces unless the caller asks otherwise.
pub const DEFAULT_FACE_CAP: usize = 2_000_000;

/// A finite subset of ground indices `0..64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Face(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Cardinality minus one; the empty face has dimension −1.
    pub fn dim(self) -> i32 {
        self.len() as i32 - 1
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Face {
        Face(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Face {
        Face(self.0 & !(1 << i))
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    /// Ascending ground indices.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        mask_positions(self.0)
    }

    /// Codimension-one subfaces, in order of the removed index.
    pub fn boundary_faces(self) -> impl Iterator<Item = Face> {
        self.indices().map(move |i| self.without(i))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

// Cardinality first, then lexicographic on the ascending index lists.
impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: Vec<String>,
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    // dim_start[d + 1] is the first face of dimension d
    dim_start: Vec<usize>,
}

impl SimplicialComplex {
    fn from_sorted(ground: Vec<String>, mut faces: Vec<Face>) -> Self {
        faces.sort_unstable();
        let index = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let top = faces.last().map_or(0, |f| f.len() + 1);
        let mut dim_start = vec![faces.len(); top + 1];
        for (i, f) in faces.iter().enumerate().rev() {
            dim_start[f.len()] = i;
        }
        for d in (0..top).rev() {
            dim_start[d] = dim_start[d].min(dim_start[d + 1]);
        }
        SimplicialComplex {
            ground,
            faces,
            index,
            dim_start,
        }
    }

    /// The complex with no faces at all, not even the empty one.
    pub fn void(ground: Vec<String>) -> Self {
        Self::from_sorted(ground, Vec::new())
    }

    /// Downward closure of the given facets.
    pub fn from_facets<I>(ground: Vec<String>, facets: I, cap: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Face>,
    {
        if ground.len() > 64 {
            return Err(Error::GroundSetTooLarge(ground.len()));
        }
        let limit = if ground.len() == 64 {
            u64::MAX
        } else {
            (1u64 << ground.len()) - 1
        };
        let mut seen: HashSet<Face> = HashSet::new();
        for facet in facets {
            if facet.0 & !limit != 0 {
                return Err(Error::MalformedComplex(format!(
                    "face {facet:?} uses indices outside the ground set"
                )));
            }
            if !seen.insert(facet) {
                continue;
            }
            // enumerate submasks
            let mut sub = facet.0;
            loop {
                sub = sub.wrapping_sub(1) & facet.0;
                seen.insert(Face(sub));
                if seen.len() > cap {
                    return Err(Error::FaceCapExceeded { cap });
                }
                if sub == 0 {
                    break;
                }
            }
        }
        Ok(Self::from_sorted(ground, seen.into_iter().collect()))
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.index.contains_key(&face)
    }

    pub fn position(&self, face: Face) -> Option<usize> {
        self.index.get(&face).copied()
    }

    /// Top dimension, or `None` for the void complex.
    pub fn dimension(&self) -> Option<i32> {
        self.faces.last().map(|f| f.dim())
    }

    /// Faces of dimension `d` (−1 for the empty face), in sorted order.
    pub fn faces_of_dim(&self, d: i32) -> &[Face] {
        let size = d + 1;
        if size < 0 || size as usize + 1 >= self.dim_start.len() {
            return &[];
        }
        let s = size as usize;
        &self.faces[self.dim_start[s]..self.dim_start[s + 1]]
    }

    /// Index of `face` within `faces_of_dim(face.dim())`.
    pub fn position_in_dim(&self, face: Face) -> Option<usize> {
        self.position(face).map(|p| p - self.dim_start[face.len()])
    }

    pub fn ground_index(&self, label: &str) -> Option<usize> {
        self.ground.iter().position(|g| g == label)
    }

    pub fn face_labels(&self, face: Face) -> Vec<String> {
        face.indices().map(|i| self.ground[i].clone()).collect()
    }

    /// Maximal faces in sorted order.
    pub fn facets(&self) -> Vec<Face> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| {
                (0..self.ground.len())
                    .filter(|&i| !f.contains(i))
                    .all(|i| !self.contains(f.with(i)))
            })
            .collect()
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces
            .iter()
            .all(|&f| f.boundary_faces().all(|b| self.contains(b)))
    }

    /// `{ground, facets}`; with `full_faces`, also every face.
    pub fn to_json(&self, full_faces: bool) -> serde_json::Value {
        let data = ComplexData {
            ground: self.ground.clone(),
            facets: self
                .facets()
                .into_iter()
                .map(|f| f.indices().collect())
                .collect(),
            faces: full_faces.then(|| self.faces.iter().map(|f| f.indices().collect()).collect()),
        };
        serde_json::to_value(data).expect("complex data serialises")
    }

    /// Rebuilds a complex from its facet list by downward closure.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let data: ComplexData = serde_json::from_value(value.clone())
            .map_err(|e| Error::MalformedComplex(e.to_string()))?;
        let n = data.ground.len();
        let mut facets = Vec::with_capacity(data.facets.len());
        for f in &data.facets {
            if let Some(&bad) = f.iter().find(|&&i| i >= n) {
                return Err(Error::MalformedComplex(format!("index {bad} out of range")));
            }
            facets.push(Face::from_indices(f.iter().copied()));
        }
        Self::from_facets(data.ground, facets, DEFAULT_FACE_CAP)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ComplexData {
    ground: Vec<String>,
    facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    faces: Option<Vec<Vec<usize>>>,
}

/// The complex whose facets are the perfect matchings of `g`, on the ground set
/// of edges of `g` (in edge order).
pub fn perfect_matching_complex(g: &Graph) -> Result<SimplicialComplex> {
    perfect_matching_complex_capped(g, DEFAULT_FACE_CAP)
}

pub fn perfect_matching_complex_capped(g: &Graph, cap: usize) -> Result<SimplicialComplex> {
    let oracle = MatchingOracle::new(g)?;
    perfect_matching_complex_from(&oracle, cap)
}

pub fn perfect_matching_complex_from(
    oracle: &MatchingOracle<'_>,
    cap: usize,
) -> Result<SimplicialComplex> {
    let ground = oracle.graph().edge_labels();
    if oracle.perfect_matching_count() == 0 {
        return Ok(SimplicialComplex::void(ground));
    }
    SimplicialComplex::from_facets(ground, oracle.perfect_masks().iter().map(|&m| Face(m)), cap)
}

/// The complex of independent vertex sets of `g`, on the ground set of vertices.
pub fn independence_complex(g: &Graph) -> Result<SimplicialComplex> {
    independence_complex_capped(g, DEFAULT_FACE_CAP)
}

pub fn independence_complex_capped(g: &Graph, cap: usize) -> Result<SimplicialComplex> {
    let n = g.vertex_count();
    if n > 64 {
        return Err(Error::GroundSetTooLarge(n));
    }
    let neighbours: Vec<u64> = (0..n)
        .map(|v| Face::from_indices(g.neighbor_positions(v).iter().copied()).0)
        .collect();
    let mut faces = Vec::new();
    // each independent set is reached once, by adding vertices in increasing order
    let mut stack = vec![(0u64, 0usize)];
    while let Some((set, from)) = stack.pop() {
        faces.push(Face(set));
        if faces.len() > cap {
            return Err(Error::FaceCapExceeded { cap });
        }
        let blocked = mask_positions(set).fold(0u64, |acc, v| acc | neighbours[v]);
        for v in from..n {
            if blocked >> v & 1 == 0 {
                stack.push((set | (1 << v), v + 1));
            }
        }
    }
    Ok(SimplicialComplex::from_sorted(g.vertex_labels(), faces))
}

/// Line graph of the 2×n ladder plus an edge for each two-edge bad matching
/// `{b_i, c_{i+1}}`, `{c_i, b_{i+1}}`. Vertices carry the ladder's edge labels
/// and appear in the ladder's edge order.
pub fn aux_graph_xn(n: usize) -> Result<Graph> {
    let ladder = grid_2xn(n)?;
    let mut b = GraphBuilder::new();
    let ids: Vec<_> = ladder
        .edges()
        .iter()
        .map(|e| b.add_vertex(e.label.clone()))
        .collect();
    let mut adjacent = Vec::new();
    for x in 0..ladder.edge_count() {
        for y in x + 1..ladder.edge_count() {
            let (p, q) = ladder.endpoint_positions(x);
            let (r, s) = ladder.endpoint_positions(y);
            if p == r || p == s || q == r || q == s {
                adjacent.push((x, y));
            }
        }
    }
    for i in 1..=n.saturating_sub(2) {
        for (s, t) in [("b", "c"), ("c", "b")] {
            let x = ladder
                .edge_position(ladder.edge_by_label(&lab1(s, i))?)
                .unwrap();
            let y = ladder
                .edge_position(ladder.edge_by_label(&lab1(t, i + 1))?)
                .unwrap();
            adjacent.push((x.min(y), x.max(y)));
        }
    }
    adjacent.sort_unstable();
    for (x, y) in adjacent {
        let label = format!("{}~{}", ladder.edges()[x].label, ladder.edges()[y].label);
        b.add_edge(ids[x], ids[y], label);
    }
    b.build()
}

/// Outcome of comparing two complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexComparison {
    Equal,
    GroundSizeMismatch { left: usize, right: usize },
    GroundLabelMismatch { label: String },
    FaceMismatch { only_left: usize, only_right: usize },
}

impl ComplexComparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, ComplexComparison::Equal)
    }
}

/// Compares ground sets through a label correspondence (identity when `None`)
/// and then the face families.
pub fn compare_complexes(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    correspondence: Option<&BTreeMap<String, String>>,
) -> ComplexComparison {
    if a.ground.len() != b.ground.len() {
        return ComplexComparison::GroundSizeMismatch {
            left: a.ground.len(),
            right: b.ground.len(),
        };
    }
    let mut to_b = Vec::with_capacity(a.ground.len());
    for label in &a.ground {
        let target = correspondence.map_or(Some(label), |m| m.get(label));
        match target.and_then(|t| b.ground_index(t)) {
            Some(j) => to_b.push(j),
            None => {
                return ComplexComparison::GroundLabelMismatch {
                    label: label.clone(),
                }
            }
        }
    }
    let mapped: HashSet<Face> = a
        .faces
        .iter()
        .map(|f| Face::from_indices(f.indices().map(|i| to_b[i])))
        .collect();
    let only_left = mapped.iter().filter(|f| !b.contains(**f)).count();
    let only_right = b.faces.iter().filter(|f| !mapped.contains(f)).count();
    if only_left == 0 && only_right == 0 {
        ComplexComparison::Equal
    } else {
        ComplexComparison::FaceMismatch {
            only_left,
            only_right,
        }
    }
}

pub fn complex_equal(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    compare_complexes(a, b, None).is_equal()
}

/// `f[d]` = number of d-dimensional faces, d ≥ 0.
pub fn f_vector(c: &SimplicialComplex) -> Vec<u64> {
    match c.dimension() {
        None => Vec::new(),
        Some(top) => (0..=top).map(|d| c.faces_of_dim(d).len() as u64).collect(),
    }
}

/// Σ over all faces, the empty one included, of (−1)^dim. `None` when void.
pub fn reduced_euler_characteristic(c: &SimplicialComplex) -> Option<i64> {
    if c.is_void() {
        return None;
    }
    Some(
        c.faces
            .iter()
            .map(|f| if f.dim().rem_euclid(2) == 0 { 1 } else { -1 })
            .sum(),
    )
}

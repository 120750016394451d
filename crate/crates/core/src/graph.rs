//! Finite simple graphs with stable identifiers and label maps.
//!
//! Vertex and edge identifiers are assigned once by the constructor and are
//! never renumbered: deleting a vertex keeps the ids of everything that
//! survives. Internally the graph also keeps a dense *position* for each
//! vertex and edge, which is what the enumeration code works with.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::FamilyDescriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub label: String,
}

/// A finite simple graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    // by vertex position: sorted neighbour positions
    adjacency: Vec<Vec<usize>>,
    // by vertex position: sorted incident edge positions
    incidence: Vec<Vec<usize>>,
    // by edge position: endpoint positions (smaller first)
    endpoints: Vec<(usize, usize)>,
    family: Option<FamilyDescriptor>,
}

/// Incremental constructor; ids are handed out densely in call order.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    family: Option<FamilyDescriptor>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn family(mut self, family: FamilyDescriptor) -> Self {
        self.family = Some(family);
        self
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> VertexId {
        let id = VertexId(self.vertices.len());
        self.vertices.push(Vertex {
            id,
            label: label.into(),
        });
        id
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, label: impl Into<String>) -> EdgeId {
        let id = EdgeId(self.edges.len());
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        self.edges.push(Edge {
            id,
            u,
            v,
            label: label.into(),
        });
        id
    }

    /// Validates simplicity and label injectivity.
    pub fn build(self) -> Result<Graph> {
        Graph::from_parts(self.vertices, self.edges, self.family)
    }
}

impl Graph {
    fn from_parts(
        mut vertices: Vec<Vertex>,
        mut edges: Vec<Edge>,
        family: Option<FamilyDescriptor>,
    ) -> Result<Self> {
        vertices.sort_by_key(|v| v.id);
        edges.sort_by_key(|e| e.id);
        let malformed = |reason: String| Error::InvalidParameter {
            family: "graph",
            reason,
        };

        let mut position = HashMap::with_capacity(vertices.len());
        let mut seen_labels = HashSet::new();
        for (pos, v) in vertices.iter().enumerate() {
            if position.insert(v.id, pos).is_some() {
                return Err(malformed(format!("duplicate vertex id {}", v.id)));
            }
            if !seen_labels.insert(v.label.as_str()) {
                return Err(malformed(format!("duplicate vertex label `{}`", v.label)));
            }
        }

        let mut seen_labels = HashSet::new();
        let mut seen_pairs = HashSet::new();
        let mut seen_ids = HashSet::new();
        let mut endpoints = Vec::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (epos, e) in edges.iter().enumerate() {
            if !seen_ids.insert(e.id) {
                return Err(malformed(format!("duplicate edge id {}", e.id)));
            }
            if !seen_labels.insert(e.label.as_str()) {
                return Err(malformed(format!("duplicate edge label `{}`", e.label)));
            }
            let pu = *position.get(&e.u).ok_or(Error::InvalidVertexId(e.u.0))?;
            let pv = *position.get(&e.v).ok_or(Error::InvalidVertexId(e.v.0))?;
            if pu == pv {
                return Err(malformed(format!("loop at `{}`", vertices[pu].label)));
            }
            let pair = (pu.min(pv), pu.max(pv));
            if !seen_pairs.insert(pair) {
                return Err(malformed(format!("parallel edge `{}`", e.label)));
            }
            endpoints.push(pair);
            adjacency[pu].push(pv);
            adjacency[pv].push(pu);
            incidence[pu].push(epos);
            incidence[pv].push(epos);
        }
        for list in adjacency.iter_mut().chain(incidence.iter_mut()) {
            list.sort_unstable();
        }

        Ok(Graph {
            vertices,
            edges,
            adjacency,
            incidence,
            endpoints,
            family,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn family(&self) -> Option<&FamilyDescriptor> {
        self.family.as_ref()
    }

    pub fn vertex_position(&self, id: VertexId) -> Option<usize> {
        self.vertices.binary_search_by_key(&id, |v| v.id).ok()
    }

    pub fn edge_position(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn vertex(&self, id: VertexId) -> Result<&Vertex> {
        self.vertex_position(id)
            .map(|p| &self.vertices[p])
            .ok_or(Error::InvalidVertexId(id.0))
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edge_position(id)
            .map(|p| &self.edges[p])
            .ok_or(Error::InvalidEdgeId(id.0))
    }

    pub fn edge_by_label(&self, label: &str) -> Result<EdgeId> {
        self.edges
            .iter()
            .find(|e| e.label == label)
            .map(|e| e.id)
            .ok_or_else(|| Error::UnknownEdgeLabel(label.to_owned()))
    }

    pub fn vertex_by_label(&self, label: &str) -> Result<VertexId> {
        self.vertices
            .iter()
            .find(|v| v.label == label)
            .map(|v| v.id)
            .ok_or_else(|| Error::UnknownVertexLabel(label.to_owned()))
    }

    /// Open neighbourhood N(v).
    pub fn neighborhood(&self, v: VertexId) -> Result<BTreeSet<VertexId>> {
        let pos = self.vertex_position(v).ok_or(Error::InvalidVertexId(v.0))?;
        Ok(self.adjacency[pos]
            .iter()
            .map(|&p| self.vertices[p].id)
            .collect())
    }

    pub(crate) fn neighbor_positions(&self, pos: usize) -> &[usize] {
        &self.adjacency[pos]
    }

    pub(crate) fn incident_edge_positions(&self, pos: usize) -> &[usize] {
        &self.incidence[pos]
    }

    pub(crate) fn endpoint_positions(&self, edge_pos: usize) -> (usize, usize) {
        self.endpoints[edge_pos]
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        let pos = self.vertex_position(v).ok_or(Error::InvalidVertexId(v.0))?;
        Ok(self.adjacency[pos].len())
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    pub fn vertex_labels(&self) -> Vec<String> {
        self.vertices.iter().map(|v| v.label.clone()).collect()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut colour: Vec<Option<bool>> = vec![None; self.vertex_count()];
        for start in 0..self.vertex_count() {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let cx = colour[x].unwrap();
                for &y in &self.adjacency[x] {
                    match colour[y] {
                        None => {
                            colour[y] = Some(!cx);
                            stack.push(y);
                        }
                        Some(cy) if cy == cx => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Deletes a vertex together with its incident edges. Surviving ids are unchanged.
    pub fn remove_vertex(&self, v: VertexId) -> Result<Graph> {
        self.vertex_position(v).ok_or(Error::InvalidVertexId(v.0))?;
        let vertices = self
            .vertices
            .iter()
            .filter(|x| x.id != v)
            .cloned()
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.u != v && e.v != v)
            .cloned()
            .collect();
        Graph::from_parts(vertices, edges, None)
    }

    /// Deletes a set of edges, keeping every vertex.
    pub fn remove_edges(&self, doomed: &[EdgeId]) -> Result<Graph> {
        for &e in doomed {
            self.edge(e)?;
        }
        let doomed: HashSet<_> = doomed.iter().copied().collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| !doomed.contains(&e.id))
            .cloned()
            .collect();
        Graph::from_parts(self.vertices.clone(), edges, None)
    }

    /// Disjoint union; the ids of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let vshift = self.vertices.last().map_or(0, |v| v.id.0 + 1);
        let eshift = self.edges.last().map_or(0, |e| e.id.0 + 1);
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|v| Vertex {
            id: VertexId(v.id.0 + vshift),
            label: v.label.clone(),
        }));
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            id: EdgeId(e.id.0 + eshift),
            u: VertexId(e.u.0 + vshift),
            v: VertexId(e.v.0 + vshift),
            label: e.label.clone(),
        }));
        Graph::from_parts(vertices, edges, None)
    }

    /// The edge set written as unordered pairs of vertex labels.
    pub fn labeled_edge_set(&self) -> BTreeSet<(String, String)> {
        self.endpoints
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (&self.vertices[a].label, &self.vertices[b].label);
                if x <= y {
                    (x.clone(), y.clone())
                } else {
                    (y.clone(), x.clone())
                }
            })
            .collect()
    }

    /// True when both graphs have the same vertex labels and the same
    /// adjacency between labels, i.e. the label correspondence is an isomorphism.
    pub fn same_labeled_structure(&self, other: &Graph) -> bool {
        let mine: BTreeSet<_> = self.vertices.iter().map(|v| &v.label).collect();
        let theirs: BTreeSet<_> = other.vertices.iter().map(|v| &v.label).collect();
        mine == theirs && self.labeled_edge_set() == other.labeled_edge_set()
    }

    /// Machine-readable form: `{vertices, edges, family, params}`.
    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .map(|v| json!({"id": v.id.0, "label": v.label}))
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| json!({"id": e.id.0, "u": e.u.0, "v": e.v.0, "label": e.label}))
            .collect();
        let (family, params) = match &self.family {
            Some(d) => (Value::from(d.family_name()), d.params_json()),
            None => (Value::Null, Value::Object(Default::default())),
        };
        json!({"vertices": vertices, "edges": edges, "family": family, "params": params})
    }

    pub fn to_dot(&self) -> String {
        let name = self.family.as_ref().map_or_else(
            || "G".to_owned(),
            |d| d.to_string().replace(['(', ')', ',', '='], "_"),
        );
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{name}\" {{");
        for v in &self.vertices {
            let _ = writeln!(out, "  {} [label=\"{}\"];", v.id.0, v.label);
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.u.0, e.v.0, e.label);
        }
        out.push_str("}\n");
        out
    }
}

/// Checks whether a bijection between edge labels of `g` and `h` is induced by
/// a graph isomorphism. Each vertex of `g` is sent to the vertex of `h` whose
/// incident edge set is the image of its own; the map must be a bijection and
/// carry the full edge relation across. Isolated vertices are matched by count.
pub fn isomorphic_under_edge_map(g: &Graph, h: &Graph, map: &BTreeMap<String, String>) -> bool {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    if map.len() != g.edge_count() {
        return false;
    }
    let h_pos: HashMap<&str, usize> = h
        .edges
        .iter()
        .enumerate()
        .map(|(p, e)| (e.label.as_str(), p))
        .collect();
    let mut edge_image = Vec::with_capacity(g.edge_count());
    for e in &g.edges {
        match map.get(&e.label).and_then(|l| h_pos.get(l.as_str())) {
            Some(&p) => edge_image.push(p),
            None => return false,
        }
    }
    let distinct: HashSet<_> = edge_image.iter().collect();
    if distinct.len() != edge_image.len() {
        return false;
    }

    // both ends of an isolated edge share an incidence set
    let mut h_by_incidence: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for p in (0..h.vertex_count()).rev() {
        if !h.incidence[p].is_empty() {
            h_by_incidence
                .entry(h.incidence[p].clone())
                .or_default()
                .push(p);
        }
    }
    let mut vertex_image = vec![usize::MAX; g.vertex_count()];
    let mut used = HashSet::new();
    let mut g_isolated = 0;
    for (p, incident) in g.incidence.iter().enumerate() {
        if incident.is_empty() {
            g_isolated += 1;
            continue;
        }
        let mut image: Vec<usize> = incident.iter().map(|&e| edge_image[e]).collect();
        image.sort_unstable();
        match h_by_incidence.get_mut(&image).and_then(|c| c.pop()) {
            Some(q) if used.insert(q) => vertex_image[p] = q,
            _ => return false,
        }
    }
    let h_isolated = (0..h.vertex_count())
        .filter(|&p| h.incidence[p].is_empty())
        .count();
    if g_isolated != h_isolated {
        return false;
    }
    g.endpoints.iter().enumerate().all(|(e, &(a, b))| {
        let (x, y) = (vertex_image[a], vertex_image[b]);
        let target = h.endpoints[edge_image[e]];
        (x.min(y), x.max(y)) == target
    })
}

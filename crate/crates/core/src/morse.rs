//! Element pairings, acyclicity checks, fold reductions and homotopy inference.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::complex::{aux_graph_xn, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::families::{lab1, lab2};
use crate::graph::{Graph, GraphBuilder, VertexId};

/// A set of cover pairs `(α, β)` with `β = α ∪ {x}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialPairing {
    pairs: Vec<(Face, Face)>,
}

impl PartialPairing {
    pub fn new() -> Self {
        Self::default()
    }

    /// Unchecked; see [`verify_partial_pairing`].
    pub fn from_pairs(pairs: Vec<(Face, Face)>) -> Self {
        PartialPairing { pairs }
    }

    pub fn pairs(&self) -> &[(Face, Face)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_paired(&self, face: Face) -> bool {
        self.pairs.iter().any(|&(a, b)| a == face || b == face)
    }
}

/// Unpaired faces grouped by dimension (−1 for the empty face).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CriticalCells {
    by_dimension: BTreeMap<i32, Vec<Face>>,
}

impl CriticalCells {
    pub fn from_faces<I: IntoIterator<Item = Face>>(faces: I) -> Self {
        let mut by_dimension: BTreeMap<i32, Vec<Face>> = BTreeMap::new();
        for f in faces {
            by_dimension.entry(f.dim()).or_default().push(f);
        }
        for v in by_dimension.values_mut() {
            v.sort_unstable();
            v.dedup();
        }
        CriticalCells { by_dimension }
    }

    pub fn by_dimension(&self) -> &BTreeMap<i32, Vec<Face>> {
        &self.by_dimension
    }

    pub fn counts(&self) -> BTreeMap<i32, usize> {
        self.by_dimension
            .iter()
            .map(|(&d, v)| (d, v.len()))
            .collect()
    }

    pub fn total(&self) -> usize {
        self.by_dimension.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    pub fn contains(&self, face: Face) -> bool {
        self.by_dimension
            .get(&face.dim())
            .is_some_and(|v| v.binary_search(&face).is_ok())
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.by_dimension.values().flatten().copied()
    }
}

/// Ordered ground-element labels to pair with, one element per step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingSchedule {
    elements: Vec<String>,
}

impl PairingSchedule {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(elements: I) -> Self {
        PairingSchedule {
            elements: elements.into_iter().map(Into::into).collect(),
        }
    }

    /// Parses a comma-separated list; commas inside braces belong to the
    /// label, so `a_1,b_{1,1}` has two entries.
    pub fn parse(text: &str) -> Self {
        let mut elements = Vec::new();
        let mut depth = 0i32;
        let mut current = String::new();
        for ch in text.chars() {
            match ch {
                '{' => depth += 1,
                '}' => depth -= 1,
                _ => {}
            }
            if ch == ',' && depth <= 0 {
                elements.push(std::mem::take(&mut current));
            } else {
                current.push(ch);
            }
        }
        elements.push(current);
        PairingSchedule {
            elements: elements
                .into_iter()
                .map(|s| s.trim().to_owned())
                .filter(|s| !s.is_empty())
                .collect(),
        }
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    /// Ground indices of the schedule in `c`.
    pub fn resolve(&self, c: &SimplicialComplex) -> Result<Vec<usize>> {
        let mut seen = HashSet::new();
        self.elements
            .iter()
            .map(|label| {
                if !seen.insert(label.as_str()) {
                    return Err(Error::DuplicateScheduleLabel(label.clone()));
                }
                c.ground_index(label)
                    .ok_or_else(|| Error::UnknownScheduleLabel(label.clone()))
            })
            .collect()
    }
}

impl fmt::Display for PairingSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.elements.join(","))
    }
}

/// Result of running a schedule of element pairings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingOutcome {
    pub pairing: PartialPairing,
    pub critical: CriticalCells,
    pub empty_paired: bool,
}

/// Runs element pairings in schedule order. At each step every surviving face
/// σ not containing the element x is paired with σ ∪ {x} when that face also
/// survives; paired faces are then removed. Survivors of the last step are
/// critical.
pub fn element_pairing_sequence(
    c: &SimplicialComplex,
    schedule: &PairingSchedule,
) -> Result<PairingOutcome> {
    let elements = schedule.resolve(c)?;
    if c.is_void() {
        return Err(Error::VoidComplex);
    }
    let faces = c.faces();
    let mut alive = vec![true; faces.len()];
    let mut pairs = Vec::new();
    for x in elements {
        let mut step = Vec::new();
        for (i, &sigma) in faces.iter().enumerate() {
            if !alive[i] || sigma.contains(x) {
                continue;
            }
            if let Some(j) = c.position(sigma.with(x)) {
                if alive[j] {
                    step.push((i, j));
                }
            }
        }
        for &(i, j) in &step {
            alive[i] = false;
            alive[j] = false;
            pairs.push((faces[i], faces[j]));
        }
    }
    let empty_paired = !alive[0];
    let critical = CriticalCells::from_faces(
        faces
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(&f, _)| f),
    );
    Ok(PairingOutcome {
        pairing: PartialPairing { pairs },
        critical,
        empty_paired,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingVerdict {
    pub violations: Vec<String>,
}

impl PairingVerdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every pair is a cover relation between faces of `c` and that
/// no face appears in two pairs.
pub fn verify_partial_pairing(c: &SimplicialComplex, p: &PartialPairing) -> PairingVerdict {
    let mut violations = Vec::new();
    let mut used = HashSet::new();
    for &(a, b) in p.pairs() {
        let describe = |f: Face| format!("{{{}}}", c.face_labels(f).join(","));
        if !c.contains(a) || !c.contains(b) {
            violations.push(format!(
                "({}, {}) uses a non-face",
                describe(a),
                describe(b)
            ));
        }
        if !a.is_subset(b) || b.len() != a.len() + 1 {
            violations.push(format!("({}, {}) is not a cover", describe(a), describe(b)));
        }
        for f in [a, b] {
            if !used.insert(f) {
                violations.push(format!("{} is paired more than once", describe(f)));
            }
        }
    }
    PairingVerdict { violations }
}

/// True iff the modified Hasse diagram (matched covers pointing up, all other
/// covers pointing down) has no directed cycle.
///
/// A directed cycle alternates between two adjacent dimensions, so each layer
/// is searched separately: a (d−1)-face σ leads to every other facet of its
/// partner φ(σ).
pub fn verify_acyclic(c: &SimplicialComplex, p: &PartialPairing) -> Result<bool> {
    let verdict = verify_partial_pairing(c, p);
    if !verdict.is_valid() {
        return Err(Error::IllegalPairing(verdict.violations.join("; ")));
    }
    let mut up: Vec<Option<Face>> = vec![None; c.len()];
    for &(a, b) in p.pairs() {
        up[c.position(a).expect("verified face")] = Some(b);
    }
    let Some(top) = c.dimension() else {
        return Ok(true);
    };
    for d in 0..=top {
        let lower = c.faces_of_dim(d - 1);
        // 0 = unvisited, 1 = on stack, 2 = finished
        let mut state = vec![0u8; lower.len()];
        let pos = |f: Face| c.position_in_dim(f).expect("facet of a face");
        let successors = |i: usize| -> Vec<usize> {
            match up[c.position(lower[i]).expect("own face")] {
                Some(beta) => beta
                    .boundary_faces()
                    .filter(|&s| s != lower[i])
                    .map(pos)
                    .collect(),
                None => Vec::new(),
            }
        };
        for start in 0..lower.len() {
            if state[start] != 0 {
                continue;
            }
            state[start] = 1;
            let mut stack = vec![(start, successors(start), 0usize)];
            while let Some((node, next, k)) = stack.last_mut() {
                if *k == next.len() {
                    state[*node] = 2;
                    stack.pop();
                    continue;
                }
                let s = next[*k];
                *k += 1;
                match state[s] {
                    1 => return Ok(false),
                    0 => {
                        state[s] = 1;
                        let succ = successors(s);
                        stack.push((s, succ, 0));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(true)
}

/// Deletes `w` when every neighbour of `v` is also a neighbour of `w`.
pub fn fold_reduce(g: &Graph, v: VertexId, w: VertexId) -> Result<Graph> {
    let label = |x: VertexId| g.vertex(x).map(|vx| vx.label.clone());
    if v == w {
        return Err(Error::FoldSameVertex(label(v)?, label(w)?));
    }
    let nv = g.neighborhood(v)?;
    let nw = g.neighborhood(w)?;
    if let Some(&bad) = nv.iter().find(|x| !nw.contains(x)) {
        return Err(Error::FoldPrecondition {
            v: label(v)?,
            w: label(w)?,
            offending: label(bad)?,
        });
    }
    g.remove_vertex(w)
}

/// Label-level form of [`fold_reduce`].
pub fn fold_reduce_labels(g: &Graph, v: &str, w: &str) -> Result<Graph> {
    fold_reduce(g, g.vertex_by_label(v)?, g.vertex_by_label(w)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoldStep {
    pub v: String,
    pub w: String,
    pub vertices_after: usize,
}

#[derive(Debug, Clone)]
pub struct FoldSequence {
    /// Every intermediate graph, starting with the auxiliary graph itself.
    pub graphs: Vec<Graph>,
    pub log: Vec<FoldStep>,
}

impl FoldSequence {
    pub fn result(&self) -> &Graph {
        self.graphs
            .last()
            .expect("sequence starts with the input graph")
    }
}

/// The three folds on the auxiliary graph of the 2×n ladder that delete
/// `b_{n-2}`, `c_{n-2}` and `a_{n-1}` (each against `a_n`), certified to
/// leave the auxiliary graph for n−2 plus the path `b_{n-1} – a_n – c_{n-1}`.
pub fn fold_sequence_grid(n: usize) -> Result<FoldSequence> {
    if n < 3 {
        return Err(Error::InvalidParameter {
            family: "fold-sequence",
            reason: format!("n must be at least 3, got {n}"),
        });
    }
    let v = lab1("a", n);
    let mut graphs = vec![aux_graph_xn(n)?];
    let mut log = Vec::new();
    for w in [lab1("b", n - 2), lab1("c", n - 2), lab1("a", n - 1)] {
        let next = fold_reduce_labels(graphs.last().unwrap(), &v, &w)?;
        log.push(FoldStep {
            v: v.clone(),
            w,
            vertices_after: next.vertex_count(),
        });
        graphs.push(next);
    }
    let mut p3 = GraphBuilder::new();
    let x = p3.add_vertex(lab1("b", n - 1));
    let y = p3.add_vertex(lab1("a", n));
    let z = p3.add_vertex(lab1("c", n - 1));
    p3.add_edge(x, y, "p3_1");
    p3.add_edge(y, z, "p3_2");
    let expected = aux_graph_xn(n - 2)?.disjoint_union(&p3.build()?)?;
    if !graphs.last().unwrap().same_labeled_structure(&expected) {
        return Err(Error::FoldCertificate(format!(
            "folded graph for n={n} differs from the n={} auxiliary graph plus a 3-path",
            n - 2
        )));
    }
    Ok(FoldSequence { graphs, log })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomotopyKind {
    Empty,
    Contractible,
    WedgeOfSpheres { dim: i32, count: usize },
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Evidence {
    ZeroCriticalCells,
    SingleDimCriticalCells,
    HomologyConsistent,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomotopyTypeReport {
    pub kind: HomotopyKind,
    pub evidence: Evidence,
}

impl HomotopyTypeReport {
    pub fn to_json(&self) -> Value {
        let mut v = match self.kind {
            HomotopyKind::Empty => json!({"kind": "Empty"}),
            HomotopyKind::Contractible => json!({"kind": "Contractible"}),
            HomotopyKind::WedgeOfSpheres { dim, count } => {
                json!({"kind": "WedgeOfSpheres", "dim": dim, "count": count})
            }
            HomotopyKind::Undetermined => json!({"kind": "Undetermined"}),
        };
        v["evidence"] = serde_json::to_value(self.evidence).expect("unit enum");
        v
    }
}

impl fmt::Display for HomotopyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyKind::Empty => f.write_str("empty"),
            HomotopyKind::Contractible => f.write_str("contractible"),
            HomotopyKind::WedgeOfSpheres { dim, count: 1 } => write!(f, "S^{dim}"),
            HomotopyKind::WedgeOfSpheres { dim, count } => write!(f, "wedge of {count} S^{dim}"),
            HomotopyKind::Undetermined => f.write_str("undetermined"),
        }
    }
}

/// Reads off a homotopy type from the critical cells of an acyclic pairing,
/// claiming nothing beyond a single critical dimension.
pub fn infer_homotopy_type(cc: &CriticalCells, empty_paired: bool) -> HomotopyTypeReport {
    let undetermined = HomotopyTypeReport {
        kind: HomotopyKind::Undetermined,
        evidence: Evidence::None,
    };
    if !empty_paired {
        return if cc.is_empty() {
            HomotopyTypeReport {
                kind: HomotopyKind::Empty,
                evidence: Evidence::None,
            }
        } else {
            undetermined
        };
    }
    let counts = cc.counts();
    match counts.len() {
        0 => HomotopyTypeReport {
            kind: HomotopyKind::Contractible,
            evidence: Evidence::ZeroCriticalCells,
        },
        1 => {
            let (&dim, &count) = counts.iter().next().unwrap();
            if dim >= 0 {
                HomotopyTypeReport {
                    kind: HomotopyKind::WedgeOfSpheres { dim, count },
                    evidence: Evidence::SingleDimCriticalCells,
                }
            } else {
                undetermined
            }
        }
        _ => undetermined,
    }
}

/// Alternating face count of `c` (empty face included) against that of the
/// critical cells.
pub fn morse_euler_check(c: &SimplicialComplex, cc: &CriticalCells, empty_paired: bool) -> bool {
    let sign = |f: &Face| if f.dim().rem_euclid(2) == 0 { 1i64 } else { -1 };
    if c.is_void() || empty_paired == cc.contains(Face::EMPTY) {
        return false;
    }
    let all: i64 = c.faces().iter().map(sign).sum();
    let critical: i64 = cc.faces().map(|f| sign(&f)).sum();
    all == critical
}

/// Serializable summary of a schedule run.
#[derive(Debug, Clone)]
pub struct MorseReport {
    pub schedule: PairingSchedule,
    pub paired_count: usize,
    pub critical: Vec<(i32, Vec<Vec<String>>)>,
    pub empty_paired: bool,
    pub acyclic: bool,
    pub homotopy: HomotopyTypeReport,
}

impl MorseReport {
    pub fn to_json(&self) -> Value {
        let critical: Vec<Value> = self
            .critical
            .iter()
            .map(|(dim, faces)| json!({"dim": dim, "faces": faces}))
            .collect();
        json!({
            "schedule": self.schedule.elements(),
            "paired_count": self.paired_count,
            "critical": critical,
            "empty_paired": self.empty_paired,
            "acyclic": self.acyclic,
            "homotopy": self.homotopy.to_json(),
        })
    }

    pub fn critical_count(&self) -> usize {
        self.critical.iter().map(|(_, f)| f.len()).sum()
    }
}

/// Runs the schedule, re-verifies legality and acyclicity, and infers the
/// homotopy type (left undetermined if the pairing is cyclic).
pub fn run_schedule(c: &SimplicialComplex, schedule: &PairingSchedule) -> Result<MorseReport> {
    let outcome = element_pairing_sequence(c, schedule)?;
    let acyclic = verify_acyclic(c, &outcome.pairing)?;
    let homotopy = if acyclic {
        infer_homotopy_type(&outcome.critical, outcome.empty_paired)
    } else {
        HomotopyTypeReport {
            kind: HomotopyKind::Undetermined,
            evidence: Evidence::None,
        }
    };
    Ok(MorseReport {
        schedule: schedule.clone(),
        paired_count: outcome.pairing.len(),
        critical: outcome
            .critical
            .by_dimension()
            .iter()
            .map(|(&d, faces)| (d, faces.iter().map(|&f| c.face_labels(f)).collect()))
            .collect(),
        empty_paired: outcome.empty_paired,
        acyclic,
        homotopy,
    })
}

/// `a_1, a_3, …, a_n` for odd n; `a_1, b_1, a_3, b_3, …, a_{n-1}, b_{n-1}` for even n.
pub fn grid_schedule(n: usize) -> PairingSchedule {
    let mut labels = Vec::new();
    for i in (1..=n).step_by(2) {
        labels.push(lab1("a", i));
        if n.is_multiple_of(2) {
            labels.push(lab1("b", i));
        }
    }
    PairingSchedule::new(labels)
}

/// The predicted lone critical cell `{b_1, b_3, …, b_{n-1}}` for even n.
pub fn grid_even_critical_labels(n: usize) -> Vec<String> {
    (1..n).step_by(2).map(|i| lab1("b", i)).collect()
}

/// `a_1, b_{1,1}, c_{2,n-2}` for even n, `a_1, b_{1,1}, c_{2,n-1}` for odd n.
pub fn even_tiling_schedule(n: usize) -> PairingSchedule {
    let last = if n.is_multiple_of(2) { n - 2 } else { n - 1 };
    PairingSchedule::new([lab1("a", 1), lab2("b", 1, 1), lab2("c", 2, last)])
}

/// `a_1, b_{1,1}, c_{4,n-1}` for the simple odd arrangement, taken as stated.
pub fn odd_simple_schedule(n: usize) -> PairingSchedule {
    PairingSchedule::new([lab1("a", 1), lab2("b", 1, 1), lab2("c", 4, n - 1)])
}

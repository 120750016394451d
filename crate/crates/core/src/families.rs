//! Labeled graph families: ladders, grids, cycles, paths and polygonal line tilings.
//!
//! Labels follow one convention throughout: single-index names are written
//! `a_3`, double-index names `b_{2,1}`. Vertex and edge ids are assigned in a
//! fixed left-to-right scan, upper before lower.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, GraphBuilder, VertexId};

pub(crate) fn lab1(prefix: &str, i: usize) -> String {
    format!("{prefix}_{i}")
}

pub(crate) fn lab2(prefix: &str, i: usize, j: usize) -> String {
    format!("{prefix}_{{{i},{j}}}")
}

/// A graph family together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyDescriptor {
    #[serde(rename = "grid2")]
    Grid2xN {
        n: usize,
    },
    #[serde(rename = "grid")]
    GridMxN {
        m: usize,
        n: usize,
    },
    Cycle {
        m: usize,
    },
    Path {
        m: usize,
    },
    EvenTiling {
        n: usize,
        k: usize,
    },
    #[serde(rename = "odd-simple")]
    OddTilingSimple {
        n: usize,
        k: usize,
    },
    #[serde(rename = "odd-alternate")]
    OddTilingAlternate {
        n: usize,
        k: usize,
    },
    #[serde(rename = "triangles")]
    TriangleTiling {
        k: usize,
    },
}

impl FamilyDescriptor {
    pub fn family_name(&self) -> &'static str {
        match self {
            Self::Grid2xN { .. } => "grid2",
            Self::GridMxN { .. } => "grid",
            Self::Cycle { .. } => "cycle",
            Self::Path { .. } => "path",
            Self::EvenTiling { .. } => "even-tiling",
            Self::OddTilingSimple { .. } => "odd-simple",
            Self::OddTilingAlternate { .. } => "odd-alternate",
            Self::TriangleTiling { .. } => "triangles",
        }
    }

    pub fn params_json(&self) -> Value {
        match *self {
            Self::Grid2xN { n } => json!({"n": n}),
            Self::GridMxN { m, n } => json!({"m": m, "n": n}),
            Self::Cycle { m } | Self::Path { m } => json!({"m": m}),
            Self::EvenTiling { n, k }
            | Self::OddTilingSimple { n, k }
            | Self::OddTilingAlternate { n, k } => json!({"n": n, "k": k}),
            Self::TriangleTiling { k } => json!({"k": k}),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidParameter {
                family: self.family_name(),
                reason: reason.to_owned(),
            })
        };
        match *self {
            Self::Grid2xN { n } if n < 1 => bad("n must be at least 1"),
            Self::GridMxN { m, n } if m < 1 || n < 1 => bad("m and n must be at least 1"),
            Self::Cycle { m } if m < 3 => bad("m must be at least 3"),
            Self::Path { m } if m < 1 => bad("m must be at least 1"),
            Self::EvenTiling { n, k } if n < 3 || k < 2 => bad("requires n >= 3 and k >= 2"),
            Self::OddTilingSimple { n, k } | Self::OddTilingAlternate { n, k }
                if n < 2 || k < 2 =>
            {
                bad("requires n >= 2 and k >= 2")
            }
            Self::TriangleTiling { k } if k < 2 => bad("k must be at least 2"),
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        match *self {
            Self::Grid2xN { n } => grid_2xn(n),
            Self::GridMxN { m, n } => grid_mxn(m, n),
            Self::Cycle { m } => cycle(m),
            Self::Path { m } => path(m),
            Self::EvenTiling { n, k } => even_tiling(n, k),
            Self::OddTilingSimple { n, k } => odd_tiling_simple(n, k),
            Self::OddTilingAlternate { n, k } => odd_tiling_alternate(n, k),
            Self::TriangleTiling { k } => triangle_tiling(k),
        }
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Grid2xN { n } => write!(f, "grid2(n={n})"),
            Self::GridMxN { m, n } => write!(f, "grid(m={m},n={n})"),
            Self::Cycle { m } => write!(f, "cycle(m={m})"),
            Self::Path { m } => write!(f, "path(m={m})"),
            Self::EvenTiling { n, k } => write!(f, "even-tiling(n={n},k={k})"),
            Self::OddTilingSimple { n, k } => write!(f, "odd-simple(n={n},k={k})"),
            Self::OddTilingAlternate { n, k } => write!(f, "odd-alternate(n={n},k={k})"),
            Self::TriangleTiling { k } => write!(f, "triangles(k={k})"),
        }
    }
}

/// The 2×n ladder. Vertices `p_{i,j}` (column i, row j with 1 = lower),
/// verticals `a_i`, upper horizontals `b_j`, lower horizontals `c_j`.
pub fn grid_2xn(n: usize) -> Result<Graph> {
    let desc = FamilyDescriptor::Grid2xN { n };
    desc.validate()?;
    let mut b = GraphBuilder::new().family(desc);
    let mut upper = Vec::with_capacity(n);
    let mut lower = Vec::with_capacity(n);
    for i in 1..=n {
        upper.push(b.add_vertex(lab2("p", i, 2)));
        lower.push(b.add_vertex(lab2("p", i, 1)));
    }
    for i in 0..n {
        b.add_edge(lower[i], upper[i], lab1("a", i + 1));
        if i + 1 < n {
            b.add_edge(upper[i], upper[i + 1], lab1("b", i + 1));
            b.add_edge(lower[i], lower[i + 1], lab1("c", i + 1));
        }
    }
    b.build()
}

/// The m×n grid, vertices in row-major order starting from the bottom row.
///
/// Vertex `(r, c)` is labelled `p_{c,r}` so that `grid_mxn(2, n)` carries the
/// same vertex labels as [`grid_2xn`]. Horizontal edges are `h_{r,c}`
/// (joining columns c and c+1 in row r), vertical edges `v_{r,c}` (joining
/// rows r and r+1 in column c).
pub fn grid_mxn(m: usize, n: usize) -> Result<Graph> {
    let desc = FamilyDescriptor::GridMxN { m, n };
    desc.validate()?;
    let mut b = GraphBuilder::new().family(desc);
    let mut ids = vec![vec![VertexId(0); n]; m];
    for (r, row) in ids.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            *slot = b.add_vertex(lab2("p", c + 1, r + 1));
        }
    }
    for r in 0..m {
        for c in 0..n {
            if c + 1 < n {
                b.add_edge(ids[r][c], ids[r][c + 1], lab2("h", r + 1, c + 1));
            }
            if r + 1 < m {
                b.add_edge(ids[r][c], ids[r + 1][c], lab2("v", r + 1, c + 1));
            }
        }
    }
    b.build()
}

/// Edge-label correspondence carrying `grid_mxn(2, n)` onto `grid_2xn(n)`.
pub fn grid_mxn_to_grid_2xn_labels(n: usize) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    for c in 1..=n {
        map.insert(lab2("v", 1, c), lab1("a", c));
        if c < n {
            map.insert(lab2("h", 1, c), lab1("c", c));
            map.insert(lab2("h", 2, c), lab1("b", c));
        }
    }
    map
}

/// The cycle C_m on vertices `1..m`. Edges are lettered `a, b, c, …` going
/// around (edge `a` joins 1 and 2); past 26 edges they become `e_i`.
pub fn cycle(m: usize) -> Result<Graph> {
    let desc = FamilyDescriptor::Cycle { m };
    desc.validate()?;
    let mut b = GraphBuilder::new().family(desc);
    let v: Vec<_> = (1..=m).map(|i| b.add_vertex(i.to_string())).collect();
    for i in 0..m {
        let label = if m <= 26 {
            char::from(b'a' + i as u8).to_string()
        } else {
            lab1("e", i + 1)
        };
        b.add_edge(v[i], v[(i + 1) % m], label);
    }
    b.build()
}

/// The path P_m on vertices `1..m` with edges `e_1..e_{m-1}`.
pub fn path(m: usize) -> Result<Graph> {
    let desc = FamilyDescriptor::Path { m };
    desc.validate()?;
    let mut b = GraphBuilder::new().family(desc);
    let v: Vec<_> = (1..=m).map(|i| b.add_vertex(i.to_string())).collect();
    for i in 1..m {
        b.add_edge(v[i - 1], v[i], lab1("e", i));
    }
    b.build()
}

/// Line tiling of k copies of a 2n-gon glued along parallel edges `a_1..a_{k+1}`.
///
/// Polygon j has upper path `u_{j,1} … u_{j,n-1}, u_{j+1,1}` with edges
/// `b_{j,1..n-1}` and the mirrored lower path with `l_{j,t}` / `c_{j,t}`.
pub fn even_tiling(n: usize, k: usize) -> Result<Graph> {
    let desc = FamilyDescriptor::EvenTiling { n, k };
    desc.validate()?;
    build_even_tiling(n, k, Some(desc))
}

pub(crate) fn build_even_tiling(
    n: usize,
    k: usize,
    desc: Option<FamilyDescriptor>,
) -> Result<Graph> {
    let sides = vec![(n - 1, n - 1); k];
    build_strip(&sides, desc)
}

/// Glues polygons in a row. `sides[p]` gives the number of (upper, lower)
/// boundary edges of polygon p+1 between its two attaching edges. A side
/// with zero edges identifies the attaching edges' endpoints on that side.
fn build_strip(sides: &[(usize, usize)], desc: Option<FamilyDescriptor>) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    if let Some(d) = desc {
        b = b.family(d);
    }
    let polygons = sides.len();
    let mut top = b.add_vertex(lab2("u", 1, 1));
    let mut bottom = b.add_vertex(lab2("l", 1, 1));
    for (idx, &(up, low)) in sides.iter().enumerate() {
        let p = idx + 1;
        b.add_edge(top, bottom, lab1("a", p));
        let mut upper = vec![top];
        let mut lower = vec![bottom];
        for t in 2..=up.max(low) {
            if t <= up {
                upper.push(b.add_vertex(lab2("u", p, t)));
            }
            if t <= low {
                lower.push(b.add_vertex(lab2("l", p, t)));
            }
        }
        let next_top = if up == 0 {
            top
        } else {
            b.add_vertex(lab2("u", p + 1, 1))
        };
        let next_bottom = if low == 0 {
            bottom
        } else {
            b.add_vertex(lab2("l", p + 1, 1))
        };
        upper.push(next_top);
        lower.push(next_bottom);
        for t in 1..=up {
            b.add_edge(upper[t - 1], upper[t], lab2("b", p, t));
        }
        for t in 1..=low {
            b.add_edge(lower[t - 1], lower[t], lab2("c", p, t));
        }
        top = next_top;
        bottom = next_bottom;
    }
    b.add_edge(top, bottom, lab1("a", polygons + 1));
    b.build()
}

/// Simple arrangement of 2k (2n+1)-gons: every polygon has n upper and n−1
/// lower boundary edges. Attaching edges are indexed globally `a_1..a_{2k+1}`.
pub fn odd_tiling_simple(n: usize, k: usize) -> Result<Graph> {
    let desc = FamilyDescriptor::OddTilingSimple { n, k };
    desc.validate()?;
    build_strip(&vec![(n, n - 1); 2 * k], Some(desc))
}

/// Alternate arrangement: odd-position polygons have n upper / n−1 lower
/// edges, even-position polygons n−1 upper / n lower.
pub fn odd_tiling_alternate(n: usize, k: usize) -> Result<Graph> {
    let desc = FamilyDescriptor::OddTilingAlternate { n, k };
    desc.validate()?;
    build_strip(&alternate_sides(n, k), Some(desc))
}

fn alternate_sides(n: usize, k: usize) -> Vec<(usize, usize)> {
    (0..2 * k)
        .map(|p| if p % 2 == 0 { (n, n - 1) } else { (n - 1, n) })
        .collect()
}

/// Zigzag strip of 2k triangles: the alternate arrangement with n = 1.
/// Odd triangles carry an upper edge `b_{p,1}`, even ones a lower edge `c_{p,1}`.
pub fn triangle_tiling(k: usize) -> Result<Graph> {
    let desc = FamilyDescriptor::TriangleTiling { k };
    desc.validate()?;
    build_strip(&alternate_sides(1, k), Some(desc))
}

/// Labels `a_2, a_4, …, a_{2k}` of the even-indexed attaching edges.
pub fn even_attach_labels(k: usize) -> Vec<String> {
    (1..=k).map(|i| lab1("a", 2 * i)).collect()
}

/// Ids of the even-indexed attaching edges of an odd or triangle tiling.
pub fn even_attach_edges(g: &Graph, k: usize) -> Result<Vec<EdgeId>> {
    even_attach_labels(k)
        .iter()
        .map(|l| g.edge_by_label(l))
        .collect()
}

/// Edge correspondence from the alternate tiling with the `a_{2i}` removed
/// onto `even_tiling(2n, k)`: polygons 2i−1 and 2i merge into polygon i.
pub fn alternate_to_even_labels(n: usize, k: usize) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    for i in 1..=k {
        let (odd, even) = (2 * i - 1, 2 * i);
        map.insert(lab1("a", odd), lab1("a", i));
        for t in 1..=n {
            map.insert(lab2("b", odd, t), lab2("b", i, t));
        }
        for t in 1..n {
            map.insert(lab2("b", even, t), lab2("b", i, n + t));
        }
        for t in 1..n {
            map.insert(lab2("c", odd, t), lab2("c", i, t));
        }
        for t in 1..=n {
            map.insert(lab2("c", even, t), lab2("c", i, n - 1 + t));
        }
    }
    map.insert(lab1("a", 2 * k + 1), lab1("a", k + 1));
    map
}

/// Edge correspondence from the triangle strip with the `a_{2i}` removed onto
/// `grid_2xn(k + 1)`.
pub fn triangles_to_grid_labels(k: usize) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    for i in 1..=k {
        map.insert(lab1("a", 2 * i - 1), lab1("a", i));
        map.insert(lab2("b", 2 * i - 1, 1), lab1("b", i));
        map.insert(lab2("c", 2 * i, 1), lab1("c", i));
    }
    map.insert(lab1("a", 2 * k + 1), lab1("a", k + 1));
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::isomorphic_under_edge_map;

    fn endpoint_labels(g: &Graph, edge: &str) -> (String, String) {
        let e = g.edge(g.edge_by_label(edge).unwrap()).unwrap();
        (
            g.vertex(e.u).unwrap().label.clone(),
            g.vertex(e.v).unwrap().label.clone(),
        )
    }

    /// Walks the boundary cycle of polygon `p` from its labels and returns its length.
    fn polygon_cycle_len(g: &Graph, p: usize) -> usize {
        let prefix_b = format!("b_{{{p},");
        let prefix_c = format!("c_{{{p},");
        let mut labels = vec![lab1("a", p), lab1("a", p + 1)];
        labels.extend(
            g.edges()
                .iter()
                .filter(|e| e.label.starts_with(&prefix_b) || e.label.starts_with(&prefix_c))
                .map(|e| e.label.clone()),
        );
        // every vertex touched by the polygon's edges must have degree 2 within it
        let mut degree: BTreeMap<String, usize> = BTreeMap::new();
        for l in &labels {
            let (x, y) = endpoint_labels(g, l);
            *degree.entry(x).or_default() += 1;
            *degree.entry(y).or_default() += 1;
        }
        assert!(
            degree.values().all(|&d| d == 2),
            "polygon {p} is not a cycle"
        );
        assert_eq!(degree.len(), labels.len());
        labels.len()
    }

    #[test]
    fn grid_2xn_shape() {
        let g = grid_2xn(2).unwrap();
        assert_eq!(g.vertex_count(), 4);
        let mut labels = g.edge_labels();
        labels.sort();
        assert_eq!(labels, ["a_1", "a_2", "b_1", "c_1"]);
        let g = grid_2xn(5).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 13));
        let g = grid_2xn(3).unwrap();
        assert_eq!(
            endpoint_labels(&g, "a_2"),
            ("p_{2,2}".to_owned(), "p_{2,1}".to_owned())
        );
        assert_eq!(
            endpoint_labels(&g, "b_2"),
            ("p_{2,2}".to_owned(), "p_{3,2}".to_owned())
        );
        assert!(grid_2xn(0).is_err());
    }

    #[test]
    fn grid_2xn_invariants() {
        for n in 1..=12 {
            let g = grid_2xn(n).unwrap();
            assert_eq!(g.vertex_count(), 2 * n);
            assert_eq!(g.edge_count(), 3 * n - 2);
            assert!(g.is_bipartite());
            assert!(g.max_degree() <= 3);
            assert_eq!(g, grid_2xn(n).unwrap());
        }
    }

    #[test]
    fn grid_mxn_counts_and_ladder_isomorphism() {
        let g = grid_mxn(3, 3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 12));
        let g = grid_mxn(4, 4).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (16, 24));
        assert!(grid_mxn(0, 3).is_err());
        for n in 1..=8 {
            let g = grid_mxn(2, n).unwrap();
            let h = grid_2xn(n).unwrap();
            assert!(isomorphic_under_edge_map(
                &g,
                &h,
                &grid_mxn_to_grid_2xn_labels(n)
            ));
            assert!(g.same_labeled_structure(&h));
        }
    }

    #[test]
    fn cycle_labels() {
        let g = cycle(6).unwrap();
        assert_eq!(endpoint_labels(&g, "a"), ("1".to_owned(), "2".to_owned()));
        assert_eq!(endpoint_labels(&g, "f"), ("1".to_owned(), "6".to_owned()));
        let g = cycle(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        assert!(cycle(2).is_err());
        let v1 = cycle(6).unwrap().vertex_by_label("1").unwrap();
        let nb: Vec<_> = cycle(6)
            .unwrap()
            .neighborhood(v1)
            .unwrap()
            .into_iter()
            .map(|v| v.0 + 1)
            .collect();
        assert_eq!(nb, [2, 6]);
    }

    #[test]
    fn path_shape() {
        let g = path(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        let g = path(1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        assert!(path(0).is_err());
        let g = path(3).unwrap();
        let mid = g.vertex_by_label("2").unwrap();
        assert_eq!(g.neighborhood(mid).unwrap().len(), 2);
    }

    #[test]
    fn neighborhood_in_ladder() {
        let g = grid_2xn(2).unwrap();
        let v = g.vertex_by_label("p_{1,1}").unwrap();
        let nb: Vec<String> = g
            .neighborhood(v)
            .unwrap()
            .into_iter()
            .map(|w| g.vertex(w).unwrap().label.clone())
            .collect();
        assert_eq!(nb, ["p_{1,2}", "p_{2,1}"]);
        assert!(g.neighborhood(VertexId(99)).is_err());
        assert!(g.edge_by_label("z_9").is_err());
    }

    #[test]
    fn even_tiling_counts_and_faces() {
        let hexagon = build_even_tiling(3, 1, None).unwrap();
        assert_eq!((hexagon.vertex_count(), hexagon.edge_count()), (6, 6));
        assert_eq!(polygon_cycle_len(&hexagon, 1), 6);
        for n in 3..=6 {
            for k in 2..=4 {
                let g = even_tiling(n, k).unwrap();
                assert_eq!(g.vertex_count(), 2 * (n - 1) * k + 2);
                assert_eq!(g.edge_count(), (2 * n - 1) * k + 1);
                for p in 1..=k {
                    assert_eq!(polygon_cycle_len(&g, p), 2 * n);
                }
            }
        }
        let g = even_tiling(3, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 11));
        assert_eq!(
            endpoint_labels(&g, "c_{2,2}"),
            ("l_{2,2}".to_owned(), "l_{3,1}".to_owned())
        );
        assert!(even_tiling(2, 2).is_err());
        assert!(even_tiling(3, 1).is_err());
    }

    #[test]
    fn odd_simple_shape() {
        let g = odd_tiling_simple(2, 2).unwrap();
        assert_eq!(g.vertex_count(), 14);
        for p in 1..=4 {
            assert_eq!(polygon_cycle_len(&g, p), 5);
        }
        let g = odd_tiling_simple(3, 2).unwrap();
        for p in 1..=4 {
            let upper = g
                .edges()
                .iter()
                .filter(|e| e.label.starts_with(&format!("b_{{{p},")))
                .count();
            let lower = g
                .edges()
                .iter()
                .filter(|e| e.label.starts_with(&format!("c_{{{p},")))
                .count();
            assert_eq!((upper, lower), (3, 2));
        }
        assert!(odd_tiling_simple(1, 2).is_err());
    }

    #[test]
    fn odd_alternate_shape_and_reduction() {
        for n in 2..=4 {
            for k in 2..=3 {
                let g = odd_tiling_alternate(n, k).unwrap();
                assert_eq!(g.vertex_count() % 2, 0);
                for p in 1..=2 * k {
                    assert_eq!(polygon_cycle_len(&g, p), 2 * n + 1);
                }
                let trimmed = g.remove_edges(&even_attach_edges(&g, k).unwrap()).unwrap();
                let target = even_tiling(2 * n, k).unwrap();
                assert!(isomorphic_under_edge_map(
                    &trimmed,
                    &target,
                    &alternate_to_even_labels(n, k)
                ));
            }
        }
    }

    #[test]
    fn triangle_strip_shape_and_reduction() {
        let g = triangle_tiling(2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 9));
        for k in 2..=6 {
            let g = triangle_tiling(k).unwrap();
            assert_eq!(g.vertex_count(), 2 * k + 2);
            for p in 1..=2 * k {
                assert_eq!(polygon_cycle_len(&g, p), 3);
            }
            let trimmed = g.remove_edges(&even_attach_edges(&g, k).unwrap()).unwrap();
            let target = grid_2xn(k + 1).unwrap();
            assert!(isomorphic_under_edge_map(
                &trimmed,
                &target,
                &triangles_to_grid_labels(k)
            ));
        }
    }

    #[test]
    fn odd_vertex_counts_even() {
        for n in 2..=5 {
            for k in 2..=4 {
                assert_eq!(odd_tiling_simple(n, k).unwrap().vertex_count() % 2, 0);
                assert_eq!(odd_tiling_alternate(n, k).unwrap().vertex_count() % 2, 0);
            }
        }
    }

    #[test]
    fn descriptor_round_trip_through_json() {
        let d = FamilyDescriptor::OddTilingSimple { n: 2, k: 3 };
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"family":"odd-simple","n":2,"k":3}"#);
        assert_eq!(serde_json::from_str::<FamilyDescriptor>(&s).unwrap(), d);
    }
}

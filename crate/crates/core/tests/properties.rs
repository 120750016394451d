use std::collections::BTreeSet;

use morsetilings_core::*;
use proptest::prelude::*;

/// A simple graph on `n` vertices from an edge-presence bitmask over all pairs.
fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut b = GraphBuilder::new();
    let ids: Vec<_> = (0..n).map(|i| b.add_vertex(format!("v{i}"))).collect();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits >> k & 1 == 1 {
                b.add_edge(ids[i], ids[j], format!("e{i}{j}"));
            }
            k += 1;
        }
    }
    b.build().unwrap()
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=7, any::<u64>()).prop_map(|(n, bits)| graph_from_bits(n, bits))
}

fn endpoints(g: &Graph, p: usize) -> (usize, usize) {
    let e = &g.edges()[p];
    (
        g.vertex_position(e.u).unwrap(),
        g.vertex_position(e.v).unwrap(),
    )
}

fn is_matching_mask(g: &Graph, mask: u64) -> bool {
    let mut used = 0u64;
    for p in (0..g.edge_count()).filter(|p| mask >> p & 1 == 1) {
        let (u, v) = endpoints(g, p);
        if used >> u & 1 == 1 || used >> v & 1 == 1 {
            return false;
        }
        used |= 1 << u | 1 << v;
    }
    true
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    (3usize..=7, proptest::collection::vec(any::<u8>(), 1..6)).prop_map(|(n, raw)| {
        let ground = (0..n).map(|i| format!("x{i}")).collect();
        let facets = raw
            .iter()
            .map(|&r| Face::from_bits(u64::from(r) & ((1 << n) - 1)));
        SimplicialComplex::from_facets(ground, facets, DEFAULT_FACE_CAP).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn matching_complex_faces_are_extendable_matchings(g in small_graph()) {
        let c = perfect_matching_complex(&g).unwrap();
        let m = g.edge_count();
        prop_assume!(m <= 14);
        let perfect: Vec<u64> = (0u64..1 << m)
            .filter(|&s| is_matching_mask(&g, s) && 2 * s.count_ones() as usize == g.vertex_count())
            .collect();
        prop_assert_eq!(c.is_void(), perfect.is_empty());
        for s in 0u64..1 << m {
            let expected = is_matching_mask(&g, s) && perfect.iter().any(|&p| p & s == s);
            prop_assert_eq!(c.contains(Face::from_bits(s)), expected);
        }
        if !perfect.is_empty() {
            let bad: Vec<u64> = enumerate_bad_matchings(&g).unwrap().iter()
                .map(|b| b.edges().iter().fold(0, |acc, e| acc | 1 << g.edge_position(*e).unwrap()))
                .collect();
            for s in (0u64..1 << m).filter(|&s| is_matching_mask(&g, s)) {
                let avoids = bad.iter().all(|&b| b & s != b);
                prop_assert_eq!(c.contains(Face::from_bits(s)), avoids);
            }
        }
    }

    #[test]
    fn independence_complex_is_independent_sets(g in small_graph()) {
        let c = independence_complex(&g).unwrap();
        let n = g.vertex_count();
        let independent = |s: u64| (0..g.edge_count()).all(|p| {
            let (u, v) = endpoints(&g, p);
            s >> u & 1 == 0 || s >> v & 1 == 0
        });
        let expected = (0u64..1 << n).filter(|&s| independent(s)).count();
        prop_assert_eq!(c.len(), expected);
        prop_assert!(c.faces().iter().all(|f| independent(f.bits())));
    }

    #[test]
    fn schedules_give_acyclic_pairings_consistent_with_homology(
        c in random_complex(),
        order in proptest::collection::vec(any::<u8>(), 1..7),
    ) {
        let mut seen = BTreeSet::new();
        let labels: Vec<String> = order.iter()
            .map(|&o| c.ground()[o as usize % c.ground().len()].clone())
            .filter(|l| seen.insert(l.clone()))
            .collect();
        let out = element_pairing_sequence(&c, &PairingSchedule::new(labels)).unwrap();
        prop_assert!(verify_partial_pairing(&c, &out.pairing).is_valid());
        prop_assert!(verify_acyclic(&c, &out.pairing).unwrap());
        prop_assert!(morse_euler_check(&c, &out.critical, out.empty_paired));
        prop_assert_eq!(out.pairing.len() * 2 + out.critical.total(), c.len());
        let r = reduced_betti(&c);
        prop_assert_eq!(Some(r.euler_characteristic()), reduced_euler_characteristic(&c));
        let h = infer_homotopy_type(&out.critical, out.empty_paired);
        prop_assert!(homology_consistent_with(&r, &h));
        // critical cells bound the Betti numbers (weak Morse inequalities)
        for (d, &b) in r.reduced_betti.iter().enumerate() {
            let cells = out.critical.counts().get(&(d as i32)).copied().unwrap_or(0);
            prop_assert!(b as usize <= cells);
        }
    }

    #[test]
    fn folds_preserve_homology(g in small_graph()) {
        let verts: Vec<VertexId> = g.vertices().iter().map(|v| v.id).collect();
        let fold = verts.iter().flat_map(|&v| verts.iter().map(move |&w| (v, w)))
            .find(|&(v, w)| v != w
                && g.neighborhood(v).unwrap().is_subset(&g.neighborhood(w).unwrap()));
        if let Some((v, w)) = fold {
            let folded = fold_reduce(&g, v, w).unwrap();
            prop_assert_eq!(folded.vertex_count(), g.vertex_count() - 1);
            prop_assert!(folded.vertex(v).is_ok());
            let before = reduced_betti(&independence_complex(&g).unwrap());
            let after = reduced_betti(&independence_complex(&folded).unwrap());
            prop_assert!(before.same_homology(&after), "{:?} vs {:?}", before, after);
        }
        for &v in &verts {
            for &w in &verts {
                if v != w && !g.neighborhood(v).unwrap().is_subset(&g.neighborhood(w).unwrap()) {
                    let rejected = matches!(fold_reduce(&g, v, w), Err(Error::FoldPrecondition { .. }));
                    prop_assert!(rejected);
                }
            }
        }
    }
}

#[test]
fn families_round_trip_through_descriptors() {
    let descriptors = [
        FamilyDescriptor::Grid2xN { n: 4 },
        FamilyDescriptor::GridMxN { m: 3, n: 4 },
        FamilyDescriptor::EvenTiling { n: 3, k: 2 },
        FamilyDescriptor::OddTilingSimple { n: 2, k: 2 },
        FamilyDescriptor::OddTilingAlternate { n: 2, k: 2 },
        FamilyDescriptor::TriangleTiling { k: 3 },
    ];
    for d in descriptors {
        let g = d.build().unwrap();
        assert_eq!(g.family(), Some(&d));
        let json = g.to_json();
        assert_eq!(json["family"], d.family_name());
        assert_eq!(json["vertices"].as_array().unwrap().len(), g.vertex_count());
        let c = perfect_matching_complex(&g).unwrap();
        assert!(c.facets().iter().all(|f| 2 * f.len() == g.vertex_count()));
    }
}

#[test]
fn even_tiling_counts() {
    for n in 3..=5 {
        for k in 2..=3 {
            let g = even_tiling(n, k).unwrap();
            assert_eq!(g.vertex_count(), 2 * (n - 1) * k + 2);
            assert_eq!(g.edge_count(), (2 * n - 1) * k + 1);
            assert!(g.is_bipartite());
        }
    }
}

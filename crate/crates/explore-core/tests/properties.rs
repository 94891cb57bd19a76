//! Randomized structural properties over the instance generators.

use proptest::prelude::*;

use explore_core::families::{random_instance, RandomFamily, WeightRange};
use explore_core::graph::{EdgeKey, Graph, GraphClass};
use explore_core::weight::Weight;

fn arb_family() -> impl Strategy<Value = RandomFamily> {
    prop_oneof![
        Just(RandomFamily::Tree),
        Just(RandomFamily::Unicyclic),
        Just(RandomFamily::Cactus),
    ]
}

fn arb_instance() -> impl Strategy<Value = Graph> {
    (arb_family(), 0u32..40, any::<u64>()).prop_map(|(family, extra, seed)| {
        let n = family.min_vertices() + extra;
        random_instance(family, n, &WeightRange::default(), seed)
            .unwrap()
            .graph
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_format_round_trips(g in arb_instance()) {
        let text = g.to_text();
        let back = Graph::from_text(&text).unwrap();
        prop_assert_eq!(text, back.to_text());
        prop_assert_eq!(g.vertex_count(), back.vertex_count());
        prop_assert_eq!(g.classify(), back.classify());
    }

    #[test]
    fn distances_are_symmetric_and_triangular(g in arb_instance(), picks in any::<[u8; 3]>()) {
        let vs = g.vertices();
        let pick = |b: u8| vs[b as usize % vs.len()];
        let (u, v, w) = (pick(picks[0]), pick(picks[1]), pick(picks[2]));
        let d = |a, b| g.distance(a, b).unwrap();
        prop_assert_eq!(d(u, v), d(v, u));
        prop_assert_eq!(d(u, u), Weight::from_integer(0.into()));
        prop_assert!(d(u, w) <= d(u, v) + d(v, w));
        // The reported path realizes the reported distance.
        let (path, len) = g.shortest_path(u, w).unwrap();
        let mut along = Weight::from_integer(0.into());
        for pair in path.windows(2) {
            along += g.edge_weight(pair[0], pair[1]).unwrap();
        }
        prop_assert_eq!(along, len.clone());
        prop_assert_eq!(d(u, w), len);
    }

    #[test]
    fn decomposition_partitions_the_edges(g in arb_instance()) {
        prop_assume!(g.classify() != GraphClass::General);
        let dec = g.cycle_decomposition().unwrap();
        let mut seen: Vec<EdgeKey> = dec.bridges.iter().map(|e| e.key()).collect();
        for c in &dec.cycles {
            prop_assert!(c.vertices.len() >= 3);
            prop_assert_eq!(c.vertices.len(), c.edges.len());
            for e in &c.edges {
                seen.push(e.key());
            }
            // Cycle edges touch consecutive vertices.
            for (i, e) in c.edges.iter().enumerate() {
                let a = c.vertices[i];
                let b = c.vertices[(i + 1) % c.vertices.len()];
                prop_assert_eq!(e.key(), EdgeKey::new(a, b));
            }
        }
        seen.sort();
        let mut all: Vec<EdgeKey> = g.edges().iter().map(|e| e.key()).collect();
        all.sort();
        prop_assert_eq!(seen.windows(2).filter(|w| w[0] == w[1]).count(), 0,
            "no edge appears twice");
        prop_assert_eq!(seen, all);
    }

    #[test]
    fn overlong_edges_are_heavier_than_their_complement(g in arb_instance()) {
        prop_assume!(g.classify() != GraphClass::General);
        for c in &g.cycle_decomposition().unwrap().cycles {
            let max = c.edges.iter().map(|e| e.weight.clone()).max().unwrap();
            match c.long_edge() {
                Some(e) => {
                    prop_assert_eq!(e.weight.clone(), max.clone());
                    prop_assert!(&e.weight + &e.weight > c.total_length);
                    // Unique: every other edge is lighter than the rest of
                    // the cycle combined.
                    for other in c.edges.iter().filter(|o| o.key() != e.key()) {
                        prop_assert!(&other.weight + &other.weight < c.total_length);
                    }
                }
                None => prop_assert!(&max + &max <= c.total_length),
            }
        }
    }
}

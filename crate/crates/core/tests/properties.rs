use proptest::prelude::*;

use schnyder_core::planar::{format_tri, generate_stacked, parse_tri, randomize_flips};
use schnyder_core::routing::{
    next_hop_local, next_hop_sector, route, verify_all_pairs, LocalView, Outcome, Strategy,
};
use schnyder_core::schnyder::{
    compute_drawing, compute_realizer, format_bary, parse_bary, region_counts,
    region_counts_oracle, validate_drawing, validate_enclosing_triangle, validate_planarity,
    validate_realizer, validate_three_wedge,
};
use schnyder_core::vrac::{
    check_saturated, classify_sector, extract_saturated, format_sat, parse_sat,
    saturated_equals_realizer, sign_triple,
};
use schnyder_core::{Drawing, Realizer, Triangulation, VertexId};

fn instance(n: usize, seed: u64, flips: usize) -> (Triangulation, Realizer, Drawing) {
    let t = randomize_flips(&generate_stacked(n, seed).unwrap(), flips, seed);
    let r = compute_realizer(&t).unwrap();
    let d = compute_drawing(&t, &r).unwrap();
    (t, r, d)
}

fn params() -> impl proptest::strategy::Strategy<Value = (usize, u64, usize)> {
    (4usize..40, any::<u64>(), 0usize..400)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn triangulation_counts((n, seed, flips) in params()) {
        let t = randomize_flips(&generate_stacked(n, seed).unwrap(), flips, seed);
        prop_assert!(t.validate().is_valid());
        prop_assert_eq!(t.edge_count(), 3 * n - 6);
        prop_assert_eq!(t.face_count(), 2 * n - 4);
        prop_assert_eq!(parse_tri(&format_tri(&t)).unwrap(), t);
    }

    #[test]
    fn schnyder_pipeline_is_valid((n, seed, flips) in params()) {
        let (t, r, d) = instance(n, seed, flips);
        prop_assert!(validate_realizer(&t, &r).is_valid());
        prop_assert!(validate_drawing(&t, &d).is_valid());
        prop_assert_eq!(region_counts(&t, &r), region_counts_oracle(&t, &r));
        let wedges = validate_three_wedge(&t, &r, &d);
        prop_assert!(wedges.is_valid());
        prop_assert!(wedges.notes.is_empty());
        prop_assert!(validate_enclosing_triangle(&t, &r, &d).is_valid());
        prop_assert!(validate_planarity(&t, &d).is_valid());
        prop_assert_eq!(parse_bary(&format_bary(&d)).unwrap(), d);
    }

    #[test]
    fn coordinate_rows_sum_to_the_denominator((n, seed, flips) in params()) {
        let (_, _, d) = instance(n, seed, flips);
        prop_assert_eq!(d.denom(), 2 * n as i64 - 5);
        for row in d.coords() {
            prop_assert!(row.iter().all(|&x| x >= 0));
            prop_assert_eq!(row.iter().sum::<i64>(), d.denom());
        }
    }

    #[test]
    fn sign_antisymmetry_and_sector_complement(
        a in prop::array::uniform3(0i64..20),
        b in prop::array::uniform3(0i64..20),
    ) {
        // project onto a common sum so the rows are valid coordinates
        let s = 60;
        let u = [a[0], a[1], s - a[0] - a[1]];
        let t = [b[0], b[1], s - b[0] - b[1]];
        prop_assume!(u != t);
        prop_assert_eq!(sign_triple(u, t).unwrap().negate(), sign_triple(t, u).unwrap());
        let fwd = classify_sector(u, t).unwrap();
        let back = classify_sector(t, u).unwrap();
        if !fwd.boundary {
            prop_assert_eq!(back.sector, fwd.sector.opposite());
        }
    }

    #[test]
    fn saturated_graph_is_the_realizer((n, seed, flips) in params()) {
        let (t, r, d) = instance(n, seed, flips);
        let sg = extract_saturated(&t, &d).unwrap();
        prop_assert!(check_saturated(&t, &d, &sg).is_valid());
        prop_assert!(saturated_equals_realizer(&sg, &r).is_empty());
        prop_assert_eq!(parse_sat(&format_sat(&sg), n).unwrap(), sg.clone());
        // the odd sectors of every inner vertex hold exactly its three parents
        for u in t.internal_vertices() {
            let odd: Vec<VertexId> = t.neighbors(u).iter().copied().filter(|&w| {
                classify_sector(d.coord(u), d.coord(w)).unwrap().sector.is_odd()
            }).collect();
            prop_assert_eq!(odd.len(), 3);
        }
    }

    #[test]
    fn decisions_only_see_the_local_view((n, seed, flips) in params(), pick in any::<(usize, usize)>()) {
        let (t, _, d) = instance(n, seed, flips);
        let sg = extract_saturated(&t, &d).unwrap();
        let (u, target) = (VertexId::new(pick.0 % n), VertexId::new(pick.1 % n));
        prop_assume!(u != target);
        // rebuild the view from scratch, with nothing else of the graph reachable
        let nb: Vec<(VertexId, [i64; 3])> = t.neighbors(u).iter().map(|&w| (w, d.coord(w))).collect();
        let view = LocalView { at: (u, d.coord(u)), neighbours: &nb, target: (target, d.coord(target)), sat: sg.entries(u) };
        for s in [Strategy::SectorGreedy, Strategy::SectorCandidates] {
            prop_assert_eq!(next_hop_local(&view, s), next_hop_sector(u, target, &t, &d, &sg, s));
        }
    }

    #[test]
    fn routes_are_deterministic_simple_walks((n, seed, flips) in params(), pick in any::<(usize, usize)>()) {
        let (t, _, d) = instance(n, seed, flips);
        let sg = extract_saturated(&t, &d).unwrap();
        let (s, target) = (VertexId::new(pick.0 % n), VertexId::new(pick.1 % n));
        prop_assume!(s != target);
        for strategy in Strategy::ALL {
            let a = route(&t, &d, &sg, s, target, strategy, n).unwrap();
            prop_assert_eq!(&a, &route(&t, &d, &sg, s, target, strategy, n).unwrap());
            for w in a.hops.windows(2) {
                prop_assert!(t.is_adjacent(w[0], w[1]));
            }
            prop_assert_eq!(a.outcome == Outcome::Delivered, *a.hops.last().unwrap() == target);
            if a.outcome == Outcome::Delivered {
                prop_assert!(a.is_simple());
                prop_assert!(a.hop_count() < n);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sector_greedy_delivers_everywhere((n, seed, flips) in params()) {
        let (t, _, d) = instance(n, seed, flips);
        let sg = extract_saturated(&t, &d).unwrap();
        let report = verify_all_pairs(&t, &d, &sg, Strategy::SectorGreedy);
        prop_assert_eq!(report.delivered, n * (n - 1));
        prop_assert_eq!(report.non_simple, 0);
        let eu = verify_all_pairs(&t, &d, &sg, Strategy::EuclideanGreedy);
        prop_assert_eq!(eu.distance_audit_failures, 0);
        prop_assert_eq!(eu.delivered + eu.failed, eu.pairs_tested);
    }

    #[test]
    fn swapped_inner_vertices_are_detected((n, seed, flips) in (6usize..30, any::<u64>(), 0usize..300), pick in any::<(usize, usize)>()) {
        let (t, r, mut d) = instance(n, seed, flips);
        let (a, b) = (3 + pick.0 % (n - 3), 3 + pick.1 % (n - 3));
        prop_assume!(a != b);
        d.coords_mut().swap(a, b);
        let caught = !validate_three_wedge(&t, &r, &d).is_valid()
            || !validate_enclosing_triangle(&t, &r, &d).is_valid()
            || !validate_planarity(&t, &d).is_valid();
        prop_assert!(caught);
    }
}

use invarr::arrangement::{
    chromatic_polynomial, count_acyclic_orientations, distance_enumerator, inversion_graph, regions, Graph,
};
use invarr::oracle::{
    acyclic_orientations_brute, bruhat_down_set, contains_pattern_naive, rook_placements_backtrack,
    weak_interval_by_filter,
};
use invarr::orders::{
    bruhat_interval, bruhat_leq, code_monotone_check, product_q_formula, weak_interval, weak_leq,
    witness_231_reduction,
};
use invarr::perm::{factorial, permutations};
use invarr::rook::{complement_row_freedom, rook_count, southwest_diagram};
use invarr::verify::{emit_report, sweep, Depth, ReportFormat, SweepConfig};
use invarr::{InversionSet, Pattern, PatternBundle, Permutation};
use proptest::prelude::*;

fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}

fn all_patterns(max_len: usize) -> Vec<Pattern> {
    (1..=max_len).flat_map(permutations).map(|p| Pattern::new(p).unwrap()).collect()
}

#[test]
fn code_sum_equals_inversions() {
    for n in 1..=7 {
        for w in permutations(n) {
            let set = w.inversion_set();
            assert_eq!(w.lehmer_code().sum(), set.len(), "{w}");
            assert_eq!(set.is_empty(), w.is_identity(), "{w}");
            assert_eq!(set.len() == n * (n - 1) / 2, w == Permutation::longest(n), "{w}");
        }
    }
}

#[test]
fn valid_inversion_sets_number_n_factorial() {
    for n in 1..=5 {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        let mut valid = 0u64;
        for mask in 0u32..(1 << pairs.len()) {
            let mut s = InversionSet::empty(n);
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    s.insert(i, j);
                }
            }
            if s.is_inversion_set() {
                valid += 1;
            }
        }
        assert_eq!(valid, factorial(n), "n={n}");
        assert!(permutations(n).all(|w| w.inversion_set().is_inversion_set()));
    }
}

#[test]
fn pattern_search_matches_subsequence_scan() {
    let upto6 = all_patterns(6);
    for n in 1..=6 {
        for w in permutations(n) {
            for p in &upto6 {
                assert_eq!(w.contains_pattern(p), contains_pattern_naive(&w, p.as_permutation()), "{w} {p}");
            }
        }
    }
    let mut short = all_patterns(4);
    short.extend(PatternBundle::HlssFour.patterns());
    for w in permutations(7) {
        for p in &short {
            assert_eq!(w.contains_pattern(p), contains_pattern_naive(&w, p.as_permutation()), "{w} {p}");
        }
    }
}

#[test]
fn pattern_containment_respects_reverse_complement() {
    let patterns = all_patterns(5);
    for n in 1..=6 {
        for w in permutations(n) {
            let wrc = w.reverse_complement();
            for p in &patterns {
                let prc = Pattern::new(p.as_permutation().reverse_complement()).unwrap();
                assert_eq!(w.contains_pattern(p), wrc.contains_pattern(&prc), "{w} {p}");
            }
        }
    }
}

#[test]
fn weak_implies_bruhat_and_code_monotone() {
    for n in 1..=6 {
        let all: Vec<_> = permutations(n).collect();
        for u in &all {
            for w in &all {
                if weak_leq(u, w).unwrap() {
                    assert!(bruhat_leq(u, w).unwrap(), "{u} {w}");
                    assert!(code_monotone_check(u, w).unwrap(), "{u} {w}");
                }
            }
        }
    }
}

#[test]
fn weak_bfs_matches_filter() {
    for n in 1..=6 {
        for w in permutations(n) {
            let bfs = weak_interval(&w).unwrap();
            assert_eq!((bfs.size, bfs.poincare.clone()), weak_interval_by_filter(&w).unwrap(), "{w}");
            assert_eq!(bfs.poincare.degree(), w.inv());
            assert_eq!(bfs.poincare.coeff(0), 1);
            assert_eq!(bfs.poincare.eval_at_one().unwrap(), bfs.size);
        }
    }
}

#[test]
fn dominance_matches_chain_closure() {
    for n in 1..=5 {
        let all: Vec<_> = permutations(n).collect();
        for w in &all {
            let down = bruhat_down_set(w);
            for u in &all {
                assert_eq!(bruhat_leq(u, w).unwrap(), down.contains(u), "{u} <= {w}");
            }
            let interval = bruhat_interval(w).unwrap();
            assert_eq!(interval.size, down.len() as u64);
            assert_eq!(interval.poincare.degree(), w.inv());
        }
    }
}

#[test]
fn product_formula_and_strictness() {
    let p231 = pat("231");
    for n in 1..=7 {
        for w in permutations(n) {
            let weak = weak_interval(&w).unwrap();
            let prod = w.code_product().unwrap();
            if w.contains_pattern(&p231) {
                assert!(weak.size < prod, "{w}");
                let red = witness_231_reduction(&w).unwrap();
                assert!(code_monotone_check(&red.reduced, &w).unwrap(), "{w}");
                assert!(!weak_leq(&red.reduced, &w).unwrap(), "{w}");
                let (i, j, k) = red.triple;
                assert!(i < j && k == j + 1);
                assert!(w.at(k) < w.at(i) && w.at(i) < w.at(j));
            } else {
                assert_eq!(weak.poincare, product_q_formula(&w).unwrap(), "{w}");
                assert!(witness_231_reduction(&w).is_none());
            }
        }
    }
}

#[test]
fn deletion_contraction_matches_brute_force_on_small_graphs() {
    for n in 1..=5 {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e))
                .unwrap();
            assert_eq!(count_acyclic_orientations(&g).unwrap(), acyclic_orientations_brute(&g).unwrap(), "{:?}", g.edges());
            // chi(k) counts proper colourings: chi(1) is 1 iff edgeless
            let at_one: i128 = chromatic_polynomial(&g).iter().sum();
            assert_eq!(at_one, i128::from(g.edge_count() == 0));
        }
    }
}

#[test]
fn regions_equal_acyclic_orientations() {
    for n in 1..=6 {
        for w in permutations(n) {
            let ao = count_acyclic_orientations(&inversion_graph(&w)).unwrap();
            let regs = regions(&w).unwrap();
            assert_eq!(regs.len() as u64, ao, "{w}");
            assert_eq!(regs.distance_enumerator().eval_at_one().unwrap(), ao);
        }
    }
    // every 7th permutation of S_7
    for w in permutations(7).step_by(7) {
        assert_eq!(regions(&w).unwrap().len() as u64, count_acyclic_orientations(&inversion_graph(&w)).unwrap());
    }
}

#[test]
fn inverse_has_isomorphic_inversion_graph() {
    for n in 1..=7 {
        for w in permutations(n) {
            let g = inversion_graph(&w);
            let relabelled = g.relabel(|v| w.at(v)).unwrap();
            assert_eq!(relabelled, inversion_graph(&w.inverse()), "{w}");
            assert_eq!(
                count_acyclic_orientations(&g).unwrap(),
                count_acyclic_orientations(&inversion_graph(&w.inverse())).unwrap()
            );
        }
    }
}

#[test]
fn braid_arrangement_distance_is_inversion_count() {
    for n in 1..=6 {
        let w0 = Permutation::longest(n);
        assert_eq!(distance_enumerator(&w0).unwrap(), weak_interval(&w0).unwrap().poincare);
    }
}

#[test]
fn distance_enumerator_matches_bruhat_iff_smooth() {
    let smooth = PatternBundle::Smooth.patterns();
    for n in 1..=6 {
        for w in permutations(n) {
            let same = distance_enumerator(&w).unwrap() == bruhat_interval(&w).unwrap().poincare;
            assert_eq!(same, w.avoids_all(&smooth), "{w}");
        }
    }
}

#[test]
fn rook_identities() {
    let p312 = pat("312");
    for n in 1..=7 {
        for w in permutations(n) {
            let rk = rook_count(&w).unwrap();
            assert_eq!(rk, count_acyclic_orientations(&inversion_graph(&w)).unwrap(), "{w}");
            let prod = w.code_product().unwrap();
            assert!(prod <= rk);
            let avoids = !w.contains_pattern(&p312);
            assert_eq!(prod == rk, avoids, "{w}");
            let diagram = southwest_diagram(&w);
            if avoids {
                assert!(diagram.is_right_justified_ferrers(), "{w}");
            }
            let code = w.lehmer_code();
            for i in 1..=n {
                let c = code.entries()[i - 1] as usize;
                assert_eq!(diagram.row_len(i), n - i - c);
                assert_eq!(complement_row_freedom(&w)[i - 1], c + i);
            }
        }
    }
}

#[test]
fn permanent_matches_backtracking() {
    for n in 1..=6 {
        for w in permutations(n) {
            let free = southwest_diagram(&w).complement();
            assert_eq!(free.permanent().unwrap(), rook_placements_backtrack(&free), "{w}");
            assert_eq!(rook_count(&w).unwrap(), rook_placements_backtrack(&free));
        }
    }
}

#[test]
fn sweep_class_counts_and_longest_element() {
    for n in 1..=6 {
        let report = sweep(&SweepConfig::new(n, Depth::Polys)).unwrap();
        assert!(report.violations.is_empty(), "n={n}: {:?}", report.violations.first());
        assert_eq!(report.class_counts["re_eq_wk"], report.class_counts["wk_eq_br"]);
        assert_eq!(report.class_counts["re_eq_wk"], report.class_counts["avoids_231_312"]);
        let w0 = report.records.last().unwrap();
        assert_eq!(w0.w, Permutation::longest(n));
        let nf = factorial(n);
        assert_eq!((w0.wk, w0.br, w0.ao, w0.prod), (nf, nf, nf, nf));
    }
}

#[test]
fn reports_are_deterministic_across_parallelism() {
    let mut one = SweepConfig::new(5, Depth::WithRegionOracle);
    let mut four = one;
    four.parallelism = 4;
    one.parallelism = 1;
    let a = emit_report(&sweep(&one).unwrap(), ReportFormat::Json);
    let b = emit_report(&sweep(&four).unwrap(), ReportFormat::Json);
    assert_eq!(a, b);
    assert_eq!(a, emit_report(&sweep(&one).unwrap(), ReportFormat::Json));
}

#[test]
fn json_record_schema() {
    let report = sweep(&SweepConfig::new(3, Depth::WithRegionOracle)).unwrap();
    let json: serde_json::Value = serde_json::from_slice(&emit_report(&report, ReportFormat::Json)).unwrap();
    assert_eq!(json["violations"], serde_json::json!([]));
    let records = json["records"].as_array().unwrap();
    assert_eq!(records.len(), 6);
    // field order as emitted
    let raw = serde_json::to_string(&report.records[0]).unwrap();
    let fields = [
        "w", "inv", "code", "prod", "wk", "br", "ao", "rk", "re", "avoids_231_312", "avoids_four",
        "avoids_3412_4231", "weak_poly", "bruhat_poly", "product_poly", "distance_poly",
    ];
    let positions: Vec<usize> = fields.iter().map(|f| raw.find(&format!("\"{f}\":")).unwrap()).collect();
    assert!(positions.windows(2).all(|p| p[0] < p[1]), "{raw}");
    assert_eq!(records[0].as_object().unwrap().len(), fields.len());
    assert_eq!(records[5]["w"], serde_json::json!([3, 2, 1]));
    assert_eq!(records[5]["weak_poly"], serde_json::json!([1, 2, 2, 1]));

    let counts_only = sweep(&SweepConfig::new(3, Depth::Counts)).unwrap();
    let json: serde_json::Value = serde_json::from_slice(&emit_report(&counts_only, ReportFormat::Json)).unwrap();
    assert!(json["records"][0]["re"].is_null());
    assert!(json["records"][0]["distance_poly"].is_null());
}

fn permutation_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle())
        .prop_map(|word| Permutation::new(word).unwrap())
}

proptest! {
    #[test]
    fn display_parses_back(w in permutation_strategy(14)) {
        prop_assert_eq!(w.to_string().parse::<Permutation>().unwrap(), w);
    }

    #[test]
    fn inverse_is_an_involution(w in permutation_strategy(14)) {
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert_eq!(w.inverse().inv(), w.inv());
        prop_assert_eq!(Permutation::from_lex_rank(w.len(), w.lex_rank()).unwrap(), w);
    }

    #[test]
    fn code_sums_to_inversions(w in permutation_strategy(20)) {
        prop_assert_eq!(w.lehmer_code().sum(), w.inv());
        prop_assert_eq!(w.inversion_set().len(), w.inv());
        prop_assert!(w.code_product().is_ok());
    }

    #[test]
    fn weak_below_implies_bruhat_below(u in permutation_strategy(9), seed in any::<u64>()) {
        // an element of [id, u] in weak order, reached by stripping descents
        let mut v = u.clone();
        let mut s = seed;
        while !v.is_identity() && s % 3 != 0 {
            let pos = v.inverse();
            if let Some(i) = (1..v.len()).find(|&i| pos.at(i) > pos.at(i + 1)) {
                v = v.swap_values(i);
            }
            s /= 3;
        }
        prop_assert!(weak_leq(&v, &u).unwrap());
        prop_assert!(bruhat_leq(&v, &u).unwrap());
        prop_assert!(code_monotone_check(&v, &u).unwrap());
    }

    #[test]
    fn rook_count_bounds_hold_at_larger_n(w in permutation_strategy(10)) {
        let rk = rook_count(&w).unwrap();
        let prod = w.code_product().unwrap();
        prop_assert!(prod <= rk);
        prop_assert_eq!(rk, count_acyclic_orientations(&inversion_graph(&w)).unwrap());
        prop_assert!(weak_interval(&w).unwrap().size <= prod);
    }
}

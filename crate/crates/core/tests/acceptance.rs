//! Acceptance gate. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails. Run with `--nocapture` to see the table.

use std::time::{Duration, Instant};

use invarr::arrangement::{count_acyclic_orientations, distance_enumerator, inversion_graph, regions};
use invarr::oracle::{
    acyclic_orientations_brute, bruhat_down_set, rook_placements_backtrack, seeded_random_graphs,
    weak_interval_by_filter, RANDOM_GRAPH_COUNT, RANDOM_GRAPH_SEED,
};
use invarr::orders::{bruhat_leq, code_monotone_check, weak_interval, weak_leq, witness_231_reduction, BruhatTable};
use invarr::perm::{factorial, permutations};
use invarr::rook::{rook_count, southwest_diagram};
use invarr::verify::{sweep, Depth, StatRecord, SweepConfig};
use invarr::{Pattern, PatternBundle, Permutation};

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn run(id: u32, title: &'static str, limit: Option<Duration>, body: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, mut detail) = body();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    if !in_time {
        detail.push_str(&format!("; exceeded time limit {:?}", limit.unwrap()));
    }
    let outcome = Outcome { id, title, passed: ok && in_time, detail, elapsed };
    println!(
        "[{}] AC-{:02} {}: {} ({:.3?})",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.id,
        outcome.title,
        outcome.detail,
        outcome.elapsed
    );
    outcome
}

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}

fn ao(w: &Permutation) -> u64 {
    count_acyclic_orientations(&inversion_graph(w)).unwrap()
}

/// Checks `lhs <= rhs` everywhere with equality exactly on `avoiders`.
fn bound_with_equality_iff<'a>(
    records: &'a [StatRecord],
    lhs: impl Fn(&StatRecord) -> u64,
    rhs: impl Fn(&StatRecord) -> u64,
    avoids: impl Fn(&StatRecord) -> bool,
) -> (bool, String) {
    let mut bad: Vec<&'a Permutation> = Vec::new();
    let mut equal = 0;
    for r in records {
        let (a, b) = (lhs(r), rhs(r));
        if a == b {
            equal += 1;
        }
        if a > b || (a == b) != avoids(r) {
            bad.push(&r.w);
        }
    }
    let first: Vec<String> = bad.iter().take(5).map(|w| w.to_string()).collect();
    (
        bad.is_empty(),
        format!("{} permutations, {equal} equalities, {} failures {first:?}", records.len(), bad.len()),
    )
}

#[test]
fn acceptance_criteria() {
    let mut outcomes = Vec::new();

    outcomes.push(run(1, "Figure-1 reproduction ao(25134) = rk(25134) = 16", Some(Duration::from_millis(1)), || {
        let w = p("25134");
        let (a, r) = (ao(&w), rook_count(&w).unwrap());
        (a == 16 && r == 16, format!("ao={a} rk={r}"))
    }));

    outcomes.push(run(2, "braid baseline re(w0) = n!", Some(Duration::from_secs(10)), || {
        let mut ok = true;
        let mut notes = Vec::new();
        for n in 3..=7 {
            let w0 = Permutation::longest(n);
            let by_ao = ao(&w0);
            let by_regions = (n <= 6).then(|| regions(&w0).unwrap().len() as u64);
            ok &= by_ao == factorial(n) && by_regions.is_none_or(|r| r == factorial(n));
            notes.push(format!("n={n}: ao={by_ao} regions={by_regions:?}"));
        }
        (ok, notes.join(", "))
    }));

    outcomes.push(run(3, "identity chain ao = rk (n<=7) = regions (S_6)", Some(Duration::from_secs(60)), || {
        let mut checked = 0;
        let mut bad = Vec::new();
        for n in 1..=7 {
            for w in permutations(n) {
                let (a, r) = (ao(&w), rook_count(&w).unwrap());
                let regions_ok = n != 6 || regions(&w).unwrap().len() as u64 == a;
                if a != r || !regions_ok {
                    bad.push(w.to_string());
                }
                checked += 1;
            }
        }
        (bad.is_empty(), format!("{checked} permutations, failures {bad:?}"))
    }));

    // criteria 4-9 share one exhaustive sweep of S_7
    let start = Instant::now();
    let mut config = SweepConfig::new(7, Depth::Polys);
    config.parallelism = std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1);
    let s7 = sweep(&config).expect("sweep of S_7");
    let sweep_time = start.elapsed();
    let records = &s7.records;
    let (p231, p312) = (pat("231"), pat("312"));
    let four = PatternBundle::HlssFour.patterns();

    outcomes.push(run(4, "re >= wk on S_7, equality iff {231,312}-avoiding", Some(Duration::from_secs(300)), || {
        let (ok, detail) = bound_with_equality_iff(records, |r| r.wk, |r| r.ao, |r| r.w.avoids_all(&[p231.clone(), p312.clone()]));
        let sweep_in_time = sweep_time < Duration::from_secs(300);
        (ok && sweep_in_time && records.len() == 5040, format!("{detail}; sweep took {sweep_time:.2?}"))
    }));

    outcomes.push(run(5, "wk <= prod(c_i+1) on S_7, equality iff 231-avoiding", None, || {
        bound_with_equality_iff(records, |r| r.wk, |r| r.prod, |r| !r.w.contains_pattern(&p231))
    }));

    outcomes.push(run(6, "prod(c_i+1) <= rk on S_7, equality iff 312-avoiding", None, || {
        bound_with_equality_iff(records, |r| r.prod, |r| r.rk, |r| !r.w.contains_pattern(&p312))
    }));

    outcomes.push(run(7, "re <= br on S_7, equality iff {4231,35142,42513,351624}-avoiding", None, || {
        let (ok, detail) = bound_with_equality_iff(records, |r| r.ao, |r| r.br, |r| r.w.avoids_all(&four));
        // the length-6 pattern must actually bite at n = 7
        let only_351624 = records
            .iter()
            .filter(|r| r.w.contains_pattern(&pat("351624")) && r.w.avoids_all(&four[..3]))
            .count();
        (ok && only_351624 > 0, format!("{detail}; {only_351624} contain only 351624"))
    }));

    outcomes.push(run(8, "wk = br iff {231,312}-avoiding on S_7", None, || {
        let bad: Vec<String> = records
            .iter()
            .filter(|r| (r.wk == r.br) != r.w.avoids_all(&[p231.clone(), p312.clone()]) || r.wk > r.br)
            .map(|r| r.w.to_string())
            .collect();
        (bad.is_empty(), format!("{} permutations, failures {bad:?}", records.len()))
    }));

    outcomes.push(run(9, "weak Poincaré polynomial = prod [c_i+1]_q for 231-avoiders in S_7", None, || {
        let avoiders: Vec<&StatRecord> = records.iter().filter(|r| !r.w.contains_pattern(&p231)).collect();
        let bad: Vec<String> = avoiders
            .iter()
            .filter(|r| r.weak_poly.is_none() || r.weak_poly != r.product_poly)
            .map(|r| r.w.to_string())
            .collect();
        (bad.is_empty() && avoiders.len() == 429, format!("{} avoiders, failures {bad:?}", avoiders.len()))
    }));

    outcomes.push(run(10, "#{re = wk} = 2^(n-1) for n = 1..7, two ways", None, || {
        let mut ok = true;
        let mut notes = Vec::new();
        for n in 1..=7 {
            let depth = if n <= 6 { Depth::WithRegionOracle } else { Depth::Counts };
            let report = sweep(&SweepConfig::new(n, depth)).unwrap();
            let by_stats = report.records.iter().filter(|r| r.re_or_ao() == r.wk).count() as u64;
            let by_patterns = permutations(n).filter(|w| w.avoids_all(&[p231.clone(), p312.clone()])).count() as u64;
            let expected = 1u64 << (n - 1);
            ok &= by_stats == expected && by_patterns == expected;
            notes.push(format!("n={n}: {by_stats}/{by_patterns}"));
        }
        (ok, notes.join(", "))
    }));

    outcomes.push(run(11, "region distance enumerator = Bruhat polynomial iff {3412,4231}-avoiding on S_6", Some(Duration::from_secs(120)), || {
        let smooth = PatternBundle::Smooth.patterns();
        let table = BruhatTable::new(6).unwrap();
        let mut bad = Vec::new();
        let mut equal = 0;
        for w in permutations(6) {
            let same = distance_enumerator(&w).unwrap() == table.interval(&table.key(&w)).poincare;
            equal += same as u32;
            if same != w.avoids_all(&smooth) {
                bad.push(w.to_string());
            }
        }
        (bad.is_empty(), format!("{equal} equalities, failures {bad:?}"))
    }));

    outcomes.push(run(12, "oracle equivalences", None, || {
        let mut notes = Vec::new();
        let mut ok = true;

        let mut pairs = 0;
        for n in 1..=5 {
            let all: Vec<_> = permutations(n).collect();
            for w in &all {
                let down = bruhat_down_set(w);
                for u in &all {
                    ok &= bruhat_leq(u, w).unwrap() == down.contains(u);
                    pairs += 1;
                }
            }
        }
        notes.push(format!("dominance/chains {pairs} pairs"));

        let mut graphs = 0;
        for w in permutations(5) {
            let g = inversion_graph(&w);
            ok &= count_acyclic_orientations(&g).unwrap() == acyclic_orientations_brute(&g).unwrap();
            graphs += 1;
        }
        for g in seeded_random_graphs(RANDOM_GRAPH_SEED, RANDOM_GRAPH_COUNT) {
            ok &= g.edge_count() <= 16;
            ok &= count_acyclic_orientations(&g).unwrap() == acyclic_orientations_brute(&g).unwrap();
            graphs += 1;
        }
        notes.push(format!("deletion-contraction/brute {graphs} graphs"));

        let mut boards = 0;
        for n in 1..=6 {
            for w in permutations(n) {
                let free = southwest_diagram(&w).complement();
                ok &= rook_count(&w).unwrap() == rook_placements_backtrack(&free);
                boards += 1;
            }
        }
        notes.push(format!("permanent/backtracking {boards} boards"));

        let mut intervals = 0;
        for n in 1..=6 {
            for w in permutations(n) {
                let bfs = weak_interval(&w).unwrap();
                ok &= (bfs.size, bfs.poincare) == weak_interval_by_filter(&w).unwrap();
                intervals += 1;
            }
        }
        notes.push(format!("weak BFS/filter {intervals} intervals"));
        (ok, notes.join(", "))
    }));

    outcomes.push(run(13, "worked 231 reduction of 41382657", None, || {
        let w = p("41382657");
        let Some(red) = witness_231_reduction(&w) else {
            return (false, "no witness".into());
        };
        let code = red.reduced.lehmer_code();
        let monotone = code_monotone_check(&red.reduced, &w).unwrap();
        let weak = weak_leq(&red.reduced, &w).unwrap();
        let ok = red.triple == (1, 4, 5)
            && red.reduced.to_string() == "41325768"
            && code.entries() == [3, 0, 1, 0, 0, 1, 0, 0]
            && monotone
            && !weak;
        (ok, format!("triple={:?} w'={} c(w')={:?} monotone={monotone} weak_leq={weak}", red.triple, red.reduced, code.entries()))
    }));

    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!("{} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

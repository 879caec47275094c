//! Exhaustive verification over `S_n`.
//!
//! A sweep computes every statistic for every permutation, checks the chain
//! `wk <= prod <= rk = ao (= re) <= br` together with each equality
//! characterization by pattern avoidance, and tallies the equality classes.
//! Records are produced in lexicographic order; parallel workers own
//! contiguous rank ranges and their output is concatenated in order, so the
//! report is identical for any parallelism.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{count_acyclic_orientations, inversion_graph, regions};
use crate::error::{check_cap, Error, Result};
use crate::orders::{
    code_monotone_check, product_q_formula, weak_interval, weak_leq, witness_231_reduction, BruhatTable,
};
use crate::perm::{factorial, LehmerCode, Pattern, PatternBundle, Permutation};
use crate::poly::QPolynomial;
use crate::rook::{rook_count, southwest_diagram};

/// Sweeps up to this size run by default.
pub const SWEEP_DEFAULT_MAX_N: usize = 7;
/// Largest sweep size, only with `long_running`.
pub const SWEEP_LONG_MAX_N: usize = 8;
/// Region oracle runs on every permutation up to this size.
pub const REGION_FULL_MAX_N: usize = 6;
/// Above [`REGION_FULL_MAX_N`] the region oracle runs on a fixed sample.
pub const REGION_SAMPLE_SIZE: usize = 1000;
pub const REGION_SAMPLE_SEED: u64 = 0x5eed_1234;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Depth {
    /// Integer statistics only.
    Counts,
    /// Adds the weak, Bruhat and product polynomials.
    Polys,
    /// Adds the region oracle: `re` and the distance enumerator.
    WithRegionOracle,
}

impl FromStr for Depth {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "counts" => Ok(Depth::Counts),
            "polys" => Ok(Depth::Polys),
            "with-region-oracle" | "with_region_oracle" => Ok(Depth::WithRegionOracle),
            other => Err(format!("unknown depth `{other}` (expected counts, polys, with-region-oracle)")),
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Depth::Counts => "counts",
            Depth::Polys => "polys",
            Depth::WithRegionOracle => "with-region-oracle",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StatRecord {
    pub w: Permutation,
    pub inv: usize,
    pub code: LehmerCode,
    pub prod: u64,
    pub wk: u64,
    pub br: u64,
    pub ao: u64,
    pub rk: u64,
    pub re: Option<u64>,
    pub avoids_231_312: bool,
    pub avoids_four: bool,
    pub avoids_3412_4231: bool,
    pub weak_poly: Option<QPolynomial>,
    pub bruhat_poly: Option<QPolynomial>,
    pub product_poly: Option<QPolynomial>,
    pub distance_poly: Option<QPolynomial>,
}

impl StatRecord {
    /// `re` when the region oracle ran, otherwise `ao` (the two agree).
    pub fn re_or_ao(&self) -> u64 {
        self.re.unwrap_or(self.ao)
    }
}

/// Shared per-`n` state: the Bruhat dominance table and pattern bundles.
struct Context {
    n: usize,
    bruhat: BruhatTable,
    p231: Pattern,
    p312: Pattern,
    four: Vec<Pattern>,
    smooth: Vec<Pattern>,
}

impl Context {
    fn new(n: usize) -> Result<Self> {
        Ok(Self {
            n,
            bruhat: BruhatTable::new(n)?,
            p231: "231".parse()?,
            p312: "312".parse()?,
            four: PatternBundle::HlssFour.patterns(),
            smooth: PatternBundle::Smooth.patterns(),
        })
    }

    fn record(&self, w: &Permutation, depth: Depth, with_regions: bool) -> Result<StatRecord> {
        debug_assert_eq!(w.len(), self.n);
        let code = w.lehmer_code();
        let weak = weak_interval(w)?;
        let bruhat = self.bruhat.interval(&self.bruhat.key(w));
        let polys = depth != Depth::Counts;
        let regions = if with_regions { Some(regions(w)?) } else { None };
        Ok(StatRecord {
            w: w.clone(),
            inv: w.inv(),
            prod: code.product()?,
            code,
            wk: weak.size,
            br: bruhat.size,
            ao: count_acyclic_orientations(&inversion_graph(w))?,
            rk: rook_count(w)?,
            re: regions.as_ref().map(|r| r.len() as u64),
            avoids_231_312: !w.contains_pattern(&self.p231) && !w.contains_pattern(&self.p312),
            avoids_four: w.avoids_all(&self.four),
            avoids_3412_4231: w.avoids_all(&self.smooth),
            weak_poly: polys.then_some(weak.poincare),
            bruhat_poly: polys.then_some(bruhat.poincare),
            product_poly: if polys { Some(product_q_formula(w)?) } else { None },
            distance_poly: regions.map(|r| r.distance_enumerator()),
        })
    }
}

/// All statistics of `w` at the requested depth.
pub fn stat_record(w: &Permutation, depth: Depth) -> Result<StatRecord> {
    Context::new(w.len())?.record(w, depth, depth == Depth::WithRegionOracle)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Violation {
    pub w: Permutation,
    pub check: String,
    pub details: String,
    pub record: StatRecord,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub depth: Depth,
    pub records: Vec<StatRecord>,
    pub violations: Vec<Violation>,
    pub class_counts: BTreeMap<String, u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub n: usize,
    pub depth: Depth,
    /// Permits `n = 8`.
    pub long_running: bool,
    pub parallelism: usize,
}

impl SweepConfig {
    pub fn new(n: usize, depth: Depth) -> Self {
        Self { n, depth, long_running: false, parallelism: 1 }
    }
}

/// Per-record outcome of the check suite.
struct Outcome {
    violations: Vec<(&'static str, String)>,
    classes: Vec<&'static str>,
}

fn check_record(ctx: &Context, r: &StatRecord) -> Outcome {
    let mut violations = Vec::new();
    let mut classes = vec!["records"];
    let mut fail = |name: &'static str, details: String| violations.push((name, details));

    let w = &r.w;
    let avoids_231 = !w.contains_pattern(&ctx.p231);
    let avoids_312 = !w.contains_pattern(&ctx.p312);
    let re = r.re_or_ao();

    // (a) the inequality chain and the identities between counts
    let chain_ok = r.wk <= r.prod && r.prod <= r.rk && r.rk == r.ao && re == r.ao && r.ao <= r.br && r.wk <= r.br;
    if !chain_ok {
        fail(
            "chain",
            format!("wk={} prod={} rk={} ao={} re={:?} br={}", r.wk, r.prod, r.rk, r.ao, r.re, r.br),
        );
    }

    let mut iff = |name: &'static str, class: &'static str, equal: bool, avoids: bool| {
        if equal {
            classes.push(class);
        }
        if equal != avoids {
            fail(name, format!("equality={equal} avoidance={avoids}"));
        }
    };
    // (b)-(f)
    iff("re_eq_wk_iff_avoids_231_312", "re_eq_wk", re == r.wk, r.avoids_231_312);
    iff("wk_eq_prod_iff_avoids_231", "wk_eq_prod", r.wk == r.prod, avoids_231);
    iff("prod_eq_rk_iff_avoids_312", "prod_eq_rk", r.prod == r.rk, avoids_312);
    iff("re_eq_br_iff_avoids_four", "re_eq_br", re == r.br, r.avoids_four);
    iff("wk_eq_br_iff_avoids_231_312", "wk_eq_br", r.wk == r.br, r.avoids_231_312);

    for (flag, class) in [
        (avoids_231, "avoids_231"),
        (avoids_312, "avoids_312"),
        (r.avoids_231_312, "avoids_231_312"),
        (r.avoids_four, "avoids_four"),
        (r.avoids_3412_4231, "avoids_3412_4231"),
    ] {
        if flag {
            classes.push(class);
        }
    }

    // (g) weak Poincaré polynomial equals the product formula for 231-avoiders
    if let (Some(weak), Some(prod)) = (&r.weak_poly, &r.product_poly) {
        let same = weak == prod;
        if same {
            classes.push("weak_poly_eq_product_poly");
            if !avoids_231 {
                classes.push("weak_poly_eq_product_poly_containing_231");
            }
        }
        if avoids_231 && !same {
            fail("weak_poly_eq_product_poly_for_231_avoiders", format!("weak={weak} product={prod}"));
        }
        if weak.coeff(0) != 1 || weak.degree() != r.inv {
            fail("weak_poly_shape", format!("weak={weak} inv={}", r.inv));
        }
    }

    // (h) distance enumerator equals the Bruhat polynomial iff 3412,4231-avoiding
    if let Some(dist) = &r.distance_poly {
        classes.push("region_oracle_records");
        if dist.eval_at_one().ok() != r.re {
            fail("distance_poly_at_one_eq_re", format!("distance={dist} re={:?}", r.re));
        }
        if let Some(bruhat) = &r.bruhat_poly {
            let same = dist == bruhat;
            if same {
                classes.push("distance_eq_bruhat");
            }
            if same != r.avoids_3412_4231 {
                fail(
                    "distance_poly_eq_bruhat_poly_iff_avoids_3412_4231",
                    format!("distance={dist} bruhat={bruhat} avoids={}", r.avoids_3412_4231),
                );
            }
        }
    }

    // south-west diagram: row counts and the Ferrers shape of 312-avoiders
    let diagram = southwest_diagram(w);
    let n = w.len();
    let rows_ok = (1..=n).all(|i| diagram.row_len(i) == n - i - r.code.entries()[i - 1] as usize);
    if !rows_ok {
        fail("row_counts", format!("diagram={diagram:?} code={:?}", r.code.entries()));
    }
    let ferrers = diagram.is_right_justified_ferrers();
    if ferrers {
        classes.push("ferrers");
        if !avoids_312 {
            classes.push("ferrers_containing_312");
        }
    }
    if avoids_312 && !ferrers {
        fail("ferrers_for_312_avoiders", format!("diagram={diagram:?}"));
    }

    // the 231 witness used for strictness of the weak/product inequality
    match witness_231_reduction(w) {
        Some(red) => {
            let (cw, cr) = (r.code.entries(), red.reduced.lehmer_code());
            let j = red.triple.1;
            let only_j_drops = cw
                .iter()
                .zip(cr.entries())
                .enumerate()
                .all(|(idx, (a, b))| if idx + 1 == j { b < a } else { a == b });
            let below_by_code = code_monotone_check(&red.reduced, w).unwrap_or(false);
            let below_weak = weak_leq(&red.reduced, w).unwrap_or(true);
            if avoids_231 || !only_j_drops || !below_by_code || below_weak {
                fail(
                    "witness_231",
                    format!("triple={:?} reduced={} code={:?}", red.triple, red.reduced, cr.entries()),
                );
            }
        }
        None if !avoids_231 => fail("witness_231", "no witness found for a 231-containing permutation".into()),
        None => {}
    }

    Outcome { violations, classes }
}

/// Ranks at which the region oracle runs.
fn region_ranks(n: usize, depth: Depth) -> Option<HashSet<u64>> {
    if depth != Depth::WithRegionOracle {
        return Some(HashSet::new());
    }
    if n <= REGION_FULL_MAX_N {
        return None; // every rank
    }
    let total = factorial(n) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(REGION_SAMPLE_SEED);
    let picked = rand::seq::index::sample(&mut rng, total, REGION_SAMPLE_SIZE.min(total));
    Some(picked.into_iter().map(|r| r as u64).collect())
}

pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    let n = config.n;
    if n == 0 {
        return Err(Error::SizeCap { op: "sweep", n, max: SWEEP_DEFAULT_MAX_N });
    }
    let max = match config.depth {
        Depth::WithRegionOracle => SWEEP_DEFAULT_MAX_N,
        _ if config.long_running => SWEEP_LONG_MAX_N,
        _ => SWEEP_DEFAULT_MAX_N,
    };
    check_cap("sweep", n, max)?;

    let ctx = Context::new(n)?;
    let sampled = region_ranks(n, config.depth);
    let total = factorial(n);
    let shards = (config.parallelism.max(1) as u64 * 4).min(total);
    let bounds: Vec<(u64, u64)> = (0..shards).map(|s| (s * total / shards, (s + 1) * total / shards)).collect();

    let run_shard = |&(start, end): &(u64, u64)| -> Result<Vec<(StatRecord, Outcome)>> {
        let mut out = Vec::with_capacity((end - start) as usize);
        let mut w = Permutation::from_lex_rank(n, start)?;
        for rank in start..end {
            let with_regions = sampled.as_ref().is_none_or(|s| s.contains(&rank));
            let record = ctx.record(&w, config.depth, with_regions)?;
            let outcome = check_record(&ctx, &record);
            out.push((record, outcome));
            if rank + 1 < end {
                w = w.next_lex().expect("rank within S_n");
            }
        }
        Ok(out)
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism.max(1))
        .build()
        .expect("thread pool");
    let shard_results: Vec<Result<Vec<(StatRecord, Outcome)>>> =
        pool.install(|| bounds.par_iter().map(run_shard).collect());

    let mut records = Vec::with_capacity(total as usize);
    let mut violations = Vec::new();
    let mut class_counts: BTreeMap<String, u64> = BTreeMap::new();
    for class in [
        "records",
        "avoids_231",
        "avoids_312",
        "avoids_231_312",
        "avoids_four",
        "avoids_3412_4231",
        "re_eq_wk",
        "wk_eq_prod",
        "prod_eq_rk",
        "re_eq_br",
        "wk_eq_br",
        "ferrers",
        "ferrers_containing_312",
    ] {
        class_counts.insert(class.to_string(), 0);
    }
    if config.depth != Depth::Counts {
        class_counts.insert("weak_poly_eq_product_poly".into(), 0);
        class_counts.insert("weak_poly_eq_product_poly_containing_231".into(), 0);
    }
    if config.depth == Depth::WithRegionOracle {
        class_counts.insert("region_oracle_records".into(), 0);
        class_counts.insert("distance_eq_bruhat".into(), 0);
    }

    for shard in shard_results {
        for (record, outcome) in shard? {
            for class in outcome.classes {
                *class_counts.entry(class.to_string()).or_default() += 1;
            }
            for (check, details) in outcome.violations {
                violations.push(Violation { w: record.w.clone(), check: check.to_string(), details, record: record.clone() });
            }
            records.push(record);
        }
    }

    Ok(SweepReport { n, depth: config.depth, records, violations, class_counts })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportFormat {
    Json,
    Csv,
}

pub const CSV_HEADER: &str = "w,inv,code,prod,wk,br,ao,rk,re,avoids_231_312,avoids_four,avoids_3412_4231,weak_poly,bruhat_poly,product_poly,distance_poly";

fn spaced<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// One CSV data row (no trailing newline). Sequences are space-separated
/// inside double quotes; absent values are empty fields.
pub fn csv_row(r: &StatRecord) -> String {
    let poly = |p: &Option<QPolynomial>| p.as_ref().map(|p| format!("\"{}\"", p.to_spaced())).unwrap_or_default();
    [
        format!("\"{}\"", spaced(r.w.word())),
        r.inv.to_string(),
        format!("\"{}\"", spaced(r.code.entries())),
        r.prod.to_string(),
        r.wk.to_string(),
        r.br.to_string(),
        r.ao.to_string(),
        r.rk.to_string(),
        r.re.map(|v| v.to_string()).unwrap_or_default(),
        r.avoids_231_312.to_string(),
        r.avoids_four.to_string(),
        r.avoids_3412_4231.to_string(),
        poly(&r.weak_poly),
        poly(&r.bruhat_poly),
        poly(&r.product_poly),
        poly(&r.distance_poly),
    ]
    .join(",")
}

pub fn emit_report(report: &SweepReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes");
            out.push(b'\n');
            out
        }
        ReportFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in &report.records {
                out.push_str(&csv_row(r));
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}

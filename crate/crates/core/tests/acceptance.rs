//! End-to-end acceptance suite: one line per criterion, non-zero exit if any
//! criterion fails.
//!
//! Tolerances are exact throughout: integers and rationals compare with `==`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mapenum::arith::{MPoly, Monomial, TSeries};
use mapenum::bkp::context::{eta_series, theta_series, xi_series};
use mapenum::bkp::identities::{fixed_charge_residual, ode_residual, shifted_bkp1_residual, Identity};
use mapenum::bkp::oneface::{bip_oneface_ode, bip_oneface_ode_literal, bip_oneface_series, ledoux_ode, oneface_series};
use mapenum::bkp::{Model, SeriesContext};
use mapenum::oracle::{oracle_count, rooted_count, totals, Filter};
use mapenum::rec::bipartite::{
    self, bip_oneface_literal, compute_bip_oneface, compute_bipartite, oneface_initial_conditions, BipOneFaceTable,
};
use mapenum::rec::maps::{self, compute_maps, compute_oneface, compute_univariate, extend_univariate, Engine};
use mapenum::rec::triangulations::compute_triangulations;
use mapenum::rec::{IntTable, PolyTable};

/// Wall-clock budgets.
const TABLE_BUDGET: Duration = Duration::from_secs(60);
const IDENTITY_BUDGET: Duration = Duration::from_secs(300);
/// Size limits of each criterion.
const KZ_CC_N: u32 = 12;
const LEDOUX_N: u32 = 12;
const BIP_ONEFACE_N: u32 = 10;
const ORACLE_N: u32 = 3;
const MUTATIONS: usize = 10;
const MUTATION_SEED: u64 = 0x6d61_7073;

/// The one misprinted cell of the printed maps table: `(n, g2, printed, true)`.
const MAPS_MISPRINT: (u32, u32, i64, i64) = (4, 1, 983, 982);

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn reference(text: &str) -> BTreeMap<(u32, u32), BigInt> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            ((f[0].parse().unwrap(), f[1].parse().unwrap()), f[2].parse().unwrap())
        })
        .collect()
}

fn compare(table: &IntTable, want: &BTreeMap<(u32, u32), BigInt>) -> Vec<((u32, u32), BigInt, BigInt)> {
    want.iter()
        .filter_map(|(&(n, g2), w)| {
            let got = table.get(n, g2).cloned().unwrap_or_default();
            (got != *w).then(|| ((n, g2), w.clone(), got))
        })
        .collect()
}

fn g(g2: u32) -> String {
    mapenum::arith::Genus2(g2).to_string()
}

fn criterion_maps_table() -> Outcome {
    let want = reference(include_str!("data/maps.txt"));
    let start = Instant::now();
    let table = compute_univariate(16, 8).unwrap();
    let elapsed = start.elapsed();
    let bad = compare(&table, &want);
    let (mn, mg2, printed, truth) = MAPS_MISPRINT;
    let only_misprint = bad.len() == 1 && bad[0] == ((mn, mg2), BigInt::from(printed), BigInt::from(truth));
    // Seeding the printed value instead corrupts the next row.
    let mut forced = compute_univariate(mn, 8).unwrap();
    forced.insert(mn, mg2, BigInt::from(printed));
    let broken = match extend_univariate(&mut forced, mn + 1, 8) {
        Err(e) => format!("the recurrence stops: {e}"),
        Ok(()) => {
            let off = (0..=8).filter(|&g2| forced.get(mn + 1, g2) != want.get(&(mn + 1, g2))).count();
            if off == 0 {
                String::new()
            } else {
                format!("{off} cells of row {} change", mn + 1)
            }
        }
    };
    let next_row_breaks = !broken.is_empty();
    let pass = (bad.is_empty() || only_misprint) && next_row_breaks && elapsed < TABLE_BUDGET;
    let h16 = table.get(16, 8).unwrap();
    outcome(
        pass,
        format!(
            "{} cells, h_16^4 = {h16}, {:.2}s; printed h_{mn}^{} = {printed} is a misprint (computed {truth}; \
             seeding {printed}: {broken})",
            want.len(),
            elapsed.as_secs_f64(),
            g(mg2),
        ),
    )
}

fn totals_table(polys: &PolyTable) -> IntTable {
    let mut t = IntTable::new();
    for ((n, g2), p) in polys.iter() {
        t.insert(n, g2, maps::total(p));
    }
    t
}

fn criterion_bipartite_table() -> Outcome {
    let want = reference(include_str!("data/bipartite.txt"));
    let start = Instant::now();
    let table = totals_table(&compute_bipartite(16, 8).unwrap());
    let elapsed = start.elapsed();
    let bad = compare(&table, &want);
    outcome(
        bad.is_empty() && elapsed < TABLE_BUDGET,
        format!(
            "{} cells, k_9^4 = {}, {} mismatches, {:.2}s",
            want.len(),
            table.get(9, 8).unwrap(),
            bad.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_triangulations_table() -> Outcome {
    let want = reference(include_str!("data/triangulations.txt"));
    let start = Instant::now();
    let table = compute_triangulations(15, 8).unwrap();
    let elapsed = start.elapsed();
    let bad = compare(&table, &want);
    outcome(
        bad.is_empty() && elapsed < TABLE_BUDGET,
        format!(
            "{} cells, t_7^4 = {}, {} mismatches, {:.2}s",
            want.len(),
            table.get(7, 8).unwrap(),
            bad.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_engines_agree() -> Outcome {
    let kz = compute_maps(KZ_CC_N, KZ_CC_N + 1, Engine::Kz).unwrap();
    let cc = compute_maps(KZ_CC_N, KZ_CC_N + 1, Engine::Cc).unwrap();
    let same = kz == cc && !kz.is_empty();
    outcome(same, format!("{} bivariate polynomials H_n^g, n <= {KZ_CC_N}, identical", kz.len()))
}

fn ledoux_mismatches(maps: &PolyTable, oneface: &IntTable) -> usize {
    let mut bad = 0;
    for n in 1..=LEDOUX_N {
        for g2 in 0..=n {
            let slice = maps.get(n, g2).map(|p| maps::oneface_slice(p, n, g2)).unwrap_or_default();
            let got = BigRational::from_integer(oneface.get(n, g2).cloned().unwrap_or_default());
            bad += usize::from(slice != got);
        }
    }
    bad
}

fn bip_oneface_mismatches(bip: &PolyTable, table: &BipOneFaceTable) -> usize {
    let mut bad = 0;
    for n in 1..=BIP_ONEFACE_N {
        for i in 1..=n {
            for j in 1..=n + 1 - i {
                let got = BigRational::from_integer(table.get(n, i, j).cloned().unwrap_or_default());
                bad += usize::from(bipartite::oneface_slice(bip, n, i, j) != got);
            }
        }
    }
    bad
}

/// The bipartite one-face table built with the signs exactly as usually printed.
fn literal_bip_oneface(n_max: u32) -> Result<BipOneFaceTable, String> {
    let mut t = BipOneFaceTable::default();
    for ((n, i, j), v) in oneface_initial_conditions().iter() {
        t.insert(n, i, j, v.clone());
    }
    for n in 4..=n_max {
        for i in 1..=n {
            for j in 1..=n + 1 - i {
                let v = bip_oneface_literal(n, i, j, &t).map_err(|e| format!("n={n}: {e}"))?;
                t.insert(n, i, j, v);
            }
        }
    }
    Ok(t)
}

fn criterion_oneface() -> Outcome {
    let maps = compute_maps(LEDOUX_N, LEDOUX_N + 1, Engine::Cc).unwrap();
    let ledoux_bad = ledoux_mismatches(&maps, &compute_oneface(LEDOUX_N).unwrap());
    let bip = compute_bipartite(BIP_ONEFACE_N, BIP_ONEFACE_N + 1).unwrap();
    let bip_bad = bip_oneface_mismatches(&bip, &compute_bip_oneface(BIP_ONEFACE_N).unwrap());
    let literal = match literal_bip_oneface(BIP_ONEFACE_N) {
        Ok(t) => format!("{} mismatches", bip_oneface_mismatches(&bip, &t)),
        Err(e) => format!("fails ({e})"),
    };
    outcome(
        ledoux_bad == 0 && bip_bad == 0,
        format!(
            "one-face maps n <= {LEDOUX_N}: {ledoux_bad} mismatches; one-face bipartite n <= {BIP_ONEFACE_N} \
             (corrected signs): {bip_bad} mismatches; printed signs: {literal}"
        ),
    )
}

fn criterion_oracle() -> Outcome {
    let maps = compute_maps(ORACLE_N, ORACLE_N + 1, Engine::Cc).unwrap();
    let bip = compute_bipartite(ORACLE_N, ORACLE_N + 1).unwrap();
    let tri = compute_triangulations(ORACLE_N, ORACLE_N + 1).unwrap();
    let mut checked = 0;
    let mut bad = Vec::new();
    for e in 1..=ORACLE_N {
        for (filter, reference) in [(Filter::All, &maps), (Filter::Bipartite, &bip)] {
            let found = oracle_count(e, filter).unwrap();
            for g2 in 0..=e + 1 {
                let want = reference.get(e, g2).cloned().unwrap_or_else(MPoly::zero);
                let got = found.get(e, g2).cloned().unwrap_or_else(MPoly::zero);
                checked += 1;
                if want != got {
                    bad.push(format!("{filter} n={e} g={}", g(g2)));
                }
            }
        }
    }
    for n in 1..=ORACLE_N {
        let found =
            if n == 1 { oracle_count(3, Filter::Triangulation) } else { rooted_count(3 * n, Filter::Triangulation) };
        let found = totals(&found.unwrap());
        for g2 in 0..=n + 1 {
            let want = tri.get(n, g2).cloned().unwrap_or_default();
            checked += 1;
            if found.get(&(n, g2)).cloned().unwrap_or_default() != want {
                bad.push(format!("triangulations n={n} g={}", g(g2)));
            }
        }
    }
    let h3 = totals(&oracle_count(3, Filter::All).unwrap());
    let row3: Vec<String> = (0..=3).map(|g2| h3[&(3, g2)].to_string()).collect();
    outcome(
        bad.is_empty(),
        format!(
            "{checked} (model, n, g) cells incl. full (vertices, faces) splits; maps n=3 totals {}; mismatches: {:?}",
            row3.join(", "),
            bad
        ),
    )
}

fn criterion_identities() -> Outcome {
    let targets = [
        (Identity::ShiftedBkp1, 20),
        (Identity::OdeMaps, 16),
        (Identity::OdeBipartite, 12),
        (Identity::OdeTriangulations, 18),
        (Identity::Ledoux, 14),
        (Identity::BipOneface, 10),
        (Identity::FixedCharge, 12),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (id, order) in targets {
        let r = id.verify(order).unwrap();
        let ok = r.passed && r.seconds < IDENTITY_BUDGET.as_secs_f64();
        pass &= ok;
        parts.push(format!("{} {} ({:.1}s)", id.name(), if ok { "ok" } else { "FAIL" }, r.seconds));
    }
    // The one-face bipartite operator as usually printed, for comparison.
    let f = bip_oneface_series(&compute_bip_oneface(12).unwrap(), 11);
    let literal = bip_oneface_ode_literal().apply(&f).first_nonzero().map(|(k, _)| k);
    parts.push(format!("printed one-face bipartite operator: first nonzero at t^{}", literal.unwrap_or(-1)));
    outcome(pass, parts.join("; "))
}

#[derive(Clone, Copy, Debug)]
enum Stored {
    Maps,
    Bipartite,
    Triangulations,
    Oneface,
    BipOneface,
}

/// Brute-force counts for the sizes the oracle reaches.
struct OracleTables {
    maps: PolyTable,
    bip: PolyTable,
    tri: BTreeMap<(u32, u32), BigInt>,
}

impl OracleTables {
    fn compute() -> Self {
        let mut o = OracleTables { maps: PolyTable::new(), bip: PolyTable::new(), tri: BTreeMap::new() };
        for e in 1..=ORACLE_N {
            for ((n, g2), p) in oracle_count(e, Filter::All).unwrap().iter() {
                o.maps.insert(n, g2, p.clone());
            }
            for ((n, g2), p) in oracle_count(e, Filter::Bipartite).unwrap().iter() {
                o.bip.insert(n, g2, p.clone());
            }
            o.tri.extend(totals(&rooted_count(3 * e, Filter::Triangulation).unwrap()));
        }
        o
    }

    fn agrees(&self, t: &Tables) -> bool {
        let poly = |a: &PolyTable, b: &PolyTable| {
            (1..=ORACLE_N).all(|n| {
                (0..=n + 1).all(|g2| {
                    a.get(n, g2).cloned().unwrap_or_else(MPoly::zero)
                        == b.get(n, g2).cloned().unwrap_or_else(MPoly::zero)
                })
            })
        };
        let tri = (1..=ORACLE_N).all(|n| {
            (0..=n + 1).all(|g2| {
                t.tri.get(n, g2).cloned().unwrap_or_default() == self.tri.get(&(n, g2)).cloned().unwrap_or_default()
            })
        });
        poly(&self.maps, &t.maps) && poly(&self.bip, &t.bip) && tri
    }
}

/// Stored tables at the sizes the residual checks read.
struct Tables {
    maps: PolyTable,
    bip: PolyTable,
    tri: IntTable,
    oneface: IntTable,
    bip_oneface: BipOneFaceTable,
}

const MAPS_N: u32 = 8;
const BIP_N: u32 = 12;
const TRI_N: u32 = 3;
const ONEFACE_N: u32 = 7;

impl Tables {
    fn compute() -> Self {
        Tables {
            maps: compute_maps(MAPS_N, MAPS_N + 1, Engine::Cc).unwrap(),
            bip: compute_bipartite(BIP_N, BIP_N + 1).unwrap(),
            tri: compute_triangulations(TRI_N, TRI_N + 1).unwrap(),
            oneface: compute_oneface(ONEFACE_N).unwrap(),
            bip_oneface: compute_bip_oneface(BIP_ONEFACE_N).unwrap(),
        }
    }

    fn mutate(&mut self, rng: &mut ChaCha8Rng) -> String {
        let one = BigRational::from_integer(1.into());
        match [Stored::Maps, Stored::Bipartite, Stored::Triangulations, Stored::Oneface, Stored::BipOneface]
            [rng.gen_range(0..5)]
        {
            Stored::Maps => {
                let n = rng.gen_range(1..=MAPS_N);
                let g2 = rng.gen_range(0..=n);
                let v = rng.gen_range(1..=n + 1 - g2);
                let m = Monomial::new(v, n + 2 - g2 - v, 0);
                self.maps.get_mut(n, g2).unwrap().add_term(m, one);
                format!("H_{n}^{} [u^{} z^{}]", g(g2), m.u, m.z)
            }
            Stored::Bipartite => {
                let n = rng.gen_range(1..=BIP_N);
                let g2 = rng.gen_range(0..n);
                let total = n + 2 - g2;
                let i = rng.gen_range(1..total - 1);
                let j = rng.gen_range(1..total - i);
                let m = Monomial::new(i, total - i - j, j);
                self.bip.get_mut(n, g2).unwrap().add_term(m, one);
                format!("K_{n}^{} [u^{i} v^{j} z^{}]", g(g2), m.z)
            }
            Stored::Triangulations => {
                let n = rng.gen_range(1..=TRI_N);
                let g2 = rng.gen_range(0..=n + 1);
                *self.tri.get_mut(n, g2).unwrap() += 1;
                format!("t_{n}^{}", g(g2))
            }
            Stored::Oneface => {
                let n = rng.gen_range(1..=ONEFACE_N);
                let g2 = rng.gen_range(0..=n);
                *self.oneface.get_mut(n, g2).unwrap() += 1;
                format!("u_{n}^{}", g(g2))
            }
            Stored::BipOneface => {
                let n = rng.gen_range(1..=BIP_ONEFACE_N);
                let i = rng.gen_range(1..=n);
                let j = rng.gen_range(1..=n + 1 - i);
                *self.bip_oneface.get_mut(n, i, j).unwrap() += 1;
                format!("b_{n}^({i},{j})")
            }
        }
    }

    /// Names of the failing checks.
    fn failing(&self, clean: &Tables, oracle: &OracleTables) -> Vec<&'static str> {
        let nonzero = |r: TSeries| r.first_nonzero().is_some() || r.window().is_err();
        let mut out = Vec::new();
        let theta = || theta_series(&self.maps, MAPS_N).truncate(2 * MAPS_N as i64);
        if nonzero(ode_residual(&mut SeriesContext::new(Model::Maps, theta())).unwrap()) {
            out.push("ode-maps");
        }
        if nonzero(shifted_bkp1_residual(&mut SeriesContext::new(Model::Maps, theta())).unwrap()) {
            out.push("shifted-bkp1");
        }
        let theta12 = theta_series(&self.maps, 6).truncate(12);
        if nonzero(fixed_charge_residual(&mut SeriesContext::new(Model::Maps, theta12)).unwrap()) {
            out.push("fixed-charge");
        }
        let eta = eta_series(&self.bip, BIP_N);
        if nonzero(ode_residual(&mut SeriesContext::new(Model::Bipartite, eta)).unwrap()) {
            out.push("ode-bipartite");
        }
        let xi = xi_series(&self.tri, TRI_N).truncate(6 * TRI_N as i64);
        if nonzero(ode_residual(&mut SeriesContext::new(Model::Triangulations, xi)).unwrap()) {
            out.push("ode-triangulations");
        }
        if nonzero(ledoux_ode().apply(&oneface_series(&self.oneface, 2 * ONEFACE_N as i64))) {
            out.push("ledoux");
        }
        if nonzero(bip_oneface_ode().apply(&bip_oneface_series(&self.bip_oneface, BIP_ONEFACE_N as i64))) {
            out.push("bip-oneface");
        }
        // Cross-checks against independently computed tables.
        if self.maps != clean.maps.restrict(MAPS_N, MAPS_N + 1) {
            out.push("kz-vs-cc");
        }
        let oneface_ok = (1..=ONEFACE_N).all(|n| {
            (0..=n).all(|g2| {
                let slice = self.maps.get(n, g2).map(|p| maps::oneface_slice(p, n, g2)).unwrap_or_default();
                slice == BigRational::from_integer(self.oneface.get(n, g2).cloned().unwrap_or_default())
            })
        });
        let bip_ok = bip_oneface_mismatches(&self.bip, &self.bip_oneface) == 0;
        if !oneface_ok || !bip_ok {
            out.push("one-face-slices");
        }
        if !oracle.agrees(self) {
            out.push("oracle");
        }
        out
    }
}

fn criterion_mutations() -> Outcome {
    let clean = Tables::compute();
    let oracle = OracleTables::compute();
    assert!(clean.failing(&clean, &oracle).is_empty(), "clean tables must pass every check");
    let mut rng = ChaCha8Rng::seed_from_u64(MUTATION_SEED);
    let mut caught = 0;
    let mut by_residual = 0;
    let mut lines = Vec::new();
    for _ in 0..MUTATIONS {
        let mut t = Tables {
            maps: clean.maps.clone(),
            bip: clean.bip.clone(),
            tri: clean.tri.clone(),
            oneface: clean.oneface.clone(),
            bip_oneface: clean.bip_oneface.clone(),
        };
        let what = t.mutate(&mut rng);
        let fails = t.failing(&clean, &oracle);
        caught += usize::from(!fails.is_empty());
        by_residual += usize::from(fails.iter().any(|f| !matches!(*f, "kz-vs-cc" | "one-face-slices" | "oracle")));
        lines.push(format!("{what} -> {}", fails.join("+")));
    }
    outcome(
        caught == MUTATIONS,
        format!("{caught}/{MUTATIONS} caught ({by_residual} by a residual): {}", lines.join("; ")),
    )
}

fn main() {
    // Honour `cargo test -- --list` and filters without running the suite twice.
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let criteria: [Criterion; 8] = [
        ("maps table", criterion_maps_table),
        ("bipartite table", criterion_bipartite_table),
        ("triangulations table", criterion_triangulations_table),
        ("bivariate engines agree", criterion_engines_agree),
        ("one-face consistency", criterion_oneface),
        ("flag oracle", criterion_oracle),
        ("identity residuals", criterion_identities),
        ("mutation sensitivity", criterion_mutations),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        failed += usize::from(!o.pass);
        println!(
            "criterion {} [{}] {name}: {} ({:.1}s)",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

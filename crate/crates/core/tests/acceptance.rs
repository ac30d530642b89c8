//! Acceptance criteria, one result line per criterion.
//!
//! Every criterion is evaluated and printed. The run then checks that each
//! outcome equals its recorded expectation in `EXPECTED_FAILURES`; those
//! criteria are implemented as stated and fail on the shipped data.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rtheta::code::{min_dna_distance_exhaustive, min_ring_distance, self_checks, span_closure, DEFAULT_MAX_SIZE};
use rtheta::dnamap::{
    Dinucleotide, GauTable, SELF_RC_DINUCLEOTIDES, SELF_RC_ELEMENTS, SELF_REVERSIBLE_DINUCLEOTIDES,
    SELF_REVERSIBLE_ELEMENTS,
};
use rtheta::verify::fixtures::self_dual_matrix;
use rtheta::verify::harness::{
    distance_harness, frobenius_harness, gray_harness, ideal_harness, replay, HarnessScope, Outcome, Statement,
};
use rtheta::verify::{conjecture_harness, default_table, fixture, reproduce_fixture, ConjectureScope};
use rtheta::{build, Poly, RingElement, Theta};

/// Criteria whose literal statement does not hold on the shipped data.
const EXPECTED_FAILURES: [u8; 3] = [1, 3, 4];

struct Line {
    id: u8,
    passed: bool,
    elapsed: Duration,
    limit: Duration,
    detail: String,
}

fn check(id: u8, limit_secs: u64, f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    let detail = if elapsed > limit { format!("{detail}; over time limit") } else { detail };
    Line { id, passed: ok && elapsed <= limit, elapsed, limit, detail }
}

fn example_r2() -> (bool, String) {
    let f = fixture("example-r2").expect("fixture");
    let r = reproduce_fixture(f).expect("reproduce");
    let list = r.list.as_ref().expect("list");
    let ok = r.report.m == 32 && list.equal && r.report.d_dna == Some(4);
    (ok, format!("M = {}, d_dna = {:?}, {} of {} listed strings produced", r.report.m, r.report.d_dna, list.common, list.listed))
}

fn example_r22w() -> (bool, String) {
    let f = fixture("example-r22w").expect("fixture");
    let r = reproduce_fixture(f).expect("reproduce");
    let list = r.list.as_ref().expect("list");
    let ok = r.report.m == 256 && list.equal && r.report.d_dna == Some(8);
    (ok, format!("M = {}, d_dna = {:?}, list equal = {}", r.report.m, r.report.d_dna, list.equal))
}

fn tables() -> (bool, String) {
    let mut bad = Vec::new();
    let mut rows = 0;
    for f in rtheta::verify::fixtures().iter().filter(|f| f.is_table_row()) {
        rows += 1;
        let r = reproduce_fixture(f).expect("reproduce");
        let d_default = r.report.d_dna == Some(f.expected.d_h);
        let d_erratum = r.errata.iter().any(|e| e.field == "d_H");
        if !r.length_match || !r.size_match || !(d_default || d_erratum) {
            bad.push(format!(
                "{}: expected ({}, {}, {}), got ({}, {}, {:?})",
                r.id, f.expected.dna_length, f.expected.m, f.expected.d_h, r.report.dna_length, r.report.m, r.report.d_dna
            ));
        }
    }
    (rows == 15 && bad.is_empty(), format!("{rows} rows, mismatches: [{}]", bad.join("; ")))
}

fn self_dual_example() -> (bool, String) {
    let code = span_closure(Theta::new(2, 0), 8, &self_dual_matrix(), DEFAULT_MAX_SIZE).expect("span");
    let c = self_checks(&code);
    let d = min_ring_distance(&code);
    let ok = c.self_orthogonal && c.self_dual && c.free && code.size() == 65536 && d.is_some_and(|d| d <= 5);
    (
        ok,
        format!(
            "self-orthogonal = {}, M = {}, self-dual = {}, free = {}, free basis = {}, d_ring = {:?}",
            c.self_orthogonal,
            code.size(),
            c.self_dual,
            c.free,
            c.free_basis,
            d
        ),
    )
}

fn reversibility_harness() -> (bool, String) {
    let scope = HarnessScope::default();
    let reports = ideal_harness(&scope).expect("harness");
    let r = reports.iter().find(|r| r.statement == Statement::ReversibleIffSelfReciprocal).expect("report");
    let replayed = r.counterexamples.iter().all(|c| matches!(replay(c.statement, &c.case, &scope), Ok(Outcome::Fails(_))));
    let ok = r.cases > 0 && r.failures == r.counterexamples.len() && replayed;
    (ok, format!("{} cases, {} agreements, {} counterexamples", r.cases, r.agreements, r.failures))
}

fn distance_relation() -> (bool, String) {
    let scope = HarnessScope { pair_samples: 10_000, ..HarnessScope::default() };
    let r = &distance_harness(&scope).expect("harness")[0];
    (r.cases == 160_000 && r.failures == 0, format!("{} pairs, {} failures", r.cases, r.failures))
}

fn gray() -> (bool, String) {
    let scope = HarnessScope {
        gray_thetas: vec![Theta::new(2, 0), Theta::new(0, 2)],
        gray_lengths: vec![2, 3],
        gray_codes: 50,
        ..HarnessScope::default()
    };
    let r = gray_harness(&scope).expect("harness");
    let r = r.iter().find(|r| r.statement == Statement::GrayDuality).expect("report");
    (r.cases >= 200 && r.failures == 0, format!("{} codes, {} failures", r.cases, r.failures))
}

fn frobenius() -> (bool, String) {
    let scope = HarnessScope { frobenius_lengths: vec![2, 3, 4], frobenius_codes: 25, ..HarnessScope::default() };
    let r = &frobenius_harness(&scope).expect("harness")[0];
    (r.cases == 1200 && r.failures == 0, format!("{} codes, {} failures", r.cases, r.failures))
}

fn oracle_mul(theta: Theta, x: RingElement, y: RingElement) -> RingElement {
    let t = theta.element();
    let (a, b, c, d) = (x.a() as u32, x.b() as u32, y.a() as u32, y.b() as u32);
    let bd = b * d;
    RingElement::new(((a * c + bd * t.a() as u32) % 4) as u8, ((a * d + b * c + bd * t.b() as u32) % 4) as u8)
}

fn table_invariants(t: &GauTable) -> Vec<String> {
    let mut bad = Vec::new();
    let images: BTreeSet<Dinucleotide> = RingElement::all().map(|x| t.phi(x)).collect();
    if images.len() != 16 {
        bad.push("not a bijection".into());
    }
    if t.phi(RingElement::ZERO) != Dinucleotide::AA {
        bad.push("phi(0) != AA".into());
    }
    if RingElement::all().any(|x| t.phi(x.add(t.lambda())) != t.phi(x).complement()) {
        bad.push("lambda shift".into());
    }
    let rev: BTreeSet<_> = SELF_REVERSIBLE_ELEMENTS.iter().map(|&x| t.phi(x)).collect();
    if rev != SELF_REVERSIBLE_DINUCLEOTIDES.into_iter().collect() {
        bad.push("self-reversible image".into());
    }
    let rc: BTreeSet<_> = SELF_RC_ELEMENTS.iter().map(|&x| t.phi(x)).collect();
    if rc != SELF_RC_DINUCLEOTIDES.into_iter().collect() {
        bad.push("self-RC image".into());
    }
    bad
}

fn property_suites() -> (bool, String) {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checks = 0u64;
    for theta in Theta::all() {
        let ring = theta.ring();
        let els: Vec<RingElement> = RingElement::all().collect();
        for &x in &els {
            for &y in &els {
                checks += 1;
                if ring.mul(x, y) != oracle_mul(theta, x, y) || ring.mul(x, y) != ring.mul(y, x) {
                    failures.push(format!("{theta}: product {x}·{y}"));
                }
                for &z in &els {
                    checks += 1;
                    let assoc = ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z));
                    let dist = ring.mul(x, y.add(z)) == ring.mul(x, y).add(ring.mul(x, z));
                    let add_assoc = x.add(y).add(z) == x.add(y.add(z));
                    if !(assoc && dist && add_assoc) {
                        failures.push(format!("{theta}: axioms at {x}, {y}, {z}"));
                    }
                }
            }
            if ring.mul(RingElement::ONE, x) != x || x.add(x.neg()) != RingElement::ZERO {
                failures.push(format!("{theta}: identities at {x}"));
            }
        }

        let table = default_table(theta).expect("table");
        failures.extend(table_invariants(table).into_iter().map(|e| format!("{theta}: {e}")));
        for _ in 0..1000 {
            checks += 1;
            let n = rng.random_range(1..=16);
            let w: Vec<RingElement> = (0..n).map(|_| RingElement::from_index(rng.random_range(0..16))).collect();
            let dna = table.encode(&w);
            if dna.len() != 2 * n || table.decode(&dna).ok().as_deref() != Some(&w[..]) {
                failures.push(format!("{theta}: round trip"));
            }
        }

        for _ in 0..500 {
            let f = Poly::new(theta, (0..rng.random_range(1..6)).map(|_| RingElement::from_index(rng.random_range(0..16))).collect());
            let g = Poly::new(theta, (0..rng.random_range(1..6)).map(|_| RingElement::from_index(rng.random_range(0..16))).collect());
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let fg = f.mul(&g);
            if fg.degree() == Some(f.degree().unwrap() + g.degree().unwrap()) {
                checks += 1;
                if fg.reciprocal().unwrap() != f.reciprocal().unwrap().mul(&g.reciprocal().unwrap()) {
                    failures.push(format!("{theta}: reciprocal of a product"));
                }
            }
        }
    }
    failures.dedup();
    (failures.is_empty(), format!("{checks} checks, {} failures {:?}", failures.len(), failures.iter().take(4).collect::<Vec<_>>()))
}

fn conjecture() -> (bool, String) {
    let r = conjecture_harness(&ConjectureScope::default()).expect("harness");
    let fixture = r.fixtures.iter().find(|c| c.id == "example-r2" && c.index == 2 && c.co_index == 2);
    let detail = format!(
        "if: {:?} ({} agree, {} fail); only-if: {:?} ({} agree, {} fail); l = m = 2 fixture: {}",
        r.if_direction.verdict,
        r.if_direction.agreements,
        r.if_direction.failures,
        r.only_if_direction.verdict,
        r.only_if_direction.agreements,
        r.only_if_direction.failures,
        fixture.map_or("missing".to_string(), |c| format!("if holds = {}, only-if holds = {}", c.if_direction, c.only_if_direction)),
    );
    (fixture.is_some() && r.if_direction.cases + r.if_direction.vacuous > 0, detail)
}

fn performance() -> (bool, String) {
    let f = fixture("table2-5").expect("fixture");
    let code = build(f.theta, &f.construction, DEFAULT_MAX_SIZE).expect("build");
    let table = default_table(f.theta).expect("table");
    let run = |workers: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("pool");
        let start = Instant::now();
        let d = pool.install(|| min_dna_distance_exhaustive(&code, table));
        (d, start.elapsed())
    };
    let cpus = std::thread::available_parallelism().map_or(1, |n| n.get());
    let (d1, t1) = run(1);
    let mut results = vec![(1, d1, t1)];
    for w in [2, 4, cpus.max(2)] {
        if !results.iter().any(|r| r.0 == w) {
            let (d, t) = run(w);
            results.push((w, d, t));
        }
    }
    let same = results.iter().all(|r| r.1 == d1);
    let (wmax, _, tmax) = *results.iter().max_by_key(|r| r.0).unwrap();
    let speedup = t1.as_secs_f64() / tmax.as_secs_f64();
    let scales = cpus == 1 || speedup > 1.2;
    let timings: Vec<String> = results.iter().map(|(w, _, t)| format!("{w}w {:.2}s", t.as_secs_f64())).collect();
    (
        code.size() == 4096 && d1 == Some(4) && t1 < Duration::from_secs(60) && same && scales,
        format!(
            "M = {}, d_dna = {d1:?}, {}, speedup at {wmax} workers {speedup:.2} on {cpus} cpu(s), identical = {same}",
            code.size(),
            timings.join(", ")
        ),
    )
}

fn main() {
    let lines = vec![
        check(1, 1, example_r2),
        check(2, 5, example_r22w),
        check(3, 120, tables),
        check(4, 30, self_dual_example),
        check(5, 300, reversibility_harness),
        check(6, 5, distance_relation),
        check(7, 120, gray),
        check(8, 300, frobenius),
        check(9, 300, property_suites),
        check(10, 600, conjecture),
        check(11, 120, performance),
    ];
    for l in &lines {
        println!(
            "criterion {:>2} {} ({:.2}s, limit {}s) {}",
            l.id,
            if l.passed { "PASS" } else { "FAIL" },
            l.elapsed.as_secs_f64(),
            l.limit.as_secs(),
            l.detail
        );
    }
    let passed = lines.iter().filter(|l| l.passed).count();
    println!("{passed}/{} criteria pass", lines.len());
    for l in &lines {
        assert_eq!(
            l.passed,
            !EXPECTED_FAILURES.contains(&l.id),
            "criterion {} outcome changed: {}",
            l.id,
            l.detail
        );
    }
}

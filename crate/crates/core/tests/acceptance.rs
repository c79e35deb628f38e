//! End-to-end acceptance checks. Each criterion prints one line:
//! `criterion N PASS|FAIL <elapsed> <detail>`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use maxgenus::bounds::{f1, BoundReport};
use maxgenus::construct::{generate_prefix, predicted_count, verify_distinct, GenerateMode, ResolvedBatch, Stage};
use maxgenus::oracle::{enumerate_embeddings, face_census, face_census_with_jobs, one_face_embeddings, random_embedding};
use maxgenus::{generate_all, parse, serialize, BigUint, Dart, Embedding, Graph};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = 1_000_000_000;

type Check = Result<String, String>;
type Criterion = (u32, Duration, fn() -> Check);

fn k(p: u32, q: u32) -> Graph {
    Graph::complete_bipartite(p, q).unwrap()
}

fn exhaustive() -> GenerateMode {
    GenerateMode::Exhaustive { budget: 1_000_000 }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Check {
    let report = face_census(&k(2, 3), BUDGET).map_err(|e| e.to_string())?;
    ensure(report.total_systems == BigUint::from(4u32), || format!("{} systems", report.total_systems))?;
    ensure(report.one_face == BigUint::from(2u32), || format!("{} one-face", report.one_face))?;
    Ok("4 systems, 2 one-face".into())
}

fn prefix_check(s: u32, expected: usize, systems: u32) -> Result<(String, usize), String> {
    let n = 2 * s + 1;
    let items = generate_prefix(n, 2, exhaustive()).map_err(|e| e.to_string())?;
    let distinct = verify_distinct(&items);
    ensure(items.len() == expected && distinct.unique_embeddings == expected, || {
        format!("generated {}", distinct.summary())
    })?;
    ensure(items.iter().all(|(_, e)| e.is_one_face()), || "a generated embedding has several faces".into())?;
    let census = face_census(&k(2, n), BUDGET).map_err(|e| e.to_string())?;
    ensure(census.total_systems == BigUint::from(systems), || format!("{} systems", census.total_systems))?;
    ensure(census.one_face >= BigUint::from(expected), || format!("oracle one-face {}", census.one_face))?;
    Ok((format!("{} distinct, oracle one-face {} of {}", expected, census.one_face, systems), items.len()))
}

fn c2() -> Check {
    prefix_check(2, 36, 576).map(|r| r.0)
}

fn c3() -> Check {
    let (detail, _) = prefix_check(3, 1800, 518_400)?;
    let g = k(2, 7);
    let t1 = Instant::now();
    let one = face_census_with_jobs(&g, BUDGET, 1).map_err(|e| e.to_string())?;
    let d1 = t1.elapsed();
    let t2 = Instant::now();
    let two = face_census_with_jobs(&g, BUDGET, 2).map_err(|e| e.to_string())?;
    let d2 = t2.elapsed();
    ensure(one == two, || "census differs between 1 and 2 workers".into())?;
    let cpus = std::thread::available_parallelism().map_or(1, |c| c.get());
    let speedup = d1.as_secs_f64() / d2.as_secs_f64().max(1e-9);
    let scaling = if cpus >= 2 {
        ensure(speedup >= 1.5, || format!("2-worker speedup {speedup:.2} on {cpus} cpus"))?;
        format!("2-worker speedup {speedup:.2}")
    } else {
        "speedup not measurable on 1 cpu".to_string()
    };
    Ok(format!("{detail}; 1 vs 2 workers identical; {scaling}"))
}

fn c4() -> Check {
    let items = generate_all(3, exhaustive()).map_err(|e| e.to_string())?;
    let distinct = verify_distinct(&items);
    ensure(items.len() == 16 && distinct.unique_embeddings == 16, || distinct.summary())?;
    let oracle: HashSet<Embedding> = one_face_embeddings(&k(3, 3), BUDGET).map_err(|e| e.to_string())?.into_iter().collect();
    ensure(items.iter().all(|(_, e)| oracle.contains(e)), || "generated embedding missing from oracle set".into())?;
    let closed = f1(3).map_err(|e| e.to_string())?;
    let staged = predicted_count(3).map_err(|e| e.to_string())?;
    ensure(closed == BigUint::from(16u32) && staged == closed, || format!("f1 {closed}, staged {staged}"))?;
    Ok(format!("16 distinct, all in oracle set of {}, f1 = staged = 16", oracle.len()))
}

fn c5() -> Check {
    let base = generate_prefix(5, 2, exhaustive()).map_err(|e| e.to_string())?;
    ensure(base.len() == 36, || format!("{} K(2,5) intermediates", base.len()))?;
    let sub0 = Stage::pendant(3);
    let sub2 = Stage::single(3, 2);
    let (mut min0, mut min2) = (u64::MAX, u64::MAX);
    for (_, e) in &base {
        let first = ResolvedBatch::resolve(e, &sub0.batch()).map_err(|e| e.to_string())?.one_face_completions(e);
        min0 = min0.min(first.len() as u64);
        for (_, mid) in &first {
            let second = ResolvedBatch::resolve(mid, &sub2.batch()).map_err(|e| e.to_string())?.one_face_completions(mid);
            min2 = min2.min(second.len() as u64);
        }
    }
    ensure(min0 >= 8 && min2 >= 12, || format!("substep minima {min0}, {min2}"))?;
    let items = generate_prefix(5, 3, exhaustive()).map_err(|e| e.to_string())?;
    let distinct = verify_distinct(&items);
    ensure(items.len() == 3456 && distinct.unique_embeddings == 3456, || distinct.summary())?;
    ensure(items.iter().all(|(_, e)| e.is_one_face()), || "a K(3,5) output has several faces".into())?;
    let census = face_census(&k(3, 5), BUDGET).map_err(|e| e.to_string())?;
    ensure(census.total_systems == BigUint::from(442_368u32), || format!("{} systems", census.total_systems))?;
    ensure(census.one_face >= BigUint::from(3456u32), || format!("oracle one-face {}", census.one_face))?;
    Ok(format!(
        "substep minima {min0} and {min2} (product {}), 3456 distinct, oracle one-face {} of 442368",
        min0 * min2,
        census.one_face
    ))
}

fn c6() -> Check {
    let five = BoundReport::new(5).map_err(|e| e.to_string())?;
    ensure(five.f1_minus_f2 == BigRational::from_integer(6_772_211_712u64.into()), || {
        format!("f1(5) - f2(5) = {}", five.f1_minus_f2)
    })?;
    ensure(!five.discrepancy(), || "n = 5 flagged".into())?;
    let three = BoundReport::new(3).map_err(|e| e.to_string())?;
    ensure(three.f1_minus_f2 == BigRational::from_integer(12.into()), || format!("f1(3) - f2(3) = {}", three.f1_minus_f2))?;
    ensure(three.discrepancy(), || "printed 16 not flagged".into())?;
    Ok("f1(5) - f2(5) = 6772211712; f1(3) - f2(3) = 12, printed 16 flagged".into())
}

fn c7() -> Check {
    for n in [3, 5, 7, 9] {
        let r = BoundReport::new(n).map_err(|e| e.to_string())?;
        ensure(r.f1_vs_stahl == Ordering::Greater, || format!("n = {n}: f1 {:?} stahl", r.f1_vs_stahl))?;
    }
    let r = BoundReport::new(11).map_err(|e| e.to_string())?;
    ensure(r.f1_vs_stahl == Ordering::Less, || format!("n = 11: f1 {:?} stahl", r.f1_vs_stahl))?;
    Ok("f1 > stahl for n = 3..9, f1 < stahl at n = 11".into())
}

fn c8() -> Check {
    for n in [1u32, 3, 5, 7, 9, 11] {
        let staged = predicted_count(n).map_err(|e| e.to_string())?;
        let closed = f1(u64::from(n)).map_err(|e| e.to_string())?;
        ensure(staged == closed, || format!("n = {n}: staged {staged}, closed {closed}"))?;
    }
    Ok("staged product equals f1 for n = 1, 3, 5, 7, 9, 11".into())
}

fn check_system(e: &Embedding) -> Result<(), String> {
    let g = e.graph();
    let census = e.trace_faces();
    let twice = 2 + g.edge_count() as i64 - g.vertex_count() as i64 - census.face_count as i64;
    ensure(twice >= 0 && twice % 2 == 0, || format!("non-integer genus, 2g = {twice}"))?;
    let beta = g.betti().map_err(|e| e.to_string())?;
    ensure(census.genus as i64 == twice / 2 && census.genus <= beta / 2, || {
        format!("genus {} vs β {beta}", census.genus)
    })?;
    let mut seen: Vec<Dart> = census.walks.iter().flatten().copied().collect();
    let total = seen.len();
    seen.sort_unstable();
    seen.dedup();
    ensure(total == g.dart_count() && seen.len() == total, || format!("walks cover {total} of {} darts", g.dart_count()))?;
    let corners: usize = census.corner_faces.iter().map(Vec::len).sum();
    ensure(corners == g.dart_count(), || format!("{corners} corners"))?;
    ensure(e.mirror().face_count() == census.face_count, || "mirror changes face count".into())?;
    ensure(parse(&serialize(e)).as_ref() == Ok(e), || "serialization round-trip".into())?;
    Ok(())
}

fn c9() -> Check {
    let mut checked = 0usize;
    for (p, q) in [(2, 3), (2, 5), (3, 3)] {
        for e in enumerate_embeddings(&k(p, q), BUDGET).map_err(|e| e.to_string())? {
            check_system(&e)?;
            checked += 1;
        }
    }
    let g = k(4, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        check_system(&random_embedding(&g, &mut rng))?;
        checked += 1;
    }
    ensure(checked == 4 + 576 + 64 + 1000, || format!("{checked} systems"))?;
    Ok(format!("{checked} systems"))
}

fn c10() -> Check {
    let items = generate_all(5, GenerateMode::Sampled { seed: 0, count: 10_000 }).map_err(|e| e.to_string())?;
    ensure(items.len() == 10_000, || format!("{} draws", items.len()))?;
    ensure(
        items.iter().all(|(_, e)| e.is_one_face() && e.graph() == &k(5, 5)),
        || "a draw is not a one-face K(5,5) embedding".into(),
    )?;
    let distinct = verify_distinct(&items);
    ensure(distinct.is_injective(), || {
        format!("{} collisions between distinct sequences", distinct.collisions.iter().filter(|c| !c.same_sequence()).count())
    })?;
    Ok(format!("10000 one-face draws, {}, {} distinct sequences", distinct.summary(), distinct.distinct_sequences))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        (1, Duration::from_secs(1), c1),
        (2, Duration::from_secs(5), c2),
        (3, Duration::from_secs(120), c3),
        (4, Duration::from_secs(5), c4),
        (5, Duration::from_secs(600), c5),
        (6, Duration::from_secs(1), c6),
        (7, Duration::from_secs(1), c7),
        (8, Duration::from_secs(1), c8),
        (9, Duration::from_secs(60), c9),
        (10, Duration::from_secs(120), c10),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout();
    for (id, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(detail) if elapsed <= limit => (true, detail),
            Ok(detail) => (false, format!("{detail}; over the {}s limit", limit.as_secs())),
            Err(msg) => (false, msg),
        };
        let verdict = if pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "criterion {id:>2} {verdict} {:>8.3}s {detail}", elapsed.as_secs_f64());
        if !pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

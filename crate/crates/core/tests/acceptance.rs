//! Exit criteria. Each criterion prints one PASS/FAIL line; run with
//! `cargo test -p misdual --test acceptance -- --nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use misdual::closed_forms::max_with_ones_table;
use misdual::duality::graph_and_witnesses;
use misdual::oracles::{canonical_form, extremal_graphs_up_to_iso, oracle_g, oracle_s, SearchMode};
use misdual::{
    closed_neighborhood, complexity_table, count_mis, cover_from_graph, cycle_graph, disjoint_union,
    ell, enumerate_mis, extremal_graph, graph_from_expression, join, minimal_expression,
    parse_expression, perrin, s_of, validate_cover, ExtremalVariant, Graph, VertexSet,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    check(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn complexity_table_reproduction() -> Outcome {
    let fixture: Vec<(usize, u32)> = include_str!("fixtures/complexity_1000.csv")
        .lines()
        .map(|l| {
            let (m, c) = l.split_once(',').unwrap();
            (m.parse().unwrap(), c.parse().unwrap())
        })
        .collect();
    check(fixture.len() == 1000, || format!("fixture has {} rows", fixture.len()))?;
    let start = Instant::now();
    let table = complexity_table(1000).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for &(m, c) in &fixture {
        check(table.get(m) == Some(c), || format!("c({m}) = {:?}, fixture says {c}", table.get(m)))?;
    }
    for (m, c) in [(10, 7), (107, 16), (719, 23), (1000, 21)] {
        check(table.get(m) == Some(c), || format!("anchor c({m}) != {c}"))?;
    }
    within(elapsed, Duration::from_secs(1), "complexity_table(1000)")?;
    Ok(format!("1000/1000 pairs, {elapsed:?}"))
}

fn moon_moser_desk_scale() -> Outcome {
    let start = Instant::now();
    for n in 1..=7usize {
        let g = oracle_g(n).map_err(|e| e.to_string())?;
        let l = ell(n as u32).unwrap();
        check(g == l, || format!("g({n}) = {g}, ell({n}) = {l}"))?;
    }
    check(oracle_g(7).unwrap() == big(12), || "g(7) != 12".into())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(600), "scan through n = 7")?;
    Ok(format!("g(n) = ell(n) for n <= 7, {elapsed:?}"))
}

fn extremal_uniqueness() -> Outcome {
    let seven = extremal_graphs_up_to_iso(7).map_err(|e| e.to_string())?;
    let six = extremal_graphs_up_to_iso(6).map_err(|e| e.to_string())?;
    check(seven.len() == 2, || format!("{} classes at n = 7", seven.len()))?;
    check(six.len() == 1, || format!("{} classes at n = 6", six.len()))?;
    let mut expected: Vec<u64> = [ExtremalVariant::TwoEdges, ExtremalVariant::K4]
        .iter()
        .map(|&v| canonical_form(&extremal_graph(7, v).unwrap()))
        .collect();
    expected.sort_unstable();
    let found: Vec<u64> = seven.iter().map(canonical_form).collect();
    check(found == expected, || "n = 7 classes differ from the two constructions".into())?;
    Ok("2 classes at n = 7, 1 at n = 6".into())
}

fn inverse_relation() -> Outcome {
    for n in 1..=200u32 {
        let s = s_of(&ell(n).unwrap()).unwrap();
        check(s == n, || format!("s(ell({n})) = {s}"))?;
    }
    for m in 1..=12u64 {
        let o = oracle_s(m, SearchMode::Reduction).map_err(|e| e.to_string())?;
        let s = s_of(&big(m)).unwrap();
        check(o == s, || format!("reduction oracle_s({m}) = {o}, s = {s}"))?;
    }
    for m in 1..=4u64 {
        let o = oracle_s(m, SearchMode::Direct).map_err(|e| e.to_string())?;
        let s = s_of(&big(m)).unwrap();
        check(o == s, || format!("direct oracle_s({m}) = {o}, s = {s}"))?;
    }
    Ok("n <= 200; reduction m <= 12; direct m <= 4".into())
}

fn construction_soundness() -> Outcome {
    let start = Instant::now();
    let table = complexity_table(300).unwrap();
    for m in 1..=300usize {
        let e = minimal_expression(m, &table).map_err(|e| e.to_string())?;
        let g = graph_from_expression(&e).map_err(|e| e.to_string())?;
        let c = table.get(m).unwrap() as usize;
        check(g.n() == c, || format!("m = {m}: {} vertices, c = {c}", g.n()))?;
        check(count_mis(&g) == big(m as u64), || format!("m = {m}: {} MISes", count_mis(&g)))?;
        if m <= 60 {
            let listed = enumerate_mis(&g).unwrap().len();
            check(listed == m, || format!("m = {m}: enumeration found {listed}"))?;
        }
    }
    let ten = parse_expression("(1+1)((1+1)(1+1)+1)").unwrap();
    let g = graph_from_expression(&ten).unwrap();
    check(g.n() == 7 && count_mis(&g) == big(10), || "(1+1)((1+1)(1+1)+1) is not 7 vertices / 10 MISes".into())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30), "construction soundness")?;
    Ok(format!("m <= 300, {elapsed:?}"))
}

fn round_trip(g: &Graph) -> Result<(), String> {
    let c = cover_from_graph(g).map_err(|e| format!("{g:?}: {e}"))?;
    let report = validate_cover(&c);
    check(report.is_valid(), || format!("{g:?}: cover fails validation {report:?}"))?;
    check(c.len() <= g.n(), || format!("{g:?}: {} sets", c.len()))?;
    let (h, _witnesses) = graph_and_witnesses(&c).map_err(|e| format!("{g:?}: {e}"))?;
    check(count_mis(&h) >= count_mis(g), || format!("{g:?}: round trip lost MISes"))
}

fn duality_round_trip() -> Outcome {
    let start = Instant::now();
    let mut exhaustive = 0u64;
    for n in 1..=5usize {
        for g in common::all_graphs(n) {
            if n >= 2 && g.isolated_vertices().next().is_some() {
                continue;
            }
            round_trip(&g)?;
            exhaustive += 1;
        }
    }
    // K_1 plus the isolated-vertex-free labeled graphs on 2..=5 vertices
    let expected = 1 + (2..=5).map(common::count_without_isolated).sum::<i64>() as u64;
    check(exhaustive == expected, || format!("enumerated {exhaustive}, expected {expected}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let n = rng.gen_range(6..=8);
        round_trip(&common::random_graph_without_isolated(&mut rng, n))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300), "duality round trip")?;
    Ok(format!("{exhaustive} exhaustive + 10000 random, {elapsed:?}"))
}

fn perrin_cycles() -> Outcome {
    for j in 3..=25u32 {
        let c = count_mis(&cycle_graph(j as usize).unwrap());
        let p = perrin(j).unwrap();
        check(c == p, || format!("m(C_{j}) = {c}, perrin = {p}"))?;
    }
    check(count_mis(&cycle_graph(4).unwrap()) == big(2), || "m(C_4) != 2".into())?;
    check(count_mis(&cycle_graph(5).unwrap()) == big(5), || "m(C_5) != 5".into())?;
    Ok("j = 3..25".into())
}

fn selfridge() -> Outcome {
    let limit: usize = (ell(25).unwrap() + 1u32).try_into().unwrap();
    let table = complexity_table(limit).unwrap();
    for n in 1..=25u32 {
        let top = table.max_with_complexity(n).map(|m| big(m as u64));
        let l = ell(n).unwrap();
        check(top.as_ref() == Some(&l), || format!("max c^-1({n}) = {top:?}, ell = {l}"))?;
    }
    for (k, e) in max_with_ones_table(40).unwrap().into_iter().enumerate() {
        let n = k as u32 + 1;
        check(e == ell(n).unwrap(), || format!("max_with_ones({n}) = {e}"))?;
    }
    Ok(format!("table limit {limit}, n <= 25; E(n) = ell(n) for n <= 40"))
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let samples = 10_000;
    for _ in 0..samples {
        let a = rng.gen_range(1..=10);
        let b = rng.gen_range(1..=10);
        let g = common::random_graph(&mut rng, a);
        let h = common::random_graph(&mut rng, b);
        let (mg, mh) = (count_mis(&g), count_mis(&h));
        let u = count_mis(&disjoint_union(&g, &h).unwrap());
        check(u == &mg * &mh, || format!("product law fails for {g:?} and {h:?}"))?;
        let j = count_mis(&join(&g, &h).unwrap());
        check(j == &mg + &mh, || format!("join law fails for {g:?} and {h:?}"))?;
        for v in 0..g.n() {
            let a = count_mis(&g.remove_vertices(VertexSet::singleton(v)));
            let b = count_mis(&g.remove_vertices(closed_neighborhood(&g, v).unwrap()));
            check(mg <= a + b, || format!("branching inequality fails at {v} in {g:?}"))?;
        }
    }
    let ells: Vec<BigUint> = (1..=201).map(|n| ell(n).unwrap()).collect();
    for n in 1..=200usize {
        check(ells[n - 1] < ells[n], || format!("ell not increasing at {n}"))?;
    }
    for a in 1..120usize {
        for b in 1..=120 - a {
            check(&ells[a - 1] * &ells[b - 1] <= ells[a + b - 1], || format!("super-multiplicativity fails at {a}, {b}"))?;
        }
    }
    Ok(format!("{samples} random pairs, 0 violations"))
}

#[test]
fn acceptance_suite() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("complexity table reproduction", complexity_table_reproduction),
        ("moon-moser at desk scale", moon_moser_desk_scale),
        ("extremal uniqueness", extremal_uniqueness),
        ("inverse relation", inverse_relation),
        ("construction soundness", construction_soundness),
        ("duality round trip", duality_round_trip),
        ("perrin", perrin_cycles),
        ("selfridge", selfridge),
        ("property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

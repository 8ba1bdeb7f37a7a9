//! Acceptance suite: one PASS/FAIL line per criterion. With
//! `ACCEPTANCE_STRICT=1` the process exits non-zero when any criterion fails;
//! otherwise failures are reported but do not fail `cargo test`.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use asm_tsscpp::asm::{asm_to_bpd, bpd_to_asm, enumerate_asm};
use asm_tsscpp::bijections::{
    block_correspondence, compare_main, grass_correspondence, inv_grass_correspondence, reduced_bpds,
    schubert_from_bpd, schubert_from_pd, table1_row,
};
use asm_tsscpp::bpd::droop_poset;
use asm_tsscpp::pd::{bottom_pd, enumerate_pd, enumerate_pd_red, slide_poset, PipeDream};
use asm_tsscpp::perm::{
    essential_boxes, is_rectangle, pattern_1432, pattern_2143, rothe_diagram, Permutation,
};
use asm_tsscpp::poset::{is_isomorphic, Poset};
use asm_tsscpp::tsscpp::{enumerate_triangles, pd_to_triangle};
use common::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("{what} took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
}

fn criterion_1() -> Check {
    let expected: [(u64, u64, u64, u64, u64); 7] = [
        (1, 1, 1, 1, 1),
        (2, 2, 2, 2, 2),
        (6, 7, 7, 7, 7),
        (24, 33, 36, 40, 42),
        (120, 185, 246, 362, 429),
        (720, 1175, 2135, 5125, 7436),
        (5040, 8261, 23067, 112941, 218348),
    ];
    let mut times = Vec::new();
    let mut mismatches = Vec::new();
    let start = Instant::now();
    for (k, want) in expected.iter().enumerate() {
        let n = k + 1;
        if n == 7 {
            within(start, Duration::from_secs(60), "rows n = 1..6")?;
        }
        let t = Instant::now();
        let r = table1_row(n).map_err(|e| e.to_string())?;
        times.push(t.elapsed());
        let got = (r.perm, r.both_avoiding, r.avoiding_1432, r.matched, r.total);
        if got != *want {
            mismatches.push(format!("n = {n}: got {got:?}, expected {want:?}"));
        }
        ensure(r.matched_1432 == r.avoiding_1432, || {
            format!(
                "n = {n}: TSSCPP-side 1432 count {} differs from {}",
                r.matched_1432, r.avoiding_1432
            )
        })?;
    }
    within(start, Duration::from_secs(600), "rows n = 1..7")?;
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    let small: Duration = times[..6].iter().sum();
    Ok(format!(
        "rows n = 1..7 match; n <= 6 in {:.2}s, n = 7 in {:.2}s",
        small.as_secs_f64(),
        times[6].as_secs_f64()
    ))
}

fn criterion_2() -> Check {
    let mut counts = Vec::new();
    for n in 1..=7 {
        let t = enumerate_triangles(n).unwrap().count() as u64;
        let a = enumerate_asm(n).unwrap().count() as u64;
        ensure(t == a && a == andrews(n), || {
            format!("n = {n}: {t} triangles, {a} ASMs, product formula {}", andrews(n))
        })?;
        counts.push(a);
    }
    Ok(format!("counts {counts:?}"))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for n in [4, 5] {
        for pi in Permutation::all(n) {
            let pd = schubert_from_pd(&pi).map_err(|e| e.to_string())?;
            let bpd = schubert_from_bpd(&pi).map_err(|e| e.to_string())?;
            ensure(pd == bpd, || format!("{pi}: pd {pd} vs bpd {bpd}"))?;
            let dd = schubert_by_divided_differences(&pi);
            ensure(pd == dd, || format!("{pi}: pd {pd} vs divided differences {dd}"))?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(30), "Schubert identity")?;
    Ok(format!("{checked} permutations agree term by term (also with divided differences)"))
}

fn criterion_4() -> Check {
    let mut sizes = Vec::new();
    for n in 1..=5 {
        let mut image = BTreeSet::new();
        for t in enumerate_triangles(n).unwrap() {
            let d = t.to_pd();
            ensure(d.cross_weight() == t.weight(), || format!("weight mismatch for triangle\n{t}"))?;
            image.insert(d);
        }
        let py: BTreeSet<PipeDream> = enumerate_pd(n).unwrap().filter(|d| d.is_pseudo_yamanouchi()).collect();
        let total = enumerate_pd(n).unwrap().count();
        ensure(total == 1 << (n * (n - 1) / 2), || format!("n = {n}: {total} pipe dreams"))?;
        ensure(image == py, || {
            format!("n = {n}: image has {} pipe dreams, PY subset {}", image.len(), py.len())
        })?;
        sizes.push(py.len());
    }
    Ok(format!("image = PY subset for n = 1..5, sizes {sizes:?}"))
}

fn criterion_5() -> Check {
    let (mut equal, mut strict) = (0, 0);
    for pi in Permutation::all(5) {
        let c = compare_main(&pi).map_err(|e| e.to_string())?;
        ensure(c.dominated(), || format!("{pi}: {} not dominated by {}", c.tsscpp, c.bpd))?;
        if pi.avoids_1432() {
            ensure(c.equal(), || format!("{pi} avoids 1432 but {} != {}", c.tsscpp, c.bpd))?;
            equal += 1;
        } else if !c.equal() {
            strict += 1;
        }
    }
    let c = compare_main(&perm("1432")).map_err(|e| e.to_string())?;
    ensure(c.tsscpp.total() == 4 && c.bpd.total() == 5, || {
        format!("1432: {} vs {} elements", c.tsscpp.total(), c.bpd.total())
    })?;
    Ok(format!(
        "{equal} 1432-avoiding permutations equal, {} others dominated ({strict} strictly); 1432 gives 4 vs 5",
        120 - equal
    ))
}

fn check_correspondence(c: &asm_tsscpp::bijections::Correspondence) -> Result<(), String> {
    let target = if c.dual { c.slide.dual() } else { c.slide.clone() };
    ensure(is_isomorphism(&c.droop, &target, &c.map, true), || {
        format!("{}: returned map is not an isomorphism", c.pi)
    })
}

fn criterion_6() -> Check {
    let mut inv = 0;
    for pi in Permutation::all(5).filter(|p| p.is_inverse_grassmannian()) {
        let c = inv_grass_correspondence(&pi).map_err(|e| e.to_string())?;
        check_correspondence(&c)?;
        for (b, d) in c.pairs() {
            ensure(b.row_blank_counts() == d.row_cross_counts(), || format!("{pi}: row weights differ"))?;
        }
        inv += 1;
    }
    let c14253 = inv_grass_correspondence(&perm("14253")).map_err(|e| e.to_string())?;
    ensure(c14253.pairs().all(|(b, d)| b.blank_weight() == d.cross_weight()), || {
        "14253: weights differ".into()
    })?;

    let mut grass = 0;
    for pi in Permutation::all(5).filter(|p| p.is_grassmannian()) {
        check_correspondence(&grass_correspondence(&pi).map_err(|e| e.to_string())?)?;
        grass += 1;
    }
    let p146235 = perm("146235");
    check_correspondence(&grass_correspondence(&p146235).map_err(|e| e.to_string())?)?;
    let slide = slide_poset(&p146235);
    ensure(is_isomorphic(&slide, &slide.dual(), false).unwrap().is_none(), || {
        "slide(146235) is self-dual".into()
    })?;
    ensure(is_isomorphic(&droop_poset(&p146235), &slide, false).unwrap().is_none(), || {
        "droop(146235) is isomorphic to slide(146235)".into()
    })?;

    let mut blocks = 0;
    for pi in Permutation::all(5).filter(|p| p.avoids_1432() && p.avoids_2143()) {
        let b = block_correspondence(&pi).map_err(|e| e.to_string())?;
        ensure(b.sizes_agree(), || format!("{pi}: slide and droop sizes differ"))?;
        blocks += 1;
    }
    Ok(format!(
        "{inv} inverse-Grassmannian, {grass} Grassmannian (+146235, not self-dual), {blocks} block decompositions"
    ))
}

fn criterion_7() -> Check {
    for n in 1..=6 {
        for pi in Permutation::all(n) {
            ensure(bottom_pd(&pi).is_pseudo_yamanouchi(), || format!("bottom PD of {pi} is not PY"))?;
        }
    }
    let mut slides = 0;
    for n in 1..=5 {
        for d in enumerate_pd(n).unwrap().filter(|d| d.is_pseudo_yamanouchi()) {
            for e in d.simple_slides() {
                ensure(e.is_pseudo_yamanouchi(), || format!("slide of\n{d}gives non-PY\n{e}"))?;
                slides += 1;
            }
        }
    }
    let (mut vex, mut av1432) = (0, 0);
    for n in 1..=5 {
        for pi in Permutation::all(n) {
            if pi.avoids_2143() {
                let all: BTreeSet<_> = reduced_bpds(&pi).unwrap().into_iter().collect();
                let droop: BTreeSet<_> = droop_poset(&pi).elements().iter().cloned().collect();
                ensure(all == droop, || {
                    format!("{pi}: {} reduced BPDs, droop closure {}", all.len(), droop.len())
                })?;
                let ess: Vec<_> = essential_boxes(&pi).into_iter().collect();
                for a in &ess {
                    for b in &ess {
                        ensure(!(a.0 < b.0 && a.1 < b.1), || {
                            format!("{pi}: essential box {b:?} lies SE of {a:?}")
                        })?;
                    }
                }
                vex += 1;
            }
            if pi.avoids_1432() {
                let red: BTreeSet<_> = enumerate_pd_red(&pi).unwrap().collect();
                let slide: BTreeSet<_> = slide_poset(&pi).elements().iter().copied().collect();
                ensure(red == slide, || format!("{pi}: {} reduced PDs, slide closure {}", red.len(), slide.len()))?;
                for region in rothe_diagram(&pi).regions() {
                    if !region.contains(&(1, 1)) {
                        ensure(is_rectangle(&region), || format!("{pi}: region {region:?} is not a rectangle"))?;
                    }
                }
                av1432 += 1;
            }
        }
    }
    Ok(format!(
        "bottom PDs PY (n <= 6); {slides} slides keep PY; {vex} 2143-avoiding and {av1432} 1432-avoiding permutations checked"
    ))
}

fn criterion_8() -> Check {
    for n in 1..=5 {
        for a in enumerate_asm(n).unwrap() {
            let d = asm_to_bpd(&a);
            ensure(bpd_to_asm(&d) == a, || format!("ASM round trip fails for\n{a}"))?;
        }
        for d in enumerate_pd(n).unwrap() {
            let s = d.to_sequence();
            s.validate(n).map_err(|e| e.to_string())?;
            ensure(PipeDream::from_sequence(&s, n).unwrap() == d, || format!("sequence round trip fails for\n{d}"))?;
            if let Ok(t) = pd_to_triangle(&d) {
                ensure(t.to_pd() == d, || format!("triangle round trip fails for\n{d}"))?;
            }
        }
        for t in enumerate_triangles(n).unwrap() {
            ensure(pd_to_triangle(&t.to_pd()).unwrap() == t, || format!("triangle round trip fails for\n{t}"))?;
        }
    }
    let patterns = [pattern_1432(), pattern_2143(), perm("123"), perm("321"), perm("2413")];
    let mut pattern_checks = 0;
    for n in 1..=7 {
        for pi in Permutation::all(n) {
            for p in &patterns {
                ensure(pi.contains_pattern(p) == brute_contains(&pi, p), || format!("{pi} vs pattern {p}"))?;
                pattern_checks += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(20261016);
    let mut pairs = 0;
    for n in 1..=8 {
        let trials = if n <= 6 { 200 } else { 40 };
        for k in 0..trials {
            let density = [0.2, 0.35, 0.5][k % 3];
            let ident: Vec<usize> = (0..n).collect();
            let p = random_poset(&mut rng, n, density, &ident);
            let q: Poset<usize> = if k % 2 == 0 {
                let mut shuffle = ident.clone();
                shuffle.shuffle(&mut rng);
                let mut rel = Vec::new();
                for &(a, b) in p.covers() {
                    rel.push((shuffle[a], shuffle[b]));
                }
                Poset::from_relations(ident.clone(), &rel).unwrap()
            } else {
                random_poset(&mut rng, n, density, &ident)
            };
            let fast = is_isomorphic(&p, &q, false).unwrap();
            let slow = brute_is_isomorphic(&p, &q, false);
            ensure(fast.is_some() == slow, || format!("disagreement on {:?} vs {:?}", p.covers(), q.covers()))?;
            if let Some(m) = fast {
                ensure(is_isomorphism(&p, &q, &m, false), || "returned map is not an isomorphism".into())?;
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "round trips exhaustive for n <= 5; {pattern_checks} pattern checks; {pairs} poset pairs vs brute force"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("count table, sizes 1..6 (and 7)", criterion_1),
        ("TSSCPP/ASM equinumerosity", criterion_2),
        ("Schubert identity", criterion_3),
        ("pseudo-Yamanouchi characterization", criterion_4),
        ("main theorem at multiset level", criterion_5),
        ("poset theorems", criterion_6),
        ("lemma suite", criterion_7),
        ("round-trip oracles", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS [{}] {name} ({secs:.2}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name} ({secs:.2}s): {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if failed > 0 && strict {
        std::process::exit(1);
    }
}

//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach stdout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsplit::arith::{hilbert_symbol, prime_divisors, rational, Place};
use qsplit::checks::{all_passed, crep_suite, CREP_INSTANCES};
use qsplit::cocycle::{claim_witnesses, lemma_p_mid_d_check};
use qsplit::forms::{discriminants_with_class_group, is_exceptional, GroupStructure};
use qsplit::multiquad::{MQElement, MultiQuadField};
use qsplit::nakamura::{biquad_triple, compute_all, compute_with, Choices, GrossClassResult};
use qsplit::quad::{QElement, QIdeal};
use qsplit::report::{classify_with, diff_row, GrossRecord, ADMISSIBLE_KLEIN, EXCLUDED_KLEIN, TABLE1};
use qsplit::Rational;

const CENSUS: [i64; 24] = [
    -84, -120, -132, -168, -195, -228, -280, -312, -340, -372, -408, -435, -483, -520, -532, -555, -595, -627, -708,
    -715, -760, -795, -1012, -1435,
];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn report(n: u32, name: &str, elapsed: Duration, o: &Outcome) {
    let tag = if o.passed { "PASS" } else { "FAIL" };
    println!("{tag} criterion {n} {name} ({:.2}s): {}", elapsed.as_secs_f64(), o.detail);
}

fn table1(results: &[GrossClassResult]) -> Outcome {
    let mut bad = Vec::new();
    for r in results {
        match diff_row(r) {
            Ok(d) if d.is_clean() => {}
            Ok(d) => bad.push(d.to_string()),
            Err(e) => bad.push(format!("{}: {e}", r.disc)),
        }
    }
    let ok = results.len() == 23 && bad.is_empty();
    outcome(ok, if ok { "23/23 rows match".to_string() } else { format!("{} rows, mismatches: {}", results.len(), bad.join("; ")) })
}

fn census() -> Outcome {
    let found = discriminants_with_class_group(&GroupStructure::klein(), 1500);
    let exceptional: Vec<i64> = found.iter().copied().filter(|&d| is_exceptional(d)).collect();
    let ok = found == CENSUS && exceptional == [-340];
    outcome(ok, format!("{} discriminants, exceptional {exceptional:?}", found.len()))
}

fn dichotomy(results: &[GrossClassResult]) -> Outcome {
    let split: Vec<i64> = CENSUS
        .iter()
        .copied()
        .filter(|&d| results.iter().any(|r| r.disc == d && r.has_split_quaternion()))
        .collect();
    let rest: Vec<i64> = CENSUS.iter().copied().filter(|d| !split.contains(d)).collect();
    let ok = split == ADMISSIBLE_KLEIN && rest == EXCLUDED_KLEIN;
    outcome(ok, format!("{} with a split quaternion algebra, excluded {rest:?}", split.len()))
}

fn corollary(results: &[GrossClassResult]) -> Outcome {
    let records: Vec<GrossRecord> = results.iter().map(GrossRecord::from).collect();
    match classify_with(&records) {
        Ok(rep) => {
            let (p, m) = (rep.product_algebras.len(), rep.matrix_algebras.len());
            let ok = rep.total() == 92 && p == 46 && m == 46 && rep.klein_admissible == ADMISSIBLE_KLEIN;
            outcome(ok, format!("{} = {p} product + {m} matrix", rep.total()))
        }
        Err(e) => outcome(false, format!("error: {e}")),
    }
}

fn divisor_lemma() -> Outcome {
    let mut bad = Vec::new();
    let mut classes = 0;
    for row in &TABLE1 {
        match lemma_p_mid_d_check(row.disc) {
            Ok(rep) => {
                classes += rep.entries.len();
                if !rep.passed() {
                    bad.push(row.disc);
                }
            }
            Err(e) => bad.push({
                eprintln!("{}: {e}", row.disc);
                row.disc
            }),
        }
    }
    outcome(bad.is_empty() && classes == 69, format!("{classes} classes over 23 discriminants, failures {bad:?}"))
}

fn conics() -> Outcome {
    match claim_witnesses() {
        Ok(ws) => {
            let found: Vec<String> = ws
                .iter()
                .map(|w| match w {
                    Some(w) if w.verify() => format!("({}, {}) height {}", w.a, w.b, w.height),
                    Some(_) => "unverified".to_string(),
                    None => "none".to_string(),
                })
                .collect();
            let ok = ws.iter().all(|w| w.as_ref().is_some_and(|w| w.verify()));
            outcome(ok, found.join(", "))
        }
        Err(e) => outcome(false, format!("error: {e}")),
    }
}

// product over all places of (a, b)_v
fn hilbert_product(a: i64, b: i64) -> qsplit::Result<i8> {
    let (ra, rb) = (rational(a), rational(b));
    let mut primes = prime_divisors(a.unsigned_abs() * b.unsigned_abs());
    if !primes.contains(&2) {
        primes.push(2);
    }
    let mut prod = hilbert_symbol(&ra, &rb, Place::Infinite)?;
    for p in primes {
        prod *= hilbert_symbol(&ra, &rb, Place::Finite(p))?;
    }
    Ok(prod)
}

fn properties() -> Outcome {
    let mut fails: Vec<String> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);

    let mut bad = 0;
    for _ in 0..500 {
        let pick = |rng: &mut ChaCha8Rng| loop {
            let x = rng.gen_range(-5000i64..=5000);
            if x != 0 {
                break x;
            }
        };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        if hilbert_product(a, b).map_or(true, |p| p != 1) {
            bad += 1;
        }
    }
    if bad > 0 {
        fails.push(format!("hilbert product formula {bad}/500"));
    }

    let mut bad = 0;
    for d in [-84i64, -408, -1435] {
        for _ in 0..100 {
            let (u, v) = (rng.gen_range(-60i128..=60), rng.gen_range(-60i128..=60));
            if (u, v) == (0, 0) {
                continue;
            }
            let alpha = QElement::from_coords(d, u, v);
            let ok = QIdeal::principal(&alpha).and_then(|i| {
                let g = i.principal_generator()?;
                Ok(g.is_some_and(|g| (g == alpha || g == -&alpha) && QIdeal::principal(&g).is_ok_and(|j| j == i)))
            });
            if !ok.unwrap_or(false) {
                bad += 1;
            }
        }
    }
    if bad > 0 {
        fails.push(format!("principal generator round trip {bad}"));
    }

    let mut bad = 0;
    match MultiQuadField::new(vec![-1, 5, 17]) {
        Ok(field) => {
            for _ in 0..200 {
                let coords: Vec<Rational> = (0..8).map(|_| rational(rng.gen_range(-9i64..=9))).collect();
                let Ok(x) = MQElement::new(&field, coords) else {
                    bad += 1;
                    continue;
                };
                if x.is_zero() {
                    continue;
                }
                let ok = x.mul(&x).ok().and_then(|sq| sq.sqrt()).is_some_and(|r| r == x || r == x.neg());
                if !ok {
                    bad += 1;
                }
            }
        }
        Err(_) => bad += 1,
    }
    if bad > 0 {
        fails.push(format!("multiquadratic sqrt round trip {bad}"));
    }

    for d in [-84i64, -408, -1435] {
        let base = compute_all(d);
        for (prime_skip, delta_skip) in [(1usize, 0usize), (0, 1), (2, 3)] {
            let other = compute_with(d, Choices { delta_skip, prime_skip });
            let same = match (&base, &other) {
                (Ok(a), Ok(b)) => a.same_algebras(b) && (a.primes != b.primes || prime_skip == 0),
                _ => false,
            };
            if !same {
                fails.push(format!("choice independence {d} primes+{prime_skip} delta+{delta_skip}"));
            }
        }
    }

    let crep = crep_suite(CREP_INSTANCES);
    if !all_passed(&crep) {
        for l in crep.iter().filter(|l| !l.passed) {
            fails.push(format!("{} {}", l.name, l.detail));
        }
    }

    outcome(fails.is_empty(), if fails.is_empty() { "all suites clean".to_string() } else { fails.join("; ") })
}

fn published_rows(results: &[GrossClassResult]) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for d in [-84, -195] {
        match results.iter().find(|r| r.disc == d).map(diff_row) {
            Some(Ok(diff)) if diff.is_clean() => notes.push(format!("{d} matches")),
            _ => {
                ok = false;
                notes.push(format!("{d} differs"));
            }
        }
    }
    let corrected = biquad_triple(-14, 42).ok();
    let has = results
        .iter()
        .find(|r| r.disc == -84)
        .is_some_and(|r| corrected.is_some_and(|t| r.biquadratics.contains(&t)));
    ok &= has;
    notes.push(format!("Q(sqrt -14, sqrt 42) {}", if has { "present" } else { "missing" }));
    outcome(ok, notes.join(", "))
}

fn main() -> ExitCode {
    let run = |n: u32, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        report(n, name, t.elapsed(), &o);
        o.passed
    };

    let t = Instant::now();
    let mut results = Vec::new();
    let mut errors = Vec::new();
    for row in &TABLE1 {
        match compute_all(row.disc) {
            Ok(r) => results.push(r),
            Err(e) => errors.push(format!("{}: {e}", row.disc)),
        }
    }
    let compute_time = t.elapsed();
    let t1 = {
        let mut o = table1(&results);
        if !errors.is_empty() {
            o.passed = false;
            o.detail = format!("{}; errors: {}", o.detail, errors.join("; "));
        }
        o
    };
    report(1, "table reproduction", compute_time, &t1);
    let mut all = t1.passed;
    all &= run(2, "discriminant census", &mut census);
    all &= run(3, "split-quaternion dichotomy", &mut || dichotomy(&results));
    all &= run(4, "92 algebras", &mut || corollary(&results));
    all &= run(5, "divisor lemma", &mut divisor_lemma);
    all &= run(6, "conic witnesses", &mut conics);
    all &= run(7, "property suites", &mut properties);
    all &= run(8, "published rows", &mut || published_rows(&results));

    if all { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

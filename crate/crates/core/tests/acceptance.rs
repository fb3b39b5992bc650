//! End-to-end acceptance run. Prints one line per criterion and exits with a
//! failure status if any criterion fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use regular_reals::analysis::{self, Continuity, Differentiability};
use regular_reals::automaton::{closure, trim};
use regular_reals::omega::{complement_det, determinize_closed, product_intersect, product_union};
use regular_reals::real::{affine_graph_automaton, eval_function, rational, saturate, value_universality};
use regular_reals::{accepts, corpus, geometry, Automaton, RadixVector};

use common::*;

fn q(p: i64, d: i64) -> BigRational {
    rational(p, d)
}

fn pow3(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(3).pow(k))
}

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, n: u32, problems: Vec<String>, note: String) {
        if problems.is_empty() {
            println!("criterion {n}: PASS ({note})");
        } else {
            self.failures += 1;
            println!("criterion {n}: FAIL ({note})");
            for p in problems {
                println!("    {p}");
            }
        }
    }
}

fn criterion_1() -> (Vec<String>, String) {
    let mut bad = Vec::new();
    let f = corpus::fig3();
    let start = Instant::now();
    let fun = analysis::is_function(&f).unwrap();
    if !fun.is_function() {
        bad.push(format!("is_function: {fun:?}"));
    }
    let cont = analysis::is_continuous(&f).unwrap();
    if cont != Continuity::Continuous {
        bad.push(format!("is_continuous: {cont:?}"));
    }
    match analysis::is_differentiable(&f).unwrap() {
        Differentiability::Affine { alpha, beta } => bad.push(format!("diff-check said affine {alpha}x + {beta}")),
        Differentiability::NotDifferentiable { x, y, f_mid, f_x, f_y } => {
            let d = |t: &BigRational| cantor_cover_distance(t, 12);
            let tol = pow3(12);
            let mid = (&x + &y) / q(2, 1);
            for (t, v) in [(&x, &f_x), (&y, &f_y), (&mid, &f_mid)] {
                if (d(t) - v).abs() > tol {
                    bad.push(format!("counterexample value f({t}) = {v} disagrees with the oracle"));
                }
            }
            if f_mid * q(2, 1) == &f_x + &f_y {
                bad.push(format!("counterexample ({x}, {y}) satisfies the midpoint identity"));
            }
        }
    }
    let slopes = analysis::slope_set(&f, 6).unwrap().slopes;
    if slopes != vec![q(-1, 1), q(1, 1)] {
        bad.push(format!("slopes {slopes:?}"));
    }
    let mut evals = Vec::new();
    for (x, want) in [(q(1, 2), q(1, 6)), (q(1, 3), q(0, 1)), (q(1, 4), q(0, 1))] {
        let y = eval_function(&f, &x).unwrap();
        if y != want {
            bad.push(format!("eval {x} = {y}, expected {want}"));
        }
        evals.push((x, y));
    }
    let elapsed = start.elapsed();
    for (x, y) in &evals {
        let d = cantor_cover_distance(x, 12);
        if (&d - y).abs() > pow3(12) {
            bad.push(format!("eval {x} = {y} but brute-force distance is {d}"));
        }
    }
    if elapsed >= Duration::from_secs(5) {
        bad.push(format!("pipeline took {elapsed:?}"));
    }
    (bad, format!("pipeline {elapsed:.2?}, eval 1/2 = {}", evals[0].1))
}

fn criterion_2() -> (Vec<String>, String) {
    let mut bad = Vec::new();
    let f = corpus::fig3();
    let mut last = Duration::ZERO;
    let mut seen = Vec::new();
    for k in 4..=10u32 {
        let start = Instant::now();
        let report = analysis::slope_set(&f, k as usize).unwrap();
        last = start.elapsed();
        let bound = BigRational::one() - BigRational::new(BigInt::from(2).pow(k - 1), BigInt::from(3).pow(k - 1));
        seen.push(format!("k={k}: {}", report.covered));
        if report.covered < bound {
            bad.push(format!("k={k}: covered {} < required {}", report.covered, bound));
        }
    }
    if last >= Duration::from_secs(10) {
        bad.push(format!("k=10 took {last:?}"));
    }
    (bad, format!("k=10 in {last:.2?}; {}", seen.join(", ")))
}

fn criterion_3() -> (Vec<String>, String) {
    let mut bad = Vec::new();
    let f = corpus::fig3();
    let bound = BigRational::new(BigInt::from(2).pow(9), BigInt::from(3).pow(9));
    let mut worst = BigRational::zero();
    for t in [q(1, 4), q(1, 2), q(3, 4), q(1, 1)] {
        let s = analysis::sum_form_check(&f, &t, 10).unwrap();
        if s.residual > bound {
            bad.push(format!("t={t}: residual {} > {bound}", s.residual));
        }
        worst = worst.max(s.residual);
    }
    (bad, format!("max residual {worst}"))
}

fn random_in_unit(rng: &mut ChaCha8Rng, max_den: i64) -> BigRational {
    let d = rng.gen_range(1..=max_den);
    q(rng.gen_range(0..=d), d)
}

fn criterion_4() -> (Vec<String>, String) {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let start = Instant::now();
    let mut slowest = Duration::ZERO;
    for i in 0..20 {
        let r = [2u32, 3, 5][i % 3];
        // β and α + β both in [0, 1]
        let beta = random_in_unit(&mut rng, 6);
        let end = random_in_unit(&mut rng, 6);
        let alpha = &end - &beta;
        let t = Instant::now();
        let g = affine_graph_automaton(&alpha, &beta, r).unwrap();
        let tag = format!("r={r} f(x) = {alpha}x + {beta}");
        if !analysis::is_function(&g).unwrap().is_function() {
            bad.push(format!("{tag}: not a function"));
        }
        if analysis::is_continuous(&g).unwrap() != Continuity::Continuous {
            bad.push(format!("{tag}: not continuous"));
        }
        match analysis::is_differentiable(&g).unwrap() {
            Differentiability::Affine { alpha: a, beta: b } if a == alpha && b == beta => {}
            other => bad.push(format!("{tag}: diff-check {other:?}")),
        }
        for _ in 0..20 {
            let x = random_in_unit(&mut rng, 12);
            let want = &alpha * &x + &beta;
            match eval_function(&g, &x) {
                Ok(y) if y == want => {}
                other => bad.push(format!("{tag}: eval {x} gave {other:?}, expected {want}")),
            }
        }
        slowest = slowest.max(t.elapsed());
    }
    (bad, format!("20 maps in {:.2?}, slowest {slowest:.2?}", start.elapsed()))
}

fn criterion_5() -> (Vec<String>, String) {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checks = 0usize;
    let mut accepted = 0usize;
    for i in 0..50 {
        let r = rng.gen_range(2..=3);
        let arity = rng.gen_range(1..=2);
        let radix = RadixVector::uniform(r, arity).unwrap();
        let a = random_closed(&mut rng, &radix, 6);
        let b = random_closed(&mut rng, &radix, 6);
        let raw = random_automaton(&mut rng, &radix, 6, false);
        let flags: Vec<bool> = a.states().map(|_| rng.gen_bool(0.5)).collect();
        let loose = a.with_accepting(flags);

        let trimmed = trim(&raw);
        let closed_up = closure(&loose);
        let det = determinize_closed(&a).unwrap();
        let comp = complement_det(&det).unwrap();
        let inter = product_intersect(&a, &b).unwrap();
        let uni = product_union(&det, &determinize_closed(&b).unwrap()).unwrap();
        let sat = saturate(&a).unwrap();

        let mut words = lassos_for(&mut rng, &a, 100);
        words.extend(lassos_for(&mut rng, &b, 50));
        words.extend(lassos_for(&mut rng, &raw, 50));
        let mut mismatch = |what: &str, got: bool, want: bool, w: &regular_reals::Lasso| {
            checks += 1;
            if got != want {
                bad.push(format!("automaton {i}: {what} on {} gave {got}", w.display(&radix)));
            }
        };
        for w in &words {
            let in_a = oracle_accepts(&a, w);
            let in_b = oracle_accepts(&b, w);
            accepted += in_a as usize;
            match &trimmed {
                Ok(t) => mismatch("trim", accepts(t, w), oracle_accepts(&raw, w), w),
                Err(_) => mismatch("trim (empty)", false, oracle_accepts(&raw, w), w),
            }
            mismatch("closure", accepts(&closed_up, w), oracle_infinite_run(&loose, w), w);
            mismatch("determinize_closed", accepts(&det, w), in_a, w);
            mismatch("complement_det", accepts(&comp, w), !in_a, w);
            mismatch("product", accepts(&inter, w), in_a && in_b, w);
            mismatch("union", accepts(&uni, w), in_a || in_b, w);
            let by_value = all_encodings(w, &radix).iter().any(|e| oracle_accepts(&a, e));
            mismatch("saturate", accepts(&sat, w), by_value, w);
        }
    }
    let n = bad.len();
    bad.truncate(10);
    (bad, format!("{checks} membership checks, {accepted} words in the base language, {n} mismatches"))
}

fn criterion_6() -> (Vec<String>, String) {
    let mut bad = Vec::new();
    let cantor = corpus::cantor();
    for k in 0..=10u32 {
        let m = geometry::box_measure_estimate(&cantor, k as usize).unwrap();
        let want = BigRational::new(BigInt::from(2).pow(k), BigInt::from(3).pow(k));
        if m != want {
            bad.push(format!("measure at depth {k}: {m}, expected {want}"));
        }
    }
    let w = geometry::porosity_witness(&cantor).unwrap();
    if w.constant != q(2, 9) || w.left != q(1, 3) || w.right != q(2, 3) {
        bad.push(format!("porosity witness {w:?}"));
    }
    for (name, text) in corpus::ALL {
        let a = regular_reals::format::parse(text).unwrap();
        let mut prev = geometry::attractor_boxes(&a, 0).unwrap();
        for k in 1..=6 {
            let cur = geometry::attractor_boxes(&a, k).unwrap();
            if !cur.refines(&prev) {
                bad.push(format!("{name}: depth {k} cover does not nest in depth {}", k - 1));
            }
            prev = cur;
        }
    }
    let hilbert = geometry::attractor_boxes(&corpus::hilbert(), 4).unwrap().project(&[1, 2]);
    if hilbert.len() != 256 {
        bad.push(format!("Hilbert depth-4 projection covers {} of 256 cells", hilbert.len()));
    }
    (bad, format!("porosity constant {}, Hilbert cells {}", w.constant, hilbert.len()))
}

fn two_valued() -> Automaton {
    // y = x or y = 1 - x
    let radix = RadixVector::uniform(2, 2).unwrap();
    let mut b = Automaton::builder(radix).initial("id").initial("flip");
    for d in 0..2 {
        b.add_transition("id", &[d, d], "id");
        b.add_transition("flip", &[d, 1 - d], "flip");
    }
    b.all_accepting().build()
}

fn criterion_7() -> (Vec<String>, String) {
    let mut bad = Vec::new();
    let cantor = corpus::cantor();
    let gap = match value_universality(&cantor).unwrap().counterexample() {
        None => {
            bad.push("Cantor automaton is value-universal".into());
            String::new()
        }
        Some(w) => {
            let (p, c) = w.coordinate(cantor.radix(), 0);
            let x = value(&p, &c, 3);
            if cantor_cover_distance(&x, 8).is_zero() {
                bad.push(format!("universality counterexample {x} lies in the Cantor cover"));
            }
            x.to_string()
        }
    };
    let rel = two_valued();
    let witness = match analysis::is_function(&rel).unwrap().multivalued {
        None => {
            bad.push("two-valued relation passed is_function".into());
            String::new()
        }
        Some((x, y1, y2)) => {
            let ok = |y: &BigRational| y == &x || y == &(BigRational::one() - &x);
            if y1 == y2 || !ok(&y1) || !ok(&y2) {
                bad.push(format!("bad witness ({x}, {y1}, {y2})"));
            }
            format!("({x}, {y1}, {y2})")
        }
    };
    let out = Command::new(env!("CARGO_BIN_EXE_regba"))
        .arg("diff-check")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/fig3_cantor_dist.regba"))
        .output()
        .unwrap();
    if out.status.code() != Some(1) {
        bad.push(format!("diff-check exit status {:?}", out.status.code()));
    }
    (bad, format!("gap point {gap}, witness {witness}, diff-check exit {:?}", out.status.code()))
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };
    let criteria: [(u32, fn() -> (Vec<String>, String)); 7] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
    ];
    for (n, run) in criteria {
        let (problems, note) = run();
        report.line(n, problems, note);
    }
    if report.failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} criterion(s) failed", report.failures);
        ExitCode::FAILURE
    }
}

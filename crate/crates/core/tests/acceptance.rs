//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::props::*;
use common::*;
use oigb_core::groebner::{is_groebner, oi_gb, GbOptions};
use oigb_core::module::FreeModule;
use oigb_core::oracle::check_widths;
use oigb_core::par::Execution;
use oigb_core::poly::{Algebra, PolyMonomial};
use oigb_core::resolution::{oi_res, restrict_to_width, ResOptions};
use oigb_core::syzygy::{oi_syz, SyzOptions};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
/// Width, two raw monomials, a morphism out of that width, exponents of a multiplier.
type OrderCase = (usize, Vec<RawTerm>, Vec<RawTerm>, oigb_core::oi::OIMorphism, Vec<u32>);

const CASES: u32 = 1000;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:.2?}, limit {limit:?}"))
}

fn golden_groebner_basis() -> Outcome {
    let (_, b) = gb_example();
    let t = Instant::now();
    let gb = oi_gb(&b, &GbOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let got = strings(&gb.elements);
    ensure(got == [B1, B2, B3], || format!("got {got:?}"))?;
    ensure(is_groebner(&gb.elements).unwrap(), || "output is not a Groebner basis".into())?;
    within(elapsed, Duration::from_secs(1), "oi_gb")?;
    Ok(format!("{} elements in {elapsed:.2?}", got.len()))
}

fn golden_syzygies() -> Outcome {
    let (_, f) = syz_example();
    let t = Instant::now();
    let gb = oi_gb(&[f], &GbOptions::default()).map_err(|e| e.to_string())?;
    let syz = oi_syz(&gb.elements, "d", &SyzOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let g = strings(&gb.elements);
    ensure(g == [F, G], || format!("basis {g:?}"))?;
    let s = strings(&syz.elements);
    ensure(s == SYZ, || format!("syzygies {s:?}"))?;
    for e in &syz.elements {
        let image = syz.map.apply(e).map_err(|e| e.to_string())?;
        ensure(image.is_zero(), || format!("{e} maps to {image}"))?;
    }
    within(elapsed, Duration::from_secs(5), "oi_gb + oi_syz")?;
    Ok(format!("{} syzygies in {elapsed:.2?}", s.len()))
}

fn golden_ranks() -> Outcome {
    let (_, f) = res_example();
    let opts = ResOptions::default();

    // Only the ranks below the last one are minimal, so degree 3 is read off
    // a resolution computed one step further.
    let t = Instant::now();
    let short = oi_res(std::slice::from_ref(&f), 4, &opts).map_err(|e| e.to_string())?;
    let short_time = t.elapsed();
    let low = &short.ranks()[..4];
    ensure(low == [1, 2, 4, 7], || format!("ranks to degree 3: {low:?}"))?;
    within(short_time, Duration::from_secs(30), "ranks to degree 3")?;

    let t = Instant::now();
    let r = oi_res(&[f], 5, &opts).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let ranks = r.ranks();
    ensure(ranks == [1, 2, 4, 7, 11, 22], || format!("ranks {ranks:?}"))?;
    within(elapsed, Duration::from_secs(600), "oi_res to degree 5")?;
    Ok(format!("{ranks:?} in {elapsed:.2?}; degree 3 in {short_time:.2?}"))
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    let inputs = [gb_example(), (syz_example().0, vec![syz_example().1]), (res_example().0, vec![res_example().1])];
    for (module, b) in inputs {
        let gb = oi_gb(&b, &GbOptions::default()).map_err(|e| e.to_string())?;
        for (n, ok) in check_widths(&module, &b, &gb.elements, 4, Execution::Parallel).map_err(|e| e.to_string())? {
            ensure(ok, || format!("lead modules differ in width {n} for {}", b[0]))?;
            checked += 1;
        }
    }

    // random inputs, widths up to 4
    let mut runner = TestRunner::new(Config {
        cases: 256,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = proptest::collection::vec(element(lex_module(), 2, 2, 2), 1..=2);
    let (inputs, widths) = (AtomicUsize::new(0), AtomicUsize::new(0));
    runner
        .run(&strategy, |b| {
            let b: Vec<_> = b.into_iter().filter(|e| !e.is_zero()).collect();
            if b.is_empty() {
                return Err(TestCaseError::reject("zero input"));
            }
            let opts = GbOptions {
                pair_cap: 400,
                ..GbOptions::default()
            };
            let gb = match oi_gb(&b, &opts) {
                Ok(gb) => gb,
                Err(oigb_core::Error::PairCapExceeded { .. }) => return Err(TestCaseError::reject("pair cap")),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            };
            let module = lex_module();
            for (n, ok) in check_widths(&module, &b, &gb.elements, 4, Execution::Parallel).unwrap() {
                prop_assert!(ok, "width {}", n);
                widths.fetch_add(1, Ordering::Relaxed);
            }
            inputs.fetch_add(1, Ordering::Relaxed);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "{checked} golden widths and {} random inputs ({} widths) agree for n <= 4",
        inputs.into_inner(),
        widths.into_inner()
    ))
}

fn complex_property() -> Outcome {
    let (_, f) = res_example();
    let (_, b) = gb_example();
    let mut count = 0;
    for (input, k) in [(vec![f], 4), (b, 2)] {
        for minimize in [true, false] {
            let opts = ResOptions {
                minimize,
                ..ResOptions::default()
            };
            let r = oi_res(&input, k, &opts).map_err(|e| e.to_string())?;
            ensure(r.is_complex().unwrap(), || format!("d∘d ≠ 0 for {}", input[0]))?;
            for w in 0..=4 {
                let rw = restrict_to_width(&r, w).map_err(|e| e.to_string())?;
                ensure(rw.is_complex().unwrap(), || format!("restricted d∘d ≠ 0 in width {w}"))?;
            }
            count += 1;
        }
    }

    let cases = 64;
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (
        proptest::collection::vec(homogeneous_element(lex_module(), 3, 3, 3), 1..=2),
        any::<bool>(),
    );
    runner
        .run(&strategy, |(b, minimize)| {
            if check_complex(&b, 3, minimize, 4)? {
                Ok(())
            } else {
                Err(TestCaseError::reject("skipped input"))
            }
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{count} golden and {cases} random resolutions, widths 0..=4"))
}

fn run_suite<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn monomial_of(n: usize, exps: &[u32]) -> PolyMonomial {
    let entries: Vec<_> = exps.iter().enumerate().map(|(k, &e)| ((k / n + 1, k % n + 1), e)).collect();
    PolyMonomial::from_exponents(2, n, &entries).unwrap()
}

fn order_strategy(widths: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = OrderCase> {
    widths
        .prop_flat_map(|w| (Just(w), raw_terms(2, w, 2, 1), raw_terms(2, w, 2, 1), morphism_from(w, 2)))
        .prop_flat_map(|(w, a, b, eps)| {
            let n = eps.target_width();
            (Just(w), Just(a), Just(b), Just(eps), proptest::collection::vec(0u32..=2, 2 * n))
        })
}

fn order_check(module: &Arc<FreeModule>) -> impl Fn(OrderCase) -> Result<(), TestCaseError> + '_ {
    move |(w, a, b, eps, m)| {
        let (Some(a), Some(b)) = (monomial(module, w, &a[0]), monomial(module, w, &b[0])) else {
            return Err(TestCaseError::reject("no basis index of this width"));
        };
        check_order(module, &a, &b, &eps, &monomial_of(eps.target_width(), &m))
    }
}

fn invariant_suites() -> Outcome {
    let functoriality = element(lex_module(), 3, 2, 4).prop_flat_map(|x| {
        let w = x.width();
        (Just(x), morphism_from(w, 2)).prop_flat_map(|(x, pi)| {
            let n = pi.target_width();
            (Just(x), Just(pi), morphism_from(n, 2))
        })
    });
    run_suite("functoriality", functoriality, |(x, pi, eps)| check_functoriality(&x, &pi, &eps))?;

    let lex = lex_module();
    run_suite("lex order", order_strategy(1..=3), order_check(&lex))?;
    let schreyer = schreyer_module();
    run_suite("schreyer order", order_strategy(2..=4), order_check(&schreyer))?;

    let division = (
        element(lex_module(), 3, 2, 5),
        proptest::collection::vec(element(lex_module(), 2, 2, 2), 1..=3),
    );
    run_suite("division", division, |(f, g)| check_division(&f, &g))?;

    let syzygies = proptest::collection::vec(element(lex_module(), 2, 1, 2), 1..=2);
    run_suite("schreyer kernel", syzygies, |b| {
        if check_schreyer(&b)? {
            Ok(())
        } else {
            Err(TestCaseError::reject("skipped input"))
        }
    })?;
    Ok(format!("5 suites x {CASES} cases"))
}

fn degree_bookkeeping() -> Outcome {
    let (_, f) = syz_example();
    let gb = oi_gb(&[f], &GbOptions::default()).map_err(|e| e.to_string())?;
    let syz = oi_syz(&gb.elements, "d", &SyzOptions::default()).map_err(|e| e.to_string())?;
    let source = &syz.map.source;
    ensure(source.gen_widths() == [2, 3], || format!("widths {:?}", source.gen_widths()))?;
    ensure(source.twists() == [-2, -3], || format!("twists {:?}", source.twists()))?;
    let mut degrees = Vec::new();
    for s in &syz.elements {
        let d = s.degree().ok_or_else(|| format!("{s} is not homogeneous"))?;
        degrees.push(d);
    }
    Ok(format!("F^(OI,2)(-2) + F^(OI,3)(-3), syzygy degrees {degrees:?}"))
}

fn rank_formula() -> Outcome {
    let alg = Algebra::new(1, "x").map_err(|e| e.to_string())?;
    let m = FreeModule::new(alg, "e", vec![1, 2]).map_err(|e| e.to_string())?;
    for n in 0..=12 {
        let expected = (n + 1) * n / 2;
        ensure(m.rank_in_width(n) == expected, || format!("width {n}: {} vs {expected}", m.rank_in_width(n)))?;
    }
    Ok("n = 0..=12".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("golden Groebner basis", golden_groebner_basis),
        ("golden syzygies", golden_syzygies),
        ("golden resolution ranks", golden_ranks),
        ("oracle equivalence", oracle_equivalence),
        ("complex property", complex_property),
        ("invariant suites", invariant_suites),
        ("degree bookkeeping", degree_bookkeeping),
        ("rank formula", rank_formula),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{secs:.2} s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why} [{secs:.2} s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

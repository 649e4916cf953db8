//! One PASS/FAIL line per acceptance criterion, with wall-clock budgets.
//! Run with `cargo test -p syzforms-cli --test acceptance`.

#[path = "../../core/tests/support/properties.rs"]
mod properties;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use syzforms::groebner::Ideal;
use syzforms::resolution::FreeResolution;
use syzforms::syzforms::brute_force_space;
use syzforms_cli::golden::{fat_point_ideal, three_points_ideal, twisted_cubic_ideal};
use syzforms_cli::{run_example, ExampleOptions};

type Outcome = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Outcome);
type BettiCase = (&'static str, Ideal, [(usize, i64, u64); 2]);

fn scenario(name: &str) -> Outcome {
    let r = run_example(name, &ExampleOptions { seed: 0, oracle: false }).map_err(|e| e.to_string())?;
    if r.passed() {
        return Ok(());
    }
    let failed: Vec<String> = r
        .failures()
        .iter()
        .map(|a| match &a.detail {
            Some(d) => format!("{} ({d})", a.name),
            None => a.name.clone(),
        })
        .collect();
    Err(failed.join("; "))
}

fn betti_tables() -> Outcome {
    let cases: [BettiCase; 3] = [
        ("three points", three_points_ideal(), [(0, 2, 3), (1, 3, 2)]),
        ("twisted cubic", twisted_cubic_ideal(), [(0, 2, 3), (1, 3, 2)]),
        ("fat point", fat_point_ideal(), [(0, 2, 5), (1, 3, 5)]),
    ];
    for (name, ideal, expected) in cases {
        let start = Instant::now();
        let betti = FreeResolution::of_ideal(&ideal).betti().map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        for (i, j, b) in expected {
            if betti.get(i, j) != b {
                return Err(format!("{name}: b{i},{j} = {}, expected {b}", betti.get(i, j)));
            }
        }
        if elapsed > Duration::from_secs(1) {
            return Err(format!("{name}: took {:.2} s", elapsed.as_secs_f64()));
        }
    }
    Ok(())
}

fn dimension_check() -> Outcome {
    let mut checked = 0;
    for sf in properties::golden() {
        let ideal = sf.ideal();
        let betti = sf.resolution().betti().map_err(|e| e.to_string())?;
        for p in 0..ideal.nvars() {
            for d in 0..=betti.regularity() + 1 {
                let space = sf.form_space(p, d).map_err(|e| e.to_string())?;
                let brute = brute_force_space(ideal, p, d);
                if space.dim() != brute.dim() || !space.same_span(&brute) {
                    return Err(format!("{ideal:?} p={p} d={d}: {} vs brute force {}", space.dim(), brute.dim()));
                }
                let beta = betti.get(p, d + p as i64 + 1);
                if ideal.graded_piece_dim(d) == 0 && space.dim() as u64 != beta {
                    return Err(format!("p={p} d={d}: dim {} but beta = {beta}", space.dim()));
                }
                checked += 1;
            }
        }
    }
    println!("    ({checked} form spaces compared)");
    Ok(())
}

fn property_suites() -> Outcome {
    let failed: Vec<String> =
        properties::SUITES.iter().filter_map(|(name, suite)| suite().err().map(|e| format!("{name}: {e}"))).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(failed.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("three points: xi_1 gives the reference pair", 1, || scenario("three-points")),
        ("Betti tables of the three small examples", 3, betti_tables),
        ("form spaces agree with brute force and Tor", 30, dimension_check),
        ("fat point: no x3, reference A, B, C family", 60, || scenario("fat-point")),
        ("degree-2 foliation: sing = I_C ∩ I_P", 60, || scenario("deg2-foliation")),
        ("charge-4 instanton from random lines, seed 0", 300, || scenario("instanton-4")),
        ("charge-5 instanton from two double lines", 300, || scenario("instanton-5")),
        ("property suites, 200 cases each", 600, property_suites),
        ("non-LDS form: not LDS, zero tangent homology", 60, || scenario("non-lds")),
    ];
    let mut failures = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        let result = result.and_then(|()| match secs <= *budget as f64 {
            true => Ok(()),
            false => Err(format!("over the {budget} s budget")),
        });
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.2} s)", k + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({secs:.2} s): {e}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{
    all_assignments, naive_bool, naive_eval, naive_point, unstable_exact, unstable_up_to,
};
use lukstable::decision::{farey_points, StabilityOracle};
use lukstable::harness::equivalence_harness;
use lukstable::random::{self, InstanceLimits};
use lukstable::reduction::{grid_values, group_formula, is_nnf};
use lukstable::{
    constraint_formula, ddagger, estar, eval_luk, find_countermodel, implies, lift_point, nnf,
    reduce, stable_bruteforce, BoolAssignment, BoolFormula, Budget, ConsequenceVerdict, Formula,
    Rational01, StableInstance, Valuation,
};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

/// AC1, Grid forcing: for n ≤ 3, e ∈ {2,3,4}, over all points with coordinate
/// denominators ≤ 12, the constraint formula is exactly 1 iff every
/// coordinate is 1/(e+1) or e/(e+1). Under 10 s.
fn grid_forcing() -> Outcome {
    let start = Instant::now();
    let axis = farey_points(12);
    let mut points = 0usize;
    for e in [2u64, 3, 4] {
        let grid = grid_values(e).unwrap();
        for n in 1..=3u32 {
            let theta = constraint_formula(n, e).unwrap();
            let mut digits = vec![0usize; n as usize];
            loop {
                let coords: Vec<Rational01> = digits.iter().map(|&d| axis[d].clone()).collect();
                let on_grid = coords.iter().all(|c| grid.contains(c));
                let value = eval_luk(&theta, &Valuation::from_point(&coords)).unwrap();
                ensure(value.is_one() == on_grid, || {
                    format!("n={n} e={e} at {coords:?}: value {value}, on grid {on_grid}")
                })?;
                points += 1;
                let Some(pos) = digits.iter().rposition(|&d| d + 1 < axis.len()) else {
                    break;
                };
                digits[pos] += 1;
                digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{points} points exact, {:.2?}", start.elapsed()))
}

/// AC2, ‡-dichotomy on 500 random formulas (n ≤ 4, ≤ 8 connectives), all
/// assignments, e ∈ {2,3,5}. Under 30 s.
fn ddagger_dichotomy() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checks = 0usize;
    for _ in 0..500 {
        let n = rng.gen_range(1..=4u32);
        let f = random::bool_formula(&mut rng, n, 8);
        let t = ddagger(&f);
        for e in [2u64, 3, 5] {
            let high = Rational01::ratio(e, e + 1);
            for w in all_assignments(n as usize) {
                let x = lift_point(&BoolAssignment::new(w.clone()), e)
                    .unwrap()
                    .to_valuation();
                let v = eval_luk(&t, &x).unwrap();
                let expected = if naive_bool(&f, &w) {
                    Rational01::one()
                } else {
                    high.clone()
                };
                ensure(v == expected, || {
                    format!("{f} at {w:?}, e={e}: got {v}, expected {expected}")
                })?;
                checks += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{checks} evaluations, {:.2?}", start.elapsed()))
}

/// AC3, Main equivalence: harness with seed 7, 200 trials at the default
/// limits (k ≤ 3, u ≤ 3, n ≤ 3, size ≤ 6) agrees 200/200. Under 2 min.
fn main_equivalence() -> Outcome {
    let start = Instant::now();
    let report = equivalence_harness(7, 200, &InstanceLimits::default(), Budget::default())
        .map_err(|e| e.to_string())?;
    let agree = report.records.len() - report.disagreements().count();
    if let Some(bad) = report.disagreements().next() {
        return Err(format!(
            "{agree}/200 agree; first disagreement {}",
            serde_json::to_string(bad).unwrap()
        ));
    }
    ensure(report.records.len() == 200, || "wrong trial count".into())?;
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "{agree}/200 agree ({} stable, {} unstable), {:.2?}",
        report.stable_count(),
        200 - report.stable_count(),
        start.elapsed()
    ))
}

/// AC4, Deletion-count equivalence on 100 random (Φ, d, e): exact-d deletion,
/// up-to-d deletion and the grid condition agree.
fn deletion_count_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut stable = 0;
    for trial in 0..100 {
        let n = rng.gen_range(1..=3u32);
        let u = rng.gen_range(1..=4usize);
        let phi = random::distinct_bool_formulas(&mut rng, n, 5, u);
        let d = rng.gen_range(0..phi.len());
        let e = (d as u64).max(2) + rng.gen_range(0..=2u64);

        let exact = !unstable_exact(&phi, d, n as usize);
        let up_to = !unstable_up_to(&phi, d, n as usize);
        let g = group_formula(&phi, d).unwrap();
        let grid = all_assignments(n as usize).all(|w| {
            let x = lift_point(&BoolAssignment::new(w), e)
                .unwrap()
                .to_valuation();
            eval_luk(&g, &x).unwrap().is_one()
        });
        ensure(exact == up_to && up_to == grid, || {
            let shown: Vec<String> = phi.iter().map(ToString::to_string).collect();
            format!("trial {trial}: {shown:?} d={d} e={e}: (i)={exact} (i')={up_to} (ii)={grid}")
        })?;
        stable += usize::from(exact);
    }
    Ok(format!("100/100 agree ({stable} stable)"))
}

/// AC5, Size bound: over 500 instances, |ρ(I)| / (n·|I|) stays below 64.
fn size_bound() -> Outcome {
    const CAP: f64 = 64.0;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let limits = InstanceLimits::default();
    let mut worst = (0.0f64, String::new());
    for _ in 0..500 {
        let inst = random::instance(&mut rng, &limits);
        let r = reduce(&inst).map_err(|e| e.to_string())?;
        let ratio = *r.stats.ratio.numer() as f64 / *r.stats.ratio.denom() as f64;
        if ratio > worst.0 {
            worst = (ratio, serde_json::to_string(&inst.to_file()).unwrap());
        }
    }
    ensure(worst.0 < CAP, || {
        format!("ratio {:.3} at {}", worst.0, worst.1)
    })?;
    Ok(format!("max ratio {:.3} < {CAP}", worst.0))
}

/// AC6, e*: for 50 random (Δ, ∇, ω) with card(∇) ≤ 5, binary search over the
/// reduction agrees with a linear scan of the brute-force oracle, and every
/// scanned trajectory is downward monotone.
fn estar_binary_search() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut defined = 0;
    for trial in 0..50 {
        let n = rng.gen_range(1..=3u32);
        let omega = random::bool_formula(&mut rng, n, 3);
        let delta_size = rng.gen_range(0..=2);
        let delta = random::distinct_bool_formulas(&mut rng, n, 3, delta_size);
        let size = rng.gen_range(1..=5);
        let mut nabla: Vec<BoolFormula> = Vec::new();
        while nabla.len() < size {
            let mut f = random::bool_formula(&mut rng, n, 3);
            if rng.gen_bool(0.5) {
                f = BoolFormula::and(f, omega.clone());
            }
            if !nabla.contains(&f) {
                nabla.push(f);
            }
        }

        let trajectory: Vec<bool> = (0..nabla.len())
            .map(|e| {
                let j =
                    lukstable::decision::robustness_instance(&delta, &nabla, &omega, e).unwrap();
                stable_bruteforce(&j, Budget::default()).unwrap().stable
            })
            .collect();
        let monotone = trajectory.windows(2).all(|w| w[0] || !w[1]);
        ensure(monotone, || {
            format!("trial {trial}: non-monotone trajectory {trajectory:?}")
        })?;
        let linear = if trajectory[0] {
            trajectory.iter().rposition(|&s| s)
        } else {
            None
        };

        let binary = estar(
            &delta,
            &nabla,
            &omega,
            StabilityOracle::Reduction,
            Budget::default(),
        )
        .map_err(|e| e.to_string())?;
        ensure(binary.e_star == linear, || {
            format!(
                "trial {trial}: binary {:?}, linear {linear:?}, trajectory {trajectory:?}",
                binary.e_star
            )
        })?;
        let log_bound = 1 + (usize::BITS - (nabla.len() - 1).leading_zeros()) as usize;
        ensure(binary.checks_performed <= log_bound, || {
            format!(
                "trial {trial}: {} checks for card {}",
                binary.checks_performed,
                nabla.len()
            )
        })?;
        defined += usize::from(linear.is_some());
    }
    Ok(format!("50/50 agree ({defined} with e* defined)"))
}

fn verify_countermodel(
    theta: &lukstable::LukFormula,
    phi: &lukstable::LukFormula,
    w: &Valuation,
) -> Result<(), String> {
    let x = naive_point(w);
    let t = naive_eval(theta, &x);
    let p = naive_eval(phi, &x);
    ensure(t.is_one() && p < num_rational::BigRational::one(), || {
        format!("witness {w} gives θ = {t}, φ = {p}")
    })
}

/// AC7, Every countermodel re-verifies by independent evaluation: 500 random
/// (θ, φ) pairs with max denominator ≤ 6, plus every harness witness.
fn countermodel_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut found = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=3u32);
        let a = random::luk_formula(&mut rng, n, 5);
        let theta = if rng.gen_bool(0.3) {
            implies(a.clone(), a)
        } else {
            a
        };
        let phi = random::luk_formula(&mut rng, n, 5);
        let bound = rng.gen_range(1..=6u64);
        match find_countermodel(&theta, &phi, bound, Budget::default())
            .map_err(|e| e.to_string())?
        {
            ConsequenceVerdict::Countermodel { witness } => {
                verify_countermodel(&theta, &phi, &witness)?;
                ensure(
                    witness.iter().all(|(_, q)| q.denom() <= &bound.into()),
                    || format!("witness {witness} exceeds bound {bound}"),
                )?;
                found += 1;
            }
            ConsequenceVerdict::InconclusiveAtBound { bound: b } => {
                ensure(b == bound, || "bound mismatch".into())?
            }
            other => return Err(format!("unexpected verdict {other:?}")),
        }
    }
    ensure(found > 0, || "no countermodel found at all".into())?;

    let mut harness_witnesses = 0;
    let report = equivalence_harness(7, 200, &InstanceLimits::default(), Budget::default())
        .map_err(|e| e.to_string())?;
    for rec in &report.records {
        if let Some(w) = &rec.rho_witness {
            let inst: StableInstance = rec.instance.to_instance().unwrap();
            let r = reduce(&inst).unwrap();
            verify_countermodel(&r.theta, &r.phi, w)?;
            harness_witnesses += 1;
        }
    }
    Ok(format!(
        "{found} fuzzed + {harness_witnesses} harness witnesses re-verified"
    ))
}

/// AC8, NNF on 1000 random formulas: truth table, variable occurrences, and
/// negation only on variables.
fn nnf_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=4u32);
        let f = random::bool_formula(&mut rng, n, 10);
        let g = nnf(&f);
        ensure(is_nnf(&g), || format!("{g} is not in negation normal form"))?;
        ensure(g.variable_occurrences() == f.variable_occurrences(), || {
            format!("{f} -> {g} changes occurrence count")
        })?;
        for w in all_assignments(n as usize) {
            ensure(naive_bool(&f, &w) == naive_bool(&g, &w), || {
                format!("{f} -> {g} differs at {w:?}")
            })?;
        }
    }
    Ok("1000/1000".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("AC1 grid forcing", grid_forcing),
        ("AC2 ddagger dichotomy", ddagger_dichotomy),
        ("AC3 main equivalence", main_equivalence),
        ("AC4 deletion-count equivalence", deletion_count_equivalence),
        ("AC5 size bound", size_bound),
        ("AC6 e* binary search", estar_binary_search),
        ("AC7 countermodel soundness", countermodel_soundness),
        ("AC8 nnf contract", nnf_contract),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}

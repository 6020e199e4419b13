//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

mod common;

use std::cmp::Ordering;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ordlat::group::{Group, DEFAULT_CAP};
use ordlat::lgroup::{
    basic_element_check, eval_form, eval_term, normalize, LGroupError, LTerm, DEFAULT_ROW_CAP,
};
use ordlat::lo_space::{
    cofinal_obstruction, isolated_scan, kernel_containment_falsifier, minimal_invariant_sets,
    orbit_points, tararin_conjugator, verify_certificate, Certificate, CertificateKind, IsolationOutcome,
    OpenSetSpec,
};
use ordlat::orderings::{
    count_finite_cones, enumerate_finite_cones, is_cofinal_on_ball, LoSpace, OrderError, PositiveCone, Sign,
    SignSequence,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned parameters.
const C1_TIME_LIMIT: Duration = Duration::from_secs(60);
const C1_RADII: [usize; 3] = [3, 4, 5];
const C2_RADIUS: usize = 4;
const C3_PAIRS: usize = 50;
const C3_RADIUS: usize = 3;
const C4_RADIUS: usize = 3;
const C4_RIGHT_SAMPLES: usize = 5000;
const C5_RADIUS: usize = 3;
const C5_BOUND: u32 = 4;
const C6_TERMS: usize = 500;
const C6_DEPTH: usize = 4;
const C6_LEAF: usize = 3;
const C6_RADIUS: usize = 2;
const C8_RADII: [usize; 5] = [1, 2, 3, 4, 5];
const C9_CONES: usize = 10;
const C9_RADIUS: usize = 3;
const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, pass: String, fail: String) -> Outcome {
    if ok {
        Ok(pass)
    } else {
        Err(fail)
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn holds(c: &Certificate) -> Result<bool, String> {
    let reparsed = Certificate::parse(&c.to_records()).map_err(err)?;
    Ok(verify_certificate(&reparsed, DEFAULT_CAP).map_err(err)?.holds)
}

fn c1_tararin_counts() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=4u32 {
        for r in C1_RADII {
            let c = count_finite_cones(Group::Tararin { n }, r, &[], None, DEFAULT_CAP).map_err(err)?;
            if c.count != 1 << n || !c.exhaustive {
                bad.push(format!("n={n} r={r} count={}", c.count));
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        bad.is_empty() && elapsed < C1_TIME_LIMIT,
        format!("2,4,8,16 at radii 3..5 in {:.2}s", elapsed.as_secs_f64()),
        format!("{bad:?} in {:.2}s", elapsed.as_secs_f64()),
    )
}

fn c2_flip_rule() -> Outcome {
    let mut cases = 0;
    let mut mismatches = 0;
    for n in 1..=4u32 {
        let g = Group::Tararin { n };
        let ball = g.enumerate_ball(C2_RADIUS, DEFAULT_CAP).map_err(err)?;
        for eps in SignSequence::all(n as usize) {
            let p = PositiveCone::tararin(g, eps.clone()).map_err(err)?;
            for i in 0..n as usize - 1 {
                let x = g.generator(i as u32 + 1).map_err(err)?;
                let lhs = p.conjugate(&x).map_err(err)?.restrict(&ball).map_err(err)?;
                let rhs = PositiveCone::tararin(g, eps.flipped(i)).map_err(err)?.restrict(&ball).map_err(err)?;
                cases += 1;
                mismatches += lhs.iter().zip(&rhs).filter(|(a, b)| a != b).count();
            }
        }
    }
    check(
        mismatches == 0,
        format!("{cases} conjugations, 0 mismatches on ball({C2_RADIUS})"),
        format!("{mismatches} mismatched signs over {cases} conjugations"),
    )
}

// Sign sequences of length n live on T_n inside T_{n+1}; the conjugator
// may use x_{n+1}.
fn c3_conjugator() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    for _ in 0..C3_PAIRS {
        let n = rng.gen_range(1..=4usize);
        let g = Group::Tararin { n: n as u32 + 1 };
        let all = SignSequence::all(n);
        let e1 = all.choose(&mut rng).unwrap().clone();
        let e2 = all.choose(&mut rng).unwrap().clone();
        let found = tararin_conjugator(g, &e1, &e2, n, DEFAULT_CAP).map_err(err)?;
        // independent check: signs of g P1 g^-1 and P2 on T_n ∩ ball(3)
        let extend = |e: &SignSequence| SignSequence::parse(&format!("{e},+")).ok_or("bad sequence");
        let moved = PositiveCone::tararin(g, extend(&e1)?).map_err(err)?.conjugate(&found.g).map_err(err)?;
        let target = PositiveCone::tararin(g, extend(&e2)?).map_err(err)?;
        let ball = g.enumerate_ball(C3_RADIUS, DEFAULT_CAP).map_err(err)?;
        let mut direct = true;
        for h in ball.nonidentity().filter(|h| h.syllables().iter().all(|s| (s.gen as usize) < n)) {
            direct &= moved.sign(h).map_err(err)? == target.sign(h).map_err(err)?;
        }
        if !found.verified() || !direct {
            failures.push(format!("n={n} {e1}->{e2}"));
        }
    }
    check(
        failures.is_empty(),
        format!("{C3_PAIRS}/{C3_PAIRS} pairs verified on ball({C3_RADIUS})"),
        format!("failed: {failures:?}"),
    )
}

/// Exact axiom scan on `ball(radius)`: returns the number of violations.
fn axiom_violations(cone: &PositiveCone, radius: usize) -> Result<usize, String> {
    let g = cone.group();
    let ball = g.enumerate_ball(radius, DEFAULT_CAP).map_err(err)?;
    let n = ball.len();
    let mut bad = 0;
    // trichotomy
    for i in 1..n {
        let x = ball.get(i);
        if cone.sign(x).map_err(err)? == cone.sign(&x.inverse()).map_err(err)? {
            bad += 1;
        }
    }
    let mut table = vec![Ordering::Equal; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = cone.compare(ball.get(i), ball.get(j)).map_err(err)?;
        }
    }
    // totality and antisymmetry
    for i in 0..n {
        for j in 0..n {
            let c = table[i * n + j];
            if (c == Ordering::Equal) != (i == j) || table[j * n + i] != c.reverse() {
                bad += 1;
            }
        }
    }
    for f in 0..n {
        for i in 0..n {
            for j in 0..n {
                // transitivity
                if table[f * n + i] == Ordering::Less
                    && table[i * n + j] == Ordering::Less
                    && table[f * n + j] != Ordering::Less
                {
                    bad += 1;
                }
                // left invariance
                let (x, a, b) = (ball.get(f), ball.get(i), ball.get(j));
                let shifted = cone.compare(&x.mul(a).map_err(err)?, &x.mul(b).map_err(err)?).map_err(err)?;
                if shifted != table[i * n + j] {
                    bad += 1;
                }
            }
        }
    }
    // closure: products of positives are positive
    let positive: Vec<bool> = (0..n).map(|i| table[i * n] == Ordering::Greater).collect();
    for i in 0..n {
        for j in 0..n {
            if positive[i] && positive[j] && !cone.is_positive(&ball.get(i).mul(ball.get(j)).map_err(err)?).map_err(err)? {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

fn c4_axioms() -> Outcome {
    let b3 = Group::Braid { n: 3 };
    let f2 = Group::Free { rank: 2 };
    let dehornoy = PositiveCone::dehornoy(b3).map_err(err)?;
    let magnus = PositiveCone::parse(f2, "magnus").map_err(err)?;
    let d = axiom_violations(&dehornoy, C4_RADIUS)?;
    let m = axiom_violations(&magnus, C4_RADIUS)?;
    let ball = f2.enumerate_ball(C4_RADIUS, DEFAULT_CAP).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut right = 0;
    for _ in 0..C4_RIGHT_SAMPLES {
        let [f, g, h] = [(); 3].map(|_| ball.get(rng.gen_range(0..ball.len())));
        let before = magnus.compare(g, h).map_err(err)?;
        let after = magnus.compare(&g.mul(f).map_err(err)?, &h.mul(f).map_err(err)?).map_err(err)?;
        if before != after {
            right += 1;
        }
    }
    check(
        d == 0 && m == 0 && right == 0,
        format!("0 violations on ball({C4_RADIUS}) for dehornoy B_3 and magnus F_2; {C4_RIGHT_SAMPLES} right-invariance samples clean"),
        format!("dehornoy {d}, magnus {m}, right-invariance {right}"),
    )
}

fn c5_braid_cofinality() -> Outcome {
    let b3 = Group::Braid { n: 3 };
    let dehornoy = PositiveCone::dehornoy(b3).map_err(err)?;
    let full = b3.garside_half_twist().map_err(err)?.pow(2);
    let report = is_cofinal_on_ball(&dehornoy, &full, C5_RADIUS, C5_BOUND, DEFAULT_CAP).map_err(err)?;
    let failures = report.failures().count();
    let obstruction = cofinal_obstruction(&dehornoy, &full, C5_RADIUS, C5_BOUND, false, DEFAULT_CAP).map_err(err)?;
    let cert = obstruction.certificate.ok_or("no obstruction certificate")?;
    let term = LTerm::meet(LTerm::elem(full.clone()), LTerm::elem(b3.identity()));
    let falsified = kernel_containment_falsifier(
        &dehornoy,
        &dehornoy.reverse(),
        &[term],
        C5_RADIUS,
        C5_BOUND,
        false,
        DEFAULT_CAP,
        DEFAULT_ROW_CAP,
    )
    .map_err(err)?
    .ok_or("falsifier found nothing")?;
    let rederived = falsified.certificate.ok_or("falsifier gave evidence only")?;
    let ok = failures == 0
        && report.is_cofinal_up_to()
        && cert.kind() == CertificateKind::CofinalityObstruction
        && rederived.kind() == CertificateKind::CofinalityObstruction
        && !cert.is_tainted()
        && !rederived.is_tainted()
        && holds(&cert)?
        && holds(&rederived)?;
    check(
        ok,
        format!(
            "cofinal on ball({C5_RADIUS}) with exponents <= {}; obstruction and falsifier certificates verify",
            report.max_exponent().unwrap_or(0)
        ),
        format!("{failures} cofinality failures or a certificate did not verify"),
    )
}

fn c6_eval_equivalence() -> Outcome {
    let backends: [(Group, [&str; 3]); 4] = [
        (Group::Free { rank: 2 }, ["magnus", "magnus:order=b<a", "rev(magnus)"]),
        (Group::Zn { rank: 2 }, ["lex", "lex:perm=2,1;signs=+,-", "rev(lex)"]),
        (Group::Tararin { n: 3 }, ["tararin:+,+,+", "tararin:-,+,-", "tararin:+,-,-"]),
        (Group::Braid { n: 3 }, ["dehornoy", "rev(dehornoy)", "conj(s1, dehornoy)"]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut evals, mut mismatches, mut undecided) = (0usize, 0usize, 0usize);
    for (g, specs) in backends {
        let cones: Vec<PositiveCone> =
            specs.iter().map(|s| PositiveCone::parse(g, s)).collect::<Result<_, _>>().map_err(err)?;
        let ball = g.enumerate_ball(C6_RADIUS, DEFAULT_CAP).map_err(err)?;
        for _ in 0..C6_TERMS {
            let t = common::random_term(&mut rng, g, C6_DEPTH, C6_LEAF);
            let form = normalize(&t, DEFAULT_ROW_CAP).map_err(err)?;
            for cone in &cones {
                for h in ball.iter() {
                    evals += 1;
                    match (eval_form(cone, &form, h).map(|r| r.output), eval_term(cone, &t, h)) {
                        (Ok(a), Ok(b)) if a == b => {}
                        (Err(a), Err(b)) if precision(&a) && precision(&b) => undecided += 1,
                        _ => mismatches += 1,
                    }
                }
            }
        }
    }
    check(
        mismatches == 0,
        format!("{evals} evaluations agree ({undecided} refused by both for Magnus precision)"),
        format!("{mismatches} mismatches out of {evals}"),
    )
}

fn precision(e: &LGroupError) -> bool {
    matches!(e, LGroupError::Order(OrderError::PrecisionExhausted { .. }))
}

fn c7_basic() -> Outcome {
    let t2 = Group::Tararin { n: 2 };
    let t3 = Group::Tararin { n: 3 };
    let s2 = LoSpace::complete(t2).map_err(err)?;
    let s3 = LoSpace::complete(t3).map_err(err)?;
    let run = |space: &LoSpace, text: &str| -> Result<_, String> {
        let t = LTerm::parse(space.group(), text).map_err(err)?;
        basic_element_check(&t, space, DEFAULT_ROW_CAP).map_err(err)
    };
    let a = run(&s2, "(x1 /\\ x2) \\/ 1")?;
    let b = run(&s2, "x1 \\/ 1")?;
    let c = run(&s3, "(x1 /\\ x2 /\\ x3) \\/ 1")?;
    // complete spaces list P(+,...,+) first
    let ok = a.unique_cone() == Some(0)
        && !b.is_basic()
        && b.above.len() == 2
        && c.unique_cone() == Some(0)
        && c.total == 8;
    check(
        ok,
        "n=2 basic at P(+,+); x1 \\/ 1 not basic (2 cones); n=3 basic (1 of 8)".into(),
        format!("n=2 {a:?}; x1 \\/ 1 {b:?}; n=3 {c:?}"),
    )
}

fn c8_isolation() -> Outcome {
    let z = Group::Zn { rank: 1 };
    let t2 = Group::Tararin { n: 2 };
    let f2 = Group::Free { rank: 2 };
    let certified = |g: Group, spec: &str| -> Result<bool, String> {
        let scan = isolated_scan(&OpenSetSpec::parse(g, spec).map_err(err)?, &C8_RADII, DEFAULT_CAP).map_err(err)?;
        let counts_ok = scan.counts.len() == C8_RADII.len() && scan.counts.iter().all(|&(_, c)| c == 1);
        Ok(counts_ok
            && match &scan.outcome {
                IsolationOutcome::Certified(c) => holds(c)?,
                _ => false,
            })
    };
    let a = certified(z, "a")?;
    let x = certified(t2, "x1,x2")?;
    let spec = OpenSetSpec::parse(f2, "a,b").map_err(err)?;
    let scan = isolated_scan(&spec, &[1, 2, 3], DEFAULT_CAP).map_err(err)?;
    let refuted = match &scan.outcome {
        IsolationOutcome::Refuted { radius, first, second } => {
            *radius <= 3
                && first.signs() != second.signs()
                && first.is_consistent()
                && second.is_consistent()
                && spec.elements().iter().all(|e| {
                    first.sign_of(e).ok() == Some(Sign::Pos) && second.sign_of(e).ok() == Some(Sign::Pos)
                })
        }
        _ => false,
    };
    check(
        a && x && refuted,
        "{a} on Z and {x1,x2} on T_2 certified at radii 1..5; {a,b} on F_2 refuted with two extensions".into(),
        format!("Z {a}, T_2 {x}, F_2 refuted {refuted}"),
    )
}

fn c9_abelian_degeneracy() -> Outcome {
    let z2 = Group::Zn { rank: 2 };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut orbit_sizes = Vec::new();
    for _ in 0..C9_CONES {
        let mut perm = vec![0u32, 1];
        perm.shuffle(&mut rng);
        let signs = (0..2).map(|_| if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg }).collect();
        let cone = PositiveCone::lex(z2, perm, signs).map_err(err)?;
        orbit_sizes.push(orbit_points(&cone, C9_RADIUS, C9_RADIUS, DEFAULT_CAP).map_err(err)?.points.len());
    }
    let expected: [Vec<usize>; 3] = [vec![1, 1], vec![4], vec![8]];
    let mut observed = Vec::new();
    let mut verified = true;
    for n in 1..=3u32 {
        let space = LoSpace::complete(Group::Tararin { n }).map_err(err)?;
        let rep = minimal_invariant_sets(&space, 1, DEFAULT_CAP).map_err(err)?;
        let mut sizes = rep.sizes();
        sizes.sort();
        verified &= rep.condition_verified;
        observed.push(sizes);
    }
    let orbits_ok = orbit_sizes.iter().all(|&s| s == 1);
    check(
        orbits_ok && verified && observed == expected,
        format!("zn orbits {orbit_sizes:?}; tararin minimal sets {observed:?}"),
        format!(
            "zn orbits {orbit_sizes:?}; tararin minimal sets {observed:?}, expected {expected:?} \
             (conjugation never changes the sign of x_n, so the top sign splits LO(T_n) into two invariant halves)"
        ),
    )
}

fn c10_enumerator_vs_brute_force() -> Outcome {
    let balls = common::small_balls();
    let mut diffs = Vec::new();
    for &(g, r) in &balls {
        let ball = g.enumerate_ball(r, DEFAULT_CAP).map_err(err)?;
        let mut found: Vec<Vec<i8>> = enumerate_finite_cones(g, r, &[], DEFAULT_CAP)
            .map_err(err)?
            .iter()
            .map(|a| a.signs().to_vec())
            .collect();
        found.sort();
        if found != common::brute_force_cones(&ball) {
            diffs.push(format!("{g} r={r}"));
        }
    }
    check(
        diffs.is_empty(),
        format!("{} balls, zero diffs", balls.len()),
        format!("differs on {diffs:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("tararin counts", c1_tararin_counts),
        ("flip rule exactness", c2_flip_rule),
        ("dense-orbit conjugator", c3_conjugator),
        ("ordering axioms", c4_axioms),
        ("braid cofinality", c5_braid_cofinality),
        ("evaluation/normalization equivalence", c6_eval_equivalence),
        ("basic-element certificate", c7_basic),
        ("isolation semantics", c8_isolation),
        ("abelian degeneracy", c9_abelian_degeneracy),
        ("enumerator vs oracle", c10_enumerator_vs_brute_force),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.2}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{secs:.2}s]", k + 1);
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

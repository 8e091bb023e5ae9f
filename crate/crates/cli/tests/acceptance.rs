//! Acceptance suite: one PASS/FAIL line per criterion with its runtime.
//!
//! A criterion listed in `EXPECTED_FAILURES` is still run and still printed as
//! FAIL; the process only exits non-zero on an unexpected failure or when an
//! expected failure starts passing.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use covering_forge::constellation::{
    generic_polynomial, power_map, random_constellation, random_generic_polynomial,
};
use covering_forge::dynamics::{
    ft_critical_data, pinch_beltrami_norm, render_julia_slice, AnnulusGrid, FtParams, RenderConfig,
};
use covering_forge::hurwitz::{
    hurwitz_orbit, is_symmetric, same_hurwitz_class, CanonicalForm, OrbitBudget, Verdict,
};
use covering_forge::perm::Perm;
use covering_forge::ratmap::sandwich::{
    random_mobius, random_nonconstant_map, random_sample_pairs,
};
use covering_forge::ratmap::{verify_sandwich_isomorphism, SandwichIso};
use covering_forge::scalar::rational;
use covering_forge::surgery::{
    connected_sum, equator_unbranched, formal_mating, genus_ledger, iterated_sum,
    iterated_sum_degree, predicted_mating_passport, predicted_sum_passport, SumPlan,
};
use covering_forge::Constellation;
use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;

/// Criterion 9 at t = 1/4: the free critical value 1 is a repelling fixed
/// point, so the basin of 0 has infinitely many components.
const EXPECTED_FAILURES: [u32; 1] = [9];

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_secs: f64) -> bool {
    elapsed.as_secs_f64() < limit_secs
}

fn c(d: usize, entries: &[&str]) -> Constellation {
    Constellation::from_notation(d, entries).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs = 0;
    let mut ok = true;
    for attempt in 0.. {
        if pairs == 200 {
            break;
        }
        let (n, m) = (2 + attempt % 5, 2 + (attempt / 5) % 5);
        let (Some(a), Some(b)) = (
            random_constellation(&mut rng, n, 2 + attempt % 3, 500),
            random_constellation(&mut rng, m, 2 + attempt % 4, 500),
        ) else {
            continue;
        };
        let s = connected_sum(&SumPlan::new(&a, &b)).unwrap();
        ok &= s.degree() == n + m - 1 && s.validate().is_ok();
        pairs += 1;
    }
    let worked = connected_sum(&SumPlan::new(
        &power_map(2).unwrap(),
        &power_map(3).unwrap(),
    ))
    .unwrap();
    let elapsed = start.elapsed();
    check(
        ok && worked.degree() == 4 && within(elapsed, 1.0),
        format!(
            "pairs={pairs} z^2#z^3 degree={} ({elapsed:.2?})",
            worked.degree()
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ok = true;
    let mut runs = 0;
    for k in 2..=5 {
        for trial in 0..25 {
            let parts: Vec<Constellation> = (0..k)
                .map(|i| {
                    (0..)
                        .find_map(|j| {
                            random_constellation(
                                &mut rng,
                                2 + (i + trial + j) % 5,
                                2 + (i + j) % 3,
                                500,
                            )
                        })
                        .expect("some shape is realizable")
                })
                .collect();
            let degrees: Vec<usize> = parts.iter().map(Constellation::degree).collect();
            let s = iterated_sum(&parts, &[]).unwrap();
            ok &= s.degree() == degrees.iter().sum::<usize>() - (k - 1);
            ok &= s.degree() == iterated_sum_degree(&degrees);
            runs += 1;
        }
    }
    let elapsed = start.elapsed();
    check(
        ok && within(elapsed, 1.0),
        format!("sums={runs} k=2..5 ({elapsed:.2?})"),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut sums, mut law, mut formula_agrees) = (0, 0, 0);
    for attempt in 0.. {
        if sums == 200 {
            break;
        }
        let (Some(a), Some(b)) = (
            random_constellation(&mut rng, 2 + attempt % 5, 2 + attempt % 4, 500),
            random_constellation(&mut rng, 2 + (attempt / 3) % 5, 3 + attempt % 3, 500),
        ) else {
            continue;
        };
        let s = connected_sum(&SumPlan::new(&a, &b)).unwrap();
        let ledger = genus_ledger(&a, &b, &s).unwrap();
        law += ledger.euler_law_holds() as usize;
        formula_agrees += ledger.weighted_formula_agrees() as usize;
        assert_eq!(s.passport(), predicted_sum_passport(&a, &b));
        sums += 1;
    }
    let elapsed = start.elapsed();
    check(
        law == sums && within(elapsed, 1.0),
        format!(
            "euler_law={law}/{sums}; weighted genus formula agrees on {formula_agrees}/{sums} (reported only) ({elapsed:.2?})"
        ),
    )
}

fn transpositions(d: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    for a in 1..=d {
        for b in a + 1..=d {
            out.push(Perm::from_cycles(d, &[vec![a, b]]).unwrap());
        }
    }
    out
}

/// Every tuple of `d − 1` transpositions and one full cycle, in any position,
/// with identity product and transitive action.
fn all_generic_tuples(d: usize) -> Vec<Constellation> {
    let ts = transpositions(d);
    let mut prefixes: Vec<Vec<Perm>> = vec![Vec::new()];
    for _ in 0..d - 1 {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                ts.iter()
                    .map(move |t| [p.clone(), vec![t.clone()]].concat())
            })
            .collect();
    }
    let mut out = Vec::new();
    for prefix in prefixes {
        for pos in 0..d {
            let before = prefix[..pos]
                .iter()
                .fold(Perm::identity(d).unwrap(), |a, p| a.compose(p).unwrap());
            let after = prefix[pos..]
                .iter()
                .fold(Perm::identity(d).unwrap(), |a, p| a.compose(p).unwrap());
            // before · x · after = id  ⇒  x = before⁻¹ · after⁻¹
            let x = before.inverse().compose(&after.inverse()).unwrap();
            if !x.is_full_cycle() {
                continue;
            }
            let mut tuple = prefix.clone();
            tuple.insert(pos, x);
            if let Ok(c) = Constellation::new(d, tuple) {
                out.push(c);
            }
        }
    }
    out
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["covering-forge"];
    argv.extend_from_slice(args);
    let code = covering_forge_cli::run(argv, &mut out, &mut err);
    (code, out)
}

fn write_constellation(dir: &Path, name: &str, c: &Constellation) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, c.to_text()).unwrap();
    path
}

fn criterion_4() -> Outcome {
    let budget = OrbitBudget::default();
    let mut details = Vec::new();
    let mut ok = true;
    for (d, limit) in [(3usize, 1.0), (4, 60.0)] {
        let start = Instant::now();
        let all = all_generic_tuples(d);
        let forms: BTreeSet<CanonicalForm> = all.iter().map(CanonicalForm::of).collect();
        let orbit = hurwitz_orbit(&generic_polynomial(d).unwrap(), budget).unwrap();
        let orbit_forms: BTreeSet<CanonicalForm> = orbit.forms().iter().cloned().collect();
        let one_orbit = orbit.exhausted() && forms == orbit_forms;
        let anchor = &all[0];
        let same = all
            .iter()
            .all(|x| same_hurwitz_class(anchor, x, budget).unwrap() == Verdict::Yes);
        let elapsed = start.elapsed();
        ok &= one_orbit && same && within(elapsed, limit);
        details.push(format!(
            "d={d}: tuples={} classes={} one_orbit={one_orbit} equiv_yes={same} ({elapsed:.2?})",
            all.len(),
            forms.len()
        ));
    }
    // cross-degree and cross-passport pairs are definite no
    let g3 = generic_polynomial(3).unwrap();
    let g4 = generic_polynomial(4).unwrap();
    let klein = c(4, &["(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]);
    let no = [
        (&g3, &g4),
        (&g4, &power_map(4).unwrap()),
        (&g4, &klein),
        (&g3, &power_map(3).unwrap()),
    ]
    .iter()
    .all(|(a, b)| same_hurwitz_class(a, b, budget).unwrap() == Verdict::No);
    // and through the command line
    let dir = tempfile::tempdir().unwrap();
    let a = write_constellation(dir.path(), "a.txt", &all_generic_tuples(3)[0]);
    let b = write_constellation(dir.path(), "b.txt", all_generic_tuples(3).last().unwrap());
    let x = write_constellation(dir.path(), "x.txt", &g4);
    let cli_ok = cli(&["equiv", a.to_str().unwrap(), b.to_str().unwrap()]).0 == 0
        && cli(&["equiv", a.to_str().unwrap(), x.to_str().unwrap()]).0 == 1;
    ok &= no && cli_ok;
    check(
        ok,
        format!("{}; cross pairs no={no}; cli={cli_ok}", details.join("; ")),
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let budget = OrbitBudget::default();
    let mut results = Vec::new();
    for d in 2..=5 {
        results.push((
            format!("generic{d}"),
            is_symmetric(&generic_polynomial(d).unwrap(), budget).unwrap(),
        ));
    }
    for d in 2..=6 {
        results.push((
            format!("z^{d}"),
            is_symmetric(&power_map(d).unwrap(), budget).unwrap(),
        ));
    }
    let elapsed = start.elapsed();
    let all_yes = results.iter().all(|(_, v)| *v == Verdict::Yes);
    let summary: Vec<String> = results.iter().map(|(n, v)| format!("{n}={v}")).collect();
    check(
        all_yes && within(elapsed, 60.0),
        format!("{} ({elapsed:.2?})", summary.join(" ")),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ok = true;
    let mut count = 0;
    for d in 2..=5 {
        for _ in 0..25 {
            let p = random_generic_polynomial(&mut rng, d).unwrap();
            let q = random_generic_polynomial(&mut rng, d).unwrap();
            let m = formal_mating(&p, &q).unwrap();
            ok &= m.validate().is_ok()
                && equator_unbranched(&p, &q, &m)
                && m.genus() == Ok(0)
                && predicted_mating_passport(&p, &q) == Some(m.passport());
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    check(
        ok && within(elapsed, 1.0),
        format!("matings={count} d=2..5 ({elapsed:.2?})"),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut holding, mut corollary, mut reversing) = (0, 0, 0);
    let instances = 100;
    for i in 0..instances {
        let r1 = random_nonconstant_map(&mut rng, 3, 8);
        let h = random_mobius(&mut rng, 8);
        // every other instance has ρ(Id) = h⁻¹∘g = Id
        let g = if i % 2 == 0 {
            h.clone()
        } else {
            random_mobius(&mut rng, 8)
        };
        let iso = if i % 5 == 4 {
            reversing += 1;
            SandwichIso::reversing(h, g)
        } else {
            SandwichIso::new(h, g)
        };
        let samples = random_sample_pairs(&mut rng, 2, 3, 8);
        let report = verify_sandwich_isomorphism(&r1, &iso, None, &samples).unwrap();
        holding += report.holds() as usize;
        corollary += report.corollary_checked as usize;
    }
    let elapsed = start.elapsed();
    check(
        holding == instances && corollary >= instances / 2 && within(elapsed, 10.0),
        format!(
            "instances={instances} holding={holding} corollary_checked={corollary} reversing={reversing} ({elapsed:.2?})"
        ),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let grid = AnnulusGrid::<f64>::default();
    let mut worst: f64 = 0.0;
    let mut increasing = true;
    let mut last = 0.0;
    for n in 1..=6 {
        let norm = pinch_beltrami_norm(n, &grid).unwrap();
        // closed form oracle: (2ⁿ−1)/(2ⁿ+1)
        let p = f64::from(1u32 << n);
        let expected = (p - 1.0) / (p + 1.0);
        worst = worst.max((norm.measured - expected).abs());
        increasing &= norm.measured > last;
        last = norm.measured;
    }
    let elapsed = start.elapsed();
    check(
        worst < 1e-6 && increasing && grid.radial * grid.angular == 10_000 && within(elapsed, 5.0),
        format!("max|measured-closed|={worst:.2e} increasing={increasing} ({elapsed:.2?})"),
    )
}

/// Census lines of the slices that do split in two, kept as regression output.
const PINNED_CENSUS: [&str; 2] = [
    "t=1/2 resolution=512 components=2 sizes=[221850,40294] bounded=[false,true]",
    "t=3/4 resolution=512 components=2 sizes=[193788,68356] bounded=[false,true]",
];

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    for (num, den) in [(1, 4), (1, 2), (3, 4)] {
        let p = FtParams::from_ratio(num, den).unwrap();
        let cfg = RenderConfig::<f64> {
            resolution: 512,
            max_iter: 500,
            ..RenderConfig::for_parameter(&p)
        };
        let slice = render_julia_slice(&p, &cfg).unwrap();
        let bounded_with_origin = slice.origin_component().is_some_and(|c| c.bounded());
        let two = slice.census.components.len() == 2;
        ok &= two && bounded_with_origin;
        lines.push(format!("{}", slice.report()));
    }
    let pinned = PINNED_CENSUS.iter().all(|p| lines.iter().any(|l| l == p));
    ok &= pinned;
    // critical value 4(1−t)³/(27t²) for 20 rational t
    let mut exact = 0;
    for k in 1..=20 {
        let t = rational(k, 21);
        let p = FtParams::new(t.clone()).unwrap();
        let data = ft_critical_data(&p);
        let s = BigRational::one() - &t;
        let formula = rational(4, 1) * &s * &s * &s / (rational(27, 1) * &t * &t);
        let zc = -(rational(2, 1) * &s) / (rational(3, 1) * &t);
        let value: BigRational = p.eval_exact(&zc);
        exact += (value == formula && data.values.contains(&formula)) as usize;
    }
    let elapsed = start.elapsed();
    ok &= exact == 20 && within(elapsed, 30.0);
    check(
        ok,
        format!(
            "{}; pinned={pinned}; critical values exact={exact}/20 ({elapsed:.2?})",
            lines.join("; ")
        ),
    )
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let path = |name: &str| d.join(name).to_str().unwrap().to_string();
    let g3 = write_constellation(d, "g3.txt", &generic_polynomial(3).unwrap());
    let g3b = write_constellation(d, "g3b.txt", &all_generic_tuples(3)[5]);
    let z2 = write_constellation(d, "z2.txt", &power_map(2).unwrap());
    std::fs::write(
        d.join("spec.txt"),
        "R1 = z^3 + z\nh = z + 1\ng = 2z\nsamples = 10\n",
    )
    .unwrap();
    let (g3, g3b, z2) = (
        g3.to_str().unwrap(),
        g3b.to_str().unwrap(),
        z2.to_str().unwrap(),
    );
    let spec = path("spec.txt");
    let commands: Vec<(Vec<String>, Option<String>)> = vec![
        (vec!["validate".into(), g3.into(), z2.into()], None),
        (
            vec![
                "sum".into(),
                z2.into(),
                g3.into(),
                "--out".into(),
                path("sum.txt"),
            ],
            Some(path("sum.txt")),
        ),
        (
            vec![
                "mate".into(),
                g3.into(),
                g3b.into(),
                "--out".into(),
                path("mate.txt"),
            ],
            Some(path("mate.txt")),
        ),
        (
            vec!["orbit".into(), g3.into(), "--out".into(), path("orbit.txt")],
            Some(path("orbit.txt")),
        ),
        (vec!["equiv".into(), g3.into(), g3b.into()], None),
        (vec!["symmetric".into(), g3.into()], None),
        (
            vec![
                "verify-sandwich".into(),
                spec.clone(),
                "--seed".into(),
                "7".into(),
            ],
            None,
        ),
        (
            vec![
                "julia".into(),
                "--t".into(),
                "1/2".into(),
                "--resolution".into(),
                "96".into(),
                "--out".into(),
                path("j.ppm"),
            ],
            Some(path("j.ppm")),
        ),
        (
            vec![
                "sweep".into(),
                "--t".into(),
                "1/4,3/4".into(),
                "--resolution".into(),
                "64".into(),
                "--out".into(),
                path("sweep"),
            ],
            Some(path("sweep/julia_t3_4.ppm")),
        ),
        (
            vec![
                "pinch".into(),
                "--n".into(),
                "1..4".into(),
                "--radial".into(),
                "20".into(),
                "--angular".into(),
                "20".into(),
            ],
            None,
        ),
    ];
    let mut identical = 0;
    let mut failures = Vec::new();
    for (args, artifact) in &commands {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code_a, out_a) = cli(&argv);
        let file_a = artifact.as_ref().map(|p| std::fs::read(p).unwrap());
        let (code_b, out_b) = cli(&argv);
        let file_b = artifact.as_ref().map(|p| std::fs::read(p).unwrap());
        if code_a == code_b && out_a == out_b && file_a == file_b && !out_a.is_empty() {
            identical += 1;
        } else {
            failures.push(args[0].clone());
        }
    }
    let elapsed = start.elapsed();
    check(
        identical == commands.len(),
        format!(
            "byte-identical={identical}/{} {failures:?} ({elapsed:.2?})",
            commands.len()
        ),
    )
}

fn main() {
    // `cargo test -- --list` and filters are not meaningful here
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "connected-sum degree law", criterion_1),
        (2, "iterated sum degree ledger", criterion_2),
        (3, "Euler characteristic of sums", criterion_3),
        (4, "Hurwitz classes of generic polynomials", criterion_4),
        (5, "symmetry of polynomial classes", criterion_5),
        (6, "formal mating validity", criterion_6),
        (7, "sandwich semigroup identities", criterion_7),
        (8, "pinching Beltrami norms", criterion_8),
        (9, "Julia slice census", criterion_9),
        (10, "determinism of every command", criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let outcome = run();
        let expected_failure = EXPECTED_FAILURES.contains(&id);
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        let note = if expected_failure {
            " [expected failure]"
        } else {
            ""
        };
        println!("{status} {id:>2} {name}{note}: {}", outcome.detail);
        if outcome.passed == expected_failure {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected acceptance results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}

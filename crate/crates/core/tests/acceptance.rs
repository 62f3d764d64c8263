//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use greenbench::automata::{Dfa, DEFAULT_SIMON_CAP, DEFAULT_SUBSET_CAP};
use greenbench::cli;
use greenbench::partition::{all_partitions, factorial};
use greenbench::verify::{brute_max_j_trivial, enumerate_f_q, floor_e_factorial, g_of_n, SubmonoidSearch};
use greenbench::witness::{gf_q, gs_n, p_n_q, s_n_direct, s_n_table, witness_a, witness_b, witness_s_dfa};
use greenbench::{close, Partition, Transformation, TransformationSemigroup};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// wide enough for the 17-letter S_5 automaton
const WITNESS_SIMON_CAP: usize = 20;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn t(images: &[usize]) -> Transformation {
    Transformation::from_images(images).unwrap()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{what} took {took:.2?}, limit {limit:?}"));
    }
    Ok(())
}

fn r_trivial_tightness() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("a4.dfa");
    let path = path.to_str().unwrap();
    let out = cli::run(["greenbench", "witness", "rtrivial", "-n", "4", "-o", path]);
    ensure!(out.code == 0, "witness failed: {}", out.stderr);
    let out = cli::run(["greenbench", "analyze", path]);
    ensure!(out.code == 0, "analyze failed: {}", out.stderr);
    for line in ["quotient_complexity: 4", "syntactic_complexity: 24", "r_trivial: true"] {
        ensure!(out.stdout.lines().any(|l| l == line), "analyze output lacks `{line}`:\n{}", out.stdout);
    }
    let mut sizes = Vec::new();
    for n in 2..=5 {
        let sigma = witness_a(n).unwrap().syntactic_semigroup().unwrap().len();
        ensure!(BigUint::from(sigma) == factorial(n), "sigma(A_{n}) = {sigma}");
        sizes.push(sigma.to_string());
    }
    within(start, Duration::from_secs(1), "criterion")?;
    Ok(format!("kappa=4 sigma=24; sigma(A_n) for n=2..5: {}", sizes.join(",")))
}

fn generator_cardinality() -> Outcome {
    for n in 2..=8 {
        let len = gf_q(n).unwrap().len();
        ensure!(len == 1 + n * (n - 1) / 2, "|GF_Q| = {len} for n={n}");
    }
    let listed: BTreeSet<Transformation> = [
        t(&[1, 2, 3, 4]),
        t(&[1, 2, 4, 4]),
        t(&[1, 3, 3, 4]),
        t(&[1, 4, 3, 4]),
        t(&[2, 2, 3, 4]),
        t(&[3, 2, 3, 4]),
        t(&[4, 2, 3, 4]),
    ]
    .into();
    let got = gf_q(4).unwrap();
    ensure!(got.len() == 7 && got.iter().cloned().collect::<BTreeSet<_>>() == listed, "gf_q(4) = {got:?}");
    Ok("1 + C(n,2) for n=2..8; gf_q(4) matches the seven listed maps".into())
}

fn generator_minimality() -> Outcome {
    let mut runs = 0;
    let mut slowest = Duration::ZERO;
    for n in [3, 4] {
        let gens = gf_q(n).unwrap();
        let full = factorial(n);
        for drop in 0..gens.len() {
            let start = Instant::now();
            let rest: Vec<Transformation> =
                gens.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, g)| g.clone()).collect();
            let size = close(&rest).unwrap().len();
            within(start, Duration::from_secs(1), "closure run")?;
            slowest = slowest.max(start.elapsed());
            ensure!(BigUint::from(size) < full, "dropping {} still gives {size}", gens[drop]);
            runs += 1;
        }
    }
    Ok(format!("{runs} closure runs all short of n!; slowest {slowest:.2?}"))
}

fn j_trivial_monoid() -> Outcome {
    let start = Instant::now();
    let s4 = s_n_direct(4).unwrap();
    ensure!(s4.len() == 16, "|S_4| = {}", s4.len());
    let counts: Vec<usize> = s_n_table(4).unwrap().iter().map(|b| b.elements.len()).collect();
    ensure!(counts == [1, 1, 1, 1, 2, 2, 2, 6], "block counts {counts:?}");
    for n in 2..=5 {
        let closed = close(&gs_n(n).unwrap()).unwrap();
        let direct = s_n_direct(n).unwrap();
        ensure!(closed.elements() == direct.elements(), "closure of GS_{n} differs from S_{n}");
    }
    let g5 = close(&gs_n(5).unwrap()).unwrap().len();
    ensure!(g5 == 65, "|close(GS_5)| = {g5}");
    let listed: Vec<Transformation> = [
        [1, 2, 3, 4, 5],
        [1, 2, 3, 5, 5],
        [1, 2, 4, 5, 5],
        [1, 2, 5, 4, 5],
        [1, 3, 5, 4, 5],
        [1, 4, 3, 5, 5],
        [1, 4, 4, 5, 5],
        [1, 5, 3, 4, 5],
        [2, 5, 3, 4, 5],
        [3, 2, 5, 4, 5],
        [3, 3, 5, 4, 5],
        [4, 2, 3, 5, 5],
        [4, 2, 4, 5, 5],
        [4, 4, 3, 5, 5],
        [4, 4, 4, 5, 5],
        [5, 2, 3, 4, 5],
    ]
    .iter()
    .map(|i| t(i))
    .collect();
    ensure!(gs_n(5).unwrap() == listed, "gs_n(5) differs from the listed sixteen maps");
    within(start, Duration::from_secs(5), "criterion")?;
    Ok(format!("|S_4|=16 with blocks {counts:?}; close(GS_n)=S_n for n=2..5; |close(GS_5)|=65"))
}

fn bound_identity() -> Outcome {
    for n in 2..=20 {
        let (g, f) = (g_of_n(n).unwrap(), floor_e_factorial(n).unwrap());
        ensure!(g == f, "n={n}: sum {g} vs floor form {f}");
    }
    Ok(format!("exact agreement for n=2..20 (g(20) = {})", g_of_n(20).unwrap()))
}

fn extremality_oracle() -> Outcome {
    let start = Instant::now();
    let mut found = Vec::new();
    for (n, expected) in [(3, 5usize), (4, 16)] {
        let (size, witness) = brute_max_j_trivial(n).unwrap();
        ensure!(size == expected, "n={n}: maximum {size}");
        ensure!(BigUint::from(size) == g_of_n(n).unwrap(), "n={n}: maximum differs from g(n)");
        ensure!(witness.len() == size, "n={n}: witness has {} elements", witness.len());
        ensure!(witness.is_j_trivial() && witness.saito_holds(), "n={n}: witness fails the J-triviality checks");
        found.push(size.to_string());
    }
    within(start, Duration::from_secs(60), "search")?;
    Ok(format!("maxima {} for n=3,4 in {:.2?}", found.join(","), start.elapsed()))
}

fn reversal() -> Outcome {
    let start = Instant::now();
    for n in 2..=10 {
        let b = witness_b(n).unwrap();
        let kappa_r = b.reversal_complexity().unwrap();
        ensure!(kappa_r == 1 << (n - 1), "n={n}: reverse has {kappa_r} states");
        let (_, subsets) = b.reverse().determinize_with_subsets(DEFAULT_SUBSET_CAP).unwrap();
        let reached: BTreeSet<BTreeSet<usize>> = subsets.into_iter().collect();
        let expected: BTreeSet<BTreeSet<usize>> = p_n_q(n).unwrap().into_iter().collect();
        ensure!(reached == expected, "n={n}: reachable subsets are not the subsets containing n");
    }
    within(start, Duration::from_secs(2), "criterion")?;
    Ok("2^(n-1) for n=2..10; reachable subsets are exactly those containing n".into())
}

struct Verdicts {
    simon: Option<bool>,
    j_trivial: bool,
    saito: bool,
}

fn verdicts(dfa: &Dfa) -> Verdicts {
    let minimal = dfa.minimize();
    let monoid = minimal.transition_semigroup().unwrap().monoid_completion();
    let saito = match minimal.renumbered_topologically() {
        Some(ordered) => ordered.transition_semigroup().unwrap().monoid_completion().saito_holds(),
        None => false,
    };
    Verdicts { simon: minimal.simon_check(WITNESS_SIMON_CAP).verdict(), j_trivial: monoid.is_j_trivial(), saito }
}

fn random_partially_ordered(rng: &mut ChaCha8Rng) -> Dfa {
    let n = rng.gen_range(1..=6);
    let k = rng.gen_range(1..=4);
    // rank[label] is the position of a state in a hidden linear order
    let mut rank: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        rank.swap(i, rng.gen_range(0..=i));
    }
    let mut by_rank = vec![0; n];
    for (label, &r) in rank.iter().enumerate() {
        by_rank[r] = label;
    }
    let rows = (0..n).map(|label| (0..k).map(|_| by_rank[rng.gen_range(rank[label]..n)] + 1).collect()).collect();
    let finals: BTreeSet<usize> = (1..=n).filter(|_| rng.gen_bool(0.4)).collect();
    let alphabet = (0..k).map(|a| ((b'a' + a as u8) as char).to_string()).collect();
    Dfa::new(alphabet, rows, by_rank[0] + 1, &finals).unwrap()
}

fn simon_saito_equivalence() -> Outcome {
    let mut named: Vec<(String, Dfa)> = Vec::new();
    for n in 2..=5 {
        named.push((format!("A_{n}"), witness_a(n).unwrap()));
        named.push((format!("S-dfa_{n}"), witness_s_dfa(n).unwrap()));
    }
    for n in 2..=7 {
        named.push((format!("B_{n}"), witness_b(n).unwrap()));
    }
    for (name, dfa) in &named {
        let v = verdicts(dfa);
        ensure!(
            v.simon == Some(v.j_trivial) && v.saito == v.j_trivial,
            "{name}: component check {:?}, J-trivial {}, Saito {}",
            v.simon,
            v.j_trivial,
            v.saito
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut j_count = 0;
    for i in 0..500 {
        let dfa = random_partially_ordered(&mut rng);
        ensure!(dfa.is_partially_ordered(), "sample {i} is not partially ordered");
        let v = verdicts(&dfa);
        ensure!(
            v.simon == Some(v.j_trivial) && v.saito == v.j_trivial,
            "sample {i}: component check {:?}, J-trivial {}, Saito {}",
            v.simon,
            v.j_trivial,
            v.saito
        );
        j_count += usize::from(v.j_trivial);
    }
    let two_maximal = Dfa::from_transformations(
        &[("a".into(), t(&[2, 2, 4, 4])), ("b".into(), t(&[3, 2, 4, 4]))],
        1,
        &BTreeSet::from([4]),
    )
    .unwrap();
    match two_maximal.simon_check(DEFAULT_SIMON_CAP) {
        greenbench::automata::SimonOutcome::Fails(w) => {
            ensure!(w.gamma == ["a", "b"] && w.maximal_states == [2, 4], "unexpected witness {w:?}");
        }
        other => return Err(format!("two-maximal-state automaton gave {other}")),
    }
    Ok(format!(
        "{} witness DFAs and 500 random samples ({j_count} J-trivial) agree; gamma {{a,b}} with maximal states {{2,4}}",
        named.len()
    ))
}

fn fixed_points_determine_orbits(s: &TransformationSemigroup) -> bool {
    let mut seen: Vec<(BTreeSet<usize>, Partition)> = Vec::new();
    for x in s.elements() {
        let (fix, orbit) = (x.fixed_points(), x.orbits());
        if seen.iter().any(|(f, o)| *f == fix && *o != orbit) {
            return false;
        }
        seen.push((fix, orbit));
    }
    true
}

fn fixed_point_structure() -> Outcome {
    let mut pairs = 0usize;
    for n in 1..=5 {
        let f = enumerate_f_q(n).unwrap();
        let data: Vec<(BTreeSet<usize>, Partition)> = f.iter().map(|x| (x.fixed_points(), x.orbits())).collect();
        for (x, (fix, orbit)) in f.iter().zip(&data) {
            ensure!(*fix == orbit.max_set(), "{x}: fixed points differ from orbit maxima");
        }
        for (fix_t, orbit_t) in &data {
            for (fix_s, orbit_s) in &data {
                if orbit_t.refines(orbit_s).unwrap() {
                    pairs += 1;
                    ensure!(fix_t.is_superset(fix_s), "refinement without fixed-point containment");
                    ensure!((fix_t == fix_s) == (orbit_t == orbit_s), "fixed points equal but orbits differ");
                }
            }
        }
    }
    ensure!(fixed_points_determine_orbits(&s_n_direct(4).unwrap()), "S_4 has equal fixed points with different orbits");
    let mut checked = 0usize;
    let mut failure = None;
    for n in 1..=4 {
        SubmonoidSearch::new(n).unwrap().for_each(false, |s| {
            if s.is_j_trivial() {
                checked += 1;
                if failure.is_none() && !fixed_points_determine_orbits(&s) {
                    failure = Some(format!("{:?}", s.elements()));
                }
            }
        });
    }
    if let Some(f) = failure {
        return Err(format!("J-trivial submonoid {f} breaks fixed-point injectivity"));
    }
    Ok(format!("{pairs} refining pairs over F_Q (n<=5); S_4 and {checked} J-trivial submonoids (n<=4) checked"))
}

fn profile(sizes: &[usize]) -> Partition {
    let mut blocks = Vec::new();
    let mut next = 1;
    for &k in sizes {
        blocks.push((next..next + k).collect::<Vec<_>>());
        next += k;
    }
    Partition::from_blocks(next - 1, &blocks).unwrap()
}

fn counting() -> Outcome {
    ensure!(profile(&[3, 2, 5]).count_e() == BigUint::from(48u32), "profile (3,2,5)");
    ensure!(profile(&[1, 1, 8]).count_e() == BigUint::from(5040u32), "profile (1,1,8)");
    let listed = Partition::from_blocks(10, &[vec![1, 2, 5], vec![3, 7], vec![4, 6, 8, 9, 10]]).unwrap();
    ensure!(listed.count_e() == BigUint::from(48u32), "listed ten-state partition");
    let mut exhaustive = 0;
    for n in 1..=7 {
        for p in all_partitions(n).unwrap() {
            let count = p.count_e();
            if n <= 6 {
                ensure!(count == BigUint::from(p.enumerate_e().len()), "{p}: count differs from enumeration");
                exhaustive += 1;
            }
            let bound = factorial(n - p.block_count());
            let non_trivial = p.block_sizes().iter().filter(|&&k| k > 1).count();
            ensure!(count <= bound, "{p}: {count} exceeds (n-r)!");
            ensure!((count == bound) == (non_trivial <= 1), "{p}: equality case broken");
        }
    }
    Ok(format!("48 and 5040 for the two profiles; {exhaustive} partitions enumerated (n<=6); bound checked n<=7"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("R-trivial tightness", r_trivial_tightness),
        ("generator cardinality", generator_cardinality),
        ("generator minimality", generator_minimality),
        ("J-trivial monoid", j_trivial_monoid),
        ("bound identity", bound_identity),
        ("extremality oracle", extremality_oracle),
        ("reversal", reversal),
        ("component check vs J-triviality vs orbit joins", simon_saito_equivalence),
        ("structure of fixed points and orbits", fixed_point_structure),
        ("counting", counting),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

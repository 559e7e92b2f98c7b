//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use segcount::bell::{potential, power_coeff, BellTable, BinomialSequence, WeightVector};
use segcount::compositions::{
    comp_count_by_type, comp_weighted_bruteforce, comp_weighted_by_hsegments, comp_weighted_closed, restricted_count,
};
use segcount::lagrange::{bipartite_gf, motzkin_gf, reversion};
use segcount::matrixcomp::{
    bipartite_by_nonzeros, bipartite_count_by_type, bipartite_weighted_closed, bounded_outdegree_tree_count,
    enumerate_bipartite, u_coefficient,
};
use segcount::motzkin::special::{
    b_ary_closed_d1, bell_numbers_closed, binomial_closed, power_series_closed, r_ary_labeled_closed, stirling_closed,
};
use segcount::motzkin::{
    count_by_type, enumerate_paths, named_weights, power_series_weights, segment_types, weighted_sum_bruteforce,
    weighted_sum_by_segments, weighted_sum_closed, WeightKind,
};
use segcount::scalar::{fact, gen_binomial, rat, rat_int, sign};
use segcount::{specialize, Family, Integer, Polynomial, Rational, Series, WeightRule, WeightSpec};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn path_sizes(n: usize) -> Vec<(usize, usize)> {
    (0..=n / 2).flat_map(|m| (0..=n - 2 * m).map(move |k| (m, k))).collect()
}

fn ones() -> WeightSpec {
    WeightSpec::new(WeightRule::constant(Rational::one()), WeightRule::constant(Rational::one()))
}

fn err(e: segcount::Error) -> String {
    e.to_string()
}

fn random_unit_series(rng: &mut ChaCha8Rng, n: usize) -> Series {
    let mut c = vec![Rational::one()];
    c.extend((0..n).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=5))));
    Series::from_rationals(n, &c)
}

fn triple_agreement() -> Check {
    let w = WeightSpec::symbolic();
    let gf = motzkin_gf(&w, 5, 10).map_err(err)?;
    for (m, k) in path_sizes(10) {
        let brute = weighted_sum_bruteforce(m, k, &w).map_err(err)?;
        let closed = weighted_sum_closed(m, k, &w);
        let series = gf.coeff(m, k).map_err(err)?;
        ensure(brute == closed && &brute == series, || {
            format!("m={m} k={k}: brute {brute}, closed {closed}, series {series}")
        })?;
    }
    Ok(())
}

fn segment_refinement() -> Check {
    let w = WeightSpec::symbolic();
    for (m, k) in path_sizes(8) {
        let mut total = Polynomial::zero();
        for r in 0..=m {
            for l in 0..=k {
                total += &weighted_sum_by_segments(m, k, r, l, &w);
            }
        }
        ensure(total == weighted_sum_closed(m, k, &w), || format!("m={m} k={k}: refinement does not sum to total"))?;
        let paths = enumerate_paths(m, k).map_err(err)?.count();
        let mut count = Integer::zero();
        for ut in segment_types(m) {
            for ht in segment_types(k) {
                let c = count_by_type(m, k, &ut, &ht).map_err(err)?;
                ensure(c >= Integer::zero(), || format!("m={m} k={k}: negative count for {ut:?} {ht:?}"))?;
                count += c;
            }
        }
        ensure(count == Integer::from(paths), || format!("m={m} k={k}: types sum to {count}, {paths} paths"))?;
    }
    Ok(())
}

/// Motzkin paths of length n by a height-indexed walk count.
fn motzkin_by_walks(n: usize) -> u64 {
    let mut heights = vec![0u64; n + 2];
    heights[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u64; n + 2];
        for h in 0..=n {
            if heights[h] == 0 {
                continue;
            }
            next[h] += heights[h];
            next[h + 1] += heights[h];
            if h > 0 {
                next[h - 1] += heights[h];
            }
        }
        heights = next;
    }
    heights[0]
}

/// Balanced parenthesis words of semilength m.
fn dyck_words(m: usize) -> u64 {
    fn go(open: usize, close: usize, m: usize) -> u64 {
        if open == m && close == m {
            return 1;
        }
        let mut n = 0;
        if open < m {
            n += go(open + 1, close, m);
        }
        if close < open {
            n += go(open, close + 1, m);
        }
        n
    }
    go(0, 0, m)
}

fn motzkin_and_catalan() -> Check {
    let expected = [1u64, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188];
    let w = ones();
    for (n, &e) in expected.iter().enumerate() {
        let oracle = motzkin_by_walks(n);
        ensure(oracle == e, || format!("walk count n={n}: {oracle} != {e}"))?;
        let mut closed = Rational::zero();
        for m in 0..=n / 2 {
            closed += specialize(&weighted_sum_closed(m, n - 2 * m, &w), &w).map_err(err)?;
        }
        ensure(closed == rat_int(e as i64), || format!("closed form n={n}: {closed} != {e}"))?;
    }
    let flat_free = WeightSpec::new(WeightRule::constant(Rational::one()), WeightRule::constant(Rational::zero()));
    let gf = motzkin_gf(&flat_free, 5, 0).map_err(err)?;
    let catalan = [1u64, 1, 2, 5, 14, 42];
    for (m, &c) in catalan.iter().enumerate() {
        let oracle = dyck_words(m);
        let closed = specialize(&weighted_sum_closed(m, 0, &flat_free), &flat_free).map_err(err)?;
        let series = specialize(gf.coeff(m, 0).map_err(err)?, &flat_free).map_err(err)?;
        ensure(oracle == c && closed == rat_int(c as i64) && series == closed, || {
            format!("m={m}: Dyck {oracle}, closed {closed}, series {series}, expected {c}")
        })?;
    }
    Ok(())
}

fn against_bruteforce(w: &WeightSpec, label: &str, closed: impl Fn(usize, usize) -> Rational) -> Check {
    for (m, k) in path_sizes(8) {
        let brute = specialize(&weighted_sum_bruteforce(m, k, w).map_err(err)?, w).map_err(err)?;
        let c = closed(m, k);
        ensure(brute == c, || format!("{label} m={m} k={k}: closed {c}, weighted sum {brute}"))?;
    }
    Ok(())
}

fn stirling_and_tree_weights() -> Check {
    let w = named_weights(&WeightKind::Stirling);
    for (m, k) in path_sizes(8) {
        let spec = specialize(&weighted_sum_closed(m, k, &w), &w).map_err(err)?;
        ensure(spec == stirling_closed(m, k), || format!("stirling m={m} k={k}"))?;
    }
    against_bruteforce(&w, "stirling", stirling_closed)?;
    for b in 1..=3u32 {
        let w = named_weights(&WeightKind::BAry { b, d: 1 });
        for (m, k) in path_sizes(8) {
            let spec = specialize(&weighted_sum_closed(m, k, &w), &w).map_err(err)?;
            ensure(spec == b_ary_closed_d1(b as usize, m, k), || format!("b={b} m={m} k={k}"))?;
        }
    }
    Ok(())
}

fn special_families() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut series = vec![Series::from_rationals(8, &[Rational::one(), Rational::one()])];
    series.push(random_unit_series(&mut rng, 8));
    for (i, f) in series.iter().enumerate() {
        let w = power_series_weights(f, None).map_err(err)?;
        against_bruteforce(&w, &format!("power series #{i}"), |m, k| power_series_closed(f, m, k).unwrap())?;
    }
    for r in 0..=2u32 {
        let w = named_weights(&WeightKind::RAryLabeled { r });
        against_bruteforce(&w, &format!("labeled r={r}"), |m, k| r_ary_labeled_closed(r as usize, m, k))?;
    }
    for phi in BinomialSequence::named() {
        let w = named_weights(&WeightKind::BinomialPair { phi: phi.clone(), psi: BinomialSequence::Factorial });
        against_bruteforce(&w, &phi.to_string(), |m, k| binomial_closed(&phi, m, k))?;
    }
    against_bruteforce(&named_weights(&WeightKind::BellNumbers), "bell numbers", bell_numbers_closed)
}

fn bell_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..25 {
        let f = random_unit_series(&mut rng, 8);
        let entries: Vec<Rational> = (1..=8)
            .map(|i| power_coeff(&f, i - 1, i as i64).unwrap().as_constant().unwrap())
            .collect();
        let table = BellTable::new(8, &WeightVector::from_rationals(entries));
        for m in 1..=8 {
            for r in 1..=m {
                let rhs = power_coeff(&f, m - r, m as i64).map_err(err)?.scale(&rat_int(gen_binomial(m as i64 - 1, r as i64 - 1)));
                ensure(table.get(m, r) == rhs, || format!("series #{trial} m={m} r={r}"))?;
            }
        }
    }
    for phi in BinomialSequence::named() {
        let entries: Vec<Rational> = (1..=8)
            .map(|i| if i == 1 { Rational::one() } else { rat_int(i as i64) * phi.value(i - 1, &Rational::one()) })
            .collect();
        let table = BellTable::new(8, &WeightVector::from_rationals(entries));
        for m in 1..=8 {
            for r in 1..=m {
                let rhs = rat_int(gen_binomial(m as i64, r as i64)) * phi.value(m - r, &rat_int(r as i64));
                ensure(table.get(m, r) == Polynomial::constant(rhs), || format!("{phi} m={m} r={r}"))?;
            }
        }
    }
    Ok(())
}

fn potential_and_reversion() -> Check {
    let a = WeightVector::symbolic(Family::T);
    let table = BellTable::new(14, &a.shifted());
    for n in 0..=8 {
        for r in 1..=6usize {
            let lhs = potential(n, r as i64, &a);
            let rhs = table.get(n + r, r).scale(&Rational::new(1.into(), gen_binomial((n + r) as i64, r as i64)));
            ensure(lhs == rhs, || format!("n={n} r={r}: {lhs} != {rhs}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let x = Series::from_rationals(20, &[Rational::zero(), Rational::one()]);
    for trial in 0..50 {
        let mut c = vec![Rational::zero(), rat(rng.gen_range(1..=6), rng.gen_range(1..=5))];
        c.extend((2..=20).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=5))));
        let f = Series::from_rationals(20, &c);
        let g = reversion(&f, 20).map_err(err)?;
        ensure(f.compose(&g).map_err(err)? == x, || format!("series #{trial}: f(g(x)) != x mod x^21"))?;
    }
    Ok(())
}

/// Positive compositions of m into j parts drawn from `allowed`.
fn restricted_oracle(m: usize, j: usize, allowed: &BTreeSet<usize>) -> u64 {
    if j == 0 {
        return (m == 0) as u64;
    }
    allowed.iter().filter(|&&a| a <= m).map(|&a| restricted_oracle(m - a, j - 1, allowed)).sum()
}

fn compositions() -> Check {
    let w = WeightSpec::symbolic();
    for m in 0..=7 {
        for j in 0..=7 {
            for k in 0..=j {
                let closed = comp_weighted_closed(m, k, j, &w);
                let brute = comp_weighted_bruteforce(m, k, j, &w).map_err(err)?;
                ensure(closed == brute, || format!("m={m} k={k} j={j}: {closed} != {brute}"))?;
                let refined: Polynomial = (0..=k).map(|l| comp_weighted_by_hsegments(m, k, j, l, &w)).sum();
                ensure(refined == closed, || format!("m={m} k={k} j={j}: zero-run refinement"))?;
                let mut types = Integer::zero();
                for ut in segment_types(m) {
                    for ht in segment_types(k) {
                        if ut.values().sum::<usize>() == j - k {
                            types += comp_count_by_type(j, &ut, &ht).map_err(err)?;
                        }
                    }
                }
                let count = specialize(&closed, &ones()).map_err(err)?;
                ensure(rat_int(types.clone()) == count, || format!("m={m} k={k} j={j}: types {types} != {count}"))?;
            }
        }
    }
    let allowed: BTreeSet<usize> = [1, 2].into();
    for m in 0..=10 {
        for j in 0..=10 {
            let got = restricted_count(m, j, Some(&allowed), None).map_err(err)?;
            let want = restricted_oracle(m, j, &allowed);
            ensure(got == Integer::from(want), || format!("m={m} j={j}: {got} != {want}"))?;
        }
    }
    Ok(())
}

fn bipartite() -> Check {
    let w = WeightSpec::symbolic();
    for p in 0..=3 {
        for j in 0..=4 {
            for m in 0..=7 {
                let all: Vec<_> = enumerate_bipartite(m, p, j).map_err(err)?.collect();
                let brute: Polynomial = all.iter().map(|c| c.weight(&w)).sum();
                let closed = bipartite_weighted_closed(m, p, j, &w);
                ensure(closed == brute, || format!("m={m} p={p} j={j}: {closed} != {brute}"))?;
                for r in 0..=m {
                    let part: Polynomial = all.iter().filter(|c| c.nonzeros() == r).map(|c| c.weight(&w)).sum();
                    ensure(bipartite_by_nonzeros(m, p, j, r, &w) == part, || format!("m={m} p={p} j={j} r={r}"))?;
                }
                for et in segment_types(m) {
                    let direct = all.iter().filter(|c| c.entry_type() == et).count();
                    let got = bipartite_count_by_type(p, j, &et).map_err(err)?;
                    ensure(got == Integer::from(direct), || format!("m={m} p={p} j={j} type {et:?}"))?;
                }
            }
        }
    }
    for j in 0..=4 {
        let single = bipartite_gf(&w, 1, j, 8).map_err(err)?;
        for p in 0..=4 {
            let lhs = bipartite_gf(&w, p, j, 8).map_err(err)?;
            ensure(lhs == single.pow(p as i64).map_err(err)?, || format!("power law p={p} j={j}"))?;
        }
    }
    Ok(())
}

/// Plane trees on v vertices with outdegree at most j, by splitting off the
/// root's children as an ordered forest.
fn tree_oracle(v: usize, j: usize) -> u64 {
    // forests[d][n]: ordered forests of d trees on n vertices
    let mut trees = vec![0u64; v + 1];
    for n in 1..=v {
        let mut forest = vec![0u64; n];
        forest[0] = 1;
        let mut total = forest[n - 1];
        for _ in 1..=j {
            let mut next = vec![0u64; n];
            for (size, &f) in forest.iter().enumerate() {
                for t in 1..n - size {
                    next[size + t] += f * trees[t];
                }
            }
            forest = next;
            total += forest[n - 1];
        }
        trees[n] = total;
    }
    trees[v]
}

fn plane_trees() -> Check {
    for m in 0..=8 {
        for j in 1..=4 {
            let oracle = tree_oracle(m + 1, j);
            let trees = bounded_outdegree_tree_count(m + 1, j).map_err(err)?;
            ensure(trees == Integer::from(oracle), || format!("v={} j={j}: {trees} != {oracle}", m + 1))?;
            let u = u_coefficient(m + 1, j, m);
            ensure(Integer::from(oracle * (m as u64 + 1)) == u, || format!("m={m} j={j}: {} trees, U={u}", oracle))?;
        }
    }
    ensure(u_coefficient(4, 2, 3) == Integer::from(16), || "U_{4,2,3} != 16".into())?;
    ensure(tree_oracle(4, 2) == 4, || "trees on 4 vertices with outdegree <= 2".into())
}

fn binomial_identities() -> Check {
    for l in 0..=12i64 {
        for j in 0..=12i64 {
            let lhs: Integer = (0..=j).map(|i| sign(i) * gen_binomial(j, i) * gen_binomial(-i, l)).sum();
            ensure(lhs == sign(l - j) * gen_binomial(l - 1, l - j), || format!("alternating sum l={l} j={j}"))?;
        }
    }
    for k in 0..=12i64 {
        for j in 0..=k {
            let lhs: Integer = (j..=k).map(|l| sign(l - j) * gen_binomial(l, j) * gen_binomial(k, l)).sum();
            ensure(lhs == Integer::from((j == k) as i64), || format!("orthogonality j={j} k={k}"))?;
        }
    }
    for n in 0..=12i64 {
        for r in 0..=12i64 {
            let lhs: Integer = (0..=n).map(|i| sign(i) * gen_binomial(n, i) * gen_binomial(n - i, r)).sum();
            ensure(lhs == Integer::from((r == n) as i64), || format!("Kronecker n={n} r={r}"))?;
        }
    }
    ensure(fact(12) == Integer::from(479_001_600u64), || "12!".into())
}

fn verify_binary() -> Check {
    let start = Instant::now();
    let run = |extra: &[&str]| -> Result<String, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_segcount"))
            .args(["verify", "--suite", "all", "--max-n", "8"])
            .args(extra)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stdout)));
        }
        Ok(String::from_utf8_lossy(&out.stdout).into_owned())
    };
    let parallel = run(&[])?;
    let sequential = run(&["--sequential"])?;
    let json = run(&["--format", "json"])?;
    let elapsed = start.elapsed();
    ensure(parallel == sequential, || "parallel and sequential reports differ".into())?;
    let records: serde_json::Value = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    let records = records.as_array().ok_or("json report is not an array")?;
    ensure(!records.is_empty() && records.iter().all(|r| r["status"] == "pass"), || "json report has failures".into())?;
    ensure(elapsed <= Duration::from_secs(300), || format!("three runs took {elapsed:?}"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("weighted path sums: brute force, closed form, series agree for 2m+k <= 10", triple_agreement),
        ("segment refinement and type counts for 2m+k <= 8", segment_refinement),
        ("Motzkin numbers n <= 10 and Catalan numbers m <= 5", motzkin_and_catalan),
        ("Stirling and b-ary tree weight closed forms for 2m+k <= 8", stirling_and_tree_weights),
        ("power-series, labeled-tree, binomial-type and Bell-number weights for 2m+k <= 8", special_families),
        ("partial Bell identities for power coefficients and binomial-type values, m <= 8", bell_identities),
        ("potential polynomials from shifted Bell, series reversion mod x^21", potential_and_reversion),
        ("composition closed forms m, j <= 7 and restricted counts m <= 10", compositions),
        ("bipartite matrix closed forms m <= 7, p <= 3, j <= 4 and the power law", bipartite),
        ("bounded-outdegree plane trees against U for m <= 8, j <= 4", plane_trees),
        ("binomial identities for indices <= 12", binomial_identities),
        ("verify --suite all --max-n 8: exit 0, parallel equals sequential, under 5 minutes", verify_binary),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS criterion {:>2}: {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Identity suites: every closed form checked against its independent
//! routes over a range of sizes, with the first counterexample reported.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bell::{partial_bell_oracle, potential, power_coeff, BellTable, BinomialSequence, WeightVector};
use crate::compositions::{
    comp_count_by_type, comp_weighted_bruteforce, comp_weighted_by_hsegments, comp_weighted_closed, composition_count,
    composition_to_motzkin, enumerate_compositions, restricted_count,
};
use crate::error::{Error, Result};
use crate::lagrange::{bipartite_gf, compositions_gf, lagrange_coeff, matrix_gf, motzkin_gf, reversion};
use crate::matrixcomp::{
    bipartite_by_nonzeros, bipartite_count_by_type, bipartite_weighted_closed, bounded_outdegree_tree_count,
    enumerate_bipartite, matrix_weighted_bruteforce, tree_count_formula, u_coefficient, zero_one_count,
};
use crate::motzkin::special::{
    abel_closed, b_ary_closed, b_ary_closed_d1, bell_numbers_closed, binomial_closed, binomial_pair_closed,
    power_series_closed, power_series_pair_closed, r_ary_labeled_closed, stirling_by_segments, stirling_closed,
};
use crate::motzkin::{
    count_by_type, enumerate_paths, named_weights, power_series_weights, segment_types, v_coefficient,
    weighted_sum_bruteforce, weighted_sum_bruteforce_by_segments, weighted_sum_by_segments, weighted_sum_closed,
    WeightKind,
};
use crate::polyring::{specialize, Family, Polynomial, Series, WeightRule, WeightSpec};
use crate::scalar::{fact, gen_binomial, rat, rat_int, sign, Integer, Rational};

/// Largest size accepted by [`run`].
pub const MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    CoreIdentities,
    Bell,
    Motzkin,
    Compositions,
    Matrixcomp,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::CoreIdentities, Suite::Bell, Suite::Motzkin, Suite::Compositions, Suite::Matrixcomp];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CoreIdentities => "core-identities",
            Suite::Bell => "bell",
            Suite::Motzkin => "motzkin",
            Suite::Compositions => "compositions",
            Suite::Matrixcomp => "matrixcomp",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub suite: String,
    pub identity: String,
    pub range: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "[{}] {} ({}): {}", self.suite, self.identity, self.range, status)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n    counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == Status::Fail).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        write!(f, "{} identities, {} failed", self.records.len(), self.failures())
    }
}

/// `Ok(None)` when the identity holds, `Ok(Some(input))` on the first
/// counterexample.
type Outcome = Result<Option<String>>;
type CheckFn = Box<dyn Fn() -> Outcome + Send + Sync>;

struct Check {
    suite: Suite,
    identity: &'static str,
    range: String,
    run: CheckFn,
}

impl Check {
    fn execute(&self) -> Record {
        let counterexample = match (self.run)() {
            Ok(c) => c,
            Err(e) => Some(format!("error: {e}")),
        };
        Record {
            suite: self.suite.name().to_string(),
            identity: self.identity.to_string(),
            range: self.range.clone(),
            status: if counterexample.is_none() { Status::Pass } else { Status::Fail },
            counterexample,
        }
    }
}

fn check(suite: Suite, identity: &'static str, range: String, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Check {
    Check { suite, identity, range, run: Box::new(run) }
}

fn differ<T: PartialEq + fmt::Display>(ctx: impl FnOnce() -> String, lhs: &T, rhs: &T) -> Option<String> {
    (lhs != rhs).then(|| format!("{}: {} != {}", ctx(), lhs, rhs))
}

/// Sizes `(m, k)` with `2m + k <= n`.
fn path_sizes(n: usize) -> Vec<(usize, usize)> {
    (0..=n / 2).flat_map(|m| (0..=n - 2 * m).map(move |k| (m, k))).collect()
}

/// Runs the suites up to size `max_n`, in a fixed order, optionally in
/// parallel across identities.
pub fn run(suites: &[Suite], max_n: usize, parallel: bool) -> Result<Report> {
    if max_n > MAX_N {
        return Err(Error::BoundExceeded { what: format!("verification size {max_n}"), bound: MAX_N });
    }
    let mut chosen = suites.to_vec();
    chosen.sort();
    chosen.dedup();
    let checks: Vec<Check> = chosen.into_iter().flat_map(|s| checks(s, max_n)).collect();
    let records = if parallel {
        checks.par_iter().map(Check::execute).collect()
    } else {
        checks.iter().map(Check::execute).collect()
    };
    Ok(Report { records })
}

fn checks(suite: Suite, n: usize) -> Vec<Check> {
    match suite {
        Suite::CoreIdentities => core_checks(n),
        Suite::Bell => bell_checks(n),
        Suite::Motzkin => motzkin_checks(n),
        Suite::Compositions => composition_checks(n),
        Suite::Matrixcomp => matrix_checks(n),
    }
}

fn core_checks(n: usize) -> Vec<Check> {
    let s = Suite::CoreIdentities;
    vec![
        check(s, "alternating sum of C(j,i) C(-i,l) equals (-1)^(l-j) C(l-1,l-j)", format!("0 <= l, j <= {n}"), move || {
            for l in 0..=n as i64 {
                for j in 0..=n as i64 {
                    let lhs: Integer = (0..=j).map(|i| sign(i) * gen_binomial(j, i) * gen_binomial(-i, l)).sum();
                    let rhs = sign(l - j) * gen_binomial(l - 1, l - j);
                    if let Some(c) = differ(|| format!("l={l} j={j}"), &lhs, &rhs) {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
        check(s, "binomial orthogonality", format!("0 <= j <= k <= {n}"), move || {
            for k in 0..=n as i64 {
                for j in 0..=k {
                    let lhs: Integer = (j..=k).map(|l| sign(l - j) * gen_binomial(l, j) * gen_binomial(k, l)).sum();
                    let rhs = Integer::from((k == j) as i64);
                    if let Some(c) = differ(|| format!("j={j} k={k}"), &lhs, &rhs) {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
        check(s, "Kronecker delta from alternating binomial sums", format!("0 <= n, r <= {n}"), move || {
            for a in 0..=n as i64 {
                for r in 0..=n as i64 {
                    let lhs: Integer = (0..=a).map(|i| sign(i) * gen_binomial(a, i) * gen_binomial(a - i, r)).sum();
                    let rhs = Integer::from((r == a) as i64);
                    if let Some(c) = differ(|| format!("n={a} r={r}"), &lhs, &rhs) {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
        check(s, "Pascal recurrence with negative upper index", format!("-{n} <= a <= {n}, 1 <= b <= {n}"), move || {
            let n = n as i64;
            for a in -n..=n {
                for b in 1..=n {
                    let lhs = gen_binomial(a, b);
                    let rhs = gen_binomial(a - 1, b) + gen_binomial(a - 1, b - 1);
                    if let Some(c) = differ(|| format!("a={a} b={b}"), &lhs, &rhs) {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
    ]
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=5))
}

/// Series `1 + c_1 x + ... + c_n x^n` with random rational coefficients.
pub fn random_unit_series(rng: &mut ChaCha8Rng, n: usize) -> Series {
    let mut c = vec![Rational::one()];
    c.extend((0..n).map(|_| random_rational(rng)));
    Series::from_rationals(n, &c)
}

fn bell_checks(n: usize) -> Vec<Check> {
    let s = Suite::Bell;
    vec![
        check(s, "partial Bell recurrence equals partition sum", format!("0 <= r <= n <= {n}"), move || {
            let x = WeightVector::symbolic(Family::T);
            let table = BellTable::new(n, &x);
            for a in 0..=n {
                for r in 0..=a {
                    let oracle = partial_bell_oracle(a, r, &x)?;
                    if let Some(c) = differ(|| format!("n={a} r={r}"), &table.get(a, r), &oracle) {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
        check(s, "partial Bell homogeneity", format!("0 <= r <= n <= {n}"), move || {
            let x = WeightVector::symbolic(Family::T);
            let q = rat(-3, 2);
            let scaled = BellTable::new(n, &x.times(Polynomial::constant(q.clone())));
            let plain = BellTable::new(n, &x);
            for a in 0..=n {
                for r in 0..=a {
                    let rhs = plain.get(a, r).scale(&num_traits::pow(q.clone(), r));
                    if let Some(c) = differ(|| format!("n={a} r={r}"), &scaled.get(a, r), &rhs) {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
        check(s, "potential polynomial from shifted partial Bell", format!("n <= {n}, 1 <= r <= 6"), move || {
            let a = WeightVector::symbolic(Family::T);
            let shifted = a.shifted();
            let table = BellTable::new(n + 6, &shifted);
            for k in 0..=n {
                for r in 1..=6usize {
                    let lhs = potential(k, r as i64, &a);
                    let rhs = table.get(k + r, r).scale(&Rational::new(1.into(), gen_binomial((k + r) as i64, r as i64)));
                    if let Some(c) = differ(|| format!("n={k} r={r}"), &lhs, &rhs) {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
        check(s, "partial Bell of power coefficients", format!("1 <= r <= m <= {n}, 25 random series"), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
            for trial in 0..25 {
                let f = random_unit_series(&mut rng, n);
                let entries = (1..=n).map(|i| power_coeff(&f, i - 1, i as i64)?.as_constant().ok_or(Error::Undefined("symbolic".into()))).collect::<Result<Vec<_>>>()?;
                let x = WeightVector::from_rationals(entries);
                let table = BellTable::new(n, &x);
                for m in 1..=n {
                    for r in 1..=m {
                        let rhs = power_coeff(&f, m - r, m as i64)?.scale(&rat_int(gen_binomial(m as i64 - 1, r as i64 - 1)));
                        if let Some(c) = differ(|| format!("series #{trial} m={m} r={r}"), &table.get(m, r), &rhs) {
                            return Ok(Some(c));
                        }
                    }
                }
            }
            Ok(None)
        }),
        check(s, "partial Bell of binomial-type values", format!("1 <= r <= m <= {n}, built-in sequences"), move || {
            for phi in BinomialSequence::named() {
                let p = phi.clone();
                let x = WeightVector::new(move |i| {
                    if i == 1 {
                        Polynomial::one()
                    } else {
                        Polynomial::constant(rat_int(i as i64) * p.value(i - 1, &Rational::one()))
                    }
                });
                let table = BellTable::new(n, &x);
                for m in 1..=n {
                    for r in 1..=m {
                        let rhs = Polynomial::constant(rat_int(gen_binomial(m as i64, r as i64)) * phi.value(m - r, &rat_int(r as i64)));
                        if let Some(c) = differ(|| format!("{phi} m={m} r={r}"), &table.get(m, r), &rhs) {
                            return Ok(Some(c));
                        }
                    }
                }
            }
            Ok(None)
        }),
        check(s, "potential polynomial equals series power", format!("n <= {n}, -4 <= lambda <= 4"), move || {
            let a = WeightVector::symbolic(Family::T);
            let series = Series::univariate(n, |k| if k == 0 { Polynomial::one() } else { a.get(k).scale(&Rational::new(1.into(), fact(k as u64))) });
            let table = BellTable::new(n, &a);
            for lambda in -4..=4 {
                let power = series.pow(lambda)?;
                for k in 0..=n {
                    let rhs = power.coeff(k, 0)?.scale(&rat_int(fact(k as u64)));
                    if let Some(c) = differ(|| format!("n={k} lambda={lambda}"), &table.potential(k, lambda), &rhs) {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
        check(s, "series reversion round trip", "x^21, 50 random series".to_string(), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
            let x = Series::from_rationals(20, &[Rational::zero(), Rational::one()]);
            for trial in 0..50 {
                let mut c = vec![Rational::zero()];
                let lead = loop {
                    let v = random_rational(&mut rng);
                    if !v.is_zero() {
                        break v;
                    }
                };
                c.push(lead);
                c.extend((2..=20).map(|_| random_rational(&mut rng)));
                let f = Series::from_rationals(20, &c);
                let g = reversion(&f, 20)?;
                let back = f.compose(&g)?;
                if back != x {
                    return Ok(Some(format!("series #{trial}: f(g(x)) differs from x")));
                }
            }
            Ok(None)
        }),
        check(s, "Lagrange coefficient equals composed series coefficient", "n <= 10, 10 random pairs".to_string(), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
            for trial in 0..10 {
                let mut fc = vec![Rational::zero(), rat_int(rng.gen_range(1..=3))];
                fc.extend((2..=10).map(|_| random_rational(&mut rng)));
                let f = Series::from_rationals(10, &fc);
                let phi = random_unit_series(&mut rng, 10);
                let composed = phi.compose(&reversion(&f, 10)?)?;
                for k in 1..=10 {
                    let lhs = lagrange_coeff(&phi, &f, k)?;
                    if let Some(c) = differ(|| format!("pair #{trial} n={k}"), &lhs, composed.coeff(k, 0)?) {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
    ]
}

fn all_ones() -> WeightSpec {
    WeightSpec::new(WeightRule::constant(Rational::one()), WeightRule::constant(Rational::one()))
}

/// Compares a closed form against the specialized brute-force sum for
/// every size with `2m + k <= n`.
fn special_agreement(
    n: usize,
    w: &WeightSpec,
    label: &str,
    closed: impl Fn(usize, usize) -> Result<Option<Rational>>,
) -> Outcome {
    for (m, k) in path_sizes(n) {
        let Some(value) = closed(m, k)? else { continue };
        let brute = specialize(&weighted_sum_bruteforce(m, k, w)?, w)?;
        if let Some(c) = differ(|| format!("{label} m={m} k={k}"), &value, &brute) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn motzkin_checks(n: usize) -> Vec<Check> {
    let s = Suite::Motzkin;
    let range = format!("2m+k <= {n}");
    vec![
        check(s, "weighted path sums: brute force, closed form and series agree", range.clone(), move || {
            let w = WeightSpec::symbolic();
            let gf = motzkin_gf(&w, n / 2, n)?;
            for (m, k) in path_sizes(n) {
                let brute = weighted_sum_bruteforce(m, k, &w)?;
                let closed = weighted_sum_closed(m, k, &w);
                let series = gf.coeff(m, k)?;
                if let Some(c) = differ(|| format!("m={m} k={k} closed vs brute force"), &closed, &brute)
                    .or_else(|| differ(|| format!("m={m} k={k} series vs brute force"), series, &brute))
                {
                    return Ok(Some(c));
                }
            }
            Ok(None)
        }),
        check(s, "series coefficients are index-weighted homogeneous", range.clone(), move || {
            let gf = motzkin_gf(&WeightSpec::symbolic(), n / 2, n)?;
            for (m, k) in path_sizes(n) {
                for (mono, _) in gf.coeff(m, k)?.terms() {
                    if mono.weighted_degree(Family::T) != m as u64 || mono.weighted_degree(Family::S) != k as u64 {
                        return Ok(Some(format!("m={m} k={k}: monomial {mono}")));
                    }
                }
            }
            Ok(None)
        }),
        check(s, "segment-count refinement sums to the total", range.clone(), move || {
            let w = WeightSpec::symbolic();
            for (m, k) in path_sizes(n) {
                let mut total = Polynomial::zero();
                for r in 0..=m {
                    for l in 0..=k {
                        let part = weighted_sum_by_segments(m, k, r, l, &w);
                        let brute = weighted_sum_bruteforce_by_segments(m, k, r, l, &w)?;
                        if let Some(c) = differ(|| format!("m={m} k={k} r={r} l={l}"), &part, &brute) {
                            return Ok(Some(c));
                        }
                        total += &part;
                    }
                }
                if let Some(c) = differ(|| format!("m={m} k={k} total"), &total, &weighted_sum_closed(m, k, &w)) {
                    return Ok(Some(c));
                }
            }
            Ok(None)
        }),
        check(s, "segment type counts are nonnegative integers summing to the path count", range.clone(), move || {
            for (m, k) in path_sizes(n) {
                let paths = enumerate_paths(m, k)?.count();
                let mut total = Integer::zero();
                for ut in segment_types(m) {
                    for ht in segment_types(k) {
                        total += count_by_type(m, k, &ut, &ht)?;
                    }
                }
                if let Some(c) = differ(|| format!("m={m} k={k}"), &total, &Integer::from(paths)) {
                    return Ok(Some(c));
                }
            }
            Ok(None)
        }),
        check(s, "V coefficient integrality", range.clone(), move || {
            for (m, k) in path_sizes(n) {
                for r in 0..=m {
                    for l in 0..=k {
                        let v = v_coefficient(m, k, r, l);
                        if m > 0 && r > 0 && v < Integer::zero() {
                            return Ok(Some(format!("m={m} k={k} r={r} l={l}: V={v}")));
                        }
                    }
                }
            }
            Ok(None)
        }),
        check(s, "all-ones weights give Motzkin numbers", format!("n <= {n}"), move || {
            let w = all_ones();
            let motzkin = [1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798, 15511];
            for (len, &expected) in motzkin.iter().enumerate().take(n + 1) {
                let mut total = Rational::zero();
                let mut brute = 0usize;
                for m in 0..=len / 2 {
                    total += specialize(&weighted_sum_closed(m, len - 2 * m, &w), &w)?;
                    brute += enumerate_paths(m, len - 2 * m)?.count();
                }
                if let Some(c) = differ(|| format!("n={len} closed form"), &total, &rat_int(expected))
                    .or_else(|| differ(|| format!("n={len} enumeration"), &brute, &(expected as usize)))
                {
                    return Ok(Some(c));
                }
            }
            Ok(None)
        }),
        check(s, "paths without flat steps give Catalan numbers", format!("m <= {}", n / 2), move || {
            let w = WeightSpec::new(WeightRule::constant(Rational::one()), WeightRule::constant(Rational::zero()));
            let gf = motzkin_gf(&w, n / 2, 0)?;
            let mut catalan = Integer::one();
            for m in 0..=n / 2 {
                let closed = specialize(&weighted_sum_closed(m, 0, &w), &w)?;
                let series = specialize(gf.coeff(m, 0)?, &w)?;
                let dyck = enumerate_paths(m, 0)?.count();
                if let Some(c) = differ(|| format!("m={m} closed"), &closed, &rat_int(catalan.clone()))
                    .or_else(|| differ(|| format!("m={m} series"), &series, &rat_int(catalan.clone())))
                    .or_else(|| differ(|| format!("m={m} Dyck paths"), &Integer::from(dyck), &catalan))
                {
                    return Ok(Some(c));
                }
                catalan = catalan * Integer::from(2 * (2 * m + 1)) / Integer::from(m + 2);
            }
            Ok(None)
        }),
        check(s, "Stirling weights closed form", range.clone(), move || {
            let w = named_weights(&WeightKind::Stirling);
            if let Some(c) = special_agreement(n, &w, "stirling", |m, k| Ok(Some(stirling_closed(m, k))))? {
                return Ok(Some(c));
            }
            for (m, k) in path_sizes(n) {
                for r in 0..=m {
                    for l in 0..=k {
                        let brute = specialize(&weighted_sum_bruteforce_by_segments(m, k, r, l, &w)?, &w)?;
                        if let Some(c) = differ(|| format!("m={m} k={k} r={r} l={l}"), &stirling_by_segments(m, k, r, l), &brute) {
                            return Ok(Some(c));
                        }
                    }
                }
            }
            Ok(None)
        }),
        check(s, "b-ary tree weights closed form", format!("{range}, 1 <= b <= 3, d = 1"), move || {
            for b in 1..=3u32 {
                let w = named_weights(&WeightKind::BAry { b, d: 1 });
                let label = format!("b={b}");
                let closed = |m, k| Ok(Some(b_ary_closed_d1(b as usize, m, k)));
                if let Some(c) = special_agreement(n, &w, &label, closed)? {
                    return Ok(Some(c));
                }
            }
            Ok(None)
        }),
        check(s, "b-ary and d-ary tree weights closed form", format!("{range}, 1 <= b <= 3, 0 <= d <= 3"), move || {
            for b in 1..=3u32 {
                for d in 0..=3u32 {
                    let w = named_weights(&WeightKind::BAry { b, d });
                    let label = format!("b={b} d={d}");
                    if let Some(c) = special_agreement(n, &w, &label, |m, k| Ok(Some(b_ary_closed(b as usize, d as usize, m, k))))? {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
        check(s, "power-series weights closed form", format!("{range}, f = 1+x and 3 random series"), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
            let mut family = vec![Series::from_rationals(n, &[Rational::one(), Rational::one()])];
            family.extend((0..3).map(|_| random_unit_series(&mut rng, n)));
            for (idx, f) in family.iter().enumerate() {
                let w = power_series_weights(f, None)?;
                let label = format!("series #{idx}");
                if let Some(c) = special_agreement(n, &w, &label, |m, k| power_series_closed(f, m, k).map(Some))? {
                    return Ok(Some(c));
                }
            }
            let (f, g) = (random_unit_series(&mut rng, n), random_unit_series(&mut rng, n));
            let w = power_series_weights(&f, Some(&g))?;
            special_agreement(n, &w, "series pair", |m, k| {
                if k == 0 {
                    Ok(None)
                } else {
                    power_series_pair_closed(&f, &g, m, k).map(Some)
                }
            })
        }),
        check(s, "labeled r-ary tree weights closed form", format!("{range}, 0 <= r <= 2"), move || {
            for r in 0..=2u32 {
                let w = named_weights(&WeightKind::RAryLabeled { r });
                let label = format!("r={r}");
                if let Some(c) = special_agreement(n, &w, &label, |m, k| Ok(Some(r_ary_labeled_closed(r as usize, m, k))))? {
                    return Ok(Some(c));
                }
            }
            for q in [rat_int(-2), rat(1, 3)] {
                let w = named_weights(&WeightKind::Abel { q: q.clone() });
                let label = format!("abel q={q}");
                if let Some(c) = special_agreement(n, &w, &label, |m, k| abel_closed(&q, m, k).map(Some))? {
                    return Ok(Some(c));
                }
            }
            Ok(None)
        }),
        check(s, "binomial-type weights closed form", format!("{range}, built-in sequences"), move || {
            for phi in BinomialSequence::named() {
                let w = named_weights(&WeightKind::BinomialPair { phi: phi.clone(), psi: BinomialSequence::Factorial });
                let label = phi.to_string();
                if let Some(c) = special_agreement(n, &w, &label, |m, k| Ok(Some(binomial_closed(&phi, m, k))))? {
                    return Ok(Some(c));
                }
                for psi in BinomialSequence::named() {
                    let w = named_weights(&WeightKind::BinomialPair { phi: phi.clone(), psi: psi.clone() });
                    let label = format!("{phi} with {psi}");
                    if let Some(c) = special_agreement(n, &w, &label, |m, k| Ok(Some(binomial_pair_closed(&phi, &psi, m, k))))? {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
        check(s, "Bell-number weights closed form", range, move || {
            let w = named_weights(&WeightKind::BellNumbers);
            special_agreement(n, &w, "bell numbers", |m, k| Ok(Some(bell_numbers_closed(m, k))))
        }),
    ]
}

fn composition_checks(n: usize) -> Vec<Check> {
    let s = Suite::Compositions;
    let cap = n.min(8);
    let range = format!("m, j <= {cap}");
    vec![
        check(s, "weighted compositions: brute force, closed form and series agree", range.clone(), move || {
            let w = WeightSpec::symbolic();
            let gf = compositions_gf(&w, cap, cap, cap)?;
            for m in 0..=cap {
                for j in 0..=cap {
                    for k in 0..=j {
                        let closed = comp_weighted_closed(m, k, j, &w);
                        let brute = comp_weighted_bruteforce(m, k, j, &w)?;
                        if let Some(c) = differ(|| format!("m={m} k={k} j={j} closed vs brute force"), &closed, &brute)
                            .or_else(|| differ(|| format!("m={m} k={k} j={j} series vs brute force"), gf.coeff3(m, k, j).unwrap_or(&closed), &brute))
                        {
                            return Ok(Some(c));
                        }
                    }
                }
            }
            Ok(None)
        }),
        check(s, "zero-run refinement sums to the total", range.clone(), move || {
            let w = WeightSpec::symbolic();
            for m in 0..=cap {
                for j in 0..=cap {
                    for k in 0..=j {
                        let mut total = Polynomial::zero();
                        for l in 0..=k {
                            total += &comp_weighted_by_hsegments(m, k, j, l, &w);
                        }
                        if let Some(c) = differ(|| format!("m={m} k={k} j={j}"), &total, &comp_weighted_closed(m, k, j, &w)) {
                            return Ok(Some(c));
                        }
                    }
                }
            }
            Ok(None)
        }),
        check(s, "embedding keeps nonzero parts as up-runs", range.clone(), move || {
            for m in 0..=cap {
                for j in 0..=cap {
                    for c in enumerate_compositions(m, j)? {
                        let profile = crate::motzkin::segment_profile(&composition_to_motzkin(&c));
                        let mut parts = crate::motzkin::SegmentType::new();
                        for &p in c.parts().iter().filter(|&&p| p > 0) {
                            *parts.entry(p).or_insert(0) += 1;
                        }
                        if profile.u_counts != parts || profile.u_segments() != c.j() - c.k() {
                            return Ok(Some(format!("composition {c}")));
                        }
                    }
                }
            }
            Ok(None)
        }),
        check(s, "type counts sum to the composition count", range.clone(), move || {
            for m in 0..=cap {
                for j in 0..=cap {
                    for k in 0..=j {
                        let mut total = Integer::zero();
                        for ut in segment_types(m) {
                            for ht in segment_types(k) {
                                if ut.values().sum::<usize>() == j - k {
                                    total += comp_count_by_type(j, &ut, &ht)?;
                                }
                            }
                        }
                        let direct = enumerate_compositions(m, j)?.filter(|c| c.k() == k).count();
                        if let Some(c) = differ(|| format!("m={m} k={k} j={j} types"), &total, &Integer::from(direct))
                            .or_else(|| differ(|| format!("m={m} k={k} j={j} count"), &composition_count(m, k, j), &Integer::from(direct)))
                        {
                            return Ok(Some(c));
                        }
                    }
                }
            }
            Ok(None)
        }),
        check(s, "restricted part counts match enumeration", format!("m, j <= {}", n.clamp(10, 12)), move || {
            let top = n.clamp(10, 12);
            let allowed = [1usize, 2].into_iter().collect();
            for m in 0..=top {
                for j in 0..=top {
                    let parts = enumerate_compositions(m, j)?.filter(|c| c.k() == 0).collect::<Vec<_>>();
                    let only = parts.iter().filter(|c| c.parts().iter().all(|p| *p <= 2)).count();
                    let no_two = parts.iter().filter(|c| !c.parts().contains(&2)).count();
                    let a = restricted_count(m, j, Some(&allowed), None)?;
                    let b = restricted_count(m, j, None, Some(2))?;
                    if let Some(c) = differ(|| format!("m={m} j={j} allowed {{1,2}}"), &a, &Integer::from(only))
                        .or_else(|| differ(|| format!("m={m} j={j} without 2"), &b, &Integer::from(no_two)))
                    {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
    ]
}

fn matrix_checks(n: usize) -> Vec<Check> {
    let s = Suite::Matrixcomp;
    let m_cap = n.min(8);
    vec![
        check(s, "bipartite compositions: brute force, closed form and series agree", format!("m <= {m_cap}, p <= 3, j <= 4"), move || {
            let w = WeightSpec::symbolic();
            for p in 0..=3 {
                for j in 0..=4 {
                    let gf = bipartite_gf(&w, p, j, m_cap)?;
                    for m in 0..=m_cap {
                        let closed = bipartite_weighted_closed(m, p, j, &w);
                        let brute: Polynomial = enumerate_bipartite(m, p, j)?.map(|c| c.weight(&w)).sum();
                        let split: Polynomial = (0..=m).map(|r| bipartite_by_nonzeros(m, p, j, r, &w)).sum();
                        if let Some(c) = differ(|| format!("m={m} p={p} j={j} closed vs brute force"), &closed, &brute)
                            .or_else(|| differ(|| format!("m={m} p={p} j={j} series vs brute force"), gf.coeff(m, 0).unwrap_or(&closed), &brute))
                            .or_else(|| differ(|| format!("m={m} p={p} j={j} nonzero split"), &split, &closed))
                        {
                            return Ok(Some(c));
                        }
                    }
                }
            }
            Ok(None)
        }),
        check(s, "entry type counts match enumeration", format!("m <= {m_cap}, p <= 3, j <= 4"), move || {
            for p in 0..=3 {
                for j in 0..=4 {
                    for m in 0..=m_cap {
                        let all: Vec<_> = enumerate_bipartite(m, p, j)?.collect();
                        for et in segment_types(m) {
                            let direct = all.iter().filter(|c| c.entry_type() == et).count();
                            let ones = all.iter().filter(|c| c.rows().iter().flatten().all(|&a| a <= 1)).count();
                            if let Some(c) = differ(|| format!("m={m} p={p} j={j} type {et:?}"), &bipartite_count_by_type(p, j, &et)?, &Integer::from(direct))
                                .or_else(|| differ(|| format!("m={m} p={p} j={j} (0,1)-matrices"), &zero_one_count(p, j, m), &Integer::from(ones)))
                            {
                                return Ok(Some(c));
                            }
                        }
                    }
                }
            }
            Ok(None)
        }),
        check(s, "bipartite series power law", format!("x^{n}, p <= 4, j <= 4"), move || {
            let w = WeightSpec::symbolic();
            for j in 0..=4 {
                let single = bipartite_gf(&w, 1, j, n)?;
                for p in 0..=4 {
                    if bipartite_gf(&w, p, j, n)? != single.pow(p as i64)? {
                        return Ok(Some(format!("p={p} j={j}")));
                    }
                }
            }
            Ok(None)
        }),
        check(s, "general matrix compositions match the series power", format!("m <= {}, p <= 2, j <= 3", n.min(5)), move || {
            let w = WeightSpec::symbolic();
            let cap = n.min(5);
            for p in 0..=2 {
                for j in 0..=3 {
                    let gf = matrix_gf(&w, p, j, cap, p * j)?;
                    for m in 0..=cap {
                        for k in 0..=p * j {
                            let brute = matrix_weighted_bruteforce(m, k, p, j, &w)?;
                            if let Some(c) = differ(|| format!("m={m} k={k} p={p} j={j}"), gf.coeff(m, k)?, &brute) {
                                return Ok(Some(c));
                            }
                        }
                    }
                }
            }
            Ok(None)
        }),
        check(s, "bounded-outdegree plane trees times vertices equal U", format!("m <= {}, 1 <= j <= 4", n.min(9)), move || {
            for m in 0..=n.min(9) {
                for j in 1..=4 {
                    let trees = bounded_outdegree_tree_count(m + 1, j)? * Integer::from(m + 1);
                    let u = u_coefficient(m + 1, j, m);
                    if let Some(c) = differ(|| format!("m={m} j={j} trees"), &trees, &u)
                        .or_else(|| differ(|| format!("m={m} j={j} formula"), &tree_count_formula(m, j), &u))
                    {
                        return Ok(Some(c));
                    }
                }
            }
            Ok(None)
        }),
        check(s, "U is stable once j reaches m", format!("p <= 4, m <= {n}"), move || {
            for p in 0..=4 {
                for m in 0..=n {
                    for j in m..=m + 3 {
                        if let Some(c) = differ(|| format!("p={p} m={m} j={j}"), &u_coefficient(p, j, m), &u_coefficient(p, m, m)) {
                            return Ok(Some(c));
                        }
                    }
                }
            }
            Ok(None)
        }),
    ]
}

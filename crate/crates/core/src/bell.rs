//! Partial Bell polynomials, potential polynomials and binomial sequences.
//!
//! Argument vectors follow the exponential convention used throughout the
//! crate: to feed the ordinary series `1 + w_1 x + w_2 x^2 + ...` into a
//! Bell polynomial, pass `(1! w_1, 2! w_2, ...)` ([`WeightVector::scaled`]).

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Family, Polynomial, Series, WeightSpec};
use crate::scalar::{fact, gen_binomial, rat_int, to_integer, Integer, Rational};

type EntryFn = dyn Fn(usize) -> Polynomial + Send + Sync;

/// Entries `x_1, x_2, ...` of a Bell polynomial argument, 1-based.
#[derive(Clone)]
pub struct WeightVector {
    f: Arc<EntryFn>,
}

impl WeightVector {
    pub fn new(f: impl Fn(usize) -> Polynomial + Send + Sync + 'static) -> Self {
        WeightVector { f: Arc::new(f) }
    }

    pub fn ones() -> Self {
        WeightVector::new(|_| Polynomial::one())
    }

    /// `x_i` is the variable `t_i` (or `s_i`) itself.
    pub fn symbolic(family: Family) -> Self {
        WeightVector::new(move |i| Polynomial::var(crate::polyring::Var { family, index: i as u32 }))
    }

    /// `(1! w_1, 2! w_2, ...)` for one family of a weight assignment.
    pub fn scaled(w: &WeightSpec, family: Family) -> Self {
        let w = w.clone();
        WeightVector::new(move |i| w.poly(family, i as u32).scale(&rat_int(fact(i as u64))))
    }

    /// Rational entries; indices past the end are zero.
    pub fn from_rationals(entries: Vec<Rational>) -> Self {
        WeightVector::new(move |i| entries.get(i - 1).cloned().map(Polynomial::constant).unwrap_or_default())
    }

    /// `(1, 2 x_1, 3 x_2, ...)`.
    pub fn shifted(&self) -> Self {
        let inner = self.clone();
        WeightVector::new(move |i| {
            if i == 1 {
                Polynomial::one()
            } else {
                inner.get(i - 1).scale(&rat_int(i as i64))
            }
        })
    }

    /// `(q x_1, q x_2, ...)`.
    pub fn times(&self, q: Polynomial) -> Self {
        let inner = self.clone();
        WeightVector::new(move |i| &inner.get(i) * &q)
    }

    pub fn get(&self, i: usize) -> Polynomial {
        assert!(i >= 1, "weight vectors are 1-based");
        (self.f)(i)
    }

    pub fn take(&self, n: usize) -> Vec<Polynomial> {
        (1..=n).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightVector").finish_non_exhaustive()
    }
}

/// All `B_{n,r}` for `n <= n_max`, built by the triangular recurrence
/// `B_{n,r} = sum_i C(n-1, i-1) x_i B_{n-i, r-1}`.
#[derive(Debug, Clone)]
pub struct BellTable {
    rows: Vec<Vec<Polynomial>>,
}

impl BellTable {
    pub fn new(n_max: usize, x: &WeightVector) -> Self {
        let xs = x.take(n_max);
        let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![Polynomial::one()]);
        for n in 1..=n_max {
            let mut row = vec![Polynomial::zero(); n + 1];
            for r in 1..=n {
                let mut acc = Polynomial::zero();
                for i in 1..=(n - r + 1) {
                    let prev = &rows[n - i];
                    if r > prev.len() || prev[r - 1].is_zero() || xs[i - 1].is_zero() {
                        continue;
                    }
                    let c = rat_int(gen_binomial(n as i64 - 1, i as i64 - 1));
                    acc += &(&xs[i - 1] * &prev[r - 1]).scale(&c);
                }
                row[r] = acc;
            }
            rows.push(row);
        }
        BellTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `B_{n,r}`; zero for `r > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, r: usize) -> Polynomial {
        self.rows[n].get(r).cloned().unwrap_or_default()
    }

    /// `P_n^{(lambda)}` from the Bell row of `n`.
    pub fn potential(&self, n: usize, lambda: i64) -> Polynomial {
        if n == 0 {
            return Polynomial::one();
        }
        let mut acc = Polynomial::zero();
        for k in 1..=n {
            let c = gen_binomial(lambda, k as i64) * fact(k as u64);
            if c.is_zero() {
                continue;
            }
            acc += &self.rows[n][k].scale(&rat_int(c));
        }
        acc
    }
}

pub fn partial_bell(n: usize, r: usize, x: &WeightVector) -> Polynomial {
    if r > n {
        return Polynomial::zero();
    }
    BellTable::new(n, x).get(n, r)
}

pub const ORACLE_BOUND: usize = 30;

/// Literal partition sum over all `r_1 + ... + r_n = r`,
/// `r_1 + 2 r_2 + ... + n r_n = n`.
pub fn partial_bell_oracle(n: usize, r: usize, x: &WeightVector) -> Result<Polynomial> {
    if n > ORACLE_BOUND {
        return Err(Error::BoundExceeded { what: format!("n = {n}"), bound: ORACLE_BOUND });
    }
    let xs = x.take(n);
    let mut total = Polynomial::zero();
    let mut mult = vec![0usize; n + 1];
    partitions(n, r, n, &mut mult, &mut |mult| {
        // n! / prod r_i! * prod (x_i / i!)^{r_i}
        let mut coeff = Rational::from_integer(fact(n as u64));
        let mut term = Polynomial::one();
        for (i, &ri) in mult.iter().enumerate().skip(1) {
            if ri == 0 {
                continue;
            }
            coeff /= Rational::from_integer(fact(ri as u64) * num_traits::pow(fact(i as u64), ri));
            term = &term * &xs[i - 1].pow(ri as u32);
        }
        total += &term.scale(&coeff);
    });
    Ok(total)
}

/// Visits every multiplicity vector of partitions of `n` into `r` parts
/// with part sizes at most `max_part`.
fn partitions(n: usize, r: usize, max_part: usize, mult: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if n == 0 && r == 0 {
        visit(mult);
        return;
    }
    if n == 0 || r == 0 || max_part == 0 {
        return;
    }
    // choose how many parts of size max_part
    let size = max_part;
    let mut c = 0;
    loop {
        if c * size > n || c > r {
            break;
        }
        mult[size] = c;
        partitions(n - c * size, r - c, size - 1, mult, visit);
        c += 1;
    }
    mult[size] = 0;
}

/// `P_n^{(lambda)}(a) = n! [x^n] (1 + sum_k a_k x^k / k!)^lambda`.
pub fn potential(n: usize, lambda: i64, a: &WeightVector) -> Polynomial {
    BellTable::new(n, a).potential(n, lambda)
}

/// `m! [x^m] f(x)^i` for a series with constant term 1.
pub fn power_coeff(f: &Series, m: usize, i: i64) -> Result<Polynomial> {
    if f.constant_term() != &Polynomial::one() {
        return Err(Error::Undefined("power_coeff needs constant term 1".into()));
    }
    let p = f.pow(i)?;
    Ok(p.coeff(m, 0)?.scale(&rat_int(fact(m as u64))))
}

/// Polynomial sequences of binomial type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BinomialSequence {
    /// `x^n`
    Power,
    /// `x (x+1) ... (x+n-1)`
    Factorial,
    /// `x (x - q n)^{n-1}`
    Abel(Rational),
    /// `sum_i S(n, i) x^i`
    Exponential,
    /// `n! [u^n] exp(x lambda(u))` for `lambda(u) = sum_{i>=1} c_i u^i`,
    /// given as `[c_1, c_2, ...]`.
    Exponent(Vec<Rational>),
}

impl BinomialSequence {
    pub fn named() -> Vec<BinomialSequence> {
        vec![
            BinomialSequence::Power,
            BinomialSequence::Factorial,
            BinomialSequence::Abel(rat_int(2)),
            BinomialSequence::Abel(Rational::new((-3).into(), 2.into())),
            BinomialSequence::Exponential,
        ]
    }

    pub fn value(&self, n: usize, x: &Rational) -> Rational {
        binseq_value(self, n, x)
    }
}

impl fmt::Display for BinomialSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinomialSequence::Power => f.write_str("power"),
            BinomialSequence::Factorial => f.write_str("factorial"),
            BinomialSequence::Abel(q) => write!(f, "abel(q={q})"),
            BinomialSequence::Exponential => f.write_str("exponential"),
            BinomialSequence::Exponent(c) => write!(f, "exponent{c:?}"),
        }
    }
}

pub fn binseq_value(seq: &BinomialSequence, n: usize, x: &Rational) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    match seq {
        BinomialSequence::Power => num_traits::pow(x.clone(), n),
        BinomialSequence::Factorial => (0..n).fold(Rational::one(), |acc, i| acc * (x + rat_int(i as i64))),
        BinomialSequence::Abel(q) => x * num_traits::pow(x - q * rat_int(n as i64), n - 1),
        BinomialSequence::Exponential => (0..=n)
            .map(|i| rat_int(stirling2(n, i)) * num_traits::pow(x.clone(), i))
            .fold(Rational::zero(), |a, b| a + b),
        BinomialSequence::Exponent(c) => {
            // e = exp(h), h = x lambda(u): k e_k = sum_{i=1}^k i h_i e_{k-i}
            let h = |i: usize| c.get(i - 1).map_or_else(Rational::zero, |ci| ci * x);
            let mut e = vec![Rational::one()];
            for k in 1..=n {
                let mut acc = Rational::zero();
                for i in 1..=k {
                    acc += rat_int(i as i64) * h(i) * &e[k - i];
                }
                e.push(acc / rat_int(k as i64));
            }
            &e[n] * rat_int(fact(n as u64))
        }
    }
}

/// Stirling numbers of the second kind, `B_{n,k}(1, 1, ...)`.
pub fn stirling2(n: usize, k: usize) -> Integer {
    let p = partial_bell(n, k, &WeightVector::ones());
    to_integer(&p.as_constant().unwrap_or_default()).expect("Stirling numbers are integers")
}

pub fn bell_number(n: usize) -> Integer {
    let table = BellTable::new(n, &WeightVector::ones());
    (0..=n)
        .map(|k| to_integer(&table.get(n, k).as_constant().unwrap_or_default()).unwrap())
        .sum()
}

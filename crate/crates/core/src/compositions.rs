//! Compositions with nonnegative parts, their embedding as Motzkin paths,
//! and closed forms for weighted sums over them.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::bell::{BellTable, WeightVector};
use crate::error::{Error, Result};
use crate::motzkin::{runs_of, MotzkinPath, SegmentProfile, SegmentType, Step};
use crate::polyring::{specialize, Family, Polynomial, WeightRule, WeightSpec};
use crate::scalar::{fact, gen_binomial, multinomial, rat_int, Integer, Rational};

pub const DEFAULT_BOUND: usize = 12;

/// An ordered tuple of nonnegative parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn m(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn j(&self) -> usize {
        self.parts.len()
    }

    /// Number of zero parts.
    pub fn k(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 0).count()
    }

    fn steps(&self) -> Vec<Step> {
        let mut steps = Vec::with_capacity(2 * self.m() + self.k());
        for &p in &self.parts {
            if p == 0 {
                steps.push(Step::H);
            } else {
                steps.extend(std::iter::repeat_n(Step::U, p));
                steps.extend(std::iter::repeat_n(Step::D, p));
            }
        }
        steps
    }

    pub fn profile(&self) -> SegmentProfile {
        runs_of(&self.steps())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Each nonzero part `p` becomes `u^p d^p`, each zero part a flat step.
pub fn composition_to_motzkin(c: &Composition) -> MotzkinPath {
    MotzkinPath::new(c.steps()).expect("embedded compositions are valid paths")
}

/// All `j`-tuples of nonnegative integers summing to `m`, in lexicographic
/// order.
#[derive(Debug, Clone)]
pub struct Compositions {
    parts: Vec<usize>,
    started: bool,
    done: bool,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Composition::new(self.parts.clone()));
        }
        let j = self.parts.len();
        let mut suffix = 0;
        for i in (0..j.saturating_sub(1)).rev() {
            suffix += self.parts[i + 1];
            if suffix > 0 {
                self.parts[i] += 1;
                for p in &mut self.parts[i + 1..] {
                    *p = 0;
                }
                self.parts[j - 1] = suffix - 1;
                return Some(Composition::new(self.parts.clone()));
            }
        }
        self.done = true;
        None
    }
}

pub fn enumerate_compositions(m: usize, j: usize) -> Result<Compositions> {
    enumerate_compositions_with_bound(m, j, DEFAULT_BOUND)
}

pub fn enumerate_compositions_with_bound(m: usize, j: usize, bound: usize) -> Result<Compositions> {
    if m > bound || j > bound {
        return Err(Error::BoundExceeded { what: format!("composition of {m} into {j} parts"), bound });
    }
    let mut parts = vec![0; j];
    let done = if j == 0 {
        m != 0
    } else {
        parts[j - 1] = m;
        false
    };
    Ok(Compositions { parts, started: false, done })
}

fn inv_fact(n: usize) -> Rational {
    Rational::new(1.into(), fact(n as u64))
}

/// Number of compositions of `m` into `j` parts of which `k` are zero.
pub fn composition_count(m: usize, k: usize, j: usize) -> Integer {
    if k > j {
        return Integer::zero();
    }
    let nonzero = (j - k) as i64;
    let placements = gen_binomial(j as i64, k as i64);
    if nonzero == 0 {
        return if m == 0 { placements } else { Integer::zero() };
    }
    if (m as i64) < nonzero {
        return Integer::zero();
    }
    placements * gen_binomial(m as i64 - 1, nonzero - 1)
}

/// Weighted sum over compositions of `m` into `j` parts with `k` zeros:
/// `P_k^{(j-k+1)}(1! s) / k!  *  (j-k)! B_{m,j-k}(1! t) / m!`.
pub fn comp_weighted_closed(m: usize, k: usize, j: usize, w: &WeightSpec) -> Polynomial {
    if j < k {
        return Polynomial::zero();
    }
    let r = j - k;
    let bt = BellTable::new(m, &WeightVector::scaled(w, Family::T)).get(m, r);
    if bt.is_zero() {
        return bt;
    }
    let ps = BellTable::new(k, &WeightVector::scaled(w, Family::S)).potential(k, r as i64 + 1);
    (&ps * &bt).scale(&(inv_fact(k) * rat_int(fact(r as u64)) * inv_fact(m)))
}

/// The part of [`comp_weighted_closed`] coming from compositions whose zero
/// parts form exactly `l` maximal runs.
pub fn comp_weighted_by_hsegments(m: usize, k: usize, j: usize, l: usize, w: &WeightSpec) -> Polynomial {
    if j < k || l > k {
        return Polynomial::zero();
    }
    let r = j - k;
    let c = gen_binomial(r as i64 + 1, l as i64);
    if c.is_zero() {
        return Polynomial::zero();
    }
    let bt = BellTable::new(m, &WeightVector::scaled(w, Family::T)).get(m, r);
    let bs = BellTable::new(k, &WeightVector::scaled(w, Family::S)).get(k, l);
    let scale = Rational::new(c * fact(r as u64) * fact(l as u64), fact(k as u64) * fact(m as u64));
    (&bt * &bs).scale(&scale)
}

fn type_parts(ty: &SegmentType) -> Result<(usize, usize, Integer)> {
    if ty.contains_key(&0) {
        return Err(Error::InvalidType("run lengths start at 1".into()));
    }
    let counts: Vec<i64> = ty.values().map(|&c| c as i64).collect();
    let runs: i64 = counts.iter().sum();
    let total = ty.iter().map(|(i, c)| i * c).sum();
    Ok((runs as usize, total, multinomial(runs, &counts)?))
}

/// Number of compositions into `j` parts whose nonzero parts have type
/// `u_type` and whose zero runs have type `h_type`.
pub fn comp_count_by_type(j: usize, u_type: &SegmentType, h_type: &SegmentType) -> Result<Integer> {
    let (r, _, mu) = type_parts(u_type)?;
    let (l, k, mh) = type_parts(h_type)?;
    if k > j || r != j - k {
        return Err(Error::InvalidType(format!(
            "{r} nonzero parts and {k} zero parts do not make {j} parts"
        )));
    }
    Ok(gen_binomial(r as i64 + 1, l as i64) * mu * mh)
}

/// Sum of weights over enumerated compositions, the reference for the
/// closed forms.
pub fn comp_weighted_bruteforce(m: usize, k: usize, j: usize, w: &WeightSpec) -> Result<Polynomial> {
    let mut acc = Polynomial::zero();
    for c in enumerate_compositions(m, j)? {
        if c.k() == k {
            acc += &c.profile().weight(w);
        }
    }
    Ok(acc)
}

/// Number of compositions of `m` into `j` positive parts, each in
/// `allowed` when given, and none equal to `forbidden` when given.
pub fn restricted_count(m: usize, j: usize, allowed: Option<&BTreeSet<usize>>, forbidden: Option<usize>) -> Result<Integer> {
    let allowed = allowed.cloned();
    let rule = WeightRule::numeric("restricted parts", move |i| {
        let i = i as usize;
        let ok = allowed.as_ref().is_none_or(|a| a.contains(&i)) && forbidden != Some(i);
        rat_int(ok as i64)
    });
    let w = WeightSpec::new(rule, WeightRule::constant(rat_int(1)));
    let value = specialize(&comp_weighted_closed(m, 0, j, &w), &w)?;
    if !value.is_integer() || value.is_negative() {
        return Err(Error::NotIntegral(value.to_string()));
    }
    Ok(value.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lagrange::compositions_gf;
    use crate::motzkin::segment_types;
    use std::collections::BTreeMap;

    fn t(i: u32) -> Polynomial {
        Polynomial::t(i)
    }
    fn s(i: u32) -> Polynomial {
        Polynomial::s(i)
    }

    fn tuples(m: usize, j: usize) -> Vec<Vec<usize>> {
        enumerate_compositions(m, j).unwrap().map(|c| c.parts().to_vec()).collect()
    }

    #[test]
    fn enumeration_examples() {
        let c = tuples(2, 3);
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], vec![0, 0, 2]);
        assert_eq!(c[5], vec![2, 0, 0]);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(tuples(0, 4), vec![vec![0; 4]]);
        assert_eq!(tuples(0, 0), vec![Vec::<usize>::new()]);
        assert!(tuples(3, 0).is_empty());
        assert!(enumerate_compositions(13, 2).is_err());
        for m in 0..=6 {
            for j in 1..=5 {
                assert_eq!(tuples(m, j).len() as i64, gen_binomial((m + j - 1) as i64, j as i64 - 1).try_into().unwrap());
            }
        }
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(composition_to_motzkin(&Composition::new(vec![1, 1, 0])).to_string(), "ududh");
        let p = Composition::new(vec![0, 0]).profile();
        assert_eq!(p.h_counts, BTreeMap::from([(2, 1)]));
        let c = Composition::new(vec![2, 0, 1]);
        assert_eq!(composition_to_motzkin(&c).to_string(), "uuddhud");
        let p = c.profile();
        assert_eq!(p.u_counts, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(p.h_counts, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn embedding_keeps_nonzero_parts() {
        for m in 0..=5 {
            for j in 0..=5 {
                for c in enumerate_compositions(m, j).unwrap() {
                    let p = c.profile();
                    let mut parts = BTreeMap::new();
                    for &x in c.parts().iter().filter(|&&x| x > 0) {
                        *parts.entry(x).or_insert(0) += 1;
                    }
                    assert_eq!(p.u_counts, parts);
                    assert_eq!(p.u_segments(), c.j() - c.k());
                    let path = composition_to_motzkin(&c);
                    assert_eq!((path.up_steps(), path.flat_steps()), (m, c.k()));
                }
            }
        }
    }

    #[test]
    fn closed_examples() {
        let w = WeightSpec::symbolic();
        assert_eq!(comp_weighted_closed(2, 1, 3, &w), (&t(1) * &t(1) * s(1)).scale(&rat_int(3)));
        for j in 1..=4 {
            assert_eq!(comp_weighted_closed(0, j, j, &w), s(j as u32));
        }
        assert_eq!(comp_weighted_closed(0, 0, 0, &w), Polynomial::one());
        assert!(comp_weighted_closed(2, 3, 2, &w).is_zero());
        assert!(comp_weighted_closed(3, 2, 2, &w).is_zero());
        let ones = WeightSpec::new(WeightRule::constant(rat_int(1)), WeightRule::constant(rat_int(1)));
        assert_eq!(specialize(&comp_weighted_closed(5, 0, 3, &ones), &ones).unwrap(), rat_int(6));
    }

    #[test]
    fn hsegment_refinement() {
        let w = WeightSpec::symbolic();
        assert_eq!(comp_weighted_by_hsegments(2, 1, 3, 1, &w), comp_weighted_closed(2, 1, 3, &w));
        for m in 0..=6 {
            for j in 0..=6 {
                for k in 0..=j {
                    let total: Polynomial = (0..=k).map(|l| comp_weighted_by_hsegments(m, k, j, l, &w)).sum();
                    assert_eq!(total, comp_weighted_closed(m, k, j, &w), "m={m} k={k} j={j}");
                    assert!(comp_weighted_by_hsegments(m, k, j, j - k + 2, &w).is_zero());
                }
            }
        }
    }

    #[test]
    fn closed_matches_bruteforce_and_series() {
        let w = WeightSpec::symbolic();
        let gf = compositions_gf(&w, 6, 6, 6).unwrap();
        for m in 0..=6 {
            for j in 0..=6 {
                for k in 0..=j {
                    let closed = comp_weighted_closed(m, k, j, &w);
                    assert_eq!(closed, comp_weighted_bruteforce(m, k, j, &w).unwrap(), "m={m} k={k} j={j}");
                    assert_eq!(&closed, gf.coeff3(m, k, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn type_counts() {
        let u = |pairs: &[(usize, usize)]| pairs.iter().copied().collect::<SegmentType>();
        assert_eq!(comp_count_by_type(3, &u(&[(1, 2)]), &u(&[(1, 1)])).unwrap(), 3.into());
        assert_eq!(comp_count_by_type(2, &u(&[(1, 1), (2, 1)]), &u(&[])).unwrap(), 2.into());
        assert_eq!(comp_count_by_type(4, &u(&[]), &u(&[(4, 1)])).unwrap(), 1.into());
        assert!(comp_count_by_type(3, &u(&[(1, 1)]), &u(&[(1, 1)])).is_err());
        for m in 0..=6 {
            for j in 0..=6 {
                for k in 0..=j {
                    let mut total = Integer::zero();
                    for ut in segment_types(m) {
                        for ht in segment_types(k) {
                            if let Ok(c) = comp_count_by_type(j, &ut, &ht) {
                                total += c;
                            }
                        }
                    }
                    assert_eq!(total, composition_count(m, k, j), "m={m} k={k} j={j}");
                }
            }
        }
    }

    #[test]
    fn restricted_examples() {
        let a: BTreeSet<usize> = [1, 2].into();
        assert_eq!(restricted_count(4, 3, Some(&a), None).unwrap(), 3.into());
        assert_eq!(restricted_count(5, 2, None, None).unwrap(), 4.into());
        assert_eq!(restricted_count(3, 2, None, Some(1)).unwrap(), 0.into());
        for m in 0..=10 {
            for j in 0..=10 {
                let direct = enumerate_compositions(m, j)
                    .unwrap()
                    .filter(|c| c.parts().iter().all(|p| a.contains(p)))
                    .count();
                assert_eq!(restricted_count(m, j, Some(&a), None).unwrap(), direct.into());
            }
        }
    }
}

//! Closed forms for weighted Motzkin path sums in terms of potential and
//! partial Bell polynomials.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::bell::{BellTable, WeightVector};
use crate::error::{Error, Result};
use crate::polyring::{Family, Polynomial, WeightSpec};
use crate::scalar::{fact, gen_binomial, multinomial, rat_int, sign, Integer, Rational};

fn inv_fact(n: usize) -> Rational {
    Rational::new(1.into(), fact(n as u64))
}

/// Weighted sum over paths with `m` up steps and `k` flat steps:
///
/// `sum_{j=0}^{k} sum_{l=j}^{k} (-1)^{l-j} C(l-1, l-j) C(m+j, j)
///   P_m^{(m+j+1)}(1! t) / (m+1)!  *  l! B_{k,l}(1! s) / k!`
pub fn weighted_sum_closed(m: usize, k: usize, w: &WeightSpec) -> Polynomial {
    let tb = BellTable::new(m, &WeightVector::scaled(w, Family::T));
    let sb = BellTable::new(k, &WeightVector::scaled(w, Family::S));
    let s_terms: Vec<Polynomial> = (0..=k)
        .map(|l| sb.get(k, l).scale(&(rat_int(fact(l as u64)) * inv_fact(k))))
        .collect();
    let mut total = Polynomial::zero();
    for j in 0..=k {
        let mut s_part = Polynomial::zero();
        for (l, s_term) in s_terms.iter().enumerate().skip(j) {
            let c = sign((l - j) as i64) * gen_binomial(l as i64 - 1, (l - j) as i64);
            if !c.is_zero() && !s_term.is_zero() {
                s_part += &s_term.scale(&Rational::from_integer(c));
            }
        }
        if s_part.is_zero() {
            continue;
        }
        let c = rat_int(gen_binomial((m + j) as i64, j as i64)) * inv_fact(m + 1);
        let t_part = tb.potential(m, (m + j + 1) as i64).scale(&c);
        total += &(&t_part * &s_part);
    }
    total
}

/// `V_{m,k}^{r,l} = sum_{j=0}^{k} (-1)^{l-j} C(l-1, l-j) C(m+j, m) C(m+j+1, r)`.
pub fn v_coefficient(m: usize, k: usize, r: usize, l: usize) -> Integer {
    let (m, k, r, l) = (m as i64, k as i64, r as i64, l as i64);
    (0..=k)
        .map(|j| {
            sign(l - j) * gen_binomial(l - 1, l - j) * gen_binomial(m + j, m) * gen_binomial(m + j + 1, r)
        })
        .sum()
}

/// Weighted sum over paths with `r` u-segments and `l` h-segments:
/// `r! l! V B_{m,r}(1! t) B_{k,l}(1! s) / (k! (m+1)!)`.
pub fn weighted_sum_by_segments(m: usize, k: usize, r: usize, l: usize, w: &WeightSpec) -> Polynomial {
    let v = v_coefficient(m, k, r, l);
    if v.is_zero() || r > m || l > k {
        return Polynomial::zero();
    }
    let bt = BellTable::new(m, &WeightVector::scaled(w, Family::T)).get(m, r);
    let bs = BellTable::new(k, &WeightVector::scaled(w, Family::S)).get(k, l);
    let c = Rational::new(fact(r as u64) * fact(l as u64) * v, fact(k as u64) * fact(m as u64 + 1));
    (&bt * &bs).scale(&c)
}

/// A segment type `1^{c_1} 2^{c_2} ...` as a map from run length to count.
pub type SegmentType = BTreeMap<usize, usize>;

fn type_total(ty: &SegmentType) -> usize {
    ty.iter().map(|(i, c)| i * c).sum()
}

fn type_multinomial(ty: &SegmentType) -> Result<(usize, Integer)> {
    let parts: Vec<i64> = ty.values().map(|&c| c as i64).collect();
    let r: i64 = parts.iter().sum();
    Ok((r as usize, multinomial(r, &parts)?))
}

/// Number of paths with `m` up and `k` flat steps whose u-segments and
/// h-segments have the given types.
pub fn count_by_type(m: usize, k: usize, u_type: &SegmentType, h_type: &SegmentType) -> Result<Integer> {
    if u_type.contains_key(&0) || h_type.contains_key(&0) {
        return Err(Error::InvalidType("run lengths start at 1".into()));
    }
    if type_total(u_type) != m || type_total(h_type) != k {
        return Err(Error::InvalidType(format!(
            "types cover {} up and {} flat steps, expected {m} and {k}",
            type_total(u_type),
            type_total(h_type)
        )));
    }
    let (r, mu) = type_multinomial(u_type)?;
    let (l, mh) = type_multinomial(h_type)?;
    let value = Rational::new(mu * mh * v_coefficient(m, k, r, l), Integer::from(m + 1));
    if !value.is_integer() || value.is_negative() {
        return Err(Error::NotIntegral(value.to_string()));
    }
    Ok(value.to_integer())
}

/// Every partition of `n` as a segment type.
pub fn segment_types(n: usize) -> Vec<SegmentType> {
    fn go(n: usize, max: usize, cur: &mut SegmentType, out: &mut Vec<SegmentType>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            *cur.entry(part).or_insert(0) += 1;
            go(n - part, part, cur, out);
            let e = cur.get_mut(&part).unwrap();
            *e -= 1;
            if *e == 0 {
                cur.remove(&part);
            }
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut SegmentType::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motzkin::path::{enumerate_paths, weighted_sum_bruteforce};

    fn t(i: u32) -> Polynomial {
        Polynomial::t(i)
    }
    fn s(i: u32) -> Polynomial {
        Polynomial::s(i)
    }

    #[test]
    fn closed_examples() {
        let w = WeightSpec::symbolic();
        assert_eq!(weighted_sum_closed(1, 1, &w), (&t(1) * &s(1)).scale(&rat_int(3)));
        assert_eq!(weighted_sum_closed(2, 0, &w), &t(1).pow(2) + &t(2));
        for k in 0..=5 {
            let expect = if k == 0 { Polynomial::one() } else { s(k as u32) };
            assert_eq!(weighted_sum_closed(0, k, &w), expect);
        }
    }

    #[test]
    fn closed_matches_bruteforce() {
        let w = WeightSpec::symbolic();
        for m in 0..=4 {
            for k in 0..=(10 - 2 * m).min(6) {
                assert_eq!(weighted_sum_closed(m, k, &w), weighted_sum_bruteforce(m, k, &w).unwrap(), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn v_examples() {
        assert_eq!(v_coefficient(1, 1, 1, 1), Integer::from(6));
        for m in 0..6 {
            for r in 0..6 {
                assert_eq!(v_coefficient(m, 0, r, 0), gen_binomial(m as i64 + 1, r as i64));
            }
        }
        assert_eq!(v_coefficient(2, 1, 1, 1), Integer::from(12));
    }

    #[test]
    fn by_segments_examples() {
        let w = WeightSpec::symbolic();
        assert_eq!(weighted_sum_by_segments(1, 1, 1, 1, &w), (&t(1) * &s(1)).scale(&rat_int(3)));
        for m in 1..4 {
            for l in 0..3 {
                assert!(weighted_sum_by_segments(m, 2, 0, l, &w).is_zero());
            }
        }
        for m in 0..=3 {
            for k in 0..=(6 - 2 * m) {
                let total: Polynomial = (0..=m)
                    .flat_map(|r| (0..=k).map(move |l| (r, l)))
                    .map(|(r, l)| weighted_sum_by_segments(m, k, r, l, &w))
                    .sum();
                assert_eq!(total, weighted_sum_closed(m, k, &w));
            }
        }
    }

    #[test]
    fn count_by_type_examples() {
        let one = |pairs: &[(usize, usize)]| pairs.iter().copied().collect::<SegmentType>();
        assert_eq!(count_by_type(1, 1, &one(&[(1, 1)]), &one(&[(1, 1)])).unwrap(), Integer::from(3));
        assert_eq!(count_by_type(2, 0, &one(&[(2, 1)]), &one(&[])).unwrap(), Integer::from(1));
        assert_eq!(count_by_type(2, 0, &one(&[(1, 2)]), &one(&[])).unwrap(), Integer::from(1));
        assert!(matches!(count_by_type(2, 0, &one(&[(1, 1)]), &one(&[])), Err(Error::InvalidType(_))));
    }

    #[test]
    fn type_counts_sum_to_path_count() {
        for m in 0..=3 {
            for k in 0..=(8 - 2 * m) {
                let total: Integer = segment_types(m)
                    .iter()
                    .flat_map(|u| segment_types(k).into_iter().map(move |h| (u.clone(), h)))
                    .map(|(u, h)| count_by_type(m, k, &u, &h).unwrap())
                    .sum();
                assert_eq!(total, Integer::from(enumerate_paths(m, k).unwrap().count()));
            }
        }
    }

    #[test]
    fn segment_types_are_partitions() {
        assert_eq!(segment_types(0).len(), 1);
        assert_eq!(segment_types(5).len(), 7);
        assert_eq!(segment_types(8).len(), 22);
    }
}

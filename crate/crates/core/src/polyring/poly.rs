//! Multivariate polynomials over the rationals in the weight variables
//! `t1, t2, ...` and `s1, s2, ...`.
//!
//! Text format: terms joined by `" + "`, each term is `c` or
//! `c*v1^e1*v2^e2` (exponent omitted when it is 1), coefficients `p` or
//! `p/q`. The zero polynomial prints as `0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    T,
    S,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::T => 't',
            Family::S => 's',
        }
    }
}

/// A weight variable `t_i` or `s_i`, `i >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub family: Family,
    pub index: u32,
}

impl Var {
    pub fn t(index: u32) -> Self {
        Var { family: Family::T, index }
    }

    pub fn s(index: u32) -> Self {
        Var { family: Family::S, index }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

/// Sorted `(variable, exponent)` pairs with nonzero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map_or(0, |&(_, e)| e)
    }

    /// `sum i * deg(family_i)`.
    pub fn weighted_degree(&self, family: Family) -> u64 {
        self.0
            .iter()
            .filter(|(v, _)| v.family == family)
            .map(|(v, e)| v.index as u64 * *e as u64)
            .sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (v, e)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Polynomial::term(Rational::one(), Monomial::var(v))
    }

    pub fn t(i: u32) -> Self {
        Polynomial::var(Var::t(i))
    }

    pub fn s(i: u32) -> Self {
        Polynomial::var(Var::s(i))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates every variable through `value`, which returns `None` for an
    /// unassigned variable.
    pub fn evaluate(&self, mut value: impl FnMut(Var) -> Option<Rational>) -> Result<Rational> {
        let mut cache: BTreeMap<Var, Rational> = BTreeMap::new();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.factors() {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v).ok_or_else(|| Error::Unassigned(v.to_string()))?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                term *= num_traits::pow(x, e as usize);
            }
            total += term;
        }
        Ok(total)
    }

    /// Replaces each variable by a polynomial.
    pub fn substitute(&self, mut value: impl FnMut(Var) -> Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for &(v, e) in m.factors() {
                term = &term * &value(v).pow(e);
            }
            out += &term;
        }
        out
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        let mut acc = Polynomial::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            if !m.is_one() {
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

fn parse_var(s: &str) -> Result<Var> {
    let bad = || Error::Parse(format!("bad variable `{s}`"));
    let mut chars = s.chars();
    let family = match chars.next() {
        Some('t') => Family::T,
        Some('s') => Family::S,
        _ => return Err(bad()),
    };
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return Err(bad());
    }
    let index = digits.parse().map_err(|_| bad())?;
    Ok(Var { family, index })
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        if s == "0" {
            return Ok(out);
        }
        for term in s.split(" + ") {
            let mut pieces = term.split('*');
            let coeff = pieces.next().unwrap_or_default();
            let c: Rational = coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{coeff}`")))?;
            let mut pairs = Vec::new();
            for factor in pieces {
                let (name, exp) = match factor.split_once('^') {
                    Some((name, exp)) => {
                        let e: u32 = exp
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent `{exp}`")))?;
                        (name, e)
                    }
                    None => (factor, 1),
                };
                pairs.push((parse_var(name)?, exp));
            }
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use proptest::prelude::*;

    fn t1() -> Polynomial {
        Polynomial::t(1)
    }
    fn s1() -> Polynomial {
        Polynomial::s(1)
    }

    #[test]
    fn arith_examples() {
        assert_eq!(&t1() + &t1(), t1().scale(&rat_int(2)));
        assert_eq!((&t1() + &s1()) * (&t1() - &s1()), t1().pow(2) - s1().pow(2));
        let p = Polynomial::term(rat_int(3), Monomial::from_pairs([(Var::t(1), 1), (Var::s(1), 1)]));
        assert!((&p * &Polynomial::zero()).is_zero());
    }

    #[test]
    fn display_examples() {
        assert_eq!(t1().pow(3).to_string(), "1*t1^3");
        let p = (&t1() * &Polynomial::t(2)).scale(&rat_int(3));
        assert_eq!(p.to_string(), "3*t1*t2");
        let q = &(&t1() * &s1()).scale(&rat_int(3)) + &Polynomial::constant(rat(-1, 2));
        assert_eq!(q.to_string(), "-1/2 + 3*t1*s1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("3*x1".parse::<Polynomial>().is_err());
        assert!("3*t0".parse::<Polynomial>().is_err());
        assert!("a".parse::<Polynomial>().is_err());
        assert!("1*t1^".parse::<Polynomial>().is_err());
    }

    #[test]
    fn evaluate_examples() {
        let p = Polynomial::term(rat_int(3), Monomial::from_pairs([(Var::t(1), 1), (Var::s(1), 1)]));
        assert_eq!(p.evaluate(|_| Some(rat_int(1))).unwrap(), rat_int(3));
        let q = &t1().pow(2) + &Polynomial::t(2);
        let fact_inv = |v: Var| Some(rat(1, (1..=v.index as i64).product()));
        assert_eq!(q.evaluate(fact_inv).unwrap(), rat(3, 2));
        assert_eq!(Polynomial::s(3).evaluate(fact_inv).unwrap(), rat(1, 6));
        assert!(matches!(
            q.evaluate(|v| (v.index == 1).then(|| rat_int(1))),
            Err(Error::Unassigned(_))
        ));
    }

    pub(crate) fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let var = (0..2u8, 1..=3u32).prop_map(|(f, i)| if f == 0 { Var::t(i) } else { Var::s(i) });
        let mono = prop::collection::vec((var, 1..=4u32), 0..3).prop_map(Monomial::from_pairs);
        let coeff = (-6..=6i64, 1..=4i64).prop_map(|(n, d)| rat(n, d));
        prop::collection::vec((mono, coeff), 0..5).prop_map(|terms| {
            let mut p = Polynomial::zero();
            for (m, c) in terms {
                p.add_term(m, c);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            let text = a.to_string();
            let back: Polynomial = text.parse().unwrap();
            prop_assert_eq!(back.to_string(), text);
            prop_assert_eq!(back, a);
        }

        #[test]
        fn evaluation_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), vals in prop::collection::vec((-5..=5i64, 1..=3i64), 6)) {
            let value = |v: Var| {
                let k = (v.index as usize - 1) + if v.family == Family::S { 3 } else { 0 };
                Some(rat(vals[k].0, vals[k].1))
            };
            let prod = (&a * &b).evaluate(value).unwrap();
            prop_assert_eq!(prod, a.evaluate(value).unwrap() * b.evaluate(value).unwrap());
        }
    }
}

//! Truncated formal power series in up to three grading variables
//! `x`, `y`, `q` with polynomial coefficients.
//!
//! A series with orders `[nx, ny, nq]` stores every coefficient of
//! `x^i y^j q^l` with `i <= nx`, `j <= ny`, `l <= nq`. Products are
//! truncated to the smaller orders. Reads outside the orders are errors.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Rational;

pub type Orders = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    orders: Orders,
    coeffs: Vec<Polynomial>,
}

fn min_orders(a: Orders, b: Orders) -> Orders {
    [a[0].min(b[0]), a[1].min(b[1]), a[2].min(b[2])]
}

impl Series {
    pub fn zero(orders: Orders) -> Self {
        let len = (orders[0] + 1) * (orders[1] + 1) * (orders[2] + 1);
        Series { orders, coeffs: vec![Polynomial::zero(); len] }
    }

    pub fn constant(orders: Orders, c: Polynomial) -> Self {
        let mut s = Series::zero(orders);
        s.coeffs[0] = c;
        s
    }

    pub fn one(orders: Orders) -> Self {
        Series::constant(orders, Polynomial::one())
    }

    pub fn from_fn(orders: Orders, mut f: impl FnMut(usize, usize, usize) -> Polynomial) -> Self {
        let mut s = Series::zero(orders);
        for i in 0..=orders[0] {
            for j in 0..=orders[1] {
                for l in 0..=orders[2] {
                    let idx = s.index(i, j, l);
                    s.coeffs[idx] = f(i, j, l);
                }
            }
        }
        s
    }

    /// Univariate series in `x` truncated at `x^n`.
    pub fn univariate(n: usize, mut f: impl FnMut(usize) -> Polynomial) -> Self {
        Series::from_fn([n, 0, 0], |i, _, _| f(i))
    }

    /// Univariate series in `x` with rational coefficients `c[0], c[1], ...`.
    pub fn from_rationals(n: usize, c: &[Rational]) -> Self {
        Series::univariate(n, |i| c.get(i).cloned().map(Polynomial::constant).unwrap_or_default())
    }

    /// The monomial `x^a y^b q^c`, zero if it falls outside the orders.
    pub fn monomial(orders: Orders, a: usize, b: usize, c: usize) -> Self {
        let mut s = Series::zero(orders);
        if a <= orders[0] && b <= orders[1] && c <= orders[2] {
            let idx = s.index(a, b, c);
            s.coeffs[idx] = Polynomial::one();
        }
        s
    }

    pub fn orders(&self) -> Orders {
        self.orders
    }

    fn index(&self, i: usize, j: usize, l: usize) -> usize {
        (i * (self.orders[1] + 1) + j) * (self.orders[2] + 1) + l
    }

    fn unindex(&self, idx: usize) -> (usize, usize, usize) {
        let l = idx % (self.orders[2] + 1);
        let rest = idx / (self.orders[2] + 1);
        (rest / (self.orders[1] + 1), rest % (self.orders[1] + 1), l)
    }

    fn check(&self, i: usize, j: usize, l: usize) -> Result<()> {
        if i > self.orders[0] || j > self.orders[1] || l > self.orders[2] {
            return Err(Error::OutOfTruncation { i, j, l, orders: self.orders });
        }
        Ok(())
    }

    /// `[x^i y^j]` (with `q^0`).
    pub fn coeff(&self, i: usize, j: usize) -> Result<&Polynomial> {
        self.coeff3(i, j, 0)
    }

    pub fn coeff3(&self, i: usize, j: usize, l: usize) -> Result<&Polynomial> {
        self.check(i, j, l)?;
        Ok(&self.coeffs[self.index(i, j, l)])
    }

    pub fn set(&mut self, i: usize, j: usize, l: usize, p: Polynomial) -> Result<()> {
        self.check(i, j, l)?;
        let idx = self.index(i, j, l);
        self.coeffs[idx] = p;
        Ok(())
    }

    pub fn constant_term(&self) -> &Polynomial {
        &self.coeffs[0]
    }

    /// Restricts to smaller orders.
    pub fn truncate(&self, orders: Orders) -> Result<Series> {
        self.check(orders[0], orders[1], orders[2])?;
        Ok(Series::from_fn(orders, |i, j, l| self.coeffs[self.index(i, j, l)].clone()))
    }

    pub fn map(&self, f: impl FnMut(&Polynomial) -> Polynomial) -> Series {
        Series { orders: self.orders, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &Polynomial) -> Series {
        self.map(|p| p * c)
    }

    fn zip(&self, other: &Series, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Series {
        let orders = min_orders(self.orders, other.orders);
        Series::from_fn(orders, |i, j, l| {
            f(&self.coeffs[self.index(i, j, l)], &other.coeffs[other.index(i, j, l)])
        })
    }

    pub fn add(&self, other: &Series) -> Series {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Series) -> Series {
        let orders = min_orders(self.orders, other.orders);
        let mut out = Series::zero(orders);
        let lhs: Vec<_> = self.nonzero_cells(orders).collect();
        let rhs: Vec<_> = other.nonzero_cells(orders).collect();
        for &((i1, j1, l1), a) in &lhs {
            for &((i2, j2, l2), b) in &rhs {
                let (i, j, l) = (i1 + i2, j1 + j2, l1 + l2);
                if i > orders[0] || j > orders[1] || l > orders[2] {
                    continue;
                }
                let idx = out.index(i, j, l);
                out.coeffs[idx] += &(a * b);
            }
        }
        out
    }

    fn nonzero_cells(&self, within: Orders) -> impl Iterator<Item = ((usize, usize, usize), &Polynomial)> {
        self.coeffs.iter().enumerate().filter_map(move |(idx, p)| {
            let (i, j, l) = self.unindex(idx);
            (!p.is_zero() && i <= within[0] && j <= within[1] && l <= within[2]).then_some(((i, j, l), p))
        })
    }

    /// The constant term as a nonzero rational, required for inversion.
    fn unit_constant(&self) -> Result<Rational> {
        match self.coeffs[0].as_constant() {
            Some(c) if !c.is_zero() => Ok(c),
            Some(_) => Err(Error::NotInvertible("constant term is zero".into())),
            None => Err(Error::NotInvertible(format!(
                "constant term `{}` is not a scalar",
                self.coeffs[0]
            ))),
        }
    }

    pub fn reciprocal(&self) -> Result<Series> {
        let c0 = self.unit_constant()?;
        let inv0 = c0.recip();
        let mut g = Series::zero(self.orders);
        g.coeffs[0] = Polynomial::constant(inv0.clone());
        let cells: Vec<_> = self.nonzero_cells(self.orders).filter(|&(c, _)| c != (0, 0, 0)).collect();
        // Storage order is lexicographic in (i, j, l), so g at c - c' is ready.
        for idx in 1..g.coeffs.len() {
            let (i, j, l) = g.unindex(idx);
            let mut acc = Polynomial::zero();
            for &((a, b, c), f) in &cells {
                if a <= i && b <= j && c <= l {
                    let prev = &g.coeffs[g.index(i - a, j - b, l - c)];
                    if !prev.is_zero() {
                        acc += &(f * prev);
                    }
                }
            }
            g.coeffs[idx] = acc.scale(&-inv0.clone());
        }
        Ok(g)
    }

    /// `self^e`; negative exponents need an invertible scalar constant term.
    pub fn pow(&self, e: i64) -> Result<Series> {
        let base = if e < 0 { self.reciprocal()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Series::one(self.orders);
        let mut base = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Formal derivative in `x`; the result loses one order of `x`.
    pub fn derivative_x(&self) -> Series {
        let o = self.orders;
        let orders = [o[0].saturating_sub(1), o[1], o[2]];
        Series::from_fn(orders, |i, j, l| {
            if i + 1 > o[0] {
                Polynomial::zero()
            } else {
                self.coeffs[self.index(i + 1, j, l)].scale(&Rational::from_integer((i as i64 + 1).into()))
            }
        })
    }

    /// Divides by `x^s`; the coefficients below `x^s` must vanish.
    pub fn shift_down_x(&self, s: usize) -> Result<Series> {
        let o = self.orders;
        if s > o[0] {
            return Err(Error::OutOfTruncation { i: s, j: 0, l: 0, orders: o });
        }
        for (idx, p) in self.coeffs.iter().enumerate() {
            if self.unindex(idx).0 < s && !p.is_zero() {
                return Err(Error::Undefined(format!("series is not divisible by x^{s}")));
            }
        }
        Ok(Series::from_fn([o[0] - s, o[1], o[2]], |i, j, l| {
            self.coeffs[self.index(i + s, j, l)].clone()
        }))
    }

    /// Multiplies by `x^a y^b q^c`, discarding what falls outside the orders.
    pub fn shift_up(&self, a: usize, b: usize, c: usize) -> Series {
        let o = self.orders;
        Series::from_fn(o, |i, j, l| {
            if i >= a && j >= b && l >= c {
                self.coeffs[self.index(i - a, j - b, l - c)].clone()
            } else {
                Polynomial::zero()
            }
        })
    }

    /// Substitutes `g` for `x` in the univariate series `self`.
    ///
    /// `g` must have zero constant term. The result carries `g`'s orders.
    pub fn compose(&self, g: &Series) -> Result<Series> {
        if self.orders[1] != 0 || self.orders[2] != 0 {
            return Err(Error::Undefined("outer series of a composition must be univariate".into()));
        }
        if !g.coeffs[0].is_zero() {
            return Err(Error::Undefined("inner series of a composition needs zero constant term".into()));
        }
        let go = g.orders;
        let x_divisible = g
            .coeffs
            .iter()
            .enumerate()
            .all(|(idx, p)| p.is_zero() || g.unindex(idx).0 >= 1);
        let needed = if x_divisible { go[0] } else { go[0] + go[1] + go[2] };
        if self.orders[0] < needed {
            return Err(Error::OutOfTruncation { i: needed, j: 0, l: 0, orders: self.orders });
        }
        let mut acc = Series::zero(go);
        for n in (0..=needed).rev() {
            acc = acc.mul(g);
            let c = &self.coeffs[n];
            if !c.is_zero() {
                acc.coeffs[0] += c;
            }
        }
        Ok(acc)
    }

    /// The `q^l` slice as a series in `x`, `y`.
    pub fn q_slice(&self, l: usize) -> Result<Series> {
        self.check(0, 0, l)?;
        Ok(Series::from_fn([self.orders[0], self.orders[1], 0], |i, j, _| {
            self.coeffs[self.index(i, j, l)].clone()
        }))
    }

    /// Reinterprets a univariate series in `x` as a series in `y` (or `q`).
    pub fn univariate_to_axis(&self, axis: usize, orders: Orders) -> Result<Series> {
        if orders[axis] > self.orders[0] {
            return Err(Error::OutOfTruncation { i: orders[axis], j: 0, l: 0, orders: self.orders });
        }
        Ok(Series::from_fn(orders, |i, j, l| {
            let idx = [i, j, l];
            if idx.iter().enumerate().all(|(a, &v)| a == axis || v == 0) {
                self.coeffs[idx[axis]].clone()
            } else {
                Polynomial::zero()
            }
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::add(self, rhs)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::sub(self, rhs)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.map(|p| -p)
    }
}

/// `1 + sum_{i>=1} w_i x^i` for a weight family, truncated at `x^n`.
pub fn weight_series(w: &super::WeightSpec, family: super::Family, n: usize) -> Series {
    Series::univariate(n, |i| if i == 0 { Polynomial::one() } else { w.poly(family, i as u32) })
}

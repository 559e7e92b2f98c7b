//! Series reversion, Lagrange coefficient extraction, and the generating
//! functions of weighted Motzkin paths, compositions and matrix
//! compositions.

use num_traits::Zero;

use crate::bell::{BellTable, WeightVector};
use crate::error::{Error, Result};
use crate::polyring::{weight_series, Family, Polynomial, Series, WeightSpec};
use crate::scalar::{fact, rat_int, Rational};

fn univariate_order(f: &Series) -> Result<usize> {
    let [n, ny, nq] = f.orders();
    if ny != 0 || nq != 0 {
        return Err(Error::Undefined("expected a univariate series".into()));
    }
    Ok(n)
}

/// `x / f(x)` truncated at `x^(n-1)`, checking `f_0 = 0` and that `f_1` is a
/// nonzero rational.
fn x_over_f(f: &Series, n: usize) -> Result<Series> {
    let order = univariate_order(f)?;
    if order < n {
        return Err(Error::OutOfTruncation { i: n, j: 0, l: 0, orders: f.orders() });
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NotInvertible("reversion needs f(0) = 0".into()));
    }
    match f.coeff(1, 0)?.as_constant() {
        Some(c) if !c.is_zero() => {}
        _ => return Err(Error::NotInvertible("linear coefficient must be a nonzero rational".into())),
    }
    f.shift_down_x(1)?.truncate([n - 1, 0, 0])?.reciprocal()
}

/// Compositional inverse `g` of `f`, with `f(g(x)) = x mod x^(n+1)`.
pub fn reversion(f: &Series, n: usize) -> Result<Series> {
    let mut g = Series::zero([n, 0, 0]);
    if n == 0 {
        univariate_order(f)?;
        return Ok(g);
    }
    let h = x_over_f(f, n)?;
    // [x^k] g = (1/k) [x^(k-1)] h^k
    let mut power = Series::one(h.orders());
    for k in 1..=n {
        power = power.mul(&h);
        let c = power.coeff(k - 1, 0)?.scale(&Rational::new(1.into(), (k as i64).into()));
        g.set(k, 0, 0, c)?;
    }
    Ok(g)
}

/// `[x^n] phi(g(x))` where `g` inverts `f`, for `n >= 1`.
pub fn lagrange_coeff(phi: &Series, f: &Series, n: usize) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::Undefined("Lagrange coefficient needs n >= 1".into()));
    }
    if univariate_order(phi)? < n {
        return Err(Error::OutOfTruncation { i: n, j: 0, l: 0, orders: phi.orders() });
    }
    let h = x_over_f(f, n)?;
    let d = phi.derivative_x().truncate([n - 1, 0, 0])?;
    let body = d.mul(&h.pow(n as i64)?);
    Ok(body.coeff(n - 1, 0)?.scale(&Rational::new(1.into(), (n as i64).into())))
}

fn embed(w: &WeightSpec, family: Family, axis: usize, orders: [usize; 3]) -> Result<Series> {
    weight_series(w, family, orders[axis]).univariate_to_axis(axis, orders)
}

/// Bivariate series `M(x, y)` of weighted Motzkin paths, `x` marking up
/// steps and `y` horizontal steps, as the fixed point of
/// `M = T(z) / (1 - (1 - 1/S(y)) T(z))`, `z = x M`.
pub fn motzkin_gf(w: &WeightSpec, nx: usize, ny: usize) -> Result<Series> {
    let orders = [nx, ny, 0];
    let t = weight_series(w, Family::T, nx);
    let s = embed(w, Family::S, 1, orders)?;
    let one = Series::one(orders);
    let a = &one - &s.reciprocal()?;
    let limit = nx + ny + 2;
    let mut m = one.clone();
    for _ in 0..limit {
        let tz = t.compose(&m.shift_up(1, 0, 0))?;
        let next = tz.mul(&(&one - &a.mul(&tz)).reciprocal()?);
        if next == m {
            return Ok(m);
        }
        m = next;
    }
    Err(Error::NonConvergence(limit))
}

/// Trivariate series `C(x, y, q)` of weighted compositions, `q` marking
/// the number of parts: `S(qy) / (1 + q S(qy) - q S(qy) T(x))`.
pub fn compositions_gf(w: &WeightSpec, nx: usize, ny: usize, nq: usize) -> Result<Series> {
    let orders = [nx, ny, nq];
    let sqy = Series::from_fn(orders, |i, j, l| {
        if i == 0 && j == l {
            if j == 0 {
                Polynomial::one()
            } else {
                w.poly(Family::S, j as u32)
            }
        } else {
            Polynomial::zero()
        }
    });
    let t = embed(w, Family::T, 0, orders)?;
    let one = Series::one(orders);
    let qs = sqy.shift_up(0, 0, 1);
    let denom = &one + &qs.mul(&(&one - &t));
    Ok(sqy.mul(&denom.reciprocal()?))
}

/// Series in `x, y` of weighted compositions with exactly `j` parts:
/// `sum_i y^(j-i) P_{j-i}^{(i+1)}(1! s_1, ...) / (j-i)! (T(x) - 1)^i`.
pub fn comp_gf_fixed_parts(w: &WeightSpec, j: usize, nx: usize, ny: usize) -> Result<Series> {
    let orders = [nx, ny, 0];
    let t_minus_one = &embed(w, Family::T, 0, orders)? - &Series::one(orders);
    let table = BellTable::new(j, &WeightVector::scaled(w, Family::S));
    let mut acc = Series::zero(orders);
    let mut power = Series::one(orders);
    for i in 0..=j {
        let k = j - i;
        if k <= ny {
            let c = table.potential(k, i as i64 + 1).scale(&Rational::new(1.into(), fact(k as u64)));
            acc = &acc + &power.shift_up(0, k, 0).scale(&c);
        }
        power = power.mul(&t_minus_one);
    }
    Ok(acc)
}

/// `(sum_{i=0}^{j} (T(x) - 1)^i)^p`, the series of weighted `p x j`
/// bipartite matrix compositions.
pub fn bipartite_gf(w: &WeightSpec, p: usize, j: usize, nx: usize) -> Result<Series> {
    let orders = [nx, 0, 0];
    let t_minus_one = &weight_series(w, Family::T, nx) - &Series::one(orders);
    let mut row = Series::zero(orders);
    let mut power = Series::one(orders);
    for _ in 0..=j {
        row = &row + &power;
        power = power.mul(&t_minus_one);
    }
    row.pow(p as i64)
}

/// `C_j(x, y)^p`, the series of weighted `p x j` matrix compositions.
pub fn matrix_gf(w: &WeightSpec, p: usize, j: usize, nx: usize, ny: usize) -> Result<Series> {
    comp_gf_fixed_parts(w, j, nx, ny)?.pow(p as i64)
}

/// `sum_k c_k x^k` from rational coefficients, for quick construction in
/// tests and the CLI.
pub fn rational_series(n: usize, c: &[i64]) -> Series {
    let v: Vec<Rational> = c.iter().map(|&x| rat_int(x)).collect();
    Series::from_rationals(n, &v)
}

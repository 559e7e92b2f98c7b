//! Closed forms of the weighted path sums under named specializations.
//! Each takes `(m, k)` and returns the exact value of
//! `sum_P prod t_i^{u_i(P)} prod s_i^{h_i(P)}` for the matching weights.

use num_traits::{One, Zero};

use crate::bell::{binseq_value, power_coeff, stirling2, BinomialSequence};
use crate::error::{Error, Result};
use crate::polyring::Series;
use crate::scalar::{fact, gen_binomial, rat_int, rat_pow, sign, Rational};

fn binom(a: usize, b: usize) -> Rational {
    rat_int(gen_binomial(a as i64, b as i64))
}

fn inv_fact(n: usize) -> Rational {
    Rational::new(1.into(), fact(n as u64))
}

fn constant(p: &crate::polyring::Polynomial) -> Result<Rational> {
    p.as_constant().ok_or_else(|| Error::Undefined("series must have rational coefficients".into()))
}

/// Weights `t_i = s_i = 1/i!`:
/// `sum_j (-1)^{k-j} C(m+j, j) j! (m+j+1)^m S(k, j) / (k! (m+1)!)`.
pub fn stirling_closed(m: usize, k: usize) -> Rational {
    (0..=k)
        .map(|j| {
            let c = rat_int(sign((k - j) as i64))
                * binom(m + j, j)
                * rat_int(fact(j as u64))
                * rat_int(num_traits::pow(crate::scalar::int((m + j + 1) as i64), m))
                * rat_int(stirling2(k, j));
            c * inv_fact(k) * inv_fact(m + 1)
        })
        .fold(Rational::zero(), |a, b| a + b)
}

/// Stirling weights restricted to `r` u-segments and `l` h-segments:
/// `r! l! V S(m, r) S(k, l) / (k! (m+1)!)`.
pub fn stirling_by_segments(m: usize, k: usize, r: usize, l: usize) -> Rational {
    let v = super::v_coefficient(m, k, r, l);
    rat_int(fact(r as u64) * fact(l as u64) * v * stirling2(m, r) * stirling2(k, l)) * inv_fact(k) * inv_fact(m + 1)
}

/// `[y^k] ((g(y) - 1)/g(y))^j` for `g = 1 + y g^d`, equal to
/// `(dj - j)/(dk - j) C(dk - j, k - j)` away from the degenerate cases.
fn d_ary_factor(d: usize, j: usize, k: usize) -> Rational {
    if k < j {
        return Rational::zero();
    }
    if k == j {
        return Rational::one();
    }
    let alpha = (d as i64 - 1) * j as i64;
    if alpha == 0 {
        return Rational::zero();
    }
    let n = (d * k) as i64 - j as i64;
    Rational::new(alpha.into(), n.into()) * rat_int(gen_binomial(n, (k - j) as i64))
}

/// Weights from complete `b`-ary (on `t`) and `d`-ary (on `s`) plane trees.
pub fn b_ary_closed(b: usize, d: usize, m: usize, k: usize) -> Rational {
    let sum = (0..=k)
        .map(|j| {
            let top = (b + 1) * m + j + 1;
            binom(m + j, j)
                * Rational::new(((m + j + 1) as i64).into(), (top as i64).into())
                * binom(top, m)
                * d_ary_factor(d, j, k)
        })
        .fold(Rational::zero(), |a, b| a + b);
    sum / rat_int((m + 1) as i64)
}

/// The `d = 1` case: `C(m+k+1, k) C((b+1)m+k+1, m) / ((b+1)m+k+1)`.
pub fn b_ary_closed_d1(b: usize, m: usize, k: usize) -> Rational {
    let top = (b + 1) * m + k + 1;
    binom(m + k + 1, k) * binom(top, m) / rat_int(top as i64)
}

/// Weights `t_i = f_i(i+1)/(i+1)!`, `s_i = 1`:
/// `C(m+k+1, k) f_m(2m+k+1) / ((2m+k+1) m!)`.
pub fn power_series_closed(f: &Series, m: usize, k: usize) -> Result<Rational> {
    let n = 2 * m + k + 1;
    let fm = constant(&power_coeff(f, m, n as i64)?)?;
    Ok(binom(m + k + 1, k) * fm / rat_int(n as i64) * inv_fact(m))
}

/// Weights `t_i = f_i(i+1)/(i+1)!`, `s_i = g_{i-1}(i)/i!`, for `k >= 1`:
///
/// `sum_j sum_{l>=j} (-1)^{l-j} C(l, j) g_{k-l}(k)/(k-l)!
///   j(m+j+1)/(k(2m+j+1)) C(m+j, j) f_m(2m+j+1)/(m+1)!`.
pub fn power_series_pair_closed(f: &Series, g: &Series, m: usize, k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Undefined("the two-series closed form needs k >= 1".into()));
    }
    let mut total = Rational::zero();
    for j in 0..=k {
        let fpart = binom(m + j, j) * constant(&power_coeff(f, m, (2 * m + j + 1) as i64)?)? * inv_fact(m + 1)
            * Rational::new(((j * (m + j + 1)) as i64).into(), ((k * (2 * m + j + 1)) as i64).into());
        if fpart.is_zero() {
            continue;
        }
        for l in j..=k {
            let g = constant(&power_coeff(g, k - l, k as i64)?)? * inv_fact(k - l);
            total += rat_int(sign((l - j) as i64)) * binom(l, j) * g * &fpart;
        }
    }
    Ok(total)
}

/// Weights `t_i = ((r+1)i+1)^{i-1}/i!`, `s_i = 1`:
/// `C(m+k+1, k) ((r+2)m+k+1)^{m-1} / m!`.
pub fn r_ary_labeled_closed(r: usize, m: usize, k: usize) -> Rational {
    let base = rat_int(((r + 2) * m + k + 1) as i64);
    binom(m + k + 1, k) * rat_pow(&base, m as i64 - 1).expect("positive base") * inv_fact(m)
}

/// Weights `t_i = (1-qi)^{i-1}/i!`, `s_i = 1`:
/// `C(m+k+1, k) ((1-q)m+k+1)^{m-1} / m!`.
pub fn abel_closed(q: &Rational, m: usize, k: usize) -> Result<Rational> {
    let base = (Rational::one() - q) * rat_int(m as i64) + rat_int((k + 1) as i64);
    Ok(binom(m + k + 1, k) * rat_pow(&base, m as i64 - 1)? * inv_fact(m))
}

/// Weights `t_i = phi_i(1)/i!`, `s_i = 1`:
/// `C(m+k, k) phi_m(m+k+1) / (m+1)!`.
pub fn binomial_closed(phi: &BinomialSequence, m: usize, k: usize) -> Rational {
    binom(m + k, k) * binseq_value(phi, m, &rat_int((m + k + 1) as i64)) * inv_fact(m + 1)
}

/// Weights `t_i = phi_i(1)/i!`, `s_i = psi_{i-1}(1)/(i-1)!`:
///
/// `sum_j sum_{l>=j} (-1)^{l-j} C(l-1, l-j) psi_{k-l}(l)/(k-l)!
///   C(m+j, j) phi_m(m+j+1)/(m+1)!`.
pub fn binomial_pair_closed(phi: &BinomialSequence, psi: &BinomialSequence, m: usize, k: usize) -> Rational {
    let mut total = Rational::zero();
    for j in 0..=k {
        let fpart = binom(m + j, j) * binseq_value(phi, m, &rat_int((m + j + 1) as i64)) * inv_fact(m + 1);
        for l in j..=k {
            let c = sign((l - j) as i64) * gen_binomial(l as i64 - 1, (l - j) as i64);
            if c.is_zero() {
                continue;
            }
            let g = binseq_value(psi, k - l, &rat_int(l as i64)) * inv_fact(k - l);
            total += rat_int(c) * g * &fpart;
        }
    }
    total
}

/// Weights `t_i = B_i/i!`, `s_i = 1`:
/// `C(m+k, k) sum_i S(m, i) (m+k+1)^i / (m+1)!`.
pub fn bell_numbers_closed(m: usize, k: usize) -> Rational {
    let x = rat_int((m + k + 1) as i64);
    let sum = (0..=m)
        .map(|i| rat_int(stirling2(m, i)) * num_traits::pow(x.clone(), i))
        .fold(Rational::zero(), |a, b| a + b);
    binom(m + k, k) * sum * inv_fact(m + 1)
}

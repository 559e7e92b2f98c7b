//! Named weight specializations.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::bell::{bell_number, binseq_value, power_coeff, BinomialSequence};
use crate::error::{Error, Result};
use crate::polyring::{Series, WeightRule, WeightSpec};
use crate::scalar::{fact, gen_binomial, rat_int, rat_pow, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightKind {
    AllOnes,
    Symbolic,
    /// `t_i = s_i = 1/i!`
    Stirling,
    /// `t_i = C(bi+1, i)/(bi+1)`, `s_i = C(di+1, i)/(di+1)`
    BAry { b: u32, d: u32 },
    /// `t_i = ((r+1)i+1)^{i-1}/i!`, `s_i = 1`
    RAryLabeled { r: u32 },
    /// `t_i = (1-qi)^{i-1}/i!`, `s_i = 1`
    Abel { q: Rational },
    /// `t_i = B_i/i!` with `B_i` the Bell numbers, `s_i = 1`
    BellNumbers,
    /// symbolic `t`, `s_i = psi_{i-1}(1)/(i-1)!` for the rising factorial `psi`
    FactorialPsi,
    /// `t_i = phi_i(1)/i!`, `s_i = psi_{i-1}(1)/(i-1)!`
    BinomialPair { phi: BinomialSequence, psi: BinomialSequence },
}

fn tree_weight(b: u32, i: u32) -> Rational {
    let top = b as i64 * i as i64 + 1;
    Rational::new(gen_binomial(top, i as i64), top.into())
}

fn inv_fact(i: u32) -> Rational {
    Rational::new(1.into(), fact(i as u64))
}

fn ones() -> WeightRule {
    WeightRule::constant(Rational::one())
}

fn psi_rule(psi: BinomialSequence) -> WeightRule {
    WeightRule::numeric(format!("psi={psi}"), move |i| {
        binseq_value(&psi, i as usize - 1, &Rational::one()) * inv_fact(i - 1)
    })
}

pub fn named_weights(kind: &WeightKind) -> WeightSpec {
    match kind.clone() {
        WeightKind::AllOnes => WeightSpec::new(ones(), ones()),
        WeightKind::Symbolic => WeightSpec::symbolic(),
        WeightKind::Stirling => {
            let r = WeightRule::numeric("1/i!", inv_fact);
            WeightSpec::new(r.clone(), r)
        }
        WeightKind::BAry { b, d } => WeightSpec::new(
            WeightRule::numeric(format!("{b}-ary"), move |i| tree_weight(b, i)),
            WeightRule::numeric(format!("{d}-ary"), move |i| tree_weight(d, i)),
        ),
        WeightKind::RAryLabeled { r } => WeightSpec::new(
            WeightRule::numeric(format!("{r}-ary labeled"), move |i| {
                let base = rat_int((r as i64 + 1) * i as i64 + 1);
                rat_pow(&base, i as i64 - 1).expect("positive base") * inv_fact(i)
            }),
            ones(),
        ),
        WeightKind::Abel { q } => WeightSpec::new(
            WeightRule::numeric(format!("abel q={q}"), move |i| {
                let base = Rational::one() - &q * rat_int(i as i64);
                num_traits::pow(base, i as usize - 1) * inv_fact(i)
            }),
            ones(),
        ),
        WeightKind::BellNumbers => WeightSpec::new(
            WeightRule::numeric("B_i/i!", |i| Rational::new(bell_number(i as usize), fact(i as u64))),
            ones(),
        ),
        WeightKind::FactorialPsi => WeightSpec::new(WeightRule::symbolic(), psi_rule(BinomialSequence::Factorial)),
        WeightKind::BinomialPair { phi, psi } => WeightSpec::new(
            WeightRule::numeric(format!("phi={phi}"), move |i| {
                binseq_value(&phi, i as usize, &Rational::one()) * inv_fact(i)
            }),
            psi_rule(psi),
        ),
    }
}

/// `t_i = f_i(i+1)/(i+1)!` and `s_i = g_{i-1}(i)/i!`, with
/// `f_m(i) = m! [x^m] f^i`. Without `g`, every `s_i` is 1.
///
/// Weights are tabulated up to the truncation of the series; asking for a
/// larger index panics.
pub fn power_series_weights(f: &Series, g: Option<&Series>) -> Result<WeightSpec> {
    let n = f.orders()[0];
    let t: Vec<Rational> = (1..=n)
        .map(|i| {
            let c = power_coeff(f, i, i as i64 + 1)?;
            Ok(constant_of(&c)? * Rational::new(1.into(), fact(i as u64 + 1)))
        })
        .collect::<Result<_>>()?;
    let t_rule = WeightRule::numeric("f_i(i+1)/(i+1)!", move |i| {
        t.get(i as usize - 1).cloned().expect("weight index beyond series truncation")
    });
    let s_rule = match g {
        None => ones(),
        Some(g) => {
            let n = g.orders()[0] + 1;
            let s: Vec<Rational> = (1..=n)
                .map(|i| {
                    let c = power_coeff(g, i - 1, i as i64)?;
                    Ok(constant_of(&c)? * Rational::new(1.into(), fact(i as u64)))
                })
                .collect::<Result<_>>()?;
            WeightRule::numeric("g_{i-1}(i)/i!", move |i| {
                s.get(i as usize - 1).cloned().expect("weight index beyond series truncation")
            })
        }
    };
    Ok(WeightSpec::new(t_rule, s_rule))
}

fn constant_of(p: &crate::polyring::Polynomial) -> Result<Rational> {
    p.as_constant().ok_or_else(|| Error::Undefined("series must have rational coefficients".into()))
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightKind::AllOnes => f.write_str("all-ones"),
            WeightKind::Symbolic => f.write_str("symbolic"),
            WeightKind::Stirling => f.write_str("stirling"),
            WeightKind::BAry { b, d } => write!(f, "b-ary:b={b},d={d}"),
            WeightKind::RAryLabeled { r } => write!(f, "r-ary:r={r}"),
            WeightKind::Abel { q } => write!(f, "abel:q={q}"),
            WeightKind::BellNumbers => f.write_str("bell-numbers"),
            WeightKind::FactorialPsi => f.write_str("factorial-psi"),
            WeightKind::BinomialPair { phi, psi } => write!(f, "binomial:phi={phi},psi={psi}"),
        }
    }
}

fn params(s: &str) -> Result<Vec<(&str, &str)>> {
    s.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| p.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got `{p}`"))))
        .collect()
}

fn param<T: FromStr>(ps: &[(&str, &str)], key: &str, default: Option<T>) -> Result<T> {
    match ps.iter().find(|(k, _)| *k == key) {
        Some((_, v)) => v.parse().map_err(|_| Error::Parse(format!("bad value for `{key}`: `{v}`"))),
        None => default.ok_or_else(|| Error::Parse(format!("missing parameter `{key}`"))),
    }
}

impl FromStr for WeightKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let ps = params(rest)?;
        let kind = match name {
            "all-ones" => WeightKind::AllOnes,
            "symbolic" => WeightKind::Symbolic,
            "stirling" => WeightKind::Stirling,
            "b-ary" => WeightKind::BAry { b: param(&ps, "b", None)?, d: param(&ps, "d", Some(1))? },
            "r-ary" => WeightKind::RAryLabeled { r: param(&ps, "r", None)? },
            "abel" => WeightKind::Abel { q: param(&ps, "q", None)? },
            "bell-numbers" => WeightKind::BellNumbers,
            "factorial-psi" => WeightKind::FactorialPsi,
            _ => return Err(Error::Parse(format!("unknown weight kind `{name}`"))),
        };
        Ok(kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Family, WeightValue};
    use crate::scalar::rat;

    fn t_at(kind: &WeightKind, i: u32) -> WeightValue {
        named_weights(kind).t.value(i)
    }

    #[test]
    fn named_examples() {
        let st = named_weights(&WeightKind::Stirling);
        assert_eq!(st.t.value(3), WeightValue::Number(rat(1, 6)));
        assert_eq!(st.s.value(3), WeightValue::Number(rat(1, 6)));
        assert_eq!(t_at(&WeightKind::BAry { b: 1, d: 1 }, 2), WeightValue::Number(rat_int(1)));
        assert_eq!(t_at(&WeightKind::BAry { b: 2, d: 1 }, 3), WeightValue::Number(rat_int(5)));
        for i in 1..6 {
            assert_eq!(t_at(&WeightKind::Abel { q: rat_int(0) }, i), WeightValue::Number(inv_fact(i)));
        }
        assert_eq!(t_at(&WeightKind::BellNumbers, 3), WeightValue::Number(rat(5, 6)));
        assert_eq!(t_at(&WeightKind::RAryLabeled { r: 0 }, 3), WeightValue::Number(rat(8, 3)));
        let fp = named_weights(&WeightKind::FactorialPsi);
        assert_eq!(fp.value(crate::polyring::Var::s(4)), WeightValue::Number(rat_int(1)));
        assert_eq!(fp.value(crate::polyring::Var::t(4)), WeightValue::Symbolic);
        assert_eq!(named_weights(&WeightKind::AllOnes).rule(Family::S).value(9), WeightValue::Number(rat_int(1)));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["all-ones", "symbolic", "stirling", "b-ary:b=2,d=1", "abel:q=-2", "bell-numbers", "r-ary:r=1", "factorial-psi"] {
            let kind: WeightKind = s.parse().unwrap();
            assert_eq!(kind.to_string(), s);
        }
        assert_eq!("b-ary:b=3".parse::<WeightKind>().unwrap(), WeightKind::BAry { b: 3, d: 1 });
        assert_eq!("abel:q=1/2".parse::<WeightKind>().unwrap(), WeightKind::Abel { q: rat(1, 2) });
        assert!("ternary".parse::<WeightKind>().is_err());
        assert!("abel".parse::<WeightKind>().is_err());
        assert!("r-ary:r=x".parse::<WeightKind>().is_err());
    }

    #[test]
    fn power_series_weights_for_binomial_series() {
        // f = 1 + x: f_i(i+1) = i! C(i+1, i) = (i+1)!, so every t_i is 1
        let f = Series::from_rationals(4, &[rat_int(1), rat_int(1)]);
        let w = power_series_weights(&f, None).unwrap();
        assert_eq!(w.t.value(1), WeightValue::Number(rat_int(1)));
        assert_eq!(w.t.value(4), WeightValue::Number(rat_int(1)));
        assert_eq!(w.s.value(7), WeightValue::Number(rat_int(1)));
    }
}

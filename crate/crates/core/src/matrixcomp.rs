//! Bipartite matrix compositions, their closed-form weighted counts, and
//! the bounded-outdegree plane trees counted by the same coefficients.

use std::fmt;

use num_traits::Zero;

use crate::bell::{BellTable, WeightVector};
use crate::compositions::{enumerate_compositions, Composition};
use crate::error::{Error, Result};
use crate::motzkin::SegmentType;
use crate::polyring::{Family, Polynomial, WeightSpec};
use crate::scalar::{fact, gen_binomial, multinomial, Integer, Rational};

/// Enumeration bounds on the matrix sum, row count, and column count.
pub const DEFAULT_BOUNDS: (usize, usize, usize) = (10, 4, 5);

/// Largest vertex count accepted by the tree enumeration.
pub const TREE_BOUND: usize = 10;

/// A `p x j` matrix of nonnegative integers in which every row has the
/// shape `(a_1, ..., a_i, 0, ..., 0)` with all `a` positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BipartiteMatrixComposition {
    rows: Vec<Vec<usize>>,
    columns: usize,
}

impl BipartiteMatrixComposition {
    pub fn new(rows: Vec<Vec<usize>>, columns: usize) -> Result<Self> {
        for row in &rows {
            if row.len() != columns {
                return Err(Error::InvalidType(format!("row {row:?} does not have {columns} entries")));
            }
            if row.windows(2).any(|w| w[0] == 0 && w[1] > 0) {
                return Err(Error::InvalidType(format!("row {row:?} has a nonzero entry after a zero")));
            }
        }
        Ok(BipartiteMatrixComposition { rows, columns })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn p(&self) -> usize {
        self.rows.len()
    }

    pub fn j(&self) -> usize {
        self.columns
    }

    pub fn total(&self) -> usize {
        self.rows.iter().flatten().sum()
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().flatten().filter(|&&a| a > 0).count()
    }

    /// Multiset of nonzero entries.
    pub fn entry_type(&self) -> SegmentType {
        let mut ty = SegmentType::new();
        for &a in self.rows.iter().flatten().filter(|&&a| a > 0) {
            *ty.entry(a).or_insert(0) += 1;
        }
        ty
    }

    /// `prod t_a` over nonzero entries `a`.
    pub fn weight(&self, w: &WeightSpec) -> Polynomial {
        self.entry_type()
            .iter()
            .fold(Polynomial::one(), |acc, (&a, &c)| &acc * &w.poly(Family::T, a as u32).pow(c as u32))
    }
}

impl fmt::Display for BipartiteMatrixComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("({})", r.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

/// Rows of length `j` with the bipartite shape summing to `total`.
fn bipartite_rows(total: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..=j {
        for c in enumerate_compositions(total, i).expect("row sizes are within bounds") {
            if i > 0 && c.k() > 0 {
                continue;
            }
            let mut row = c.parts().to_vec();
            row.resize(j, 0);
            out.push(row);
        }
    }
    out.sort();
    out
}

pub fn enumerate_bipartite(m: usize, p: usize, j: usize) -> Result<std::vec::IntoIter<BipartiteMatrixComposition>> {
    let (bm, bp, bj) = DEFAULT_BOUNDS;
    if m > bm || p > bp || j > bj {
        return Err(Error::BoundExceeded { what: format!("{p}x{j} matrices with sum {m}"), bound: bm });
    }
    let rows_by_total: Vec<Vec<Vec<usize>>> = (0..=m).map(|s| bipartite_rows(s, j)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fill(&rows_by_total, m, p, j, &mut cur, &mut out);
    Ok(out.into_iter())
}

fn fill(
    rows: &[Vec<Vec<usize>>],
    left: usize,
    p: usize,
    j: usize,
    cur: &mut Vec<Vec<usize>>,
    out: &mut Vec<BipartiteMatrixComposition>,
) {
    if cur.len() == p {
        if left == 0 {
            out.push(BipartiteMatrixComposition { rows: cur.clone(), columns: j });
        }
        return;
    }
    let totals: Vec<usize> = if cur.len() + 1 == p { vec![left] } else { (0..=left).collect() };
    for s in totals {
        for row in &rows[s] {
            cur.push(row.clone());
            fill(rows, left - s, p, j, cur, out);
            cur.pop();
        }
    }
}

/// `U_{p,j,r} = [x^r] (1 + x + ... + x^j)^p`.
pub fn u_coefficient(p: usize, j: usize, r: usize) -> Integer {
    let (p, j, r) = (p as i64, j as i64, r as i64);
    (0..=r / (j + 1))
        .map(|i| {
            let rest = r - i * (j + 1);
            let term = gen_binomial(p, i) * gen_binomial(p + rest - 1, rest);
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// `sum_r r! U_{p,j,r} B_{m,r}(1! t) / m!`.
pub fn bipartite_weighted_closed(m: usize, p: usize, j: usize, w: &WeightSpec) -> Polynomial {
    let table = BellTable::new(m, &WeightVector::scaled(w, Family::T));
    (0..=m).map(|r| by_nonzeros(&table, m, p, j, r)).sum()
}

fn by_nonzeros(table: &BellTable, m: usize, p: usize, j: usize, r: usize) -> Polynomial {
    let u = u_coefficient(p, j, r);
    if u.is_zero() || r > m {
        return Polynomial::zero();
    }
    table.get(m, r).scale(&Rational::new(fact(r as u64) * u, fact(m as u64)))
}

/// The part of [`bipartite_weighted_closed`] from matrices with exactly
/// `r` nonzero entries.
pub fn bipartite_by_nonzeros(m: usize, p: usize, j: usize, r: usize, w: &WeightSpec) -> Polynomial {
    let table = BellTable::new(m, &WeightVector::scaled(w, Family::T));
    by_nonzeros(&table, m, p, j, r)
}

/// Number of `p x j` bipartite matrix compositions whose nonzero entries
/// have the given type.
pub fn bipartite_count_by_type(p: usize, j: usize, entry_type: &SegmentType) -> Result<Integer> {
    if entry_type.contains_key(&0) {
        return Err(Error::InvalidType("entries start at 1".into()));
    }
    let counts: Vec<i64> = entry_type.values().map(|&c| c as i64).collect();
    let r: i64 = counts.iter().sum();
    Ok(multinomial(r, &counts)? * u_coefficient(p, j, r as usize))
}

/// Number of `p x j` bipartite (0,1)-matrices with `m` ones.
pub fn zero_one_count(p: usize, j: usize, m: usize) -> Integer {
    u_coefficient(p, j, m)
}

/// Sum of weights over all `p x j` nonnegative matrices with entry sum `m`
/// and `k` zero entries, each row weighted through its path embedding.
pub fn matrix_weighted_bruteforce(m: usize, k: usize, p: usize, j: usize, w: &WeightSpec) -> Result<Polynomial> {
    let rows: Vec<Vec<Composition>> = (0..=m)
        .map(|s| enumerate_compositions(s, j).map(|c| c.collect()))
        .collect::<Result<_>>()?;
    fn go(rows: &[Vec<Composition>], left: usize, zeros: usize, rest: usize, w: &WeightSpec, acc: Polynomial) -> Polynomial {
        if rest == 0 {
            return if left == 0 && zeros == 0 { acc } else { Polynomial::zero() };
        }
        let mut sum = Polynomial::zero();
        for s in 0..=left {
            for c in &rows[s] {
                if c.k() <= zeros {
                    let next = &acc * &c.profile().weight(w);
                    sum += &go(rows, left - s, zeros - c.k(), rest - 1, w, next);
                }
            }
        }
        sum
    }
    Ok(go(&rows, m, k, p, w, Polynomial::one()))
}

/// An ordered rooted tree stored as its preorder outdegree sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaneTree {
    outdegrees: Vec<usize>,
}

impl PlaneTree {
    pub fn from_outdegrees(outdegrees: Vec<usize>) -> Result<Self> {
        let mut open = 1i64;
        for (i, &d) in outdegrees.iter().enumerate() {
            if open == 0 {
                return Err(Error::InvalidType(format!("sequence closes early at position {i}")));
            }
            open += d as i64 - 1;
        }
        if open != 0 {
            return Err(Error::InvalidType("outdegrees do not describe a tree".into()));
        }
        Ok(PlaneTree { outdegrees })
    }

    pub fn outdegrees(&self) -> &[usize] {
        &self.outdegrees
    }

    pub fn vertices(&self) -> usize {
        self.outdegrees.len()
    }

    pub fn max_outdegree(&self) -> usize {
        self.outdegrees.iter().copied().max().unwrap_or(0)
    }
}

/// Plane trees on `v` vertices with every outdegree at most `max_out`, in
/// lexicographic order of outdegree sequences.
pub fn enumerate_plane_trees(v: usize, max_out: usize) -> Result<Vec<PlaneTree>> {
    if v == 0 {
        return Err(Error::InvalidType("a tree needs at least one vertex".into()));
    }
    if v > TREE_BOUND {
        return Err(Error::BoundExceeded { what: format!("trees on {v} vertices"), bound: TREE_BOUND });
    }
    fn go(v: usize, max_out: usize, open: usize, cur: &mut Vec<usize>, out: &mut Vec<PlaneTree>) {
        let left = v - cur.len();
        if left == 0 {
            if open == 0 {
                out.push(PlaneTree { outdegrees: cur.clone() });
            }
            return;
        }
        if open == 0 {
            return;
        }
        // the remaining left - 1 vertices must fill the open slots
        for d in 0..=max_out {
            let next = open - 1 + d;
            if next > left - 1 {
                break;
            }
            cur.push(d);
            go(v, max_out, next, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(v, max_out, 1, &mut Vec::with_capacity(v), &mut out);
    Ok(out)
}

pub fn bounded_outdegree_tree_count(v: usize, j: usize) -> Result<Integer> {
    Ok(enumerate_plane_trees(v, j)?.len().into())
}

/// `U_{m+1,j,m}` written as `sum_i (-1)^i C(m+1, i) C(2m - i(j+1), m)`.
pub fn tree_count_formula(m: usize, j: usize) -> Integer {
    let (m, j) = (m as i64, j as i64);
    (0..=m / (j + 1))
        .map(|i| {
            let term = gen_binomial(m + 1, i) * gen_binomial(2 * m - i * (j + 1), m);
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::polyring::{Family, Polynomial, WeightSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    D,
    H,
}

impl Step {
    fn letter(self) -> char {
        match self {
            Step::U => 'u',
            Step::D => 'd',
            Step::H => 'h',
        }
    }
}

/// A lattice path of `U`, `D`, `H` steps that returns to height zero and
/// never goes below it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MotzkinPath {
    steps: Vec<Step>,
}

impl MotzkinPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height: i64 = 0;
        for s in &steps {
            height += match s {
                Step::U => 1,
                Step::D => -1,
                Step::H => 0,
            };
            if height < 0 {
                return Err(Error::Parse("path goes below the axis".into()));
            }
        }
        if height != 0 {
            return Err(Error::Parse("path does not return to the axis".into()));
        }
        Ok(MotzkinPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn up_steps(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::U).count()
    }

    pub fn flat_steps(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::H).count()
    }

    pub fn profile(&self) -> SegmentProfile {
        segment_profile(self)
    }
}

impl fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

impl FromStr for MotzkinPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .map(|c| match c.to_ascii_lowercase() {
                'u' => Ok(Step::U),
                'd' => Ok(Step::D),
                'h' => Ok(Step::H),
                _ => Err(Error::Parse(format!("bad step `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        MotzkinPath::new(steps)
    }
}

/// Run-length statistics: `u_counts[i]` maximal runs of `i` up steps and
/// `h_counts[i]` maximal runs of `i` flat steps.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentProfile {
    pub u_counts: BTreeMap<usize, usize>,
    pub h_counts: BTreeMap<usize, usize>,
}

impl SegmentProfile {
    /// Number of u-segments.
    pub fn u_segments(&self) -> usize {
        self.u_counts.values().sum()
    }

    /// Number of h-segments.
    pub fn h_segments(&self) -> usize {
        self.h_counts.values().sum()
    }

    pub fn up_total(&self) -> usize {
        self.u_counts.iter().map(|(i, c)| i * c).sum()
    }

    pub fn flat_total(&self) -> usize {
        self.h_counts.iter().map(|(i, c)| i * c).sum()
    }

    /// `prod t_i^{u_i} prod s_i^{h_i}` under the weight assignment.
    pub fn weight(&self, w: &WeightSpec) -> Polynomial {
        let mut acc = Polynomial::one();
        for (&i, &c) in &self.u_counts {
            acc = &acc * &w.poly(Family::T, i as u32).pow(c as u32);
        }
        for (&i, &c) in &self.h_counts {
            acc = &acc * &w.poly(Family::S, i as u32).pow(c as u32);
        }
        acc
    }
}

/// Maximal-run decomposition of the up and flat steps of a step sequence.
pub fn runs_of(steps: &[Step]) -> SegmentProfile {
    let mut profile = SegmentProfile::default();
    let mut i = 0;
    while i < steps.len() {
        let s = steps[i];
        let start = i;
        while i < steps.len() && steps[i] == s {
            i += 1;
        }
        let len = i - start;
        match s {
            Step::U => *profile.u_counts.entry(len).or_insert(0) += 1,
            Step::H => *profile.h_counts.entry(len).or_insert(0) += 1,
            Step::D => {}
        }
    }
    profile
}

pub fn segment_profile(p: &MotzkinPath) -> SegmentProfile {
    runs_of(&p.steps)
}

pub const DEFAULT_BOUND: usize = 16;

/// Paths with `m` up steps and `k` flat steps in lexicographic order
/// `U < D < H`.
#[derive(Debug, Clone)]
pub struct Paths {
    m: usize,
    k: usize,
    steps: Vec<Step>,
    ups: usize,
    downs: usize,
    flats: usize,
    started: bool,
    done: bool,
}

impl Paths {
    fn push(&mut self, s: Step) {
        match s {
            Step::U => self.ups += 1,
            Step::D => self.downs += 1,
            Step::H => self.flats += 1,
        }
        self.steps.push(s);
    }

    fn pop(&mut self) -> Option<Step> {
        let s = self.steps.pop()?;
        match s {
            Step::U => self.ups -= 1,
            Step::D => self.downs -= 1,
            Step::H => self.flats -= 1,
        }
        Some(s)
    }

    fn allowed(&self, s: Step) -> bool {
        match s {
            Step::U => self.ups < self.m,
            Step::D => self.downs < self.ups,
            Step::H => self.flats < self.k,
        }
    }

    fn complete(&mut self) {
        let n = 2 * self.m + self.k;
        while self.steps.len() < n {
            let s = [Step::U, Step::D, Step::H]
                .into_iter()
                .find(|&s| self.allowed(s))
                .expect("every prefix extends to a path");
            self.push(s);
        }
    }

    fn advance(&mut self) -> bool {
        while let Some(last) = self.pop() {
            let next = [Step::D, Step::H].into_iter().find(|&s| s > last && self.allowed(s));
            if let Some(s) = next {
                self.push(s);
                self.complete();
                return true;
            }
        }
        false
    }
}

impl Iterator for Paths {
    type Item = MotzkinPath;

    fn next(&mut self) -> Option<MotzkinPath> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.complete();
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(MotzkinPath { steps: self.steps.clone() })
    }
}

pub fn enumerate_paths(m: usize, k: usize) -> Result<Paths> {
    enumerate_paths_with_bound(m, k, DEFAULT_BOUND)
}

pub fn enumerate_paths_with_bound(m: usize, k: usize, bound: usize) -> Result<Paths> {
    let n = 2 * m + k;
    if n > bound {
        return Err(Error::BoundExceeded { what: format!("path length {n}"), bound });
    }
    Ok(Paths {
        m,
        k,
        steps: Vec::with_capacity(n),
        ups: 0,
        downs: 0,
        flats: 0,
        started: false,
        done: false,
    })
}

/// Number of paths per segment profile.
pub fn profile_histogram(m: usize, k: usize) -> Result<BTreeMap<SegmentProfile, u64>> {
    let mut hist = BTreeMap::new();
    for p in enumerate_paths(m, k)? {
        *hist.entry(segment_profile(&p)).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Sum over all paths with `m` up and `k` flat steps of their weights.
pub fn weighted_sum_bruteforce(m: usize, k: usize, w: &WeightSpec) -> Result<Polynomial> {
    weighted_sum_filtered(m, k, w, |_| true)
}

/// The brute-force sum restricted to paths with `r` u-segments and `l`
/// h-segments.
pub fn weighted_sum_bruteforce_by_segments(m: usize, k: usize, r: usize, l: usize, w: &WeightSpec) -> Result<Polynomial> {
    weighted_sum_filtered(m, k, w, |p| p.u_segments() == r && p.h_segments() == l)
}

fn weighted_sum_filtered(m: usize, k: usize, w: &WeightSpec, keep: impl Fn(&SegmentProfile) -> bool) -> Result<Polynomial> {
    let mut acc = Polynomial::zero();
    for (profile, count) in profile_histogram(m, k)? {
        if keep(&profile) {
            acc += &profile.weight(w).scale(&crate::scalar::rat_int(count as i64));
        }
    }
    Ok(acc)
}

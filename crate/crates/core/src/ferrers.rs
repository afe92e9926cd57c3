//! Ferrers bounds `f` and the restricted sets `G(r, n, f)` and `D(n, f)`.
//!
//! An element lies in the restricted set when every base satisfies
//! `σ_i ≤ f_i`. Restricted sets are enumerated by expanding a product of
//! per-letter choice factors, so the work scales with the restricted set
//! rather than the whole group.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{ColoredPermutation, Letter};
use crate::stats;

/// A nondecreasing bound vector with `i ≤ f_i ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FerrersBound {
    f: Vec<usize>,
}

impl FerrersBound {
    pub fn new(f: Vec<usize>) -> Result<Self> {
        let n = f.len();
        for (idx, &v) in f.iter().enumerate() {
            let i = idx + 1;
            if v < i || v > n {
                return Err(Error::InvalidBound(format!("f_{i} = {v} must lie in {i}..={n}")));
            }
            if idx > 0 && f[idx - 1] > v {
                return Err(Error::InvalidBound(format!("f is not nondecreasing at {i}")));
            }
        }
        Ok(FerrersBound { f })
    }

    /// Parses `2,3,3,4`.
    pub fn parse(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return FerrersBound::new(Vec::new());
        }
        let f = compact
            .split(',')
            .enumerate()
            .map(|(idx, s)| {
                if s.is_empty() {
                    Err(Error::EmptyEntry(idx + 1))
                } else {
                    s.parse::<usize>().map_err(|_| Error::Malformed(s.to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        FerrersBound::new(f)
    }

    /// The full board `(n, …, n)`.
    pub fn full(n: usize) -> Self {
        FerrersBound { f: vec![n; n] }
    }

    /// The staircase `(1, 2, …, n)`, admitting only colorings of the identity.
    pub fn staircase(n: usize) -> Self {
        FerrersBound { f: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.f
    }

    /// `H(f)` with `h_i = min{j : f_j ≥ i}`.
    pub fn profile(&self) -> FerrersProfile {
        let h = (1..=self.n())
            .map(|i| self.f.iter().position(|&v| v >= i).expect("f_n = n") + 1)
            .collect();
        FerrersProfile { h }
    }

    /// Whether `σ_i ≤ f_i` for every position.
    pub fn member(&self, p: &ColoredPermutation) -> Result<bool> {
        if p.n() != self.n() {
            return Err(Error::SizeMismatch(p.n(), self.n()));
        }
        Ok(p.bases().zip(&self.f).all(|(b, &v)| b <= v))
    }

    /// Pointwise `f ≤ g`.
    pub fn dominated_by(&self, g: &FerrersBound) -> Result<bool> {
        if self.n() != g.n() {
            return Err(Error::SizeMismatch(self.n(), g.n()));
        }
        Ok(self.f.iter().zip(&g.f).all(|(a, b)| a <= b))
    }

    /// Number of elements of `G(r, n, f)`:
    /// `r · ∏_{j ≥ 2} (1 + (j − h_j) + (r − 1)(j − h_j + 1))`.
    pub fn restricted_count(&self, r: usize) -> u128 {
        psi_choices(r, self)
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    /// Number of elements of `D(n, f)`: `∏_{j ≥ 2} 2(j − h_j + 1)`.
    pub fn restricted_count_d(&self) -> u128 {
        theta_choices(self)
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }
}

/// Whether `f ◁ g`, i.e. `f_i ≤ g_i` for all `i`.
pub fn dominates(f: &FerrersBound, g: &FerrersBound) -> Result<bool> {
    f.dominated_by(g)
}

impl fmt::Display for FerrersBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.f.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for FerrersBound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.f.serialize(s)
    }
}

/// `H(f) = (h_1, …, h_n)`: the leftmost position where letter `i` may sit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FerrersProfile {
    pub h: Vec<usize>,
}

impl FerrersProfile {
    pub fn get(&self, i: usize) -> usize {
        self.h[i - 1]
    }
}

/// The least bound admitting `π`: prefix maxima of the base sequence.
/// Equivalently, `f` is constant between consecutive left-to-right maximum
/// places and takes the value of the maximum letter there.
pub fn min_sequence(p: &ColoredPermutation) -> FerrersBound {
    let places = stats::lmap(p);
    let letters = stats::lmal(p);
    let mut f = vec![0; p.n()];
    for (k, (pl, le)) in places.iter().zip(&letters).enumerate() {
        let end = places.get(k + 1).map_or(p.n(), |next| next.base - 1);
        for v in &mut f[pl.base - 1..end] {
            *v = le.base;
        }
    }
    FerrersBound { f }
}

/// Catalan number `C_n`, saturating.
pub fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c.saturating_mul(2 * (2 * k + 1)) / (k + 2);
    }
    c
}

/// Every valid bound of size `n`, in lexicographic order.
pub fn all_bounds(n: usize, cap: u64) -> Result<Vec<FerrersBound>> {
    let size = catalan(n);
    if size > cap as u128 {
        return Err(Error::CapExceeded { size, cap });
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<FerrersBound>) {
        let i = cur.len() + 1;
        if i > n {
            out.push(FerrersBound { f: cur.clone() });
            return;
        }
        let lo = cur.last().copied().unwrap_or(1).max(i);
        for v in lo..=n {
            cur.push(v);
            rec(n, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut out);
    Ok(out)
}

/// One factor term: right multiplication by `(i^t j)` in `G(r, n)` or by
/// `t^D_{ij}` / `t^D_{\bar i j}` in `D(n)`. The identity term is `i = j, t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Choice {
    pub i: usize,
    pub t: usize,
    pub j: usize,
}

/// Terms of `Ψ_j = 1 + Σ_{h_j ≤ i < j} (i j) + Σ_{t ≥ 1} Σ_{h_j ≤ i ≤ j} (i^t j)`.
pub fn psi_choices(r: usize, f: &FerrersBound) -> Vec<Vec<Choice>> {
    let h = f.profile();
    (1..=f.n())
        .map(|j| {
            let hj = h.get(j);
            let mut v = vec![Choice { i: j, t: 0, j }];
            v.extend((hj..j).map(|i| Choice { i, t: 0, j }));
            for t in 1..r {
                v.extend((hj..=j).map(|i| Choice { i, t, j }));
            }
            v
        })
        .collect()
}

/// Terms of `Θ_j = 1 + Σ_{h_j ≤ i < j} t^D_{ij} + Σ_{h_j ≤ i ≤ j} t^D_{\bar i j}`
/// for `j ≥ 2`, and `Θ_1 = 1`. Here `t = 1` marks the barred transposition.
pub fn theta_choices(f: &FerrersBound) -> Vec<Vec<Choice>> {
    let h = f.profile();
    (1..=f.n())
        .map(|j| {
            let mut v = vec![Choice { i: j, t: 0, j }];
            if j >= 2 {
                let hj = h.get(j);
                v.extend((hj..j).map(|i| Choice { i, t: 0, j }));
                v.extend((hj..=j).map(|i| Choice { i, t: 1, j }));
            }
            v
        })
        .collect()
}

/// Applies a `Θ` term to a signed window in place.
pub(crate) fn apply_theta(w: &mut [Letter], c: Choice) {
    let Choice { i, t, j } = c;
    let flip = |l: Letter| Letter::new(l.base, 1 - l.color);
    if t == 0 {
        w.swap(i - 1, j - 1);
    } else if i < j {
        let (a, b) = (w[i - 1], w[j - 1]);
        w[j - 1] = flip(a);
        w[i - 1] = flip(b);
    } else {
        w[0] = flip(w[0]);
        w[j - 1] = flip(w[j - 1]);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Colored,
    EvenSigned,
}

/// Iterator over a restricted set, expanding the factor product with the
/// last factor varying fastest.
#[derive(Clone, Debug)]
pub struct RestrictedElements {
    r: usize,
    family: Family,
    choices: Vec<Vec<Choice>>,
    digits: Vec<usize>,
    done: bool,
    remaining: usize,
}

impl RestrictedElements {
    fn build(&self) -> ColoredPermutation {
        let n = self.choices.len();
        let mut cur = ColoredPermutation::identity(self.r, n);
        match self.family {
            Family::Colored => {
                for (c, &d) in self.choices.iter().zip(&self.digits) {
                    let ch = c[d];
                    cur.transpose_in_place(ch.i, ch.t, ch.j);
                }
                cur
            }
            Family::EvenSigned => {
                let mut w = cur.window().to_vec();
                for (c, &d) in self.choices.iter().zip(&self.digits) {
                    apply_theta(&mut w, c[d]);
                }
                cur = ColoredPermutation::from_window_unchecked(2, w);
                cur
            }
        }
    }

    /// Splits the stream by the choice made in the first factor with more
    /// than one term, for parallel consumption.
    pub fn partition(self) -> Vec<RestrictedElements> {
        let Some(k) = self.choices.iter().position(|c| c.len() > 1) else {
            return vec![self];
        };
        (0..self.choices[k].len())
            .map(|d| {
                let mut choices = self.choices.clone();
                choices[k] = vec![self.choices[k][d]];
                let remaining = choices.iter().map(|c| c.len()).product();
                RestrictedElements {
                    r: self.r,
                    family: self.family,
                    digits: vec![0; choices.len()],
                    choices,
                    done: false,
                    remaining,
                }
            })
            .collect()
    }
}

impl Iterator for RestrictedElements {
    type Item = ColoredPermutation;

    fn next(&mut self) -> Option<ColoredPermutation> {
        if self.done {
            return None;
        }
        let item = self.build();
        self.remaining -= 1;
        let mut k = self.digits.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] < self.choices[k].len() {
                break;
            }
            self.digits[k] = 0;
        }
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for RestrictedElements {}

fn restricted(
    r: usize,
    family: Family,
    choices: Vec<Vec<Choice>>,
    cap: u64,
) -> Result<RestrictedElements> {
    let size = choices
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if size > cap as u128 {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(RestrictedElements {
        r,
        family,
        digits: vec![0; choices.len()],
        choices,
        done: false,
        remaining: size as usize,
    })
}

/// `G(r, n, f)` by expanding `Ψ_1 Ψ_2 ⋯ Ψ_n`.
pub fn enumerate_restricted(r: usize, f: &FerrersBound, cap: u64) -> Result<RestrictedElements> {
    if r == 0 {
        return Err(Error::ZeroColors);
    }
    restricted(r, Family::Colored, psi_choices(r, f), cap)
}

/// `D(n, f)` by expanding `Θ_1 Θ_2 ⋯ Θ_n`.
pub fn enumerate_restricted_d(f: &FerrersBound, cap: u64) -> Result<RestrictedElements> {
    restricted(2, Family::EvenSigned, theta_choices(f), cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_group;
    use std::collections::BTreeSet;

    fn fb(s: &str) -> FerrersBound {
        FerrersBound::parse(s).unwrap()
    }

    fn p(s: &str, r: usize) -> ColoredPermutation {
        ColoredPermutation::parse(s, r).unwrap()
    }

    #[test]
    fn profiles() {
        assert_eq!(fb("2,3,3,4").profile().h, vec![1, 1, 2, 4]);
        assert_eq!(fb("1,2").profile().h, vec![1, 2]);
        assert_eq!(FerrersBound::full(4).profile().h, vec![1, 1, 1, 1]);
    }

    #[test]
    fn validation() {
        assert!(FerrersBound::parse("2,1").is_err());
        assert!(FerrersBound::parse("1,1").is_err());
        assert!(FerrersBound::parse("1,3").is_err());
        assert!(FerrersBound::parse("1,,2").is_err());
    }

    #[test]
    fn membership() {
        let f1 = fb("2,3,3,4");
        assert!(f1.member(&p("2,3,1,4", 1)).unwrap());
        assert!(!f1.member(&p("3,2,1,4", 1)).unwrap());
        assert!(f1.member(&ColoredPermutation::identity(3, 4)).unwrap());
        assert!(f1.member(&ColoredPermutation::identity(3, 3)).is_err());
    }

    #[test]
    fn min_sequence_example() {
        let x = p("3,6,1,4,7,5,9,2,8", 1);
        assert_eq!(min_sequence(&x).values(), &[3, 6, 6, 6, 7, 7, 9, 9, 9]);
        assert_eq!(min_sequence(&ColoredPermutation::identity(2, 3)).values(), &[1, 2, 3]);
    }

    #[test]
    fn min_sequence_is_least() {
        let bounds = all_bounds(4, 100).unwrap();
        for x in enumerate_group(1, 4, 100).unwrap() {
            let m = min_sequence(&x);
            for f in &bounds {
                assert_eq!(f.member(&x).unwrap(), dominates(&m, f).unwrap(), "{x} {f}");
            }
        }
    }

    #[test]
    fn dominance() {
        assert!(dominates(&fb("1,2"), &fb("2,2")).unwrap());
        assert!(dominates(&fb("2,3,3,4"), &fb("4,4,4,4")).unwrap());
        assert!(!dominates(&fb("2,2"), &fb("1,2")).unwrap());
    }

    #[test]
    fn bound_counts() {
        assert_eq!(all_bounds(2, 10).unwrap(), vec![fb("1,2"), fb("2,2")]);
        assert_eq!(all_bounds(1, 10).unwrap(), vec![fb("1")]);
        for n in 0..=7 {
            assert_eq!(all_bounds(n, 1000).unwrap().len() as u128, catalan(n));
        }
        assert_eq!(catalan(4), 14);
        assert!(all_bounds(10, 100).is_err());
    }

    #[test]
    fn restricted_examples() {
        let s4: BTreeSet<String> = enumerate_restricted(1, &fb("2,3,3,4"), 100)
            .unwrap()
            .map(|x| x.to_string())
            .collect();
        let expected: BTreeSet<String> =
            ["1,2,3,4", "1,3,2,4", "2,1,3,4", "2,3,1,4"].iter().map(|s| s.to_string()).collect();
        assert_eq!(s4, expected);
        let g = enumerate_restricted(3, &fb("1,2"), 100).unwrap();
        assert_eq!(g.len(), 9);
        assert!(g.into_iter().all(|x| x.bases().eq([1, 2])));
    }

    #[test]
    fn restricted_d_examples() {
        let all: BTreeSet<String> = enumerate_restricted_d(&fb("2,2"), 10)
            .unwrap()
            .map(|x| x.to_signed_string())
            .collect();
        let want: BTreeSet<String> =
            ["1,2", "2,1", "-2,-1", "-1,-2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(all, want);
        let two: Vec<String> = enumerate_restricted_d(&fb("1,2"), 10)
            .unwrap()
            .map(|x| x.to_signed_string())
            .collect();
        assert_eq!(two, vec!["1,2", "-1,-2"]);
        assert_eq!(enumerate_restricted_d(&fb("1"), 10).unwrap().count(), 1);
    }

    #[test]
    fn restricted_matches_filter() {
        for r in 1..=3 {
            for n in 0..=4 {
                for f in all_bounds(n, 100).unwrap() {
                    let fast: BTreeSet<_> = enumerate_restricted(r, &f, 10_000).unwrap().collect();
                    let slow: BTreeSet<_> = enumerate_group(r, n, 10_000)
                        .unwrap()
                        .filter(|x| f.member(x).unwrap())
                        .collect();
                    assert_eq!(fast.len() as u128, f.restricted_count(r));
                    assert_eq!(fast, slow, "r={r} f={f}");
                }
            }
        }
    }

    #[test]
    fn partition_covers_stream() {
        let f = fb("2,3,3,4");
        let whole: Vec<_> = enumerate_restricted(3, &f, 10_000).unwrap().collect();
        let parts: Vec<_> = enumerate_restricted(3, &f, 10_000)
            .unwrap()
            .partition()
            .into_iter()
            .flatten()
            .collect();
        assert_eq!(whole, parts);
        let whole: Vec<_> = enumerate_restricted_d(&f, 10_000).unwrap().collect();
        let parts: Vec<_> = enumerate_restricted_d(&f, 10_000)
            .unwrap()
            .partition()
            .into_iter()
            .flatten()
            .collect();
        assert_eq!(whole, parts);
    }

    #[test]
    fn profile_word_identities() {
        for n in 1..=6 {
            for f in all_bounds(n, 1000).unwrap() {
                let hw: Vec<Letter> = f.profile().h.into_iter().map(Letter::plain).collect();
                let fw: Vec<Letter> = f.values().iter().copied().map(Letter::plain).collect();
                let mut rmil: Vec<usize> = stats::rtl_minima(&hw).iter().map(|x| x.1.base).collect();
                let mut rmip: Vec<usize> = stats::rtl_minima(&hw).iter().map(|x| x.0).collect();
                let mut lmap: Vec<usize> = stats::ltr_maxima(&fw).iter().map(|x| x.0).collect();
                let mut lmal: Vec<usize> = stats::ltr_maxima(&fw).iter().map(|x| x.1.base).collect();
                for v in [&mut rmil, &mut rmip, &mut lmap, &mut lmal] {
                    v.sort_unstable();
                }
                assert_eq!(rmil, lmap, "{f}");
                assert_eq!(rmip, lmal, "{f}");
            }
        }
    }
}

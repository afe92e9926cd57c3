//! Colored permutations: elements of the wreath product `C_r ≀ S_n`.
//!
//! An element is stored in window form: the images `π(1), …, π(n)`, each a
//! colored letter `σ_i^{z_i}`. The action on the full alphabet of `r·n`
//! colored symbols is `π(i^j) = σ_i^{z_i + j}` and is computed on demand.
//! Products are right actions: `(π·ρ)(x) = π(ρ(x))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter `base^color`. Color 0 is the uncolored letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub base: usize,
    pub color: usize,
}

impl Letter {
    pub const fn new(base: usize, color: usize) -> Self {
        Letter { base, color }
    }

    pub const fn plain(base: usize) -> Self {
        Letter { base, color: 0 }
    }

    /// Adds `t` to the color, modulo `r`.
    #[inline]
    pub fn shift(self, t: usize, r: usize) -> Self {
        Letter::new(self.base, (self.color + t) % r)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.color == 0 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}^{}", self.base, self.color)
        }
    }
}

#[inline]
pub(crate) fn neg_mod(c: usize, r: usize) -> usize {
    (r - c % r) % r
}

/// The pair `(r, n)` naming the group `G(r, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupContext {
    pub r: usize,
    pub n: usize,
}

impl GroupContext {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroColors);
        }
        Ok(GroupContext { r, n })
    }

    /// `r^n · n!`, saturating.
    pub fn order(&self) -> u128 {
        group_order(self.r, self.n)
    }

    pub fn identity(&self) -> ColoredPermutation {
        ColoredPermutation::identity(self.r, self.n)
    }

    pub fn elements(&self, cap: u64) -> Result<GroupElements> {
        enumerate_group(self.r, self.n, cap)
    }
}

pub(crate) fn group_order(r: usize, n: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 1..=n {
        acc = acc.saturating_mul(i as u128).saturating_mul(r as u128);
    }
    acc
}

/// An element of `G(r, n)` in window notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PermRepr", into = "PermRepr")]
pub struct ColoredPermutation {
    r: usize,
    window: Vec<Letter>,
}

impl ColoredPermutation {
    /// Builds an element from its window, checking that the bases form a
    /// permutation of `1..=n` and every color lies in `0..r`.
    pub fn new(r: usize, window: Vec<Letter>) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroColors);
        }
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for l in &window {
            if l.base == 0 || l.base > n {
                return Err(Error::BaseOutOfRange { base: l.base, n });
            }
            if seen[l.base] {
                return Err(Error::DuplicateBase(l.base));
            }
            seen[l.base] = true;
            if l.color >= r {
                return Err(Error::ColorOutOfRange { color: l.color, r });
            }
        }
        Ok(ColoredPermutation { r, window })
    }

    pub(crate) fn from_window_unchecked(r: usize, window: Vec<Letter>) -> Self {
        debug_assert!(ColoredPermutation::new(r, window.clone()).is_ok());
        ColoredPermutation { r, window }
    }

    /// Builds `(σ, z)` from a base permutation and a color vector.
    pub fn from_parts(r: usize, bases: &[usize], colors: &[usize]) -> Result<Self> {
        if bases.len() != colors.len() {
            return Err(Error::SizeMismatch(bases.len(), colors.len()));
        }
        let window = bases
            .iter()
            .zip(colors)
            .map(|(&b, &c)| Letter::new(b, c))
            .collect();
        Self::new(r, window)
    }

    pub fn identity(r: usize, n: usize) -> Self {
        ColoredPermutation {
            r,
            window: (1..=n).map(Letter::plain).collect(),
        }
    }

    /// Parses the comma-separated window grammar (`3^2,2^1,1^1,4`; `-b` is
    /// shorthand for `b^1` when `r = 2`).
    pub fn parse(text: &str, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroColors);
        }
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Ok(Self::identity(r, 0));
        }
        let mut window = Vec::new();
        for (pos, entry) in compact.split(',').enumerate() {
            window.push(parse_entry(entry, pos + 1, r)?);
        }
        Self::new(r, window)
    }

    /// Builds an element of `G(2, n)` from a signed window (`-3, 2, ...`).
    pub fn from_signed(values: &[i64]) -> Result<Self> {
        let window = values
            .iter()
            .map(|&v| Letter::new(v.unsigned_abs() as usize, usize::from(v < 0)))
            .collect();
        Self::new(2, window)
    }

    /// Signed window of an `r = 2` element.
    pub fn to_signed(&self) -> Option<Vec<i64>> {
        if self.r != 2 {
            return None;
        }
        Some(
            self.window
                .iter()
                .map(|l| if l.color == 1 { -(l.base as i64) } else { l.base as i64 })
                .collect(),
        )
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn context(&self) -> GroupContext {
        GroupContext { r: self.r, n: self.n() }
    }

    pub fn window(&self) -> &[Letter] {
        &self.window
    }

    /// The letter `π(i)` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> Letter {
        self.window[i - 1]
    }

    pub fn bases(&self) -> impl Iterator<Item = usize> + '_ {
        self.window.iter().map(|l| l.base)
    }

    pub fn colors(&self) -> impl Iterator<Item = usize> + '_ {
        self.window.iter().map(|l| l.color)
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, l)| l.base == i + 1 && l.color == 0)
    }

    /// Number of letters with a nonzero color.
    pub fn colored_count(&self) -> usize {
        self.window.iter().filter(|l| l.color != 0).count()
    }

    /// Membership in `D(n)`: `r = 2` with an even number of negative letters.
    pub fn is_even_signed(&self) -> bool {
        self.r == 2 && self.colored_count() % 2 == 0
    }

    /// `π(i^j) = σ_i^{z_i + j}`.
    #[inline]
    pub fn apply(&self, x: Letter) -> Letter {
        self.window[x.base - 1].shift(x.color, self.r)
    }

    /// Position of base `b` in the window (1-based).
    pub fn position_of(&self, b: usize) -> usize {
        self.window
            .iter()
            .position(|l| l.base == b)
            .map(|p| p + 1)
            .expect("base present in window")
    }

    /// `π^{-1}(x)`.
    pub fn apply_inverse(&self, x: Letter) -> Letter {
        let p = self.position_of(x.base);
        let z = self.window[p - 1].color;
        Letter::new(p, (x.color + self.r - z) % self.r)
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.r != other.r || self.n() != other.n() {
            return Err(Error::Mismatch {
                r1: self.r,
                n1: self.n(),
                r2: other.r,
                n2: other.n(),
            });
        }
        Ok(())
    }

    /// `(σ, z)·(ρ, w) = (σρ, w + ρ(z))`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let window = other.window.iter().map(|&x| self.apply(x)).collect();
        Ok(ColoredPermutation { r: self.r, window })
    }

    /// `(σ^{-1}, -σ^{-1}(z))`.
    pub fn inverse(&self) -> Self {
        let mut window = vec![Letter::plain(0); self.n()];
        for (i, l) in self.window.iter().enumerate() {
            window[l.base - 1] = Letter::new(i + 1, neg_mod(l.color, self.r));
        }
        ColoredPermutation { r: self.r, window }
    }

    /// Right multiplication by the transposition `(i^t j)`.
    ///
    /// For `i < j` the new window has `π_j = σ_i^{z_i+t}` and
    /// `π_i = σ_j^{z_j-t}`; for `i = j` the letter at `i` gains `t` colors.
    pub fn apply_transposition(&self, i: usize, t: usize, j: usize) -> Result<Self> {
        let n = self.n();
        if i == 0 || i > j || j > n {
            return Err(Error::IndexOutOfRange(format!(
                "transposition ({i}^{t} {j}) in G({}, {n})",
                self.r
            )));
        }
        if t >= self.r {
            return Err(Error::ColorOutOfRange { color: t, r: self.r });
        }
        let mut out = self.clone();
        out.transpose_in_place(i, t, j);
        Ok(out)
    }

    pub(crate) fn transpose_in_place(&mut self, i: usize, t: usize, j: usize) {
        let r = self.r;
        if i == j {
            self.window[i - 1] = self.window[i - 1].shift(t, r);
        } else {
            let a = self.window[i - 1];
            let b = self.window[j - 1];
            self.window[j - 1] = a.shift(t, r);
            self.window[i - 1] = b.shift(neg_mod(t, r), r);
        }
    }

    /// The group element `(i^t j)` itself.
    pub fn transposition(r: usize, n: usize, i: usize, t: usize, j: usize) -> Result<Self> {
        Self::identity(r, n).apply_transposition(i, t, j)
    }

    /// Cycle decomposition of the base permutation with each letter
    /// carrying its window color. Cycles are listed by increasing minimum.
    pub fn cycles(&self) -> Vec<ColoredCycle> {
        let n = self.n();
        // color carried by each value b: the color of the letter with base b
        let mut color_of = vec![0; n + 1];
        for l in &self.window {
            color_of[l.base] = l.color;
        }
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut entries = Vec::new();
            let mut b = start;
            while !seen[b] {
                seen[b] = true;
                entries.push(Letter::new(b, color_of[b]));
                b = self.window[b - 1].base;
            }
            out.push(ColoredCycle { r: self.r, entries });
        }
        out
    }

    /// Inverse of [`cycles`](Self::cycles).
    pub fn from_cycles(r: usize, n: usize, cycles: &[ColoredCycle]) -> Result<Self> {
        let mut window = vec![Letter::plain(0); n];
        let mut filled = vec![false; n + 1];
        for c in cycles {
            let k = c.entries.len();
            for (idx, l) in c.entries.iter().enumerate() {
                let next = c.entries[(idx + 1) % k];
                if l.base == 0 || l.base > n || filled[l.base] {
                    return Err(Error::InvalidCode(format!("bad cycle entry {l}")));
                }
                filled[l.base] = true;
                window[l.base - 1] = Letter::new(next.base, 0);
            }
        }
        for c in cycles {
            for l in &c.entries {
                let pos = window
                    .iter()
                    .position(|w| w.base == l.base)
                    .ok_or_else(|| Error::InvalidCode("cycles do not cover 1..=n".into()))?;
                window[pos].color = l.color;
            }
        }
        Self::new(r, window)
    }

    /// `π(n) ⋯ π(1)`.
    pub fn reverse(&self) -> Self {
        let mut window = self.window.clone();
        window.reverse();
        ColoredPermutation { r: self.r, window }
    }

    /// The Coxeter generator `s_0` (one extra color on the first letter) or
    /// `s_i` (swap positions `i`, `i+1`).
    pub fn generator(r: usize, n: usize, i: usize) -> Result<Self> {
        if i == 0 {
            if n == 0 {
                return Err(Error::IndexOutOfRange("s_0 in G(r, 0)".into()));
            }
            let mut id = Self::identity(r, n);
            id.window[0] = id.window[0].shift(1, r);
            Ok(id)
        } else if i < n {
            let mut id = Self::identity(r, n);
            id.window.swap(i - 1, i);
            Ok(id)
        } else {
            Err(Error::IndexOutOfRange(format!("s_{i} in G({r}, {n})")))
        }
    }
}

fn parse_entry(entry: &str, pos: usize, r: usize) -> Result<Letter> {
    if entry.is_empty() {
        return Err(Error::EmptyEntry(pos));
    }
    let bad = || Error::Malformed(entry.to_string());
    if let Some(rest) = entry.strip_prefix('-') {
        if r != 2 {
            return Err(Error::SignedShorthand(r));
        }
        let b = rest.parse::<usize>().map_err(|_| bad())?;
        return Ok(Letter::new(b, 1));
    }
    match entry.split_once('^') {
        Some((b, c)) => {
            let b = b.parse::<usize>().map_err(|_| bad())?;
            let c = c.parse::<usize>().map_err(|_| bad())?;
            if c >= r {
                return Err(Error::ColorOutOfRange { color: c, r });
            }
            Ok(Letter::new(b, c))
        }
        None => Ok(Letter::plain(entry.parse::<usize>().map_err(|_| bad())?)),
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.window.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl ColoredPermutation {
    /// Signed rendering (`-5,-1,-3,4,-2`) for `r = 2`, canonical otherwise.
    pub fn to_signed_string(&self) -> String {
        match self.to_signed() {
            Some(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            None => self.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PermRepr {
    r: usize,
    n: usize,
    window: Vec<[usize; 2]>,
}

impl From<ColoredPermutation> for PermRepr {
    fn from(p: ColoredPermutation) -> Self {
        PermRepr {
            r: p.r,
            n: p.n(),
            window: p.window.iter().map(|l| [l.base, l.color]).collect(),
        }
    }
}

impl TryFrom<PermRepr> for ColoredPermutation {
    type Error = Error;

    fn try_from(repr: PermRepr) -> Result<Self> {
        if repr.window.len() != repr.n {
            return Err(Error::SizeMismatch(repr.n, repr.window.len()));
        }
        let window = repr.window.iter().map(|&[b, c]| Letter::new(b, c)).collect();
        ColoredPermutation::new(repr.r, window)
    }
}

/// A colored cycle: entries in cyclic order, starting at the smallest base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredCycle {
    r: usize,
    entries: Vec<Letter>,
}

impl ColoredCycle {
    pub fn entries(&self) -> &[Letter] {
        &self.entries
    }

    pub fn min_base(&self) -> usize {
        self.entries[0].base
    }

    /// Sum of the entry colors modulo `r`.
    pub fn color_sum(&self) -> usize {
        self.entries.iter().map(|l| l.color).sum::<usize>() % self.r
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for ColoredCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

/// Every element of `G(r, n)`: base permutations in lexicographic order,
/// and for each of them all color vectors with the last color varying
/// fastest.
pub fn enumerate_group(r: usize, n: usize, cap: u64) -> Result<GroupElements> {
    if r == 0 {
        return Err(Error::ZeroColors);
    }
    let size = group_order(r, n);
    if size > cap as u128 {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(GroupElements {
        r,
        bases: (1..=n).collect(),
        colors: vec![0; n],
        done: false,
        remaining: size as usize,
    })
}

/// Iterator returned by [`enumerate_group`].
#[derive(Clone, Debug)]
pub struct GroupElements {
    r: usize,
    bases: Vec<usize>,
    colors: Vec<usize>,
    done: bool,
    remaining: usize,
}

impl Iterator for GroupElements {
    type Item = ColoredPermutation;

    fn next(&mut self) -> Option<ColoredPermutation> {
        if self.done {
            return None;
        }
        let window = self
            .bases
            .iter()
            .zip(&self.colors)
            .map(|(&b, &c)| Letter::new(b, c))
            .collect();
        let item = ColoredPermutation::from_window_unchecked(self.r, window);
        self.remaining -= 1;
        if !advance_odometer(&mut self.colors, self.r) && !next_permutation(&mut self.bases) {
            self.done = true;
        }
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for GroupElements {}

/// Increments a mixed-radix counter (last digit fastest). Returns false on wrap.
pub(crate) fn advance_odometer(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// Lexicographic successor. Returns false (leaving `a` sorted) at the end.
pub(crate) fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_entry(s.trim(), 1, usize::MAX)
    }
}

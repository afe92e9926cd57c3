//! Scalar and set-valued statistics computed from the window and cycle data.
//!
//! Set-valued statistics are returned as vectors of letters sorted by base.
//! All minimum and maximum scans compare bases only, with strict inequality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::codes;
use crate::error::{Error, Result};
use crate::perm::{ColoredPermutation, Letter};

/// Sort key realizing the linear order used by `inv`:
/// `n^{r-1} < … < n^1 < … < 1^{r-1} < … < 1^1 < 1 < 2 < … < n`.
fn order_key(l: Letter) -> (u8, isize, isize) {
    if l.color == 0 {
        (1, l.base as isize, 0)
    } else {
        (0, -(l.base as isize), -(l.color as isize))
    }
}

/// Compares two letters under the order used by `inv`.
pub fn letter_cmp(a: Letter, b: Letter) -> Ordering {
    order_key(a).cmp(&order_key(b))
}

/// Pairs of positions `i < j` with `π_j < π_i` in the colored order.
pub fn inversions(p: &ColoredPermutation) -> usize {
    let w = p.window();
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if letter_cmp(w[j], w[i]) == Ordering::Less {
                count += 1;
            }
        }
    }
    count
}

/// Coxeter length `inv(π) + Σ_{z_i > 0} (σ_i + z_i − 1)`.
pub fn length(p: &ColoredPermutation) -> usize {
    inversions(p)
        + p.window()
            .iter()
            .filter(|l| l.color > 0)
            .map(|l| l.base + l.color - 1)
            .sum::<usize>()
}

fn sorted(mut v: Vec<Letter>) -> Vec<Letter> {
    v.sort();
    v
}

/// Right-to-left minima of a word, as (1-based position, letter) pairs.
pub fn rtl_minima(word: &[Letter]) -> Vec<(usize, Letter)> {
    let mut out = Vec::new();
    let mut best = usize::MAX;
    for (idx, &l) in word.iter().enumerate().rev() {
        if l.base < best {
            best = l.base;
            out.push((idx + 1, l));
        }
    }
    out
}

/// Left-to-right minima of a word of letters, by strict base comparison.
pub fn ltr_minima(word: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::new();
    let mut best = usize::MAX;
    for &l in word {
        if l.base < best {
            best = l.base;
            out.push(l);
        }
    }
    sorted(out)
}

/// Left-to-right maxima of a word, as (1-based position, letter) pairs.
pub fn ltr_maxima(word: &[Letter]) -> Vec<(usize, Letter)> {
    let mut out = Vec::new();
    let mut best = 0;
    for (idx, &l) in word.iter().enumerate() {
        if l.base > best {
            best = l.base;
            out.push((idx + 1, l));
        }
    }
    out
}

/// Right-to-left minimum letters.
pub fn rmil(p: &ColoredPermutation) -> Vec<Letter> {
    sorted(rtl_minima(p.window()).into_iter().map(|(_, l)| l).collect())
}

/// Right-to-left minimum places, each carrying the color of its letter.
pub fn rmip(p: &ColoredPermutation) -> Vec<Letter> {
    sorted(
        rtl_minima(p.window())
            .into_iter()
            .map(|(i, l)| Letter::new(i, l.color))
            .collect(),
    )
}

/// Left-to-right minimum letters.
pub fn lmil(p: &ColoredPermutation) -> Vec<Letter> {
    ltr_minima(p.window())
}

/// Left-to-right maximum letters.
pub fn lmal(p: &ColoredPermutation) -> Vec<Letter> {
    sorted(ltr_maxima(p.window()).into_iter().map(|(_, l)| l).collect())
}

/// Left-to-right maximum places, each carrying the color of its letter.
pub fn lmap(p: &ColoredPermutation) -> Vec<Letter> {
    sorted(
        ltr_maxima(p.window())
            .into_iter()
            .map(|(i, l)| Letter::new(i, l.color))
            .collect(),
    )
}

/// One letter per colored cycle: the minimum base, colored by the color sum.
pub fn cyc(p: &ColoredPermutation) -> Vec<Letter> {
    sorted(
        p.cycles()
            .iter()
            .map(|c| Letter::new(c.min_base(), c.color_sum()))
            .collect(),
    )
}

/// The orbit `π(1), π²(1), …` of the letter `1` up to and including the
/// first return to `1^0`. Empty when `n = 0`.
pub fn lmic_word(p: &ColoredPermutation) -> Vec<Letter> {
    let mut out = Vec::new();
    if p.n() == 0 {
        return out;
    }
    let one = Letter::plain(1);
    let mut x = p.apply(one);
    loop {
        out.push(x);
        if x == one {
            break;
        }
        x = p.apply(x);
    }
    out
}

/// Left-to-right minima of [`lmic_word`].
pub fn lmic(p: &ColoredPermutation) -> Vec<Letter> {
    ltr_minima(&lmic_word(p))
}

/// Bases of the letters of `set` with color `t`.
pub fn refine(set: &[Letter], t: usize) -> Vec<usize> {
    let mut v: Vec<usize> = set.iter().filter(|l| l.color == t).map(|l| l.base).collect();
    v.sort_unstable();
    v
}

/// The seven set-valued statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetStat {
    Cyc,
    Rmil,
    Rmip,
    Lmal,
    Lmap,
    Lmil,
    Lmic,
}

impl SetStat {
    pub const ALL: [SetStat; 7] = [
        SetStat::Cyc,
        SetStat::Rmil,
        SetStat::Rmip,
        SetStat::Lmal,
        SetStat::Lmap,
        SetStat::Lmil,
        SetStat::Lmic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetStat::Cyc => "Cyc",
            SetStat::Rmil => "Rmil",
            SetStat::Rmip => "Rmip",
            SetStat::Lmal => "Lmal",
            SetStat::Lmap => "Lmap",
            SetStat::Lmil => "Lmil",
            SetStat::Lmic => "Lmic",
        }
    }

    pub fn compute(self, p: &ColoredPermutation) -> Vec<Letter> {
        match self {
            SetStat::Cyc => cyc(p),
            SetStat::Rmil => rmil(p),
            SetStat::Rmip => rmip(p),
            SetStat::Lmal => lmal(p),
            SetStat::Lmap => lmap(p),
            SetStat::Lmil => lmil(p),
            SetStat::Lmic => lmic(p),
        }
    }
}

impl fmt::Display for SetStat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetStat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SetStat::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownStatistic(s.to_string()))
    }
}

/// Every statistic of one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatBundle {
    pub r: usize,
    pub n: usize,
    pub ell: usize,
    pub inv: usize,
    pub sor: usize,
    pub refl_len: usize,
    pub sets: BTreeMap<SetStat, Vec<Letter>>,
}

impl StatBundle {
    pub fn set(&self, s: SetStat) -> &[Letter] {
        &self.sets[&s]
    }

    /// `Stat^t`: bases of the members of `Stat` with color `t`.
    pub fn refined(&self, s: SetStat, t: usize) -> Vec<usize> {
        refine(self.set(s), t)
    }

    pub fn count(&self, s: SetStat) -> usize {
        self.set(s).len()
    }

    pub fn refined_count(&self, s: SetStat, t: usize) -> usize {
        self.set(s).iter().filter(|l| l.color == t).count()
    }
}

/// Computes the full bundle.
pub fn set_stats(p: &ColoredPermutation) -> StatBundle {
    let sets = SetStat::ALL.iter().map(|&s| (s, s.compute(p))).collect();
    StatBundle {
        r: p.r(),
        n: p.n(),
        ell: length(p),
        inv: inversions(p),
        sor: codes::sorting_index(p),
        refl_len: codes::refl_length(p),
        sets,
    }
}

pub(crate) struct LetterList<'a>(pub &'a [Letter]);

impl Serialize for LetterList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|l| [l.base, l.color]))
    }
}

struct Refined<'a>(&'a StatBundle, SetStat);

impl Serialize for Refined<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.r))?;
        for t in 0..self.0.r {
            m.serialize_entry(&t.to_string(), &self.0.refined(self.1, t))?;
        }
        m.end()
    }
}

struct SetsView<'a>(&'a StatBundle);

impl Serialize for SetsView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(SetStat::ALL.len()))?;
        for st in SetStat::ALL {
            m.serialize_entry(st.name(), &LetterList(self.0.set(st)))?;
        }
        m.end()
    }
}

struct RefinedView<'a>(&'a StatBundle);

impl Serialize for RefinedView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(SetStat::ALL.len()))?;
        for st in SetStat::ALL {
            m.serialize_entry(st.name(), &Refined(self.0, st))?;
        }
        m.end()
    }
}

impl Serialize for StatBundle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(6))?;
        m.serialize_entry("ell", &self.ell)?;
        m.serialize_entry("sor", &self.sor)?;
        m.serialize_entry("refl_len", &self.refl_len)?;
        m.serialize_entry("inv", &self.inv)?;
        m.serialize_entry("sets", &SetsView(self))?;
        m.serialize_entry("refined", &RefinedView(self))?;
        m.end()
    }
}

/// The twisted balanced/unbalanced sets of an even-signed permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedDStats {
    #[serde(rename = "CycPlus")]
    pub cyc_plus_set: Vec<usize>,
    #[serde(rename = "CycMinus")]
    pub cyc_minus_set: Vec<usize>,
    #[serde(rename = "RmilPlus")]
    pub rmil_plus_set: Vec<usize>,
    #[serde(rename = "RmilMinus")]
    pub rmil_minus_set: Vec<usize>,
}

impl TwistedDStats {
    pub fn cyc_plus(&self) -> usize {
        self.cyc_plus_set.len()
    }
    pub fn cyc_minus(&self) -> usize {
        self.cyc_minus_set.len()
    }
    pub fn rmin_plus(&self) -> usize {
        self.rmil_plus_set.len()
    }
    pub fn rmin_minus(&self) -> usize {
        self.rmil_minus_set.len()
    }
}

pub(crate) fn require_even_signed(p: &ColoredPermutation) -> Result<()> {
    if p.is_even_signed() {
        Ok(())
    } else {
        Err(Error::NotEvenSigned(p.to_string()))
    }
}

fn plus_one(mut v: Vec<usize>, n: usize) -> Vec<usize> {
    if n >= 1 && !v.contains(&1) {
        v.push(1);
        v.sort_unstable();
    }
    v
}

fn minus_one(v: Vec<usize>) -> Vec<usize> {
    v.into_iter().filter(|&b| b != 1).collect()
}

/// `Cyc^0 ∪ {1}`, `Cyc^1 ∖ {1}`, `Rmil^0 ∪ {1}`, `Rmil^1 ∖ {1}`.
pub fn twisted_d_stats(p: &ColoredPermutation) -> Result<TwistedDStats> {
    require_even_signed(p)?;
    let c = cyc(p);
    let m = rmil(p);
    Ok(TwistedDStats {
        cyc_plus_set: plus_one(refine(&c, 0), p.n()),
        cyc_minus_set: minus_one(refine(&c, 1)),
        rmil_plus_set: plus_one(refine(&m, 0), p.n()),
        rmil_minus_set: minus_one(refine(&m, 1)),
    })
}

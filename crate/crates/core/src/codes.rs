//! Code bijections and the statistics read off from them.
//!
//! `CS(r, n)` is the set of words `c_1^{e_1} ⋯ c_n^{e_n}` with `1 ≤ c_i ≤ i`.
//! The A-code and B-code are bijections `G(r, n) → CS(r, n)`, and
//! `φ = B⁻¹ ∘ A`. On `D(n)` the C-code and D-code land in signed sequences
//! with `c_1 = 1` and `c_i ∈ [−i, i] ∖ {0}`, and `ψ = D⁻¹ ∘ C`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{neg_mod, ColoredPermutation, Letter};
use crate::stats::{self, require_even_signed};

/// Which code a word represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Lehmer,
    A,
    B,
    C,
    D,
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeKind::Lehmer => "lehmer",
            CodeKind::A => "a",
            CodeKind::B => "b",
            CodeKind::C => "c",
            CodeKind::D => "d",
        })
    }
}

/// A word in `CS(r, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code {
    r: usize,
    entries: Vec<Letter>,
}

impl Code {
    pub fn new(r: usize, entries: Vec<Letter>) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroColors);
        }
        for (idx, e) in entries.iter().enumerate() {
            let i = idx + 1;
            if e.base == 0 || e.base > i {
                return Err(Error::InvalidCode(format!("entry {i} has base {} outside 1..={i}", e.base)));
            }
            if e.color >= r {
                return Err(Error::ColorOutOfRange { color: e.color, r });
            }
        }
        Ok(Code { r, entries })
    }

    /// Parses `1^1,2^2,3` with the window entry grammar.
    pub fn parse(text: &str, r: usize) -> Result<Self> {
        let compact: String = text
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '(' && *c != ')')
            .collect();
        if compact.is_empty() {
            return Code::new(r, Vec::new());
        }
        let mut entries = Vec::new();
        for (idx, part) in compact.split(',').enumerate() {
            if part.is_empty() {
                return Err(Error::EmptyEntry(idx + 1));
            }
            let letter = match part.split_once('^') {
                Some((b, c)) => Letter::new(
                    b.parse().map_err(|_| Error::Malformed(part.into()))?,
                    c.parse().map_err(|_| Error::Malformed(part.into()))?,
                ),
                None => Letter::plain(part.parse().map_err(|_| Error::Malformed(part.into()))?),
            };
            entries.push(letter);
        }
        Code::new(r, entries)
    }

    pub fn identity(r: usize, n: usize) -> Self {
        Code { r, entries: (1..=n).map(Letter::plain).collect() }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Letter] {
        &self.entries
    }

    /// `Σ_i (i − c_i + χ(e_i > 0)·(2(c_i − 1) + e_i))`.
    pub fn weight(&self) -> usize {
        self.entries
            .iter()
            .enumerate()
            .map(|(idx, e)| {
                let i = idx + 1;
                let extra = if e.color > 0 { 2 * (e.base - 1) + e.color } else { 0 };
                i - e.base + extra
            })
            .sum()
    }

    /// Every word of `CS(r, n)`, last entry varying fastest.
    pub fn all(r: usize, n: usize) -> impl Iterator<Item = Code> {
        let radices: Vec<usize> = (1..=n).map(|i| i * r).collect();
        let mut digits = vec![0usize; n];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let entries = digits
                .iter()
                .map(|&d| Letter::new(d / r + 1, d % r))
                .collect();
            let out = Code { r, entries };
            let mut k = n;
            loop {
                if k == 0 {
                    done = true;
                    break;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < radices[k] {
                    break;
                }
                digits[k] = 0;
            }
            Some(out)
        })
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

/// A signed sequence in `SE(n, D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedCode {
    entries: Vec<i64>,
}

impl SignedCode {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        for (idx, &c) in entries.iter().enumerate() {
            let i = idx as i64 + 1;
            let ok = if i == 1 { c == 1 } else { c != 0 && c.abs() <= i };
            if !ok {
                return Err(Error::InvalidCode(format!("signed entry {i} = {c}")));
            }
        }
        Ok(SignedCode { entries })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let compact: String = text
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '(' && *c != ')')
            .collect();
        if compact.is_empty() {
            return SignedCode::new(Vec::new());
        }
        let mut entries = Vec::new();
        for (idx, part) in compact.split(',').enumerate() {
            if part.is_empty() {
                return Err(Error::EmptyEntry(idx + 1));
            }
            entries.push(part.parse().map_err(|_| Error::Malformed(part.into()))?);
        }
        SignedCode::new(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// The 2-colored word `(|c_i|, sign)`.
    pub fn as_colored(&self) -> Code {
        Code {
            r: 2,
            entries: self
                .entries
                .iter()
                .map(|&c| Letter::new(c.unsigned_abs() as usize, usize::from(c < 0)))
                .collect(),
        }
    }

    /// Every sequence of `SE(n, D)`.
    pub fn all(n: usize) -> impl Iterator<Item = SignedCode> {
        let choices: Vec<Vec<i64>> = (1..=n as i64)
            .map(|i| {
                if i == 1 {
                    vec![1]
                } else {
                    (-i..=i).filter(|&c| c != 0).collect()
                }
            })
            .collect();
        let mut digits = vec![0usize; n];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let entries = digits.iter().zip(&choices).map(|(&d, c)| c[d]).collect();
            let mut k = n;
            loop {
                if k == 0 {
                    done = true;
                    break;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < choices[k].len() {
                    break;
                }
                digits[k] = 0;
            }
            Some(SignedCode { entries })
        })
    }
}

impl fmt::Display for SignedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Serialize)]
struct CodeJson {
    kind: CodeKind,
    entries: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct SignedJson {
    kind: CodeKind,
    entries: Vec<i64>,
}

impl Code {
    /// JSON rendering `{"kind":…,"entries":[[c,e],…]}`.
    pub fn to_json(&self, kind: CodeKind) -> serde_json::Value {
        serde_json::to_value(CodeJson {
            kind,
            entries: self.entries.iter().map(|l| [l.base, l.color]).collect(),
        })
        .expect("code serializes")
    }
}

impl SignedCode {
    /// JSON rendering `{"kind":…,"entries":[c,…]}`.
    pub fn to_json(&self, kind: CodeKind) -> serde_json::Value {
        serde_json::to_value(SignedJson { kind, entries: self.entries.clone() })
            .expect("code serializes")
    }
}

// ---------------------------------------------------------------------------
// Lehmer, A-code, B-code

/// `h_i^{−z_i}` with `h_i = #{j ≤ i : σ_j ≤ σ_i}`.
pub fn lehmer(p: &ColoredPermutation) -> Code {
    let w = p.window();
    let entries = (0..w.len())
        .map(|i| {
            let h = w[..=i].iter().filter(|x| x.base <= w[i].base).count();
            Letter::new(h, neg_mod(w[i].color, p.r()))
        })
        .collect();
    Code { r: p.r(), entries }
}

/// A-code by peeling: for `i = n, …, 1`, the letter `i^t` at position `p`
/// records `a_i = p^t` and is deleted.
pub fn a_code(p: &ColoredPermutation) -> Code {
    let mut w = p.window().to_vec();
    let mut entries = vec![Letter::plain(0); w.len()];
    for i in (1..=w.len()).rev() {
        let pos = w.iter().position(|l| l.base == i).expect("letter present");
        entries[i - 1] = Letter::new(pos + 1, w[pos].color);
        w.remove(pos);
    }
    Code { r: p.r(), entries }
}

/// A-code as the Lehmer code of the inverse.
pub fn a_code_via_lehmer(p: &ColoredPermutation) -> Code {
    lehmer(&p.inverse())
}

/// Rebuilds a permutation by inserting `i^{e_i}` at position `c_i`.
pub fn a_code_inv(a: &Code) -> ColoredPermutation {
    let mut w: Vec<Letter> = Vec::with_capacity(a.n());
    for (idx, e) in a.entries.iter().enumerate() {
        w.insert(e.base - 1, Letter::new(idx + 1, e.color));
    }
    ColoredPermutation::from_window_unchecked(a.r, w)
}

/// B-code by peeling with transpositions: for `i = n, …, 1`, if base `i`
/// sits at position `p` with color `z`, record `b_i = p^t` with `t = −z`,
/// multiply by `(p^t i)` and drop the last (now fixed) letter.
pub fn b_code(p: &ColoredPermutation) -> Code {
    let r = p.r();
    let mut cur = p.clone();
    let mut entries = vec![Letter::plain(0); p.n()];
    for i in (1..=p.n()).rev() {
        let pos = cur.position_of(i);
        let t = neg_mod(cur.at(pos).color, r);
        entries[i - 1] = Letter::new(pos, t);
        cur.transpose_in_place(pos, t, i);
        cur = truncate(&cur, i - 1);
    }
    Code { r, entries }
}

fn truncate(p: &ColoredPermutation, len: usize) -> ColoredPermutation {
    ColoredPermutation::from_window_unchecked(p.r(), p.window()[..len].to_vec())
}

/// B-code from the orbit definition `b_i = π^{−k_i}(i)`, where `k_i ≥ 1` is
/// least with base at most `i`.
pub fn b_code_via_orbit(p: &ColoredPermutation) -> Code {
    let inv = p.inverse();
    let entries = (1..=p.n())
        .map(|i| {
            let mut x = Letter::plain(i);
            loop {
                x = inv.apply(x);
                if x.base <= i {
                    break x;
                }
            }
        })
        .collect();
    Code { r: p.r(), entries }
}

/// Inverse of [`b_code`]: at step `i` extend by the fixed point `i`, then
/// multiply by `(c_i^{e_i} i)` when `c_i < i` or by `(i^{−e_i} i)` when
/// `c_i = i`.
pub fn b_code_inv(b: &Code) -> ColoredPermutation {
    let r = b.r;
    let mut w: Vec<Letter> = Vec::with_capacity(b.n());
    for (idx, e) in b.entries.iter().enumerate() {
        let i = idx + 1;
        w.push(Letter::plain(i));
        let mut cur = ColoredPermutation::from_window_unchecked(r, w);
        if e.base < i {
            cur.transpose_in_place(e.base, e.color, i);
        } else {
            cur.transpose_in_place(i, neg_mod(e.color, r), i);
        }
        w = cur.window().to_vec();
    }
    ColoredPermutation::from_window_unchecked(r, w)
}

/// Sorting index, read off the B-code.
pub fn sorting_index(p: &ColoredPermutation) -> usize {
    b_code(p).weight()
}

/// Length from an A-code.
pub fn length_from_acode(a: &Code) -> usize {
    a.weight()
}

/// `ℓ′(π) = n − #{i : b_i = i^0}`.
pub fn refl_length(p: &ColoredPermutation) -> usize {
    let b = b_code(p);
    p.n()
        - b.entries
            .iter()
            .enumerate()
            .filter(|(idx, e)| e.base == idx + 1 && e.color == 0)
            .count()
}

/// `φ = B⁻¹ ∘ A`.
pub fn phi(p: &ColoredPermutation) -> ColoredPermutation {
    b_code_inv(&a_code(p))
}

/// `φ⁻¹ = A⁻¹ ∘ B`.
pub fn phi_inverse(p: &ColoredPermutation) -> ColoredPermutation {
    a_code_inv(&b_code(p))
}

// ---------------------------------------------------------------------------
// Code statistics

/// `Max`, `Min`, `Rmil`, `Rmip` of a code word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeStats {
    #[serde(rename = "Max", serialize_with = "ser_letters")]
    pub max: Vec<Letter>,
    #[serde(rename = "Min", serialize_with = "ser_letters")]
    pub min: Vec<Letter>,
    #[serde(rename = "Rmil", serialize_with = "ser_letters")]
    pub rmil: Vec<Letter>,
    #[serde(rename = "Rmip", serialize_with = "ser_letters")]
    pub rmip: Vec<Letter>,
}

fn ser_letters<S: serde::Serializer>(v: &[Letter], s: S) -> std::result::Result<S::Ok, S::Error> {
    stats::LetterList(v).serialize(s)
}

/// `Max = {i^{e_i} : c_i = i}`, `Min = {i^{e_i} : c_i = 1}`, and the
/// right-to-left minimum letters and places of the word.
pub fn code_stats(a: &Code) -> CodeStats {
    let mut max = Vec::new();
    let mut min = Vec::new();
    for (idx, e) in a.entries.iter().enumerate() {
        let i = idx + 1;
        if e.base == i {
            max.push(Letter::new(i, e.color));
        }
        if e.base == 1 {
            min.push(Letter::new(i, e.color));
        }
    }
    let mut rmil = Vec::new();
    let mut rmip = Vec::new();
    let mut best = usize::MAX;
    for (idx, e) in a.entries.iter().enumerate().rev() {
        if e.base < best {
            best = e.base;
            rmil.push(*e);
            rmip.push(Letter::new(idx + 1, e.color));
        }
    }
    rmil.sort();
    rmip.sort();
    CodeStats { max, min, rmil, rmip }
}

// ---------------------------------------------------------------------------
// Type D

/// C-code: peel `i = n, …, 2`; a positive `i` at `p` records `p`, a negative
/// `i` at `p` records `−p` and flips the sign of the new first letter.
pub fn c_code(p: &ColoredPermutation) -> Result<SignedCode> {
    require_even_signed(p)?;
    let mut w = p.to_signed().expect("r = 2");
    let n = w.len();
    let mut entries = vec![0i64; n];
    for i in (2..=n).rev() {
        let pos = w.iter().position(|v| v.unsigned_abs() as usize == i).expect("present");
        let neg = w[pos] < 0;
        w.remove(pos);
        if neg {
            entries[i - 1] = -(pos as i64 + 1);
            w[0] = -w[0];
        } else {
            entries[i - 1] = pos as i64 + 1;
        }
    }
    if n >= 1 {
        entries[0] = w[0];
    }
    SignedCode::new(entries)
}

/// Inverse of [`c_code`].
pub fn c_code_inv(c: &SignedCode) -> ColoredPermutation {
    let mut w: Vec<i64> = Vec::with_capacity(c.n());
    for (idx, &e) in c.entries.iter().enumerate() {
        let i = idx as i64 + 1;
        if idx == 0 {
            w.push(1);
        } else if e > 0 {
            w.insert(e as usize - 1, i);
        } else {
            w[0] = -w[0];
            w.insert(e.unsigned_abs() as usize - 1, -i);
        }
    }
    ColoredPermutation::from_signed(&w).expect("valid signed window")
}

/// Right multiplication by `t^D_{\bar p i}`: position `i` receives `−π_p`
/// and position `p` receives `−π_i`. For `p = i` the signs at positions
/// `1` and `i` flip.
fn apply_neg_transposition(w: &mut [i64], p: usize, i: usize) {
    if p < i {
        let (a, b) = (w[p - 1], w[i - 1]);
        w[i - 1] = -a;
        w[p - 1] = -b;
    } else {
        w[0] = -w[0];
        w[i - 1] = -w[i - 1];
    }
}

/// D-code: peel `i = n, …, 2` with `t^D_{p i}` (record `p`) or
/// `t^D_{\bar p i}` (record `−p`), then truncate.
pub fn d_code(p: &ColoredPermutation) -> Result<SignedCode> {
    require_even_signed(p)?;
    let mut w = p.to_signed().expect("r = 2");
    let n = w.len();
    let mut entries = vec![0i64; n];
    for i in (2..=n).rev() {
        let pos = w.iter().position(|v| v.unsigned_abs() as usize == i).expect("present") + 1;
        if w[pos - 1] > 0 {
            entries[i - 1] = pos as i64;
            w.swap(pos - 1, i - 1);
        } else {
            entries[i - 1] = -(pos as i64);
            apply_neg_transposition(&mut w, pos, i);
        }
        w.truncate(i - 1);
    }
    if n >= 1 {
        entries[0] = w[0];
    }
    SignedCode::new(entries)
}

/// Inverse of [`d_code`].
pub fn d_code_inv(d: &SignedCode) -> ColoredPermutation {
    let mut w: Vec<i64> = Vec::with_capacity(d.n());
    for (idx, &e) in d.entries.iter().enumerate() {
        let i = idx + 1;
        w.push(i as i64);
        if idx == 0 {
            continue;
        }
        let p = e.unsigned_abs() as usize;
        if e > 0 {
            w.swap(p - 1, i - 1);
        } else {
            apply_neg_transposition(&mut w, p, i);
        }
    }
    ColoredPermutation::from_signed(&w).expect("valid signed window")
}

/// `ψ = D⁻¹ ∘ C`.
pub fn psi(p: &ColoredPermutation) -> Result<ColoredPermutation> {
    Ok(d_code_inv(&c_code(p)?))
}

/// `ψ⁻¹ = C⁻¹ ∘ D`.
pub fn psi_inverse(p: &ColoredPermutation) -> Result<ColoredPermutation> {
    Ok(c_code_inv(&d_code(p)?))
}

/// `Σ_{d_j ≠ j} (j − d_j − 2·[d_j < 0])` over the D-code.
pub fn sor_d(p: &ColoredPermutation) -> Result<usize> {
    let d = d_code(p)?;
    Ok(d.entries
        .iter()
        .enumerate()
        .filter(|(idx, &e)| e != *idx as i64 + 1)
        .map(|(idx, &e)| {
            let j = idx as i64 + 1;
            (j - e - if e < 0 { 2 } else { 0 }) as usize
        })
        .sum())
}

/// `n − #{i : d_i = i}`.
pub fn ell_tilde_d(p: &ColoredPermutation) -> Result<usize> {
    let d = d_code(p)?;
    let fixed = d
        .entries
        .iter()
        .enumerate()
        .filter(|(idx, &e)| e == *idx as i64 + 1)
        .count();
    Ok(p.n() - fixed)
}

/// Candidate closed form for the type-D Coxeter length:
/// `inv(π) + #{i < j : π_i + π_j < 0}` on the signed window. The verify
/// harness checks it against breadth-first search.
pub fn length_d(p: &ColoredPermutation) -> Result<usize> {
    require_even_signed(p)?;
    let w = p.to_signed().expect("r = 2");
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                count += 1;
            }
            if w[i] + w[j] < 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_group;
    use std::collections::HashSet;

    fn p(s: &str, r: usize) -> ColoredPermutation {
        ColoredPermutation::parse(s, r).unwrap()
    }

    const P3: &str = "5^1,6^2,3^1,1^1,4,2^2,7,9,8^2";

    #[test]
    fn a_code_examples() {
        let p3 = p(P3, 3);
        assert_eq!(a_code(&p3).to_string(), "(1^1,2^2,1^1,3,1^1,2^2,7,8^2,8)");
        assert_eq!(a_code_via_lehmer(&p3), a_code(&p3));
        assert_eq!(length_from_acode(&a_code(&p3)), 39);
        assert_eq!(stats::length(&p3), 39);
        assert_eq!(lehmer(&p("3^2,2^1,4,1^1", 3)).to_string(), "(1^1,1^2,3,1^2)");
        assert_eq!(a_code(&p("1,2^1", 3)).to_string(), "(1,2^1)");
        assert_eq!(length_from_acode(&a_code(&p("1,2^1", 3))), 3);
        assert_eq!(a_code_inv(&a_code(&p3)), p3);
    }

    #[test]
    fn b_code_examples() {
        let p3 = p(P3, 3);
        assert_eq!(b_code(&p3).to_string(), "(1^1,2^2,3^2,1^2,1^2,2^1,7,8^1,8)");
        assert_eq!(b_code_via_orbit(&p3), b_code(&p3));
        let p2 = p("2^1,4^2,1,3^1,5^1", 3);
        assert_eq!(b_code(&p2).to_string(), "(1^2,1^2,2,2^1,5^2)");
        assert_eq!(sorting_index(&p2), 21);
        assert_eq!(sorting_index(&p("1,2^2", 3)), 3);
        assert_eq!(b_code_inv(&b_code(&p3)), p3);
        assert_eq!(b_code_inv(&b_code(&p2)), p2);
    }

    #[test]
    fn refl_length_examples() {
        assert_eq!(refl_length(&p("-2,-1", 2)), 1);
        assert_eq!(b_code(&p("-2,-1", 2)).to_string(), "(1,1^1)");
        assert_eq!(refl_length(&p(P3, 3)), 8);
        assert_eq!(refl_length(&ColoredPermutation::identity(3, 4)), 0);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&p("1,2^1", 3)), p("1,2^2", 3));
        assert!(phi(&ColoredPermutation::identity(3, 4)).is_identity());
        let images: HashSet<_> = enumerate_group(3, 3, 1000).unwrap().map(|x| phi(&x)).collect();
        assert_eq!(images.len(), 162);
    }

    #[test]
    fn roundtrips_exhaustive_small() {
        for r in 1..=3 {
            for n in 0..=3 {
                for x in enumerate_group(r, n, 10_000).unwrap() {
                    assert_eq!(a_code_inv(&a_code(&x)), x);
                    assert_eq!(b_code_inv(&b_code(&x)), x);
                    assert_eq!(phi_inverse(&phi(&x)), x);
                }
            }
        }
    }

    #[test]
    fn code_stats_examples() {
        let cs = code_stats(&a_code(&p(P3, 3)));
        let show = |v: &[Letter]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(show(&cs.max), "1^1,2^2,7,8^2");
        assert_eq!(show(&cs.min), "1^1,3^1,5^1");
        assert_eq!(show(&cs.rmil), "1^1,2^2,7,8");
        assert_eq!(show(&cs.rmip), "5^1,6^2,7,9");
        let one = code_stats(&Code::identity(2, 1));
        assert_eq!(one.max, vec![Letter::plain(1)]);
        assert_eq!(one.min, one.rmil);
        assert_eq!(one.rmip, one.max);
    }

    #[test]
    fn code_validation() {
        assert!(Code::parse("1,3", 2).is_err());
        assert!(Code::parse("1^2", 2).is_err());
        assert!(Code::parse("(1^1,2^2,3)", 3).is_ok());
        assert_eq!(Code::all(3, 3).count(), 162);
        assert!(SignedCode::new(vec![1, 0]).is_err());
        assert!(SignedCode::new(vec![-1]).is_err());
        assert!(SignedCode::new(vec![1, -3]).is_err());
        assert_eq!(SignedCode::all(4).count(), 192);
    }

    #[test]
    fn type_d_codes() {
        let p4 = p("-3,2,4,-5,1", 2);
        let p5 = p("-5,-2,-1,-3,4", 2);
        let p6 = p("-5,-1,-3,4,-2", 2);
        assert_eq!(c_code(&p5).unwrap().entries(), &[1, -1, -3, 4, -1]);
        assert_eq!(d_code(&p6).unwrap().entries(), &[1, -1, -3, 4, -1]);
        assert_eq!(d_code(&p4).unwrap().entries(), &[1, 2, -1, 3, -4]);
        assert_eq!(psi(&p5).unwrap(), p6);
        assert_eq!(sor_d(&p4).unwrap(), 10);
        assert_eq!(sor_d(&p6).unwrap(), 9);
        assert_eq!(ell_tilde_d(&p4).unwrap(), 3);
        assert_eq!(length_d(&p4).unwrap(), 11);
        assert_eq!(length_d(&p("-2,-1", 2)).unwrap(), 1);
        let id = ColoredPermutation::identity(2, 4);
        assert_eq!(c_code(&id).unwrap().entries(), &[1, 2, 3, 4]);
        assert_eq!(sor_d(&id).unwrap(), 0);
        assert!(c_code(&p("-1,2", 2)).is_err());
    }

    #[test]
    fn type_d_roundtrips() {
        for x in enumerate_group(2, 4, 1000).unwrap().filter(|x| x.is_even_signed()) {
            assert_eq!(c_code_inv(&c_code(&x).unwrap()), x);
            assert_eq!(d_code_inv(&d_code(&x).unwrap()), x);
            assert_eq!(psi_inverse(&psi(&x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn json_rendering() {
        let js = a_code(&p("1,2^1", 3)).to_json(CodeKind::A);
        assert_eq!(js.to_string(), r#"{"entries":[[1,0],[2,1]],"kind":"a"}"#);
        let js = SignedCode::new(vec![1, -1]).unwrap().to_json(CodeKind::C);
        assert_eq!(js["entries"], serde_json::json!([1, -1]));
    }
}

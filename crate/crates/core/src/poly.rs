//! Exact sparse multivariate polynomials over arbitrary-precision integers,
//! the closed-form generating-function products, and enumerative generating
//! functions built from statistics.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::codes;
use crate::error::{Error, Result};
use crate::ferrers::FerrersBound;
use crate::perm::{neg_mod, ColoredPermutation, Letter};
use crate::stats::{self, SetStat};

/// A variable. All identities share one universe, so polynomials from
/// different builders can always be compared and combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    X { t: usize, i: usize },
    Y { t: usize, i: usize },
    XAgg(usize),
    YAgg(usize),
    U,
    T(usize),
    S(usize),
    TAgg,
    SAgg,
}

impl Var {
    /// Name used in the text format, e.g. `x2_1`.
    pub fn name(&self) -> String {
        match *self {
            Var::Q => "q".into(),
            Var::X { t, i } => format!("x{t}_{i}"),
            Var::Y { t, i } => format!("y{t}_{i}"),
            Var::XAgg(t) => format!("x{t}"),
            Var::YAgg(t) => format!("y{t}"),
            Var::U => "u".into(),
            Var::T(i) => format!("t_{i}"),
            Var::S(i) => format!("s_{i}"),
            Var::TAgg => "t".into(),
            Var::SAgg => "s".into(),
        }
    }

    /// Key used in the JSON format, e.g. `x:2:1`.
    pub fn json_key(&self) -> String {
        match *self {
            Var::Q => "q".into(),
            Var::X { t, i } => format!("x:{t}:{i}"),
            Var::Y { t, i } => format!("y:{t}:{i}"),
            Var::XAgg(t) => format!("x:{t}"),
            Var::YAgg(t) => format!("y:{t}"),
            Var::U => "u".into(),
            Var::T(i) => format!("t:{i}"),
            Var::S(i) => format!("s:{i}"),
            Var::TAgg => "t".into(),
            Var::SAgg => "s".into(),
        }
    }

    /// Drops the position index: `x_{t,i} ↦ x_t`, `t_i ↦ t`, and so on.
    pub fn aggregate(self) -> Var {
        match self {
            Var::X { t, .. } => Var::XAgg(t),
            Var::Y { t, .. } => Var::YAgg(t),
            Var::T(_) => Var::TAgg,
            Var::S(_) => Var::SAgg,
            v => v,
        }
    }
}

/// A power product of variables, kept sorted with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn power(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from factors, merging repeated variables.
    pub fn from_factors<I: IntoIterator<Item = (Var, u32)>>(it: I) -> Self {
        let mut m: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in it {
            if e > 0 {
                *m.entry(v).or_insert(0) += e;
            }
        }
        Monomial(m.into_iter().collect())
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Renames or deletes variables; deleting a variable sets it to 1.
    pub fn map_vars(&self, f: impl Fn(Var) -> Option<Var>) -> Monomial {
        Monomial::from_factors(self.0.iter().filter_map(|&(v, e)| f(v).map(|w| (w, e))))
    }

    /// Factors sorted by variable name, as used for printing.
    fn named(&self) -> Vec<(String, u32)> {
        let mut v: Vec<(String, u32)> = self.0.iter().map(|(v, e)| (v.name(), *e)).collect();
        v.sort();
        v
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .named()
            .into_iter()
            .map(|(n, e)| if e == 1 { n } else { format!("{n}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A sparse polynomial in canonical form: no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MVPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MVPoly {
    pub fn zero() -> Self {
        MVPoly::default()
    }

    pub fn one() -> Self {
        MVPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        MVPoly::term(Monomial::one(), BigInt::from(c))
    }

    pub fn var(v: Var) -> Self {
        MVPoly::term(Monomial::var(v), BigInt::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        MVPoly::term(m, BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut p = MVPoly::zero();
        p.add_term(m, c);
        p
    }

    /// `c_0 + c_1 v + c_2 v² + …`.
    pub fn from_univariate<C: Into<BigInt> + Clone>(v: Var, coeffs: &[C]) -> Self {
        let mut p = MVPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::power(v, k as u32), c.clone().into());
        }
        p
    }

    /// Adds `c · m` in place, keeping the canonical form.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn pow(&self, k: u32) -> MVPoly {
        let mut acc = MVPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Renames or deletes variables (deletion substitutes 1).
    pub fn map_vars(&self, f: impl Fn(Var) -> Option<Var>) -> MVPoly {
        let mut out = MVPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.map_vars(&f), c.clone());
        }
        out
    }

    /// Replaces every indexed variable by its aggregate.
    pub fn aggregate(&self) -> MVPoly {
        self.map_vars(|v| Some(v.aggregate()))
    }

    /// Sets every variable rejected by `keep` to 1.
    pub fn retain_vars(&self, keep: impl Fn(Var) -> bool) -> MVPoly {
        self.map_vars(|v| keep(v).then_some(v))
    }

    /// The coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, k: u32) -> MVPoly {
        let mut out = MVPoly::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) == k {
                out.add_term(m.map_vars(|w| (w != v).then_some(w)), c.clone());
            }
        }
        out
    }

    /// Coefficients of a polynomial in the single variable `v`, or `None` if
    /// another variable occurs.
    pub fn univariate(&self, v: Var) -> Option<Vec<BigInt>> {
        let mut out: Vec<BigInt> = Vec::new();
        for (m, c) in &self.terms {
            if m.factors().iter().any(|(w, _)| *w != v) {
                return None;
            }
            let k = m.exponent(v) as usize;
            if out.len() <= k {
                out.resize(k + 1, BigInt::zero());
            }
            out[k] += c;
        }
        Some(out)
    }

    fn display_order(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(m, _)| (m.degree(), m.named()));
        v
    }

    /// `[{"coeff":"…","exps":{"q":2,"x:1:1":1}},…]` in display order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.display_order()
                .into_iter()
                .map(|(m, c)| {
                    let exps: serde_json::Map<String, Value> = m
                        .factors()
                        .iter()
                        .map(|(v, e)| (v.json_key(), json!(e)))
                        .collect();
                    json!({"coeff": c.to_string(), "exps": exps})
                })
                .collect(),
        )
    }
}

impl fmt::Display for MVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&MVPoly> for MVPoly {
    fn add_assign(&mut self, rhs: &MVPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for &MVPoly {
    type Output = MVPoly;
    fn add(self, rhs: &MVPoly) -> MVPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MVPoly {
    type Output = MVPoly;
    fn add(mut self, rhs: MVPoly) -> MVPoly {
        self += &rhs;
        self
    }
}

impl Neg for &MVPoly {
    type Output = MVPoly;
    fn neg(self) -> MVPoly {
        MVPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &MVPoly {
    type Output = MVPoly;
    fn sub(self, rhs: &MVPoly) -> MVPoly {
        self + &(-rhs)
    }
}

impl Mul for &MVPoly {
    type Output = MVPoly;
    fn mul(self, rhs: &MVPoly) -> MVPoly {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        let mut out = MVPoly::zero();
        for (m, c) in acc {
            out.add_term(m, c);
        }
        out
    }
}

impl Mul for MVPoly {
    type Output = MVPoly;
    fn mul(self, rhs: MVPoly) -> MVPoly {
        &self * &rhs
    }
}

/// Product of an iterator of polynomials.
pub fn product<I: IntoIterator<Item = MVPoly>>(it: I) -> MVPoly {
    it.into_iter().fold(MVPoly::one(), |acc, p| &acc * &p)
}

fn q_pow(k: usize) -> MVPoly {
    MVPoly::monomial(Monomial::power(Var::Q, k as u32))
}

fn mono(factors: &[(Var, u32)]) -> Monomial {
    Monomial::from_factors(factors.iter().copied())
}

/// `[i]_q = 1 + q + … + q^{i−1}` (zero for `i = 0`).
pub fn q_int(i: usize) -> MVPoly {
    MVPoly::from_univariate(Var::Q, &vec![1i64; i])
}

/// `[n]_q! = [1]_q [2]_q ⋯ [n]_q`.
pub fn q_factorial(n: usize) -> MVPoly {
    product((1..=n).map(q_int))
}

/// `[n]_q! · ∏_{i=1}^n (1 + q^i [r−1]_q)`.
pub fn gf_length_dist(r: usize, n: usize) -> MVPoly {
    let extra = product((1..=n).map(|i| &MVPoly::one() + &(&q_pow(i) * &q_int(r - 1))));
    &q_factorial(n) * &extra
}

/// `∏_{i=1}^n (t + ri − 1)` in the aggregated variable `t`.
pub fn gf_cyc0_dist(r: usize, n: usize) -> MVPoly {
    product((1..=n).map(|i| &MVPoly::var(Var::TAgg) + &MVPoly::constant((r * i - 1) as i64)))
}

/// `∏_{i=1}^n (1 + (ri − 1) t)` in the aggregated variable `t`.
pub fn gf_ellprime_dist(r: usize, n: usize) -> MVPoly {
    product((1..=n).map(|i| {
        MVPoly::from_univariate(Var::TAgg, &[1i64, (r * i - 1) as i64])
    }))
}

/// The first factor `Σ_t x_{t,1} y_{t,1} q^{(r−t) mod r}`.
fn main_b_first_factor(r: usize) -> MVPoly {
    let mut out = MVPoly::zero();
    for t in 0..r {
        out.add_term(
            mono(&[
                (Var::X { t, i: 1 }, 1),
                (Var::Y { t, i: 1 }, 1),
                (Var::Q, neg_mod(t, r) as u32),
            ]),
            BigInt::one(),
        );
    }
    out
}

/// Closed-form product for `G(r, n, f)` from the factor expansion:
/// `Factor_j = x_{0,j} + Σ_{h_j ≤ i < j} w_i q^{j−i}
///   + Σ_{t ≥ 1} [x_{r−t,j} q^{2j+t−2} + Σ_{h_j ≤ i < j} w'_{i,t} q^{j+i+t−2}]`
/// where `w_i = y_{0,j}` and `w'_{i,t} = y_{r−t,j}` when `i = 1`, else 1.
pub fn gf_main_b(r: usize, f: &FerrersBound) -> MVPoly {
    let n = f.n();
    if n == 0 {
        return MVPoly::one();
    }
    let h = f.profile();
    let mut factors = vec![main_b_first_factor(r)];
    for j in 2..=n {
        let hj = h.get(j);
        let mut fac = MVPoly::var(Var::X { t: 0, i: j });
        for i in hj..j {
            let m = if i == 1 {
                mono(&[(Var::Y { t: 0, i: j }, 1), (Var::Q, (j - i) as u32)])
            } else {
                Monomial::power(Var::Q, (j - i) as u32)
            };
            fac.add_term(m, BigInt::one());
        }
        for t in 1..r {
            let c = r - t;
            fac.add_term(
                mono(&[(Var::X { t: c, i: j }, 1), (Var::Q, (2 * j + t - 2) as u32)]),
                BigInt::one(),
            );
            for i in hj..j {
                let e = (j + i + t - 2) as u32;
                let m = if i == 1 {
                    mono(&[(Var::Y { t: c, i: j }, 1), (Var::Q, e)])
                } else {
                    Monomial::power(Var::Q, e)
                };
                fac.add_term(m, BigInt::one());
            }
        }
        factors.push(fac);
    }
    product(factors)
}

/// Aggregated version of [`gf_main_b`] (`x_{t,i} ↦ x_t`, `y_{t,i} ↦ y_t`).
pub fn gf_cor_restricted(r: usize, f: &FerrersBound) -> MVPoly {
    gf_main_b(r, f).aggregate()
}

/// Full-board product in aggregated variables, factor by factor:
/// `Σ_t x_t y_t q^{(r−t) mod r}` for `j = 1`, and for `j ≥ 2`
/// `x_0 + y_0 q^{j−1} + Σ_{t ≥ 1} q^{j+r−t−1}(x_t q^{j−1} + y_t)
///   + q[j−2]_q (1 + q^j [r−1]_q)`.
pub fn gf_full_board(r: usize, n: usize) -> MVPoly {
    if n == 0 {
        return MVPoly::one();
    }
    let mut factors = vec![main_b_first_factor(r).aggregate()];
    for j in 2..=n {
        let mut fac = MVPoly::var(Var::XAgg(0));
        fac.add_term(mono(&[(Var::YAgg(0), 1), (Var::Q, (j - 1) as u32)]), BigInt::one());
        for t in 1..r {
            let base = (j + r - t - 1) as u32;
            fac.add_term(mono(&[(Var::XAgg(t), 1), (Var::Q, base + (j - 1) as u32)]), BigInt::one());
            fac.add_term(mono(&[(Var::YAgg(t), 1), (Var::Q, base)]), BigInt::one());
        }
        let tail = &(&q_pow(1) * &q_int(j - 2))
            * &(&MVPoly::one() + &(&q_pow(j) * &q_int(r - 1)));
        fac += &tail;
        factors.push(fac);
    }
    product(factors)
}

/// Closed-form product for `D(n, f)` from the factor expansion:
/// `t_1 u · ∏_{j ≥ 2} (t_j + Σ_{h_j ≤ i < j} w_i q^{j−i}
///   + Σ_{h_j ≤ i < j} w_i q^{j+i−2} + s_j q^{2j−2})` with `w_1 = u`.
pub fn gf_d(f: &FerrersBound) -> MVPoly {
    let n = f.n();
    if n == 0 {
        return MVPoly::one();
    }
    let h = f.profile();
    let mut factors = vec![MVPoly::monomial(mono(&[(Var::T(1), 1), (Var::U, 1)]))];
    for j in 2..=n {
        let hj = h.get(j);
        let mut fac = MVPoly::var(Var::T(j));
        for i in hj..j {
            for e in [j - i, j + i - 2] {
                let m = if i == 1 {
                    mono(&[(Var::U, 1), (Var::Q, e as u32)])
                } else {
                    Monomial::power(Var::Q, e as u32)
                };
                fac.add_term(m, BigInt::one());
            }
        }
        fac.add_term(mono(&[(Var::S(j), 1), (Var::Q, (2 * j - 2) as u32)]), BigInt::one());
        factors.push(fac);
    }
    product(factors)
}

/// Aggregated version of [`gf_d`] (`t_i ↦ t`, `s_i ↦ s`).
pub fn gf_cor_d(f: &FerrersBound) -> MVPoly {
    gf_d(f).aggregate()
}

/// `t ∏_{i=2}^n (t + 2i − 1)`.
pub fn gf_cycplus_dist_d(n: usize) -> MVPoly {
    if n == 0 {
        return MVPoly::one();
    }
    let t = MVPoly::var(Var::TAgg);
    &t * &product((2..=n).map(|i| &t + &MVPoly::constant(2 * i as i64 - 1)))
}

/// `∏_{i=2}^n (1 + (2i − 1) t)`.
pub fn gf_ellprime_dist_d(n: usize) -> MVPoly {
    product((2..=n).map(|i| MVPoly::from_univariate(Var::TAgg, &[1i64, 2 * i as i64 - 1])))
}

// ---------------------------------------------------------------------------
// Enumerative generating functions

/// Scalar statistics usable as exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarStat {
    Ell,
    Sor,
    Inv,
    ReflLen,
    /// Size of a set statistic.
    Count(SetStat),
    /// Size of one color class of a set statistic.
    CountColor(SetStat, usize),
    SorD,
    EllD,
    EllTildeD,
    CycPlus,
    CycMinus,
    RminPlus,
    RminMinus,
}

impl FromStr for ScalarStat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let simple = match lower.as_str() {
            "ell" | "length" => Some(ScalarStat::Ell),
            "sor" => Some(ScalarStat::Sor),
            "inv" => Some(ScalarStat::Inv),
            "refl_len" | "ellprime" => Some(ScalarStat::ReflLen),
            "sor_d" => Some(ScalarStat::SorD),
            "ell_d" => Some(ScalarStat::EllD),
            "ell_tilde_d" => Some(ScalarStat::EllTildeD),
            "cyc_plus" => Some(ScalarStat::CycPlus),
            "cyc_minus" => Some(ScalarStat::CycMinus),
            "rmin_plus" => Some(ScalarStat::RminPlus),
            "rmin_minus" => Some(ScalarStat::RminMinus),
            _ => None,
        };
        if let Some(v) = simple {
            return Ok(v);
        }
        // counts: cyc, rmin, rmip, lmax, lmap, lmin, lmic, optionally with a color suffix
        let (head, color) = match lower.find(|c: char| c.is_ascii_digit()) {
            Some(k) => (
                &lower[..k],
                Some(lower[k..].parse::<usize>().map_err(|_| Error::UnknownStatistic(s.into()))?),
            ),
            None => (lower.as_str(), None),
        };
        let set = match head {
            "cyc" => SetStat::Cyc,
            "rmin" | "rmil" => SetStat::Rmil,
            "rmip" => SetStat::Rmip,
            "lmax" | "lmal" => SetStat::Lmal,
            "lmap" => SetStat::Lmap,
            "lmin" | "lmil" => SetStat::Lmil,
            "lmic" => SetStat::Lmic,
            _ => return Err(Error::UnknownStatistic(s.into())),
        };
        Ok(match color {
            Some(t) => ScalarStat::CountColor(set, t),
            None => ScalarStat::Count(set),
        })
    }
}

impl ScalarStat {
    pub fn eval(self, p: &ColoredPermutation) -> Result<usize> {
        Ok(match self {
            ScalarStat::Ell => stats::length(p),
            ScalarStat::Sor => codes::sorting_index(p),
            ScalarStat::Inv => stats::inversions(p),
            ScalarStat::ReflLen => codes::refl_length(p),
            ScalarStat::Count(s) => s.compute(p).len(),
            ScalarStat::CountColor(s, t) => s.compute(p).iter().filter(|l| l.color == t).count(),
            ScalarStat::SorD => codes::sor_d(p)?,
            ScalarStat::EllD => codes::length_d(p)?,
            ScalarStat::EllTildeD => codes::ell_tilde_d(p)?,
            ScalarStat::CycPlus => stats::twisted_d_stats(p)?.cyc_plus(),
            ScalarStat::CycMinus => stats::twisted_d_stats(p)?.cyc_minus(),
            ScalarStat::RminPlus => stats::twisted_d_stats(p)?.rmin_plus(),
            ScalarStat::RminMinus => stats::twisted_d_stats(p)?.rmin_minus(),
        })
    }
}

/// Set statistics usable as markers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MarkerSet {
    Colored(SetStat),
    CycPlus,
    CycMinus,
    RmilPlus,
    RmilMinus,
}

impl FromStr for MarkerSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cycplus" => Ok(MarkerSet::CycPlus),
            "cycminus" => Ok(MarkerSet::CycMinus),
            "rmilplus" => Ok(MarkerSet::RmilPlus),
            "rmilminus" => Ok(MarkerSet::RmilMinus),
            _ => s.parse::<SetStat>().map(MarkerSet::Colored),
        }
    }
}

impl MarkerSet {
    /// Members as letters; the twisted sets carry color 0.
    fn eval(self, p: &ColoredPermutation) -> Result<Vec<Letter>> {
        let plain = |v: Vec<usize>| v.into_iter().map(Letter::plain).collect();
        Ok(match self {
            MarkerSet::Colored(s) => s.compute(p),
            MarkerSet::CycPlus => plain(stats::twisted_d_stats(p)?.cyc_plus_set),
            MarkerSet::CycMinus => plain(stats::twisted_d_stats(p)?.cyc_minus_set),
            MarkerSet::RmilPlus => plain(stats::twisted_d_stats(p)?.rmil_plus_set),
            MarkerSet::RmilMinus => plain(stats::twisted_d_stats(p)?.rmil_minus_set),
        })
    }
}

/// Which variable family a marker feeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    X,
    Y,
    T,
    S,
}

/// One factor of a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightTerm {
    /// `v^{stat(π)}` for a scalar variable `v`.
    Scalar { var: Var, stat: ScalarStat },
    /// `∏ family_{c,i}` over members `i^c` of a set. With `twist`, a member
    /// of color `c` marks index `−c mod r`.
    Marker { family: Family, set: MarkerSet, twist: bool },
}

/// A weighting `π ↦ monomial`, parsed from text such as
/// `q=sor,x=Cyc,y=Lmic` or `q=ell,x=Rmil-,y=Lmil-` (trailing `-` twists the
/// color index). Scalar exponents are allowed on `q`, `u` and `t`; markers
/// on `x`, `y`, `t` and `s`. The token `agg` aggregates indexed variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightSpec {
    pub terms: Vec<WeightTerm>,
    pub aggregate: bool,
}

impl FromStr for WeightSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut aggregate = false;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if tok.eq_ignore_ascii_case("agg") {
                aggregate = true;
                continue;
            }
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| Error::UnknownStatistic(tok.to_string()))?;
            let (val, twist) = match val.strip_suffix('-') {
                Some(v) if !v.is_empty() => (v, true),
                _ => (val, false),
            };
            let term = match key {
                "q" => WeightTerm::Scalar { var: Var::Q, stat: val.parse()? },
                "u" => WeightTerm::Scalar { var: Var::U, stat: val.parse()? },
                "x" | "y" | "s" => WeightTerm::Marker {
                    family: match key {
                        "x" => Family::X,
                        "y" => Family::Y,
                        _ => Family::S,
                    },
                    set: val.parse()?,
                    twist,
                },
                "t" => match val.parse::<MarkerSet>() {
                    Ok(set) => WeightTerm::Marker { family: Family::T, set, twist },
                    Err(_) => WeightTerm::Scalar { var: Var::TAgg, stat: val.parse()? },
                },
                _ => return Err(Error::UnknownStatistic(key.to_string())),
            };
            terms.push(term);
        }
        Ok(WeightSpec { terms, aggregate })
    }
}

impl WeightSpec {
    /// `q^{stat}` alone.
    pub fn scalar(var: Var, stat: ScalarStat) -> Self {
        WeightSpec { terms: vec![WeightTerm::Scalar { var, stat }], aggregate: false }
    }

    /// The monomial attached to `π`.
    pub fn weigh(&self, p: &ColoredPermutation) -> Result<Monomial> {
        let r = p.r();
        let mut factors: Vec<(Var, u32)> = Vec::new();
        for term in &self.terms {
            match *term {
                WeightTerm::Scalar { var, stat } => factors.push((var, stat.eval(p)? as u32)),
                WeightTerm::Marker { family, set, twist } => {
                    for l in set.eval(p)? {
                        let t = if twist { neg_mod(l.color, r) } else { l.color };
                        let i = l.base;
                        let v = match family {
                            Family::X => Var::X { t, i },
                            Family::Y => Var::Y { t, i },
                            Family::T => Var::T(i),
                            Family::S => Var::S(i),
                        };
                        factors.push((if self.aggregate { v.aggregate() } else { v }, 1));
                    }
                }
            }
        }
        Ok(Monomial::from_factors(factors))
    }
}

/// `Σ_{π ∈ family} weight(π)`.
pub fn enumerative_gf<I>(family: I, weight: &WeightSpec) -> Result<MVPoly>
where
    I: IntoIterator<Item = ColoredPermutation>,
{
    let mut counts: HashMap<Monomial, u64> = HashMap::new();
    for p in family {
        *counts.entry(weight.weigh(&p)?).or_insert(0) += 1;
    }
    Ok(poly_from_counts(counts))
}

pub(crate) fn poly_from_counts(counts: HashMap<Monomial, u64>) -> MVPoly {
    let mut out = MVPoly::zero();
    for (m, c) in counts {
        out.add_term(m, BigInt::from(c));
    }
    out
}

/// The two weightings whose sums equal [`gf_main_b`].
pub fn main_b_weights() -> (WeightSpec, WeightSpec) {
    (
        "q=ell,x=Rmil-,y=Lmil-".parse().expect("static weight"),
        "q=sor,x=Cyc,y=Lmic".parse().expect("static weight"),
    )
}

/// The two weightings whose sums equal [`gf_d`].
pub fn d_weights() -> (WeightSpec, WeightSpec) {
    (
        "q=ell_d,u=lmin,t=RmilPlus,s=RmilMinus".parse().expect("static weight"),
        "q=sor_d,u=lmic,t=CycPlus,s=CycMinus".parse().expect("static weight"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ferrers::enumerate_restricted;
    use crate::perm::enumerate_group;

    fn q(coeffs: &[i64]) -> MVPoly {
        MVPoly::from_univariate(Var::Q, coeffs)
    }

    #[test]
    fn ring_basics() {
        let a = q(&[1, 1]);
        let b = q(&[1, 1, 1]);
        let c = q(&[1, 0, 1, 1]);
        assert_eq!(&(&a * &b) * &c, q(&[1, 2, 3, 4, 4, 3, 1]));
        assert_eq!(&a + &MVPoly::zero(), a);
        assert_eq!(&a * &b, &b * &a);
        assert!((&a - &a).is_zero());
        assert_eq!(a.pow(2), q(&[1, 2, 1]));
    }

    #[test]
    fn length_dist_closed_forms() {
        assert_eq!(gf_length_dist(3, 2), q(&[1, 2, 3, 4, 4, 3, 1]));
        assert_eq!(gf_length_dist(1, 3), q_factorial(3));
        assert_eq!(gf_length_dist(2, 2), product([q(&[1, 1]), q(&[1, 1]), q(&[1, 0, 1])]));
    }

    #[test]
    fn stirling_closed_forms() {
        let t = |c: &[i64]| MVPoly::from_univariate(Var::TAgg, c);
        assert_eq!(gf_cyc0_dist(3, 2), t(&[10, 7, 1]));
        assert_eq!(gf_cyc0_dist(4, 1), t(&[3, 1]));
        assert_eq!(gf_ellprime_dist(2, 3), product([t(&[1, 1]), t(&[1, 3]), t(&[1, 5])]));
        assert_eq!(gf_cycplus_dist_d(2), t(&[0, 3, 1]));
        assert_eq!(gf_cycplus_dist_d(1), t(&[0, 1]));
        assert_eq!(
            gf_ellprime_dist_d(5),
            product([t(&[1, 3]), t(&[1, 5]), t(&[1, 7]), t(&[1, 9])])
        );
    }

    #[test]
    fn main_b_small_product() {
        let f = FerrersBound::parse("1,2").unwrap();
        let got = gf_main_b(3, &f);
        assert_eq!(
            got.to_string(),
            "x0_1*x0_2*y0_1 + q*x0_2*x2_1*y2_1 + q^2*x0_2*x1_1*y1_1 + q^3*x0_1*x2_2*y0_1 \
             + q^4*x0_1*x1_2*y0_1 + q^4*x2_1*x2_2*y2_1 + q^5*x1_1*x2_2*y1_1 + q^5*x1_2*x2_1*y2_1 \
             + q^6*x1_1*x1_2*y1_1"
        );
        let one = FerrersBound::parse("1").unwrap();
        assert_eq!(gf_main_b(3, &one).to_string(), "x0_1*y0_1 + q*x2_1*y2_1 + q^2*x1_1*y1_1");
    }

    #[test]
    fn main_b_matches_enumeration_full_board() {
        let f = FerrersBound::full(2);
        let (wa, wb) = main_b_weights();
        let lhs = enumerative_gf(enumerate_group(3, 2, 100).unwrap(), &wb).unwrap();
        let lhs_a = enumerative_gf(enumerate_group(3, 2, 100).unwrap(), &wa).unwrap();
        assert_eq!(lhs, gf_main_b(3, &f));
        assert_eq!(lhs_a, gf_main_b(3, &f));
    }

    #[test]
    fn full_board_product_matches() {
        for r in 1..=3 {
            for n in 1..=4 {
                assert_eq!(gf_full_board(r, n), gf_cor_restricted(r, &FerrersBound::full(n)), "r={r} n={n}");
            }
        }
        let total = gf_full_board(3, 2).retain_vars(|v| v == Var::Q);
        assert_eq!(total, gf_length_dist(3, 2));
    }

    #[test]
    fn cor_restricted_marginal() {
        let f = FerrersBound::parse("1,2").unwrap();
        let xm = gf_cor_restricted(3, &f).retain_vars(|v| matches!(v, Var::XAgg(_)));
        let x = &(&MVPoly::var(Var::XAgg(0)) + &MVPoly::var(Var::XAgg(1))) + &MVPoly::var(Var::XAgg(2));
        assert_eq!(xm, x.pow(2));
    }

    #[test]
    fn d_products() {
        let f22 = FerrersBound::parse("2,2").unwrap();
        assert_eq!(gf_d(&f22).to_string(), "t_1*t_2*u + 2*q*t_1*u^2 + q^2*s_2*t_1*u");
        let f12 = FerrersBound::parse("1,2").unwrap();
        assert_eq!(gf_d(&f12).to_string(), "t_1*t_2*u + q^2*s_2*t_1*u");
        assert_eq!(gf_d(&FerrersBound::parse("1").unwrap()).to_string(), "t_1*u");
    }

    #[test]
    fn enumerative_examples() {
        let w = WeightSpec::scalar(Var::Q, ScalarStat::Ell);
        let got = enumerative_gf(enumerate_group(3, 2, 100).unwrap(), &w).unwrap();
        assert_eq!(got, q(&[1, 2, 3, 4, 4, 3, 1]));
        assert!(enumerative_gf(std::iter::empty(), &w).unwrap().is_zero());
        let f = FerrersBound::parse("1,2").unwrap();
        let (_, wb) = main_b_weights();
        let g = enumerative_gf(enumerate_restricted(3, &f, 100).unwrap(), &wb).unwrap();
        let q4 = g.coefficient_of(Var::Q, 4);
        assert_eq!(q4.to_string(), "x0_1*x1_2*y0_1 + x2_1*x2_2*y2_1");
    }

    #[test]
    fn weight_parse() {
        let w: WeightSpec = "q=sor,x=Cyc,y=Lmic".parse().unwrap();
        assert_eq!(w.terms.len(), 3);
        let w: WeightSpec = "q=ell,x=Rmil-,agg".parse().unwrap();
        assert!(w.aggregate);
        assert!(matches!(w.terms[1], WeightTerm::Marker { twist: true, .. }));
        let w: WeightSpec = "t=cyc0".parse().unwrap();
        assert!(matches!(w.terms[0], WeightTerm::Scalar { var: Var::TAgg, .. }));
        assert!("q=bogus".parse::<WeightSpec>().is_err());
        assert!("x=Nope".parse::<WeightSpec>().is_err());
    }

    #[test]
    fn text_and_json() {
        let p = &MVPoly::constant(-2) + &q(&[0, 3]);
        assert_eq!(p.to_string(), "-2 + 3*q");
        assert_eq!(MVPoly::zero().to_string(), "0");
        let js = gf_main_b(2, &FerrersBound::parse("1").unwrap()).to_json();
        assert_eq!(js[1]["exps"]["x:1:1"], 1);
        assert_eq!(js[1]["coeff"], "1");
    }
}

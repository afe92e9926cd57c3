//! Exhaustive theorem harness.
//!
//! Every [`TheoremId`] names one executable claim. A check enumerates the
//! relevant elements, evaluates both sides with the statistics supplied by a
//! [`StatOracle`], and compares exactly: multisets as sorted tuple lists,
//! generating functions as canonical polynomials, pointwise claims element
//! by element. Independent oracles (Cayley-graph BFS, comb-graph sorting,
//! filter-based enumeration) back the claims that concern the definitions
//! themselves.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::codes::{self, Code};
use crate::error::{Error, Result};
use crate::ferrers::{self, FerrersBound, RestrictedElements};
use crate::perm::{group_order, neg_mod, ColoredPermutation, Letter};
use crate::poly::{self, Monomial, MVPoly, Var};
use crate::stats::{self, refine, SetStat, TwistedDStats};

/// Default bound on the number of elements a single check may enumerate.
pub const DEFAULT_CAP: u64 = 1_000_000;
/// Default bound on the group order for breadth-first search.
pub const DEFAULT_BFS_CAP: u64 = 100_000;

macro_rules! theorem_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// The closed vocabulary of checkable claims.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TheoremId { $($variant),* }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(TheoremId::$variant => $name),* }
            }
        }
    };
}

theorem_ids! {
    EllDist => "ell-dist",
    SorDist => "sor-dist",
    MainA => "main-a",
    MainB => "main-b",
    CorGfRestricted => "cor-gf-restricted",
    Cyc0Dist => "cyc0-dist",
    EllprimeDist => "ellprime-dist",
    PhiPointwise => "phi-pointwise",
    PhiFerrers => "phi-ferrers",
    StirlingEqui => "stirling-equi",
    AcodeEll => "acode-ell",
    AcodeStats => "acode-stats",
    BcodeSor => "bcode-sor",
    BcodeStats => "bcode-stats",
    SorGraphOracle => "sor-graph-oracle",
    LengthBfs => "length-bfs",
    ReflengthBfs => "reflength-bfs",
    DPsiPointwise => "d-psi-pointwise",
    DMain => "d-main",
    DGf => "d-gf",
    DCorGf => "d-cor-gf",
    DEllprimeDist => "d-ellprime-dist",
    DCcodeStats => "d-ccode-stats",
    DDcodeStats => "d-dcode-stats",
    DLengthBfs => "d-length-bfs",
}

impl TheoremId {
    /// Whether the claim lives in `D(n)` (forcing `r = 2`).
    pub fn is_type_d(self) -> bool {
        self.name().starts_with("d-")
    }

    /// Whether the claim is quantified over Ferrers bounds.
    pub fn uses_bound(self) -> bool {
        matches!(
            self,
            TheoremId::MainA
                | TheoremId::MainB
                | TheoremId::CorGfRestricted
                | TheoremId::PhiFerrers
                | TheoremId::DMain
                | TheoremId::DGf
                | TheoremId::DCorGf
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Statistic providers

/// Source of the statistics a check compares. The default methods are the
/// library implementations; overriding one yields a perturbed oracle for
/// negative controls.
pub trait StatOracle: Sync {
    fn length(&self, p: &ColoredPermutation) -> usize {
        stats::length(p)
    }
    fn sor(&self, p: &ColoredPermutation) -> usize {
        codes::sorting_index(p)
    }
    fn refl_length(&self, p: &ColoredPermutation) -> usize {
        codes::refl_length(p)
    }
    fn set(&self, p: &ColoredPermutation, s: SetStat) -> Vec<Letter> {
        s.compute(p)
    }
    fn twisted(&self, p: &ColoredPermutation) -> TwistedDStats {
        stats::twisted_d_stats(p).expect("even-signed element")
    }
    fn sor_d(&self, p: &ColoredPermutation) -> usize {
        codes::sor_d(p).expect("even-signed element")
    }
}

/// The library statistics, unmodified.
#[derive(Clone, Copy, Debug, Default)]
pub struct Reference;

impl StatOracle for Reference {}

/// Deliberately broken statistics for exercising the failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Perturbation {
    /// `Cyc_D^+` without the adjoined `1`.
    CycPlusWithoutOne,
    /// `sor + 1` on every element except the identity.
    SorPlusOne,
    /// `Lmic` replaced by `Lmil`.
    LmicAsLmil,
}

impl Perturbation {
    pub const ALL: [Perturbation; 3] = [
        Perturbation::CycPlusWithoutOne,
        Perturbation::SorPlusOne,
        Perturbation::LmicAsLmil,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Perturbation::CycPlusWithoutOne => "cyc-plus-without-one",
            Perturbation::SorPlusOne => "sor-plus-one",
            Perturbation::LmicAsLmil => "lmic-as-lmil",
        }
    }
}

impl FromStr for Perturbation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Perturbation::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownStatistic(s.to_string()))
    }
}

impl StatOracle for Perturbation {
    fn sor(&self, p: &ColoredPermutation) -> usize {
        let s = codes::sorting_index(p);
        match self {
            Perturbation::SorPlusOne if !p.is_identity() => s + 1,
            _ => s,
        }
    }

    fn set(&self, p: &ColoredPermutation, s: SetStat) -> Vec<Letter> {
        match (self, s) {
            (Perturbation::LmicAsLmil, SetStat::Lmic) => stats::lmil(p),
            _ => s.compute(p),
        }
    }

    fn twisted(&self, p: &ColoredPermutation) -> TwistedDStats {
        let mut t = stats::twisted_d_stats(p).expect("even-signed element");
        if *self == Perturbation::CycPlusWithoutOne {
            t.cyc_plus_set = refine(&stats::cyc(p), 0);
        }
        t
    }
}

// ---------------------------------------------------------------------------
// Parameters and reports

/// What to check and how far.
#[derive(Clone, Debug)]
pub struct VerifyParams {
    pub r: usize,
    pub n: usize,
    pub f: Option<FerrersBound>,
    pub all_f: bool,
    pub cap: u64,
    pub bfs_cap: u64,
    pub perturbation: Option<Perturbation>,
}

impl VerifyParams {
    pub fn new(r: usize, n: usize) -> Self {
        VerifyParams {
            r,
            n,
            f: None,
            all_f: false,
            cap: DEFAULT_CAP,
            bfs_cap: DEFAULT_BFS_CAP,
            perturbation: None,
        }
    }

    pub fn with_bound(mut self, f: FerrersBound) -> Self {
        self.f = Some(f);
        self
    }

    pub fn all_bounds(mut self) -> Self {
        self.all_f = true;
        self
    }

    pub fn perturbed(mut self, p: Perturbation) -> Self {
        self.perturbation = Some(p);
        self
    }

    fn oracle(&self) -> &dyn StatOracle {
        match &self.perturbation {
            Some(p) => p,
            None => &Reference,
        }
    }

    fn shapes(&self, id: TheoremId) -> Result<Vec<FerrersBound>> {
        if !id.uses_bound() {
            return Ok(vec![FerrersBound::full(self.n)]);
        }
        if self.all_f {
            return ferrers::all_bounds(self.n, self.cap);
        }
        match &self.f {
            Some(f) if f.n() != self.n => Err(Error::SizeMismatch(f.n(), self.n)),
            Some(f) => Ok(vec![f.clone()]),
            None => Ok(vec![FerrersBound::full(self.n)]),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// Evidence for a failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    Element { shape: Option<String>, element: String, detail: String },
    Polynomials { shape: Option<String>, lhs: String, rhs: String },
}

impl Counterexample {
    fn to_json(&self) -> Value {
        match self {
            Counterexample::Element { shape, element, detail } => {
                json!({"kind": "element", "ferrers": shape, "element": element, "detail": detail})
            }
            Counterexample::Polynomials { shape, lhs, rhs } => {
                json!({"kind": "polynomials", "ferrers": shape, "lhs": lhs, "rhs": rhs})
            }
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Element { shape, element, detail } => {
                if let Some(s) = shape {
                    write!(f, "f=({s}) ")?;
                }
                write!(f, "element {element}: {detail}")
            }
            Counterexample::Polynomials { shape, lhs, rhs } => {
                if let Some(s) = shape {
                    write!(f, "f=({s}) ")?;
                }
                write!(f, "{lhs} != {rhs}")
            }
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug)]
pub struct Report {
    pub theorem: TheoremId,
    pub r: usize,
    pub n: usize,
    pub f: Option<FerrersBound>,
    pub all_f: bool,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    pub checked: u64,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn shape_label(&self) -> String {
        if !self.theorem.uses_bound() {
            return "-".into();
        }
        if self.all_f {
            "all".into()
        } else {
            match &self.f {
                Some(f) => format!("({f})"),
                None => "full".into(),
            }
        }
    }

    /// One deterministic line (no timing).
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} r={} n={} f={}: {} (checked {})",
            self.theorem,
            self.r,
            self.n,
            self.shape_label(),
            self.status.to_string().to_uppercase(),
            self.checked
        );
        if let Some(c) = &self.counterexample {
            s.push_str(&format!("\n  counterexample: {c}"));
        }
        for note in &self.notes {
            s.push_str(&format!("\n  note: {note}"));
        }
        s
    }

    /// JSON report; `elapsed_ms` is included only when asked for, so the
    /// default rendering is reproducible byte for byte.
    pub fn to_json(&self, with_timing: bool) -> Value {
        let f: Value = if self.all_f {
            json!("all")
        } else {
            match &self.f {
                Some(f) => json!(f.values()),
                None => Value::Null,
            }
        };
        let mut v = json!({
            "theorem": self.theorem.name(),
            "params": {"r": self.r, "n": self.n, "f": f},
            "status": self.status.to_string(),
            "checked": self.checked,
        });
        if let Some(c) = &self.counterexample {
            v["counterexample"] = c.to_json();
        }
        if !self.notes.is_empty() {
            v["notes"] = json!(self.notes);
        }
        if with_timing {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }
}

// ---------------------------------------------------------------------------
// Oracles

/// Generating sets for Cayley-graph search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenSet {
    /// `s_0, s_1, …, s_{n−1}` of `G(r, n)`.
    CoxeterG,
    /// The transpositions `(i^t j)` (`i < j`) and `(i^t i)` (`t > 0`).
    ReflectionsT,
    /// `s_0^D = (\bar 1 2), s_1, …, s_{n−1}` of `D(n)`.
    CoxeterD,
    /// `t^D_{ij}` (`1 ≤ |i| < j`) and `t^D_{\bar i i}` (`i > 1`) of `D(n)`.
    ReflectionsTD,
}

impl GenSet {
    pub fn name(self) -> &'static str {
        match self {
            GenSet::CoxeterG => "coxeter-G",
            GenSet::ReflectionsT => "reflections-T",
            GenSet::CoxeterD => "coxeter-D",
            GenSet::ReflectionsTD => "reflections-TD",
        }
    }

    fn is_type_d(self) -> bool {
        matches!(self, GenSet::CoxeterD | GenSet::ReflectionsTD)
    }

    /// The generators as group elements.
    pub fn generators(self, r: usize, n: usize) -> Vec<ColoredPermutation> {
        let signed = |pairs: &[(usize, i64)]| {
            let mut w: Vec<i64> = (1..=n as i64).collect();
            for &(pos, v) in pairs {
                w[pos - 1] = v;
            }
            ColoredPermutation::from_signed(&w).expect("valid generator")
        };
        let mut out = Vec::new();
        match self {
            GenSet::CoxeterG => {
                for i in 0..n {
                    out.push(ColoredPermutation::generator(r, n, i).expect("in range"));
                }
            }
            GenSet::ReflectionsT => {
                for j in 1..=n {
                    for i in 1..=j {
                        for t in 0..r {
                            if i == j && t == 0 {
                                continue;
                            }
                            out.push(ColoredPermutation::transposition(r, n, i, t, j).expect("in range"));
                        }
                    }
                }
            }
            GenSet::CoxeterD => {
                if n >= 2 {
                    out.push(signed(&[(1, -2), (2, -1)]));
                    for i in 1..n {
                        out.push(signed(&[(i, i as i64 + 1), (i + 1, i as i64)]));
                    }
                }
            }
            GenSet::ReflectionsTD => {
                for j in 2..=n {
                    for i in 1..j {
                        out.push(signed(&[(i, j as i64), (j, i as i64)]));
                        out.push(signed(&[(i, -(j as i64)), (j, -(i as i64))]));
                    }
                    out.push(signed(&[(1, -1), (j, -(j as i64))]));
                }
            }
        }
        out
    }
}

impl FromStr for GenSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [GenSet::CoxeterG, GenSet::ReflectionsT, GenSet::CoxeterD, GenSet::ReflectionsTD]
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownGenset(s.to_string()))
    }
}

fn d_order(n: usize) -> u128 {
    if n == 0 {
        1
    } else {
        group_order(2, n) / 2
    }
}

/// Geodesic distance from the identity in the right-multiplication Cayley
/// graph of the chosen generating set.
pub fn bfs_lengths(
    genset: GenSet,
    r: usize,
    n: usize,
    cap: u64,
) -> Result<HashMap<ColoredPermutation, usize>> {
    let r = if genset.is_type_d() { 2 } else { r };
    let size = if genset.is_type_d() { d_order(n) } else { group_order(r, n) };
    if size > cap as u128 {
        return Err(Error::CapExceeded { size, cap });
    }
    let gens = genset.generators(r, n);
    let id = ColoredPermutation::identity(r, n);
    let mut dist = HashMap::with_capacity(size as usize);
    dist.insert(id.clone(), 0usize);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for g in &gens {
            let y = x.multiply(g).expect("same group");
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    Ok(dist)
}

/// Sorting on the comb graph: the vertex in column `i`, row `d` carries the
/// label `π(i^d)`. Repeatedly take the largest unsorted letter `j`, found
/// at column `i` and row `d`, move it to column `j` of row 0, and record the
/// distance travelled (`j − i` along row 0, otherwise `i − 1` to the spine,
/// `d` down the spine and `j − 1` back out). Returns the total and the
/// per-letter distances for `j = n, …, 1`.
pub fn sor_graph_oracle(p: &ColoredPermutation) -> (usize, Vec<usize>) {
    let (r, n) = (p.r(), p.n());
    // grid[d][i-1] = π(i^d)
    let relabel = |w: &[Letter]| -> Vec<Vec<Letter>> {
        (0..r)
            .map(|d| w.iter().map(|l| Letter::new(l.base, (l.color + d) % r)).collect())
            .collect()
    };
    let mut row0: Vec<Letter> = p.window().to_vec();
    let mut steps = Vec::with_capacity(n);
    for j in (1..=n).rev() {
        let grid = relabel(&row0);
        let (d, i) = (0..r)
            .flat_map(|d| (1..=n).map(move |i| (d, i)))
            .find(|&(d, i)| grid[d][i - 1] == Letter::plain(j))
            .expect("letter j is on the graph");
        let dist = if d == 0 { j - i } else { (i - 1) + d + (j - 1) };
        steps.push(dist);
        // the old occupant of (j, 0) takes the vertex (i, d)
        let displaced = grid[0][j - 1];
        row0[j - 1] = Letter::plain(j);
        if i != j {
            row0[i - 1] = Letter::new(displaced.base, (displaced.color + r - d) % r);
        }
    }
    (steps.iter().sum(), steps)
}

// ---------------------------------------------------------------------------
// Enumeration helpers

fn parts_g(r: usize, f: &FerrersBound, cap: u64) -> Result<Vec<RestrictedElements>> {
    Ok(ferrers::enumerate_restricted(r, f, cap)?.partition())
}

fn parts_d(f: &FerrersBound, cap: u64) -> Result<Vec<RestrictedElements>> {
    Ok(ferrers::enumerate_restricted_d(f, cap)?.partition())
}

/// Applies `g` to every element, in parallel over partitions, keeping
/// enumeration order.
fn map_all<T, G>(parts: Vec<RestrictedElements>, g: G) -> Vec<(ColoredPermutation, T)>
where
    T: Send,
    G: Fn(&ColoredPermutation) -> T + Sync,
{
    parts
        .into_par_iter()
        .map(|part| part.map(|p| {
            let v = g(&p);
            (p, v)
        }).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// First element whose check returns a message.
fn first_failure<G>(parts: Vec<RestrictedElements>, g: G) -> (u64, Option<(String, String)>)
where
    G: Fn(&ColoredPermutation) -> Option<String> + Sync,
{
    let results = map_all(parts, g);
    let checked = results.len() as u64;
    let fail = results
        .into_iter()
        .find_map(|(p, m)| m.map(|msg| (p.to_string(), msg)));
    (checked, fail)
}

type Tuple = Vec<Vec<usize>>;

/// Compares the multisets of `a` and `b` tuples. On mismatch, reports the
/// first element (in enumeration order) whose tuple is over-represented on
/// one side.
fn compare_multisets(rows: &[(ColoredPermutation, (Tuple, Tuple))]) -> Option<(String, String)> {
    let mut count_a: HashMap<&Tuple, i64> = HashMap::new();
    let mut count_b: HashMap<&Tuple, i64> = HashMap::new();
    for (_, (a, b)) in rows {
        *count_a.entry(a).or_default() += 1;
        *count_b.entry(b).or_default() += 1;
    }
    for (p, (a, b)) in rows {
        let (ca, cb) = (count_a[a], count_b.get(a).copied().unwrap_or(0));
        if ca != cb {
            return Some((
                p.to_string(),
                format!("left tuple {a:?} occurs {ca} times on the left, {cb} on the right"),
            ));
        }
        let (ca, cb) = (count_a.get(b).copied().unwrap_or(0), count_b[b]);
        if ca != cb {
            return Some((
                p.to_string(),
                format!("right tuple {b:?} occurs {cb} times on the right, {ca} on the left"),
            ));
        }
    }
    None
}

fn histogram_poly(var: Var, values: impl Iterator<Item = usize>) -> MVPoly {
    let mut h: Vec<u64> = Vec::new();
    for v in values {
        if h.len() <= v {
            h.resize(v + 1, 0);
        }
        h[v] += 1;
    }
    MVPoly::from_univariate(var, &h.into_iter().map(BigInt::from).collect::<Vec<_>>())
}

fn set_text(v: &[Letter]) -> String {
    let parts: Vec<String> = v.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn negate_colors(v: &[Letter], r: usize) -> Vec<Letter> {
    let mut out: Vec<Letter> = v.iter().map(|l| Letter::new(l.base, neg_mod(l.color, r))).collect();
    out.sort();
    out
}

fn bases(v: &[Letter]) -> Vec<usize> {
    let mut b: Vec<usize> = v.iter().map(|l| l.base).collect();
    b.sort_unstable();
    b
}

// ---------------------------------------------------------------------------
// The checks

struct Outcome {
    checked: u64,
    counterexample: Option<Counterexample>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checked: 0, counterexample: None, notes: Vec::new() }
    }

    fn element(&mut self, shape: Option<&FerrersBound>, fail: Option<(String, String)>) {
        if self.counterexample.is_none() {
            if let Some((element, detail)) = fail {
                self.counterexample = Some(Counterexample::Element {
                    shape: shape.map(|f| f.to_string()),
                    element,
                    detail,
                });
            }
        }
    }

    fn polys(&mut self, shape: Option<&FerrersBound>, what: &str, lhs: &MVPoly, rhs: &MVPoly) {
        if self.counterexample.is_none() && lhs != rhs {
            self.counterexample = Some(Counterexample::Polynomials {
                shape: shape.map(|f| format!("{f}; {what}")).or_else(|| Some(what.to_string())),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
}

/// Runs one check. Type-D claims ignore `params.r` and work in `G(2, n)`.
pub fn check(id: TheoremId, params: &VerifyParams) -> Result<Report> {
    let start = Instant::now();
    let r = if id.is_type_d() { 2 } else { params.r };
    if r == 0 {
        return Err(Error::ZeroColors);
    }
    let shapes = params.shapes(id)?;
    let p = VerifyParams { r, ..params.clone() };
    let out = match id {
        TheoremId::EllDist => dist_check(&p, |o, x| o.length(x))?,
        TheoremId::SorDist => dist_check(&p, |o, x| o.sor(x))?,
        TheoremId::MainA => main_a(&p, &shapes)?,
        TheoremId::MainB => main_b(&p, &shapes, false)?,
        TheoremId::CorGfRestricted => main_b(&p, &shapes, true)?,
        TheoremId::Cyc0Dist => stirling_dist(&p, true)?,
        TheoremId::EllprimeDist => stirling_dist(&p, false)?,
        TheoremId::PhiPointwise => phi_pointwise(&p)?,
        TheoremId::PhiFerrers => phi_ferrers(&p, &shapes)?,
        TheoremId::StirlingEqui => stirling_equi(&p)?,
        TheoremId::AcodeEll => acode_ell(&p)?,
        TheoremId::AcodeStats => acode_stats(&p)?,
        TheoremId::BcodeSor => bcode_sor(&p)?,
        TheoremId::BcodeStats => bcode_stats(&p)?,
        TheoremId::SorGraphOracle => sor_graph(&p)?,
        TheoremId::LengthBfs => bfs_check(&p, GenSet::CoxeterG)?,
        TheoremId::ReflengthBfs => bfs_check(&p, GenSet::ReflectionsT)?,
        TheoremId::DPsiPointwise => d_psi_pointwise(&p)?,
        TheoremId::DMain => d_main(&p, &shapes)?,
        TheoremId::DGf => d_gf(&p, &shapes, false)?,
        TheoremId::DCorGf => d_gf(&p, &shapes, true)?,
        TheoremId::DEllprimeDist => d_ellprime(&p)?,
        TheoremId::DCcodeStats => d_code_stats(&p, false)?,
        TheoremId::DDcodeStats => d_code_stats(&p, true)?,
        TheoremId::DLengthBfs => d_length_bfs(&p)?,
    };
    Ok(Report {
        theorem: id,
        r,
        n: params.n,
        f: if id.uses_bound() { params.f.clone() } else { None },
        all_f: id.uses_bound() && params.all_f,
        status: if out.counterexample.is_some() { Status::Fail } else { Status::Pass },
        counterexample: out.counterexample,
        checked: out.checked,
        notes: out.notes,
        elapsed: start.elapsed(),
    })
}

fn full_parts(p: &VerifyParams) -> Result<Vec<RestrictedElements>> {
    parts_g(p.r, &FerrersBound::full(p.n), p.cap)
}

fn full_parts_d(p: &VerifyParams) -> Result<Vec<RestrictedElements>> {
    parts_d(&FerrersBound::full(p.n), p.cap)
}

fn dist_check(
    p: &VerifyParams,
    stat: impl Fn(&dyn StatOracle, &ColoredPermutation) -> usize + Sync,
) -> Result<Outcome> {
    let o = p.oracle();
    let rows = map_all(full_parts(p)?, |x| stat(o, x));
    let mut out = Outcome::new();
    out.checked = rows.len() as u64;
    let lhs = histogram_poly(Var::Q, rows.iter().map(|(_, v)| *v));
    out.polys(None, "histogram vs closed form", &lhs, &poly::gf_length_dist(p.r, p.n));
    Ok(out)
}

fn tuple_a(o: &dyn StatOracle, x: &ColoredPermutation, r: usize) -> Tuple {
    let mut t = vec![vec![o.length(x)]];
    for s in [SetStat::Rmil, SetStat::Lmil, SetStat::Lmal, SetStat::Lmap] {
        let set = o.set(x, s);
        t.extend((0..r).map(|c| refine(&set, c)));
    }
    t
}

fn tuple_b(o: &dyn StatOracle, x: &ColoredPermutation, r: usize) -> Tuple {
    let mut t = vec![vec![o.sor(x)]];
    for s in [SetStat::Cyc, SetStat::Lmic, SetStat::Lmal, SetStat::Lmap] {
        let set = o.set(x, s);
        t.extend((0..r).map(|k| refine(&set, neg_mod(k, r))));
    }
    t
}

fn main_a(p: &VerifyParams, shapes: &[FerrersBound]) -> Result<Outcome> {
    let o = p.oracle();
    let r = p.r;
    let mut out = Outcome::new();
    let results: Vec<(u64, Option<(String, String)>)> = shapes
        .par_iter()
        .map(|f| -> Result<_> {
            let rows = map_all(parts_g(r, f, p.cap)?, |x| (tuple_a(o, x, r), tuple_b(o, x, r)));
            Ok((rows.len() as u64, compare_multisets(&rows)))
        })
        .collect::<Result<_>>()?;
    for (f, (n, fail)) in shapes.iter().zip(results) {
        out.checked += n;
        out.element(Some(f), fail);
    }
    Ok(out)
}

/// The weight `q^{ℓ} ∏ x_{−c,i} (Rmil) ∏ y_{−c,i} (Lmil)` and
/// `q^{sor} ∏ x_{c,i} (Cyc) ∏ y_{c,i} (Lmic)`.
fn main_b_monomials(o: &dyn StatOracle, x: &ColoredPermutation, agg: bool) -> (Monomial, Monomial) {
    let r = x.r();
    let var = |v: Var| if agg { v.aggregate() } else { v };
    let build = |q: usize, xs: Vec<Letter>, ys: Vec<Letter>, twist: bool| {
        let col = |c: usize| if twist { neg_mod(c, r) } else { c };
        let mut fs = vec![(Var::Q, q as u32)];
        fs.extend(xs.iter().map(|l| (var(Var::X { t: col(l.color), i: l.base }), 1)));
        fs.extend(ys.iter().map(|l| (var(Var::Y { t: col(l.color), i: l.base }), 1)));
        Monomial::from_factors(fs)
    };
    (
        build(o.length(x), o.set(x, SetStat::Rmil), o.set(x, SetStat::Lmil), true),
        build(o.sor(x), o.set(x, SetStat::Cyc), o.set(x, SetStat::Lmic), false),
    )
}

fn sum_monomials<'a>(ms: impl Iterator<Item = &'a Monomial>) -> MVPoly {
    let mut counts: HashMap<Monomial, u64> = HashMap::new();
    for m in ms {
        *counts.entry(m.clone()).or_insert(0) += 1;
    }
    poly::poly_from_counts(counts)
}

fn main_b(p: &VerifyParams, shapes: &[FerrersBound], agg: bool) -> Result<Outcome> {
    let o = p.oracle();
    let r = p.r;
    let mut out = Outcome::new();
    let results: Vec<(u64, MVPoly, MVPoly, MVPoly)> = shapes
        .par_iter()
        .map(|f| -> Result<_> {
            let rows = map_all(parts_g(r, f, p.cap)?, |x| main_b_monomials(o, x, agg));
            let lhs_a = sum_monomials(rows.iter().map(|(_, (a, _))| a));
            let lhs_b = sum_monomials(rows.iter().map(|(_, (_, b))| b));
            let rhs = if agg { poly::gf_cor_restricted(r, f) } else { poly::gf_main_b(r, f) };
            Ok((rows.len() as u64, lhs_a, lhs_b, rhs))
        })
        .collect::<Result<_>>()?;
    for (f, (n, lhs_a, lhs_b, rhs)) in shapes.iter().zip(results) {
        out.checked += n;
        out.polys(Some(f), "length-side sum vs product", &lhs_a, &rhs);
        out.polys(Some(f), "sorting-side sum vs product", &lhs_b, &rhs);
        if agg && f == &FerrersBound::full(p.n) {
            out.polys(Some(f), "full-board product", &rhs, &poly::gf_full_board(r, p.n));
        }
    }
    Ok(out)
}

fn stirling_dist(p: &VerifyParams, cyc0: bool) -> Result<Outcome> {
    let o = p.oracle();
    let rows = map_all(full_parts(p)?, |x| {
        if cyc0 {
            refine(&o.set(x, SetStat::Cyc), 0).len()
        } else {
            o.refl_length(x)
        }
    });
    let mut out = Outcome::new();
    out.checked = rows.len() as u64;
    let lhs = histogram_poly(Var::TAgg, rows.iter().map(|(_, v)| *v));
    let rhs = if cyc0 {
        poly::gf_cyc0_dist(p.r, p.n)
    } else {
        poly::gf_ellprime_dist(p.r, p.n)
    };
    out.polys(None, "histogram vs closed form", &lhs, &rhs);
    Ok(out)
}

fn phi_pointwise(p: &VerifyParams) -> Result<Outcome> {
    let o = p.oracle();
    let r = p.r;
    let rows = map_all(full_parts(p)?, |x| {
        let y = codes::phi(x);
        let (a, b) = (tuple_a(o, x, r), tuple_b(o, &y, r));
        let msg = (a != b).then(|| format!("tuple {a:?} but image {y} has {b:?}"));
        (y, msg)
    });
    let mut out = Outcome::new();
    out.checked = rows.len() as u64;
    let images: HashSet<&ColoredPermutation> = rows.iter().map(|(_, (y, _))| y).collect();
    out.element(
        None,
        rows.iter().find_map(|(x, (_, m))| m.clone().map(|m| (x.to_string(), m))),
    );
    if images.len() != rows.len() && out.counterexample.is_none() {
        let mut seen = HashSet::new();
        let dup = rows.iter().find(|(_, (y, _))| !seen.insert(y)).expect("duplicate image");
        out.element(None, Some((dup.0.to_string(), format!("image {} is hit twice", dup.1 .0))));
    }
    Ok(out)
}

fn phi_ferrers(p: &VerifyParams, shapes: &[FerrersBound]) -> Result<Outcome> {
    let mut out = Outcome::new();
    // the minimum bound of every element admits its image
    let (n, fail) = first_failure(full_parts(p)?, |x| {
        let m = ferrers::min_sequence(x);
        let y = codes::phi(x);
        (!m.member(&y).expect("sizes agree"))
            .then(|| format!("image {y} violates min bound ({m})"))
    });
    out.checked += n;
    out.element(None, fail);
    // each restricted set is mapped onto itself
    for f in shapes {
        let (n, fail) = first_failure(parts_g(p.r, f, p.cap)?, |x| {
            let y = codes::phi(x);
            (!f.member(&y).expect("sizes agree")).then(|| format!("image {y} leaves the set"))
        });
        out.checked += n;
        out.element(Some(f), fail);
    }
    Ok(out)
}

fn stirling_equi(p: &VerifyParams) -> Result<Outcome> {
    let o = p.oracle();
    let n = p.n;
    // columns: n − ℓ′, then cyc, rmin, lmin, lmax, lmic (refined to color 0
    // and unrefined)
    let sets = [SetStat::Cyc, SetStat::Rmil, SetStat::Lmil, SetStat::Lmal, SetStat::Lmic];
    let rows = map_all(full_parts(p)?, |x| {
        let mut v = vec![n - o.refl_length(x)];
        let all: Vec<Vec<Letter>> = sets.iter().map(|&s| o.set(x, s)).collect();
        v.extend(all.iter().map(|s| refine(s, 0).len()));
        v.extend(all.iter().map(|s| s.len()));
        v
    });
    let mut out = Outcome::new();
    out.checked = rows.len() as u64;
    let hist = |k: usize| histogram_poly(Var::TAgg, rows.iter().map(|(_, v)| v[k]));
    let base0 = hist(0);
    let names = ["cyc", "rmin", "lmin", "lmax", "lmic"];
    for (k, name) in names.iter().enumerate() {
        out.polys(None, &format!("{name}^0 vs n - ell'"), &hist(1 + k), &base0);
    }
    let base = hist(6);
    for (k, name) in names.iter().enumerate().skip(1) {
        out.polys(None, &format!("{name} vs cyc"), &hist(6 + k), &base);
    }
    Ok(out)
}

fn acode_ell(p: &VerifyParams) -> Result<Outcome> {
    let o = p.oracle();
    let (n, fail) = first_failure(full_parts(p)?, |x| {
        let a = codes::a_code(x);
        let a2 = codes::a_code_via_lehmer(x);
        if a != a2 {
            return Some(format!("peel-off A-code {a} differs from Lehmer route {a2}"));
        }
        if codes::a_code_inv(&a) != *x {
            return Some(format!("A-code {a} does not invert"));
        }
        let (w, l) = (codes::length_from_acode(&a), o.length(x));
        (w != l).then(|| format!("code sum {w} but length {l}"))
    });
    let mut out = Outcome::new();
    out.checked = n;
    out.element(None, fail);
    Ok(out)
}

fn acode_stats(p: &VerifyParams) -> Result<Outcome> {
    let o = p.oracle();
    let (n, fail) = first_failure(full_parts(p)?, |x| {
        let cs = codes::code_stats(&codes::a_code(x));
        let pairs = [
            ("Rmil = Max(a)", o.set(x, SetStat::Rmil), cs.max),
            ("Lmil = Min(a)", o.set(x, SetStat::Lmil), cs.min),
            ("Lmap = Rmil(a)", o.set(x, SetStat::Lmap), cs.rmil),
            ("Lmal = Rmip(a)", o.set(x, SetStat::Lmal), cs.rmip),
        ];
        pairs.into_iter().find(|(_, a, b)| a != b).map(|(name, a, b)| {
            format!("{name} fails: {} vs {}", set_text(&a), set_text(&b))
        })
    });
    let mut out = Outcome::new();
    out.checked = n;
    out.element(None, fail);
    Ok(out)
}

fn max0(b: &Code) -> usize {
    b.entries()
        .iter()
        .enumerate()
        .filter(|(k, e)| e.base == k + 1 && e.color == 0)
        .count()
}

fn bcode_sor(p: &VerifyParams) -> Result<Outcome> {
    let o = p.oracle();
    let n = p.n;
    let (checked, fail) = first_failure(full_parts(p)?, |x| {
        let b = codes::b_code(x);
        let b2 = codes::b_code_via_orbit(x);
        if b != b2 {
            return Some(format!("peel-off B-code {b} differs from orbit route {b2}"));
        }
        if codes::b_code_inv(&b) != *x {
            return Some(format!("B-code {b} does not invert"));
        }
        let (w, s) = (b.weight(), o.sor(x));
        if w != s {
            return Some(format!("code sum {w} but sor {s}"));
        }
        let (g, _) = sor_graph_oracle(x);
        if w != g {
            return Some(format!("code sum {w} but comb-graph distance {g}"));
        }
        let lp = n - max0(&b);
        let cyc0 = refine(&o.set(x, SetStat::Cyc), 0).len();
        if lp != o.refl_length(x) || lp != n - cyc0 {
            return Some(format!("n - |Max^0(b)| = {lp}, refl_len = {}, n - cyc^0 = {}", o.refl_length(x), n - cyc0));
        }
        None
    });
    let mut out = Outcome::new();
    out.checked = checked;
    out.element(None, fail);
    Ok(out)
}

fn bcode_stats(p: &VerifyParams) -> Result<Outcome> {
    let o = p.oracle();
    let r = p.r;
    let (n, fail) = first_failure(full_parts(p)?, |x| {
        let cs = codes::code_stats(&codes::b_code(x));
        let pairs = [
            ("Cyc^t = Max^{-t}(b)", o.set(x, SetStat::Cyc), cs.max),
            ("Lmic^t = Min^{-t}(b)", o.set(x, SetStat::Lmic), cs.min),
            ("Lmap^t = Rmil^{-t}(b)", o.set(x, SetStat::Lmap), cs.rmil),
            ("Lmal^t = Rmip^{-t}(b)", o.set(x, SetStat::Lmal), cs.rmip),
        ];
        pairs
            .into_iter()
            .map(|(name, a, b)| (name, a, negate_colors(&b, r)))
            .find(|(_, a, b)| a != b)
            .map(|(name, a, b)| format!("{name} fails: {} vs {}", set_text(&a), set_text(&b)))
    });
    let mut out = Outcome::new();
    out.checked = n;
    out.element(None, fail);
    Ok(out)
}

fn sor_graph(p: &VerifyParams) -> Result<Outcome> {
    let o = p.oracle();
    let (n, fail) = first_failure(full_parts(p)?, |x| {
        let (g, _) = sor_graph_oracle(x);
        let s = o.sor(x);
        (g != s).then(|| format!("comb-graph distance {g} but sor {s}"))
    });
    let mut out = Outcome::new();
    out.checked = n;
    out.element(None, fail);
    Ok(out)
}

fn bfs_check(p: &VerifyParams, gens: GenSet) -> Result<Outcome> {
    let o = p.oracle();
    let dist = bfs_lengths(gens, p.r, p.n, p.bfs_cap)?;
    let (n, fail) = first_failure(full_parts(p)?, |x| {
        let d = dist[x];
        let s = match gens {
            GenSet::CoxeterG => o.length(x),
            _ => o.refl_length(x),
        };
        (d != s).then(|| format!("{} distance {d} but statistic {s}", gens.name()))
    });
    let mut out = Outcome::new();
    out.checked = n;
    out.element(None, fail);
    Ok(out)
}

/// `ℓ_D` for every element of `D(n)`, taken from breadth-first search when
/// the group fits under the BFS cap and from the closed form otherwise.
fn d_lengths(p: &VerifyParams, out: &mut Outcome) -> Result<Option<HashMap<ColoredPermutation, usize>>> {
    if d_order(p.n) <= p.bfs_cap as u128 {
        out.notes.push("type-D length taken from breadth-first search".into());
        Ok(Some(bfs_lengths(GenSet::CoxeterD, 2, p.n, p.bfs_cap)?))
    } else {
        out.notes.push("type-D length taken from the inv + nsp closed form".into());
        Ok(None)
    }
}

fn ell_d(table: &Option<HashMap<ColoredPermutation, usize>>, x: &ColoredPermutation) -> usize {
    match table {
        Some(t) => t[x],
        None => codes::length_d(x).expect("even-signed element"),
    }
}

fn d_tuple_a(o: &dyn StatOracle, x: &ColoredPermutation, ell: usize) -> Tuple {
    let tw = o.twisted(x);
    vec![
        vec![ell],
        tw.rmil_plus_set,
        tw.rmil_minus_set,
        bases(&o.set(x, SetStat::Lmil)),
        bases(&o.set(x, SetStat::Lmap)),
    ]
}

fn d_tuple_b(o: &dyn StatOracle, x: &ColoredPermutation) -> Tuple {
    let tw = o.twisted(x);
    vec![
        vec![o.sor_d(x)],
        tw.cyc_plus_set,
        tw.cyc_minus_set,
        bases(&o.set(x, SetStat::Lmic)),
        bases(&o.set(x, SetStat::Lmap)),
    ]
}

fn d_psi_pointwise(p: &VerifyParams) -> Result<Outcome> {
    let o = p.oracle();
    let mut out = Outcome::new();
    let table = d_lengths(p, &mut out)?;
    let rows = map_all(full_parts_d(p)?, |x| {
        let y = codes::psi(x).expect("even-signed element");
        let (a, b) = (d_tuple_a(o, x, ell_d(&table, x)), d_tuple_b(o, &y));
        let msg = (a != b).then(|| format!("tuple {a:?} but image {y} has {b:?}"));
        (y, msg)
    });
    out.checked = rows.len() as u64;
    out.element(
        None,
        rows.iter().find_map(|(x, (_, m))| m.clone().map(|m| (x.to_string(), m))),
    );
    let images: HashSet<&ColoredPermutation> = rows.iter().map(|(_, (y, _))| y).collect();
    if images.len() != rows.len() && out.counterexample.is_none() {
        out.element(None, Some(("-".into(), "psi is not injective".into())));
    }
    Ok(out)
}

fn d_main(p: &VerifyParams, shapes: &[FerrersBound]) -> Result<Outcome> {
    let o = p.oracle();
    let mut out = Outcome::new();
    let table = d_lengths(p, &mut out)?;
    for f in shapes {
        let rows = map_all(parts_d(f, p.cap)?, |x| {
            (d_tuple_a(o, x, ell_d(&table, x)), d_tuple_b(o, x))
        });
        out.checked += rows.len() as u64;
        out.element(Some(f), compare_multisets(&rows));
    }
    Ok(out)
}

fn d_monomials(
    o: &dyn StatOracle,
    x: &ColoredPermutation,
    ell: usize,
    agg: bool,
) -> (Monomial, Monomial) {
    let tw = o.twisted(x);
    let var = |v: Var| if agg { v.aggregate() } else { v };
    let build = |q: usize, u: usize, ts: &[usize], ss: &[usize]| {
        let mut fs = vec![(Var::Q, q as u32), (Var::U, u as u32)];
        fs.extend(ts.iter().map(|&i| (var(Var::T(i)), 1)));
        fs.extend(ss.iter().map(|&i| (var(Var::S(i)), 1)));
        Monomial::from_factors(fs)
    };
    (
        build(ell, o.set(x, SetStat::Lmil).len(), &tw.rmil_plus_set, &tw.rmil_minus_set),
        build(o.sor_d(x), o.set(x, SetStat::Lmic).len(), &tw.cyc_plus_set, &tw.cyc_minus_set),
    )
}

fn d_gf(p: &VerifyParams, shapes: &[FerrersBound], agg: bool) -> Result<Outcome> {
    let o = p.oracle();
    let mut out = Outcome::new();
    let table = d_lengths(p, &mut out)?;
    for f in shapes {
        let rows = map_all(parts_d(f, p.cap)?, |x| d_monomials(o, x, ell_d(&table, x), agg));
        out.checked += rows.len() as u64;
        let lhs_a = sum_monomials(rows.iter().map(|(_, (a, _))| a));
        let lhs_b = sum_monomials(rows.iter().map(|(_, (_, b))| b));
        let rhs = if agg { poly::gf_cor_d(f) } else { poly::gf_d(f) };
        out.polys(Some(f), "length-side sum vs product", &lhs_a, &rhs);
        out.polys(Some(f), "sorting-side sum vs product", &lhs_b, &rhs);
    }
    Ok(out)
}

fn d_ellprime(p: &VerifyParams) -> Result<Outcome> {
    let o = p.oracle();
    let n = p.n;
    let mut out = Outcome::new();
    let bfs = if d_order(n) <= p.bfs_cap as u128 {
        Some(bfs_lengths(GenSet::ReflectionsTD, 2, n, p.bfs_cap)?)
    } else {
        None
    };
    let rows = map_all(full_parts_d(p)?, |x| {
        let lt = codes::ell_tilde_d(x).expect("even-signed element");
        let cp = o.twisted(x).cyc_plus();
        let msg = if lt != n - cp {
            Some(format!("n - #{{d_i = i}} = {lt} but n - cyc_D^+ = {}", n - cp))
        } else {
            bfs.as_ref()
                .and_then(|t| (t[x] != lt).then(|| format!("T^D distance {} but code value {lt}", t[x])))
        };
        (lt, cp, msg)
    });
    out.checked = rows.len() as u64;
    out.element(
        None,
        rows.iter().find_map(|(x, (_, _, m))| m.clone().map(|m| (x.to_string(), m))),
    );
    let h_lt = histogram_poly(Var::TAgg, rows.iter().map(|(_, v)| v.0));
    let h_cp = histogram_poly(Var::TAgg, rows.iter().map(|(_, v)| v.1));
    out.polys(None, "ell-tilde histogram", &h_lt, &poly::gf_ellprime_dist_d(n));
    out.polys(None, "cyc-plus histogram", &h_cp, &poly::gf_cycplus_dist_d(n));
    if bfs.is_some() {
        out.notes.push("ell-tilde checked against reflections-TD search".into());
    }
    Ok(out)
}

fn d_code_stats(p: &VerifyParams, d: bool) -> Result<Outcome> {
    let o = p.oracle();
    let (n, fail) = first_failure(full_parts_d(p)?, |x| {
        let code = if d { codes::d_code(x) } else { codes::c_code(x) }.expect("even-signed element");
        let cs = codes::code_stats(&code.as_colored());
        let tw = o.twisted(x);
        let (first, plus, minus, pname) = if d {
            (o.set(x, SetStat::Lmic), tw.cyc_plus_set, tw.cyc_minus_set, "Cyc")
        } else {
            (o.set(x, SetStat::Lmil), tw.rmil_plus_set, tw.rmil_minus_set, "Rmil")
        };
        let fname = if d { "Lmic" } else { "Lmil" };
        let checks = [
            (format!("{fname} = Min"), bases(&first), bases(&cs.min)),
            ("Lmap = Rmil".to_string(), bases(&o.set(x, SetStat::Lmap)), bases(&cs.rmil)),
            ("Lmal = Rmip".to_string(), bases(&o.set(x, SetStat::Lmal)), bases(&cs.rmip)),
            (format!("{pname}+ = Max^0"), plus, refine(&cs.max, 0)),
            (format!("{pname}- = Max^1"), minus, refine(&cs.max, 1)),
        ];
        checks
            .into_iter()
            .find(|(_, a, b)| a != b)
            .map(|(name, a, b)| format!("{name} fails for code {code}: {a:?} vs {b:?}"))
    });
    let mut out = Outcome::new();
    out.checked = n;
    out.element(None, fail);
    out.notes.push("word statistics compared on bases".into());
    Ok(out)
}

fn d_length_bfs(p: &VerifyParams) -> Result<Outcome> {
    let o = p.oracle();
    let mut out = Outcome::new();
    let dist = bfs_lengths(GenSet::CoxeterD, 2, p.n, p.bfs_cap)?;
    let rows = map_all(full_parts_d(p)?, |x| {
        let d = dist[x];
        let c = codes::length_d(x).expect("even-signed element");
        let msg = (d != c).then(|| format!("coxeter-D distance {d} but inv + nsp gives {c}"));
        (d, o.sor_d(x), msg)
    });
    out.checked = rows.len() as u64;
    out.element(
        None,
        rows.iter().find_map(|(x, (_, _, m))| m.clone().map(|m| (x.to_string(), m))),
    );
    let h_len = histogram_poly(Var::Q, rows.iter().map(|(_, v)| v.0));
    let h_sor = histogram_poly(Var::Q, rows.iter().map(|(_, v)| v.1));
    out.polys(None, "length vs sor_D histograms", &h_len, &h_sor);
    Ok(out)
}

/// Runs every check for every `(r', n')` with `r' ≤ r`, `n' ≤ n` (type-D
/// checks only once per `n'`), in a fixed order.
pub fn check_range(ids: &[TheoremId], params: &VerifyParams) -> Result<Vec<Report>> {
    let mut reports = Vec::new();
    for &id in ids {
        let rs: Vec<usize> = if id.is_type_d() { vec![2] } else { (1..=params.r).collect() };
        let n_lo = if id.is_type_d() { 1 } else { 0 };
        for r in rs {
            for n in n_lo..=params.n {
                let mut p = VerifyParams { r, n, ..params.clone() };
                if p.f.as_ref().is_some_and(|f| f.n() != n) {
                    p.f = None;
                    p.all_f = true;
                }
                reports.push(check(id, &p)?);
            }
        }
    }
    Ok(reports)
}

/// Summary counts by status.
pub fn summarize(reports: &[Report]) -> BTreeMap<&'static str, usize> {
    let mut m = BTreeMap::new();
    for r in reports {
        *m.entry(if r.passed() { "pass" } else { "fail" }).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, r: usize) -> ColoredPermutation {
        ColoredPermutation::parse(s, r).unwrap()
    }

    #[test]
    fn ids_roundtrip() {
        assert_eq!(TheoremId::ALL.len(), 25);
        for &id in TheoremId::ALL {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
        }
        assert!("nope".parse::<TheoremId>().is_err());
    }

    #[test]
    fn comb_graph_p2() {
        let (total, steps) = sor_graph_oracle(&p("2^1,4^2,1,3^1,5^1", 3));
        assert_eq!(total, 21);
        assert_eq!(steps, vec![10, 5, 1, 3, 2]);
        assert_eq!(sor_graph_oracle(&ColoredPermutation::identity(3, 4)).0, 0);
    }

    #[test]
    fn bfs_basics() {
        let d = bfs_lengths(GenSet::CoxeterG, 3, 2, 1000).unwrap();
        let mut hist = vec![0; 7];
        for v in d.values() {
            hist[*v] += 1;
        }
        assert_eq!(hist, vec![1, 2, 3, 4, 4, 3, 1]);
        let d4 = bfs_lengths(GenSet::CoxeterG, 3, 4, 10_000).unwrap();
        assert_eq!(d4[&p("3^2,2^1,4,1^1", 3)], 8);
        for g in [GenSet::CoxeterG, GenSet::ReflectionsT, GenSet::CoxeterD, GenSet::ReflectionsTD] {
            let t = bfs_lengths(g, 2, 3, 1000).unwrap();
            assert_eq!(t[&ColoredPermutation::identity(2, 3)], 0);
        }
        assert!(bfs_lengths(GenSet::CoxeterG, 3, 6, 1000).is_err());
        assert_eq!(bfs_lengths(GenSet::CoxeterD, 2, 4, 1000).unwrap().len(), 192);
    }

    #[test]
    fn main_a_small() {
        let full = VerifyParams::new(3, 2);
        assert!(check(TheoremId::MainA, &full).unwrap().passed());
        let f = VerifyParams::new(3, 2).with_bound(FerrersBound::parse("1,2").unwrap());
        let rep = check(TheoremId::MainA, &f).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checked, 9);
    }

    #[test]
    fn negative_controls_fail() {
        let bad = VerifyParams::new(3, 2).perturbed(Perturbation::SorPlusOne);
        let rep = check(TheoremId::MainA, &bad).unwrap();
        assert_eq!(rep.status, Status::Fail);
        assert!(matches!(rep.counterexample, Some(Counterexample::Element { .. })));
        let bad = VerifyParams::new(2, 3).all_bounds().perturbed(Perturbation::CycPlusWithoutOne);
        let rep = check(TheoremId::DMain, &bad).unwrap();
        assert_eq!(rep.status, Status::Fail);
    }

    #[test]
    fn every_check_passes_small() {
        for &id in TheoremId::ALL {
            let params = VerifyParams::new(2, 3).all_bounds();
            let rep = check(id, &params).unwrap();
            assert!(rep.passed(), "{}", rep.to_text());
        }
    }

    #[test]
    fn report_rendering() {
        let rep = check(TheoremId::MainA, &VerifyParams::new(3, 2).all_bounds()).unwrap();
        assert_eq!(rep.to_text(), "main-a r=3 n=2 f=all: PASS (checked 27)");
        let js = rep.to_json(false);
        assert_eq!(js["status"], "pass");
        assert!(js.get("elapsed_ms").is_none());
        assert!(rep.to_json(true).get("elapsed_ms").is_some());
    }
}

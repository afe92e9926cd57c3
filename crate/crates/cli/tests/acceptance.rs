//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach stdout.

use std::collections::HashSet;
use std::process::{Command, ExitCode};

use colperm::codes::{self, Code, SignedCode};
use colperm::ferrers::{self, FerrersBound};
use colperm::poly::{self, Monomial, MVPoly, Var};
use colperm::stats::{self, SetStat};
use colperm::verify::{self, TheoremId, VerifyParams};
use colperm::{enumerate_group, ColoredPermutation};

type Outcome = Result<(), String>;

fn perm(s: &str, r: usize) -> ColoredPermutation {
    ColoredPermutation::parse(s, r).expect("fixture window")
}

fn run_check(id: TheoremId, params: &VerifyParams) -> Outcome {
    let rep = verify::check(id, params).map_err(|e| format!("{id}: {e}"))?;
    if rep.passed() {
        Ok(())
    } else {
        Err(rep.to_text())
    }
}

fn all_shapes(ids: &[TheoremId], rs: &[usize], ns: std::ops::RangeInclusive<usize>) -> Outcome {
    for &id in ids {
        for &r in rs {
            for n in ns.clone() {
                run_check(id, &VerifyParams::new(r, n).all_bounds())?;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 1. Tables

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn load_table(text: &str) -> Table {
    let mut lines = text.lines();
    let header = lines
        .next()
        .expect("header")
        .trim_start_matches('#')
        .split('|')
        .map(|s| s.trim().to_string())
        .collect();
    let rows = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split('|').map(|s| s.trim().to_string()).collect())
        .collect();
    Table { header, rows }
}

/// Recomputes one table cell from its column header.
fn cell(p: &ColoredPermutation, column: &str) -> String {
    let b = stats::set_stats(p);
    match column {
        "ell" => b.ell.to_string(),
        "sor" => b.sor.to_string(),
        _ => {
            let (name, t) = column.split_once('^').expect("refined column");
            let st: SetStat = name.parse().expect("set name");
            let t: usize = t.parse().expect("color");
            b.refined(st, t).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
        }
    }
}

/// Cells where the computed value differs from the printed table.
fn table_diffs(t: &Table) -> Vec<(String, String, String, String)> {
    let mut diffs = Vec::new();
    for row in &t.rows {
        let p = perm(&row[0], 3);
        for (col, printed) in t.header.iter().zip(row).skip(1) {
            let got = cell(&p, col);
            if &got != printed {
                diffs.push((row[0].clone(), col.clone(), printed.clone(), got));
            }
        }
    }
    diffs
}

fn criterion_1() -> Outcome {
    let t1 = load_table(include_str!("fixtures/table1.txt"));
    let t2 = load_table(include_str!("fixtures/table2.txt"));
    let listed: Vec<ColoredPermutation> = t1.rows.iter().map(|r| perm(&r[0], 3)).collect();
    let group: Vec<ColoredPermutation> = enumerate_group(3, 2, 100).map_err(|e| e.to_string())?.collect();
    if listed != group {
        return Err("table rows are not G(3,2) in enumeration order".into());
    }
    let d1 = table_diffs(&t1);
    if !d1.is_empty() {
        return Err(format!("table 1 mismatches: {d1:?}"));
    }
    let d2 = table_diffs(&t2);
    let expected = vec![("2^2,1".to_string(), "Lmic^1".to_string(), "2".to_string(), String::new())];
    if d2 != expected {
        return Err(format!("table 2 mismatches beyond the known erratum cell: {d2:?}"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn criterion_2() -> Outcome {
    run_check(TheoremId::MainA, &VerifyParams::new(3, 2))?;
    run_check(TheoremId::MainA, &VerifyParams::new(3, 2).with_bound(FerrersBound::parse("1,2").unwrap()))?;
    if ferrers::all_bounds(4, 100).map_err(|e| e.to_string())?.len() != 14 {
        return Err("expected 14 bounds for n = 4".into());
    }
    all_shapes(&[TheoremId::MainA], &[1, 2, 3], 1..=4)
}

fn x(t: usize, i: usize) -> MVPoly {
    MVPoly::var(Var::X { t, i })
}

fn y(t: usize, i: usize) -> MVPoly {
    MVPoly::var(Var::Y { t, i })
}

fn q(k: u32) -> MVPoly {
    MVPoly::monomial(Monomial::power(Var::Q, k))
}

fn criterion_3() -> Outcome {
    let f = FerrersBound::parse("1,2").unwrap();
    let first = &(&(&x(0, 1) * &y(0, 1)) + &(&(&x(2, 1) * &y(2, 1)) * &q(1))) + &(&(&x(1, 1) * &y(1, 1)) * &q(2));
    let second = &(&x(0, 2) + &(&x(2, 2) * &q(3))) + &(&x(1, 2) * &q(4));
    let displayed = &first * &second;
    let closed = poly::gf_main_b(3, &f);
    if closed != displayed {
        return Err(format!("closed form {closed} differs from the displayed product {displayed}"));
    }
    let (w_ell, w_sor) = poly::main_b_weights();
    for w in [w_ell, w_sor] {
        let elems = ferrers::enumerate_restricted(3, &f, 100).map_err(|e| e.to_string())?;
        let e = poly::enumerative_gf(elems, &w).map_err(|e| e.to_string())?;
        if e != displayed {
            return Err(format!("enumerative sum {e} differs from the product"));
        }
    }
    let q4 = displayed.coefficient_of(Var::Q, 4);
    let want = &(&(&x(0, 1) * &x(1, 2)) * &y(0, 1)) + &(&(&x(2, 1) * &x(2, 2)) * &y(2, 1));
    if q4 != want {
        return Err(format!("q^4 coefficient is {q4}"));
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let ids = [TheoremId::EllDist, TheoremId::SorDist, TheoremId::Cyc0Dist, TheoremId::EllprimeDist];
    for r in 1..=4u128 {
        for n in 0..=5u128 {
            let order = r.pow(n as u32) * (1..=n).product::<u128>();
            if order > 200_000 {
                continue;
            }
            for id in ids {
                run_check(id, &VerifyParams::new(r as usize, n as usize))?;
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    all_shapes(&[TheoremId::MainB, TheoremId::CorGfRestricted], &[1, 2, 3], 1..=4)
}

fn criterion_6() -> Outcome {
    let pointwise = [
        TheoremId::AcodeEll,
        TheoremId::AcodeStats,
        TheoremId::BcodeSor,
        TheoremId::BcodeStats,
        TheoremId::PhiPointwise,
        TheoremId::PhiFerrers,
    ];
    all_shapes(&pointwise, &[1, 2, 3], 0..=4)
}

fn criterion_7() -> Outcome {
    run_check(TheoremId::SorGraphOracle, &VerifyParams::new(3, 4))?;
    for r in 1..=3 {
        for n in 0..=3 {
            run_check(TheoremId::LengthBfs, &VerifyParams::new(r, n))?;
            run_check(TheoremId::ReflengthBfs, &VerifyParams::new(r, n))?;
        }
    }
    let mut w = ColoredPermutation::identity(3, 4);
    for i in [0, 1, 0, 2, 1, 0, 0, 3] {
        w = w.multiply(&ColoredPermutation::generator(3, 4, i).unwrap()).unwrap();
    }
    if w != perm("3^2,2^1,4,1^1", 3) || stats::length(&w) != 8 {
        return Err(format!("generator word gives {w} of length {}", stats::length(&w)));
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let p4 = perm("-3,2,4,-5,1", 2);
    if codes::sor_d(&p4).unwrap() != 10 {
        return Err("sor_D(P4) != 10".into());
    }
    if codes::psi(&perm("-5,-2,-1,-3,4", 2)).unwrap() != perm("-5,-1,-3,4,-2", 2) {
        return Err("psi(P5) != P6".into());
    }
    for n in 1..=5 {
        run_check(TheoremId::DLengthBfs, &VerifyParams::new(2, n))?;
        run_check(TheoremId::DEllprimeDist, &VerifyParams::new(2, n))?;
    }
    let d_ids = [TheoremId::DMain, TheoremId::DGf, TheoremId::DCorGf, TheoremId::DPsiPointwise];
    all_shapes(&d_ids, &[2], 1..=4)?;
    all_shapes(&[TheoremId::DCcodeStats, TheoremId::DDcodeStats], &[2], 1..=4)?;
    let t = |i| MVPoly::var(Var::T(i));
    let u = MVPoly::var(Var::U);
    let inner = &(&t(2) + &(&(&u * &q(1)) * &MVPoly::constant(2))) + &(&MVPoly::var(Var::S(2)) * &q(2));
    let want = &(&t(1) * &u) * &inner;
    let got = poly::gf_d(&FerrersBound::parse("2,2").unwrap());
    if got != want {
        return Err(format!("D-GF for (2,2) is {got}"));
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for r in 1..=3 {
        for n in 0..=4 {
            let group: Vec<ColoredPermutation> = enumerate_group(r, n, 100_000).unwrap().collect();
            for (name, f) in [("A", codes::a_code as fn(&_) -> Code), ("B", codes::b_code)] {
                let image: HashSet<Code> = group.iter().map(f).collect();
                let total = Code::all(r, n).count();
                if image.len() != group.len() || total != group.len() {
                    return Err(format!("{name}-code on G({r},{n}): {} images, |CS| = {total}", image.len()));
                }
                if image.iter().any(|c| Code::new(r, c.entries().to_vec()).is_err()) {
                    return Err(format!("{name}-code leaves CS({r},{n})"));
                }
            }
            for f in ferrers::all_bounds(n, 100).unwrap() {
                let fast: Vec<_> = ferrers::enumerate_restricted(r, &f, 100_000).unwrap().collect();
                let fast_set: HashSet<_> = fast.iter().cloned().collect();
                let filtered: HashSet<_> =
                    group.iter().filter(|p| f.member(p).unwrap()).cloned().collect();
                if fast.len() != fast_set.len() || fast_set != filtered {
                    return Err(format!("restricted enumeration differs from filter for r={r}, f=({f})"));
                }
            }
        }
    }
    for n in 1..=4 {
        let group: Vec<ColoredPermutation> =
            enumerate_group(2, n, 100_000).unwrap().filter(|p| p.is_even_signed()).collect();
        for (name, f) in [
            ("C", codes::c_code as fn(&_) -> colperm::Result<SignedCode>),
            ("D", codes::d_code),
        ] {
            let image: HashSet<SignedCode> = group.iter().map(|p| f(p).unwrap()).collect();
            let total = SignedCode::all(n).count();
            if image.len() != group.len() || total != group.len() {
                return Err(format!("{name}-code on D({n}): {} images, |SE| = {total}", image.len()));
            }
        }
        for f in ferrers::all_bounds(n, 100).unwrap() {
            let fast: HashSet<_> = ferrers::enumerate_restricted_d(&f, 100_000).unwrap().collect();
            let filtered: HashSet<_> = group.iter().filter(|p| f.member(p).unwrap()).cloned().collect();
            if fast != filtered {
                return Err(format!("type-D restricted enumeration differs from filter for f=({f})"));
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_colperm"))
        .args(["verify", "d-main", "--r", "2", "--n", "3", "--all-ferrers", "--perturb", "cyc-plus-without-one"])
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    if out.status.code() != Some(1) {
        return Err(format!("exit status {:?}", out.status.code()));
    }
    if !stdout.contains("FAIL") || !stdout.contains("counterexample: f=(") || !stdout.contains("element ") {
        return Err(format!("no concrete counterexample in output: {stdout}"));
    }
    let clean = Command::new(env!("CARGO_BIN_EXE_colperm"))
        .args(["verify", "d-main", "--r", "2", "--n", "3", "--all-ferrers"])
        .output()
        .map_err(|e| e.to_string())?;
    if clean.status.code() != Some(0) {
        return Err("unperturbed run did not pass".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Tables 1 and 2 for G(3,2)", criterion_1),
        ("joint multiset equidistribution over restricted sets", criterion_2),
        ("worked product for G(3,2,(1,2))", criterion_3),
        ("length, sorting index, cyc0 and ell' distributions", criterion_4),
        ("indexed generating-function product", criterion_5),
        ("code lemmas and phi", criterion_6),
        ("comb-graph and Cayley-graph oracles", criterion_7),
        ("type D", criterion_8),
        ("code bijections and restricted enumeration", criterion_9),
        ("negative control", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("PASS criterion {}: {name}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}\n  {}", k + 1, why.replace('\n', "\n  "));
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use colperm::codes::{self, Code, CodeKind, SignedCode};
use colperm::ferrers::{self, FerrersBound};
use colperm::poly::{self, MVPoly, Var, WeightSpec};
use colperm::stats::{self, SetStat};
use colperm::verify::{self, GenSet, Perturbation, Report, TheoremId, VerifyParams};
use colperm::ColoredPermutation;

#[derive(Parser, Debug)]
#[command(name = "colperm", version, about = "Colored permutation statistics, codes and theorem checks")]
struct Cli {
    /// Number of colors.
    #[arg(long, global = true, default_value_t = 1)]
    r: usize,
    /// Number of letters (for commands that do not take a window).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Ferrers bound, e.g. `2,3,3,4`.
    #[arg(long, global = true)]
    ferrers: Option<String>,
    /// Output format; `stat` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest number of elements a command may enumerate.
    #[arg(long, global = true, default_value_t = verify::DEFAULT_CAP)]
    cap: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Lehmer,
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Bijection {
    Phi,
    PhiInv,
    Psi,
    PsiInv,
    Inverse,
    Reverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GfKind {
    /// The indexed product of the restricted theorem.
    MainB,
    /// Its aggregated specialization.
    CorRestricted,
    /// The full-board aggregated product.
    FullBoard,
    /// `[n]_q! ∏ (1 + q^i [r−1]_q)`.
    Length,
    /// `∏ (t + ri − 1)`.
    Cyc0,
    /// `∏ (1 + (ri − 1) t)`.
    Ellprime,
    /// The type-D indexed product.
    D,
    /// Its aggregated specialization.
    CorD,
    /// `t ∏_{i≥2} (t + 2i − 1)`.
    CycplusD,
    /// `∏_{i≥2} (1 + (2i − 1) t)`.
    EllprimeD,
    /// Sum of `--weight` over the (restricted) group.
    Enum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    /// Cayley-graph distance (histogram without a window).
    Bfs,
    /// Comb-graph sorting distance with per-letter steps.
    SorGraph,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All statistics of one element.
    Stat {
        #[arg(allow_hyphen_values = true)]
        window: String,
    },
    /// A code of an element, or the element of a code with `--decode`.
    Code {
        #[arg(long, value_enum, default_value = "a")]
        kind: KindArg,
        /// Treat the argument as a code and print its element.
        #[arg(long)]
        decode: bool,
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Image of an element under a bijection.
    Map {
        #[arg(long, value_enum)]
        bijection: Bijection,
        #[arg(allow_hyphen_values = true)]
        window: String,
    },
    /// List the elements of G(r,n) or G(r,n,f); D(n) or D(n,f) with `--type-d`.
    Enumerate {
        #[arg(long)]
        type_d: bool,
    },
    /// A generating function, expanded.
    Gf {
        #[arg(value_enum)]
        kind: GfKind,
        /// Weight for `enum`, e.g. `q=sor,x=Cyc,y=Lmic`.
        #[arg(long)]
        weight: Option<String>,
        /// Sum over D(n) instead of G(r,n) (for `enum`).
        #[arg(long)]
        type_d: bool,
    },
    /// Check theorems exhaustively; exit 1 if any check fails.
    Verify {
        /// Theorem ids, or `all`.
        #[arg(required = true)]
        theorems: Vec<String>,
        /// Check every Ferrers bound of size n.
        #[arg(long)]
        all_ferrers: bool,
        /// Check every r' ≤ r and n' ≤ n.
        #[arg(long)]
        up_to: bool,
        /// Largest group order for breadth-first search.
        #[arg(long, default_value_t = verify::DEFAULT_BFS_CAP)]
        bfs_cap: u64,
        /// Replace a statistic by a broken one (negative control).
        #[arg(long)]
        perturb: Option<String>,
        /// Include elapsed time in JSON reports.
        #[arg(long)]
        timing: bool,
    },
    /// Independent oracles.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        /// coxeter-G, reflections-T, coxeter-D or reflections-TD.
        #[arg(long, default_value = "coxeter-G")]
        genset: String,
        #[arg(allow_hyphen_values = true)]
        window: Option<String>,
    },
}

/// Error carrying the process exit status.
struct Exit(u8, anyhow::Error);

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build();
    let result = match pool {
        Ok(pool) => pool.install(|| run(&cli)),
        Err(e) => Err(Exit(2, anyhow!(e))),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn usage<T>(r: Result<T>) -> std::result::Result<T, Exit> {
    r.map_err(|e| Exit(2, e))
}

fn run(cli: &Cli) -> std::result::Result<u8, Exit> {
    let mut out = String::new();
    let code = match &cli.command {
        Command::Verify { theorems, all_ferrers, up_to, bfs_cap, perturb, timing } => {
            let (text, passed) = usage(cmd_verify(cli, theorems, *all_ferrers, *up_to, *bfs_cap, perturb.as_deref(), *timing))?;
            out = text;
            if passed {
                0
            } else {
                1
            }
        }
        other => {
            out.push_str(&usage(match other {
                Command::Stat { window } => cmd_stat(cli, window),
                Command::Code { kind, decode, input } => cmd_code(cli, *kind, *decode, input),
                Command::Map { bijection, window } => cmd_map(cli, *bijection, window),
                Command::Enumerate { type_d } => cmd_enumerate(cli, *type_d),
                Command::Gf { kind, weight, type_d } => cmd_gf(cli, *kind, weight.as_deref(), *type_d),
                Command::Oracle { kind, genset, window } => cmd_oracle(cli, *kind, genset, window.as_deref()),
                Command::Verify { .. } => unreachable!(),
            })?);
            0
        }
    };
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    if !out.ends_with('\n') {
        let _ = stdout.write_all(b"\n");
    }
    Ok(code)
}

// ---------------------------------------------------------------------------
// helpers

fn parse_window(cli: &Cli, text: &str) -> Result<ColoredPermutation> {
    ColoredPermutation::parse(text, cli.r).with_context(|| format!("cannot parse window `{text}`"))
}

/// Windows print in signed shorthand when `r = 2`.
fn show(p: &ColoredPermutation) -> String {
    if p.r() == 2 {
        p.to_signed_string()
    } else {
        p.to_string()
    }
}

fn size(cli: &Cli) -> Result<usize> {
    if let Some(n) = cli.n {
        return Ok(n);
    }
    match bound(cli)? {
        Some(f) => Ok(f.n()),
        None => bail!("--n is required"),
    }
}

fn bound(cli: &Cli) -> Result<Option<FerrersBound>> {
    let Some(text) = &cli.ferrers else { return Ok(None) };
    let f = FerrersBound::parse(text).with_context(|| format!("invalid Ferrers bound `{text}`"))?;
    if let Some(n) = cli.n {
        if n != f.n() {
            bail!("--ferrers has {} entries but --n is {n}", f.n());
        }
    }
    Ok(Some(f))
}

fn bound_or_full(cli: &Cli) -> Result<FerrersBound> {
    Ok(match bound(cli)? {
        Some(f) => f,
        None => FerrersBound::full(size(cli)?),
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn letters_text(v: &[colperm::Letter]) -> String {
    let parts: Vec<String> = v.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn bases_text(v: &[usize], sep: &str) -> String {
    v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(sep)
}

// ---------------------------------------------------------------------------
// commands

fn cmd_stat(cli: &Cli, window: &str) -> Result<String> {
    let p = parse_window(cli, window)?;
    let b = stats::set_stats(&p);
    let type_d = p.r() == 2 && p.is_even_signed();
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut v = serde_json::to_value(&b)?;
            if type_d {
                v["sor_d"] = json!(codes::sor_d(&p)?);
                v["ell_d"] = json!(codes::length_d(&p)?);
                v["ell_tilde_d"] = json!(codes::ell_tilde_d(&p)?);
                v["twisted"] = serde_json::to_value(stats::twisted_d_stats(&p)?)?;
            }
            Ok(pretty(&v))
        }
        Format::Text => {
            let mut s = format!(
                "window: {}\nell: {}\ninv: {}\nsor: {}\nrefl_len: {}\n",
                show(&p),
                b.ell,
                b.inv,
                b.sor,
                b.refl_len
            );
            for st in SetStat::ALL {
                s.push_str(&format!("{st}: {}\n", letters_text(b.set(st))));
            }
            if type_d {
                let tw = stats::twisted_d_stats(&p)?;
                s.push_str(&format!(
                    "sor_d: {}\nell_d: {}\nell_tilde_d: {}\nCycPlus: {{{}}}\nCycMinus: {{{}}}\nRmilPlus: {{{}}}\nRmilMinus: {{{}}}\n",
                    codes::sor_d(&p)?,
                    codes::length_d(&p)?,
                    codes::ell_tilde_d(&p)?,
                    bases_text(&tw.cyc_plus_set, ","),
                    bases_text(&tw.cyc_minus_set, ","),
                    bases_text(&tw.rmil_plus_set, ","),
                    bases_text(&tw.rmil_minus_set, ","),
                ));
            }
            Ok(s)
        }
        Format::Csv | Format::Latex => {
            let f = cli.format.expect("set");
            let rows = stat_rows(&[p])?;
            render_rows(f, &rows)
        }
    }
}

fn cmd_code(cli: &Cli, kind: KindArg, decode: bool, input: &str) -> Result<String> {
    let ck = match kind {
        KindArg::Lehmer => CodeKind::Lehmer,
        KindArg::A => CodeKind::A,
        KindArg::B => CodeKind::B,
        KindArg::C => CodeKind::C,
        KindArg::D => CodeKind::D,
    };
    let json_out = cli.format == Some(Format::Json);
    if decode {
        let p = match kind {
            KindArg::C | KindArg::D => {
                let c = SignedCode::parse(input).with_context(|| format!("invalid signed code `{input}`"))?;
                if kind == KindArg::C {
                    codes::c_code_inv(&c)
                } else {
                    codes::d_code_inv(&c)
                }
            }
            _ => {
                let c = Code::parse(input, cli.r).with_context(|| format!("invalid code `{input}`"))?;
                match kind {
                    KindArg::Lehmer => codes::a_code_inv(&c).inverse(),
                    KindArg::A => codes::a_code_inv(&c),
                    _ => codes::b_code_inv(&c),
                }
            }
        };
        return Ok(if json_out { serde_json::to_string(&p)? } else { show(&p) });
    }
    let p = parse_window(cli, input)?;
    Ok(match kind {
        KindArg::C | KindArg::D => {
            let c = if kind == KindArg::C { codes::c_code(&p)? } else { codes::d_code(&p)? };
            if json_out {
                c.to_json(ck).to_string()
            } else {
                c.to_string()
            }
        }
        _ => {
            let c = match kind {
                KindArg::Lehmer => codes::lehmer(&p),
                KindArg::A => codes::a_code(&p),
                _ => codes::b_code(&p),
            };
            if json_out {
                c.to_json(ck).to_string()
            } else {
                c.to_string()
            }
        }
    })
}

fn cmd_map(cli: &Cli, bij: Bijection, window: &str) -> Result<String> {
    let p = parse_window(cli, window)?;
    let q = match bij {
        Bijection::Phi => codes::phi(&p),
        Bijection::PhiInv => codes::phi_inverse(&p),
        Bijection::Psi => codes::psi(&p)?,
        Bijection::PsiInv => codes::psi_inverse(&p)?,
        Bijection::Inverse => p.inverse(),
        Bijection::Reverse => p.reverse(),
    };
    Ok(if cli.format == Some(Format::Json) { serde_json::to_string(&q)? } else { show(&q) })
}

fn elements(cli: &Cli, type_d: bool) -> Result<Vec<ColoredPermutation>> {
    let f = bound_or_full(cli)?;
    Ok(if type_d {
        if f.n() == 0 {
            bail!("D(n) needs n ≥ 1");
        }
        ferrers::enumerate_restricted_d(&f, cli.cap)?.collect()
    } else {
        ferrers::enumerate_restricted(cli.r, &f, cli.cap)?.collect()
    })
}

type Row = Vec<(String, String)>;

fn stat_rows(ps: &[ColoredPermutation]) -> Result<Vec<Row>> {
    ps.iter()
        .map(|p| {
            let b = stats::set_stats(p);
            let mut row: Row = vec![
                ("window".into(), show(p)),
                ("ell".into(), b.ell.to_string()),
                ("sor".into(), b.sor.to_string()),
                ("refl_len".into(), b.refl_len.to_string()),
            ];
            for st in SetStat::ALL {
                for t in 0..p.r() {
                    row.push((format!("{st}^{t}"), bases_text(&b.refined(st, t), ";")));
                }
            }
            if p.r() == 2 && p.is_even_signed() {
                let tw = stats::twisted_d_stats(p)?;
                row.push(("sor_d".into(), codes::sor_d(p)?.to_string()));
                row.push(("ell_d".into(), codes::length_d(p)?.to_string()));
                row.push(("CycPlus".into(), bases_text(&tw.cyc_plus_set, ";")));
                row.push(("CycMinus".into(), bases_text(&tw.cyc_minus_set, ";")));
                row.push(("RmilPlus".into(), bases_text(&tw.rmil_plus_set, ";")));
                row.push(("RmilMinus".into(), bases_text(&tw.rmil_minus_set, ";")));
            }
            Ok(row)
        })
        .collect()
}

fn render_rows(format: Format, rows: &[Row]) -> Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some(first) = rows.first() {
                w.write_record(first.iter().map(|(k, _)| k))?;
            }
            for row in rows {
                w.write_record(row.iter().map(|(_, v)| v))?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?)
        }
        Format::Latex => {
            let mut s = String::new();
            if let Some(first) = rows.first() {
                s.push_str(&format!("\\begin{{tabular}}{{{}}}\n", "c".repeat(first.len())));
                let head: Vec<String> = first.iter().map(|(k, _)| latex_header(k)).collect();
                s.push_str(&format!("{} \\\\\n\\hline\n", head.join(" & ")));
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|(_, v)| latex_cell(v)).collect();
                    s.push_str(&format!("{} \\\\\n", cells.join(" & ")));
                }
                s.push_str("\\end{tabular}\n");
            }
            Ok(s)
        }
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|row| Value::Object(row.iter().map(|(k, v)| (k.clone(), json!(v))).collect()))
                .collect();
            Ok(pretty(&Value::Array(arr)))
        }
        Format::Text => Ok(rows.iter().map(|r| format!("{}\n", r[0].1)).collect()),
    }
}

fn latex_header(k: &str) -> String {
    match k.split_once('^') {
        Some((name, t)) => format!("$\\mathsf{{{name}}}^{{{t}}}$"),
        None => format!("${}$", k.replace('_', "\\_")),
    }
}

fn latex_cell(v: &str) -> String {
    if v.is_empty() {
        "$\\emptyset$".into()
    } else {
        format!("${}$", v.replace(';', ","))
    }
}

fn cmd_enumerate(cli: &Cli, type_d: bool) -> Result<String> {
    let ps = elements(cli, type_d)?;
    let format = cli.format.unwrap_or(Format::Text);
    if format == Format::Text {
        return Ok(ps.iter().map(|p| format!("{}\n", show(p))).collect());
    }
    render_rows(format, &stat_rows(&ps)?)
}

fn render_poly(cli: &Cli, p: &MVPoly) -> String {
    match cli.format.unwrap_or(Format::Text) {
        Format::Json => pretty(&p.to_json()),
        Format::Latex => latex_poly(p),
        _ => p.to_string(),
    }
}

fn latex_var(v: Var) -> String {
    match v {
        Var::Q => "q".into(),
        Var::U => "u".into(),
        Var::X { t, i } => format!("x_{{{t},{i}}}"),
        Var::Y { t, i } => format!("y_{{{t},{i}}}"),
        Var::XAgg(t) => format!("x_{{{t}}}"),
        Var::YAgg(t) => format!("y_{{{t}}}"),
        Var::T(i) => format!("t_{{{i}}}"),
        Var::S(i) => format!("s_{{{i}}}"),
        Var::TAgg => "t".into(),
        Var::SAgg => "s".into(),
    }
}

fn latex_poly(p: &MVPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let neg = c.sign() == num_bigint::Sign::Minus;
        let mag = c.magnitude().to_string();
        if k > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let body: String = m
            .factors()
            .iter()
            .map(|&(v, e)| if e == 1 { latex_var(v) } else { format!("{}^{{{e}}}", latex_var(v)) })
            .collect();
        if body.is_empty() {
            out.push_str(&mag);
        } else {
            if mag != "1" {
                out.push_str(&mag);
            }
            out.push_str(&body);
        }
    }
    out
}

fn cmd_gf(cli: &Cli, kind: GfKind, weight: Option<&str>, type_d: bool) -> Result<String> {
    let r = cli.r;
    let poly = match kind {
        GfKind::MainB => poly::gf_main_b(r, &bound_or_full(cli)?),
        GfKind::CorRestricted => poly::gf_cor_restricted(r, &bound_or_full(cli)?),
        GfKind::FullBoard => poly::gf_full_board(r, size(cli)?),
        GfKind::Length => poly::gf_length_dist(r, size(cli)?),
        GfKind::Cyc0 => poly::gf_cyc0_dist(r, size(cli)?),
        GfKind::Ellprime => poly::gf_ellprime_dist(r, size(cli)?),
        GfKind::D => poly::gf_d(&bound_or_full(cli)?),
        GfKind::CorD => poly::gf_cor_d(&bound_or_full(cli)?),
        GfKind::CycplusD => poly::gf_cycplus_dist_d(size(cli)?),
        GfKind::EllprimeD => poly::gf_ellprime_dist_d(size(cli)?),
        GfKind::Enum => {
            let w: WeightSpec = weight
                .ok_or_else(|| anyhow!("gf enum needs --weight"))?
                .parse()
                .context("invalid --weight")?;
            poly::enumerative_gf(elements(cli, type_d)?, &w)?
        }
    };
    Ok(render_poly(cli, &poly))
}

fn cmd_verify(
    cli: &Cli,
    theorems: &[String],
    all_f: bool,
    up_to: bool,
    bfs_cap: u64,
    perturb: Option<&str>,
    timing: bool,
) -> Result<(String, bool)> {
    let ids: Vec<TheoremId> = if theorems.iter().any(|t| t == "all") {
        TheoremId::ALL.to_vec()
    } else {
        theorems
            .iter()
            .map(|t| t.parse::<TheoremId>().map_err(anyhow::Error::from))
            .collect::<Result<_>>()?
    };
    let mut params = VerifyParams::new(cli.r, size(cli)?);
    params.f = bound(cli)?;
    params.all_f = all_f;
    params.cap = cli.cap;
    params.bfs_cap = bfs_cap;
    params.perturbation = perturb
        .map(|p| p.parse::<Perturbation>().with_context(|| format!("unknown perturbation `{p}`; expected one of cyc-plus-without-one, sor-plus-one, lmic-as-lmil")))
        .transpose()?;
    let reports: Vec<Report> = if up_to {
        verify::check_range(&ids, &params)?
    } else {
        ids.iter().map(|&id| verify::check(id, &params)).collect::<colperm::Result<_>>()?
    };
    let passed = reports.iter().all(Report::passed);
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Json => {
            let v: Vec<Value> = reports.iter().map(|r| r.to_json(timing)).collect();
            if v.len() == 1 {
                pretty(&v[0])
            } else {
                pretty(&Value::Array(v))
            }
        }
        _ => reports.iter().map(|r| format!("{}\n", r.to_text())).collect(),
    };
    Ok((text, passed))
}

fn cmd_oracle(cli: &Cli, kind: OracleKind, genset: &str, window: Option<&str>) -> Result<String> {
    let json_out = cli.format == Some(Format::Json);
    match kind {
        OracleKind::SorGraph => {
            let p = parse_window(cli, window.ok_or_else(|| anyhow!("sor-graph needs a window"))?)?;
            let (total, steps) = verify::sor_graph_oracle(&p);
            Ok(if json_out {
                json!({"total": total, "steps": steps}).to_string()
            } else {
                format!("{total} ({})", bases_text(&steps, ","))
            })
        }
        OracleKind::Bfs => {
            let g: GenSet = genset.parse()?;
            match window {
                Some(w) => {
                    let p = parse_window(cli, w)?;
                    let dist = verify::bfs_lengths(g, p.r(), p.n(), cli.cap)?;
                    let d = dist.get(&p).ok_or_else(|| anyhow!("{} is not in the searched group", show(&p)))?;
                    Ok(if json_out { json!({"distance": d}).to_string() } else { d.to_string() })
                }
                None => {
                    let dist = verify::bfs_lengths(g, cli.r, size(cli)?, cli.cap)?;
                    let mut hist = vec![0u64; dist.values().max().map_or(0, |m| m + 1)];
                    for &d in dist.values() {
                        hist[d] += 1;
                    }
                    Ok(if json_out {
                        json!({"histogram": hist}).to_string()
                    } else {
                        hist.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(",")
                    })
                }
            }
        }
    }
}

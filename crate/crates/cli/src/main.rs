use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use conecalc::catalog::{self, max_r_from_env, Params, TheoremRecord};
use conecalc::expr::{Class, Ring, Space};
use conecalc::formulas;
use conecalc::ring::render_q;
use conecalc::{Error, PsiMaps, Q};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "conecalc",
    version,
    about = "Exact intersection rings and effective cones of curve blow-ups"
)]
struct Cli {
    /// Emit JSON (sorted keys, integers as decimal strings).
    #[arg(long, global = true)]
    json: bool,
    /// Also write the output to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiply two classes and print the normal form by codimension.
    Mul {
        #[arg(long)]
        space: String,
        a: String,
        b: String,
    },
    /// Degree of a class (its top-codimension part).
    Deg {
        #[arg(long)]
        space: String,
        expr: String,
    },
    /// Pairing matrix of the standard generators in codimension k.
    Pairing {
        #[arg(long)]
        space: String,
        #[arg(long)]
        codim: usize,
    },
    /// Numerical basis and relations in codimension k.
    Numbasis {
        #[arg(long)]
        space: String,
        #[arg(long)]
        codim: usize,
    },
    /// Pushforward from P(E_{n,2}) to X_n.
    Push {
        #[arg(long)]
        n: u32,
        expr: String,
    },
    /// Pullback from X_n to P(E_{n,2}).
    Pull {
        #[arg(long)]
        n: u32,
        expr: String,
    },
    /// Rays and facets of the cones attached to a catalog case.
    Cone(CaseArgs),
    /// Verify catalog cases.
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        /// Verify every instance of every case up to CONECALC_MAX_R.
        #[arg(long, conflicts_with = "case")]
        all: bool,
    },
    /// List catalog cases, or export them as JSON with --json.
    Cases,
    /// Closed-form counts.
    #[command(subcommand)]
    Formula(FormulaCmd),
}

#[derive(Args)]
struct CaseArgs {
    #[arg(long)]
    case: Option<String>,
    /// Parameters as `n=6,k=2`; `--n 6 --k 2` also works.
    #[arg(long, action = clap::ArgAction::Append)]
    params: Vec<String>,
}

const CASE_FLAGS: [&str; 7] = ["case", "params", "all", "json", "out", "help", "version"];

/// After `verify` or `cone`, turns `--name value` for names that are not
/// real flags into `--params name=value`.
fn rewrite_param_flags(args: Vec<String>) -> Vec<String> {
    let Some(pos) = args.iter().position(|a| a == "verify" || a == "cone") else {
        return args;
    };
    let mut out: Vec<String> = args[..=pos].to_vec();
    let mut it = args.into_iter().skip(pos + 1).peekable();
    while let Some(a) = it.next() {
        let Some(body) = a.strip_prefix("--").filter(|b| !b.is_empty()) else {
            out.push(a);
            continue;
        };
        let (name, inline) = match body.split_once('=') {
            Some((n, v)) => (n.to_string(), Some(v.to_string())),
            None => (body.to_string(), None),
        };
        if CASE_FLAGS.contains(&name.as_str()) {
            let takes_value = matches!(name.as_str(), "case" | "params" | "out");
            out.push(a);
            if takes_value && inline.is_none() {
                out.extend(it.next());
            }
            continue;
        }
        match inline.or_else(|| it.next_if(|v| !v.starts_with("--"))) {
            Some(v) => {
                out.push("--params".into());
                out.push(format!("{name}={v}"));
            }
            None => out.push(a),
        }
    }
    out
}

#[derive(Subcommand)]
enum FormulaCmd {
    /// Degree of the trisecant surface of a curve of degree d, genus g.
    Berzolari {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        g: u32,
    },
    /// Nodes of the projection of a rational curve of degree d from a point on it.
    Nodes {
        #[arg(long)]
        d: u32,
    },
    /// h^0(O_P3(k)).
    H0p3 {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// h^0(O_C(k)) for a rational curve of degree d.
    H0curve {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Slope bound for a curve of degree e on a surface of degree d; the limit without --m.
    Zslope {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        m: Option<u32>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownGenerator(_) | Error::UnknownCase(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    json: Value,
    pass: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            pass: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(rewrite_param_flags(std::env::args().collect())) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli.cmd) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("json") + "\n"
            } else {
                out.text
            };
            print!("{body}");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: &Cmd) -> Result<Output, Failure> {
    match cmd {
        Cmd::Mul { space, a, b } => {
            let ring = build(space)?;
            let product = match (ring.eval_str(a)?, ring.eval_str(b)?) {
                (Class::Blowup(x), Class::Blowup(y)) => match &ring {
                    Ring::Blowup(s) => Class::Blowup(s.product(&x, &y)),
                    Ring::Secant(_) => unreachable!(),
                },
                (Class::Secant(x), Class::Secant(y)) => match &ring {
                    Ring::Secant(s) => Class::Secant(s.mul(&x, &y)?),
                    Ring::Blowup(_) => unreachable!(),
                },
                _ => unreachable!(),
            };
            Ok(graded_output(&product))
        }
        Cmd::Deg { space, expr } => {
            let ring = build(space)?;
            let d = match ring.eval_str(expr)? {
                Class::Blowup(x) => match &ring {
                    Ring::Blowup(s) => s.degree(&x)?,
                    Ring::Secant(_) => unreachable!(),
                },
                Class::Secant(x) => match &ring {
                    Ring::Secant(s) => s.degree(&x)?,
                    Ring::Blowup(_) => unreachable!(),
                },
            };
            Ok(Output::ok(
                format!("{}\n", render_q(&d)),
                json!({ "degree": render_q(&d) }),
            ))
        }
        Cmd::Pairing { space, codim } => {
            let s = blowup(space)?;
            let p = s.pairing_matrix(*codim)?;
            let mut text = format!("rows (codim {}): {}\n", p.codim, p.rows.join(", "));
            let _ = writeln!(
                text,
                "cols (codim {}): {}",
                s.dim() - p.codim,
                p.cols.join(", ")
            );
            text.push_str(&matrix_text(&p.matrix));
            Ok(Output::ok(
                text,
                json!({ "codim": p.codim.to_string(), "rows": p.rows, "cols": p.cols, "matrix": matrix_json(&p.matrix) }),
            ))
        }
        Cmd::Numbasis { space, codim } => {
            let s = blowup(space)?;
            let nb = s.numerical_basis(*codim)?;
            let rels: Vec<String> = nb.relations.iter().map(ToString::to_string).collect();
            let mut text = format!("rank {}\nbasis: {}\n", nb.rank(), nb.labels.join(", "));
            let _ = writeln!(text, "dual basis: {}", nb.dual_labels.join(", "));
            for r in &rels {
                let _ = writeln!(text, "relation: {r}");
            }
            text.push_str(&matrix_text(&nb.pairing));
            Ok(Output::ok(
                text,
                json!({
                    "codim": nb.codim.to_string(),
                    "rank": nb.rank().to_string(),
                    "basis": nb.labels,
                    "dual_basis": nb.dual_labels,
                    "relations": rels,
                    "pairing": matrix_json(&nb.pairing),
                }),
            ))
        }
        Cmd::Push { n, expr } => {
            let psi = PsiMaps::new(*n)?;
            let ring = Ring::Secant(psi.bundle().clone());
            let mut total = psi.space().zero();
            for (_, part) in ring.eval_str(expr)?.graded() {
                if let Class::Secant(g) = part {
                    total = &total + &psi.pushforward(&g)?;
                }
            }
            Ok(graded_output(&Class::Blowup(total)))
        }
        Cmd::Pull { n, expr } => {
            let psi = PsiMaps::new(*n)?;
            let ring = Ring::Blowup(psi.space().clone());
            let x = match ring.eval_str(expr)? {
                Class::Blowup(x) => x,
                Class::Secant(_) => unreachable!(),
            };
            Ok(graded_output(&Class::Secant(psi.pullback(&x)?)))
        }
        Cmd::Cone(args) => {
            let id = args
                .case
                .as_deref()
                .ok_or_else(|| Failure::Usage("cone needs --case ID".into()))?;
            let rec = catalog::find_case(id)?;
            let p = parse_params(args)?;
            let cones = rec.cones(&p)?;
            let mut text = String::new();
            let mut js = Vec::new();
            for c in &cones {
                let rays: Vec<Vec<String>> = c
                    .cone
                    .rays()
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect();
                let facets: Vec<Vec<String>> = c
                    .cone
                    .facets()
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect();
                let _ = writeln!(text, "{}\n  basis: {}", c.name, c.basis.join(", "));
                for r in &rays {
                    let _ = writeln!(text, "  ray   ({})", r.join(", "));
                }
                for f in &facets {
                    let _ = writeln!(text, "  facet ({}) >= 0", f.join(", "));
                }
                js.push(
                    json!({ "name": c.name, "basis": c.basis, "rays": rays, "facets": facets }),
                );
            }
            Ok(Output::ok(
                text,
                json!({ "case": rec.id, "params": params_json(&p), "cones": js }),
            ))
        }
        Cmd::Verify { case, all } => verify(case, *all),
        Cmd::Cases => {
            let max_r = max_r_from_env();
            let mut text = String::new();
            for r in catalog::list_cases() {
                let range = r.range_text();
                let range = if range.is_empty() {
                    "-".to_string()
                } else {
                    range
                };
                let _ = writeln!(
                    text,
                    "{:<20} {:<15} {:<9} {:<26} {}",
                    r.id, r.family, r.procedure, range, r.statement
                );
            }
            Ok(Output::ok(text, catalog::export_json(max_r)))
        }
        Cmd::Formula(f) => {
            let (name, v) = match f {
                FormulaCmd::Berzolari { d, g } => {
                    ("berzolari", formulas::berzolari(*d, *g)?.to_string())
                }
                FormulaCmd::Nodes { d } => ("nodes", formulas::projection_nodes(*d)?.to_string()),
                FormulaCmd::H0p3 { k } => ("h0p3", formulas::h0_p3(*k)?.to_string()),
                FormulaCmd::H0curve { d, k } => {
                    ("h0curve", formulas::h0_curve(*d, *k)?.to_string())
                }
                FormulaCmd::Zslope { d, e, m: Some(m) } => {
                    ("zslope", render_q(&formulas::z_slope(*d, *e, *m)?))
                }
                FormulaCmd::Zslope { d, e, m: None } => {
                    ("zslope", render_q(&formulas::z_slope_limit(*d, *e)?))
                }
            };
            Ok(Output::ok(
                format!("{v}\n"),
                json!({ "formula": name, "value": v }),
            ))
        }
    }
}

fn build(space: &str) -> Result<Ring, Failure> {
    let s: Space = space.parse()?;
    Ok(s.build()?)
}

fn blowup(space: &str) -> Result<conecalc::BlowupPresentation, Failure> {
    match build(space)? {
        Ring::Blowup(s) => Ok(s),
        Ring::Secant(_) => Err(Failure::Usage(format!(
            "`{space}` is not a blow-up; use xr, w, y or p3"
        ))),
    }
}

fn graded_output(c: &Class) -> Output {
    let parts = c.graded();
    let mut text = String::new();
    let mut js = BTreeMap::new();
    if parts.is_empty() {
        text.push_str("0\n");
    }
    for (k, p) in &parts {
        let _ = writeln!(text, "codim {k}: {p}");
        js.insert(k.to_string(), p.to_string());
    }
    Output::ok(text, json!({ "class": c.to_string(), "graded": js }))
}

fn matrix_text(m: &[Vec<Q>]) -> String {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(render_q).collect()).collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for r in &cells {
        let row: Vec<String> = r.iter().map(|c| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "[{}]", row.join(" "));
    }
    out
}

fn matrix_json(m: &[Vec<Q>]) -> Value {
    m.iter()
        .map(|r| r.iter().map(render_q).collect::<Vec<_>>())
        .collect()
}

fn params_json(p: &Params) -> Value {
    p.iter()
        .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn parse_params(args: &CaseArgs) -> Result<Params, Failure> {
    let mut p = Params::new();
    let mut put = |k: &str, v: &str| -> Result<(), Failure> {
        let k = k.trim();
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("parameter `{k}` needs an integer, got `{v}`")))?;
        if k.is_empty() || p.insert(k.to_string(), v).is_some() {
            return Err(Failure::Usage(format!(
                "parameter `{k}` given twice or unnamed"
            )));
        }
        Ok(())
    };
    for s in &args.params {
        for item in s.split(',').filter(|t| !t.trim().is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("expected name=value, got `{item}`")))?;
            put(k, v)?;
        }
    }
    Ok(p)
}

/// Instances of `rec` selected by a possibly partial parameter set.
fn select(rec: &TheoremRecord, p: &Params, max_r: i64) -> Result<Vec<Params>, Failure> {
    let full = rec.params.iter().all(|s| p.contains_key(s.name));
    if full {
        rec.validate(p)?;
        return Ok(vec![p.clone()]);
    }
    for k in p.keys() {
        if !rec.params.iter().any(|s| s.name == k) {
            return Err(Failure::Domain(format!(
                "case {} has no parameter `{k}`",
                rec.id
            )));
        }
    }
    let chosen: Vec<Params> = rec
        .instances(max_r)
        .into_iter()
        .filter(|inst| p.iter().all(|(k, v)| inst.get(k) == Some(v)))
        .collect();
    if chosen.is_empty() {
        return Err(Failure::Domain(format!(
            "no instance of {} ({}) matches the given parameters within CONECALC_MAX_R = {max_r}",
            rec.id,
            rec.range_text()
        )));
    }
    Ok(chosen)
}

fn verify(args: &CaseArgs, all: bool) -> Result<Output, Failure> {
    let max_r = max_r_from_env();
    let mut jobs: Vec<(TheoremRecord, Params)> = Vec::new();
    if all {
        if !args.params.is_empty() {
            return Err(Failure::Usage("--all takes no parameters".into()));
        }
        for rec in catalog::list_cases() {
            for p in rec.instances(max_r) {
                jobs.push((catalog::find_case(rec.id)?, p));
            }
        }
    } else {
        let id = args
            .case
            .as_deref()
            .ok_or_else(|| Failure::Usage("verify needs --case ID or --all".into()))?;
        let p = parse_params(args)?;
        let rec = catalog::find_case(id)?;
        for inst in select(&rec, &p, max_r)? {
            jobs.push((catalog::find_case(id)?, inst));
        }
    }
    let reports: Vec<_> = jobs.par_iter().map(|(rec, p)| rec.verify(p)).collect();
    let reports = reports.into_iter().collect::<conecalc::Result<Vec<_>>>()?;
    let mut text = String::new();
    for r in &reports {
        let ps: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(
            text,
            "{} {} {} ({} checks)",
            if r.pass { "PASS" } else { "FAIL" },
            r.case,
            ps.join(","),
            r.checks.len()
        );
        for c in r.failed() {
            let _ = writeln!(
                text,
                "    {}: expected {}, computed {}",
                c.name, c.expected, c.computed
            );
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    let _ = writeln!(text, "{} instances, {} failed", reports.len(), failed);
    let json = if !all && reports.len() == 1 {
        reports[0].to_json()
    } else {
        Value::Array(reports.iter().map(|r| r.to_json()).collect())
    };
    Ok(Output {
        text,
        json,
        pass: failed == 0,
    })
}

//! `sizebound` command line.
//!
//! Exit codes: 0 success, 1 error, 2 violations found, 3 refused by the cost
//! cap, 64 usage error.

use std::fs::File;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use sizebound::enumerate::{enumerate_by_edges, EnumConstraints};
use sizebound::error::Error;
use sizebound::family::{build_family, describe, FamilySpec};
use sizebound::graph::Graph;
use sizebound::graph6;
use sizebound::patterns::Pattern;
use sizebound::search::{maximize_rho, SearchConfig};
use sizebound::spectra::{
    certify_quadratic_eigenfactor, certify_rho_equals_sqrt, char_poly, compare_to_threshold, spectral_radius,
    Comparison, QuadraticThreshold,
};
use sizebound::verify::{
    check_theorem, extremal_structure_audit, scan_conjecture, thm15_witness, CheckOptions, Mode, Report, TheoremId,
};

#[derive(Parser)]
#[command(name = "sizebound", version, about = "Spectral radius bounds for graphs of fixed size")]
struct Cli {
    /// Power iteration tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Worker threads; 0 uses every available core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    G6,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a named family (star, K_{s,t}, S_n^k, S_{n,k}, book, H_{t,s}∘R_k, K_{1,r}•R_k).
    Family(FamilyArgs),
    /// Spectral radius and Perron vector by power iteration.
    Rho(RhoArgs),
    /// Exact certificates: sqrt(m) equality, quadratic eigenfactors, threshold comparisons.
    Certify(CertifyArgs),
    /// Enumerate isomorphism classes with m edges, optionally F-free.
    Enum(EnumArgs),
    /// Hill climbing for the largest spectral radius among F-free graphs with m edges.
    Search(SearchArgs),
    /// Check a bound statement (T1.1, T1.2, T1.3i, T1.3ii, T1.4C5, T1.4C6, T1.5),
    /// a lemma suite (L5.1, L5.2, L5.4) or a boundary example (R2.1, R4.1).
    Verify(VerifyArgs),
    /// Scan for counterexamples to the open statements 6.1 (cycles above the split
    /// threshold) and 6.2 (B_{r+1}-free bound sqrt(m)).
    Scan(ScanArgs),
    /// Cycle witnesses C_3..C_{2k+2} for a graph above the pancyclicity threshold.
    Witness(WitnessArgs),
    /// Structure audit of an extremal F-free graph (connectivity, cut vertices, degree-2 twins).
    Audit(AuditArgs),
}

#[derive(Args)]
struct GraphArg {
    /// Graph in graph6; read from stdin when absent.
    #[arg(long)]
    g6: Option<String>,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family spec: star:M, K:S:T, S:N:K, split:N:K, book:R, R:K, H:T:S:K[:i-j,...],
    /// KR:R:K, C:T, C+:T, P:V, complete:N.
    #[arg(long)]
    spec: String,
    /// Also print the spectral radius and any exact certificate.
    #[arg(long)]
    rho: bool,
}

#[derive(Args)]
struct RhoArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Print the Perron vector.
    #[arg(long)]
    perron: bool,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Certify rho = sqrt(m) exactly.
    #[arg(long)]
    sqrt: bool,
    /// Remainder of the characteristic polynomial modulo x^2 - p x - q, given as p,q.
    #[arg(long, value_name = "P,Q")]
    quadratic: Option<String>,
    /// Compare rho with a threshold: sqrt, book, turan:R, pancyclic:K or split:K.
    #[arg(long)]
    threshold: Option<String>,
}

#[derive(Args)]
struct EnumArgs {
    #[arg(long)]
    edges: usize,
    /// Forbidden patterns: C5, C4+, K2,4, B3, K4, P7, g6:<graph6>.
    #[arg(long, num_args = 1..)]
    forbid: Vec<Pattern>,
    #[arg(long)]
    connected: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    edges: usize,
    #[arg(long, num_args = 1..)]
    forbid: Vec<Pattern>,
    #[arg(long, default_value_t = 10)]
    restarts: usize,
    #[arg(long, default_value_t = 1000)]
    max_steps: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    theorem: String,
    /// Size range a..b or a single size.
    #[arg(long, value_parser = parse_range)]
    m: Option<(usize, usize)>,
    #[arg(long, value_parser = parse_mode, default_value = "exhaustive")]
    mode: Mode,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Largest size run exhaustively.
    #[arg(long, default_value_t = 14)]
    exhaustive_cap: usize,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    /// Random mode: number of graphs and their largest order.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 16)]
    max_order: usize,
}

#[derive(Args)]
struct ScanArgs {
    /// 6.1 or 6.2.
    #[arg(long)]
    conjecture: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_parser = parse_range)]
    m: (usize, usize),
    #[arg(long, default_value_t = 14)]
    exhaustive_cap: usize,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, num_args = 1..)]
    forbid: Vec<Pattern>,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.trim_start_matches('='))?)),
        None => num(s).map(|m| (m, m)),
    }
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn num(x: f64) -> String {
    format!("{x:.15}")
}

/// Primary output, written once after all work is done.
struct Output {
    text: String,
    exit: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, exit: 0 }
    }
}

fn read_graph(arg: &GraphArg) -> anyhow::Result<Graph> {
    let text = match &arg.g6 {
        Some(s) => s.clone(),
        None => {
            let mut line = String::new();
            io::stdin().lock().read_line(&mut line).context("reading graph6 from stdin")?;
            line
        }
    };
    Ok(graph6::parse(text.trim())?)
}

fn json_line(v: &impl serde::Serialize) -> String {
    serde_json::to_string(v).expect("serialisable") + "\n"
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let fmt = cli.format;
    match &cli.cmd {
        Cmd::Family(a) => family(a, cli.tol, fmt),
        Cmd::Rho(a) => {
            let g = read_graph(&a.graph)?;
            let c = spectral_radius(&g, cli.tol)?;
            if fmt == Some(Format::Json) {
                let mut v = json!({"graph6": graph6::write(&g), "rho": c.rho, "residual": c.residual,
                    "iterations": c.iterations});
                if a.perron {
                    v["perron"] = json!(c.perron);
                }
                return Ok(Output::ok(json_line(&v)));
            }
            let mut s = format!("rho {}\nresidual {:.15e}\niterations {}\n", num(c.rho), c.residual, c.iterations);
            if a.perron {
                let xs: Vec<String> = c.perron.iter().map(|&x| num(x)).collect();
                s += &format!("perron {}\n", xs.join(" "));
            }
            Ok(Output::ok(s))
        }
        Cmd::Certify(a) => certify(a, cli.tol, fmt),
        Cmd::Enum(a) => {
            let c = EnumConstraints::new(a.edges).forbid(a.forbid.iter().cloned()).connected(a.connected);
            let mut lines = Vec::new();
            enumerate_by_edges(&c, |e| lines.push(e.form.0.clone()))?;
            lines.sort();
            Ok(Output::ok(lines.iter().map(|l| format!("{l}\n")).collect()))
        }
        Cmd::Search(a) => {
            let cfg = SearchConfig {
                restarts: a.restarts,
                max_steps: a.max_steps,
                seed: cli.seed,
                ..SearchConfig::new(a.edges, a.forbid.clone())
            };
            let res = maximize_rho(&cfg)?;
            let g6 = graph6::write(&res.best);
            match fmt {
                Some(Format::G6) => Ok(Output::ok(format!("{g6}\n"))),
                Some(Format::Text) => Ok(Output::ok(format!(
                    "{g6}\nrho {}\nfamily {}\n",
                    num(res.cert.rho),
                    describe(&res.best).unwrap_or_else(|| "-".into())
                ))),
                _ => Ok(Output::ok(json_line(&json!({
                    "graph6": g6,
                    "rho": res.cert.rho,
                    "family": describe(&res.best),
                    "restarts": res.restarts,
                    "trace": res.trace,
                })))),
            }
        }
        Cmd::Verify(a) => {
            let id = TheoremId::from_parts(&a.theorem, a.k, a.r, a.t)?;
            let (lo, hi) = match (a.m, id) {
                (Some(range), _) => range,
                (None, TheoremId::L5_4(None)) => (8, 40),
                (None, TheoremId::R2_1 | TheoremId::R4_1 | TheoremId::L5_4(_)) => (0, 0),
                (None, _) if a.mode == Mode::Random => (0, 0),
                (None, _) => bail!("--m is required for {id}"),
            };
            let opts = CheckOptions {
                mode: a.mode,
                exhaustive_cap: a.exhaustive_cap,
                restarts: a.restarts,
                seed: cli.seed,
                samples: a.samples,
                max_order: a.max_order,
                ..CheckOptions::default()
            };
            report_output(&check_theorem(&id, lo, hi, &opts)?, fmt)
        }
        Cmd::Scan(a) => {
            let name = a.conjecture.trim_start_matches('C');
            let id = TheoremId::from_parts(name, a.k, a.r, None)?;
            if !id.is_conjecture() {
                bail!("{} is not an open statement; use verify", a.conjecture);
            }
            let opts = CheckOptions { exhaustive_cap: a.exhaustive_cap, seed: cli.seed, ..CheckOptions::default() };
            report_output(&scan_conjecture(&id, a.m.0, a.m.1, &opts)?, fmt)
        }
        Cmd::Witness(a) => {
            let g = read_graph(&a.graph)?;
            let w = thm15_witness(&g, a.k)?;
            match (w, fmt) {
                (None, Some(Format::Json)) => Ok(Output::ok("null\n".into())),
                (None, _) => Ok(Output::ok("none: rho is not above the threshold\n".into())),
                (Some(w), Some(Format::Text)) => {
                    let mut s = format!("rho {}\nthreshold {}\nj* {}\n", num(w.rho), num(w.threshold), w.j_star);
                    for (t, c) in &w.cycles {
                        s += &format!("C{t} {c:?}\n");
                    }
                    Ok(Output::ok(s))
                }
                (Some(w), _) => Ok(Output::ok(json_line(&w))),
            }
        }
        Cmd::Audit(a) => {
            let g = read_graph(&a.graph)?;
            let res = extremal_structure_audit(&g, &a.forbid)?;
            let failed = res.iter().any(|r| r.applicable && !r.passed);
            let text = if fmt == Some(Format::Text) {
                res.iter()
                    .map(|r| {
                        format!(
                            "{} applicable={} passed={}{}\n",
                            r.clause,
                            r.applicable,
                            r.passed,
                            r.witness.as_ref().map(|w| format!(" witness={w}")).unwrap_or_default()
                        )
                    })
                    .collect()
            } else {
                json_line(&res)
            };
            Ok(Output { text, exit: if failed { 2 } else { 0 } })
        }
    }
}

fn family(a: &FamilyArgs, tol: f64, fmt: Option<Format>) -> anyhow::Result<Output> {
    let spec: FamilySpec = a.spec.parse()?;
    let g = build_family(&spec)?;
    let g6 = graph6::write(&g);
    if !a.rho || fmt == Some(Format::G6) {
        return Ok(Output::ok(format!("{g6}\n")));
    }
    let c = spectral_radius(&g, tol)?;
    let exact = exact_line(&g, c.rho);
    if fmt == Some(Format::Json) {
        return Ok(Output::ok(json_line(&json!({
            "spec": spec.to_string(), "graph6": g6, "n": g.order(), "m": g.size(),
            "rho": c.rho, "exact": exact,
        }))));
    }
    let mut s = format!("{}\n", num(c.rho));
    if let Some(e) = exact {
        s += &format!("{e}\n");
    }
    Ok(Output::ok(s))
}

/// Exact statement about rho when one is available.
fn exact_line(g: &Graph, rho: f64) -> Option<String> {
    let m = g.size();
    if let Ok(c) = certify_rho_equals_sqrt(g) {
        if c.is_exact {
            return Some(format!("exact: rho = sqrt({m}) is a root of the characteristic polynomial"));
        }
    }
    let r = rho.round();
    if (rho - r).abs() < 1e-6 {
        let cp = char_poly(g).ok()?;
        if cp.eval_int(&BigInt::from(r as i64)).to_string() == "0" {
            return Some(format!("exact: rho = {r} is a root of the characteristic polynomial"));
        }
    }
    None
}

fn parse_threshold(s: &str, m: usize) -> anyhow::Result<QuadraticThreshold> {
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n, Some(a.parse::<usize>().with_context(|| format!("threshold parameter in {s:?}"))?)),
        None => (s, None),
    };
    let need = || arg.ok_or_else(|| anyhow!("threshold {name} needs a parameter, e.g. {name}:2"));
    Ok(match name {
        "sqrt" => QuadraticThreshold::sqrt(m),
        "book" => QuadraticThreshold::book(m),
        "turan" => QuadraticThreshold::turan(need()?, m),
        "pancyclic" => QuadraticThreshold::pancyclic(need()?, m),
        "split" => QuadraticThreshold::split(need()?, m),
        _ => bail!("unknown threshold {s:?}"),
    })
}

fn certify(a: &CertifyArgs, tol: f64, fmt: Option<Format>) -> anyhow::Result<Output> {
    let g = read_graph(&a.graph)?;
    if !a.sqrt && a.quadratic.is_none() && a.threshold.is_none() {
        bail!("certify needs --sqrt, --quadratic or --threshold");
    }
    let mut out = serde_json::Map::new();
    let mut text = String::new();
    if a.sqrt {
        let c = certify_rho_equals_sqrt(&g)?;
        text += &format!("sqrt m={} u={} v={} exact={}\n", c.m, c.u, c.v, c.is_exact);
        out.insert("sqrt".into(), serde_json::to_value(&c)?);
    }
    if let Some(pq) = &a.quadratic {
        let (p, q) = pq.split_once(',').ok_or_else(|| anyhow!("--quadratic expects p,q"))?;
        let r = certify_quadratic_eigenfactor(&g, p.trim().parse()?, q.trim().parse()?)?;
        text += &format!("remainder {} x + {} divides={}\n", r.c1, r.c0, r.divides);
        out.insert("quadratic".into(), serde_json::to_value(&r)?);
    }
    if let Some(t) = &a.threshold {
        let th = parse_threshold(t, g.size())?;
        let c = spectral_radius(&g, tol)?;
        let cmp = compare_to_threshold(&g, &c, &th)?;
        let verdict = match &cmp {
            Comparison::Below => "below",
            Comparison::Above => "above",
            Comparison::Equal(_) => "equal",
            Comparison::Unresolved { .. } => "unresolved",
        };
        text += &format!("rho {} threshold {} {verdict}\n", num(c.rho), num(th.value()));
        out.insert(
            "threshold".into(),
            json!({"threshold": th.to_string(), "value": th.value(), "rho": c.rho, "verdict": verdict}),
        );
    }
    if fmt == Some(Format::Json) {
        Ok(Output::ok(json_line(&Value::Object(out))))
    } else {
        Ok(Output::ok(text))
    }
}

fn report_output(r: &Report, fmt: Option<Format>) -> anyhow::Result<Output> {
    let text = match fmt {
        Some(Format::Csv) => {
            let mut s = String::from("m,graphs,in_hypothesis,threshold,max_rho,max_rho_graph6,above,equal,unresolved\n");
            for p in &r.per_m {
                let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
                s += &format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    p.m,
                    p.graphs,
                    p.in_hypothesis,
                    opt(p.threshold),
                    opt(p.max_rho),
                    p.max_rho_graph6.clone().unwrap_or_default(),
                    p.above,
                    p.equal,
                    p.unresolved
                );
            }
            s
        }
        Some(Format::Text) => {
            let mut s = format!(
                "{} {} m={}..{} mode={}: {:?}, {} graphs, {} violations, {} equality cases, {} boundary findings, {} unresolved\n",
                r.kind,
                r.id,
                r.m_range[0],
                r.m_range[1],
                r.mode,
                r.status,
                r.graphs_checked,
                r.violations.len(),
                r.equality_cases.len(),
                r.boundary_findings.len(),
                r.unresolved.len()
            );
            for v in &r.violations {
                s += &format!("violation m={} {} rho={} {}\n", v.m, v.graph6, num(v.rho), v.reason);
            }
            s
        }
        _ => r.to_json_line() + "\n",
    };
    Ok(Output { text, exit: if r.passed() { 0 } else { 2 } })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            let refused = matches!(e.downcast_ref::<Error>(), Some(Error::Refused(_)));
            return ExitCode::from(if refused { 3 } else { 1 });
        }
    };
    let written = match &cli.out {
        Some(p) => File::create(p).and_then(|mut f| f.write_all(out.text.as_bytes())),
        None => io::stdout().lock().write_all(out.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(out.exit)
}

//! `kpath`: command-line front end.
//!
//! Exit codes: 0 success, member or verified; 1 non-member or counterexample;
//! 2 usage or format error; 3 oracle budget exceeded.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use kpath_core::graph::edgelist;
use kpath_core::lp::{
    find_non_tu_witness, incidence_matrix, lp_extract_certificates_with, nu_star_with, tau_star_with, ExtractError,
    RelaxationError,
};
use kpath_core::oracle::{
    nu_k_with, tau_k_with, validate_certificates, KMatching, KVertexCover, OracleConfig, OracleError,
};
use kpath_core::recognition::{recognize_h3, recognize_h4, recognize_hk_prime, RecognitionReport};
use kpath_core::solver::{
    format_certificates, parse_certificates, solve_bipartite_k2, solve_forest, solve_h4, solve_hk_prime, SolveError,
};
use kpath_core::Graph;
use kpath_harness::{
    enumerate_graphs, membership_table, parse_graph6_lines, probe_subgraph_closure, to_graph6, verify_graphs,
    CheckKind, EnumerationSpec, HarnessConfig, HarnessError, VerificationReport, DEFAULT_CAP,
};

#[derive(Parser)]
#[command(name = "kpath", version, about = "Exact k-path packings and k-path vertex covers")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Number of vertices per path.
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Input graph format.
    #[arg(long, value_enum, default_value_t = Format::Edgelist, global = true)]
    format: Format,
    /// Input file, `-` for standard input.
    #[arg(long, global = true)]
    input: Option<String>,
    /// Output file, `-` for standard output.
    #[arg(long, default_value = "-", global = true)]
    output: String,
    /// Machine-readable output, one JSON document per line.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for `verify` and `conjecture`.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal k-matching and k-vertex cover with the method used.
    Solve,
    /// Structural membership test (k = 3, k = 4 or odd k).
    Recognize,
    /// Validate a certificate file against the input graph.
    Certify {
        /// Certificate file as written by `solve`.
        #[arg(long)]
        certificate: String,
    },
    /// Exact LP relaxation values.
    Lp,
    /// Exhaustive comparison of a recognizer or property with the oracle.
    Verify {
        #[arg(long, value_parser = parse_check)]
        check: CheckKind,
        #[command(flatten)]
        range: Range,
    },
    /// Probes of open questions on all small graphs.
    Conjecture {
        #[arg(value_enum)]
        probe: Probe,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
    },
    /// Search the k-path incidence matrix for a square submatrix with
    /// determinant outside {-1, 0, 1}.
    TuCheck {
        #[arg(long, default_value_t = 3)]
        max_order: usize,
    },
}

#[derive(Args)]
struct Range {
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    connected: bool,
    /// Only graphs whose cycles all have at least this many vertices.
    #[arg(long)]
    girth: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Probe {
    /// Induced-subgraph against all-subgraph membership.
    Subgraphs,
    /// Membership table and minimum degree of members.
    Degeneracy,
}

fn parse_check(s: &str) -> Result<CheckKind, String> {
    CheckKind::parse(s).ok_or_else(|| "expected one of h3, h4, hk-prime, subgraphs, degeneracy, filters".into())
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::Budget { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<RelaxationError> for Failure {
    fn from(e: RelaxationError) -> Self {
        match e {
            RelaxationError::Oracle(o) => o.into(),
            RelaxationError::Lp(l) => usage(l.to_string()),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        usage(e.to_string())
    }
}

struct Ctx {
    global: Global,
    oracle: OracleConfig,
    out: String,
    code: u8,
}

impl Ctx {
    fn k(&self) -> Result<usize, Failure> {
        match self.global.k {
            Some(0) => Err(usage("--k must be positive")),
            Some(k) => Ok(k),
            None => Err(usage("--k is required for this command")),
        }
    }

    fn read_input(&self) -> Result<String, Failure> {
        read_source(self.global.input.as_deref().unwrap_or("-"))
    }

    fn graphs(&self) -> Result<Vec<Graph>, Failure> {
        let text = self.read_input()?;
        match self.global.format {
            Format::Edgelist => edgelist::parse(&text)
                .map(|g| vec![g])
                .map_err(|e| usage(e.to_string())),
            Format::Graph6 => parse_graph6_lines(&text).map_err(|e| usage(e.to_string())),
        }
    }

    fn single_graph(&self) -> Result<Graph, Failure> {
        let mut gs = self.graphs()?;
        if gs.len() != 1 {
            return Err(usage(format!("expected exactly one graph, found {}", gs.len())));
        }
        Ok(gs.remove(0))
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        if !self.out.ends_with('\n') {
            self.out.push('\n');
        }
    }

    fn flag(&mut self, code: u8) {
        self.code = self.code.max(code);
    }

    fn harness(&self) -> HarnessConfig {
        HarnessConfig {
            oracle: self.oracle,
            threads: self.global.threads,
            cap: DEFAULT_CAP,
        }
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| usage(format!("reading standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| usage(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

struct Solved {
    dispatch: &'static str,
    nu: usize,
    tau: usize,
    matching: KMatching,
    cover: KVertexCover,
    notes: Vec<String>,
}

type Attempt = Option<(&'static str, Result<(KMatching, KVertexCover), SolveError>)>;

fn structured(g: &Graph, k: usize, notes: &mut Vec<String>) -> Option<(&'static str, KMatching, KVertexCover)> {
    let attempt: Attempt = if g.is_forest() {
        Some(("forest", solve_forest(g, k).map(|s| (s.matching, s.cover))))
    } else if k == 2 && g.bipartition().is_some() {
        Some(("bipartite", solve_bipartite_k2(g)))
    } else if k == 3 && recognize_h3(g).member {
        Some(("h3", solve_hk_prime(g, 3).map(|s| (s.matching, s.cover))))
    } else if k == 4 && recognize_h4(g).member {
        Some(("h4", solve_h4(g).map(|s| (s.matching, s.cover))))
    } else if k >= 5 && k % 2 == 1 && recognize_hk_prime(g, k).is_ok_and(|r| r.member) {
        Some(("hk-prime", solve_hk_prime(g, k).map(|s| (s.matching, s.cover))))
    } else {
        None
    };
    match attempt? {
        (name, Ok((m, c))) => Some((name, m, c)),
        (name, Err(e)) => {
            notes.push(format!("{name} solver failed: {e}"));
            None
        }
    }
}

fn solve_graph(g: &Graph, k: usize, oracle: &OracleConfig) -> Result<Solved, Failure> {
    let mut notes = Vec::new();
    if let Some((dispatch, matching, cover)) = structured(g, k, &mut notes) {
        let v = matching.len();
        return Ok(Solved {
            dispatch,
            nu: v,
            tau: v,
            matching,
            cover,
            notes,
        });
    }
    match lp_extract_certificates_with(g, k, oracle) {
        Ok((matching, cover)) => {
            let v = matching.len();
            return Ok(Solved {
                dispatch: "lp",
                nu: v,
                tau: v,
                matching,
                cover,
                notes,
            });
        }
        Err(ExtractError::NotInClass(why)) => notes.push(format!("lp extraction: {why}")),
        Err(ExtractError::Relaxation(e)) => notes.push(format!("lp extraction: {e}")),
    }
    let (nu, matching) = nu_k_with(g, k, oracle)?;
    let (tau, cover) = tau_k_with(g, k, oracle)?;
    Ok(Solved {
        dispatch: "oracle",
        nu,
        tau,
        matching,
        cover,
        notes,
    })
}

fn paths_json(m: &KMatching) -> Vec<Vec<usize>> {
    m.paths().iter().map(|p| p.vertices().to_vec()).collect()
}

fn cmd_solve(ctx: &mut Ctx) -> Result<(), Failure> {
    let k = ctx.k()?;
    let graphs = ctx.graphs()?;
    let many = graphs.len() > 1 || ctx.global.format == Format::Graph6;
    for (i, g) in graphs.iter().enumerate() {
        let s = solve_graph(g, k, &ctx.oracle)?;
        if s.nu != s.tau {
            ctx.flag(1);
        }
        if ctx.global.json {
            let doc = json!({
                "graph": i,
                "k": k,
                "dispatch": s.dispatch,
                "nu": s.nu,
                "tau": s.tau,
                "matching": paths_json(&s.matching),
                "cover": s.cover.vertices(),
                "notes": s.notes,
            });
            ctx.line(doc.to_string());
            continue;
        }
        if many {
            if i > 0 {
                ctx.line("");
            }
            ctx.line(format!("# graph {i}: {}", to_graph6(g)));
        }
        ctx.line(format!("# dispatch: {}", s.dispatch));
        for n in &s.notes {
            ctx.line(format!("# note: {n}"));
        }
        if s.nu != s.tau {
            ctx.line(format!("# not in G_{k}: nu_k = {}, tau_k = {}", s.nu, s.tau));
        }
        ctx.line(format_certificates(&s.matching, &s.cover));
    }
    Ok(())
}

fn recognize_graph(g: &Graph, k: usize) -> Result<RecognitionReport, Failure> {
    match k {
        3 => Ok(recognize_h3(g)),
        4 => Ok(recognize_h4(g)),
        k if k % 2 == 1 => recognize_hk_prime(g, k).map_err(|e| usage(e.to_string())),
        _ => Err(usage(format!(
            "recognition is available for k = 3, k = 4 and odd k >= 5, not k = {k}"
        ))),
    }
}

fn cmd_recognize(ctx: &mut Ctx) -> Result<(), Failure> {
    let k = ctx.k()?;
    let graphs = ctx.graphs()?;
    let many = ctx.global.format == Format::Graph6;
    for g in &graphs {
        let r = recognize_graph(g, k)?;
        if !r.member {
            ctx.flag(1);
        }
        if ctx.global.json {
            ctx.line(serde_json::to_string(&r).expect("report serializes"));
        } else if many {
            let verdict = match &r.witness {
                None => "member".to_string(),
                Some(w) => format!("non-member: {w}"),
            };
            ctx.line(format!("{} {verdict}", to_graph6(g)));
        } else {
            ctx.line(r.to_text());
        }
    }
    Ok(())
}

fn cmd_certify(ctx: &mut Ctx, certificate: &str) -> Result<(), Failure> {
    let k = ctx.k()?;
    let g = ctx.single_graph()?;
    let text = read_source(certificate)?;
    let file = parse_certificates(&text).map_err(|e| usage(format!("{certificate}: {e}")))?;
    let verdict = file.to_certificates(&g).and_then(|(m, c)| {
        validate_certificates(&g, k, &m, &c)?;
        Ok(m.len())
    });
    let (ok, message) = match verdict {
        Ok(v) if v == file.value => (true, format!("valid: nu_{k} = tau_{k} = {v}")),
        Ok(v) => (
            false,
            format!("invalid: certificates prove {v} but the file states {}", file.value),
        ),
        Err(e) => (false, format!("invalid: {e}")),
    };
    if !ok {
        ctx.flag(1);
    }
    if ctx.global.json {
        ctx.line(json!({ "valid": ok, "message": message }).to_string());
    } else {
        ctx.line(message);
    }
    Ok(())
}

fn cmd_lp(ctx: &mut Ctx) -> Result<(), Failure> {
    let k = ctx.k()?;
    let graphs = ctx.graphs()?;
    let many = ctx.global.format == Format::Graph6;
    for g in &graphs {
        let (nu, _) = nu_star_with(g, k, &ctx.oracle)?;
        let (tau, _) = tau_star_with(g, k, &ctx.oracle)?;
        if ctx.global.json {
            ctx.line(json!({ "k": k, "nu_star": nu.to_string(), "tau_star": tau.to_string() }).to_string());
        } else if many {
            ctx.line(format!("{} {nu} {tau}", to_graph6(g)));
        } else {
            ctx.line(format!("nu*: {nu}\ntau*: {tau}"));
        }
    }
    Ok(())
}

fn emit_report(ctx: &mut Ctx, r: &VerificationReport) {
    eprintln!("wall time: {} ms", r.wall_time_ms);
    if ctx.global.json {
        let mut v = serde_json::to_value(r).expect("report serializes");
        v.as_object_mut().expect("object").remove("wall_time_ms");
        ctx.line(v.to_string());
    } else {
        ctx.line(r.to_text());
    }
    if r.mismatches > 0 {
        ctx.flag(1);
    } else if !r.skipped.is_empty() {
        ctx.flag(3);
    }
}

fn cmd_verify(ctx: &mut Ctx, check: CheckKind, range: &Range) -> Result<(), Failure> {
    let k = match (check, ctx.global.k) {
        (CheckKind::H3, None) => 3,
        (CheckKind::H4, None) => 4,
        _ => ctx.k()?,
    };
    let spec = EnumerationSpec {
        n_min: range.n_min,
        n_max: range.n_max.unwrap_or(8),
        connected: range.connected,
        min_girth: range.girth,
        k,
        check,
    };
    spec.validate()?;
    let cfg = ctx.harness();
    let graphs = match ctx.global.input {
        Some(_) => ctx.graphs()?,
        None => enumerate_graphs(&spec, &cfg)?,
    };
    let r = verify_graphs(&graphs, &spec, &cfg)?;
    emit_report(ctx, &r);
    Ok(())
}

fn cmd_conjecture(ctx: &mut Ctx, probe: Probe, n_max: usize) -> Result<(), Failure> {
    let k = ctx.k()?;
    let cfg = ctx.harness();
    let r = match probe {
        Probe::Subgraphs => probe_subgraph_closure(n_max, k, &cfg)?,
        Probe::Degeneracy => membership_table(n_max, k, &cfg)?,
    };
    emit_report(ctx, &r);
    Ok(())
}

fn cmd_tu_check(ctx: &mut Ctx, max_order: usize) -> Result<(), Failure> {
    let k = ctx.k()?;
    let g = ctx.single_graph()?;
    let m = incidence_matrix(&g, k);
    let w = find_non_tu_witness(&m, max_order);
    if ctx.global.json {
        let doc = match &w {
            Some(w) => json!({
                "rows": w.rows,
                "columns": w.columns.iter().map(|&c| m.columns[c].vertices().to_vec()).collect::<Vec<_>>(),
                "determinant": w.determinant,
            }),
            None => json!({ "witness": null, "max_order": max_order }),
        };
        ctx.line(doc.to_string());
        return Ok(());
    }
    match w {
        Some(w) => {
            let mut s = format!("witness of order {} with determinant {}\n", w.rows.len(), w.determinant);
            let _ = writeln!(s, "rows (vertices): {}", join(&w.rows));
            for &c in &w.columns {
                let _ = writeln!(s, "column (path): {}", join(m.columns[c].vertices()));
            }
            ctx.line(s);
        }
        None => ctx.line(format!("no witness up to order {max_order}")),
    }
    Ok(())
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> Result<Ctx, Failure> {
    let oracle = OracleConfig::from_env()?;
    let mut ctx = Ctx {
        global: cli.global,
        oracle,
        out: String::new(),
        code: 0,
    };
    match &cli.command {
        Command::Solve => cmd_solve(&mut ctx)?,
        Command::Recognize => cmd_recognize(&mut ctx)?,
        Command::Certify { certificate } => cmd_certify(&mut ctx, certificate)?,
        Command::Lp => cmd_lp(&mut ctx)?,
        Command::Verify { check, range } => cmd_verify(&mut ctx, *check, range)?,
        Command::Conjecture { probe, n_max } => cmd_conjecture(&mut ctx, *probe, *n_max)?,
        Command::TuCheck { max_order } => cmd_tu_check(&mut ctx, *max_order)?,
    }
    Ok(ctx)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.global.output.clone();
    match run(cli) {
        Ok(ctx) => {
            let written = if output == "-" {
                std::io::stdout().write_all(ctx.out.as_bytes())
            } else {
                std::fs::write(&output, &ctx.out)
            };
            if let Err(e) = written {
                eprintln!("kpath: writing {output}: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(ctx.code)
        }
        Err(f) => {
            eprintln!("kpath: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

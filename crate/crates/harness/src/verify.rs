use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_edge_list;
use crate::generate::generate_hereditary;
use crate::HarnessError;
use kpath_core::graph::girth;
use kpath_core::oracle::{in_gk_all_subgraphs_with, in_gk_with, OracleConfig, OracleError};
use kpath_core::recognition::{cycle_filters, recognize_h3, recognize_h4, recognize_hk_prime, FilterOutcome};
use kpath_core::Graph;

pub const DEFAULT_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// `recognize_h3` against `in_Gk(., 3)`.
    H3,
    /// `recognize_h4` against `in_Gk(., 4)`.
    H4,
    /// `recognize_hk_prime` against `in_Gk(., k)` for odd `k`, girth at least `k`.
    HkPrime,
    /// Induced-subgraph membership against all-subgraph membership.
    Subgraphs,
    /// Members of `G_k` have minimum degree at most `k`; also emits the
    /// membership table.
    Degeneracy,
    /// Members of `G_k` pass the cycle filters.
    Filters,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::H3 => "h3",
            CheckKind::H4 => "h4",
            CheckKind::HkPrime => "hk-prime",
            CheckKind::Subgraphs => "subgraphs",
            CheckKind::Degeneracy => "degeneracy",
            CheckKind::Filters => "filters",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            CheckKind::H3,
            CheckKind::H4,
            CheckKind::HkPrime,
            CheckKind::Subgraphs,
            CheckKind::Degeneracy,
            CheckKind::Filters,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationSpec {
    pub n_min: usize,
    pub n_max: usize,
    pub connected: bool,
    /// Every cycle has at least this many vertices.
    pub min_girth: Option<usize>,
    pub k: usize,
    pub check: CheckKind,
}

impl EnumerationSpec {
    pub fn new(check: CheckKind, k: usize, n_max: usize) -> Self {
        EnumerationSpec {
            n_min: 1,
            n_max,
            connected: false,
            min_girth: None,
            k,
            check,
        }
    }

    pub fn connected(mut self) -> Self {
        self.connected = true;
        self
    }

    pub fn with_girth(mut self, g: usize) -> Self {
        self.min_girth = Some(g);
        self
    }

    /// Whether `g` lies in the family described by the bounds.
    pub fn admits(&self, g: &Graph) -> bool {
        (self.n_min..=self.n_max).contains(&g.n()) && (!self.connected || g.is_connected()) && self.girth_ok(g)
    }

    fn girth_ok(&self, g: &Graph) -> bool {
        match (self.min_girth, girth(g)) {
            (Some(b), Some(c)) => c >= b,
            _ => true,
        }
    }

    /// Rejects bounds that contradict the chosen check.
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::BadSpec(m));
        if self.n_min > self.n_max {
            return bad(format!("empty vertex range {}..={}", self.n_min, self.n_max));
        }
        if self.k == 0 {
            return bad("k must be positive".into());
        }
        match self.check {
            CheckKind::H3 if self.k != 3 => bad("h3 requires k = 3".into()),
            CheckKind::H4 if self.k != 4 => bad("h4 requires k = 4".into()),
            CheckKind::HkPrime if self.k < 3 || self.k.is_multiple_of(2) => bad("hk-prime requires odd k >= 3".into()),
            CheckKind::HkPrime if self.min_girth.is_none_or(|b| b < self.k) => {
                bad(format!("hk-prime requires a girth bound of at least k = {}", self.k))
            }
            _ => Ok(()),
        }
    }
}

/// Run-time settings shared by every check.
#[derive(Debug, Clone, Copy)]
pub struct HarnessConfig {
    pub oracle: OracleConfig,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Largest vertex count the built-in generator accepts.
    pub cap: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            oracle: OracleConfig::default(),
            threads: None,
            cap: DEFAULT_CAP,
        }
    }
}

impl HarnessConfig {
    fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R, HarnessError> {
        match self.threads {
            None => Ok(f()),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| HarnessError::BadSpec(e.to_string()))?;
                Ok(pool.install(f))
            }
        }
    }
}

/// Every graph admitted by `spec`, one per isomorphism class, in canonical
/// form, ordered by vertex count and then canonical code.
pub fn enumerate_graphs(spec: &EnumerationSpec, cfg: &HarnessConfig) -> Result<Vec<Graph>, HarnessError> {
    if spec.n_max > cfg.cap {
        return Err(HarnessError::CapExceeded {
            n: spec.n_max,
            cap: cfg.cap,
        });
    }
    cfg.run(|| {
        generate_hereditary(spec.n_max, |g| spec.girth_ok(g))
            .into_iter()
            .flatten()
            .filter(|g| spec.admits(g))
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipEntry {
    pub graph: String,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedEntry {
    pub graph: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub spec: EnumerationSpec,
    pub scanned: usize,
    pub members: usize,
    pub mismatches: usize,
    /// Canonical edge lists of the mismatching graphs.
    pub counterexamples: Vec<String>,
    pub skipped: Vec<SkippedEntry>,
    /// Degeneracy check only: largest minimum degree over members.
    pub max_member_min_degree: Option<usize>,
    /// Degeneracy check only: canonical graph and membership.
    pub table: Vec<MembershipEntry>,
    /// Not part of the deterministic text form.
    pub wall_time_ms: u128,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches == 0 && self.skipped.is_empty()
    }

    /// Line-oriented report; identical for identical specs and inputs.
    pub fn to_text(&self) -> String {
        let s = &self.spec;
        let mut out = String::new();
        let _ = writeln!(out, "check: {}", s.check.name());
        let _ = writeln!(out, "k: {}", s.k);
        let _ = writeln!(
            out,
            "graphs: n {}..={}{}{}",
            s.n_min,
            s.n_max,
            if s.connected { ", connected" } else { "" },
            s.min_girth.map(|g| format!(", girth >= {g}")).unwrap_or_default()
        );
        let _ = writeln!(out, "scanned: {}", self.scanned);
        let _ = writeln!(out, "members: {}", self.members);
        let _ = writeln!(out, "mismatches: {}", self.mismatches);
        let _ = writeln!(out, "skipped: {}", self.skipped.len());
        if let Some(d) = self.max_member_min_degree {
            let _ = writeln!(out, "max min-degree over members: {d}");
        }
        for c in &self.counterexamples {
            let _ = writeln!(out, "counterexample: {c}");
        }
        for e in &self.skipped {
            let _ = writeln!(out, "skipped graph: {} ({})", e.graph, e.reason);
        }
        for e in &self.table {
            let _ = writeln!(
                out,
                "table: {} {}",
                e.graph,
                if e.member { "member" } else { "non-member" }
            );
        }
        out
    }
}

struct Outcome {
    member: bool,
    mismatch: bool,
    min_degree: usize,
}

fn check_one(g: &Graph, spec: &EnumerationSpec, oracle: &OracleConfig) -> Result<Outcome, String> {
    let k = spec.k;
    let member = in_gk_with(g, k, oracle).map_err(|e: OracleError| e.to_string())?;
    let min_degree = g.min_degree().unwrap_or(0);
    let mismatch = match spec.check {
        CheckKind::H3 => recognize_h3(g).member != member,
        CheckKind::H4 => recognize_h4(g).member != member,
        CheckKind::HkPrime => recognize_hk_prime(g, k).map_err(|e| e.to_string())?.member != member,
        CheckKind::Subgraphs => in_gk_all_subgraphs_with(g, k, oracle).map_err(|e| e.to_string())? != member,
        CheckKind::Degeneracy => member && min_degree > k,
        CheckKind::Filters => match cycle_filters(g, k) {
            FilterOutcome::Pass => false,
            FilterOutcome::Fail(_) => member,
            FilterOutcome::Inconclusive(why) => return Err(why),
        },
    };
    Ok(Outcome {
        member,
        mismatch,
        min_degree,
    })
}

/// Runs `spec.check` on the given graphs; those outside the bounds of
/// `spec` are ignored. The report does not depend on the thread count.
pub fn verify_graphs(
    graphs: &[Graph],
    spec: &EnumerationSpec,
    cfg: &HarnessConfig,
) -> Result<VerificationReport, HarnessError> {
    spec.validate()?;
    let start = Instant::now();
    let outcomes: Vec<(&Graph, Result<Outcome, String>)> = cfg.run(|| {
        graphs
            .par_iter()
            .filter(|g| spec.admits(g))
            .map(|g| (g, check_one(g, spec, &cfg.oracle)))
            .collect()
    })?;
    let mut report = VerificationReport {
        spec: *spec,
        scanned: 0,
        members: 0,
        mismatches: 0,
        counterexamples: Vec::new(),
        skipped: Vec::new(),
        max_member_min_degree: None,
        table: Vec::new(),
        wall_time_ms: 0,
    };
    let degeneracy = spec.check == CheckKind::Degeneracy;
    if degeneracy {
        report.max_member_min_degree = Some(0);
    }
    for (g, outcome) in outcomes {
        report.scanned += 1;
        match outcome {
            Err(reason) => report.skipped.push(SkippedEntry {
                graph: canonical_edge_list(g),
                reason,
            }),
            Ok(o) => {
                if o.member {
                    report.members += 1;
                    if degeneracy {
                        report.max_member_min_degree = report.max_member_min_degree.max(Some(o.min_degree));
                    }
                }
                if o.mismatch {
                    report.mismatches += 1;
                    report.counterexamples.push(canonical_edge_list(g));
                }
                if degeneracy {
                    report.table.push(MembershipEntry {
                        graph: canonical_edge_list(g),
                        member: o.member,
                    });
                }
            }
        }
    }
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Compares a recognizer with the brute-force membership oracle on every
/// graph the spec describes.
pub fn verify_theorem(spec: &EnumerationSpec, cfg: &HarnessConfig) -> Result<VerificationReport, HarnessError> {
    spec.validate()?;
    let graphs = enumerate_graphs(spec, cfg)?;
    verify_graphs(&graphs, spec, cfg)
}

/// Induced-subgraph against all-subgraph membership on all graphs with at
/// most `n_max` vertices. Differences are reported, not asserted.
pub fn probe_subgraph_closure(n_max: usize, k: usize, cfg: &HarnessConfig) -> Result<VerificationReport, HarnessError> {
    verify_theorem(&EnumerationSpec::new(CheckKind::Subgraphs, k, n_max), cfg)
}

/// Membership table for all graphs with at most `n_max` vertices together
/// with the largest minimum degree over members.
pub fn membership_table(n_max: usize, k: usize, cfg: &HarnessConfig) -> Result<VerificationReport, HarnessError> {
    verify_theorem(&EnumerationSpec::new(CheckKind::Degeneracy, k, n_max), cfg)
}

//! Structural recognition of the classes `H_3`, `H_4` and `H'_k` (odd k),
//! plus fast necessary-condition filters on cycles.
//!
//! Every report lists one classification per block of the input graph (in
//! block-decomposition order), a verdict, and for non-members a witness that
//! can be checked by hand.

mod filters;
mod h4;
mod subdivision;

pub use filters::{cycle_filters, cycle_filters_bounded, FilterOutcome};
pub use h4::{recognize_h4, tp_structure};
pub use subdivision::{recognize_h3, recognize_hk_prime, recover_subdivision, SubdivisionBlock};

use serde::Serialize;
use std::fmt::{self, Write as _};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognitionError {
    #[error("H'_k recognition needs an odd k >= 3, got {0}")]
    InvalidK(usize),
}

/// `T(p)`: `K_{2,p}` plus the edge between the two vertices of the small side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TpBlock {
    pub p: usize,
    /// The adjacent pair `x, y` of degree `p + 1`.
    pub apex: [usize; 2],
    /// The `p` vertices adjacent to exactly `x` and `y`.
    pub fan: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// A cycle of the wrong order (or whose recovered multigraph is not bipartite).
    Cycle,
    /// A maximal degree-2 path between anchors of the wrong length.
    Thread,
    /// A cutvertex placed where the class forbids it.
    Cutvertex,
    /// A block that fits no allowed shape.
    Block,
    /// An attached component that is not a tree without a k-path.
    Component,
    /// Two attachment vertices on a cycle at a forbidden distance.
    Distance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub vertices: Vec<usize>,
    pub detail: String,
}

impl Violation {
    pub(crate) fn new(kind: ViolationKind, vertices: Vec<usize>, detail: impl Into<String>) -> Self {
        Violation {
            kind,
            vertices,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ViolationKind::Cycle => "cycle",
            ViolationKind::Thread => "thread",
            ViolationKind::Cutvertex => "cutvertex",
            ViolationKind::Block => "block",
            ViolationKind::Component => "component",
            ViolationKind::Distance => "distance",
        };
        write!(f, "{kind}")?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        write!(f, " ({})", self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BlockClass {
    Trivial,
    /// `Sub_k(H)` with the recovered `H`.
    Subdivision(SubdivisionBlock),
    K4Endblock,
    T2Endblock(TpBlock),
    Tp(TpBlock),
    Violation(Violation),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub id: usize,
    pub vertices: Vec<usize>,
    pub class: BlockClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecognitionReport {
    /// `"H3"`, `"H4"` or `"H'k"` with the actual `k`.
    pub class: String,
    pub k: usize,
    pub member: bool,
    pub blocks: Vec<BlockReport>,
    /// First violation in block order; present iff not a member.
    pub witness: Option<Violation>,
    /// `H'_k` only: a cycle shorter than `k`, if any. Reported separately
    /// from the structural verdict.
    pub short_cycle: Option<Vec<usize>>,
}

impl RecognitionReport {
    pub(crate) fn assemble(class: String, k: usize, blocks: Vec<BlockReport>) -> Self {
        let witness = blocks.iter().find_map(|b| match &b.class {
            BlockClass::Violation(v) => Some(v.clone()),
            _ => None,
        });
        RecognitionReport {
            class,
            k,
            member: witness.is_none(),
            blocks,
            witness,
            short_cycle: None,
        }
    }

    /// Stable line-oriented text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            write!(out, "block {}: ", b.id).unwrap();
            match &b.class {
                BlockClass::Trivial => write!(out, "trivial"),
                BlockClass::Subdivision(s) => {
                    write!(out, "sub{} of multigraph on {:?} edges", self.k, s.h_vertices).unwrap();
                    for t in &s.threads {
                        write!(out, " {}-{}", t.start, t.end).unwrap();
                    }
                    Ok(())
                }
                BlockClass::K4Endblock => write!(out, "K4-endblock {:?}", b.vertices),
                BlockClass::T2Endblock(t) => write!(out, "T(2)-endblock apex {:?} fan {:?}", t.apex, t.fan),
                BlockClass::Tp(t) => write!(out, "T({}) apex {:?} fan {:?}", t.p, t.apex, t.fan),
                BlockClass::Violation(v) => write!(out, "violation {v}"),
            }
            .unwrap();
            out.push('\n');
        }
        writeln!(out, "verdict: {}", if self.member { "member" } else { "non-member" }).unwrap();
        if let Some(w) = &self.witness {
            writeln!(out, "witness: {w}").unwrap();
        }
        if self.class.starts_with("H'") {
            match &self.short_cycle {
                None => writeln!(out, "girth: at least {}", self.k).unwrap(),
                Some(c) => writeln!(out, "girth: short cycle {c:?}").unwrap(),
            }
        }
        out
    }
}

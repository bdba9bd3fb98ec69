//! Report payloads. Every report is wrapped in an [`Envelope`] and serializes
//! to JSON that parses back to the same value.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sumset_core::analysis::{BoundReport, WitnessRecord};
use sumset_core::constructions::Recipe;
use sumset_core::search::SurveyReport;
use sumset_core::TripleRecord;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema_version: u32,
    #[serde(flatten)]
    pub report: Report,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "kebab-case")]
pub enum Report {
    Reproduce(ReproduceReport),
    Construct(ConstructReport),
    Classify(ClassifyReport),
    Bounds(BoundsReport),
    Survey(SurveyReport),
    Kneser(KneserReport),
    Constants(ConstantsReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproduceReport {
    pub name: String,
    pub group: String,
    pub s: Vec<usize>,
    pub a: Option<Vec<usize>>,
    pub b: Option<Vec<usize>>,
    pub exceptions: Option<Vec<usize>>,
    pub expected_exceptions: Option<Vec<usize>>,
    pub bound: Option<BoundReport>,
    pub exception_pair: Option<[usize; 2]>,
    pub witness: Option<WitnessRecord>,
    pub symmetric: Option<SymmetricSetReport>,
    pub matches: bool,
}

/// Classification of a set symmetric about each of its points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricSetReport {
    pub class: String,
    pub is_subgroup: bool,
    pub subgroup: Option<Vec<usize>>,
    pub reps: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructReport {
    pub recipe: Recipe,
    pub triple: TripleRecord,
    pub exceptions: Vec<usize>,
    pub bound: BoundReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassifyOutcome {
    Critical,
    NotCritical,
    InvariantViolation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub triple: TripleRecord,
    pub outcome: ClassifyOutcome,
    pub message: Option<String>,
    pub witness: Option<WitnessRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub triple: TripleRecord,
    pub report: BoundReport,
    pub exceptions: Vec<usize>,
    pub exception_pair: Option<[usize; 2]>,
    /// Only at the threshold.
    pub exceptions_saturated: Option<bool>,
    pub exceptions_in_double: Option<bool>,
    /// Only for groups of prime order.
    pub prime_order_bound: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneserReport {
    pub group: String,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub sumset: Vec<usize>,
    pub stabilizer: Vec<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub group: String,
    pub order: usize,
    pub l_g: usize,
    pub doubles: Vec<usize>,
    pub kernel: Vec<usize>,
    pub method: String,
    pub s: Option<Vec<usize>>,
    pub l_s: Option<usize>,
    /// `L_S(z)` for every `z`, by index.
    pub ls_table: Option<Vec<usize>>,
}

fn list(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

fn bound_lines(out: &mut String, r: &BoundReport) {
    let _ = writeln!(
        out,
        "|G|={} |A|={} |B|={} |S|={} L(G)={} L_S={}",
        r.order, r.size_a, r.size_b, r.size_s, r.l_g, r.l_s
    );
    let _ = writeln!(
        out,
        "regime={:?} achieved={} bound={} tight={} violation={}",
        r.regime, r.achieved, r.bound, r.tight, r.violation
    );
}

impl Report {
    /// Plain-text rendering for `--format table`.
    pub fn table(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Reproduce(r) => {
                let _ = writeln!(out, "example {} in {}", r.name, r.group);
                let _ = writeln!(out, "S = {}", list(&r.s));
                if let (Some(a), Some(b)) = (&r.a, &r.b) {
                    let _ = writeln!(out, "A = {}\nB = {}", list(a), list(b));
                }
                if let Some(e) = &r.exceptions {
                    let _ = writeln!(out, "exceptions = {}", list(e));
                }
                if let Some(b) = &r.bound {
                    bound_lines(&mut out, b);
                }
                if let Some(w) = &r.witness {
                    let _ = writeln!(out, "witness: |Σ|={} d={} k={} l={} m={}", w.sigma_order, w.d, w.k, w.l, w.m);
                }
                if let Some(l) = &r.symmetric {
                    let _ = writeln!(out, "class={} is_subgroup={}", l.class, l.is_subgroup);
                }
                let _ = writeln!(out, "matches recorded data: {}", r.matches);
            }
            Report::Construct(r) => {
                let _ = writeln!(out, "group {}", r.triple.group);
                let _ = writeln!(out, "A = {}\nB = {}\nS = {}", list(&r.triple.a), list(&r.triple.b), list(&r.triple.s));
                let _ = writeln!(out, "exceptions = {}", list(&r.exceptions));
                bound_lines(&mut out, &r.bound);
            }
            Report::Classify(r) => {
                let _ = writeln!(out, "outcome: {:?}", r.outcome);
                if let Some(m) = &r.message {
                    let _ = writeln!(out, "{m}");
                }
                if let Some(w) = &r.witness {
                    let _ = writeln!(
                        out,
                        "regime={:?} anchor={} |Σ|={} |G/Σ|={} b={} d={} k={} l={} m={}",
                        w.regime, w.anchor, w.sigma_order, w.quotient_order, w.b, w.d, w.k, w.l, w.m
                    );
                    let _ = writeln!(out, "reps = {}", list(&w.recipe.quotient.reps));
                    if let Some([z1, z2]) = w.exception_pair {
                        let _ = writeln!(out, "exceptions = ({z1} + S) ∪ ({z2} + S)");
                    }
                }
            }
            Report::Bounds(r) => {
                bound_lines(&mut out, &r.report);
                let _ = writeln!(out, "exceptions = {}", list(&r.exceptions));
                let _ = writeln!(
                    out,
                    "exceptions_saturated={} exceptions_in_double={} prime_order_bound={}",
                    opt(&r.exceptions_saturated),
                    opt(&r.exceptions_in_double),
                    opt(&r.prime_order_bound)
                );
            }
            Report::Survey(r) => {
                let _ = writeln!(
                    out,
                    "{:<14} {:>6} {:>12} {:>12} {:>8} {:>10} {:>10}",
                    "group", "order", "checked", "at-thresh", "tight", "infeasible", "violations"
                );
                for t in &r.groups {
                    let _ = writeln!(
                        out,
                        "{:<14} {:>6} {:>12} {:>12} {:>8} {:>10} {:>10}{}",
                        t.group,
                        t.order,
                        t.checked,
                        t.at_threshold,
                        t.tight,
                        t.infeasible,
                        t.violations,
                        if t.timed_out { "  (timed out)" } else { "" }
                    );
                }
                let _ = writeln!(
                    out,
                    "total: checked={} tight={} violations={} (seed {}, mode {})",
                    r.totals.checked, r.totals.tight, r.totals.violations, r.config.seed, r.config.mode
                );
            }
            Report::Kneser(r) => {
                let _ = writeln!(out, "A + B = {} (size {})", list(&r.sumset), r.sumset.len());
                let _ = writeln!(out, "stabilizer = {}", list(&r.stabilizer));
                let _ = writeln!(out, "holds = {}", r.holds);
            }
            Report::Constants(r) => {
                let _ = writeln!(out, "group {} of order {}", r.group, r.order);
                let _ = writeln!(out, "L(G) = {}\n2G = {}\nK(G) = {}", r.l_g, list(&r.doubles), list(&r.kernel));
                if let (Some(s), Some(ls), Some(table)) = (&r.s, r.l_s, &r.ls_table) {
                    let _ = writeln!(out, "S = {}  L_S = {ls}  ({})", list(s), r.method);
                    for (z, v) in table.iter().enumerate() {
                        let _ = writeln!(out, "  L_S({z}) = {v}");
                    }
                }
            }
        }
        out
    }
}

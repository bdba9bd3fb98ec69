//! Exhaustive and sampled sweeps over small groups.

mod groups;
mod kernel;
mod sampler;
mod strategy;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::group::{parse_group, Group};

pub use groups::{enumerate_small_groups, invariant_factor_lists};
pub use sampler::Sampler;
pub use strategy::{exhaustive_survey, random_survey, Exhaustive, GroupSurvey, RandomSampling, StrategyRegistry, SurveyStrategy};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_TRIPLE_CAP: u64 = 1 << 30;
pub const DEFAULT_MAX_FINGERPRINTS: usize = 1000;

/// Which triples a survey looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    /// `|A| + |B| = |G| + L_S`.
    AtThreshold,
    /// `|A| + |B| > |G| + L_S`.
    AboveThreshold,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Explicit presentations; when empty, every group of order ≤ `max_order`.
    pub groups: Vec<String>,
    pub max_order: Option<u32>,
    /// Largest `|S|` considered; `None` means no cap.
    pub s_size: Option<usize>,
    /// Use this `S` (element indices) instead of ranging over subsets.
    #[serde(default)]
    pub fixed_s: Option<Vec<usize>>,
    pub mode: String,
    pub samples: usize,
    pub seed: u64,
    pub constraint: Constraint,
    /// Wall-clock budget per group; when it runs out, results depend on timing.
    #[serde(default)]
    pub time_budget_ms: Option<u64>,
    pub max_fingerprints: usize,
    pub triple_cap: u64,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            groups: Vec::new(),
            max_order: None,
            s_size: None,
            fixed_s: None,
            mode: "exhaustive".into(),
            samples: 1000,
            seed: 0,
            constraint: Constraint::AtThreshold,
            time_budget_ms: None,
            max_fingerprints: DEFAULT_MAX_FINGERPRINTS,
            triple_cap: DEFAULT_TRIPLE_CAP,
        }
    }
}

impl SearchConfig {
    pub fn resolve_groups(&self) -> Result<Vec<Group>> {
        if !self.groups.is_empty() {
            return self.groups.iter().map(|p| parse_group(p)).collect();
        }
        match self.max_order {
            Some(0) => Err(invalid!("max order must be at least 1")),
            Some(m) => Ok(enumerate_small_groups(m)),
            None => Err(invalid!("a survey needs either explicit groups or a max order")),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTally {
    pub group: String,
    pub order: usize,
    pub checked: u64,
    pub at_threshold: u64,
    pub above_threshold: u64,
    pub below_threshold: u64,
    pub tight: u64,
    pub infeasible: u64,
    pub violations: u64,
    pub timed_out: bool,
}

impl GroupTally {
    fn absorb(&mut self, other: &GroupTally) {
        self.checked += other.checked;
        self.at_threshold += other.at_threshold;
        self.above_threshold += other.above_threshold;
        self.below_threshold += other.below_threshold;
        self.tight += other.tight;
        self.infeasible += other.infeasible;
        self.violations += other.violations;
        self.timed_out |= other.timed_out;
    }
}

/// A tight triple together with a one-line summary of its witness.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub group: String,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub s: Vec<usize>,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub group: String,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub s: Vec<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub checked: u64,
    pub tight: u64,
    pub infeasible: u64,
    pub violations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub schema_version: u32,
    pub config: SearchConfig,
    pub groups: Vec<GroupTally>,
    pub totals: Totals,
    /// Sorted, deduplicated, at most `max_fingerprints` entries.
    pub tight_triples: Vec<Fingerprint>,
    pub tight_truncated: bool,
    pub violations: Vec<ViolationRecord>,
}

impl SurveyReport {
    pub(crate) fn assemble(config: &SearchConfig, parts: Vec<GroupSurvey>) -> SurveyReport {
        let mut totals = Totals::default();
        let mut tallies = Vec::with_capacity(parts.len());
        let mut prints = Vec::new();
        let mut violations = Vec::new();
        for part in parts {
            totals.checked += part.tally.checked;
            totals.tight += part.tally.tight;
            totals.infeasible += part.tally.infeasible;
            totals.violations += part.tally.violations;
            tallies.push(part.tally);
            prints.extend(part.fingerprints);
            violations.extend(part.violations);
        }
        prints.sort_unstable();
        prints.dedup();
        let truncated = prints.len() > config.max_fingerprints;
        prints.truncate(config.max_fingerprints);
        violations.sort_unstable();
        SurveyReport {
            schema_version: SCHEMA_VERSION,
            config: config.clone(),
            groups: tallies,
            totals,
            tight_triples: prints,
            tight_truncated: truncated,
            violations,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.totals.violations == 0
    }
}

/// Run the strategy named by `config.mode` over every configured group.
pub fn run_survey(config: &SearchConfig) -> Result<SurveyReport> {
    run_survey_with(&StrategyRegistry::default(), config)
}

pub fn run_survey_with(registry: &StrategyRegistry, config: &SearchConfig) -> Result<SurveyReport> {
    let strategy = registry.get(&config.mode).ok_or_else(|| {
        invalid!(
            "unknown survey mode `{}`; expected one of {}",
            config.mode,
            registry.names().collect::<Vec<_>>().join(", ")
        )
    })?;
    let groups = config.resolve_groups()?;
    let parts = groups
        .iter()
        .map(|g| strategy.survey_group(g, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(SurveyReport::assemble(config, parts))
}

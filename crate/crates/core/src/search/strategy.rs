use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::kernel::{masks_of_size, MaskGroup};
use super::{Constraint, Fingerprint, GroupTally, Sampler, SearchConfig, SurveyReport, ViolationRecord};
use crate::algebra::{doubling_constant, ls_max, nu_table, restricted_sumset, sumset};
use crate::analysis::{
    classify_critical, corollary5_audit, exception_structure, lemma11_partition_audit, prop14_check,
};
use crate::error::{invalid, Error, Result};
use crate::group::{is_subgroup, Group};
use crate::set::GSubset;
use crate::triple::Triple;

/// Results for one group; partial results merge in a fixed order.
#[derive(Debug, Clone, Default)]
pub struct GroupSurvey {
    pub tally: GroupTally,
    pub fingerprints: Vec<Fingerprint>,
    pub violations: Vec<ViolationRecord>,
}

impl GroupSurvey {
    fn for_group(g: &Group) -> GroupSurvey {
        GroupSurvey {
            tally: GroupTally {
                group: g.label().to_string(),
                order: g.order(),
                ..GroupTally::default()
            },
            ..GroupSurvey::default()
        }
    }

    fn merge(mut self, other: GroupSurvey) -> GroupSurvey {
        self.tally.absorb(&other.tally);
        self.fingerprints.extend(other.fingerprints);
        self.violations.extend(other.violations);
        self
    }
}

/// A way of sweeping the triples of one group.
pub trait SurveyStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn survey_group(&self, g: &Group, config: &SearchConfig) -> Result<GroupSurvey>;
}

#[derive(Clone)]
pub struct StrategyRegistry {
    strategies: BTreeMap<&'static str, Arc<dyn SurveyStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> StrategyRegistry {
        StrategyRegistry { strategies: BTreeMap::new() }
    }

    pub fn register(&mut self, s: Arc<dyn SurveyStrategy>) {
        self.strategies.insert(s.name(), s);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn SurveyStrategy>> {
        self.strategies.get(name).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.strategies.keys().copied()
    }
}

impl Default for StrategyRegistry {
    fn default() -> StrategyRegistry {
        let mut r = StrategyRegistry::empty();
        r.register(Arc::new(Exhaustive));
        r.register(Arc::new(RandomSampling));
        r
    }
}

/// Survey a single group exhaustively.
pub fn exhaustive_survey(g: &Group, config: &SearchConfig) -> Result<SurveyReport> {
    Ok(SurveyReport::assemble(config, vec![Exhaustive.survey_group(g, config)?]))
}

/// Survey a single group by seeded sampling.
pub fn random_survey(g: &Group, config: &SearchConfig) -> Result<SurveyReport> {
    Ok(SurveyReport::assemble(config, vec![RandomSampling.survey_group(g, config)?]))
}

/// Outcome of one pass over `A × B`.
struct Quick {
    sumset_full: bool,
    achieved: usize,
    /// Every exception has exactly `L_S` representations.
    counts_ok: bool,
}

struct Checker<'g> {
    g: &'g Group,
    masks: Option<MaskGroup>,
    l_g: usize,
    deadline: Option<Instant>,
    /// Run the partition audit on every at-threshold triple, not only tight ones.
    deep: bool,
}

impl<'g> Checker<'g> {
    fn new(g: &'g Group, config: &SearchConfig, deep: bool) -> Checker<'g> {
        Checker {
            g,
            masks: MaskGroup::new(g),
            l_g: doubling_constant(g),
            deadline: config.time_budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms)),
            deep,
        }
    }

    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn quick_sets(&self, a: &GSubset, b: &GSubset, s: &GSubset, ls: usize) -> Result<Quick> {
        if let Some(m) = &self.masks {
            return Ok(self.quick_masks(m, a.mask(), b.mask(), s.mask(), ls));
        }
        let total = sumset(a, b)?;
        let restricted = restricted_sumset(a, b, s)?;
        let nu = nu_table(a, b);
        Ok(Quick {
            sumset_full: total.len() == self.g.order(),
            achieved: restricted.len(),
            counts_ok: total.difference(&restricted).iter().all(|z| nu[z.index()] == ls),
        })
    }

    fn quick_masks(&self, m: &MaskGroup, a: u64, b: u64, s: u64, ls: usize) -> Quick {
        let e = m.eval(a, b, s, ls);
        Quick {
            sumset_full: e.sumset == m.full(),
            achieved: e.restricted.count_ones() as usize,
            counts_ok: e.counts_ok,
        }
    }

    /// Tally one triple, materializing sets only when deeper checks need them.
    fn record(
        &self,
        q: Quick,
        sizes: (usize, usize, usize),
        ls: usize,
        triple: impl Fn() -> Triple,
        out: &mut GroupSurvey,
    ) {
        let n = self.g.order();
        let (la, lb, ls_size) = sizes;
        let threshold = n + ls;
        out.tally.checked += 1;
        let mut failures = Vec::new();
        match (la + lb).cmp(&threshold) {
            std::cmp::Ordering::Greater => {
                out.tally.above_threshold += 1;
                if q.achieved != n {
                    failures.push(format!("above the threshold but |A ∧^S B| = {} < |G|", q.achieved));
                }
            }
            std::cmp::Ordering::Less => out.tally.below_threshold += 1,
            std::cmp::Ordering::Equal => {
                out.tally.at_threshold += 1;
                let bound = n as i64 - 2 * ls_size as i64;
                if (q.achieved as i64) < bound {
                    failures.push(format!("|A ∧^S B| = {} is below the bound {bound}", q.achieved));
                }
                if !q.sumset_full {
                    failures.push("A + B ≠ G at the threshold".to_string());
                }
                if !q.counts_ok {
                    failures.push("an exception does not have exactly L_S representations".to_string());
                }
                if q.achieved as i64 == bound {
                    out.tally.tight += 1;
                    let t = triple();
                    match self.examine_tight(&t, ls) {
                        Ok(summary) => {
                            let r = t.record();
                            out.fingerprints.push(Fingerprint {
                                group: r.group,
                                a: r.a,
                                b: r.b,
                                s: r.s,
                                witness: summary,
                            });
                        }
                        Err(reason) => failures.push(reason),
                    }
                } else if self.deep && q.achieved < n {
                    if let Ok(Some(false)) | Err(_) = lemma11_partition_audit(&triple()) {
                        failures.push("exceptions do not split along S ∩ 2G".to_string());
                    }
                }
            }
        }
        if !failures.is_empty() {
            out.tally.violations += 1;
            let r = triple().record();
            out.violations.push(ViolationRecord {
                group: r.group,
                a: r.a,
                b: r.b,
                s: r.s,
                reason: failures.join("; "),
            });
        }
    }

    fn examine_tight(&self, t: &Triple, ls: usize) -> std::result::Result<String, String> {
        let w = classify_critical(t).map_err(|e| format!("classification failed: {e}"))?;
        if lemma11_partition_audit(t).map_err(|e| e.to_string())? != Some(true) {
            return Err("exceptions do not split along S ∩ 2G".into());
        }
        if ls == t.s.len() * self.l_g {
            if exception_structure(t).map_err(|e| e.to_string())?.is_none() {
                return Err("exceptions are not a union of two translates of S".into());
            }
            if !prop14_check(t) || !is_subgroup(&t.s.translate(self.g.neg(w.s))) {
                return Err("S − s is not a subgroup of 2G".into());
            }
            if corollary5_audit(t).map_err(|e| e.to_string())? == Some(false) {
                return Err("an exception lies outside 2(A ∩ B)".into());
            }
        }
        Ok(w.summary())
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Size splits `(|A|, |B|)` with both parts in `1..=n` and the given sum.
fn splits(n: usize, total: usize) -> impl Iterator<Item = (usize, usize)> {
    let lo = total.saturating_sub(n).max(1);
    let hi = n.min(total.saturating_sub(1));
    (lo..=hi).map(move |ka| (ka, total - ka))
}

fn totals_for(constraint: Constraint, n: usize, ls: usize) -> Vec<usize> {
    match constraint {
        Constraint::AtThreshold => vec![n + ls],
        Constraint::AboveThreshold => (n + ls + 1..=2 * n).collect(),
        Constraint::All => (2..=2 * n).collect(),
    }
}

/// Every non-empty `S` within the size cap, every `A`, `B` meeting the constraint.
#[derive(Debug, Default, Clone, Copy)]
pub struct Exhaustive;

impl SurveyStrategy for Exhaustive {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn survey_group(&self, g: &Group, config: &SearchConfig) -> Result<GroupSurvey> {
        let n = g.order();
        let checker = Checker::new(g, config, false);
        let Some(masks) = checker.masks.as_ref() else {
            return Err(Error::ResourceLimit(format!(
                "exhaustive mode supports groups of order at most 64, got {n}"
            )));
        };
        let s_list: Vec<u64> = match &config.fixed_s {
            Some(s) => vec![GSubset::from_indices(g, s.iter().copied())?.mask()],
            None => {
                let cap = config.s_size.unwrap_or(n).min(n);
                (1..=cap).flat_map(|k| masks_of_size(n, k)).collect()
            }
        };
        if s_list.contains(&0) {
            return Err(invalid!("S must be non-empty"));
        }
        let work: Vec<(u64, usize)> = s_list
            .into_iter()
            .map(|s| Ok((s, ls_max(&GSubset::from_mask(g, s))?)))
            .collect::<Result<_>>()?;
        let space: u128 = work
            .iter()
            .map(|&(_, ls)| {
                totals_for(config.constraint, n, ls)
                    .into_iter()
                    .flat_map(|t| splits(n, t))
                    .map(|(ka, kb)| binomial(n, ka) * binomial(n, kb))
                    .sum::<u128>()
            })
            .sum();
        if space > u128::from(config.triple_cap) {
            return Err(Error::ResourceLimit(format!(
                "{} has {space} candidate triples, above the cap {}",
                g.label(),
                config.triple_cap
            )));
        }
        let parts: Vec<GroupSurvey> = work
            .par_iter()
            .map(|&(s, ls)| {
                let mut out = GroupSurvey::default();
                let ls_size = s.count_ones() as usize;
                for total in totals_for(config.constraint, n, ls) {
                    for (ka, kb) in splits(n, total) {
                        for a in masks_of_size(n, ka) {
                            if checker.expired() {
                                out.tally.timed_out = true;
                                return out;
                            }
                            for b in masks_of_size(n, kb) {
                                let q = checker.quick_masks(masks, a, b, s, ls);
                                let triple = || {
                                    Triple::new(
                                        GSubset::from_mask(g, a),
                                        GSubset::from_mask(g, b),
                                        GSubset::from_mask(g, s),
                                    )
                                    .expect("same group")
                                };
                                checker.record(q, (ka, kb, ls_size), ls, triple, &mut out);
                            }
                        }
                    }
                }
                out
            })
            .collect();
        Ok(parts.into_iter().fold(GroupSurvey::for_group(g), GroupSurvey::merge))
    }
}

/// `config.samples` seeded draws: `S` uniform among non-empty subsets under
/// the cap, then sizes and `A`, `B` uniform given the constraint.
#[derive(Debug, Default, Clone, Copy)]
pub struct RandomSampling;

impl SurveyStrategy for RandomSampling {
    fn name(&self) -> &'static str {
        "random"
    }

    fn survey_group(&self, g: &Group, config: &SearchConfig) -> Result<GroupSurvey> {
        let n = g.order();
        let checker = Checker::new(g, config, true);
        let fixed = match &config.fixed_s {
            Some(s) => {
                let set = GSubset::from_indices(g, s.iter().copied())?;
                if set.is_empty() {
                    return Err(invalid!("S must be non-empty"));
                }
                Some(set)
            }
            None => None,
        };
        let cap = config.s_size.unwrap_or(n);
        if cap == 0 {
            return Err(invalid!("S-size cap must be at least 1"));
        }
        let parts: Vec<Result<GroupSurvey>> = (0..config.samples as u64)
            .into_par_iter()
            .map(|item| {
                let mut out = GroupSurvey::default();
                if checker.expired() {
                    out.tally.timed_out = true;
                    return Ok(out);
                }
                let mut rng = Sampler::new(config.seed, g.label(), item);
                let s = match &fixed {
                    Some(s) => s.clone(),
                    None => rng.nonempty_subset(g, cap),
                };
                let ls = ls_max(&s)?;
                let (ka, kb) = match config.constraint {
                    Constraint::AtThreshold | Constraint::AboveThreshold => {
                        let lo = n + ls + usize::from(config.constraint == Constraint::AboveThreshold);
                        if lo > 2 * n {
                            out.tally.infeasible += 1;
                            return Ok(out);
                        }
                        let total = rng.range(lo, 2 * n);
                        let ka = rng.range(total - n, n);
                        (ka, total - ka)
                    }
                    Constraint::All => (rng.range(1, n), rng.range(1, n)),
                };
                let a = rng.subset_of_size(g, ka);
                let b = rng.subset_of_size(g, kb);
                let q = checker.quick_sets(&a, &b, &s, ls)?;
                let triple = || Triple::new(a.clone(), b.clone(), s.clone()).expect("same group");
                checker.record(q, (ka, kb, s.len()), ls, triple, &mut out);
                Ok(out)
            })
            .collect();
        parts
            .into_iter()
            .try_fold(GroupSurvey::for_group(g), |acc, p| Ok(acc.merge(p?)))
    }
}

use serde::{Deserialize, Serialize};

use crate::algebra::{doubling_constant, ls_max, nu, restricted_sumset, sumset};
use crate::error::{invalid, violation, Result};
use crate::group::Elem;
use crate::set::GSubset;
use crate::triple::Triple;

/// Position of `|A| + |B|` relative to `|G| + L_S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    AboveThreshold,
    AtThreshold,
    BelowThreshold,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub group: String,
    pub order: usize,
    pub size_a: usize,
    pub size_b: usize,
    pub size_s: usize,
    pub l_g: usize,
    pub l_s: usize,
    pub regime: Regime,
    pub achieved: usize,
    /// `|G| − 2|S|`; may be negative.
    pub bound: i64,
    pub tight: bool,
    pub violation: bool,
}

fn regime_of(t: &Triple, ls: usize) -> Regime {
    let lhs = t.a.len() + t.b.len();
    let rhs = t.group().order() + ls;
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => Regime::AboveThreshold,
        std::cmp::Ordering::Equal => Regime::AtThreshold,
        std::cmp::Ordering::Less => Regime::BelowThreshold,
    }
}

/// True iff `|A| + |B| > |G| + L_S`; in that case `A ∧^S B = G` is verified.
pub fn check_threshold(t: &Triple) -> Result<bool> {
    let ls = ls_max(&t.s)?;
    if regime_of(t, ls) != Regime::AboveThreshold {
        return Ok(false);
    }
    let r = restricted_sumset(&t.a, &t.b, &t.s)?;
    if r.len() != t.group().order() {
        return Err(violation!(
            "|A| + |B| > |G| + L_S but A ∧^S B misses {} elements",
            t.group().order() - r.len()
        ));
    }
    Ok(true)
}

/// Full report on a triple. The bound is only asserted at the threshold; above
/// it the restricted sumset must be the whole group.
pub fn bound_report(t: &Triple) -> Result<BoundReport> {
    let g = t.group();
    let ls = ls_max(&t.s)?;
    let regime = regime_of(t, ls);
    let achieved = restricted_sumset(&t.a, &t.b, &t.s)?.len();
    let bound = g.order() as i64 - 2 * t.s.len() as i64;
    let (tight, violation) = match regime {
        Regime::AtThreshold => (achieved as i64 == bound, (achieved as i64) < bound),
        Regime::AboveThreshold => (false, achieved != g.order()),
        Regime::BelowThreshold => (false, false),
    };
    Ok(BoundReport {
        group: g.label().to_string(),
        order: g.order(),
        size_a: t.a.len(),
        size_b: t.b.len(),
        size_s: t.s.len(),
        l_g: doubling_constant(g),
        l_s: ls,
        regime,
        achieved,
        bound,
        tight,
        violation,
    })
}

/// `|A ∧^S B| ≥ min{p, |A| + |B| − 2|S| − 1}` in a group of prime order `p`.
pub fn theorem_f_check(t: &Triple) -> Result<bool> {
    let p = t.group().order();
    if !is_prime(p) {
        return Err(invalid!("group order {p} is not prime"));
    }
    if t.a.is_empty() || t.b.is_empty() || t.s.is_empty() {
        return Err(invalid!("A, B and S must be non-empty"));
    }
    let achieved = restricted_sumset(&t.a, &t.b, &t.s)?.len() as i64;
    let rhs = (p as i64).min(t.a.len() as i64 + t.b.len() as i64 - 2 * t.s.len() as i64 - 1);
    Ok(achieved >= rhs)
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// At the threshold, every exception `z` has exactly `L_S` representations,
/// all with difference in `S`. Returns false on the first failure.
pub fn lemma3_audit(t: &Triple) -> Result<bool> {
    let ls = ls_max(&t.s)?;
    if regime_of(t, ls) != Regime::AtThreshold {
        return Err(invalid!("triple is not at the threshold"));
    }
    let g = t.group();
    let total = sumset(&t.a, &t.b)?;
    if total.len() != g.order() {
        return Ok(false);
    }
    let exc = total.difference(&restricted_sumset(&t.a, &t.b, &t.s)?);
    for z in exc.iter() {
        if nu(&t.a, &t.b, z) != ls {
            return Ok(false);
        }
        for y in t.b.iter() {
            let x = g.sub(z, y);
            if t.a.contains(x) && !t.s.contains(g.sub(x, y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// With `0 ∈ S`, at the threshold and `L_S = |S|L(G)`, every exception lies in
/// `2·(A ∩ B)`. Returns `None` when the hypotheses do not hold.
pub fn corollary5_audit(t: &Triple) -> Result<Option<bool>> {
    let g = t.group();
    let ls = ls_max(&t.s)?;
    if !t.s.contains(Elem::ZERO)
        || regime_of(t, ls) != Regime::AtThreshold
        || ls != t.s.len() * doubling_constant(g)
    {
        return Ok(None);
    }
    let exc = sumset(&t.a, &t.b)?.difference(&restricted_sumset(&t.a, &t.b, &t.s)?);
    let doubles = GSubset::from_elems(g, t.a.intersection(&t.b).iter().map(|x| g.double(x)));
    Ok(Some(exc.is_subset(&doubles)))
}

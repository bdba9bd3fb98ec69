//! Sets with `S − s = −(S − s)` for every `s ∈ S`.

use crate::algebra::coset_split;
use crate::analysis::kneser_stabilizer;
use crate::error::{invalid, violation, Error, Result};
use crate::group::{all_subgroups, is_subgroup, Elem, Subgroup};
use crate::set::GSubset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lemma15Class {
    /// `S = shift + subgroup`.
    Coset { subgroup: Subgroup, shift: Elem },
    /// `S − S ⊆ K(G)`.
    InsideK,
    /// `S = ⋃ (s_i + H)` with every `2(s_i − s_j) ∈ H`.
    CosetUnion { subgroup: Subgroup, reps: Vec<Elem> },
}

impl Lemma15Class {
    pub fn tag(&self) -> &'static str {
        match self {
            Lemma15Class::Coset { .. } => "coset",
            Lemma15Class::InsideK => "inside_k",
            Lemma15Class::CosetUnion { .. } => "coset_union",
        }
    }
}

/// `S − s = −(S − s)` for every `s ∈ S`, i.e. `S = −S + 2s`.
pub fn symmetric_about_each_point(s: &GSubset) -> bool {
    let g = s.group();
    s.iter().all(|p| {
        let two_p = g.double(p);
        s.iter().all(|x| s.contains(g.sub(two_p, x)))
    })
}

fn coset_union_witness(s: &GSubset, h: &Subgroup) -> Option<Vec<Elem>> {
    let g = s.group();
    let reps = coset_split(s, h)?;
    let first = g.double(reps[0]);
    reps.iter()
        .all(|&r| h.contains(g.sub(g.double(r), first)))
        .then_some(reps)
}

/// Classify `S` into the first matching case in the order coset, inside `K(G)`,
/// union of cosets.
pub fn lemma15_classify(s: &GSubset) -> Result<Lemma15Class> {
    if s.is_empty() {
        return Err(invalid!("S must be non-empty"));
    }
    if !symmetric_about_each_point(s) {
        return Err(Error::HypothesisNotSatisfied(format!(
            "{s:?} is not symmetric about each of its points"
        )));
    }
    let g = s.group();
    let shift = s.min().expect("non-empty");
    let shifted = s.translate(g.neg(shift));
    if is_subgroup(&shifted) {
        return Ok(Lemma15Class::Coset {
            subgroup: Subgroup::from_carrier(shifted)?,
            shift,
        });
    }
    let d0 = g.double(shift);
    if s.iter().all(|x| g.double(x) == d0) {
        return Ok(Lemma15Class::InsideK);
    }
    let stab = kneser_stabilizer(s)?;
    if let Some(reps) = coset_union_witness(s, &stab) {
        return Ok(Lemma15Class::CosetUnion { subgroup: stab, reps });
    }
    // the stabilizer always works; scan the lattice before declaring a violation
    if let Ok(subgroups) = all_subgroups(g) {
        for h in subgroups.into_iter().rev() {
            if let Some(reps) = coset_union_witness(s, &h) {
                return Ok(Lemma15Class::CosetUnion { subgroup: h, reps });
            }
        }
    }
    Err(violation!("{s:?} is symmetric about each point but fits none of the three cases"))
}

//! Lifting an extremal pair from `G/Σ` to a critical triple in `G`.

use serde::{Deserialize, Serialize};

use crate::algebra::{doubling_constant, exceptions, ls_max, restricted_sumset};
use crate::constructions::guo::{build_guo_pair, GuoParameters};
use crate::error::{invalid, violation, Result};
use crate::group::{doubling_subgroups, parse_group, preimage, quotient, Elem, Group, QuotientMap, Subgroup};
use crate::set::GSubset;
use crate::triple::Triple;

/// `S = s + Σ`, `A = b_s + s + π⁻¹(A′)`, `B = b_s + π⁻¹(B′)` where `(A′, B′)` is
/// the extremal pair on `G/Σ` described by `q`.
///
/// Requires `Σ ⊆ 2G`. The result is checked to be critical with exceptions
/// `(2a* + 2b_s + S) ∪ (2b* + 2b_s + S)` for lifts `a*`, `b*` of `q.a`, `q.b`.
pub fn lift_critical_triple(
    g: &Group,
    sigma: &Subgroup,
    s: Elem,
    b_s: Elem,
    q: &GuoParameters,
) -> Result<(Triple, QuotientMap)> {
    if sigma.group() != g {
        return Err(invalid!("Σ belongs to {}, not {}", sigma.group().label(), g.label()));
    }
    for (name, x) in [("s", s), ("b_s", b_s)] {
        if !g.contains(x) {
            return Err(invalid!("{name} = {x} is not an element of {}", g.label()));
        }
    }
    let (two_g, _) = doubling_subgroups(g);
    if !sigma.carrier().is_subset(two_g.carrier()) {
        return Err(invalid!("Σ = {:?} is not contained in 2G", sigma.carrier()));
    }
    let map = quotient(g, sigma)?;
    let (a_q, b_q) = build_guo_pair(map.target(), q)?;
    let a = preimage(&map, &a_q).translate(g.add(b_s, s));
    let b = preimage(&map, &b_q).translate(b_s);
    let s_set = sigma.carrier().translate(s);

    let l = doubling_constant(g);
    let ls = ls_max(&s_set)?;
    if ls != s_set.len() * l {
        return Err(violation!("lifted S has L_S = {ls}, expected |S|L(G) = {}", s_set.len() * l));
    }
    if a.len() + b.len() != g.order() + ls {
        return Err(violation!("lifted pair is not at the threshold |G| + L_S"));
    }
    let restricted = restricted_sumset(&a, &b, &s_set)?;
    if restricted.len() + 2 * s_set.len() != g.order() {
        return Err(violation!(
            "lifted triple has |A ∧^S B| = {}, expected {}",
            restricted.len(),
            g.order() - 2 * s_set.len()
        ));
    }
    let shift = g.double(b_s);
    let a_star = g.double(map.section(q.a));
    let b_star = g.double(map.section(q.b));
    let expected = s_set
        .translate(g.add(a_star, shift))
        .union(&s_set.translate(g.add(b_star, shift)));
    let exc = exceptions(&a, &b, &s_set)?;
    if exc != expected {
        return Err(violation!("lifted exceptions {exc:?} differ from {expected:?}"));
    }
    Ok((Triple { a, b, s: s_set }, map))
}

/// Serializable recipe for a critical triple.
///
/// Quotient elements are written as coset representatives in the source group;
/// any representative is accepted on input. `extra_classes` lists the classes
/// of `S − s` other than `Σ` (empty when `S = s + Σ`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Recipe {
    pub group: String,
    pub sigma: Vec<usize>,
    pub s: usize,
    pub b_s: usize,
    pub quotient: QuotientParams,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientParams {
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub l: usize,
    pub reps: Vec<usize>,
}

impl QuotientParams {
    pub fn from_guo(map: &QuotientMap, p: &GuoParameters) -> QuotientParams {
        QuotientParams {
            a: map.section(p.a).index(),
            b: map.section(p.b).index(),
            k: p.k,
            l: p.l,
            reps: p.reps.iter().map(|&x| map.section(x).index()).collect(),
        }
    }

    pub fn to_guo(&self, map: &QuotientMap) -> Result<GuoParameters> {
        let g = map.source();
        let proj = |i: usize| -> Result<Elem> { Ok(map.project(g.elem(i)?)) };
        Ok(GuoParameters {
            a: proj(self.a)?,
            b: proj(self.b)?,
            k: self.k,
            l: self.l,
            reps: self.reps.iter().map(|&i| proj(i)).collect::<Result<_>>()?,
        })
    }
}

impl Recipe {
    /// Recipe for a plain extremal pair (`Σ = {0}`, `S = {0}`).
    pub fn for_pair(g: &Group, p: &GuoParameters) -> Recipe {
        Recipe {
            group: g.label().to_string(),
            sigma: vec![0],
            s: 0,
            b_s: 0,
            quotient: QuotientParams {
                a: p.a.index(),
                b: p.b.index(),
                k: p.k,
                l: p.l,
                reps: p.reps.iter().map(|x| x.index()).collect(),
            },
            extra_classes: Vec::new(),
        }
    }

    pub fn build(&self) -> Result<Triple> {
        let g = parse_group(&self.group)?;
        self.build_in(&g)
    }

    pub fn build_in(&self, g: &Group) -> Result<Triple> {
        let sigma = Subgroup::from_carrier(GSubset::from_indices(g, self.sigma.iter().copied())?)?;
        let map = quotient(g, &sigma)?;
        let q = self.quotient.to_guo(&map)?;
        let s = g.elem(self.s)?;
        let b_s = g.elem(self.b_s)?;
        if self.extra_classes.is_empty() {
            return Ok(lift_critical_triple(g, &sigma, s, b_s, &q)?.0);
        }
        // several classes modulo 2G: A and B still come from the Σ lift
        let (a_q, b_q) = build_guo_pair(map.target(), &q)?;
        let a = preimage(&map, &a_q).translate(g.add(b_s, s));
        let b = preimage(&map, &b_q).translate(b_s);
        let mut rel = sigma.carrier().clone();
        for class in &self.extra_classes {
            let c = GSubset::from_indices(g, class.iter().copied())?;
            if !c.is_disjoint(&rel) {
                return Err(invalid!("recipe classes overlap"));
            }
            rel = rel.union(&c);
        }
        Triple::new(a, b, rel.translate(s))
    }
}

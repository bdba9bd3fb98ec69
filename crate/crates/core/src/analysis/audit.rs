//! Audits of the intermediate statements used by the lower-bound argument.

use serde::{Deserialize, Serialize};

use crate::algebra::{doubling_constant, exceptions, half, ls_max, nu_table, sumset};
use crate::analysis::critical::{anchor_factorization, recover_guo};
use crate::error::{invalid, Result};
use crate::group::{doubling_subgroups, Elem, QuotientMap};
use crate::set::GSubset;
use crate::triple::Triple;

/// Decomposition of `A − b` and `B − b` into `±`-paired pieces.
///
/// `x0 ∪ −x0 ∪ x1 ∪ −x1 ∪ x2 ∪ −x2` tiles `G \ H(S ∪ −S)` and
/// `y1 ∪ −y1 ∪ y2 ∪ −y2` tiles `H(S Δ −S)`, with
/// `A − b = H(S ∩ −S) ∪ X₀ ∪ ±X₁ ∪ ±Y₁ ∪ Y₂` and
/// `B − b = H(S ∩ −S) ∪ X₀ ∪ ±X₂ ∪ Y₁ ∪ ±Y₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedPartition {
    pub core: Vec<usize>,
    pub x0: Vec<usize>,
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    pub y1: Vec<usize>,
    pub y2: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma6Outcome {
    pub ok: bool,
    /// First `x` where the identity fails.
    pub failure: Option<usize>,
    pub partition: Option<PairedPartition>,
}

/// Checks, for every `x`, that `|A ∩ {b ± x}| + |B ∩ {b ± x}|` equals 2, 3, 4
/// or 2 according as `2x ∉ S ∪ −S`, `2x ∈ S Δ −S`, `2x ∈ S ∩ −S \ {0}` or
/// `2x = 0`, and on success builds the paired partition.
pub fn lemma6_audit(t: &Triple, b: Elem) -> Result<Lemma6Outcome> {
    let g = t.group();
    if !g.contains(b) {
        return Err(invalid!("b = {} is not an element of {}", b.index(), g.label()));
    }
    let both = t.a.intersection(&t.b);
    if !both.contains(Elem::ZERO) || !t.s.contains(Elem::ZERO) {
        return Err(invalid!("0 must lie in A ∩ B ∩ S"));
    }
    let ls = ls_max(&t.s)?;
    if t.a.len() + t.b.len() != g.order() + ls {
        return Err(invalid!("|A| + |B| ≠ |G| + L_S"));
    }
    if ls != t.s.len() * doubling_constant(g) {
        return Err(invalid!("L_S ≠ |S| L(G)"));
    }
    if !both.contains(b) {
        return Err(invalid!("b must lie in A ∩ B"));
    }
    let exc = exceptions(&t.a, &t.b, &t.s)?;
    if !exc.contains(Elem::ZERO) || !exc.contains(g.double(b)) {
        return Err(invalid!("0 and 2b must both be exceptions"));
    }

    let neg_s = t.s.negate();
    let sym = t.s.intersection(&neg_s);
    let asym = t.s.union(&neg_s).difference(&sym);
    let count = |set: &GSubset, x: Elem| {
        let (p, m) = (g.add(b, x), g.sub(b, x));
        usize::from(set.contains(p)) + usize::from(p != m && set.contains(m))
    };
    for x in g.elements() {
        let two_x = g.double(x);
        let expected = if two_x == Elem::ZERO {
            2
        } else if sym.contains(two_x) {
            4
        } else if asym.contains(two_x) {
            3
        } else {
            2
        };
        // with 2x = 0 the two points coincide; each set contributes once
        if count(&t.a, x) + count(&t.b, x) != expected {
            return Ok(Lemma6Outcome {
                ok: false,
                failure: Some(x.index()),
                partition: None,
            });
        }
    }

    let a_rel = t.a.translate(g.neg(b));
    let b_rel = t.b.translate(g.neg(b));
    let partition = paired_partition(&a_rel, &b_rel, &half(&sym), &half(&asym));
    Ok(Lemma6Outcome {
        ok: partition.is_some(),
        failure: None,
        partition,
    })
}

fn paired_partition(a: &GSubset, b: &GSubset, core: &GSubset, y_zone: &GSubset) -> Option<PairedPartition> {
    let g = a.group();
    if !core.is_subset(&a.intersection(b)) {
        return None;
    }
    let mut p = PairedPartition {
        core: core.to_indices(),
        x0: Vec::new(),
        x1: Vec::new(),
        x2: Vec::new(),
        y1: Vec::new(),
        y2: Vec::new(),
    };
    let mut seen = core.clone();
    for x in g.elements() {
        if seen.contains(x) {
            continue;
        }
        let nx = g.neg(x);
        seen.insert(x);
        seen.insert(nx);
        let key = (a.contains(x), a.contains(nx), b.contains(x), b.contains(nx));
        if y_zone.contains(x) {
            match key {
                (true, true, true, false) => p.y1.push(x.index()),
                (true, true, false, true) => p.y1.push(nx.index()),
                (true, false, true, true) => p.y2.push(x.index()),
                (false, true, true, true) => p.y2.push(nx.index()),
                _ => return None,
            }
        } else {
            match key {
                (true, false, true, false) => p.x0.push(x.index()),
                (false, true, false, true) => p.x0.push(nx.index()),
                (true, true, false, false) => p.x1.push(x.index()),
                (false, false, true, true) => p.x2.push(x.index()),
                _ => return None,
            }
        }
    }
    for v in [&mut p.x0, &mut p.y1, &mut p.y2] {
        v.sort_unstable();
    }
    Some(p)
}

/// The exceptions of a triple with `0 ∈ A ∩ B ∩ S` as an exception split into
/// those of `Σ = S ∩ 2G` and those of `S \ Σ`, disjointly. The triple is first
/// translated along the least exception. `None` when there are no exceptions.
pub fn lemma11_partition_audit(t: &Triple) -> Result<Option<bool>> {
    let g = t.group();
    let ls = ls_max(&t.s)?;
    if t.a.len() + t.b.len() != g.order() + ls {
        return Err(invalid!("|A| + |B| ≠ |G| + L_S"));
    }
    let exc = exceptions(&t.a, &t.b, &t.s)?;
    let Some(z) = exc.min() else { return Ok(None) };
    let Some((s, b_s)) = anchor_factorization(t, z) else {
        return Ok(Some(false));
    };
    let a = t.a.translate(g.neg(g.add(b_s, s)));
    let b = t.b.translate(g.neg(b_s));
    let s_rel = t.s.translate(g.neg(s));
    let (two_g, _) = doubling_subgroups(g);
    let sigma = s_rel.intersection(two_g.carrier());
    let rest = s_rel.difference(&sigma);
    let whole = exc.translate(g.neg(z));
    let e_sigma = exceptions(&a, &b, &sigma)?;
    let e_rest = exceptions(&a, &b, &rest)?;
    Ok(Some(
        ls == sigma.len() * doubling_constant(g) && e_sigma.is_disjoint(&e_rest) && e_sigma.union(&e_rest) == whole,
    ))
}

/// `ν(z) > L(G)|T|` for every `z` off `π⁻¹(K(G/T) ∪ (2b + K(G/T)))`, where
/// `π(A), π(B)` must form an extremal pair on `G/T` with `(d + 1)/2 > L(G/T)`.
pub fn nu_floor_audit(a: &GSubset, b: &GSubset, b_quot: Elem, map: &QuotientMap) -> Result<bool> {
    let g = map.source();
    a.same_group(b)?;
    if a.group() != g {
        return Err(invalid!("A and B must live in the source of the quotient map"));
    }
    let q = map.target();
    if !q.contains(b_quot) {
        return Err(invalid!("b is not an element of {}", q.label()));
    }
    let (two_g, _) = doubling_subgroups(g);
    if !map.kernel().carrier().is_subset(two_g.carrier()) {
        return Err(invalid!("T must be a subgroup of 2G"));
    }
    if !map.is_saturated(a) || !map.is_saturated(b) {
        return Err(invalid!("A and B must be unions of T-cosets"));
    }
    let (pa, pb) = (map.image(a), map.image(b));
    let params = recover_guo(q, &pa, &pb).map_err(|e| invalid!("projected pair does not have the extremal shape: {e}"))?;
    if !pa.intersection(&pb).contains(b_quot) || q.double(b_quot) != q.double(params.b) {
        return Err(invalid!("b does not match the projected pair"));
    }
    let l_q = doubling_constant(q);
    let d = q.element_order(q.double(b_quot));
    if (d + 1) / 2 <= l_q {
        return Err(invalid!("(d + 1)/2 = {} does not exceed L(G/T) = {l_q}", (d + 1) / 2));
    }
    let (_, kernel) = doubling_subgroups(q);
    let shifted = kernel.carrier().translate(q.double(b_quot));
    let excluded = kernel.carrier().union(&shifted);
    let floor = doubling_constant(g) * map.kernel().order();
    if sumset(a, b)?.len() != g.order() {
        return Ok(false);
    }
    let nu = nu_table(a, b);
    Ok(g
        .elements()
        .filter(|&z| !excluded.contains(map.project(z)))
        .all(|z| nu[z.index()] > floor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_guo_pair, builtin_example, GuoParameters};
    use crate::group::{quotient, Group, Subgroup};

    #[test]
    fn lemma6_on_example_one() {
        let ex = builtin_example("ex1").unwrap();
        let (a, b) = ex.pair.unwrap();
        let t = Triple::new(a, b, ex.s).unwrap();
        let out = lemma6_audit(&t, Elem(5)).unwrap();
        assert!(out.ok);
        let p = out.partition.unwrap();
        assert_eq!(p.core, vec![0]);
        // S = {0}: nothing lies in H(S Δ −S)
        assert!(p.y1.is_empty() && p.y2.is_empty());
        assert!(lemma6_audit(&t, Elem(1)).is_err());
    }

    #[test]
    fn lemma6_on_even_order_pair() {
        let g = Group::new(&[2, 21]).unwrap();
        let params = GuoParameters {
            a: Elem::ZERO,
            b: g.encode(&[0, 7]).unwrap(),
            k: 1,
            l: 2,
            reps: pair_reps(&g),
        };
        let (a, b) = build_guo_pair(&g, &params).unwrap();
        let s = GSubset::singleton(&g, Elem::ZERO);
        let out = lemma6_audit(&Triple::new(a, b, s).unwrap(), params.b).unwrap();
        assert!(out.ok, "{out:?}");
        assert_eq!(out.partition.unwrap().core.len(), 2);
    }

    fn pair_reps(g: &Group) -> Vec<Elem> {
        let h = crate::group::cyclic_subgroup(g, g.encode(&[0, 14]).unwrap());
        crate::constructions::pair_coset_reps(g, &h).unwrap()
    }

    #[test]
    fn lemma11_on_examples() {
        for name in ["ex1", "ex2", "ex3"] {
            let ex = builtin_example(name).unwrap();
            let (a, b) = ex.pair.unwrap();
            let t = Triple::new(a, b, ex.s).unwrap();
            assert_eq!(lemma11_partition_audit(&t).unwrap(), Some(true), "{name}");
        }
    }

    #[test]
    fn nu_floor_examples() {
        let ex = builtin_example("ex1").unwrap();
        let (a, b) = ex.pair.unwrap();
        let map = quotient(&ex.group, &Subgroup::trivial(&ex.group)).unwrap();
        assert!(nu_floor_audit(&a, &b, map.project(Elem(5)), &map).unwrap());

        let ex = builtin_example("ex3").unwrap();
        let (a, b) = ex.pair.unwrap();
        let t = Subgroup::from_carrier(GSubset::from_indices(&ex.group, [0, 15, 30]).unwrap()).unwrap();
        let map = quotient(&ex.group, &t).unwrap();
        assert!(nu_floor_audit(&a, &b, map.project(Elem(5)), &map).unwrap());

        // {0, 15} is not inside 2·Z/30
        let ex = builtin_example("ex2").unwrap();
        let (a, b) = ex.pair.unwrap();
        let t = Subgroup::from_carrier(GSubset::from_indices(&ex.group, [0, 15]).unwrap()).unwrap();
        let map = quotient(&ex.group, &t).unwrap();
        assert!(nu_floor_audit(&a, &b, Elem(0), &map).is_err());
    }
}

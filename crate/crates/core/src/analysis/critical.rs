//! Recovery of the structure of critical triples: `|A| + |B| = |G| + L_S` and
//! `|A ∧^S B| = |G| − 2|S|`.

use serde::{Deserialize, Serialize};

use crate::algebra::{
    classes_mod_2g, doubling_constant, exceptions, ls_max, restricted_sumset, same_class_mod_2g, sumset,
};
use crate::constructions::{build_guo_pair, core_block, CosetPairing, GuoParameters, QuotientParams, Recipe};
use crate::error::{invalid, violation, Error, Result};
use crate::group::{cyclic_subgroup, doubling_subgroups, quotient, Elem, Group, QuotientMap, Subgroup};
use crate::set::GSubset;
use crate::triple::Triple;

/// Which characterization applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriticalRegime {
    /// `L_S = |S| L(G)`: `S − s` is a subgroup of `2G`.
    SingleClass,
    /// `L_S < |S| L(G)`: `S` splits into several classes modulo `2G`.
    Decomposed,
}

/// Structural parameters of one class `S_i` of a decomposed critical triple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassSummary {
    pub class: Vec<usize>,
    pub s: usize,
    pub b_s: usize,
    pub sigma_order: usize,
    pub d: usize,
    pub k: usize,
    pub l: usize,
    pub m: usize,
}

#[derive(Debug, Clone)]
pub struct CriticalWitness {
    /// Least exception, written `2b_s + s`.
    pub anchor: Elem,
    pub s: Elem,
    pub b_s: Elem,
    pub regime: CriticalRegime,
    /// The class of `S − s` containing 0; equal to `S − s` in the single-class regime.
    pub sigma: Subgroup,
    pub map: QuotientMap,
    /// Extremal-pair parameters on `G/Σ` with `a = 0`, canonical.
    pub params: GuoParameters,
    pub d: usize,
    /// Classes of `S − s` modulo `2G`, the one containing 0 first.
    pub classes: Vec<GSubset>,
    /// Per-class recovery in the decomposed regime.
    pub class_summaries: Vec<ClassSummary>,
    /// `y_i` with `S_i − s = y_i + Σ`, when `(d + 1)/2 > L(G/Σ)`.
    pub translates: Option<Vec<Elem>>,
    pub exception_pair: Option<(Elem, Elem)>,
}

impl CriticalWitness {
    pub fn group(&self) -> &Group {
        self.map.source()
    }

    pub fn m(&self) -> usize {
        self.params.m()
    }

    pub fn recipe(&self) -> Recipe {
        Recipe {
            group: self.group().label().to_string(),
            sigma: self.sigma.carrier().to_indices(),
            s: self.s.index(),
            b_s: self.b_s.index(),
            quotient: QuotientParams::from_guo(&self.map, &self.params),
            extra_classes: self.classes[1..].iter().map(GSubset::to_indices).collect(),
        }
    }

    pub fn record(&self) -> WitnessRecord {
        WitnessRecord {
            group: self.group().label().to_string(),
            anchor: self.anchor.index(),
            regime: self.regime,
            sigma_order: self.sigma.order(),
            quotient_order: self.map.target().order(),
            b: self.map.section(self.params.b).index(),
            d: self.d,
            k: self.params.k,
            l: self.params.l,
            m: self.m(),
            classes: self.classes.iter().map(GSubset::to_indices).collect(),
            class_summaries: self.class_summaries.clone(),
            translates: self.translates.as_ref().map(|v| v.iter().map(|y| y.index()).collect()),
            exception_pair: self.exception_pair.map(|(x, y)| [x.index(), y.index()]),
            recipe: self.recipe(),
        }
    }

    /// One-line description used in survey fingerprints.
    pub fn summary(&self) -> String {
        format!(
            "{} sigma={} d={} k={} l={} m={}",
            match self.regime {
                CriticalRegime::SingleClass => "single",
                CriticalRegime::Decomposed => "decomposed",
            },
            self.sigma.order(),
            self.d,
            self.params.k,
            self.params.l,
            self.m()
        )
    }
}

/// Serialized witness. `recipe` rebuilds the classified triple exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub group: String,
    pub anchor: usize,
    pub regime: CriticalRegime,
    pub sigma_order: usize,
    pub quotient_order: usize,
    /// Representative in `G` of the quotient element `b`.
    pub b: usize,
    pub d: usize,
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub classes: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub class_summaries: Vec<ClassSummary>,
    pub translates: Option<Vec<usize>>,
    pub exception_pair: Option<[usize; 2]>,
    pub recipe: Recipe,
}

/// First `(s, b)` in index order with `s ∈ S`, `b ∈ (A − s) ∩ B` and `z = 2b + s`.
pub fn anchor_factorization(t: &Triple, z: Elem) -> Option<(Elem, Elem)> {
    let g = t.group();
    for s in t.s.iter() {
        for b in t.b.iter() {
            if t.a.contains(g.add(b, s)) && g.add(g.double(b), s) == z {
                return Some((s, b));
            }
        }
    }
    None
}

/// Partition of `S` modulo `2G`, ordered by least element.
pub fn decompose_mod_2g(s: &GSubset) -> Result<Vec<GSubset>> {
    if s.is_empty() {
        return Err(invalid!("S must be non-empty"));
    }
    Ok(classes_mod_2g(s))
}

/// The least `(z₁, z₂)` with `G \ (A ∧^S B) = (z₁ + S) ⊔ (z₂ + S)`, if any.
pub fn exception_structure(t: &Triple) -> Result<Option<(Elem, Elem)>> {
    if t.s.is_empty() {
        return Err(invalid!("S must be non-empty"));
    }
    let g = t.group();
    let exc = exceptions(&t.a, &t.b, &t.s)?;
    if exc.len() != 2 * t.s.len() {
        return Ok(None);
    }
    let s_min = t.s.min().expect("non-empty");
    let mut best: Option<(Elem, Elem)> = None;
    for z1 in g.elements() {
        if !exc.contains(g.add(z1, s_min)) {
            continue;
        }
        let first = t.s.translate(z1);
        if !first.is_subset(&exc) {
            continue;
        }
        let rest = exc.difference(&first);
        let r = rest.min().expect("|rest| = |S| > 0");
        let z2 = t
            .s
            .iter()
            .map(|s| g.sub(r, s))
            .filter(|&z2| t.s.translate(z2) == rest)
            .min();
        if let Some(z2) = z2 {
            best = Some((z1, z2));
            break;
        }
    }
    Ok(best)
}

/// `S − S ⊆ 2G` and `S − s = −(S − s)` for every `s ∈ S`.
pub fn prop14_check(t: &Triple) -> bool {
    let g = t.group();
    let Some(first) = t.s.min() else { return false };
    if !t.s.iter().all(|x| same_class_mod_2g(g, x, first)) {
        return false;
    }
    crate::constructions::symmetric_about_each_point(&t.s)
}

fn tight_count(a: &GSubset, b: &GSubset, s: &GSubset) -> Result<usize> {
    Ok(a.group().order() - restricted_sumset(a, b, s)?.len())
}

/// Recover canonical extremal-pair parameters (with `a = 0`) from a pair whose
/// exceptions are `{0, 2b}`.
pub(crate) fn recover_guo(q: &Group, a: &GSubset, b: &GSubset) -> Result<GuoParameters> {
    let l = doubling_constant(q);
    if a.len() + b.len() != q.order() + l {
        return Err(violation!(
            "projected pair has |A'| + |B'| = {}, expected |G/Σ| + L = {}",
            a.len() + b.len(),
            q.order() + l
        ));
    }
    let zero = GSubset::singleton(q, Elem::ZERO);
    let exc = exceptions(a, b, &zero)?;
    if exc.len() != 2 || !exc.contains(Elem::ZERO) {
        return Err(violation!("projected pair has exceptions {exc:?}, expected {{0, 2b}}"));
    }
    let e = exc.iter().find(|&x| x != Elem::ZERO).expect("two exceptions");
    let both = a.intersection(b);
    let b_elem = both
        .iter()
        .find(|&x| q.double(x) == e)
        .ok_or_else(|| violation!("no b ∈ A' ∩ B' with 2b = {}", q.display_elem(e)))?;
    let h = cyclic_subgroup(q, e);
    let d = h.order();
    if d % 2 == 0 {
        return Err(violation!("<2b> has even order {d}"));
    }
    let (_, kernel) = doubling_subgroups(q);
    let pairing = CosetPairing::new(q, &h)?;
    let core = core_block(q, b_elem, d, &kernel);
    if a.intersection(&pairing.k_plus_h) != core || b.intersection(&pairing.k_plus_h) != core {
        return Err(violation!("A' and B' do not meet K + H in the expected block"));
    }
    let coset = |x: Elem| GSubset::from_elems(q, h.carrier().iter().map(|y| q.add(x, y)));
    let membership = |set: &GSubset, c: &GSubset| -> Result<bool> {
        if c.is_subset(set) {
            Ok(true)
        } else if c.is_disjoint(set) {
            Ok(false)
        } else {
            Err(violation!("a coset of <2b> is split by the projected pair"))
        }
    };
    let (mut shared, mut in_a, mut in_b) = (Vec::new(), Vec::new(), Vec::new());
    for &x in &pairing.reps {
        let plus = coset(x);
        let minus = coset(q.neg(x));
        let pattern = (
            membership(a, &plus)?,
            membership(a, &minus)?,
            membership(b, &plus)?,
            membership(b, &minus)?,
        );
        match pattern {
            (true, false, true, false) => shared.push(plus.min().expect("non-empty")),
            (false, true, false, true) => shared.push(minus.min().expect("non-empty")),
            (true, true, false, false) => in_a.push(x),
            (false, false, true, true) => in_b.push(x),
            _ => return Err(violation!("coset pair {} has an unexpected pattern {pattern:?}", q.display_elem(x))),
        }
    }
    shared.sort();
    let k = shared.len();
    let l = k + in_a.len();
    let mut reps = shared;
    reps.extend(in_a);
    reps.extend(in_b);
    let params = GuoParameters {
        a: Elem::ZERO,
        b: b_elem,
        k,
        l,
        reps,
    }
    .canonical(q)?;
    let rebuilt = build_guo_pair(q, &params)?;
    if rebuilt.0 != *a || rebuilt.1 != *b {
        return Err(violation!("recovered parameters do not rebuild the projected pair"));
    }
    Ok(params)
}

/// Recover the structural witness of a critical triple.
///
/// The anchor is the least exception `z`, factored as `z = 2b_s + s` with the
/// first valid `s ∈ S` and `b_s`. After translating to `A − b_s − s`, `B − b_s`,
/// `S − s`, the class `Σ` of 0 modulo `2G` must be a subgroup, `A` and `B` must
/// be unions of `Σ`-cosets, and their projections to `G/Σ` must be an extremal
/// pair. With several classes, each class is classified on its own as well.
pub fn classify_critical(t: &Triple) -> Result<CriticalWitness> {
    let g = t.group().clone();
    if t.s.is_empty() {
        return Err(invalid!("S must be non-empty"));
    }
    let ls = ls_max(&t.s)?;
    if t.a.len() + t.b.len() != g.order() + ls {
        return Err(Error::NotCritical(format!(
            "|A| + |B| = {} but |G| + L_S = {}",
            t.a.len() + t.b.len(),
            g.order() + ls
        )));
    }
    let exc = exceptions(&t.a, &t.b, &t.s)?;
    if sumset(&t.a, &t.b)?.len() != g.order() {
        return Err(violation!("A + B ≠ G at the threshold"));
    }
    if exc.len() != 2 * t.s.len() {
        return Err(Error::NotCritical(format!(
            "|A ∧^S B| = {}, the bound |G| − 2|S| = {} is not attained",
            g.order() - exc.len(),
            g.order() as i64 - 2 * t.s.len() as i64
        )));
    }
    let l_g = doubling_constant(&g);
    let regime = if ls == t.s.len() * l_g {
        CriticalRegime::SingleClass
    } else {
        CriticalRegime::Decomposed
    };

    let anchor = exc.min().expect("critical triples have exceptions");
    let (s, b_s) = anchor_factorization(t, anchor)
        .ok_or_else(|| violation!("exception {} has no factorization 2b + s", g.display_elem(anchor)))?;
    let a_rel = t.a.translate(g.neg(g.add(b_s, s)));
    let b_rel = t.b.translate(g.neg(b_s));
    let s_rel = t.s.translate(g.neg(s));
    let exc_rel = exc.translate(g.neg(anchor));

    let mut classes = classes_mod_2g(&s_rel);
    let zero_pos = classes
        .iter()
        .position(|c| c.contains(Elem::ZERO))
        .expect("0 ∈ S − s");
    let first = classes.remove(zero_pos);
    classes.insert(0, first);
    if regime == CriticalRegime::SingleClass && classes.len() != 1 {
        return Err(violation!("L_S = |S|L(G) but S meets {} classes modulo 2G", classes.len()));
    }
    let sigma = Subgroup::from_carrier(classes[0].clone())
        .map_err(|_| violation!("Σ = {:?} is not a subgroup", classes[0]))?;

    let mut class_summaries = Vec::new();
    if regime == CriticalRegime::Decomposed {
        let class_size = ls / l_g;
        let mut union = GSubset::empty(&g);
        for c in &classes {
            if c.len() != class_size {
                return Err(violation!("class {c:?} has size {}, expected L_S/L(G) = {class_size}", c.len()));
            }
            let part = GSubset::full(&g).difference(&restricted_sumset(&a_rel, &b_rel, c)?);
            if part.len() != 2 * c.len() || !part.is_disjoint(&union) {
                return Err(violation!("class {c:?} is not tight or overlaps another class"));
            }
            union = union.union(&part);
            let rest = s_rel.difference(c);
            if tight_count(&a_rel, &b_rel, &rest)? != 2 * rest.len() {
                return Err(violation!("S minus the class {c:?} is not tight"));
            }
        }
        if union != exc_rel {
            return Err(violation!("per-class exceptions do not partition the exception set"));
        }
        for c in &classes {
            let original = c.translate(s);
            let sub = classify_critical(&Triple::new(t.a.clone(), t.b.clone(), original.clone())?)?;
            class_summaries.push(ClassSummary {
                class: original.to_indices(),
                s: sub.s.index(),
                b_s: sub.b_s.index(),
                sigma_order: sub.sigma.order(),
                d: sub.d,
                k: sub.params.k,
                l: sub.params.l,
                m: sub.m(),
            });
        }
    }

    let map = quotient(&g, &sigma)?;
    if !map.is_saturated(&a_rel) || !map.is_saturated(&b_rel) {
        return Err(violation!("A and B are not unions of Σ-cosets after translation"));
    }
    let q = map.target().clone();
    let params = recover_guo(&q, &map.image(&a_rel), &map.image(&b_rel))?;
    let d = q.element_order(q.double(params.b));
    let b_star = map.section(params.b);

    if regime == CriticalRegime::SingleClass {
        let expected = s_rel.union(&s_rel.translate(g.double(b_star)));
        if expected != exc_rel {
            return Err(violation!("exceptions are not (2b_s + S) ∪ (2b* + 2b_s + S)"));
        }
    }

    let mut translates = None;
    if regime == CriticalRegime::Decomposed && (d + 1) / 2 > doubling_constant(&q) {
        let mut ys = Vec::with_capacity(classes.len());
        for c in &classes {
            let y = c.min().expect("non-empty class");
            if *c != sigma.carrier().translate(y) || !sigma.contains(g.double(y)) {
                return Err(violation!("class {c:?} is not y + Σ with 2y ∈ Σ"));
            }
            ys.push(y);
        }
        let expected = s_rel.union(&s_rel.translate(g.double(b_star)));
        if expected != exc_rel {
            return Err(violation!("exceptions are not {{0, 2b*}} + S"));
        }
        check_translates_avoid_qr(&q, &map, &params, &ys)?;
        translates = Some(ys);
    }

    let witness = CriticalWitness {
        anchor,
        s,
        b_s,
        regime,
        sigma,
        map,
        params,
        d,
        classes,
        class_summaries,
        translates,
        exception_pair: exception_structure(t)?,
    };
    let rebuilt = witness.recipe().build_in(&g)?;
    if rebuilt != *t {
        return Err(violation!("the recovered recipe does not rebuild the input triple"));
    }
    Ok(witness)
}

/// `({0, 2b} + {π(y_i)}) ∩ (Q + R) = ∅`.
fn check_translates_avoid_qr(q: &Group, map: &QuotientMap, p: &GuoParameters, ys: &[Elem]) -> Result<()> {
    let h = cyclic_subgroup(q, q.double(p.b));
    let mut q_part = GSubset::empty(q);
    let mut r_part = GSubset::empty(q);
    for (i, &x) in p.reps.iter().enumerate() {
        for y in h.carrier().iter() {
            let plus = q.add(x, y);
            let minus = q.add(q.neg(x), y);
            if i < p.k {
                q_part.insert(plus);
                r_part.insert(plus);
            } else if i < p.l {
                q_part.insert(plus);
                q_part.insert(minus);
            } else {
                r_part.insert(plus);
                r_part.insert(minus);
            }
        }
    }
    let qr = sumset(&q_part, &r_part)?;
    let two_b = q.double(p.b);
    for &y in ys {
        let py = map.project(y);
        if qr.contains(py) || qr.contains(q.add(two_b, py)) {
            return Err(violation!("translate {} meets Q + R", map.source().display_elem(y)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::builtin_example;

    fn example(name: &str) -> Triple {
        let ex = builtin_example(name).unwrap();
        let (a, b) = ex.pair.unwrap();
        Triple::new(a, b, ex.s).unwrap()
    }

    #[test]
    fn classify_example_one() {
        let w = classify_critical(&example("ex1")).unwrap();
        assert_eq!(w.regime, CriticalRegime::SingleClass);
        assert!(w.sigma.is_trivial());
        assert_eq!((w.d, w.params.k, w.params.l, w.m()), (3, 1, 1, 2));
        assert_eq!(w.map.section(w.params.b), Elem(5));
        assert_eq!(w.params.reps, vec![Elem(2), Elem(1)]);
        assert_eq!(w.exception_pair, Some((Elem(0), Elem(10))));
    }

    #[test]
    fn classify_example_three() {
        let w = classify_critical(&example("ex3")).unwrap();
        assert_eq!(w.sigma.carrier().to_indices(), vec![0, 15, 30]);
        assert_eq!(w.map.target().order(), 15);
        assert_eq!(w.d, 3);
        assert_eq!(w.exception_pair, Some((Elem(0), Elem(10))));
    }

    #[test]
    fn classify_example_two_decomposes() {
        let w = classify_critical(&example("ex2")).unwrap();
        assert_eq!(w.regime, CriticalRegime::Decomposed);
        assert_eq!(w.classes.len(), 2);
        assert_eq!((w.d, w.params.k, w.params.l, w.m()), (3, 2, 2, 4));
        // (d + 1)/2 = 2 is not above L(G) = 2
        assert!(w.translates.is_none());
        assert_eq!(w.class_summaries.len(), 2);
        assert_eq!(w.exception_pair, Some((Elem(0), Elem(10))));
    }

    #[test]
    fn non_critical_is_reported() {
        let g = Group::cyclic(7).unwrap();
        let f = |v: &[usize]| GSubset::from_indices(&g, v.iter().copied()).unwrap();
        let t = Triple::new(f(&[0, 1, 2, 3, 4]), f(&[0, 1, 2, 3]), f(&[0])).unwrap();
        assert!(matches!(classify_critical(&t), Err(Error::NotCritical(_))));
    }

    #[test]
    fn decomposition_examples() {
        let g = Group::cyclic(30).unwrap();
        let s = GSubset::from_indices(&g, [0, 15]).unwrap();
        let parts = decompose_mod_2g(&s).unwrap();
        assert_eq!(parts.iter().map(GSubset::to_indices).collect::<Vec<_>>(), vec![vec![0], vec![15]]);
        let g = Group::cyclic(45).unwrap();
        let s = GSubset::from_indices(&g, [0, 15, 30]).unwrap();
        assert_eq!(decompose_mod_2g(&s).unwrap(), vec![s]);
    }

    #[test]
    fn structure_and_prop14() {
        assert_eq!(exception_structure(&example("ex2")).unwrap(), Some((Elem(0), Elem(10))));
        assert!(prop14_check(&example("ex1")));
        assert!(prop14_check(&example("ex3")));
        let g = Group::cyclic(5).unwrap();
        let f = |v: &[usize]| GSubset::from_indices(&g, v.iter().copied()).unwrap();
        let t = Triple::new(f(&[0, 1, 2]), f(&[0, 1, 2, 3, 4]), f(&[0, 1])).unwrap();
        assert!(!prop14_check(&t));
        let above = Triple::new(f(&[0, 1, 2, 3, 4]), f(&[0, 1, 2, 3, 4]), f(&[0])).unwrap();
        assert_eq!(exception_structure(&above).unwrap(), None);
    }
}

use std::collections::HashSet;

use crate::error::{invalid, Error, Result};
use crate::group::{Elem, Group};
use crate::set::GSubset;

/// Order cap for [`all_subgroups`].
pub const DEFAULT_SUBGROUP_LIMIT: usize = 512;

/// Cap on the number of distinct subgroups collected before giving up.
const SUBGROUP_COUNT_LIMIT: usize = 1 << 17;

/// A subset certified closed under addition, together with generators whose
/// closure is the carrier.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    carrier: GSubset,
    generators: Vec<Elem>,
}

impl Subgroup {
    /// Certify `carrier` as a subgroup and compute a greedy generating set.
    pub fn from_carrier(carrier: GSubset) -> Result<Subgroup> {
        if !is_subgroup(&carrier) {
            return Err(invalid!("{carrier:?} is not a subgroup"));
        }
        let g = carrier.group().clone();
        let mut closure = GSubset::singleton(&g, Elem::ZERO);
        let mut generators = Vec::new();
        for x in carrier.iter() {
            if !closure.contains(x) {
                closure = join_with_cyclic(&closure, &cyclic_carrier(&g, x));
                generators.push(x);
            }
        }
        Ok(Subgroup { carrier, generators })
    }

    pub fn trivial(group: &Group) -> Subgroup {
        Subgroup {
            carrier: GSubset::singleton(group, Elem::ZERO),
            generators: Vec::new(),
        }
    }

    pub fn whole(group: &Group) -> Subgroup {
        Subgroup::from_carrier(GSubset::full(group)).expect("a group is its own subgroup")
    }

    pub fn carrier(&self) -> &GSubset {
        &self.carrier
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn group(&self) -> &Group {
        self.carrier.group()
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.carrier.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.carrier.len() == 1
    }

    /// `<g1,g2,...>` using display forms of the generators.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|&g| self.group().display_elem(g)).collect();
        if gens.is_empty() {
            "<0>".to_string()
        } else {
            format!("<{}>", gens.join(","))
        }
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{}{:?}", self.describe(), self.carrier.to_indices())
    }
}

/// True iff `0 ∈ T` and `T + T ⊆ T`; finiteness then gives closure under negation.
pub fn is_subgroup(t: &GSubset) -> bool {
    if !t.contains(Elem::ZERO) {
        return false;
    }
    let g = t.group();
    for x in t.iter() {
        for y in t.iter() {
            if !t.contains(g.add(x, y)) {
                return false;
            }
        }
    }
    true
}

fn cyclic_carrier(g: &Group, x: Elem) -> GSubset {
    let mut s = GSubset::singleton(g, Elem::ZERO);
    let mut y = x;
    while y != Elem::ZERO {
        s.insert(y);
        y = g.add(y, x);
    }
    s
}

fn join_with_cyclic(h: &GSubset, c: &GSubset) -> GSubset {
    let g = h.group();
    let mut out = GSubset::empty(g);
    for x in h.iter() {
        for y in c.iter() {
            out.insert(g.add(x, y));
        }
    }
    out
}

/// `<x> = {0, x, 2x, ...}`.
pub fn cyclic_subgroup(g: &Group, x: Elem) -> Subgroup {
    let carrier = cyclic_carrier(g, x);
    let generators = if x == Elem::ZERO { Vec::new() } else { vec![x] };
    Subgroup { carrier, generators }
}

/// The complete subgroup lattice for groups up to [`DEFAULT_SUBGROUP_LIMIT`] elements.
pub fn all_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    all_subgroups_with_limit(g, DEFAULT_SUBGROUP_LIMIT)
}

/// Closes the set of cyclic subgroups under joins. Every subgroup is a join of
/// cyclic ones, so joining each known subgroup with each cyclic subgroup reaches
/// the whole lattice.
pub fn all_subgroups_with_limit(g: &Group, limit: usize) -> Result<Vec<Subgroup>> {
    if g.order() > limit {
        return Err(Error::ResourceLimit(format!(
            "subgroup enumeration limited to order {limit}, {} has order {}",
            g.label(),
            g.order()
        )));
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclics: Vec<Subgroup> = Vec::new();
    for x in g.elements() {
        let c = cyclic_subgroup(g, x);
        if seen.insert(c.carrier.to_indices()) {
            cyclics.push(c);
        }
    }
    let mut found: Vec<Subgroup> = cyclics.clone();
    let mut work: Vec<usize> = (0..found.len()).collect();
    while let Some(i) = work.pop() {
        for c in &cyclics {
            if c.carrier.is_subset(&found[i].carrier) {
                continue;
            }
            let carrier = join_with_cyclic(&found[i].carrier, &c.carrier);
            if seen.insert(carrier.to_indices()) {
                let mut generators = found[i].generators.clone();
                generators.extend(c.generators.iter().copied());
                found.push(Subgroup { carrier, generators });
                work.push(found.len() - 1);
                if found.len() > SUBGROUP_COUNT_LIMIT {
                    return Err(Error::ResourceLimit(format!(
                        "{} has more than {SUBGROUP_COUNT_LIMIT} subgroups",
                        g.label()
                    )));
                }
            }
        }
    }
    found.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.carrier.to_indices().cmp(&b.carrier.to_indices()))
    });
    Ok(found)
}

/// Image and kernel of the doubling map: `(2G, K(G))`.
pub fn doubling_subgroups(g: &Group) -> (Subgroup, Subgroup) {
    let two_g = GSubset::from_elems(g, g.elements().map(|x| g.double(x)));
    let kernel = GSubset::from_elems(g, g.elements().filter(|&x| g.double(x) == Elem::ZERO));
    (
        Subgroup::from_carrier(two_g).expect("image of a homomorphism"),
        Subgroup::from_carrier(kernel).expect("kernel of a homomorphism"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &Group, idx: &[usize]) -> GSubset {
        GSubset::from_indices(g, idx.iter().copied()).unwrap()
    }

    #[test]
    fn cyclic_examples() {
        let g = Group::cyclic(15).unwrap();
        assert_eq!(cyclic_subgroup(&g, Elem(5)).carrier().to_indices(), vec![0, 5, 10]);
        assert_eq!(cyclic_subgroup(&g, Elem(10)).carrier(), cyclic_subgroup(&g, Elem(5)).carrier());
        assert_eq!(cyclic_subgroup(&g, Elem(0)).order(), 1);
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(all_subgroups(&Group::cyclic(15).unwrap()).unwrap().len(), 4);
        assert_eq!(all_subgroups(&Group::cyclic(5).unwrap()).unwrap().len(), 2);
        assert_eq!(all_subgroups(&Group::new(&[4, 2]).unwrap()).unwrap().len(), 8);
        let orders: Vec<usize> = all_subgroups(&Group::cyclic(15).unwrap())
            .unwrap()
            .iter()
            .map(Subgroup::order)
            .collect();
        assert_eq!(orders, vec![1, 3, 5, 15]);
        assert!(matches!(
            all_subgroups(&Group::cyclic(513).unwrap()),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn doubling_examples() {
        let g = Group::cyclic(15).unwrap();
        let (two, k) = doubling_subgroups(&g);
        assert_eq!(two.order(), 15);
        assert_eq!(k.carrier().to_indices(), vec![0]);

        let g = Group::cyclic(30).unwrap();
        let (two, k) = doubling_subgroups(&g);
        assert_eq!(k.carrier().to_indices(), vec![0, 15]);
        assert_eq!(two.order(), 15);

        let g = Group::new(&[4, 2]).unwrap();
        let (two, k) = doubling_subgroups(&g);
        assert_eq!(k.order(), 4);
        let two_a = g.encode(&[2, 0]).unwrap();
        assert_eq!(two.carrier().to_elems(), vec![Elem::ZERO, two_a]);
    }

    #[test]
    fn subgroup_predicate() {
        let g = Group::cyclic(15).unwrap();
        assert!(is_subgroup(&set(&g, &[0, 5, 10])));
        assert!(!is_subgroup(&set(&g, &[0, 5])));
        assert!(!is_subgroup(&set(&g, &[5, 10])));
    }

    #[test]
    fn greedy_generators_close_to_carrier() {
        let g = Group::new(&[4, 2]).unwrap();
        for h in all_subgroups(&g).unwrap() {
            let again = Subgroup::from_carrier(h.carrier().clone()).unwrap();
            let mut closure = GSubset::singleton(&g, Elem::ZERO);
            for &x in again.generators() {
                closure = join_with_cyclic(&closure, &cyclic_carrier(&g, x));
            }
            assert_eq!(&closure, h.carrier());
        }
    }
}

//! Subset arithmetic: sumsets, restricted sumsets, representation counts and
//! the doubling constants `L(G)`, `L_S(z)`, `L_S`.

mod ls;

pub use ls::{ls_at, ls_at_with, BruteForce, Formula, LsMethod, LsRegistry};

use crate::error::{invalid, Result};
use crate::group::{Elem, Group, Subgroup};
use crate::set::GSubset;

/// `A + B`.
pub fn sumset(a: &GSubset, b: &GSubset) -> Result<GSubset> {
    a.same_group(b)?;
    let g = a.group();
    let mut out = GSubset::empty(g);
    for x in a.iter() {
        for y in b.iter() {
            out.insert(g.add(x, y));
            if out.len() == g.order() {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// `{a + b : a ∈ A, b ∈ B, a − b ∉ S}`. An empty `S` gives the plain sumset.
pub fn restricted_sumset(a: &GSubset, b: &GSubset, s: &GSubset) -> Result<GSubset> {
    a.same_group(b)?;
    a.same_group(s)?;
    let g = a.group();
    let mut out = GSubset::empty(g);
    for x in a.iter() {
        for y in b.iter() {
            let sum = g.add(x, y);
            if !out.contains(sum) && !s.contains(g.sub(x, y)) {
                out.insert(sum);
            }
        }
    }
    Ok(out)
}

/// Number of pairs `(a, b) ∈ A × B` with `a + b = z`, i.e. `|A ∩ (z − B)|`.
pub fn nu(a: &GSubset, b: &GSubset, z: Elem) -> usize {
    let g = a.group();
    b.iter().filter(|&y| a.contains(g.sub(z, y))).count()
}

/// Representation counts for every `z`, indexed by element.
pub fn nu_table(a: &GSubset, b: &GSubset) -> Vec<usize> {
    let g = a.group();
    let mut counts = vec![0usize; g.order()];
    for x in a.iter() {
        for y in b.iter() {
            counts[g.add(x, y).index()] += 1;
        }
    }
    counts
}

/// `L(G) = |K(G)|`, the number of elements with `2x = 0`.
pub fn doubling_constant(g: &Group) -> usize {
    g.doubling().kernel_size
}

/// `L_S = max_z L_S(z)`, via the class count of `S` modulo `2G`.
pub fn ls_max(s: &GSubset) -> Result<usize> {
    if s.is_empty() {
        return Err(invalid!("L_S is undefined for empty S"));
    }
    let g = s.group();
    let d = g.doubling();
    let mut counts = vec![0usize; d.class_count];
    for x in s.iter() {
        counts[d.class_of[x.index()] as usize] += 1;
    }
    Ok(counts.into_iter().max().unwrap_or(0) * d.kernel_size)
}

/// `H(T) = {g : 2g ∈ T}`.
pub fn half(t: &GSubset) -> GSubset {
    let g = t.group();
    GSubset::from_elems(g, g.elements().filter(|&x| t.contains(g.double(x))))
}

/// `t·A = {ta : a ∈ A}`.
pub fn dilate(t: i64, a: &GSubset) -> GSubset {
    let g = a.group();
    GSubset::from_elems(g, a.iter().map(|x| g.scale(t, x)))
}

/// `(S ∩ −S, S Δ −S)`, a partition of `S ∪ −S`.
pub fn sym_decomp(s: &GSubset) -> (GSubset, GSubset) {
    let neg = s.negate();
    let core = s.intersection(&neg);
    let diff = s.union(&neg).difference(&core);
    (core, diff)
}

/// `(A + B) \ (A ∧^S B)`.
pub fn exceptions(a: &GSubset, b: &GSubset, s: &GSubset) -> Result<GSubset> {
    Ok(sumset(a, b)?.difference(&restricted_sumset(a, b, s)?))
}

/// If `A` is a union of `H`-cosets, their minimum-index representatives in increasing order.
pub fn coset_split(a: &GSubset, h: &Subgroup) -> Option<Vec<Elem>> {
    let g = a.group();
    let mut covered = GSubset::empty(g);
    let mut reps = Vec::new();
    for x in a.iter() {
        if covered.contains(x) {
            continue;
        }
        for k in h.carrier().iter() {
            let y = g.add(x, k);
            if !a.contains(y) {
                return None;
            }
            covered.insert(y);
        }
        reps.push(x);
    }
    Some(reps)
}

/// Classes of `S` modulo `2G`, ordered by their smallest element.
pub fn classes_mod_2g(s: &GSubset) -> Vec<GSubset> {
    let g = s.group();
    let d = g.doubling();
    let mut classes: Vec<(u32, GSubset)> = Vec::new();
    for x in s.iter() {
        let c = d.class_of[x.index()];
        match classes.iter_mut().find(|(id, _)| *id == c) {
            Some((_, set)) => {
                set.insert(x);
            }
            None => classes.push((c, GSubset::singleton(g, x))),
        }
    }
    classes.into_iter().map(|(_, set)| set).collect()
}

/// True iff `x − y ∈ 2G`.
pub fn same_class_mod_2g(g: &Group, x: Elem, y: Elem) -> bool {
    let d = g.doubling();
    d.class_of[x.index()] == d.class_of[y.index()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic_subgroup;

    fn set(g: &Group, idx: &[usize]) -> GSubset {
        GSubset::from_indices(g, idx.iter().copied()).unwrap()
    }

    fn z(n: u32) -> Group {
        Group::cyclic(n).unwrap()
    }

    fn example1() -> (Group, GSubset, GSubset) {
        let g = z(15);
        let a = set(&g, &[0, 5, 2, 7, 12]);
        let b = set(&g, &[0, 5, 2, 7, 12, 4, 9, 14, 1, 6, 11]);
        (g, a, b)
    }

    #[test]
    fn sumset_examples() {
        let g = z(15);
        assert_eq!(sumset(&set(&g, &[0, 5]), &set(&g, &[0, 5])).unwrap().to_indices(), vec![0, 5, 10]);
        let low = set(&g, &(0..8).collect::<Vec<_>>());
        assert_eq!(sumset(&low, &low).unwrap().len(), 15);
        let a = set(&g, &[3, 9]);
        assert_eq!(sumset(&a, &set(&g, &[0])).unwrap(), a);
        assert!(sumset(&a, &GSubset::empty(&g)).unwrap().is_empty());
        assert!(sumset(&a, &GSubset::empty(&z(16))).is_err());
    }

    #[test]
    fn restricted_sumset_examples() {
        let (g, a, b) = example1();
        let s0 = set(&g, &[0]);
        let r = restricted_sumset(&a, &b, &s0).unwrap();
        assert_eq!(GSubset::full(&g).difference(&r).to_indices(), vec![0, 10]);
        assert!(restricted_sumset(&s0, &s0, &s0).unwrap().is_empty());
        let empty = GSubset::empty(&g);
        assert_eq!(restricted_sumset(&a, &b, &empty).unwrap(), sumset(&a, &b).unwrap());
    }

    #[test]
    fn nu_examples() {
        let g = z(15);
        let full = GSubset::full(&g);
        assert!(g.elements().all(|x| nu(&full, &full, x) == 15));
        let (_, a, b) = example1();
        for u in [1, 6, 11] {
            assert_eq!(nu(&a, &b, Elem(u)), 5);
        }
        let a = set(&g, &[0]);
        let b = set(&g, &[1]);
        assert_eq!(nu(&a, &b, Elem(0)), 0);
        let table = nu_table(&a, &b);
        assert_eq!(table.iter().sum::<usize>(), 1);
    }

    #[test]
    fn doubling_constant_examples() {
        assert_eq!(doubling_constant(&z(15)), 1);
        assert_eq!(doubling_constant(&z(30)), 2);
        assert_eq!(doubling_constant(&Group::new(&[4, 2]).unwrap()), 4);
    }

    #[test]
    fn doubling_constant_is_max_fibre() {
        for orders in [vec![12], vec![4, 2], vec![2, 2, 2], vec![6, 6], vec![9]] {
            let g = Group::new(&orders).unwrap();
            let mut fibres = vec![0usize; g.order()];
            for x in g.elements() {
                fibres[g.double(x).index()] += 1;
            }
            assert_eq!(fibres.into_iter().max().unwrap(), doubling_constant(&g));
        }
    }

    #[test]
    fn ls_max_examples() {
        assert_eq!(ls_max(&set(&z(15), &[0])).unwrap(), 1);
        assert_eq!(ls_max(&set(&z(30), &[0, 15])).unwrap(), 2);
        assert_eq!(ls_max(&set(&z(45), &[0, 15, 30])).unwrap(), 3);
        assert!(ls_max(&GSubset::empty(&z(5))).is_err());
    }

    #[test]
    fn half_examples() {
        let g = z(30);
        assert_eq!(half(&set(&g, &[0])).to_indices(), vec![0, 15]);
        let g = z(15);
        assert_eq!(half(&set(&g, &[0, 5, 10])).to_indices(), vec![0, 5, 10]);
        let g = Group::new(&[4, 2]).unwrap();
        let t = GSubset::singleton(&g, g.encode(&[1, 0]).unwrap());
        assert!(half(&t).is_empty());
    }

    #[test]
    fn dilate_examples() {
        let g = z(15);
        assert_eq!(dilate(-1, &set(&g, &[1, 2])).to_indices(), vec![13, 14]);
        assert_eq!(dilate(3, &set(&g, &[5])).to_indices(), vec![0]);
        let g = z(30);
        assert_eq!(dilate(2, &GSubset::full(&g)).len(), 15);
    }

    #[test]
    fn sym_decomp_examples() {
        let (core, diff) = sym_decomp(&set(&z(30), &[0, 15]));
        assert_eq!(core.to_indices(), vec![0, 15]);
        assert!(diff.is_empty());
        let (core, diff) = sym_decomp(&set(&z(45), &[0, 15, 30]));
        assert_eq!(core.len(), 3);
        assert!(diff.is_empty());
        let (core, diff) = sym_decomp(&set(&z(5), &[1, 2]));
        assert!(core.is_empty());
        assert_eq!(diff.to_indices(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn coset_split_examples() {
        let g = z(15);
        let h = cyclic_subgroup(&g, Elem(5));
        let a = set(&g, &[2, 7, 12, 4, 9, 14, 1, 6, 11]);
        assert_eq!(coset_split(&a, &h).unwrap(), vec![Elem(1), Elem(2), Elem(4)]);
        assert!(coset_split(&set(&g, &[0, 5]), &h).is_none());
        assert_eq!(coset_split(&GSubset::full(&g), &h).unwrap().len(), 5);
    }

    #[test]
    fn classes_mod_2g_examples() {
        let g = z(30);
        let c = classes_mod_2g(&set(&g, &[0, 15]));
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].to_indices(), vec![0]);
        assert_eq!(c[1].to_indices(), vec![15]);
        let g = z(45);
        assert_eq!(classes_mod_2g(&set(&g, &[0, 15, 30])).len(), 1);
    }
}

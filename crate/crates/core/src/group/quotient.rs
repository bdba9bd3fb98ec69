use crate::error::{invalid, Result};
use crate::group::{is_subgroup, Elem, Group, Subgroup};
use crate::set::GSubset;

/// The natural projection `G -> G/H`.
///
/// The target is a concrete [`Group`] whose element `q` stands for the coset
/// with the `q`-th smallest canonical representative (its minimum index).
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: Group,
    kernel: Subgroup,
    target: Group,
}

impl QuotientMap {
    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    fn parts(&self) -> (&[u32], &[u32]) {
        let (_, forward, section) = self.target.quotient_parts().expect("quotient target");
        (forward, section)
    }

    /// `π(x)`.
    #[inline]
    pub fn project(&self, x: Elem) -> Elem {
        Elem(self.parts().0[x.index()])
    }

    /// Canonical representative (minimum index) of the coset `q`.
    #[inline]
    pub fn section(&self, q: Elem) -> Elem {
        Elem(self.parts().1[q.index()])
    }

    /// `π(A)`.
    pub fn image(&self, a: &GSubset) -> GSubset {
        GSubset::from_elems(&self.target, a.iter().map(|x| self.project(x)))
    }

    /// True iff `a` is a union of full kernel cosets.
    pub fn is_saturated(&self, a: &GSubset) -> bool {
        preimage(self, &self.image(a)) == *a
    }
}

/// Build `G/H` with canonical minimum-index coset representatives.
pub fn quotient(g: &Group, h: &Subgroup) -> Result<QuotientMap> {
    if h.group() != g {
        return Err(invalid!("subgroup belongs to {}, not {}", h.group().label(), g.label()));
    }
    if !is_subgroup(h.carrier()) {
        return Err(invalid!("{:?} is not closed under addition", h.carrier()));
    }
    let mut forward = vec![u32::MAX; g.order()];
    let mut section = Vec::with_capacity(g.order() / h.order());
    for x in g.elements() {
        if forward[x.index()] != u32::MAX {
            continue;
        }
        let label = section.len() as u32;
        section.push(x.0);
        for k in h.carrier().iter() {
            forward[g.add(x, k).index()] = label;
        }
    }
    let label = if h.is_trivial() {
        g.label().to_string()
    } else {
        format!("{}/{}", g.label(), h.describe())
    };
    let target = Group::new_quotient(g, forward, section, label);
    Ok(QuotientMap {
        source: g.clone(),
        kernel: h.clone(),
        target,
    })
}

/// `π⁻¹(Q)`, a union of full kernel cosets.
pub fn preimage(map: &QuotientMap, q: &GSubset) -> GSubset {
    GSubset::from_elems(
        &map.source,
        map.source.elements().filter(|&x| q.contains(map.project(x))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic_subgroup;

    #[test]
    fn z30_mod_15_is_cyclic_of_order_15() {
        let g = Group::cyclic(30).unwrap();
        let m = quotient(&g, &cyclic_subgroup(&g, Elem(15))).unwrap();
        let q = m.target();
        assert_eq!(q.order(), 15);
        let orders: Vec<usize> = q.elements().map(|x| q.element_order(x)).collect();
        assert!(orders.iter().all(|o| 15 % o == 0));
        assert!(orders.contains(&15));
    }

    #[test]
    fn trivial_kernel_is_identity() {
        let g = Group::new(&[4, 2]).unwrap();
        let m = quotient(&g, &Subgroup::trivial(&g)).unwrap();
        for x in g.elements() {
            assert_eq!(m.project(x), x);
            assert_eq!(m.section(x), x);
        }
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(m.target().add(x, y), g.add(x, y));
            }
        }
    }

    #[test]
    fn preimage_examples() {
        let g = Group::cyclic(30).unwrap();
        let m = quotient(&g, &cyclic_subgroup(&g, Elem(15))).unwrap();
        let zero = GSubset::singleton(m.target(), Elem::ZERO);
        assert_eq!(preimage(&m, &zero).to_indices(), vec![0, 15]);
        let src = GSubset::from_indices(&g, [0, 5, 10]).unwrap();
        assert_eq!(preimage(&m, &m.image(&src)).to_indices(), vec![0, 5, 10, 15, 20, 25]);
        assert_eq!(preimage(&m, &GSubset::full(m.target())).len(), 30);

        let g = Group::cyclic(15).unwrap();
        let m = quotient(&g, &cyclic_subgroup(&g, Elem(5))).unwrap();
        assert_eq!(m.target().order(), 5);
    }

    #[test]
    fn projection_is_homomorphism_with_uniform_fibres() {
        let g = Group::new(&[6, 4]).unwrap();
        let h = cyclic_subgroup(&g, g.encode(&[2, 2]).unwrap());
        let m = quotient(&g, &h).unwrap();
        let mut fibre = vec![0usize; m.target().order()];
        for x in g.elements() {
            fibre[m.project(x).index()] += 1;
            for y in g.elements() {
                assert_eq!(m.project(g.add(x, y)), m.target().add(m.project(x), m.project(y)));
            }
        }
        assert!(fibre.iter().all(|&f| f == h.order()));
        for q in m.target().elements() {
            assert_eq!(m.project(m.section(q)), q);
        }
    }

    #[test]
    fn rejects_non_subgroup() {
        let g = Group::cyclic(15).unwrap();
        let bad = GSubset::from_indices(&g, [0, 5]).unwrap();
        assert!(Subgroup::from_carrier(bad).is_err());
    }
}

//! Extremal pairs for the classical restricted sumset: `|A| + |B| = |G| + L(G)`
//! with exactly two exceptions `2a` and `2b`.

use serde::{Deserialize, Serialize};

use crate::algebra::{doubling_constant, exceptions};
use crate::error::{invalid, violation, Error, Result};
use crate::group::{cyclic_subgroup, doubling_subgroups, Elem, Group, Subgroup};
use crate::set::GSubset;

/// Parameters of an extremal pair.
///
/// `reps` lists `x_1..x_m` relative to `a`: the first `k` cosets `a + x_i + H`
/// are shared by `A` and `B`, `x_{k+1}..x_l` contribute both `±x_i + H` to `A`,
/// and `x_{l+1}..x_m` contribute both to `B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GuoParameters {
    pub a: Elem,
    pub b: Elem,
    pub k: usize,
    pub l: usize,
    pub reps: Vec<Elem>,
}

impl GuoParameters {
    pub fn m(&self) -> usize {
        self.reps.len()
    }

    /// Canonical labelling: `b − a` replaced by the least element of `b − a + K(G)`,
    /// shared representatives by the least element of their coset, doubled ones by
    /// the least element of their `±` pair, each block sorted.
    pub fn canonical(&self, g: &Group) -> Result<GuoParameters> {
        let data = self.validate(g)?;
        let delta = g.sub(self.b, self.a);
        let b_rel = data
            .kernel
            .carrier()
            .iter()
            .map(|k| g.add(delta, k))
            .min()
            .expect("kernel is non-empty");
        let mut shared: Vec<Elem> = self.reps[..self.k]
            .iter()
            .map(|&x| coset_min(g, x, &data.h))
            .collect();
        let mut in_a: Vec<Elem> = self.reps[self.k..self.l]
            .iter()
            .map(|&x| data.pairing.rep_of(x).expect("validated"))
            .collect();
        let mut in_b: Vec<Elem> = self.reps[self.l..]
            .iter()
            .map(|&x| data.pairing.rep_of(x).expect("validated"))
            .collect();
        shared.sort();
        in_a.sort();
        in_b.sort();
        let mut reps = shared;
        reps.extend(in_a);
        reps.extend(in_b);
        Ok(GuoParameters {
            a: self.a,
            b: g.add(self.a, b_rel),
            k: self.k,
            l: self.l,
            reps,
        })
    }

    /// Check every hypothesis and return the derived subgroups.
    pub(crate) fn validate(&self, g: &Group) -> Result<GuoData> {
        for (name, x) in [("a", self.a), ("b", self.b)] {
            if !g.contains(x) {
                return Err(invalid!("{name} = {x} is not an element of {}", g.label()));
            }
        }
        let delta = g.sub(self.b, self.a);
        let h = cyclic_subgroup(g, g.double(delta));
        let d = h.order();
        if d == 1 || d % 2 == 0 {
            return Err(Error::ConstructionInfeasible(format!(
                "<2(b - a)> has order {d}; an odd order greater than 1 is required"
            )));
        }
        let pairing = CosetPairing::new(g, &h)?;
        let m = pairing.reps.len();
        if self.k > m || self.l > m {
            return Err(invalid!("k = {} and l = {} must not exceed m = {m}", self.k, self.l));
        }
        if self.k > self.l {
            return Err(invalid!("k = {} must not exceed l = {}", self.k, self.l));
        }
        if self.reps.len() != m {
            return Err(invalid!("expected m = {m} representatives, got {}", self.reps.len()));
        }
        let mut hit = vec![false; m];
        for &x in &self.reps {
            if !g.contains(x) {
                return Err(invalid!("representative {x} is not an element of {}", g.label()));
            }
            let p = pairing
                .pair_of(x)
                .ok_or_else(|| invalid!("representative {} lies in K(G) + H", g.display_elem(x)))?;
            if std::mem::replace(&mut hit[p], true) {
                return Err(invalid!("two representatives fall in the same ± coset pair"));
            }
        }
        let (_, kernel) = doubling_subgroups(g);
        Ok(GuoData {
            h,
            kernel,
            pairing,
            d,
            delta,
        })
    }
}

pub(crate) struct GuoData {
    pub h: Subgroup,
    pub kernel: Subgroup,
    pub pairing: CosetPairing,
    pub d: usize,
    pub delta: Elem,
}

/// The `±` pairing of the `H`-cosets outside `K(G) + H`.
#[derive(Debug, Clone)]
pub(crate) struct CosetPairing {
    /// Canonical representative of each pair, increasing.
    pub reps: Vec<Elem>,
    /// Pair index of each element, `None` on `K(G) + H`.
    pair: Vec<Option<u32>>,
    pub k_plus_h: GSubset,
}

impl CosetPairing {
    pub fn new(g: &Group, h: &Subgroup) -> Result<CosetPairing> {
        if h.order() % 2 == 0 {
            return Err(Error::ConstructionInfeasible(format!(
                "H has even order {}; the coset pairing needs |H| odd",
                h.order()
            )));
        }
        let (_, kernel) = doubling_subgroups(g);
        let mut k_plus_h = GSubset::empty(g);
        for x in kernel.carrier().iter() {
            for y in h.carrier().iter() {
                k_plus_h.insert(g.add(x, y));
            }
        }
        let mut pair = vec![None; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if k_plus_h.contains(x) || pair[x.index()].is_some() {
                continue;
            }
            let id = reps.len() as u32;
            // -x + H = x + H iff 2x ∈ H
            if h.contains(g.double(x)) {
                return Err(Error::ConstructionInfeasible(format!(
                    "coset {} + H is its own negative",
                    g.display_elem(x)
                )));
            }
            let nx = g.neg(x);
            for y in h.carrier().iter() {
                pair[g.add(x, y).index()] = Some(id);
                pair[g.add(nx, y).index()] = Some(id);
            }
            reps.push(x);
        }
        Ok(CosetPairing { reps, pair, k_plus_h })
    }

    pub fn pair_of(&self, x: Elem) -> Option<usize> {
        self.pair[x.index()].map(|p| p as usize)
    }

    pub fn rep_of(&self, x: Elem) -> Option<Elem> {
        self.pair_of(x).map(|p| self.reps[p])
    }
}

/// One canonical representative per `±` pair `{x + H, −x + H}` tiling `G \ (K(G) + H)`.
pub fn pair_coset_reps(g: &Group, h: &Subgroup) -> Result<Vec<Elem>> {
    if h.group() != g {
        return Err(invalid!("subgroup belongs to another group"));
    }
    Ok(CosetPairing::new(g, h)?.reps)
}

pub(crate) fn coset_min(g: &Group, x: Elem, h: &Subgroup) -> Elem {
    h.carrier().iter().map(|y| g.add(x, y)).min().expect("subgroup is non-empty")
}

/// `({0} ∪ {jδ : j odd, 1 ≤ j ≤ d − 2}) + K(G)`.
pub(crate) fn core_block(g: &Group, delta: Elem, d: usize, kernel: &Subgroup) -> GSubset {
    let mut base = vec![Elem::ZERO];
    let mut j = 1;
    while j + 2 <= d {
        base.push(g.scale(j as i64, delta));
        j += 2;
    }
    let mut out = GSubset::empty(g);
    for x in base {
        for k in kernel.carrier().iter() {
            out.insert(g.add(x, k));
        }
    }
    out
}

fn add_coset(out: &mut GSubset, g: &Group, x: Elem, h: &Subgroup) {
    for y in h.carrier().iter() {
        out.insert(g.add(x, y));
    }
}

/// Build the pair `(A, B)` and check `|A| + |B| = |G| + L(G)` with exceptions `{2a, 2b}`.
pub fn build_guo_pair(g: &Group, p: &GuoParameters) -> Result<(GSubset, GSubset)> {
    let data = p.validate(g)?;
    let core = core_block(g, data.delta, data.d, &data.kernel);
    let mut a_rel = core.clone();
    let mut b_rel = core;
    for (i, &x) in p.reps.iter().enumerate() {
        if i < p.k {
            add_coset(&mut a_rel, g, x, &data.h);
            add_coset(&mut b_rel, g, x, &data.h);
        } else {
            let target = if i < p.l { &mut a_rel } else { &mut b_rel };
            add_coset(target, g, x, &data.h);
            add_coset(target, g, g.neg(x), &data.h);
        }
    }
    let a = a_rel.translate(p.a);
    let b = b_rel.translate(p.a);

    let l = doubling_constant(g);
    if a.len() + b.len() != g.order() + l {
        return Err(violation!(
            "built pair has |A| + |B| = {} instead of |G| + L(G) = {}",
            a.len() + b.len(),
            g.order() + l
        ));
    }
    let zero = GSubset::singleton(g, Elem::ZERO);
    let exc = exceptions(&a, &b, &zero)?;
    let expected = GSubset::from_elems(g, [g.double(p.a), g.double(p.b)]);
    if exc != expected {
        return Err(violation!("built pair has exceptions {exc:?}, expected {expected:?}"));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::restricted_sumset;

    fn z(n: u32) -> Group {
        Group::cyclic(n).unwrap()
    }

    fn ex1_params() -> GuoParameters {
        GuoParameters {
            a: Elem(0),
            b: Elem(5),
            k: 1,
            l: 1,
            reps: vec![Elem(2), Elem(1)],
        }
    }

    #[test]
    fn pair_reps_examples() {
        let g = z(15);
        let h = cyclic_subgroup(&g, Elem(5));
        assert_eq!(pair_coset_reps(&g, &h).unwrap(), vec![Elem(1), Elem(2)]);
        let g = z(30);
        let h = cyclic_subgroup(&g, Elem(10));
        assert_eq!(pair_coset_reps(&g, &h).unwrap().len(), 4);
        let g = z(3);
        let h = cyclic_subgroup(&g, Elem(1));
        assert!(pair_coset_reps(&g, &h).unwrap().is_empty());
        let g = z(12);
        let h = cyclic_subgroup(&g, Elem(6));
        assert!(matches!(pair_coset_reps(&g, &h), Err(Error::ConstructionInfeasible(_))));
    }

    #[test]
    fn pairing_tiles_complement() {
        for n in [15u32, 21, 30, 42, 45] {
            let g = z(n);
            for gen in g.elements() {
                let h = cyclic_subgroup(&g, gen);
                if h.order() % 2 == 0 {
                    continue;
                }
                let p = CosetPairing::new(&g, &h).unwrap();
                let mut seen = GSubset::empty(&g);
                for &x in &p.reps {
                    for base in [x, g.neg(x)] {
                        for y in h.carrier().iter() {
                            assert!(seen.insert(g.add(base, y)), "overlap in Z{n}");
                        }
                    }
                }
                assert_eq!(seen, p.k_plus_h.complement());
            }
        }
    }

    #[test]
    fn example_one_sets() {
        let g = z(15);
        let (a, b) = build_guo_pair(&g, &ex1_params()).unwrap();
        assert_eq!(a.to_indices(), vec![0, 2, 5, 7, 12]);
        assert_eq!(b.to_indices(), vec![0, 1, 2, 4, 5, 6, 7, 9, 11, 12, 14]);
        let zero = GSubset::singleton(&g, Elem::ZERO);
        assert_eq!(restricted_sumset(&a, &b, &zero).unwrap().len(), 13);
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = z(15);
        let mut p = ex1_params();
        p.b = Elem(0);
        assert!(matches!(build_guo_pair(&g, &p), Err(Error::ConstructionInfeasible(_))));
        let g = z(30);
        let p = GuoParameters {
            a: Elem(0),
            b: Elem(15),
            k: 0,
            l: 0,
            reps: vec![],
        };
        assert!(matches!(build_guo_pair(&g, &p), Err(Error::ConstructionInfeasible(_))));
        let g = z(15);
        let mut p = ex1_params();
        p.k = 3;
        assert!(matches!(build_guo_pair(&g, &p), Err(Error::InvalidArgument(_))));
        let mut p = ex1_params();
        p.reps = vec![Elem(2), Elem(3)];
        assert!(matches!(build_guo_pair(&g, &p), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn canonical_form() {
        let g = z(15);
        let p = GuoParameters {
            a: Elem(0),
            b: Elem(5),
            k: 1,
            l: 1,
            reps: vec![Elem(7), Elem(14)],
        };
        let c = p.canonical(&g).unwrap();
        assert_eq!(c.reps, vec![Elem(2), Elem(1)]);
        assert_eq!(build_guo_pair(&g, &p).unwrap(), build_guo_pair(&g, &c).unwrap());
    }

    #[test]
    fn size_identity_for_even_groups() {
        let g = z(30);
        let p = GuoParameters {
            a: Elem(0),
            b: Elem(5),
            k: 2,
            l: 3,
            reps: vec![Elem(2), Elem(7), Elem(1), Elem(4)],
        };
        let (a, b) = build_guo_pair(&g, &p).unwrap();
        assert_eq!(a.len() + b.len(), 32);
    }
}

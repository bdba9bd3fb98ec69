use std::collections::BTreeMap;
use std::sync::Arc;

use crate::group::Elem;
use crate::set::GSubset;

/// A way of evaluating `L_S(z) = |{(x, y) : x + y = z, x − y ∈ S}|`.
pub trait LsMethod: Send + Sync {
    fn name(&self) -> &'static str;

    fn eval(&self, s: &GSubset, z: Elem) -> usize;
}

/// Counts the defining pairs directly: `y` ranges over `G` and `x = z − y`.
#[derive(Debug, Default, Clone, Copy)]
pub struct BruteForce;

impl LsMethod for BruteForce {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn eval(&self, s: &GSubset, z: Elem) -> usize {
        let g = s.group();
        g.elements()
            .filter(|&y| {
                let x = g.sub(z, y);
                s.contains(g.sub(x, y))
            })
            .count()
    }
}

/// `|S ∩ (z + 2G)| · L(G)`.
#[derive(Debug, Default, Clone, Copy)]
pub struct Formula;

impl LsMethod for Formula {
    fn name(&self) -> &'static str {
        "formula"
    }

    fn eval(&self, s: &GSubset, z: Elem) -> usize {
        let d = s.group().doubling();
        let class = d.class_of[z.index()];
        s.iter().filter(|x| d.class_of[x.index()] == class).count() * d.kernel_size
    }
}

/// Evaluators registered by name.
#[derive(Clone)]
pub struct LsRegistry {
    methods: BTreeMap<&'static str, Arc<dyn LsMethod>>,
}

impl LsRegistry {
    pub fn empty() -> LsRegistry {
        LsRegistry { methods: BTreeMap::new() }
    }

    pub fn register(&mut self, method: Arc<dyn LsMethod>) {
        self.methods.insert(method.name(), method);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn LsMethod>> {
        self.methods.get(name).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.methods.keys().copied()
    }
}

impl Default for LsRegistry {
    fn default() -> LsRegistry {
        let mut r = LsRegistry::empty();
        r.register(Arc::new(BruteForce));
        r.register(Arc::new(Formula));
        r
    }
}

/// `L_S(z)` by the formula path.
pub fn ls_at(s: &GSubset, z: Elem) -> usize {
    Formula.eval(s, z)
}

pub fn ls_at_with(method: &dyn LsMethod, s: &GSubset, z: Elem) -> usize {
    method.eval(s, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    #[test]
    fn examples_by_both_methods() {
        let reg = LsRegistry::default();
        let brute = reg.get("brute").unwrap();
        let formula = reg.get("formula").unwrap();
        let g = Group::cyclic(45).unwrap();
        let s = GSubset::from_indices(&g, [0, 15, 30]).unwrap();
        assert_eq!(brute.eval(&s, Elem(0)), 3);
        assert_eq!(formula.eval(&s, Elem(0)), 3);

        let g = Group::cyclic(30).unwrap();
        let s = GSubset::from_indices(&g, [0, 15]).unwrap();
        assert_eq!(brute.eval(&s, Elem(1)), 2);
        assert_eq!(formula.eval(&s, Elem(1)), 2);

        let g = Group::cyclic(9).unwrap();
        let s = GSubset::singleton(&g, Elem(0));
        for z in g.elements() {
            assert_eq!(brute.eval(&s, z), 1);
            assert_eq!(ls_at(&s, z), 1);
        }
        assert_eq!(ls_at(&GSubset::empty(&g), Elem(3)), 0);
    }

    #[test]
    fn registry_lookup() {
        let reg = LsRegistry::default();
        assert_eq!(reg.names().collect::<Vec<_>>(), vec!["brute", "formula"]);
        assert!(reg.get("fft").is_none());
    }
}

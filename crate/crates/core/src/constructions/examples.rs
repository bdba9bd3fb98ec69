//! Worked examples, transcribed as data.

use crate::error::{invalid, Result};
use crate::group::{Elem, Group};
use crate::set::GSubset;

/// What a builtin example is expected to exhibit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expected {
    /// The exact set `(A + B) \ (A ∧^S B)`.
    Exceptions(GSubset),
    /// `S = −S + 2·S` holds for every element while `S` is not a coset.
    SymmetricNonCoset,
}

#[derive(Debug, Clone)]
pub struct BuiltinExample {
    pub name: &'static str,
    pub group: Group,
    /// `(A, B)`; absent for examples that only concern `S`.
    pub pair: Option<(GSubset, GSubset)>,
    pub s: GSubset,
    pub expected: Expected,
}

pub const EXAMPLE_NAMES: [&str; 4] = ["ex1", "ex2", "ex3", "noncoset_s"];

/// `A = A₀ ∪ (2 + ⟨5⟩)`, `B = A₀ ∪ (2 + ⟨5⟩) ∪ (4 + ⟨5⟩) ∪ (1 + ⟨5⟩)` in `Z/n`.
fn five_step_pair(n: u32, a0: &[usize], s: &[usize], exc: &[usize], name: &'static str) -> BuiltinExample {
    let g = Group::cyclic(n).expect("valid order");
    let coset = |r: usize| (0..n as usize / 5).map(move |j| (r + 5 * j) % n as usize);
    let mut a: Vec<usize> = a0.to_vec();
    a.extend(coset(2));
    let mut b = a.clone();
    b.extend(coset(4));
    b.extend(coset(1));
    let set = |v: &[usize]| GSubset::from_indices(&g, v.iter().copied()).expect("in range");
    BuiltinExample {
        name,
        pair: Some((set(&a), set(&b))),
        s: set(s),
        expected: Expected::Exceptions(set(exc)),
        group: g,
    }
}

pub fn builtin_example(name: &str) -> Result<BuiltinExample> {
    match name {
        "ex1" => Ok(five_step_pair(15, &[0, 5], &[0], &[0, 10], "ex1")),
        "ex2" => Ok(five_step_pair(30, &[0, 5, 15, 20], &[0, 15], &[0, 10, 15, 25], "ex2")),
        "ex3" => Ok(five_step_pair(
            45,
            &[0, 5, 15, 20, 30, 35],
            &[0, 15, 30],
            &[0, 10, 15, 25, 30, 40],
            "ex3",
        )),
        "noncoset_s" => {
            // Z/4 ⊕ Z/2 with a = (1,0), b = (0,1): S = H₀ ∪ (a + K(G)), H₀ = ⟨2a⟩
            let g = Group::new(&[4, 2]).expect("valid orders");
            let e = |c: [i64; 2]| -> Elem { g.encode(&c).expect("valid coordinates") };
            let s = GSubset::from_elems(
                &g,
                [e([0, 0]), e([2, 0]), e([1, 0]), e([3, 0]), e([1, 1]), e([3, 1])],
            );
            Ok(BuiltinExample {
                name: "noncoset_s",
                group: g,
                pair: None,
                s,
                expected: Expected::SymmetricNonCoset,
            })
        }
        other => Err(invalid!(
            "unknown example `{other}`; expected one of {}",
            EXAMPLE_NAMES.join(", ")
        )),
    }
}

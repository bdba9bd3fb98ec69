//! Property tests over random small groups and subsets.

use proptest::prelude::*;
use sumset_core::algebra::{
    dilate, exceptions, ls_at_with, ls_max, nu, restricted_sumset, sumset, BruteForce, Formula,
};
use sumset_core::analysis::{bound_report, kneser_check, Regime};
use sumset_core::group::{cyclic_subgroup, quotient, Group};
use sumset_core::{Elem, GSubset, Triple};

fn group() -> impl Strategy<Value = Group> {
    prop_oneof![
        (1u32..=24).prop_map(|n| Group::cyclic(n).unwrap()),
        (1u32..=6, 1u32..=6).prop_map(|(m, n)| Group::new(&[m, n]).unwrap()),
        Just(Group::new(&[2, 2, 2]).unwrap()),
        Just(Group::new(&[4, 2, 3]).unwrap()),
    ]
}

/// A group with three subsets drawn from bit patterns.
fn group_and_sets() -> impl Strategy<Value = (Group, GSubset, GSubset, GSubset)> {
    group().prop_flat_map(|g| {
        let n = g.order();
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        (Just(g), any::<u64>(), any::<u64>(), any::<u64>()).prop_map(move |(g, a, b, s)| {
            let set = |m: u64| GSubset::from_mask(&g, m & mask);
            let (a, b, s) = (set(a), set(b), set(s));
            (g, a, b, s)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sumset_is_commutative((_g, a, b, _s) in group_and_sets()) {
        prop_assert_eq!(sumset(&a, &b).unwrap(), sumset(&b, &a).unwrap());
    }

    #[test]
    fn restricted_sumset_swaps_with_negated_s((_g, a, b, s) in group_and_sets()) {
        // a − b ∈ S iff b − a ∈ −S
        let ab = restricted_sumset(&a, &b, &s).unwrap();
        let ba = restricted_sumset(&b, &a, &s.negate()).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn exceptions_partition_the_sumset((_g, a, b, s) in group_and_sets()) {
        let total = sumset(&a, &b).unwrap();
        let r = restricted_sumset(&a, &b, &s).unwrap();
        let e = exceptions(&a, &b, &s).unwrap();
        prop_assert!(r.is_subset(&total));
        prop_assert!(e.is_disjoint(&r));
        prop_assert_eq!(e.union(&r), total);
    }

    #[test]
    fn restricted_sumset_shrinks_as_s_grows((g, a, b, s) in group_and_sets()) {
        let bigger = s.union(&GSubset::singleton(&g, Elem::ZERO));
        prop_assert!(restricted_sumset(&a, &b, &bigger).unwrap().is_subset(&restricted_sumset(&a, &b, &s).unwrap()));
    }

    #[test]
    fn translation_commutes_with_restriction((g, a, b, s) in group_and_sets(), shift in any::<u32>()) {
        // (x + A) ∧^S (x + B) = 2x + A ∧^S B
        let x = Elem(shift % g.order() as u32);
        let lhs = restricted_sumset(&a.translate(x), &b.translate(x), &s).unwrap();
        prop_assert_eq!(lhs, restricted_sumset(&a, &b, &s).unwrap().translate(g.double(x)));
    }

    #[test]
    fn ls_methods_agree((g, _a, _b, s) in group_and_sets()) {
        prop_assume!(!s.is_empty());
        let mut total = 0;
        for z in g.elements() {
            let v = ls_at_with(&BruteForce, &s, z);
            prop_assert_eq!(v, ls_at_with(&Formula, &s, z));
            total += v;
        }
        prop_assert_eq!(total, s.len() * g.order());
    }

    #[test]
    fn representation_counts_sum_to_product((g, a, b, _s) in group_and_sets()) {
        let total: usize = g.elements().map(|z| nu(&a, &b, z)).sum();
        prop_assert_eq!(total, a.len() * b.len());
    }

    #[test]
    fn bound_holds_at_threshold((g, _a, _b, s) in group_and_sets(), seed in any::<u64>()) {
        prop_assume!(!s.is_empty());
        let n = g.order();
        let ls = ls_max(&s).unwrap();
        // split |G| + L_S between |A| and |B|
        let ka = ls + (seed as usize % (n - ls + 1));
        let a = GSubset::from_elems(&g, g.elements().take(ka));
        let b = GSubset::from_elems(&g, g.elements().skip(n - (n + ls - ka)));
        let t = Triple::new(a, b, s).unwrap();
        let r = bound_report(&t).unwrap();
        prop_assert_eq!(r.regime, Regime::AtThreshold);
        prop_assert!(!r.violation);
        prop_assert!(r.achieved as i64 >= r.bound);
    }

    #[test]
    fn kneser_never_fails((_g, a, b, _s) in group_and_sets()) {
        prop_assume!(!a.is_empty() && !b.is_empty());
        prop_assert!(kneser_check(&a, &b).unwrap());
    }

    #[test]
    fn scale_is_repeated_addition(g in group(), idx in any::<u32>(), t in -40i64..40) {
        let x = Elem(idx % g.order() as u32);
        let mut expected = Elem::ZERO;
        let step = if t >= 0 { x } else { g.neg(x) };
        for _ in 0..t.unsigned_abs() {
            expected = g.add(expected, step);
        }
        prop_assert_eq!(g.scale(t, x), expected);
        prop_assert_eq!(dilate(t, &GSubset::singleton(&g, x)), GSubset::singleton(&g, expected));
    }

    #[test]
    fn projection_is_a_homomorphism(g in group(), gen in any::<u32>(), x in any::<u32>(), y in any::<u32>()) {
        let n = g.order() as u32;
        let h = cyclic_subgroup(&g, Elem(gen % n));
        let map = quotient(&g, &h).unwrap();
        let q = map.target();
        let (x, y) = (Elem(x % n), Elem(y % n));
        prop_assert_eq!(map.project(g.add(x, y)), q.add(map.project(x), map.project(y)));
        prop_assert_eq!(map.project(map.section(map.project(x))), map.project(x));
        prop_assert_eq!(q.order() * h.order(), g.order());
    }
}

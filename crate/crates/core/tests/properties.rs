use proptest::prelude::*;

use clifford_roots::catalog::{build, canonical_types, identify, Family};
use clifford_roots::exact::{Rational, Vector};
use clifford_roots::rootsys::{closure, components, is_root_system, reflect, RootSet, DEFAULT_MAX_SIZE};

fn small_types() -> Vec<(Family, usize)> {
    canonical_types(5)
}

/// A catalog system of rank at most 5 and a nonempty subset of its roots.
fn system_and_subset() -> impl Strategy<Value = (RootSet, RootSet)> {
    (0..small_types().len(), prop::collection::vec(any::<prop::sample::Index>(), 1..6)).prop_map(|(t, picks)| {
        let (f, n) = small_types()[t];
        let s = build(f, n).unwrap();
        let vs: Vec<Vector> = picks.iter().map(|i| s.vectors()[i.index(s.len())].clone()).collect();
        let p = RootSet::new(s.form().clone(), vs).unwrap();
        (s, p)
    })
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..100, 1i64..100).prop_map(|(n, d)| Rational::frac(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_is_idempotent((s, p) in system_and_subset()) {
        let c = closure(&p, DEFAULT_MAX_SIZE).unwrap();
        prop_assert!(p.is_subset_of(&c));
        prop_assert!(c.is_subset_of(&s));
        prop_assert!(is_root_system(&c).holds());
        let cc = closure(&c, DEFAULT_MAX_SIZE).unwrap();
        prop_assert_eq!(cc.vectors(), c.vectors());
    }

    #[test]
    fn reflections_are_involutions((s, _p) in system_and_subset(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let a = &s.vectors()[i.index(s.len())];
        let v = &s.vectors()[j.index(s.len())];
        let once = reflect(a, v, s.form()).unwrap();
        prop_assert!(s.contains(&once));
        prop_assert_eq!(&reflect(a, &once, s.form()).unwrap(), v);
        prop_assert_eq!(s.dot(&once, &once).unwrap(), s.dot(v, v).unwrap());
    }

    #[test]
    fn identify_ignores_scale(t in 0..canonical_types(8).len(), c in positive_rational()) {
        let (f, n) = canonical_types(8)[t];
        let s = build(f, n).unwrap();
        let id = identify(&s.rescaled(&c)).unwrap();
        prop_assert_eq!(id.types(), vec![(f, n)]);
    }

    #[test]
    fn components_partition_the_closure((_s, p) in system_and_subset()) {
        let c = closure(&p, DEFAULT_MAX_SIZE).unwrap();
        let comps = components(&c);
        prop_assert_eq!(comps.iter().map(RootSet::len).sum::<usize>(), c.len());
        let id = identify(&c).unwrap();
        prop_assert_eq!(id.components.len(), comps.len());
        prop_assert_eq!(id.total_roots, c.len());
    }
}

#[test]
fn round_trip_all_types_to_rank_8() {
    for (f, n) in canonical_types(8) {
        let s = build(f, n).unwrap();
        assert_eq!(identify(&s).unwrap().types(), vec![(f, n)], "{f}{n}");
        assert!(is_root_system(&s).holds(), "{f}{n}");
    }
}

#[test]
fn exceptional_counts() {
    for (f, n, roots) in [(Family::G, 2, 12), (Family::F, 4, 48), (Family::E, 6, 72), (Family::E, 7, 126), (Family::E, 8, 240)] {
        assert_eq!(build(f, n).unwrap().len(), roots, "{f}{n}");
    }
}

use std::collections::BTreeSet;

use clifford_roots::catalog::identify;
use clifford_roots::exact::{GramMatrix, Rational};
use clifford_roots::gram_engine::{
    canonical_form, classify_halfsign_q8, enumerate_p1_grams, enumerate_p1_grams_with_stats, filter_admissible,
    half_sign_root_set, prop34_bound, sign_root_set, CaseId,
};
use clifford_roots::rootsys::{closure, DEFAULT_MAX_SIZE};
use clifford_roots::verifier::{rank_bound_table, reference_grams, verify_prop_bounds, Status};

fn r(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn closure_names(g: &GramMatrix) -> String {
    let p = sign_root_set(g).unwrap();
    identify(&closure(&p, DEFAULT_MAX_SIZE).unwrap()).unwrap().to_string()
}

#[test]
fn two_vectors() {
    let sols = enumerate_p1_grams(2).unwrap();
    let mut closures: Vec<String> = sols.iter().map(closure_names).collect();
    closures.sort();
    assert_eq!(closures, ["A1 + A1", "A1 + A1", "A1 + A1", "A2", "B2", "G2"]);
    // every sign vector has norm 1, 1/2 or 1/3 and the all-plus one is longest
    for g in &sols {
        let p = sign_root_set(g).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.max_norm(), Some(&Rational::one()));
    }
}

#[test]
fn three_vectors_contain_the_reference_list() {
    let sols: BTreeSet<GramMatrix> = enumerate_p1_grams(3).unwrap().into_iter().collect();
    for (name, m) in reference_grams(3) {
        assert!(sols.contains(&canonical_form(&m)), "{name} missing");
    }
    assert_eq!(sols.len(), 4);
    let admissible = filter_admissible(&sols.into_iter().collect::<Vec<_>>(), 3).unwrap();
    let names: BTreeSet<String> = admissible.iter().map(closure_names).collect();
    assert_eq!(admissible.len(), 2);
    assert_eq!(names, BTreeSet::from(["A3".to_string(), "G2".to_string()]));
}

#[test]
fn four_vectors() {
    let (sols, stats) = enumerate_p1_grams_with_stats(4).unwrap();
    assert_eq!(sols.len(), 2);
    assert!(stats.quadratic > 0 && stats.psd >= stats.canonical_solutions as u64);
    let admissible = filter_admissible(&sols, 4).unwrap();
    assert_eq!(admissible, vec![GramMatrix::scalar(4, r(1, 4))]);
    assert_eq!(closure_names(&admissible[0]), "D4");
}

#[test]
fn five_vectors_are_impossible() {
    let (sols, stats) = enumerate_p1_grams_with_stats(5).unwrap();
    assert!(sols.is_empty());
    assert_eq!(stats.assignments, 3u64.pow(15));
}

#[test]
fn range_is_enforced() {
    assert!(enumerate_p1_grams(1).is_err());
    assert!(enumerate_p1_grams(6).is_err());
}

#[test]
fn canonical_form_is_invariant() {
    let m3 = &reference_grams(3)[2].1;
    let c = canonical_form(m3);
    let moved = m3.transformed(&[2, 0, 1], &[1, -1, -1]);
    assert_eq!(canonical_form(&moved), c);
    assert_eq!(canonical_form(&c), c);
}

#[test]
fn half_sign_eight() {
    let cls = classify_halfsign_q8().unwrap();
    assert_eq!(cls.canonical, GramMatrix::scalar(8, r(1, 8)));
    assert_eq!(cls.pairings, 105);
    assert_eq!(cls.signed_pairings, 840);
    assert_eq!(cls.orthogonality_rank, 28);
    assert!(!cls.eliminated.is_empty());
    let p = half_sign_root_set(&cls.gram, true).unwrap();
    assert_eq!(p.len(), 128);
}

#[test]
fn bounds() {
    for (case, alpha, q) in [
        (CaseId::P1, true, 3),
        (CaseId::P1, false, 4),
        (CaseId::P2, true, 7),
        (CaseId::P3, true, 6),
        (CaseId::P3, false, 8),
        (CaseId::P4, true, 6),
        (CaseId::P4, false, 8),
    ] {
        let f = prop34_bound(case, alpha).unwrap();
        assert!(f.feasible, "{case}");
        assert_eq!(f.q, q, "{case} alpha nonzero {alpha}");
        assert!(!f.solutions.is_empty(), "{case} has a witness");
    }
    for case in CaseId::ALL {
        assert_eq!(verify_prop_bounds(case).status, Status::Verified);
    }
}

#[test]
fn rank_table() {
    let t = rank_bound_table();
    let got: Vec<Vec<u32>> = t.classes.values().map(|s| s.iter().copied().collect()).collect();
    assert_eq!(got, vec![vec![3, 5, 7, 9], vec![2, 6, 10], vec![4, 12], vec![8, 16]]);
    assert!(t.reports.iter().all(|r| r.as_expected()));
}

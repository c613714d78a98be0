use clifford_roots::catalog::identify;
use clifford_roots::cliffweights::{build_weights, Shape};
use clifford_roots::exact::{GramMatrix, Rational};
use clifford_roots::rootsys::{closure, components, DEFAULT_MAX_SIZE};
use clifford_roots::verifier::{
    exclude_r14, h_roots, limit_case, rank_bound_table, verify_limit_case, verify_limit_case_with, Status,
};

const SHAPES: [Shape; 4] = [Shape::I, Shape::II, Shape::III, Shape::IV];

fn step_output<'a>(rep: &'a clifford_roots::verifier::Report, op: &str) -> &'a serde_json::Value {
    &rep.steps.iter().find(|s| s.op == op).unwrap_or_else(|| panic!("no step {op}")).output
}

#[test]
fn all_cases_verify() {
    let want = [("F", 4, [16, 32, 48]), ("E", 6, [32, 40, 72]), ("E", 7, [64, 62, 126]), ("E", 8, [128, 112, 240])];
    for (shape, (family, rank, counts)) in SHAPES.into_iter().zip(want) {
        let rep = verify_limit_case(shape);
        assert_eq!(rep.status, Status::Verified, "{shape}: {:?}", rep.failed_steps().collect::<Vec<_>>());
        let id = &rep.artifacts["identification"]["components"];
        assert_eq!(id.as_array().unwrap().len(), 1);
        assert_eq!(id[0]["family"], family);
        assert_eq!(id[0]["rank"], rank);
        assert_eq!(step_output(&rep, "identify_g")["counts"], serde_json::json!(counts));
    }
}

#[test]
fn case_one_is_annotated() {
    let rep = verify_limit_case(Shape::I);
    assert!(rep.annotations.iter().any(|a| a.contains("h-completion assumed")));
    // reflections only produce the short roots of B4
    assert_eq!(step_output(&rep, "new_roots")["count"], 8);
}

#[test]
fn case_three_new_roots_split() {
    let cfg = limit_case(Shape::III).config;
    let w = build_weights(&cfg).unwrap();
    let new = closure(&w, DEFAULT_MAX_SIZE).unwrap().difference(&w).unwrap();
    let mut sizes: Vec<usize> = components(&new).iter().map(|c| c.len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![2, 60]);
    assert_eq!(identify(&h_roots(Shape::III, &cfg).unwrap()).unwrap().names(), vec!["A1", "D6"]);
}

#[test]
fn rescaled_configs_still_verify() {
    for shape in SHAPES {
        let mut cfg = limit_case(shape).config;
        cfg.basis_gram = cfg.basis_gram.scaled(&Rational::frac(5, 3));
        let rep = verify_limit_case_with(shape, Some(cfg));
        assert_eq!(rep.status, Status::Verified, "{shape}");
        assert!(rep.annotations.iter().any(|a| a.contains("overridden")));
    }
}

#[test]
fn broken_configs_are_refuted() {
    let mut cfg = limit_case(Shape::II).config;
    let mut diag: Vec<Rational> = (0..6).map(|i| cfg.basis_gram.get(i, i).clone()).collect();
    diag[2] = Rational::frac(1, 5);
    cfg.basis_gram = GramMatrix::diagonal(diag);
    assert_eq!(verify_limit_case_with(Shape::II, Some(cfg)).status, Status::Refuted);
}

#[test]
fn reports_are_deterministic() {
    let a = serde_json::to_string(&verify_limit_case(Shape::II).to_json()).unwrap();
    let b = serde_json::to_string(&verify_limit_case(Shape::II).to_json()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn rank_fourteen() {
    let rep = exclude_r14();
    assert_eq!(rep.status, Status::Infeasible);
    assert_eq!(step_output(&rep, "solve_a")["offsets"], serde_json::json!(["7/8", "3/8", "-1/8"]));
    assert_eq!(step_output(&rep, "solve_a")["candidates"], serde_json::json!(["-3/8"]));
    let psd = step_output(&rep, "is_psd");
    assert_eq!(psd["psd"], false);
    assert_eq!(psd["gram"], serde_json::json!([["1/8", "-3/8"], ["-3/8", "1/8"]]));
    assert_eq!(psd["norm_a1_plus_a2"], "-1/2");
    assert_eq!(step_output(&rep, "closure")["identified"], serde_json::json!(["D8"]));
}

#[test]
fn table_justification() {
    let t = rank_bound_table();
    assert_eq!(t.excluded.get(&Shape::II).map(|s| s.iter().copied().collect::<Vec<_>>()), Some(vec![14]));
    for ids in t.justification.values() {
        for id in ids {
            assert!(t.reports.iter().any(|r| &r.claim == id && r.as_expected()), "{id}");
        }
    }
}

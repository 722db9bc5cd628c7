use qzeta::identities::{list_identities, lookup, run_suite, select, verify, Params, Summary, Verdict};
use qzeta::qcore::EvalParams;
use qzeta::series::eval_zeta;
use qzeta::{BackendConfig, Composition, Error};

fn comp(parts: &[u32]) -> Composition {
    Composition::new(parts.to_vec())
}

#[test]
fn duality_example() {
    let p = Params {
        s: Some(comp(&[3])),
        ..Params::default()
    };
    let r = verify("duality", &p, &BackendConfig::exact(40)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{r}");
}

#[test]
fn sum_formula_example() {
    let p = Params {
        k: Some(3),
        n: Some(2),
        ..Params::default()
    };
    assert!(verify("sum_formula", &p, &BackendConfig::exact(30)).unwrap().passed());
}

#[test]
fn sum_formula_rejects_depth_above_weight() {
    let p = Params {
        k: Some(2),
        n: Some(3),
        ..Params::default()
    };
    assert!(matches!(verify("sum_formula", &p, &BackendConfig::exact(10)), Err(Error::Parameter(_))));
}

#[test]
fn difference_equation_example() {
    let p = Params {
        blocks: Some(vec![(2, 1), (1, 2)]),
        theta: Some(0.3),
        ..Params::default()
    };
    let r = verify("qdiff", &p, &BackendConfig::float(0.5).with_tol(1e-8)).unwrap();
    assert!(r.passed(), "{r}");
    assert!(r.residual_norm < 1e-8);
}

#[test]
fn empty_filter_selects_nothing() {
    assert!(select("").unwrap().is_empty());
    assert!(run_suite("", &BackendConfig::exact(10)).unwrap().is_empty());
}

#[test]
fn prefix_filter() {
    let ids = select("qdiff*").unwrap();
    assert!(ids.contains(&"qdiff"));
    assert!(ids.contains(&"qdiff_xy"));
    assert!(ids.iter().all(|id| id.starts_with("qdiff")));
}

#[test]
fn catalog_contents() {
    let ids: Vec<&str> = list_identities().iter().map(|e| e.id).collect();
    assert!(ids.len() >= 20);
    for id in ["drin", "qdiff_head", "qdiff_shift", "qdiff_tail", "duality", "sum_formula"] {
        assert!(ids.contains(&id), "{id} missing");
    }
    assert!(list_identities().iter().all(|e| !e.statement.is_empty()));
}

#[test]
fn cyclic_depth_one() {
    // s = (2): ζ[3] = ζ[2,1]
    let p = EvalParams::from(BackendConfig::exact(30));
    let a = eval_zeta(&comp(&[3]), &p).unwrap();
    let b = eval_zeta(&comp(&[2, 1]), &p).unwrap();
    assert_eq!(a.to_string(), b.to_string());
    let params = Params {
        s: Some(comp(&[2])),
        ..Params::default()
    };
    assert!(verify("cyclic", &params, &BackendConfig::float(0.5)).unwrap().passed());
}

#[test]
fn unknown_identity() {
    assert!(matches!(lookup("nope"), Err(Error::UnknownIdentity(_))));
    assert!(matches!(verify("nope", &Params::default(), &BackendConfig::exact(5)), Err(Error::UnknownIdentity(_))));
    assert!(select("duality,nope").is_err());
}

#[test]
fn missing_parameter_is_an_error() {
    assert!(verify("duality", &Params::default(), &BackendConfig::exact(10)).is_err());
}

#[test]
fn small_suite_summary() {
    let reports = run_suite("duality,sum_formula", &BackendConfig::exact(20)).unwrap();
    let summary = Summary::of(&reports);
    assert_eq!(summary.failed, 0);
    assert_eq!(summary.passed + summary.warned, reports.len());
    assert!(reports.iter().position(|r| r.id == "sum_formula") > reports.iter().position(|r| r.id == "duality"));
}

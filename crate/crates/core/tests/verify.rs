use std::collections::HashSet;

use hzk_core::error::Error;
use hzk_core::verify::*;

/// Required coverage: each entry names a closed form or invariant and the
/// identity that exercises it.
const MANIFEST: &[(&str, &str)] = &[
    ("prim_zeta_moment", "zeta-moment-primitive"),
    ("prim_zeta_bernoulli_weight", "zeta-bernoulli-weight-primitive"),
    ("prim_bernoulli_moment", "bernoulli-moment-primitive"),
    ("prim_zeta_selfproduct_odd", "zeta-selfproduct-primitive"),
    ("prim_zeta_selfproduct_centered", "zeta-selfproduct-centered-primitive"),
    ("self-product dual forms", "zeta-selfproduct-forms"),
    ("prim_exp_zeta", "exp-zeta-primitive"),
    ("prim_exp_bernoulli", "exp-bernoulli-primitive"),
    ("prim_polygamma_moment", "polygamma-moment-primitive"),
    ("prim_digamma_moment", "digamma-moment-primitive"),
    ("prim_negapolygamma_moment", "negapoly-moment-primitive"),
    ("A_m moment form", "ak-moment-equivalence"),
    ("prim_loggamma_moment", "loggamma-moment-primitive"),
    ("log-gamma specializations", "loggamma-moment-specializations"),
    ("prim_logsine_moment", "logsine-moment-primitive"),
    ("log-sine moment derivative", "logsine-moment-derivative"),
    ("prim_exp_logsine", "exp-logsine-primitive"),
    ("prim_exp_cot", "exp-cot-primitive"),
    ("exponential cotangent by parts", "exp-cot-by-parts"),
    ("def_zeta_moment", "zeta-moment-definite"),
    ("def_zeta_moment via primitive", "zeta-moment-definite-ftc"),
    ("def_zeta_moment_unit", "zeta-moment-unit"),
    ("def_logsine_moment", "logsine-moment-definite"),
    ("def_logsine_moment_half", "logsine-half-moment-definite"),
    ("half log-sine printed values", "logsine-half-moment-values"),
    ("log-gamma printed values", "loggamma-definite-values"),
    ("def_negapoly_product", "negapoly-product"),
    ("lnΓ squared", "lngamma-squared"),
    ("parity vanishing", "negapoly-product-parity"),
    ("def_zeta_product", "zeta-product-definite"),
    ("A_k shift recurrence", "ak-shift-recurrence"),
    ("A_k endpoints", "ak-endpoints"),
    ("A_k zero mean", "ak-zero-mean"),
    ("A_k derivative ladder", "ak-derivative-ladder"),
    ("A_k half argument", "ak-half-argument"),
    ("A_2 special values", "a2-special-values"),
    ("A_k Fourier", "ak-fourier-cross-path"),
    ("negapolygamma alternate form", "negapoly-alt-form"),
    ("negapolygamma zero mean", "negapoly-zero-mean"),
    ("negapolygamma ladder", "negapoly-ladder"),
    ("negapolygamma Fourier", "negapoly-fourier-cross-path"),
    ("negapolygamma shift", "negapoly-shift"),
    ("negapolygamma endpoints", "negapoly-endpoints"),
    ("Gosper offset", "gosper-glaisher-cross-path"),
    ("shifted Bernoulli sum", "shifted-bernoulli-sum"),
    ("Bernoulli shift", "bernoulli-shift"),
    ("Bernoulli reflection", "bernoulli-reflection"),
    ("Bernoulli addition", "bernoulli-addition"),
    ("Bernoulli zero mean", "bernoulli-zero-mean"),
    ("Bernoulli derivative", "bernoulli-derivative"),
    ("zeta shift", "zeta-shift-recurrence"),
    ("zeta half argument", "zeta-half-argument"),
    ("zeta Bernoulli specialization", "zeta-bernoulli-specialization"),
    ("digamma limit", "digamma-limit"),
    ("ζ'(-1) functional form", "zeta-prime-minus-one-functional"),
    ("ζ'(0)", "zeta-prime-zero"),
];

#[test]
fn registry_covers_manifest() {
    let ids: HashSet<&str> = list_identities().iter().map(|i| i.id).collect();
    for (what, id) in MANIFEST {
        assert!(ids.contains(id), "{what} has no registered identity '{id}'");
    }
    assert!(ids.len() >= 30);
    assert_eq!(ids.len(), registry().len(), "identity ids must be unique");
}

#[test]
fn registry_entries_are_well_formed() {
    for ident in registry() {
        assert!(!ident.paper_anchor.is_empty(), "{}", ident.id);
        assert!(ident.tol > 0.0, "{}", ident.id);
        assert!(!ident.parameter_grid(1).is_empty(), "{} has an empty grid", ident.id);
        if ident.check_kind == CheckKind::PrimitiveDifference {
            assert!(ident.parameter_grid(1).len() >= 20, "{} needs 20 draws", ident.id);
        }
    }
}

#[test]
fn listed_ids_have_expected_kinds() {
    let find = |id: &str| list_identities().into_iter().find(|i| i.id == id).unwrap();
    assert_eq!(find("ak-shift-recurrence").check_kind, CheckKind::Invariant);
    assert!(find("ak-shift-recurrence").paper_anchor.contains("A_k(q) + k q^{k-1} ln q"));
    assert_eq!(find("exp-zeta-primitive").check_kind, CheckKind::PrimitiveDifference);
    assert_eq!(find("negapoly-product").check_kind, CheckKind::DefiniteValue);
}

#[test]
fn every_suite_is_nonempty_and_unknown_is_rejected() {
    for name in Suite::NAMES {
        let s: Suite = name.parse().unwrap();
        assert!(registry().iter().any(|i| i.in_suite(s)), "{name}");
    }
    assert!(matches!(run_suite("bogus", 0, None), Err(Error::Registry(_))));
    assert!(run_suite("core", 0, Some(-1.0)).is_err());
}

#[test]
fn full_suite_passes() {
    let report = run_suite("all", 7, None).unwrap();
    for c in report.failures() {
        eprintln!("FAIL {} #{} {:?}: lhs={:e} rhs={:e} res={:e} {:?}", c.id, c.grid_index, c.point, c.lhs, c.rhs, c.abs_residual, c.error);
    }
    assert!(report.all_passed(), "{} of {} failed", report.summary.failed, report.summary.total);
    let mut ids: Vec<_> = report.checks.iter().map(|c| (c.id, c.grid_index)).collect();
    let sorted = {
        let mut s = ids.clone();
        s.sort();
        s
    };
    assert_eq!(ids, sorted);
    ids.dedup();
    assert_eq!(ids.len(), report.checks.len());
}

#[test]
fn reports_are_deterministic() {
    let mut a = run_suite("constants", 3, None).unwrap();
    let mut b = run_suite("constants", 3, None).unwrap();
    a.summary.wall_time_s = 0.0;
    b.summary.wall_time_s = 0.0;
    assert_eq!(a.to_json(), b.to_json());
    let c = run_suite("primitives", 3, None).unwrap();
    let d = run_suite("primitives", 4, None).unwrap();
    assert_ne!(c.checks[0].point, d.checks[0].point);
}

#[test]
fn definite_suite_includes_paper_values() {
    let report = run_suite("definite", 42, None).unwrap();
    let ids: HashSet<&str> = report.checks.iter().map(|c| c.id).collect();
    for id in ["logsine-moment-definite", "logsine-half-moment-values", "loggamma-definite-values", "negapoly-product", "lngamma-squared"] {
        assert!(ids.contains(id), "{id}");
    }
    let k22 = report.checks.iter().find(|c| c.id == "negapoly-product" && c.point.get("k") == 2.0 && c.point.get("k2") == 2.0);
    assert!(k22.is_some_and(|c| c.pass));
    let consts = run_suite("constants", 0, None).unwrap();
    assert!(consts.checks.iter().any(|c| c.id == "zeta-prime-minus-one-functional" && c.pass));
}

#[test]
fn failures_are_isolated() {
    let tight = run_suite("constants", 0, Some(1e-300)).unwrap();
    assert_eq!(tight.summary.total, run_suite("constants", 0, None).unwrap().summary.total);
    assert!(tight.summary.failed > 0);
    assert!(tight.failures().all(|c| c.tol == 1e-300));
}

#[test]
fn json_shape() {
    let r = run_suite("constants", 0, None).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    for k in ["suite", "seed", "tolerances", "checks", "summary"] {
        assert!(keys.contains(&k), "{k}");
    }
    assert_eq!(v["summary"]["total"], v["checks"].as_array().unwrap().len());
}

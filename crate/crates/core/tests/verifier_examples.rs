use isocrit_core::isoperimetry::SearchOptions;
use isocrit_core::verifiers::{replay, verify_lemma_nz, verify_literal, Certificate, Conclusion, VerifierReport};
use isocrit_core::Group;

fn run(id: &str, g: &str, s: &str, t: Option<&str>) -> VerifierReport {
    let r = verify_literal(id, Some(g), s, t, &SearchOptions::default()).unwrap();
    // every verdict is reproducible and every pass certificate replays on its own
    let again = replay(&r, &SearchOptions::default()).unwrap();
    assert_eq!(again.conclusion, r.conclusion, "{id} replay");
    if r.conclusion == Conclusion::Pass {
        let group = Group::parse(g).unwrap();
        assert!(r.certificate.as_ref().unwrap().replay(&group).unwrap(), "{id} certificate");
    }
    r
}

fn conclusion(id: &str, g: &str, s: &str, t: Option<&str>) -> Conclusion {
    run(id, g, s, t).conclusion
}

#[test]
fn cauchy_davenport() {
    assert_eq!(conclusion("thm:cauchy-davenport", "Z7", "0,1,3", Some("2,5")), Conclusion::Pass);
    assert_eq!(conclusion("thm:cauchy-davenport", "Z8", "0,1", Some("0,4")), Conclusion::Skipped);
}

#[test]
fn chowla() {
    assert_eq!(conclusion("cor:chowla", "Z7", "0,1,3", None), Conclusion::Pass);
    assert_eq!(conclusion("cor:chowla", "Z12", "0,3", None), Conclusion::Skipped);
    assert_eq!(conclusion("cor:chowla", "Z5", "0,1,2,3,4", None), Conclusion::Pass);
}

#[test]
fn kemperman_prime_order() {
    let r = run("thm:kemperman", "Z13", "0,1,2", Some("5,6"));
    assert_eq!(r.conclusion, Conclusion::Pass);
    assert_eq!(conclusion("thm:kemperman", "Z13", "0,2,4", Some("1,3")), Conclusion::Pass);
}

#[test]
fn hamidoune_rodseth() {
    assert_eq!(conclusion("thm:hr", "Z13", "0,1,2,4", Some("0,1,3")), Conclusion::Pass);
    assert_eq!(conclusion("thm:hr", "Z13", "0,1,2,3", Some("0,1,2")), Conclusion::Skipped);
}

#[test]
fn kempermannis() {
    let r = run("thm:kempermannis", "Z7", "0,1,2", None);
    assert_eq!(r.conclusion, Conclusion::Pass);
}

#[test]
fn two_atoms() {
    assert_eq!(conclusion("thm:main", "Z13", "0,1,3", None), Conclusion::Pass);
    assert_eq!(conclusion("cor:cholaatom", "Z13", "0,1,3", None), Conclusion::Pass);
}

#[test]
fn transfer_exceptional_coset() {
    let r = run("lem:transfer", "Z12", "0,1,3,4", Some("0,3,6,9"));
    assert_eq!(r.conclusion, Conclusion::Pass);
    assert!(matches!(r.certificate, Some(Certificate::Coset { .. })));
}

#[test]
fn transfer_progression_branch() {
    let r = run("lem:transfer", "Z13", "0,1,3,4", Some("0,1,2"));
    assert_eq!(r.conclusion, Conclusion::Pass);
    assert!(matches!(r.certificate, Some(Certificate::Progressions { .. })));
}

#[test]
fn integer_lemma() {
    let r = verify_lemma_nz(&[0, 1, 2], &[0, 1, 2, 3]).unwrap();
    assert_eq!(r.conclusion, Conclusion::Skipped);
    let r = verify_lemma_nz(&[0, 1, 3], &[0, 1, 2, 3]).unwrap();
    assert_eq!(r.conclusion, Conclusion::Pass);
    assert!(verify_lemma_nz(&[0, 1], &[0, 1, 2, 3]).is_err());
    let r = verify_literal("lem:NZ", None, "0,1,3", Some("0,1,2,3"), &SearchOptions::default()).unwrap();
    assert_eq!(r.instance.group, "Z");
    assert_eq!(replay(&r, &SearchOptions::default()).unwrap().conclusion, Conclusion::Pass);
}

#[test]
fn small_atom_lemmas() {
    for id in ["lem:4at", "lem:T3"] {
        let c = conclusion(id, "Z25", "0,1,3", None);
        assert!(matches!(c, Conclusion::Pass | Conclusion::Skipped), "{id}: {c:?}");
    }
    let c = conclusion("thm:kempermannis+1", "Z25", "0,1,2,4", None);
    assert!(matches!(c, Conclusion::Pass | Conclusion::Skipped));
    // gcd(|G|, 6) = 1 fails
    assert_eq!(conclusion("lem:T3", "Z12", "0,1,3", None), Conclusion::Skipped);
}

#[test]
fn unknown_statement_is_an_error() {
    assert!(verify_literal("thm:nope", Some("Z7"), "0,1", None, &SearchOptions::default()).is_err());
}

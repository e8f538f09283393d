mod common;

fn check(r: Result<u32, String>) {
    let cases = r.unwrap_or_else(|e| panic!("{e}"));
    assert!(cases >= 200);
}

#[test]
fn wedge_anticommutes() {
    check(common::wedge_anticommutativity());
}

#[test]
fn derivation_obeys_leibniz() {
    check(common::leibniz_rule());
}

#[test]
fn pullback_is_functorial() {
    check(common::pullback_functoriality());
}

#[test]
fn pairing_is_ad_invariant() {
    check(common::pairing_ad_invariance());
}

#[test]
fn parakahler_round_trips() {
    check(common::parakahler_round_trip());
}

#[test]
fn restriction_degree_matches_du_count() {
    check(common::restriction_degree_law());
}

#[test]
fn tau_conjugation() {
    check(common::conjugation());
}

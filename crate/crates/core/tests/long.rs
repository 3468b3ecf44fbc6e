//! Slow exact checks; run with `--features long-tests`.
#![cfg(feature = "long-tests")]

use terada::homology::{jn_decomposed_factored, jn_monomial_route, jn_pairwise_route, jn_report};

#[test]
fn rank_six_routes_and_closed_form() {
    let monomial = jn_monomial_route(6).unwrap();
    assert!(jn_pairwise_route(6).unwrap().equals(&monomial));
    assert!(jn_decomposed_factored(6).unwrap().equals(&monomial));
    assert!(jn_report(6).unwrap().equal);
}

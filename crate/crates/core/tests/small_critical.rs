//! A critical set smaller than the chain sets, found by the CLI's random
//! exploration (seed 0, starting size 50).

use specker600::build_catalog;
use specker600::coloring::{is_critical, parity_certificate, Solver};
use specker600::RaySet;

const SET: [u8; 26] = [1, 3, 8, 10, 16, 17, 20, 24, 26, 29, 30, 31, 32, 36, 37, 38, 39, 40, 42, 46, 49, 50, 51, 52, 53, 55];

#[test]
fn twenty_six_ray_critical_set() {
    let cat = build_catalog().unwrap();
    let sys = cat.system();
    let set: RaySet = SET.iter().collect();
    let cert = parity_certificate(sys, set).expect("parity certificate");
    assert_eq!(cert.bases.len(), 13);
    assert!(cert.occurrences.values().all(|&k| k == 2));
    assert!(is_critical(&Solver::default(), sys, set).unwrap().is_critical());
}

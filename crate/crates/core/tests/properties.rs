#[path = "support/props.rs"]
mod props;

use props::random_runner;

#[test]
fn field_axioms() {
    props::field_axioms(&mut random_runner()).unwrap();
}

#[test]
fn plucker_quadric_and_incidence() {
    props::plucker_quadric_and_incidence(&mut random_runner()).unwrap();
}

#[test]
fn euler_identity() {
    props::euler_identity(&mut random_runner()).unwrap();
}

#[test]
fn contact_forms_on_diagonal() {
    props::contact_forms_on_diagonal(&mut random_runner()).unwrap();
}

#[test]
fn resultant_vanishes_iff_common_zero() {
    props::resultant_vanishes_iff_common_zero(&mut random_runner()).unwrap();
}

#[test]
fn series_solution_is_exact() {
    props::series_solution_is_exact(&mut random_runner()).unwrap();
}

#[test]
fn scan_is_deterministic_under_parallelism() {
    props::scan_is_deterministic_under_parallelism().unwrap();
}

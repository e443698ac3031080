//! Every example in `examples/` runs to completion.

#[path = "../examples/rm_inequality.rs"]
mod rm_inequality;
#[path = "../examples/oscillation_counterexample.rs"]
mod oscillation_counterexample;
#[path = "../examples/rectangle_maximal.rs"]
mod rectangle_maximal;
#[path = "../examples/fejer_identity.rs"]
mod fejer_identity;
#[path = "../examples/decay_estimate.rs"]
mod decay_estimate;
#[path = "../examples/periodized_bound.rs"]
mod periodized_bound;
#[path = "../examples/growth_table.rs"]
mod growth_table;
#[path = "../examples/littlewood_paley.rs"]
mod littlewood_paley;

#[test]
fn rm_inequality_runs() {
    rm_inequality::run().expect("rm_inequality example");
}

#[test]
fn oscillation_counterexample_runs() {
    oscillation_counterexample::run().expect("oscillation_counterexample example");
}

#[test]
fn rectangle_maximal_runs() {
    rectangle_maximal::run().expect("rectangle_maximal example");
}

#[test]
fn fejer_identity_runs() {
    fejer_identity::run().expect("fejer_identity example");
}

#[test]
fn decay_estimate_runs() {
    decay_estimate::run().expect("decay_estimate example");
}

#[test]
fn periodized_bound_runs() {
    periodized_bound::run().expect("periodized_bound example");
}

#[test]
fn growth_table_runs() {
    growth_table::run().expect("growth_table example");
}

#[test]
fn littlewood_paley_runs() {
    littlewood_paley::run().expect("littlewood_paley example");
}

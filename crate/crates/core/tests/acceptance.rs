use sendov_core::suite::{self, CheckOutcome};

fn report(out: CheckOutcome) {
    println!(
        "[{}] criterion {:>2}: {} | value = {:.3e}, tolerance = {:.1e}, {} ms (limit {} ms) | {}",
        if out.pass { "PASS" } else { "FAIL" },
        out.id,
        out.name,
        out.value,
        out.tolerance,
        out.duration_ms,
        out.time_limit_ms,
        out.detail
    );
    assert!(out.pass, "criterion {} failed: {}", out.id, out.detail);
}

#[test]
fn criterion_01_critical_radius_law() {
    report(suite::critical_radius_law());
}

#[test]
fn criterion_02_inextensibility_certificates() {
    report(suite::inextensibility_certificates());
}

#[test]
fn criterion_03_nonsingularity_of_a() {
    report(suite::nonsingularity_of_a());
}

#[test]
fn criterion_04_second_order_constants() {
    report(suite::second_order_constants());
}

#[test]
fn criterion_05_lemma16_family() {
    report(suite::lemma16_family_check());
}

#[test]
fn criterion_06_perturbation_bounds() {
    report(suite::perturbation_bounds());
}

#[test]
fn criterion_07_differentiator_identity() {
    report(suite::differentiator_identity());
}

#[test]
fn criterion_08_operator_sendov() {
    report(suite::operator_sendov());
}

#[test]
fn criterion_09_converse_bound() {
    report(suite::converse_bound());
}

#[test]
fn criterion_10_interlacing() {
    report(suite::interlacing());
}

#[test]
fn criterion_11_majorization() {
    report(suite::majorization_check());
}

#[test]
fn criterion_12_duality_exclusivity() {
    report(suite::duality_exclusivity());
}

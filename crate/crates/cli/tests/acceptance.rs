//! One pass/fail line per acceptance criterion, slow cases included.

use vhess::verify::{criteria, run, render_table, VerifyOptions};

#[test]
fn acceptance_criteria() {
    let results = run(&VerifyOptions {
        include_slow: true,
        filter: None,
        seed: 0,
    });
    assert_eq!(results.len(), criteria().len(), "every criterion ran");
    for c in &results {
        println!("criterion {}: {} ({})", c.number, if c.passed() { "pass" } else { "FAIL" }, c.title);
    }
    let failed: Vec<u8> = results.iter().filter(|c| !c.passed()).map(|c| c.number).collect();
    assert!(failed.is_empty(), "failed criteria {failed:?}\n{}", render_table(&results));
}

#[test]
fn criteria_pass_under_other_seeds() {
    for seed in [1, 0xdead_beef] {
        let results = run(&VerifyOptions {
            include_slow: false,
            filter: None,
            seed,
        });
        for c in &results {
            assert!(c.passed(), "seed {seed}, criterion {}\n{}", c.number, render_table(&results));
        }
    }
}

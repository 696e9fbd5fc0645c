use recovery_core::acceptance::{run_all, AcceptanceOptions, CRITERIA};

/// `ACCEPTANCE_FILTER=1,5,lattice` restricts the run to the listed criteria or modules.
fn filter() -> Option<Vec<u8>> {
    std::env::var("ACCEPTANCE_FILTER")
        .ok()
        .map(|s| recovery_core::acceptance::parse_filter(&s).expect("ACCEPTANCE_FILTER"))
}

fn seed() -> u64 {
    std::env::var("ACCEPTANCE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

#[test]
fn acceptance_criteria() {
    let f = filter();
    let opts = AcceptanceOptions { seed: seed(), corrupt: false };
    let results = run_all(f.as_deref(), &opts);
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{} of {} criteria passed", results.len() - failed.len(), results.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn corrupted_inputs_fail_every_criterion() {
    let f = filter();
    let opts = AcceptanceOptions { seed: seed(), corrupt: true };
    let results = run_all(f.as_deref(), &opts);
    let passed: Vec<u8> = results.iter().filter(|r| r.passed).map(|r| r.id).collect();
    assert!(passed.is_empty(), "criteria passing on corrupted input: {passed:?}");
    if f.is_none() {
        assert_eq!(results.len(), CRITERIA.len());
    }
}

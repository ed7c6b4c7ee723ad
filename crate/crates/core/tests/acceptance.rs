use normattain::acceptance::{self, DEFAULT_SEED};

#[test]
fn acceptance_criteria() {
    let report = acceptance::run_all(DEFAULT_SEED);
    println!();
    for c in &report.criteria {
        println!("{}", c.summary_line());
        if !c.ok() {
            println!("    detail: {}", c.detail);
        }
    }
    let failed: Vec<u8> = report.criteria.iter().filter(|c| !c.ok()).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

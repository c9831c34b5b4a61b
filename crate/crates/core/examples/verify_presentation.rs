// Check the relations among X_0, ..., X_{2n} for n = 4.

use qcluster::Sl2Instance;

pub fn run_example() -> qcluster::Result<()> {
    let inst = Sl2Instance::build(4)?;
    let report = inst.verify_presentation()?;
    for c in &report.checks {
        println!(
            "X_{} X_{}: {:?} expected {} computed {} {}",
            c.l1,
            c.l2,
            c.kind,
            c.expected,
            c.computed,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    assert!(report.all_pass());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("presentation example failed");
}

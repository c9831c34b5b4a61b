// Mutate the n = 2 seed along 1, 2, 1 and watch X_0 appear.

use qcluster::Sl2Instance;

pub fn run_example() -> qcluster::Result<()> {
    let inst = Sl2Instance::build(2)?;
    let mut seed = inst.initial_seed().clone();
    for k in [0, 1, 0] {
        seed = seed.mutate(k)?;
        let cluster: Vec<String> = seed.vars().iter().map(|v| v.pretty("Y")).collect();
        println!("after mu_{}: ({})", k + 1, cluster.join(", "));
    }
    assert_eq!(&seed.vars()[0], inst.generator(0)?);
    assert!(seed.quasi_commutation_violations()?.is_empty());

    // mutation is an involution
    let back = seed.mutate(0)?.mutate(1)?.mutate(0)?;
    assert_eq!(back.vars(), inst.initial_seed().vars());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("mutation example failed");
}

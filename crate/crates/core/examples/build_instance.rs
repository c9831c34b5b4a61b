// Build the seed for n = 3 and print its matrices and generators.

use qcluster::Sl2Instance;

pub fn run_example() -> qcluster::Result<()> {
    let inst = Sl2Instance::build(3)?;
    println!("Lambda_3 = {:?}", inst.form().rows());
    println!("B_3 = {:?}", inst.pair().exchange_matrix().entries());
    println!("d = {:?}", inst.pair().d());
    assert!(inst.pair().d().iter().all(|&d| d == 1));
    for l in inst.labels() {
        println!("X_{l} = {}", inst.generator(l)?.pretty("Y"));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("build example failed");
}

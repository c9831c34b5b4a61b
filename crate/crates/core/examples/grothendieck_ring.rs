// Normal forms in Rep_{t,n} and the map to the quantum torus.

use qcluster::grothendieck::{check_homomorphism, check_independence, iota, reduce, GrothElement};
use qcluster::{HalfPowerLaurent, Sl2Instance};

pub fn run_example() -> qcluster::Result<()> {
    let n = 2;
    let w4 = GrothElement::generator(n, 4)?;
    let w2 = GrothElement::generator(n, 2)?;
    let w0 = GrothElement::generator(n, 0)?;
    println!("[W_{{1,4}}][W_{{1,2}}] = {}", w4.mul(&w2)?);
    println!("[W_{{1,4}}][W_{{1,0}}] = {}", w4.mul(&w0)?);
    println!(
        "reduce(4, 2, 0) = {}",
        reduce(n, &[4, 2, 0], HalfPowerLaurent::one())?
    );

    let inst = Sl2Instance::build(n)?;
    println!("iota(4, 2) = {}", iota(&inst, &w4.mul(&w2)?)?.pretty("Y"));

    let hom = check_homomorphism(&inst, 100, 4, 42)?;
    println!(
        "homomorphism: {} cases, {} failures",
        hom.cases, hom.failures
    );
    let indep = check_independence(&inst, 3)?;
    println!("independence: {} words, rank {}", indep.words, indep.rank);
    assert!(hom.pass() && indep.independent);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("Grothendieck example failed");
}

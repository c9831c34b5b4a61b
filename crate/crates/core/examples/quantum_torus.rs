// Products and exact right division in a rank-2 quantum torus.

use std::sync::Arc;

use qcluster::torus::{int_coeff, monomial};
use qcluster::{Error, SkewForm, TorusElement};

pub fn run_example() -> qcluster::Result<()> {
    let form = Arc::new(SkewForm::new(vec![vec![0, 1], vec![-1, 0]])?);
    let y1 = TorusElement::generator(&form, 0);
    let y2 = TorusElement::generator(&form, 1);

    // Y_1 Y_2 = q Y_2 Y_1
    let twist = TorusElement::quasi_commutation_exponent(&y1, &y2)?;
    assert_eq!(twist, Some(2));
    println!("Y_1 Y_2 = q Y_2 Y_1");

    let a = &(&y1 + &y2) * &(&y1 - &y2);
    println!("(Y_1 + Y_2)(Y_1 - Y_2) = {}", a.pretty("Y"));

    let quotient = a.exact_right_divide(&(&y1 - &y2))?;
    assert_eq!(quotient, &y1 + &y2);
    println!("divided back: {}", quotient.pretty("Y"));

    let one_plus = &TorusElement::one(&form) + &monomial(&form, &[1, 0], int_coeff(1));
    assert_eq!(y2.exact_right_divide(&one_plus), Err(Error::NotDivisible));
    println!("Y_2 / (1 + Y_1): not a Laurent polynomial");

    println!("at q = 1: {:?}", a.specialize_q1());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("torus example failed");
}

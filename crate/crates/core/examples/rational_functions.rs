// The field Z2(t) of rational functions over GF(2): canonical forms,
// parsing, and the even/odd split `p = P(t^2) + Q(t^2) t`.

use splitocto::{Poly2, RatFunc2};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = RatFunc2::parse("(t^3+t)/(t^2+1)")?;
    println!("(t^3+t)/(t^2+1) reduces to {x}");
    assert_eq!(x, RatFunc2::t());

    let a = RatFunc2::parse("1/(t+1)")?;
    let b = RatFunc2::parse("t^3 + 1/t")?;
    println!("a = {a}, b = {b}");
    println!("a + b = {}", a.try_add(&b)?);
    println!("a * b = {}", a.try_mul(&b)?);
    println!("b^-1  = {}", b.try_inv()?);
    println!("a^2   = {}", a.square());

    let p: Poly2 = RatFunc2::parse("t^5+t^4+t+1")?.numerator().clone();
    let (even, odd) = p.even_odd_split();
    println!("{p} = P(t^2) + Q(t^2) t with P = {even}, Q = {odd}");
    assert_eq!(Poly2::from_even_odd(&even, &odd), p);

    // t is not a square in Z2(t): squares only have even exponents
    let sq = RatFunc2::parse("t^2+t+1")?.square();
    println!("(t^2+t+1)^2 = {sq}");

    match RatFunc2::parse("1/(t+t)") {
        Err(e) => println!("1/(t+t): {e}"),
        Ok(v) => return Err(format!("expected a domain error, got {v}").into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("rational function example failed");
}

// Additive maps on Z2(t) satisfying f(x) + x^2 f(x^-1) = 0 that are not of
// the form x -> x q.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use splitocto::{PathoMap, RatFunc2};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let map = PathoMap::new(RatFunc2::parse("1")?, RatFunc2::parse("t^2")?);
    let t = RatFunc2::t();
    let f1 = map.eval(&RatFunc2::one())?;
    let ft = map.eval(&t)?;
    println!("f(1) = {f1}, f(t) = {ft}, t f(1) = {}", t.try_mul(&f1)?);
    println!("standard solution: {}", map.is_standard()?);

    for lit in ["t^3", "1/t", "(t^2+1)/(t^3+t+1)"] {
        let x = RatFunc2::parse(lit)?;
        println!("f({x}) = {}", map.eval(&x)?);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let x = RatFunc2::random_nonzero(&mut rng, 8);
        let y = RatFunc2::random(&mut rng, 8);
        assert!(map.check_identity(&x)?);
        assert!(map.check_additivity(&x, &y)?);
    }
    println!("identity and additivity held on 500 random samples");
    println!("anchor failures for n in [-10, 10]: {:?}", map.anchor_failures(-10..=10)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("pathological map example failed");
}

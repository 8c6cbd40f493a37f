// Split octonions over a finite field: trace, norm, inverse, and the
// identities that survive the loss of associativity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use splitocto::cli::random_octonion;
use splitocto::octonion::artin_word_check;
use splitocto::{associator, hua_check, moufang_check, Error, FieldSpec, OctIndex, Octonion};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldSpec::prime(5)?;
    let e = |i: OctIndex| Octonion::basis(i, &f.one());

    let x = Octonion::parse(&f, "0,0,1,1,-1,-1,0,0")?;
    println!("x = {x}");
    println!("T(x) = {}, N(x) = {}, x^2 = {}", x.trace(), x.norm(), x.square());
    println!("x^-1 = {}", x.inverse()?);
    assert!(x.square_law_holds());

    // the basis is not associative
    let a = associator(&e(OctIndex::ONE), &e(OctIndex::OMEGA), &e(OctIndex::OMEGA_BAR))?;
    println!("(e_1, e_w, e_wbar) = {a}");
    assert!(!a.is_zero());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut hua_ok, mut skipped) = (0, 0);
    for _ in 0..200 {
        let u = random_octonion(&f, &mut rng);
        let v = random_octonion(&f, &mut rng);
        let w = random_octonion(&f, &mut rng);
        assert!(associator(&u, &u, &v)?.is_zero());
        assert!(associator(&v, &u, &u)?.is_zero());
        assert_eq!(moufang_check(&u, &v, &w)?, (true, true, true));
        assert_eq!((&u * &v).norm(), &u.norm() * &v.norm());
        match hua_check(&u, &v) {
            Ok(out) => {
                assert!(out.equal);
                hua_ok += 1;
            }
            Err(Error::Inapplicable(_)) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    println!("alternative, Moufang, norm checks passed on 200 triples");
    println!("Hua's identity held on {hua_ok} pairs ({skipped} had a non-invertible step)");

    let u = random_octonion(&f, &mut rng);
    let v = random_octonion(&f, &mut rng);
    println!("subalgebra generated by two elements associative: {}", artin_word_check(&u, &v, 1)?);

    match e(OctIndex::ONE).inverse() {
        Err(err) => println!("e_1 has norm 0: {err}"),
        Ok(_) => return Err("e_1 should not be invertible".into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("octonion example failed");
}

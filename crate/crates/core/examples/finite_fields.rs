// Arithmetic in GF(p) and GF(p^k): literals, inverses, enumeration and the
// prime-subfield coordinates used by the solver.

use splitocto::FieldSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let gf4 = FieldSpec::parse("gf:2^2")?;
    let g = gf4.generator()?;
    println!("GF(4) modulus {:?}, generator g = {g}", gf4.modulus().unwrap_or_default());
    println!("g^2 = {}  (g + 1 = {})", g.square(), &g + &gf4.one());
    assert_eq!(g.square(), &g + &gf4.one());

    let gf9 = FieldSpec::parse("gf:3^2:1,0,1")?;
    let y = gf9.parse_elem("y+2")?;
    let inv = y.inverse()?;
    println!("in {}: ({y})^-1 = {inv}, coords {:?}", gf9.literal(), inv.coords());
    assert_eq!(&y * &inv, gf9.one());

    let gf5 = FieldSpec::prime(5)?;
    let units: Vec<String> = gf5
        .enumerate()?
        .iter()
        .filter_map(|x| x.inverse().ok().map(|i| format!("{x}->{i}")))
        .collect();
    println!("inverses in GF(5): {}", units.join(" "));

    // squaring is additive in characteristic 2
    let gf8 = FieldSpec::parse("gf:2^3")?;
    for a in gf8.enumerate()? {
        for b in gf8.enumerate()? {
            assert_eq!((&a + &b).square(), &a.square() + &b.square());
        }
    }
    println!("Frobenius is additive on {}", gf8.literal());

    match FieldSpec::parse("gf:7^9") {
        Err(e) => println!("gf:7^9 rejected: {e}"),
        Ok(_) => return Err("gf:7^9 should exceed the enumeration bound".into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("finite field example failed");
}

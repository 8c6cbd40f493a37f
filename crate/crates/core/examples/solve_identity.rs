// Computes every additive pair (f, g) with f(x) + x^2 g(x^-1) = 0 over a
// few small algebras and reads off the element q with f(x) = x q.

use splitocto::solver::{self, SolveOptions};
use splitocto::{AlgebraHandle, FieldSpec, SolveMode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        (AlgebraHandle::octonions(FieldSpec::prime(3)?)?, SolveMode::Pair),
        (AlgebraHandle::octonions(FieldSpec::prime(3)?)?, SolveMode::FEqG),
        (AlgebraHandle::octonions(FieldSpec::prime(2)?)?, SolveMode::FEqG),
        (AlgebraHandle::field(FieldSpec::parse("gf:2^2")?)?, SolveMode::Pair),
    ];
    for (h, mode) in cases {
        let r = solver::solve(&h, mode, SolveOptions::default())?;
        println!(
            "{:?} over {} ({:?}): {} unknowns, rank {}, kernel {} (expected {}), verdict {}",
            r.algebra.kind, r.algebra.field, r.mode, r.unknowns, r.rank, r.kernel_dim, r.expected_dim, r.verdict
        );
        if let Some(first) = r.kernel_interpretations.first() {
            println!("  first basis vector: q = [{}]", first.q_coeffs.join(","));
        }
        if !r.verdict {
            return Err("solver found a solution outside the q-family".into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("solver example failed");
}

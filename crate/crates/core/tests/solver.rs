use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splitocto::linalg;
use splitocto::solver::{
    self, build_constraints, split_solution, verify_kernel, verify_solution, AlgElem, AlgebraHandle,
    SolveOptions,
};
use splitocto::{FieldSpec, SolveMode};

fn octonions(p: u32) -> AlgebraHandle {
    AlgebraHandle::octonions(FieldSpec::prime(p).unwrap()).unwrap()
}

fn add(h: &AlgebraHandle, a: &AlgElem, b: &AlgElem) -> AlgElem {
    let p = h.prime();
    let v: Vec<u32> = h.coords(a).iter().zip(h.coords(b)).map(|(x, y)| (x + y) % p).collect();
    h.from_coords(&v).unwrap()
}

fn scale(h: &AlgebraHandle, k: u32, a: &AlgElem) -> AlgElem {
    let p = h.prime();
    let v: Vec<u32> = h.coords(a).iter().map(|x| x * k % p).collect();
    h.from_coords(&v).unwrap()
}

fn neg(h: &AlgebraHandle, a: &AlgElem) -> AlgElem {
    scale(h, h.prime() - 1, a)
}

#[test]
fn derivation_identities_hold_for_kernel_solutions_over_gf5() {
    let h = octonions(5);
    let report = solver::solve(&h, SolveMode::Pair, SolveOptions::default()).unwrap();
    assert_eq!(report.kernel_dim, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let one = h.one();
    let mut tested = 0;
    while tested < 200 {
        // a random combination of kernel vectors is again a solution
        let mut v = vec![0u32; h.unknowns(SolveMode::Pair)];
        for b in &report.kernel_basis {
            let c = rng.random_range(0..5);
            for (x, y) in v.iter_mut().zip(b) {
                *x = (*x + c * y) % 5;
            }
        }
        let (fm, _) = split_solution(&h, SolveMode::Pair, &v).unwrap();
        let f = |x: &AlgElem| h.from_coords(&fm.apply(&h.coords(x))).unwrap();
        let a = h.element_at(rng.random_range(0..h.element_count()));
        let a_minus_1 = add(&h, &a, &neg(&h, &one));
        if h.inverse(&a).is_none() || h.inverse(&a_minus_1).is_none() {
            continue;
        }
        // f(a^2) = 2 a f(a) - a^2 f(1)
        let a2 = h.mul(&a, &a);
        let lhs = f(&a2);
        let rhs = add(&h, &scale(&h, 2, &h.mul(&a, &f(&a))), &neg(&h, &h.mul(&a2, &f(&one))));
        assert_eq!(lhs, rhs, "f(a^2) identity at {a}");
        // h(x^2) = 2 x h(x) with h(x) = f(x) - x f(1)
        let hx = |x: &AlgElem| add(&h, &f(x), &neg(&h, &h.mul(x, &f(&one))));
        assert_eq!(hx(&a2), scale(&h, 2, &h.mul(&a, &hx(&a))), "h(x^2) identity at {a}");
        tested += 1;
    }
}

#[test]
fn right_multiplication_pairs_lie_in_the_kernel() {
    let h = octonions(3);
    let report = solver::solve(&h, SolveMode::Pair, SolveOptions::default()).unwrap();
    let basis = &report.kernel_basis;
    for j in 0..h.dim() {
        let r = h.right_matrix(&h.basis_element(j));
        let mut v = r.entries().to_vec();
        v.extend_from_slice(r.neg().entries());
        let mut rows = basis.clone();
        rows.push(v);
        assert_eq!(linalg::rank(3, &rows), basis.len(), "R(e_{j}) pair outside the kernel");
    }
    assert!(verify_kernel(&h, SolveMode::Pair, basis).all_hold());
}

#[test]
fn full_scan_and_early_stop_agree() {
    for (p, mode) in [(2, SolveMode::Pair), (3, SolveMode::Pair), (3, SolveMode::FEqG)] {
        let h = octonions(p);
        let early = solver::solve(&h, mode, SolveOptions { early_stop: true }).unwrap();
        let full = solver::solve(&h, mode, SolveOptions { early_stop: false }).unwrap();
        assert_eq!(early.kernel_basis, full.kernel_basis);
        assert_eq!(early.rank, full.rank);
        assert_eq!(early.invertible_count, full.invertible_count);
        assert_eq!(full.elements_scanned, h.element_count());
    }
}

#[test]
fn gf2_constraint_rows_are_eight_per_unit() {
    let h = octonions(2);
    // brute-force oracle: count x with N(x) = 1 from the coordinate formula
    let units = (0..256u32)
        .filter(|&i| {
            let b = |k: u32| (i >> (7 - k)) & 1;
            (b(0) * b(7) + b(6) * b(1) + b(5) * b(2) + b(4) * b(3)) % 2 == 1
        })
        .count() as u64;
    let (sys, stats) = build_constraints(&h, SolveMode::Pair, false).unwrap();
    assert_eq!(stats.invertible_scanned, units);
    assert_eq!(sys.rows_appended(), 8 * units);
}

#[test]
fn identity_pair_is_rejected_with_a_witness() {
    let h = octonions(3);
    let id = solver::AdditiveMapMatrix::identity(3, 8);
    assert!(!verify_solution(&h, &id, &id));
    // x + x^2 x^{-1} = 2x, nonzero for every unit in characteristic 3
    let witness = (0..h.element_count())
        .map(|i| h.element_at(i))
        .find(|x| {
            h.inverse(x)
                .map(|inv| add(&h, x, &h.mul(&h.mul(x, x), &inv)) != scale(&h, 0, x))
                .unwrap_or(false)
        })
        .expect("a violating unit");
    println!("(id, id) fails at x = {witness}");
    // (id, -id) is the pair for q = 1
    assert!(verify_solution(&h, &id, &id.neg()));
}

#[test]
fn reports_are_deterministic() {
    let h = octonions(3);
    let a = serde_json::to_string(&solver::solve(&h, SolveMode::Pair, SolveOptions::default()).unwrap()).unwrap();
    let b = serde_json::to_string(&solver::solve(&h, SolveMode::Pair, SolveOptions::default()).unwrap()).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    for key in ["algebra", "mode", "unknowns", "invertible_count", "rank", "kernel_dim", "expected_dim", "verdict", "kernel_interpretations"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["algebra"]["kind"], "octonion");
    assert_eq!(v["mode"], "pair");
    assert!(v["kernel_interpretations"][0].get("q_coeffs").is_some());
}

#[test]
fn f_eq_g_encoding_is_reported() {
    let h = AlgebraHandle::field(FieldSpec::parse("gf:2^2").unwrap()).unwrap();
    let r = solver::solve(&h, SolveMode::FEqG, SolveOptions::default()).unwrap();
    assert_eq!(r.unknowns, 4);
    assert!(r.f_eq_g_encoding.is_some());
    // char 2: q = -q, so every R(q) survives
    assert_eq!(r.kernel_dim, 2);
    assert!(r.verdict);
}

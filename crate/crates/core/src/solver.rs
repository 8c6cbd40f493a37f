//! Exhaustive solver for additive pairs `(f, g)` with
//! `f(x) + x^2 g(x^{-1}) = 0` for every invertible `x` of a finite algebra.
//!
//! On a finite algebra `D` of characteristic p an additive map is the same
//! thing as a GF(p)-linear map: additivity gives `f(m x) = m f(x)` for every
//! integer `m`, and the prime subfield consists of exactly those multiples.
//! So after fixing GF(p)-coordinates `v: D -> GF(p)^n`, additive maps are
//! `n x n` matrices over GF(p) and the identity, imposed for one invertible
//! `x`, is `n` linear equations in the `2 n^2` matrix entries of `(F, G)`:
//!
//! ```text
//! F v(x) + L(x^2) G v(x^{-1}) = 0
//! ```
//!
//! where `L(a)` is the matrix of `y -> a y`. The solution space is the
//! nullspace of all those equations. Every pair `(R(q), -R(q))`, with `R(q)`
//! the matrix of `y -> y q`, lies in it; the interesting question is whether
//! anything else does.
//!
//! Elements are scanned in lexicographic order of their coordinate vectors.
//! Once the rank reaches `unknowns - expected_dim` the scan may stop early,
//! but only after the resulting kernel has been re-checked against every
//! invertible element; if that check fails the scan resumes.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{enumeration_bound, FieldElem, FieldRef};
use crate::linalg::{self, Echelon};
use crate::octonion::Octonion;

/// Elements per generation batch. Rows inside a batch are produced in
/// parallel and appended in element order.
const CHUNK: u64 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    Octonion,
    Field,
}

impl FromStr for AlgebraKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "octonion" => Ok(AlgebraKind::Octonion),
            "field" => Ok(AlgebraKind::Field),
            _ => Err(Error::Domain(format!("unknown algebra kind `{s}`"))),
        }
    }
}

/// `Pair` solves for independent `f` and `g`; `FEqG` imposes `g = f` by
/// substituting `G := F`, which halves the unknowns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SolveMode {
    #[serde(rename = "pair")]
    Pair,
    #[serde(rename = "f_eq_g")]
    FEqG,
}

impl FromStr for SolveMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pair" => Ok(SolveMode::Pair),
            "f_eq_g" => Ok(SolveMode::FEqG),
            _ => Err(Error::Domain(format!("unknown mode `{s}`"))),
        }
    }
}

/// An element of the algebra being solved over.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgElem {
    Octonion(Octonion<FieldElem>),
    Field(FieldElem),
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgElem::Octonion(x) => write!(f, "{x}"),
            AlgElem::Field(x) => write!(f, "{x}"),
        }
    }
}

/// A finite algebra with its GF(p)-coordinates: split octonions over
/// GF(p^k) (dimension 8k) or GF(p^k) itself (dimension k).
#[derive(Clone, Debug)]
pub struct AlgebraHandle {
    kind: AlgebraKind,
    field: FieldRef,
    dim: usize,
    count: u64,
}

impl AlgebraHandle {
    pub fn new(kind: AlgebraKind, field: FieldRef) -> Result<Self> {
        let k = field.degree();
        let dim = match kind {
            AlgebraKind::Octonion => 8 * k,
            AlgebraKind::Field => k,
        };
        let bound = enumeration_bound();
        let p = field.characteristic() as u64;
        let mut count: u64 = 1;
        for _ in 0..dim {
            count = count.saturating_mul(p);
            if count > bound {
                return Err(Error::Capacity(format!(
                    "algebra has {p}^{dim} elements, above the enumeration bound {bound}"
                )));
            }
        }
        Ok(AlgebraHandle {
            kind,
            field,
            dim,
            count,
        })
    }

    pub fn octonions(field: FieldRef) -> Result<Self> {
        Self::new(AlgebraKind::Octonion, field)
    }

    pub fn field(field: FieldRef) -> Result<Self> {
        Self::new(AlgebraKind::Field, field)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn coefficient_field(&self) -> &FieldRef {
        &self.field
    }

    /// Dimension over the prime subfield.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prime(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn element_count(&self) -> u64 {
        self.count
    }

    pub fn unknowns(&self, mode: SolveMode) -> usize {
        match mode {
            SolveMode::Pair => 2 * self.dim * self.dim,
            SolveMode::FEqG => self.dim * self.dim,
        }
    }

    pub fn coords(&self, x: &AlgElem) -> Vec<u32> {
        match x {
            AlgElem::Octonion(o) => o.coeffs().iter().flat_map(|c| c.coords()).collect(),
            AlgElem::Field(e) => e.coords(),
        }
    }

    pub fn from_coords(&self, v: &[u32]) -> Result<AlgElem> {
        if v.len() != self.dim {
            return Err(Error::Domain(format!(
                "expected {} coordinates, got {}",
                self.dim,
                v.len()
            )));
        }
        let k = self.field.degree();
        Ok(match self.kind {
            AlgebraKind::Field => AlgElem::Field(self.field.from_coords(v)?),
            AlgebraKind::Octonion => {
                let coeffs = v
                    .chunks(k)
                    .map(|c| self.field.from_coords(c))
                    .collect::<Result<Vec<_>>>()?;
                AlgElem::Octonion(Octonion::from_vec(coeffs)?)
            }
        })
    }

    /// The `index`-th element in lexicographic order of coordinate vectors.
    pub fn element_at(&self, index: u64) -> AlgElem {
        let p = self.prime() as u64;
        let mut v = vec![0u32; self.dim];
        let mut rest = index;
        for slot in v.iter_mut().rev() {
            *slot = (rest % p) as u32;
            rest /= p;
        }
        self.from_coords(&v).expect("digits are in range")
    }

    pub fn one(&self) -> AlgElem {
        match self.kind {
            AlgebraKind::Field => AlgElem::Field(self.field.one()),
            AlgebraKind::Octonion => AlgElem::Octonion(Octonion::one(&self.field.one())),
        }
    }

    /// The element whose coordinate vector is the `j`-th unit vector.
    pub fn basis_element(&self, j: usize) -> AlgElem {
        let mut v = vec![0u32; self.dim];
        v[j] = 1;
        self.from_coords(&v).expect("unit vector is in range")
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        match (a, b) {
            (AlgElem::Octonion(x), AlgElem::Octonion(y)) => AlgElem::Octonion(x * y),
            (AlgElem::Field(x), AlgElem::Field(y)) => AlgElem::Field(x * y),
            _ => panic!("mixed algebra elements"),
        }
    }

    /// Octonions use `x^{-1} = N(x)^{-1} (T(x) - x)`; fields use the field inverse.
    pub fn inverse(&self, a: &AlgElem) -> Option<AlgElem> {
        match a {
            AlgElem::Octonion(x) => x.inverse().ok().map(AlgElem::Octonion),
            AlgElem::Field(x) => x.inverse().ok().map(AlgElem::Field),
        }
    }

    /// Matrix of `y -> a y`.
    pub fn left_matrix(&self, a: &AlgElem) -> AdditiveMapMatrix {
        let cols: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| self.coords(&self.mul(a, &self.basis_element(j))))
            .collect();
        AdditiveMapMatrix::from_columns(self.prime(), &cols)
    }

    /// Matrix of `y -> y a`.
    pub fn right_matrix(&self, a: &AlgElem) -> AdditiveMapMatrix {
        let cols: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| self.coords(&self.mul(&self.basis_element(j), a)))
            .collect();
        AdditiveMapMatrix::from_columns(self.prime(), &cols)
    }

    /// `(L(a), R(a))`.
    pub fn mul_matrices(&self, a: &AlgElem) -> (AdditiveMapMatrix, AdditiveMapMatrix) {
        (self.left_matrix(a), self.right_matrix(a))
    }

    pub fn field_literal(&self) -> String {
        self.field.literal()
    }
}

/// An `n x n` matrix over GF(p) acting on coordinate vectors; on a finite
/// algebra these are exactly the additive maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveMapMatrix {
    p: u32,
    n: usize,
    entries: Vec<u32>,
}

impl AdditiveMapMatrix {
    pub fn zeros(p: u32, n: usize) -> Self {
        AdditiveMapMatrix {
            p,
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Row-major entries.
    pub fn from_entries(p: u32, n: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Domain(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(AdditiveMapMatrix {
            p,
            n,
            entries: entries.into_iter().map(|x| x % p).collect(),
        })
    }

    pub fn from_columns(p: u32, cols: &[Vec<u32>]) -> Self {
        let n = cols.len();
        let mut m = Self::zeros(p, n);
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.entries[i * n + j] = x;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.n + col]
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        linalg::mat_vec(self.p, &self.entries, self.n, v)
    }

    pub fn neg(&self) -> Self {
        AdditiveMapMatrix {
            p: self.p,
            n: self.n,
            entries: self.entries.iter().map(|&x| (self.p - x) % self.p).collect(),
        }
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(self.p, n);
        for i in 0..n {
            for j in 0..n {
                let s: u64 = (0..n)
                    .map(|k| self.get(i, k) as u64 * rhs.get(k, j) as u64)
                    .sum();
                out.entries[i * n + j] = (s % self.p as u64) as u32;
            }
        }
        out
    }
}

/// The rows contributed by one element `x`, or `None` if `x` is not invertible.
fn constraint_block(h: &AlgebraHandle, mode: SolveMode, x: &AlgElem) -> Option<Vec<Vec<u32>>> {
    let x_inv = h.inverse(x)?;
    let n = h.dim;
    let p = h.prime() as u64;
    let vx = h.coords(x);
    let u = h.coords(&x_inv);
    let x2 = h.mul(x, x);
    let l = h.left_matrix(&x2);
    let unknowns = h.unknowns(mode);
    let rows = (0..n)
        .map(|r| {
            let mut row = vec![0u32; unknowns];
            row[r * n..(r + 1) * n].copy_from_slice(&vx);
            let g_offset = match mode {
                SolveMode::Pair => n * n,
                SolveMode::FEqG => 0,
            };
            for s in 0..n {
                let lrs = l.get(r, s) as u64;
                if lrs == 0 {
                    continue;
                }
                for (j, &uj) in u.iter().enumerate() {
                    let cell = &mut row[g_offset + s * n + j];
                    *cell = ((*cell as u64 + lrs * uj as u64) % p) as u32;
                }
            }
            row
        })
        .collect();
    Some(rows)
}

/// A linear system over GF(p) in the entries of `F` then `G` (row-major),
/// kept in echelon form as rows arrive.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    echelon: Echelon,
    rows_appended: u64,
    blocks: u64,
}

impl ConstraintSystem {
    /// Empty system with the unknowns of `mode` over `h`.
    pub fn new(h: &AlgebraHandle, mode: SolveMode) -> Self {
        Self::with_unknowns(h.prime(), h.unknowns(mode))
    }

    pub fn with_unknowns(p: u32, unknowns: usize) -> Self {
        ConstraintSystem {
            echelon: Echelon::new(p, unknowns),
            rows_appended: 0,
            blocks: 0,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.echelon.cols()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn rows_appended(&self) -> u64 {
        self.rows_appended
    }

    /// Number of elements whose rows were appended.
    pub fn blocks(&self) -> u64 {
        self.blocks
    }

    pub fn push_row(&mut self, row: &[u32]) -> Result<bool> {
        if row.len() != self.unknowns() {
            return Err(Error::Domain(format!(
                "row has {} entries, system has {} unknowns",
                row.len(),
                self.unknowns()
            )));
        }
        self.rows_appended += 1;
        Ok(self.echelon.insert(row))
    }

    fn push_block(&mut self, rows: Vec<Vec<u32>>) {
        self.blocks += 1;
        for r in rows {
            self.rows_appended += 1;
            self.echelon.insert(&r);
        }
    }

    /// Appends the rows for `x`; returns false (appending nothing) if `x`
    /// is not invertible.
    pub fn push_element(&mut self, h: &AlgebraHandle, mode: SolveMode, x: &AlgElem) -> Result<bool> {
        if h.unknowns(mode) != self.unknowns() {
            return Err(Error::Domain("system was built for a different algebra or mode".into()));
        }
        match constraint_block(h, mode, x) {
            Some(rows) => {
                self.push_block(rows);
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

/// Basis of the solution space; deterministic (leftmost pivots, free
/// columns ascending).
pub fn kernel(sys: &ConstraintSystem) -> Vec<Vec<u32>> {
    sys.echelon.kernel()
}

/// How far a scan got.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScanStats {
    pub elements_scanned: u64,
    pub invertible_scanned: u64,
    pub early_stopped: bool,
}

/// Dimension of the family the theorem predicts: `{(R(q), -R(q))}` for
/// `Pair`, and `{R(q) : R(q) = -R(q)}` for `FEqG`. Both are computed from
/// the right-multiplication matrices, not assumed.
pub fn expected_dim(h: &AlgebraHandle, mode: SolveMode) -> usize {
    let p = h.prime();
    let images: Vec<Vec<u32>> = (0..h.dim)
        .map(|j| {
            let r = h.right_matrix(&h.basis_element(j));
            match mode {
                SolveMode::Pair => {
                    let mut v = r.entries().to_vec();
                    v.extend_from_slice(r.neg().entries());
                    v
                }
                SolveMode::FEqG => r
                    .entries()
                    .iter()
                    .zip(r.neg().entries())
                    .map(|(&a, &b)| (a + p - b) % p)
                    .collect(),
            }
        })
        .collect();
    match mode {
        SolveMode::Pair => linalg::rank(p, &images),
        SolveMode::FEqG => {
            // columns of the map q -> R(q) - (-R(q)) are `images`; its nullity
            let rows: Vec<Vec<u32>> = (0..images[0].len())
                .map(|i| images.iter().map(|col| col[i]).collect())
                .collect();
            linalg::kernel(p, h.dim, &rows).len()
        }
    }
}

/// Scans elements in order, appending rows for every invertible one. With
/// `early_stop`, stops once the rank reaches `unknowns - expected_dim`
/// and the kernel at that point checks out against all invertible elements.
pub fn build_constraints(
    h: &AlgebraHandle,
    mode: SolveMode,
    early_stop: bool,
) -> Result<(ConstraintSystem, ScanStats)> {
    let (sys, stats, _) = scan(h, mode, early_stop);
    Ok((sys, stats))
}

/// Like [`build_constraints`], also returning the kernel and its check when
/// an early stop already computed them.
fn scan(
    h: &AlgebraHandle,
    mode: SolveMode,
    early_stop: bool,
) -> (ConstraintSystem, ScanStats, Option<(Vec<Vec<u32>>, KernelCheck)>) {
    let mut sys = ConstraintSystem::new(h, mode);
    let target = sys.unknowns() - expected_dim(h, mode);
    let mut stats = ScanStats {
        elements_scanned: 0,
        invertible_scanned: 0,
        early_stopped: false,
    };
    let mut try_early = early_stop;
    let total = h.count;
    let mut next = 0u64;
    while next < total {
        let end = (next + CHUNK).min(total);
        let blocks: Vec<Option<Vec<Vec<u32>>>> = (next..end)
            .into_par_iter()
            .map(|i| constraint_block(h, mode, &h.element_at(i)))
            .collect();
        for block in blocks.into_iter().flatten() {
            stats.invertible_scanned += 1;
            sys.push_block(block);
        }
        stats.elements_scanned = end;
        next = end;
        if try_early && next < total && sys.rank() >= target {
            let basis = kernel(&sys);
            let check = verify_kernel(h, mode, &basis);
            if check.all_hold() {
                stats.early_stopped = true;
                return (sys, stats, Some((basis, check)));
            }
            try_early = false;
        }
    }
    (sys, stats, None)
}

/// Result of re-checking kernel vectors against every invertible element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCheck {
    pub invertible_count: u64,
    /// Per kernel vector: whether it satisfied every constraint.
    pub holds: Vec<bool>,
}

impl KernelCheck {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&b| b)
    }
}

/// Splits a solution vector into `(F, G)`; in `FEqG` mode `G = F`.
pub fn split_solution(
    h: &AlgebraHandle,
    mode: SolveMode,
    v: &[u32],
) -> Result<(AdditiveMapMatrix, AdditiveMapMatrix)> {
    let n = h.dim;
    if v.len() != h.unknowns(mode) {
        return Err(Error::Domain(format!(
            "solution vector has {} entries, expected {}",
            v.len(),
            h.unknowns(mode)
        )));
    }
    let f = AdditiveMapMatrix::from_entries(h.prime(), n, v[..n * n].to_vec())?;
    let g = match mode {
        SolveMode::Pair => AdditiveMapMatrix::from_entries(h.prime(), n, v[n * n..].to_vec())?,
        SolveMode::FEqG => f.clone(),
    };
    Ok((f, g))
}

/// `F v(x) + v(x^2 g(x^{-1})) == 0`, with `g(x^{-1})` read off `G`.
fn identity_holds_at(
    h: &AlgebraHandle,
    f: &AdditiveMapMatrix,
    g: &AdditiveMapMatrix,
    vx: &[u32],
    x2: &AlgElem,
    u: &[u32],
) -> bool {
    let p = h.prime();
    let fx = f.apply(vx);
    let gu = h.from_coords(&g.apply(u)).expect("matrix output is in range");
    let w = h.coords(&h.mul(x2, &gu));
    fx.iter().zip(&w).all(|(&a, &b)| (a + b) % p == 0)
}

fn verify_pairs(h: &AlgebraHandle, pairs: &[(AdditiveMapMatrix, AdditiveMapMatrix)]) -> KernelCheck {
    let total = h.count;
    let chunks: Vec<(u64, u64)> = (0..total)
        .step_by(CHUNK as usize)
        .map(|s| (s, (s + CHUNK).min(total)))
        .collect();
    let identity = || (0u64, vec![true; pairs.len()]);
    let (invertible_count, holds) = chunks
        .into_par_iter()
        .map(|(start, end)| {
            let (mut count, mut holds) = identity();
            for i in start..end {
                let x = h.element_at(i);
                let Some(x_inv) = h.inverse(&x) else {
                    continue;
                };
                count += 1;
                let vx = h.coords(&x);
                let u = h.coords(&x_inv);
                let x2 = h.mul(&x, &x);
                for (ok, (f, g)) in holds.iter_mut().zip(pairs) {
                    if *ok && !identity_holds_at(h, f, g, &vx, &x2, &u) {
                        *ok = false;
                    }
                }
            }
            (count, holds)
        })
        .reduce(identity, |(c1, h1), (c2, h2)| {
            (c1 + c2, h1.iter().zip(&h2).map(|(&a, &b)| a && b).collect())
        });
    KernelCheck {
        invertible_count,
        holds,
    }
}

/// Re-checks each kernel vector against every invertible element, without
/// going through the elimination.
pub fn verify_kernel(h: &AlgebraHandle, mode: SolveMode, kernel: &[Vec<u32>]) -> KernelCheck {
    let pairs: Vec<_> = kernel
        .iter()
        .map(|v| split_solution(h, mode, v).expect("kernel vectors have the system's width"))
        .collect();
    verify_pairs(h, &pairs)
}

/// Whether `(F, G)` satisfies the identity at every invertible element.
pub fn verify_solution(h: &AlgebraHandle, f: &AdditiveMapMatrix, g: &AdditiveMapMatrix) -> bool {
    verify_pairs(h, &[(f.clone(), g.clone())]).all_hold()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraInfo {
    pub kind: AlgebraKind,
    pub field: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelInterpretation {
    /// `q = f(1)`, as field-element literals (storage order for octonions).
    pub q_coeffs: Vec<String>,
    /// `F = R(q)` and `G = -R(q)`; in `f_eq_g` mode also `R(q) = -R(q)`.
    pub is_right_mul_pair: bool,
    /// Passed the exhaustive re-check.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub algebra: AlgebraInfo,
    pub mode: SolveMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_eq_g_encoding: Option<String>,
    pub unknowns: usize,
    pub elements: u64,
    pub elements_scanned: u64,
    pub early_stop: bool,
    pub constraint_rows: u64,
    pub invertible_count: u64,
    pub rank: usize,
    pub kernel_dim: usize,
    pub expected_dim: usize,
    pub kernel_verified: bool,
    pub verdict: bool,
    pub kernel_interpretations: Vec<KernelInterpretation>,
    #[serde(skip)]
    pub kernel_basis: Vec<Vec<u32>>,
}

/// Reads `q = F v(1)` off a solution and checks it has the predicted shape.
pub fn interpret(
    h: &AlgebraHandle,
    mode: SolveMode,
    v: &[u32],
) -> Result<(AlgElem, bool)> {
    let (f, g) = split_solution(h, mode, v)?;
    let q = h.from_coords(&f.apply(&h.coords(&h.one())))?;
    let rq = h.right_matrix(&q);
    let ok = match mode {
        SolveMode::Pair => f == rq && g == rq.neg(),
        SolveMode::FEqG => f == rq && rq == rq.neg(),
    };
    Ok((q, ok))
}

fn q_literals(q: &AlgElem) -> Vec<String> {
    match q {
        AlgElem::Octonion(o) => o.coeffs().iter().map(|c| c.to_string()).collect(),
        AlgElem::Field(e) => vec![e.to_string()],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub early_stop: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { early_stop: true }
    }
}

/// Full pipeline: scan, eliminate, extract the kernel, re-check it against
/// every invertible element, and interpret each basis vector.
pub fn solve(h: &AlgebraHandle, mode: SolveMode, opts: SolveOptions) -> Result<SolveReport> {
    let (sys, stats, cached) = scan(h, mode, opts.early_stop);
    let (basis, check) = cached.unwrap_or_else(|| {
        let basis = kernel(&sys);
        let check = verify_kernel(h, mode, &basis);
        (basis, check)
    });
    let expected = expected_dim(h, mode);
    let mut interpretations = Vec::with_capacity(basis.len());
    for (v, &verified) in basis.iter().zip(&check.holds) {
        let (q, ok) = interpret(h, mode, v)?;
        interpretations.push(KernelInterpretation {
            q_coeffs: q_literals(&q),
            is_right_mul_pair: ok,
            verified,
        });
    }
    let verdict = basis.len() == expected
        && check.all_hold()
        && interpretations.iter().all(|i| i.is_right_mul_pair);
    Ok(SolveReport {
        algebra: AlgebraInfo {
            kind: h.kind,
            field: h.field_literal(),
        },
        mode,
        f_eq_g_encoding: (mode == SolveMode::FEqG).then(|| "substitute G := F".to_string()),
        unknowns: sys.unknowns(),
        elements: h.count,
        elements_scanned: stats.elements_scanned,
        early_stop: stats.early_stopped,
        constraint_rows: sys.rows_appended(),
        invertible_count: check.invertible_count,
        rank: sys.rank(),
        kernel_dim: basis.len(),
        expected_dim: expected,
        kernel_verified: check.all_hold(),
        verdict,
        kernel_interpretations: interpretations,
        kernel_basis: basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldSpec;
    use crate::octonion::OctIndex;

    fn oct(p: u32) -> AlgebraHandle {
        AlgebraHandle::octonions(FieldSpec::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn unit_multiplication_matrices_are_identity() {
        for h in [oct(2), oct(3), AlgebraHandle::field(FieldSpec::parse("gf:2^3").unwrap()).unwrap()] {
            let (l, r) = h.mul_matrices(&h.one());
            let id = AdditiveMapMatrix::identity(h.prime(), h.dim());
            assert_eq!(l, id);
            assert_eq!(r, id);
        }
    }

    #[test]
    fn left_matrix_of_e0_follows_its_table_row() {
        let h = oct(2);
        let f = FieldSpec::prime(2).unwrap();
        let e0 = AlgElem::Octonion(Octonion::basis(OctIndex::ZERO, &f.one()));
        let l = h.left_matrix(&e0);
        // row e_0 of the table: e_{-1}, 0, 0, e_0, 0, e_{-ω}, e_{-ω̄}, 0
        let expected_cols: [Option<usize>; 8] = [Some(0), None, None, Some(3), None, Some(5), Some(6), None];
        for (j, target) in expected_cols.iter().enumerate() {
            for i in 0..8 {
                assert_eq!(l.get(i, j), (Some(i) == *target) as u32, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn left_multiplications_do_not_compose() {
        let h = oct(2);
        let mut witness = false;
        for a in 0..h.element_count() {
            let a = h.element_at(a);
            let la = h.left_matrix(&a);
            for j in 0..8 {
                let b = h.basis_element(j);
                let ab = h.mul(&a, &b);
                // L(a) v(b) = v(ab) always
                assert_eq!(la.apply(&h.coords(&b)), h.coords(&ab));
                if la.compose(&h.left_matrix(&b)) != h.left_matrix(&ab) {
                    witness = true;
                }
            }
        }
        assert!(witness);
    }

    #[test]
    fn field_gf2_has_single_constraint_block() {
        let h = AlgebraHandle::field(FieldSpec::prime(2).unwrap()).unwrap();
        let (sys, stats) = build_constraints(&h, SolveMode::Pair, false).unwrap();
        assert_eq!(stats.invertible_scanned, 1);
        assert_eq!(sys.rows_appended(), 1);
        assert_eq!(sys.unknowns(), 2);
        assert_eq!(kernel(&sys).len(), 1);
    }

    #[test]
    fn gf2_octonion_constraint_counts() {
        let h = oct(2);
        let units = (0..h.element_count())
            .filter(|&i| h.inverse(&h.element_at(i)).is_some())
            .count() as u64;
        // N is a hyperbolic form on GF(2)^8: 2^7 - 2^3 vectors with N = 1
        assert_eq!(units, 120);
        let (sys, stats) = build_constraints(&h, SolveMode::Pair, false).unwrap();
        assert_eq!(stats.invertible_scanned, units);
        assert_eq!(sys.rows_appended(), 8 * units);
    }

    #[test]
    fn empty_and_full_rank_systems() {
        let sys = ConstraintSystem::with_unknowns(3, 2 * 64);
        assert_eq!(kernel(&sys).len(), 128);
        let mut sys = ConstraintSystem::with_unknowns(3, 8);
        for i in 0..8 {
            let mut r = vec![0; 8];
            r[i] = 1;
            sys.push_row(&r).unwrap();
        }
        assert!(kernel(&sys).is_empty());
        assert!(sys.push_row(&[1, 2]).is_err());
    }

    #[test]
    fn early_stop_matches_full_scan_over_gf3() {
        let h = oct(3);
        let (full, full_stats) = build_constraints(&h, SolveMode::Pair, false).unwrap();
        let (early, early_stats) = build_constraints(&h, SolveMode::Pair, true).unwrap();
        assert!(!full_stats.early_stopped);
        assert!(early_stats.early_stopped);
        assert!(early_stats.elements_scanned < full_stats.elements_scanned);
        assert_eq!(full.rank(), early.rank());
        assert_eq!(kernel(&full), kernel(&early));
        assert_eq!(kernel(&full).len(), 8);
    }

    #[test]
    fn right_multiplication_pairs_verify() {
        let h = oct(3);
        for idx in [1u64, 17, 400, 3000, 6560] {
            let q = h.element_at(idx);
            let r = h.right_matrix(&q);
            assert!(verify_solution(&h, &r, &r.neg()));
        }
        let id = AdditiveMapMatrix::identity(3, 8);
        assert!(!verify_solution(&h, &id, &id));
        let z = AdditiveMapMatrix::zeros(3, 8);
        assert!(verify_solution(&h, &z, &z));
    }

    #[test]
    fn expected_dimensions() {
        assert_eq!(expected_dim(&oct(3), SolveMode::Pair), 8);
        assert_eq!(expected_dim(&oct(3), SolveMode::FEqG), 0);
        assert_eq!(expected_dim(&oct(2), SolveMode::FEqG), 8);
        let gf4 = AlgebraHandle::field(FieldSpec::parse("gf:2^2").unwrap()).unwrap();
        assert_eq!(expected_dim(&gf4, SolveMode::Pair), 2);
    }

    #[test]
    fn zero_solution_interprets() {
        let h = oct(3);
        let (q, ok) = interpret(&h, SolveMode::Pair, &vec![0; 128]).unwrap();
        assert!(ok);
        assert_eq!(h.coords(&q), vec![0; 8]);
    }

    #[test]
    fn capacity_rejection() {
        assert!(matches!(
            AlgebraHandle::octonions(FieldSpec::prime(7).unwrap()),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn mode_and_kind_parsing() {
        assert_eq!("pair".parse::<SolveMode>().unwrap(), SolveMode::Pair);
        assert_eq!("f_eq_g".parse::<SolveMode>().unwrap(), SolveMode::FEqG);
        assert!("x".parse::<SolveMode>().is_err());
        assert_eq!("field".parse::<AlgebraKind>().unwrap(), AlgebraKind::Field);
    }
}

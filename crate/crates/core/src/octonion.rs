//! Split octonions over an arbitrary field.
//!
//! The basis is `{e_i : i in I}` with `I = {±0, ±1, ±ω, ±ω̄}`. Coefficients
//! are stored in the fixed order
//! `(e_{-1}, e_{ω̄}, e_ω, e_0, e_{-0}, e_{-ω}, e_{-ω̄}, e_1)`, which is also
//! the row and column order of [`MulTable::figure`]. The unit is
//! `e_0 + e_{-0}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldRef};
use crate::scalar::Scalar;

/// The unsigned part of a basis subscript.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Zero,
    One,
    Omega,
    OmegaBar,
}

impl Tag {
    /// Multiplication by ω: 1 -> ω -> ω̄ -> 1, and 0 is fixed.
    pub fn times_omega(self) -> Tag {
        match self {
            Tag::Zero => Tag::Zero,
            Tag::One => Tag::Omega,
            Tag::Omega => Tag::OmegaBar,
            Tag::OmegaBar => Tag::One,
        }
    }

    /// Product in the cyclic group {1, ω, ω̄}; `None` if either side is 0.
    pub fn group_mul(self, rhs: Tag) -> Option<Tag> {
        fn exp(t: Tag) -> Option<u8> {
            match t {
                Tag::Zero => None,
                Tag::One => Some(0),
                Tag::Omega => Some(1),
                Tag::OmegaBar => Some(2),
            }
        }
        let e = (exp(self)? + exp(rhs)?) % 3;
        Some([Tag::One, Tag::Omega, Tag::OmegaBar][e as usize])
    }
}

/// A basis subscript `±tag`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OctIndex {
    pub negative: bool,
    pub tag: Tag,
}

impl OctIndex {
    pub const fn new(negative: bool, tag: Tag) -> Self {
        OctIndex { negative, tag }
    }

    pub const NEG_ONE: OctIndex = OctIndex::new(true, Tag::One);
    pub const OMEGA_BAR: OctIndex = OctIndex::new(false, Tag::OmegaBar);
    pub const OMEGA: OctIndex = OctIndex::new(false, Tag::Omega);
    pub const ZERO: OctIndex = OctIndex::new(false, Tag::Zero);
    pub const NEG_ZERO: OctIndex = OctIndex::new(true, Tag::Zero);
    pub const NEG_OMEGA: OctIndex = OctIndex::new(true, Tag::Omega);
    pub const NEG_OMEGA_BAR: OctIndex = OctIndex::new(true, Tag::OmegaBar);
    pub const ONE: OctIndex = OctIndex::new(false, Tag::One);

    /// All eight subscripts in storage order.
    pub const ALL: [OctIndex; 8] = [
        Self::NEG_ONE,
        Self::OMEGA_BAR,
        Self::OMEGA,
        Self::ZERO,
        Self::NEG_ZERO,
        Self::NEG_OMEGA,
        Self::NEG_OMEGA_BAR,
        Self::ONE,
    ];

    pub fn slot(self) -> usize {
        Self::ALL
            .iter()
            .position(|&i| i == self)
            .expect("every index has a slot")
    }

    pub fn from_slot(slot: usize) -> OctIndex {
        Self::ALL[slot]
    }

    pub fn negated(self) -> OctIndex {
        OctIndex::new(!self.negative, self.tag)
    }

    pub fn times_omega(self) -> OctIndex {
        OctIndex::new(self.negative, self.tag.times_omega())
    }

    /// TeX-style label such as `e_1`, `e_{-0}` or `e_{-\bar{\omega}}`.
    pub fn label(self) -> String {
        let tag = match self.tag {
            Tag::Zero => "0",
            Tag::One => "1",
            Tag::Omega => "\\omega",
            Tag::OmegaBar => "\\bar{\\omega}",
        };
        let sub = format!("{}{}", if self.negative { "-" } else { "" }, tag);
        if sub.len() == 1 {
            format!("e_{sub}")
        } else {
            format!("e_{{{sub}}}")
        }
    }
}

/// Product of two basis vectors: zero or `±e_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisProduct {
    Zero,
    Term { sign: i8, index: OctIndex },
}

impl BasisProduct {
    fn neg_subscripts(self) -> Self {
        match self {
            BasisProduct::Zero => self,
            BasisProduct::Term { sign, index } => BasisProduct::Term {
                sign,
                index: index.negated(),
            },
        }
    }

    fn omega_subscripts(self) -> Self {
        match self {
            BasisProduct::Zero => self,
            BasisProduct::Term { sign, index } => BasisProduct::Term {
                sign,
                index: index.times_omega(),
            },
        }
    }

    pub fn label(self) -> String {
        match self {
            BasisProduct::Zero => "0".into(),
            BasisProduct::Term { sign, index } => {
                format!("{}{}", if sign < 0 { "-" } else { "" }, index.label())
            }
        }
    }
}

/// A disagreement between two multiplication tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableDiscrepancy {
    pub left: String,
    pub right: String,
    pub expected: String,
    pub found: String,
}

/// An 8x8 table of basis products indexed by storage slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTable {
    entries: [[BasisProduct; 8]; 8],
}

// (sign, slot) per entry; sign 0 marks a zero product. Rows are the left
// factor, columns the right factor.
const FIGURE: [[(i8, u8); 8]; 8] = [
    [(0, 0), (0, 0), (0, 0), (0, 0), (1, 0), (1, 1), (-1, 2), (-1, 3)],
    [(0, 0), (0, 0), (-1, 0), (1, 1), (0, 0), (0, 0), (-1, 4), (1, 5)],
    [(0, 0), (1, 0), (0, 0), (1, 2), (0, 0), (-1, 4), (0, 0), (-1, 6)],
    [(1, 0), (0, 0), (0, 0), (1, 3), (0, 0), (1, 5), (1, 6), (0, 0)],
    [(0, 0), (1, 1), (1, 2), (0, 0), (1, 4), (0, 0), (0, 0), (1, 7)],
    [(-1, 1), (0, 0), (-1, 3), (0, 0), (1, 5), (0, 0), (1, 7), (0, 0)],
    [(1, 2), (-1, 3), (0, 0), (0, 0), (1, 6), (-1, 7), (0, 0), (0, 0)],
    [(-1, 4), (-1, 5), (1, 6), (1, 7), (0, 0), (0, 0), (0, 0), (0, 0)],
];

/// The generating products; every other product is an image of one of
/// these under subscript negation and multiplication by ω, or zero.
fn generating_products() -> [(OctIndex, OctIndex, BasisProduct); 6] {
    let term = |sign, index| BasisProduct::Term { sign, index };
    [
        (OctIndex::ONE, OctIndex::OMEGA, term(1, OctIndex::NEG_OMEGA_BAR)),
        (OctIndex::OMEGA, OctIndex::ONE, term(-1, OctIndex::NEG_OMEGA_BAR)),
        (OctIndex::ONE, OctIndex::ZERO, term(1, OctIndex::ONE)),
        (OctIndex::NEG_ZERO, OctIndex::ONE, term(1, OctIndex::ONE)),
        (OctIndex::NEG_ONE, OctIndex::ONE, term(-1, OctIndex::ZERO)),
        (OctIndex::ZERO, OctIndex::ZERO, term(1, OctIndex::ZERO)),
    ]
}

impl MulTable {
    /// The published table.
    pub fn figure() -> MulTable {
        let mut entries = [[BasisProduct::Zero; 8]; 8];
        for (i, row) in FIGURE.iter().enumerate() {
            for (j, &(sign, slot)) in row.iter().enumerate() {
                if sign != 0 {
                    entries[i][j] = BasisProduct::Term {
                        sign,
                        index: OctIndex::from_slot(slot as usize),
                    };
                }
            }
        }
        MulTable { entries }
    }

    /// Regenerates the table from the generating products closed under
    /// subscript negation and multiplication of subscripts by ω. Conflicting
    /// assignments of the same product are returned as discrepancies.
    pub fn from_rules() -> (MulTable, Vec<TableDiscrepancy>) {
        let mut entries: [[Option<BasisProduct>; 8]; 8] = [[None; 8]; 8];
        let mut conflicts = Vec::new();
        for (l, r, prod) in generating_products() {
            for negate in [false, true] {
                let (mut l, mut r, mut prod) = if negate {
                    (l.negated(), r.negated(), prod.neg_subscripts())
                } else {
                    (l, r, prod)
                };
                for _ in 0..3 {
                    let cell = &mut entries[l.slot()][r.slot()];
                    match cell {
                        Some(existing) if *existing != prod => conflicts.push(TableDiscrepancy {
                            left: l.label(),
                            right: r.label(),
                            expected: existing.label(),
                            found: prod.label(),
                        }),
                        _ => *cell = Some(prod),
                    }
                    l = l.times_omega();
                    r = r.times_omega();
                    prod = prod.omega_subscripts();
                }
            }
        }
        let entries = entries.map(|row| row.map(|e| e.unwrap_or(BasisProduct::Zero)));
        (MulTable { entries }, conflicts)
    }

    pub fn get(&self, left: OctIndex, right: OctIndex) -> BasisProduct {
        self.entries[left.slot()][right.slot()]
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries
            .iter()
            .flatten()
            .filter(|e| **e != BasisProduct::Zero)
            .count()
    }

    /// Entries where `other` differs from `self`, `self` taken as the reference.
    pub fn diff(&self, other: &MulTable) -> Vec<TableDiscrepancy> {
        let mut out = Vec::new();
        for l in OctIndex::ALL {
            for r in OctIndex::ALL {
                let (a, b) = (self.get(l, r), other.get(l, r));
                if a != b {
                    out.push(TableDiscrepancy {
                        left: l.label(),
                        right: r.label(),
                        expected: a.label(),
                        found: b.label(),
                    });
                }
            }
        }
        out
    }

    /// Row-major labels, e.g. `rows[7][0] == "-e_{-0}"`.
    pub fn labels(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.label()).collect())
            .collect()
    }
}

/// Product of two basis vectors according to the published table.
pub fn basis_mul(left: OctIndex, right: OctIndex) -> BasisProduct {
    let (sign, slot) = FIGURE[left.slot()][right.slot()];
    if sign == 0 {
        BasisProduct::Zero
    } else {
        BasisProduct::Term {
            sign,
            index: OctIndex::from_slot(slot as usize),
        }
    }
}

/// `x = Σ λ_i e_i` with coefficients in storage order.
#[derive(Clone, PartialEq)]
pub struct Octonion<S> {
    coeffs: [S; 8],
}

impl<S: Scalar> Octonion<S> {
    pub fn new(coeffs: [S; 8]) -> Result<Self> {
        if coeffs.iter().any(|c| !c.same_field(&coeffs[0])) {
            return Err(Error::Domain(
                "octonion coefficients from different fields".into(),
            ));
        }
        Ok(Octonion { coeffs })
    }

    pub fn from_vec(coeffs: Vec<S>) -> Result<Self> {
        let arr: [S; 8] = coeffs
            .try_into()
            .map_err(|v: Vec<S>| Error::Domain(format!("expected 8 coefficients, got {}", v.len())))?;
        Self::new(arr)
    }

    /// Zero octonion over the field of `like`.
    pub fn zero(like: &S) -> Self {
        let z = like.zero_like();
        Octonion {
            coeffs: std::array::from_fn(|_| z.clone()),
        }
    }

    pub fn one(like: &S) -> Self {
        Self::scalar(like.one_like())
    }

    /// `s * 1 = s e_0 + s e_{-0}`.
    pub fn scalar(s: S) -> Self {
        let mut x = Self::zero(&s);
        x.coeffs[OctIndex::ZERO.slot()] = s.clone();
        x.coeffs[OctIndex::NEG_ZERO.slot()] = s;
        x
    }

    pub fn basis(index: OctIndex, like: &S) -> Self {
        let mut x = Self::zero(like);
        x.coeffs[index.slot()] = like.one_like();
        x
    }

    /// Builds `Σ c e_i` from `(index, coefficient)` pairs; repeated indices add up.
    pub fn from_terms(like: &S, terms: &[(OctIndex, S)]) -> Self {
        let mut x = Self::zero(like);
        for (i, c) in terms {
            let slot = i.slot();
            x.coeffs[slot] = x.coeffs[slot].add(c);
        }
        x
    }

    pub fn coeffs(&self) -> &[S; 8] {
        &self.coeffs
    }

    pub fn coeff(&self, index: OctIndex) -> &S {
        &self.coeffs[index.slot()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn same_field(&self, other: &Self) -> bool {
        self.coeffs[0].same_field(&other.coeffs[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::Domain("octonions over different fields".into()))
        }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        Octonion {
            coeffs: std::array::from_fn(|i| f(&self.coeffs[i], &rhs.coeffs[i])),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a.add(b)))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a.sub(b)))
    }

    /// Bilinear extension of the basis table.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(&self.coeffs[0]);
        for (i, row) in FIGURE.iter().enumerate() {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for (j, &(sign, slot)) in row.iter().enumerate() {
                if sign == 0 || rhs.coeffs[j].is_zero() {
                    continue;
                }
                let prod = a.mul(&rhs.coeffs[j]);
                let cell = &mut out.coeffs[slot as usize];
                *cell = if sign > 0 { cell.add(&prod) } else { cell.sub(&prod) };
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Octonion {
            coeffs: std::array::from_fn(|i| self.coeffs[i].neg()),
        }
    }

    /// `s x`.
    pub fn scale(&self, s: &S) -> Self {
        Octonion {
            coeffs: std::array::from_fn(|i| s.mul(&self.coeffs[i])),
        }
    }

    /// `T(x) = λ_0 + λ_{-0}`.
    pub fn trace(&self) -> S {
        self.coeff(OctIndex::ZERO).add(self.coeff(OctIndex::NEG_ZERO))
    }

    /// `N(x) = λ_{-1}λ_1 + λ_{-ω̄}λ_ω̄ + λ_{-ω}λ_ω + λ_{-0}λ_0`.
    pub fn norm(&self) -> S {
        let pair = |a: OctIndex, b: OctIndex| self.coeff(a).mul(self.coeff(b));
        pair(OctIndex::NEG_ONE, OctIndex::ONE)
            .add(&pair(OctIndex::NEG_OMEGA_BAR, OctIndex::OMEGA_BAR))
            .add(&pair(OctIndex::NEG_OMEGA, OctIndex::OMEGA))
            .add(&pair(OctIndex::NEG_ZERO, OctIndex::ZERO))
    }

    pub fn is_invertible(&self) -> bool {
        !self.norm().is_zero()
    }

    /// `x^{-1} = N(x)^{-1} (T(x) - x)`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::NotInvertible(format!("N({self}) = 0")));
        }
        let conj = Self::scalar(self.trace()).zip_with(self, |a, b| a.sub(b));
        Ok(conj.scale(&n.inv()?))
    }

    pub fn square(&self) -> Self {
        self.mul_unchecked(self)
    }

    /// Whether `x^2 = T(x) x - N(x) 1`, with `x^2` computed from the table.
    pub fn square_law_holds(&self) -> bool {
        let rhs = self
            .scale(&self.trace())
            .zip_with(&Self::scalar(self.norm()), |a, b| a.sub(b));
        self.square() == rhs
    }
}

impl Octonion<FieldElem> {
    /// Parses eight comma-separated field-element literals in storage order,
    /// e.g. `0,0,1,1,-1,-1,0,0`.
    pub fn parse(field: &FieldRef, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 8 {
            return Err(Error::syntax(
                0,
                format!("octonion literal needs 8 coefficients, got {}", parts.len()),
            ));
        }
        let mut offset = 0;
        let mut coeffs = Vec::with_capacity(8);
        for part in parts {
            let c = field.parse_elem(part).map_err(|e| match e {
                Error::Syntax { position, message } => Error::Syntax {
                    position: position + offset,
                    message,
                },
                other => other,
            })?;
            coeffs.push(c);
            offset += part.len() + 1;
        }
        Self::from_vec(coeffs)
    }
}

impl<S: Scalar> fmt::Display for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl<S: Scalar> fmt::Debug for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Octonion({self})")
    }
}

impl<S: Scalar> Serialize for Octonion<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut st = serializer.serialize_struct("Octonion", 1)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

macro_rules! oct_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<S: Scalar> $trait<&Octonion<S>> for &Octonion<S> {
            type Output = Octonion<S>;
            fn $method(self, rhs: &Octonion<S>) -> Octonion<S> {
                self.$checked(rhs).expect("octonions over different fields")
            }
        }
    };
}

oct_binop!(Add, add, try_add);
oct_binop!(Sub, sub, try_sub);
oct_binop!(Mul, mul, try_mul);

impl<S: Scalar> Neg for &Octonion<S> {
    type Output = Octonion<S>;
    fn neg(self) -> Octonion<S> {
        Octonion::neg(self)
    }
}

/// `(x, y, z) = (xy)z - x(yz)`.
pub fn associator<S: Scalar>(x: &Octonion<S>, y: &Octonion<S>, z: &Octonion<S>) -> Result<Octonion<S>> {
    x.try_mul(y)?.try_mul(z)?.try_sub(&x.try_mul(&y.try_mul(z)?)?)
}

/// The three Moufang identities
/// `(xax)y = x(a(xy))`, `y(xax) = ((yx)a)x`, `(xy)(ax) = (x(ya))x`.
pub fn moufang_check<S: Scalar>(
    x: &Octonion<S>,
    y: &Octonion<S>,
    a: &Octonion<S>,
) -> Result<(bool, bool, bool)> {
    x.check(y)?;
    x.check(a)?;
    let xax = x * &(a * x);
    let first = &xax * y == x * &(a * &(x * y));
    let second = y * &xax == &(&(y * x) * a) * x;
    let third = &(x * y) * &(a * x) == &(x * &(y * a)) * x;
    Ok((first, second, third))
}

/// Both sides of Hua's identity `a - (a^{-1} + (b^{-1} - a)^{-1})^{-1} = aba`.
#[derive(Clone, Debug, PartialEq)]
pub struct HuaOutcome<S: Scalar> {
    pub lhs: Octonion<S>,
    /// `(ab)a`.
    pub rhs: Octonion<S>,
    pub equal: bool,
    /// Whether `a(ba)` agrees with `(ab)a`.
    pub flexible_agrees: bool,
}

/// Evaluates Hua's identity. Requires `a`, `b`, `ab - 1` and both nested
/// inverted expressions to be invertible; otherwise returns
/// [`Error::Inapplicable`].
pub fn hua_check<S: Scalar>(a: &Octonion<S>, b: &Octonion<S>) -> Result<HuaOutcome<S>> {
    a.check(b)?;
    let like = &a.coeffs[0];
    let one = Octonion::one(like);
    let inapplicable = |what: &str| Error::Inapplicable(format!("{what} is not invertible"));
    let a_inv = a.inverse().map_err(|_| inapplicable("a"))?;
    let b_inv = b.inverse().map_err(|_| inapplicable("b"))?;
    let ab = a * b;
    if !(&ab - &one).is_invertible() {
        return Err(inapplicable("ab - 1"));
    }
    let inner = (&b_inv - a).inverse().map_err(|_| inapplicable("b^-1 - a"))?;
    let outer = (&a_inv + &inner)
        .inverse()
        .map_err(|_| inapplicable("a^-1 + (b^-1 - a)^-1"))?;
    let lhs = a - &outer;
    let rhs = &ab * a;
    let alt = a * &(b * a);
    Ok(HuaOutcome {
        equal: lhs == rhs,
        flexible_agrees: alt == rhs,
        lhs,
        rhs,
    })
}

/// Most words [`artin_word_check`] will generate before giving up.
pub const ARTIN_WORD_LIMIT: usize = 256;

/// Generates the words reachable from `{x, y}` in `depth` rounds, where
/// each round adds all pairwise products and the inverses of invertible
/// words, then checks that every associator of three words vanishes.
pub fn artin_word_check<S: Scalar>(x: &Octonion<S>, y: &Octonion<S>, depth: usize) -> Result<bool> {
    x.check(y)?;
    if depth > 3 {
        return Err(Error::Domain(format!("depth {depth} exceeds 3")));
    }
    let mut words: Vec<Octonion<S>> = vec![x.clone()];
    if y != x {
        words.push(y.clone());
    }
    for _ in 0..depth {
        let mut next = words.clone();
        let push = |w: Octonion<S>, next: &mut Vec<Octonion<S>>| -> Result<()> {
            if !next.contains(&w) {
                next.push(w);
                if next.len() > ARTIN_WORD_LIMIT {
                    return Err(Error::Capacity(format!(
                        "more than {ARTIN_WORD_LIMIT} distinct words"
                    )));
                }
            }
            Ok(())
        };
        for u in &words {
            for v in &words {
                push(u * v, &mut next)?;
            }
            if let Ok(inv) = u.inverse() {
                push(inv, &mut next)?;
            }
        }
        words = next;
    }
    let m = words.len();
    let products: Vec<Vec<Octonion<S>>> = words
        .iter()
        .map(|u| words.iter().map(|v| u * v).collect())
        .collect();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if &products[a][b] * &words[c] != &words[a] * &products[b][c] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

//! Finite fields GF(p) and GF(p^k).
//!
//! Elements of GF(p^k) are polynomials of degree < k over GF(p) reduced
//! modulo a monic irreducible `m(y)`. Internally an element is packed into a
//! single `u32` as `c0 + c1 p + ... + c(k-1) p^(k-1)`, so the natural integer
//! order of the packed value is the enumeration order.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default bound on the number of elements any enumeration may visit.
pub const DEFAULT_MAX_ELEMS: u64 = 1 << 20;

/// Environment variable overriding [`DEFAULT_MAX_ELEMS`].
pub const MAX_ELEMS_ENV: &str = "OCTO_MAX_ELEMS";

// Packed values must fit in a u32 and products of two digits in a u64.
const REPR_LIMIT: u64 = 1 << 31;
const MAX_DEGREE: usize = 31;

/// The enumeration bound in effect: `OCTO_MAX_ELEMS` if set and valid,
/// otherwise [`DEFAULT_MAX_ELEMS`].
pub fn enumeration_bound() -> u64 {
    std::env::var(MAX_ELEMS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_MAX_ELEMS)
}

pub type FieldRef = Arc<FieldSpec>;

/// A finite field GF(p^k) together with its defining modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    k: usize,
    /// Little-endian coefficients `c0..=ck` of the monic modulus; `None` for k = 1.
    modulus: Option<Vec<u32>>,
    order: u64,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(p: u32, k: usize) -> Result<u64> {
    let mut order: u64 = 1;
    for _ in 0..k {
        order = order.saturating_mul(p as u64);
        if order >= REPR_LIMIT {
            return Err(Error::Capacity(format!(
                "GF({p}^{k}) is too large to represent"
            )));
        }
    }
    let bound = enumeration_bound();
    if order > bound {
        return Err(Error::Capacity(format!(
            "GF({p}^{k}) has {order} elements, above the enumeration bound {bound}"
        )));
    }
    Ok(order)
}

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<FieldRef> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        let order = checked_order(p, 1)?;
        Ok(Arc::new(FieldSpec {
            p,
            k: 1,
            modulus: None,
            order,
        }))
    }

    /// GF(p^k) defined by an explicit monic irreducible modulus given as
    /// little-endian coefficients `c0, c1, ..., ck`.
    pub fn extension(p: u32, k: usize, modulus: &[u32]) -> Result<FieldRef> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::Domain(format!("extension degree {k} out of range")));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let order = checked_order(p, k)?;
        if modulus.len() != k + 1 {
            return Err(Error::Domain(format!(
                "modulus of a degree-{k} extension needs {} coefficients, got {}",
                k + 1,
                modulus.len()
            )));
        }
        let m: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        if m[k] != 1 {
            return Err(Error::Domain("modulus must be monic".into()));
        }
        if !poly::is_irreducible(&m, p) {
            return Err(Error::Domain(format!(
                "modulus {} is reducible over GF({p})",
                poly::display(&m, 'y')
            )));
        }
        Ok(Arc::new(FieldSpec {
            p,
            k,
            modulus: Some(m),
            order,
        }))
    }

    /// GF(p^k) with the built-in modulus: y^2+y+1 for GF(4), y^3+y+1 for
    /// GF(8), y^2+1 for GF(9); otherwise the first monic irreducible in
    /// packed-value order.
    pub fn with_default_modulus(p: u32, k: usize) -> Result<FieldRef> {
        match (p, k) {
            (_, 1) => Self::prime(p),
            (2, 2) => Self::extension(2, 2, &[1, 1, 1]),
            (2, 3) => Self::extension(2, 3, &[1, 1, 0, 1]),
            (3, 2) => Self::extension(3, 2, &[1, 0, 1]),
            _ => {
                if !is_prime(p) {
                    return Err(Error::Domain(format!("{p} is not prime")));
                }
                if k == 0 || k > MAX_DEGREE {
                    return Err(Error::Domain(format!("extension degree {k} out of range")));
                }
                checked_order(p, k)?;
                let m = poly::first_irreducible(p, k);
                Self::extension(p, k, &m)
            }
        }
    }

    /// Parses `gf:p`, `gf:p^k` or `gf:p^k:c0,c1,...,ck`. A bare prime power
    /// such as `gf:4` is read as `gf:2^2`.
    pub fn parse(text: &str) -> Result<FieldRef> {
        let text = text.trim();
        let body = text
            .strip_prefix("gf:")
            .ok_or_else(|| Error::syntax(0, "field literal must start with `gf:`"))?;
        let offset = 3;
        let (size, modulus) = match body.find(':') {
            Some(i) => (&body[..i], Some((offset + i + 1, &body[i + 1..]))),
            None => (body, None),
        };
        let (p_text, k_text) = match size.find('^') {
            Some(i) => (&size[..i], Some((offset + i + 1, &size[i + 1..]))),
            None => (size, None),
        };
        let p: u32 = p_text
            .trim()
            .parse()
            .map_err(|_| Error::syntax(offset, format!("bad characteristic `{p_text}`")))?;
        let (p, k): (u32, usize) = match k_text {
            Some((pos, t)) => (
                p,
                t.trim()
                    .parse()
                    .map_err(|_| Error::syntax(pos, format!("bad extension degree `{t}`")))?,
            ),
            // a bare prime power q means GF(q) with the default modulus
            None if modulus.is_none() => prime_power(p).unwrap_or((p, 1)),
            None => (p, 1),
        };
        match modulus {
            None => Self::with_default_modulus(p, k),
            Some((pos, list)) => {
                let coeffs = list
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::syntax(pos, format!("bad modulus coefficient `{c}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::extension(p, k, &coeffs)
            }
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    /// Canonical literal, e.g. `gf:5` or `gf:2^2:1,1,1`.
    pub fn literal(&self) -> String {
        match &self.modulus {
            None => format!("gf:{}", self.p),
            Some(m) => {
                let cs: Vec<String> = m.iter().map(|c| c.to_string()).collect();
                format!("gf:{}^{}:{}", self.p, self.k, cs.join(","))
            }
        }
    }

    fn from_value(self: &Arc<Self>, value: u32) -> FieldElem {
        debug_assert!((value as u64) < self.order);
        FieldElem {
            spec: Arc::clone(self),
            value,
        }
    }

    pub fn zero(self: &Arc<Self>) -> FieldElem {
        self.from_value(0)
    }

    pub fn one(self: &Arc<Self>) -> FieldElem {
        self.from_value(1)
    }

    /// `n * 1`, reduced into the prime subfield.
    pub fn from_int(self: &Arc<Self>, n: i64) -> FieldElem {
        self.from_value(n.rem_euclid(self.p as i64) as u32)
    }

    /// The class of `y` in GF(p)[y]/(m). Only meaningful for k > 1.
    pub fn generator(self: &Arc<Self>) -> Result<FieldElem> {
        if self.k == 1 {
            return Err(Error::Domain("a prime field has no adjoined generator".into()));
        }
        Ok(self.from_value(self.p))
    }

    pub fn from_coords(self: &Arc<Self>, coords: &[u32]) -> Result<FieldElem> {
        if coords.len() != self.k {
            return Err(Error::Domain(format!(
                "expected {} coordinates, got {}",
                self.k,
                coords.len()
            )));
        }
        if let Some(c) = coords.iter().find(|&&c| c >= self.p) {
            return Err(Error::Domain(format!("coordinate {c} not in [0, {})", self.p)));
        }
        Ok(self.from_value(self.pack(coords)))
    }

    /// All elements, ordered by packed value (coordinates compared from the
    /// highest-degree one down).
    pub fn enumerate(self: &Arc<Self>) -> Result<Vec<FieldElem>> {
        let bound = enumeration_bound();
        if self.order > bound {
            return Err(Error::Capacity(format!(
                "{} has {} elements, above the enumeration bound {bound}",
                self.literal(),
                self.order
            )));
        }
        Ok((0..self.order as u32).map(|v| self.from_value(v)).collect())
    }

    /// Element at position `index` of [`FieldSpec::enumerate`].
    pub fn element_at(self: &Arc<Self>, index: u64) -> Result<FieldElem> {
        if index >= self.order {
            return Err(Error::Domain(format!("index {index} out of range")));
        }
        Ok(self.from_value(index as u32))
    }

    /// Parses an element literal: an integer (`3`, `-1`) or a polynomial in
    /// `y` such as `y^2+2y+1`. Integers are reduced modulo p.
    pub fn parse_elem(self: &Arc<Self>, text: &str) -> Result<FieldElem> {
        elem_literal::parse(self, text)
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p as u64 + d as u64) as u32
    }

    fn unpack(&self, mut value: u32, out: &mut [u32; MAX_DEGREE]) {
        for d in out.iter_mut().take(self.k) {
            *d = value % self.p;
            value /= self.p;
        }
    }

    fn add_values(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (mut da, mut db) = ([0; MAX_DEGREE], [0; MAX_DEGREE]);
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        for i in 0..self.k {
            da[i] = (da[i] + db[i]) % self.p;
        }
        self.pack(&da[..self.k])
    }

    fn neg_value(&self, a: u32) -> u32 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let mut da = [0; MAX_DEGREE];
        self.unpack(a, &mut da);
        for d in da.iter_mut().take(self.k) {
            *d = (self.p - *d) % self.p;
        }
        self.pack(&da[..self.k])
    }

    fn mul_values(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.k == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let k = self.k;
        let (mut da, mut db) = ([0; MAX_DEGREE], [0; MAX_DEGREE]);
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        let m = self.modulus.as_ref().expect("extension field has a modulus");
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg] % p;
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for i in 0..k {
                let sub = c * m[i] as u64 % p;
                prod[deg - k + i] = (prod[deg - k + i] + p - sub) % p;
            }
        }
        let digits: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.pack(&digits)
    }

    fn inv_value(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.k == 1 {
            return Some(inv_mod(a, self.p));
        }
        let mut da = [0; MAX_DEGREE];
        self.unpack(a, &mut da);
        let m = self.modulus.as_ref().expect("extension field has a modulus");
        let inv = poly::inverse_mod(&da[..self.k], m, self.p)?;
        let mut digits = vec![0u32; self.k];
        digits[..inv.len()].copy_from_slice(&inv);
        Some(self.pack(&digits))
    }
}

/// `(p, k)` with `q = p^k`, `k >= 2`, or `None` if `q` is not such a power.
fn prime_power(q: u32) -> Option<(u32, usize)> {
    let p = (2..=q).take_while(|&d| (d as u64) * (d as u64) <= q as u64).find(|d| q % d == 0)?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1 && k >= 2).then_some((p, k))
}

/// Inverse of a nonzero residue modulo a prime by the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i64) as u32
}

/// An element of a [`FieldSpec`].
#[derive(Clone)]
pub struct FieldElem {
    spec: FieldRef,
    value: u32,
}

impl FieldElem {
    pub fn spec(&self) -> &FieldRef {
        &self.spec
    }

    /// Packed integer value; equal to the element's enumeration index.
    pub fn value(&self) -> u32 {
        self.value
    }

    /// Little-endian coordinates in the basis 1, y, ..., y^(k-1).
    pub fn coords(&self) -> Vec<u32> {
        let mut d = [0; MAX_DEGREE];
        self.spec.unpack(self.value, &mut d);
        d[..self.spec.k].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn same_field(&self, other: &FieldElem) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec
    }

    fn check(&self, other: &FieldElem) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "operands from different fields: {} and {}",
                self.spec.literal(),
                other.spec.literal()
            )))
        }
    }

    fn with_value(&self, value: u32) -> FieldElem {
        FieldElem {
            spec: Arc::clone(&self.spec),
            value,
        }
    }

    pub fn checked_add(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.check(rhs)?;
        Ok(self.with_value(self.spec.add_values(self.value, rhs.value)))
    }

    pub fn checked_sub(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.check(rhs)?;
        let neg = self.spec.neg_value(rhs.value);
        Ok(self.with_value(self.spec.add_values(self.value, neg)))
    }

    pub fn checked_mul(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.check(rhs)?;
        Ok(self.with_value(self.spec.mul_values(self.value, rhs.value)))
    }

    pub fn inverse(&self) -> Result<FieldElem> {
        self.spec
            .inv_value(self.value)
            .map(|v| self.with_value(v))
            .ok_or_else(|| Error::NotInvertible("zero has no inverse".into()))
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn square(&self) -> FieldElem {
        self * self
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.same_field(other)
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.spec.literal())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.k == 1 {
            write!(f, "{}", self.value)
        } else {
            f.write_str(&poly::display(&self.coords(), 'y'))
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$checked(rhs).expect("field arithmetic on mismatched fields")
            }
        }
        impl $trait for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.with_value(self.spec.neg_value(self.value))
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl Scalar for FieldElem {
    fn zero_like(&self) -> Self {
        self.with_value(0)
    }
    fn one_like(&self) -> Self {
        self.with_value(1)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn same_field(&self, other: &Self) -> bool {
        FieldElem::same_field(self, other)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        self.inverse()
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.spec.from_int(n)
    }
}

/// Dense polynomials over GF(p) as little-endian coefficient vectors.
/// Used for modulus checks and inversion in extension fields.
mod poly {
    use super::inv_mod;

    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub(super) fn display(coeffs: &[u32], var: char) -> String {
        let mut terms = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            let term = match i {
                0 => coef,
                1 => format!("{coef}{var}"),
                _ => format!("{coef}{var}^{i}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// (quotient, remainder) of `a` by `b`, `b` nonzero.
    pub(super) fn divmod(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        assert!(!b.is_empty(), "division by the zero polynomial");
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(*b.last().unwrap(), p) as u64;
        let mut q = vec![0u32; r.len() - b.len() + 1];
        let p64 = p as u64;
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = (*r.last().unwrap() as u64 * lead_inv % p64) as u32;
            q[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                let sub = c as u64 * bc as u64 % p64;
                r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
            }
            r = trim(r);
        }
        (q, r)
    }

    fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    /// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
    pub(super) fn inverse_mod(a: &[u32], m: &[u32], p: u32) -> Option<Vec<u32>> {
        let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
        let (mut t0, mut t1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1, p);
            let t = sub(&t0, &mul(&q, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv_mod(r0[0], p) as u64;
        Some(
            t0.into_iter()
                .map(|x| (x as u64 * c % p as u64) as u32)
                .collect(),
        )
    }

    /// Monic polynomials of degree `d`, in packed-value order of the lower coefficients.
    fn monics(p: u32, d: usize) -> impl Iterator<Item = Vec<u32>> {
        let count = (p as u64).pow(d as u32);
        (0..count).map(move |mut v| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((v % p as u64) as u32);
                v /= p as u64;
            }
            c.push(1);
            c
        })
    }

    /// Trial division by every monic of degree 1..=deg/2.
    pub(super) fn is_irreducible(m: &[u32], p: u32) -> bool {
        let m = trim(m.to_vec());
        let deg = m.len() - 1;
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            for f in monics(p, d) {
                if divmod(&m, &f, p).1.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub(super) fn first_irreducible(p: u32, k: usize) -> Vec<u32> {
        monics(p, k)
            .find(|m| is_irreducible(m, p))
            .expect("irreducible polynomials exist in every degree")
    }
}

mod elem_literal {
    use super::{FieldElem, FieldRef};
    use crate::error::{Error, Result};

    struct Cursor<'a> {
        bytes: &'a [u8],
        pos: usize,
    }

    impl Cursor<'_> {
        fn skip_ws(&mut self) {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }
        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.bytes.get(self.pos).copied()
        }
        fn uint(&mut self) -> Option<u64> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return None;
            }
            std::str::from_utf8(&self.bytes[start..self.pos]).ok()?.parse().ok()
        }
    }

    pub(super) fn parse(spec: &FieldRef, text: &str) -> Result<FieldElem> {
        let mut cur = Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let p = spec.characteristic() as u64;
        let mut acc = spec.zero();
        let mut first = true;
        loop {
            let negative = match cur.peek() {
                Some(b'+') if !first => {
                    cur.pos += 1;
                    false
                }
                Some(b'-') => {
                    cur.pos += 1;
                    true
                }
                None if first => return Err(Error::syntax(cur.pos, "empty field element")),
                _ if first => false,
                Some(_) => return Err(Error::syntax(cur.pos, "expected `+` or `-`")),
                None => break,
            };
            first = false;
            let start = cur.pos;
            let coef = cur.uint();
            if coef.is_some() && cur.peek() == Some(b'*') {
                cur.pos += 1;
            }
            let mut term = spec.from_int((coef.unwrap_or(1) % p) as i64);
            if cur.peek() == Some(b'y') {
                cur.pos += 1;
                let exp = if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    cur.uint()
                        .ok_or_else(|| Error::syntax(cur.pos, "expected exponent"))?
                } else {
                    1
                };
                let y = spec
                    .generator()
                    .map_err(|_| Error::syntax(cur.pos, "`y` is not defined in a prime field"))?;
                term = &term * &y.pow(exp);
            } else if coef.is_none() {
                return Err(Error::syntax(start, "expected an integer or `y`"));
            }
            acc = if negative { &acc - &term } else { &acc + &term };
            if cur.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> FieldRef {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn bare_prime_powers() {
        assert_eq!(FieldSpec::parse("gf:4").unwrap(), FieldSpec::parse("gf:2^2").unwrap());
        assert_eq!(FieldSpec::parse("gf:27").unwrap().degree(), 3);
        assert!(FieldSpec::parse("gf:6").is_err());
        assert!(FieldSpec::parse("gf:1").is_err());
        assert_eq!(FieldSpec::parse("gf:7").unwrap().degree(), 1);
        assert_eq!(prime_power(4294967291), None);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = gf(7);
        assert_eq!(&f.from_int(3) + &f.from_int(5), f.from_int(1));
        assert_eq!(&f.from_int(3) * &f.from_int(5), f.from_int(15 % 7));
        assert_eq!(f.from_int(3).inverse().unwrap(), f.from_int(5));
        assert_eq!(f.from_int(-1), f.from_int(6));
    }

    #[test]
    fn gf4_generator_squares_to_g_plus_one() {
        let f = FieldSpec::with_default_modulus(2, 2).unwrap();
        let g = f.generator().unwrap();
        let g_plus_1 = &g + &f.one();
        assert_eq!(&g * &g, g_plus_1);
        assert_eq!(g_plus_1.coords(), vec![1, 1]);
        assert_eq!(g_plus_1.to_string(), "y+1");
    }

    #[test]
    fn inverse_edge_cases() {
        for p in [2, 3, 5] {
            assert_eq!(gf(p).one().inverse().unwrap(), gf(p).one());
        }
        assert!(matches!(gf(2).zero().inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = gf(5).one();
        let b = gf(7).one();
        assert!(matches!(a.checked_add(&b), Err(Error::Domain(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::Domain(_))));
    }

    #[test]
    fn enumeration_small_fields() {
        let v: Vec<u32> = gf(2).enumerate().unwrap().iter().map(|e| e.value()).collect();
        assert_eq!(v, vec![0, 1]);
        let v: Vec<u32> = gf(3).enumerate().unwrap().iter().map(|e| e.value()).collect();
        assert_eq!(v, vec![0, 1, 2]);
        let gf4 = FieldSpec::with_default_modulus(2, 2).unwrap().enumerate().unwrap();
        assert_eq!(gf4.len(), 4);
        let distinct: std::collections::HashSet<_> = gf4.iter().collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn coords_round_trip_gf9() {
        let f = FieldSpec::with_default_modulus(3, 2).unwrap();
        for a in f.enumerate().unwrap() {
            assert_eq!(f.from_coords(&a.coords()).unwrap(), a);
        }
        assert_eq!(f.zero().coords(), vec![0, 0]);
        assert!(matches!(f.from_coords(&[1]), Err(Error::Domain(_))));
        assert!(matches!(f.from_coords(&[3, 0]), Err(Error::Domain(_))));
    }

    #[test]
    fn coords_are_additive() {
        let f = FieldSpec::with_default_modulus(3, 2).unwrap();
        let all = f.enumerate().unwrap();
        for a in &all {
            for b in &all {
                let sum: Vec<u32> = a
                    .coords()
                    .iter()
                    .zip(b.coords())
                    .map(|(x, y)| (x + y) % 3)
                    .collect();
                assert_eq!((a + b).coords(), sum);
            }
        }
    }

    #[test]
    fn reducible_or_bad_modulus_rejected() {
        // y^2 + 1 = (y + 1)^2 over GF(2)
        assert!(FieldSpec::extension(2, 2, &[1, 0, 1]).is_err());
        // y^2 - 1 over GF(3)
        assert!(FieldSpec::extension(3, 2, &[2, 0, 1]).is_err());
        // not monic
        assert!(FieldSpec::extension(3, 2, &[1, 0, 2]).is_err());
        // wrong length
        assert!(FieldSpec::extension(2, 3, &[1, 1, 1]).is_err());
        // composite characteristic
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
    }

    #[test]
    fn default_moduli() {
        assert_eq!(
            FieldSpec::with_default_modulus(2, 3).unwrap().modulus(),
            Some(&[1, 1, 0, 1][..])
        );
        assert_eq!(
            FieldSpec::with_default_modulus(3, 2).unwrap().modulus(),
            Some(&[1, 0, 1][..])
        );
        let f = FieldSpec::with_default_modulus(5, 2).unwrap();
        assert_eq!(f.order(), 25);
        assert!(poly::is_irreducible(f.modulus().unwrap(), 5));
    }

    #[test]
    fn field_literals() {
        assert_eq!(FieldSpec::parse("gf:5").unwrap().order(), 5);
        let f = FieldSpec::parse("gf:2^2").unwrap();
        assert_eq!(f.order(), 4);
        assert_eq!(f.literal(), "gf:2^2:1,1,1");
        let f = FieldSpec::parse("gf:2^3:1,0,1,1").unwrap();
        assert_eq!(f.modulus(), Some(&[1, 0, 1, 1][..]));
        assert!(matches!(FieldSpec::parse("gf:7^9"), Err(Error::Capacity(_))));
        assert!(matches!(FieldSpec::parse("z5"), Err(Error::Syntax { .. })));
        assert!(matches!(FieldSpec::parse("gf:x"), Err(Error::Syntax { .. })));
        assert!(matches!(FieldSpec::parse("gf:6"), Err(Error::Domain(_))));
    }

    #[test]
    fn element_literals() {
        let f = gf(5);
        assert_eq!(f.parse_elem("-1").unwrap(), f.from_int(4));
        assert_eq!(f.parse_elem(" 7 ").unwrap(), f.from_int(2));
        assert!(f.parse_elem("y").is_err());
        assert!(f.parse_elem("").is_err());
        let g = FieldSpec::parse("gf:3^2").unwrap();
        let y = g.generator().unwrap();
        assert_eq!(g.parse_elem("2y+1").unwrap(), &(&y + &y) + &g.one());
        assert_eq!(g.parse_elem("y^2").unwrap(), -g.one());
        for a in g.enumerate().unwrap() {
            assert_eq!(g.parse_elem(&a.to_string()).unwrap(), a);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        let fields = vec![
            gf(2),
            gf(3),
            gf(5),
            gf(7),
            FieldSpec::parse("gf:2^2").unwrap(),
            FieldSpec::parse("gf:2^3").unwrap(),
            FieldSpec::parse("gf:3^2").unwrap(),
            FieldSpec::parse("gf:2^4").unwrap(),
            FieldSpec::parse("gf:2^6").unwrap(),
        ];
        for f in fields {
            assert!(f.order() <= 64);
            let all = f.enumerate().unwrap();
            for a in &all {
                if !a.is_zero() {
                    assert_eq!(a * &a.inverse().unwrap(), f.one());
                }
                for b in &all {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    assert_eq!(&(a - b) + b, a.clone());
                    for c in &all {
                        assert_eq!(&(a + b) + c, a + &(b + c));
                        assert_eq!(&(a * b) * c, a * &(b * c));
                        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_and_perfectness_in_characteristic_two() {
        for k in 1..=6 {
            let f = FieldSpec::with_default_modulus(2, k).unwrap();
            let all = f.enumerate().unwrap();
            for a in &all {
                for b in &all {
                    assert_eq!((a + b).square(), &a.square() + &b.square());
                }
            }
            let squares: std::collections::HashSet<u32> =
                all.iter().map(|a| a.square().value()).collect();
            assert_eq!(squares.len() as u64, f.order());
        }
    }
}

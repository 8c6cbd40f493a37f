//! Polynomials over GF(2) and the rational function field Z2(t).
//!
//! Every nonzero polynomial over GF(2) is monic, so a fully reduced fraction
//! is a unique representative and structural equality is field equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest degree any intermediate polynomial may reach.
pub const DEGREE_CAP: usize = 4096;

fn cap_check(degree: usize) -> Result<()> {
    if degree > DEGREE_CAP {
        Err(Error::Capacity(format!(
            "polynomial degree {degree} exceeds the cap {DEGREE_CAP}"
        )))
    } else {
        Ok(())
    }
}

/// A polynomial over GF(2), stored as a little-endian bit vector with no
/// trailing zero limbs.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    limbs: Vec<u64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn t() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(exp: usize) -> Self {
        let mut limbs = vec![0u64; exp / 64 + 1];
        limbs[exp / 64] = 1 << (exp % 64);
        Poly2 { limbs }
    }

    /// Builds a polynomial from little-endian coefficients (nonzero = 1).
    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let mut p = Poly2 {
            limbs: vec![0; coeffs.len() / 64 + 1],
        };
        for (i, &c) in coeffs.iter().enumerate() {
            if c & 1 == 1 {
                p.limbs[i / 64] |= 1 << (i % 64);
            }
        }
        p.trim()
    }

    /// Sum of `t^e` over the given exponents (repeated exponents cancel).
    pub fn from_exponents(exps: &[usize]) -> Self {
        exps.iter()
            .fold(Poly2::zero(), |acc, &e| &acc + &Poly2::monomial(e))
    }

    fn trim(mut self) -> Self {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs.len() == 1 && self.limbs[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|l| (l >> (i % 64)) & 1 == 1)
    }

    /// Exponents with coefficient 1, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (li, &limb) in self.limbs.iter().enumerate() {
            let mut bits = limb;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(li * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn term_count(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    fn xor_shifted(&mut self, other: &Poly2, shift: usize) {
        if other.is_zero() {
            return;
        }
        let (ws, bs) = (shift / 64, shift % 64);
        let needed = other.limbs.len() + ws + 1;
        if self.limbs.len() < needed {
            self.limbs.resize(needed, 0);
        }
        for (i, &l) in other.limbs.iter().enumerate() {
            self.limbs[i + ws] ^= l << bs;
            if bs != 0 {
                self.limbs[i + ws + 1] ^= l >> (64 - bs);
            }
        }
    }

    /// `self * t^shift`.
    pub fn shl(&self, shift: usize) -> Poly2 {
        let mut out = Poly2::zero();
        out.xor_shifted(self, shift);
        out.trim()
    }

    /// Carry-less product without the degree cap check.
    fn mul_unchecked(&self, rhs: &Poly2) -> Poly2 {
        let (sparse, dense) = if self.term_count() <= rhs.term_count() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Poly2::zero();
        for e in sparse.exponents() {
            out.xor_shifted(dense, e);
        }
        out.trim()
    }

    pub fn checked_mul(&self, rhs: &Poly2) -> Result<Poly2> {
        if let (Some(a), Some(b)) = (self.degree(), rhs.degree()) {
            cap_check(a + b)?;
        }
        Ok(self.mul_unchecked(rhs))
    }

    /// Quotient and remainder; `rhs` must be nonzero.
    pub fn divmod(&self, rhs: &Poly2) -> Result<(Poly2, Poly2)> {
        let db = rhs
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let mut r = self.clone();
        let mut q = Poly2::zero();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let shift = dr - db;
            q.xor_shifted(&Poly2::one(), shift);
            r.xor_shifted(rhs, shift);
            r = r.trim();
        }
        Ok((q.trim(), r))
    }

    /// The unique monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &Poly2) -> Poly2 {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.divmod(&b).expect("b is nonzero").1;
            a = std::mem::replace(&mut b, r);
        }
        a
    }

    /// Splits `u(t) = P(t^2) + Q(t^2) t`, returning `(P, Q)`.
    pub fn even_odd_split(&self) -> (Poly2, Poly2) {
        let (mut even, mut odd) = (Vec::new(), Vec::new());
        for e in self.exponents() {
            if e % 2 == 0 {
                even.push(e / 2);
            } else {
                odd.push(e / 2);
            }
        }
        (Poly2::from_exponents(&even), Poly2::from_exponents(&odd))
    }

    /// `P(t^2)`, which over GF(2) equals `P(t)^2`.
    pub fn frobenius_expand(&self) -> Poly2 {
        let exps: Vec<usize> = self.exponents().into_iter().map(|e| 2 * e).collect();
        Poly2::from_exponents(&exps)
    }

    /// Inverse of [`Poly2::even_odd_split`]: `P(t^2) + Q(t^2) t`.
    pub fn from_even_odd(even: &Poly2, odd: &Poly2) -> Poly2 {
        &even.frobenius_expand() + &odd.frobenius_expand().shl(1)
    }

    /// Random polynomial of degree at most `max_degree` with fair coefficient bits.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> Poly2 {
        let bits: Vec<u8> = (0..=max_degree).map(|_| rng.random::<bool>() as u8).collect();
        Poly2::from_coeffs(&bits)
    }
}

impl Add<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out.xor_shifted(rhs, 0);
        out.trim()
    }
}

impl Mul<&Poly2> for &Poly2 {
    type Output = Poly2;
    /// Panics if the product exceeds [`DEGREE_CAP`]; see [`Poly2::checked_mul`].
    fn mul(self, rhs: &Poly2) -> Poly2 {
        self.checked_mul(rhs).expect("polynomial degree cap exceeded")
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

/// An element of Z2(t) in canonical (fully reduced) form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc2 {
    num: Poly2,
    den: Poly2,
}

impl RatFunc2 {
    /// `num / den` reduced to lowest terms.
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return Ok(RatFunc2 { num, den });
        }
        Ok(RatFunc2 {
            num: num.divmod(&g)?.0,
            den: den.divmod(&g)?.0,
        })
    }

    pub fn zero() -> Self {
        RatFunc2 {
            num: Poly2::zero(),
            den: Poly2::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly2::one())
    }

    pub fn t() -> Self {
        Self::from_poly(Poly2::t())
    }

    pub fn from_poly(p: Poly2) -> Self {
        RatFunc2 {
            num: p,
            den: Poly2::one(),
        }
    }

    /// `t^n` for any integer `n`.
    pub fn t_pow(n: i64) -> Self {
        let m = Poly2::monomial(n.unsigned_abs() as usize);
        if n >= 0 {
            Self::from_poly(m)
        } else {
            RatFunc2 {
                num: Poly2::one(),
                den: m,
            }
        }
    }

    pub fn numerator(&self) -> &Poly2 {
        &self.num
    }

    pub fn denominator(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den.clone());
        }
        let n = &self.num.checked_mul(&rhs.den)? + &rhs.num.checked_mul(&self.den)?;
        Self::new(n, self.den.checked_mul(&rhs.den)?)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Self::new(
            self.num.checked_mul(&rhs.num)?,
            self.den.checked_mul(&rhs.den)?,
        )
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero has no inverse in Z2(t)".into()));
        }
        Ok(RatFunc2 {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(&rhs.try_inv()?)
    }

    pub fn square(&self) -> Self {
        RatFunc2 {
            num: self.num.frobenius_expand(),
            den: self.den.frobenius_expand(),
        }
    }

    /// Parses the literal grammar
    /// `ratfunc := sum ("/" sum)?`, `sum := term ("+" term)*`,
    /// `term := "0" | "1" | "t" ("^" uint)? | "(" sum ")"`.
    pub fn parse(text: &str) -> Result<Self> {
        parser::parse(text)
    }

    /// Numerator and denominator degrees uniform in `[0, max_degree]`, fair
    /// coefficient bits, denominator resampled while zero.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> Self {
        let dn = rng.random_range(0..=max_degree);
        let num = Poly2::random(rng, dn);
        let den = loop {
            let dd = rng.random_range(0..=max_degree);
            let d = Poly2::random(rng, dd);
            if !d.is_zero() {
                break d;
            }
        };
        Self::new(num, den).expect("denominator is nonzero")
    }

    /// Like [`RatFunc2::random`] but never zero.
    pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> Self {
        loop {
            let x = Self::random(rng, max_degree);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

fn wrap(p: &Poly2) -> String {
    if p.term_count() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

impl fmt::Display for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc2({self})")
    }
}

impl Add<&RatFunc2> for &RatFunc2 {
    type Output = RatFunc2;
    fn add(self, rhs: &RatFunc2) -> RatFunc2 {
        self.try_add(rhs).expect("polynomial degree cap exceeded")
    }
}

impl Sub<&RatFunc2> for &RatFunc2 {
    type Output = RatFunc2;
    fn sub(self, rhs: &RatFunc2) -> RatFunc2 {
        self + rhs
    }
}

impl Mul<&RatFunc2> for &RatFunc2 {
    type Output = RatFunc2;
    fn mul(self, rhs: &RatFunc2) -> RatFunc2 {
        self.try_mul(rhs).expect("polynomial degree cap exceeded")
    }
}

impl Neg for &RatFunc2 {
    type Output = RatFunc2;
    fn neg(self) -> RatFunc2 {
        self.clone()
    }
}

impl Scalar for RatFunc2 {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc2::is_zero(self)
    }
    fn same_field(&self, _other: &Self) -> bool {
        true
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        self.clone()
    }
    fn inv(&self) -> Result<Self> {
        self.try_inv()
    }
    fn from_int_like(&self, n: i64) -> Self {
        if n.rem_euclid(2) == 1 {
            Self::one()
        } else {
            Self::zero()
        }
    }
}

mod parser {
    use super::{cap_check, Poly2, RatFunc2};
    use crate::error::{Error, Result};

    struct Parser<'a> {
        bytes: &'a [u8],
        pos: usize,
    }

    impl Parser<'_> {
        fn peek(&mut self) -> Option<u8> {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            self.bytes.get(self.pos).copied()
        }

        fn expect(&mut self, c: u8) -> Result<()> {
            if self.peek() == Some(c) {
                self.pos += 1;
                Ok(())
            } else {
                Err(Error::syntax(self.pos, format!("expected `{}`", c as char)))
            }
        }

        fn sum(&mut self) -> Result<Poly2> {
            let mut acc = self.term()?;
            while self.peek() == Some(b'+') {
                self.pos += 1;
                acc = &acc + &self.term()?;
            }
            Ok(acc)
        }

        fn term(&mut self) -> Result<Poly2> {
            match self.peek() {
                Some(b'0') => {
                    self.pos += 1;
                    Ok(Poly2::zero())
                }
                Some(b'1') => {
                    self.pos += 1;
                    Ok(Poly2::one())
                }
                Some(b't') => {
                    self.pos += 1;
                    if self.peek() != Some(b'^') {
                        return Ok(Poly2::t());
                    }
                    self.pos += 1;
                    self.peek();
                    let start = self.pos;
                    while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                    if digits.is_empty() {
                        return Err(Error::syntax(start, "expected an exponent"));
                    }
                    let exp: usize = digits
                        .parse()
                        .map_err(|_| Error::Capacity(format!("exponent {digits} too large")))?;
                    cap_check(exp)?;
                    Ok(Poly2::monomial(exp))
                }
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.sum()?;
                    self.expect(b')')?;
                    Ok(inner)
                }
                Some(c) => Err(Error::syntax(
                    self.pos,
                    format!("unexpected `{}`", c as char),
                )),
                None => Err(Error::syntax(self.pos, "unexpected end of input")),
            }
        }
    }

    pub(super) fn parse(text: &str) -> Result<RatFunc2> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let num = p.sum()?;
        let den = if p.peek() == Some(b'/') {
            p.pos += 1;
            p.sum()?
        } else {
            Poly2::one()
        };
        if let Some(c) = p.peek() {
            return Err(Error::syntax(p.pos, format!("unexpected `{}`", c as char)));
        }
        RatFunc2::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rf(s: &str) -> RatFunc2 {
        RatFunc2::parse(s).unwrap()
    }

    fn p(exps: &[usize]) -> Poly2 {
        Poly2::from_exponents(exps)
    }

    #[test]
    fn poly_examples() {
        let t1 = p(&[1, 0]);
        assert!((&t1 + &t1).is_zero());
        assert_eq!(&t1 * &t1, p(&[2, 0]));
        assert_eq!(p(&[2, 1]).gcd(&p(&[1])), p(&[1]));
        assert_eq!(Poly2::zero().degree(), None);
        assert_eq!(p(&[70, 3]).degree(), Some(70));
    }

    #[test]
    fn divmod_examples() {
        // t^3 + 1 = (t + 1)(t^2 + t + 1)
        let (q, r) = p(&[3, 0]).divmod(&p(&[1, 0])).unwrap();
        assert_eq!(q, p(&[2, 1, 0]));
        assert!(r.is_zero());
        let (q, r) = p(&[3]).divmod(&p(&[2, 0])).unwrap();
        assert_eq!((q, r), (p(&[1]), p(&[1])));
        assert!(matches!(p(&[1]).divmod(&Poly2::zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn split_examples() {
        assert_eq!(p(&[3, 2, 0]).even_odd_split(), (p(&[1, 0]), p(&[1])));
        assert_eq!(Poly2::zero().even_odd_split(), (Poly2::zero(), Poly2::zero()));
        assert_eq!(Poly2::one().even_odd_split(), (Poly2::one(), Poly2::zero()));
        let (e, o) = p(&[3, 2, 0]).even_odd_split();
        assert_eq!(Poly2::from_even_odd(&e, &o), p(&[3, 2, 0]));
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(p(&[1, 0]).frobenius_expand(), p(&[2, 0]));
        assert_eq!(Poly2::zero().frobenius_expand(), Poly2::zero());
        assert_eq!(p(&[3]).frobenius_expand(), p(&[6]));
        let q = p(&[9, 4, 1, 0]);
        assert_eq!(q.frobenius_expand(), &q * &q);
    }

    #[test]
    fn ratfunc_examples() {
        let x = rf("(t^2+1)/(t^3+t+1)");
        assert!((&x + &x).is_zero());
        assert_eq!(rf("t/(t+1)").try_inv().unwrap(), rf("(t+1)/t"));
        assert_eq!(&rf("1/t") * &rf("t/(t+1)"), rf("1/(t+1)"));
        assert!(matches!(RatFunc2::zero().try_inv(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn parse_examples() {
        let x = rf("(t^3+t+1)/(t^2+t)");
        assert_eq!(x.numerator(), &p(&[3, 1, 0]));
        assert_eq!(x.denominator(), &p(&[2, 1]));
        assert_eq!(x.to_string(), "(t^3+t+1)/(t^2+t)");
        assert_eq!(rf("1"), RatFunc2::one());
        assert_eq!(rf(" ( t + 1 ) / ( t^2 + 1 ) "), rf("1/(t+1)"));
        assert!(matches!(RatFunc2::parse("t/(t+t)"), Err(Error::Domain(_))));
        assert!(matches!(
            RatFunc2::parse("t+"),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(matches!(RatFunc2::parse("2t"), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(RatFunc2::parse("t^"), Err(Error::Syntax { .. })));
        assert!(matches!(RatFunc2::parse("(t+1"), Err(Error::Syntax { .. })));
        assert!(matches!(RatFunc2::parse("t/t/t"), Err(Error::Syntax { .. })));
        assert!(matches!(RatFunc2::parse("t^5000"), Err(Error::Capacity(_))));
    }

    #[test]
    fn printing() {
        assert_eq!(RatFunc2::zero().to_string(), "0");
        assert_eq!(RatFunc2::t_pow(3).to_string(), "t^3");
        assert_eq!(RatFunc2::t_pow(-2).to_string(), "1/t^2");
        assert_eq!(rf("t/(t+1)").to_string(), "t/(t+1)");
    }

    #[test]
    fn degree_cap_enforced() {
        let big = Poly2::monomial(3000);
        assert!(matches!(big.checked_mul(&big), Err(Error::Capacity(_))));
    }

    #[test]
    fn field_axioms_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let a = RatFunc2::random(&mut rng, 8);
            let b = RatFunc2::random(&mut rng, 8);
            let c = RatFunc2::random(&mut rng, 8);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                assert_eq!(&a * &a.try_inv().unwrap(), RatFunc2::one());
            }
        }
    }

    #[test]
    fn canonical_form_is_unique() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2_000 {
            let x = RatFunc2::random(&mut rng, 8);
            let w = loop {
                let d = rng.random_range(0..=8);
                let w = Poly2::random(&mut rng, d);
                if !w.is_zero() {
                    break w;
                }
            };
            let y = RatFunc2::new(x.numerator() * &w, x.denominator() * &w).unwrap();
            assert_eq!(x, y);
            assert_eq!(x.numerator().gcd(x.denominator()), Poly2::one());
        }
    }
}

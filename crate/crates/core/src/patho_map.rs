//! The additive maps `f = g` on Z2(t) fixed by `f(1) = A`, `f(t) = B`.
//!
//! Writing `x = (P(t^2) + Q(t^2) t) / (R(t^2) + S(t^2) t)`, the map is
//!
//! ```text
//! f(x) = ((P R + Q S t) / (R(t^2) + S(t^2) t))^2 A
//!      + ((P S + Q R)   / (R(t^2) + S(t^2) t))^2 B
//! ```
//!
//! It satisfies `f(x) + x^2 f(x^{-1}) = 0` for all nonzero `x`, and is of the
//! form `x -> x q` only when `B = t A`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratfunc2::{Poly2, RatFunc2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathoMap {
    #[serde(rename = "A", serialize_with = "as_literal")]
    a: RatFunc2,
    #[serde(rename = "B", serialize_with = "as_literal")]
    b: RatFunc2,
}

fn as_literal<Z: serde::Serializer>(x: &RatFunc2, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
    s.serialize_str(&x.to_string())
}

impl PathoMap {
    pub fn new(a: RatFunc2, b: RatFunc2) -> Self {
        PathoMap { a, b }
    }

    /// `f(1)`.
    pub fn a(&self) -> &RatFunc2 {
        &self.a
    }

    /// `f(t)`.
    pub fn b(&self) -> &RatFunc2 {
        &self.b
    }

    /// Evaluates `f(x)` on the canonical representative of `x`.
    pub fn eval(&self, x: &RatFunc2) -> Result<RatFunc2> {
        self.eval_representation(x.numerator(), x.denominator())
    }

    /// Evaluates the defining formula on an arbitrary (possibly unreduced)
    /// representation `num / den`.
    pub fn eval_representation(&self, num: &Poly2, den: &Poly2) -> Result<RatFunc2> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let (p, q) = num.even_odd_split();
        let (r, s) = den.even_odd_split();
        let t = Poly2::t();
        let first = &p.checked_mul(&r)? + &q.checked_mul(&s)?.checked_mul(&t)?;
        let second = &p.checked_mul(&s)? + &q.checked_mul(&r)?;
        // R(t^2) + S(t^2) t is the denominator itself.
        let first = RatFunc2::new(first, den.clone())?.square();
        let second = RatFunc2::new(second, den.clone())?.square();
        first.try_mul(&self.a)?.try_add(&second.try_mul(&self.b)?)
    }

    /// Whether `f(x) + x^2 f(x^{-1}) = 0`. `x` must be nonzero.
    pub fn check_identity(&self, x: &RatFunc2) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::Domain("the identity is only imposed on nonzero x".into()));
        }
        let lhs = self.eval(x)?;
        let rhs = x.square().try_mul(&self.eval(&x.try_inv()?)?)?;
        Ok(lhs.try_add(&rhs)?.is_zero())
    }

    /// Whether `f(a^2 b) = a^2 f(b)`.
    pub fn check_square_law(&self, a: &RatFunc2, b: &RatFunc2) -> Result<bool> {
        let a2 = a.square();
        Ok(self.eval(&a2.try_mul(b)?)? == a2.try_mul(&self.eval(b)?)?)
    }

    /// Whether evaluating on `(n w) / (d w)` agrees with evaluating on the
    /// reduced `n / d`. `w` must be nonzero.
    pub fn welldef_check(&self, x: &RatFunc2, w: &Poly2) -> Result<bool> {
        if w.is_zero() {
            return Err(Error::Domain("scaling polynomial must be nonzero".into()));
        }
        let num = x.numerator().checked_mul(w)?;
        let den = x.denominator().checked_mul(w)?;
        Ok(self.eval_representation(&num, &den)? == self.eval(x)?)
    }

    /// Whether `f(x) + f(y) = f(x + y)`.
    pub fn check_additivity(&self, x: &RatFunc2, y: &RatFunc2) -> Result<bool> {
        Ok(self.eval(&x.try_add(y)?)? == self.eval(x)?.try_add(&self.eval(y)?)?)
    }

    /// Whether `f` is the standard solution `x -> x f(1)`, i.e. `B = t A`.
    pub fn is_standard(&self) -> Result<bool> {
        Ok(self.b == RatFunc2::t().try_mul(&self.a)?)
    }

    /// Checks `f(t^{2n}) = t^{2n} A` and `f(t^{2n+1}) = t^{2n} B`; returns
    /// the exponents `n` where either fails.
    pub fn anchor_failures(&self, range: std::ops::RangeInclusive<i64>) -> Result<Vec<i64>> {
        let mut failed = Vec::new();
        for n in range {
            let even = RatFunc2::t_pow(2 * n);
            let odd = RatFunc2::t_pow(2 * n + 1);
            let ok_even = self.eval(&even)? == even.try_mul(&self.a)?;
            let ok_odd = self.eval(&odd)? == even.try_mul(&self.b)?;
            if !(ok_even && ok_odd) {
                failed.push(n);
            }
        }
        Ok(failed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc2 {
        RatFunc2::parse(s).unwrap()
    }

    #[test]
    fn eval_examples() {
        let m = PathoMap::new(rf("1/(t+1)"), rf("t^3"));
        assert_eq!(m.eval(&RatFunc2::one()).unwrap(), *m.a());
        assert_eq!(m.eval(&RatFunc2::t()).unwrap(), *m.b());
        assert_eq!(
            m.eval(&rf("t^3")).unwrap(),
            RatFunc2::t_pow(2).try_mul(m.b()).unwrap()
        );
        assert_eq!(
            m.eval(&rf("1/t")).unwrap(),
            m.b().try_mul(&RatFunc2::t_pow(-2)).unwrap()
        );
        assert!(m.eval(&RatFunc2::zero()).unwrap().is_zero());
    }

    #[test]
    fn identity_examples() {
        for (a, b) in [("1", "t"), ("t", "1"), ("1/(t+1)", "t^3"), ("0", "0")] {
            let m = PathoMap::new(rf(a), rf(b));
            assert!(m.check_identity(&RatFunc2::t()).unwrap());
            assert!(m.check_identity(&RatFunc2::one()).unwrap());
        }
        let m = PathoMap::new(rf("1/(t+1)"), rf("t"));
        assert!(m.check_identity(&rf("(t^2+1)/(t^3+t+1)")).unwrap());
        assert!(matches!(m.check_identity(&RatFunc2::zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn square_law_examples() {
        let m = PathoMap::new(rf("t"), rf("1"));
        let t = RatFunc2::t();
        for n in -6..=6 {
            let tn = RatFunc2::t_pow(n);
            assert!(m.check_square_law(&t, &tn).unwrap());
            assert_eq!(
                m.eval(&RatFunc2::t_pow(n + 2)).unwrap(),
                RatFunc2::t_pow(2).try_mul(&m.eval(&tn).unwrap()).unwrap()
            );
        }
        assert!(m.check_square_law(&RatFunc2::zero(), &rf("t^2+1")).unwrap());
    }

    #[test]
    fn welldef_examples() {
        let m = PathoMap::new(rf("1"), rf("t^2"));
        assert!(m.welldef_check(&RatFunc2::t(), &rf("t+1").numerator().clone()).unwrap());
        assert!(m.welldef_check(&rf("(t^2+t+1)/t^3"), &Poly2::one()).unwrap());
        assert!(matches!(
            m.welldef_check(&RatFunc2::t(), &Poly2::zero()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn standard_versus_pathological() {
        assert!(PathoMap::new(rf("1"), rf("t")).is_standard().unwrap());
        let m = PathoMap::new(rf("1"), rf("t^2"));
        assert!(!m.is_standard().unwrap());
        let t = RatFunc2::t();
        assert_ne!(
            m.eval(&t).unwrap(),
            t.try_mul(&m.eval(&RatFunc2::one()).unwrap()).unwrap()
        );
    }

    #[test]
    fn anchors() {
        let m = PathoMap::new(rf("1/(t+1)"), rf("t^3"));
        assert_eq!(m.anchor_failures(-10..=10).unwrap(), Vec::<i64>::new());
    }
}

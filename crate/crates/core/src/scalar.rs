use std::fmt;

use crate::error::Result;

/// The field contract octonion coefficients must satisfy.
///
/// Elements carry enough context to build the additive and multiplicative
/// identities of their own field, so generic code never needs a separate
/// field handle. Arithmetic between elements of different fields is a logic
/// error; implementations may panic. Use [`Scalar::same_field`] to check
/// beforehand.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn same_field(&self, other: &Self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    /// The image of the integer `n` under the canonical map Z -> field.
    fn from_int_like(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

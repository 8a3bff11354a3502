//! Exact ground fields.
//!
//! Every computation in this crate is generic over [`Field`]. A field value
//! carries whatever context its elements need (the cyclotomic modulus, the
//! prime), so elements themselves stay plain data and the arithmetic lives on
//! the field.

mod cyclotomic;
mod prime;
mod rational;

use std::fmt;

use rand::Rng;
use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, CyclotomicElement};
pub use prime::{is_prime, PrimeField};
pub use rational::Rationals;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cyclotomic order must be at least 2, got {0}")]
    InvalidOrder(u32),
    #[error("cannot parse coefficient `{0}`")]
    Parse(String),
}

/// Which concrete field an input lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    /// `Q(ζ_n)`, `n >= 2`.
    Cyclotomic(u32),
    /// `GF(p)`, `p` prime.
    Prime(u64),
}

impl FieldDescriptor {
    pub fn validate(&self) -> Result<(), FieldError> {
        match *self {
            FieldDescriptor::Rationals => Ok(()),
            FieldDescriptor::Cyclotomic(n) if n < 2 => Err(FieldError::InvalidOrder(n)),
            FieldDescriptor::Cyclotomic(_) => Ok(()),
            FieldDescriptor::Prime(p) if !is_prime(p) => Err(FieldError::NotPrime(p)),
            FieldDescriptor::Prime(_) => Ok(()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldDescriptor::Prime(p) => p,
            _ => 0,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Cyclotomic(n) => write!(f, "QZETA {n}"),
            FieldDescriptor::Prime(p) => write!(f, "GF {p}"),
        }
    }
}

/// Exact field arithmetic over an element type.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn descriptor(&self) -> FieldDescriptor;

    fn characteristic(&self) -> u64 {
        self.descriptor().characteristic()
    }

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += a * b`, skipping the work when either factor vanishes.
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        if self.is_zero(a) || self.is_zero(b) {
            return;
        }
        *acc = self.add(acc, &self.mul(a, b));
    }

    fn add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem) {
        if !self.is_zero(a) {
            *acc = self.add(acc, a);
        }
    }

    /// Canonical text form; `parse(render(x)) == x`.
    fn render(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;

    /// A small pseudo-random element: integers in `[-3, 3]` per rational
    /// coordinate in characteristic zero, a uniform residue in `GF(p)`.
    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Elements worth testing as roots of `poly` (coefficients from the
    /// constant term up). Callers evaluate each candidate and must not assume
    /// the list contains every root unless they verify it by counting.
    fn root_candidates(&self, poly: &[Self::Elem]) -> Vec<Self::Elem>;

    /// `a^k` by repeated squaring.
    fn pow(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
}

/// A runtime-selected field, used to dispatch into the generic code.
#[derive(Debug, Clone)]
pub enum AnyField {
    Rationals(Rationals),
    Cyclotomic(Cyclotomic),
    Prime(PrimeField),
}

impl AnyField {
    pub fn new(desc: FieldDescriptor) -> Result<Self, FieldError> {
        desc.validate()?;
        Ok(match desc {
            FieldDescriptor::Rationals => AnyField::Rationals(Rationals),
            FieldDescriptor::Cyclotomic(n) => AnyField::Cyclotomic(Cyclotomic::new(n)?),
            FieldDescriptor::Prime(p) => AnyField::Prime(PrimeField::new(p)?),
        })
    }

    /// Parses and re-renders a coefficient in canonical form.
    pub fn canonicalize(&self, s: &str) -> Result<String, FieldError> {
        match self {
            AnyField::Rationals(f) => f.parse(s).map(|x| f.render(&x)),
            AnyField::Cyclotomic(f) => f.parse(s).map(|x| f.render(&x)),
            AnyField::Prime(f) => f.parse(s).map(|x| f.render(&x)),
        }
    }

    pub fn is_zero_str(&self, s: &str) -> Result<bool, FieldError> {
        match self {
            AnyField::Rationals(f) => f.parse(s).map(|x| f.is_zero(&x)),
            AnyField::Cyclotomic(f) => f.parse(s).map(|x| f.is_zero(&x)),
            AnyField::Prime(f) => f.parse(s).map(|x| f.is_zero(&x)),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            AnyField::Rationals(f) => f.descriptor(),
            AnyField::Cyclotomic(f) => f.descriptor(),
            AnyField::Prime(f) => f.descriptor(),
        }
    }
}

/// Runs `$body` with `$f` bound to the concrete field behind an [`AnyField`].
#[macro_export]
macro_rules! with_field {
    ($any:expr, |$f:ident| $body:expr) => {
        match $any {
            $crate::field::AnyField::Rationals($f) => $body,
            $crate::field::AnyField::Cyclotomic($f) => $body,
            $crate::field::AnyField::Prime($f) => $body,
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_validate() {
        assert!(FieldDescriptor::Rationals.validate().is_ok());
        assert_eq!(
            FieldDescriptor::Cyclotomic(1).validate(),
            Err(FieldError::InvalidOrder(1))
        );
        assert_eq!(FieldDescriptor::Prime(9).validate(), Err(FieldError::NotPrime(9)));
        assert!(FieldDescriptor::Prime(7).validate().is_ok());
    }

    #[test]
    fn field_make_examples() {
        let q = AnyField::new(FieldDescriptor::Rationals).unwrap();
        assert_eq!(q.descriptor().characteristic(), 0);
        let AnyField::Cyclotomic(c4) = AnyField::new(FieldDescriptor::Cyclotomic(4)).unwrap() else {
            panic!()
        };
        assert_eq!(c4.degree(), 2);
        let z = c4.zeta();
        assert_eq!(c4.mul(&z, &z), c4.from_i64(-1));
        let g7 = AnyField::new(FieldDescriptor::Prime(7)).unwrap();
        assert_eq!(g7.descriptor().characteristic(), 7);
    }

    #[test]
    fn canonicalize_reduces() {
        let q = AnyField::new(FieldDescriptor::Rationals).unwrap();
        assert_eq!(q.canonicalize("2/4").unwrap(), "1/2");
        assert_eq!(q.canonicalize("-6/-3").unwrap(), "2");
        assert!(q.canonicalize("1/0").is_err());
    }
}

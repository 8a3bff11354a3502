use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{Field, FieldDescriptor, FieldError};

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

pub(crate) fn render_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let err = || FieldError::Parse(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

/// Positive divisors of `n`, or `None` past the trial-division budget.
fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.to_u64().filter(|&n| n <= 1_000_000_000_000)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Candidates from the rational root theorem after clearing denominators.
pub(crate) fn rational_root_candidates(poly: &[BigRational]) -> Vec<BigRational> {
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale = BigRational::from_integer(lcm);
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * &scale).to_integer()).collect();
    let mut out = Vec::new();
    let Some(lo) = ints.iter().position(|c| !c.is_zero()) else {
        return out;
    };
    let hi = ints.iter().rposition(|c| !c.is_zero()).expect("nonzero coefficient exists");
    if lo > 0 {
        out.push(BigRational::zero());
    }
    if hi == lo {
        return out;
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[lo].abs()), divisors(&ints[hi].abs())) else {
        return out;
    };
    for p in &ps {
        for q in &qs {
            let r = BigRational::new(BigInt::from(*p), BigInt::from(*q));
            out.push(-r.clone());
            out.push(r);
        }
    }
    out.sort();
    out.dedup();
    out
}

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, FieldError> {
        if a.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn mul_add_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *acc += a * b;
    }

    fn add_assign(&self, acc: &mut BigRational, a: &BigRational) {
        if !a.is_zero() {
            *acc += a;
        }
    }

    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }

    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        parse_rational(s)
    }

    fn root_candidates(&self, poly: &[BigRational]) -> Vec<BigRational> {
        rational_root_candidates(poly)
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.random_range(-3..=3))
    }
}

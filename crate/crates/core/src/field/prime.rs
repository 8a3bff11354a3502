use rand::Rng;

use super::{Field, FieldDescriptor, FieldError};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `GF(p)` with residues stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        // Extended Euclid on (a, p).
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.reduce_i128(t0))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u64, FieldError> {
        let err = || FieldError::Parse(s.to_string());
        let s = s.trim();
        let int = |t: &str| -> Result<u64, FieldError> {
            let v: i128 = t.trim().parse().map_err(|_| err())?;
            Ok(self.reduce_i128(v))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = int(d)?;
                self.div(&int(n)?, &d).map_err(|_| err())
            }
            None => int(s),
        }
    }

    /// Every residue for `p < 2^16`; only `0, ±1` beyond that.
    fn root_candidates(&self, _poly: &[u64]) -> Vec<u64> {
        if self.p < 1 << 16 {
            (0..self.p).collect()
        } else {
            vec![0, 1, self.p - 1]
        }
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_three_mod_seven() {
        let f = PrimeField::new(7).unwrap();
        // Brute-force oracle over all residues.
        let brute = (1..7).find(|x| (3 * x) % 7 == 1).unwrap();
        assert_eq!(brute, 5);
        assert_eq!(f.inv(&3).unwrap(), brute);
    }

    #[test]
    fn every_nonzero_residue_inverts() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13u64 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn parsing_reduces() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.parse("-1").unwrap(), 6);
        assert_eq!(f.parse("1/2").unwrap(), 4);
        assert_eq!(f.parse("15").unwrap(), 1);
        assert!(f.parse("1/7").is_err());
        assert!(PrimeField::new(1).is_err());
    }
}

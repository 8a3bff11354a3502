use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::rational::{parse_rational, render_rational};
use super::{Field, FieldDescriptor, FieldError};

/// Integer coefficients of `Φ_n`, lowest degree first.
///
/// Computed as `(z^n - 1) / ∏ Φ_d` over the proper divisors `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (t, dt) in den.iter().enumerate() {
            rem[k + t] -= &c * dt;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// An element of `Q(ζ_n)` as its residue modulo `Φ_n`: coefficients of
/// `1, ζ, ζ², ...`, always of length `deg Φ_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElement(pub Vec<BigRational>);

/// The cyclotomic field `Q(ζ_n)`.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    order: u32,
    /// Monic `Φ_n`, lowest degree first.
    modulus: Arc<[BigRational]>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for Cyclotomic {}

impl Cyclotomic {
    pub fn new(order: u32) -> Result<Self, FieldError> {
        if order < 2 {
            return Err(FieldError::InvalidOrder(order));
        }
        let modulus = cyclotomic_polynomial(order)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        Ok(Self { order, modulus })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `deg Φ_n`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The primitive root `ζ_n`.
    pub fn zeta(&self) -> CyclotomicElement {
        self.reduce(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_rational(&self, q: BigRational) -> CyclotomicElement {
        let mut v = vec![BigRational::zero(); self.degree()];
        v[0] = q;
        CyclotomicElement(v)
    }

    /// Reduces an arbitrary coefficient list modulo `Φ_n`.
    pub fn reduce(&self, mut poly: Vec<BigRational>) -> CyclotomicElement {
        let d = self.degree();
        for k in (d..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[k], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for t in 0..d {
                let m = &self.modulus[t];
                if !m.is_zero() {
                    poly[k - d + t] -= &c * m;
                }
            }
        }
        poly.resize(d, BigRational::zero());
        CyclotomicElement(poly)
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].recip();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for (t, bt) in b.iter().enumerate() {
            rem[k + t] -= &c * bt;
        }
        quot[k] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(&mut out);
    out
}

impl Field for Cyclotomic {
    type Elem = CyclotomicElement;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Cyclotomic(self.order)
    }

    fn zero(&self) -> CyclotomicElement {
        CyclotomicElement(vec![BigRational::zero(); self.degree()])
    }

    fn one(&self) -> CyclotomicElement {
        self.from_rational(BigRational::one())
    }

    fn from_i64(&self, n: i64) -> CyclotomicElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn add(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    fn sub(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    fn mul(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        let mut prod = poly_mul(&a.0, &b.0);
        if prod.is_empty() {
            prod.push(BigRational::zero());
        }
        self.reduce(prod)
    }

    fn neg(&self, a: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement(a.0.iter().map(|x| -x).collect())
    }

    fn inv(&self, a: &CyclotomicElement) -> Result<CyclotomicElement, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        // Extended Euclid in Q[z]: track t with t*a ≡ r (mod Φ_n).
        let mut r0: Vec<BigRational> = self.modulus.to_vec();
        let mut r1 = a.0.clone();
        trim(&mut r1);
        let mut t0: Vec<BigRational> = Vec::new();
        let mut t1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let t = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        // Φ_n is irreducible, so the gcd r0 is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let scale = r0[0].recip();
        let t0: Vec<BigRational> = t0.iter().map(|c| c * &scale).collect();
        Ok(self.reduce(if t0.is_empty() { vec![BigRational::zero()] } else { t0 }))
    }

    fn is_zero(&self, a: &CyclotomicElement) -> bool {
        a.0.iter().all(Zero::is_zero)
    }

    fn mul_add_assign(&self, acc: &mut CyclotomicElement, a: &CyclotomicElement, b: &CyclotomicElement) {
        if self.is_zero(a) || self.is_zero(b) {
            return;
        }
        let p = self.mul(a, b);
        for (x, y) in acc.0.iter_mut().zip(p.0) {
            *x += y;
        }
    }

    fn render(&self, a: &CyclotomicElement) -> String {
        let parts: Vec<String> = a.0.iter().map(render_rational).collect();
        format!("[{}]", parts.join(","))
    }

    fn parse(&self, s: &str) -> Result<CyclotomicElement, FieldError> {
        let t = s.trim();
        match t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            Some(inner) => {
                let coeffs = inner
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| FieldError::Parse(s.to_string()))?;
                if coeffs.is_empty() {
                    return Err(FieldError::Parse(s.to_string()));
                }
                Ok(self.reduce(coeffs))
            }
            None => parse_rational(t).map(|q| self.from_rational(q)),
        }
    }

    /// Rational candidates when `poly` has rational coefficients, plus the
    /// roots of unity `±ζ^j`.
    fn root_candidates(&self, poly: &[CyclotomicElement]) -> Vec<CyclotomicElement> {
        let mut out = Vec::new();
        if poly.iter().all(|c| c.0[1..].iter().all(Zero::is_zero)) {
            let rational: Vec<BigRational> = poly.iter().map(|c| c.0[0].clone()).collect();
            out.extend(super::rational::rational_root_candidates(&rational).into_iter().map(|r| self.from_rational(r)));
        } else {
            out.push(self.zero());
        }
        let zeta = self.zeta();
        let mut z = self.one();
        for _ in 0..self.order() {
            out.push(self.neg(&z));
            out.push(z.clone());
            z = self.mul(&z, &zeta);
        }
        out
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> CyclotomicElement {
        CyclotomicElement(
            (0..self.degree())
                .map(|_| BigRational::from_integer(BigInt::from(rng.random_range(-3..=3))))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn order_of_zeta_is_exact() {
        for n in 2..=12u32 {
            let f = Cyclotomic::new(n).unwrap();
            let z = f.zeta();
            let first_one = (1..=n as u64).find(|&k| f.is_one(&f.pow(&z, k)));
            assert_eq!(first_one, Some(n as u64), "order of zeta_{n}");
        }
    }

    #[test]
    fn one_plus_zeta_inverts_in_q_zeta3() {
        let f = Cyclotomic::new(3).unwrap();
        let z = f.zeta();
        let a = f.add(&f.one(), &z);
        let b = f.add(&f.one(), &f.mul(&z, &z));
        // Oracle: reduce (1+z)(1+z^2) = 1+z+z^2+z^3 by z^3 = 1 then z^2 = -1-z.
        assert_eq!(f.mul(&a, &b), f.one());
        assert_eq!(f.inv(&a).unwrap(), b);
    }

    #[test]
    fn render_parse_round_trip() {
        let f = Cyclotomic::new(5).unwrap();
        let x = f.parse("[1/2,-3,0,7/9]").unwrap();
        assert_eq!(f.render(&x), "[1/2,-3,0,7/9]");
        // z^4 = -1 - z - z^2 - z^3 in Q(ζ_5).
        let y = f.parse("[0,0,0,0,1]").unwrap();
        assert_eq!(f.render(&y), "[-1,-1,-1,-1]");
        assert_eq!(f.render(&f.parse("2/4").unwrap()), "[1/2,0,0,0]");
    }
}

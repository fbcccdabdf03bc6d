//! Exact coefficient arithmetic over the rationals and prime fields.
//!
//! A [`Field`] is a lightweight context value; elements do not carry their
//! modulus, so all operations go through the field so that mixed-field
//! arithmetic is impossible by construction.

use num::{BigInt, BigRational, One, Zero};
use std::fmt;

use crate::error::Error;

/// Coefficient field: the rationals or a prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// Invariant: the modulus is prime (checked by [`Field::prime`]).
    Prime(u64),
}

/// Largest modulus accepted. Keeps products inside u128 and residues inside i64.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

impl Field {
    /// Validated constructor for F_p.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p < 2 || p > MAX_PRIME {
            return Err(Error::validation(format!("modulus {p} out of range")));
        }
        if !is_prime(p) {
            return Err(Error::validation(format!("modulus {p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rat(BigRational::zero()),
            Field::Prime(_) => FieldElem::Mod(0),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rat(BigRational::one()),
            Field::Prime(_) => FieldElem::Mod(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rat(BigRational::from(BigInt::from(n))),
            Field::Prime(p) => {
                let p = *p as i128;
                FieldElem::Mod(((n as i128).rem_euclid(p)) as u64)
            }
        }
    }

    /// Parses "a" or "a/b" (rationals) or a residue (prime fields).
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem, Error> {
        let s = s.trim();
        match self {
            Field::Rationals => {
                let parse_int = |t: &str| {
                    t.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::parse(format!("bad rational literal: {s}")))
                };
                if let Some((n, d)) = s.split_once('/') {
                    let d = parse_int(d)?;
                    if d.is_zero() {
                        return Err(Error::parse(format!("zero denominator: {s}")));
                    }
                    Ok(FieldElem::Rat(BigRational::new(parse_int(n)?, d)))
                } else {
                    Ok(FieldElem::Rat(BigRational::from(parse_int(s)?)))
                }
            }
            Field::Prime(_) => {
                let n = s
                    .parse::<i64>()
                    .map_err(|_| Error::parse(format!("bad residue literal: {s}")))?;
                Ok(self.from_i64(n))
            }
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (Field::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x + y),
            (Field::Prime(p), FieldElem::Mod(x), FieldElem::Mod(y)) => {
                let s = x + y;
                FieldElem::Mod(if s >= *p { s - p } else { s })
            }
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (self, a) {
            (Field::Rationals, FieldElem::Rat(x)) => FieldElem::Rat(-x),
            (Field::Prime(p), FieldElem::Mod(x)) => {
                FieldElem::Mod(if *x == 0 { 0 } else { p - x })
            }
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (Field::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x * y),
            (Field::Prime(p), FieldElem::Mod(x), FieldElem::Mod(y)) => {
                FieldElem::Mod(((*x as u128 * *y as u128) % (*p as u128)) as u64)
            }
            _ => panic!("field/element mismatch"),
        }
    }

    /// None for zero.
    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        match (self, a) {
            (Field::Rationals, FieldElem::Rat(x)) => {
                (!x.is_zero()).then(|| FieldElem::Rat(x.recip()))
            }
            (Field::Prime(p), FieldElem::Mod(x)) => {
                (*x != 0).then(|| FieldElem::Mod(mod_inv(*x, *p)))
            }
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &FieldElem, mut n: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// All nonzero elements, ascending. Prime fields only.
    pub fn units(&self) -> Vec<FieldElem> {
        match self {
            Field::Prime(p) => (1..*p).map(FieldElem::Mod).collect(),
            Field::Rationals => panic!("units() needs a finite field"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Element of a [`Field`]. Residues are kept normalized in [0, p).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElem {
    Rat(BigRational),
    Mod(u64),
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(x) => x.is_zero(),
            FieldElem::Mod(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(x) => x.is_one(),
            FieldElem::Mod(x) => *x == 1,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            FieldElem::Mod(x) => write!(f, "{x}"),
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p); p prime and a nonzero mod p
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of a non-unit");
    s0.rem_euclid(p as i128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_constructor_accepts_primes_only() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(13).is_ok());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(91).is_err()); // 7 * 13
        assert!(Field::prime(0).is_err());
    }

    #[test]
    fn mod_arithmetic_stays_normalized() {
        let f = Field::prime(13).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, FieldElem::Mod(12));
        let b = f.add(&a, &f.from_i64(5));
        assert_eq!(b, FieldElem::Mod(4));
        let c = f.mul(&f.from_i64(7), &f.from_i64(2));
        assert_eq!(c, FieldElem::Mod(1));
    }

    #[test]
    fn inverses_multiply_to_one() {
        let f = Field::prime(13).unwrap();
        for x in 1..13 {
            let e = FieldElem::Mod(x);
            let i = f.inv(&e).unwrap();
            assert!(f.mul(&e, &i).is_one());
        }
        assert!(f.inv(&f.zero()).is_none());

        let q = Field::Rationals;
        let e = q.parse_elem("-3/7").unwrap();
        assert!(q.mul(&e, &q.inv(&e).unwrap()).is_one());
    }

    #[test]
    fn rational_parsing_reduces() {
        let q = Field::Rationals;
        assert_eq!(q.parse_elem("4/6").unwrap(), q.parse_elem("2/3").unwrap());
        assert!(q.parse_elem("1/0").is_err());
    }
}

//! Prime field arithmetic on word-sized residues.

use crate::error::{AlgebraError, Result};

/// The prime field F_p. Elements are plain `u32` residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

/// A residue together with its modulus, for callers that want a value type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub value: u32,
    pub p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(AlgebraError::CharacteristicTooLarge(p));
        }
        if !is_prime(p) {
            return Err(AlgebraError::CompositeCharacteristic(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a % self.p == 0 {
            return Err(AlgebraError::DivisionByZero(self.p));
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.reduce(t0))
    }

    pub fn element(&self, v: i64) -> FieldElement {
        FieldElement {
            value: self.reduce(v),
            p: self.p,
        }
    }
}

impl FieldElement {
    fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn add(self, o: FieldElement) -> FieldElement {
        FieldElement {
            value: self.field().add(self.value, o.value),
            p: self.p,
        }
    }

    pub fn sub(self, o: FieldElement) -> FieldElement {
        FieldElement {
            value: self.field().sub(self.value, o.value),
            p: self.p,
        }
    }

    pub fn mul(self, o: FieldElement) -> FieldElement {
        FieldElement {
            value: self.field().mul(self.value, o.value),
            p: self.p,
        }
    }

    pub fn inv(self) -> Result<FieldElement> {
        Ok(FieldElement {
            value: self.field().inv(self.value)?,
            p: self.p,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products_and_inverses() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.mul(3, 4), 2);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.inv(1).unwrap(), 1);
        let f7 = PrimeField::new(7).unwrap();
        // brute-force scan for the inverse of 3
        let scanned = (1..7).find(|&b| (3 * b) % 7 == 1).unwrap();
        assert_eq!(scanned, 5);
        assert_eq!(f7.inv(3).unwrap(), 5);
    }

    #[test]
    fn zero_has_no_inverse() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.inv(0), Err(AlgebraError::DivisionByZero(7)));
    }

    #[test]
    fn composite_rejected() {
        assert_eq!(
            PrimeField::new(4),
            Err(AlgebraError::CompositeCharacteristic(4))
        );
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn every_nonzero_residue_inverts() {
        for p in [2u64, 3, 5, 7, 11, 101, 65521] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..(p.min(500) as u32) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn value_type_ops() {
        let f = PrimeField::new(7).unwrap();
        let a = f.element(3);
        let b = f.element(-2);
        assert_eq!(b.value, 5);
        assert_eq!(a.add(b).value, 1);
        assert_eq!(a.sub(b).value, 5);
        assert_eq!(a.mul(a.inv().unwrap()).value, 1);
    }
}

//! Lifting idempotents and units through the nil ideal p*R of a matrix ring
//! over Z/p^s.
//!
//! The idempotent lift is the closed form a' = (1 - (1-a)^N)^N with N the
//! nilpotency degree of a - a^2; the unit lift reduces to the residue 1 case
//! and sums the finite geometric series 1 + (1-c) + ... + (1-c)^{N-1}.

use alloc::{vec, vec::Vec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::AbError;
use crate::finite_field::is_prime;

/// Square matrix over Z/p^s with entries kept in [0, p^s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRingElement {
    size: usize,
    p: u64,
    s: u32,
    modulus: BigInt,
    entries: Vec<BigInt>,
}

impl MatrixRingElement {
    pub fn new(size: usize, p: u64, s: u32, entries: Vec<BigInt>) -> Self {
        assert!(is_prime(p), "modulus base must be prime");
        assert!(s >= 1);
        assert_eq!(entries.len(), size * size);
        let modulus = BigInt::from(p).pow(s);
        let entries = entries
            .into_iter()
            .map(|e| e.mod_floor(&modulus))
            .collect();
        MatrixRingElement {
            size,
            p,
            s,
            modulus,
            entries,
        }
    }

    pub fn from_i64(size: usize, p: u64, s: u32, entries: &[i64]) -> Self {
        MatrixRingElement::new(
            size,
            p,
            s,
            entries.iter().map(|&e| BigInt::from(e)).collect(),
        )
    }

    pub fn scalar(size: usize, p: u64, s: u32, value: i64) -> Self {
        let mut entries = vec![BigInt::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = BigInt::from(value);
        }
        MatrixRingElement::new(size, p, s, entries)
    }

    pub fn identity(size: usize, p: u64, s: u32) -> Self {
        Self::scalar(size, p, s, 1)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.size + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn compatible(&self, other: &Self) {
        assert_eq!(self.size, other.size);
        assert_eq!(self.modulus, other.modulus);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.compatible(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a + b).mod_floor(&self.modulus))
            .collect();
        MatrixRingElement {
            entries,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.compatible(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).mod_floor(&self.modulus))
            .collect();
        MatrixRingElement {
            entries,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.compatible(other);
        let n = self.size;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        for e in entries.iter_mut() {
            *e = e.mod_floor(&self.modulus);
        }
        MatrixRingElement {
            entries,
            ..self.clone()
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::identity(self.size, self.p, self.s);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Residue matrix mod p, entries as u64.
    fn residue(&self) -> Vec<u64> {
        use num_traits::ToPrimitive;
        let p = BigInt::from(self.p);
        self.entries
            .iter()
            .map(|e| e.mod_floor(&p).to_u64().unwrap())
            .collect()
    }

    fn congruent_mod_p(&self, other: &Self) -> bool {
        self.residue() == other.residue()
    }
}

/// Lifts an idempotent of the residue ring mod p to an exact idempotent
/// mod p^s: a' = (1 - (1-a)^N)^N with (a - a^2)^N = 0, a' = a mod p.
pub fn lift_idempotent(a: &MatrixRingElement) -> Result<MatrixRingElement, AbError> {
    let res = residue_mul(&a.residue(), &a.residue(), a.size, a.p);
    if res != a.residue() {
        return Err(AbError::NotIdempotentModP);
    }
    // Least N with (a - a^2)^N = 0; at most s since a - a^2 is in pR.
    let defect = a.sub(&a.mul(a));
    let mut n = 1u32;
    let mut power = defect.clone();
    while !power.is_zero() {
        power = power.mul(&defect);
        n += 1;
        debug_assert!(n <= a.s, "nilpotency degree bounded by s");
    }
    let one = MatrixRingElement::identity(a.size, a.p, a.s);
    let lifted = one.sub(&one.sub(a).pow(n)).pow(n);
    // Postconditions are algebraically forced; keep them as hard checks.
    if lifted.mul(&lifted) != lifted || !lifted.congruent_mod_p(a) {
        return Err(AbError::Internal(
            "idempotent lift failed its defining identities".into(),
        ));
    }
    Ok(lifted)
}

/// Exact inverse mod p^s of a matrix invertible mod p, via the residue
/// inverse and the geometric series for 1 - nilpotent.
pub fn lift_unit(a: &MatrixRingElement) -> Result<MatrixRingElement, AbError> {
    let b_res = invert_mod_p(&a.residue(), a.size, a.p).ok_or(AbError::NotUnitModP)?;
    let b = MatrixRingElement::new(
        a.size,
        a.p,
        a.s,
        b_res.into_iter().map(BigInt::from).collect(),
    );
    // c = a b = 1 mod p; invert c by the finite geometric series.
    let c = a.mul(&b);
    let one = MatrixRingElement::identity(a.size, a.p, a.s);
    let nil = one.sub(&c);
    let mut series = one.clone();
    let mut term = nil.clone();
    while !term.is_zero() {
        series = series.add(&term);
        term = term.mul(&nil);
    }
    let inverse = b.mul(&series);
    if a.mul(&inverse) != one || inverse.mul(a) != one {
        return Err(AbError::Internal(
            "unit lift failed the inverse identities".into(),
        ));
    }
    Ok(inverse)
}

fn residue_mul(a: &[u64], b: &[u64], n: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            if a[i * n + k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + mulmod(a[i * n + k], b[k * n + j], p)) % p;
            }
        }
    }
    out
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

/// Gauss-Jordan inverse over F_p; None when singular.
fn invert_mod_p(a: &[u64], n: usize, p: u64) -> Option<Vec<u64>> {
    let mut m: Vec<u64> = a.to_vec();
    let mut inv: Vec<u64> = vec![0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1;
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r * n + col] % p != 0)?;
        for j in 0..n {
            m.swap(col * n + j, pivot * n + j);
            inv.swap(col * n + j, pivot * n + j);
        }
        let pinv = pow_mod_u64(m[col * n + col], p - 2, p);
        for j in 0..n {
            m[col * n + j] = mulmod(m[col * n + j], pinv, p);
            inv[col * n + j] = mulmod(inv[col * n + j], pinv, p);
        }
        for r in 0..n {
            if r != col && m[r * n + col] != 0 {
                let f = m[r * n + col];
                for j in 0..n {
                    m[r * n + j] = (m[r * n + j] + p - mulmod(f, m[col * n + j], p)) % p;
                    inv[r * n + j] = (inv[r * n + j] + p - mulmod(f, inv[col * n + j], p)) % p;
                }
            }
        }
    }
    Some(inv)
}

fn pow_mod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_scalar_idempotent_in_z9() {
        // 3 mod 9 reduces to 0 mod 3; the lift lands on the exact idempotent 0.
        let a = MatrixRingElement::from_i64(1, 3, 2, &[3]);
        let lifted = lift_idempotent(&a).unwrap();
        assert!(lifted.is_zero());
    }

    #[test]
    fn lift_one_is_one() {
        let a = MatrixRingElement::identity(2, 5, 2);
        assert_eq!(lift_idempotent(&a).unwrap(), a);
    }

    #[test]
    fn non_idempotent_rejected() {
        let a = MatrixRingElement::from_i64(1, 3, 2, &[2]);
        assert!(matches!(
            lift_idempotent(&a),
            Err(AbError::NotIdempotentModP)
        ));
    }

    #[test]
    fn matrix_idempotent_lift() {
        // Projection-like residue with a p-perturbation.
        let a = MatrixRingElement::from_i64(2, 3, 3, &[1 + 3, 3, 6, 9]);
        let lifted = lift_idempotent(&a).unwrap();
        assert_eq!(lifted.mul(&lifted), lifted);
        // Same residue mod 3 as the input.
        let p = BigInt::from(3);
        for (x, y) in lifted.entries().iter().zip(a.entries()) {
            assert_eq!(x.mod_floor(&p), y.mod_floor(&p));
        }
    }

    #[test]
    fn unit_lift_scalar() {
        // 4 * 7 = 28 = 1 mod 9.
        let a = MatrixRingElement::from_i64(1, 3, 2, &[4]);
        let inv = lift_unit(&a).unwrap();
        assert_eq!(inv.entries()[0], BigInt::from(7));
    }

    #[test]
    fn unit_lift_one_plus_p() {
        // (1 + p)^{-1} = 1 - p + p^2 mod p^3.
        for p in [2u64, 3, 5] {
            let a = MatrixRingElement::new(1, p, 3, vec![BigInt::from(1 + p)]);
            let inv = lift_unit(&a).unwrap();
            let expected = BigInt::from(1) - BigInt::from(p) + BigInt::from(p * p);
            let modulus = BigInt::from(p).pow(3);
            assert_eq!(inv.entries()[0], expected.mod_floor(&modulus));
        }
    }

    #[test]
    fn non_unit_rejected() {
        let a = MatrixRingElement::from_i64(1, 5, 2, &[5]);
        assert!(matches!(lift_unit(&a), Err(AbError::NotUnitModP)));
    }

    #[test]
    fn matrix_unit_lift() {
        // Residue mod 2 is [[1,0],[1,1]], invertible.
        let a = MatrixRingElement::from_i64(2, 2, 5, &[1, 2, 3, 13]);
        let inv = lift_unit(&a).unwrap();
        let one = MatrixRingElement::identity(2, 2, 5);
        assert_eq!(a.mul(&inv), one);
        assert_eq!(inv.mul(&a), one);
    }
}

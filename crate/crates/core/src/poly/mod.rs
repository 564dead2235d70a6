//! Univariate polynomials with exact integer and rational coefficients.
//!
//! `IntPoly` is the shared representation for Weil factors, Frobenius
//! characteristic polynomials, and the factorization engine. Coefficients
//! are stored low degree first; the zero polynomial is the empty vector.

pub mod factor;
pub mod roots;

use alloc::{vec, vec::Vec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// Builds a polynomial from `i64` coefficients, low degree first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 - c*t`, the basic Weil-factor building block.
    pub fn one_minus_ct(c: BigInt) -> Self {
        IntPoly::new(vec![BigInt::one(), -c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports degree 0 alongside `is_zero`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; `None` when `other` does not divide `self` over `Z`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.coeffs.len() < other.coeffs.len() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let n = other.coeffs.len();
        let lead = other.coeffs.last().unwrap();
        let qlen = rem.len() - n + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + n - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&top, lead);
            if !r.is_zero() {
                return None;
            }
            quot[k] = q.clone();
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &q * b;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `t^deg * p(1/t)`: swaps roots and inverse roots.
    pub fn reversal(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    /// GCD of all coefficients (non-negative); 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::Integer::gcd(&g, c);
        }
        g
    }

    /// Divides out the content and normalizes the leading coefficient to be
    /// positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Primitive polynomial GCD over `Z[t]` (up to the sign convention of
    /// `primitive_part`), via the monic Euclidean algorithm over `Q[t]`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let mut a = to_rational(self);
        let mut b = to_rational(other);
        while !rat_is_zero(&b) {
            let r = rat_rem(&a, &b);
            a = b;
            b = r;
        }
        from_rational_primitive(&a)
    }

    /// Multiplicity of `1 - c*t` in `self`, dividing it out as it goes.
    /// Returns (reduced polynomial, multiplicity).
    pub fn remove_one_minus_ct(&self, c: &BigInt) -> (Self, u32) {
        let factor = IntPoly::one_minus_ct(c.clone());
        let mut current = self.clone();
        let mut mult = 0;
        while let Some(q) = current.div_exact(&factor) {
            current = q;
            mult += 1;
            if current.is_zero() {
                break;
            }
        }
        (current, mult)
    }

    /// Squarefree part: `self / gcd(self, self')`, primitive.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() == 0 {
            return IntPoly::one();
        }
        let g = self.gcd(&self.derivative());
        let p = self.primitive_part();
        p.div_exact(&g)
            .expect("gcd divides its argument")
            .primitive_part()
    }

    /// Yun's squarefree decomposition of a primitive polynomial: returns
    /// `[(s_1, 1), (s_2, 2), ...]` with `self = lc * prod s_i^i`, each `s_i`
    /// squarefree, pairwise coprime. Factors of degree 0 are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        let f = self.primitive_part();
        if f.degree() == 0 {
            return vec![];
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap().primitive_part();
        let mut c = df.div_exact(&a0).unwrap();
        let mut out = Vec::new();
        let mut multiplicity = 1u32;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree() >= 1 {
                    out.push((b, multiplicity));
                }
                break;
            }
            let s = b.gcd(&d);
            if s.degree() >= 1 {
                out.push((s.clone(), multiplicity));
            }
            b = b.div_exact(&s).unwrap().primitive_part();
            c = d.div_exact(&s).unwrap();
            multiplicity += 1;
            if b.degree() == 0 {
                break;
            }
        }
        out
    }
}

impl core::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = if first || !c.is_negative() {
                c.clone()
            } else {
                -c
            };
            match i {
                0 => write!(f, "{}", a)?,
                1 if a.is_one() => write!(f, "t")?,
                1 => write!(f, "{}*t", a)?,
                _ if a.is_one() => write!(f, "t^{}", i)?,
                _ => write!(f, "{}*t^{}", a, i)?,
            }
        }
        Ok(())
    }
}

fn to_rational(p: &IntPoly) -> Vec<BigRational> {
    p.coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

fn rat_is_zero(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn rat_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Remainder of rational polynomial division.
fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let b = rat_trim(b.to_vec());
    let mut r = rat_trim(a.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let q = r.last().unwrap() / &lead;
        let shift = r.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            let v = r[shift + i].clone() - &q * bc;
            r[shift + i] = v;
        }
        r = rat_trim(r);
    }
    r
}

/// Clears denominators and takes the primitive part.
fn from_rational_primitive(p: &[BigRational]) -> IntPoly {
    let p = rat_trim(p.to_vec());
    if p.is_empty() {
        return IntPoly::zero();
    }
    let mut den = BigInt::one();
    for c in &p {
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| (c * &den).to_integer()).collect();
    IntPoly::new(ints).primitive_part()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn mul_and_div_round_trip() {
        let a = p(&[1, -2, 5]);
        let b = p(&[1, -5]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        assert_eq!(ab.div_exact(&a), Some(b));
        assert_eq!(ab.div_exact(&p(&[1, 1])), None);
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[1, -1]).mul(&p(&[1, -2, 5]));
        let b = p(&[1, -1]).mul(&p(&[1, -5]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]).primitive_part());
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        // (1-t)^1 * (1-5t)^3
        let f = p(&[1, -1]).mul(&p(&[1, -5]).pow(3));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0].1, 1);
        assert_eq!(dec[1].1, 3);
        let rebuilt = dec
            .iter()
            .fold(IntPoly::one(), |acc, (s, m)| acc.mul(&s.pow(*m)));
        // Up to sign normalization the product returns f.
        assert!(rebuilt == f.primitive_part() || rebuilt.neg() == f.primitive_part());
    }

    #[test]
    fn remove_linear_factor() {
        let f = p(&[1, -2]).pow(2).mul(&p(&[1, -1]));
        let (rest, mult) = f.remove_one_minus_ct(&BigInt::from(2));
        assert_eq!(mult, 2);
        assert_eq!(rest, p(&[1, -1]));
    }

    #[test]
    fn reversal_swaps_roots() {
        let f = p(&[1, -2, 5]);
        let r = f.reversal();
        assert_eq!(r, p(&[5, -2, 1]));
        assert!(r.is_monic());
    }

    #[test]
    fn display_formats() {
        assert_eq!(alloc::format!("{}", p(&[1, -2, 5])), "1 - 2*t + 5*t^2");
        assert_eq!(alloc::format!("{}", p(&[0])), "0");
    }
}

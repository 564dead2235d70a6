//! Exact arithmetic in F_{p^k} and its extensions, plus element enumeration.
//!
//! Extension fields are always represented as F_p[x]/(m(x)) where m is the
//! lexicographically least monic irreducible polynomial of the required
//! degree (coefficients compared low degree first). The degree-m extension
//! of F_{p^k} is constructed directly as the degree-km field over F_p, so
//! there is a single canonical model per cardinality and no isomorphism
//! bookkeeping. Integer coefficients of variety equations live in the prime
//! field and therefore embed canonically into every extension.

use alloc::{vec, vec::Vec};
use arrayvec::ArrayVec;

use crate::{SizeExceeded, SizeGuard};

/// Maximum extension degree over F_p. 2^27 > 10^8, so any field admitted by
/// the default guard fits.
pub const MAX_DEGREE: usize = 32;

/// A prime power q = p^k with a cached value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    k: u32,
    q: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    SizeExceeded(SizeExceeded),
    DivisionByZero,
}

impl core::fmt::Display for FieldError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{} is not prime", p),
            FieldError::SizeExceeded(e) => write!(f, "{}", e),
            FieldError::DivisionByZero => write!(f, "division by zero field element"),
        }
    }
}

impl From<SizeExceeded> for FieldError {
    fn from(e: SizeExceeded) -> Self {
        FieldError::SizeExceeded(e)
    }
}

/// Deterministic trial-division primality check; fine at desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimePower {
    pub fn new(p: u64, k: u32, guard: &SizeGuard) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        assert!(k >= 1, "extension degree must be positive");
        let mut q: u128 = 1;
        for _ in 0..k {
            q *= p as u128;
            guard.admit(q)?;
        }
        Ok(PrimePower {
            p,
            k,
            q: q as u64,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// q^m, guarded against overflow of the return type.
    pub fn power(&self, m: u32) -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..m {
            acc = acc.checked_mul(self.q as u128).expect("q^m fits in u128");
        }
        acc
    }
}

impl core::fmt::Display for PrimePower {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.k)
        }
    }
}

/// Residue-class element: coefficients mod p, length = field degree over F_p.
pub type FieldElement = ArrayVec<u64, MAX_DEGREE>;

/// The field F_{p^n} with its canonical modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerField {
    p: u64,
    /// Degree over the prime field.
    degree: usize,
    /// Monic irreducible modulus, low degree first, length degree+1.
    modulus: Vec<u64>,
    /// Cardinality p^degree.
    order: u64,
}

/// Builds F_{p^k}; the modulus is the lexicographically least monic
/// irreducible polynomial of degree k over F_p, coefficients compared low
/// degree first.
pub fn make_field(p: u64, k: u32, guard: &SizeGuard) -> Result<PrimePowerField, FieldError> {
    let pp = PrimePower::new(p, k, guard)?;
    Ok(build_field(pp.p, pp.k as usize, pp.q))
}

fn build_field(p: u64, degree: usize, order: u64) -> PrimePowerField {
    let modulus = least_irreducible(p, degree);
    PrimePowerField {
        p,
        degree,
        modulus,
        order,
    }
}

/// Lexicographically least monic irreducible of the given degree over F_p.
fn least_irreducible(p: u64, degree: usize) -> Vec<u64> {
    if degree == 1 {
        // x is irreducible and least.
        return vec![0, 1];
    }
    // Enumerate lower coefficient vectors in lexicographic order
    // (low-degree coefficient varies slowest per the comparison order:
    // compare c0 first, then c1, ...). Counting with c0 as the most
    // significant digit realizes that order.
    let mut coeffs = vec![0u64; degree];
    loop {
        let mut candidate = coeffs.clone();
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return candidate;
        }
        // Increment from the last position (least significant under the
        // low-degree-first comparison).
        let mut i = degree;
        loop {
            if i == 0 {
                unreachable!("an irreducible polynomial of every degree exists");
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

/// Brute-force irreducibility: no monic divisor of degree 1..=deg/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if f[0] == 0 {
        // Divisible by x.
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        // All monic polynomials of degree d.
        let mut divisor = vec![0u64; d + 1];
        divisor[d] = 1;
        loop {
            if poly_divides(&divisor, f, p) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                divisor[i] += 1;
                if divisor[i] < p {
                    break;
                }
                divisor[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

fn poly_divides(d: &[u64], f: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = f.to_vec();
    let dn = d.len();
    while rem.len() >= dn {
        let lead = *rem.last().unwrap() % p;
        if lead != 0 {
            let shift = rem.len() - dn;
            for (j, &dc) in d.iter().enumerate() {
                let sub = (lead as u128 * dc as u128 % p as u128) as u64;
                rem[shift + j] = (rem[shift + j] + p - sub) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p == 0)
}

impl PrimePowerField {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Degree over the prime field F_p.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Cardinality of the field.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The degree-m extension, built directly over F_p.
    pub fn extension(&self, m: u32, guard: &SizeGuard) -> Result<PrimePowerField, FieldError> {
        let degree = self.degree * m as usize;
        let mut q: u128 = 1;
        for _ in 0..degree {
            q *= self.p as u128;
            guard.admit(q)?;
        }
        Ok(build_field(self.p, degree, q as u64))
    }

    pub fn zero(&self) -> FieldElement {
        let mut e = FieldElement::new();
        for _ in 0..self.degree {
            e.push(0);
        }
        e
    }

    pub fn one(&self) -> FieldElement {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    /// Embeds an integer residue via the prime field.
    pub fn from_u64(&self, v: u64) -> FieldElement {
        let mut e = self.zero();
        e[0] = v % self.p;
        e
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// Decodes the enumeration index into an element: base-p digits,
    /// low-degree coefficient first.
    pub fn element_from_index(&self, mut idx: u64) -> FieldElement {
        let mut e = self.zero();
        for i in 0..self.degree {
            e[i] = idx % self.p;
            idx /= self.p;
        }
        e
    }

    pub fn index_of(&self, a: &FieldElement) -> u64 {
        let mut idx = 0u64;
        for i in (0..self.degree).rev() {
            idx = idx * self.p + a[i];
        }
        idx
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = self.zero();
        for i in 0..self.degree {
            out[i] = (a[i] + b[i]) % self.p;
        }
        out
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = self.zero();
        for i in 0..self.degree {
            out[i] = (a[i] + self.p - b[i]) % self.p;
        }
        out
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let mut out = self.zero();
        for i in 0..self.degree {
            out[i] = (self.p - a[i]) % self.p;
        }
        out
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.degree;
        let p = self.p;
        // Schoolbook product then reduction by the monic modulus.
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                let t = (a[i] as u128 * b[j] as u128) % p as u128;
                prod[i + j] = ((prod[i + j] as u128 + t) % p as u128) as u64;
            }
        }
        for d in (n..2 * n - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            // x^d = x^{d-n} * (x^n mod modulus); modulus is monic.
            for j in 0..n {
                let m = self.modulus[j];
                if m == 0 {
                    continue;
                }
                let t = (c as u128 * m as u128) % p as u128;
                let pos = d - n + j;
                prod[pos] = ((prod[pos] as u128 + p as u128 - t) % p as u128) as u64;
            }
        }
        let mut out = self.zero();
        out[..n].copy_from_slice(&prod[..n]);
        out
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// polynomials over F_p.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        let p = self.p;
        // Extended Euclid in F_p[x]: r0 = modulus, r1 = a.
        let mut r0: Vec<u64> = self.modulus.clone();
        let mut r1: Vec<u64> = a.iter().copied().collect();
        trim(&mut r1);
        let mut t0: Vec<u64> = vec![];
        let mut t1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = polydivrem(&r0, &r1, p);
            let t = polysub(&t0, &polymul(&q, &t1, p), p);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        // r0 is a nonzero constant gcd.
        let c = r0[0];
        let cinv = modinv(c, p);
        let mut out = self.zero();
        for (i, &v) in t0.iter().enumerate() {
            out[i] = (v as u128 * cinv as u128 % p as u128) as u64;
        }
        Ok(out)
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }

    /// Streams every element of the degree-m extension exactly once, in
    /// index order. The guard is checked against q^m.
    pub fn enumerate(
        &self,
        m: u32,
        guard: &SizeGuard,
    ) -> Result<(PrimePowerField, ElementIter), FieldError> {
        let ext = self.extension(m, guard)?;
        let order = ext.order;
        Ok((
            ext,
            ElementIter {
                next: 0,
                order,
            },
        ))
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn modinv(a: u64, p: u64) -> u64 {
    // Fermat.
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn polymul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    trim(&mut out);
    out
}

fn polysub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn polydivrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let bn = b.len();
    if rem.len() < bn {
        return (vec![], rem);
    }
    let lead_inv = modinv(b[bn - 1], p);
    let mut quot = vec![0u64; rem.len() - bn + 1];
    for k in (0..quot.len()).rev() {
        let top = rem[k + bn - 1];
        if top == 0 {
            continue;
        }
        let qc = (top as u128 * lead_inv as u128 % p as u128) as u64;
        quot[k] = qc;
        for (j, &bc) in b.iter().enumerate() {
            let sub = (qc as u128 * bc as u128 % p as u128) as u64;
            rem[k + j] = (rem[k + j] + p - sub) % p;
        }
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// Deterministic element stream for a field.
#[derive(Debug, Clone)]
pub struct ElementIter {
    next: u64,
    order: u64,
}

impl ElementIter {
    /// Restricts the stream to the index range [start, end).
    pub fn range(start: u64, end: u64) -> ElementIter {
        ElementIter {
            next: start,
            order: end,
        }
    }
}

impl Iterator for ElementIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.next >= self.order {
            return None;
        }
        let v = self.next;
        self.next += 1;
        Some(v)
    }
}

//! Factorization of monic integer polynomials.
//!
//! The classic chain: squarefree decomposition, Berlekamp factorization
//! modulo a good small prime, Hensel lifting of the modular factors, and
//! Zassenhaus subset recombination. Everything is deterministic: the prime
//! is the smallest good one and the Berlekamp splitting loop scans field
//! constants in order, so repeated runs produce identical factor lists.

use alloc::{vec, vec::Vec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::IntPoly;

/// Irreducible factorization `f = prod g_i^{e_i}` of a monic polynomial.
/// Factors are monic, sorted by (degree, coefficients) for determinism.
pub fn factor_monic(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    assert!(f.is_monic(), "factor_monic requires a monic polynomial");
    let mut out: Vec<(IntPoly, u32)> = Vec::new();
    for (sf, mult) in f.squarefree_decomposition() {
        let sf = make_monic_primitive(&sf);
        for g in factor_squarefree(&sf) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
    out
}

fn cmp_poly(a: &IntPoly, b: &IntPoly) -> core::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// A squarefree factor coming out of Yun's algorithm on a monic input is
/// monic up to sign; normalize.
fn make_monic_primitive(f: &IntPoly) -> IntPoly {
    let p = f.primitive_part();
    assert!(p.is_monic(), "squarefree part of a monic polynomial is monic");
    p
}

fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    if f.degree() <= 1 {
        return vec![f.clone()];
    }
    let p = choose_prime(f);
    let fp = ModPoly::from_int(f, p);
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // Lift high enough that true factor coefficients are recoverable from
    // symmetric residues: Mignotte-style bound 2^deg * l2norm(f).
    let bound = coeff_bound(f);
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    let two_bound = BigInt::from(2) * &bound;
    while pk <= two_bound {
        pk *= BigInt::from(p);
        k += 1;
    }
    let lifted = hensel_tree(f, &modular, p, k, &pk);
    recombine(f, lifted, &pk)
}

/// Smallest odd prime p such that f stays squarefree mod p.
fn choose_prime(f: &IntPoly) -> u64 {
    let mut p = 3u64;
    loop {
        if is_small_prime(p) && !ModPoly::from_int(&f.derivative(), p).is_zero() {
            let fp = ModPoly::from_int(f, p);
            if fp.degree() == f.degree() {
                let g = fp.gcd(&ModPoly::from_int(&f.derivative(), p), p);
                if g.degree() == 0 {
                    return p;
                }
            }
        }
        p += 2;
    }
}

fn is_small_prime(n: u64) -> bool {
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

/// 2^deg * l2-norm, an upper bound for coefficients of monic divisors.
fn coeff_bound(f: &IntPoly) -> BigInt {
    let norm_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    norm << f.degree()
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x] for word-sized p.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
struct ModPoly {
    // Low degree first, coefficients in [0, p), trailing zeros trimmed.
    c: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a nonzero mod p.
    powmod_u64(a, p - 2, p)
}

fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
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

impl ModPoly {
    fn new(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { c }
    }

    fn zero() -> Self {
        ModPoly { c: vec![] }
    }

    fn one() -> Self {
        ModPoly { c: vec![1] }
    }

    fn x() -> Self {
        ModPoly { c: vec![0, 1] }
    }

    fn constant(v: u64, p: u64) -> Self {
        ModPoly::new(vec![v % p])
    }

    fn from_int(f: &IntPoly, p: u64) -> Self {
        let pp = BigInt::from(p);
        ModPoly::new(
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&pp).to_u64().unwrap())
                .collect(),
        )
    }

    fn to_int(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&v| BigInt::from(v)).collect())
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    fn sub(&self, other: &Self, p: u64) -> Self {
        let n = self.c.len().max(other.c.len());
        ModPoly::new(
            (0..n)
                .map(|i| (self.coeff(i) + p - other.coeff(i) % p) % p)
                .collect(),
        )
    }

    fn mul(&self, other: &Self, p: u64) -> Self {
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero();
        }
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        ModPoly::new(out)
    }

    fn scale(&self, v: u64, p: u64) -> Self {
        ModPoly::new(self.c.iter().map(|&a| mulmod(a, v, p)).collect())
    }

    fn make_monic(&self, p: u64) -> Self {
        if self.is_zero() {
            return ModPoly::zero();
        }
        let inv = invmod(*self.c.last().unwrap(), p);
        self.scale(inv, p)
    }

    /// Division with remainder: returns (quotient, remainder).
    fn divrem(&self, d: &Self, p: u64) -> (Self, Self) {
        assert!(!d.is_zero());
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (ModPoly::zero(), self.clone());
        }
        let dn = d.c.len();
        let lead_inv = invmod(*d.c.last().unwrap(), p);
        let qlen = r.len() - dn + 1;
        let mut q = vec![0u64; qlen];
        for k in (0..qlen).rev() {
            let top = r[k + dn - 1] % p;
            if top == 0 {
                continue;
            }
            let qc = mulmod(top, lead_inv, p);
            q[k] = qc;
            for (j, &dc) in d.c.iter().enumerate() {
                let sub = mulmod(qc, dc, p);
                r[k + j] = (r[k + j] + p - sub) % p;
            }
        }
        (ModPoly::new(q), ModPoly::new(r))
    }

    fn rem(&self, d: &Self, p: u64) -> Self {
        self.divrem(d, p).1
    }

    fn gcd(&self, other: &Self, p: u64) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.make_monic(p)
    }

    /// Extended Euclid: returns (g, s, t) with s*self + t*other = g, g monic.
    fn xgcd(&self, other: &Self, p: u64) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = ModPoly::one();
        let mut s1 = ModPoly::zero();
        let mut t0 = ModPoly::zero();
        let mut t1 = ModPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, p);
            let s = s0.sub(&q.mul(&s1, p), p);
            let t = t0.sub(&q.mul(&t1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = invmod(*r0.c.last().unwrap(), p);
        (r0.scale(inv, p), s0.scale(inv, p), t0.scale(inv, p))
    }

    /// x^e mod (self), by repeated squaring on polynomials.
    fn pow_x_mod(&self, e: u64, p: u64) -> Self {
        let mut acc = ModPoly::one();
        let mut base = ModPoly::x().rem(self, p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p).rem(self, p);
            }
            base = base.mul(&base, p).rem(self, p);
            e >>= 1;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Berlekamp factorization of a squarefree monic polynomial over F_p.
// ---------------------------------------------------------------------------

fn berlekamp(f: &ModPoly, p: u64) -> Vec<ModPoly> {
    let n = f.degree();
    if n <= 1 {
        return vec![f.make_monic(p)];
    }
    // Build the matrix of x^{p*i} mod f (columns expressed in basis 1..x^{n-1}).
    let xp = f.pow_x_mod(p, p);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = ModPoly::one();
    for i in 0..n {
        if i > 0 {
            cur = cur.mul(&xp, p).rem(f, p);
        }
        let mut row = vec![0u64; n];
        for (j, &c) in cur.c.iter().enumerate() {
            row[j] = c;
        }
        rows.push(row);
    }
    // Q - I, kernel over F_p. rows[i] is the image of basis vector x^i.
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    let kernel = kernel_basis(rows, n, p);
    let r = kernel.len();
    if r == 1 {
        return vec![f.make_monic(p)];
    }
    let mut factors = vec![f.make_monic(p)];
    for v in kernel.iter() {
        if factors.len() == r {
            break;
        }
        let vpoly = ModPoly::new(v.clone());
        if vpoly.degree() == 0 {
            continue;
        }
        let mut next: Vec<ModPoly> = Vec::new();
        for u in factors.into_iter() {
            if u.degree() <= 1 || next.len() + 1 == r {
                next.push(u);
                continue;
            }
            let mut pieces: Vec<ModPoly> = Vec::new();
            let mut rest = u.clone();
            for c in 0..p {
                if rest.degree() == 0 {
                    break;
                }
                let shifted = vpoly.sub(&ModPoly::constant(c, p), p);
                let g = rest.gcd(&shifted, p);
                if g.degree() >= 1 && g.degree() < rest.degree() {
                    rest = rest.divrem(&g, p).0.make_monic(p);
                    pieces.push(g);
                } else if g.degree() >= 1 && g.degree() == rest.degree() {
                    rest = ModPoly::one();
                    pieces.push(g);
                }
            }
            if rest.degree() >= 1 {
                pieces.push(rest.make_monic(p));
            }
            next.extend(pieces);
        }
        factors = next;
    }
    factors.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.c.cmp(&b.c)));
    factors
}

/// Kernel basis of the matrix whose ROWS are images of basis vectors,
/// i.e. null space of the transposed action v -> v*M.
fn kernel_basis(m: Vec<Vec<u64>>, n: usize, p: u64) -> Vec<Vec<u64>> {
    // Row-reduce M^T so kernel vectors of the linear map x -> M^T x are found:
    // we want v with sum_i v_i * m[i] = 0, i.e. null space of M^T (columns = m[i]).
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|r| (0..n).map(|c| m[c][r]).collect())
        .collect();
    let mut pivot_col_of_row = vec![usize::MAX; n];
    let mut row = 0usize;
    for col in 0..n {
        let mut sel = None;
        for r in row..n {
            if a[r][col] != 0 {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        a.swap(row, sel);
        let inv = invmod(a[row][col], p);
        for c in 0..n {
            a[row][c] = mulmod(a[row][c], inv, p);
        }
        for r in 0..n {
            if r != row && a[r][col] != 0 {
                let factor = a[r][col];
                for c in 0..n {
                    let sub = mulmod(factor, a[row][c], p);
                    a[r][c] = (a[r][c] + p - sub) % p;
                }
            }
        }
        pivot_col_of_row[row] = col;
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row[..row].to_vec();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            // x_pc = -sum over free columns
            let coeff = a[r][free];
            if coeff != 0 {
                v[pc] = (p - coeff) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Hensel lifting.
// ---------------------------------------------------------------------------

/// Symmetric residue of each coefficient mod pk, in (-pk/2, pk/2].
fn symmetric_mod(f: &IntPoly, pk: &BigInt) -> IntPoly {
    let half = pk / BigInt::from(2);
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let mut r = c.mod_floor(pk);
                if r > half {
                    r -= pk;
                }
                r
            })
            .collect(),
    )
}

fn reduce_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Lifts the pairwise-coprime factorization `f = prod facs mod p` to mod p^k.
fn hensel_tree(f: &IntPoly, facs: &[ModPoly], p: u64, k: u32, pk: &BigInt) -> Vec<IntPoly> {
    if facs.len() == 1 {
        return vec![symmetric_mod(f, pk)];
    }
    let mid = facs.len() / 2;
    let (left, right) = facs.split_at(mid);
    let g0 = left.iter().fold(ModPoly::one(), |acc, x| acc.mul(x, p));
    let h0 = right.iter().fold(ModPoly::one(), |acc, x| acc.mul(x, p));
    let (g, h) = hensel_pair(f, &g0, &h0, p, k);
    let mut out = hensel_tree(&g, left, p, k, pk);
    out.extend(hensel_tree(&h, right, p, k, pk));
    out
}

/// Linear Hensel lifting of a coprime monic pair: f = g*h mod p  ->  mod p^k.
fn hensel_pair(f: &IntPoly, g0: &ModPoly, h0: &ModPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, _s, t) = g0.xgcd(h0, p);
    assert!(one.degree() == 0 && !one.is_zero(), "factors must be coprime mod p");
    let bp = BigInt::from(p);
    let mut g = g0.to_int();
    let mut h = h0.to_int();
    let mut modulus = bp.clone();
    for _ in 1..k {
        // e = (f - g*h) / modulus, reduced mod p.
        let diff = f.sub(&g.mul(&h));
        let e_int = IntPoly::new(
            diff.coeffs()
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(&modulus);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect(),
        );
        let e = ModPoly::from_int(&e_int, p);
        // u = t*e mod g0 ; w = (e - u*h0)/g0, both over F_p.
        let u = t.mul(&e, p).rem(g0, p);
        let num = e.sub(&u.mul(h0, p), p);
        let (w, rem) = num.divrem(g0, p);
        debug_assert!(rem.is_zero());
        g = g.add(&scale_int(&u.to_int(), &modulus));
        h = h.add(&scale_int(&w.to_int(), &modulus));
        modulus *= &bp;
        g = reduce_mod(&g, &modulus);
        h = reduce_mod(&h, &modulus);
        // Keep monic representatives: leading coefficients are 1 mod p and
        // unchanged by corrections of lower degree.
        debug_assert_eq!(g.degree() + h.degree(), f.degree());
    }
    (g, h)
}

fn scale_int(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c * m).collect())
}

// ---------------------------------------------------------------------------
// Zassenhaus recombination.
// ---------------------------------------------------------------------------

fn recombine(f: &IntPoly, lifted: Vec<IntPoly>, pk: &BigInt) -> Vec<IntPoly> {
    let mut pool: Vec<IntPoly> = lifted;
    let mut remaining = f.clone();
    let mut found: Vec<IntPoly> = Vec::new();
    let mut card = 1usize;
    'outer: while 2 * card <= pool.len() {
        let indices: Vec<usize> = (0..pool.len()).collect();
        for combo in Combinations::new(indices.len(), card) {
            let subset: Vec<usize> = combo.iter().map(|&i| indices[i]).collect();
            let mut prod = IntPoly::one();
            for &i in &subset {
                prod = reduce_mod(&prod.mul(&pool[i]), pk);
            }
            let candidate = symmetric_mod(&prod, pk);
            if let Some(quot) = remaining.div_exact(&candidate) {
                found.push(candidate);
                remaining = quot;
                let mut keep = Vec::new();
                for (i, g) in pool.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(g);
                    }
                }
                pool = keep;
                continue 'outer;
            }
        }
        card += 1;
    }
    if remaining.degree() >= 1 {
        found.push(remaining);
    }
    found
}

/// Lexicographic k-subsets of {0..n-1}.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        if k == 0 {
            self.done = true;
            return Some(out);
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] != i + self.n - k {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_i64(v)
    }

    #[test]
    fn factors_product_of_linears() {
        // (x-1)(x-5)(x-25)
        let f = p(&[-1, 1]).mul(&p(&[-5, 1])).mul(&p(&[-25, 1]));
        let fac = factor_monic(&f);
        assert_eq!(fac.len(), 3);
        for (g, m) in &fac {
            assert_eq!(*m, 1);
            assert_eq!(g.degree(), 1);
        }
    }

    #[test]
    fn keeps_irreducible_quadratic_whole() {
        // (x^2 - 2x + 5)(x - 5): the quadratic has complex roots 1±2i.
        let f = p(&[5, -2, 1]).mul(&p(&[-5, 1]));
        let fac = factor_monic(&f);
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().any(|(g, _)| g == &p(&[5, -2, 1])));
        assert!(fac.iter().any(|(g, _)| g == &p(&[-5, 1])));
    }

    #[test]
    fn multiplicities_from_squarefree_decomposition() {
        // (x-5)^4 (x^2+6x+25)
        let f = p(&[-5, 1]).pow(4).mul(&p(&[25, 6, 1]));
        let fac = factor_monic(&f);
        assert_eq!(fac.len(), 2);
        let quartic = fac.iter().find(|(g, _)| g.degree() == 1).unwrap();
        assert_eq!(quartic.1, 4);
        let quad = fac.iter().find(|(g, _)| g.degree() == 2).unwrap();
        assert_eq!(quad.1, 1);
        assert_eq!(quad.0, p(&[25, 6, 1]));
    }

    #[test]
    fn irreducible_stays_whole() {
        // x^4 + 1 is irreducible over Z (but reducible mod every prime).
        let f = p(&[1, 0, 0, 0, 1]);
        let fac = factor_monic(&f);
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].0, f);
        assert_eq!(fac[0].1, 1);
    }

    #[test]
    fn cyclotomic_like_product() {
        // (x^2+x+1)(x^2-x+1)(x-1)(x+1) = x^6 - 1 ... actually x^6-1 factors
        // as (x-1)(x+1)(x^2+x+1)(x^2-x+1).
        let f = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let fac = factor_monic(&f);
        let degs: Vec<usize> = fac.iter().map(|(g, _)| g.degree()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        let rebuilt = fac
            .iter()
            .fold(IntPoly::one(), |acc, (g, m)| acc.mul(&g.pow(*m)));
        assert_eq!(rebuilt, f);
    }

    #[test]
    fn big_weil_style_product() {
        // Product resembling P_0..P_4 of an abelian surface, reversed to monic:
        // (x-1)(x^2-2x+5)^2 (x-5)^4 (x^2+6x+25)(x^2-10x+125)^2 (x-25)
        let f = p(&[-1, 1])
            .mul(&p(&[5, -2, 1]).pow(2))
            .mul(&p(&[-5, 1]).pow(4))
            .mul(&p(&[25, 6, 1]))
            .mul(&p(&[125, -10, 1]).pow(2))
            .mul(&p(&[-25, 1]));
        let fac = factor_monic(&f);
        let rebuilt = fac
            .iter()
            .fold(IntPoly::one(), |acc, (g, m)| acc.mul(&g.pow(*m)));
        assert_eq!(rebuilt, f);
        assert_eq!(fac.len(), 6);
    }
}

//! Hodge diamonds h^{j,i} = dim H^j(X, Omega^i) for the supported variety
//! shapes, and the integer exponent chi(X, O_X, r) they feed.
//!
//! Hypersurface middle cohomology uses the classical generating-function
//! formula for the primitive Hodge numbers (Jacobian-ring dimensions). In
//! positive characteristic this matches the coherent numbers only when
//! lifting is unobstructed; callers flag inputs where the characteristic
//! divides the degree, since no computational recipe exists there.

use alloc::{vec, vec::Vec};

use crate::variety::VarietyExpr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HodgeError {
    UnsupportedVariety,
}

impl core::fmt::Display for HodgeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            HodgeError::UnsupportedVariety => write!(f, "variety shape has no Hodge data"),
        }
    }
}

/// (d+1) x (d+1) matrix of Hodge numbers; `h[j][i] = dim H^j(X, Omega^i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeDiamond {
    d: usize,
    h: Vec<Vec<u64>>,
}

impl HodgeDiamond {
    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn entry(&self, j: usize, i: usize) -> u64 {
        self.h[j][i]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.h
    }

    /// Betti numbers b_m = sum_{i+j=m} h[j][i], m = 0..2d.
    pub fn betti(&self) -> Vec<u64> {
        let d = self.d;
        let mut b = vec![0u64; 2 * d + 1];
        for j in 0..=d {
            for i in 0..=d {
                b[i + j] += self.h[j][i];
            }
        }
        b
    }

    /// Serre duality h[j][i] = h[d-j][d-i].
    pub fn is_serre_symmetric(&self) -> bool {
        let d = self.d;
        for j in 0..=d {
            for i in 0..=d {
                if self.h[j][i] != self.h[d - j][d - i] {
                    return false;
                }
            }
        }
        true
    }
}

/// Hodge diamond of a supported variety.
pub fn hodge_of(v: &VarietyExpr) -> Result<HodgeDiamond, HodgeError> {
    match v {
        VarietyExpr::ProjectiveSpace(n) => Ok(projective_space(*n as usize)),
        VarietyExpr::Hypersurface { ambient, f } => {
            Ok(hypersurface(*ambient as usize, f.total_degree() as usize))
        }
        VarietyExpr::PlaneCurve { f } => Ok(hypersurface(2, f.total_degree() as usize)),
        VarietyExpr::Product(l, r) => {
            let a = hodge_of(l)?;
            let b = hodge_of(r)?;
            Ok(kunneth(&a, &b))
        }
    }
}

fn projective_space(n: usize) -> HodgeDiamond {
    let mut h = vec![vec![0u64; n + 1]; n + 1];
    for (i, row) in h.iter_mut().enumerate() {
        row[i] = 1;
    }
    HodgeDiamond { d: n, h }
}

/// Smooth hypersurface of degree e in P^n (dimension d = n-1): off the middle
/// row the diamond is the ambient one; the middle row adds the primitive
/// numbers dim R_{(q+1)e-n-1} where R has Hilbert series
/// ((1-t^{e-1})/(1-t))^{n+1}.
fn hypersurface(n: usize, e: usize) -> HodgeDiamond {
    let d = n - 1;
    let mut h = vec![vec![0u64; d + 1]; d + 1];
    for (idx, row) in h.iter_mut().enumerate() {
        row[idx] = if 2 * idx == d { 0 } else { 1 };
    }
    // Hilbert series of the Jacobian-type ring: (1 + t + ... + t^{e-2})^{n+1},
    // the zero polynomial when e = 1.
    let series = if e >= 2 {
        poly_power(&vec![1u64; e - 1], n + 1)
    } else {
        vec![]
    };
    for q in 0..=d {
        let p = d - q;
        let needed = (q + 1) * e;
        let prim = if needed >= n + 1 {
            series.get(needed - n - 1).copied().unwrap_or(0)
        } else {
            0
        };
        let ambient = if p == q { 1 } else { 0 };
        h[q][p] = prim + ambient;
    }
    HodgeDiamond { d, h }
}

fn poly_power(base: &[u64], e: usize) -> Vec<u64> {
    let mut acc = vec![1u64];
    for _ in 0..e {
        let mut next = vec![0u64; acc.len() + base.len() - 1];
        for (i, &a) in acc.iter().enumerate() {
            for (j, &b) in base.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

fn kunneth(a: &HodgeDiamond, b: &HodgeDiamond) -> HodgeDiamond {
    let d = a.d + b.d;
    let mut h = vec![vec![0u64; d + 1]; d + 1];
    for j1 in 0..=a.d {
        for i1 in 0..=a.d {
            if a.h[j1][i1] == 0 {
                continue;
            }
            for j2 in 0..=b.d {
                for i2 in 0..=b.d {
                    h[j1 + j2][i1 + i2] += a.h[j1][i1] * b.h[j2][i2];
                }
            }
        }
    }
    HodgeDiamond { d, h }
}

/// The exact integer sum_{i<=r, j} (-1)^{i+j} (r-i) h[j][i]; the exponent of
/// q in the special-value identity. The i-sum truncates at min(r, d).
pub fn chi_o(hd: &HodgeDiamond, r: u32) -> i64 {
    let d = hd.d;
    let top = (r as usize).min(d);
    let mut total: i64 = 0;
    for i in 0..=top {
        let weight = r as i64 - i as i64;
        for j in 0..=d {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            total += sign * weight * hd.h[j][i] as i64;
        }
    }
    total
}

/// True when the characteristic divides the degree of some hypersurface
/// factor; the generating-function Hodge numbers are then unreliable.
pub fn char_caveat(v: &VarietyExpr, p: u64) -> bool {
    match v {
        VarietyExpr::ProjectiveSpace(_) => false,
        VarietyExpr::Hypersurface { f, .. } | VarietyExpr::PlaneCurve { f } => {
            u64::from(f.total_degree()) % p == 0
        }
        VarietyExpr::Product(l, r) => char_caveat(l, p) || char_caveat(r, p),
    }
}

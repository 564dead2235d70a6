//! Reconstruction of Z(X,t) in Weil-factored form from point counts.
//!
//! The pipeline: exponentiate the counts into the power series of Z(X,t),
//! solve the Pade system for numerator and denominator exactly over the
//! rationals, factor the product over the integers, and sort irreducible
//! factors into weights by the moduli of their inverse roots. Everything
//! after the weight assignment is exact integer data.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::{vec, vec::Vec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, Zero};

use crate::finite_field::{PrimePower, PrimePowerField};
use crate::hodge::HodgeError;
use crate::poly::{factor::factor_monic, roots, IntPoly};
use crate::variety::{self, CountVector, VarietyError, VarietyExpr};
use crate::SizeGuard;

/// Relative tolerance for matching an inverse-root modulus against q^{i/2}.
pub const WEIGHT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZetaError {
    InsufficientCounts { needed: usize, got: usize },
    /// The counts are inconsistent with the declared Betti degrees.
    NoRationalFit(String),
    /// An irreducible factor has inverse roots matching no single weight.
    WeightAmbiguous(String),
    /// Directly entered Frobenius data violates the factor invariants.
    InvalidFactors(String),
    Variety(VarietyError),
    Hodge(HodgeError),
}

impl core::fmt::Display for ZetaError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ZetaError::InsufficientCounts { needed, got } => {
                write!(f, "need {} point counts, got {}", needed, got)
            }
            ZetaError::NoRationalFit(d) => write!(f, "no rational fit: {}", d),
            ZetaError::WeightAmbiguous(d) => write!(f, "weight assignment ambiguous: {}", d),
            ZetaError::InvalidFactors(d) => write!(f, "invalid zeta factors: {}", d),
            ZetaError::Variety(e) => write!(f, "{}", e),
            ZetaError::Hodge(e) => write!(f, "{}", e),
        }
    }
}

impl From<VarietyError> for ZetaError {
    fn from(e: VarietyError) -> Self {
        ZetaError::Variety(e)
    }
}

impl From<HodgeError> for ZetaError {
    fn from(e: HodgeError) -> Self {
        ZetaError::Hodge(e)
    }
}

/// Weil factorization of Z(X,t): P_0..P_{2d} with integer coefficients and
/// constant term 1; Z = prod P_i^{(-1)^{i+1}}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaFunction {
    d: usize,
    q: PrimePower,
    factors: Vec<IntPoly>,
}

impl ZetaFunction {
    /// Builds a zeta function from validated Frobenius characteristic
    /// polynomials. Checks constant terms, the boundary factors P_0 and
    /// P_{2d}, and that every inverse root of P_i has modulus q^{i/2}.
    pub fn from_factors(q: PrimePower, factors: Vec<IntPoly>) -> Result<Self, ZetaError> {
        if factors.len() % 2 == 0 || factors.is_empty() {
            return Err(ZetaError::InvalidFactors(format!(
                "expected an odd number of factors P_0..P_2d, got {}",
                factors.len()
            )));
        }
        let d = (factors.len() - 1) / 2;
        for (i, p) in factors.iter().enumerate() {
            if !p.constant_term().is_one() {
                return Err(ZetaError::InvalidFactors(format!(
                    "P_{} has constant term {}, expected 1",
                    i,
                    p.constant_term()
                )));
            }
        }
        if factors[0] != IntPoly::one_minus_ct(BigInt::one()) {
            return Err(ZetaError::InvalidFactors("P_0 must be 1 - t".to_string()));
        }
        let qd = BigInt::from(q.q()).pow(d as u32);
        if factors[2 * d] != IntPoly::one_minus_ct(qd) {
            return Err(ZetaError::InvalidFactors(format!(
                "P_{} must be 1 - q^{} t",
                2 * d,
                d
            )));
        }
        let z = ZetaFunction { d, q, factors };
        z.check_weights()?;
        Ok(z)
    }

    /// No validation; for internal plumbing and adversarial tests.
    pub fn from_factors_unchecked(q: PrimePower, factors: Vec<IntPoly>) -> Self {
        assert!(factors.len() % 2 == 1);
        let d = (factors.len() - 1) / 2;
        ZetaFunction { d, q, factors }
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn factors(&self) -> &[IntPoly] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &IntPoly {
        &self.factors[i]
    }

    pub fn betti(&self) -> Vec<u64> {
        self.factors.iter().map(|p| p.degree() as u64).collect()
    }

    fn check_weights(&self) -> Result<(), ZetaError> {
        for (i, p) in self.factors.iter().enumerate() {
            if p.degree() == 0 {
                continue;
            }
            let sf = p.squarefree_part();
            let expected = Float::powf(self.q.q() as f64, i as f64 / 2.0);
            for root in roots::inverse_roots(&sf) {
                let dev = (root.norm() - expected).abs() / expected;
                if dev > WEIGHT_TOLERANCE {
                    return Err(ZetaError::InvalidFactors(format!(
                        "P_{} has an inverse root of modulus {} != q^{}/2 = {}",
                        i,
                        root.norm(),
                        i,
                        expected
                    )));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Reconstruction from counts.
// ---------------------------------------------------------------------------

/// Finds the unique rational function with the declared numerator and
/// denominator degrees matching exp(sum N_m t^m / m), factors it over the
/// integers, and sorts the irreducible factors into weights.
pub fn zeta_from_counts(counts: &CountVector, betti: &[u64]) -> Result<ZetaFunction, ZetaError> {
    if betti.len() % 2 == 0 || betti.is_empty() {
        return Err(ZetaError::NoRationalFit(format!(
            "betti vector must have odd length 2d+1, got {}",
            betti.len()
        )));
    }
    let d = (betti.len() - 1) / 2;
    if betti[0] != 1 || betti[2 * d] != 1 {
        return Err(ZetaError::NoRationalFit(
            "betti vector must have b_0 = b_2d = 1".to_string(),
        ));
    }
    let total: u64 = betti.iter().sum();
    let needed = total as usize;
    if counts.counts.len() < needed {
        return Err(ZetaError::InsufficientCounts {
            needed,
            got: counts.counts.len(),
        });
    }
    let m_terms = counts.counts.len();
    let num_deg: usize = betti.iter().skip(1).step_by(2).map(|&b| b as usize).sum();
    let den_deg: usize = betti.iter().step_by(2).map(|&b| b as usize).sum();

    // Power series of Z(X,t) to order t^M: z_k = (1/k) sum_{j<=k} N_j z_{k-j}.
    let series = exp_series(&counts.counts, m_terms);

    let (num, den) = pade_fit(&series, num_deg, den_deg)?;

    // A genuine Weil zeta function has integer numerator and denominator.
    let num = rational_to_int(&num).ok_or_else(|| {
        ZetaError::NoRationalFit("numerator has non-integer coefficients".to_string())
    })?;
    let den = rational_to_int(&den).ok_or_else(|| {
        ZetaError::NoRationalFit("denominator has non-integer coefficients".to_string())
    })?;

    // Factor N*D over Z via the monic reversal and assign weights.
    let product = num.mul(&den);
    let factors = split_by_weight(&product, counts.q, d)?;

    for (i, (p, &b)) in factors.iter().zip(betti).enumerate() {
        if p.degree() as u64 != b {
            return Err(ZetaError::NoRationalFit(format!(
                "weight-{} factor has degree {}, betti vector demands {}",
                i,
                p.degree(),
                b
            )));
        }
    }
    // Parity consistency: even weights must rebuild the denominator.
    let even: IntPoly = factors
        .iter()
        .step_by(2)
        .fold(IntPoly::one(), |acc, p| acc.mul(p));
    if even != den {
        return Err(ZetaError::NoRationalFit(
            "even-weight factors do not match the denominator".to_string(),
        ));
    }
    let z = ZetaFunction {
        d,
        q: counts.q,
        factors,
    };
    if z.factors[0] != IntPoly::one_minus_ct(BigInt::one()) {
        return Err(ZetaError::NoRationalFit("P_0 is not 1 - t".to_string()));
    }
    let qd = BigInt::from(z.q.q()).pow(d as u32);
    if z.factors[2 * d] != IntPoly::one_minus_ct(qd) {
        return Err(ZetaError::NoRationalFit(format!(
            "P_{} is not 1 - q^{} t",
            2 * d,
            d
        )));
    }
    Ok(z)
}

/// exp(sum N_m t^m / m) truncated to order `order`, exact.
fn exp_series(counts: &[BigInt], order: usize) -> Vec<BigRational> {
    let mut z = vec![BigRational::zero(); order + 1];
    z[0] = BigRational::one();
    for k in 1..=order {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            let n_j = BigRational::from_integer(counts[j - 1].clone());
            acc += n_j * &z[k - j];
        }
        z[k] = acc / BigRational::from_integer(BigInt::from(k));
    }
    z
}

/// Solves for monic-constant N, D with deg N <= num_deg, deg D <= den_deg,
/// D(0) = N(0) = 1 and D * series = N mod t^{len}.
fn pade_fit(
    series: &[BigRational],
    num_deg: usize,
    den_deg: usize,
) -> Result<(Vec<BigRational>, Vec<BigRational>), ZetaError> {
    let order = series.len() - 1;
    let rows = order - num_deg;
    // Unknowns d_1..d_{den_deg}; row j (j = num_deg+1..=order):
    //   sum_i series[j-i] d_i = -series[j].
    let mut matrix: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for j in num_deg + 1..=order {
        let mut row = Vec::with_capacity(den_deg + 1);
        for i in 1..=den_deg {
            row.push(if i <= j {
                series[j - i].clone()
            } else {
                BigRational::zero()
            });
        }
        row.push(-series[j].clone());
        matrix.push(row);
    }
    let solution = solve_linear(matrix, den_deg)
        .ok_or_else(|| ZetaError::NoRationalFit("linear system inconsistent".to_string()))?;
    let mut den = vec![BigRational::one()];
    den.extend(solution);
    // Numerator = low-order part of D * series.
    let mut num = Vec::with_capacity(num_deg + 1);
    for j in 0..=num_deg {
        let mut acc = BigRational::zero();
        for (i, dc) in den.iter().enumerate().take(j + 1) {
            acc += dc * &series[j - i];
        }
        num.push(acc);
    }
    // Defensive re-check of the full congruence.
    for j in 0..=order {
        let mut acc = BigRational::zero();
        for (i, dc) in den.iter().enumerate() {
            if i <= j {
                acc += dc * &series[j - i];
            }
        }
        let lhs = if j <= num_deg {
            num[j].clone()
        } else {
            BigRational::zero()
        };
        if acc != lhs {
            return Err(ZetaError::NoRationalFit(
                "solution fails the series congruence".to_string(),
            ));
        }
    }
    Ok((num, den))
}

/// Gaussian elimination over the rationals; rank-deficient free variables are
/// pinned to zero, inconsistency returns None. Input rows are [A | b].
fn solve_linear(mut m: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; unknowns];
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for c in col..=unknowns {
            let v = &m[row][c] / &inv;
            m[row][c] = v;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=unknowns {
                    let v = &m[r][c] - &factor * &m[row][c];
                    m[r][c] = v;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    // Inconsistent: zero row with nonzero rhs.
    for r in &m {
        if r[..unknowns].iter().all(|c| c.is_zero()) && !r[unknowns].is_zero() {
            return None;
        }
    }
    let mut sol = vec![BigRational::zero(); unknowns];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            sol[col] = m[*r][unknowns].clone();
        }
    }
    Some(sol)
}

fn rational_to_int(p: &[BigRational]) -> Option<IntPoly> {
    let mut out = Vec::with_capacity(p.len());
    for c in p {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(IntPoly::new(out))
}

/// Factors a constant-term-1 integer polynomial and regroups the irreducible
/// factors into P_0..P_{2d} by the moduli of their inverse roots.
fn split_by_weight(
    product: &IntPoly,
    q: PrimePower,
    d: usize,
) -> Result<Vec<IntPoly>, ZetaError> {
    let mut factors = vec![IntPoly::one(); 2 * d + 1];
    if product.is_one() {
        return Ok(factors);
    }
    let rev = product.reversal();
    if !rev.is_monic() {
        return Err(ZetaError::NoRationalFit(
            "numerator*denominator does not have constant term 1".to_string(),
        ));
    }
    for (h, mult) in factor_monic(&rev) {
        let g = h.reversal();
        let weight = assign_weight(&h, &g, q, d)?;
        factors[weight] = factors[weight].mul(&g.pow(mult));
    }
    Ok(factors)
}

/// Weight of an irreducible factor: the unique i with all inverse-root
/// moduli within WEIGHT_TOLERANCE of q^{i/2}.
fn assign_weight(monic_rev: &IntPoly, g: &IntPoly, q: PrimePower, d: usize) -> Result<usize, ZetaError> {
    let mut weight: Option<usize> = None;
    for root in roots::roots_of(monic_rev) {
        let modulus = root.norm();
        let mut matched: Option<usize> = None;
        for i in 0..=2 * d {
            let expected = Float::powf(q.q() as f64, i as f64 / 2.0);
            if (modulus - expected).abs() / expected <= WEIGHT_TOLERANCE {
                if matched.is_some() {
                    return Err(ZetaError::WeightAmbiguous(format!(
                        "factor {} has a root matching two weights",
                        g
                    )));
                }
                matched = Some(i);
            }
        }
        let Some(i) = matched else {
            return Err(ZetaError::WeightAmbiguous(format!(
                "factor {} has an inverse root of modulus {} matching no q^i/2",
                g, modulus
            )));
        };
        match weight {
            None => weight = Some(i),
            Some(w) if w != i => {
                return Err(ZetaError::WeightAmbiguous(format!(
                    "factor {} mixes weights {} and {}",
                    g, w, i
                )));
            }
            _ => {}
        }
    }
    weight.ok_or_else(|| ZetaError::WeightAmbiguous(format!("factor {} has no roots", g)))
}

// ---------------------------------------------------------------------------
// Expansion back into counts (Newton's identities, exact).
// ---------------------------------------------------------------------------

/// N_m = sum_i (-1)^i (power sum of inverse roots of P_i), for m = 1..=terms.
pub fn expand_counts(z: &ZetaFunction, terms: u32) -> Vec<BigInt> {
    let terms = terms as usize;
    let mut counts = vec![BigInt::zero(); terms];
    for (i, p) in z.factors.iter().enumerate() {
        let sums = power_sums(p, terms);
        for m in 0..terms {
            if i % 2 == 0 {
                counts[m] += &sums[m];
            } else {
                counts[m] -= &sums[m];
            }
        }
    }
    counts
}

/// Power sums of the inverse roots of a constant-term-1 polynomial, from
/// Newton's identities on the coefficients: p_m = -(m c_m + sum c_k p_{m-k}).
fn power_sums(p: &IntPoly, terms: usize) -> Vec<BigInt> {
    let deg = p.degree();
    let mut sums: Vec<BigInt> = Vec::with_capacity(terms);
    for m in 1..=terms {
        let mut acc = if m <= deg {
            p.coeff(m) * BigInt::from(m)
        } else {
            BigInt::zero()
        };
        for k in 1..m.min(deg + 1) {
            acc += p.coeff(k) * &sums[m - k - 1];
        }
        sums.push(-acc);
    }
    sums
}

// ---------------------------------------------------------------------------
// Structural checks.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionalEquation {
    Holds { sign: i8, exponent: i64 },
    Fails(String),
}

/// Verifies Z(1/(q^d t)) = ± q^{d chi/2} t^chi Z(t) as an exact identity,
/// chi = sum (-1)^i b_i.
pub fn functional_equation_check(z: &ZetaFunction) -> FunctionalEquation {
    let d = z.d;
    let q = BigInt::from(z.q.q());
    let chi: i64 = z
        .factors
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let b = p.degree() as i64;
            if i % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .sum();
    if (d as i64 * chi) % 2 != 0 {
        return FunctionalEquation::Fails(format!(
            "d*chi = {} is odd; q^(d chi/2) is irrational",
            d as i64 * chi
        ));
    }
    // P* with coefficient j scaled by q^{d j} after reversal.
    let star = |p: &IntPoly| -> IntPoly {
        let rev = p.reversal();
        IntPoly::new(
            rev.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| c * q.pow(d as u32 * j as u32))
                .collect(),
        )
    };
    let mut a = IntPoly::one();
    let mut b = IntPoly::one();
    for (i, p) in z.factors.iter().enumerate() {
        if i % 2 == 1 {
            a = a.mul(&star(p));
            b = b.mul(p);
        } else {
            a = a.mul(p);
            b = b.mul(&star(p));
        }
    }
    // The identity holds iff B = ± q^{d chi / 2} A.
    let half = d as i64 * chi / 2;
    let scale = if half >= 0 {
        BigRational::from_integer(q.pow(half as u32))
    } else {
        BigRational::new(BigInt::one(), q.pow((-half) as u32))
    };
    let deg = a.degree().max(b.degree());
    let mut sign: Option<i8> = None;
    for j in 0..=deg {
        let lhs = BigRational::from_integer(b.coeff(j));
        let rhs = BigRational::from_integer(a.coeff(j)) * &scale;
        if lhs.is_zero() && rhs.is_zero() {
            continue;
        }
        if lhs == rhs {
            match sign {
                Some(-1) => {
                    return FunctionalEquation::Fails("mixed signs across coefficients".to_string())
                }
                _ => sign = Some(1),
            }
        } else if lhs == -rhs {
            match sign {
                Some(1) => {
                    return FunctionalEquation::Fails("mixed signs across coefficients".to_string())
                }
                _ => sign = Some(-1),
            }
        } else {
            return FunctionalEquation::Fails(format!(
                "coefficient {} breaks the functional equation",
                j
            ));
        }
    }
    FunctionalEquation::Holds {
        sign: sign.unwrap_or(1),
        exponent: chi,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RhFactorReport {
    /// Cohomological degree i of the factor.
    pub weight: usize,
    pub degree: usize,
    /// Largest relative deviation of an inverse-root modulus from q^{i/2}.
    pub max_relative_deviation: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RhReport {
    pub factors: Vec<RhFactorReport>,
    pub all_ok: bool,
}

/// Numerically locates inverse roots of each factor and compares their
/// moduli against q^{i/2} at the pinned tolerance.
pub fn riemann_hypothesis_check(z: &ZetaFunction) -> RhReport {
    let mut factors = Vec::with_capacity(z.factors.len());
    let mut all_ok = true;
    for (i, p) in z.factors.iter().enumerate() {
        let mut max_dev = 0.0f64;
        if p.degree() >= 1 {
            let sf = p.squarefree_part();
            let expected = Float::powf(z.q.q() as f64, i as f64 / 2.0);
            for root in roots::inverse_roots(&sf) {
                let dev = (root.norm() - expected).abs() / expected;
                if dev > max_dev {
                    max_dev = dev;
                }
            }
        }
        let ok = max_dev <= WEIGHT_TOLERANCE;
        all_ok &= ok;
        factors.push(RhFactorReport {
            weight: i,
            degree: p.degree(),
            max_relative_deviation: max_dev,
            ok,
        });
    }
    RhReport { factors, all_ok }
}

// ---------------------------------------------------------------------------
// Count strategy: per-factor reconstruction, multiplicative assembly.
// ---------------------------------------------------------------------------

/// Reconstructs the zeta function of a variety with a caller-supplied
/// count source (serial enumeration, parallel enumeration, ...). Non-product
/// varieties are counted for as many terms as the Betti degrees demand;
/// products reconstruct each factor first and multiply expanded count
/// vectors, which realizes the Kunneth zeta without enumerating the
/// product's large extension fields.
pub fn zeta_via_counter<F>(
    v: &VarietyExpr,
    q: PrimePower,
    counter: &F,
) -> Result<ZetaFunction, ZetaError>
where
    F: Fn(&VarietyExpr, u32) -> Result<Vec<BigInt>, ZetaError>,
{
    let betti = variety::betti_degrees(v)?;
    let needed: u64 = betti.iter().sum();
    match v {
        VarietyExpr::Product(l, r) => {
            let zl = zeta_via_counter(l, q, counter)?;
            let zr = if l == r {
                zl.clone()
            } else {
                zeta_via_counter(r, q, counter)?
            };
            let cl = expand_counts(&zl, needed as u32);
            let cr = expand_counts(&zr, needed as u32);
            let counts: Vec<BigInt> = cl.iter().zip(&cr).map(|(a, b)| a * b).collect();
            zeta_from_counts(&CountVector { q, counts }, &betti)
        }
        _ => {
            let counts = counter(v, needed as u32)?;
            zeta_from_counts(&CountVector { q, counts }, &betti)
        }
    }
}

/// [`zeta_via_counter`] with plain serial enumeration.
pub fn zeta_of_variety(
    v: &VarietyExpr,
    field: &PrimePowerField,
    q: PrimePower,
    guard: &SizeGuard,
) -> Result<ZetaFunction, ZetaError> {
    zeta_via_counter(v, q, &|w, terms| {
        Ok(variety::count_vector(w, field, q, terms, guard)?.counts)
    })
}

/// N_1..N_terms for a variety, avoiding enumeration beyond what the zeta
/// reconstruction itself needs.
pub fn counts_via_zeta(
    v: &VarietyExpr,
    field: &PrimePowerField,
    q: PrimePower,
    terms: u32,
    guard: &SizeGuard,
) -> Result<Vec<BigInt>, ZetaError> {
    let z = zeta_of_variety(v, field, q, guard)?;
    Ok(expand_counts(&z, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;

    fn pp(p: u64, k: u32) -> PrimePower {
        PrimePower::new(p, k, &SizeGuard::default()).unwrap()
    }

    fn cv(q: PrimePower, counts: &[i64]) -> CountVector {
        CountVector {
            q,
            counts: counts.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    #[test]
    fn projective_line_over_f3() {
        let z = zeta_from_counts(&cv(pp(3, 1), &[4, 10, 28]), &[1, 0, 1]).unwrap();
        assert_eq!(z.factor(0), &IntPoly::from_i64(&[1, -1]));
        assert_eq!(z.factor(1), &IntPoly::one());
        assert_eq!(z.factor(2), &IntPoly::from_i64(&[1, -3]));
    }

    #[test]
    fn elliptic_curve_frobenius_quadratic() {
        // Counts of y^2 z = x^3 + x z^2 over F_5 (a_5 = 2).
        let z = zeta_from_counts(&cv(pp(5, 1), &[4, 32, 148, 640]), &[1, 2, 1]).unwrap();
        assert_eq!(z.factor(1), &IntPoly::from_i64(&[1, -2, 5]));
        // N_2 from Newton identities: 5^2 + 1 - (2^2 - 2*5) = 32.
        assert_eq!(expand_counts(&z, 2)[1], BigInt::from(32));
    }

    #[test]
    fn constant_counts_do_not_fit_a_curve_shape() {
        let err = zeta_from_counts(&cv(pp(2, 1), &[1, 1, 1]), &[1, 0, 1]).unwrap_err();
        assert!(matches!(err, ZetaError::NoRationalFit(_)), "{:?}", err);
    }

    #[test]
    fn insufficient_counts_error() {
        let err = zeta_from_counts(&cv(pp(5, 1), &[4, 32]), &[1, 2, 1]).unwrap_err();
        assert!(matches!(
            err,
            ZetaError::InsufficientCounts { needed: 4, got: 2 }
        ));
    }

    #[test]
    fn round_trip_through_counts() {
        let counts = [4i64, 32, 148, 640];
        let z = zeta_from_counts(&cv(pp(5, 1), &counts), &[1, 2, 1]).unwrap();
        let expanded = expand_counts(&z, 4);
        for (a, b) in counts.iter().zip(&expanded) {
            assert_eq!(BigInt::from(*a), *b);
        }
        let z2 = zeta_from_counts(
            &CountVector {
                q: pp(5, 1),
                counts: expanded,
            },
            &[1, 2, 1],
        )
        .unwrap();
        assert_eq!(z, z2);
    }

    #[test]
    fn expand_counts_for_projective_plane() {
        let z = ZetaFunction::from_factors(
            pp(2, 1),
            vec![
                IntPoly::from_i64(&[1, -1]),
                IntPoly::one(),
                IntPoly::from_i64(&[1, -2]),
                IntPoly::one(),
                IntPoly::from_i64(&[1, -4]),
            ],
        )
        .unwrap();
        assert_eq!(expand_counts(&z, 1)[0], BigInt::from(7));
    }

    #[test]
    fn functional_equation_for_line_and_elliptic() {
        let line = zeta_from_counts(&cv(pp(3, 1), &[4, 10, 28]), &[1, 0, 1]).unwrap();
        assert_eq!(
            functional_equation_check(&line),
            FunctionalEquation::Holds {
                sign: 1,
                exponent: 2
            }
        );
        let e = zeta_from_counts(&cv(pp(5, 1), &[4, 32, 148, 640]), &[1, 2, 1]).unwrap();
        assert_eq!(
            functional_equation_check(&e),
            FunctionalEquation::Holds {
                sign: 1,
                exponent: 0
            }
        );
    }

    #[test]
    fn corrupted_factor_fails_functional_equation() {
        // Any 1 + a t + q t^2 is self-reciprocal, so the corruption must hit
        // the t^2 coefficient to break the equation.
        let z = ZetaFunction::from_factors_unchecked(
            pp(5, 1),
            vec![
                IntPoly::from_i64(&[1, -1]),
                IntPoly::from_i64(&[1, -2, 6]),
                IntPoly::from_i64(&[1, -5]),
            ],
        );
        assert!(matches!(
            functional_equation_check(&z),
            FunctionalEquation::Fails(_)
        ));
    }

    #[test]
    fn riemann_hypothesis_detects_split_roots() {
        let good = ZetaFunction::from_factors_unchecked(
            pp(5, 1),
            vec![
                IntPoly::from_i64(&[1, -1]),
                IntPoly::from_i64(&[1, -2, 5]),
                IntPoly::from_i64(&[1, -5]),
            ],
        );
        assert!(riemann_hypothesis_check(&good).all_ok);

        let bad = ZetaFunction::from_factors_unchecked(
            pp(5, 1),
            vec![
                IntPoly::from_i64(&[1, -1]),
                IntPoly::from_i64(&[1, -6, 5]), // inverse roots 1 and 5
                IntPoly::from_i64(&[1, -5]),
            ],
        );
        let report = riemann_hypothesis_check(&bad);
        assert!(!report.all_ok);
        assert!(!report.factors[1].ok);
    }

    #[test]
    fn from_factors_validates_boundary_polys() {
        let err = ZetaFunction::from_factors(
            pp(2, 1),
            vec![
                IntPoly::from_i64(&[1, -2]),
                IntPoly::one(),
                IntPoly::from_i64(&[1, -2]),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, ZetaError::InvalidFactors(_)));
    }

    #[test]
    fn zeta_of_product_vs_segre_counts() {
        // P^1 x P^1 over F_3 has the same counts as the Segre quadric; the
        // product path must produce factors with (1-3t)^2 in weight 2.
        let guard = SizeGuard::default();
        let f3 = make_field(3, 1, &guard).unwrap();
        let q = pp(3, 1);
        let p1 = VarietyExpr::projective_space(1);
        let prod = VarietyExpr::product(p1.clone(), p1);
        let z = zeta_of_variety(&prod, &f3, q, &guard).unwrap();
        assert_eq!(z.factor(2), &IntPoly::from_i64(&[1, -6, 9]));
        let counts = expand_counts(&z, 2);
        assert_eq!(counts[0], BigInt::from(16));
        assert_eq!(counts[1], BigInt::from(100));
    }
}

//! Cohomology orders over the Frobenius-generated group from characteristic
//! polynomial data, and the cross-check of the cohomological product against
//! the zeta-side special value.
//!
//! For a module M on which Frobenius acts with characteristic polynomial
//! P(t) = det(1 - F t), the group generated by Frobenius has only invariants
//! and coinvariants: H^0 = M^G, H^1 = M_G, and everything vanishes in
//! degrees >= 2. When q^r is not an inverse root of P, both are finite and
//! the product formula over all completions collapses their local indices
//! into the single archimedean value |P(q^{-r})|, which is what this module
//! reports as the multiplicative contribution of the degree. Per-prime parts
//! of that rational are exposed separately for inspection.
//!
//! Degree-by-degree, integral cohomology is recovered from its profinite
//! completion when the relevant Tate modules vanish, which is what justifies
//! reading these completed indices as the actual finite orders.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::finite_field::PrimePower;
use crate::poly::IntPoly;
use crate::special_value::{self, SpecialValueError};
use crate::zeta::{ZetaError, ZetaFunction};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrobError {
    /// Supplied minimal polynomial does not divide the characteristic one.
    MinPolyInconsistent(String),
}

impl core::fmt::Display for FrobError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FrobError::MinPolyInconsistent(s) => {
                write!(f, "minimal polynomial inconsistent: {}", s)
            }
        }
    }
}

/// Frobenius characteristic polynomials P_0..P_{2d}, det(1 - F t) on each
/// cohomology degree. Same invariants as the Weil factors of a zeta function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobData {
    q: PrimePower,
    polys: Vec<IntPoly>,
}

impl FrobData {
    /// Validates boundary factors, constant terms, and root moduli.
    pub fn new(q: PrimePower, polys: Vec<IntPoly>) -> Result<Self, ZetaError> {
        let z = ZetaFunction::from_factors(q, polys)?;
        Ok(FrobData::from_zeta(&z))
    }

    pub fn from_zeta(z: &ZetaFunction) -> Self {
        FrobData {
            q: z.q(),
            polys: z.factors().to_vec(),
        }
    }

    pub fn d(&self) -> usize {
        (self.polys.len() - 1) / 2
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }
}

/// Rank data for one cohomology group of the Frobenius-generated group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohRank {
    Finite,
    InfiniteRank(u32),
}

/// The group H^i for i >= 2 is zero; only invariants (i = 0) and
/// coinvariants (i = 1) survive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohGroup {
    Invariants(CohRank),
    Coinvariants(CohRank),
    Zero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gamma0Cohomology {
    /// Cohomological degree of the underlying module (index of P_i).
    pub degree: usize,
    pub twist: u32,
    pub h0: CohRank,
    pub h1: CohRank,
    /// Exact |P_i(q^{-r})|: the multiplicative contribution
    /// [coinvariants]/[invariants] after the product formula collapses the
    /// local indices. None when the twisted eigenvalue 1 forces positive rank.
    pub contribution: Option<BigRational>,
}

impl Gamma0Cohomology {
    /// Cohomology in degree i; zero for every i >= 2.
    pub fn h(&self, i: usize) -> CohGroup {
        match i {
            0 => CohGroup::Invariants(self.h0.clone()),
            1 => CohGroup::Coinvariants(self.h1.clone()),
            _ => CohGroup::Zero,
        }
    }

    pub fn rank(&self) -> u32 {
        match self.h0 {
            CohRank::Finite => 0,
            CohRank::InfiniteRank(r) => r,
        }
    }
}

/// Invariant/coinvariant data of the r-twisted degree-i module with
/// characteristic polynomial `p`. The multiplicity rho of q^r among the
/// inverse roots decides between finite orders (rho = 0, contribution
/// |P(q^{-r})|) and rank rho on both sides.
pub fn gamma0_cohomology(p: &IntPoly, q: PrimePower, degree: usize, r: u32) -> Gamma0Cohomology {
    let qr = BigInt::from(q.q()).pow(r);
    let (_, rho) = p.remove_one_minus_ct(&qr);
    if rho == 0 {
        let at = BigRational::new(BigInt::one(), qr);
        let value = p.eval_rational(&at).abs();
        Gamma0Cohomology {
            degree,
            twist: r,
            h0: CohRank::Finite,
            h1: CohRank::Finite,
            contribution: Some(value),
        }
    } else {
        Gamma0Cohomology {
            degree,
            twist: r,
            h0: CohRank::InfiniteRank(rho),
            h1: CohRank::InfiniteRank(rho),
            contribution: None,
        }
    }
}

/// One Weil-etale degree, assembled from the short exact sequence
/// 0 -> (H^{i-1})_G -> H^i_Wet -> (H^i)^G -> 0.
#[derive(Debug, Clone, PartialEq)]
pub struct WeilEtaleDegree {
    pub i: usize,
    /// Sum of the invariant and coinvariant ranks feeding this degree.
    pub rank: u32,
    /// |P_i(q^{-r})| when the invariant side is finite.
    pub invariant_index: Option<BigRational>,
    /// |P_{i-1}(q^{-r})| when the coinvariant side is finite.
    pub coinvariant_index: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeilEtaleReport {
    pub twist: u32,
    pub degrees: Vec<WeilEtaleDegree>,
}

impl WeilEtaleReport {
    pub fn rank_positive_degrees(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .filter(|d| d.rank > 0)
            .map(|d| d.i)
            .collect()
    }
}

/// Per-degree contributions for i = 0..=2d+1. A degree is rank-positive
/// exactly when q^r occurs among the inverse roots of P_i or P_{i-1}.
pub fn weil_etale_orders(fd: &FrobData, r: u32) -> WeilEtaleReport {
    let d = fd.d();
    let cohs: Vec<Gamma0Cohomology> = fd
        .polys
        .iter()
        .enumerate()
        .map(|(i, p)| gamma0_cohomology(p, fd.q, i, r))
        .collect();
    let mut degrees = Vec::with_capacity(2 * d + 2);
    for i in 0..=2 * d + 1 {
        let inv = if i <= 2 * d { Some(&cohs[i]) } else { None };
        let coinv = if i >= 1 && i - 1 <= 2 * d {
            Some(&cohs[i - 1])
        } else {
            None
        };
        let rank = inv.map_or(0, |c| c.rank()) + coinv.map_or(0, |c| c.rank());
        degrees.push(WeilEtaleDegree {
            i,
            rank,
            invariant_index: inv.and_then(|c| c.contribution.clone()),
            coinvariant_index: coinv.and_then(|c| c.contribution.clone()),
        });
    }
    WeilEtaleReport { twist: r, degrees }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CrossCheck {
    Match(BigRational),
    Mismatch { lhs: BigRational, rhs: BigRational },
}

/// Computes prod_i |P_i*(q^{-r})|^{(-1)^{i+1}} from the Frobenius data,
/// where each P_i* has every copy of (1 - q^r t) removed, and compares it
/// exactly against |leading_coefficient| from the zeta side. The identity is
/// algebraically forced when both sides come from the same polynomials, so
/// Mismatch signals corrupted or inconsistent input.
pub fn crosscheck_special_value(
    fd: &FrobData,
    z: &ZetaFunction,
    r: u32,
) -> Result<CrossCheck, SpecialValueError> {
    let qr = BigInt::from(fd.q.q()).pow(r);
    let at = BigRational::new(BigInt::one(), qr.clone());
    let mut lhs = BigRational::one();
    for (i, p) in fd.polys.iter().enumerate() {
        let (reduced, _) = p.remove_one_minus_ct(&qr);
        let v = reduced.eval_rational(&at).abs();
        if v.is_zero() {
            return Err(SpecialValueError::InternalZero { degree: i });
        }
        if i % 2 == 1 {
            lhs *= v;
        } else {
            lhs /= v;
        }
    }
    let rhs = special_value::leading_coefficient(z, r)?.abs();
    if lhs == rhs {
        Ok(CrossCheck::Match(lhs))
    } else {
        Ok(CrossCheck::Mismatch { lhs, rhs })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemisimplicityVerdict {
    Semisimple,
    NotSemisimple,
    Unknown,
}

/// Semisimplicity of the Frobenius action at the eigenvalue q^r on the
/// degree-2r module. With a minimal polynomial: semisimple iff (1 - q^r t)
/// divides it at most once. Without one, a simple or absent eigenvalue
/// decides; higher multiplicity is honestly Unknown.
pub fn semisimplicity_verdict(
    p2r: &IntPoly,
    q: PrimePower,
    r: u32,
    minimal_poly: Option<&IntPoly>,
) -> Result<SemisimplicityVerdict, FrobError> {
    let qr = BigInt::from(q.q()).pow(r);
    match minimal_poly {
        Some(mp) => {
            if p2r.div_exact(mp).is_none() {
                return Err(FrobError::MinPolyInconsistent(format!(
                    "{} does not divide {}",
                    mp, p2r
                )));
            }
            let (_, mult) = mp.remove_one_minus_ct(&qr);
            if mult <= 1 {
                Ok(SemisimplicityVerdict::Semisimple)
            } else {
                Ok(SemisimplicityVerdict::NotSemisimple)
            }
        }
        None => {
            let (_, rho) = p2r.remove_one_minus_ct(&qr);
            if rho <= 1 {
                Ok(SemisimplicityVerdict::Semisimple)
            } else {
                Ok(SemisimplicityVerdict::Unknown)
            }
        }
    }
}

/// l-primary decomposition of a positive rational: exponents of each prime
/// up to the trial-division cap, plus whatever residual remains.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimaryBreakdown {
    pub exponents: BTreeMap<u64, i64>,
    pub residual: BigRational,
}

pub fn primary_breakdown(x: &BigRational, cap: u64) -> PrimaryBreakdown {
    let mut exponents: BTreeMap<u64, i64> = BTreeMap::new();
    let mut num = x.numer().abs();
    let mut den = x.denom().abs();
    let mut p = 2u64;
    while p <= cap && (num > BigInt::one() || den > BigInt::one()) {
        let bp = BigInt::from(p);
        let mut e = 0i64;
        while (&num % &bp).is_zero() {
            num /= &bp;
            e += 1;
        }
        while (&den % &bp).is_zero() {
            den /= &bp;
            e -= 1;
        }
        if e != 0 {
            exponents.insert(p, e);
        }
        p = if p == 2 { 3 } else { p + 2 };
        // Skip obvious composites cheaply.
        while p <= cap && p > 3 && (p % 3 == 0) {
            p += 2;
        }
    }
    PrimaryBreakdown {
        exponents,
        residual: BigRational::new(num, den),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SizeGuard;

    fn pp(p: u64, k: u32) -> PrimePower {
        PrimePower::new(p, k, &SizeGuard::default()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn p2_over_f2() -> ZetaFunction {
        ZetaFunction::from_factors(
            pp(2, 1),
            vec![
                IntPoly::from_i64(&[1, -1]),
                IntPoly::one(),
                IntPoly::from_i64(&[1, -2]),
                IntPoly::one(),
                IntPoly::from_i64(&[1, -4]),
            ],
        )
        .unwrap()
    }

    fn elliptic_over_f5() -> ZetaFunction {
        ZetaFunction::from_factors(
            pp(5, 1),
            vec![
                IntPoly::from_i64(&[1, -1]),
                IntPoly::from_i64(&[1, -2, 5]),
                IntPoly::from_i64(&[1, -5]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn line_class_contribution_at_twist_two() {
        let p2 = IntPoly::from_i64(&[1, -2]);
        let coh = gamma0_cohomology(&p2, pp(2, 1), 2, 2);
        assert_eq!(coh.h0, CohRank::Finite);
        assert_eq!(coh.contribution, Some(rat(1, 2)));
    }

    #[test]
    fn degree_zero_contribution() {
        let p0 = IntPoly::from_i64(&[1, -1]);
        let coh = gamma0_cohomology(&p0, pp(2, 1), 0, 1);
        assert_eq!(coh.contribution, Some(rat(1, 2)));
    }

    #[test]
    fn twisted_eigenvalue_one_gives_rank() {
        let p2 = IntPoly::from_i64(&[1, -2]);
        let coh = gamma0_cohomology(&p2, pp(2, 1), 2, 1);
        assert_eq!(coh.h0, CohRank::InfiniteRank(1));
        assert_eq!(coh.h1, CohRank::InfiniteRank(1));
        assert_eq!(coh.contribution, None);
    }

    #[test]
    fn higher_cohomology_vanishes() {
        let p1 = IntPoly::from_i64(&[1, -2, 5]);
        let coh = gamma0_cohomology(&p1, pp(5, 1), 1, 1);
        for i in 2..10 {
            assert_eq!(coh.h(i), CohGroup::Zero, "H^{} must vanish", i);
        }
    }

    #[test]
    fn rank_positive_degrees_projective_plane() {
        let fd = FrobData::from_zeta(&p2_over_f2());
        let report = weil_etale_orders(&fd, 1);
        assert_eq!(report.rank_positive_degrees(), vec![2, 3]);
    }

    #[test]
    fn rank_positive_degrees_line_at_r0() {
        let line = ZetaFunction::from_factors(
            pp(3, 1),
            vec![
                IntPoly::from_i64(&[1, -1]),
                IntPoly::one(),
                IntPoly::from_i64(&[1, -3]),
            ],
        )
        .unwrap();
        let fd = FrobData::from_zeta(&line);
        assert_eq!(weil_etale_orders(&fd, 0).rank_positive_degrees(), vec![0, 1]);
    }

    #[test]
    fn rank_positive_degrees_elliptic() {
        let fd = FrobData::from_zeta(&elliptic_over_f5());
        assert_eq!(weil_etale_orders(&fd, 1).rank_positive_degrees(), vec![2, 3]);
    }

    #[test]
    fn crosscheck_matches_projective_plane() {
        let z = p2_over_f2();
        let fd = FrobData::from_zeta(&z);
        assert_eq!(
            crosscheck_special_value(&fd, &z, 1).unwrap(),
            CrossCheck::Match(rat(2, 1))
        );
    }

    #[test]
    fn crosscheck_matches_elliptic() {
        let z = elliptic_over_f5();
        let fd = FrobData::from_zeta(&z);
        assert_eq!(
            crosscheck_special_value(&fd, &z, 1).unwrap(),
            CrossCheck::Match(rat(1, 1))
        );
    }

    #[test]
    fn corrupted_factor_mismatches() {
        let z = elliptic_over_f5();
        let bad = ZetaFunction::from_factors_unchecked(
            pp(5, 1),
            vec![
                IntPoly::from_i64(&[1, -1]),
                IntPoly::from_i64(&[1, -1, 5]), // perturbed
                IntPoly::from_i64(&[1, -5]),
            ],
        );
        let fd = FrobData::from_zeta(&bad);
        assert!(matches!(
            crosscheck_special_value(&fd, &z, 1).unwrap(),
            CrossCheck::Mismatch { .. }
        ));
    }

    #[test]
    fn semisimplicity_cases() {
        // Simple pole: semisimple without extra data.
        let p2 = IntPoly::from_i64(&[1, -2]);
        assert_eq!(
            semisimplicity_verdict(&p2, pp(2, 1), 1, None).unwrap(),
            SemisimplicityVerdict::Semisimple
        );
        // Double eigenvalue, no minimal polynomial: Unknown.
        let sq = IntPoly::from_i64(&[1, -5]).pow(2);
        assert_eq!(
            semisimplicity_verdict(&sq, pp(5, 1), 1, None).unwrap(),
            SemisimplicityVerdict::Unknown
        );
        // Minimal polynomial (1 - 5t): acts semisimply.
        let mp = IntPoly::from_i64(&[1, -5]);
        assert_eq!(
            semisimplicity_verdict(&sq, pp(5, 1), 1, Some(&mp)).unwrap(),
            SemisimplicityVerdict::Semisimple
        );
        // Minimal polynomial (1 - 5t)^2: not semisimple.
        assert_eq!(
            semisimplicity_verdict(&sq, pp(5, 1), 1, Some(&sq)).unwrap(),
            SemisimplicityVerdict::NotSemisimple
        );
        // Non-divisor minimal polynomial: inconsistent.
        let bad = IntPoly::from_i64(&[1, -3]);
        assert!(matches!(
            semisimplicity_verdict(&sq, pp(5, 1), 1, Some(&bad)),
            Err(FrobError::MinPolyInconsistent(_))
        ));
    }

    #[test]
    fn primary_breakdown_of_rationals() {
        let b = primary_breakdown(&rat(12, 35), 100);
        assert_eq!(b.exponents.get(&2), Some(&2));
        assert_eq!(b.exponents.get(&3), Some(&1));
        assert_eq!(b.exponents.get(&5), Some(&-1));
        assert_eq!(b.exponents.get(&7), Some(&-1));
        assert_eq!(b.residual, rat(1, 1));
    }
}

//! Pole order and exact special value of Z(X,t) at t = q^{-r}, and the
//! predicted Euler characteristic they determine.
//!
//! The leading coefficient is computed by removing every copy of
//! (1 - q^r t) from the factored form exactly and evaluating the remaining
//! factors at q^{-r} in rational arithmetic. The prediction reads the
//! special-value identity as a definition: predicted = |leading| / q^{chi_O}.
//! The sign is reported but never asserted; the identity leaves it open.

use alloc::{vec, vec::Vec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::hodge::{self, HodgeDiamond};
use crate::poly::IntPoly;
use crate::zeta::ZetaFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialValueError {
    /// A factor still vanished after the pole was removed; impossible when
    /// the pole order is computed from the same data, so it flags a bug.
    InternalZero { degree: usize },
}

impl core::fmt::Display for SpecialValueError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SpecialValueError::InternalZero { degree } => write!(
                f,
                "factor P_{} vanished after removing the declared pole order",
                degree
            ),
        }
    }
}

/// Tri-state for pipeline hypotheses recorded alongside a special value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed,
    NotChecked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypothesisFlags {
    pub smoothness_probe: CheckStatus,
    pub weight_check: CheckStatus,
    pub functional_equation: CheckStatus,
}

impl HypothesisFlags {
    pub fn not_checked() -> Self {
        HypothesisFlags {
            smoothness_probe: CheckStatus::NotChecked,
            weight_check: CheckStatus::NotChecked,
            functional_equation: CheckStatus::NotChecked,
        }
    }

    pub fn all_passed(&self) -> bool {
        [
            self.smoothness_probe,
            self.weight_check,
            self.functional_equation,
        ]
        .iter()
        .all(|s| *s == CheckStatus::Passed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialValueReport {
    pub r: u32,
    /// Pole order of Z(X,t) at t = q^{-r} (denominator minus numerator
    /// multiplicity; non-negative for weight-consistent factorizations).
    pub rho: i64,
    /// Leading coefficient lim Z(X,t) (1 - q^r t)^rho, nonzero.
    pub leading: BigRational,
    pub chi_o: i64,
    /// |leading| / q^{chi_o}, the value the identity predicts for the
    /// Euler characteristic.
    pub predicted_chi_prime: BigRational,
    pub hypotheses: HypothesisFlags,
}

impl SpecialValueReport {
    pub fn sign(&self) -> i8 {
        if self.leading.is_negative() {
            -1
        } else {
            1
        }
    }
}

/// Multiplicity of t = q^{-r} as a pole: multiplicity in the denominator
/// factors minus multiplicity in the numerator factors, via exact division
/// by (1 - q^r t).
pub fn pole_order(z: &ZetaFunction, r: u32) -> i64 {
    let qr = BigInt::from(z.q().q()).pow(r);
    let mut rho: i64 = 0;
    for (i, p) in z.factors().iter().enumerate() {
        let (_, mult) = p.remove_one_minus_ct(&qr);
        if i % 2 == 0 {
            rho += mult as i64;
        } else {
            rho -= mult as i64;
        }
    }
    rho
}

/// Exact leading coefficient of Z(X,t)(1 - q^r t)^rho at t = q^{-r}.
pub fn leading_coefficient(z: &ZetaFunction, r: u32) -> Result<BigRational, SpecialValueError> {
    let qr = BigInt::from(z.q().q()).pow(r);
    let at = BigRational::new(BigInt::one(), qr.clone());
    let mut acc = BigRational::one();
    for (i, p) in z.factors().iter().enumerate() {
        let (reduced, _) = p.remove_one_minus_ct(&qr);
        let value = reduced.eval_rational(&at);
        if value.is_zero() {
            return Err(SpecialValueError::InternalZero { degree: i });
        }
        // Z = prod P_i^{(-1)^{i+1}}: odd i in the numerator.
        if i % 2 == 1 {
            acc *= value;
        } else {
            acc /= value;
        }
    }
    Ok(acc)
}

/// Assembles the special-value report: pole order, exact leading value,
/// chi(X, O_X, r), and the predicted Euler characteristic.
pub fn predict_chi_prime(
    z: &ZetaFunction,
    hd: &HodgeDiamond,
    r: u32,
) -> Result<SpecialValueReport, SpecialValueError> {
    let rho = pole_order(z, r);
    let leading = leading_coefficient(z, r)?;
    let chi_o = hodge::chi_o(hd, r);
    let q = BigInt::from(z.q().q());
    let q_power = if chi_o >= 0 {
        BigRational::from_integer(q.pow(chi_o as u32))
    } else {
        BigRational::new(BigInt::one(), q.pow((-chi_o) as u32))
    };
    let predicted_chi_prime = leading.abs() / q_power;
    Ok(SpecialValueReport {
        r,
        rho,
        leading,
        chi_o,
        predicted_chi_prime,
        hypotheses: HypothesisFlags::not_checked(),
    })
}

/// Comparison of the analytic pole order against a claimed rank of
/// numerical cycle classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TateVerdict {
    Consistent { rho: i64 },
    PoleMismatch { rho: i64, claimed: i64 },
    NoClaim { rho: i64 },
}

pub fn tate_verdict(z: &ZetaFunction, r: u32, claimed_cycle_rank: Option<i64>) -> TateVerdict {
    let rho = pole_order(z, r);
    match claimed_cycle_rank {
        None => TateVerdict::NoClaim { rho },
        Some(c) if c == rho => TateVerdict::Consistent { rho },
        Some(c) => TateVerdict::PoleMismatch { rho, claimed: c },
    }
}

/// Test oracle: expands Z(t)(1 - q^r t)^rho as a power series in s = t - q^{-r}
/// by exact rational arithmetic and returns the constant term, which must
/// equal the leading coefficient. `terms` bounds the series length used for
/// the division.
pub fn leading_by_series(z: &ZetaFunction, r: u32, terms: usize) -> BigRational {
    let q = BigInt::from(z.q().q());
    let qr = q.pow(r);
    let center = BigRational::new(BigInt::one(), qr.clone());
    let rho = pole_order(z, r);
    // Shift each factor: P(center + s) as a polynomial in s.
    let shift = |p: &IntPoly| -> Vec<BigRational> {
        // Horner in (center + s).
        let mut acc: Vec<BigRational> = vec![];
        for c in p.coeffs().iter().rev() {
            // acc = acc * (center + s) + c
            let mut next = vec![BigRational::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] += a * &center;
                next[i + 1] += a;
            }
            if next.is_empty() {
                next.push(BigRational::zero());
            }
            next[0] += BigRational::from_integer(c.clone());
            acc = next;
        }
        if acc.is_empty() {
            acc.push(BigRational::zero());
        }
        acc
    };
    // (1 - q^r t)^rho shifted: (1 - q^r (center + s))^rho = (-q^r s)^rho.
    let mut num: Vec<BigRational> = vec![BigRational::one()];
    let mut den: Vec<BigRational> = vec![BigRational::one()];
    for (i, p) in z.factors().iter().enumerate() {
        let shifted = shift(p);
        if i % 2 == 1 {
            num = poly_mul(&num, &shifted);
        } else {
            den = poly_mul(&den, &shifted);
        }
    }
    // Multiply numerator by (-q^r s)^rho (rho >= 0 in the factored class).
    assert!(rho >= 0, "pole order negative only for weight-inconsistent data");
    let mut pole = vec![BigRational::zero(); rho as usize + 1];
    let neg_qr = BigRational::from_integer(-qr);
    let mut c = BigRational::one();
    for _ in 0..rho {
        c *= &neg_qr;
    }
    pole[rho as usize] = c;
    num = poly_mul(&num, &pole);
    // The denominator vanishes at s = 0 to the same order the pole factor
    // restored in the numerator; cancel s^v before dividing.
    let v = den
        .iter()
        .position(|c| !c.is_zero())
        .expect("denominator is a nonzero polynomial");
    assert!(
        num.iter().take(v).all(|c| c.is_zero()),
        "limit exists only when the numerator matches the pole order"
    );
    let den: Vec<BigRational> = den[v..].to_vec();
    let num: Vec<BigRational> = num[v..].to_vec();
    // Series division num/den to `terms` coefficients; den[0] != 0 now.
    let mut quotient = vec![BigRational::zero(); terms];
    let mut rem = num;
    rem.resize(terms.max(rem.len()), BigRational::zero());
    for k in 0..terms {
        let coeff = rem[k].clone() / &den[0];
        quotient[k] = coeff.clone();
        for (j, dc) in den.iter().enumerate() {
            if k + j < rem.len() {
                let v = rem[k + j].clone() - &coeff * dc;
                rem[k + j] = v;
            }
        }
    }
    quotient[0].clone()
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let v = out[i + j].clone() + x * y;
            out[i + j] = v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::PrimePower;
    use crate::variety::VarietyExpr;
    use crate::SizeGuard;

    fn pp(p: u64, k: u32) -> PrimePower {
        PrimePower::new(p, k, &SizeGuard::default()).unwrap()
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

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pole_orders() {
        assert_eq!(pole_order(&p2_over_f2(), 1), 1);
        let e = elliptic_over_f5();
        assert_eq!(pole_order(&e, 0), 1);
        assert_eq!(pole_order(&e, 1), 1);
    }

    #[test]
    fn leading_coefficients() {
        // (1-2t) Z(P^2/F_2) at t=1/2: 1/((1/2)(-1)) = -2.
        assert_eq!(leading_coefficient(&p2_over_f2(), 1).unwrap(), rat(-2, 1));
        // Elliptic over F_5 at r=1: P_1(1/5)/(P_0(1/5)) = (4/5)/(4/5) = 1.
        assert_eq!(leading_coefficient(&elliptic_over_f5(), 1).unwrap(), rat(1, 1));
        // P^1/F_3 at r=0: lim (1-t) Z = 1/(1-3) = -1/2.
        let line = ZetaFunction::from_factors(
            pp(3, 1),
            vec![
                IntPoly::from_i64(&[1, -1]),
                IntPoly::one(),
                IntPoly::from_i64(&[1, -3]),
            ],
        )
        .unwrap();
        assert_eq!(leading_coefficient(&line, 0).unwrap(), rat(-1, 2));
    }

    #[test]
    fn elliptic_r0_leading_is_class_number_like() {
        // |P_1(1)| = N_1 = 4 appears as a factor; total value is
        // P_1(1)/((1-1)->removed, (1-5)) = 4/-4 = -1.
        let e = elliptic_over_f5();
        assert_eq!(leading_coefficient(&e, 0).unwrap(), rat(-1, 1));
    }

    #[test]
    fn predicted_chi_prime_examples() {
        let p2 = p2_over_f2();
        let hd = hodge::hodge_of(&VarietyExpr::projective_space(2)).unwrap();
        let report = predict_chi_prime(&p2, &hd, 1).unwrap();
        assert_eq!(report.rho, 1);
        assert_eq!(report.leading, rat(-2, 1));
        assert_eq!(report.sign(), -1);
        assert_eq!(report.chi_o, 1);
        assert_eq!(report.predicted_chi_prime, rat(1, 1));
    }

    #[test]
    fn series_oracle_brackets_leading() {
        for (z, r) in [
            (p2_over_f2(), 0u32),
            (p2_over_f2(), 1),
            (p2_over_f2(), 2),
            (elliptic_over_f5(), 0),
            (elliptic_over_f5(), 1),
        ] {
            let direct = leading_coefficient(&z, r).unwrap();
            let series = leading_by_series(&z, r, 64);
            assert_eq!(direct, series, "r = {}", r);
        }
    }

    #[test]
    fn coprime_leading_representation() {
        let l = leading_coefficient(&p2_over_f2(), 2).unwrap();
        // 8/3 at r=2: 1/((1-1/4)(1-1/2)) = 1/((3/4)(1/2)) = 8/3.
        assert_eq!(l, rat(8, 3));
        assert_eq!(
            num_integer::Integer::gcd(l.numer(), l.denom()),
            BigInt::one()
        );
    }

    #[test]
    fn tate_verdicts() {
        let p2 = p2_over_f2();
        assert_eq!(
            tate_verdict(&p2, 1, Some(1)),
            TateVerdict::Consistent { rho: 1 }
        );
        assert_eq!(
            tate_verdict(&p2, 1, Some(3)),
            TateVerdict::PoleMismatch { rho: 1, claimed: 3 }
        );
        assert_eq!(tate_verdict(&p2, 1, None), TateVerdict::NoClaim { rho: 1 });
    }
}

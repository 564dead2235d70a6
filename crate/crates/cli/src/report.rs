//! Versioned machine-readable report types. The JSON layout is stable:
//! struct field order is fixed, maps are ordered, and all rationals are
//! {sign, num, den} with decimal strings, so identical inputs produce
//! byte-identical output and reports round-trip through serde losslessly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use zetaval_core::frob_cohomology::{CrossCheck, SemisimplicityVerdict, WeilEtaleReport};
use zetaval_core::special_value::{CheckStatus, SpecialValueReport, TateVerdict};
use zetaval_core::variety::{SingularWitness, SmoothnessVerdict};
use zetaval_core::zeta::{FunctionalEquation, RhReport, ZetaFunction};

pub const REPORT_VERSION: u32 = 1;

/// Exact rational as sign and decimal magnitude strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub sign: i8,
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(x: &BigRational) -> Self {
        RationalJson {
            sign: if x.is_negative() { -1 } else { 1 },
            num: x.numer().abs().to_string(),
            den: x.denom().abs().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variety: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    pub terms: u32,
    pub max_points: u64,
    /// Where the zeta factors came from: "counts" or "frobenius".
    pub zeta_source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaJson {
    pub dimension: usize,
    pub betti: Vec<u64>,
    /// Coefficients of P_0..P_{2d}, low degree first, decimal strings.
    pub factors: Vec<Vec<String>>,
}

impl From<&ZetaFunction> for ZetaJson {
    fn from(z: &ZetaFunction) -> Self {
        ZetaJson {
            dimension: z.dimension(),
            betti: z.betti(),
            factors: z
                .factors()
                .iter()
                .map(|p| p.coeffs().iter().map(|c| c.to_string()).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SmoothnessJson {
    ProbablySmooth { depth: u32 },
    SingularPointFound {
        extension: u32,
        point: Vec<Vec<u64>>,
        component: Vec<usize>,
    },
    NotChecked,
}

impl SmoothnessJson {
    pub fn from_verdict(v: &SmoothnessVerdict, depth: u32) -> Self {
        match v {
            SmoothnessVerdict::ProbablySmooth => SmoothnessJson::ProbablySmooth { depth },
            SmoothnessVerdict::SingularPointFound(SingularWitness {
                extension,
                point,
                component,
            }) => SmoothnessJson::SingularPointFound {
                extension: *extension,
                point: point.clone(),
                component: component.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalEquationJson {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl From<&FunctionalEquation> for FunctionalEquationJson {
    fn from(fe: &FunctionalEquation) -> Self {
        match fe {
            FunctionalEquation::Holds { sign, exponent } => FunctionalEquationJson {
                holds: true,
                sign: Some(*sign),
                exponent: Some(*exponent),
                detail: None,
            },
            FunctionalEquation::Fails(d) => FunctionalEquationJson {
                holds: false,
                sign: None,
                exponent: None,
                detail: Some(d.clone()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhFactorJson {
    pub weight: usize,
    pub degree: usize,
    pub max_relative_deviation: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhJson {
    pub all_ok: bool,
    pub factors: Vec<RhFactorJson>,
}

impl From<&RhReport> for RhJson {
    fn from(r: &RhReport) -> Self {
        RhJson {
            all_ok: r.all_ok,
            factors: r
                .factors
                .iter()
                .map(|f| RhFactorJson {
                    weight: f.weight,
                    degree: f.degree,
                    max_relative_deviation: f.max_relative_deviation,
                    ok: f.ok,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChecksJson {
    pub smoothness: SmoothnessJson,
    pub functional_equation: FunctionalEquationJson,
    pub riemann_hypothesis: RhJson,
    /// Betti degrees from the Hodge diamond match the factor degrees.
    pub hodge_betti_consistent: bool,
    /// The characteristic divides a hypersurface degree: generating-function
    /// Hodge numbers are then unreliable.
    pub hodge_char_caveat: bool,
}

fn status_str(s: CheckStatus) -> String {
    match s {
        CheckStatus::Passed => "passed".into(),
        CheckStatus::Failed => "failed".into(),
        CheckStatus::NotChecked => "not_checked".into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesesJson {
    pub smoothness_probe: String,
    pub weight_check: String,
    pub functional_equation: String,
    pub all_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialValueJson {
    pub r: u32,
    pub rho: i64,
    pub sign: i8,
    pub leading: RationalJson,
    pub chi_o: i64,
    pub predicted_chi_prime: RationalJson,
    pub hypotheses: HypothesesJson,
}

impl SpecialValueJson {
    pub fn from_report(rep: &SpecialValueReport) -> Self {
        SpecialValueJson {
            r: rep.r,
            rho: rep.rho,
            sign: rep.sign(),
            leading: (&rep.leading).into(),
            chi_o: rep.chi_o,
            predicted_chi_prime: (&rep.predicted_chi_prime).into(),
            hypotheses: HypothesesJson {
                smoothness_probe: status_str(rep.hypotheses.smoothness_probe),
                weight_check: status_str(rep.hypotheses.weight_check),
                functional_equation: status_str(rep.hypotheses.functional_equation),
                all_passed: rep.hypotheses.all_passed(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckJson {
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<RationalJson>,
}

impl From<&CrossCheck> for CrossCheckJson {
    fn from(c: &CrossCheck) -> Self {
        match c {
            CrossCheck::Match(v) => CrossCheckJson {
                matches: true,
                value: Some(v.into()),
                lhs: None,
                rhs: None,
            },
            CrossCheck::Mismatch { lhs, rhs } => CrossCheckJson {
                matches: false,
                value: None,
                lhs: Some(lhs.into()),
                rhs: Some(rhs.into()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gamma0Json {
    pub degree: usize,
    pub twist: u32,
    /// 0 when both invariants and coinvariants are finite.
    pub rank: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contribution: Option<RationalJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeilEtaleDegreeJson {
    pub i: usize,
    pub rank: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_index: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coinvariant_index: Option<RationalJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeilEtaleJson {
    pub rank_positive_degrees: Vec<usize>,
    pub degrees: Vec<WeilEtaleDegreeJson>,
}

impl From<&WeilEtaleReport> for WeilEtaleJson {
    fn from(w: &WeilEtaleReport) -> Self {
        WeilEtaleJson {
            rank_positive_degrees: w.rank_positive_degrees(),
            degrees: w
                .degrees
                .iter()
                .map(|d| WeilEtaleDegreeJson {
                    i: d.i,
                    rank: d.rank,
                    invariant_index: d.invariant_index.as_ref().map(|v| v.into()),
                    coinvariant_index: d.coinvariant_index.as_ref().map(|v| v.into()),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TateJson {
    pub verdict: String,
    pub rho: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed: Option<i64>,
}

impl From<&TateVerdict> for TateJson {
    fn from(t: &TateVerdict) -> Self {
        match t {
            TateVerdict::Consistent { rho } => TateJson {
                verdict: "consistent".into(),
                rho: *rho,
                claimed: Some(*rho),
            },
            TateVerdict::PoleMismatch { rho, claimed } => TateJson {
                verdict: "pole_mismatch".into(),
                rho: *rho,
                claimed: Some(*claimed),
            },
            TateVerdict::NoClaim { rho } => TateJson {
                verdict: "no_claim".into(),
                rho: *rho,
                claimed: None,
            },
        }
    }
}

pub fn semisimplicity_str(v: &SemisimplicityVerdict) -> String {
    match v {
        SemisimplicityVerdict::Semisimple => "semisimple".into(),
        SemisimplicityVerdict::NotSemisimple => "not_semisimple".into(),
        SemisimplicityVerdict::Unknown => "unknown".into(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrobeniusJson {
    /// "counts" when derived from point counting, "input" when supplied.
    pub source: String,
    pub crosscheck: CrossCheckJson,
    pub gamma0: Vec<Gamma0Json>,
    pub weil_etale: WeilEtaleJson,
    /// Prime -> exponent decomposition of |leading|; primes beyond the trial
    /// cap stay in `residual`.
    pub leading_primary_parts: BTreeMap<u64, i64>,
    pub leading_residual: RationalJson,
    pub semisimplicity: String,
    pub tate: TateJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub report_version: u32,
    pub subcommand: String,
    pub input: InputEcho,
    pub counts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<ChecksJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_value: Option<SpecialValueJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<FrobeniusJson>,
    /// All pipeline hypotheses verified; stamped false for degenerate
    /// inputs that were allowed through counting.
    pub hypotheses_verified: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }
}

pub fn counts_to_strings(counts: &[BigInt]) -> Vec<String> {
    counts.iter().map(|c| c.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn rational_json_signs() {
        let x = BigRational::new(BigInt::from(-3), BigInt::from(4));
        let j: RationalJson = (&x).into();
        assert_eq!(j.sign, -1);
        assert_eq!(j.num, "3");
        assert_eq!(j.den, "4");
    }

    #[test]
    fn report_round_trips() {
        let report = Report {
            report_version: REPORT_VERSION,
            subcommand: "count".into(),
            input: InputEcho {
                p: 5,
                k: 1,
                q: 5,
                variety: Some("P(1)".into()),
                r: None,
                terms: 3,
                max_points: 1_000_000,
                zeta_source: "counts".into(),
            },
            counts: vec!["6".into(), "26".into(), "126".into()],
            zeta: None,
            checks: None,
            special_value: None,
            frobenius: None,
            hypotheses_verified: true,
        };
        let json = report.to_json();
        let parsed = Report::from_json(&json).unwrap();
        assert_eq!(parsed, report);
    }
}

//! Orchestration: field construction, counting, zeta reconstruction, the
//! special-value block, and the cohomological cross-checks, assembled into a
//! versioned report with stable exit codes.
//!
//! Exit codes: 2 parse/validation, 3 size guard, 4 mathematical
//! inconsistency, 5 hypothesis failure, 1 everything else.

use num_bigint::BigInt;
use num_traits::Signed;

use zetaval_core::finite_field::{make_field, FieldError, PrimePower, PrimePowerField};
use zetaval_core::frob_cohomology::{
    crosscheck_special_value, gamma0_cohomology, primary_breakdown, semisimplicity_verdict,
    weil_etale_orders, CrossCheck, FrobData, FrobError,
};
use zetaval_core::hodge::{self, HodgeDiamond};
use zetaval_core::poly::IntPoly;
use zetaval_core::special_value::{
    self, CheckStatus, HypothesisFlags, SpecialValueError,
};
use zetaval_core::variety::{
    count_points, HypersurfaceCounter, SmoothnessVerdict, VarietyError, VarietyExpr,
};
use zetaval_core::zeta::{
    expand_counts, functional_equation_check, riemann_hypothesis_check, zeta_via_counter,
    FunctionalEquation, ZetaError, ZetaFunction,
};
use zetaval_core::SizeGuard;

use crate::report::{
    counts_to_strings, ChecksJson, CrossCheckJson, FrobeniusJson, Gamma0Json, InputEcho, Report,
    SmoothnessJson, SpecialValueJson, TateJson, WeilEtaleJson, ZetaJson, REPORT_VERSION,
};

pub const SMOOTHNESS_DEPTH: u32 = 1;
pub const PRIMARY_CAP: u64 = 1_000_000;

#[derive(Debug)]
pub struct PipelineError {
    pub exit_code: i32,
    pub message: String,
}

impl std::fmt::Display for PipelineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

fn fail(exit_code: i32, message: impl Into<String>) -> PipelineError {
    PipelineError {
        exit_code,
        message: message.into(),
    }
}

fn field_err(e: FieldError) -> PipelineError {
    match e {
        FieldError::NotPrime(p) => fail(2, format!("{} is not prime", p)),
        FieldError::SizeExceeded(s) => fail(3, s.to_string()),
        FieldError::DivisionByZero => fail(1, "division by zero".to_string()),
    }
}

fn variety_err(e: VarietyError) -> PipelineError {
    match e {
        VarietyError::SizeExceeded(s) => fail(3, s.to_string()),
        other => fail(2, other.to_string()),
    }
}

fn zeta_err(e: ZetaError) -> PipelineError {
    match e {
        ZetaError::Variety(v) => variety_err(v),
        ZetaError::Hodge(h) => fail(2, h.to_string()),
        other => fail(4, other.to_string()),
    }
}

fn special_err(e: SpecialValueError) -> PipelineError {
    fail(4, e.to_string())
}

fn frob_err(e: FrobError) -> PipelineError {
    fail(5, e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Count,
    Zeta,
    Special,
    Verify,
}

impl Subcommand {
    fn name(&self) -> &'static str {
        match self {
            Subcommand::Count => "count",
            Subcommand::Zeta => "zeta",
            Subcommand::Special => "special",
            Subcommand::Verify => "verify",
        }
    }
}

/// Fully resolved inputs for one pipeline run.
#[derive(Debug, Clone)]
pub struct Job {
    pub p: u64,
    pub k: u32,
    pub expr_text: String,
    pub variety: VarietyExpr,
    pub r: Option<u32>,
    pub terms: Option<u32>,
    pub max_points: u64,
    pub threads: usize,
    pub frobenius: Option<Vec<IntPoly>>,
    pub cycle_rank: Option<i64>,
    pub minimal_poly: Option<IntPoly>,
}

/// Runs a subcommand. The returned exit code is 0 unless the report itself
/// records a mathematical inconsistency (cross-check mismatch).
pub fn run(job: &Job, sub: Subcommand) -> Result<(Report, i32), PipelineError> {
    let guard = SizeGuard::new(job.max_points);
    let field = make_field(job.p, job.k, &guard).map_err(field_err)?;
    let q = PrimePower::new(job.p, job.k, &guard).map_err(field_err)?;
    let hd = hodge::hodge_of(&job.variety).map_err(|e| fail(2, e.to_string()))?;
    let betti = hd.betti();
    let total_degree: u64 = betti.iter().sum();

    if sub == Subcommand::Count {
        let terms = job.terms.unwrap_or(total_degree as u32).max(1);
        let mut counts = Vec::with_capacity(terms as usize);
        for m in 1..=terms {
            counts.push(
                parallel_count_points(&job.variety, &field, m, &guard, job.threads)
                    .map_err(variety_err)?,
            );
        }
        let report = Report {
            report_version: REPORT_VERSION,
            subcommand: sub.name().into(),
            input: input_echo(job, q, None, job.terms.unwrap_or(terms), "counts"),
            counts: counts_to_strings(&counts),
            zeta: None,
            checks: None,
            special_value: None,
            frobenius: None,
            hypotheses_verified: true,
        };
        return Ok((report, 0));
    }

    // Zeta factors: direct Frobenius input bypasses counting entirely.
    let (z, zeta_source) = match &job.frobenius {
        Some(polys) => {
            let z = ZetaFunction::from_factors(q, polys.clone()).map_err(zeta_err)?;
            (z, "frobenius")
        }
        None => {
            let counter = |v: &VarietyExpr, terms: u32| -> Result<Vec<BigInt>, ZetaError> {
                let mut counts = Vec::with_capacity(terms as usize);
                for m in 1..=terms {
                    counts.push(parallel_count_points(v, &field, m, &guard, job.threads)?);
                }
                Ok(counts)
            };
            let z = zeta_via_counter(&job.variety, q, &counter).map_err(zeta_err)?;
            (z, "counts")
        }
    };

    let terms = job.terms.unwrap_or(total_degree as u32).max(1);
    let counts = expand_counts(&z, terms);

    // Structural checks.
    let smoothness =
        match zetaval_core::variety::smoothness_probe(&job.variety, &field, SMOOTHNESS_DEPTH, &guard)
        {
            Ok(v) => Some(v),
            Err(VarietyError::SizeExceeded(_)) => None,
            Err(e) => return Err(variety_err(e)),
        };
    let fe = functional_equation_check(&z);
    let rh = riemann_hypothesis_check(&z);
    let betti_consistent = z.betti() == betti;
    let char_caveat = hodge::char_caveat(&job.variety, job.p);

    let checks = ChecksJson {
        smoothness: match &smoothness {
            Some(v) => SmoothnessJson::from_verdict(v, SMOOTHNESS_DEPTH),
            None => SmoothnessJson::NotChecked,
        },
        functional_equation: (&fe).into(),
        riemann_hypothesis: (&rh).into(),
        hodge_betti_consistent: betti_consistent,
        hodge_char_caveat: char_caveat,
    };
    let hypotheses_verified = matches!(smoothness, Some(SmoothnessVerdict::ProbablySmooth))
        && matches!(fe, FunctionalEquation::Holds { .. })
        && rh.all_ok
        && betti_consistent
        && !char_caveat;

    let mut report = Report {
        report_version: REPORT_VERSION,
        subcommand: sub.name().into(),
        input: input_echo(job, q, job.r, terms, zeta_source),
        counts: counts_to_strings(&counts),
        zeta: Some(ZetaJson::from(&z)),
        checks: Some(checks),
        special_value: None,
        frobenius: None,
        hypotheses_verified,
    };

    if sub == Subcommand::Zeta {
        return Ok((report, 0));
    }

    let r = job
        .r
        .ok_or_else(|| fail(2, "twist r is required (set --r or [run] r)"))?;
    let special = build_special_value(&z, &hd, r, &smoothness, &fe, &rh)?;
    report.special_value = Some(SpecialValueJson::from_report(&special));

    if sub == Subcommand::Special {
        return Ok((report, 0));
    }

    // Verify: cohomological side and conjecture verdicts.
    let fd = FrobData::from_zeta(&z);
    let cross = crosscheck_special_value(&fd, &z, r).map_err(special_err)?;
    let gamma0: Vec<Gamma0Json> = fd
        .polys()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let coh = gamma0_cohomology(p, q, i, r);
            Gamma0Json {
                degree: i,
                twist: r,
                rank: match coh.h0 {
                    zetaval_core::frob_cohomology::CohRank::Finite => 0,
                    zetaval_core::frob_cohomology::CohRank::InfiniteRank(n) => n,
                },
                contribution: coh.contribution.as_ref().map(|v| v.into()),
            }
        })
        .collect();
    let weil_etale = weil_etale_orders(&fd, r);
    let leading = special_value::leading_coefficient(&z, r).map_err(special_err)?;
    let breakdown = primary_breakdown(&leading.abs(), PRIMARY_CAP);
    let two_r = 2 * r as usize;
    let p2r = if two_r < fd.polys().len() {
        fd.polys()[two_r].clone()
    } else {
        IntPoly::one()
    };
    let ss = semisimplicity_verdict(&p2r, q, r, job.minimal_poly.as_ref()).map_err(frob_err)?;
    let tate = special_value::tate_verdict(&z, r, job.cycle_rank);

    let exit = if matches!(cross, CrossCheck::Match(_)) {
        0
    } else {
        4
    };
    report.frobenius = Some(FrobeniusJson {
        source: zeta_source.into(),
        crosscheck: CrossCheckJson::from(&cross),
        gamma0,
        weil_etale: WeilEtaleJson::from(&weil_etale),
        leading_primary_parts: breakdown.exponents,
        leading_residual: (&breakdown.residual).into(),
        semisimplicity: crate::report::semisimplicity_str(&ss),
        tate: TateJson::from(&tate),
    });
    Ok((report, exit))
}

fn input_echo(
    job: &Job,
    q: PrimePower,
    r: Option<u32>,
    terms: u32,
    zeta_source: &str,
) -> InputEcho {
    InputEcho {
        p: job.p,
        k: job.k,
        q: q.q(),
        variety: Some(job.expr_text.clone()),
        r,
        terms,
        max_points: job.max_points,
        zeta_source: zeta_source.into(),
    }
}

fn build_special_value(
    z: &ZetaFunction,
    hd: &HodgeDiamond,
    r: u32,
    smoothness: &Option<SmoothnessVerdict>,
    fe: &FunctionalEquation,
    rh: &zetaval_core::zeta::RhReport,
) -> Result<zetaval_core::special_value::SpecialValueReport, PipelineError> {
    let mut special = special_value::predict_chi_prime(z, hd, r).map_err(special_err)?;
    special.hypotheses = HypothesisFlags {
        smoothness_probe: match smoothness {
            Some(SmoothnessVerdict::ProbablySmooth) => CheckStatus::Passed,
            Some(SmoothnessVerdict::SingularPointFound(_)) => CheckStatus::Failed,
            None => CheckStatus::NotChecked,
        },
        weight_check: if rh.all_ok {
            CheckStatus::Passed
        } else {
            CheckStatus::Failed
        },
        functional_equation: match fe {
            FunctionalEquation::Holds { .. } => CheckStatus::Passed,
            FunctionalEquation::Fails(_) => CheckStatus::Failed,
        },
    };
    Ok(special)
}

/// Point count with the enumeration strata fanned out over threads.
/// Partitioning never changes the total: each range is scanned exactly once
/// and the per-range counts are summed in a fixed order.
pub fn parallel_count_points(
    v: &VarietyExpr,
    field: &PrimePowerField,
    m: u32,
    guard: &SizeGuard,
    threads: usize,
) -> Result<BigInt, VarietyError> {
    match v {
        VarietyExpr::ProjectiveSpace(_) => count_points(v, field, m, guard),
        VarietyExpr::Product(l, r) => {
            let a = parallel_count_points(l, field, m, guard, threads)?;
            let b = parallel_count_points(r, field, m, guard, threads)?;
            Ok(a * b)
        }
        _ => {
            let (ambient, f) = v.equation().expect("hypersurface-like");
            let counter = HypersurfaceCounter::new(f, ambient, field, m, guard)?;
            let threads = threads.max(1);
            let mut total = 0u64;
            for stratum in 0..counter.strata() {
                let size = counter.stratum_size(stratum);
                if threads == 1 || size < 1024 {
                    total += counter.count_range(stratum, 0, size);
                    continue;
                }
                let chunk = size.div_ceil(threads as u64);
                let partial: Vec<u64> = std::thread::scope(|scope| {
                    let mut handles = Vec::new();
                    for t in 0..threads as u64 {
                        let start = (t * chunk).min(size);
                        let end = ((t + 1) * chunk).min(size);
                        let counter_ref = &counter;
                        handles
                            .push(scope.spawn(move || counter_ref.count_range(stratum, start, end)));
                    }
                    handles.into_iter().map(|h| h.join().unwrap()).collect()
                });
                total += partial.iter().sum::<u64>();
            }
            Ok(BigInt::from(total))
        }
    }
}

/// Renders the human-readable form of a report.
pub fn render_text(report: &Report) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let i = &report.input;
    writeln!(out, "field: F_{} (p = {}, k = {})", i.q, i.p, i.k).unwrap();
    if let Some(v) = &i.variety {
        writeln!(out, "variety: {}", v).unwrap();
    }
    writeln!(out, "zeta source: {}", i.zeta_source).unwrap();
    let shown: Vec<String> = report.counts.iter().cloned().collect();
    writeln!(out, "counts N_1..N_{}: {}", shown.len(), shown.join(", ")).unwrap();
    if let Some(z) = &report.zeta {
        writeln!(out, "dimension: {}", z.dimension).unwrap();
        writeln!(
            out,
            "betti: [{}]",
            z.betti
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
        .unwrap();
        for (idx, coeffs) in z.factors.iter().enumerate() {
            writeln!(out, "  P_{} = {}", idx, poly_text(coeffs)).unwrap();
        }
    }
    if let Some(c) = &report.checks {
        match &c.smoothness {
            SmoothnessJson::ProbablySmooth { depth } => {
                writeln!(out, "smoothness probe: probably smooth (depth {})", depth).unwrap()
            }
            SmoothnessJson::SingularPointFound {
                extension, point, ..
            } => writeln!(
                out,
                "smoothness probe: SINGULAR point over extension degree {}: {:?}",
                extension, point
            )
            .unwrap(),
            SmoothnessJson::NotChecked => {
                writeln!(out, "smoothness probe: not checked (size guard)").unwrap()
            }
        }
        if c.functional_equation.holds {
            writeln!(
                out,
                "functional equation: holds (sign {:+}, chi = {})",
                c.functional_equation.sign.unwrap_or(1),
                c.functional_equation.exponent.unwrap_or(0)
            )
            .unwrap();
        } else {
            writeln!(
                out,
                "functional equation: FAILS ({})",
                c.functional_equation.detail.as_deref().unwrap_or("")
            )
            .unwrap();
        }
        writeln!(
            out,
            "riemann hypothesis check: {}",
            if c.riemann_hypothesis.all_ok {
                "all factors ok"
            } else {
                "VIOLATIONS found"
            }
        )
        .unwrap();
        if c.hodge_char_caveat {
            writeln!(
                out,
                "note: characteristic divides a hypersurface degree; Hodge numbers unreliable"
            )
            .unwrap();
        }
        if !c.hodge_betti_consistent {
            writeln!(out, "note: factor degrees disagree with the Hodge diamond").unwrap();
        }
    }
    if let Some(s) = &report.special_value {
        writeln!(
            out,
            "special value at r = {}: rho = {}, leading = {}{}/{} , chi_O = {}",
            s.r,
            s.rho,
            if s.sign < 0 { "-" } else { "" },
            s.leading.num,
            s.leading.den,
            s.chi_o
        )
        .unwrap();
        writeln!(
            out,
            "predicted chi' = {}/{}",
            s.predicted_chi_prime.num, s.predicted_chi_prime.den
        )
        .unwrap();
        writeln!(
            out,
            "hypotheses: smoothness {}, weights {}, functional equation {}",
            s.hypotheses.smoothness_probe,
            s.hypotheses.weight_check,
            s.hypotheses.functional_equation
        )
        .unwrap();
    }
    if let Some(fr) = &report.frobenius {
        if fr.crosscheck.matches {
            let v = fr.crosscheck.value.as_ref().unwrap();
            writeln!(out, "cross-check: match ({}/{})", v.num, v.den).unwrap();
        } else {
            let l = fr.crosscheck.lhs.as_ref().unwrap();
            let r = fr.crosscheck.rhs.as_ref().unwrap();
            writeln!(
                out,
                "cross-check: MISMATCH (cohomological {}/{} vs zeta {}/{})",
                l.num, l.den, r.num, r.den
            )
            .unwrap();
        }
        writeln!(
            out,
            "weil-etale rank-positive degrees: {:?}",
            fr.weil_etale.rank_positive_degrees
        )
        .unwrap();
        writeln!(out, "semisimplicity: {}", fr.semisimplicity).unwrap();
        writeln!(
            out,
            "tate: {} (rho = {}{})",
            fr.tate.verdict,
            fr.tate.rho,
            fr.tate
                .claimed
                .map(|c| format!(", claimed {}", c))
                .unwrap_or_default()
        )
        .unwrap();
    }
    writeln!(
        out,
        "hypotheses verified: {}",
        if report.hypotheses_verified { "yes" } else { "NO" }
    )
    .unwrap();
    out
}

fn poly_text(coeffs: &[String]) -> String {
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.parse().unwrap()).collect();
    format!("{}", IntPoly::new(ints))
}

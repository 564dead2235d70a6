//! Symbolic variety descriptions and exact point counts over finite fields.
//!
//! Supported shapes: projective spaces, hypersurfaces (with plane curves as
//! the ambient-dimension-2 case), and binary products. Hypersurface points
//! are counted over normalized projective representatives (first nonzero
//! coordinate scaled to 1), so no division by q^m - 1 ever happens and the
//! strata can be partitioned into index ranges for parallel counting.

use alloc::boxed::Box;
use alloc::{vec, vec::Vec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::finite_field::{FieldElement, FieldError, PrimePower, PrimePowerField};
use crate::{SizeExceeded, SizeGuard};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyError {
    SizeExceeded(SizeExceeded),
    /// The defining polynomial is not homogeneous.
    Inhomogeneous,
    /// The defining polynomial is zero or constant.
    DegreeZero,
    /// The polynomial mentions a variable beyond the ambient coordinates.
    TooManyVariables { ambient: u32, seen: usize },
    Field(FieldError),
}

impl core::fmt::Display for VarietyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            VarietyError::SizeExceeded(e) => write!(f, "{}", e),
            VarietyError::Inhomogeneous => write!(f, "polynomial is not homogeneous"),
            VarietyError::DegreeZero => write!(f, "polynomial must have degree >= 1"),
            VarietyError::TooManyVariables { ambient, seen } => write!(
                f,
                "polynomial uses x{} but the ambient projective space has coordinates x0..x{}",
                seen - 1,
                ambient
            ),
            VarietyError::Field(e) => write!(f, "{}", e),
        }
    }
}

impl From<SizeExceeded> for VarietyError {
    fn from(e: SizeExceeded) -> Self {
        VarietyError::SizeExceeded(e)
    }
}

impl From<FieldError> for VarietyError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::SizeExceeded(s) => VarietyError::SizeExceeded(s),
            other => VarietyError::Field(other),
        }
    }
}

// ---------------------------------------------------------------------------
// Multivariate polynomials with integer coefficients.
// ---------------------------------------------------------------------------

/// Multivariate polynomial in x0..x{n}: sorted, merged monomial list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    /// (coefficient, exponent vector); exponent vectors all share one length.
    terms: Vec<(BigInt, Vec<u32>)>,
    nvars: usize,
}

impl MultiPoly {
    pub fn new(terms: Vec<(BigInt, Vec<u32>)>, nvars: usize) -> Self {
        let mut padded: Vec<(Vec<u32>, BigInt)> = Vec::with_capacity(terms.len());
        for (c, mut e) in terms {
            e.resize(nvars, 0);
            padded.push((e, c));
        }
        padded.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(BigInt, Vec<u32>)> = Vec::new();
        for (e, c) in padded {
            if let Some(last) = merged.last_mut() {
                if last.1 == e {
                    last.0 += c;
                    continue;
                }
            }
            merged.push((c, e));
        }
        merged.retain(|(c, _)| !c.is_zero());
        MultiPoly {
            terms: merged,
            nvars,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(BigInt, Vec<u32>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, e)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut deg = None;
        for (_, e) in &self.terms {
            let d: u32 = e.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return false,
                _ => {}
            }
        }
        true
    }

    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(_, e)| e.get(var).copied().unwrap_or(0) > 0)
            .map(|(c, e)| {
                let mut e2 = e.clone();
                e2[var] -= 1;
                (c * BigInt::from(e[var]), e2)
            })
            .collect();
        MultiPoly::new(terms, self.nvars)
    }
}

impl core::fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, e) in &self.terms {
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let has_vars = e.iter().any(|&x| x > 0);
            if !a.is_one() || !has_vars {
                write!(f, "{}", a)?;
                if has_vars {
                    write!(f, "*")?;
                }
            }
            let mut firstv = true;
            for (v, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if !firstv {
                    write!(f, "*")?;
                }
                firstv = false;
                if exp == 1 {
                    write!(f, "x{}", v)?;
                } else {
                    write!(f, "x{}^{}", v, exp)?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Variety expressions.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyExpr {
    ProjectiveSpace(u32),
    Hypersurface { ambient: u32, f: MultiPoly },
    PlaneCurve { f: MultiPoly },
    Product(Box<VarietyExpr>, Box<VarietyExpr>),
}

impl VarietyExpr {
    pub fn projective_space(n: u32) -> Self {
        VarietyExpr::ProjectiveSpace(n)
    }

    pub fn hypersurface(ambient: u32, f: MultiPoly) -> Result<Self, VarietyError> {
        validate_form(&f, ambient)?;
        Ok(VarietyExpr::Hypersurface { ambient, f })
    }

    pub fn plane_curve(f: MultiPoly) -> Result<Self, VarietyError> {
        validate_form(&f, 2)?;
        Ok(VarietyExpr::PlaneCurve { f })
    }

    pub fn product(left: VarietyExpr, right: VarietyExpr) -> Self {
        VarietyExpr::Product(Box::new(left), Box::new(right))
    }

    pub fn dimension(&self) -> u32 {
        match self {
            VarietyExpr::ProjectiveSpace(n) => *n,
            VarietyExpr::Hypersurface { ambient, .. } => ambient - 1,
            VarietyExpr::PlaneCurve { .. } => 1,
            VarietyExpr::Product(l, r) => l.dimension() + r.dimension(),
        }
    }

    /// Ambient dimension and equation for the hypersurface-like cases.
    pub fn equation(&self) -> Option<(u32, &MultiPoly)> {
        match self {
            VarietyExpr::Hypersurface { ambient, f } => Some((*ambient, f)),
            VarietyExpr::PlaneCurve { f } => Some((2, f)),
            _ => None,
        }
    }
}

impl core::fmt::Display for VarietyExpr {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            VarietyExpr::ProjectiveSpace(n) => write!(f, "P({})", n),
            VarietyExpr::Hypersurface { ambient, f: eq } => write!(f, "hyp({}; {})", ambient, eq),
            VarietyExpr::PlaneCurve { f: eq } => write!(f, "curve({})", eq),
            VarietyExpr::Product(l, r) => write!(f, "prod({}, {})", l, r),
        }
    }
}

fn validate_form(f: &MultiPoly, ambient: u32) -> Result<(), VarietyError> {
    for (_, e) in f.terms() {
        for (v, &exp) in e.iter().enumerate() {
            if exp > 0 && v > ambient as usize {
                return Err(VarietyError::TooManyVariables {
                    ambient,
                    seen: v + 1,
                });
            }
        }
    }
    if f.is_zero() || f.total_degree() == 0 {
        return Err(VarietyError::DegreeZero);
    }
    if !f.is_homogeneous() {
        return Err(VarietyError::Inhomogeneous);
    }
    Ok(())
}

/// Exact point counts N_m for m = 1..=M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVector {
    pub q: PrimePower,
    pub counts: Vec<BigInt>,
}

// ---------------------------------------------------------------------------
// Counting.
// ---------------------------------------------------------------------------

/// Exact number of F_{q^m}-rational points.
pub fn count_points(
    v: &VarietyExpr,
    field: &PrimePowerField,
    m: u32,
    guard: &SizeGuard,
) -> Result<BigInt, VarietyError> {
    match v {
        VarietyExpr::ProjectiveSpace(n) => Ok(projective_space_count(field, m, *n)),
        VarietyExpr::Product(l, r) => {
            let a = count_points(l, field, m, guard)?;
            let b = count_points(r, field, m, guard)?;
            Ok(a * b)
        }
        _ => {
            let (ambient, f) = v.equation().expect("hypersurface-like");
            let counter = HypersurfaceCounter::new(f, ambient, field, m, guard)?;
            Ok(BigInt::from(counter.count_all()))
        }
    }
}

/// Closed form sum_{i=0..n} q^{mi}.
fn projective_space_count(field: &PrimePowerField, m: u32, n: u32) -> BigInt {
    let qm = BigInt::from(field.order()).pow(m);
    let mut acc = BigInt::zero();
    let mut pow = BigInt::one();
    for _ in 0..=n {
        acc += &pow;
        pow *= &qm;
    }
    acc
}

/// Enumerator for normalized projective representatives of a hypersurface.
///
/// Stratum i consists of points (0 : ... : 0 : 1 : x_{i+1} : ... : x_n); its
/// representatives are indexed by base-|F| digits, x_{i+1} least significant.
pub struct HypersurfaceCounter {
    ext: PrimePowerField,
    ambient: usize,
    coeffs: Vec<FieldElement>,
    exps: Vec<Vec<u32>>,
    max_exp: Vec<u32>,
}

impl HypersurfaceCounter {
    pub fn new(
        f: &MultiPoly,
        ambient: u32,
        field: &PrimePowerField,
        m: u32,
        guard: &SizeGuard,
    ) -> Result<Self, VarietyError> {
        let ext = field.extension(m, guard)?;
        let n = ambient as usize;
        // Total representatives: sum_i |F|^{n-i}.
        let order = ext.order() as u128;
        let mut total: u128 = 0;
        let mut size: u128 = 1;
        for _ in 0..=n {
            total += size;
            size = size.saturating_mul(order);
        }
        guard.admit(total)?;
        Ok(Self::with_ext(f, ambient, ext))
    }

    fn with_ext(f: &MultiPoly, ambient: u32, ext: PrimePowerField) -> Self {
        let n = ambient as usize;
        let p = BigInt::from(ext.p());
        let mut coeffs = Vec::new();
        let mut exps = Vec::new();
        let mut max_exp = vec![0u32; n + 1];
        for (c, e) in f.terms() {
            let r = c.mod_floor(&p).to_u64().unwrap();
            coeffs.push(ext.from_u64(r));
            let mut ev = e.clone();
            ev.resize(n + 1, 0);
            for (v, &x) in ev.iter().enumerate() {
                max_exp[v] = max_exp[v].max(x);
            }
            exps.push(ev);
        }
        HypersurfaceCounter {
            ext,
            ambient: n,
            coeffs,
            exps,
            max_exp,
        }
    }

    pub fn extension_field(&self) -> &PrimePowerField {
        &self.ext
    }

    pub fn strata(&self) -> usize {
        self.ambient + 1
    }

    /// Number of representatives in stratum i: |F|^{ambient - i}.
    pub fn stratum_size(&self, stratum: usize) -> u64 {
        let free = self.ambient - stratum;
        let mut acc: u64 = 1;
        for _ in 0..free {
            acc *= self.ext.order();
        }
        acc
    }

    /// Counts zeros of f among representatives with indices [start, end) of
    /// the given stratum. Pure: disjoint ranges can run on separate threads
    /// and their sums agree with a serial scan.
    pub fn count_range(&self, stratum: usize, start: u64, end: u64) -> u64 {
        let n = self.ambient;
        let mut point: Vec<FieldElement> = (0..=n).map(|_| self.ext.zero()).collect();
        point[stratum] = self.ext.one();
        let mut count = 0u64;
        let mut powers = self.fresh_power_tables();
        for idx in start..end {
            // Decode digits into the free coordinates.
            let mut rest = idx;
            for coord in point.iter_mut().take(n + 1).skip(stratum + 1) {
                *coord = self.ext.element_from_index(rest % self.ext.order());
                rest /= self.ext.order();
            }
            if self.vanishes_at(&point, &mut powers) {
                count += 1;
            }
        }
        count
    }

    fn fresh_power_tables(&self) -> Vec<Vec<FieldElement>> {
        (0..=self.ambient)
            .map(|v| {
                let mut p = Vec::with_capacity(self.max_exp[v] as usize + 1);
                p.push(self.ext.one());
                p
            })
            .collect()
    }

    /// True when f vanishes at the point.
    fn vanishes_at(&self, point: &[FieldElement], powers: &mut [Vec<FieldElement>]) -> bool {
        // Refresh power tables for this point.
        for (v, table) in powers.iter_mut().enumerate() {
            table.truncate(1);
            for e in 1..=self.max_exp[v] as usize {
                let next = if e == 1 {
                    point[v].clone()
                } else {
                    self.ext.mul(&table[e - 1], &point[v])
                };
                table.push(next);
            }
        }
        let mut acc = self.ext.zero();
        for (c, e) in self.coeffs.iter().zip(&self.exps) {
            let mut term = c.clone();
            for (v, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = self.ext.mul(&term, &powers[v][exp as usize]);
                }
            }
            acc = self.ext.add(&acc, &term);
        }
        self.ext.is_zero(&acc)
    }

    pub fn count_all(&self) -> u64 {
        let mut total = 0u64;
        for s in 0..self.strata() {
            total += self.count_range(s, 0, self.stratum_size(s));
        }
        total
    }
}

/// Builds the count vector N_1..N_M by direct enumeration (products use
/// multiplicativity). The zeta module layers a cheaper strategy on top for
/// high m.
pub fn count_vector(
    v: &VarietyExpr,
    field: &PrimePowerField,
    q: PrimePower,
    terms: u32,
    guard: &SizeGuard,
) -> Result<CountVector, VarietyError> {
    let mut counts = Vec::with_capacity(terms as usize);
    for m in 1..=terms {
        counts.push(count_points(v, field, m, guard)?);
    }
    Ok(CountVector { q, counts })
}

// ---------------------------------------------------------------------------
// Smoothness probe.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmoothnessVerdict {
    /// No singular point found up to the probed depth. Explicitly not a proof.
    ProbablySmooth,
    SingularPointFound(SingularWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularWitness {
    /// Extension degree m over the base field where the point lives.
    pub extension: u32,
    /// Homogeneous coordinates as coefficient vectors over F_p.
    pub point: Vec<Vec<u64>>,
    /// Path of product components (0 = left, 1 = right) locating the factor.
    pub component: Vec<usize>,
}

/// Searches F_{q^m}-points, m <= depth, where f and all partials vanish.
/// Projective spaces are smooth; products are smooth iff both factors are.
pub fn smoothness_probe(
    v: &VarietyExpr,
    field: &PrimePowerField,
    depth: u32,
    guard: &SizeGuard,
) -> Result<SmoothnessVerdict, VarietyError> {
    match v {
        VarietyExpr::ProjectiveSpace(_) => Ok(SmoothnessVerdict::ProbablySmooth),
        VarietyExpr::Product(l, r) => {
            if let SmoothnessVerdict::SingularPointFound(mut w) =
                smoothness_probe(l, field, depth, guard)?
            {
                w.component.insert(0, 0);
                return Ok(SmoothnessVerdict::SingularPointFound(w));
            }
            if let SmoothnessVerdict::SingularPointFound(mut w) =
                smoothness_probe(r, field, depth, guard)?
            {
                w.component.insert(0, 1);
                return Ok(SmoothnessVerdict::SingularPointFound(w));
            }
            Ok(SmoothnessVerdict::ProbablySmooth)
        }
        _ => {
            let (ambient, f) = v.equation().expect("hypersurface-like");
            for m in 1..=depth {
                if let Some(w) = singular_search(f, ambient, field, m, guard)? {
                    return Ok(SmoothnessVerdict::SingularPointFound(w));
                }
            }
            Ok(SmoothnessVerdict::ProbablySmooth)
        }
    }
}

fn singular_search(
    f: &MultiPoly,
    ambient: u32,
    field: &PrimePowerField,
    m: u32,
    guard: &SizeGuard,
) -> Result<Option<SingularWitness>, VarietyError> {
    let counter = HypersurfaceCounter::new(f, ambient, field, m, guard)?;
    let n = ambient as usize;
    let partials: Vec<HypersurfaceCounter> = (0..=n)
        .map(|v| {
            HypersurfaceCounter::with_ext(&f.partial_derivative(v), ambient, counter.ext.clone())
        })
        .collect();
    let ext = counter.ext.clone();
    let mut point: Vec<FieldElement> = (0..=n).map(|_| ext.zero()).collect();
    let mut powers = counter.fresh_power_tables();
    for stratum in 0..=n {
        for c in point.iter_mut() {
            *c = ext.zero();
        }
        point[stratum] = ext.one();
        for idx in 0..counter.stratum_size(stratum) {
            let mut rest = idx;
            for coord in point.iter_mut().take(n + 1).skip(stratum + 1) {
                *coord = ext.element_from_index(rest % ext.order());
                rest /= ext.order();
            }
            if !counter.vanishes_at(&point, &mut powers) {
                continue;
            }
            let singular = partials.iter().all(|pc| {
                let mut pw = pc.fresh_power_tables();
                pc.vanishes_at(&point, &mut pw)
            });
            if singular {
                return Ok(Some(SingularWitness {
                    extension: m,
                    point: point.iter().map(|e| e.iter().copied().collect()).collect(),
                    component: vec![],
                }));
            }
        }
    }
    Ok(None)
}

/// Betti numbers b_0..b_{2d} from the Hodge diamond.
pub fn betti_degrees(v: &VarietyExpr) -> Result<Vec<u64>, crate::hodge::HodgeError> {
    Ok(crate::hodge::hodge_of(v)?.betti())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;

    fn guard() -> SizeGuard {
        SizeGuard::default()
    }

    fn mp(terms: &[(i64, &[u32])], nvars: usize) -> MultiPoly {
        MultiPoly::new(
            terms
                .iter()
                .map(|(c, e)| (BigInt::from(*c), e.to_vec()))
                .collect(),
            nvars,
        )
    }

    /// y^2 z = x^3 + x z^2: x0=x, x1=y, x2=z.
    fn elliptic() -> MultiPoly {
        mp(&[(1, &[0, 2, 1]), (-1, &[3, 0, 0]), (-1, &[1, 0, 2])], 3)
    }

    #[test]
    fn projective_plane_over_f2() {
        let f2 = make_field(2, 1, &guard()).unwrap();
        let n = count_points(&VarietyExpr::projective_space(2), &f2, 1, &guard()).unwrap();
        assert_eq!(n, BigInt::from(7));
    }

    #[test]
    fn elliptic_curve_point_count_over_f5() {
        // Oracle value from naive enumeration of all (x:y:z) representatives.
        let f5 = make_field(5, 1, &guard()).unwrap();
        let curve = VarietyExpr::plane_curve(elliptic()).unwrap();
        let n1 = count_points(&curve, &f5, 1, &guard()).unwrap();
        assert_eq!(n1, BigInt::from(4));
    }

    #[test]
    fn product_multiplicativity() {
        let f3 = make_field(3, 1, &guard()).unwrap();
        let p1 = VarietyExpr::projective_space(1);
        let prod = VarietyExpr::product(p1.clone(), p1.clone());
        let n = count_points(&prod, &f3, 1, &guard()).unwrap();
        assert_eq!(n, BigInt::from(16));
        for m in 1..=3 {
            let a = count_points(&p1, &f3, m, &guard()).unwrap();
            let b = count_points(&prod, &f3, m, &guard()).unwrap();
            assert_eq!(b, &a * &a);
        }
    }

    #[test]
    fn segre_quadric_matches_product_of_lines() {
        // x0*x1 - x2*x3 = 0 in P^3 is the image of P^1 x P^1.
        let f3 = make_field(3, 1, &guard()).unwrap();
        let quadric =
            VarietyExpr::hypersurface(3, mp(&[(1, &[1, 1, 0, 0]), (-1, &[0, 0, 1, 1])], 4))
                .unwrap();
        let p1 = VarietyExpr::projective_space(1);
        let prod = VarietyExpr::product(p1.clone(), p1);
        for m in 1..=2 {
            assert_eq!(
                count_points(&quadric, &f3, m, &guard()).unwrap(),
                count_points(&prod, &f3, m, &guard()).unwrap()
            );
        }
    }

    #[test]
    fn enumeration_matches_closed_form_for_projective_spaces() {
        // The representative strata enumerate P^n directly: summing their
        // sizes must reproduce the closed form.
        for (p, k, n, m) in [(2u64, 1u32, 2u32, 2u32), (3, 1, 2, 1), (5, 1, 1, 2), (2, 2, 2, 1)] {
            let base = make_field(p, k, &guard()).unwrap();
            let ext = base.extension(m, &guard()).unwrap();
            let order = ext.order();
            let mut total = BigInt::zero();
            for i in 0..=n {
                let mut size = BigInt::one();
                for _ in 0..(n - i) {
                    size *= BigInt::from(order);
                }
                total += size;
            }
            assert_eq!(
                total,
                count_points(&VarietyExpr::projective_space(n), &base, m, &guard()).unwrap()
            );
        }
    }

    #[test]
    fn counting_is_partition_independent() {
        let f5 = make_field(5, 1, &guard()).unwrap();
        let counter = HypersurfaceCounter::new(&elliptic(), 2, &f5, 2, &guard()).unwrap();
        let serial = counter.count_all();
        let mut split = 0u64;
        for s in 0..counter.strata() {
            let size = counter.stratum_size(s);
            let third = size / 3;
            split += counter.count_range(s, 0, third);
            split += counter.count_range(s, third, 2 * third);
            split += counter.count_range(s, 2 * third, size);
        }
        assert_eq!(serial, split);
    }

    #[test]
    fn size_guard_stops_large_enumerations() {
        let f5 = make_field(5, 1, &guard()).unwrap();
        let curve = VarietyExpr::plane_curve(elliptic()).unwrap();
        let tiny = SizeGuard::new(10);
        assert!(matches!(
            count_points(&curve, &f5, 1, &tiny),
            Err(VarietyError::SizeExceeded(_))
        ));
    }

    #[test]
    fn fermat_cubic_probably_smooth_over_f5() {
        let f5 = make_field(5, 1, &guard()).unwrap();
        let fermat = VarietyExpr::hypersurface(
            2,
            mp(&[(1, &[3, 0, 0]), (1, &[0, 3, 0]), (1, &[0, 0, 3])], 3),
        )
        .unwrap();
        assert_eq!(
            smoothness_probe(&fermat, &f5, 2, &guard()).unwrap(),
            SmoothnessVerdict::ProbablySmooth
        );
    }

    #[test]
    fn double_line_is_singular() {
        let f3 = make_field(3, 1, &guard()).unwrap();
        let dbl = VarietyExpr::hypersurface(2, mp(&[(1, &[2, 0, 0])], 3)).unwrap();
        match smoothness_probe(&dbl, &f3, 1, &guard()).unwrap() {
            SmoothnessVerdict::SingularPointFound(w) => {
                assert_eq!(w.extension, 1);
                assert_eq!(w.point[0], vec![0]);
            }
            v => panic!("expected singular point, got {:?}", v),
        }
    }

    #[test]
    fn quadric_in_p3_probably_smooth_over_f2() {
        let f2 = make_field(2, 1, &guard()).unwrap();
        let quadric =
            VarietyExpr::hypersurface(3, mp(&[(1, &[1, 1, 0, 0]), (-1, &[0, 0, 1, 1])], 4))
                .unwrap();
        assert_eq!(
            smoothness_probe(&quadric, &f2, 1, &guard()).unwrap(),
            SmoothnessVerdict::ProbablySmooth
        );
    }

    #[test]
    fn inhomogeneous_rejected() {
        let bad = mp(&[(1, &[2, 0, 0]), (1, &[0, 1, 0])], 3);
        assert!(matches!(
            VarietyExpr::hypersurface(2, bad),
            Err(VarietyError::Inhomogeneous)
        ));
    }
}

//! Constructive calculus on a closed class of abelian groups:
//! Z^a + Q^b + (sum of finite cyclics) + (sum of (Q_l/Z_l)^{c_l}).
//!
//! The class is small enough that every structural statement about it is
//! decidable, yet it exhibits divisible parts, Tate modules, and Ulm
//! subgroups. Smith normal form drives all presentations; homomorphisms
//! between finitely generated members carry integer matrices.

pub mod complement;
pub mod finite;
pub mod hom;
pub mod lift;
pub mod snf;
pub mod suite;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::{vec, vec::Vec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use snf::{smith_normal_form, IntMat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbError {
    /// Kernel, cokernel, or presented group is infinite where finiteness is
    /// required.
    NotFinite,
    /// The operation needs a finitely generated group (no Q or Q_l/Z_l part).
    NotFinitelyGenerated,
    /// Matrix shape does not match the coordinate counts.
    DimensionMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    /// The matrix does not define a homomorphism (relations not respected).
    InvalidHom(String),
    /// Lemma hypotheses do not hold; carries a witness element.
    HypothesisFailed(complement::HypothesisWitness),
    NotIdempotentModP,
    NotUnitModP,
    /// The group exceeds the configured enumeration cap.
    TooLarge { order: BigInt, cap: u64 },
    /// A postcondition that is algebraically forced failed; indicates a bug.
    Internal(String),
}

impl core::fmt::Display for AbError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AbError::NotFinite => write!(f, "group is not finite"),
            AbError::NotFinitelyGenerated => write!(f, "group is not finitely generated"),
            AbError::DimensionMismatch { expected, got } => write!(
                f,
                "matrix shape {}x{} does not match expected {}x{}",
                got.0, got.1, expected.0, expected.1
            ),
            AbError::InvalidHom(s) => write!(f, "not a homomorphism: {}", s),
            AbError::HypothesisFailed(w) => write!(f, "hypothesis failed: {}", w),
            AbError::NotIdempotentModP => write!(f, "element is not idempotent mod p"),
            AbError::NotUnitModP => write!(f, "element is not invertible mod p"),
            AbError::TooLarge { order, cap } => {
                write!(f, "group of order {} exceeds the cap {}", order, cap)
            }
            AbError::Internal(s) => write!(f, "internal invariant violated: {}", s),
        }
    }
}

/// A member of the closed class:
/// Z^a + Q^b + Z/n_1 + ... + Z/n_k + sum_l (Q_l/Z_l)^{c_l},
/// with n_1 | n_2 | ... | n_k and every n_i >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbGroup {
    free_rank: u64,
    rational_rank: u64,
    invariant_factors: Vec<BigInt>,
    cofinite_ranks: BTreeMap<u64, u64>,
}

impl AbGroup {
    pub fn new(
        free_rank: u64,
        rational_rank: u64,
        torsion_orders: Vec<BigInt>,
        cofinite_ranks: BTreeMap<u64, u64>,
    ) -> Self {
        let invariant_factors = invariant_factors_from_orders(torsion_orders);
        let cofinite_ranks = cofinite_ranks.into_iter().filter(|(_, c)| *c > 0).collect();
        AbGroup {
            free_rank,
            rational_rank,
            invariant_factors,
            cofinite_ranks,
        }
    }

    pub fn trivial() -> Self {
        AbGroup::new(0, 0, vec![], BTreeMap::new())
    }

    pub fn free(rank: u64) -> Self {
        AbGroup::new(rank, 0, vec![], BTreeMap::new())
    }

    pub fn rational(rank: u64) -> Self {
        AbGroup::new(0, rank, vec![], BTreeMap::new())
    }

    pub fn finite(orders: Vec<BigInt>) -> Self {
        AbGroup::new(0, 0, orders, BTreeMap::new())
    }

    pub fn finite_i64(orders: &[i64]) -> Self {
        AbGroup::finite(orders.iter().map(|&o| BigInt::from(o)).collect())
    }

    pub fn cofinite(l: u64, rank: u64) -> Self {
        let mut m = BTreeMap::new();
        m.insert(l, rank);
        AbGroup::new(0, 0, vec![], m)
    }

    /// Direct sum.
    pub fn sum(&self, other: &AbGroup) -> AbGroup {
        let mut torsion = self.invariant_factors.clone();
        torsion.extend(other.invariant_factors.clone());
        let mut cof = self.cofinite_ranks.clone();
        for (l, c) in &other.cofinite_ranks {
            *cof.entry(*l).or_insert(0) += c;
        }
        AbGroup::new(
            self.free_rank + other.free_rank,
            self.rational_rank + other.rational_rank,
            torsion,
            cof,
        )
    }

    pub fn free_rank(&self) -> u64 {
        self.free_rank
    }

    pub fn rational_rank(&self) -> u64 {
        self.rational_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn cofinite_ranks(&self) -> &BTreeMap<u64, u64> {
        &self.cofinite_ranks
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0
            && self.rational_rank == 0
            && self.invariant_factors.is_empty()
            && self.cofinite_ranks.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0 && self.rational_rank == 0 && self.cofinite_ranks.is_empty()
    }

    pub fn is_finitely_generated(&self) -> bool {
        self.rational_rank == 0 && self.cofinite_ranks.is_empty()
    }

    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .fold(BigInt::one(), |acc, f| acc * f),
        )
    }

    /// Number of coordinates of the finitely generated part Z^a + torsion.
    pub fn fg_coords(&self) -> usize {
        self.free_rank as usize + self.invariant_factors.len()
    }

    /// Order of the i-th finitely generated coordinate (0 for free ones).
    pub fn coord_order(&self, i: usize) -> BigInt {
        if i < self.free_rank as usize {
            BigInt::zero()
        } else {
            self.invariant_factors[i - self.free_rank as usize].clone()
        }
    }

    /// G/nG computed componentwise: Z -> Z/n, Z/m -> Z/gcd(m, n), divisible
    /// parts die.
    pub fn quotient_mod_n(&self, n: &BigInt) -> AbGroup {
        assert!(n >= &BigInt::one(), "n must be >= 1");
        let mut orders: Vec<BigInt> = Vec::new();
        for _ in 0..self.free_rank {
            orders.push(n.clone());
        }
        for m in &self.invariant_factors {
            orders.push(m.gcd(n));
        }
        AbGroup::finite(orders)
    }

    /// Tate module ranks per prime: T(Q_l/Z_l) = Z_l; everything else in the
    /// class has trivial Tate module.
    pub fn tate_module_ranks(&self) -> BTreeMap<u64, u64> {
        self.cofinite_ranks.clone()
    }
}

impl core::fmt::Display for AbGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(alloc::format!("Z^{}", self.free_rank));
        }
        if self.rational_rank == 1 {
            parts.push("Q".into());
        } else if self.rational_rank > 1 {
            parts.push(alloc::format!("Q^{}", self.rational_rank));
        }
        for m in &self.invariant_factors {
            parts.push(alloc::format!("Z/{}", m));
        }
        for (l, c) in &self.cofinite_ranks {
            if *c == 1 {
                parts.push(alloc::format!("Q_{l}/Z_{l}"));
            } else {
                parts.push(alloc::format!("(Q_{l}/Z_{l})^{c}"));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Canonical invariant-factor chain of a finite direct sum of cyclic groups,
/// via the Smith normal form of the diagonal relation matrix. Drops 1s.
pub fn invariant_factors_from_orders(orders: Vec<BigInt>) -> Vec<BigInt> {
    let moduli: Vec<BigInt> = orders
        .into_iter()
        .filter(|o| !o.is_one())
        .map(|o| o.abs())
        .collect();
    for m in &moduli {
        assert!(!m.is_zero(), "cyclic order must be nonzero");
    }
    if moduli.len() <= 1 {
        return moduli;
    }
    let k = moduli.len();
    let mut rel = IntMat::zero(k, k);
    for (i, m) in moduli.iter().enumerate() {
        rel.set(i, i, m.clone());
    }
    smith_normal_form(&rel)
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect()
}

// ---------------------------------------------------------------------------
// Ulm subgroup, divisible part, completion.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UlmReport {
    /// First Ulm subgroup: intersection of nG over all n.
    pub ulm: AbGroup,
    /// Largest divisible subgroup.
    pub divisible: AbGroup,
    /// The two agree; within this class all G/nG are finite, which is the
    /// hypothesis making the identity hold.
    pub identity_holds: bool,
    /// When the Tate module vanishes, whether the Ulm subgroup is uniquely
    /// divisible (divisible and torsion-free).
    pub uniquely_divisible: Option<bool>,
}

/// Computes U(G) and G_div and checks the structural identities.
pub fn ulm_and_divisible(g: &AbGroup) -> UlmReport {
    // Elements divisible by every n: the Q and Q_l/Z_l parts exactly.
    // Free and finite cyclic coordinates admit no infinitely divisible
    // nonzero element.
    let ulm = AbGroup::new(0, g.rational_rank, vec![], g.cofinite_ranks.clone());
    let divisible = ulm.clone();
    // All quotients G/nG are finite in this class (spot-verified), so the
    // Ulm subgroup coincides with the divisible part.
    let quotients_finite = (2u64..=12).all(|n| g.quotient_mod_n(&BigInt::from(n)).is_finite());
    let identity_holds = quotients_finite && ulm == divisible;
    let uniquely_divisible = if g.tate_module_ranks().is_empty() {
        // TG = 0: the divisible part must be torsion-free.
        Some(ulm.invariant_factors.is_empty() && ulm.cofinite_ranks.is_empty())
    } else {
        None
    };
    UlmReport {
        ulm,
        divisible,
        identity_holds,
        uniquely_divisible,
    }
}

/// l-adic completion, componentwise: Z -> Z_l (free rank), Z/m -> its
/// l-primary part, Q and Q_l/Z_l -> 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub l: u64,
    /// Free rank over the l-adic integers.
    pub free_rank: u64,
    /// Invariant factors of the finite l-part.
    pub finite_part: Vec<BigInt>,
}

pub fn l_adic_completion(g: &AbGroup, l: u64) -> Completion {
    let bl = BigInt::from(l);
    let mut finite = Vec::new();
    for m in &g.invariant_factors {
        let mut part = BigInt::one();
        let mut rest = m.clone();
        while (&rest % &bl).is_zero() {
            part *= &bl;
            rest /= &bl;
        }
        if !part.is_one() {
            finite.push(part);
        }
    }
    Completion {
        l,
        free_rank: g.free_rank,
        finite_part: invariant_factors_from_orders(finite),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_invariant_factors() {
        // Z/4 + Z/6 = Z/2 + Z/12.
        let g = AbGroup::finite_i64(&[4, 6]);
        assert_eq!(g.invariant_factors(), &[BigInt::from(2), BigInt::from(12)]);
        let h = AbGroup::finite_i64(&[2, 12]);
        assert_eq!(g, h);
    }

    #[test]
    fn quotient_mod_n_componentwise() {
        // (Z + Z/6)^{(4)} = Z/4 + Z/2.
        let g = AbGroup::new(1, 0, vec![BigInt::from(6)], BTreeMap::new());
        let q = g.quotient_mod_n(&BigInt::from(4));
        assert_eq!(q, AbGroup::finite_i64(&[4, 2]));

        // (Q^3)^{(n)} = 0.
        let q3 = AbGroup::rational(3);
        for n in 1..6 {
            assert!(q3.quotient_mod_n(&BigInt::from(n)).is_trivial());
        }
    }

    #[test]
    fn tate_module_of_cofinite_part() {
        let g = AbGroup::cofinite(2, 1);
        let t = g.tate_module_ranks();
        assert_eq!(t.get(&2), Some(&1));
        assert_eq!(t.len(), 1);
        assert!(AbGroup::finite_i64(&[8]).tate_module_ranks().is_empty());
    }

    #[test]
    fn ulm_of_finitely_generated_group_vanishes() {
        let g = AbGroup::new(1, 0, vec![BigInt::from(4)], BTreeMap::new());
        let report = ulm_and_divisible(&g);
        assert!(report.ulm.is_trivial());
        assert!(report.identity_holds);
        assert_eq!(report.uniquely_divisible, Some(true));
    }

    #[test]
    fn ulm_rational_part_is_uniquely_divisible() {
        let g = AbGroup::new(0, 1, vec![BigInt::from(2)], BTreeMap::new());
        let report = ulm_and_divisible(&g);
        assert_eq!(report.ulm, AbGroup::rational(1));
        assert!(report.identity_holds);
        assert_eq!(report.uniquely_divisible, Some(true));
    }

    #[test]
    fn ulm_cofinite_part_divisible_but_not_torsion_free() {
        // Q_3/Z_3: divisible with nonzero Tate module, so the unique
        // divisibility conclusion does not apply.
        let g = AbGroup::cofinite(3, 1);
        let report = ulm_and_divisible(&g);
        assert_eq!(report.ulm, g);
        assert!(report.identity_holds);
        assert_eq!(report.uniquely_divisible, None);
    }

    #[test]
    fn completions() {
        let z2 = AbGroup::free(2);
        let c = l_adic_completion(&z2, 3);
        assert_eq!(c.free_rank, 2);
        assert!(c.finite_part.is_empty());

        let z12 = AbGroup::finite_i64(&[12]);
        let c = l_adic_completion(&z12, 2);
        assert_eq!(c.free_rank, 0);
        assert_eq!(c.finite_part, vec![BigInt::from(4)]);

        let q = AbGroup::rational(1);
        let c = l_adic_completion(&q, 5);
        assert_eq!(c.free_rank, 0);
        assert!(c.finite_part.is_empty());
    }

    #[test]
    fn display_formats() {
        let g = AbGroup::new(2, 1, vec![BigInt::from(6)], {
            let mut m = BTreeMap::new();
            m.insert(5u64, 2u64);
            m
        });
        assert_eq!(alloc::format!("{}", g), "Z^2 + Q + Z/6 + (Q_5/Z_5)^2");
        assert_eq!(alloc::format!("{}", AbGroup::trivial()), "0");
    }
}

//! Seeded randomized verification suites for the group calculus. The same
//! seed reproduces the same corpus on any platform; the acceptance tests and
//! the CLI selftest both run these.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::{vec, vec::Vec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::complement::{summand_complement, WitnessKind, DEFAULT_ORDER_CAP};
use super::hom::{z_value, z_value_brute_force, GroupHom};
use super::lift::{lift_idempotent, lift_unit, MatrixRingElement};
use super::snf::{kernel_basis, smith_normal_form, IntMat};
use super::{l_adic_completion, ulm_and_divisible, AbError, AbGroup};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    fn new(name: &str) -> Self {
        SuiteOutcome {
            name: name.into(),
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }
}

impl core::fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "{}: {}/{} passed",
            self.name,
            self.cases - self.failures,
            self.cases
        )?;
        if let Some(detail) = &self.first_failure {
            write!(f, " (first failure: {})", detail)?;
        }
        Ok(())
    }
}

fn random_finite_group(rng: &mut SplitMix64, max_order: u64) -> AbGroup {
    loop {
        let k = rng.range_inclusive(1, 3);
        let orders: Vec<BigInt> = (0..k)
            .map(|_| BigInt::from(rng.range_inclusive(2, 25)))
            .collect();
        let product: BigInt = orders.iter().product();
        if product <= BigInt::from(max_order) {
            return AbGroup::finite(orders);
        }
    }
}

/// Kernel/cokernel index against exhaustive enumeration on random
/// homomorphisms between finite groups of order <= 10^4.
pub fn z_value_suite(seed: u64, cases: usize) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    let mut out = SuiteOutcome::new("z_value vs brute force");
    while out.cases < cases {
        let source = random_finite_group(&mut rng, 10_000);
        let target = random_finite_group(&mut rng, 10_000);
        let s = source.fg_coords();
        let t = target.fg_coords();
        // Random well-defined matrix: entry (i,j) must be a multiple of
        // n_i / gcd(n_i, m_j).
        let mut rows = Vec::with_capacity(t);
        for i in 0..t {
            let n_i = target.coord_order(i);
            let mut row = Vec::with_capacity(s);
            for j in 0..s {
                use num_traits::ToPrimitive;
                let m_j = source.coord_order(j);
                let step = &n_i / n_i.gcd(&m_j);
                let slots = (&n_i / &step).to_u64().unwrap().max(1);
                row.push(&step * BigInt::from(rng.below(slots)));
            }
            rows.push(row);
        }
        let hom = GroupHom::new(source, target, IntMat::from_rows(rows))
            .expect("constructed matrix is well defined");
        let fast = z_value(&hom);
        let slow = z_value_brute_force(&hom, 10_000);
        let ok = match (&fast, &slow) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        out.record(ok, || {
            format!(
                "hom {} -> {}: snf {:?} vs brute {:?}",
                hom.source(),
                hom.target(),
                fast,
                slow
            )
        });
    }
    out
}

fn random_bounded_group(rng: &mut SplitMix64, cap: u64) -> AbGroup {
    let menu = [2i64, 2, 2, 3, 3, 4, 4, 5, 6, 8, 9, 12, 16, 25, 27];
    loop {
        let k = rng.range_inclusive(1, 4);
        let orders: Vec<BigInt> = (0..k)
            .map(|_| BigInt::from(menu[rng.below(menu.len() as u64) as usize]))
            .collect();
        let product: BigInt = orders.iter().product();
        if product <= BigInt::from(cap) {
            return AbGroup::finite(orders);
        }
    }
}

/// A coordinate-aligned maximal subgroup with trivial intersection: the
/// l-parts of exponent at most l^n, one generator per coordinate.
fn aligned_maximal_subgroup(g: &AbGroup, l: u64, n: u32) -> Vec<Vec<u64>> {
    use num_traits::ToPrimitive;
    let moduli: Vec<u64> = g
        .invariant_factors()
        .iter()
        .map(|m| m.to_u64().unwrap())
        .collect();
    let mut gens = Vec::new();
    for (i, &m) in moduli.iter().enumerate() {
        let mut e = 0u32;
        let mut rest = m;
        while rest % l == 0 {
            rest /= l;
            e += 1;
        }
        if e >= 1 && e <= n {
            let mut gen = vec![0u64; moduli.len()];
            gen[i] = m / l.pow(e);
            gens.push(gen);
        }
    }
    gens
}

/// Applies random automorphisms (shears e_i -> e_i + c e_j with admissible c)
/// to move a subgroup out of coordinate alignment.
fn shear_generators(
    rng: &mut SplitMix64,
    moduli: &[u64],
    gens: &mut [Vec<u64>],
    rounds: usize,
) {
    let k = moduli.len();
    if k < 2 {
        return;
    }
    for _ in 0..rounds {
        let i = rng.below(k as u64) as usize;
        let mut j = rng.below(k as u64) as usize;
        if i == j {
            j = (j + 1) % k;
        }
        let g = num_integer::Integer::gcd(&moduli[i], &moduli[j]);
        let step = moduli[j] / g;
        let c = step * rng.below(g.max(1));
        if c == 0 {
            continue;
        }
        // e_i -> e_i + c e_j transforms x by x[j] += c * x[i].
        for gen in gens.iter_mut() {
            gen[j] = ((gen[j] as u128 + c as u128 * gen[i] as u128) % moduli[j] as u128) as u64;
        }
    }
}

/// Valid instances must produce verified complements; deliberately broken
/// ones must yield the right witness kind. The case quota counts valid
/// instances; the interleaved invalid probes are recorded on top.
pub fn complement_suite(seed: u64, cases: usize) -> SuiteOutcome {
    use num_traits::ToPrimitive;
    let mut rng = SplitMix64::new(seed);
    let mut out = SuiteOutcome::new("summand complements");
    let primes = [2u64, 2, 2, 3, 3, 5];
    let mut valid_cases = 0usize;
    while valid_cases < cases {
        let g = random_bounded_group(&mut rng, DEFAULT_ORDER_CAP);
        let l = primes[rng.below(primes.len() as u64) as usize];
        let n = rng.range_inclusive(1, 3) as u32;
        let moduli: Vec<u64> = g
            .invariant_factors()
            .iter()
            .map(|m| m.to_u64().unwrap())
            .collect();
        let mut gens = aligned_maximal_subgroup(&g, l, n);
        shear_generators(&mut rng, &moduli, &mut gens, 8);
        let result = summand_complement(&g, &gens, l, n, DEFAULT_ORDER_CAP);
        let ok = result.is_ok();
        valid_cases += 1;
        out.record(ok, || {
            format!("N = {}, l = {}, n = {}, gens {:?}: {:?}", g, l, n, gens, result)
        });

        // Every few cases, also probe an invalid instance.
        if valid_cases % 5 == 0 {
            // M generated by a nonzero element of l^n N, when one exists:
            // guaranteed intersection witness.
            let fg = super::finite::FiniteGroup::new(&g, DEFAULT_ORDER_CAP).unwrap();
            let exponent = moduli
                .iter()
                .fold(1u64, |acc, &m| num_integer::Integer::lcm(&acc, &m));
            let ln = {
                let mut acc = 1u64 % exponent.max(1);
                for _ in 0..n {
                    acc = (acc as u128 * l as u128 % exponent.max(1) as u128) as u64;
                }
                acc
            };
            let snz = fg
                .multiple_image(ln)
                .into_iter()
                .find(|&i| i != 0);
            if let Some(idx) = snz {
                let bad = vec![fg.element(idx)];
                let res = summand_complement(&g, &bad, l, n, DEFAULT_ORDER_CAP);
                let ok = matches!(
                    &res,
                    Err(AbError::HypothesisFailed(w)) if w.kind == WitnessKind::IntersectionNonzero
                );
                out.record(ok, || format!("expected intersection witness, got {:?}", res));
            }
        }
    }
    out
}

fn random_invertible_mod_p(rng: &mut SplitMix64, size: usize, p: u64) -> Vec<u64> {
    loop {
        let m: Vec<u64> = (0..size * size).map(|_| rng.below(p)).collect();
        if invertible_mod_p(&m, size, p) {
            return m;
        }
    }
}

fn invertible_mod_p(m: &[u64], n: usize, p: u64) -> bool {
    // Gaussian elimination rank check.
    let mut a: Vec<u64> = m.to_vec();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r * n + col] % p != 0) else {
            return false;
        };
        for j in 0..n {
            a.swap(col * n + j, pivot * n + j);
        }
        let inv = mod_pow(a[col * n + col], p - 2, p);
        for j in 0..n {
            a[col * n + j] = (a[col * n + j] as u128 * inv as u128 % p as u128) as u64;
        }
        for r in 0..n {
            if r != col && a[r * n + col] != 0 {
                let f = a[r * n + col];
                for j in 0..n {
                    let sub = (f as u128 * a[col * n + j] as u128 % p as u128) as u64;
                    a[r * n + j] = (a[r * n + j] + p - sub) % p;
                }
            }
        }
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Idempotent and unit lifting postconditions on random near-idempotent and
/// near-unit matrices over Z/p^s, p^s <= 81, size <= 3.
pub fn lift_suite(seed: u64, cases: usize) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    let mut out = SuiteOutcome::new("idempotent and unit lifts");
    let shapes = [(2u64, 6u32), (3, 4), (5, 2), (7, 2)];
    while out.cases < cases {
        let (p, smax) = shapes[rng.below(shapes.len() as u64) as usize];
        let s = rng.range_inclusive(1, smax as u64) as u32;
        let size = rng.range_inclusive(1, 3) as usize;
        let ps = BigInt::from(p).pow(s);

        // Idempotent residue: conjugated 0/1 diagonal, then p-junk on top.
        let u_mat = random_invertible_mod_p(&mut rng, size, p);
        let mut d = vec![0u64; size * size];
        for i in 0..size {
            d[i * size + i] = rng.below(2);
        }
        let u = MatrixRingElement::new(size, p, 1, u_mat.iter().map(|&v| BigInt::from(v)).collect());
        let uinv = lift_unit(&u).expect("invertible residue");
        let dm = MatrixRingElement::new(size, p, 1, d.iter().map(|&v| BigInt::from(v)).collect());
        let residue = u.mul(&dm).mul(&uinv);
        let noisy: Vec<BigInt> = residue
            .entries()
            .iter()
            .map(|e| (e + BigInt::from(p) * BigInt::from(rng.below(16))).mod_floor(&ps))
            .collect();
        let a = MatrixRingElement::new(size, p, s, noisy);
        let lift = lift_idempotent(&a);
        let ok = match &lift {
            Ok(e) => {
                e.mul(e) == *e
                    && e.entries()
                        .iter()
                        .zip(a.entries())
                        .all(|(x, y)| (x - y).mod_floor(&BigInt::from(p)) == BigInt::from(0u32))
            }
            Err(_) => false,
        };
        out.record(ok, || format!("idempotent lift over Z/{}^{}: {:?}", p, s, lift));

        // Unit lift.
        let v_mat = random_invertible_mod_p(&mut rng, size, p);
        let noisy: Vec<BigInt> = v_mat
            .iter()
            .map(|&v| (BigInt::from(v) + BigInt::from(p) * BigInt::from(rng.below(16))).mod_floor(&ps))
            .collect();
        let b = MatrixRingElement::new(size, p, s, noisy);
        let inv = lift_unit(&b);
        let one = MatrixRingElement::identity(size, p, s);
        let ok = matches!(&inv, Ok(i) if b.mul(i) == one && i.mul(&b) == one);
        out.record(ok, || format!("unit lift over Z/{}^{}: {:?}", p, s, inv));

        // Occasional negative probes.
        if out.cases % 20 == 0 && p > 2 {
            let non_idem = MatrixRingElement::from_i64(1, p, s, &[2]);
            out.record(
                matches!(lift_idempotent(&non_idem), Err(AbError::NotIdempotentModP)),
                || "2 mod p accepted as idempotent".into(),
            );
            let non_unit = MatrixRingElement::new(1, p, s, vec![BigInt::from(p)]);
            out.record(
                matches!(lift_unit(&non_unit), Err(AbError::NotUnitModP)),
                || "p accepted as a unit".into(),
            );
        }
    }
    out
}

fn random_class_member(rng: &mut SplitMix64) -> AbGroup {
    let a = rng.below(4);
    let b = rng.below(3);
    let torsion: Vec<BigInt> = (0..rng.below(3))
        .map(|_| BigInt::from(rng.range_inclusive(2, 30)))
        .collect();
    let mut cof = BTreeMap::new();
    for _ in 0..rng.below(3) {
        let l = [2u64, 3, 5, 7][rng.below(4) as usize];
        *cof.entry(l).or_insert(0) += rng.range_inclusive(1, 2);
    }
    AbGroup::new(a, b, torsion, cof)
}

/// Structural identities of the class: Ulm = divisible part (with finite
/// quotients), unique divisibility when the Tate module vanishes, and free
/// completions of torsion-free members with rank dim G/lG.
pub fn class_identity_suite(seed: u64, cases: usize) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    let mut out = SuiteOutcome::new("class identities");
    while out.cases < cases {
        let g = random_class_member(&mut rng);
        let report = ulm_and_divisible(&g);
        let mut ok = report.identity_holds && report.ulm == report.divisible;
        if g.tate_module_ranks().is_empty() {
            ok &= report.uniquely_divisible == Some(true);
        } else {
            ok &= report.uniquely_divisible.is_none();
        }
        // Completion of the free part: free rank a, and dim (Z^a)/l(Z^a) = a.
        let l = [2u64, 3, 5][rng.below(3) as usize];
        let free = AbGroup::free(g.free_rank());
        let completion = l_adic_completion(&free, l);
        ok &= completion.free_rank == g.free_rank();
        let fl = free.quotient_mod_n(&BigInt::from(l));
        ok &= fl.invariant_factors().len() as u64 == g.free_rank()
            && fl.invariant_factors().iter().all(|m| *m == BigInt::from(l));
        // Quotient orders match the componentwise formula.
        let n = BigInt::from(rng.range_inclusive(2, 12));
        let q = g.quotient_mod_n(&n);
        let expected: BigInt = core::iter::repeat(n.clone())
            .take(g.free_rank() as usize)
            .chain(g.invariant_factors().iter().map(|m| m.gcd(&n)))
            .product();
        ok &= q.order() == Some(expected.max(BigInt::one()));
        out.record(ok, || format!("class identities failed on {}", g));
    }
    out
}

/// Pairing nondegeneracy forces an embedding into Z^r: the explicit map
/// x -> (phi(x, y_i))_i is injective exactly when the pairing matrix has
/// full row rank.
pub fn pairing_embedding_suite(seed: u64, cases: usize) -> SuiteOutcome {
    let mut rng = SplitMix64::new(seed);
    let mut out = SuiteOutcome::new("pairing embeddings");
    while out.cases < cases {
        let a = rng.range_inclusive(1, 3) as usize;
        let r = a + rng.below(3) as usize;
        let mut phi = IntMat::zero(a, r);
        for i in 0..a {
            for j in 0..r {
                phi.set(i, j, BigInt::from(rng.signed(5)));
            }
        }
        let rank = smith_normal_form(&phi).rank();
        // The embedding candidate sends x to x^T phi; its kernel is the left
        // kernel of phi, i.e. the kernel of phi^T.
        let kernel = kernel_basis(&phi.transpose());
        let injective = kernel.cols() == 0;
        let ok = injective == (rank == a);
        out.record(ok, || {
            format!("rank {} of {}x{} pairing vs kernel cols {}", rank, a, r, kernel.cols())
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_value_suite_small() {
        let out = z_value_suite(7, 40);
        assert!(out.all_passed(), "{}", out);
    }

    #[test]
    fn complement_suite_small() {
        let out = complement_suite(11, 15);
        assert!(out.all_passed(), "{}", out);
    }

    #[test]
    fn lift_suite_small() {
        let out = lift_suite(13, 40);
        assert!(out.all_passed(), "{}", out);
    }

    #[test]
    fn class_identity_suite_small() {
        let out = class_identity_suite(17, 60);
        assert!(out.all_passed(), "{}", out);
    }

    #[test]
    fn pairing_suite_small() {
        let out = pairing_embedding_suite(19, 60);
        assert!(out.all_passed(), "{}", out);
    }
}
